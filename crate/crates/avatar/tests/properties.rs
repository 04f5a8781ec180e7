use std::path::PathBuf;
use std::sync::OnceLock;

use proptest::prelude::*;
use vida_avatar::{
    build_viseme_track, fuse, lip_sync_violations, play_control_step, sample_face_params, BodyAssets, PlayEvent,
    PlayMode, PlayState, Viseme, VisemeSegment, VisemeTrack,
};
use vida_core::RgbaImage;
use vida_speech::{predict_durations, speak, synthesize, Lexicon, Phoneme};

fn lexicon() -> &'static Lexicon {
    static L: OnceLock<Lexicon> = OnceLock::new();
    L.get_or_init(|| {
        let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../assets/lexicon.txt");
        Lexicon::load(&p).unwrap()
    })
}

fn track_strategy() -> impl Strategy<Value = VisemeTrack> {
    proptest::collection::vec((0..8u8, 10u32..300), 1..12).prop_map(|segs| {
        let mut t = 0;
        VisemeTrack {
            segments: segs
                .into_iter()
                .map(|(v, d)| {
                    let s = VisemeSegment {
                        viseme: Viseme::ALL[v as usize],
                        start_ms: t,
                        end_ms: t + d,
                    };
                    t += d;
                    s
                })
                .collect(),
        }
    })
}

proptest! {
    #[test]
    fn face_params_are_convex(track in track_strategy(), t in -100i64..5000) {
        let p = sample_face_params(&track, t);
        let sum: f64 = p.viseme_weights.iter().sum();
        prop_assert!(p.viseme_weights.iter().all(|w| (0.0..=1.0).contains(w)));
        prop_assert!((sum - 1.0).abs() <= 1e-6, "sum {}", sum);
        prop_assert!(p.blink == 0.0 || p.blink == 1.0);
    }

    #[test]
    fn track_is_contiguous(phs in proptest::collection::vec(0u8..40, 1..30)) {
        let ps: Vec<Phoneme> = phs.iter().map(|&i| Phoneme::from_id(i).unwrap()).collect();
        let timings = predict_durations(&ps).unwrap();
        let track = build_viseme_track(&timings);
        prop_assert_eq!(track.segments[0].start_ms, 0);
        prop_assert_eq!(track.end_ms(), timings.last().unwrap().end_ms());
        for w in track.segments.windows(2) {
            prop_assert_eq!(w[0].end_ms, w[1].start_ms);
            prop_assert_ne!(w[0].viseme, w[1].viseme);
        }
    }

    #[test]
    fn transparent_fuse_is_identity(
        w in 8u32..40, h in 8u32..40, fw in 1u32..4, fh in 1u32..4,
        ax in 0u32..4, ay in 0u32..4, seed in any::<u8>()
    ) {
        let px: Vec<u8> = (0..w * h * 4)
            .map(|i| if i % 4 == 3 { 255 } else { (i as u8).wrapping_mul(seed | 1) })
            .collect();
        let body = RgbaImage::from_pixels(w, h, px).unwrap();
        let face = RgbaImage::new(fw, fh);
        prop_assert_eq!(fuse(&body, &face, (ax, ay)).unwrap(), body);
    }

    #[test]
    fn play_returns_to_idle(enter in 0usize..6, exit in 0usize..6, speak_frames in 1usize..30, idle_before in 0usize..10) {
        let mk = |n: usize, tag: u8| (0..n).map(|_| RgbaImage::filled(1, 1, [tag, 0, 0, 255])).collect::<Vec<_>>();
        let assets = BodyAssets { idle_loop: mk(7, 1), enter_speak: mk(enter, 2), speak_loop: mk(5, 3), exit_speak: mk(exit, 4) };
        let mut s = PlayState::idle();
        for _ in 0..idle_before {
            s = play_control_step(&s, None, &assets).0;
        }
        // SpeakStart, then SpeakEnd as soon as `speak_frames` speaking frames have shown.
        let mut non_idle = 0;
        let mut speaking_seen = 0;
        let mut event = Some(PlayEvent::SpeakStart);
        loop {
            let (next, _) = play_control_step(&s, event.take(), &assets);
            s = next;
            if s.mode == PlayMode::Idle {
                break;
            }
            non_idle += 1;
            if s.mode == PlayMode::Speaking {
                speaking_seen += 1;
                if speaking_seen == speak_frames {
                    event = Some(PlayEvent::SpeakEnd);
                }
            }
            prop_assert!(non_idle < 1000);
        }
        prop_assert_eq!(non_idle, enter + speak_frames + exit);
        prop_assert_eq!(s.frame_index, 0);
    }

    #[test]
    fn lip_sync_holds(picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..8)) {
        let words: Vec<&str> = lexicon().unique_words().collect();
        let text = picks.iter().map(|i| *i.get(&words)).collect::<Vec<_>>().join(" ");
        let (timings, audio) = speak(&text, lexicon()).unwrap();
        let v = lip_sync_violations(&timings, &audio, 40);
        prop_assert!(v.is_empty(), "{}: {:?}", text, v);
    }
}

#[test]
fn lip_sync_flags_long_pauses_and_mute_audio() {
    let mut ps = vec![Phoneme::Aa, Phoneme::Sil, Phoneme::Sil, Phoneme::Sil, Phoneme::Aa];
    let timings = predict_durations(&ps).unwrap();
    let audio = synthesize(&timings).unwrap();
    assert!(lip_sync_violations(&timings, &audio, 40).is_empty());
    // Muted audio under an open mouth.
    let silent = vida_core::AudioBuffer::silence(audio.len());
    assert!(!lip_sync_violations(&timings, &silent, 40).is_empty());
    ps.truncate(1);
    let t = predict_durations(&ps).unwrap();
    assert!(lip_sync_violations(&t, &synthesize(&t).unwrap(), 40).is_empty());
}
