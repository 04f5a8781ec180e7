//! Body play control: which pre-loaded frame to show next.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use vida_core::RgbaImage;

use crate::BodyAssets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlayMode {
    Idle,
    EnterSpeak,
    Speaking,
    ExitSpeak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlayEvent {
    SpeakStart,
    SpeakEnd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayState {
    pub mode: PlayMode,
    pub frame_index: usize,
    /// Events waiting for a mode in which they apply.
    pub pending: VecDeque<PlayEvent>,
}

impl Default for PlayState {
    fn default() -> Self {
        Self::idle()
    }
}

impl PlayState {
    pub fn idle() -> Self {
        Self {
            mode: PlayMode::Idle,
            frame_index: 0,
            pending: VecDeque::new(),
        }
    }

    fn at(mode: PlayMode, pending: VecDeque<PlayEvent>) -> Self {
        Self {
            mode,
            frame_index: 0,
            pending,
        }
    }

    pub fn frame<'a>(&self, assets: &'a BodyAssets) -> &'a RgbaImage {
        &frames(assets, self.mode)[self.frame_index]
    }
}

pub fn frames(assets: &BodyAssets, mode: PlayMode) -> &[RgbaImage] {
    match mode {
        PlayMode::Idle => &assets.idle_loop,
        PlayMode::EnterSpeak => &assets.enter_speak,
        PlayMode::Speaking => &assets.speak_loop,
        PlayMode::ExitSpeak => &assets.exit_speak,
    }
}

/// Applies the oldest pending event if the current mode accepts it,
/// otherwise advances one frame. Returns the new state and its frame.
pub fn play_control_step<'a>(
    state: &PlayState,
    event: Option<PlayEvent>,
    assets: &'a BodyAssets,
) -> (PlayState, &'a RgbaImage) {
    let mut pending = state.pending.clone();
    pending.extend(event);
    let next = match (state.mode, pending.front()) {
        (PlayMode::Idle, Some(PlayEvent::SpeakStart)) => {
            pending.pop_front();
            if assets.enter_speak.is_empty() {
                PlayState::at(PlayMode::Speaking, pending)
            } else {
                PlayState::at(PlayMode::EnterSpeak, pending)
            }
        }
        (PlayMode::Speaking, Some(PlayEvent::SpeakEnd)) => {
            pending.pop_front();
            if assets.exit_speak.is_empty() {
                PlayState::at(PlayMode::Idle, pending)
            } else {
                PlayState::at(PlayMode::ExitSpeak, pending)
            }
        }
        (mode, _) => {
            let len = frames(assets, mode).len();
            let i = state.frame_index + 1;
            match mode {
                PlayMode::Idle | PlayMode::Speaking => PlayState {
                    mode,
                    frame_index: i % len,
                    pending,
                },
                PlayMode::EnterSpeak if i >= len => PlayState::at(PlayMode::Speaking, pending),
                PlayMode::ExitSpeak if i >= len => PlayState::at(PlayMode::Idle, pending),
                _ => PlayState {
                    mode,
                    frame_index: i,
                    pending,
                },
            }
        }
    };
    let frame = next.frame(assets);
    (next, frame)
}
