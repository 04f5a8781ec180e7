//! RIFF WAV dump and load, PCM s16le 16 kHz mono only.

use std::io::{Read, Seek, Write};
use std::path::Path;

use vida_core::{AudioBuffer, SAMPLE_RATE_HZ};

use crate::SpeechError;

fn spec() -> hound::WavSpec {
    hound::WavSpec {
        channels: 1,
        sample_rate: SAMPLE_RATE_HZ,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    }
}

pub fn write_wav<W: Write + Seek>(out: W, audio: &AudioBuffer) -> Result<(), SpeechError> {
    let mut writer = hound::WavWriter::new(out, spec())?;
    for &s in audio.samples() {
        writer.write_sample(s)?;
    }
    writer.finalize()?;
    Ok(())
}

pub fn write_wav_file(path: &Path, audio: &AudioBuffer) -> Result<(), SpeechError> {
    let file = std::fs::File::create(path).map_err(|source| SpeechError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_wav(std::io::BufWriter::new(file), audio)
}

pub fn read_wav<R: Read>(input: R) -> Result<AudioBuffer, SpeechError> {
    let reader = hound::WavReader::new(input)?;
    let s = reader.spec();
    if s.sample_rate != SAMPLE_RATE_HZ
        || s.channels != 1
        || s.bits_per_sample != 16
        || s.sample_format != hound::SampleFormat::Int
    {
        return Err(SpeechError::WavFormat {
            sample_rate: s.sample_rate,
            channels: s.channels,
            bits: s.bits_per_sample,
        });
    }
    let samples = reader.into_samples::<i16>().collect::<Result<Vec<_>, _>>()?;
    Ok(AudioBuffer::new(samples))
}
