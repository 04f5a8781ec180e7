//! Binary media packet layout. All integers are big-endian except audio
//! samples, which are s16le.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use vida_core::Timestamp;

pub const HEADER_LEN: usize = 9;
pub const VIDEO_HEADER_LEN: usize = 5;
pub const AUDIO_HEADER_LEN: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PacketKind {
    Video = 0x01,
    Audio = 0x02,
    Event = 0x03,
    Control = 0x04,
}

impl PacketKind {
    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0x01 => Some(Self::Video),
            0x02 => Some(Self::Audio),
            0x03 => Some(Self::Event),
            0x04 => Some(Self::Control),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameFormat {
    Rgb24 = 0,
    Png = 1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VideoFrame {
    pub width: u16,
    pub height: u16,
    pub format: FrameFormat,
    pub data: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AudioChunk {
    pub sample_rate: u32,
    pub channels: u8,
    pub samples: Vec<i16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Transcript,
    Reply,
    Busy,
    Unintelligible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventMsg {
    pub event: EventKind,
    pub text: String,
}

impl EventMsg {
    pub fn new(event: EventKind, text: impl Into<String>) -> Self {
        Self {
            event,
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ControlCode {
    SpeakStart = 0,
    SpeakEnd = 1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Video(VideoFrame),
    Audio(AudioChunk),
    Event(EventMsg),
    Control(ControlCode),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MediaPacket {
    pub pts: Timestamp,
    pub payload: Payload,
}

impl MediaPacket {
    pub fn kind(&self) -> PacketKind {
        match self.payload {
            Payload::Video(_) => PacketKind::Video,
            Payload::Audio(_) => PacketKind::Audio,
            Payload::Event(_) => PacketKind::Event,
            Payload::Control(_) => PacketKind::Control,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("truncated packet: need {needed} bytes, have {have}")]
    Truncated { needed: usize, have: usize },
    #[error("unknown packet kind 0x{0:02x}")]
    UnknownKind(u8),
    #[error("{what}: payload length {found} does not match expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid {what} value {value}")]
    InvalidField { what: &'static str, value: u32 },
    #[error("malformed event body: {0}")]
    BadEvent(String),
    #[error("{what} of {len} exceeds the wire limit")]
    TooLarge { what: &'static str, len: usize },
}

/// Serializes a packet. Fails only for values the layout cannot represent,
/// such as event bodies over 65535 bytes or mismatched raw frame sizes.
pub fn encode_packet(p: &MediaPacket) -> Result<Vec<u8>, WireError> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload_hint(&p.payload));
    out.push(p.kind() as u8);
    out.extend_from_slice(&p.pts.as_micros().to_be_bytes());
    match &p.payload {
        Payload::Video(v) => {
            if v.format == FrameFormat::Rgb24 {
                let expected = raw_len(v.width, v.height);
                if v.data.len() != expected {
                    return Err(WireError::LengthMismatch {
                        what: "raw frame",
                        expected,
                        found: v.data.len(),
                    });
                }
            }
            out.extend_from_slice(&v.width.to_be_bytes());
            out.extend_from_slice(&v.height.to_be_bytes());
            out.push(v.format as u8);
            out.extend_from_slice(&v.data);
        }
        Payload::Audio(a) => {
            out.extend_from_slice(&a.sample_rate.to_be_bytes());
            out.push(a.channels);
            for s in &a.samples {
                out.extend_from_slice(&s.to_le_bytes());
            }
        }
        Payload::Event(e) => {
            let body = serde_json::to_vec(e).expect("event serializes");
            let len = u16::try_from(body.len()).map_err(|_| WireError::TooLarge {
                what: "event body",
                len: body.len(),
            })?;
            out.extend_from_slice(&len.to_be_bytes());
            out.extend_from_slice(&body);
        }
        Payload::Control(c) => out.push(*c as u8),
    }
    Ok(out)
}

fn payload_hint(p: &Payload) -> usize {
    match p {
        Payload::Video(v) => VIDEO_HEADER_LEN + v.data.len(),
        Payload::Audio(a) => AUDIO_HEADER_LEN + 2 * a.samples.len(),
        Payload::Event(e) => 32 + e.text.len(),
        Payload::Control(_) => 1,
    }
}

fn raw_len(w: u16, h: u16) -> usize {
    usize::from(w) * usize::from(h) * 3
}

fn need(buf: &[u8], n: usize) -> Result<(), WireError> {
    if buf.len() < n {
        Err(WireError::Truncated {
            needed: n,
            have: buf.len(),
        })
    } else {
        Ok(())
    }
}

pub fn decode_packet(buf: &[u8]) -> Result<MediaPacket, WireError> {
    need(buf, 1)?;
    let kind = PacketKind::from_byte(buf[0]).ok_or(WireError::UnknownKind(buf[0]))?;
    need(buf, HEADER_LEN)?;
    let pts = Timestamp::from_micros(u64::from_be_bytes(buf[1..9].try_into().unwrap()));
    let body = &buf[HEADER_LEN..];
    let payload = match kind {
        PacketKind::Video => {
            need(buf, HEADER_LEN + VIDEO_HEADER_LEN)?;
            let width = u16::from_be_bytes([body[0], body[1]]);
            let height = u16::from_be_bytes([body[2], body[3]]);
            let format = match body[4] {
                0 => FrameFormat::Rgb24,
                1 => FrameFormat::Png,
                v => {
                    return Err(WireError::InvalidField {
                        what: "video format",
                        value: v.into(),
                    })
                }
            };
            let data = &body[VIDEO_HEADER_LEN..];
            if format == FrameFormat::Rgb24 && data.len() != raw_len(width, height) {
                let expected = raw_len(width, height);
                if data.len() < expected {
                    return Err(WireError::Truncated {
                        needed: HEADER_LEN + VIDEO_HEADER_LEN + expected,
                        have: buf.len(),
                    });
                }
                return Err(WireError::LengthMismatch {
                    what: "raw frame",
                    expected,
                    found: data.len(),
                });
            }
            Payload::Video(VideoFrame {
                width,
                height,
                format,
                data: data.to_vec(),
            })
        }
        PacketKind::Audio => {
            need(buf, HEADER_LEN + AUDIO_HEADER_LEN)?;
            let sample_rate = u32::from_be_bytes(body[0..4].try_into().unwrap());
            let channels = body[4];
            let data = &body[AUDIO_HEADER_LEN..];
            if !data.len().is_multiple_of(2) {
                return Err(WireError::LengthMismatch {
                    what: "audio samples",
                    expected: data.len() - 1,
                    found: data.len(),
                });
            }
            Payload::Audio(AudioChunk {
                sample_rate,
                channels,
                samples: data.chunks_exact(2).map(|c| i16::from_le_bytes([c[0], c[1]])).collect(),
            })
        }
        PacketKind::Event => {
            need(buf, HEADER_LEN + 2)?;
            let len = usize::from(u16::from_be_bytes([body[0], body[1]]));
            let json = &body[2..];
            if json.len() < len {
                return Err(WireError::Truncated {
                    needed: HEADER_LEN + 2 + len,
                    have: buf.len(),
                });
            }
            if json.len() != len {
                return Err(WireError::LengthMismatch {
                    what: "event body",
                    expected: len,
                    found: json.len(),
                });
            }
            let msg: EventMsg = serde_json::from_slice(json).map_err(|e| WireError::BadEvent(e.to_string()))?;
            Payload::Event(msg)
        }
        PacketKind::Control => {
            need(buf, HEADER_LEN + 1)?;
            if body.len() != 1 {
                return Err(WireError::LengthMismatch {
                    what: "control",
                    expected: 1,
                    found: body.len(),
                });
            }
            Payload::Control(match body[0] {
                0 => ControlCode::SpeakStart,
                1 => ControlCode::SpeakEnd,
                v => {
                    return Err(WireError::InvalidField {
                        what: "control code",
                        value: v.into(),
                    })
                }
            })
        }
    };
    Ok(MediaPacket { pts, payload })
}

/// Appends one length-prefixed record (u32 big-endian byte count, then the
/// packet) to a dump stream.
pub fn write_record(out: &mut Vec<u8>, packet: &[u8]) {
    out.extend_from_slice(&(packet.len() as u32).to_be_bytes());
    out.extend_from_slice(packet);
}

/// Splits a dump stream back into packet byte slices.
pub fn split_records(mut buf: &[u8]) -> Result<Vec<&[u8]>, WireError> {
    let mut out = Vec::new();
    while !buf.is_empty() {
        need(buf, 4)?;
        let n = u32::from_be_bytes(buf[..4].try_into().unwrap()) as usize;
        need(buf, 4 + n)?;
        out.push(&buf[4..4 + n]);
        buf = &buf[4 + n..];
    }
    Ok(out)
}
