//! Reading and writing frame files.
//!
//! A frame file is JSON with the shape
//!
//! ```json
//! {
//!   "field": "complex",
//!   "dim": 2,
//!   "label": "optional description",
//!   "vectors": [[1.0, 0.5], [[0.0, 1.0], 2.0]]
//! }
//! ```
//!
//! where each entry is either a plain number or an `[re, im]` pair. The
//! writer emits plain numbers for real frames and `[re, im]` pairs for
//! complex ones; the parser accepts either form in both fields as long as
//! a real frame has zero imaginary parts.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frame::{Field, Frame};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

impl Entry {
    fn to_complex(&self) -> Complex64 {
        match *self {
            Entry::Real(x) => Complex64::new(x, 0.0),
            Entry::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FrameFile {
    field: Field,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
    vectors: Vec<Vec<Entry>>,
}

/// Parse a frame from JSON text.
pub fn parse_frame(text: &str) -> Result<Frame> {
    let file: FrameFile =
        serde_json::from_str(text).map_err(|e| FrameError::Parse(e.to_string()))?;
    let vectors = file
        .vectors
        .iter()
        .map(|row| row.iter().map(Entry::to_complex).collect())
        .collect();
    let frame = Frame::new(file.field, file.dim, vectors)?;
    Ok(match file.label {
        Some(label) => frame.with_label(label),
        None => frame,
    })
}

/// Serialize a frame to pretty-printed JSON text (with trailing newline).
pub fn serialize_frame(frame: &Frame) -> String {
    let vectors = frame
        .vectors()
        .iter()
        .map(|v| {
            v.iter()
                .map(|z| match frame.field() {
                    Field::Real => Entry::Real(z.re),
                    Field::Complex => Entry::Pair([z.re, z.im]),
                })
                .collect()
        })
        .collect();
    let file = FrameFile {
        field: frame.field(),
        dim: frame.dim(),
        label: frame.label().map(str::to_owned),
        vectors,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("frame serializes");
    text.push('\n');
    text
}

pub fn read_frame(path: impl AsRef<Path>) -> Result<Frame> {
    let text = std::fs::read_to_string(path)?;
    parse_frame(&text)
}

pub fn write_frame(path: impl AsRef<Path>, frame: &Frame) -> Result<()> {
    std::fs::write(path, serialize_frame(frame))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_real_frame() {
        let frame = parse_frame(
            r#"{"field": "real", "dim": 2, "vectors": [[1, 0], [0.5, -2]]}"#,
        )
        .unwrap();
        assert_eq!(frame.field(), Field::Real);
        assert_eq!(frame.dim(), 2);
        assert_eq!(frame.len(), 2);
        assert_eq!(frame.vector(1)[1], Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn parse_complex_frame_with_mixed_entries() {
        let frame = parse_frame(
            r#"{"field": "complex", "dim": 2, "label": "t", "vectors": [[[0, 1], 2]]}"#,
        )
        .unwrap();
        assert_eq!(frame.vector(0)[0], Complex64::new(0.0, 1.0));
        assert_eq!(frame.vector(0)[1], Complex64::new(2.0, 0.0));
        assert_eq!(frame.label(), Some("t"));
    }

    #[test]
    fn real_field_rejects_pair_with_nonzero_im() {
        let err = parse_frame(
            r#"{"field": "real", "dim": 1, "vectors": [[[1, 1]]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, FrameError::NonRealEntry { .. }));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        for bad in [
            "not json",
            r#"{"field": "quaternion", "dim": 1, "vectors": [[1]]}"#,
            r#"{"field": "real", "dim": 1, "vectors": [[[1, 2, 3]]]}"#,
        ] {
            assert!(matches!(parse_frame(bad).unwrap_err(), FrameError::Parse(_)));
        }
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let complex = Frame::new(
            Field::Complex,
            2,
            vec![vec![Complex64::new(1.0, -0.25), Complex64::new(0.0, 2.0)]],
        )
        .unwrap()
        .with_label("round trip");
        let real = Frame::from_real(3, vec![vec![0.1, 0.2, 0.3]]).unwrap();
        for frame in [complex, real] {
            let text = serialize_frame(&frame);
            let back = parse_frame(&text).unwrap();
            assert_eq!(back, frame);
            assert_eq!(serialize_frame(&back), text);
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join("framelab-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("frame.json");
        let frame = Frame::from_real(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        write_frame(&path, &frame).unwrap();
        assert_eq!(read_frame(&path).unwrap(), frame);
    }
}
