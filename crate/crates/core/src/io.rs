//! Text formats for words and erasure lists.
//!
//! A word is one line of lowercase hex, two characters per symbol, labels in
//! ascending order. Erasure lists hold one 1-based label per line.

use crate::error::{Error, Result};

pub fn word_to_hex(word: &[u8]) -> String {
    hex::encode(word)
}

/// Parses one hex line; surrounding whitespace is ignored.
pub fn word_from_hex(line: &str, expected_len: usize) -> Result<Vec<u8>> {
    let bytes = hex::decode(line.trim()).map_err(|e| Error::Parse(e.to_string()))?;
    if bytes.len() != expected_len {
        return Err(Error::LengthMismatch {
            expected: expected_len,
            got: bytes.len(),
        });
    }
    Ok(bytes)
}

/// Parses every non-blank line as a word.
pub fn words_from_hex(text: &str, expected_len: usize) -> Result<Vec<Vec<u8>>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| word_from_hex(l, expected_len))
        .collect()
}

/// Parses a list of 1-based labels, one per line, each in 1..=n.
pub fn erasures_from_text(text: &str, n: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let label: u32 = t
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: not a label: {t:?}", i + 1)))?;
        if label == 0 || label as usize > n {
            return Err(Error::OutOfRange {
                what: "label",
                value: label as i64,
                lo: 1,
                hi: n as i64,
            });
        }
        out.push(label);
    }
    Ok(out)
}

/// Row-major hex matrix with a "rows cols epsilon" header line.
pub fn matrix_to_text(rows: &[Vec<u8>], cols: usize, epsilon: usize) -> String {
    let mut s = format!("{} {} {}\n", rows.len(), cols, epsilon);
    for r in rows {
        s.push_str(&hex::encode(r));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        let w: Vec<u8> = (0..=255).collect();
        let h = word_to_hex(&w);
        assert_eq!(h.len(), 512);
        assert_eq!(&h[..6], "000102");
        assert_eq!(word_from_hex(&format!(" {h}\n"), 256).unwrap(), w);
        assert!(word_from_hex(&h, 255).is_err());
        assert!(word_from_hex("zz", 1).is_err());
    }

    #[test]
    fn erasure_lists() {
        assert_eq!(erasures_from_text("1\n\n1953\n", 1953).unwrap(), vec![1, 1953]);
        assert!(erasures_from_text("0\n", 1953).is_err());
        assert!(erasures_from_text("1954\n", 1953).is_err());
        assert!(erasures_from_text("x\n", 1953).is_err());
    }

    #[test]
    fn matrix_header() {
        let t = matrix_to_text(&[vec![1, 2], vec![255, 0]], 2, 5);
        assert_eq!(t, "2 2 5\n0102\nff00\n");
    }
}
