//! Plain (P2) PGM rendering of space-time windows. Row 0 is the top row.

use crate::error::{Error, Result};

pub fn render(rows: &[Vec<u8>], alphabet: usize) -> Result<String> {
    if alphabet < 2 {
        return Err(Error::BadDimensions(format!("alphabet size {alphabet}")));
    }
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::BadDimensions("ragged rows".into()));
    }
    let mut out = format!("P2\n{width} {}\n255\n", rows.len());
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .map(|&v| (255 * v as usize / (alphabet - 1)).to_string())
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}
