//! Plain-text ticket files: one block per line, its members ascending and
//! separated by single spaces. Lines starting with `#` are comments and blank
//! lines are ignored.

use crate::design::Design;
use crate::error::TicketFileError;

pub fn parse_tickets(text: &str, n: usize, k: usize) -> Result<Design, TicketFileError> {
    let mut blocks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| TicketFileError::Parse { line: line_no, reason };
        let mut block = Vec::with_capacity(k);
        for field in line.split(' ') {
            if field.is_empty() {
                return Err(err("numbers must be separated by single spaces".into()));
            }
            let v: usize = field
                .parse()
                .map_err(|_| err(format!("{field:?} is not a ball number")))?;
            if v == 0 || v > n {
                return Err(err(format!("ball {v} outside 1..={n}")));
            }
            if block.last().is_some_and(|&last| last >= v) {
                return Err(err("numbers must be strictly ascending".into()));
            }
            block.push(v);
        }
        if block.len() != k {
            return Err(err(format!("expected {k} numbers, found {}", block.len())));
        }
        blocks.push(block);
    }
    Ok(Design::new(n, k, &blocks)?)
}

pub fn format_tickets(design: &Design) -> String {
    let mut out = String::new();
    for block in design.blocks() {
        out.push_str(&block.to_string());
        out.push('\n');
    }
    out
}
