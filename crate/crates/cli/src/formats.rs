//! Reading and writing formal contexts: the Burmeister `.cxt` format and a
//! CSV cross-table.
//!
//! The writers are bit-exact: LF line endings, `X` for a cross, `.` (cxt) or
//! the empty cell (CSV) for its absence. The readers are strict — unknown
//! cell characters, ragged rows, and malformed headers are errors with line
//! numbers, not warnings.

use uum_core::{BitSet, FormalContext};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Context(#[from] uum_core::Error),

    #[error("name `{name}` cannot be written in this format")]
    Unrepresentable { name: String },
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Input format of a context file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Cxt,
    Csv,
}

impl Format {
    /// Detects the format from a file extension.
    pub fn from_extension(path: &std::path::Path) -> Option<Format> {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("cxt") => Some(Format::Cxt),
            Some(e) if e.eq_ignore_ascii_case("csv") => Some(Format::Csv),
            _ => None,
        }
    }

    pub fn parse(self, text: &str) -> Result<FormalContext, FormatError> {
        match self {
            Format::Cxt => parse_cxt(text),
            Format::Csv => parse_csv(text),
        }
    }
}

/// Parses the Burmeister exchange format: header `B`, blank line, the two
/// counts, a blank line, the names, then one `X`/`.` row per object. Reader
/// also accepts `x` for a cross and tolerates a trailing `\r` per line.
pub fn parse_cxt(text: &str) -> Result<FormalContext, FormatError> {
    let lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    let line = |i: usize| -> Result<&str, FormatError> {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| parse_err(lines.len() + 1, "unexpected end of input"))
    };

    if line(0)? != "B" {
        return Err(parse_err(1, "expected header `B`"));
    }
    if !line(1)?.is_empty() {
        return Err(parse_err(2, "expected an empty line after the header"));
    }
    let object_count: usize = line(2)?
        .parse()
        .map_err(|_| parse_err(3, "expected the object count"))?;
    let attribute_count: usize = line(3)?
        .parse()
        .map_err(|_| parse_err(4, "expected the attribute count"))?;
    if !line(4)?.is_empty() {
        return Err(parse_err(5, "expected an empty line after the counts"));
    }
    // declared counts must fit the input before anything is allocated
    let needed = object_count
        .checked_mul(2)
        .and_then(|n| n.checked_add(attribute_count))
        .and_then(|n| n.checked_add(5));
    match needed {
        Some(n) if n <= lines.len() => {}
        _ => return Err(parse_err(lines.len() + 1, "unexpected end of input")),
    }

    let mut cursor = 5;
    let mut object_names = Vec::with_capacity(object_count);
    for _ in 0..object_count {
        let name = line(cursor)?;
        if name.is_empty() {
            return Err(parse_err(cursor + 1, "empty object name"));
        }
        object_names.push(name.to_string());
        cursor += 1;
    }
    let mut attribute_names = Vec::with_capacity(attribute_count);
    for _ in 0..attribute_count {
        let name = line(cursor)?;
        if name.is_empty() {
            return Err(parse_err(cursor + 1, "empty attribute name"));
        }
        attribute_names.push(name.to_string());
        cursor += 1;
    }

    let mut rows = Vec::with_capacity(object_count);
    for _ in 0..object_count {
        let raw = line(cursor)?;
        let mut row = BitSet::empty(attribute_count);
        let mut width = 0;
        for (m, ch) in raw.chars().enumerate() {
            match ch {
                'X' | 'x' if m < attribute_count => row.insert(m),
                '.' if m < attribute_count => {}
                'X' | 'x' | '.' => {}
                _ => {
                    return Err(parse_err(
                        cursor + 1,
                        format!("illegal relation character `{}`", ch),
                    ))
                }
            }
            width += 1;
        }
        if width != attribute_count {
            return Err(parse_err(
                cursor + 1,
                format!("expected {} cells, found {}", attribute_count, width),
            ));
        }
        rows.push(row);
        cursor += 1;
    }

    for (i, rest) in lines.iter().enumerate().skip(cursor) {
        if !rest.is_empty() {
            return Err(parse_err(i + 1, "unexpected content after the relation"));
        }
    }

    Ok(FormalContext::from_rows(object_names, attribute_names, rows)?)
}

/// Writes the Burmeister format exactly: LF endings, `X` for a cross, `.`
/// otherwise, trailing newline included.
pub fn serialize_cxt(k: &FormalContext) -> String {
    let mut out = String::new();
    out.push_str("B\n\n");
    out.push_str(&k.object_count().to_string());
    out.push('\n');
    out.push_str(&k.attribute_count().to_string());
    out.push_str("\n\n");
    for name in k.object_names() {
        out.push_str(name);
        out.push('\n');
    }
    for name in k.attribute_names() {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..k.object_count() {
        for m in 0..k.attribute_count() {
            out.push(if k.has(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// Parses a CSV cross-table: the first row is an empty cell followed by the
/// attribute names; every further row is an object name followed by one cell
/// per attribute. Truthy cells are `X`, `x`, `1`; falsy are empty, `0`, `.`.
pub fn parse_csv(text: &str) -> Result<FormalContext, FormatError> {
    let mut lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    while lines.len() > 1 && lines.last() == Some(&"") {
        lines.pop();
    }

    let header: Vec<&str> = lines[0].split(',').collect();
    if !header[0].is_empty() {
        return Err(parse_err(1, "the first header cell must be empty"));
    }
    let attribute_names: Vec<String> = header[1..].iter().map(|s| s.to_string()).collect();
    let attribute_count = attribute_names.len();

    let mut object_names = Vec::new();
    let mut rows = Vec::new();
    for (i, raw) in lines.iter().enumerate().skip(1) {
        let cells: Vec<&str> = raw.split(',').collect();
        if cells.len() != attribute_count + 1 {
            return Err(parse_err(
                i + 1,
                format!("expected {} cells, found {}", attribute_count + 1, cells.len()),
            ));
        }
        object_names.push(cells[0].to_string());
        let mut row = BitSet::empty(attribute_count);
        for (m, cell) in cells[1..].iter().enumerate() {
            match *cell {
                "X" | "x" | "1" => row.insert(m),
                "" | "0" | "." => {}
                other => {
                    return Err(parse_err(i + 1, format!("illegal cell `{}`", other)));
                }
            }
        }
        rows.push(row);
    }

    Ok(FormalContext::from_rows(object_names, attribute_names, rows)?)
}

/// Writes the CSV cross-table with `X` for crosses and empty falsy cells.
/// Names containing commas cannot be represented.
pub fn serialize_csv(k: &FormalContext) -> Result<String, FormatError> {
    for name in k.object_names().iter().chain(k.attribute_names()) {
        if name.contains(',') {
            return Err(FormatError::Unrepresentable { name: name.clone() });
        }
    }
    let mut out = String::new();
    for name in k.attribute_names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for g in 0..k.object_count() {
        out.push_str(k.object_name(g));
        for m in 0..k.attribute_count() {
            out.push(',');
            if k.has(g, m) {
                out.push('X');
            }
        }
        out.push('\n');
    }
    Ok(out)
}
