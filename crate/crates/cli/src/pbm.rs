//! Netpbm PBM bitmap reading and writing, plain (P1) and packed (P4).
//!
//! A set pixel is black, which maps 1:1 onto a set CA cell. Note the PBM
//! header stores width before height, the reverse of the row-first
//! convention used everywhere else in this project.

use caec::maca::CaState;

use crate::CliError;

/// Which PBM flavor to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbmForm {
    /// ASCII pixels, hand-editable.
    P1,
    /// Bit-packed rows, each padded to a byte boundary.
    P4,
}

/// A parsed bitmap; pixel (i, j) = true means black.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbmImage {
    state: CaState,
}

impl PbmImage {
    pub fn new(state: CaState) -> Self {
        Self { state }
    }

    pub fn rows(&self) -> usize {
        self.state.rows()
    }

    pub fn cols(&self) -> usize {
        self.state.cols()
    }

    pub fn state(&self) -> &CaState {
        &self.state
    }

    pub fn into_state(self) -> CaState {
        self.state
    }
}

fn data_err(msg: impl Into<String>) -> CliError {
    CliError::Data(format!("pbm: {}", msg.into()))
}

/// Byte-level tokenizer over the PBM header: skips whitespace and '#'
/// comment lines.
struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn read_number(&mut self) -> Result<usize, CliError> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(data_err("expected a decimal number in the header"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| data_err("header number out of range"))
    }
}

/// Parses P1 or P4 bytes into an image.
pub fn pbm_read(bytes: &[u8]) -> Result<PbmImage, CliError> {
    match bytes.get(..2) {
        Some(b"P1") => read_p1(bytes),
        Some(b"P4") => read_p4(bytes),
        Some(magic) => Err(data_err(format!(
            "unsupported format {:?} (only P1 and P4)",
            String::from_utf8_lossy(magic)
        ))),
        None => Err(data_err("input shorter than a magic number")),
    }
}

fn read_dims(header: &mut Header<'_>) -> Result<(usize, usize), CliError> {
    header.pos += 2; // past the magic
    let width = header.read_number()?;
    let height = header.read_number()?;
    if width == 0 || height == 0 {
        return Err(data_err("zero image dimension"));
    }
    Ok((width, height))
}

fn read_p1(bytes: &[u8]) -> Result<PbmImage, CliError> {
    let mut header = Header { bytes, pos: 0 };
    let (width, height) = read_dims(&mut header)?;
    let mut state = CaState::zeros(height, width)
        .map_err(|e| data_err(format!("image too large: {e}")))?;
    let mut count = 0;
    for &b in &bytes[header.pos..] {
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => continue,
            b'0' | b'1' => {
                if count == width * height {
                    return Err(data_err("more pixels than the header promises"));
                }
                if b == b'1' {
                    state.set(count / width, count % width, true);
                }
                count += 1;
            }
            other => return Err(data_err(format!("unexpected byte {:?} in pixel data", other as char))),
        }
    }
    if count != width * height {
        return Err(data_err(format!(
            "expected {} pixels, found {count}",
            width * height
        )));
    }
    Ok(PbmImage::new(state))
}

fn read_p4(bytes: &[u8]) -> Result<PbmImage, CliError> {
    let mut header = Header { bytes, pos: 0 };
    let (width, height) = read_dims(&mut header)?;
    // Exactly one whitespace byte separates the header from the pixel rows.
    match bytes.get(header.pos) {
        Some(b' ' | b'\t' | b'\r' | b'\n') => header.pos += 1,
        _ => return Err(data_err("missing separator before packed pixel data")),
    }
    let stride = width.div_ceil(8);
    let data = &bytes[header.pos..];
    if data.len() < stride * height {
        return Err(data_err("truncated pixel data"));
    }
    if data.len() > stride * height {
        return Err(data_err("trailing bytes after pixel data"));
    }
    let mut state = CaState::zeros(height, width)
        .map_err(|e| data_err(format!("image too large: {e}")))?;
    for i in 0..height {
        let row = &data[i * stride..(i + 1) * stride];
        for j in 0..width {
            if row[j / 8] & (0x80 >> (j % 8)) != 0 {
                state.set(i, j, true);
            }
        }
    }
    Ok(PbmImage::new(state))
}

/// Canonical emission: magic line, "width height" line, then pixel data
/// (one space-separated row per line for P1, padded packed rows for P4).
pub fn pbm_write(image: &PbmImage, form: PbmForm) -> Vec<u8> {
    let (m, n) = (image.rows(), image.cols());
    match form {
        PbmForm::P1 => {
            let mut out = format!("P1\n{n} {m}\n");
            for i in 0..m {
                let row: Vec<&str> = (0..n)
                    .map(|j| if image.state.get(i, j) { "1" } else { "0" })
                    .collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            out.into_bytes()
        }
        PbmForm::P4 => {
            let stride = n.div_ceil(8);
            let mut out = format!("P4\n{n} {m}\n").into_bytes();
            for i in 0..m {
                let mut row = vec![0u8; stride];
                for j in 0..n {
                    if image.state.get(i, j) {
                        row[j / 8] |= 0x80 >> (j % 8);
                    }
                }
                out.extend_from_slice(&row);
            }
            out
        }
    }
}
