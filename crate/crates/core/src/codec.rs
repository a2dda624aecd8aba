//! The encompression pipeline for binary images.
//!
//! Compression: tile the image into fixed blocks, run each block's MACA to
//! its attractor and keep only the PEF bits. Encryption: arrange the PEF
//! stream as a `p x q` matrix and multiply by an invertible element of the
//! periodic translation group. Both directions are driven by a symmetric
//! key naming the block dimensions, the MACA rule and the translation
//! exponents. Decompression emits each basin's attractor, so the output is
//! lossy but never crosses a basin.

use std::fmt;

use crate::algebra::translation_matrix;
use crate::bitmatrix::{BitMatrix, BitVector, MAX_DIM};
use crate::error::{Error, Result};
use crate::maca::{attractor_from_pef, classify, maca_profile, CaState, MacaProfile};
use crate::rules::{Boundary, RuleSpec};

/// Container magic bytes.
pub const MAGIC: [u8; 4] = *b"CAEC";
/// Container format version.
pub const VERSION: u8 = 1;
/// Header length in bytes; the payload follows.
pub const HEADER_LEN: usize = 19;

/// Symmetric key: block dimensions, the MACA rule run per block, and the
/// exponents of the encrypting translation. The exponents are reduced
/// modulo the PEF-matrix dimensions at use time, so one key serves any
/// image size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Key {
    pub block_m: usize,
    pub block_n: usize,
    pub boundary: Boundary,
    pub rule: u16,
    pub enc_a: usize,
    pub enc_b: usize,
}

impl Key {
    pub fn rule_spec(&self) -> Result<RuleSpec> {
        RuleSpec::new(self.rule, self.boundary, self.block_m, self.block_n)
    }

    /// Profiles the rule at the block dimensions and rejects keys that
    /// cannot drive the codec: non-MACA rules and single-attractor rules.
    pub fn validate(&self) -> Result<MacaProfile> {
        let profile = maca_profile(&self.rule_spec()?)?;
        if !profile.is_maca {
            return Err(Error::NotMaca {
                rule: self.rule,
                m: self.block_m,
                n: self.block_n,
            });
        }
        if profile.attractor_dim == 0 {
            return Err(Error::DegenerateKey {
                rule: self.rule,
                m: self.block_m,
                n: self.block_n,
            });
        }
        Ok(profile)
    }
}

/// Geometry of one encompression run: padding, block counts, PEF stream
/// length and the `p x q` arrangement it is encrypted in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub image_m: usize,
    pub image_n: usize,
    pub padded_m: usize,
    pub padded_n: usize,
    pub blocks_down: usize,
    pub blocks_across: usize,
    pub block_count: usize,
    pub bits_per_block: usize,
    pub pef_len: usize,
    pub p: usize,
    pub q: usize,
}

impl Layout {
    /// Zero bits appended to the PEF stream before encryption.
    pub fn pad_bits(&self) -> usize {
        self.p * self.q - self.pef_len
    }
}

fn checked_u16(what: &'static str, value: usize) -> Result<u16> {
    u16::try_from(value).map_err(|_| Error::HeaderOverflow {
        what,
        value,
        max: u16::MAX as usize,
    })
}

fn checked_u8(what: &'static str, value: usize) -> Result<u8> {
    u8::try_from(value).map_err(|_| Error::HeaderOverflow {
        what,
        value,
        max: u8::MAX as usize,
    })
}

fn layout_for(image_m: usize, image_n: usize, key: &Key, profile: &MacaProfile) -> Result<Layout> {
    if image_m == 0 || image_n == 0 {
        return Err(Error::InvalidDimensions {
            rows: image_m,
            cols: image_n,
        });
    }
    checked_u16("image_m", image_m)?;
    checked_u16("image_n", image_n)?;
    checked_u8("block_m", key.block_m)?;
    checked_u8("block_n", key.block_n)?;

    let padded_m = image_m.div_ceil(key.block_m) * key.block_m;
    let padded_n = image_n.div_ceil(key.block_n) * key.block_n;
    let blocks_down = padded_m / key.block_m;
    let blocks_across = padded_n / key.block_n;
    let block_count = blocks_down * blocks_across;
    let bits_per_block = profile.attractor_dim;
    let pef_len = block_count * bits_per_block;

    let mut p = pef_len.isqrt();
    if p * p < pef_len {
        p += 1;
    }
    let q = pef_len.div_ceil(p);
    u32::try_from(pef_len).map_err(|_| Error::HeaderOverflow {
        what: "pef_len",
        value: pef_len,
        max: u32::MAX as usize,
    })?;
    checked_u16("p", p)?;
    checked_u16("q", q)?;
    if p * q > MAX_DIM {
        // The encrypting translation acts on a (pq x pq) matrix.
        return Err(Error::InvalidDimensions { rows: p, cols: q });
    }

    Ok(Layout {
        image_m,
        image_n,
        padded_m,
        padded_n,
        blocks_down,
        blocks_across,
        block_count,
        bits_per_block,
        pef_len,
        p,
        q,
    })
}

/// Computes the run geometry for an image under a key.
pub fn plan_layout(image_m: usize, image_n: usize, key: &Key) -> Result<Layout> {
    let profile = key.validate()?;
    layout_for(image_m, image_n, key, &profile)
}

/// The encompressed wire object: header fields plus the encrypted,
/// bit-packed payload of exactly `p*q` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncompressedContainer {
    pub image_m: u16,
    pub image_n: u16,
    pub block_m: u8,
    pub block_n: u8,
    pub pef_len: u32,
    pub p: u16,
    pub q: u16,
    payload: BitVector,
}

impl EncompressedContainer {
    pub fn payload(&self) -> &BitVector {
        &self.payload
    }

    /// Big-endian, bit-exact serialization.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len().div_ceil(8));
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.image_m.to_be_bytes());
        out.extend_from_slice(&self.image_n.to_be_bytes());
        out.push(self.block_m);
        out.push(self.block_n);
        out.extend_from_slice(&self.pef_len.to_be_bytes());
        out.extend_from_slice(&self.p.to_be_bytes());
        out.extend_from_slice(&self.q.to_be_bytes());
        out.extend_from_slice(&self.payload.to_be_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let fail = |msg: &str| Error::ContainerFormat(msg.to_string());
        if bytes.len() < HEADER_LEN {
            return Err(fail("truncated header"));
        }
        if bytes[0..4] != MAGIC {
            return Err(fail("bad magic"));
        }
        if bytes[4] != VERSION {
            return Err(Error::ContainerFormat(format!(
                "unsupported version {}",
                bytes[4]
            )));
        }
        let be16 = |i: usize| u16::from_be_bytes([bytes[i], bytes[i + 1]]);
        let image_m = be16(5);
        let image_n = be16(7);
        let block_m = bytes[9];
        let block_n = bytes[10];
        let pef_len = u32::from_be_bytes([bytes[11], bytes[12], bytes[13], bytes[14]]);
        let p = be16(15);
        let q = be16(17);

        if image_m == 0 || image_n == 0 || block_m == 0 || block_n == 0 {
            return Err(fail("zero dimension"));
        }
        let bits = p as usize * q as usize;
        if (bits as u64) < u64::from(pef_len) {
            return Err(fail("p*q smaller than the PEF stream"));
        }
        let expected = HEADER_LEN + bits.div_ceil(8);
        if bytes.len() != expected {
            return Err(Error::ContainerFormat(format!(
                "expected {expected} bytes, found {}",
                bytes.len()
            )));
        }
        let payload = BitVector::from_be_bytes(bits, &bytes[HEADER_LEN..])?;
        // The final payload byte must be zero-padded for byte-exact
        // round trips.
        if bits % 8 != 0 {
            let last = bytes[expected - 1];
            let mask = 0xFFu8 >> (bits % 8);
            if last & mask != 0 {
                return Err(fail("nonzero padding bits"));
            }
        }
        Ok(Self {
            image_m,
            image_n,
            block_m,
            block_n,
            pef_len,
            p,
            q,
            payload,
        })
    }
}

/// Reads block `(bi, bj)` out of the image, zero-filled past the image
/// borders.
fn read_block(image: &CaState, bi: usize, bj: usize, bm: usize, bn: usize) -> CaState {
    let mut block = CaState::zeros(bm, bn).expect("block dims validated");
    for r in 0..bm {
        for c in 0..bn {
            let (i, j) = (bi * bm + r, bj * bn + c);
            if i < image.rows() && j < image.cols() && image.get(i, j) {
                block.set(r, c, true);
            }
        }
    }
    block
}

/// Writes `block` into position `(bi, bj)`, dropping bits past the image
/// borders.
fn write_block(image: &mut CaState, block: &CaState, bi: usize, bj: usize) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let (i, j) = (bi * block.rows() + r, bj * block.cols() + c);
            if i < image.rows() && j < image.cols() {
                image.set(i, j, block.get(r, c));
            }
        }
    }
}

fn encrypting_translation(layout: &Layout, key: &Key) -> Result<BitMatrix> {
    translation_matrix(key.enc_a % layout.p, key.enc_b % layout.q, layout.p, layout.q)
}

fn decrypting_translation(layout: &Layout, key: &Key) -> Result<BitMatrix> {
    let a = key.enc_a % layout.p;
    let b = key.enc_b % layout.q;
    translation_matrix((layout.p - a) % layout.p, (layout.q - b) % layout.q, layout.p, layout.q)
}

/// Compress then encrypt: per-block PEF extraction, zero-padding to `p*q`
/// bits, then one Boolean multiplication by the keyed translation.
pub fn encompress(image: &CaState, key: &Key) -> Result<EncompressedContainer> {
    let profile = key.validate()?;
    let layout = layout_for(image.rows(), image.cols(), key, &profile)?;

    let mut stream = BitVector::zeros(layout.p * layout.q);
    let mut cursor = 0;
    for bi in 0..layout.blocks_down {
        for bj in 0..layout.blocks_across {
            let block = read_block(image, bi, bj, key.block_m, key.block_n);
            let pef = classify(&block, &profile)?;
            for t in 0..pef.len() {
                if pef.get(t) {
                    stream.set(cursor + t, true);
                }
            }
            cursor += layout.bits_per_block;
        }
    }

    let payload = encrypting_translation(&layout, key)?.bool_apply(&stream)?;
    Ok(EncompressedContainer {
        image_m: checked_u16("image_m", layout.image_m)?,
        image_n: checked_u16("image_n", layout.image_n)?,
        block_m: checked_u8("block_m", key.block_m)?,
        block_n: checked_u8("block_n", key.block_n)?,
        pef_len: layout.pef_len as u32,
        p: checked_u16("p", layout.p)?,
        q: checked_u16("q", layout.q)?,
        payload,
    })
}

/// Decrypt then decompress: invert the translation, cut the PEF stream back
/// into per-block fields and emit each basin's attractor as its
/// representative.
pub fn dencompress(container: &EncompressedContainer, key: &Key) -> Result<CaState> {
    let profile = key.validate()?;
    let layout = layout_for(
        container.image_m as usize,
        container.image_n as usize,
        key,
        &profile,
    )?;
    if container.block_m as usize != key.block_m || container.block_n as usize != key.block_n {
        return Err(Error::KeyMismatch(format!(
            "container blocks {}x{}, key blocks {}x{}",
            container.block_m, container.block_n, key.block_m, key.block_n
        )));
    }
    if container.pef_len as usize != layout.pef_len
        || container.p as usize != layout.p
        || container.q as usize != layout.q
    {
        return Err(Error::KeyMismatch(format!(
            "container stream geometry (L={}, p={}, q={}) vs key-derived (L={}, p={}, q={})",
            container.pef_len, container.p, container.q, layout.pef_len, layout.p, layout.q
        )));
    }

    let stream = decrypting_translation(&layout, key)?.bool_apply(&container.payload)?;

    let mut image = CaState::zeros(layout.image_m, layout.image_n)?;
    let mut cursor = 0;
    for bi in 0..layout.blocks_down {
        for bj in 0..layout.blocks_across {
            let mut pef = BitVector::zeros(layout.bits_per_block);
            for t in 0..layout.bits_per_block {
                if stream.get(cursor + t) {
                    pef.set(t, true);
                }
            }
            cursor += layout.bits_per_block;
            let attractor = attractor_from_pef(&profile, &pef)?;
            write_block(&mut image, &attractor, bi, bj);
        }
    }
    Ok(image)
}

/// An exact ratio, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.max(1), den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Compressed bits per block over block cells: `ceil(lg k) / (m*n)`.
pub fn compression_ratio(key: &Key) -> Result<Ratio> {
    let profile = key.validate()?;
    Ok(Ratio::new(
        profile.attractor_dim as u64,
        (key.block_m * key.block_n) as u64,
    ))
}

/// The codec's loss metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distortion {
    pub hamming: usize,
    pub rate: f64,
}

/// Hamming distance between two equally sized states, absolute and as a
/// fraction of the cells.
pub fn distortion(a: &CaState, b: &CaState) -> Result<Distortion> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let hamming = a.vector().xor(b.vector())?.count_ones();
    Ok(Distortion {
        hamming,
        rate: hamming as f64 / a.cells() as f64,
    })
}
