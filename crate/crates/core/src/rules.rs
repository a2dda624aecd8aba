//! Rule matrices for two-dimensional nine-neighborhood linear CA.
//!
//! The nine fundamental rules each make a cell read exactly one cell of its
//! Moore neighborhood; a general linear rule XORs a subset of them and its
//! rule number is the sum of the chosen fundamentals. Every fundamental
//! matrix is built twice: from the published diagonal/block layout and from
//! a direct neighborhood oracle. A disagreement is an implementation bug and
//! construction refuses to hand the matrix out.

use std::fmt;
use std::str::FromStr;

use crate::bitmatrix::{BitMatrix, BitVector, MAX_DIM};
use crate::error::{Error, Result};

/// The nine single-neighbor dependencies, ascending.
pub const FUNDAMENTAL_RULES: [u16; 9] = [1, 2, 4, 8, 16, 32, 64, 128, 256];

/// Largest valid rule number: any subset of the nine fundamentals.
pub const MAX_RULE: u16 = 511;

/// How out-of-grid neighbors read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Outside cells are constant 0.
    Null,
    /// The grid wraps toroidally.
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Null => "null",
            Boundary::Periodic => "periodic",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "null" => Ok(Boundary::Null),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::ParseMatrix(format!(
                "unknown boundary {other:?} (expected \"null\" or \"periodic\")"
            ))),
        }
    }
}

/// A rule applied uniformly to an `m x n` grid under a boundary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSpec {
    pub rule: u16,
    pub boundary: Boundary,
    pub m: usize,
    pub n: usize,
}

impl RuleSpec {
    pub fn new(rule: u16, boundary: Boundary, m: usize, n: usize) -> Result<Self> {
        if rule > MAX_RULE {
            return Err(Error::RuleOutOfRange(rule));
        }
        if m == 0 || n == 0 || m.saturating_mul(n) > MAX_DIM {
            return Err(Error::InvalidDimensions { rows: m, cols: n });
        }
        Ok(Self { rule, boundary, m, n })
    }

    /// Number of cells, which is also the rule-matrix dimension.
    pub fn cells(&self) -> usize {
        self.m * self.n
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} ({} {}x{})", self.rule, self.boundary, self.m, self.n)
    }
}

/// Offset of the neighbor a fundamental rule reads; `dr = +1` is the row
/// below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborOffset {
    pub dr: i32,
    pub dc: i32,
}

/// Decomposes a rule number into its fundamental components, ascending.
pub fn decompose_rule(rule: u16) -> Result<Vec<u16>> {
    if rule > MAX_RULE {
        return Err(Error::RuleOutOfRange(rule));
    }
    Ok(FUNDAMENTAL_RULES
        .iter()
        .copied()
        .filter(|f| rule & f != 0)
        .collect())
}

/// The neighbor each fundamental rule reads, per the rule-numbering grid
/// (the current cell is 1, `dr = +1` is the row below):
///
/// ```text
/// 64  128  256
/// 32    1    2
/// 16    8    4
/// ```
pub fn neighbor_offset(fundamental: u16) -> Result<NeighborOffset> {
    let (dr, dc) = match fundamental {
        1 => (0, 0),
        2 => (0, 1),
        4 => (1, 1),
        8 => (1, 0),
        16 => (1, -1),
        32 => (0, -1),
        64 => (-1, -1),
        128 => (-1, 0),
        256 => (-1, 1),
        other => return Err(Error::NotFundamental(other)),
    };
    Ok(NeighborOffset { dr, dc })
}

/// The two masking sequences used on the null-boundary diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskKind {
    /// `(n-1)` ones then a zero, repeating.
    S1,
    /// A zero then `(n-1)` ones, repeating.
    S2,
}

/// Expands a masking sequence to `length` bits for an `n`-column grid.
pub fn mask_sequence(kind: MaskKind, n: usize, length: usize) -> BitVector {
    assert!(n >= 1, "column count must be positive");
    let mut v = BitVector::zeros(length);
    for i in 0..length {
        let one = match kind {
            MaskKind::S1 => i % n != n - 1,
            MaskKind::S2 => i % n != 0,
        };
        if one {
            v.set(i, true);
        }
    }
    v
}

/// Direct reading of the neighbor dependency: a 1 at `(p, q)` iff cell `q`
/// is the designated neighbor of cell `p`. This is the definition; the
/// layout construction below must reproduce it.
fn oracle_matrix(fundamental: u16, boundary: Boundary, m: usize, n: usize) -> Result<BitMatrix> {
    let offset = neighbor_offset(fundamental)?;
    let cells = m * n;
    let mut out = BitMatrix::zeros(cells, cells)?;
    for i in 0..m as i64 {
        for j in 0..n as i64 {
            let (ni, nj) = (i + i64::from(offset.dr), j + i64::from(offset.dc));
            let neighbor = match boundary {
                Boundary::Null => {
                    if ni < 0 || ni >= m as i64 || nj < 0 || nj >= n as i64 {
                        None
                    } else {
                        Some((ni as usize, nj as usize))
                    }
                }
                Boundary::Periodic => Some((
                    ni.rem_euclid(m as i64) as usize,
                    nj.rem_euclid(n as i64) as usize,
                )),
            };
            if let Some((ni, nj)) = neighbor {
                out.set((i as usize) * n + j as usize, ni * n + nj, true);
            }
        }
    }
    Ok(out)
}

/// Places `mask` along the `d`-th superdiagonal: entry `(p, p+d)` is set
/// when `mask[p]` is.
fn superdiagonal(size: usize, d: usize, mask: &BitVector) -> Result<BitMatrix> {
    let mut out = BitMatrix::zeros(size, size)?;
    for p in 0..size.saturating_sub(d) {
        if mask.get(p) {
            out.set(p, p + d, true);
        }
    }
    Ok(out)
}

fn all_ones(len: usize) -> BitVector {
    let mut v = BitVector::zeros(len);
    for i in 0..len {
        v.set(i, true);
    }
    v
}

/// The five published null-boundary layouts; the other four fundamentals are
/// their mirror images and come out by transposition.
fn null_layout(fundamental: u16, m: usize, n: usize) -> Result<BitMatrix> {
    let size = m * n;
    match fundamental {
        1 => BitMatrix::identity(size),
        2 => superdiagonal(size, 1, &mask_sequence(MaskKind::S1, n, size)),
        4 => superdiagonal(size, n + 1, &mask_sequence(MaskKind::S1, n, size)),
        8 => superdiagonal(size, n, &all_ones(size)),
        16 => superdiagonal(size, n - 1, &mask_sequence(MaskKind::S2, n, size)),
        32 => Ok(null_layout(2, m, n)?.transpose()),
        64 => Ok(null_layout(4, m, n)?.transpose()),
        128 => Ok(null_layout(8, m, n)?.transpose()),
        256 => Ok(null_layout(16, m, n)?.transpose()),
        other => Err(Error::NotFundamental(other)),
    }
}

/// Cyclic down-shift block: a 1 at `(0, n-1)` and at `(i, i-1)`.
fn t1_block(n: usize) -> Result<BitMatrix> {
    BitMatrix::from_fn(n, n, |r, c| (r + n - 1) % n == c)
}

/// Cyclic up-shift block, the transpose of [`t1_block`].
fn t2_block(n: usize) -> Result<BitMatrix> {
    BitMatrix::from_fn(n, n, |r, c| (r + 1) % n == c)
}

/// Writes `block` into the `(bi, bj)` position of an `m x m` block grid of
/// `n x n` blocks.
fn place_block(out: &mut BitMatrix, bi: usize, bj: usize, block: &BitMatrix, n: usize) {
    for r in 0..n {
        for c in 0..n {
            if block.get(r, c) {
                out.set(bi * n + r, bj * n + c, true);
            }
        }
    }
}

/// The periodic block layouts: diagonal blocks for rules 1 and 2, the block
/// superdiagonal plus the wrap-around corner for rules 4, 8 and 16. The
/// within-block shift is uniform across the placed blocks, which is the only
/// reading consistent with the neighborhood oracle.
fn periodic_layout(fundamental: u16, m: usize, n: usize) -> Result<BitMatrix> {
    let size = m * n;
    let mut out = BitMatrix::zeros(size, size)?;
    match fundamental {
        1 | 2 => {
            let block = if fundamental == 1 {
                BitMatrix::identity(n)?
            } else {
                t2_block(n)?
            };
            for i in 0..m {
                place_block(&mut out, i, i, &block, n);
            }
        }
        4 | 8 | 16 => {
            let block = match fundamental {
                4 => t2_block(n)?,
                8 => BitMatrix::identity(n)?,
                _ => t1_block(n)?,
            };
            for i in 0..m {
                place_block(&mut out, i, (i + 1) % m, &block, n);
            }
        }
        32 => return Ok(periodic_layout(2, m, n)?.transpose()),
        64 => return Ok(periodic_layout(4, m, n)?.transpose()),
        128 => return Ok(periodic_layout(8, m, n)?.transpose()),
        256 => return Ok(periodic_layout(16, m, n)?.transpose()),
        other => return Err(Error::NotFundamental(other)),
    }
    Ok(out)
}

/// Builds the `(mn x mn)` matrix of one fundamental rule. The diagonal/block
/// layout and the neighborhood oracle are computed independently and must
/// agree.
pub fn fundamental_matrix(
    fundamental: u16,
    boundary: Boundary,
    m: usize,
    n: usize,
) -> Result<BitMatrix> {
    if m == 0 || n == 0 || m.saturating_mul(n) > MAX_DIM {
        return Err(Error::InvalidDimensions { rows: m, cols: n });
    }
    let oracle = oracle_matrix(fundamental, boundary, m, n)?;
    let layout = match boundary {
        Boundary::Null => null_layout(fundamental, m, n)?,
        Boundary::Periodic => periodic_layout(fundamental, m, n)?,
    };
    if oracle != layout {
        return Err(Error::ConstructionMismatch {
            rule: fundamental,
            boundary,
            m,
            n,
        });
    }
    Ok(oracle)
}

/// The transformation matrix of a linear rule: the GF(2) sum of its
/// fundamental matrices. Multiplying it onto a flattened state yields the
/// next state.
pub fn rule_matrix(spec: &RuleSpec) -> Result<BitMatrix> {
    let mut acc = BitMatrix::zeros(spec.cells(), spec.cells())?;
    for fundamental in decompose_rule(spec.rule)? {
        acc = acc.xor(&fundamental_matrix(fundamental, spec.boundary, spec.m, spec.n)?)?;
    }
    Ok(acc)
}
