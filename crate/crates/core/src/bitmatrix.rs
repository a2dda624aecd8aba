//! Dense binary matrices and vectors with two multiplication flavors.
//!
//! The same storage backs two algebras: GF(2) arithmetic (XOR-of-ANDs, used
//! for rule evolution, rank and kernel computations) and the Boolean semiring
//! (OR-of-ANDs, used for the rule-matrix closure). Bits are packed row-major,
//! most significant bit first within each 64-bit word, which matches PBM P4
//! packing and the row-major state numbering used throughout.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on matrix rows/cols. Everything in this crate works at desk
/// scale; beyond this the closure and power computations stop being useful
/// long before they finish.
pub const MAX_DIM: usize = 4096;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn word_and_mask(bit: usize) -> (usize, u64) {
    (bit / WORD_BITS, 1u64 << (WORD_BITS - 1 - bit % WORD_BITS))
}

/// Which product to use for repeated multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    /// XOR-of-ANDs, the linear-CA product.
    Gf2,
    /// OR-of-ANDs, the semiring product.
    Boolean,
}

/// A dense bit vector. Length zero is allowed (a PEF over a single attractor
/// is empty).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector whose bits spell out `value` with the first bit most
    /// significant, the numbering convention for row-major states.
    pub fn from_value(len: usize, value: u64) -> Self {
        assert!(len <= 64, "from_value supports at most 64 bits");
        if len < 64 {
            assert!(value < 1 << len, "value {value} does not fit in {len} bits");
        }
        let mut v = Self::zeros(len);
        for i in 0..len {
            if value >> (len - 1 - i) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of '0'/'1' characters.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::ParseMatrix(format!("unexpected character {other:?}"))),
            }
        }
        Ok(v)
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let (w, m) = word_and_mask(i);
        self.words[w] & m != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let (w, m) = word_and_mask(i);
        if value {
            self.words[w] |= m;
        } else {
            self.words[w] &= !m;
        }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        Ok(out)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Decimal value with the first bit most significant. Only meaningful at
    /// enumeration scale.
    pub fn value(&self) -> u64 {
        assert!(self.len <= 64, "value() supports at most 64 bits");
        (0..self.len).fold(0, |acc, i| acc << 1 | u64::from(self.get(i)))
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    /// Packs the bits into bytes, most significant bit first, final byte
    /// zero-padded. Matches P4 pixel rows and the container payload.
    pub fn to_be_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for i in 0..self.len {
            if self.get(i) {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    /// Inverse of [`to_be_bytes`](Self::to_be_bytes); trailing pad bits are
    /// ignored.
    pub fn from_be_bytes(len: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() < len.div_ceil(8) {
            return Err(Error::LengthMismatch {
                expected: len.div_ceil(8),
                found: bytes.len(),
            });
        }
        let mut v = Self::zeros(len);
        for i in 0..len {
            if bytes[i / 8] & (0x80 >> (i % 8)) != 0 {
                v.set(i, true);
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// A dense binary matrix. Dimensions are fixed at construction; all
/// operations hand back fresh values, so sharing across threads is free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    /// Words per row; each row starts on a word boundary.
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    fn check_dims(rows: usize, cols: usize) -> Result<()> {
        if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        Ok(())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::check_dims(rows, cols)?;
        let stride = words_for(cols);
        Ok(Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    /// Parses rows given as '0'/'1' strings, all of equal length.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        Self::check_dims(height, width)?;
        let mut m = Self::zeros(height, width)?;
        for (r, line) in rows.iter().enumerate() {
            if line.len() != width {
                return Err(Error::ParseMatrix(format!(
                    "row {r} has {} columns, expected {width}",
                    line.len()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    other => {
                        return Err(Error::ParseMatrix(format!("unexpected character {other:?}")))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        let (w, m) = word_and_mask(c);
        self.words[r * self.stride + w] & m != 0
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        let (w, m) = word_and_mask(c);
        if value {
            self.words[r * self.stride + w] |= m;
        } else {
            self.words[r * self.stride + w] &= !m;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    /// Column indices of the 1s in row `r`, ascending.
    fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let lead = rest.leading_zeros() as usize;
                rest &= !(1u64 << (WORD_BITS - 1 - lead));
                Some(wi * WORD_BITS + lead)
            })
        })
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r)).expect("dims already validated")
    }

    /// Entrywise XOR, the GF(2) matrix sum.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(other));
        }
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        Ok(out)
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    fn product_with(&self, other: &Self, boolean: bool) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch(other));
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            let dst = i * out.stride;
            for k in self.row_ones(i) {
                let src = k * other.stride;
                for w in 0..other.stride {
                    if boolean {
                        out.words[dst + w] |= other.words[src + w];
                    } else {
                        out.words[dst + w] ^= other.words[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// OR-of-ANDs product: entry (i,j) of the result is the OR over k of
    /// `a(i,k) AND b(k,j)`.
    pub fn bool_product(&self, other: &Self) -> Result<Self> {
        self.product_with(other, true)
    }

    /// XOR-of-ANDs product over GF(2).
    pub fn gf2_product(&self, other: &Self) -> Result<Self> {
        self.product_with(other, false)
    }

    fn apply_with(&self, v: &BitVector, boolean: bool) -> Result<BitVector> {
        if self.cols != v.len {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len,
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut ones = 0usize;
            for (a, b) in self.row_words(r).iter().zip(&v.words) {
                ones += (a & b).count_ones() as usize;
            }
            let bit = if boolean { ones > 0 } else { ones % 2 == 1 };
            if bit {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over GF(2); `v` is treated as a column.
    pub fn gf2_apply(&self, v: &BitVector) -> Result<BitVector> {
        self.apply_with(v, false)
    }

    /// Matrix-vector product in the Boolean semiring.
    pub fn bool_apply(&self, v: &BitVector) -> Result<BitVector> {
        self.apply_with(v, true)
    }

    /// `self^k` under the chosen product; `k = 0` yields the identity.
    pub fn pow(&self, k: usize, kind: ProductKind) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let product = match kind {
            ProductKind::Gf2 => Self::gf2_product,
            ProductKind::Boolean => Self::bool_product,
        };
        let mut result = Self::identity(self.rows)?;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = product(&result, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = product(&base, &base)?;
            }
        }
        Ok(result)
    }

    /// Rank over GF(2) by forward elimination. Pivot choice is the lowest
    /// remaining row with a 1 in the pivot column, so runs are reproducible.
    pub fn gf2_rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            let (cw, cm) = word_and_mask(col);
            let pivot = (rank..work.rows).find(|&r| work.words[r * work.stride + cw] & cm != 0);
            let Some(pivot) = pivot else { continue };
            work.swap_rows(rank, pivot);
            for r in rank + 1..work.rows {
                if work.words[r * work.stride + cw] & cm != 0 {
                    work.xor_rows(rank, r);
                }
            }
            rank += 1;
            if rank == work.rows {
                break;
            }
        }
        rank
    }

    /// Solves `self * x = y` over GF(2). The kernel basis comes back in
    /// reduced echelon order (one vector per free column, ascending), so
    /// enumerating solutions is reproducible.
    pub fn gf2_solve_affine(&self, y: &BitVector) -> Result<AffineSolutionSet> {
        if self.rows != y.len {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: y.len,
            });
        }
        let mut a = self.clone();
        let mut rhs = y.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)

        for col in 0..a.cols {
            let row = pivots.len();
            let (cw, cm) = word_and_mask(col);
            let Some(pivot) = (row..a.rows).find(|&r| a.words[r * a.stride + cw] & cm != 0) else {
                continue;
            };
            a.swap_rows(row, pivot);
            let rb = rhs.get(row);
            let pb = rhs.get(pivot);
            rhs.set(row, pb);
            rhs.set(pivot, rb);
            // Jordan step: clear the column everywhere else so free-column
            // reads below come straight out of the reduced form.
            for r in 0..a.rows {
                if r != row && a.words[r * a.stride + cw] & cm != 0 {
                    a.xor_rows(row, r);
                    let v = rhs.get(r) ^ rhs.get(row);
                    rhs.set(r, v);
                }
            }
            pivots.push((row, col));
            if pivots.len() == a.rows {
                break;
            }
        }

        for r in pivots.len()..a.rows {
            if rhs.get(r) {
                return Ok(AffineSolutionSet::Inconsistent);
            }
        }

        let mut particular = BitVector::zeros(a.cols);
        for &(row, col) in &pivots {
            if rhs.get(row) {
                particular.set(col, true);
            }
        }

        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut kernel_basis = Vec::with_capacity(a.cols - pivots.len());
        for free in (0..a.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = BitVector::zeros(a.cols);
            v.set(free, true);
            for &(row, col) in &pivots {
                if a.get(row, free) {
                    v.set(col, true);
                }
            }
            kernel_basis.push(v);
        }

        Ok(AffineSolutionSet::Affine {
            particular,
            kernel_basis,
        })
    }

    /// True iff every row and every column holds exactly one 1. Such a
    /// matrix is invertible, and its Boolean and GF(2) actions coincide.
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut col_seen = vec![false; self.cols];
        for r in 0..self.rows {
            let mut ones = self.row_ones(r);
            let Some(c) = ones.next() else { return false };
            if ones.next().is_some() || col_seen[c] {
                return false;
            }
            col_seen[c] = true;
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// XORs row `src` into row `dst`.
    fn xor_rows(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        for w in 0..self.stride {
            let s = self.words[src * self.stride + w];
            self.words[dst * self.stride + w] ^= s;
        }
    }

    pub fn row_string(&self, r: usize) -> String {
        (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect()
    }

    /// Textual dump: first line "rows cols", then one '0'/'1' line per row.
    pub fn to_dump(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            out.push_str(&self.row_string(r));
            out.push('\n');
        }
        out
    }

    /// Parses the dump format produced by [`to_dump`](Self::to_dump).
    pub fn from_dump(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::ParseMatrix("empty dump".into()))?;
        let mut parts = header.split_whitespace();
        let rows: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::ParseMatrix("bad header".into()))?;
        let cols: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::ParseMatrix("bad header".into()))?;
        if parts.next().is_some() {
            return Err(Error::ParseMatrix("trailing tokens in header".into()));
        }
        let body: Vec<&str> = lines.collect();
        if body.len() != rows {
            return Err(Error::ParseMatrix(format!(
                "expected {rows} rows, found {}",
                body.len()
            )));
        }
        let m = Self::from_rows(&body)?;
        if m.cols != cols {
            return Err(Error::ParseMatrix(format!(
                "expected {cols} cols, found {}",
                m.cols
            )));
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{} ", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("/")?;
            }
            f.write_str(&self.row_string(r))?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row_string(r))?;
        }
        Ok(())
    }
}

/// Solution set of a linear system over GF(2): either empty or an affine
/// subspace `particular + span(kernel_basis)` with exactly
/// `2^kernel_basis.len()` members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolutionSet {
    Inconsistent,
    Affine {
        particular: BitVector,
        kernel_basis: Vec<BitVector>,
    },
}

impl AffineSolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Inconsistent)
    }

    pub fn kernel_dim(&self) -> usize {
        match self {
            Self::Inconsistent => 0,
            Self::Affine { kernel_basis, .. } => kernel_basis.len(),
        }
    }

    pub fn particular(&self) -> Option<&BitVector> {
        match self {
            Self::Inconsistent => None,
            Self::Affine { particular, .. } => Some(particular),
        }
    }

    pub fn kernel_basis(&self) -> &[BitVector] {
        match self {
            Self::Inconsistent => &[],
            Self::Affine { kernel_basis, .. } => kernel_basis,
        }
    }

    pub fn solution_count(&self) -> u128 {
        match self {
            Self::Inconsistent => 0,
            Self::Affine { kernel_basis, .. } => {
                assert!(kernel_basis.len() < 128, "solution count overflows u128");
                1 << kernel_basis.len()
            }
        }
    }

    /// All solutions, in binary counting order over the kernel coefficients
    /// (the particular solution first). Only sensible at enumeration scale.
    pub fn enumerate(&self) -> Vec<BitVector> {
        match self {
            Self::Inconsistent => Vec::new(),
            Self::Affine {
                particular,
                kernel_basis,
            } => {
                assert!(
                    kernel_basis.len() <= 24,
                    "refusing to enumerate 2^{} solutions",
                    kernel_basis.len()
                );
                let mut out = Vec::with_capacity(1 << kernel_basis.len());
                for mask in 0u64..1 << kernel_basis.len() {
                    let mut v = particular.clone();
                    for (j, basis) in kernel_basis.iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            v.xor_assign(basis);
                        }
                    }
                    out.push(v);
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> BitMatrix {
        BitMatrix::from_rows(&["0001", "1000", "0100", "0010"]).unwrap()
    }

    #[test]
    fn identity_laws() {
        let a = BitMatrix::from_rows(&["1011", "0110", "1111", "0001"]).unwrap();
        let id = BitMatrix::identity(4).unwrap();
        assert_eq!(id.bool_product(&a).unwrap(), a);
        assert_eq!(id.gf2_product(&a).unwrap(), a);
        assert_eq!(a.bool_product(&id).unwrap(), a);
        assert_eq!(a.gf2_product(&id).unwrap(), a);
    }

    #[test]
    fn printed_periodic_partition_blocks_multiply_to_identity() {
        let t2 = t1().transpose();
        assert_eq!(t1().bool_product(&t2).unwrap(), BitMatrix::identity(4).unwrap());
        assert!(t1().is_permutation());
        assert!(t2.is_permutation());
    }

    #[test]
    fn product_dimension_mismatch() {
        let a = BitMatrix::zeros(2, 3).unwrap();
        let b = BitMatrix::zeros(2, 3).unwrap();
        assert!(matches!(
            a.bool_product(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            a.gf2_product(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dimension_cap() {
        assert!(BitMatrix::zeros(MAX_DIM, 1).is_ok());
        assert!(matches!(
            BitMatrix::zeros(MAX_DIM + 1, 1),
            Err(Error::InvalidDimensions { .. })
        ));
        assert!(matches!(
            BitMatrix::zeros(0, 4),
            Err(Error::InvalidDimensions { .. })
        ));
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(BitMatrix::identity(5).unwrap().gf2_rank(), 5);
        assert_eq!(BitMatrix::zeros(4, 7).unwrap().gf2_rank(), 0);
    }

    #[test]
    fn solve_identity_is_unique() {
        let id = BitMatrix::identity(3).unwrap();
        let v = BitVector::from_value(3, 5);
        let sol = id.gf2_solve_affine(&v).unwrap();
        assert_eq!(sol.solution_count(), 1);
        assert_eq!(sol.enumerate(), vec![v]);
    }

    #[test]
    fn solve_checks_dimensions() {
        let id = BitMatrix::identity(3).unwrap();
        assert!(matches!(
            id.gf2_solve_affine(&BitVector::zeros(4)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn power_zero_is_identity() {
        let a = BitMatrix::from_rows(&["01", "11"]).unwrap();
        assert_eq!(a.pow(0, ProductKind::Gf2).unwrap(), BitMatrix::identity(2).unwrap());
        assert_eq!(a.pow(0, ProductKind::Boolean).unwrap(), BitMatrix::identity(2).unwrap());
    }

    #[test]
    fn power_requires_square() {
        let a = BitMatrix::zeros(2, 3).unwrap();
        assert!(matches!(a.pow(2, ProductKind::Gf2), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn permutation_checks() {
        assert!(BitMatrix::identity(6).unwrap().is_permutation());
        let m69 = BitMatrix::from_rows(&["1001", "0100", "0010", "1001"]).unwrap();
        assert!(!m69.is_permutation());
        assert!(!BitMatrix::zeros(3, 3).unwrap().is_permutation());
        assert!(!BitMatrix::zeros(2, 3).unwrap().is_permutation());
    }

    #[test]
    fn dump_round_trip() {
        let m = BitMatrix::from_rows(&["10101", "01010", "11111"]).unwrap();
        let dump = m.to_dump();
        assert_eq!(dump, "3 5\n10101\n01010\n11111\n");
        assert_eq!(BitMatrix::from_dump(&dump).unwrap(), m);
        assert!(BitMatrix::from_dump("2 2\n10\n").is_err());
        assert!(BitMatrix::from_dump("").is_err());
    }

    #[test]
    fn vector_value_round_trip() {
        for v in 0..16 {
            assert_eq!(BitVector::from_value(4, v).value(), v);
        }
        assert_eq!(BitVector::from_value(4, 9).to_bit_string(), "1001");
    }

    #[test]
    fn vector_byte_packing() {
        let v = BitVector::from_bit_str("101000011").unwrap();
        assert_eq!(v.to_be_bytes(), vec![0xA1, 0x80]);
        assert_eq!(BitVector::from_be_bytes(9, &[0xA1, 0x80]).unwrap(), v);
        assert!(BitVector::from_be_bytes(9, &[0xA1]).is_err());
    }

    #[test]
    fn wide_matrix_crosses_word_boundaries() {
        let n = 70;
        let mut a = BitMatrix::zeros(n, n).unwrap();
        for i in 0..n {
            a.set(i, (i + 1) % n, true);
        }
        assert!(a.is_permutation());
        let p = a.pow(n, ProductKind::Boolean).unwrap();
        assert_eq!(p, BitMatrix::identity(n).unwrap());
        assert_eq!(a.gf2_rank(), n);
    }
}
