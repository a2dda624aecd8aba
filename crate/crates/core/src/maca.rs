//! Multiple-attractor analysis of 2-D linear CA.
//!
//! A rule is treated as a multiple-attractor CA (MACA) when its matrix
//! becomes idempotent: the smallest `d` with `T^(d+1) == T^d` is the depth,
//! every cycle is then a fixed point, and the fixed points form the kernel
//! of `T XOR I`, so the attractor count is a power of two. The
//! pseudo-exhaustive field (PEF) is a minimal set of cells whose bits
//! distinguish all attractors; those bits are the compressed form of a
//! basin.

use crate::bitmatrix::{AffineSolutionSet, BitMatrix, BitVector, ProductKind};
use crate::error::{Error, Result};
use crate::rules::{rule_matrix, Boundary, RuleSpec, MAX_RULE};

/// Exhaustive state enumeration stops here: 2^20 states.
pub const MAX_ENUMERATION_CELLS: usize = 20;

/// Cap on grid cells for a single state, sized for desk-scale images.
const MAX_STATE_CELLS: usize = 1 << 26;

/// An `m x n` binary grid. Its decimal value reads the cells row by row with
/// the top-left cell as the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaState {
    m: usize,
    n: usize,
    bits: BitVector,
}

impl CaState {
    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 || m.saturating_mul(n) > MAX_STATE_CELLS {
            return Err(Error::InvalidDimensions { rows: m, cols: n });
        }
        Ok(Self {
            m,
            n,
            bits: BitVector::zeros(m * n),
        })
    }

    /// Builds the state with the given decimal value.
    pub fn from_value(m: usize, n: usize, value: u64) -> Result<Self> {
        let mut state = Self::zeros(m, n)?;
        let cells = m * n;
        if cells > 64 {
            return Err(Error::StateSpaceTooLarge {
                cells,
                limit: 64,
            });
        }
        if cells < 64 && value >= 1 << cells {
            return Err(Error::LengthMismatch {
                expected: cells,
                found: 64 - value.leading_zeros() as usize,
            });
        }
        state.bits = BitVector::from_value(cells, value);
        Ok(state)
    }

    /// Wraps a row-major flattening.
    pub fn from_vector(m: usize, n: usize, bits: BitVector) -> Result<Self> {
        if bits.len() != m * n {
            return Err(Error::LengthMismatch {
                expected: m * n,
                found: bits.len(),
            });
        }
        let mut state = Self::zeros(m, n)?;
        state.bits = bits;
        Ok(state)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> usize {
        self.m * self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.m && j < self.n, "cell ({i},{j}) out of range");
        self.bits.get(i * self.n + j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.m && j < self.n, "cell ({i},{j}) out of range");
        self.bits.set(i * self.n + j, value);
    }

    /// Row-major flattening.
    pub fn vector(&self) -> &BitVector {
        &self.bits
    }

    /// Decimal value; only available at enumeration scale.
    pub fn value(&self) -> u64 {
        self.bits.value()
    }
}

/// One rule step: multiply the transformation matrix onto the flattened
/// state.
pub fn evolve(x: &CaState, t: &BitMatrix) -> Result<CaState> {
    if t.rows() != x.cells() || t.cols() != x.cells() {
        return Err(Error::DimensionMismatch {
            left_rows: t.rows(),
            left_cols: t.cols(),
            right_rows: x.cells(),
            right_cols: 1,
        });
    }
    CaState::from_vector(x.rows(), x.cols(), t.gf2_apply(x.vector())?)
}

/// The complete state-transition diagram of a rule at enumeration scale.
/// States are identified by their decimal value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionDiagram {
    /// Successor of every state.
    pub successor: Vec<u32>,
    /// Cycle states, ascending.
    pub attractors: Vec<u64>,
    /// For each state, the index in `attractors` of the first cycle state
    /// its trajectory reaches.
    pub basin_of: Vec<u32>,
    /// Steps until the trajectory first hits a cycle state.
    pub depth_of: Vec<u32>,
    /// States with no predecessor, ascending.
    pub non_reachable: Vec<u64>,
}

impl TransitionDiagram {
    pub fn state_count(&self) -> usize {
        self.successor.len()
    }

    pub fn max_depth(&self) -> u32 {
        self.depth_of.iter().copied().max().unwrap_or(0)
    }

    /// Number of states per depth, indexed by depth.
    pub fn depth_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_depth() as usize + 1];
        for &d in &self.depth_of {
            hist[d as usize] += 1;
        }
        hist
    }
}

/// Enumerates all `2^(mn)` states and resolves every trajectory.
pub fn build_std(spec: &RuleSpec) -> Result<TransitionDiagram> {
    let cells = spec.cells();
    if cells > MAX_ENUMERATION_CELLS {
        return Err(Error::StateSpaceTooLarge {
            cells,
            limit: MAX_ENUMERATION_CELLS,
        });
    }
    let t = rule_matrix(spec)?;

    // Row masks in state-value bit order (cell q sits at bit cells-1-q).
    let masks: Vec<u32> = (0..cells)
        .map(|p| {
            let mut mask = 0u32;
            for q in 0..cells {
                if t.get(p, q) {
                    mask |= 1 << (cells - 1 - q);
                }
            }
            mask
        })
        .collect();

    let count = 1usize << cells;
    let mut successor = vec![0u32; count];
    for (v, slot) in successor.iter_mut().enumerate() {
        let mut next = 0u32;
        for (p, &mask) in masks.iter().enumerate() {
            if (mask & v as u32).count_ones() % 2 == 1 {
                next |= 1 << (cells - 1 - p);
            }
        }
        *slot = next;
    }

    // Trajectory resolution: 0 = unvisited, 1 = on the current path, 2 = done.
    let mut status = vec![0u8; count];
    let mut depth_of = vec![0u32; count];
    let mut target = vec![0u32; count]; // first cycle state reached
    let mut on_cycle = vec![false; count];
    let mut path: Vec<usize> = Vec::new();
    for start in 0..count {
        if status[start] != 0 {
            continue;
        }
        path.clear();
        let mut cur = start;
        while status[cur] == 0 {
            status[cur] = 1;
            path.push(cur);
            cur = successor[cur] as usize;
        }
        let mut tail = path.len();
        if status[cur] == 1 {
            // Closed a new cycle; everything from the first visit of `cur`
            // onward lies on it.
            let pos = path.iter().position(|&s| s == cur).expect("cur is on path");
            for &s in &path[pos..] {
                on_cycle[s] = true;
                depth_of[s] = 0;
                target[s] = s as u32;
                status[s] = 2;
            }
            tail = pos;
        }
        for &s in path[..tail].iter().rev() {
            let next = successor[s] as usize;
            depth_of[s] = depth_of[next] + 1;
            target[s] = if on_cycle[next] { next as u32 } else { target[next] };
            status[s] = 2;
        }
    }

    let attractors: Vec<u64> = (0..count).filter(|&s| on_cycle[s]).map(|s| s as u64).collect();
    let basin_of: Vec<u32> = (0..count)
        .map(|s| {
            attractors
                .binary_search(&u64::from(target[s]))
                .expect("target is an attractor") as u32
        })
        .collect();

    let mut has_pred = vec![false; count];
    for &next in &successor {
        has_pred[next as usize] = true;
    }
    let non_reachable: Vec<u64> = (0..count)
        .filter(|&s| !has_pred[s])
        .map(|s| s as u64)
        .collect();

    Ok(TransitionDiagram {
        successor,
        attractors,
        basin_of,
        depth_of,
        non_reachable,
    })
}

/// How to find the pseudo-exhaustive positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PefStrategy {
    /// Greedy rank-increasing column selection over the basis matrix,
    /// scanning cells in row-major order.
    LinearAlgebra,
    /// First subset of size `lg k`, in lexicographic order, whose projection
    /// takes all `2^(lg k)` values. The correctness oracle.
    BruteForce,
}

/// Linear-algebra view of one rule at one grid size: depth, rank, attractor
/// space and its pseudo-exhaustive field. Built without state enumeration.
#[derive(Debug, Clone)]
pub struct MacaProfile {
    pub spec: RuleSpec,
    pub is_maca: bool,
    /// Smallest `d` with `T^(d+1) == T^d`; 0 for the identity rule.
    pub depth: usize,
    /// Rank of the transformation matrix over GF(2).
    pub rank: usize,
    /// `log2` of the attractor count.
    pub attractor_dim: usize,
    /// Basis of the fixed-point space `ker(T XOR I)`.
    pub attractor_basis: Vec<BitVector>,
    /// Cell indices (row-major, ascending) whose bits identify an attractor.
    pub pef_positions: Vec<usize>,
    matrix: BitMatrix,
    /// `T^d`, cached; applying it once settles any state onto its attractor.
    collapse: Option<BitMatrix>,
    /// Maps PEF bits back to the full attractor.
    solver: Option<BitMatrix>,
}

impl MacaProfile {
    /// The transformation matrix `T`.
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Attractor count `k = 2^attractor_dim`.
    pub fn attractor_count(&self) -> u128 {
        assert!(self.attractor_dim < 128, "attractor count overflows u128");
        1 << self.attractor_dim
    }

    /// All attractors, in binary counting order over the basis coefficients.
    pub fn attractors(&self) -> Vec<CaState> {
        let zero = BitVector::zeros(self.spec.cells());
        let set = AffineSolutionSet::Affine {
            particular: zero,
            kernel_basis: self.attractor_basis.clone(),
        };
        set.enumerate()
            .into_iter()
            .map(|v| CaState::from_vector(self.spec.m, self.spec.n, v).expect("basis length"))
            .collect()
    }
}

/// Analyzes one rule by linear algebra alone.
pub fn maca_profile(spec: &RuleSpec) -> Result<MacaProfile> {
    let t = rule_matrix(spec)?;
    let cells = spec.cells();

    // Depth: walk T^d until idempotence; past `cells` steps the image chain
    // has long stabilized and the rule can never become idempotent.
    let mut depth = None;
    let mut prev = BitMatrix::identity(cells)?;
    let mut cur = t.clone();
    for d in 0..=cells {
        if cur == prev {
            depth = Some(d);
            break;
        }
        prev = cur.clone();
        cur = cur.gf2_product(&t)?;
    }

    let rank = t.gf2_rank();
    let Some(depth) = depth else {
        return Ok(MacaProfile {
            spec: *spec,
            is_maca: false,
            depth: 0,
            rank,
            attractor_dim: 0,
            attractor_basis: Vec::new(),
            pef_positions: Vec::new(),
            matrix: t,
            collapse: None,
            solver: None,
        });
    };

    let fixed = t.xor(&BitMatrix::identity(cells)?)?;
    let kernel = fixed.gf2_solve_affine(&BitVector::zeros(cells))?;
    let attractor_basis = kernel.kernel_basis().to_vec();
    let attractor_dim = attractor_basis.len();
    let positions = pef_positions(&attractor_basis, PefStrategy::LinearAlgebra);
    let solver = pef_solver(&attractor_basis, &positions)?;
    let collapse = t.pow(depth, ProductKind::Gf2)?;

    Ok(MacaProfile {
        spec: *spec,
        is_maca: true,
        depth,
        rank,
        attractor_dim,
        attractor_basis,
        pef_positions: positions,
        matrix: t,
        collapse: Some(collapse),
        solver,
    })
}

/// Column `c` of the basis matrix, as a vector over the basis index.
fn basis_column(basis: &[BitVector], c: usize) -> BitVector {
    BitVector::from_bits(&basis.iter().map(|b| b.get(c)).collect::<Vec<_>>())
}

/// Minimum-size cell set on which the attractor-space projection is
/// bijective. Both strategies return a set of size `basis.len()`; a
/// full-rank subset always exists because the basis columns span.
pub fn pef_positions(attractor_basis: &[BitVector], strategy: PefStrategy) -> Vec<usize> {
    let dim = attractor_basis.len();
    if dim == 0 {
        return Vec::new();
    }
    let cells = attractor_basis[0].len();
    match strategy {
        PefStrategy::LinearAlgebra => {
            let mut selected = Vec::with_capacity(dim);
            // Echelon of accepted columns: (leading bit, reduced vector).
            let mut echelon: Vec<(usize, BitVector)> = Vec::new();
            for c in 0..cells {
                let mut v = basis_column(attractor_basis, c);
                for (lead, row) in &echelon {
                    if v.get(*lead) {
                        v.xor_assign(row);
                    }
                }
                if let Some(lead) = (0..dim).find(|&i| v.get(i)) {
                    echelon.push((lead, v));
                    selected.push(c);
                    if selected.len() == dim {
                        break;
                    }
                }
            }
            selected
        }
        PefStrategy::BruteForce => {
            assert!(dim <= 24, "brute-force PEF over 2^{dim} attractors");
            let attractors = AffineSolutionSet::Affine {
                particular: BitVector::zeros(cells),
                kernel_basis: attractor_basis.to_vec(),
            }
            .enumerate();
            let mut idx: Vec<usize> = (0..dim).collect();
            loop {
                if projection_exhaustive(&attractors, &idx, dim) {
                    return idx;
                }
                // Next combination in lexicographic order.
                let mut i = dim;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if idx[i] != i + cells - dim {
                        idx[i] += 1;
                        for j in i + 1..dim {
                            idx[j] = idx[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                assert!(advanced, "no pseudo-exhaustive subset found");
            }
        }
    }
}

/// Do the projections of `attractors` onto `positions` take all `2^dim`
/// values?
fn projection_exhaustive(attractors: &[BitVector], positions: &[usize], dim: usize) -> bool {
    let mut seen = vec![false; 1 << dim];
    let mut distinct = 0usize;
    for a in attractors {
        let mut key = 0usize;
        for &p in positions {
            key = key << 1 | usize::from(a.get(p));
        }
        if !seen[key] {
            seen[key] = true;
            distinct += 1;
        }
    }
    distinct == 1 << dim
}

/// Matrix sending PEF bits to the attractor with those bits: `B * P^-1`
/// where `B` has the basis as columns and `P` is the projection onto the
/// chosen positions.
fn pef_solver(basis: &[BitVector], positions: &[usize]) -> Result<Option<BitMatrix>> {
    let dim = basis.len();
    if dim == 0 {
        return Ok(None);
    }
    let cells = basis[0].len();
    let b = BitMatrix::from_fn(cells, dim, |r, c| basis[c].get(r))?;
    let p = BitMatrix::from_fn(dim, dim, |r, c| basis[c].get(positions[r]))?;
    // P is invertible by construction; solve P x = e_i column by column.
    let mut p_inv = BitMatrix::zeros(dim, dim)?;
    for i in 0..dim {
        let mut e = BitVector::zeros(dim);
        e.set(i, true);
        let sol = p.gf2_solve_affine(&e)?;
        let x = sol
            .particular()
            .expect("projection matrix is invertible")
            .clone();
        debug_assert_eq!(sol.kernel_dim(), 0);
        for r in 0..dim {
            if x.get(r) {
                p_inv.set(r, i, true);
            }
        }
    }
    Ok(Some(b.gf2_product(&p_inv)?))
}

/// Runs the MACA for its depth and reads the PEF bits, in position order.
pub fn classify(x: &CaState, profile: &MacaProfile) -> Result<BitVector> {
    let Some(collapse) = &profile.collapse else {
        return Err(Error::NotMaca {
            rule: profile.spec.rule,
            m: profile.spec.m,
            n: profile.spec.n,
        });
    };
    if x.cells() != profile.spec.cells() {
        return Err(Error::LengthMismatch {
            expected: profile.spec.cells(),
            found: x.cells(),
        });
    }
    let settled = collapse.gf2_apply(x.vector())?;
    Ok(BitVector::from_bits(
        &profile
            .pef_positions
            .iter()
            .map(|&p| settled.get(p))
            .collect::<Vec<_>>(),
    ))
}

/// The unique attractor whose PEF bits equal `pef`.
pub fn attractor_from_pef(profile: &MacaProfile, pef: &BitVector) -> Result<CaState> {
    if !profile.is_maca {
        return Err(Error::NotMaca {
            rule: profile.spec.rule,
            m: profile.spec.m,
            n: profile.spec.n,
        });
    }
    if pef.len() != profile.attractor_dim {
        return Err(Error::PefLengthMismatch {
            expected: profile.attractor_dim,
            found: pef.len(),
        });
    }
    match &profile.solver {
        None => CaState::zeros(profile.spec.m, profile.spec.n),
        Some(solver) => {
            CaState::from_vector(profile.spec.m, profile.spec.n, solver.gf2_apply(pef)?)
        }
    }
}

/// All states mapping to `y` in one step, via the affine solver.
pub fn predecessors(t: &BitMatrix, y: &CaState) -> Result<Vec<CaState>> {
    if y.cells() > MAX_ENUMERATION_CELLS {
        return Err(Error::StateSpaceTooLarge {
            cells: y.cells(),
            limit: MAX_ENUMERATION_CELLS,
        });
    }
    let solutions = t.gf2_solve_affine(y.vector())?;
    solutions
        .enumerate()
        .into_iter()
        .map(|v| CaState::from_vector(y.rows(), y.cols(), v))
        .collect()
}

/// `T^d`: one application lands any state on its attractor.
pub fn collapse_to_depth_one(profile: &MacaProfile) -> Result<BitMatrix> {
    profile.collapse.clone().ok_or(Error::NotMaca {
        rule: profile.spec.rule,
        m: profile.spec.m,
        n: profile.spec.n,
    })
}

fn meets_min_k(attractor_dim: usize, min_k: u128) -> bool {
    if min_k <= 1 {
        return true;
    }
    let needed_bits = 128 - (min_k - 1).leading_zeros() as usize;
    attractor_dim >= needed_bits
}

/// Sweeps all 512 rules and keeps the MACA ones with at least `min_k`
/// attractors, ascending by rule number.
pub fn find_maca(
    boundary: Boundary,
    m: usize,
    n: usize,
    min_k: u128,
) -> Result<Vec<(u16, MacaProfile)>> {
    let mut out = Vec::new();
    for rule in 0..=MAX_RULE {
        let profile = maca_profile(&RuleSpec::new(rule, boundary, m, n)?)?;
        if profile.is_maca && meets_min_k(profile.attractor_dim, min_k) {
            out.push((rule, profile));
        }
    }
    Ok(out)
}
