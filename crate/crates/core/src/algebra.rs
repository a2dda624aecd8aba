//! Closure of rule matrices under the Boolean product, and machine checks of
//! the algebraic claims made about that structure.
//!
//! The checks report computed facts with witnesses instead of assuming the
//! claims hold: on some small grids the published structure claims fail, and
//! the whole point of this module is to surface the counterexamples.

use std::collections::HashMap;
use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitmatrix::{BitMatrix, ProductKind};
use crate::error::{Error, Result};
use crate::rules::{fundamental_matrix, Boundary};

/// Abort closure generation past this many elements.
pub const CLOSURE_CAP: usize = 100_000;

/// Seed for the associativity spot check; fixed so reports are reproducible.
const SPOT_CHECK_SEED: u64 = 0xCAEC;

/// The five basic generator matrices `[M_1, M_2, M_4, M_8, M_16]`.
pub fn basic_generators(boundary: Boundary, m: usize, n: usize) -> Result<Vec<BitMatrix>> {
    [1u16, 2, 4, 8, 16]
        .iter()
        .map(|&f| fundamental_matrix(f, boundary, m, n))
        .collect()
}

/// A set of matrices closed under the Boolean product, with the full
/// product table. Elements are kept in discovery order: the (deduplicated)
/// generators first, then new products breadth-first in pair-scan order.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    elements: Vec<BitMatrix>,
    generators: Vec<usize>,
    /// Row-major `order x order` table of product indices.
    table: Vec<u32>,
}

/// Closes the generators under the Boolean product.
pub fn close_generators(generators: &[BitMatrix]) -> Result<ClosureSet> {
    let first = generators.first().ok_or(Error::InvalidDimensions { rows: 0, cols: 0 })?;
    for g in generators {
        if !g.is_square() || g.rows() != first.rows() {
            return Err(Error::DimensionMismatch {
                left_rows: first.rows(),
                left_cols: first.cols(),
                right_rows: g.rows(),
                right_cols: g.cols(),
            });
        }
    }

    let mut elements: Vec<BitMatrix> = Vec::new();
    let mut index: HashMap<BitMatrix, usize> = HashMap::new();
    let mut generator_indices = Vec::with_capacity(generators.len());
    for g in generators {
        let idx = *index.entry(g.clone()).or_insert_with(|| {
            elements.push(g.clone());
            elements.len() - 1
        });
        generator_indices.push(idx);
    }

    let mut products: HashMap<(usize, usize), usize> = HashMap::new();
    loop {
        let len = elements.len();
        for i in 0..len {
            for j in 0..len {
                if products.contains_key(&(i, j)) {
                    continue;
                }
                let p = elements[i].bool_product(&elements[j])?;
                let idx = match index.get(&p) {
                    Some(&idx) => idx,
                    None => {
                        if elements.len() >= CLOSURE_CAP {
                            return Err(Error::ClosureOverflow { cap: CLOSURE_CAP });
                        }
                        elements.push(p.clone());
                        index.insert(p, elements.len() - 1);
                        elements.len() - 1
                    }
                };
                products.insert((i, j), idx);
            }
        }
        if elements.len() == len {
            break;
        }
    }

    let order = elements.len();
    let mut table = vec![0u32; order * order];
    for ((i, j), idx) in products {
        table[i * order + j] = idx as u32;
    }

    Ok(ClosureSet {
        elements,
        generators: generator_indices,
        table,
    })
}

impl ClosureSet {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BitMatrix] {
        &self.elements
    }

    /// Index of each original generator in `elements` (duplicates collapse).
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j] as usize
    }

    fn identity_index(&self) -> Option<usize> {
        (0..self.order()).find(|&e| {
            (0..self.order()).all(|x| self.product(e, x) == x && self.product(x, e) == x)
        })
    }

    /// Distinct positive powers of an element, in order of appearance.
    fn power_orbit(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut orbit = Vec::new();
        let mut x = i;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = self.product(x, i);
        }
        orbit
    }

    /// Smallest two-sided inverse of element `index`, if any.
    pub fn element_inverse(&self, index: usize) -> Result<usize> {
        if index >= self.order() {
            return Err(Error::NoSuchElement {
                index,
                order: self.order(),
            });
        }
        let id = self.identity_index().ok_or(Error::NoInverse { index })?;
        (0..self.order())
            .find(|&j| self.product(index, j) == id && self.product(j, index) == id)
            .ok_or(Error::NoInverse { index })
    }

    /// Checks every axiom and records a witness or counterexample for each
    /// verdict. Associativity holds structurally for matrix products; it is
    /// additionally spot-checked on 100 seeded random triples.
    pub fn verify_axioms(&self) -> AxiomReport {
        let order = self.order();
        let identity = self.identity_index();

        let mut commutative_counterexample = None;
        'outer: for i in 0..order {
            for j in i + 1..order {
                if self.product(i, j) != self.product(j, i) {
                    commutative_counterexample = Some((i, j));
                    break 'outer;
                }
            }
        }

        let mut non_invertible = Vec::new();
        match identity {
            Some(_) => {
                for i in 0..order {
                    if self.element_inverse(i).is_err() {
                        non_invertible.push(i);
                    }
                }
            }
            None => non_invertible.extend(0..order),
        }
        let all_invertible = non_invertible.is_empty();

        let cyclic_generator = (0..order).find(|&i| self.power_orbit(i).len() == order);

        let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
        let mut associative = true;
        for _ in 0..100 {
            let i = (rng.next_u64() % order as u64) as usize;
            let j = (rng.next_u64() % order as u64) as usize;
            let k = (rng.next_u64() % order as u64) as usize;
            let left = self.elements[self.product(i, j)].bool_product(&self.elements[k]);
            let right = self.elements[i].bool_product(&self.elements[self.product(j, k)]);
            if left.ok() != right.ok() {
                associative = false;
                break;
            }
        }

        let mut lines = Vec::new();
        lines.push(format!("order={order}"));
        lines.push(match identity {
            Some(e) => format!("identity=true(element {e})"),
            None => "identity=false".into(),
        });
        lines.push(format!(
            "associative={associative}(structural; 100 sampled triples)"
        ));
        lines.push(match commutative_counterexample {
            None => "commutative=true".into(),
            Some((i, j)) => format!(
                "commutative=false(counterexample {i},{j}: {i}*{j}=element {} {:?}, {j}*{i}=element {} {:?})",
                self.product(i, j),
                self.elements[self.product(i, j)],
                self.product(j, i),
                self.elements[self.product(j, i)],
            ),
        });
        lines.push(if all_invertible {
            "all_invertible=true".into()
        } else {
            format!(
                "all_invertible=false(non-invertible: {})",
                non_invertible
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        });
        lines.push(match cyclic_generator {
            Some(g) => format!("cyclic=true(generator {g})"),
            None => "cyclic=false".into(),
        });

        AxiomReport {
            order,
            identity,
            associative,
            commutative: commutative_counterexample.is_none(),
            commutative_counterexample,
            all_invertible,
            non_invertible,
            cyclic: cyclic_generator.is_some(),
            cyclic_generator,
            lines,
        }
    }
}

/// Verdicts for one closure, every one backed by a witness index into the
/// set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub order: usize,
    pub identity: Option<usize>,
    pub associative: bool,
    pub commutative: bool,
    pub commutative_counterexample: Option<(usize, usize)>,
    pub all_invertible: bool,
    pub non_invertible: Vec<usize>,
    pub cyclic: bool,
    pub cyclic_generator: Option<usize>,
    /// Rendered verdicts, one per line.
    pub lines: Vec<String>,
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// The canonical toroidal translation `M_8^a * M_2^b` (down `a` rows, right
/// `b` columns, both cyclic) in the periodic Boolean structure.
pub fn translation_matrix(a: usize, b: usize, m: usize, n: usize) -> Result<BitMatrix> {
    if a >= m || b >= n {
        return Err(Error::TranslationOutOfRange { a, b, m, n });
    }
    let vertical = fundamental_matrix(8, Boundary::Periodic, m, n)?.pow(a, ProductKind::Boolean)?;
    let horizontal = fundamental_matrix(2, Boundary::Periodic, m, n)?.pow(b, ProductKind::Boolean)?;
    vertical.bool_product(&horizontal)
}
