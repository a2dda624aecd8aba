//! Independent oracles used to cross-check the library.
//!
//! Everything in here works on plain `Vec<Vec<bool>>` grids and deliberately
//! avoids the bit-packed code paths under test. Keep it that way.

// Each test target compiles its own copy and uses a subset.
#![allow(dead_code)]

use caec::bitmatrix::BitMatrix;
use caec::rules::Boundary;

pub type BoolMat = Vec<Vec<bool>>;

pub fn to_bool_mat(m: &BitMatrix) -> BoolMat {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
        .collect()
}

pub fn naive_bool_product(a: &BoolMat, b: &BoolMat) -> BoolMat {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| (0..b.len()).any(|k| row[k] && b[k][j]))
                .collect()
        })
        .collect()
}

pub fn naive_gf2_product(a: &BoolMat, b: &BoolMat) -> BoolMat {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| (0..b.len()).filter(|&k| row[k] && b[k][j]).count() % 2 == 1)
                .collect()
        })
        .collect()
}

/// Smallest set of matrices containing `generators` and closed under the
/// Boolean product, found by repeated pairwise multiplication until no new
/// matrix appears. Quadratic scans, no hashing, no shared code with the
/// closure under test.
pub fn naive_closure(generators: &[BoolMat]) -> Vec<BoolMat> {
    let mut elements: Vec<BoolMat> = Vec::new();
    for g in generators {
        if !elements.contains(g) {
            elements.push(g.clone());
        }
    }
    loop {
        let mut discovered: Vec<BoolMat> = Vec::new();
        for a in &elements {
            for b in &elements {
                let p = naive_bool_product(a, b);
                if !elements.contains(&p) && !discovered.contains(&p) {
                    discovered.push(p);
                }
            }
        }
        if discovered.is_empty() {
            return elements;
        }
        elements.extend(discovered);
    }
}

/// The nine dependency offsets, restated here as data: rule bit -> (dr, dc)
/// with dr = +1 meaning the row below.
pub const OFFSETS: [(u16, i32, i32); 9] = [
    (1, 0, 0),
    (2, 0, 1),
    (4, 1, 1),
    (8, 1, 0),
    (16, 1, -1),
    (32, 0, -1),
    (64, -1, -1),
    (128, -1, 0),
    (256, -1, 1),
];

/// One step of the linear rule evaluated directly on the grid, cell by cell,
/// without any matrix machinery.
pub fn evolve_grid(grid: &BoolMat, rule: u16, boundary: Boundary) -> BoolMat {
    let m = grid.len() as i32;
    let n = grid[0].len() as i32;
    let read = |i: i32, j: i32| -> bool {
        match boundary {
            Boundary::Null => {
                if i < 0 || i >= m || j < 0 || j >= n {
                    false
                } else {
                    grid[i as usize][j as usize]
                }
            }
            Boundary::Periodic => {
                grid[i.rem_euclid(m) as usize][j.rem_euclid(n) as usize]
            }
        }
    };
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut bit = false;
                    for &(fund, dr, dc) in &OFFSETS {
                        if rule & fund != 0 {
                            bit ^= read(i + dr, j + dc);
                        }
                    }
                    bit
                })
                .collect()
        })
        .collect()
}

/// Grid for a row-major state value (cell (0,0) is the most significant bit).
pub fn grid_of_value(m: usize, n: usize, value: u64) -> BoolMat {
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| value >> (m * n - 1 - (i * n + j)) & 1 == 1)
                .collect()
        })
        .collect()
}

pub fn value_of_grid(grid: &BoolMat) -> u64 {
    let mut v = 0;
    for row in grid {
        for &b in row {
            v = v << 1 | u64::from(b);
        }
    }
    v
}

/// All predecessors of `target` under one rule step, by trying every state.
pub fn brute_predecessors(m: usize, n: usize, rule: u16, boundary: Boundary, target: u64) -> Vec<u64> {
    (0..1u64 << (m * n))
        .filter(|&v| value_of_grid(&evolve_grid(&grid_of_value(m, n, v), rule, boundary)) == target)
        .collect()
}
