//! Brute-force ground truth for small parameters.
//!
//! These routines enumerate everything and refuse inputs past their guards.
//! They share no code path with `decide` or `construct`; the edge-coloring
//! oracle does call `autocheck`, which is itself checked against an unpruned
//! permutation enumeration in the test suite.

use thiserror::Error;

use crate::autocheck::{self, AutoError};
use crate::count;
use crate::matrix::{odometer_step, ColorMatrix, MatrixError};

/// Largest number of colorings any enumeration here will visit.
pub const ENUMERATION_LIMIT: u64 = 2_000_000;

/// Largest product graph handled by the automorphism routines.
pub const PRODUCT_VERTEX_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{colors}^{cells} colorings exceed the enumeration limit of {ENUMERATION_LIMIT}")]
    TooManyColorings { colors: u64, cells: u64 },
    #[error("K_{s} x K_{t} has more than {PRODUCT_VERTEX_LIMIT} vertices")]
    TooManyVertices { s: usize, t: usize },
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn enumeration_guard(colors: u64, cells: u64) -> Result<u64, OracleError> {
    match count::pow_u64(colors, cells) {
        Some(n) if n <= ENUMERATION_LIMIT => Ok(n),
        _ => Err(OracleError::TooManyColorings { colors, cells }),
    }
}

/// Visits every `rows x cols` c-ary matrix in odometer order until `f` returns true.
fn any_matrix(
    c: u64,
    rows: usize,
    cols: usize,
    mut f: impl FnMut(&ColorMatrix) -> Result<bool, OracleError>,
) -> Result<bool, OracleError> {
    let total = enumeration_guard(c, (rows * cols) as u64)?;
    let colors = ColorMatrix::zeros(c, 0, 0)?.colors();
    let mut entries = vec![0u16; rows * cols];
    for _ in 0..total {
        let m = ColorMatrix::from_parts_unchecked(colors, rows, cols, entries.clone());
        if f(&m)? {
            return Ok(true);
        }
        odometer_step(&mut entries, colors);
    }
    Ok(false)
}

/// True iff some c-edge-coloring of `K_{s,t}` is an identity coloring.
pub fn brute_force_exists(c: u64, s: usize, t: usize) -> Result<bool, OracleError> {
    any_matrix(c, t, s, |m| Ok(autocheck::is_identity_coloring(m)?))
}

/// True iff some `t x s` c-ary matrix has pairwise distinct column degrees.
pub fn exists_distinct_column_degrees(c: u64, s: usize, t: usize) -> Result<bool, OracleError> {
    any_matrix(c, t, s, |m| {
        let mut d = m.column_degrees();
        d.sort_unstable();
        Ok(d.windows(2).all(|w| w[0] != w[1]))
    })
}

/// `K_s □ K_t` on vertices `(i, j)`, indexed `i * t + j`.
#[derive(Debug, Clone)]
pub struct ProductGraph {
    s: usize,
    t: usize,
    neighbours: Vec<u32>,
}

impl ProductGraph {
    pub fn new(s: usize, t: usize) -> Result<Self, OracleError> {
        let n = s * t;
        if n > PRODUCT_VERTEX_LIMIT || s == 0 || t == 0 {
            return Err(OracleError::TooManyVertices { s, t });
        }
        let mut neighbours = vec![0u32; n];
        for (u, mask) in neighbours.iter_mut().enumerate() {
            let (i, j) = (u / t, u % t);
            for v in 0..n {
                let (k, l) = (v / t, v % t);
                if (i == k) != (j == l) {
                    *mask |= 1 << v;
                }
            }
        }
        Ok(ProductGraph { s, t, neighbours })
    }

    pub fn factors(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbours.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbours[u] >> v & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbours[u].count_ones() as usize
    }

    /// Extends `map[..depth]` to a full automorphism respecting `colors`,
    /// returning true as soon as `accept` approves a completed map.
    fn extend(
        &self,
        map: &mut [usize],
        depth: usize,
        used: u32,
        colors: Option<&[u8]>,
        accept: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        let n = self.vertex_count();
        if depth == n {
            return accept(map);
        }
        for w in 0..n {
            if used >> w & 1 == 1 || !self.consistent(map, depth, w, colors) {
                continue;
            }
            map[depth] = w;
            if self.extend(map, depth + 1, used | 1 << w, colors, accept) {
                return true;
            }
        }
        false
    }

    fn consistent(&self, map: &[usize], depth: usize, w: usize, colors: Option<&[u8]>) -> bool {
        if let Some(col) = colors {
            if col[depth] != col[w] {
                return false;
            }
        }
        (0..depth).all(|u| self.adjacent(u, depth) == self.adjacent(map[u], w))
    }

    /// Order of the automorphism group via the pointwise-stabiliser chain:
    /// the product over `k` of the orbit size of vertex `k` under the
    /// automorphisms fixing `0..k`.
    pub fn automorphism_group_order(&self) -> u128 {
        let n = self.vertex_count();
        let mut order: u128 = 1;
        let mut map = vec![0usize; n];
        for k in 0..n {
            for (v, slot) in map.iter_mut().enumerate().take(k) {
                *slot = v;
            }
            let fixed: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
            let mut orbit = 0u128;
            for w in k..n {
                if !self.consistent(&map, k, w, None) {
                    continue;
                }
                map[k] = w;
                if self.extend(&mut map, k + 1, fixed | 1 << w, None, &|_| true) {
                    orbit += 1;
                }
            }
            order *= orbit;
        }
        order
    }

    /// True iff some automorphism other than the identity preserves `colors`.
    pub fn has_nontrivial_color_automorphism(&self, colors: &[u8]) -> bool {
        let mut map = vec![0usize; self.vertex_count()];
        let not_identity = |m: &[usize]| m.iter().enumerate().any(|(i, &w)| i != w);
        self.extend(&mut map, 0, 0, Some(colors), &not_identity)
    }
}

/// `|Aut(K_s □ K_t)|` computed from the graph itself.
pub fn product_automorphism_group_order(s: usize, t: usize) -> Result<u128, OracleError> {
    Ok(ProductGraph::new(s, t)?.automorphism_group_order())
}

/// Smallest `c <= c_max` admitting a vertex c-coloring of `K_s □ K_t` fixed
/// only by the identity, or `None` if every `c <= c_max` fails.
pub fn product_distinguishing_number(
    s: usize,
    t: usize,
    c_max: u64,
) -> Result<Option<u64>, OracleError> {
    let g = ProductGraph::new(s, t)?;
    let n = g.vertex_count();
    enumeration_guard(c_max, n as u64)?;
    for c in 1..=c_max {
        let total = enumeration_guard(c, n as u64)?;
        let mut coloring = vec![0u8; n];
        for _ in 0..total {
            if !g.has_nontrivial_color_automorphism(&coloring) {
                return Ok(Some(c));
            }
            for slot in coloring.iter_mut().rev() {
                if u64::from(*slot) + 1 < c {
                    *slot += 1;
                    break;
                }
                *slot = 0;
            }
        }
    }
    Ok(None)
}
