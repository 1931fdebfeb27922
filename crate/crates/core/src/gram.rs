//! Gram matrices of Coxeter symbols and their signatures.
//!
//! Entry `αβ` is `−cos(π/m_αβ)` for finite labels and a chosen `c_αβ ≤ −1`
//! for dotted edges (default `−1`). When every finite label is in
//! {2, 3, 4, 6} the matrix also has an exact copy over ℚ(√2, √3), whose
//! inertia is computed by symmetric elimination.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use num_rational::BigRational;
use thiserror::Error;

use crate::exact::{rat, ExactField, QSqrt2, QSqrt2Sqrt3};
use crate::symbol::{classify_subset, ClassifyOptions, CoxeterSymbol, EdgeLabel, SubsetId};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GramError {
    #[error("c value {value} for edge {a}-{b} must be <= -1")]
    BadC { a: String, b: String, value: f64 },
    #[error("c value given for {a}-{b}, which is not a dotted edge")]
    NotInfinite { a: String, b: String },
}

/// Values `c_αβ` for dotted edges, keyed by generator index pairs in either order.
pub type CValues = HashMap<(usize, usize), f64>;

#[derive(Clone, Debug)]
pub struct GramMatrix {
    side: usize,
    numeric: DMatrix<f64>,
    exact: Option<Vec<QSqrt2Sqrt3>>,
}

fn exact_cos(m: u32) -> Option<QSqrt2Sqrt3> {
    let half = rat(1, 2);
    match m {
        2 => Some(QSqrt2Sqrt3::zero()),
        3 => Some(QSqrt2Sqrt3::from_rational(half)),
        4 => Some(QSqrt2Sqrt3::from_base(QSqrt2::new(rat(0, 1), half))),
        6 => Some(QSqrt2Sqrt3::new(QSqrt2::zero(), QSqrt2::from_rational(half))),
        _ => None,
    }
}

/// Builds the Gram matrix. Missing dotted-edge values default to `−1`.
pub fn gram_matrix(sym: &CoxeterSymbol, c: &CValues) -> Result<GramMatrix, GramError> {
    let n = sym.rank();
    let mut cvals: HashMap<(usize, usize), f64> = HashMap::new();
    for (&(i, j), &v) in c {
        let (a, b) = (sym.generators()[i].clone(), sym.generators()[j].clone());
        if sym.label(i, j) != Some(EdgeLabel::Infinity) {
            return Err(GramError::NotInfinite { a, b });
        }
        if !(v <= -1.0) {
            return Err(GramError::BadC { a, b, value: v });
        }
        cvals.insert((i.min(j), i.max(j)), v);
    }
    let mut numeric = DMatrix::<f64>::identity(n, n);
    let mut exact: Option<Vec<QSqrt2Sqrt3>> = Some(
        (0..n * n).map(|k| if k / n == k % n { QSqrt2Sqrt3::one() } else { QSqrt2Sqrt3::zero() }).collect(),
    );
    for (i, j, label) in sym.edges() {
        let (x, e) = match label {
            EdgeLabel::Finite(m) => {
                (-(std::f64::consts::PI / m as f64).cos(), exact_cos(m).map(|v| -v))
            }
            EdgeLabel::Infinity => {
                let v = cvals.get(&(i, j)).copied().unwrap_or(-1.0);
                let q = BigRational::from_float(v).map(QSqrt2Sqrt3::from_rational);
                (v, q)
            }
        };
        numeric[(i, j)] = x;
        numeric[(j, i)] = x;
        match (&mut exact, e) {
            (Some(ex), Some(v)) => {
                ex[i * n + j] = v.clone();
                ex[j * n + i] = v;
            }
            (slot, None) => *slot = None,
            _ => {}
        }
    }
    Ok(GramMatrix { side: n, numeric, exact })
}

impl GramMatrix {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.numeric[(i, j)]
    }

    pub fn numeric(&self) -> &DMatrix<f64> {
        &self.numeric
    }

    pub fn exact_entry(&self, i: usize, j: usize) -> Option<&QSqrt2Sqrt3> {
        self.exact.as_ref().map(|e| &e[i * self.side + j])
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Conjugates by a permutation: entry `(i, j)` of the result is entry `(p[i], p[j])`.
    pub fn permuted(&self, p: &[usize]) -> GramMatrix {
        let n = self.side;
        let numeric = DMatrix::from_fn(n, n, |i, j| self.numeric[(p[i], p[j])]);
        let exact = self.exact.as_ref().map(|e| (0..n * n).map(|k| e[p[k / n] * n + p[k % n]].clone()).collect());
        GramMatrix { side: n, numeric, exact }
    }

    /// Rows of entries: exact when available, else shortest round-trip decimals.
    pub fn rows_text(&self) -> Vec<Vec<String>> {
        (0..self.side)
            .map(|i| {
                (0..self.side)
                    .map(|j| match self.exact_entry(i, j) {
                        Some(e) => e.to_string(),
                        None => format!("{}", self.numeric[(i, j)]),
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Signature {
    pub negatives: usize,
    pub positives: usize,
    pub zeros: usize,
    pub tol: f64,
}

impl Signature {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.negatives, self.positives, self.zeros)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.negatives, self.positives, self.zeros)
    }
}

/// Eigenvalue sign counts with the given tolerance.
pub fn signature(g: &GramMatrix, tol: f64) -> Signature {
    let eig = g.numeric.clone().symmetric_eigen();
    let mut s = Signature { negatives: 0, positives: 0, zeros: 0, tol };
    for &ev in eig.eigenvalues.iter() {
        if ev < -tol {
            s.negatives += 1;
        } else if ev > tol {
            s.positives += 1;
        } else {
            s.zeros += 1;
        }
    }
    s
}

/// Inertia of a symmetric matrix over an exact field by Sylvester pivoting.
pub fn exact_inertia<F: ExactField>(side: usize, entries: &[F]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<F>> = (0..side).map(|i| entries[i * side..(i + 1) * side].to_vec()).collect();
    let (mut neg, mut pos) = (0, 0);
    while !a.is_empty() {
        let k = a.len();
        if let Some(p) = (0..k).find(|&i| !a[i][i].is_zero()) {
            let piv = a[p][p].clone();
            match piv.sign() {
                Ordering::Greater => pos += 1,
                _ => neg += 1,
            }
            let inv = piv.inv().expect("nonzero pivot");
            let col: Vec<F> = (0..k).map(|i| a[i][p].clone()).collect();
            let rest: Vec<usize> = (0..k).filter(|&i| i != p).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| a[i][j].clone() - col[i].clone() * col[j].clone() * inv.clone())
                        .collect()
                })
                .collect();
            continue;
        }
        let Some((p, q)) = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        // [[0, b], [b, 0]] has one eigenvalue of each sign.
        pos += 1;
        neg += 1;
        let binv = a[p][q].inv().expect("nonzero pivot");
        let rest: Vec<usize> = (0..k).filter(|&i| i != p && i != q).collect();
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| {
                        let corr = (a[i][p].clone() * a[j][q].clone() + a[i][q].clone() * a[j][p].clone()) * binv.clone();
                        a[i][j].clone() - corr
                    })
                    .collect()
            })
            .collect();
    }
    (neg, pos, side - neg - pos)
}

/// Exact signature when the matrix has an exact copy.
pub fn signature_exact(g: &GramMatrix) -> Option<Signature> {
    let e = g.exact.as_ref()?;
    let (negatives, positives, zeros) = exact_inertia(g.side, e);
    Some(Signature { negatives, positives, zeros, tol: 0.0 })
}

/// True iff the signature is `(1, n, 0)`.
pub fn is_hyperbolic(sym: &CoxeterSymbol, c: &CValues, n: usize) -> Result<bool, GramError> {
    let g = gram_matrix(sym, c)?;
    let s = signature_exact(&g).unwrap_or_else(|| signature(&g, DEFAULT_TOL));
    Ok(s.triple() == (1, n, 0))
}

/// `η` with `−cosh η = c`.
pub fn eta_from_c(c: f64) -> f64 {
    (-c).acosh()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CofiniteStatus {
    Cofinite,
    NotCofinite,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofiniteReport {
    pub status: CofiniteStatus,
    /// Affine `n`-subsets, one per cusp.
    pub ideal_vertices: Vec<SubsetId>,
    pub reason: Option<String>,
}

impl CofiniteReport {
    pub fn is_cofinite(&self) -> bool {
        self.status == CofiniteStatus::Cofinite
    }

    fn fail(status: CofiniteStatus, reason: String) -> Self {
        CofiniteReport { status, ideal_vertices: Vec::new(), reason: Some(reason) }
    }
}

/// Checks that the spherical and affine subsets of a `k`-node symbol form
/// the face poset of a cofinite `(k−1)`-simplex: every subset of at most
/// `k−2` nodes is finite, every `(k−1)`-subset is finite or affine, and the
/// whole symbol is neither. A dotted edge counts as affine here.
///
/// `dim` defaults to `k − 1`; any other value is unsupported.
pub fn is_cofinite_simplex(sym: &CoxeterSymbol, dim: Option<usize>) -> CofiniteReport {
    let k = sym.rank();
    if k < 2 {
        return CofiniteReport::fail(CofiniteStatus::NotCofinite, "fewer than two generators".into());
    }
    let n = k - 1;
    if let Some(d) = dim {
        if d != n {
            return CofiniteReport::fail(
                CofiniteStatus::Unsupported,
                format!("only simplex symbols are supported: {k} generators give dimension {n}, not {d}"),
            );
        }
    }
    let opts = ClassifyOptions { infinity_edge_affine: true };
    let full = sym.full_subset();
    let whole = classify_subset(sym, full, opts);
    if whole.is_finite() {
        return CofiniteReport::fail(CofiniteStatus::NotCofinite, "the symbol is finite".into());
    }
    if whole.is_affine() {
        return CofiniteReport::fail(CofiniteStatus::NotCofinite, "the symbol is affine".into());
    }
    let mut ideal = Vec::new();
    for drop in 0..k {
        let facet = full.remove(drop);
        let c = classify_subset(sym, facet, opts);
        if c.is_affine() {
            ideal.push(facet);
        } else if !c.is_finite() {
            let names = sym.subset_names(facet).join(",");
            return CofiniteReport::fail(CofiniteStatus::NotCofinite, format!("{{{names}}} is {}", c.type_string()));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let face = full.remove(i).remove(j);
            let c = classify_subset(sym, face, ClassifyOptions::default());
            if !c.is_finite() {
                let names = sym.subset_names(face).join(",");
                return CofiniteReport::fail(
                    CofiniteStatus::NotCofinite,
                    format!("{{{names}}} is {}, expected finite", c.type_string()),
                );
            }
        }
    }
    ideal.sort();
    CofiniteReport { status: CofiniteStatus::Cofinite, ideal_vertices: ideal, reason: None }
}
