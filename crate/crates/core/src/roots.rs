//! Exact root systems and the action of finite Coxeter groups on them.
//!
//! Group elements are permutations of the indexed root list. Words are read
//! left to right: in `x1 x2` the reflection `x1` is applied first.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use thiserror::Error;

use crate::exact::{rat, ExactField, ExactNumber, Rational};
use crate::symbol::FiniteType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("no root system model for type {0}")]
    Unsupported(FiniteType),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector is not a root of {0}")]
    NotARoot(FiniteType),
}

/// A word in the simple reflections, as 0-based generator indices.
pub type Word = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootVector(pub Vec<ExactNumber>);

impl RootVector {
    pub fn from_rationals(coords: &[Rational]) -> Self {
        RootVector(coords.iter().cloned().map(ExactNumber::from_base).collect())
    }

    /// Integer coordinates over 2, e.g. `half(&[1, -1, ...])` is `½(e1 − e2 ...)`.
    pub fn half(coords: &[i64]) -> Self {
        RootVector(coords.iter().map(|&c| ExactNumber::from_ratio(c, 2)).collect())
    }

    pub fn int(coords: &[i64]) -> Self {
        RootVector(coords.iter().map(|&c| ExactNumber::from_ratio(c, 1)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &RootVector) -> ExactNumber {
        self.0.iter().zip(&other.0).fold(ExactNumber::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, k: &ExactNumber) -> RootVector {
        RootVector(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `u − (2⟨u,v⟩/⟨v,v⟩) v`.
pub fn reflect(u: &RootVector, v: &RootVector) -> RootVector {
    let k = (u.dot(v) * ExactNumber::from_int(2)).div(&v.dot(v)).expect("reflection in a nonzero vector");
    u.sub(&v.scale(&k))
}

/// A permutation of a root list; `perm[r]` is the image of root `r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    perm: Vec<u16>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { perm: (0..n as u16).collect() }
    }

    pub fn from_perm(perm: Vec<u16>) -> Self {
        GroupElement { perm }
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    pub fn apply(&self, r: usize) -> usize {
        self.perm[r] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupElement) -> GroupElement {
        GroupElement { perm: self.perm.iter().map(|&r| other.perm[r as usize]).collect() }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        GroupElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `g⁻¹ · self · g`, read left to right.
    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, k: usize) -> GroupElement {
        (0..k).fold(GroupElement::identity(self.perm.len()), |acc, _| acc.then(self))
    }
}

/// Order of the permutation: lcm of its cycle lengths.
pub fn element_order(g: &GroupElement) -> u64 {
    let n = g.perm.len();
    let mut seen = vec![false; n];
    let mut order = 1u64;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut r = s;
        while !seen[r] {
            seen[r] = true;
            r = g.perm[r] as usize;
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

pub fn fixed_roots(g: &GroupElement) -> usize {
    g.perm.iter().enumerate().filter(|&(i, &j)| i == j as usize).count()
}

#[derive(Debug)]
pub struct RootSystem {
    ty: FiniteType,
    roots: Vec<RootVector>,
    index: HashMap<RootVector, usize>,
    simple: Vec<usize>,
    simple_perms: Vec<GroupElement>,
    negation: Vec<usize>,
    /// Sum of simple-basis coefficients; `None` for negative roots.
    height: Vec<Option<ExactNumber>>,
}

fn e(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn pm_pairs(dim: usize, upto: usize, out: &mut Vec<RootVector>) {
    for i in 0..upto {
        for j in i + 1..upto {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; dim];
                v[i] = si;
                v[j] = sj;
                out.push(RootVector::int(&v));
            }
        }
    }
}

/// Half-sums `½ Σ εᵢ eᵢ` with `∏ εᵢ = 1` that pass the extra filter.
fn half_sums(filter: impl Fn(&[i64]) -> bool, out: &mut Vec<RootVector>) {
    for mask in 0u32..256 {
        let eps: Vec<i64> = (0..8).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        if eps.iter().product::<i64>() == 1 && filter(&eps) {
            out.push(RootVector::half(&eps));
        }
    }
}

fn diff(dim: usize, i: usize, j: usize) -> RootVector {
    let mut v = vec![0; dim];
    v[i] += 1;
    v[j] -= 1;
    RootVector::int(&v)
}

/// The golden-ratio constants `a = (1+√5)/4`, `b = (−1+√5)/4`.
fn golden() -> (ExactNumber, ExactNumber) {
    (ExactNumber::new(rat(1, 4), rat(1, 4)), ExactNumber::new(rat(-1, 4), rat(1, 4)))
}

fn h4_roots() -> Vec<RootVector> {
    let (a, b) = golden();
    let half = ExactNumber::from_ratio(1, 2);
    let zero = ExactNumber::zero();
    let mut out = Vec::new();
    for i in 0..4 {
        for s in [1, -1] {
            let mut v = vec![0; 4];
            v[i] = s;
            out.push(RootVector::int(&v));
        }
    }
    for mask in 0u32..16 {
        let v: Vec<i64> = (0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        out.push(RootVector::half(&v));
    }
    let base = [a, half, b, zero];
    let even_perms: Vec<[usize; 4]> = permutations4().into_iter().filter(is_even).collect();
    for p in even_perms {
        for mask in 0u32..8 {
            let mut v = vec![ExactNumber::zero(); 4];
            // signs on the three nonzero entries
            for (k, src) in [0usize, 1, 2].into_iter().enumerate() {
                let x = base[src].clone();
                v[p[src]] = if mask >> k & 1 == 1 { -x } else { x };
            }
            out.push(RootVector(v));
        }
    }
    out
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn is_even(p: &[usize; 4]) -> bool {
    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

/// Root list and simple system in the coordinates used throughout.
fn model(t: FiniteType) -> Result<(Vec<RootVector>, Vec<RootVector>), RootError> {
    let mut roots = Vec::new();
    let simple: Vec<RootVector> = match t {
        FiniteType::A(n) => {
            let d = n + 1;
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        roots.push(diff(d, i, j));
                    }
                }
            }
            (0..n).map(|i| diff(d, i, i + 1)).collect()
        }
        FiniteType::B(n) => {
            pm_pairs(n, n, &mut roots);
            for i in 0..n {
                roots.push(RootVector::int(&e(n, i)));
                roots.push(RootVector::int(&e(n, i)).neg());
            }
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(RootVector::int(&e(n, n - 1)));
            s
        }
        FiniteType::D(n) => {
            pm_pairs(n, n, &mut roots);
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![0; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            s.push(RootVector::int(&last));
            s
        }
        FiniteType::E6 | FiniteType::E7 | FiniteType::E8 => {
            let rank = t.rank();
            match t {
                FiniteType::E8 => {
                    pm_pairs(8, 8, &mut roots);
                    half_sums(|_| true, &mut roots);
                }
                FiniteType::E7 => {
                    pm_pairs(8, 6, &mut roots);
                    roots.push(diff(8, 6, 7));
                    roots.push(diff(8, 7, 6));
                    half_sums(|eps| eps[7] == -eps[6], &mut roots);
                }
                _ => {
                    pm_pairs(8, 5, &mut roots);
                    half_sums(|eps| eps[7] == -eps[6] && eps[7] == -eps[5], &mut roots);
                }
            }
            // chain e_{r−1} − e_{r−2}, ..., e2 − e1, v′; branch e1 + e2
            let mut s: Vec<_> = (0..rank - 2).map(|k| diff(8, rank - 2 - k, rank - 3 - k)).collect();
            s.push(RootVector::half(&[1, -1, -1, -1, -1, -1, -1, 1]));
            s.push(RootVector::int(&[1, 1, 0, 0, 0, 0, 0, 0]));
            s
        }
        FiniteType::F4 => {
            pm_pairs(4, 4, &mut roots);
            for i in 0..4 {
                roots.push(RootVector::int(&e(4, i)));
                roots.push(RootVector::int(&e(4, i)).neg());
            }
            for mask in 0u32..16 {
                let v: Vec<i64> = (0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                roots.push(RootVector::half(&v));
            }
            vec![diff(4, 0, 1), diff(4, 1, 2), RootVector::int(&e(4, 2)), RootVector::half(&[-1, -1, -1, 1])]
        }
        FiniteType::G2 => {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        roots.push(diff(3, i, j));
                    }
                }
                let mut v = vec![-1; 3];
                v[i] = 2;
                roots.push(RootVector::int(&v));
                roots.push(RootVector::int(&v).neg());
            }
            vec![diff(3, 0, 1), RootVector::int(&[-2, 1, 1])]
        }
        FiniteType::H4 | FiniteType::H3 => {
            let (a, b) = golden();
            let h = |n: i64| ExactNumber::from_ratio(n, 2);
            let z = ExactNumber::zero;
            let v1 = RootVector(vec![h(-1), -a.clone(), z(), b.clone()]);
            let v2 = RootVector(vec![h(1), b.clone(), -a.clone(), z()]);
            let v3 = RootVector(vec![-a.clone(), h(1), b.clone(), z()]);
            let v4 = RootVector(vec![a, h(-1), b, z()]);
            if t == FiniteType::H4 {
                roots = h4_roots();
                vec![v1, v2, v3, v4]
            } else {
                let drop_k = |v: RootVector| RootVector(v.0[..3].to_vec());
                roots = h4_roots().into_iter().filter(|r| r.0[3].is_zero()).map(drop_k).collect();
                vec![drop_k(v2), drop_k(v3), drop_k(v4)]
            }
        }
        FiniteType::I2(_) => return Err(RootError::Unsupported(t)),
    };
    Ok((roots, simple))
}

impl RootSystem {
    pub fn new(t: FiniteType) -> Result<Self, RootError> {
        let (roots, simple_vecs) = model(t)?;
        let index: HashMap<RootVector, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        assert_eq!(index.len(), roots.len(), "duplicate roots in {t}");
        let simple: Vec<usize> = simple_vecs.iter().map(|s| index[s]).collect();
        let negation: Vec<usize> = roots.iter().map(|r| index[&r.neg()]).collect();
        let simple_perms: Vec<GroupElement> = simple_vecs
            .iter()
            .map(|a| GroupElement {
                perm: roots.iter().map(|r| index[&reflect(r, a)] as u16).collect(),
            })
            .collect();

        // Positive roots by ascending from the simple ones: if ⟨β,α⟩ < 0 then
        // s_α β = β + kα is positive with height raised by k.
        let mut height: Vec<Option<ExactNumber>> = vec![None; roots.len()];
        let mut queue = Vec::new();
        for &s in &simple {
            height[s] = Some(ExactNumber::one());
            queue.push(s);
        }
        let mut qi = 0;
        while qi < queue.len() {
            let b = queue[qi];
            qi += 1;
            for (k, a) in simple_vecs.iter().enumerate() {
                let ip = roots[b].dot(a);
                if ip.is_negative() {
                    let img = simple_perms[k].apply(b);
                    if height[img].is_none() {
                        let raise = (ip * ExactNumber::from_int(-2)).div(&a.dot(a)).expect("nonzero");
                        height[img] = Some(height[b].clone().expect("queued roots are positive") + raise);
                        queue.push(img);
                    }
                }
            }
        }
        assert_eq!(queue.len() * 2, roots.len(), "positive roots of {t}");
        Ok(RootSystem { ty: t, roots, index, simple, simple_perms, negation, height })
    }

    pub fn ty(&self) -> FiniteType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn dim(&self) -> usize {
        self.roots[0].dim()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<&RootVector> {
        self.simple.iter().map(|&i| &self.roots[i]).collect()
    }

    pub fn simple_reflection(&self, i: usize) -> &GroupElement {
        &self.simple_perms[i]
    }

    pub fn is_positive(&self, r: usize) -> bool {
        self.height[r].is_some()
    }

    pub fn height(&self, r: usize) -> Option<&ExactNumber> {
        self.height[r].as_ref()
    }

    pub fn negation(&self, r: usize) -> usize {
        self.negation[r]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.roots.len())
    }

    /// Composite permutation, leftmost letter first.
    pub fn word_to_element(&self, w: &[usize]) -> Result<GroupElement, RootError> {
        let mut g = self.identity();
        for &i in w {
            let s = self
                .simple_perms
                .get(i)
                .ok_or(RootError::IndexOutOfRange { index: i, rank: self.rank() })?;
            g = g.then(s);
        }
        Ok(g)
    }

    /// The permutation of `s_v` computed directly from coordinates.
    pub fn reflection_element(&self, v: &RootVector) -> Result<GroupElement, RootError> {
        let perm = self
            .roots
            .iter()
            .map(|r| self.index.get(&reflect(r, v)).map(|&i| i as u16).ok_or(RootError::NotARoot(self.ty)))
            .collect::<Result<_, _>>()?;
        Ok(GroupElement { perm })
    }

    /// A word `w` and simple index `i` with `w(v) = αᵢ`, so that
    /// `s_v = w sᵢ w⁻¹`. Descends by the lowest simple root with positive
    /// inner product.
    pub fn express_reflection_word(&self, v: &RootVector) -> Result<(Word, usize), RootError> {
        let mut r = self.index_of(v).ok_or(RootError::NotARoot(self.ty))?;
        if !self.is_positive(r) {
            r = self.negation[r];
        }
        let mut word = Vec::new();
        loop {
            if let Some(i) = self.simple.iter().position(|&s| s == r) {
                return Ok((word, i));
            }
            let k = (0..self.rank())
                .find(|&k| self.roots[r].dot(&self.roots[self.simple[k]]).is_positive())
                .expect("a non-simple positive root has a descent");
            r = self.simple_perms[k].apply(r);
            word.push(k);
        }
    }

    /// A word for `s_v` in the simple reflections: `w · i · w⁻¹` with `w⁻¹` the reversed word.
    pub fn reflection_word(&self, v: &RootVector) -> Result<Word, RootError> {
        let (w, i) = self.express_reflection_word(v)?;
        let mut out = w.clone();
        out.push(i);
        out.extend(w.iter().rev());
        Ok(out)
    }

    /// Checks `s_α(Φ) = Φ` for every simple `α`; true by construction when `new` succeeds.
    pub fn is_closed(&self) -> bool {
        self.simple_roots().iter().all(|a| self.roots.iter().all(|r| self.index.contains_key(&reflect(r, a))))
    }
}

fn cache() -> &'static Mutex<HashMap<FiniteType, Arc<RootSystem>>> {
    static CACHE: OnceLock<Mutex<HashMap<FiniteType, Arc<RootSystem>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, lazily built root system for `t`.
pub fn root_system(t: FiniteType) -> Result<Arc<RootSystem>, RootError> {
    if let Some(rs) = cache().lock().expect("root cache").get(&t) {
        return Ok(rs.clone());
    }
    let rs = Arc::new(RootSystem::new(t)?);
    Ok(cache().lock().expect("root cache").entry(t).or_insert(rs).clone())
}

pub fn word_to_element(t: FiniteType, w: &[usize]) -> Result<GroupElement, RootError> {
    root_system(t)?.word_to_element(w)
}

pub fn express_reflection_word(t: FiniteType, v: &RootVector) -> Result<(Word, usize), RootError> {
    root_system(t)?.express_reflection_word(v)
}

/// Simple reflections of a finite Coxeter group permuting its roots.
///
/// `base` lists the simple roots; their images determine an element. Weyl
/// and H types come from [`RootSystem`]; `I2(m)` acts on the `2m` roots at
/// angles `kπ/m`, simple roots at `0` and `(m−1)π/m`.
#[derive(Debug)]
pub struct RootAction {
    pub ty: FiniteType,
    pub degree: usize,
    pub gens: Vec<GroupElement>,
    pub base: Vec<usize>,
}

impl RootAction {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.degree)
    }

    pub fn word_to_element(&self, w: &[usize]) -> Result<GroupElement, RootError> {
        let mut g = self.identity();
        for &i in w {
            let s = self.gens.get(i).ok_or(RootError::IndexOutOfRange { index: i, rank: self.rank() })?;
            g = g.then(s);
        }
        Ok(g)
    }

    /// Every group element, breadth-first from the identity; `None` past `cap`.
    pub fn elements(&self, cap: usize) -> Option<Vec<GroupElement>> {
        let mut seen: HashSet<Vec<u16>> = HashSet::from([self.identity().perm.clone()]);
        let mut out = vec![self.identity()];
        let mut k = 0;
        while k < out.len() {
            let x = out[k].clone();
            k += 1;
            for s in &self.gens {
                let y = x.then(s);
                if seen.insert(y.perm.clone()) {
                    if out.len() >= cap {
                        return None;
                    }
                    out.push(y);
                }
            }
        }
        Some(out)
    }
}

fn dihedral_action(m: u32) -> RootAction {
    let n = 2 * m as usize;
    let refl = |a: usize| GroupElement::from_perm((0..n).map(|phi| ((2 * a + m as usize + n - phi) % n) as u16).collect());
    RootAction { ty: FiniteType::I2(m), degree: n, gens: vec![refl(0), refl(m as usize - 1)], base: vec![0, m as usize - 1] }
}

fn action_cache() -> &'static Mutex<HashMap<FiniteType, Arc<RootAction>>> {
    static CACHE: OnceLock<Mutex<HashMap<FiniteType, Arc<RootAction>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn root_action(t: FiniteType) -> Result<Arc<RootAction>, RootError> {
    if let Some(a) = action_cache().lock().expect("action cache").get(&t) {
        return Ok(a.clone());
    }
    let a = match t {
        FiniteType::I2(m) => dihedral_action(m),
        _ => {
            let rs = root_system(t)?;
            RootAction {
                ty: t,
                degree: rs.len(),
                gens: rs.simple_perms.clone(),
                base: rs.simple.clone(),
            }
        }
    };
    Ok(action_cache().lock().expect("action cache").entry(t).or_insert(Arc::new(a)).clone())
}

/// Parses `x1 x2 x3` or `1 2 3` into 0-based indices.
pub fn parse_word(text: &str) -> Option<Word> {
    text.split_whitespace()
        .map(|tok| {
            let digits = tok.trim_start_matches(|c: char| c.is_ascii_alphabetic());
            digits.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::FiniteType as T;
    use std::collections::HashSet;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn root_counts() {
        let cases = [
            (T::A(2), 6),
            (T::A(4), 20),
            (T::B(3), 18),
            (T::D(4), 24),
            (T::E6, 72),
            (T::E7, 126),
            (T::E8, 240),
            (T::F4, 48),
            (T::G2, 12),
            (T::H3, 30),
            (T::H4, 120),
        ];
        for (t, n) in cases {
            let rs = root_system(t).unwrap();
            assert_eq!(rs.len(), n, "{t}");
            assert!(rs.is_closed());
        }
        assert!(matches!(root_system(T::I2(5)), Err(RootError::Unsupported(_))));
    }

    #[test]
    fn reflect_examples() {
        let e1 = RootVector::int(&[1, 0, 0]);
        let e12 = RootVector::int(&[1, -1, 0]);
        assert_eq!(reflect(&e1, &e12), RootVector::int(&[0, 1, 0]));
        assert_eq!(reflect(&e12, &e12), e12.neg());
        let e3 = RootVector::int(&[0, 0, 1]);
        assert_eq!(reflect(&e3, &e12), e3);
    }

    #[test]
    fn simple_gram_matches_symbol() {
        for t in [T::A(5), T::B(4), T::D(5), T::E6, T::E7, T::E8, T::F4, T::G2, T::H3, T::H4] {
            let rs = root_system(t).unwrap();
            let sym = t.canonical_symbol();
            let s = rs.simple_roots();
            for i in 0..s.len() {
                for j in 0..s.len() {
                    if i == j {
                        continue;
                    }
                    let ip = s[i].dot(s[j]);
                    let v = (ip.clone() * ip * ExactNumber::from_int(4)).div(&(s[i].dot(s[i]) * s[j].dot(s[j]))).unwrap();
                    let m = sym.m(i, j).unwrap();
                    let expect = 4.0 * (std::f64::consts::PI / m as f64).cos().powi(2);
                    assert!((v.to_f64() - expect).abs() < 1e-12, "{t} {i} {j}");
                    assert!(!s[i].dot(s[j]).is_positive());
                }
            }
        }
    }

    #[test]
    fn words_and_orders() {
        let rs = root_system(T::A(2)).unwrap();
        assert!(rs.word_to_element(&[]).unwrap().is_identity());
        let c = rs.word_to_element(&[0, 1]).unwrap();
        assert_eq!(element_order(&c), 3);
        assert_eq!(element_order(rs.simple_reflection(0)), 2);
        // no root of A2 is orthogonal to e1 − e2
        assert_eq!(fixed_roots(rs.simple_reflection(0)), 0);
        let a3 = root_system(T::A(3)).unwrap();
        assert_eq!(fixed_roots(a3.simple_reflection(0)), 2);
        assert!(matches!(rs.word_to_element(&[2]), Err(RootError::IndexOutOfRange { .. })));
    }

    #[test]
    fn e6_worked_example() {
        let rs = root_system(T::E6).unwrap();
        let wd = w("x6 x3 x2 x1 x4 x3 x2 x6 x3 x4");
        let g = rs.word_to_element(&wd).unwrap();
        let v = RootVector::half(&[1, 1, 1, 1, 1, -1, -1, 1]);
        let vprime = rs.roots()[rs.simple_indices()[4]].clone();
        assert_eq!(rs.roots()[g.apply(rs.index_of(&v).unwrap())], vprime);

        let mut full = w("x5 x2 x6 x4 x1");
        full.extend(&wd);
        full.push(4);
        full.extend(wd.iter().rev());
        let el = rs.word_to_element(&full).unwrap();
        assert_eq!(element_order(&el), 3);

        let sv = rs.reflection_element(&v).unwrap();
        let (w2, i) = rs.express_reflection_word(&v).unwrap();
        let g2 = rs.word_to_element(&w2).unwrap();
        assert_eq!(g2.then(rs.simple_reflection(i)).then(&g2.inverse()), sv);
    }

    #[test]
    fn express_simple_and_negative() {
        let rs = root_system(T::D(4)).unwrap();
        for (k, &s) in rs.simple_indices().iter().enumerate() {
            assert_eq!(rs.express_reflection_word(&rs.roots()[s]).unwrap(), (vec![], k));
            let neg = rs.roots()[s].neg();
            assert_eq!(rs.express_reflection_word(&neg).unwrap(), (vec![], k));
        }
        assert!(rs.express_reflection_word(&RootVector::int(&[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn h_fixed_roots() {
        let rs = root_system(T::H4).unwrap();
        // x1x2 and x2x3 are conjugate inside the A3 parabolic x1,x2,x3
        assert_eq!(fixed_roots(&rs.word_to_element(&w("x1 x2")).unwrap()), 6);
        assert_eq!(fixed_roots(&rs.word_to_element(&w("x2 x3")).unwrap()), 6);
        assert_eq!(fixed_roots(&rs.word_to_element(&w("x3 x4")).unwrap()), 10);
        let h3 = root_system(T::H3).unwrap();
        assert_eq!(fixed_roots(&h3.identity()), 30);
    }

    fn closure_size(rs: &RootSystem) -> usize {
        let mut seen: HashSet<GroupElement> = HashSet::from([rs.identity()]);
        let mut frontier = vec![rs.identity()];
        while let Some(g) = frontier.pop() {
            for i in 0..rs.rank() {
                let h = g.then(rs.simple_reflection(i));
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn group_orders_by_closure() {
        for t in [T::A(3), T::B(3), T::D(4), T::F4, T::G2, T::H3] {
            let rs = root_system(t).unwrap();
            assert_eq!(closure_size(&rs).to_string(), t.order().to_string(), "{t}");
        }
    }

    #[test]
    fn heights() {
        let rs = root_system(T::E8).unwrap();
        let max = rs.roots().iter().enumerate().filter_map(|(i, _)| rs.height(i)).map(|h| h.to_f64() as i64).max();
        assert_eq!(max, Some(29));
        let rs = root_system(T::A(3)).unwrap();
        let positives = (0..rs.len()).filter(|&i| rs.is_positive(i)).count();
        assert_eq!(positives, 6);
    }

    #[test]
    fn dihedral_action_relations() {
        for m in [5u32, 7, 8, 12] {
            let a = root_action(T::I2(m)).unwrap();
            assert_eq!(a.degree, 2 * m as usize);
            let c = a.word_to_element(&[0, 1]).unwrap();
            assert_eq!(element_order(&c), m as u64);
            assert_eq!(element_order(&a.gens[0]), 2);
            // s1 sends its own root to its negative
            assert_eq!(a.gens[0].apply(0), m as usize);
            assert_eq!(a.gens[1].apply(m as usize - 1), 2 * m as usize - 1);
        }
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_word("x1 x3 x2"), Some(vec![0, 2, 1]));
        assert_eq!(parse_word("1 2"), Some(vec![0, 1]));
        assert_eq!(parse_word(""), Some(vec![]));
        assert_eq!(parse_word("x0"), None);
    }
}
