//! Prime-order conjugacy class representatives of finite Coxeter groups,
//! and the torsion inventory of a symbol.
//!
//! Weyl types use Carter diagrams: disjoint unions of paths whose nodes are
//! labelled by roots, with `4⟨u,v⟩²/(⟨u,u⟩⟨v,v⟩) = m − 2` between nodes
//! (`m = 3` on path edges, `m = 2` elsewhere). The representative is the
//! product of the black reflections followed by the white ones, for a
//! proper two-colouring of each path. Dihedral and H types use explicit
//! word lists.

pub mod oracle;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

pub use oracle::{brute_force_classes, ClassOracle, OracleClass, ORACLE_LIMIT};

use crate::exact::{ExactField, ExactNumber};
use crate::roots::{
    element_order, fixed_roots, root_action, root_system, RootError, RootSystem, RootVector, Word,
};
use crate::symbol::{spherical_poset, ComponentClass, CoxeterSymbol, FiniteType, SphericalPoset, SubsetId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorsionError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{0} is not a Weyl type with Carter diagrams")]
    NotWeyl(FiniteType),
    #[error("no labelling of diagram {diagram} in {ty}")]
    NoLabelling { ty: FiniteType, diagram: String },
    #[error("{source_name} has order {got}, expected {want}")]
    OrderMismatch { source_name: String, got: u64, want: u64 },
    #[error("{0} is too large for the brute-force oracle")]
    OracleTooLarge(FiniteType),
    #[error("prescribed label {label} is not a root of {ty}")]
    BadLabel { ty: FiniteType, label: String },
    #[error("labelling of {0} violates the edge conditions")]
    InvalidLabelling(String),
}

/// A disjoint union of paths, optionally with prescribed root labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarterDiagram {
    pub order: u64,
    /// Node count of each path component; nodes are numbered component by component.
    pub paths: Vec<usize>,
    pub labels: Option<Vec<RootVector>>,
}

impl CarterDiagram {
    fn unlabelled(order: u64, paths: Vec<usize>) -> Self {
        CarterDiagram { order, paths, labels: None }
    }

    fn singles(labels: Vec<RootVector>) -> Self {
        CarterDiagram { order: 2, paths: vec![1; labels.len()], labels: Some(labels) }
    }

    pub fn node_count(&self) -> usize {
        self.paths.iter().sum()
    }

    /// `(component, position)` for every node.
    fn positions(&self) -> Vec<(usize, usize)> {
        self.paths.iter().enumerate().flat_map(|(c, &len)| (0..len).map(move |p| (c, p))).collect()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let pos = self.positions();
        let (a, b) = (pos[i], pos[j]);
        a.0 == b.0 && a.1.abs_diff(b.1) == 1
    }

    /// Black nodes sit at even positions of their path.
    pub fn is_black(&self, i: usize) -> bool {
        self.positions()[i].1.is_multiple_of(2)
    }
}

impl fmt::Display for CarterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for &len in &self.paths {
            match counts.iter_mut().find(|(l, _)| *l == len) {
                Some(e) => e.1 += 1,
                None => counts.push((len, 1)),
            }
        }
        let parts: Vec<String> = counts
            .iter()
            .map(|&(len, k)| if k == 1 { format!("A{len}") } else { format!("{k}A{len}") })
            .collect();
        write!(f, "{}", parts.join("+"))?;
        if let Some(l) = &self.labels {
            let ls: Vec<String> = l.iter().map(|r| r.to_string()).collect();
            write!(f, "[{}]", ls.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledDiagram {
    pub diagram: CarterDiagram,
    /// Root index per node.
    pub roots: Vec<usize>,
    pub from_simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassRep {
    /// 0-based indices into the canonical generator numbering of the type.
    pub word: Word,
    pub order: u64,
    pub source: String,
    pub fixed_roots: usize,
}

fn primes_upto(n: usize) -> Vec<u64> {
    (2..=n as u64).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn unit(dim: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = sign;
    v
}

fn plus(dim: usize, i: usize, si: i64, j: usize, sj: i64) -> RootVector {
    let mut v = unit(dim, i, si);
    v[j] = sj;
    RootVector::int(&v)
}

/// `k` paths of `p − 1` nodes for each `k ≥ 1` with `k p ≤ bound`.
fn path_unions(p: u64, bound: usize, out: &mut Vec<CarterDiagram>) {
    let mut k = 1;
    while k * p as usize <= bound {
        out.push(CarterDiagram::unlabelled(p, vec![p as usize - 1; k]));
        k += 1;
    }
}

/// The Carter diagrams of prime order for a Weyl type other than `G2`.
pub fn prime_class_diagrams(t: FiniteType) -> Result<Vec<CarterDiagram>, TorsionError> {
    let mut out = Vec::new();
    match t {
        FiniteType::A(n) => {
            for p in primes_upto(n + 1) {
                path_unions(p, n + 1, &mut out);
            }
        }
        FiniteType::B(n) => {
            for k in 0..=n / 2 {
                for m in 0..=n - 2 * k {
                    if k + m == 0 {
                        continue;
                    }
                    let mut labels: Vec<RootVector> = (0..k).map(|i| plus(n, 2 * i, 1, 2 * i + 1, -1)).collect();
                    labels.extend((0..m).map(|j| RootVector::int(&unit(n, 2 * k + j, 1))));
                    out.push(CarterDiagram::singles(labels));
                }
            }
            for p in primes_upto(n).into_iter().filter(|&p| p >= 3) {
                path_unions(p, n, &mut out);
            }
        }
        FiniteType::D(n) => {
            for k in 0..=n / 2 {
                for m in 0..=(n / 2 - k) {
                    if k + m == 0 {
                        continue;
                    }
                    let mut labels: Vec<RootVector> = (0..k).map(|i| plus(n, 2 * i, 1, 2 * i + 1, -1)).collect();
                    for j in 0..m {
                        let a = 2 * k + 2 * j;
                        labels.push(plus(n, a, 1, a + 1, -1));
                        labels.push(plus(n, a, 1, a + 1, 1));
                    }
                    if n % 2 == 0 && m == 0 && 2 * k == n {
                        out.push(CarterDiagram::singles(labels.clone()));
                        *labels.last_mut().expect("k >= 2") = plus(n, n - 2, 1, n - 1, 1);
                    }
                    out.push(CarterDiagram::singles(labels));
                }
            }
            for p in primes_upto(n).into_iter().filter(|&p| p >= 3) {
                path_unions(p, n, &mut out);
            }
        }
        FiniteType::E6 => {
            out.extend((1..=4).map(|k| CarterDiagram::unlabelled(2, vec![1; k])));
            out.extend((1..=3).map(|k| CarterDiagram::unlabelled(3, vec![2; k])));
            out.push(CarterDiagram::unlabelled(5, vec![4]));
        }
        FiniteType::E7 => {
            let e = |i: usize, si: i64, j: usize, sj: i64| plus(8, i - 1, si, j - 1, sj);
            for k in 1..=7 {
                match k {
                    3 => {
                        out.push(CarterDiagram::singles(vec![e(1, 1, 2, -1), e(3, 1, 4, -1), e(5, 1, 6, -1)]));
                        out.push(CarterDiagram::singles(vec![e(1, 1, 2, -1), e(3, 1, 4, -1), e(5, 1, 6, 1)]));
                    }
                    4 => {
                        out.push(CarterDiagram::singles(vec![
                            e(1, 1, 2, -1),
                            e(3, 1, 4, -1),
                            e(5, 1, 6, -1),
                            e(7, 1, 8, -1),
                        ]));
                        out.push(CarterDiagram::singles(vec![
                            e(1, 1, 2, 1),
                            e(3, 1, 4, 1),
                            e(5, 1, 6, 1),
                            RootVector::half(&[1, -1, 1, -1, 1, -1, 1, -1]),
                        ]));
                    }
                    _ => out.push(CarterDiagram::unlabelled(2, vec![1; k])),
                }
            }
            out.extend((1..=3).map(|k| CarterDiagram::unlabelled(3, vec![2; k])));
            out.push(CarterDiagram::unlabelled(5, vec![4]));
            out.push(CarterDiagram::unlabelled(7, vec![6]));
        }
        FiniteType::E8 => {
            let e = |i: usize, si: i64, j: usize, sj: i64| plus(8, i - 1, si, j - 1, sj);
            for k in 1..=8 {
                if k == 4 {
                    for last in [-1, 1] {
                        out.push(CarterDiagram::singles(vec![
                            e(1, 1, 2, -1),
                            e(3, 1, 4, -1),
                            e(5, 1, 6, -1),
                            e(7, 1, 8, last),
                        ]));
                    }
                } else {
                    out.push(CarterDiagram::unlabelled(2, vec![1; k]));
                }
            }
            out.extend((1..=4).map(|k| CarterDiagram::unlabelled(3, vec![2; k])));
            out.extend((1..=2).map(|k| CarterDiagram::unlabelled(5, vec![4; k])));
            out.push(CarterDiagram::unlabelled(7, vec![6]));
        }
        FiniteType::F4 => {
            let d = |i: usize, j: usize, sj: i64| plus(4, i - 1, 1, j - 1, sj);
            let e = |i: usize| RootVector::int(&unit(4, i - 1, 1));
            let half = RootVector::half(&[1, 1, 1, 1]);
            for labels in [
                vec![d(1, 2, -1)],
                vec![e(1)],
                vec![d(1, 2, -1), d(3, 4, -1)],
                vec![d(1, 2, -1), e(3)],
                vec![d(1, 2, -1), d(3, 4, -1), d(3, 4, 1)],
                vec![d(1, 2, -1), d(3, 4, -1), half.clone()],
                // the central element −1
                vec![d(1, 2, -1), d(1, 2, 1), d(3, 4, -1), d(3, 4, 1)],
            ] {
                out.push(CarterDiagram::singles(labels));
            }
            let path = |paths: Vec<usize>, labels: Vec<RootVector>| CarterDiagram { order: 3, paths, labels: Some(labels) };
            out.push(path(vec![2], vec![d(1, 2, -1), d(2, 3, -1)]));
            out.push(path(vec![2], vec![e(4), half.clone()]));
            out.push(path(vec![2, 2], vec![d(1, 2, -1), d(2, 3, -1), e(4), half]));
        }
        FiniteType::G2 | FiniteType::H3 | FiniteType::H4 | FiniteType::I2(_) => return Err(TorsionError::NotWeyl(t)),
    }
    Ok(out)
}

fn edge_value(rs: &RootSystem, u: usize, v: usize) -> ExactNumber {
    let (a, b) = (&rs.roots()[u], &rs.roots()[v]);
    let ip = a.dot(b);
    (ip.clone() * ip * ExactNumber::from_int(4)).div(&(a.dot(a) * b.dot(b))).expect("roots are nonzero")
}

fn labelling_ok(rs: &RootSystem, d: &CarterDiagram, roots: &[usize]) -> bool {
    for i in 0..roots.len() {
        for j in 0..i {
            if roots[i] == roots[j] || roots[i] == rs.negation(roots[j]) {
                return false;
            }
            let want = if d.adjacent(i, j) { 1 } else { 0 };
            if edge_value(rs, roots[i], roots[j]) != ExactNumber::from_int(want) {
                return false;
            }
        }
    }
    true
}

fn extend_labelling(
    rs: &RootSystem,
    d: &CarterDiagram,
    candidates: &[usize],
    assigned: &mut Vec<usize>,
    accept: &dyn Fn(&[usize], usize) -> bool,
) -> bool {
    let i = assigned.len();
    if i == d.node_count() {
        return true;
    }
    for &c in candidates {
        if !accept(assigned, c) {
            continue;
        }
        assigned.push(c);
        if labelling_ok(rs, d, assigned) && extend_labelling(rs, d, candidates, assigned, accept) {
            return true;
        }
        assigned.pop();
    }
    false
}

/// Assigns roots to the nodes: prescribed labels first, then simple roots
/// when the diagram sits inside the Coxeter symbol, then a depth-first
/// search over positive roots.
pub fn label_diagram(d: &CarterDiagram, t: FiniteType) -> Result<LabelledDiagram, TorsionError> {
    let rs = root_system(t)?;
    if let Some(labels) = &d.labels {
        let roots = labels
            .iter()
            .map(|l| rs.index_of(l).ok_or_else(|| TorsionError::BadLabel { ty: t, label: l.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        if !labelling_ok(&rs, d, &roots) {
            return Err(TorsionError::InvalidLabelling(d.to_string()));
        }
        let from_simple = roots.iter().all(|r| rs.simple_indices().contains(r));
        return Ok(LabelledDiagram { diagram: d.clone(), roots, from_simple });
    }
    let mut assigned = Vec::new();
    let simple = rs.simple_indices().to_vec();
    if extend_labelling(&rs, d, &simple, &mut assigned, &|a, c| !a.contains(&c)) {
        return Ok(LabelledDiagram { diagram: d.clone(), roots: assigned, from_simple: true });
    }
    let positive: Vec<usize> = (0..rs.len()).filter(|&r| rs.is_positive(r)).collect();
    assigned.clear();
    if extend_labelling(&rs, d, &positive, &mut assigned, &|a, c| !a.contains(&c)) {
        return Ok(LabelledDiagram { diagram: d.clone(), roots: assigned, from_simple: false });
    }
    Err(TorsionError::NoLabelling { ty: t, diagram: d.to_string() })
}

/// A word for the reflection in root `r`: a single letter if `±r` is simple.
fn reflection_letters(rs: &RootSystem, r: usize) -> Result<Word, TorsionError> {
    let simple = rs.simple_indices();
    if let Some(i) = simple.iter().position(|&s| s == r || s == rs.negation(r)) {
        return Ok(vec![i]);
    }
    Ok(rs.reflection_word(&rs.roots()[r])?)
}

/// The black-then-white product for a labelled diagram.
pub fn diagram_element(ld: &LabelledDiagram, t: FiniteType) -> Result<ConjClassRep, TorsionError> {
    let rs = root_system(t)?;
    let d = &ld.diagram;
    let mut word = Vec::new();
    for black in [true, false] {
        for (i, &r) in ld.roots.iter().enumerate() {
            if d.is_black(i) == black {
                word.extend(reflection_letters(&rs, r)?);
            }
        }
    }
    let g = rs.word_to_element(&word)?;
    let order = element_order(&g);
    let source = format!("{t}:{d}");
    if order != d.order {
        return Err(TorsionError::OrderMismatch { source_name: source, got: order, want: d.order });
    }
    Ok(ConjClassRep { word, order, source, fixed_roots: fixed_roots(&g) })
}

fn rep_from_word(t: FiniteType, word: Word, source: String) -> Result<ConjClassRep, TorsionError> {
    let g = root_action(t)?.word_to_element(&word)?;
    Ok(ConjClassRep { order: element_order(&g), fixed_roots: fixed_roots(&g), word, source })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x1` (and `x2` when `m` is even) and the `(x1x2)^l`, `l ≤ ⌊m/2⌋`, with `m/gcd(m,l)` prime.
pub fn dihedral_representatives(m: u32) -> Result<Vec<ConjClassRep>, TorsionError> {
    let t = FiniteType::dihedral(m);
    let mut out = vec![rep_from_word(t, vec![0], "x1".into())?];
    if m.is_multiple_of(2) {
        out.push(rep_from_word(t, vec![1], "x2".into())?);
    }
    for l in 1..=m / 2 {
        let q = m / gcd(m, l);
        if primes_upto(q as usize).last() == Some(&(q as u64)) {
            let word = [0, 1].repeat(l as usize);
            out.push(rep_from_word(t, word, format!("(x1x2)^{l}"))?);
        }
    }
    Ok(out)
}

fn parse_h_word(text: &str) -> Word {
    // w = x4x3x2x1, wb = x4x3x2; tokens like x3, w^12, wb
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (name, pow) = match tok.split_once('^') {
            Some((n, p)) => (n, p.parse::<usize>().expect("power")),
            None => (tok, 1),
        };
        let base: Word = match name {
            "w" => vec![3, 2, 1, 0],
            "wb" => vec![3, 2, 1],
            x => vec![x.trim_start_matches('x').parse::<usize>().expect("generator") - 1],
        };
        for _ in 0..pow {
            out.extend(&base);
        }
    }
    out
}

const H3_WORDS: &[&str] = &["x1", "x1 x3", "x2 x1 x3 x2 x1 x3 x2 x1 x3 x2 x1 x3 x2 x1 x3", "x1 x2", "x2 x3", "x2 x3 x2 x3"];

const H4_WORDS: &[&str] = &[
    "x1",
    "x1 x4",
    "x2 x1 x3 x2 x1 w^12 wb x4 x3 x4",
    "x1 x2 x1 x3 x2 x1 w^12 wb x4 x3 x4",
    "x1 x2",
    "x2 x3",
    "x3 x4",
    "x3 x4 x3 x4",
    "x3 w^3 wb w^2",
    "x3 w^9 wb w^2",
    "x1 x2 x1 x3 w^8 wb x4 x3 x4",
];

/// The listed words for `H3` and `H4`, plus for `H4` the product of two
/// commuting order-3 rotations in orthogonal planes (a labelled `2A2`).
pub fn h_type_representatives(t: FiniteType) -> Result<Vec<ConjClassRep>, TorsionError> {
    let words = match t {
        FiniteType::H3 => H3_WORDS,
        FiniteType::H4 => H4_WORDS,
        _ => return Err(TorsionError::NotWeyl(t)),
    };
    let mut out = words.iter().map(|w| rep_from_word(t, parse_h_word(w), w.to_string())).collect::<Result<Vec<_>, _>>()?;
    if t == FiniteType::H4 {
        let d = CarterDiagram::unlabelled(3, vec![2, 2]);
        let ld = label_diagram(&d, t)?;
        out.push(diagram_element(&ld, t)?);
    }
    Ok(out)
}

fn compute_representatives(t: FiniteType) -> Result<Vec<ConjClassRep>, TorsionError> {
    match t {
        FiniteType::H3 | FiniteType::H4 => h_type_representatives(t),
        FiniteType::G2 => dihedral_representatives(6),
        FiniteType::I2(m) => dihedral_representatives(m),
        _ => prime_class_diagrams(t)?
            .iter()
            .map(|d| label_diagram(d, t).and_then(|ld| diagram_element(&ld, t)))
            .collect(),
    }
}

/// Prime-order class representatives of an irreducible finite type. Cached.
pub fn representatives(t: FiniteType) -> Result<Arc<Vec<ConjClassRep>>, TorsionError> {
    static CACHE: OnceLock<Mutex<HashMap<FiniteType, Arc<Vec<ConjClassRep>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("rep cache").get(&t) {
        return Ok(r.clone());
    }
    let reps = Arc::new(compute_representatives(t)?);
    Ok(cache.lock().expect("rep cache").entry(t).or_insert(reps).clone())
}

/// A representative of a direct product: `(order, global word, source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRep {
    pub order: u64,
    pub word: Word,
    pub source: String,
}

/// For each prime, every product of one order-`p` representative from each
/// component of a nonempty set of components. `components[c].1[i]` is the
/// global index of canonical node `i` of component `c`.
pub fn product_representatives(components: &[(FiniteType, Vec<usize>)]) -> Result<Vec<ProductRep>, TorsionError> {
    let reps: Vec<Arc<Vec<ConjClassRep>>> =
        components.iter().map(|(t, _)| representatives(*t)).collect::<Result<_, _>>()?;
    let mut primes: Vec<u64> = reps.iter().flat_map(|r| r.iter().map(|c| c.order)).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for p in primes {
        // options per component: None (identity) or one of its order-p reps
        let options: Vec<Vec<Option<&ConjClassRep>>> = reps
            .iter()
            .map(|r| std::iter::once(None).chain(r.iter().filter(|c| c.order == p).map(Some)).collect())
            .collect();
        let mut idx = vec![0usize; components.len()];
        loop {
            if idx.iter().any(|&i| i > 0) {
                let mut word = Vec::new();
                let mut parts = Vec::new();
                for (c, &i) in idx.iter().enumerate() {
                    if let Some(rep) = options[c][i] {
                        word.extend(rep.word.iter().map(|&l| components[c].1[l]));
                        parts.push(rep.source.clone());
                    }
                }
                out.push(ProductRep { order: p, word, source: parts.join(" * ") });
            }
            let mut c = 0;
            while c < idx.len() {
                idx[c] += 1;
                if idx[c] < options[c].len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
            if c == idx.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// Representatives of a product of irreducibles numbered consecutively.
pub fn reducible_representatives(types: &[FiniteType]) -> Result<Vec<ProductRep>, TorsionError> {
    let mut offset = 0;
    let comps: Vec<(FiniteType, Vec<usize>)> = types
        .iter()
        .map(|&t| {
            let m = (offset..offset + t.rank()).collect();
            offset += t.rank();
            (t, m)
        })
        .collect();
    product_representatives(&comps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InventoryEntry {
    pub subset: SubsetId,
    pub order: u64,
    /// Generator indices of the symbol.
    pub word: Word,
    pub source: String,
}

/// Class representatives of every maximal finite standard subgroup.
/// Redundant across subsets, and complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionInventory {
    pub entries: Vec<InventoryEntry>,
    /// Component types beyond the oracle bound, whose lists are checked per element only.
    pub unvalidated: Vec<FiniteType>,
}

impl TorsionInventory {
    pub fn primes(&self) -> Vec<u64> {
        let mut p: Vec<u64> = self.entries.iter().map(|e| e.order).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// `order=<p> subset=<names> word=<g1 g2 ...>` lines.
    pub fn lines(&self, sym: &CoxeterSymbol) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| {
                let word: Vec<&str> = e.word.iter().map(|&i| sym.generators()[i].as_str()).collect();
                format!("order={} subset={} word={}", e.order, sym.subset_names(e.subset).join(","), word.join(" "))
            })
            .collect()
    }
}

pub fn inventory(sym: &CoxeterSymbol) -> Result<TorsionInventory, TorsionError> {
    inventory_from_poset(&spherical_poset(sym))
}

pub fn inventory_from_poset(poset: &SphericalPoset) -> Result<TorsionInventory, TorsionError> {
    let mut entries = Vec::new();
    let mut unvalidated = Vec::new();
    for node in poset.maximal() {
        let comps: Vec<(FiniteType, Vec<usize>)> = node
            .components
            .iter()
            .map(|c| match c.class {
                ComponentClass::Finite(t) => (t, c.nodes.clone()),
                _ => unreachable!("spherical poset nodes are finite"),
            })
            .collect();
        for (t, _) in &comps {
            if t.order() > ORACLE_LIMIT.into() && !unvalidated.contains(t) {
                unvalidated.push(*t);
            }
        }
        for r in product_representatives(&comps)? {
            entries.push(InventoryEntry { subset: node.subset, order: r.order, word: r.word, source: r.source });
        }
    }
    Ok(TorsionInventory { entries, unvalidated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{parse_symbol, FiniteType as T};

    #[test]
    fn diagram_counts() {
        let a3 = prime_class_diagrams(T::A(3)).unwrap();
        assert_eq!(a3.iter().filter(|d| d.order == 2).count(), 2);
        let d4 = prime_class_diagrams(T::D(4)).unwrap();
        assert_eq!(d4.iter().filter(|d| d.order == 2).count(), 6);
        assert_eq!(d4.iter().filter(|d| d.order == 3).count(), 1);
        let e6 = prime_class_diagrams(T::E6).unwrap();
        let fives: Vec<_> = e6.iter().filter(|d| d.order == 5).collect();
        assert_eq!(fives.len(), 1);
        assert_eq!(fives[0].paths, vec![4]);
        assert!(matches!(prime_class_diagrams(T::H3), Err(TorsionError::NotWeyl(_))));
    }

    #[test]
    fn labelling_examples() {
        let d = CarterDiagram::unlabelled(2, vec![1]);
        let ld = label_diagram(&d, T::A(2)).unwrap();
        let rs = root_system(T::A(2)).unwrap();
        assert_eq!(rs.roots()[ld.roots[0]], RootVector::int(&[1, -1, 0]));
        assert!(ld.from_simple);

        let d = CarterDiagram::unlabelled(3, vec![2, 2, 2]);
        let ld = label_diagram(&d, T::E6).unwrap();
        assert!(!ld.from_simple);
        let rep = diagram_element(&ld, T::E6).unwrap();
        assert_eq!(rep.order, 3);
    }

    #[test]
    fn d4_split_labels() {
        let d4 = prime_class_diagrams(T::D(4)).unwrap();
        let split: Vec<_> = d4.iter().filter(|d| d.order == 2 && d.paths.len() == 2 && d.labels.as_ref().is_some_and(|l| l[0] == RootVector::int(&[1, -1, 0, 0]) && l[1].0[1].is_zero())).collect();
        assert_eq!(split.len(), 2);
        assert_eq!(split[0].labels.as_ref().unwrap()[1], RootVector::int(&[0, 0, 1, -1]));
        assert_eq!(split[1].labels.as_ref().unwrap()[1], RootVector::int(&[0, 0, 1, 1]));
    }

    #[test]
    fn simple_words() {
        let reps = representatives(T::A(3)).unwrap();
        assert_eq!(reps[0].word, vec![0]);
        assert_eq!(reps[0].order, 2);
        let a2 = representatives(T::A(2)).unwrap();
        assert!(a2.iter().any(|r| r.word == vec![0, 1] && r.order == 3));
    }

    #[test]
    fn dihedral_lists() {
        let words = |m| dihedral_representatives(m).unwrap().into_iter().map(|r| r.word).collect::<Vec<_>>();
        assert_eq!(words(3), vec![vec![0], vec![0, 1]]);
        assert_eq!(words(4), vec![vec![0], vec![1], vec![0, 1, 0, 1]]);
        assert_eq!(words(7).len(), 4);
        for r in dihedral_representatives(12).unwrap() {
            assert!([2, 3].contains(&r.order));
        }
    }

    #[test]
    fn h3_orders() {
        let reps = h_type_representatives(T::H3).unwrap();
        let orders: Vec<u64> = reps.iter().map(|r| r.order).collect();
        assert_eq!(orders, vec![2, 2, 2, 3, 5, 5]);
    }

    #[test]
    fn h4_listed_orders() {
        let reps = h_type_representatives(T::H4).unwrap();
        let orders: Vec<u64> = reps.iter().map(|r| r.order).collect();
        assert_eq!(orders, vec![2, 2, 2, 2, 3, 3, 5, 5, 5, 5, 5, 3]);
    }

    #[test]
    fn products() {
        let r = reducible_representatives(&[T::A(1), T::A(1)]).unwrap();
        let words: Vec<_> = r.iter().map(|p| p.word.clone()).collect();
        assert_eq!(words, vec![vec![0], vec![1], vec![0, 1]]);
        let r = reducible_representatives(&[T::A(1), T::A(2)]).unwrap();
        assert_eq!(r.iter().filter(|p| p.order == 3).count(), 1);
    }

    #[test]
    fn simplex4_inventory() {
        let s = parse_symbol("gens x1 x2 x3 x4 x5; edge x4 x5:4; edge x1 x5:3; edge x2 x5:3; edge x3 x5:3;").unwrap();
        let inv = inventory(&s).unwrap();
        assert_eq!(inv.primes(), vec![2, 3]);
        let d4 = s.subset_by_names(&["x1", "x2", "x3", "x5"]).unwrap();
        let d4_entries: Vec<_> = inv.entries.iter().filter(|e| e.subset == d4).collect();
        assert_eq!(d4_entries.iter().filter(|e| e.order == 2).count(), 6);
        assert_eq!(d4_entries.iter().filter(|e| e.order == 3).count(), 1);
        for e in &inv.entries {
            assert!(e.word.iter().all(|&g| e.subset.contains(g)));
        }
        assert!(inv.unvalidated.is_empty());
    }
}
