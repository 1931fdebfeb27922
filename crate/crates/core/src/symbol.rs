//! Coxeter symbols: the labelled graphs presenting a Coxeter group.
//!
//! A symbol has an ordered list of generator names and a map from unordered
//! generator pairs to edge labels. A missing pair means `m = 2`, an
//! unlabelled edge `m = 3`, and [`EdgeLabel::Infinity`] a dotted edge.
//!
//! The text form is a small line-oriented DSL:
//!
//! ```text
//! # comments run to end of line
//! name simplex4;             # optional
//! gens x1 x2 x3 x4 x5;
//! edge x4 x5 : 4;
//! edge x1 x5 : 3;
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

/// Largest generator count a symbol may have; subsets are 64-bit masks.
pub const MAX_RANK: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: self-edge on `{name}`")]
    SelfEdge { line: usize, name: String },
    #[error("line {line}: bad edge label `{label}` (need an integer >= 3 or `inf`)")]
    BadLabel { line: usize, label: String },
    #[error("line {line}: edge {a}-{b} declared with conflicting labels")]
    ConflictingEdge { line: usize, a: String, b: String },
    #[error("symbol has {0} generators, at most {MAX_RANK} are supported")]
    TooManyGenerators(usize),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("`{0}` is not a finite Coxeter type")]
    NotFinite(String),
    #[error("unknown Coxeter type `{0}`")]
    UnknownType(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Finite(u32),
    Infinity,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Finite(m) => write!(f, "{m}"),
            EdgeLabel::Infinity => write!(f, "inf"),
        }
    }
}

/// A subset of generator indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetId(pub u64);

impl SubsetId {
    pub const EMPTY: SubsetId = SubsetId(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SubsetId(it.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    /// All of `0..rank`.
    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            SubsetId(u64::MAX)
        } else {
            SubsetId((1u64 << rank) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: SubsetId) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(self, i: usize) -> Self {
        SubsetId(self.0 | 1u64 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        SubsetId(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: SubsetId) -> Self {
        SubsetId(self.0 | other.0)
    }

    pub fn difference(self, other: SubsetId) -> Self {
        SubsetId(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: SubsetId) -> bool {
        self.0 & other.0 == 0
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, including `∅` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = SubsetId> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some(((c | !full).wrapping_add(1)) & full) };
            Some(SubsetId(c))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSymbol {
    name: Option<String>,
    generators: Vec<String>,
    edges: BTreeMap<(usize, usize), EdgeLabel>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl CoxeterSymbol {
    /// Builds a symbol from generator names and `(i, j, label)` triples.
    pub fn new<I>(generators: Vec<String>, edges: I) -> Result<Self, SymbolError>
    where
        I: IntoIterator<Item = (usize, usize, EdgeLabel)>,
    {
        if generators.len() > MAX_RANK {
            return Err(SymbolError::TooManyGenerators(generators.len()));
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(SymbolError::DuplicateGenerator { line: 0, name: g.clone() });
            }
        }
        let mut sym = CoxeterSymbol { name: None, generators, edges: BTreeMap::new() };
        for (i, j, label) in edges {
            sym.add_edge(i, j, label, 0)?;
        }
        Ok(sym)
    }

    /// Generators named `x1..xk`.
    pub fn with_default_names<I>(rank: usize, edges: I) -> Result<Self, SymbolError>
    where
        I: IntoIterator<Item = (usize, usize, EdgeLabel)>,
    {
        Self::new((1..=rank).map(|i| format!("x{i}")).collect(), edges)
    }

    /// A chain `x1 - x2 - ... ` with the given edge labels.
    pub fn chain(labels: &[u32]) -> Self {
        let edges = labels.iter().enumerate().map(|(i, &m)| (i, i + 1, EdgeLabel::Finite(m)));
        Self::with_default_names(labels.len() + 1, edges).expect("chain symbol is valid")
    }

    /// The triangle symbol Δ(p, q, r): edges x1x2 = p, x2x3 = q, x1x3 = r.
    pub fn triangle(p: u32, q: u32, r: u32) -> Self {
        let mut edges = Vec::new();
        for (i, j, m) in [(0, 1, p), (1, 2, q), (0, 2, r)] {
            if m > 2 {
                edges.push((i, j, EdgeLabel::Finite(m)));
            }
        }
        Self::with_default_names(3, edges).expect("triangle symbol is valid")
    }

    fn add_edge(&mut self, i: usize, j: usize, label: EdgeLabel, line: usize) -> Result<(), SymbolError> {
        let n = self.generators.len();
        if i >= n {
            return Err(SymbolError::IndexOutOfRange(i));
        }
        if j >= n {
            return Err(SymbolError::IndexOutOfRange(j));
        }
        if i == j {
            return Err(SymbolError::SelfEdge { line, name: self.generators[i].clone() });
        }
        match label {
            EdgeLabel::Finite(m) if m < 2 => {
                return Err(SymbolError::BadLabel { line, label: m.to_string() });
            }
            EdgeLabel::Finite(2) => {
                if self.edges.contains_key(&ordered(i, j)) {
                    return Err(SymbolError::ConflictingEdge {
                        line,
                        a: self.generators[i].clone(),
                        b: self.generators[j].clone(),
                    });
                }
                return Ok(());
            }
            _ => {}
        }
        match self.edges.insert(ordered(i, j), label) {
            Some(old) if old != label => Err(SymbolError::ConflictingEdge {
                line,
                a: self.generators[i].clone(),
                b: self.generators[j].clone(),
            }),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Edge label between distinct generators; `None` means `m = 2`.
    pub fn label(&self, i: usize, j: usize) -> Option<EdgeLabel> {
        self.edges.get(&ordered(i, j)).copied()
    }

    /// The Coxeter matrix entry `m_ij`; `None` for `∞`.
    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        match self.label(i, j) {
            None => Some(2),
            Some(EdgeLabel::Finite(m)) => Some(m),
            Some(EdgeLabel::Infinity) => None,
        }
    }

    /// Edges `(i, j, label)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeLabel)> + '_ {
        self.edges.iter().map(|(&(i, j), &l)| (i, j, l))
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&j| j != i && self.label(i, j).is_some()).collect()
    }

    pub fn full_subset(&self) -> SubsetId {
        SubsetId::full(self.rank())
    }

    /// Connected components of the sub-graph on `sub`, each sorted, ordered by least element.
    pub fn components_of(&self, sub: SubsetId) -> Vec<Vec<usize>> {
        let mut seen = SubsetId::EMPTY;
        let mut out = Vec::new();
        for start in sub.indices() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen = seen.insert(start);
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                k += 1;
                for w in sub.indices() {
                    if !seen.contains(w) && self.label(v, w).is_some() {
                        seen = seen.insert(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_of(self.full_subset())
    }

    /// The subsymbol on `sub`; generators keep their relative order.
    pub fn induced_subsymbol(&self, sub: SubsetId) -> Result<CoxeterSymbol, SymbolError> {
        if let Some(bad) = sub.indices().find(|&i| i >= self.rank()) {
            return Err(SymbolError::IndexOutOfRange(bad));
        }
        let keep: Vec<usize> = sub.indices().collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let generators = keep.iter().map(|&i| self.generators[i].clone()).collect();
        let edges = self
            .edges()
            .filter(|(i, j, _)| pos.contains_key(i) && pos.contains_key(j))
            .map(|(i, j, l)| (pos[&i], pos[&j], l));
        CoxeterSymbol::new(generators, edges)
    }

    /// Subset id from generator names.
    pub fn subset_by_names(&self, names: &[&str]) -> Result<SubsetId, SymbolError> {
        let mut s = SubsetId::EMPTY;
        for n in names {
            let i = self
                .generator_index(n)
                .ok_or_else(|| SymbolError::UnknownGenerator { line: 0, name: n.to_string() })?;
            s = s.insert(i);
        }
        Ok(s)
    }

    pub fn subset_names(&self, sub: SubsetId) -> Vec<&str> {
        sub.indices().map(|i| self.generators[i].as_str()).collect()
    }

    /// Canonical DSL text: generators in declaration order, edges sorted by name.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("name {n};\n"));
        }
        out.push_str("gens");
        for g in &self.generators {
            out.push(' ');
            out.push_str(g);
        }
        out.push_str(";\n");
        let mut lines: Vec<(String, String, EdgeLabel)> = self
            .edges()
            .map(|(i, j, l)| (self.generators[i].clone(), self.generators[j].clone(), l))
            .collect();
        lines.sort();
        for (a, b, l) in lines {
            out.push_str(&format!("edge {a} {b} : {l};\n"));
        }
        out
    }

    /// True if the two symbols have the same labelled graph up to renaming.
    pub fn is_isomorphic(&self, other: &CoxeterSymbol) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let nodes: Vec<usize> = (0..other.rank()).collect();
        find_isomorphism(self, other, &nodes).is_some()
    }
}

impl fmt::Display for CoxeterSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emit())
    }
}

fn parse_label(tok: &str, line: usize) -> Result<EdgeLabel, SymbolError> {
    if tok.eq_ignore_ascii_case("inf") || tok == "∞" {
        return Ok(EdgeLabel::Infinity);
    }
    match tok.parse::<u32>() {
        Ok(m) if m >= 3 => Ok(EdgeLabel::Finite(m)),
        _ => Err(SymbolError::BadLabel { line, label: tok.to_string() }),
    }
}

/// Splits DSL source into `;`-terminated statements with the line they start on.
/// `#` starts a comment that runs to the end of the line.
pub(crate) fn statements(text: &str) -> Result<Vec<(usize, String)>, SymbolError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start_line = 1;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for part in line.split_inclusive(';') {
            if cur.trim().is_empty() {
                start_line = ln + 1;
            }
            if let Some(body) = part.strip_suffix(';') {
                cur.push_str(body);
                out.push((start_line, cur.trim().to_string()));
                cur.clear();
            } else {
                cur.push_str(part);
                cur.push(' ');
            }
        }
    }
    if !cur.trim().is_empty() {
        return Err(SymbolError::Syntax { line: start_line, msg: "missing `;`".into() });
    }
    Ok(out.into_iter().filter(|(_, s)| !s.is_empty()).collect())
}

/// Parses the symbol DSL.
pub fn parse_symbol(text: &str) -> Result<CoxeterSymbol, SymbolError> {
    let mut sym = CoxeterSymbol { name: None, generators: Vec::new(), edges: BTreeMap::new() };
    for (line, stmt) in statements(text)? {
        let spaced = stmt.replace(':', " : ");
        let toks: Vec<&str> = spaced.split_whitespace().collect();
        match toks.first().copied() {
            Some("name") if toks.len() == 2 => sym.name = Some(toks[1].to_string()),
            Some("gens") => {
                for g in &toks[1..] {
                    if sym.generators.iter().any(|x| x == g) {
                        return Err(SymbolError::DuplicateGenerator { line, name: g.to_string() });
                    }
                    sym.generators.push(g.to_string());
                }
                if sym.generators.len() > MAX_RANK {
                    return Err(SymbolError::TooManyGenerators(sym.generators.len()));
                }
            }
            Some("edge") => {
                if toks.len() != 5 || toks[3] != ":" {
                    return Err(SymbolError::Syntax {
                        line,
                        msg: format!("expected `edge <a> <b> : <m|inf>`, got `{stmt}`"),
                    });
                }
                let idx = |n: &str| {
                    sym.generator_index(n)
                        .ok_or_else(|| SymbolError::UnknownGenerator { line, name: n.to_string() })
                };
                let (i, j) = (idx(toks[1])?, idx(toks[2])?);
                if i == j {
                    return Err(SymbolError::SelfEdge { line, name: toks[1].to_string() });
                }
                let label = parse_label(toks[4], line)?;
                sym.add_edge(i, j, label, line)?;
            }
            _ => {
                return Err(SymbolError::Syntax { line, msg: format!("unrecognised statement `{stmt}`") });
            }
        }
    }
    if sym.generators.is_empty() {
        return Err(SymbolError::Syntax { line: 1, msg: "no `gens` statement".into() });
    }
    Ok(sym)
}

impl FromStr for CoxeterSymbol {
    type Err = SymbolError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_symbol(s)
    }
}

/// Irreducible finite Coxeter types, with exceptional isomorphisms folded:
/// `I2(3) = A2`, `I2(4) = B2`, `I2(6) = G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

impl FiniteType {
    /// Dihedral type of order `2m`, normalised.
    pub fn dihedral(m: u32) -> FiniteType {
        match m {
            3 => FiniteType::A(2),
            4 => FiniteType::B(2),
            6 => FiniteType::G2,
            _ => FiniteType::I2(m),
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            FiniteType::A(n) => n >= 1,
            FiniteType::B(n) => n >= 2,
            FiniteType::D(n) => n >= 4,
            FiniteType::I2(m) => m >= 5 && m != 6,
            _ => true,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::H4 => 4,
            FiniteType::G2 | FiniteType::I2(_) => 2,
            FiniteType::H3 => 3,
        }
    }

    /// Crystallographic (Weyl) types.
    pub fn is_weyl(self) -> bool {
        !matches!(self, FiniteType::H3 | FiniteType::H4 | FiniteType::I2(_))
    }

    pub fn order(self) -> BigUint {
        let fact = |n: usize| (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
        let pow2 = |n: usize| BigUint::one() << n;
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) => pow2(n) * fact(n),
            FiniteType::D(n) => pow2(n - 1) * fact(n),
            FiniteType::E6 => BigUint::from(51_840u32),
            FiniteType::E7 => BigUint::from(2_903_040u32),
            FiniteType::E8 => BigUint::from(696_729_600u32),
            FiniteType::F4 => BigUint::from(1_152u32),
            FiniteType::G2 => BigUint::from(12u32),
            FiniteType::H3 => BigUint::from(120u32),
            FiniteType::H4 => BigUint::from(14_400u32),
            FiniteType::I2(m) => BigUint::from(2 * m),
        }
    }

    /// The canonical labelled graph, as `(i, j, m)` with `m ≥ 3`.
    ///
    /// Numbering matches the simple systems in [`crate::roots`]: chains run
    /// left to right; `D_n` attaches node `n−1` to node `n−3`; `E_n` attaches
    /// node `n−1` to node `n−4`; `F4` has its 4 between nodes 1 and 2; `H_n`
    /// has its 5 on the last edge.
    pub fn canonical_edges(self) -> Vec<(usize, usize, u32)> {
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect::<Vec<_>>();
        match self {
            FiniteType::A(n) => chain(n),
            FiniteType::B(n) => {
                let mut e = chain(n);
                e.last_mut().expect("B_n has n >= 2").2 = 4;
                e
            }
            FiniteType::D(n) => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1, 3));
                e
            }
            FiniteType::E6 | FiniteType::E7 | FiniteType::E8 => {
                let n = self.rank();
                let mut e = chain(n - 1);
                e.push((n - 4, n - 1, 3));
                e
            }
            FiniteType::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            FiniteType::G2 => vec![(0, 1, 6)],
            FiniteType::H3 => vec![(0, 1, 3), (1, 2, 5)],
            FiniteType::H4 => vec![(0, 1, 3), (1, 2, 3), (2, 3, 5)],
            FiniteType::I2(m) => vec![(0, 1, m)],
        }
    }

    pub fn canonical_symbol(self) -> CoxeterSymbol {
        let edges = self.canonical_edges().into_iter().map(|(i, j, m)| (i, j, EdgeLabel::Finite(m)));
        CoxeterSymbol::with_default_names(self.rank(), edges).expect("canonical symbol is valid")
    }

    /// Every finite irreducible type with exactly `k` nodes (`I2(m)` only for the given `m`).
    fn candidates(k: usize, dihedral_label: Option<u32>) -> Vec<FiniteType> {
        let mut out = vec![FiniteType::A(k)];
        if k >= 2 {
            out.push(FiniteType::B(k));
        }
        if k >= 4 {
            out.push(FiniteType::D(k));
        }
        match k {
            2 => {
                if let Some(m) = dihedral_label {
                    if m >= 5 {
                        out.push(FiniteType::dihedral(m));
                    }
                }
            }
            3 => out.push(FiniteType::H3),
            4 => out.extend([FiniteType::F4, FiniteType::H4]),
            6 => out.push(FiniteType::E6),
            7 => out.push(FiniteType::E7),
            8 => out.push(FiniteType::E8),
            _ => {}
        }
        out
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::G2 => write!(f, "G2"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for FiniteType {
    type Err = SymbolError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SymbolError::UnknownType(s.to_string());
        let s = s.trim();
        let t = if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            FiniteType::dihedral(rest.parse().map_err(|_| bad())?)
        } else {
            let (head, tail) = s.split_at(s.len().min(1));
            let n: usize = tail.parse().map_err(|_| bad())?;
            match (head, n) {
                ("A", n) => FiniteType::A(n),
                ("B", 2) => FiniteType::B(2),
                ("B", n) | ("C", n) => FiniteType::B(n),
                ("D", n) => FiniteType::D(n),
                ("E", 6) => FiniteType::E6,
                ("E", 7) => FiniteType::E7,
                ("E", 8) => FiniteType::E8,
                ("F", 4) => FiniteType::F4,
                ("G", 2) => FiniteType::G2,
                ("H", 3) => FiniteType::H3,
                ("H", 4) => FiniteType::H4,
                _ => return Err(bad()),
            }
        };
        if t.is_valid() {
            Ok(t)
        } else {
            Err(bad())
        }
    }
}

/// Irreducible affine types; the rank is one less than the node count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl AffineType {
    pub fn nodes(self) -> usize {
        match self {
            AffineType::A(n) | AffineType::B(n) | AffineType::C(n) | AffineType::D(n) => n + 1,
            AffineType::E6 => 7,
            AffineType::E7 => 8,
            AffineType::E8 => 9,
            AffineType::F4 => 5,
            AffineType::G2 => 3,
        }
    }

    pub fn canonical_edges(self) -> Vec<(usize, usize, EdgeLabel)> {
        let f = EdgeLabel::Finite;
        let chain = |from: usize, to: usize| (from..to).map(|i| (i, i + 1, f(3))).collect::<Vec<_>>();
        match self {
            AffineType::A(1) => vec![(0, 1, EdgeLabel::Infinity)],
            AffineType::A(n) => {
                let mut e = chain(0, n);
                e.push((0, n, f(3)));
                e
            }
            AffineType::B(n) => {
                let mut e = vec![(0, 2, f(3)), (1, 2, f(3))];
                e.extend(chain(2, n));
                e.last_mut().expect("B~n has n >= 3").2 = f(4);
                e
            }
            AffineType::C(n) => {
                let mut e = chain(0, n);
                e[0].2 = f(4);
                e.last_mut().expect("C~n has n >= 2").2 = f(4);
                e
            }
            AffineType::D(n) => {
                let mut e = vec![(0, 2, f(3)), (1, 2, f(3))];
                e.extend(chain(2, n - 2));
                e.push((n - 2, n - 1, f(3)));
                e.push((n - 2, n, f(3)));
                e
            }
            AffineType::E6 => vec![(0, 1, f(3)), (1, 2, f(3)), (0, 3, f(3)), (3, 4, f(3)), (0, 5, f(3)), (5, 6, f(3))],
            AffineType::E7 => {
                let mut e = chain(0, 6);
                e.push((3, 7, f(3)));
                e
            }
            AffineType::E8 => {
                let mut e = chain(0, 7);
                e.push((2, 8, f(3)));
                e
            }
            AffineType::F4 => vec![(0, 1, f(3)), (1, 2, f(3)), (2, 3, f(4)), (3, 4, f(3))],
            AffineType::G2 => vec![(0, 1, f(3)), (1, 2, f(6))],
        }
    }

    pub fn canonical_symbol(self) -> CoxeterSymbol {
        CoxeterSymbol::with_default_names(self.nodes(), self.canonical_edges()).expect("canonical affine symbol")
    }

    fn candidates(k: usize) -> Vec<AffineType> {
        let n = k.saturating_sub(1);
        let mut out = Vec::new();
        if n >= 1 {
            out.push(AffineType::A(n));
        }
        if n >= 3 {
            out.push(AffineType::B(n));
        }
        if n >= 2 {
            out.push(AffineType::C(n));
        }
        if n >= 4 {
            out.push(AffineType::D(n));
        }
        match k {
            3 => out.push(AffineType::G2),
            5 => out.push(AffineType::F4),
            7 => out.push(AffineType::E6),
            8 => out.push(AffineType::E7),
            9 => out.push(AffineType::E8),
            _ => {}
        }
        out
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "~A{n}"),
            AffineType::B(n) => write!(f, "~B{n}"),
            AffineType::C(n) => write!(f, "~C{n}"),
            AffineType::D(n) => write!(f, "~D{n}"),
            AffineType::E6 => write!(f, "~E6"),
            AffineType::E7 => write!(f, "~E7"),
            AffineType::E8 => write!(f, "~E8"),
            AffineType::F4 => write!(f, "~F4"),
            AffineType::G2 => write!(f, "~G2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentClass {
    Finite(FiniteType),
    Affine(AffineType),
    Other,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentClass::Finite(t) => write!(f, "{t}"),
            ComponentClass::Affine(t) => write!(f, "{t}"),
            ComponentClass::Other => write!(f, "OTHER"),
        }
    }
}

/// One connected component and its match. For finite and affine matches
/// `nodes[i]` is the generator playing canonical node `i`; for `Other` the
/// nodes are in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMatch {
    pub nodes: Vec<usize>,
    pub class: ComponentClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub components: Vec<ComponentMatch>,
}

impl Classification {
    /// True when every component is finite (the empty symbol included).
    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| matches!(c.class, ComponentClass::Finite(_)))
    }

    /// True when there is at least one component and every component is affine.
    pub fn is_affine(&self) -> bool {
        !self.components.is_empty() && self.components.iter().all(|c| matches!(c.class, ComponentClass::Affine(_)))
    }

    pub fn finite_types(&self) -> Option<Vec<FiniteType>> {
        self.components
            .iter()
            .map(|c| match c.class {
                ComponentClass::Finite(t) => Some(t),
                _ => None,
            })
            .collect()
    }

    pub fn order(&self) -> Option<BigUint> {
        self.finite_types().map(|ts| group_order(&ts))
    }

    /// `A1xA1`, `E6`, `~B3`, `OTHER`; `1` for the empty symbol.
    pub fn type_string(&self) -> String {
        if self.components.is_empty() {
            return "1".into();
        }
        self.components.iter().map(|c| c.class.to_string()).collect::<Vec<_>>().join("x")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Read a lone `∞` edge on two nodes as the affine `Ã1` (parallel mirrors, `c = −1`).
    pub infinity_edge_affine: bool,
}

/// Lexicographically least label-preserving bijection from the canonical
/// symbol onto `nodes` of `sym`, as `map[canonical] = generator`.
fn find_isomorphism(canon: &CoxeterSymbol, sym: &CoxeterSymbol, nodes: &[usize]) -> Option<Vec<usize>> {
    let k = canon.rank();
    if nodes.len() != k || canon.edges.len() != nodes.iter().enumerate().flat_map(|(a, &i)| nodes[a + 1..].iter().filter(move |&&j| sym.label(i, j).is_some())).count() {
        return None;
    }
    let fingerprint = |s: &CoxeterSymbol, v: usize, pool: &[usize]| {
        let mut labels: Vec<EdgeLabel> = pool.iter().filter(|&&w| w != v).filter_map(|&w| s.label(v, w)).collect();
        labels.sort();
        labels
    };
    let canon_nodes: Vec<usize> = (0..k).collect();
    let cf: Vec<_> = (0..k).map(|v| fingerprint(canon, v, &canon_nodes)).collect();
    let sf: HashMap<usize, Vec<EdgeLabel>> = nodes.iter().map(|&v| (v, fingerprint(sym, v, nodes))).collect();
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();

    fn go(
        i: usize,
        canon: &CoxeterSymbol,
        sym: &CoxeterSymbol,
        sorted: &[usize],
        cf: &[Vec<EdgeLabel>],
        sf: &HashMap<usize, Vec<EdgeLabel>>,
        map: &mut Vec<usize>,
        used: &mut HashSet<usize>,
    ) -> bool {
        if i == cf.len() {
            return true;
        }
        for &cand in sorted {
            if used.contains(&cand) || sf[&cand] != cf[i] {
                continue;
            }
            if (0..i).any(|j| canon.label(i, j) != sym.label(cand, map[j])) {
                continue;
            }
            map.push(cand);
            used.insert(cand);
            if go(i + 1, canon, sym, sorted, cf, sf, map, used) {
                return true;
            }
            map.pop();
            used.remove(&cand);
        }
        false
    }

    let mut map = Vec::with_capacity(k);
    let mut used = HashSet::new();
    go(0, canon, sym, &sorted, &cf, &sf, &mut map, &mut used).then_some(map)
}

fn classify_component(sym: &CoxeterSymbol, nodes: &[usize], opts: ClassifyOptions) -> ComponentMatch {
    let k = nodes.len();
    let dihedral_label = if k == 2 {
        match sym.label(nodes[0], nodes[1]) {
            Some(EdgeLabel::Finite(m)) => Some(m),
            _ => None,
        }
    } else {
        None
    };
    for t in FiniteType::candidates(k, dihedral_label) {
        if let Some(map) = find_isomorphism(&t.canonical_symbol(), sym, nodes) {
            return ComponentMatch { nodes: map, class: ComponentClass::Finite(t) };
        }
    }
    for t in AffineType::candidates(k) {
        if t == AffineType::A(1) && !opts.infinity_edge_affine {
            continue;
        }
        if let Some(map) = find_isomorphism(&t.canonical_symbol(), sym, nodes) {
            return ComponentMatch { nodes: map, class: ComponentClass::Affine(t) };
        }
    }
    ComponentMatch { nodes: nodes.to_vec(), class: ComponentClass::Other }
}

/// Classifies the subsymbol on `sub`, component by component.
pub fn classify_subset(sym: &CoxeterSymbol, sub: SubsetId, opts: ClassifyOptions) -> Classification {
    let components = sym.components_of(sub).iter().map(|c| classify_component(sym, c, opts)).collect();
    Classification { components }
}

pub fn classify(sym: &CoxeterSymbol) -> Classification {
    classify_with(sym, ClassifyOptions::default())
}

pub fn classify_with(sym: &CoxeterSymbol, opts: ClassifyOptions) -> Classification {
    classify_subset(sym, sym.full_subset(), opts)
}

/// Order of a direct product of finite irreducibles.
pub fn group_order(types: &[FiniteType]) -> BigUint {
    types.iter().fold(BigUint::one(), |acc, t| acc * t.order())
}

#[derive(Clone, Debug)]
pub struct PosetNode {
    pub subset: SubsetId,
    /// Finite components with their canonical node correspondence.
    pub components: Vec<ComponentMatch>,
    pub order: BigUint,
}

impl PosetNode {
    pub fn types(&self) -> Vec<FiniteType> {
        self.components
            .iter()
            .map(|c| match c.class {
                ComponentClass::Finite(t) => t,
                _ => unreachable!("spherical poset nodes are finite"),
            })
            .collect()
    }
}

/// The subsets generating finite subgroups, ordered by size then mask.
#[derive(Clone, Debug)]
pub struct SphericalPoset {
    rank: usize,
    nodes: Vec<PosetNode>,
    index: HashMap<SubsetId, usize>,
}

impl SphericalPoset {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, s: SubsetId) -> Option<&PosetNode> {
        self.index.get(&s).map(|&i| &self.nodes[i])
    }

    pub fn contains(&self, s: SubsetId) -> bool {
        self.index.contains_key(&s)
    }

    /// Elements with no proper superset in the poset.
    pub fn maximal(&self) -> Vec<&PosetNode> {
        self.nodes
            .iter()
            .filter(|n| !self.nodes.iter().any(|m| m.subset != n.subset && n.subset.is_subset_of(m.subset)))
            .collect()
    }

    /// The sub-poset of elements contained in `within`.
    pub fn restrict(&self, within: SubsetId) -> SphericalPoset {
        let nodes: Vec<PosetNode> = self.nodes.iter().filter(|n| n.subset.is_subset_of(within)).cloned().collect();
        let index = nodes.iter().enumerate().map(|(i, n)| (n.subset, i)).collect();
        SphericalPoset { rank: self.rank, nodes, index }
    }
}

/// Enumerates every spherical subset, growing from `∅` through downward-closed candidates.
pub fn spherical_poset(sym: &CoxeterSymbol) -> SphericalPoset {
    let rank = sym.rank();
    let mut nodes = vec![PosetNode { subset: SubsetId::EMPTY, components: Vec::new(), order: BigUint::one() }];
    let mut index: HashMap<SubsetId, usize> = HashMap::from([(SubsetId::EMPTY, 0)]);
    let mut level = vec![SubsetId::EMPTY];
    while !level.is_empty() {
        let mut next = Vec::new();
        let mut tried = HashSet::new();
        for s in &level {
            for g in 0..rank {
                if s.contains(g) {
                    continue;
                }
                let t = s.insert(g);
                if !tried.insert(t) || !t.indices().all(|h| index.contains_key(&t.remove(h))) {
                    continue;
                }
                let c = classify_subset(sym, t, ClassifyOptions::default());
                if let Some(order) = c.order() {
                    index.insert(t, nodes.len());
                    nodes.push(PosetNode { subset: t, components: c.components, order });
                    next.push(t);
                }
            }
        }
        next.sort();
        level = next;
    }
    nodes.sort_by_key(|n| (n.subset.len(), n.subset));
    let index = nodes.iter().enumerate().map(|(i, n)| (n.subset, i)).collect();
    SphericalPoset { rank, nodes, index }
}

/// `ℒ(Γ)`: the lcm of the orders of the finite standard subgroups.
pub fn lcm_finite_orders(sym: &CoxeterSymbol) -> BigUint {
    lcm_of_poset(&spherical_poset(sym))
}

pub fn lcm_of_poset(poset: &SphericalPoset) -> BigUint {
    poset.maximal().iter().fold(BigUint::one(), |acc, n| acc.lcm(&n.order))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const SIMPLEX4: &str = "gens x1 x2 x3 x4 x5;\nedge x4 x5 : 4;\nedge x1 x5 : 3;\nedge x2 x5 : 3;\nedge x3 x5 : 3;\n";

    #[test]
    fn parse_chain() {
        let s = parse_symbol("gens a b c; edge a b:3; edge b c:3;").unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.m(0, 1), Some(3));
        assert_eq!(s.m(1, 2), Some(3));
        assert_eq!(s.m(0, 2), Some(2));
        assert_eq!(s.m(1, 1), Some(1));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_symbol("gens a; edge a a:3;"), Err(SymbolError::SelfEdge { .. })));
        assert!(matches!(parse_symbol("gens a a;"), Err(SymbolError::DuplicateGenerator { .. })));
        assert!(matches!(parse_symbol("gens a b; edge a b:2;"), Err(SymbolError::BadLabel { .. })));
        assert!(matches!(parse_symbol("gens a b; edge a b:2.5;"), Err(SymbolError::BadLabel { .. })));
        assert!(matches!(parse_symbol("gens a b; edge a c:3;"), Err(SymbolError::UnknownGenerator { .. })));
        assert!(matches!(
            parse_symbol("gens a b; edge a b:3; edge b a:4;"),
            Err(SymbolError::ConflictingEdge { .. })
        ));
        assert!(parse_symbol("gens a b; edge a b:3; edge b a:3;").is_ok());
        assert!(matches!(parse_symbol("gens a b"), Err(SymbolError::Syntax { .. })));
        assert!(matches!(parse_symbol("# nothing\n"), Err(SymbolError::Syntax { .. })));
    }

    #[test]
    fn parse_comments_infinity_and_name() {
        let s = parse_symbol("name tri; # a triangle\ngens p q r;\nedge p q : inf; # dotted\nedge q r:4;").unwrap();
        assert_eq!(s.name(), Some("tri"));
        assert_eq!(s.label(0, 1), Some(EdgeLabel::Infinity));
        assert_eq!(s.m(0, 1), None);
        assert_eq!(parse_symbol(&s.emit()).unwrap(), s);
    }

    #[test]
    fn simplex4_shape() {
        let s = parse_symbol(SIMPLEX4).unwrap();
        let fours = s.edges().filter(|e| e.2 == EdgeLabel::Finite(4)).count();
        assert_eq!(fours, 1);
        assert_eq!(s.neighbours(4).len(), 4);
    }

    #[test]
    fn induced_examples() {
        let a3 = CoxeterSymbol::chain(&[3, 3]);
        let sub = a3.induced_subsymbol(SubsetId::from_indices([0, 2])).unwrap();
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.edges().count(), 0);
        assert_eq!(classify(&sub).type_string(), "A1xA1");

        let s = parse_symbol(SIMPLEX4).unwrap();
        let d4 = s.induced_subsymbol(s.subset_by_names(&["x1", "x2", "x3", "x5"]).unwrap()).unwrap();
        let c = classify(&d4);
        assert_eq!(c.type_string(), "D4");
        // canonical node 1 of D4 is the branch point
        assert_eq!(d4.generators()[c.components[0].nodes[1]], "x5");

        let empty = s.induced_subsymbol(SubsetId::EMPTY).unwrap();
        assert_eq!(empty.rank(), 0);
        assert!(matches!(s.induced_subsymbol(SubsetId::from_indices([7])), Err(SymbolError::IndexOutOfRange(7))));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&CoxeterSymbol::chain(&[3, 3, 3])).type_string(), "A4");
        assert_eq!(classify(&CoxeterSymbol::chain(&[4])).type_string(), "B2");
        assert_eq!(classify(&CoxeterSymbol::chain(&[6])).type_string(), "G2");
        assert_eq!(classify(&CoxeterSymbol::chain(&[3])).type_string(), "A2");
        assert_eq!(classify(&CoxeterSymbol::chain(&[7])).type_string(), "I2(7)");
        let inf = parse_symbol("gens a b; edge a b:inf;").unwrap();
        assert_eq!(classify(&inf).type_string(), "OTHER");
        let opts = ClassifyOptions { infinity_edge_affine: true };
        assert_eq!(classify_with(&inf, opts).type_string(), "~A1");
        // B~3 inside the simplex4 symbol
        let s = parse_symbol(SIMPLEX4).unwrap();
        let sub = s.subset_by_names(&["x1", "x2", "x4", "x5"]).unwrap();
        assert_eq!(classify_subset(&s, sub, opts).type_string(), "~B3");
        assert_eq!(classify(&s).type_string(), "OTHER");
    }

    #[test]
    fn table_conformance() {
        let mut types = Vec::new();
        for n in 1..=8 {
            types.push(FiniteType::A(n));
        }
        for n in 2..=8 {
            types.push(FiniteType::B(n));
        }
        for n in 4..=8 {
            types.push(FiniteType::D(n));
        }
        types.extend([FiniteType::E6, FiniteType::E7, FiniteType::E8, FiniteType::F4, FiniteType::G2, FiniteType::H3, FiniteType::H4]);
        for m in [5, 7, 8, 9, 10, 12, 30] {
            types.push(FiniteType::I2(m));
        }
        for t in types {
            let c = classify(&t.canonical_symbol());
            assert_eq!(c.components.len(), 1, "{t}");
            assert_eq!(c.components[0].class, ComponentClass::Finite(t));
            assert_eq!(c.components[0].nodes, (0..t.rank()).collect::<Vec<_>>(), "{t}: identity map expected");
        }
        let affine = [
            AffineType::A(2),
            AffineType::A(5),
            AffineType::B(3),
            AffineType::B(6),
            AffineType::C(2),
            AffineType::C(5),
            AffineType::D(4),
            AffineType::D(7),
            AffineType::E6,
            AffineType::E7,
            AffineType::E8,
            AffineType::F4,
            AffineType::G2,
        ];
        for t in affine {
            let c = classify(&t.canonical_symbol());
            assert_eq!(c.components.len(), 1);
            assert_eq!(c.components[0].class, ComponentClass::Affine(t), "{t}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(FiniteType::D(4).order(), BigUint::from(192u32));
        assert_eq!(FiniteType::H3.order(), BigUint::from(120u32));
        assert_eq!(group_order(&[FiniteType::A(1), FiniteType::A(1)]), BigUint::from(4u32));
        assert_eq!(FiniteType::E8.order(), BigUint::from(696_729_600u32));
        assert_eq!(FiniteType::A(4).order(), BigUint::from(120u32));
        assert_eq!(FiniteType::B(3).order(), BigUint::from(48u32));
    }

    #[test]
    fn type_parsing() {
        assert_eq!("E6".parse::<FiniteType>().unwrap(), FiniteType::E6);
        assert_eq!("I2(4)".parse::<FiniteType>().unwrap(), FiniteType::B(2));
        assert_eq!("I2(5)".parse::<FiniteType>().unwrap(), FiniteType::I2(5));
        assert_eq!("C3".parse::<FiniteType>().unwrap(), FiniteType::B(3));
        assert!("D3".parse::<FiniteType>().is_err());
        assert!("X9".parse::<FiniteType>().is_err());
    }

    #[test]
    fn poset_examples() {
        let a1 = CoxeterSymbol::chain(&[]);
        assert_eq!(spherical_poset(&a1).len(), 2);

        let s = parse_symbol(SIMPLEX4).unwrap();
        let p = spherical_poset(&s);
        let mut maxes: Vec<String> = p
            .maximal()
            .iter()
            .map(|n| Classification { components: n.components.clone() }.type_string())
            .collect();
        maxes.sort();
        assert_eq!(maxes, vec!["A1xA1xA1xA1", "B3", "B3", "B3", "D4"]);
        assert_eq!(lcm_finite_orders(&s), BigUint::from(192u32));

        let t = CoxeterSymbol::triangle(2, 3, 7);
        let p = spherical_poset(&t);
        assert_eq!(p.len(), 7);
        assert_eq!(lcm_finite_orders(&t), BigUint::from(84u32));
    }

    #[test]
    fn subsets_iterator() {
        let s = SubsetId::from_indices([1, 3, 4]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset_of(s)));
        assert_eq!(SubsetId::EMPTY.subsets().count(), 1);
    }
}
