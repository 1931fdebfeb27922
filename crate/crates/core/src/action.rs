//! Permutation actions of Coxeter groups: verification, orbits, tensors, blocks and certificates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::euler::{euler_characteristic, lookup_simplex_volume, manifold_invariants, SymbolicVolume};
use crate::exact::Rational;
use crate::gram::{is_cofinite_simplex, is_hyperbolic, CValues};
use crate::symbol::{statements, CoxeterSymbol, SymbolError};
use crate::torsion::{inventory, TorsionInventory};

pub type Word = Vec<usize>;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: point {point} out of range 1..={degree}")]
    PointOutOfRange { line: usize, point: usize, degree: usize },
    #[error("line {line}: point {point} repeated")]
    RepeatedPoint { line: usize, point: usize },
    #[error("no line for generator {0}")]
    MissingGenerator(String),
    #[error("line {line}: generator {name} given twice")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: unknown generator {name}")]
    UnknownGenerator { line: usize, name: String },
    #[error("{gen} is not an involution: {point} -> {image}")]
    NotInvolution { gen: String, point: usize, image: usize },
    #[error("action is for symbol {action}, not {symbol}")]
    SymbolMismatch { action: String, symbol: String },
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("action is not transitive")]
    Intransitive,
    #[error("actions have {0} and {1} generators")]
    GeneratorMismatch(usize, usize),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// Generators acting on `{0, …, N−1}`; the DSL numbers points from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    pub name: String,
    pub symbol_name: Option<String>,
    pub generators: Vec<String>,
    perms: Vec<Vec<u32>>,
}

impl PermutationAction {
    pub fn new(generators: Vec<String>, perms: Vec<Vec<u32>>) -> Self {
        PermutationAction { name: "omega".into(), symbol_name: None, generators, perms }
    }

    pub fn for_symbol(sym: &CoxeterSymbol, perms: Vec<Vec<u32>>) -> Self {
        let mut a = PermutationAction::new(sym.generators().to_vec(), perms);
        a.symbol_name = sym.name().map(str::to_string);
        a
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    pub fn rank(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, g: usize) -> &[u32] {
        &self.perms[g]
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }

    pub fn image(&self, g: usize, p: usize) -> usize {
        self.perms[g][p] as usize
    }

    /// Image of `p` under the word, leftmost letter first.
    pub fn apply_word(&self, word: &[usize], p: usize) -> usize {
        word.iter().fold(p, |q, &g| self.perms[g][q] as usize)
    }

    pub fn word_permutation(&self, word: &[usize]) -> Vec<u32> {
        (0..self.degree()).map(|p| self.apply_word(word, p) as u32).collect()
    }

    /// The same permutation, composed from the right-hand end.
    pub fn word_permutation_composed(&self, word: &[usize]) -> Vec<u32> {
        let mut acc: Vec<u32> = (0..self.degree() as u32).collect();
        for &g in word.iter().rev() {
            // acc := g then acc
            acc = self.perms[g].iter().map(|&q| acc[q as usize]).collect();
        }
        acc
    }

    /// Writes the action DSL.
    pub fn emit(&self) -> String {
        let mut s = format!(
            "action {} on {} for {};\n",
            self.name,
            self.degree(),
            self.symbol_name.as_deref().unwrap_or("gamma")
        );
        for (g, name) in self.generators.iter().enumerate() {
            let cycles = cycles(&self.perms[g]);
            if cycles.is_empty() {
                let _ = writeln!(s, "{name}: id;");
            } else {
                let body: String = cycles
                    .iter()
                    .map(|c| format!("({})", c.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" ")))
                    .collect();
                let _ = writeln!(s, "{name}: {body};");
            }
        }
        s
    }
}

/// Non-trivial cycles, each starting at its least point.
pub fn cycles(perm: &[u32]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut c = vec![start];
        seen[start] = true;
        let mut p = perm[start] as usize;
        while p != start {
            seen[p] = true;
            c.push(p);
            p = perm[p] as usize;
        }
        out.push(c);
    }
    out
}

fn parse_cycles(body: &str, degree: usize, line: usize) -> Result<Vec<u32>, ActionError> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let body = body.trim();
    if body == "id" {
        return Ok(perm);
    }
    let mut used = vec![false; degree];
    let mut rest = body;
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| ActionError::Syntax { line, msg: format!("expected a cycle at `{rest}`") })?;
        let (cyc, tail) = inner;
        let mut pts = Vec::new();
        for tok in cyc.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let p: usize = tok.parse().map_err(|_| ActionError::Syntax { line, msg: format!("bad point `{tok}`") })?;
            if p == 0 || p > degree {
                return Err(ActionError::PointOutOfRange { line, point: p, degree });
            }
            if used[p - 1] {
                return Err(ActionError::RepeatedPoint { line, point: p });
            }
            used[p - 1] = true;
            pts.push(p - 1);
        }
        for k in 0..pts.len() {
            perm[pts[k]] = pts[(k + 1) % pts.len()] as u32;
        }
        rest = tail.trim_start();
    }
    Ok(perm)
}

/// Reads the action DSL against `sym`. Every generator must have a line; generators must be involutions.
pub fn parse_action(text: &str, sym: &CoxeterSymbol) -> Result<PermutationAction, ActionError> {
    let stmts = statements(text).map_err(|e| match e {
        SymbolError::Syntax { line, msg } => ActionError::Syntax { line, msg },
        other => ActionError::Symbol(other),
    })?;
    let mut it = stmts.into_iter();
    let (line, header) = it.next().ok_or(ActionError::Syntax { line: 1, msg: "empty action".into() })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (name, degree, for_sym) = match toks.as_slice() {
        ["action", name, "on", n, "for", s] => {
            let n: usize = n.parse().map_err(|_| ActionError::Syntax { line, msg: format!("bad degree `{n}`") })?;
            (name.to_string(), n, s.to_string())
        }
        _ => return Err(ActionError::Syntax { line, msg: "expected `action <name> on <N> for <symbol>`".into() }),
    };
    if degree > MAX_DEGREE {
        return Err(ActionError::DegreeTooLarge(degree));
    }
    if let Some(sname) = sym.name() {
        if sname != for_sym {
            return Err(ActionError::SymbolMismatch { action: for_sym, symbol: sname.to_string() });
        }
    }
    let mut perms: Vec<Option<Vec<u32>>> = vec![None; sym.rank()];
    for (line, stmt) in it {
        let (g, body) =
            stmt.split_once(':').ok_or_else(|| ActionError::Syntax { line, msg: "expected `<gen>: <cycles>`".into() })?;
        let g = g.trim();
        let idx = sym.generator_index(g).ok_or_else(|| ActionError::UnknownGenerator { line, name: g.to_string() })?;
        if perms[idx].is_some() {
            return Err(ActionError::DuplicateGenerator { line, name: g.to_string() });
        }
        let perm = parse_cycles(body, degree, line)?;
        if let Some(p) = (0..degree).find(|&p| perm[perm[p] as usize] as usize != p) {
            return Err(ActionError::NotInvolution { gen: g.to_string(), point: p + 1, image: perm[p] as usize + 1 });
        }
        perms[idx] = Some(perm);
    }
    let perms = perms
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| ActionError::MissingGenerator(sym.generators()[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PermutationAction { name, symbol_name: Some(for_sym), generators: sym.generators().to_vec(), perms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotInvolution { gen: usize, point: usize },
    Relator { a: usize, b: usize, m: u32, point: usize },
    GeneratorCount { action: usize, symbol: usize },
}

impl Violation {
    /// One-based description for reports.
    pub fn describe(&self, sym: &CoxeterSymbol) -> String {
        let n = |i: usize| sym.generators().get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        match self {
            Violation::NotInvolution { gen, point } => format!("{}^2 moves point {}", n(*gen), point + 1),
            Violation::Relator { a, b, m, point } => format!("({}{})^{m} moves point {}", n(*a), n(*b), point + 1),
            Violation::GeneratorCount { action, symbol } => format!("{action} generators for {symbol}"),
        }
    }
}

/// Checks every generator is an involution and each finite relator `(s_a s_b)^m` acts trivially.
pub fn verify_action(a: &PermutationAction, sym: &CoxeterSymbol) -> Result<(), Violation> {
    if a.rank() != sym.rank() {
        return Err(Violation::GeneratorCount { action: a.rank(), symbol: sym.rank() });
    }
    for g in 0..a.rank() {
        let p = a.perm(g);
        if let Some(pt) = (0..a.degree()).find(|&x| p[p[x] as usize] as usize != x) {
            return Err(Violation::NotInvolution { gen: g, point: pt });
        }
    }
    for i in 0..sym.rank() {
        for j in i + 1..sym.rank() {
            let Some(m) = sym.m(i, j) else { continue };
            let (pi, pj) = (a.perm(i), a.perm(j));
            for x in 0..a.degree() {
                let mut y = x;
                for _ in 0..m {
                    y = pj[pi[y] as usize] as usize;
                }
                if y != x {
                    return Err(Violation::Relator { a: i, b: j, m, point: x });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
}

impl OrbitDecomposition {
    pub fn is_transitive(&self) -> bool {
        self.orbits.len() == 1
    }
}

pub fn orbits(a: &PermutationAction) -> OrbitDecomposition {
    let n = a.degree();
    let mut orbit_of = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        orbit_of[s] = id;
        let mut orb = vec![s];
        let mut k = 0;
        while k < orb.len() {
            let p = orb[k];
            k += 1;
            for g in 0..a.rank() {
                let q = a.image(g, p);
                if orbit_of[q] == usize::MAX {
                    orbit_of[q] = id;
                    orb.push(q);
                }
            }
        }
        orb.sort_unstable();
        out.push(orb);
    }
    OrbitDecomposition { orbits: out, orbit_of }
}

pub fn is_transitive(a: &PermutationAction) -> bool {
    a.degree() > 0 && orbits(a).is_transitive()
}

/// The action restricted to the orbit of `seed`, numbered by breadth-first discovery.
pub fn orbit_action(a: &PermutationAction, seed: usize) -> PermutationAction {
    let mut num: HashMap<usize, u32> = HashMap::from([(seed, 0)]);
    let mut order = vec![seed];
    let mut k = 0;
    while k < order.len() {
        let p = order[k];
        k += 1;
        for g in 0..a.rank() {
            let q = a.image(g, p);
            if let std::collections::hash_map::Entry::Vacant(e) = num.entry(q) {
                e.insert(order.len() as u32);
                order.push(q);
            }
        }
    }
    let perms = (0..a.rank()).map(|g| order.iter().map(|&p| num[&a.image(g, p)]).collect()).collect();
    PermutationAction { perms, ..a.clone() }
}

fn check_same_generators(a1: &PermutationAction, a2: &PermutationAction) -> Result<(), ActionError> {
    if a1.rank() != a2.rank() {
        return Err(ActionError::GeneratorMismatch(a1.rank(), a2.rank()));
    }
    Ok(())
}

/// The orbit of `seed` (default `(0, 0)`) in the diagonal action on `Ω_1 × Ω_2`.
pub fn tensor(a1: &PermutationAction, a2: &PermutationAction, seed: Option<(usize, usize)>) -> Result<PermutationAction, ActionError> {
    check_same_generators(a1, a2)?;
    let (s1, s2) = seed.unwrap_or((0, 0));
    let n2 = a2.degree();
    let key = |x: usize, y: usize| x * n2 + y;
    let mut num: HashMap<usize, u32> = HashMap::from([(key(s1, s2), 0)]);
    let mut order = vec![(s1, s2)];
    let mut perms: Vec<Vec<u32>> = vec![Vec::new(); a1.rank()];
    let mut k = 0;
    while k < order.len() {
        let (x, y) = order[k];
        k += 1;
        for (g, perm) in perms.iter_mut().enumerate() {
            let (u, v) = (a1.image(g, x), a2.image(g, y));
            let next = order.len() as u32;
            let id = *num.entry(key(u, v)).or_insert_with(|| {
                order.push((u, v));
                next
            });
            perm.push(id);
        }
    }
    let name = format!("{}x{}", a1.name, a2.name);
    Ok(PermutationAction { name, symbol_name: a1.symbol_name.clone(), generators: a1.generators.clone(), perms })
}

/// One tensor action per orbit of `Ω_1 × Ω_2`.
pub fn tensor_all_orbits(a1: &PermutationAction, a2: &PermutationAction) -> Result<Vec<PermutationAction>, ActionError> {
    check_same_generators(a1, a2)?;
    let (n1, n2) = (a1.degree(), a2.degree());
    let mut seen = vec![false; n1 * n2];
    let mut out = Vec::new();
    for x in 0..n1 {
        for y in 0..n2 {
            if seen[x * n2 + y] {
                continue;
            }
            let mut stack = vec![(x, y)];
            seen[x * n2 + y] = true;
            while let Some((u, v)) = stack.pop() {
                for g in 0..a1.rank() {
                    let (s, t) = (a1.image(g, u), a2.image(g, v));
                    if !seen[s * n2 + t] {
                        seen[s * n2 + t] = true;
                        stack.push((s, t));
                    }
                }
            }
            out.push(tensor(a1, a2, Some((x, y)))?);
        }
    }
    Ok(out)
}

/// A point fixed by the word, if any.
pub fn fixed_point(a: &PermutationAction, word: &[usize]) -> Option<usize> {
    (0..a.degree()).find(|&p| a.apply_word(word, p) == p)
}

/// True iff the word moves every point.
pub fn avoids(a: &PermutationAction, word: &[usize]) -> bool {
    fixed_point(a, word).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub order: u64,
    pub word: Word,
    pub source: String,
    pub fixed_point: Option<usize>,
    /// For tensor factors: the factors the word acts on without fixed points.
    pub avoided_by: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub verdicts: Vec<ClassVerdict>,
}

impl TorsionReport {
    pub fn torsion_free(&self) -> bool {
        self.verdicts.iter().all(|v| v.fixed_point.is_none())
    }

    pub fn first_failure(&self) -> Option<&ClassVerdict> {
        self.verdicts.iter().find(|v| v.fixed_point.is_some())
    }
}

pub fn is_torsion_free(a: &PermutationAction, inv: &TorsionInventory) -> TorsionReport {
    let verdicts = inv
        .entries
        .iter()
        .map(|e| ClassVerdict {
            order: e.order,
            word: e.word.clone(),
            source: e.source.clone(),
            fixed_point: fixed_point(a, &e.word),
            avoided_by: Vec::new(),
        })
        .collect();
    TorsionReport { verdicts }
}

/// Torsion check of a tensor product, recording which factors avoid each class.
pub fn is_torsion_free_factors(factors: &[&PermutationAction], product: &PermutationAction, inv: &TorsionInventory) -> TorsionReport {
    let mut r = is_torsion_free(product, inv);
    for v in &mut r.verdicts {
        v.avoided_by = factors.iter().enumerate().filter(|(_, f)| avoids(f, &v.word)).map(|(i, _)| i).collect();
    }
    r
}

/// Orientability of each orbit: no word of odd length fixes a point.
pub fn orientability(a: &PermutationAction) -> Vec<bool> {
    let n = a.degree();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut out = Vec::new();
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut ok = true;
        let mut queue = VecDeque::from([s]);
        while let Some(p) = queue.pop_front() {
            let c = colour[p].expect("coloured");
            for g in 0..a.rank() {
                let q = a.image(g, p);
                match colour[q] {
                    None => {
                        colour[q] = Some(!c);
                        queue.push_back(q);
                    }
                    Some(d) if d == c => ok = false,
                    _ => {}
                }
            }
        }
        out.push(ok);
    }
    out
}

pub fn is_orientable(a: &PermutationAction) -> bool {
    a.degree() > 0 && orientability(a).iter().all(|&b| b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
    /// The induced action on blocks.
    pub induced: PermutationAction,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn is_proper(&self) -> bool {
        let mu = self.block_size();
        mu > 1 && mu < self.block_of.len()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The finest block system with `p` and `q` in one block.
pub fn minimal_block(a: &PermutationAction, p: usize, q: usize) -> BlockSystem {
    let n = a.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
    if rp != rq {
        parent[rq] = rp;
        queue.push_back((p, q));
    }
    while let Some((x, y)) = queue.pop_front() {
        for g in 0..a.rank() {
            let (u, v) = (a.image(g, x), a.image(g, y));
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[rv] = ru;
                queue.push_back((u, v));
            }
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut block_of = vec![0; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (x, slot) in block_of.iter_mut().enumerate() {
        let r = find(&mut parent, x);
        let id = *ids.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[id].push(x);
        *slot = id;
    }
    let perms = (0..a.rank()).map(|g| blocks.iter().map(|b| block_of[a.image(g, b[0])] as u32).collect()).collect();
    let induced = PermutationAction {
        name: format!("{}/blocks", a.name),
        symbol_name: a.symbol_name.clone(),
        generators: a.generators.clone(),
        perms,
    };
    BlockSystem { blocks, block_of, induced }
}

/// Minimal block systems containing `{0, x}`, deduplicated, proper ones only.
pub fn block_systems(a: &PermutationAction) -> Result<Vec<BlockSystem>, ActionError> {
    if !is_transitive(a) {
        return Err(ActionError::Intransitive);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for x in 1..a.degree() {
        let b = minimal_block(a, 0, x);
        if b.is_proper() && seen.insert(b.block_of.clone()) {
            out.push(b);
        }
    }
    out.sort_by_key(|b| (b.block_size(), b.block_of.clone()));
    Ok(out)
}

pub fn is_primitive(a: &PermutationAction) -> Result<bool, ActionError> {
    Ok(block_systems(a)?.is_empty())
}

/// Closure of the permutations of `words` on the action; `None` past `cap` elements.
pub fn subgroup_closure(a: &PermutationAction, words: &[Word], cap: usize) -> Option<Vec<Vec<u32>>> {
    let gens: Vec<Vec<u32>> = words.iter().map(|w| a.word_permutation(w)).collect();
    let id: Vec<u32> = (0..a.degree() as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        let x = out[k].clone();
        k += 1;
        for g in &gens {
            let y: Vec<u32> = x.iter().map(|&p| g[p as usize]).collect();
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return None;
                }
                out.push(y);
            }
        }
    }
    Some(out)
}

/// Outcome of the divisibility checks for `Ω_1 ⊗ Ω_2` and a finite subgroup `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub omega1: usize,
    pub omega2: usize,
    pub f_order: Option<usize>,
    /// A point of `Ω_1` fixed by `F`.
    pub f_fixed_point: Option<usize>,
    pub f_acts_freely: bool,
    pub preconditions: bool,
    /// `|Ω_1||F|` when the preconditions hold, else `lcm(|Ω_1|, |Ω_2|)`.
    pub required: usize,
    pub lcm: usize,
    pub orbit_sizes: Vec<usize>,
    pub holds: bool,
    pub notes: Vec<String>,
}

impl DivisibilityReport {
    pub fn certificate(&self) -> String {
        if self.preconditions {
            format!("{} = {}*{} divides every orbit", self.required, self.omega1, self.f_order.unwrap_or(1))
        } else {
            format!("lcm({},{}) = {} divides every orbit", self.omega1, self.omega2, self.lcm)
        }
    }
}

const CLOSURE_CAP: usize = 1_000_000;

/// Checks `lcm |Ω_i|` and, when `F` fixes a point of `Ω_1` and acts freely on `Ω_2`,
/// that `|Ω_1||F|` divides every tensor orbit.
pub fn check_divisibility(
    a1: &PermutationAction,
    a2: &PermutationAction,
    f: &[Word],
) -> Result<DivisibilityReport, ActionError> {
    check_same_generators(a1, a2)?;
    let (n1, n2) = (a1.degree(), a2.degree());
    let mut notes = Vec::new();
    if !is_transitive(a1) || !is_transitive(a2) {
        notes.push("a factor is intransitive".to_string());
    }
    let closure = subgroup_closure(a2, f, CLOSURE_CAP);
    let f_order = closure.as_ref().map(Vec::len);
    let f_acts_freely = closure.as_ref().is_some_and(|c| {
        c.iter().all(|g| g.iter().enumerate().all(|(p, &q)| q as usize != p) || g.iter().enumerate().all(|(p, &q)| q as usize == p))
    });
    if closure.is_none() {
        notes.push(format!("subgroup closure exceeded {CLOSURE_CAP} elements"));
    } else if !f_acts_freely {
        notes.push("a non-identity element of F fixes a point of the second factor".into());
    }
    let f_fixed_point = (0..n1).find(|&p| f.iter().all(|w| a1.apply_word(w, p) == p));
    if f_fixed_point.is_none() {
        notes.push("F fixes no point of the first factor".into());
    }
    let preconditions = notes.is_empty();
    let lcm = n1.lcm(&n2);
    let required = if preconditions { n1 * f_order.unwrap_or(1) } else { lcm };
    let orbit_sizes: Vec<usize> = tensor_all_orbits(a1, a2)?.iter().map(PermutationAction::degree).collect();
    let holds = orbit_sizes.iter().all(|s| s % required == 0 && s % lcm == 0);
    Ok(DivisibilityReport { omega1: n1, omega2: n2, f_order, f_fixed_point, f_acts_freely, preconditions, required, lcm, orbit_sizes, holds, notes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldCertificate {
    pub symbol: CoxeterSymbol,
    pub dim: usize,
    pub index: usize,
    pub checks: Vec<Check>,
    pub orientable: bool,
    pub chi: Option<Rational>,
    pub volume: Option<SymbolicVolume>,
    pub valid: bool,
}

impl ManifoldCertificate {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass && c.name != "orientable").collect()
    }

    /// Stable `key=value` lines.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("valid={}", self.valid),
            format!("dim={}", self.dim),
            format!("index={}", self.index),
            format!("chi={}", self.chi.as_ref().map_or("unknown".into(), |c| c.to_string())),
            format!("volume={}", self.volume.as_ref().map_or("unknown".into(), |v| v.to_string())),
            format!("orientable={}", self.orientable),
        ];
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "fail" };
            match &c.witness {
                Some(w) if !c.pass => out.push(format!("check.{}={verdict}:{w}", c.name)),
                _ => out.push(format!("check.{}={verdict}", c.name)),
            }
        }
        out
    }
}

fn check(name: &'static str, pass: bool, witness: Option<String>) -> Check {
    Check { name, pass, witness }
}

/// Runs every geometric and freeness check and computes the manifold invariants.
pub fn certify(
    sym: &CoxeterSymbol,
    a: &PermutationAction,
    dim: Option<usize>,
    simplex_volume: Option<&SymbolicVolume>,
) -> ManifoldCertificate {
    let dim = dim.unwrap_or(sym.rank().saturating_sub(1));
    let mut checks = Vec::new();
    let hyp = is_hyperbolic(sym, &CValues::new(), dim);
    checks.push(match hyp {
        Ok(true) => check("hyperbolic", true, None),
        Ok(false) => check("hyperbolic", false, Some(format!("signature is not (1,{dim})"))),
        Err(e) => check("hyperbolic", false, Some(e.to_string())),
    });
    let cof = is_cofinite_simplex(sym, Some(dim));
    checks.push(check("cofinite", cof.is_cofinite(), cof.reason.clone()));
    let relators = verify_action(a, sym);
    checks.push(check("relators", relators.is_ok(), relators.as_ref().err().map(|v| v.describe(sym))));
    let orbs = orbits(a);
    checks.push(check(
        "transitive",
        a.degree() > 0 && orbs.is_transitive(),
        (!orbs.is_transitive()).then(|| format!("{} orbits", orbs.orbits.len())),
    ));
    match inventory(sym) {
        Ok(inv) if relators.is_ok() => {
            let r = is_torsion_free(a, &inv);
            let w = r.first_failure().map(|v| {
                let word: Vec<&str> = v.word.iter().map(|&g| sym.generators()[g].as_str()).collect();
                format!("order {} word {} fixes point {}", v.order, word.join(" "), v.fixed_point.unwrap_or(0) + 1)
            });
            checks.push(check("torsion_free", r.torsion_free(), w));
        }
        Ok(_) => checks.push(check("torsion_free", false, Some("relators fail".into()))),
        Err(e) => checks.push(check("torsion_free", false, Some(e.to_string()))),
    }
    let orientable = relators.is_ok() && is_orientable(a);
    checks.push(check("orientable", orientable, (!orientable).then(|| "an odd word fixes a point".to_string())));
    let valid = checks.iter().all(|c| c.pass || c.name == "orientable");
    let index = BigUint::from(a.degree());
    let chi_gamma = euler_characteristic(sym);
    let table_volume;
    let sv = match simplex_volume {
        Some(v) => Some(v),
        None if dim % 2 == 1 => {
            table_volume = lookup_simplex_volume(sym);
            table_volume.as_ref()
        }
        None => None,
    };
    let (chi, volume) = match manifold_invariants(&chi_gamma, &index, dim, sv) {
        Ok(m) => (Some(m.euler), Some(m.volume)),
        Err(_) if dim % 2 == 1 => (Some(Rational::from_integer(0.into())), None),
        Err(_) => (Some(&chi_gamma * Rational::from_integer(index.into())), None),
    };
    ManifoldCertificate { symbol: sym.clone(), dim, index: a.degree(), checks, orientable, chi, volume, valid }
}

/// Right-regular action of a finite group given by its elements and generator images.
pub fn regular_action(elements: &[Vec<u32>], gens: &[Vec<u32>], names: Vec<String>) -> PermutationAction {
    let index: HashMap<&Vec<u32>, u32> = elements.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
    let perms = gens
        .iter()
        .map(|g| {
            elements
                .iter()
                .map(|e| {
                    let eg: Vec<u32> = e.iter().map(|&p| g[p as usize]).collect();
                    index[&eg]
                })
                .collect()
        })
        .collect();
    PermutationAction::new(names, perms)
}
