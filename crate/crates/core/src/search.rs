//! Backtracking search for transitive torsion-free actions of a given degree.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::action::{is_orientable, is_torsion_free, is_transitive, verify_action, PermutationAction};
use crate::symbol::{lcm_of_poset, spherical_poset, CoxeterSymbol};
use crate::torsion::{inventory_from_poset, TorsionError, TorsionInventory};

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("budgets must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Torsion(#[from] TorsionError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub degree: usize,
    pub max_nodes: u64,
    pub max_time: Duration,
    pub orientable: bool,
    /// Zero keeps the natural branch order; anything else shuffles it deterministically.
    pub seed: u64,
    pub max_solutions: usize,
}

impl SearchConfig {
    pub fn new(degree: usize) -> Self {
        SearchConfig {
            degree,
            max_nodes: 10_000_000,
            max_time: Duration::from_secs(600),
            orientable: false,
            seed: 0,
            max_solutions: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub actions: Vec<PermutationAction>,
    /// The whole space was explored.
    pub exhausted: bool,
    pub budget_hit: bool,
    /// The degree is not a multiple of `ℒ(Γ)`.
    pub rejected_by_lcm: bool,
    pub nodes: u64,
    pub lcm: BigUint,
}

pub fn search_torsion_free(sym: &CoxeterSymbol, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let poset = spherical_poset(sym);
    let lcm = lcm_of_poset(&poset);
    if cfg.degree == 0 {
        return Err(SearchError::ZeroDegree);
    }
    if cfg.max_nodes == 0 || cfg.max_time.is_zero() {
        return Err(SearchError::ZeroBudget);
    }
    if !(BigUint::from(cfg.degree) % &lcm).is_zero() {
        return Ok(SearchResult {
            actions: Vec::new(),
            exhausted: true,
            budget_hit: false,
            rejected_by_lcm: true,
            nodes: 0,
            lcm,
        });
    }
    let inv = inventory_from_poset(&poset)?;
    Ok(search_with_inventory(sym, &inv, lcm, cfg))
}

pub fn search_with_inventory(sym: &CoxeterSymbol, inv: &TorsionInventory, lcm: BigUint, cfg: &SearchConfig) -> SearchResult {
    let mut relators = Vec::new();
    for i in 0..sym.rank() {
        for j in i + 1..sym.rank() {
            if let Some(m) = sym.m(i, j) {
                relators.push([i, j].repeat(m as usize));
            }
        }
    }
    let mut words: Vec<Vec<usize>> = inv.entries.iter().map(|e| e.word.clone()).collect();
    words.sort();
    words.dedup();
    let mut s = Searcher {
        sym,
        inv,
        n: cfg.degree,
        table: vec![vec![UNDEF; cfg.degree]; sym.rank()],
        used: 1,
        trail: Vec::new(),
        relators,
        words,
        cfg,
        rng: (cfg.seed != 0).then(|| ChaCha8Rng::seed_from_u64(cfg.seed)),
        nodes: 0,
        start: Instant::now(),
        budget_hit: false,
        found: Vec::new(),
    };
    let stopped = s.dfs();
    SearchResult {
        exhausted: !stopped && !s.budget_hit,
        budget_hit: s.budget_hit,
        rejected_by_lcm: false,
        nodes: s.nodes,
        actions: s.found,
        lcm,
    }
}

struct Searcher<'a> {
    sym: &'a CoxeterSymbol,
    inv: &'a TorsionInventory,
    n: usize,
    table: Vec<Vec<u32>>,
    used: usize,
    trail: Vec<(usize, usize)>,
    relators: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    cfg: &'a SearchConfig,
    rng: Option<ChaCha8Rng>,
    nodes: u64,
    start: Instant,
    budget_hit: bool,
    found: Vec<PermutationAction>,
}

impl Searcher<'_> {
    fn set(&mut self, g: usize, p: usize, q: usize) {
        self.table[g][p] = q as u32;
        self.table[g][q] = p as u32;
        self.trail.push((g, p));
    }

    fn undo(&mut self, mark: usize, used: usize) {
        while self.trail.len() > mark {
            let (g, p) = self.trail.pop().expect("trail");
            let q = self.table[g][p] as usize;
            self.table[g][p] = UNDEF;
            self.table[g][q] = UNDEF;
        }
        self.used = used;
    }

    /// Closes relator cycles that have a single undefined letter; false on contradiction.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for r in 0..self.relators.len() {
                let len = self.relators[r].len();
                for x in 0..self.used {
                    let w = &self.relators[r];
                    let (mut y, mut f) = (x, 0);
                    while f < len && self.table[w[f]][y] != UNDEF {
                        y = self.table[w[f]][y] as usize;
                        f += 1;
                    }
                    if f == len {
                        if y != x {
                            return false;
                        }
                        continue;
                    }
                    let (mut z, mut b) = (x, len);
                    while b > f && self.table[w[b - 1]][z] != UNDEF {
                        z = self.table[w[b - 1]][z] as usize;
                        b -= 1;
                    }
                    if b == f {
                        if y != z {
                            return false;
                        }
                    } else if b == f + 1 {
                        let g = w[f];
                        if y == z || self.table[g][z] != UNDEF {
                            return false;
                        }
                        self.set(g, y, z);
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// False if some torsion word already fixes a point.
    fn torsion_ok(&self) -> bool {
        for w in &self.words {
            'points: for x in 0..self.used {
                let mut y = x;
                for &g in w {
                    let v = self.table[g][y];
                    if v == UNDEF {
                        continue 'points;
                    }
                    y = v as usize;
                }
                if y == x {
                    return false;
                }
            }
        }
        true
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.cfg.max_nodes || (self.nodes.is_multiple_of(1024) && self.start.elapsed() >= self.cfg.max_time) {
            self.budget_hit = true;
        }
        self.budget_hit
    }

    fn complete(&mut self) -> bool {
        let a = PermutationAction::for_symbol(self.sym, self.table.clone());
        let sound = verify_action(&a, self.sym).is_ok() && is_transitive(&a) && is_torsion_free(&a, self.inv).torsion_free();
        if sound && (!self.cfg.orientable || is_orientable(&a)) {
            self.found.push(a);
        }
        self.found.len() >= self.cfg.max_solutions
    }

    /// Returns true when the search should stop.
    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.out_of_budget() {
            return true;
        }
        let next = (0..self.used).find_map(|p| (0..self.table.len()).find(|&g| self.table[g][p] == UNDEF).map(|g| (p, g)));
        let Some((p, g)) = next else {
            return self.used == self.n && self.complete();
        };
        let mut cands: Vec<usize> = (0..self.used).filter(|&q| q != p && self.table[g][q] == UNDEF).collect();
        if let Some(rng) = self.rng.as_mut() {
            cands.shuffle(rng);
        }
        if self.used < self.n {
            cands.push(self.used);
        }
        for q in cands {
            let (mark, used) = (self.trail.len(), self.used);
            if q == self.used {
                self.used += 1;
            }
            self.set(g, p, q);
            if self.propagate() && self.torsion_ok() && self.dfs() {
                return true;
            }
            self.undo(mark, used);
            if self.budget_hit {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::FiniteType;

    #[test]
    fn lcm_gate() {
        let r = search_torsion_free(&CoxeterSymbol::triangle(2, 3, 7), &SearchConfig::new(83)).unwrap();
        assert!(r.rejected_by_lcm && r.exhausted && r.actions.is_empty());
        assert_eq!(r.lcm, BigUint::from(84u32));
    }

    #[test]
    fn finite_group_gives_regular_action() {
        let b3 = FiniteType::B(3).canonical_symbol();
        let r = search_torsion_free(&b3, &SearchConfig::new(48)).unwrap();
        assert_eq!(r.actions.len(), 1);
        assert_eq!(r.actions[0].degree(), 48);
        let r = search_torsion_free(&b3, &SearchConfig { max_solutions: 10, ..SearchConfig::new(48) }).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.actions.len(), 1);
    }

    #[test]
    fn small_degrees_of_a2() {
        let a2 = FiniteType::A(2).canonical_symbol();
        let r = search_torsion_free(&a2, &SearchConfig::new(6)).unwrap();
        assert_eq!(r.actions.len(), 1);
        let r = search_torsion_free(&a2, &SearchConfig::new(12)).unwrap();
        assert!(r.exhausted && r.actions.is_empty());
    }
}
