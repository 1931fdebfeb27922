use std::collections::HashSet;
use std::time::Instant;

use coxmfd::action::{certify, is_orientable, is_torsion_free, is_transitive, regular_action, verify_action, PermutationAction};
use coxmfd::exact::rat;
use coxmfd::search::{search_torsion_free, SearchConfig};
use coxmfd::symbol::CoxeterSymbol;
use coxmfd::torsion::inventory;

/// Signed permutations of {1,2,3} as permutations of the six points ±1, ±2, ±3.
fn signed_perms() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in perms {
        for signs in 0..8u32 {
            let mut v = vec![0u32; 6];
            for i in 0..3 {
                let flip = (signs >> i) & 1;
                // point 2i is +e_i, 2i+1 is −e_i
                v[2 * i] = 2 * p[i] as u32 + flip;
                v[2 * i + 1] = 2 * p[i] as u32 + (1 - flip);
            }
            out.push(v);
        }
    }
    out
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn order(a: &[u32]) -> usize {
    let id: Vec<u32> = (0..a.len() as u32).collect();
    let mut x = a.to_vec();
    let mut k = 1;
    while x != id {
        x = compose(&x, a);
        k += 1;
    }
    k
}

fn generated(gens: &[Vec<u32>]) -> usize {
    let id: Vec<u32> = (0..6).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// A quotient of `Δ(2,4,6)` onto the signed permutation group of order 48 that is
/// injective on every vertex group; its regular action is torsion-free.
pub fn delta246_witness() -> PermutationAction {
    let sym = CoxeterSymbol::triangle(2, 4, 6);
    let els = signed_perms();
    let id: Vec<u32> = (0..6).collect();
    let invs: Vec<&Vec<u32>> = els.iter().filter(|a| **a != id && compose(a, a) == id).collect();
    for a in &invs {
        for b in &invs {
            for c in &invs {
                let ok = order(&compose(a, b)) == 2
                    && order(&compose(b, c)) == 4
                    && order(&compose(a, c)) == 6
                    && generated(&[(*a).clone(), (*b).clone(), (*c).clone()]) == 48;
                if ok {
                    let gens = vec![(*a).clone(), (*b).clone(), (*c).clone()];
                    return regular_action(&els, &gens, sym.generators().to_vec());
                }
            }
        }
    }
    panic!("no (2,4,6) generating triple");
}

#[test]
fn witness_is_a_torsion_free_action() {
    let sym = CoxeterSymbol::triangle(2, 4, 6);
    let w = delta246_witness();
    assert_eq!(w.degree(), 48);
    assert_eq!(verify_action(&w, &sym), Ok(()));
    assert!(is_transitive(&w));
    assert!(is_torsion_free(&w, &inventory(&sym).unwrap()).torsion_free());
    let cert = certify(&sym, &w, None, None);
    assert!(cert.valid, "{:?}", cert.lines());
    assert_eq!(cert.chi, Some(rat(-2, 1)));
    assert_eq!(cert.volume.unwrap().to_string(), "4*pi");
}

#[test]
fn search_finds_degree_48_action() {
    let sym = CoxeterSymbol::triangle(2, 4, 6);
    let start = Instant::now();
    let r = search_torsion_free(&sym, &SearchConfig::new(48)).unwrap();
    assert!(!r.actions.is_empty(), "nodes {} budget {}", r.nodes, r.budget_hit);
    let a = &r.actions[0];
    assert_eq!(verify_action(a, &sym), Ok(()));
    let cert = certify(&sym, a, Some(2), None);
    assert!(cert.valid);
    assert_eq!(cert.chi, Some(rat(-2, 1)));
    assert!(start.elapsed().as_secs() < 600);
    let again = search_torsion_free(&sym, &SearchConfig::new(48)).unwrap();
    assert_eq!(again.actions, r.actions);
}

#[test]
fn orientable_search_and_seeds() {
    let sym = CoxeterSymbol::triangle(2, 4, 6);
    let cfg = SearchConfig { orientable: true, seed: 7, ..SearchConfig::new(48) };
    let r = search_torsion_free(&sym, &cfg).unwrap();
    assert!(!r.actions.is_empty() && r.actions.iter().all(is_orientable));
    assert_eq!(search_torsion_free(&sym, &cfg).unwrap().actions, r.actions);
}
