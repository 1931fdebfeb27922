//! Brute-force prime-order conjugacy classes, by enumerating the whole group.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::TorsionError;
use crate::roots::{element_order, fixed_roots, root_action, GroupElement, RootAction};
use crate::symbol::FiniteType;

/// Largest group the oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct OracleClass {
    pub order: u64,
    pub size: usize,
    pub representative: GroupElement,
    pub fixed_roots: usize,
}

/// Every element of a finite Coxeter group, with its prime-order classes.
pub struct ClassOracle {
    ty: FiniteType,
    action: std::sync::Arc<RootAction>,
    degree: usize,
    elements: Vec<u8>,
    keys: HashMap<u64, u32>,
    class_of: Vec<u32>,
    classes: Vec<OracleClass>,
}

const NONE: u32 = u32::MAX;

fn key_of(base: &[usize], image: impl Fn(usize) -> usize) -> u64 {
    base.iter().enumerate().fold(0u64, |k, (i, &b)| k | (image(b) as u64) << (8 * i))
}

impl ClassOracle {
    pub fn ty(&self) -> FiniteType {
        self.ty
    }

    pub fn group_order(&self) -> usize {
        self.keys.len()
    }

    pub fn classes(&self) -> &[OracleClass] {
        &self.classes
    }

    fn element(&self, i: usize) -> &[u8] {
        &self.elements[i * self.degree..(i + 1) * self.degree]
    }

    /// The prime-order class containing `g`, if `g` has prime order.
    pub fn class_of(&self, g: &GroupElement) -> Option<usize> {
        let k = key_of(&self.action.base, |b| g.apply(b));
        let idx = *self.keys.get(&k)?;
        let c = self.class_of[idx as usize];
        (c != NONE).then_some(c as usize)
    }

    /// Classes of order `p`.
    pub fn classes_of_order(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c].order == p).collect()
    }

    /// Counts of classes by prime order, ascending.
    pub fn class_counts(&self) -> Vec<(u64, usize)> {
        let mut m: std::collections::BTreeMap<u64, usize> = Default::default();
        for c in &self.classes {
            *m.entry(c.order).or_default() += 1;
        }
        m.into_iter().collect()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Enumerates `W(t)` acting on its roots and groups prime-order elements into classes.
pub fn brute_force_classes(t: FiniteType) -> Result<ClassOracle, TorsionError> {
    if t.order() > BigUint::from(ORACLE_LIMIT) {
        return Err(TorsionError::OracleTooLarge(t));
    }
    let action = root_action(t)?;
    let degree = action.degree;
    if degree > 256 || action.rank() > 8 {
        return Err(TorsionError::OracleTooLarge(t));
    }
    let base = action.base.clone();
    let gens: Vec<Vec<u8>> = action.gens.iter().map(|g| g.perm().iter().map(|&x| x as u8).collect()).collect();

    let mut elements: Vec<u8> = (0..degree as u16).map(|x| x as u8).collect();
    let mut keys: HashMap<u64, u32> = HashMap::new();
    keys.insert(key_of(&base, |b| b), 0);
    let mut next = 0usize;
    while next * degree < elements.len() {
        for s in &gens {
            let cur = &elements[next * degree..(next + 1) * degree];
            let k = key_of(&base, |b| s[cur[b] as usize] as usize);
            if keys.contains_key(&k) {
                continue;
            }
            let img: Vec<u8> = cur.iter().map(|&r| s[r as usize]).collect();
            keys.insert(k, (elements.len() / degree) as u32);
            elements.extend_from_slice(&img);
        }
        next += 1;
    }
    let count = elements.len() / degree;

    let to_elem = |slice: &[u8]| GroupElement::from_perm(slice.iter().map(|&x| x as u16).collect());
    let orders: Vec<u64> = (0..count).map(|i| element_order(&to_elem(&elements[i * degree..(i + 1) * degree]))).collect();

    let mut class_of = vec![NONE; count];
    let mut classes = Vec::new();
    for start in 0..count {
        if class_of[start] != NONE || !is_prime(orders[start]) {
            continue;
        }
        let cid = classes.len() as u32;
        class_of[start] = cid;
        let mut queue = vec![start];
        let mut qi = 0;
        while qi < queue.len() {
            let g = &elements[queue[qi] * degree..(queue[qi] + 1) * degree];
            qi += 1;
            for s in &gens {
                let k = key_of(&base, |b| s[g[s[b] as usize] as usize] as usize);
                let j = keys[&k] as usize;
                if class_of[j] == NONE {
                    class_of[j] = cid;
                    queue.push(j);
                }
            }
        }
        let rep = to_elem(&elements[start * degree..(start + 1) * degree]);
        classes.push(OracleClass { order: orders[start], size: queue.len(), fixed_roots: fixed_roots(&rep), representative: rep });
    }
    let oracle = ClassOracle { ty: t, action, degree, elements, keys, class_of, classes };
    debug_assert!(oracle.element(0).iter().enumerate().all(|(i, &x)| i == x as usize));
    Ok(oracle)
}
