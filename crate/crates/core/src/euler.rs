//! Euler characteristics of Coxeter groups and volumes of the manifolds covering them.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::Rational;
use crate::symbol::{parse_symbol, spherical_poset, CoxeterSymbol, SphericalPoset, SubsetId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error("gauss-bonnet constant needs an even dimension >= 2, got {0}")]
    OddDimension(usize),
    #[error("odd dimension {0} needs a simplex volume")]
    MissingVolume(usize),
    #[error("cannot add volumes with different constants")]
    ConstantMismatch,
    #[error("bad volume: {0}")]
    BadVolume(String),
}

/// The transcendental factor of a volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VolumeConstant {
    One,
    PiPow(u32),
    Zeta3,
}

impl VolumeConstant {
    pub fn value(self) -> f64 {
        match self {
            VolumeConstant::One => 1.0,
            VolumeConstant::PiPow(k) => std::f64::consts::PI.powi(k as i32),
            VolumeConstant::Zeta3 => 1.202_056_903_159_594_2,
        }
    }
}

impl fmt::Display for VolumeConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VolumeConstant::One => write!(f, "1"),
            VolumeConstant::PiPow(1) => write!(f, "pi"),
            VolumeConstant::PiPow(k) => write!(f, "pi^{k}"),
            VolumeConstant::Zeta3 => write!(f, "zeta(3)"),
        }
    }
}

impl FromStr for VolumeConstant {
    type Err = EulerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "1" | "one" => return Ok(VolumeConstant::One),
            "pi" => return Ok(VolumeConstant::PiPow(1)),
            "zeta(3)" | "zeta3" => return Ok(VolumeConstant::Zeta3),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("pi^") {
            if let Ok(k) = k.parse::<u32>() {
                return Ok(if k == 0 { VolumeConstant::One } else { VolumeConstant::PiPow(k) });
            }
        }
        Err(EulerError::BadVolume(s.to_string()))
    }
}

/// `coefficient × constant`, with a floating approximation alongside.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicVolume {
    pub coefficient: Rational,
    pub constant: VolumeConstant,
    pub approx: f64,
}

impl SymbolicVolume {
    pub fn new(coefficient: Rational, constant: VolumeConstant) -> Self {
        let approx = rational_to_f64(&coefficient) * constant.value();
        SymbolicVolume { coefficient, constant, approx }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        SymbolicVolume::new(&self.coefficient * k, self.constant)
    }

    pub fn parse(coeff: &str, constant: &str) -> Result<Self, EulerError> {
        let c = parse_rational(coeff).ok_or_else(|| EulerError::BadVolume(coeff.to_string()))?;
        Ok(SymbolicVolume::new(c, constant.parse()?))
    }
}

impl fmt::Display for SymbolicVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constant {
            VolumeConstant::One => write!(f, "{}", self.coefficient),
            c if self.coefficient.is_zero() => write!(f, "0*{c}"),
            c => write!(f, "{}*{c}", self.coefficient),
        }
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge terms: shift both down to a common scale
            let shift = r.denom().bits().max(r.numer().magnitude().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

fn recip(order: &BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(order.clone()))
}

/// Signed counts of chains in `poset` that start at each node and end at a node containing `top`.
///
/// `f(σ) = [top ⊆ σ] − Σ_{τ > σ} f(τ)`.
fn chain_counts(poset: &SphericalPoset, top: SubsetId) -> Vec<BigInt> {
    let nodes = poset.nodes();
    let mut f = vec![BigInt::zero(); nodes.len()];
    // nodes are sorted by size, so supersets come later
    for i in (0..nodes.len()).rev() {
        let s = nodes[i].subset;
        let mut v = if top.is_subset_of(s) { BigInt::one() } else { BigInt::zero() };
        for j in i + 1..nodes.len() {
            let t = nodes[j].subset;
            if t != s && s.is_subset_of(t) {
                v -= &f[j];
            }
        }
        f[i] = v;
    }
    f
}

fn weighted(poset: &SphericalPoset, f: &[BigInt]) -> Rational {
    poset.nodes().iter().zip(f).filter(|(_, c)| !c.is_zero()).fold(Rational::zero(), |acc, (n, c)| {
        acc + Rational::from_integer(c.clone()) * recip(&n.order)
    })
}

/// `χ(Γ) = Σ (−1)^k / |σ_0|` over all chains `σ_0 < ⋯ < σ_k` of finite standard subgroups.
pub fn euler_characteristic(sym: &CoxeterSymbol) -> Rational {
    euler_of_poset(&spherical_poset(sym))
}

pub fn euler_of_poset(poset: &SphericalPoset) -> Rational {
    weighted(poset, &chain_counts(poset, SubsetId::EMPTY))
}

/// Explicit enumeration of every chain. Exponential; for cross-checks only.
pub fn euler_by_chains(poset: &SphericalPoset) -> Rational {
    fn walk(poset: &SphericalPoset, from: usize, sign: i64, weight: &Rational, acc: &mut Rational) {
        *acc += weight * Rational::from_integer(sign.into());
        let s = poset.nodes()[from].subset;
        for (j, n) in poset.nodes().iter().enumerate() {
            if n.subset != s && s.is_subset_of(n.subset) {
                walk(poset, j, -sign, weight, acc);
            }
        }
    }
    let mut acc = Rational::zero();
    for (i, n) in poset.nodes().iter().enumerate() {
        walk(poset, i, 1, &recip(&n.order), &mut acc);
    }
    acc
}

/// Number of chains in the poset, capped at `cap`.
pub fn chain_count(poset: &SphericalPoset, cap: u64) -> u64 {
    let nodes = poset.nodes();
    let mut up = vec![0u64; nodes.len()];
    for i in (0..nodes.len()).rev() {
        let s = nodes[i].subset;
        let mut v = 1u64;
        for j in i + 1..nodes.len() {
            if nodes[j].subset != s && s.is_subset_of(nodes[j].subset) {
                v = v.saturating_add(up[j]);
            }
        }
        up[i] = v.min(cap);
    }
    up.iter().fold(0u64, |a, &b| a.saturating_add(b)).min(cap)
}

/// `Σ_Ψ` computed directly and by inclusion-exclusion over the subsymbols of `Ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaPsi {
    pub direct: Rational,
    pub inclusion_exclusion: Rational,
}

impl SigmaPsi {
    pub fn agree(&self) -> bool {
        self.direct == self.inclusion_exclusion
    }
}

/// Chain sum restricted to chains whose largest member contains `psi`.
pub fn sigma_psi_direct(poset: &SphericalPoset, psi: SubsetId) -> Rational {
    weighted(poset, &chain_counts(poset, psi))
}

/// `Σ_{Δ ⊆ Ψ} (−1)^{v(Δ)} χ(Γ∖Δ)`.
pub fn sigma_psi_inclusion_exclusion(poset: &SphericalPoset, psi: SubsetId) -> Rational {
    let full = SubsetId::full(poset.rank());
    psi.subsets().fold(Rational::zero(), |acc, delta| {
        let chi = euler_of_poset(&poset.restrict(full.difference(delta)));
        if delta.len() % 2 == 0 {
            acc + chi
        } else {
            acc - chi
        }
    })
}

pub fn sigma_psi(sym: &CoxeterSymbol, psi: SubsetId) -> SigmaPsi {
    let poset = spherical_poset(sym);
    SigmaPsi { direct: sigma_psi_direct(&poset, psi), inclusion_exclusion: sigma_psi_inclusion_exclusion(&poset, psi) }
}

/// `Σ_{Δ ∈ 𝒫(Γ)} (−1)^{v(Δ)} χ(Γ∖Δ)`, zero for infinite groups.
pub fn serre_sum(sym: &CoxeterSymbol) -> Rational {
    let poset = spherical_poset(sym);
    sigma_psi_inclusion_exclusion(&poset, sym.full_subset())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `κ_n = 2^n (n!)^{-1} (−π)^{n/2} (n/2)!`.
pub fn gauss_bonnet_constant(n: usize) -> Result<SymbolicVolume, EulerError> {
    if n < 2 || n % 2 == 1 {
        return Err(EulerError::OddDimension(n));
    }
    let h = n / 2;
    let mut c = Rational::new(BigInt::from(2).pow(n as u32) * factorial(h), factorial(n));
    if h % 2 == 1 {
        c = -c;
    }
    Ok(SymbolicVolume::new(c, VolumeConstant::PiPow(h as u32)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldInvariants {
    pub euler: Rational,
    pub volume: SymbolicVolume,
}

/// Euler characteristic and volume of the manifold covering an index-`index` torsion-free subgroup.
pub fn manifold_invariants(
    chi: &Rational,
    index: &BigUint,
    n: usize,
    simplex_volume: Option<&SymbolicVolume>,
) -> Result<ManifoldInvariants, EulerError> {
    let m = Rational::from_integer(BigInt::from(index.clone()));
    if n.is_multiple_of(2) {
        let euler = chi * &m;
        let volume = gauss_bonnet_constant(n)?.scale(&euler);
        Ok(ManifoldInvariants { euler, volume })
    } else {
        let v = simplex_volume.ok_or(EulerError::MissingVolume(n))?;
        Ok(ManifoldInvariants { euler: Rational::zero(), volume: v.scale(&m) })
    }
}

const SIMPLEX_VOLUMES: &str = include_str!("../data/simplex_volumes.txt");

/// Known covolumes of simplex reflection groups, keyed by symbol.
pub fn simplex_volume_table() -> Vec<(CoxeterSymbol, SymbolicVolume)> {
    let mut out = Vec::new();
    for block in SIMPLEX_VOLUMES.split("\n\n") {
        let mut symbol = String::new();
        let mut volume = None;
        for line in block.lines() {
            let line = line.trim();
            if let Some(v) = line.strip_prefix("volume ") {
                let v = v.trim_end_matches(';');
                let (c, k) = v.split_once(' ').expect("volume line has coefficient and constant");
                volume = Some(SymbolicVolume::parse(c, k).expect("volume table entry"));
            } else if !line.starts_with('#') {
                symbol.push_str(line);
                symbol.push('\n');
            }
        }
        if let Some(v) = volume {
            out.push((parse_symbol(&symbol).expect("volume table symbol"), v));
        }
    }
    out
}

pub fn lookup_simplex_volume(sym: &CoxeterSymbol) -> Option<SymbolicVolume> {
    simplex_volume_table().into_iter().find(|(s, _)| s.is_isomorphic(sym)).map(|(_, v)| v)
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
