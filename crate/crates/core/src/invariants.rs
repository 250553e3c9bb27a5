//! Equivalence invariants: characteristics, solution-support counts, Clifford
//! counts, central solutions, pair counts and commutative decompositions.
//!
//! A "solution count" is the number of degrees g whose component holds some
//! x with x^{2^k} = ±I, positive scalars absorbed.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{IdentityKind, Presentation, Sign};
use crate::catalog::{tensor_of, Factor};
use crate::error::{Error, Result};
use crate::group::{factorize, FiniteAbelianGroup, GroupElement};

/// Signs are exponents of 2: tuple (k, ℓ) stands for orders (2^k, 2^ℓ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DTuple {
    pub k: u32,
    pub l: u32,
    pub mu: Sign,
    pub nu: Sign,
}

impl DTuple {
    pub fn minus_count(&self) -> usize {
        usize::from(self.mu.is_minus()) + usize::from(self.nu.is_minus())
    }

    /// (1,1;-,+) and (1,1;+,-) are equivalent to (1,1;+,+).
    pub fn counts_as_even(&self) -> bool {
        self.minus_count() == 0 || (self.k == 1 && self.l == 1 && self.minus_count() == 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Characteristic {
    pub d_tuples: Vec<DTuple>,
    pub c_tuples: Vec<(u32, Sign)>,
    pub e_marker: Option<(u32, Sign)>,
    pub h_marker: bool,
    pub central_complex: bool,
    pub odd_part: FiniteAbelianGroup,
}

impl Characteristic {
    pub fn parity(&self) -> Parity {
        let odd: usize = self.d_tuples.iter().filter(|t| !t.counts_as_even()).map(|t| t.minus_count()).sum();
        match odd {
            0 => Parity::Even,
            1 => Parity::Odd,
            _ => Parity::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedCharacteristic {
    pub d_pairs: Vec<(u32, u32)>,
    pub c_degrees: Vec<u32>,
}

fn log2(n: u64) -> u32 {
    debug_assert!(n.is_power_of_two());
    n.trailing_zeros()
}

/// Splits a group into its 2-primary exponents and its odd part.
fn split_group(g: &FiniteAbelianGroup, c_tuples: &mut Vec<(u32, Sign)>, odd: &mut Vec<u32>) {
    for &n in g.orders() {
        for (p, a) in factorize(n as u64) {
            if p == 2 {
                c_tuples.push((a, Sign::Plus));
            } else {
                odd.push(p.pow(a) as u32);
            }
        }
    }
}

pub fn characteristic(factors: &[Factor]) -> Characteristic {
    let mut d_tuples = Vec::new();
    let mut c_tuples = Vec::new();
    let mut odd = Vec::new();
    let mut e_marker = None;
    let mut h_marker = false;
    let mut central_complex = false;
    for f in factors {
        match f {
            Factor::C { order, sign } => {
                let two = 1u32 << order.trailing_zeros();
                if two > 1 {
                    c_tuples.push((log2(two as u64), *sign));
                }
                if order / two > 1 {
                    odd.push(order / two);
                }
            }
            Factor::D { k_order, l_order, mu, nu } => {
                let (k, l) = (log2(*k_order as u64), log2(*l_order as u64));
                d_tuples.push(if k <= l {
                    DTuple { k, l, mu: *mu, nu: *nu }
                } else {
                    DTuple { k: l, l: k, mu: *nu, nu: *mu }
                });
            }
            Factor::E { order, sign } => e_marker = Some((log2(*order as u64), *sign)),
            Factor::H => h_marker = true,
            Factor::RG { group } => split_group(group, &mut c_tuples, &mut odd),
            Factor::CG { group } => {
                central_complex = true;
                split_group(group, &mut c_tuples, &mut odd);
            }
            Factor::Pauli { beta } => {
                central_complex = true;
                split_group(&beta.group(), &mut c_tuples, &mut odd);
            }
        }
    }
    d_tuples.sort();
    c_tuples.sort();
    let odd_part = FiniteAbelianGroup::from_orders(odd).expect("orders above 1").canonical();
    Characteristic { d_tuples, c_tuples, e_marker, h_marker, central_complex, odd_part }
}

pub fn truncated(chi: &Characteristic) -> TruncatedCharacteristic {
    let mut d_pairs: Vec<(u32, u32)> = chi.d_tuples.iter().map(|t| (t.k, t.l)).collect();
    let mut c_degrees: Vec<u32> = chi.c_tuples.iter().map(|c| c.0).collect();
    d_pairs.sort();
    c_degrees.sort();
    TruncatedCharacteristic { d_pairs, c_degrees }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCounts {
    pub d_plus: u64,
    pub d_minus: u64,
    /// Present when a monomial scan was requested; true iff it matched.
    pub brute_checked: Option<bool>,
}

/// (d_+, d_-) for [1,1]^{⊗m}: (4^m ± 2^m)/2.
pub fn clifford_counts(m: u32, brute_check: bool) -> CliffordCounts {
    let (four, two) = (4u64.pow(m), 2u64.pow(m));
    let (d_plus, d_minus) = ((four + two) / 2, (four - two) / 2);
    let brute_checked = brute_check.then(|| {
        let factors = vec![Factor::D { k_order: 2, l_order: 2, mu: Sign::Plus, nu: Sign::Plus }; m as usize];
        let p = tensor_of(&factors).expect("one-dim factors");
        solution_support_count(&p, 1, Sign::Plus) == d_plus && solution_support_count(&p, 1, Sign::Minus) == d_minus
    });
    CliffordCounts { d_plus, d_minus, brute_checked }
}

/// Per-degree answer to x^{2^k} = sign·I.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solvability {
    None,
    Finite,
    Continuum,
}

/// Sign of a real scalar monomial; `None` if the coefficient is not ±1.
fn real_sign(p: &Presentation, coeff: u32) -> Option<Sign> {
    let n = p.root_order();
    if coeff == 0 {
        Some(Sign::Plus)
    } else if coeff == n / 2 {
        Some(Sign::Minus)
    } else {
        None
    }
}

pub fn solvability(p: &Presentation, g: &GroupElement, k: u32, sign: Sign) -> Solvability {
    let group = p.group();
    let two_k = 1u64 << k;
    if !group.scale(two_k, g).is_identity() {
        return Solvability::None;
    }
    let m = p.monomial_of_degree(g);
    let pw = p.power(&m, two_k);
    match p.kind() {
        IdentityKind::OneDim => {
            if real_sign(p, pw.coeff) == Some(sign) {
                Solvability::Finite
            } else {
                Solvability::None
            }
        }
        // x = z·m with z ∈ C (central) ranges over all 2^k-th roots.
        IdentityKind::CentralJ => Solvability::Finite,
        // x = q·m with q a unit quaternion commuting with m.
        IdentityKind::Quaternion => Solvability::Continuum,
        IdentityKind::NoncentralJ => {
            if p.degree_j_parity(g) {
                // (z·m)^{2^k} = |z|^{2^k}·m^{2^k} and m^{2^k} is real.
                if real_sign(p, pw.coeff) == Some(sign) {
                    Solvability::Continuum
                } else {
                    Solvability::None
                }
            } else {
                Solvability::Finite
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportCount {
    pub count: u64,
    /// Degrees whose solution set is a continuum rather than finite.
    pub continuum: u64,
}

pub fn solution_support(p: &Presentation, k: u32, sign: Sign) -> SupportCount {
    let mut out = SupportCount { count: 0, continuum: 0 };
    for g in p.group().elements() {
        match solvability(p, &g, k, sign) {
            Solvability::None => {}
            Solvability::Finite => out.count += 1,
            Solvability::Continuum => {
                out.count += 1;
                out.continuum += 1;
            }
        }
    }
    out
}

pub fn solution_support_count(p: &Presentation, k: u32, sign: Sign) -> u64 {
    solution_support(p, k, sign).count
}

/// Whether some central homogeneous x satisfies x^{2^k} = sign·I.
pub fn central_solution_exists(p: &Presentation, k: u32, sign: Sign) -> bool {
    if sign == Sign::Plus {
        return true;
    }
    let group = p.group();
    let two_k = 1u64 << k;
    let n = p.root_order();
    let gens: Vec<_> = (0..p.rank()).map(|i| p.generator(i)).collect();
    group.elements().filter(|g| group.scale(two_k, g).is_identity()).any(|g| {
        let m = p.monomial_of_degree(&g);
        let pw = p.power(&m, two_k);
        match p.kind() {
            IdentityKind::OneDim | IdentityKind::Quaternion => {
                gens.iter().all(|x| p.commute(&m, x)) && real_sign(p, pw.coeff) == Some(Sign::Minus)
            }
            IdentityKind::CentralJ => gens.iter().all(|x| p.commute(&m, x)),
            IdentityKind::NoncentralJ => {
                if p.degree_j_parity(&g) {
                    return false;
                }
                // x = ζ_{2N}^t·m. For x·y = y·x: even y needs m·y = y·m; odd y needs t ≡ -c (mod N)
                // where m·y = ζ_N^c·y·m.
                let mut allowed: Vec<u32> = (0..2 * n).collect();
                for (i, y) in gens.iter().enumerate() {
                    let my = p.mul(&m, y);
                    let ym = p.mul(y, &m);
                    let c = (my.coeff + n - ym.coeff) % n;
                    if p.generators()[i].anticommutes_with_j {
                        allowed.retain(|&t| (t + c) % n == 0);
                    } else if c != 0 {
                        return false;
                    }
                }
                // x^{2^k} = ζ_{2N}^{t·2^k + 2·coeff} must equal -1 = ζ_{2N}^N.
                allowed
                    .iter()
                    .any(|&t| (t as u64 * two_k + 2 * pw.coeff as u64) % (2 * n as u64) == n as u64)
            }
        }
    })
}

/// Ordered degree pairs (g,h) carrying x^{2^k} = y^{2^ℓ} = I with xy = yx (a0) or xy = -yx (a1).
pub fn pair_solution_counts(p: &Presentation, k: u32, l: u32) -> Result<(u64, u64)> {
    if p.kind() != IdentityKind::OneDim {
        return Err(Error::UnsupportedKind { op: "pair_solution_counts", kind: p.kind() });
    }
    let beta = p.beta_of()?;
    let elems: Vec<GroupElement> = p.group().elements().collect();
    let xs: Vec<&GroupElement> =
        elems.iter().filter(|g| solvability(p, g, k, Sign::Plus) != Solvability::None).collect();
    let ys: Vec<&GroupElement> =
        elems.iter().filter(|g| solvability(p, g, l, Sign::Plus) != Solvability::None).collect();
    let (mut a0, mut a1) = (0, 0);
    for x in &xs {
        for y in &ys {
            if beta.eval(x, y) == 0 {
                a0 += 1;
            } else {
                a1 += 1;
            }
        }
    }
    Ok((a0, a1))
}

/// Least order of a degree whose component anticommutes with J.
pub fn minimal_noncommuting_degree(p: &Presentation) -> Result<u64> {
    if p.kind() != IdentityKind::NoncentralJ {
        return Err(Error::UnsupportedKind { op: "minimal_noncommuting_degree", kind: p.kind() });
    }
    let group = p.group();
    Ok(group
        .elements()
        .filter(|g| p.degree_j_parity(g))
        .map(|g| group.element_order(&g))
        .min()
        .expect("a noncentral J has an anticommuting degree"))
}

pub fn is_commutative(p: &Presentation) -> bool {
    match p.kind() {
        IdentityKind::OneDim | IdentityKind::CentralJ => {
            p.generators().iter().all(|g| g.commutation.iter().all(|&c| c == 0))
        }
        _ => false,
    }
}

/// (number of C summands, number of R summands) of a commutative algebra.
pub fn ungraded_decomposition_commutative(p: &Presentation) -> Result<(u64, u64)> {
    if !is_commutative(p) {
        return Err(Error::InvalidParameter("ungraded decomposition needs a commutative algebra".into()));
    }
    let size = p.group().cardinality();
    if p.kind() == IdentityKind::CentralJ {
        return Ok((size, 0));
    }
    // A character sends x_i to a root of X^{n_i} = ε_i; count the real ones.
    let real: u64 = p
        .generators()
        .iter()
        .map(|g| match (g.order % 2, g.power_sign) {
            (1, _) => 1,
            (_, Sign::Plus) => 2,
            (_, Sign::Minus) => 0,
        })
        .product();
    Ok(((size - real) / 2, real))
}

/// Largest k worth probing: beyond it every power is trivial in the 2-part.
pub fn probe_depth(p: &Presentation) -> u32 {
    let two = p.group().two_part().exponent();
    two.trailing_zeros() + 1
}

/// Stable JSON document of all presentation-level invariants plus the characteristic.
pub fn invariant_profile(factors: &[Factor], k_max: Option<u32>) -> Result<Value> {
    let p = tensor_of(factors)?;
    let chi = characteristic(factors);
    let depth = k_max.unwrap_or_else(|| probe_depth(&p));
    let mut counts = Vec::new();
    let mut central = Vec::new();
    for k in 1..=depth {
        for sign in [Sign::Minus, Sign::Plus] {
            let s = solution_support(&p, k, sign);
            counts.push(json!({"k": k, "sign": sign.value(), "count": s.count, "continuum": s.continuum}));
        }
        central.push(json!({"k": k, "minus": central_solution_exists(&p, k, Sign::Minus)}));
    }
    let group = p.group();
    let mut out = json!({
        "schema": "gradiv.invariants/1",
        "kind": p.kind(),
        "dimension": p.dimension(),
        "group": group.label(),
        "invariant_factors": group.invariant_factors(),
        "identity_component_dim": p.kind().identity_dim(),
        "characteristic": chi,
        "truncated": truncated(&chi),
        "central_solutions": central,
        "solution_counts": counts,
    });
    if p.kind() == IdentityKind::NoncentralJ {
        out["minimal_noncommuting_degree"] = json!(minimal_noncommuting_degree(&p)?);
    }
    if is_commutative(&p) {
        let (c, r) = ungraded_decomposition_commutative(&p)?;
        out["decomposition"] = json!({"complex": c, "real": r});
    }
    Ok(out)
}
