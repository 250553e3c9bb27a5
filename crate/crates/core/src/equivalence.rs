//! Equivalence decisions, nonequivalence certificates and the brute-force
//! weak-isomorphism oracle.
//!
//! A weak isomorphism sends each source generator to a unit monomial of the
//! target (times an R_e unit) whose degrees define a group isomorphism. The
//! oracle searches those images exhaustively; [`verify_substitution`] re-checks
//! any candidate against the source relations without enumerating anything.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Bicharacter, IdentityKind, Presentation, QuatUnit, Sign, UnitMonomial};
use crate::catalog::{pauli, tensor_of, Factor};
use crate::error::{Error, Result};
use crate::group::{lcm, FiniteAbelianGroup, GroupElement, Span};
use crate::invariants::{
    central_solution_exists, characteristic, probe_depth, solution_support, truncated,
};
use crate::normalize::{canonical_central, expand, normalize, CanonicalForm, DEFAULT_PAULI_BUDGET};

/// Node budget used by the CLI when none is given.
pub const DEFAULT_ORACLE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakIsomorphism {
    /// Images of the source generator degrees.
    pub group_map: Vec<GroupElement>,
    /// Per source generator, a unit monomial of the target over ζ_{root_order}.
    pub gen_images: Vec<UnitMonomial>,
    pub root_order: u32,
    /// `Some(-1)` when J goes to -J.
    pub j_image: Option<i64>,
    /// Set for quaternion components: generator images centralize H, so H maps identically.
    pub quat_action: Option<String>,
    /// Human-readable images.
    pub images_text: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub invariant: String,
    pub value1: Value,
    pub value2: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Equivalent {
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<WeakIsomorphism>,
    },
    NotEquivalent { certificate: Certificate },
    Unknown { note: String },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    /// 0 equivalent, 1 not equivalent, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Equivalent { .. } => 0,
            Verdict::NotEquivalent { .. } => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

// ---------------------------------------------------------------- substitution check

/// Whether `images` (unit monomials of `p`) satisfy every relation of `target`
/// and their degrees form an isomorphism from the target's group onto p's.
pub fn verify_substitution(p: &Presentation, target: &Presentation, images: &[UnitMonomial]) -> bool {
    verify_substitution_with(p, target, images, false)
}

/// As [`verify_substitution`], with J sent to -J when `conjugate_j` is set.
pub fn verify_substitution_with(
    p: &Presentation,
    target: &Presentation,
    images: &[UnitMonomial],
    conjugate_j: bool,
) -> bool {
    if p.kind() != target.kind() || images.len() != target.rank() || !images.iter().all(|m| p.is_valid_monomial(m)) {
        return false;
    }
    if conjugate_j && !p.kind().has_j() {
        return false;
    }
    let n = lcm(p.root_order() as u64, target.root_order() as u64) as u32;
    let (p, images) = if n == p.root_order() {
        (p.clone(), images.to_vec())
    } else {
        let Ok(q) = p.with_root_order(n) else { return false };
        let f = n / p.root_order();
        (q, images.iter().map(|m| UnitMonomial { coeff: m.coeff * f, ..m.clone() }).collect())
    };
    let degrees: Vec<GroupElement> = images.iter().map(|m| p.degree(m)).collect();
    if !target.group().is_isomorphism(p.group(), &degrees) {
        return false;
    }
    let f = n / target.root_order();
    for (i, (img, gen)) in images.iter().zip(target.generators()).enumerate() {
        if img.quat != QuatUnit::One {
            return false;
        }
        if p.kind().has_j() && p.j_parity(img) != gen.anticommutes_with_j {
            return false;
        }
        if p.power(img, gen.order as u64) != p.sign_scalar(gen.power_sign) {
            return false;
        }
        for (j, other) in images.iter().enumerate().take(i) {
            let mut c = gen.commutation[j] * f % n;
            if conjugate_j {
                c = (n - c) % n;
            }
            let lhs = p.mul(img, other);
            let rhs = p.mul(&p.scalar(c), &p.mul(other, img));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------- oracle

/// Intrinsic data of a component that any weak isomorphism preserves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Signature {
    order: u64,
    j_odd: bool,
    /// Sign of x^{order} when it is a well-defined real sign.
    sign: Option<bool>,
    /// Number of components anticommuting with this one (one-dimensional centralizer only).
    anticommuting: u64,
}

fn signatures(p: &Presentation) -> Vec<Signature> {
    let g = p.group();
    let elems: Vec<GroupElement> = g.elements().collect();
    let monos: Vec<UnitMonomial> = elems.iter().map(|x| p.monomial_of_degree(x)).collect();
    let n = p.root_order();
    let real_comm = matches!(p.kind(), IdentityKind::OneDim | IdentityKind::Quaternion);
    elems
        .iter()
        .zip(&monos)
        .map(|(x, m)| {
            let order = g.element_order(x);
            let j_odd = p.kind() == IdentityKind::NoncentralJ && p.degree_j_parity(x);
            let pw = p.power(m, order).coeff;
            let sign = match p.kind() {
                IdentityKind::OneDim | IdentityKind::Quaternion if order % 2 == 0 => Some(pw != 0),
                IdentityKind::NoncentralJ if j_odd => Some(pw != 0),
                _ => None,
            };
            let anticommuting = if real_comm {
                monos.iter().filter(|y| p.mul(m, y).coeff != p.mul(y, m).coeff).count() as u64
            } else {
                0
            };
            let _ = n;
            Signature { order, j_odd, sign, anticommuting }
        })
        .collect()
}

fn histogram(sigs: &[Signature]) -> HashMap<Signature, usize> {
    let mut h = HashMap::new();
    for s in sigs {
        *h.entry(s.clone()).or_insert(0) += 1;
    }
    h
}

struct Oracle<'a> {
    source: &'a Presentation,
    target: Presentation,
    /// Source root order scale into the target's.
    scale: u32,
    source_sigs: Vec<Signature>,
    target_sigs: Vec<Signature>,
    target_elems: Vec<GroupElement>,
    nodes: u64,
    budget: u64,
}

impl Oracle<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(format!("oracle search exceeded {} nodes", self.budget)));
        }
        Ok(())
    }

    fn coefficient_options(&self, i: usize, m: &UnitMonomial) -> Vec<u32> {
        let gen = &self.source.generators()[i];
        let t = &self.target;
        let n = t.root_order();
        match t.kind() {
            IdentityKind::OneDim | IdentityKind::Quaternion => {
                if gen.order % 2 == 1 {
                    vec![0, n / 2]
                } else {
                    vec![0]
                }
            }
            IdentityKind::NoncentralJ => {
                // Scalars z and -z give the same relations when the order is even.
                let range = if gen.order % 2 == 0 { n / 2 } else { n };
                if gen.anticommutes_with_j {
                    (0..range).collect()
                } else {
                    // (ζ^s m)^n = ζ^{s·n} m^n for J-even m.
                    let base = t.power(m, gen.order as u64).coeff as u64;
                    let want = gen.power_sign.exponent(n) as u64;
                    (0..range)
                        .filter(|&s| (s as u64 * gen.order as u64 + base) % n as u64 == want)
                        .collect()
                }
            }
            IdentityKind::CentralJ => unreachable!("central case uses the bicharacter search"),
        }
    }

    fn fits(&self, i: usize, img: &UnitMonomial, chosen: &[UnitMonomial]) -> bool {
        let t = &self.target;
        let gen = &self.source.generators()[i];
        if t.kind().has_j() && t.j_parity(img) != gen.anticommutes_with_j {
            return false;
        }
        if t.power(img, gen.order as u64) != t.sign_scalar(gen.power_sign) {
            return false;
        }
        let n = t.root_order();
        chosen.iter().enumerate().all(|(j, other)| {
            let c = gen.commutation[j] * self.scale % n;
            t.mul(img, other) == t.mul(&t.scalar(c), &t.mul(other, img))
        })
    }

    fn dfs(&mut self, span: &Span, degrees: &mut Vec<GroupElement>, chosen: &mut Vec<UnitMonomial>) -> Result<bool> {
        let i = chosen.len();
        if i == self.source.rank() {
            return Ok(verify_substitution(&self.target, self.source, chosen));
        }
        let want = self.source_sigs[self.source.group().index_of(&self.source.generators()[i].degree)].clone();
        let order = self.source.generators()[i].order;
        for idx in 0..self.target_elems.len() {
            if self.target_sigs[idx] != want {
                continue;
            }
            let h = self.target_elems[idx].clone();
            let Some(next) = span.extend(self.target.group(), &h, order) else { continue };
            let m = self.target.monomial_of_degree(&h);
            for s in self.coefficient_options(i, &m) {
                self.tick()?;
                let img = self.target.mul(&self.target.scalar(s), &m);
                if !self.fits(i, &img, chosen) {
                    continue;
                }
                degrees.push(h.clone());
                chosen.push(img);
                if self.dfs(&next, degrees, chosen)? {
                    return Ok(true);
                }
                chosen.pop();
                degrees.pop();
            }
        }
        Ok(false)
    }
}

fn witness(target: &Presentation, images: Vec<UnitMonomial>, conj: bool) -> WeakIsomorphism {
    WeakIsomorphism {
        group_map: images.iter().map(|m| target.degree(m)).collect(),
        images_text: images.iter().map(|m| target.format_monomial(m)).collect(),
        gen_images: images,
        root_order: target.root_order(),
        j_image: target.kind().has_j().then_some(if conj { -1 } else { 1 }),
        quat_action: (target.kind() == IdentityKind::Quaternion).then(|| "identity".to_string()),
    }
}

/// A weak isomorphism `source → target`, or `None` after exhausting the search space.
pub fn oracle_search(source: &Presentation, target: &Presentation, budget: u64) -> Result<Option<WeakIsomorphism>> {
    if source.kind() != target.kind()
        || source.dimension() != target.dimension()
        || source.group().primary_orders() != target.group().primary_orders()
    {
        return Ok(None);
    }
    if source.kind() == IdentityKind::CentralJ {
        return central_search(source, target, budget);
    }
    let (n1, n2) = (source.root_order() as u64, target.root_order() as u64);
    let m = match source.kind() {
        IdentityKind::NoncentralJ => {
            lcm(lcm(2 * n1, 2 * n2), n2 * target.group().exponent().max(1)) as u32
        }
        _ => lcm(n1, n2) as u32,
    };
    let t = target.with_root_order(m)?;
    let source_sigs = signatures(source);
    let target_sigs = signatures(&t);
    if histogram(&source_sigs) != histogram(&target_sigs) {
        return Ok(None);
    }
    let mut oracle = Oracle {
        source,
        scale: m / source.root_order(),
        target_elems: t.group().elements().collect(),
        target: t,
        source_sigs,
        target_sigs,
        nodes: 0,
        budget,
    };
    let mut degrees = Vec::new();
    let mut chosen = Vec::new();
    let span = Span::trivial(oracle.target.group());
    if oracle.dfs(&span, &mut degrees, &mut chosen)? {
        return Ok(Some(witness(&oracle.target, chosen, false)));
    }
    Ok(None)
}

/// Central J: a group isomorphism carrying β_source to β_target or its conjugate,
/// then scalar corrections so every power relation holds.
fn central_search(source: &Presentation, target: &Presentation, budget: u64) -> Result<Option<WeakIsomorphism>> {
    let exp = target.group().exponent().max(1);
    let big = (lcm(source.root_order() as u64, target.root_order() as u64) * exp * 2) as u32;
    let t = target.with_root_order(big)?;
    let b1 = source.beta_of()?.rebased(big);
    let b2 = t.beta_of()?;
    let g2 = t.group().clone();
    let r = source.rank();
    let candidates: Vec<Vec<GroupElement>> = source
        .generators()
        .iter()
        .map(|gen| g2.elements().filter(|h| g2.element_order(h) == gen.order as u64).collect())
        .collect();
    let src_basis: Vec<GroupElement> = (0..r).map(|i| source.generators()[i].degree.clone()).collect();
    let mut nodes = 0u64;
    let mut found = None;
    central_dfs(
        &CentralCtx { b1: &b1, b2: &b2, g2: &g2, candidates: &candidates, src: &src_basis, budget },
        &Span::trivial(&g2),
        &mut Vec::new(),
        (true, true),
        &mut nodes,
        &mut |degrees, conj| {
            let images = central_images(source, &t, degrees)?;
            if verify_substitution_with(&t, source, &images, conj) {
                found = Some(witness(&t, images, conj));
                return Ok(true);
            }
            Ok(false)
        },
    )?;
    Ok(found)
}

struct CentralCtx<'a> {
    b1: &'a Bicharacter,
    b2: &'a Bicharacter,
    g2: &'a FiniteAbelianGroup,
    candidates: &'a [Vec<GroupElement>],
    src: &'a [GroupElement],
    budget: u64,
}

fn central_dfs(
    ctx: &CentralCtx,
    span: &Span,
    chosen: &mut Vec<GroupElement>,
    alive: (bool, bool),
    nodes: &mut u64,
    done: &mut dyn FnMut(&[GroupElement], bool) -> Result<bool>,
) -> Result<bool> {
    let i = chosen.len();
    if i == ctx.src.len() {
        if alive.0 && done(chosen, false)? {
            return Ok(true);
        }
        return Ok(alive.1 && done(chosen, true)?);
    }
    let m = ctx.b2.modulus();
    for h in &ctx.candidates[i] {
        *nodes += 1;
        if *nodes > ctx.budget {
            return Err(Error::BudgetExceeded(format!("bicharacter search exceeded {} nodes", ctx.budget)));
        }
        let Some(next) = span.extend(ctx.g2, h, ctx.g2.element_order(h) as u32) else { continue };
        let mut same = alive.0;
        let mut conj = alive.1;
        for (j, prev) in chosen.iter().enumerate() {
            let want = ctx.b1.eval(&ctx.src[j], &ctx.src[i]);
            let got = ctx.b2.eval(prev, h);
            same &= got == want;
            conj &= got == (m - want) % m;
        }
        if !(same || conj) {
            continue;
        }
        chosen.push(h.clone());
        if central_dfs(ctx, &next, chosen, (same, conj), nodes, done)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// ζ^s·m_h with (ζ^s·m_h)^n equal to the source power sign.
fn central_images(source: &Presentation, t: &Presentation, degrees: &[GroupElement]) -> Result<Vec<UnitMonomial>> {
    let n = t.root_order() as u64;
    degrees
        .iter()
        .zip(source.generators())
        .map(|(h, gen)| {
            let m = t.monomial_of_degree(h);
            let base = t.power(&m, gen.order as u64).coeff as u64;
            let want = gen.power_sign.exponent(t.root_order()) as u64;
            let s = (0..n)
                .find(|&s| (s * gen.order as u64 + base) % n == want)
                .ok_or_else(|| Error::InvalidPresentation("no scalar correction in the chosen root order".into()))?;
            Ok(t.mul(&t.scalar(s as u32), &m))
        })
        .collect()
}

/// Oracle verdict on two factor lists.
pub fn oracle_equivalent(f1: &[Factor], f2: &[Factor], budget: u64) -> Result<Verdict> {
    let (p1, p2) = (tensor_of(f1)?, tensor_of(f2)?);
    match oracle_search(&p1, &p2, budget) {
        Ok(Some(w)) => Ok(Verdict::Equivalent { witness: Some(w) }),
        Ok(None) => Ok(Verdict::NotEquivalent {
            certificate: Certificate {
                invariant: "oracle_exhausted".into(),
                value1: json!(p1.dimension()),
                value2: json!(p2.dimension()),
            },
        }),
        Err(Error::BudgetExceeded(note)) => Ok(Verdict::Unknown { note }),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------- certificates

/// Decides by canonical labels; on a difference names the first separating invariant.
pub fn equivalent(f1: &[Factor], f2: &[Factor]) -> Result<Verdict> {
    let (cf1, cf2) = match (normalize(f1), normalize(f2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(Error::BudgetExceeded(note)), _) | (_, Err(Error::BudgetExceeded(note))) => {
            return Ok(Verdict::Unknown { note })
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    if cf1 == cf2 {
        return Ok(Verdict::Equivalent { witness: None });
    }
    let (p1, p2) = (tensor_of(f1)?, tensor_of(f2)?);
    Ok(Verdict::NotEquivalent { certificate: certificate(&p1, &p2, &cf1, &cf2) })
}

/// First differing invariant in the fixed probe order.
pub fn certificate(p1: &Presentation, p2: &Presentation, cf1: &CanonicalForm, cf2: &CanonicalForm) -> Certificate {
    let mut probes: Vec<(String, Value, Value)> = Vec::new();
    let cert = |name: String, a: Value, b: Value| Certificate { invariant: name, value1: a, value2: b };
    probes.push(("identity_kind".into(), json!(p1.kind()), json!(p2.kind())));
    probes.push((
        "group_invariants".into(),
        json!(p1.group().invariant_factors()),
        json!(p2.group().invariant_factors()),
    ));
    for (name, a, b) in probes.drain(..) {
        if a != b {
            return cert(name, a, b);
        }
    }
    let central = p1.kind() == IdentityKind::CentralJ;
    if central {
        let r = |p: &Presentation| p.beta_of().map(|b| b.radical_size()).unwrap_or(0);
        if r(p1) != r(p2) {
            return cert("bicharacter_radical_size".into(), json!(r(p1)), json!(r(p2)));
        }
    } else {
        let t = |cf: &CanonicalForm| json!(truncated(&characteristic(&expand(cf))));
        if t(cf1) != t(cf2) {
            return cert("truncated_characteristic".into(), t(cf1), t(cf2));
        }
    }
    let depth = probe_depth(p1).max(probe_depth(p2));
    let profile = |p: &Presentation| -> Vec<bool> { (1..=depth).map(|k| central_solution_exists(p, k, Sign::Minus)).collect() };
    if profile(p1) != profile(p2) {
        return cert("central_solution_profile(sign=-1)".into(), json!(profile(p1)), json!(profile(p2)));
    }
    for k in 1..=depth {
        for sign in [Sign::Minus, Sign::Plus] {
            let (a, b) = (solution_support(p1, k, sign), solution_support(p2, k, sign));
            if a.count != b.count {
                return cert(format!("solution_support_count(k={k},{})", sign.value()), json!(a.count), json!(b.count));
            }
            if a.continuum != b.continuum {
                return cert(
                    format!("solution_continuum_count(k={k},{})", sign.value()),
                    json!(a.continuum),
                    json!(b.continuum),
                );
            }
        }
    }
    let chi = |cf: &CanonicalForm| json!(characteristic(&expand(cf)));
    if !central && chi(cf1) != chi(cf2) {
        return cert("characteristic".into(), chi(cf1), chi(cf2));
    }
    cert("canonical_label".into(), json!(cf1.label()), json!(cf2.label()))
}

// ---------------------------------------------------------------- Pauli layer

/// Equivalent iff some α ∈ Aut G carries β2 to β1 or its conjugate.
pub fn pauli_equivalent(g: &FiniteAbelianGroup, beta1: &Bicharacter, beta2: &Bicharacter, budget: u64) -> Result<Verdict> {
    let (p1, p2) = (pauli(g, beta1)?, pauli(g, beta2)?);
    if let Some(w) = oracle_search(&p1, &p2, budget)? {
        return Ok(Verdict::Equivalent { witness: Some(w) });
    }
    let (r1, r2) = (beta1.radical_size(), beta2.radical_size());
    let certificate = if r1 != r2 {
        Certificate { invariant: "bicharacter_radical_size".into(), value1: json!(r1), value2: json!(r2) }
    } else {
        let rep = |p: &Presentation| canonical_central(p, budget).map(|cf| cf.label());
        Certificate { invariant: "bicharacter_orbit".into(), value1: json!(rep(&p1)?), value2: json!(rep(&p2)?) }
    };
    Ok(Verdict::NotEquivalent { certificate })
}

/// The map pauli(G,β) → pauli(G,β̄) fixing every generator and sending J to -J.
pub fn conjugation_witness(g: &FiniteAbelianGroup, beta: &Bicharacter) -> Result<Option<WeakIsomorphism>> {
    let p = pauli(g, beta)?;
    let q = pauli(g, &beta.conjugate())?;
    let images: Vec<UnitMonomial> = (0..q.rank()).map(|i| q.generator(i)).collect();
    if !verify_substitution_with(&q, &p, &images, true) {
        return Ok(None);
    }
    Ok(Some(witness(&q, images, true)))
}

/// Pauli canonical label with the default budget.
pub fn pauli_label(g: &FiniteAbelianGroup, beta: &Bicharacter) -> Result<String> {
    Ok(canonical_central(&pauli(g, beta)?, DEFAULT_PAULI_BUDGET)?.label())
}
