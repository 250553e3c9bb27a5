//! Rewriting tensor products of basic factors to canonical forms.
//!
//! Every rule application carries an explicit generator substitution: the
//! images of the new presentation's generators as words in the old one. A rule
//! instance whose substitution fails [`verify_substitution`] is skipped, so the
//! rewriting can only ever make equivalence-preserving moves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bicharacter, IdentityKind, Presentation, Sign, UnitMonomial};
use crate::catalog::{tensor_of, Factor};
use crate::equivalence::verify_substitution;
use crate::error::{Error, Result};
use crate::group::{is_power_of_two, FiniteAbelianGroup, GroupElement, Span};
use crate::invariants::DTuple;

/// Node budget of the Pauli orbit search used by [`normalize`].
pub const DEFAULT_PAULI_BUDGET: u64 = 2_000_000;
const MAX_STEPS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CanonicalForm {
    CommRg { group: FiniteAbelianGroup },
    CommCg { group: FiniteAbelianGroup },
    CommCneg { m: u32, group: FiniteAbelianGroup },
    #[serde(rename = "NC1_PLAIN")]
    Nc1Plain { chi: Vec<DTuple>, group: FiniteAbelianGroup },
    #[serde(rename = "NC1_CNEG")]
    Nc1Cneg { m: u32, chi: Vec<DTuple>, group: FiniteAbelianGroup },
    #[serde(rename = "NC1_QUAT")]
    Nc1Quat { chi: Vec<DTuple>, group: FiniteAbelianGroup },
    EEven { k: u32, chi: Vec<DTuple>, group: FiniteAbelianGroup },
    ECneg { k: u32, chi: Vec<DTuple>, m: u32, group: FiniteAbelianGroup },
    ENeg { k: u32, chi: Vec<DTuple>, group: FiniteAbelianGroup },
    EOdd { k: u32, chi: Vec<DTuple>, group: FiniteAbelianGroup },
    HPlain { chi: Vec<DTuple>, group: FiniteAbelianGroup },
    HCneg { chi: Vec<DTuple>, m: u32, group: FiniteAbelianGroup },
    HQuat { chi: Vec<DTuple>, group: FiniteAbelianGroup },
    /// `beta` is over the primary basis of `group`, modulus exp(G), lex-minimal in its orbit.
    Pauli { group: FiniteAbelianGroup, beta: Bicharacter },
}

impl CanonicalForm {
    pub fn kind(&self) -> IdentityKind {
        use CanonicalForm::*;
        match self {
            CommRg { .. } | CommCneg { .. } | Nc1Plain { .. } | Nc1Cneg { .. } | Nc1Quat { .. } => {
                IdentityKind::OneDim
            }
            CommCg { .. } | Pauli { .. } => IdentityKind::CentralJ,
            EEven { .. } | ECneg { .. } | ENeg { .. } | EOdd { .. } => IdentityKind::NoncentralJ,
            HPlain { .. } | HCneg { .. } | HQuat { .. } => IdentityKind::Quaternion,
        }
    }

    pub fn label(&self) -> String {
        canonical_label(self)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&canonical_label(self))
    }
}

fn tuple_text(t: &DTuple) -> String {
    format!("D({},{};{},{})", t.k, t.l, t.mu.symbol(), t.nu.symbol())
}

/// `TAG[item*item*…]`. Items appear as E(k;s), C(m;-), H4, sorted D tuples, RG[G];
/// every number is a 2-exponent except inside group literals.
pub fn canonical_label(cf: &CanonicalForm) -> String {
    use CanonicalForm::*;
    let body = |e: Option<(u32, Sign)>, m: Option<u32>, quat: bool, chi: &[DTuple], g: &FiniteAbelianGroup| {
        let mut items = Vec::new();
        if let Some((k, s)) = e {
            items.push(format!("E({k};{})", s.symbol()));
        }
        if let Some(m) = m {
            items.push(format!("C({m};-)"));
        }
        if quat {
            items.push("H4".to_string());
        }
        items.extend(chi.iter().map(tuple_text));
        if g.cardinality() > 1 {
            items.push(format!("RG[{}]", g.label()));
        }
        items.join("*")
    };
    let plus = Sign::Plus;
    match cf {
        CommRg { group } => format!("RG[{}]", group.label()),
        CommCg { group } => format!("CG[{}]", group.label()),
        CommCneg { m, group } => format!("RC[{}]", body(None, Some(*m), false, &[], group)),
        Nc1Plain { chi, group } => format!("NC1[{}]", body(None, None, false, chi, group)),
        Nc1Cneg { m, chi, group } => format!("NC1C[{}]", body(None, Some(*m), false, chi, group)),
        Nc1Quat { chi, group } => format!("NC1Q[{}]", body(None, None, true, chi, group)),
        EEven { k, chi, group } => format!("E1[{}]", body(Some((*k, plus)), None, false, chi, group)),
        ECneg { k, chi, m, group } => format!("E2[{}]", body(Some((*k, plus)), Some(*m), false, chi, group)),
        ENeg { k, chi, group } => format!("E3[{}]", body(Some((*k, Sign::Minus)), None, false, chi, group)),
        EOdd { k, chi, group } => format!("E4[{}]", body(Some((*k, plus)), None, false, chi, group)),
        HPlain { chi, group } => format!("H[{}]", body(None, None, false, chi, group)),
        HCneg { chi, m, group } => format!("HC[{}]", body(None, Some(*m), false, chi, group)),
        HQuat { chi, group } => format!("HQ[{}]", body(None, None, true, chi, group)),
        Pauli { group, beta } => {
            let r = group.rank();
            let mut cells = Vec::new();
            for j in 1..r {
                for i in 0..j {
                    cells.push(beta.matrix()[i][j].to_string());
                }
            }
            format!("PAULI[{};{}]", group.label(), cells.join(","))
        }
    }
}

/// A factor list realizing the canonical form.
pub fn expand(cf: &CanonicalForm) -> Vec<Factor> {
    use CanonicalForm::*;
    let d = |t: &DTuple| Factor::D { k_order: 1 << t.k, l_order: 1 << t.l, mu: t.mu, nu: t.nu };
    let h4 = Factor::D { k_order: 2, l_order: 2, mu: Sign::Minus, nu: Sign::Minus };
    let cneg = |m: u32| Factor::C { order: 1 << m, sign: Sign::Minus };
    let e = |k: u32, s: Sign| Factor::E { order: 1 << k, sign: s };
    let mut out = Vec::new();
    let (chi, group): (&[DTuple], &FiniteAbelianGroup) = match cf {
        CommRg { group } => (&[], group),
        CommCg { group } => return vec![Factor::CG { group: group.clone() }],
        CommCneg { m, group } => {
            out.push(cneg(*m));
            (&[], group)
        }
        Nc1Plain { chi, group } => (chi, group),
        Nc1Cneg { m, chi, group } => {
            out.push(cneg(*m));
            (chi, group)
        }
        Nc1Quat { chi, group } => {
            out.push(h4.clone());
            (chi, group)
        }
        EEven { k, chi, group } | EOdd { k, chi, group } => {
            out.push(e(*k, Sign::Plus));
            (chi, group)
        }
        ECneg { k, chi, m, group } => {
            out.push(e(*k, Sign::Plus));
            out.push(cneg(*m));
            (chi, group)
        }
        ENeg { k, chi, group } => {
            out.push(e(*k, Sign::Minus));
            (chi, group)
        }
        HPlain { chi, group } => {
            out.push(Factor::H);
            (chi, group)
        }
        HCneg { chi, m, group } => {
            out.push(Factor::H);
            out.push(cneg(*m));
            (chi, group)
        }
        HQuat { chi, group } => {
            out.push(Factor::H);
            out.push(h4.clone());
            (chi, group)
        }
        Pauli { beta, .. } => return vec![Factor::Pauli { beta: beta.clone() }],
    };
    out.extend(chi.iter().map(d));
    if group.cardinality() > 1 {
        out.push(Factor::RG { group: group.clone() });
    }
    out
}

// ---------------------------------------------------------------- rules

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    OddSplit,
    Swap,
    D22,
    Hh,
    Lce,
    Cd,
    DdConsol,
    DSingle,
    /// Items 1 to 12 of the J-factor substitution table.
    E(u8),
}

impl RuleId {
    /// Priority order used by [`normalize`].
    pub fn all() -> Vec<RuleId> {
        let mut v = vec![
            RuleId::OddSplit,
            RuleId::Swap,
            RuleId::D22,
            RuleId::Hh,
            RuleId::Lce,
            RuleId::Cd,
            RuleId::DdConsol,
            RuleId::DSingle,
        ];
        v.extend((1..=12).map(RuleId::E));
        v
    }

    pub fn name(self) -> String {
        match self {
            RuleId::OddSplit => "R_ODD_SPLIT".into(),
            RuleId::Swap => "R_SWAP".into(),
            RuleId::D22 => "R_D22".into(),
            RuleId::Hh => "R_HH".into(),
            RuleId::Lce => "R_LCE".into(),
            RuleId::Cd => "R_CD".into(),
            RuleId::DdConsol => "R_DD_CONSOL".into(),
            RuleId::DSingle => "R_DSINGLE".into(),
            RuleId::E(i) => format!("R_E{i}"),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        RuleId::all().into_iter().find(|r| r.name() == s).ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

/// An ordered product J^j · x_{g1}^{e1} · x_{g2}^{e2} ⋯ of old generators.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Word {
    j: bool,
    letters: Vec<(usize, u32)>,
}

impl Word {
    fn gen(g: usize) -> Word {
        Word { j: false, letters: vec![(g, 1)] }
    }

    fn of(letters: &[(usize, u32)]) -> Word {
        Word { j: false, letters: letters.to_vec() }
    }

    fn with_j(mut self) -> Word {
        self.j = true;
        self
    }

    fn eval(&self, p: &Presentation) -> Result<UnitMonomial> {
        let mut m = p.identity_monomial();
        for &(g, e) in &self.letters {
            m = p.mul(&m, &p.power(&p.generator(g), e as u64));
        }
        if self.j {
            m = p.mul(&p.j_unit()?, &m);
        }
        Ok(m)
    }
}

/// One factor of the rewritten list with the images of its generators.
type Entry = (Factor, Vec<Word>);

#[derive(Clone, Debug)]
struct Candidate {
    rule: RuleId,
    position: usize,
    entries: Vec<Entry>,
}

/// A verified rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub position: usize,
    pub factors: Vec<Factor>,
    /// Images of the new generators as unit monomials of the old presentation.
    pub images: Vec<UnitMonomial>,
}

fn log2(n: u32) -> u32 {
    n.trailing_zeros()
}

pub(crate) fn generator_count(f: &Factor) -> usize {
    match f {
        Factor::C { .. } | Factor::E { .. } => 1,
        Factor::D { .. } => 2,
        Factor::H => 0,
        Factor::RG { group } | Factor::CG { group } => group.orders().iter().filter(|&&n| n > 1).count(),
        Factor::Pauli { beta } => beta.orders().iter().filter(|&&n| n > 1).count(),
    }
}

/// A generator whose power relation carries -1.
#[derive(Clone, Copy, Debug)]
struct OddGen {
    factor: usize,
    slot: usize,
    /// 2-exponent of the order.
    exp: u32,
}

struct Scan<'a> {
    factors: &'a [Factor],
    offsets: Vec<usize>,
}

impl<'a> Scan<'a> {
    fn new(factors: &'a [Factor]) -> Scan<'a> {
        let mut offsets = Vec::with_capacity(factors.len());
        let mut acc = 0;
        for f in factors {
            offsets.push(acc);
            acc += generator_count(f);
        }
        Scan { factors, offsets }
    }

    fn g(&self, factor: usize, slot: usize) -> usize {
        self.offsets[factor] + slot
    }

    fn identity(&self) -> Vec<Entry> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), (0..generator_count(f)).map(|s| Word::gen(self.g(i, s))).collect()))
            .collect()
    }

    fn candidate(&self, rule: RuleId, position: usize, edits: Vec<(usize, Entry)>) -> Candidate {
        let mut entries = self.identity();
        for (i, e) in edits {
            entries[i] = e;
        }
        Candidate { rule, position, entries }
    }

    fn odd_gens(&self, include_e: bool) -> Vec<OddGen> {
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            match f {
                Factor::D { k_order, l_order, mu, nu } => {
                    if mu.is_minus() {
                        out.push(OddGen { factor: i, slot: 0, exp: log2(*k_order) });
                    }
                    if nu.is_minus() {
                        out.push(OddGen { factor: i, slot: 1, exp: log2(*l_order) });
                    }
                }
                Factor::E { order, sign: Sign::Minus } if include_e => {
                    out.push(OddGen { factor: i, slot: 0, exp: log2(*order) })
                }
                _ => {}
            }
        }
        out
    }

    fn c_minus(&self) -> Vec<(usize, u32)> {
        self.factors
            .iter()
            .enumerate()
            .filter_map(|(i, f)| match f {
                Factor::C { order, sign: Sign::Minus } if is_power_of_two(*order as u64) => Some((i, log2(*order))),
                _ => None,
            })
            .collect()
    }
}

/// The factor with the sign of generator `slot` replaced.
fn with_sign(f: &Factor, slot: usize, s: Sign) -> Factor {
    match f.clone() {
        Factor::D { k_order, l_order, mu, nu } => {
            if slot == 0 {
                Factor::D { k_order, l_order, mu: s, nu }
            } else {
                Factor::D { k_order, l_order, mu, nu: s }
            }
        }
        Factor::E { order, .. } => Factor::E { order, sign: s },
        Factor::C { order, .. } => Factor::C { order, sign: s },
        other => other,
    }
}

fn d_factor(k_order: u32, l_order: u32, mu: Sign, nu: Sign) -> Factor {
    Factor::D { k_order, l_order, mu, nu }
}

fn candidates(rule: RuleId, factors: &[Factor]) -> Vec<Candidate> {
    let s = Scan::new(factors);
    match rule {
        RuleId::OddSplit => odd_split(&s),
        RuleId::Swap => swap(&s),
        RuleId::D22 => d22(&s),
        RuleId::Hh => hh(&s),
        RuleId::Lce => lce(&s),
        RuleId::Cd => cd(&s),
        RuleId::DdConsol => dd_consol(&s),
        RuleId::DSingle => dsingle(&s),
        RuleId::E(i) => e_rule(&s, i),
    }
}

fn odd_split(s: &Scan) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (i, f) in s.factors.iter().enumerate() {
        match f {
            Factor::C { order, sign } if !is_power_of_two(*order as u64) => {
                let two = 1u32 << order.trailing_zeros();
                let odd = order / two;
                let x = s.g(i, 0);
                let mut entries = Vec::new();
                if two > 1 {
                    entries.push((Factor::C { order: two, sign: *sign }, vec![Word::of(&[(x, odd)])]));
                }
                let rg = Factor::RG { group: FiniteAbelianGroup::cyclic(odd) };
                entries.push((rg, vec![Word::of(&[(x, 2 * two)])]));
                out.push(splice(s, RuleId::OddSplit, i, entries));
            }
            Factor::RG { group } => {
                let odd = group.odd_part();
                let canonical_odd = group.orders() == odd.orders() && group.cardinality() > 1;
                if canonical_odd {
                    continue;
                }
                // Coordinate index → generator slot, skipping orders of 1.
                let mut slot_of = vec![usize::MAX; group.rank()];
                let mut next = 0;
                for (c, &n) in group.orders().iter().enumerate() {
                    if n > 1 {
                        slot_of[c] = next;
                        next += 1;
                    }
                }
                let mut entries = Vec::new();
                let mut odd_words = Vec::new();
                for b in group.primary_basis() {
                    let q = b.prime.pow(b.exponent) as u32;
                    let w = Word::of(&[(s.g(i, slot_of[b.factor]), b.element.exponents()[b.factor])]);
                    if b.prime == 2 {
                        entries.push((Factor::C { order: q, sign: Sign::Plus }, vec![w]));
                    } else {
                        odd_words.push(w);
                    }
                }
                if odd.cardinality() > 1 {
                    entries.push((Factor::RG { group: odd }, odd_words));
                }
                out.push(splice(s, RuleId::OddSplit, i, entries));
            }
            _ => {}
        }
    }
    out
}

/// Replaces factor `i` by several entries.
fn splice(s: &Scan, rule: RuleId, i: usize, replacement: Vec<Entry>) -> Candidate {
    let mut entries = s.identity();
    entries.splice(i..=i, replacement);
    Candidate { rule, position: i, entries }
}

fn swap(s: &Scan) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (i, f) in s.factors.iter().enumerate() {
        if let Factor::D { k_order, l_order, mu, nu } = *f {
            if k_order > l_order {
                let e = (d_factor(l_order, k_order, nu, mu), vec![Word::gen(s.g(i, 1)), Word::gen(s.g(i, 0))]);
                out.push(s.candidate(RuleId::Swap, i, vec![(i, e)]));
            }
        }
    }
    out
}

fn d22(s: &Scan) -> Vec<Candidate> {
    use Sign::*;
    let mut out = Vec::new();
    for (i, f) in s.factors.iter().enumerate() {
        if let Factor::D { k_order: 2, l_order: 2, mu, nu } = *f {
            let (u, v) = (s.g(i, 0), s.g(i, 1));
            let uv = Word::of(&[(u, 1), (v, 1)]);
            let words = match (mu, nu) {
                (Minus, Plus) => vec![uv, Word::gen(v)],
                (Plus, Minus) => vec![Word::gen(u), uv],
                _ => continue,
            };
            out.push(s.candidate(RuleId::D22, i, vec![(i, (d_factor(2, 2, Plus, Plus), words))]));
        }
    }
    out
}

fn is_h4(f: &Factor) -> bool {
    matches!(f, Factor::D { k_order: 2, l_order: 2, mu: Sign::Minus, nu: Sign::Minus })
}

fn hh(s: &Scan) -> Vec<Candidate> {
    let mut out = Vec::new();
    let h4: Vec<usize> = (0..s.factors.len()).filter(|&i| is_h4(&s.factors[i])).collect();
    for (a, &i) in h4.iter().enumerate() {
        for &j in &h4[a + 1..] {
            let (u, v, w, z) = (s.g(i, 0), s.g(i, 1), s.g(j, 0), s.g(j, 1));
            let m24 = d_factor(2, 2, Sign::Plus, Sign::Plus);
            let first = (m24.clone(), vec![Word::of(&[(u, 1), (w, 1)]), Word::of(&[(v, 1), (w, 1)])]);
            let second = (
                m24,
                vec![Word::of(&[(u, 1), (v, 1), (z, 1)]), Word::of(&[(u, 1), (v, 1), (w, 1), (z, 1)])],
            );
            out.push(s.candidate(RuleId::Hh, i, vec![(i, first), (j, second)]));
        }
    }
    out
}

fn lce(s: &Scan) -> Vec<Candidate> {
    let mut out = Vec::new();
    let cs = s.c_minus();
    for &(i, m) in &cs {
        for &(j, n) in &cs {
            if i != j && m <= n {
                let w = Word::of(&[(s.g(i, 0), 1), (s.g(j, 0), 1 << (n - m))]);
                let e = (Factor::C { order: 1 << m, sign: Sign::Plus }, vec![w]);
                out.push(s.candidate(RuleId::Lce, i, vec![(i, e)]));
            }
        }
    }
    out
}

fn cd(s: &Scan) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (c, m) in s.c_minus() {
        let w = s.g(c, 0);
        for x in s.odd_gens(true) {
            let xg = s.g(x.factor, x.slot);
            if x.exp <= m {
                let f = with_sign(&s.factors[x.factor], x.slot, Sign::Plus);
                let mut words = s.identity()[x.factor].1.clone();
                words[x.slot] = Word::of(&[(xg, 1), (w, 1 << (m - x.exp))]);
                out.push(s.candidate(RuleId::Cd, c, vec![(x.factor, (f, words))]));
            } else {
                let e = (
                    Factor::C { order: 1 << m, sign: Sign::Plus },
                    vec![Word::of(&[(xg, 1 << (x.exp - m)), (w, 1)])],
                );
                out.push(s.candidate(RuleId::Cd, c, vec![(c, e)]));
            }
        }
    }
    out
}

fn dd_consol(s: &Scan) -> Vec<Candidate> {
    let mut out = Vec::new();
    let odd = s.odd_gens(true);
    // (a) lift a lower odd generator by a power of a higher one.
    for x in &odd {
        for y in &odd {
            if x.factor != y.factor && y.exp > x.exp {
                let f = with_sign(&s.factors[x.factor], x.slot, Sign::Plus);
                let mut words = s.identity()[x.factor].1.clone();
                words[x.slot] = Word::of(&[(s.g(x.factor, x.slot), 1), (s.g(y.factor, y.slot), 1 << (y.exp - x.exp))]);
                out.push(s.candidate(RuleId::DdConsol, x.factor.min(y.factor), vec![(x.factor, (f, words))]));
            }
        }
    }
    // (b) equal odd degrees, one odd generator per factor: the factor with the smaller
    // even order (later on a tie) becomes even.
    let single: Vec<(usize, OddGen, u32)> = (0..s.factors.len())
        .filter_map(|i| {
            let mine: Vec<&OddGen> = odd.iter().filter(|o| o.factor == i).collect();
            match (&s.factors[i], mine.as_slice()) {
                (Factor::D { k_order, l_order, .. }, [o]) => {
                    let other = if o.slot == 0 { *l_order } else { *k_order };
                    Some((i, **o, log2(other)))
                }
                _ => None,
            }
        })
        .collect();
    for &(a, xa, ea) in &single {
        for &(b, xb, eb) in &single {
            if a == b || xa.exp != xb.exp || eb > ea || (eb == ea && b < a) {
                continue;
            }
            let (x, xp) = (s.g(a, xa.slot), s.g(a, 1 - xa.slot));
            let (y, yp) = (s.g(b, xb.slot), s.g(b, 1 - xb.slot));
            let mut wa = vec![Word::gen(s.g(a, 0)), Word::gen(s.g(a, 1))];
            wa[1 - xa.slot] = Word::of(&[(xp, 1), (yp, 1)]);
            let mut wb = vec![Word::gen(s.g(b, 0)), Word::gen(s.g(b, 1))];
            wb[xb.slot] = Word::of(&[(x, 1), (y, 1)]);
            let fb = with_sign(&with_sign(&s.factors[b], 0, Sign::Plus), 1, Sign::Plus);
            out.push(s.candidate(
                RuleId::DdConsol,
                a.min(b),
                vec![(a, (s.factors[a].clone(), wa)), (b, (fb, wb))],
            ));
        }
    }
    // (c) a quaternion factor next to [-1, l] with l ≥ 2.
    for (h, fh) in s.factors.iter().enumerate() {
        if !is_h4(fh) {
            continue;
        }
        for (d, fd) in s.factors.iter().enumerate() {
            if let Factor::D { k_order: 2, l_order, mu: Sign::Minus, nu: Sign::Plus } = *fd {
                if d == h || l_order < 4 {
                    continue;
                }
                let (u, v, w, z) = (s.g(d, 0), s.g(d, 1), s.g(h, 0), s.g(h, 1));
                let ed = (fd.clone(), vec![Word::gen(u), Word::of(&[(v, 1), (z, 1)])]);
                let eh = (
                    d_factor(2, 2, Sign::Plus, Sign::Minus),
                    vec![Word::of(&[(u, 1), (w, 1)]), Word::gen(z)],
                );
                out.push(s.candidate(RuleId::DdConsol, h.min(d), vec![(d, ed), (h, eh)]));
            }
        }
    }
    out
}

fn dsingle(s: &Scan) -> Vec<Candidate> {
    use Sign::*;
    let mut out = Vec::new();
    for (i, f) in s.factors.iter().enumerate() {
        let Factor::D { k_order, l_order, mu, nu } = *f else { continue };
        let (u, v) = (s.g(i, 0), s.g(i, 1));
        let (r, t) = (log2(k_order), log2(l_order));
        let e = if r == t && r >= 2 {
            match (mu, nu) {
                (Minus, Minus) => (d_factor(k_order, l_order, Minus, Plus), vec![Word::gen(u), Word::of(&[(u, 1), (v, 1)])]),
                (Plus, Minus) => (d_factor(k_order, l_order, Minus, Plus), vec![Word::gen(v), Word::gen(u)]),
                _ => continue,
            }
        } else if r < t && mu == Minus && nu == Minus {
            (d_factor(k_order, l_order, Plus, Minus), vec![Word::of(&[(u, 1), (v, 1 << (t - r))]), Word::gen(v)])
        } else {
            continue;
        };
        out.push(s.candidate(RuleId::DSingle, i, vec![(i, e)]));
    }
    out
}

/// Items of the J-factor table. The J factor is `(ρk]` with generators {J, u};
/// the partner is `[μ a, ν b]` with generators {v, w} or `[η m]` with {v}.
fn e_rule(s: &Scan, item: u8) -> Vec<Candidate> {
    use Sign::*;
    let mut out = Vec::new();
    let rule = RuleId::E(item);
    for (e, fe) in s.factors.iter().enumerate() {
        let Factor::E { order, sign: rho } = *fe else { continue };
        let k = log2(order);
        let u = s.g(e, 0);
        let ef = |sign: Sign| Factor::E { order, sign };
        for (i, fi) in s.factors.iter().enumerate() {
            if i == e {
                continue;
            }
            let edits: Vec<(usize, Entry)> = match (item, fi) {
                (1 | 2, Factor::C { order: co, sign: Minus }) if rho == Minus && is_power_of_two(*co as u64) => {
                    let l = log2(*co);
                    let v = s.g(i, 0);
                    if item == 1 && k <= l {
                        vec![(e, (ef(Plus), vec![Word::of(&[(u, 1), (v, 1 << (l - k))])]))]
                    } else if item == 2 && k > l {
                        let c = Factor::C { order: *co, sign: Plus };
                        vec![(i, (c, vec![Word::of(&[(u, 1 << (k - l)), (v, 1)])]))]
                    } else {
                        continue;
                    }
                }
                (3..=12, Factor::D { k_order, l_order, mu, nu }) => {
                    let (a, b) = (log2(*k_order), log2(*l_order));
                    let (v, w) = (s.g(i, 0), s.g(i, 1));
                    let d = |mu, nu| d_factor(*k_order, *l_order, mu, nu);
                    let same = || (fi.clone(), vec![Word::gen(v), Word::gen(w)]);
                    match item {
                        // (-k][l,-m], k < m
                        3 if rho == Minus && *mu == Plus && *nu == Minus && k < b => {
                            vec![(e, (ef(Plus), vec![Word::of(&[(u, 1), (w, 1 << (b - k))])]))]
                        }
                        // (-k][l,-m], k > m
                        4 if rho == Minus && *mu == Plus && *nu == Minus && k > b => vec![(
                            i,
                            (d(Plus, Plus), vec![Word::gen(v), Word::of(&[(u, 1 << (k - b)), (w, 1)])]),
                        )],
                        // (-k][l,-k], l ≥ 2
                        5 if rho == Minus && *mu == Plus && *nu == Minus && b == k && a >= 2 => vec![
                            (e, (ef(Plus), vec![Word::of(&[(u, 1), (w, 1)])])),
                            (i, (fi.clone(), vec![Word::gen(v).with_j(), Word::gen(w)])),
                        ],
                        // (-k][1,-k], k ≥ 2
                        6 if rho == Minus && *mu == Plus && *nu == Minus && b == k && a == 1 && k >= 2 => vec![
                            (e, (ef(Plus), vec![Word::of(&[(u, 1), (w, 1)])])),
                            (i, (fi.clone(), vec![Word::of(&[(v, 1), (w, 1 << (k - 1))]).with_j(), Word::gen(w)])),
                        ],
                        // (-k][-l,m], k > l
                        7 if rho == Minus && *mu == Minus && *nu == Plus && k > a => vec![(
                            i,
                            (d(Plus, Plus), vec![Word::of(&[(u, 1 << (k - a)), (v, 1)]), Word::gen(w)]),
                        )],
                        // (-k][-l,m], k < l, as printed
                        8 if rho == Minus && *mu == Minus && *nu == Plus && k < a => vec![
                            (e, (ef(Plus), vec![Word::of(&[(u, 1), (w, 1), (v, 1 << (a - k))])])),
                            (i, same()),
                        ],
                        // (-k][-k,m], m ≥ 2
                        9 if rho == Minus && *mu == Minus && *nu == Plus && a == k && b >= 2 => vec![
                            (e, (ef(Plus), vec![Word::of(&[(u, 1), (v, 1)])])),
                            (i, (fi.clone(), vec![Word::gen(v), Word::gen(w).with_j()])),
                        ],
                        // (ρk][-1,νl], l ≤ k
                        10 if a == 1 && *mu == Minus && b <= k => vec![
                            (e, (ef(rho), vec![Word::of(&[(u, 1), (w, 1)])])),
                            (i, (d(Plus, *nu), vec![Word::gen(v).with_j(), Word::gen(w)])),
                        ],
                        // (ρk][-1,-1], k ≥ 2
                        11 if is_h4(fi) && k >= 2 => vec![
                            (e, (ef(rho), vec![Word::of(&[(u, 1), (w, 1)])])),
                            (i, (d(Plus, Minus), vec![Word::gen(v).with_j(), Word::gen(w)])),
                        ],
                        // (ρ][-1,-1] → (-ρ][1,-1]
                        12 if is_h4(fi) && k == 1 => vec![
                            (e, (ef(rho.flip()), vec![Word::of(&[(u, 1), (w, 1)])])),
                            (i, (d(Plus, Minus), vec![Word::gen(v).with_j(), Word::gen(w)])),
                        ],
                        _ => continue,
                    }
                }
                _ => continue,
            };
            out.push(s.candidate(rule, e.min(i), edits));
        }
    }
    out
}

/// Builds the new presentation and checks the substitution.
fn realize(old: &[Factor], c: &Candidate) -> Result<Option<RuleApplication>> {
    let p = tensor_of(old)?;
    let factors: Vec<Factor> = c.entries.iter().map(|(f, _)| f.clone()).collect();
    let q = match tensor_of(&factors) {
        Ok(q) => q,
        Err(_) => return Ok(None),
    };
    let images = c
        .entries
        .iter()
        .flat_map(|(_, ws)| ws.iter())
        .map(|w| w.eval(&p))
        .collect::<Result<Vec<_>>>()?;
    if !verify_substitution(&p, &q, &images) {
        return Ok(None);
    }
    Ok(Some(RuleApplication { rule: c.rule, position: c.position, factors, images }))
}

/// The leftmost verified application of `rule`.
pub fn apply_rule(factors: &[Factor], rule: RuleId) -> Result<Option<RuleApplication>> {
    for c in candidates(rule, factors) {
        if let Some(app) = realize(factors, &c)? {
            return Ok(Some(app));
        }
    }
    Ok(None)
}

pub fn rewrite_step(factors: &[Factor], rule_id: &str) -> Result<Option<Vec<Factor>>> {
    let rule: RuleId = rule_id.parse()?;
    Ok(apply_rule(factors, rule)?.map(|a| a.factors))
}

// ---------------------------------------------------------------- normalize

fn sort_key(f: &Factor) -> (u8, Vec<u32>, Vec<bool>, String) {
    let m = |s: &Sign| s.is_minus();
    match f {
        Factor::H => (0, vec![], vec![], String::new()),
        Factor::E { order, sign } => (1, vec![*order], vec![m(sign)], String::new()),
        Factor::Pauli { beta } => (2, beta.orders().to_vec(), vec![], f.to_string()),
        Factor::CG { group } => (3, group.orders().to_vec(), vec![], String::new()),
        Factor::D { k_order, l_order, mu, nu } => (4, vec![*k_order, *l_order], vec![m(mu), m(nu)], String::new()),
        Factor::C { order, sign } => (5, vec![*order], vec![m(sign)], String::new()),
        Factor::RG { group } => (6, group.orders().to_vec(), vec![], String::new()),
    }
}

pub fn sort_factors(factors: &mut [Factor]) {
    factors.sort_by_cached_key(sort_key);
}

/// One step of a normalization trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: RuleId,
    pub position: usize,
    pub result: Vec<String>,
}

pub fn normalize(factors: &[Factor]) -> Result<CanonicalForm> {
    Ok(normalize_traced(factors)?.0)
}

pub fn normalize_traced(factors: &[Factor]) -> Result<(CanonicalForm, Vec<TraceStep>)> {
    let special = factors.iter().filter(|f| f.kind() != IdentityKind::OneDim).count();
    if special > 1 {
        return Err(Error::NotDivisionGrading("more than one factor with a larger identity component".into()));
    }
    let p = tensor_of(factors)?;
    if p.kind() == IdentityKind::CentralJ {
        return Ok((canonical_central(&p, DEFAULT_PAULI_BUDGET)?, Vec::new()));
    }
    let mut current = factors.to_vec();
    let mut trace = Vec::new();
    let rules = RuleId::all();
    'outer: for _ in 0..MAX_STEPS {
        sort_factors(&mut current);
        for &rule in &rules {
            if let Some(app) = apply_rule(&current, rule)? {
                current = app.factors;
                trace.push(TraceStep {
                    rule,
                    position: app.position,
                    result: current.iter().map(|f| f.to_string()).collect(),
                });
                continue 'outer;
            }
        }
        return Ok((assemble(&current)?, trace));
    }
    Err(Error::Normalization(format!("no fixpoint after {MAX_STEPS} steps")))
}

fn assemble(factors: &[Factor]) -> Result<CanonicalForm> {
    let stalled = |msg: String| Err(Error::Normalization(msg));
    let mut g_orders = Vec::new();
    let mut cneg = Vec::new();
    let mut chi = Vec::new();
    let mut h4 = 0;
    let mut e = None;
    let mut h = false;
    for f in factors {
        match f {
            Factor::C { order, sign } => {
                if !is_power_of_two(*order as u64) {
                    return stalled(format!("{f} has an odd part"));
                }
                if sign.is_minus() {
                    cneg.push(log2(*order));
                } else {
                    g_orders.push(*order);
                }
            }
            Factor::RG { group } => g_orders.extend(group.orders().iter().copied().filter(|&n| n > 1)),
            Factor::D { k_order, l_order, mu, nu } => {
                if is_h4(f) {
                    h4 += 1;
                } else {
                    let t = DTuple { k: log2(*k_order), l: log2(*l_order), mu: *mu, nu: *nu };
                    if t.k > t.l || (t.k == t.l && t.minus_count() > 0 && !(t.mu.is_minus() && t.k >= 2 && !t.nu.is_minus())) {
                        return stalled(format!("{f} is not in canonical slot form"));
                    }
                    chi.push(t);
                }
            }
            Factor::E { order, sign } => e = Some((log2(*order), *sign)),
            Factor::H => h = true,
            Factor::CG { .. } | Factor::Pauli { .. } => return stalled(format!("{f} outside the central case")),
        }
    }
    chi.sort();
    let group = FiniteAbelianGroup::from_orders(g_orders)?.canonical();
    let odd_marks: usize = chi.iter().map(|t| t.minus_count()).sum();
    if cneg.len() > 1 || h4 > 1 || odd_marks > 1 {
        return stalled(format!(
            "{} C(-) factors, {h4} quaternion factors, {odd_marks} odd marks remain",
            cneg.len()
        ));
    }
    let even = odd_marks == 0;
    let m = cneg.first().copied();
    let quat = h4 == 1;
    use CanonicalForm::*;
    let require = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::Normalization(what.to_string())) };
    Ok(match (e, h) {
        (None, false) => {
            if chi.is_empty() && !quat {
                match m {
                    Some(m) => CommCneg { m, group },
                    None => CommRg { group },
                }
            } else if let Some(m) = m {
                require(even && !quat, "C(-) with odd marks or a quaternion factor")?;
                Nc1Cneg { m, chi, group }
            } else if quat {
                require(even, "quaternion factor with an odd mark")?;
                Nc1Quat { chi, group }
            } else {
                Nc1Plain { chi, group }
            }
        }
        (None, true) => {
            if let Some(m) = m {
                require(even && !quat, "C(-) with odd marks or a quaternion factor")?;
                HCneg { chi, m, group }
            } else if quat {
                require(even, "quaternion factor with an odd mark")?;
                HQuat { chi, group }
            } else {
                HPlain { chi, group }
            }
        }
        (Some((k, rho)), false) => {
            require(!quat, "quaternion factor next to a J factor")?;
            if let Some(m) = m {
                require(!rho.is_minus() && even, "C(-) next to E(-) or odd marks")?;
                ECneg { k, chi, m, group }
            } else if rho.is_minus() {
                require(even, "E(-) with an odd mark")?;
                ENeg { k, chi, group }
            } else if even {
                EEven { k, chi, group }
            } else {
                let excluded = chi.iter().any(|t| t.k == 1 && t.mu.is_minus() && !t.nu.is_minus() && t.l <= k);
                require(!excluded, "excluded odd tuple next to a J factor")?;
                EOdd { k, chi, group }
            }
        }
        (Some(_), true) => return Err(Error::NotDivisionGrading("J and quaternion factors together".into())),
    })
}

// ---------------------------------------------------------------- central case

/// COMM_CG or the Pauli orbit representative of a presentation with central J.
pub fn canonical_central(p: &Presentation, budget: u64) -> Result<CanonicalForm> {
    let beta = p.beta_of()?;
    let g = p.group();
    let canon = g.canonical();
    if beta.is_trivial() {
        return Ok(CanonicalForm::CommCg { group: canon });
    }
    let basis = g.primary_basis();
    let e = g.exponent() as u32;
    let n = beta.modulus();
    let m: Vec<Vec<u32>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let v = beta.eval(&a.element, &b.element) as u64 * e as u64;
                    debug_assert_eq!(v % n as u64, 0);
                    (v / n as u64) as u32
                })
                .collect()
        })
        .collect();
    let rep = orbit_representative(&canon, &m, e, budget)?;
    Ok(CanonicalForm::Pauli { group: canon.clone(), beta: Bicharacter::new(canon.orders().to_vec(), e, rep)? })
}

/// Lex-minimal matrix of β∘(α×α) or its conjugate over α ∈ Aut G, comparing the
/// strict upper triangle column by column. `group` is in primary form with its
/// standard basis; `m` holds β on that basis over ζ_e.
pub fn orbit_representative(group: &FiniteAbelianGroup, m: &[Vec<u32>], e: u32, budget: u64) -> Result<Vec<Vec<u32>>> {
    let r = group.rank();
    if let Some(out) = elementary_representative(group, m, e) {
        return Ok(out);
    }
    let candidates: Vec<Vec<GroupElement>> = group
        .orders()
        .iter()
        .map(|&n| group.elements().filter(|g| group.element_order(g) == n as u64).collect())
        .collect();
    let mut search = OrbitSearch { group, m, e, candidates, best: None, nodes: 0, budget };
    for conj in [false, true] {
        let mut chosen = Vec::with_capacity(r);
        let mut prefix = Vec::new();
        search.dfs(conj, &Span::trivial(group), &mut chosen, &mut prefix)?;
    }
    let best = search.best.expect("the identity is an automorphism");
    let mut out = vec![vec![0u32; r]; r];
    let mut idx = 0;
    for j in 1..r {
        for i in 0..j {
            out[i][j] = best[idx];
            out[j][i] = (e - best[idx]) % e;
            idx += 1;
        }
    }
    Ok(out)
}

/// Over (Z_p)^r the orbit is fixed by the rank 2s of β, and its lex-minimum puts the
/// radical first and pairs the remaining basis vectors along the anti-diagonal.
fn elementary_representative(group: &FiniteAbelianGroup, m: &[Vec<u32>], e: u32) -> Option<Vec<Vec<u32>>> {
    let p = *group.orders().first()?;
    if group.orders().iter().any(|&n| n != p) || (2..p).any(|d| p % d == 0) || e % p != 0 {
        return None;
    }
    let step = e / p;
    let r = group.rank();
    let mut rows: Vec<Vec<u64>> = m.iter().map(|row| row.iter().map(|&v| (v / step) as u64).collect()).collect();
    let rank = rank_mod_p(&mut rows, p as u64);
    let radical = r - rank;
    let mut out = vec![vec![0u32; r]; r];
    for i in 0..rank / 2 {
        let (a, b) = (radical + i, r - 1 - i);
        out[a][b] = step;
        out[b][a] = e - step;
    }
    Some(out)
}

fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let inv = |a: u64| (1..p).find(|&x| a * x % p == 1).expect("p is prime");
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let f = inv(rows[rank][c] % p);
        for v in rows[rank].iter_mut() {
            *v = *v * f % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] % p != 0 {
                let k = rows[i][c] % p;
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (p - k) * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

struct OrbitSearch<'a> {
    group: &'a FiniteAbelianGroup,
    m: &'a [Vec<u32>],
    e: u32,
    candidates: Vec<Vec<GroupElement>>,
    best: Option<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl OrbitSearch<'_> {
    fn eval(&self, g: &GroupElement, h: &GroupElement) -> u32 {
        let e = self.e as u64;
        let mut acc = 0u64;
        for (a, &ga) in g.exponents().iter().enumerate() {
            if ga == 0 {
                continue;
            }
            for (b, &hb) in h.exponents().iter().enumerate() {
                acc = (acc + ga as u64 * hb as u64 % e * self.m[a][b] as u64) % e;
            }
        }
        acc as u32
    }

    fn dfs(&mut self, conj: bool, span: &Span, chosen: &mut Vec<GroupElement>, prefix: &mut Vec<u32>) -> Result<()> {
        let j = chosen.len();
        if j == self.group.rank() {
            if self.best.as_ref().map_or(true, |b| prefix[..] < b[..]) {
                self.best = Some(prefix.clone());
            }
            return Ok(());
        }
        // Candidates sorted by the column they would add; the best leaf then comes early
        // and the prefix bound cuts the rest.
        let mut cands: Vec<(Vec<u32>, GroupElement)> = self.candidates[j]
            .iter()
            .map(|h| {
                let col = chosen
                    .iter()
                    .map(|g| {
                        let v = self.eval(g, h);
                        if conj { (self.e - v) % self.e } else { v }
                    })
                    .collect();
                (col, h.clone())
            })
            .collect();
        cands.sort();
        for (col, h) in &cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(format!(
                    "Pauli orbit search over {} exceeded {} nodes",
                    self.group, self.budget
                )));
            }
            if let Some(b) = &self.best {
                let at = prefix.len();
                if col[..] > b[at..at + col.len()] && prefix[..] == b[..at] {
                    break;
                }
            }
            let Some(next) = span.extend(self.group, h, self.group.orders()[j]) else { continue };
            let len = prefix.len();
            prefix.extend_from_slice(col);
            let keep = match &self.best {
                Some(b) => prefix[..] <= b[..prefix.len()],
                None => true,
            };
            if keep {
                chosen.push(h.clone());
                self.dfs(conj, &next, chosen, prefix)?;
                chosen.pop();
            }
            prefix.truncate(len);
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- lemma table

/// Outcome of checking one rule's substitution over a parameter range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub rule: String,
    pub instances: usize,
    pub passed: usize,
    /// Instances whose substitution fails as stated.
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Instances covered by each rule over exponents 1..=max_exp.
pub fn lemma_instances(rule: RuleId, max_exp: u32) -> Vec<Vec<Factor>> {
    use Sign::*;
    let p = |e: u32| 1u32 << e;
    let c = |e: u32, s: Sign| Factor::C { order: p(e), sign: s };
    let d = |a: u32, b: u32, mu: Sign, nu: Sign| d_factor(p(a), p(b), mu, nu);
    let e = |k: u32, s: Sign| Factor::E { order: p(k), sign: s };
    let range = || 1..=max_exp;
    let signs = [Minus, Plus];
    let mut out = Vec::new();
    match rule {
        RuleId::OddSplit => {
            for o in [3u32, 5, 9] {
                for a in 0..=max_exp.min(3) {
                    for s in signs {
                        if a == 0 && s == Minus {
                            continue;
                        }
                        out.push(vec![Factor::C { order: o * p(a), sign: s }]);
                    }
                }
            }
            for orders in [vec![6u32], vec![2, 6], vec![12, 1, 5]] {
                out.push(vec![Factor::RG { group: FiniteAbelianGroup::from_orders(orders).expect("valid") }]);
            }
        }
        RuleId::Swap => {
            for a in range() {
                for b in 1..a {
                    for mu in signs {
                        for nu in signs {
                            out.push(vec![d(a, b, mu, nu)]);
                        }
                    }
                }
            }
        }
        RuleId::D22 => {
            out.push(vec![d(1, 1, Minus, Plus)]);
            out.push(vec![d(1, 1, Plus, Minus)]);
        }
        RuleId::Hh => out.push(vec![d(1, 1, Minus, Minus), d(1, 1, Minus, Minus)]),
        RuleId::Lce => {
            for m in range() {
                for n in m..=max_exp {
                    out.push(vec![c(m, Minus), c(n, Minus)]);
                }
            }
        }
        RuleId::Cd => {
            for m in range() {
                for a in range() {
                    for b in range() {
                        out.push(vec![d(a, b, Minus, Plus), c(m, Minus)]);
                        out.push(vec![d(a, b, Plus, Minus), c(m, Minus)]);
                    }
                }
            }
        }
        RuleId::DdConsol => {
            for a in range() {
                for b in range() {
                    for x in range() {
                        for y in range() {
                            out.push(vec![d(a, b, Minus, Plus), d(x, y, Minus, Plus)]);
                            out.push(vec![d(a, b, Plus, Minus), d(x, y, Minus, Plus)]);
                        }
                    }
                }
            }
            for l in 2..=max_exp {
                out.push(vec![d(1, 1, Minus, Minus), d(1, l, Minus, Plus)]);
            }
        }
        RuleId::DSingle => {
            for r in range() {
                for t in r..=max_exp {
                    for mu in signs {
                        for nu in signs {
                            out.push(vec![d(r, t, mu, nu)]);
                        }
                    }
                }
            }
        }
        RuleId::E(item) => {
            for k in range() {
                match item {
                    1 | 2 => {
                        for l in range() {
                            if (item == 1) == (k <= l) {
                                out.push(vec![e(k, Minus), c(l, Minus)]);
                            }
                        }
                    }
                    3 | 4 => {
                        for l in range() {
                            for m in range() {
                                if (item == 3 && k < m) || (item == 4 && k > m) {
                                    out.push(vec![e(k, Minus), d(l, m, Plus, Minus)]);
                                }
                            }
                        }
                    }
                    5 => {
                        for l in 2..=max_exp {
                            out.push(vec![e(k, Minus), d(l, k, Plus, Minus)]);
                        }
                    }
                    6 if k >= 2 => out.push(vec![e(k, Minus), d(1, k, Plus, Minus)]),
                    7 | 8 => {
                        for l in range() {
                            for m in range() {
                                if (item == 7 && k > l) || (item == 8 && k < l) {
                                    out.push(vec![e(k, Minus), d(l, m, Minus, Plus)]);
                                }
                            }
                        }
                    }
                    9 => {
                        for m in 2..=max_exp {
                            out.push(vec![e(k, Minus), d(k, m, Minus, Plus)]);
                        }
                    }
                    10 => {
                        for l in 1..=k {
                            for rho in signs {
                                for nu in signs {
                                    out.push(vec![e(k, rho), d(1, l, Minus, nu)]);
                                }
                            }
                        }
                    }
                    11 if k >= 2 => {
                        for rho in signs {
                            out.push(vec![e(k, rho), d(1, 1, Minus, Minus)]);
                        }
                    }
                    12 if k == 1 => {
                        for rho in signs {
                            out.push(vec![e(k, rho), d(1, 1, Minus, Minus)]);
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// Checks every candidate substitution of every rule over its parameter range.
pub fn verify_lemmas(max_exp: u32) -> Result<Vec<LemmaReport>> {
    let mut reports = Vec::new();
    for rule in RuleId::all() {
        let mut report = LemmaReport { rule: rule.name(), instances: 0, passed: 0, failures: Vec::new() };
        for inst in lemma_instances(rule, max_exp) {
            for c in candidates(rule, &inst) {
                report.instances += 1;
                if realize(&inst, &c)?.is_some() {
                    report.passed += 1;
                } else {
                    let text: Vec<String> = inst.iter().map(|f| f.to_string()).collect();
                    report.failures.push(text.join(" * "));
                }
            }
        }
        reports.push(report);
    }
    Ok(reports)
}
