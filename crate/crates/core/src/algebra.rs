//! Presentations of graded division algebras and exact unit-monomial arithmetic.
//!
//! Every presentation is a twisted group algebra over its identity component:
//! generator `i` has degree `e_i` (the i-th declared cyclic factor), so the
//! group orders and the generator orders coincide.
//!
//! Coefficients are powers of ζ_N. In the kinds with a J element, J = ζ_N^{N/4},
//! so a coefficient exponent `t` already encodes the J part; [`UnitMonomial::j_exponent`]
//! recovers the split used for printing. Quaternion units are kept separately
//! with their sign folded into the ζ exponent.
//!
//! Normal order is coefficient, then quaternion unit, then `x1^e1 … xr^er`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{lcm, FiniteAbelianGroup, GroupElement, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityKind {
    OneDim,
    CentralJ,
    NoncentralJ,
    Quaternion,
}

impl IdentityKind {
    pub fn identity_dim(self) -> u32 {
        match self {
            IdentityKind::OneDim => 1,
            IdentityKind::CentralJ | IdentityKind::NoncentralJ => 2,
            IdentityKind::Quaternion => 4,
        }
    }

    pub fn has_j(self) -> bool {
        matches!(self, IdentityKind::CentralJ | IdentityKind::NoncentralJ)
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::OneDim => "ONE_DIM",
            IdentityKind::CentralJ => "CENTRAL_J",
            IdentityKind::NoncentralJ => "NONCENTRAL_J",
            IdentityKind::Quaternion => "QUATERNION",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {v}"))),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// The ζ_N exponent of this sign.
    pub fn exponent(self, n: u32) -> u32 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => n / 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuatUnit {
    One,
    I,
    J,
    K,
}

impl QuatUnit {
    pub const ALL: [QuatUnit; 4] = [QuatUnit::One, QuatUnit::I, QuatUnit::J, QuatUnit::K];

    /// (negated, unit) with a·b = ±unit.
    pub fn mul(self, other: QuatUnit) -> (bool, QuatUnit) {
        use QuatUnit::*;
        match (self, other) {
            (One, x) | (x, One) => (false, x),
            (I, I) | (J, J) | (K, K) => (true, One),
            (I, J) => (false, K),
            (J, K) => (false, I),
            (K, I) => (false, J),
            (J, I) => (true, K),
            (K, J) => (true, I),
            (I, K) => (true, J),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            QuatUnit::One => "1",
            QuatUnit::I => "i",
            QuatUnit::J => "j",
            QuatUnit::K => "k",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub degree: GroupElement,
    /// x^order = power_sign · I
    pub order: u32,
    pub power_sign: Sign,
    /// x_i x_j = ζ_N^{commutation[j]} x_j x_i
    pub commutation: Vec<u32>,
    pub anticommutes_with_j: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    group: FiniteAbelianGroup,
    generators: Vec<Generator>,
    root_order: u32,
    kind: IdentityKind,
}

/// A homogeneous basis element up to positive real scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitMonomial {
    /// Exponent of ζ_N.
    pub coeff: u32,
    pub quat: QuatUnit,
    pub gens: Vec<u32>,
}

/// Commutation factors β(g,h) = ζ_N^{Σ g_i h_j b_ij} over declared generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bicharacter {
    orders: Vec<u32>,
    modulus: u32,
    matrix: Vec<Vec<u32>>,
}

impl Bicharacter {
    pub fn new(orders: Vec<u32>, modulus: u32, matrix: Vec<Vec<u32>>) -> Result<Bicharacter> {
        let r = orders.len();
        if modulus == 0 {
            return Err(Error::InvalidBicharacter("modulus must be positive".into()));
        }
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidBicharacter(format!("expected a {r}x{r} exponent matrix")));
        }
        let m = modulus as u64;
        for i in 0..r {
            if matrix[i][i] % modulus != 0 {
                return Err(Error::InvalidBicharacter(format!("diagonal entry {i} is not 0")));
            }
            for j in 0..r {
                if (matrix[i][j] as u64 + matrix[j][i] as u64) % m != 0 {
                    return Err(Error::InvalidBicharacter(format!("entries ({i},{j}) and ({j},{i}) do not cancel")));
                }
                if (orders[i] as u64 * matrix[i][j] as u64) % m != 0 {
                    return Err(Error::InvalidBicharacter(format!(
                        "entry ({i},{j}) is incompatible with generator order {}",
                        orders[i]
                    )));
                }
            }
        }
        let matrix = matrix.into_iter().map(|row| row.into_iter().map(|v| v % modulus).collect()).collect();
        Ok(Bicharacter { orders, modulus, matrix })
    }

    pub fn trivial(orders: Vec<u32>) -> Bicharacter {
        let r = orders.len();
        Bicharacter { orders, modulus: 2, matrix: vec![vec![0; r]; r] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_orders(self.orders.clone()).expect("orders validated")
    }

    /// Exponent of β(g,h) in Z_modulus.
    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> u32 {
        let m = self.modulus as u64;
        let mut acc = 0u64;
        for (i, &gi) in g.exponents().iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for (j, &hj) in h.exponents().iter().enumerate() {
                acc = (acc + gi as u64 * hj as u64 % m * self.matrix[i][j] as u64) % m;
            }
        }
        acc as u32
    }

    pub fn conjugate(&self) -> Bicharacter {
        let m = self.modulus;
        Bicharacter {
            orders: self.orders.clone(),
            modulus: m,
            matrix: self.matrix.iter().map(|row| row.iter().map(|&v| (m - v) % m).collect()).collect(),
        }
    }

    /// Same bicharacter with exponents over ζ_{new_modulus}; `new_modulus` must be a multiple.
    pub fn rebased(&self, new_modulus: u32) -> Bicharacter {
        assert_eq!(new_modulus % self.modulus, 0);
        let f = new_modulus / self.modulus;
        Bicharacter {
            orders: self.orders.clone(),
            modulus: new_modulus,
            matrix: self.matrix.iter().map(|row| row.iter().map(|&v| v * f).collect()).collect(),
        }
    }

    /// Same bicharacter over ζ_E, E the exponent of the group.
    pub fn reduced(&self) -> Bicharacter {
        let e = self.group().exponent();
        let m = self.modulus as u64;
        Bicharacter {
            orders: self.orders.clone(),
            modulus: e as u32,
            // n_i·b ≡ 0 (mod m) and n_i | e make b·e/m integral.
            matrix: self.matrix.iter().map(|row| row.iter().map(|&v| (v as u64 * e / m) as u32).collect()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.matrix.iter().flatten().all(|&v| v == 0)
    }

    /// |{g : β(g,·) ≡ 1}|.
    pub fn radical_size(&self) -> u64 {
        let g = self.group();
        let gens: Vec<GroupElement> = (0..g.rank()).map(|i| g.basis(i)).collect();
        g.elements().filter(|x| gens.iter().all(|e| self.eval(x, e) == 0)).count() as u64
    }
}

impl UnitMonomial {
    /// J exponent of the printed split `zeta^t J^j`; meaningful for kinds with J.
    pub fn j_exponent(&self, root_order: u32) -> u32 {
        let half = root_order / 2;
        let quarter = root_order / 4;
        u32::from(quarter > 0 && root_order % 4 == 0 && self.coeff % half >= quarter)
    }
}

impl Presentation {
    /// Generator `i` gets degree `e_i` in `Z_{orders[0]} × … `.
    pub fn new(
        kind: IdentityKind,
        root_order: u32,
        orders: Vec<u32>,
        signs: Vec<Sign>,
        commutation: Vec<Vec<u32>>,
        j_flags: Vec<bool>,
    ) -> Result<Presentation> {
        let r = orders.len();
        if signs.len() != r || commutation.len() != r || j_flags.len() != r {
            return Err(Error::InvalidPresentation("generator data lengths differ".into()));
        }
        if orders.iter().any(|&n| n < 2) {
            return Err(Error::InvalidPresentation("generator orders must be at least 2".into()));
        }
        let group = FiniteAbelianGroup::from_orders(orders.clone())?;
        let generators = (0..r)
            .map(|i| Generator {
                degree: group.basis(i),
                order: orders[i],
                power_sign: signs[i],
                commutation: commutation[i].clone(),
                anticommutes_with_j: j_flags[i],
            })
            .collect();
        let p = Presentation { group, generators, root_order, kind };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let n = self.root_order;
        let bad = |msg: String| Err(Error::InvalidPresentation(msg));
        if n < 2 || n % 2 != 0 {
            return bad(format!("root order {n} must be even and at least 2"));
        }
        match self.kind {
            IdentityKind::OneDim | IdentityKind::Quaternion if n != 2 => {
                return bad(format!("{} presentations use root order 2", self.kind.name()));
            }
            IdentityKind::CentralJ | IdentityKind::NoncentralJ if n % 4 != 0 => {
                return bad("presentations with J need a root order divisible by 4".into());
            }
            _ => {}
        }
        let r = self.generators.len();
        for (i, g) in self.generators.iter().enumerate() {
            if g.commutation.len() != r {
                return bad(format!("commutation row {i} has the wrong length"));
            }
            if g.commutation[i] % n != 0 {
                return bad(format!("generator {i} must commute with itself"));
            }
            for j in 0..r {
                let (a, b) = (g.commutation[j], self.generators[j].commutation[i]);
                if a >= n || (a + b) % n != 0 {
                    return bad(format!("commutation exponents ({i},{j}) are not alternating mod {n}"));
                }
                if (g.order as u64 * a as u64) % n as u64 != 0 {
                    return bad(format!("x{}^{} must be central, but ({i},{j}) has exponent {a}", i + 1, g.order));
                }
                if self.kind != IdentityKind::CentralJ && a % (n / 2) != 0 {
                    return bad(format!("commutation ({i},{j}) must be a sign for {}", self.kind.name()));
                }
            }
            match self.kind {
                IdentityKind::NoncentralJ => {
                    if g.anticommutes_with_j && g.order % 2 != 0 {
                        return bad(format!("generator {i} anticommutes with J but has odd order"));
                    }
                }
                _ if g.anticommutes_with_j => {
                    return bad(format!("generator {i} anticommutes with J in a {} presentation", self.kind.name()));
                }
                _ => {}
            }
        }
        if self.kind == IdentityKind::NoncentralJ && !self.generators.iter().any(|g| g.anticommutes_with_j) {
            return bad("NONCENTRAL_J needs a generator anticommuting with J".into());
        }
        Ok(())
    }

    /// The real numbers: trivially graded, one-dimensional.
    pub fn real() -> Presentation {
        Presentation { group: FiniteAbelianGroup::trivial(), generators: Vec::new(), root_order: 2, kind: IdentityKind::OneDim }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn kind(&self) -> IdentityKind {
        self.kind
    }

    /// Per-generator anticommutation with J, when J exists.
    pub fn j_commutation(&self) -> Option<Vec<bool>> {
        self.kind.has_j().then(|| self.generators.iter().map(|g| g.anticommutes_with_j).collect())
    }

    pub fn dimension(&self) -> u64 {
        self.group.cardinality() * self.kind.identity_dim() as u64
    }

    pub fn identity_component_dim(&self) -> (u32, IdentityKind) {
        (self.kind.identity_dim(), self.kind)
    }

    /// Same algebra with coefficients over ζ_M, M a multiple of the current root order.
    pub fn with_root_order(&self, m: u32) -> Result<Presentation> {
        if m % self.root_order != 0 {
            return Err(Error::InvalidPresentation(format!("{m} is not a multiple of {}", self.root_order)));
        }
        let f = m / self.root_order;
        let mut p = self.clone();
        p.root_order = m;
        for g in &mut p.generators {
            for c in &mut g.commutation {
                *c *= f;
            }
        }
        p.validate()?;
        Ok(p)
    }

    pub fn tensor(&self, other: &Presentation) -> Result<Presentation> {
        use IdentityKind::*;
        let kind = match (self.kind, other.kind) {
            (OneDim, k) | (k, OneDim) => k,
            (a, b) => {
                return Err(Error::NotDivisionGrading(format!(
                    "identity components of {} and {} are both larger than R",
                    a.name(),
                    b.name()
                )))
            }
        };
        let n = lcm(self.root_order as u64, other.root_order as u64) as u32;
        let (f1, f2) = (n / self.root_order, n / other.root_order);
        let r1 = self.rank();
        let r2 = other.rank();
        let group = self.group.product(&other.group);
        let mut generators = Vec::with_capacity(r1 + r2);
        for (i, g) in self.generators.iter().chain(&other.generators).enumerate() {
            let (f, offset_self) = if i < r1 { (f1, true) } else { (f2, false) };
            let mut commutation = vec![0; r1 + r2];
            let range = if offset_self { 0..r1 } else { r1..r1 + r2 };
            for (j, c) in range.zip(&g.commutation) {
                commutation[j] = c * f;
            }
            generators.push(Generator {
                degree: group.basis(i),
                order: g.order,
                power_sign: g.power_sign,
                commutation,
                anticommutes_with_j: g.anticommutes_with_j,
            });
        }
        let p = Presentation { group, generators, root_order: n, kind };
        p.validate()?;
        Ok(p)
    }

    pub fn identity_monomial(&self) -> UnitMonomial {
        UnitMonomial { coeff: 0, quat: QuatUnit::One, gens: vec![0; self.rank()] }
    }

    pub fn scalar(&self, coeff: u32) -> UnitMonomial {
        UnitMonomial { coeff: coeff % self.root_order, ..self.identity_monomial() }
    }

    pub fn sign_scalar(&self, s: Sign) -> UnitMonomial {
        self.scalar(s.exponent(self.root_order))
    }

    pub fn generator(&self, i: usize) -> UnitMonomial {
        let mut m = self.identity_monomial();
        m.gens[i] = 1;
        m
    }

    pub fn j_unit(&self) -> Result<UnitMonomial> {
        if !self.kind.has_j() {
            return Err(Error::UnsupportedKind { op: "j_unit", kind: self.kind });
        }
        Ok(self.scalar(self.root_order / 4))
    }

    pub fn quat_unit(&self, q: QuatUnit) -> Result<UnitMonomial> {
        if self.kind != IdentityKind::Quaternion && q != QuatUnit::One {
            return Err(Error::UnsupportedKind { op: "quat_unit", kind: self.kind });
        }
        Ok(UnitMonomial { quat: q, ..self.identity_monomial() })
    }

    /// x1^g1 … xr^gr with coefficient 1.
    pub fn monomial_of_degree(&self, g: &GroupElement) -> UnitMonomial {
        UnitMonomial { coeff: 0, quat: QuatUnit::One, gens: g.exponents().to_vec() }
    }

    /// x1^e1 … xr^er for arbitrary integer exponents, reduced with the power relations.
    pub fn word(&self, exps: &[i64]) -> UnitMonomial {
        let mut acc = self.identity_monomial();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let n = self.generators[i].order as i64;
            let mut p = self.power(&self.generator(i), e.rem_euclid(n) as u64);
            // x^e = (x^n)^q x^r and x^n = ±I
            if e.div_euclid(n).rem_euclid(2) == 1 {
                p = self.mul(&self.sign_scalar(self.generators[i].power_sign), &p);
            }
            acc = self.mul(&acc, &p);
        }
        acc
    }

    pub fn is_valid_monomial(&self, m: &UnitMonomial) -> bool {
        m.coeff < self.root_order
            && m.gens.len() == self.rank()
            && m.gens.iter().zip(&self.generators).all(|(&e, g)| e < g.order)
            && (self.kind == IdentityKind::Quaternion || m.quat == QuatUnit::One)
    }

    pub fn degree(&self, m: &UnitMonomial) -> GroupElement {
        GroupElement::new(m.gens.clone())
    }

    /// Whether the generator part anticommutes with J.
    pub fn j_parity(&self, m: &UnitMonomial) -> bool {
        m.gens
            .iter()
            .zip(&self.generators)
            .filter(|(_, g)| g.anticommutes_with_j)
            .map(|(&e, _)| e)
            .sum::<u32>()
            % 2
            == 1
    }

    /// Degree-only parity, for scanning components.
    pub fn degree_j_parity(&self, g: &GroupElement) -> bool {
        g.exponents()
            .iter()
            .zip(&self.generators)
            .filter(|(_, gen)| gen.anticommutes_with_j)
            .map(|(&e, _)| e)
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn mul(&self, a: &UnitMonomial, b: &UnitMonomial) -> UnitMonomial {
        let n = self.root_order as u64;
        let b_coeff = if self.kind == IdentityKind::NoncentralJ && self.j_parity(a) {
            (n - b.coeff as u64) % n
        } else {
            b.coeff as u64
        };
        let mut coeff = a.coeff as u64 + b_coeff;
        let (neg, quat) = a.quat.mul(b.quat);
        if neg {
            coeff += n / 2;
        }
        let r = self.rank();
        // x^a x^b = ζ^{Σ_{i>j} c_ij a_i b_j} x^{a+b}
        for j in 0..r {
            if b.gens[j] == 0 {
                continue;
            }
            for i in j + 1..r {
                if a.gens[i] != 0 {
                    let c = self.generators[i].commutation[j] as u64;
                    coeff += c * (a.gens[i] as u64 * b.gens[j] as u64 % n);
                }
            }
        }
        let mut gens = Vec::with_capacity(r);
        for (i, g) in self.generators.iter().enumerate() {
            let s = a.gens[i] + b.gens[i];
            if s >= g.order {
                gens.push(s - g.order);
                coeff += g.power_sign.exponent(self.root_order) as u64;
            } else {
                gens.push(s);
            }
        }
        UnitMonomial { coeff: (coeff % n) as u32, quat, gens }
    }

    pub fn power(&self, m: &UnitMonomial, mut p: u64) -> UnitMonomial {
        let mut acc = self.identity_monomial();
        let mut base = m.clone();
        while p > 0 {
            if p & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            p >>= 1;
            if p > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_scalar(&self, m: &UnitMonomial) -> bool {
        m.quat == QuatUnit::One && m.gens.iter().all(|&e| e == 0)
    }

    /// Whether `a` and `b` commute exactly.
    pub fn commute(&self, a: &UnitMonomial, b: &UnitMonomial) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Degrees whose component holds a nonzero central element.
    pub fn center_support(&self) -> Result<Subgroup> {
        let beta = self.beta_of().map_err(|_| Error::UnsupportedKind { op: "center_support", kind: self.kind })?;
        let g = &self.group;
        let gens: Vec<GroupElement> = (0..g.rank()).map(|i| g.basis(i)).collect();
        let members = g.elements().map(|x| gens.iter().all(|e| beta.eval(&x, e) == 0)).collect();
        Ok(Subgroup::from_members(g.clone(), members))
    }

    pub fn beta_of(&self) -> Result<Bicharacter> {
        if !matches!(self.kind, IdentityKind::OneDim | IdentityKind::CentralJ) {
            return Err(Error::UnsupportedKind { op: "beta_of", kind: self.kind });
        }
        let matrix = self.generators.iter().map(|g| g.commutation.clone()).collect();
        Bicharacter::new(self.group.orders().to_vec(), self.root_order, matrix)
    }

    pub fn format_monomial(&self, m: &UnitMonomial) -> String {
        let mut out = String::new();
        let n = self.root_order;
        if self.kind.has_j() {
            let j = m.j_exponent(n);
            let t = (m.coeff + n - j * n / 4) % n;
            out.push_str(&format!("zeta^{t}*J^{j}"));
        } else {
            out.push_str(&format!("zeta^{}", m.coeff));
        }
        if self.kind == IdentityKind::Quaternion {
            out.push_str(&format!("*q^{}", m.quat.symbol()));
        }
        out.push('*');
        if m.gens.is_empty() {
            out.push('1');
        }
        for (i, e) in m.gens.iter().enumerate() {
            out.push_str(&format!("x{}^{}", i + 1, e));
        }
        out
    }

    pub fn parse_monomial(&self, s: &str) -> Result<UnitMonomial> {
        let err = |msg: &str| Error::Syntax { pos: 0, msg: format!("monomial `{s}`: {msg}") };
        let parts: Vec<&str> = s.split('*').collect();
        let mut it = parts.iter();
        let n = self.root_order;
        let t: u32 = it
            .next()
            .and_then(|p| p.strip_prefix("zeta^"))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err("expected zeta^t"))?;
        let mut coeff = t % n;
        if self.kind.has_j() {
            let j: u32 = it
                .next()
                .and_then(|p| p.strip_prefix("J^"))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err("expected J^j"))?;
            coeff = (coeff + j * n / 4) % n;
        }
        let mut quat = QuatUnit::One;
        if self.kind == IdentityKind::Quaternion {
            let q = it.next().and_then(|p| p.strip_prefix("q^")).ok_or_else(|| err("expected q^u"))?;
            quat = QuatUnit::ALL.into_iter().find(|u| u.symbol() == q).ok_or_else(|| err("bad quaternion unit"))?;
        }
        let body = it.next().ok_or_else(|| err("missing generator part"))?;
        let mut gens = vec![0; self.rank()];
        if *body != "1" {
            for (i, chunk) in body.split('x').skip(1).enumerate() {
                let (idx, e) = chunk.split_once('^').ok_or_else(|| err("expected xi^e"))?;
                let idx: usize = idx.parse().map_err(|_| err("bad generator index"))?;
                if idx != i + 1 || i >= gens.len() {
                    return Err(err("generators must appear in declared order"));
                }
                gens[i] = e.parse().map_err(|_| err("bad exponent"))?;
            }
        }
        let m = UnitMonomial { coeff, quat, gens };
        if !self.is_valid_monomial(&m) {
            return Err(err("out of range"));
        }
        Ok(m)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {} (zeta_{})", self.kind.name(), self.group, self.root_order)?;
        for (i, g) in self.generators.iter().enumerate() {
            write!(f, "; x{}^{}={}", i + 1, g.order, g.power_sign.symbol())?;
            if g.anticommutes_with_j {
                write!(f, " Jx{}=-x{}J", i + 1, i + 1)?;
            }
            for (j, &c) in g.commutation.iter().enumerate().skip(i + 1) {
                if c != 0 {
                    write!(f, " x{}x{}=zeta^{}x{}x{}", i + 1, j + 1, c, j + 1, i + 1)?;
                }
            }
        }
        Ok(())
    }
}
