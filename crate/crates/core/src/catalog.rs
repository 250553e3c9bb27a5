//! Basic algebras, named gradings and Pauli gradings.
//!
//! A [`Factor`] is the symbolic description normalization works on; every
//! factor also has a concrete [`Presentation`]. Orders inside factors are actual
//! cyclic orders (`D(2,4;…)` has generators of orders 2 and 4).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bicharacter, IdentityKind, Presentation, Sign};
use crate::error::{Error, Result};
use crate::group::{is_power_of_two, lcm, FiniteAbelianGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "factor")]
pub enum Factor {
    /// x^order = sign
    C { order: u32, sign: Sign },
    /// u^k_order = mu, v^l_order = nu, uv = -vu
    D { k_order: u32, l_order: u32, mu: Sign, nu: Sign },
    /// J² = -1, v^order = sign, Jv = -vJ
    E { order: u32, sign: Sign },
    H,
    RG { group: FiniteAbelianGroup },
    CG { group: FiniteAbelianGroup },
    Pauli { beta: Bicharacter },
}

/// Raised when a constructor silently adjusts its input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Notice(pub String);

fn check_two_power(what: &str, n: u32) -> Result<()> {
    if n < 2 || !is_power_of_two(n as u64) {
        return Err(Error::InvalidParameter(format!("{what}: {n} is not a power of 2 at least 2")));
    }
    Ok(())
}

impl Factor {
    /// C(m;η); odd m with η = -1 becomes η = +1 (replace x by -x).
    pub fn c(order: u32, sign: Sign) -> Result<(Factor, Option<Notice>)> {
        if order < 2 {
            return Err(Error::InvalidParameter(format!("C: order {order} must be at least 2")));
        }
        if order % 2 == 1 && sign.is_minus() {
            let note = Notice(format!("C({order};-) has odd order; replaced by C({order};+)"));
            return Ok((Factor::C { order, sign: Sign::Plus }, Some(note)));
        }
        Ok((Factor::C { order, sign }, None))
    }

    /// D(k,ℓ;μ,ν) with k ≤ ℓ after swapping.
    pub fn d(k_order: u32, l_order: u32, mu: Sign, nu: Sign) -> Result<Factor> {
        check_two_power("D", k_order)?;
        check_two_power("D", l_order)?;
        if k_order > l_order {
            return Ok(Factor::D { k_order: l_order, l_order: k_order, mu: nu, nu: mu });
        }
        Ok(Factor::D { k_order, l_order, mu, nu })
    }

    pub fn e(order: u32, sign: Sign) -> Result<Factor> {
        check_two_power("E", order)?;
        Ok(Factor::E { order, sign })
    }

    pub fn kind(&self) -> IdentityKind {
        match self {
            Factor::C { .. } | Factor::D { .. } | Factor::RG { .. } => IdentityKind::OneDim,
            Factor::E { .. } => IdentityKind::NoncentralJ,
            Factor::H => IdentityKind::Quaternion,
            Factor::CG { .. } | Factor::Pauli { .. } => IdentityKind::CentralJ,
        }
    }

    pub fn group(&self) -> FiniteAbelianGroup {
        match self {
            Factor::C { order, .. } | Factor::E { order, .. } => FiniteAbelianGroup::cyclic(*order),
            Factor::D { k_order, l_order, .. } => {
                FiniteAbelianGroup::from_orders(vec![*k_order, *l_order]).expect("orders checked")
            }
            Factor::H => FiniteAbelianGroup::trivial(),
            Factor::RG { group } | Factor::CG { group } => group.clone(),
            Factor::Pauli { beta } => beta.group(),
        }
    }

    pub fn dimension(&self) -> u64 {
        self.group().cardinality() * self.kind().identity_dim() as u64
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        use IdentityKind::*;
        match self {
            Factor::C { order, sign } => {
                Presentation::new(OneDim, 2, vec![*order], vec![*sign], vec![vec![0]], vec![false])
            }
            Factor::D { k_order, l_order, mu, nu } => Presentation::new(
                OneDim,
                2,
                vec![*k_order, *l_order],
                vec![*mu, *nu],
                vec![vec![0, 1], vec![1, 0]],
                vec![false, false],
            ),
            Factor::E { order, sign } => {
                Presentation::new(NoncentralJ, 4, vec![*order], vec![*sign], vec![vec![0]], vec![true])
            }
            Factor::H => Presentation::new(Quaternion, 2, vec![], vec![], vec![], vec![]),
            Factor::RG { group } => {
                let orders: Vec<u32> = group.orders().iter().copied().filter(|&n| n > 1).collect();
                let r = orders.len();
                Presentation::new(OneDim, 2, orders, vec![Sign::Plus; r], vec![vec![0; r]; r], vec![false; r])
            }
            Factor::CG { group } => {
                let orders: Vec<u32> = group.orders().iter().copied().filter(|&n| n > 1).collect();
                let r = orders.len();
                Presentation::new(CentralJ, 4, orders, vec![Sign::Plus; r], vec![vec![0; r]; r], vec![false; r])
            }
            Factor::Pauli { beta } => {
                let keep: Vec<usize> = (0..beta.orders().len()).filter(|&i| beta.orders()[i] > 1).collect();
                let n = lcm(4, beta.modulus() as u64) as u32;
                let f = n / beta.modulus();
                let orders = keep.iter().map(|&i| beta.orders()[i]).collect();
                let comm = keep.iter().map(|&i| keep.iter().map(|&j| beta.matrix()[i][j] * f).collect()).collect();
                Presentation::new(CentralJ, n, orders, vec![Sign::Plus; keep.len()], comm, vec![false; keep.len()])
            }
        }
    }

    /// Orders are actual orders; signs are `+`/`-`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::C { order, sign } => write!(f, "C({order};{})", sign.symbol()),
            Factor::D { k_order, l_order, mu, nu } => {
                write!(f, "D({k_order},{l_order};{},{})", mu.symbol(), nu.symbol())
            }
            Factor::E { order, sign } => write!(f, "E({order};{})", sign.symbol()),
            Factor::H => write!(f, "H"),
            Factor::RG { group } => write!(f, "R[{group}]"),
            Factor::CG { group } => write!(f, "CG[{group}]"),
            Factor::Pauli { beta } => {
                let b = beta.reduced();
                write!(f, "Pauli({}", b.group())?;
                for row in b.matrix() {
                    let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    write!(f, "; {}", cells.join(","))?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Tensor product of the factors' presentations, in list order.
pub fn tensor_of(factors: &[Factor]) -> Result<Presentation> {
    let mut acc = Presentation::real();
    for f in factors {
        acc = acc.tensor(&f.to_presentation()?)?;
    }
    Ok(acc)
}

pub fn basic_c(m: u32, eta: Sign) -> Result<Presentation> {
    Factor::c(m, eta)?.0.to_presentation()
}

pub fn basic_d(k_order: u32, l_order: u32, mu: Sign, nu: Sign) -> Result<Presentation> {
    Factor::d(k_order, l_order, mu, nu)?.to_presentation()
}

pub fn basic_e(n_order: u32, eps: Sign) -> Result<Presentation> {
    Factor::e(n_order, eps)?.to_presentation()
}

pub fn quaternion() -> Presentation {
    Factor::H.to_presentation().expect("fixed presentation")
}

pub fn group_algebra(g: &FiniteAbelianGroup) -> Presentation {
    Factor::RG { group: g.clone() }.to_presentation().expect("group algebra")
}

pub fn complex_group_algebra(g: &FiniteAbelianGroup) -> Presentation {
    Factor::CG { group: g.clone() }.to_presentation().expect("complex group algebra")
}

pub fn pauli(g: &FiniteAbelianGroup, beta: &Bicharacter) -> Result<Presentation> {
    if beta.orders() != g.orders() {
        return Err(Error::InvalidBicharacter(format!(
            "bicharacter declared over {} but the group is {g}",
            beta.group()
        )));
    }
    Factor::Pauli { beta: beta.clone() }.to_presentation()
}

pub const NAMES: [&str; 9] = ["C2", "H2", "H4", "M2_2", "M2_4", "M2_8", "M2C_Z4", "M4_4", "H"];

/// Factor list of a named grading.
pub fn named_factors(name: &str) -> Result<Vec<Factor>> {
    use Sign::{Minus, Plus};
    let d = |k, l, mu, nu| Factor::D { k_order: k, l_order: l, mu, nu };
    Ok(match name {
        "C2" => vec![Factor::C { order: 2, sign: Minus }],
        "H2" => vec![Factor::E { order: 2, sign: Minus }],
        "H4" => vec![d(2, 2, Minus, Minus)],
        "M2_2" => vec![Factor::E { order: 2, sign: Plus }],
        "M2_4" => vec![d(2, 2, Plus, Plus)],
        // C of degree (1,0) with C² = -I; ωA of degree (0,1) with (ωA)⁴ = -I; they anticommute.
        "M2_8" => vec![d(2, 4, Minus, Minus)],
        // J = C; ωA of order 4 with (ωA)⁴ = -I anticommutes with C.
        "M2C_Z4" => vec![Factor::E { order: 4, sign: Minus }],
        // Identity component ≅ H; its centralizer is spanned by I⊗C and C⊗A, both squaring to -I.
        "M4_4" => vec![Factor::H, d(2, 2, Minus, Minus)],
        "H" => vec![Factor::H],
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

pub fn named(name: &str) -> Result<Presentation> {
    tensor_of(&named_factors(name)?)
}

/// Every unit monomial has a scalar power, and the identity component is the stated division algebra.
pub fn division_property(p: &Presentation) -> bool {
    for g in p.group().elements() {
        let m = p.monomial_of_degree(&g);
        let ord = p.group().element_order(&g);
        let pw = p.power(&m, ord);
        if !p.is_scalar(&pw) {
            return false;
        }
        // A real multiple of I must be ±I; with J it may be any unit.
        if p.kind() == IdentityKind::OneDim && pw.coeff % (p.root_order() / 2) != 0 {
            return false;
        }
    }
    match p.kind() {
        IdentityKind::OneDim => true,
        IdentityKind::CentralJ | IdentityKind::NoncentralJ => {
            let j = p.j_unit().expect("kind has J");
            p.power(&j, 2) == p.sign_scalar(Sign::Minus)
        }
        IdentityKind::Quaternion => {
            use crate::algebra::QuatUnit;
            let unit = |q| p.quat_unit(q).expect("quaternion kind");
            let minus = p.sign_scalar(Sign::Minus);
            [QuatUnit::I, QuatUnit::J, QuatUnit::K].into_iter().all(|q| p.power(&unit(q), 2) == minus)
                && p.mul(&unit(QuatUnit::I), &unit(QuatUnit::J)) == unit(QuatUnit::K)
        }
    }
}

/// Basic factors over cyclic 2-groups with dimension at most `max_dim`:
/// C, D (smaller order first), E, H and complex group algebras of cyclic groups.
pub fn two_group_basics(max_dim: u64) -> Vec<Factor> {
    use Sign::{Minus, Plus};
    let mut out = Vec::new();
    let orders: Vec<u32> = (1..16).map(|e| 1u32 << e).take_while(|&n| n as u64 <= max_dim).collect();
    for &n in &orders {
        for s in [Minus, Plus] {
            out.push(Factor::C { order: n, sign: s });
        }
    }
    for &a in &orders {
        for &b in orders.iter().filter(|&&b| b >= a && (a as u64 * b as u64) <= max_dim) {
            for mu in [Minus, Plus] {
                for nu in [Minus, Plus] {
                    out.push(Factor::D { k_order: a, l_order: b, mu, nu });
                }
            }
        }
    }
    for &n in orders.iter().filter(|&&n| 2 * n as u64 <= max_dim) {
        for s in [Minus, Plus] {
            out.push(Factor::E { order: n, sign: s });
        }
        out.push(Factor::CG { group: FiniteAbelianGroup::cyclic(n) });
    }
    if max_dim >= 4 {
        out.push(Factor::H);
    }
    out
}

/// Multisets of 1..=max_factors basics with at most one factor whose identity
/// component exceeds R and total dimension at most `max_dim`.
pub fn small_products(max_factors: usize, max_dim: u64) -> Vec<Vec<Factor>> {
    fn go(
        basics: &[Factor],
        start: usize,
        left: usize,
        dim: u64,
        special: bool,
        max_dim: u64,
        cur: &mut Vec<Factor>,
        out: &mut Vec<Vec<Factor>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..basics.len() {
            let f = &basics[i];
            let is_special = f.kind() != IdentityKind::OneDim;
            // A one-dimensional factor multiplies the dimension by |G|; a special one by |G|·dim R_e.
            let d = dim * f.dimension();
            if d > max_dim || (special && is_special) {
                continue;
            }
            cur.push(f.clone());
            go(basics, i, left - 1, d, special || is_special, max_dim, cur, out);
            cur.pop();
        }
    }
    let basics = two_group_basics(max_dim);
    let mut out = Vec::new();
    go(&basics, 0, max_factors, 1, false, max_dim, &mut Vec::new(), &mut out);
    out
}
