//! Independent models: explicit matrices for the named gradings, and brute-force
//! Aut(G) orbits for bicharacters.

use std::collections::BTreeMap;

use gradiv::catalog::{named, pauli, NAMES};
use gradiv::equivalence::pauli_label;
use gradiv::{Bicharacter, FiniteAbelianGroup, IdentityKind, Presentation, QuatUnit, UnitMonomial};

// ---------------------------------------------------------------- Z[ζ8] matrices

/// a0 + a1ζ + a2ζ² + a3ζ³ with ζ = e^{iπ/4}, so ζ² = i and ζ⁴ = -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cyc([i64; 4]);

impl Cyc {
    const ZERO: Cyc = Cyc([0; 4]);
    const ONE: Cyc = Cyc([1, 0, 0, 0]);

    fn int(n: i64) -> Cyc {
        Cyc([n, 0, 0, 0])
    }

    fn zeta(k: usize) -> Cyc {
        let mut c = [0; 4];
        c[k % 4] = if (k / 4) % 2 == 0 { 1 } else { -1 };
        Cyc(c)
    }

    fn add(self, o: Cyc) -> Cyc {
        Cyc(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    fn mul(self, o: Cyc) -> Cyc {
        let mut r = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 {
                let v = self.0[i] * o.0[j];
                if i + j < 4 {
                    r[i + j] += v;
                } else {
                    r[i + j - 4] -= v;
                }
            }
        }
        Cyc(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat(Vec<Vec<Cyc>>);

impl Mat {
    fn real(rows: &[&[i64]]) -> Mat {
        Mat(rows.iter().map(|r| r.iter().map(|&v| Cyc::int(v)).collect()).collect())
    }

    fn n(&self) -> usize {
        self.0.len()
    }

    fn identity(n: usize) -> Mat {
        Mat((0..n).map(|i| (0..n).map(|j| if i == j { Cyc::ONE } else { Cyc::ZERO }).collect()).collect())
    }

    fn mul(&self, o: &Mat) -> Mat {
        let n = self.n();
        Mat((0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(Cyc::ZERO, |acc, k| acc.add(self.0[i][k].mul(o.0[k][j])))).collect())
            .collect())
    }

    fn scale(&self, c: Cyc) -> Mat {
        Mat(self.0.iter().map(|r| r.iter().map(|&x| c.mul(x)).collect()).collect())
    }

    fn pow(&self, e: u32) -> Mat {
        (0..e).fold(Mat::identity(self.n()), |acc, _| acc.mul(self))
    }

    fn kron(&self, o: &Mat) -> Mat {
        let (n, m) = (self.n(), o.n());
        Mat((0..n * m)
            .map(|i| (0..n * m).map(|j| self.0[i / m][j / m].mul(o.0[i % m][j % m])).collect())
            .collect())
    }
}

/// Rank over R of complex matrices with entries in Q(ζ8), computed mod a prime
/// in which 2 is a square. Full rank mod p implies full rank over R.
fn real_rank(mats: &[Mat]) -> usize {
    const P: i64 = 1_000_000_007;
    let pw = |mut b: i64, mut e: i64| {
        let mut r = 1i64;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let sqrt2 = (1..P).find(|&s| s * s % P == 2).expect("2 is a square mod p");
    let half_sqrt2 = sqrt2 * pw(2, P - 2) % P;
    let m = |v: i64| v.rem_euclid(P);
    // Re = a0 + (a1 - a3)/√2, Im = a2 + (a1 + a3)/√2.
    let mut rows: Vec<Vec<i64>> = mats
        .iter()
        .map(|mt| {
            mt.0.iter()
                .flatten()
                .flat_map(|c| {
                    let [a0, a1, a2, a3] = c.0;
                    [m(a0 + m(a1 - a3) * half_sqrt2 % P), m(a2 + m(a1 + a3) * half_sqrt2 % P)]
                })
                .collect()
        })
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pw(rows[rank][c], P - 2);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c] * inv % P;
                for j in 0..cols {
                    rows[i][j] = m(rows[i][j] - f * rows[rank][j] % P);
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------- models

struct Model {
    gens: Vec<Mat>,
    j: Option<Mat>,
    quat: Option<[Mat; 3]>,
}

fn matrix_of(p: &Presentation, model: &Model, m: &UnitMonomial) -> Mat {
    let n = model.gens.first().or(model.j.as_ref()).map_or_else(|| model.quat.as_ref().unwrap()[0].n(), |g| g.n());
    let scalar = match (p.root_order(), &model.j) {
        (2, _) => Mat::identity(n).scale(Cyc::int(if m.coeff == 0 { 1 } else { -1 })),
        (4, Some(j)) => j.pow(m.coeff),
        (r, _) => panic!("root order {r} has no model"),
    };
    let quat = match (m.quat, &model.quat) {
        (QuatUnit::One, _) => Mat::identity(n),
        (q, Some(units)) => units[q as usize - 1].clone(),
        (_, None) => panic!("quaternion unit without a model"),
    };
    let word = m.gens.iter().zip(&model.gens).fold(Mat::identity(n), |acc, (&e, g)| acc.mul(&g.pow(e)));
    scalar.mul(&quat).mul(&word)
}

/// The model respects the multiplication table on a real basis, and that basis
/// maps to R-independent matrices.
fn check_model(name: &str, model: &Model) {
    let p = named(name).unwrap();
    let mut units = vec![p.identity_monomial()];
    match p.kind() {
        IdentityKind::OneDim => {}
        IdentityKind::CentralJ | IdentityKind::NoncentralJ => units.push(p.j_unit().unwrap()),
        IdentityKind::Quaternion => {
            units.extend([QuatUnit::I, QuatUnit::J, QuatUnit::K].map(|q| p.quat_unit(q).unwrap()))
        }
    }
    let basis: Vec<UnitMonomial> = p
        .group()
        .elements()
        .flat_map(|g| {
            let m = p.monomial_of_degree(&g);
            units.iter().map(|u| p.mul(u, &m)).collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(basis.len() as u64, p.dimension(), "{name}");
    for a in &basis {
        for b in &basis {
            let lhs = matrix_of(&p, model, &p.mul(a, b));
            let rhs = matrix_of(&p, model, a).mul(&matrix_of(&p, model, b));
            assert_eq!(lhs, rhs, "{name}: {a:?} * {b:?}");
        }
    }
    let mats: Vec<Mat> = basis.iter().map(|m| matrix_of(&p, model, m)).collect();
    assert_eq!(real_rank(&mats) as u64, p.dimension(), "{name}: basis is dependent");
}

fn pauli_abc() -> (Mat, Mat, Mat) {
    (Mat::real(&[&[1, 0], &[0, -1]]), Mat::real(&[&[0, 1], &[1, 0]]), Mat::real(&[&[0, 1], &[-1, 0]]))
}

/// Quaternion units inside M2(C): iA, iB and their product.
fn quaternions_in_m2c() -> [Mat; 3] {
    let (a, b, _) = pauli_abc();
    let i = Cyc::zeta(2);
    let (qi, qj) = (a.scale(i), b.scale(i));
    let qk = qi.mul(&qj);
    [qi, qj, qk]
}

#[test]
fn named_gradings_match_matrix_models() {
    let (a, b, c) = pauli_abc();
    let omega = Cyc::zeta(1);
    let [qi, qj, qk] = quaternions_in_m2c();
    let i2 = Mat::identity(2);
    let models: Vec<(&str, Model)> = vec![
        ("C2", Model { gens: vec![c.clone()], j: None, quat: None }),
        ("H4", Model { gens: vec![qi.clone(), qj.clone()], j: None, quat: None }),
        ("M2_4", Model { gens: vec![a.clone(), b.clone()], j: None, quat: None }),
        ("M2_2", Model { gens: vec![a.clone()], j: Some(c.clone()), quat: None }),
        ("H2", Model { gens: vec![qj.clone()], j: Some(qi.clone()), quat: None }),
        ("M2_8", Model { gens: vec![c.clone(), a.scale(omega)], j: None, quat: None }),
        ("M2C_Z4", Model { gens: vec![a.scale(omega)], j: Some(c.clone()), quat: None }),
        ("H", Model { gens: vec![], j: None, quat: Some([qi, qj, qk]) }),
        (
            "M4_4",
            Model {
                gens: vec![i2.kron(&c), c.kron(&a)],
                j: None,
                // Identity component ⟨I⊗I, C⊗I, A⊗C, B⊗C⟩ with ij = k fixing the sign of B⊗C.
                quat: Some([c.kron(&i2), a.kron(&c), c.kron(&i2).mul(&a.kron(&c))]),
            },
        ),
    ];
    assert_eq!(models.len(), NAMES.len());
    for (name, model) in &models {
        check_model(name, model);
    }
}

#[test]
fn m4_4_components_are_the_displayed_spans() {
    let (a, b, c) = pauli_abc();
    let i2 = Mat::identity(2);
    let re = [i2.kron(&i2), c.kron(&i2), a.kron(&c), b.kron(&c)];
    let shifts = [i2.kron(&i2), i2.kron(&c), c.kron(&a), c.kron(&b)];
    let all: Vec<Mat> = shifts.iter().flat_map(|s| re.iter().map(move |r| s.mul(r))).collect();
    assert_eq!(real_rank(&all), 16);
    // Each shift normalizes R_e, so the four components multiply as Z2 × Z2.
    for s in &shifts[1..] {
        for r in &re {
            let conj = s.mul(r).mul(&s.pow(3)).scale(Cyc::int(-1));
            let mut span = re.to_vec();
            span.push(conj);
            assert_eq!(real_rank(&span), 4);
        }
    }
}

// ---------------------------------------------------------------- bicharacter orbits

fn alternating(group: &FiniteAbelianGroup) -> Vec<Bicharacter> {
    let orders = group.orders().to_vec();
    let r = orders.len();
    let e = group.exponent() as u32;
    let pairs: Vec<(usize, usize)> = (1..r).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total: u32 = pairs.iter().map(|&(i, j)| gcd(orders[i], orders[j])).product();
    (0..total)
        .map(|mut code| {
            let mut m = vec![vec![0u32; r]; r];
            for &(i, j) in &pairs {
                let g = gcd(orders[i], orders[j]);
                let v = (code % g) * (e / g);
                code /= g;
                m[i][j] = v;
                m[j][i] = (e - v) % e;
            }
            Bicharacter::new(orders.clone(), e, m).unwrap()
        })
        .collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Orbit of β under Aut(G) and conjugation, as the least matrix it contains.
fn orbit_key(group: &FiniteAbelianGroup, autos: &[Vec<gradiv::GroupElement>], beta: &Bicharacter) -> Vec<Vec<u32>> {
    let r = group.rank();
    let e = beta.modulus();
    autos
        .iter()
        .flat_map(|imgs| {
            let m: Vec<Vec<u32>> = (0..r).map(|i| (0..r).map(|j| beta.eval(&imgs[i], &imgs[j])).collect()).collect();
            let conj: Vec<Vec<u32>> = m.iter().map(|row| row.iter().map(|&v| (e - v) % e).collect()).collect();
            [m, conj]
        })
        .min()
        .unwrap()
}

#[test]
fn pauli_labels_match_brute_force_orbits() {
    for spec in ["Z2xZ2", "Z4xZ2", "Z2xZ2xZ2", "Z4xZ4", "Z3xZ3", "Z2xZ2xZ4", "Z6xZ2"] {
        let group: FiniteAbelianGroup = spec.parse().unwrap();
        let autos: Vec<Vec<gradiv::GroupElement>> =
            group.enumerate_automorphisms(1_000_000).unwrap().into_iter().map(|a| a.images).collect();
        let mut by_orbit: BTreeMap<Vec<Vec<u32>>, String> = BTreeMap::new();
        let mut labels: BTreeMap<String, Vec<Vec<u32>>> = BTreeMap::new();
        for beta in alternating(&group) {
            assert!(pauli(&group, &beta).is_ok());
            let key = orbit_key(&group, &autos, &beta);
            let label = pauli_label(&group, &beta).unwrap();
            let seen = by_orbit.entry(key.clone()).or_insert_with(|| label.clone());
            assert_eq!(seen, &label, "{spec}: one orbit, two labels");
            let owner = labels.entry(label.clone()).or_insert_with(|| key.clone());
            assert_eq!(owner, &key, "{spec}: label {label} shared by two orbits");
        }
    }
}
