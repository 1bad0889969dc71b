//! Exact evaluation on `SL_n x^Z T`: pinning, Weyl representatives,
//! generalized minors and the framed cluster variables.
//!
//! Conventions: `x_i(a) = 1 + a E_{i,i+1}`, `y_i(c) = 1 + c E_{i+1,i}`,
//! `s_i = x_i(1) y_i(-1) x_i(1)`, characters `omega_i(t) = t_1...t_i` and
//! `alpha_i(t) = t_i / t_{i+1}`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{RootDatum, Weight};
use crate::cluster::{exchange_exponents, SeedState};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, QMatrix};
use crate::seed::{LabelKind, MinorLabel};
use crate::Rational;

pub fn x_gen(n: usize, i: usize, a: &Rational) -> QMatrix {
    let mut m = linalg::identity(n);
    m[i - 1][i] = a.clone();
    m
}

pub fn y_gen(n: usize, i: usize, c: &Rational) -> QMatrix {
    let mut m = linalg::identity(n);
    m[i][i - 1] = c.clone();
    m
}

/// `alpha_i^vee(b) = diag(.., b, b^{-1}, ..)` at positions `i, i+1`.
pub fn coroot(n: usize, i: usize, b: &Rational) -> QMatrix {
    let mut m = linalg::identity(n);
    m[i - 1][i - 1] = b.clone();
    m[i][i] = b.recip();
    m
}

pub fn sdot(n: usize, i: usize) -> QMatrix {
    let one = Rational::one();
    linalg::mul(
        &linalg::mul(&x_gen(n, i, &one), &y_gen(n, i, &-one.clone())),
        &x_gen(n, i, &one),
    )
}

/// `dot w` along the given word.
pub fn wrep(n: usize, word: &[usize]) -> QMatrix {
    word.iter()
        .fold(linalg::identity(n), |acc, &i| linalg::mul(&acc, &sdot(n, i)))
}

/// `dot w^{-1}`.
pub fn wrep_inv(n: usize, word: &[usize]) -> QMatrix {
    let mut inv = linalg::identity(n);
    for &i in word.iter().rev() {
        let mut s = sdot(n, i);
        // inverse of the 2x2 rotation block is its transpose
        let (a, b) = (i - 1, i);
        let t = s[a][b].clone();
        s[a][b] = s[b][a].clone();
        s[b][a] = t;
        inv = linalg::mul(&inv, &s);
    }
    inv
}

/// `Delta_{u omega_i, v omega_i}(g)`: leading `i x i` minor of `u^{-1} g v`.
pub fn generalized_minor(u_word: &[usize], v_word: &[usize], i: usize, g: &QMatrix) -> Rational {
    let n = g.len();
    let h = linalg::mul(&linalg::mul(&wrep_inv(n, u_word), g), &wrep(n, v_word));
    linalg::leading_minor(&h, i)
}

/// Representative `(g, t)` of a point of `SL_n x^Z T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPoint {
    pub matrix: QMatrix,
    pub torus: Vec<Rational>,
}

impl GroupPoint {
    pub fn identity(n: usize) -> Self {
        GroupPoint {
            matrix: linalg::identity(n),
            torus: vec![Rational::one(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_valid(&self) -> bool {
        linalg::det(&self.matrix).is_one()
            && self.torus.iter().all(|t| !t.is_zero())
            && self.torus.iter().fold(Rational::one(), |a, t| a * t).is_one()
    }

    /// `(zeta g, zeta^{-1} t)` for a central scalar `zeta` with `zeta^n = 1`.
    pub fn twist(&self, zeta: &Rational) -> GroupPoint {
        GroupPoint {
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|x| x * zeta).collect())
                .collect(),
            torus: self.torus.iter().map(|t| t / zeta).collect(),
        }
    }
}

pub fn omega_char(t: &[Rational], i: usize) -> Rational {
    t[..i].iter().fold(Rational::one(), |a, x| a * x)
}

pub fn alpha_char(t: &[Rational], i: usize) -> Rational {
    &t[i - 1] / &t[i]
}

/// `e^lambda(t)` for a weight in fundamental-weight coordinates.
pub fn character(t: &[Rational], lambda: &Weight) -> Rational {
    lambda
        .0
        .iter()
        .enumerate()
        .fold(Rational::one(), |acc, (i, &c)| {
            if c == 0 {
                acc
            } else {
                acc * num_traits::pow::Pow::pow(&omega_char(t, i + 1), c as i32)
            }
        })
}

fn check_type_a(datum: &RootDatum) -> Result<()> {
    if datum.cartan().is_standard_type_a() {
        Ok(())
    } else {
        Err(Error::Unsupported("evaluation is implemented for type A only".into()))
    }
}

/// Value of a labeled cluster variable at a point.
pub fn framed_value(label: &MinorLabel, p: &GroupPoint) -> Rational {
    let shift = character(&p.torus, &label.torus_shift);
    match label.kind {
        LabelKind::Minor => generalized_minor(&label.u_word, &label.v_word, label.level, &p.matrix) * shift,
        LabelKind::FrameCharacter => shift,
    }
}

/// Values of all labels at a point, for a type A datum of rank `n - 1`.
pub fn label_values(datum: &RootDatum, labels: &[MinorLabel], p: &GroupPoint) -> Result<Vec<Rational>> {
    check_type_a(datum)?;
    Ok(labels.iter().map(|l| framed_value(l, p)).collect())
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut num: i64 = rng.random_range(1..=5);
    if rng.random_bool(0.5) {
        num = -num;
    }
    let den: i64 = rng.random_range(1..=4);
    Rational::new(num.into(), den.into())
}

/// Product of `x_i` along the `w0` word, coroots, then `y_i` along the `w0`
/// word, with small random rationals; torus coordinates random with product 1.
pub fn random_point_from<R: Rng>(datum: &RootDatum, rng: &mut R) -> Result<GroupPoint> {
    check_type_a(datum)?;
    let n = datum.rank() + 1;
    let w0 = datum.longest_element()?;
    let mut g = linalg::identity(n);
    for &i in w0.word() {
        g = linalg::mul(&g, &x_gen(n, i, &small_rational(rng)));
    }
    for i in 1..n {
        g = linalg::mul(&g, &coroot(n, i, &small_rational(rng)));
    }
    for &i in w0.word() {
        g = linalg::mul(&g, &y_gen(n, i, &small_rational(rng)));
    }
    let mut torus: Vec<Rational> = (0..n - 1).map(|_| small_rational(rng)).collect();
    let prod = torus.iter().fold(Rational::one(), |a, x| a * x);
    torus.push(prod.recip());
    Ok(GroupPoint { matrix: g, torus })
}

/// Deterministic point from an integer seed.
pub fn random_point(datum: &RootDatum, rng_seed: u64) -> Result<GroupPoint> {
    random_point_from(datum, &mut ChaCha8Rng::seed_from_u64(rng_seed))
}

/// Maximum redraws before [`Error::DegenerateSample`].
pub const MAX_RETRIES: usize = 64;

/// A random point at which every label is nonzero.
pub fn random_generic_point<R: Rng>(datum: &RootDatum, labels: &[MinorLabel], rng: &mut R) -> Result<GroupPoint> {
    for _ in 0..MAX_RETRIES {
        let p = random_point_from(datum, rng)?;
        if label_values(datum, labels, &p)?.iter().all(|v| !v.is_zero()) {
            return Ok(p);
        }
    }
    Err(Error::DegenerateSample(MAX_RETRIES))
}

/// `count` generic points drawn from one seeded stream.
pub fn sample_points(datum: &RootDatum, labels: &[MinorLabel], rng_seed: u64, count: usize) -> Result<Vec<GroupPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..count).map(|_| random_generic_point(datum, labels, &mut rng)).collect()
}

/// Embedding `SL_2 x^Z T -> SL_3`, `(g, t) -> diag(g t, t^{-2})` with `t = t_1`.
pub fn phi_sl2(p: &GroupPoint) -> QMatrix {
    let t = &p.torus[0];
    let mut m = vec![vec![Rational::zero(); 3]; 3];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = &p.matrix[i][j] * t;
        }
    }
    m[2][2] = (t * t).recip();
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeFailure {
    pub point_index: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeReport {
    pub vertex: usize,
    pub points_checked: usize,
    pub failures: Vec<ExchangeFailure>,
    /// Disagreements between the Laurent expressions of the state and a
    /// numeric replay of its mutation path.
    pub replay_mismatches: usize,
    /// Curves along which the mutated variable acquired a pole.
    pub irregular_curves: usize,
    pub curves_checked: usize,
}

impl ExchangeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.replay_mismatches == 0 && self.irregular_curves == 0
    }
}

fn product(values: &[Rational], exps: &[i32]) -> Rational {
    values
        .iter()
        .zip(exps)
        .fold(Rational::one(), |acc, (v, &e)| {
            if e == 0 {
                acc
            } else {
                acc * num_traits::pow::Pow::pow(v, e)
            }
        })
}

/// Values of the state's cluster variables obtained by replaying its
/// mutation path on numbers.
fn replay(state: &SeedState, initial_seed: &crate::seed::Seed, start: &[Rational]) -> Result<Vec<Rational>> {
    let mut seed = initial_seed.clone();
    let mut vals = start.to_vec();
    for &k in &state.path {
        let (p, m) = exchange_exponents(&seed, k)?;
        vals[k] = (product(&vals, &p) + product(&vals, &m)) / &vals[k];
        seed = crate::cluster::mutate_matrix(&seed, k)?;
    }
    Ok(vals)
}

/// Pointwise check of the exchange relation of `state` at `k`, where
/// `labels` realize the initial cluster. Points must make every label and
/// every variable on the path nonzero.
pub fn verify_exchange(
    datum: &RootDatum,
    initial_seed: &crate::seed::Seed,
    labels: &[MinorLabel],
    state: &SeedState,
    k: usize,
    points: &[GroupPoint],
    curve_seed: Option<u64>,
) -> Result<ExchangeReport> {
    let mutated = crate::cluster::mutate_state(state, k)?;
    let (p, m) = exchange_exponents(&state.seed, k)?;
    let mut failures = Vec::new();
    let mut replay_mismatches = 0;
    for (idx, pt) in points.iter().enumerate() {
        let init = label_values(datum, labels, pt)?;
        let vals: Vec<Rational> = state
            .vars
            .iter()
            .map(|v| v.eval(&init))
            .collect::<Result<_>>()?;
        if replay(state, initial_seed, &init)? != vals {
            replay_mismatches += 1;
        }
        let new = mutated.vars[k].eval(&init)?;
        let lhs = &vals[k] * &new;
        let rhs = product(&vals, &p) + product(&vals, &m);
        if lhs != rhs {
            failures.push(ExchangeFailure {
                point_index: idx,
                lhs,
                rhs,
            });
        }
    }
    let (curves_checked, irregular_curves) = match curve_seed {
        Some(seed) => check_regularity(datum, initial_seed, labels, &mutated, seed, 4)?,
        None => (0, 0),
    };
    Ok(ExchangeReport {
        vertex: k,
        points_checked: points.len(),
        failures,
        replay_mismatches,
        irregular_curves,
        curves_checked,
    })
}

type PMatrix = Vec<Vec<LaurentPoly>>;

fn pmat(m: &QMatrix) -> PMatrix {
    m.iter()
        .map(|r| r.iter().map(|x| LaurentPoly::constant(1, x.clone())).collect())
        .collect()
}

fn pmul(a: &PMatrix, b: &PMatrix) -> PMatrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..b.len()).fold(LaurentPoly::zero(1), |acc, t| acc + &a[i][t] * &b[t][j])
                })
                .collect()
        })
        .collect()
}

fn pdet(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentPoly::zero(1);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * &pdet(&minor);
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Along curves `g0 x_a(s) g1` and `g0 y_a(s) g1`, every cluster variable of
/// `state` must be a polynomial in `s`. Returns `(curves, irregular)`.
pub fn check_regularity(
    datum: &RootDatum,
    initial_seed: &crate::seed::Seed,
    labels: &[MinorLabel],
    state: &SeedState,
    rng_seed: u64,
    curves: usize,
) -> Result<(usize, usize)> {
    check_type_a(datum)?;
    let n = datum.rank() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let s = LaurentPoly::var(1, 0);
    let mut irregular = 0;
    for c in 0..curves {
        let g0 = random_point_from(datum, &mut rng)?;
        let g1 = random_point_from(datum, &mut rng)?;
        let a = rng.random_range(1..n);
        let mut mid = pmat(&linalg::identity(n));
        if c % 2 == 0 {
            mid[a - 1][a] = s.clone();
        } else {
            mid[a][a - 1] = s.clone();
        }
        let g = pmul(&pmul(&pmat(&g0.matrix), &mid), &pmat(&g1.matrix));
        let t = &g0.torus;
        let init: Vec<LaurentPoly> = labels
            .iter()
            .map(|l| {
                let shift = LaurentPoly::constant(1, character(t, &l.torus_shift));
                match l.kind {
                    LabelKind::FrameCharacter => shift,
                    LabelKind::Minor => {
                        let h = pmul(
                            &pmul(&pmat(&wrep_inv(n, &l.u_word)), &g),
                            &pmat(&wrep(n, &l.v_word)),
                        );
                        let sub: Vec<Vec<LaurentPoly>> =
                            h[..l.level].iter().map(|r| r[..l.level].to_vec()).collect();
                        &pdet(&sub) * &shift
                    }
                }
            })
            .collect();
        if init.iter().any(|x| x.is_zero()) {
            continue;
        }
        let mut seed = initial_seed.clone();
        let mut vals = init;
        let mut ok = true;
        for &k in &state.path {
            let (p, m) = exchange_exponents(&seed, k)?;
            let mono = |e: &[i32]| -> LaurentPoly {
                e.iter().enumerate().fold(LaurentPoly::one(1), |acc, (i, &x)| {
                    if x == 0 {
                        acc
                    } else {
                        acc * vals[i].pow(x as i64).expect("nonnegative power")
                    }
                })
            };
            let num = mono(&p) + mono(&m);
            match num.poly_exact_div(&vals[k]) {
                Ok(h) if h.is_polynomial() => vals[k] = h,
                _ => {
                    ok = false;
                    break;
                }
            }
            seed = crate::cluster::mutate_matrix(&seed, k)?;
        }
        if !ok {
            irregular += 1;
        }
    }
    Ok((curves, irregular))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use crate::cluster::SeedState;
    use crate::seed::framed_seed;

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn pinning_representatives() {
        assert_eq!(sdot(2, 1), m(&[&[0, 1], &[-1, 0]]));
        assert_eq!(wrep(3, &[]), linalg::identity(3));
        assert_eq!(wrep(3, &[1, 2, 1]), wrep(3, &[2, 1, 2]));
        let w = wrep(3, &[1, 2]);
        assert_eq!(linalg::mul(&w, &wrep_inv(3, &[1, 2])), linalg::identity(3));
    }

    #[test]
    fn sl2_minors() {
        let g = m(&[&[2, 3], &[5, 8]]);
        assert_eq!(generalized_minor(&[], &[], 1, &g), q(2));
        assert_eq!(generalized_minor(&[], &[1], 1, &g), q(-3));
        assert_eq!(generalized_minor(&[1], &[], 1, &g), q(-5));
        assert_eq!(generalized_minor(&[1], &[1], 1, &g), q(8));
    }

    #[test]
    fn framed_values_sl2() {
        let a1 = RootDatum::of_type("A1").unwrap();
        let fs = framed_seed(&a1).unwrap();
        let labels = &fs.built.labels;
        let p = GroupPoint {
            matrix: m(&[&[2, 3], &[5, 8]]),
            torus: vec![q(3), crate::qf(1, 3)],
        };
        // positions: A0, A2, A1, A3
        let vals = label_values(&a1, labels, &p).unwrap();
        assert_eq!(vals, vec![q(9), q(-9), q(6), q(-15)]);
        let id = label_values(&a1, labels, &GroupPoint::identity(2)).unwrap();
        assert_eq!(id[0], q(1));
        assert_eq!(id[2], q(1));
    }

    #[test]
    fn random_points_are_unimodular() {
        let a2 = RootDatum::of_type("A2").unwrap();
        for s in 0..5 {
            assert!(random_point(&a2, s).unwrap().is_valid());
        }
        assert_eq!(random_point(&a2, 42).unwrap(), random_point(&a2, 42).unwrap());
        let b2 = RootDatum::of_type("B2").unwrap();
        assert!(matches!(random_point(&b2, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sl2_exchange_holds_and_is_regular() {
        let a1 = RootDatum::of_type("A1").unwrap();
        let fs = framed_seed(&a1).unwrap();
        let seed = &fs.built.seed;
        let st = SeedState::initial(seed.clone());
        let pts = sample_points(&a1, &fs.built.labels, 3, 10).unwrap();
        let rep = verify_exchange(&a1, seed, &fs.built.labels, &st, 2, &pts, Some(5)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.curves_checked, 4);
    }

    #[test]
    fn wrong_exchange_matrix_is_detected_by_curves() {
        let a1 = RootDatum::of_type("A1").unwrap();
        let fs = framed_seed(&a1).unwrap();
        let seed = &fs.built.seed;
        // drop the arrow to A0: A1 A1' = A2 A3 + 1 is not regular on SL2 x T
        let mut eps = seed.epsilon().to_vec();
        eps[2][0] = q(0);
        eps[0][2] = q(0);
        let bad = seed.with_epsilon(eps).unwrap();
        let st = crate::cluster::mutate_state(&SeedState::initial(bad.clone()), 2).unwrap();
        let (n, irr) = check_regularity(&a1, &bad, &fs.built.labels, &st, 9, 4).unwrap();
        assert_eq!(n, 4);
        assert!(irr > 0);
    }
}
