//! Mutation of seeds and cluster variables, frozen valuations and bounded
//! membership tests for (partially compactified) upper cluster algebras.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::laurent::{LaurentFraction, LaurentPoly, Monomial};
use crate::seed::Seed;
use crate::Rational;

/// Default cap on the number of states produced by [`enumerate_seeds`].
pub const DEFAULT_MAX_SEEDS: usize = 10_000;

/// A seed together with its cluster variables written as Laurent
/// polynomials in the initial cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedState {
    pub seed: Seed,
    pub vars: Vec<LaurentPoly>,
    /// Positions mutated, in order, starting from the initial seed.
    pub path: Vec<usize>,
}

impl SeedState {
    pub fn initial(seed: Seed) -> Self {
        let n = seed.len();
        SeedState {
            vars: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
            seed,
            path: Vec::new(),
        }
    }

    fn key(&self) -> (Vec<Vec<Rational>>, Vec<LaurentPoly>) {
        let mut vars = self.vars.clone();
        vars.sort();
        (self.seed.epsilon().to_vec(), vars)
    }
}

fn pos(x: &Rational) -> Rational {
    if x.is_positive() {
        x.clone()
    } else {
        Rational::zero()
    }
}

/// Matrix mutation at position `k`.
pub fn mutate_matrix(seed: &Seed, k: usize) -> Result<Seed> {
    if k >= seed.len() || !seed.is_mutable(k) {
        return Err(Error::FrozenVertex(k));
    }
    let n = seed.len();
    let e = seed.epsilon();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -e[i][j].clone()
            } else {
                &e[i][j] + pos(&e[i][k]) * &e[k][j] + &e[i][k] * pos(&-e[k][j].clone())
            };
        }
    }
    seed.with_epsilon(out)
}

/// The two monomials of the exchange relation at `k`, as exponent vectors
/// over the seed's positions: `([eps_ki]_+, [-eps_ki]_+)`.
pub fn exchange_exponents(seed: &Seed, k: usize) -> Result<(Vec<i32>, Vec<i32>)> {
    if !seed.is_mutable(k) {
        return Err(Error::FrozenVertex(k));
    }
    let row = &seed.epsilon()[k];
    let as_int = |x: &Rational| -> i32 { x.to_integer().to_i32().expect("small exchange entry") };
    let plus = row.iter().map(|x| if x.is_positive() { as_int(x) } else { 0 }).collect();
    let minus = row.iter().map(|x| if x.is_negative() { -as_int(x) } else { 0 }).collect();
    Ok((plus, minus))
}

/// `prod A_i^{[eps_ki]_+} + prod A_i^{[-eps_ki]_+}` in the seed's own cluster.
pub fn exchange_binomial(seed: &Seed, k: usize) -> Result<LaurentPoly> {
    let (p, m) = exchange_exponents(seed, k)?;
    let one = Rational::from_integer(1.into());
    Ok(LaurentPoly::monomial(p, one.clone()) + LaurentPoly::monomial(m, one))
}

/// State mutation at `k`: matrix mutation plus the exchange relation.
pub fn mutate_state(state: &SeedState, k: usize) -> Result<SeedState> {
    let seed = mutate_matrix(&state.seed, k)?;
    let (p, m) = exchange_exponents(&state.seed, k)?;
    let mono = |e: &[i32]| -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one(state.vars[0].nvars());
        for (i, &x) in e.iter().enumerate() {
            if x != 0 {
                acc = &acc * &state.vars[i].pow(x as i64)?;
            }
        }
        Ok(acc)
    };
    let binom = mono(&p)? + mono(&m)?;
    let new = binom
        .exact_div(&state.vars[k])
        .map_err(|_| Error::LaurentViolation(k))?;
    let mut vars = state.vars.clone();
    vars[k] = new;
    let mut path = state.path.clone();
    path.push(k);
    Ok(SeedState { seed, vars, path })
}

/// Breadth-first enumeration of states reachable in at most `depth`
/// mutations, deduplicated by exchange matrix and variable multiset.
pub fn enumerate_seeds(initial: &SeedState, depth: usize, cap: usize) -> Result<Vec<SeedState>> {
    let mut seen = BTreeSet::new();
    seen.insert(initial.key());
    let mut out = vec![initial.clone()];
    let mut queue = VecDeque::from([(initial.clone(), 0usize)]);
    while let Some((state, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for k in state.seed.mutable_positions() {
            if state.path.last() == Some(&k) {
                continue;
            }
            let next = mutate_state(&state, k)?;
            if seen.insert(next.key()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                out.push(next.clone());
                queue.push_back((next, d + 1));
            }
        }
    }
    Ok(out)
}

/// Rewrites `x_k -> P / y_k` in `g`, returning `(N, e)` with
/// `g = N / P^e` and `N` Laurent in the new cluster.
fn substitute_exchange(g: &LaurentPoly, k: usize, p: &LaurentPoly) -> Result<(LaurentPoly, u32)> {
    if g.is_zero() {
        return Ok((g.clone(), 0));
    }
    let emin = g.min_exponent(k)?.min(0);
    let mut num = LaurentPoly::zero(g.nvars());
    let mut cache: Vec<Option<LaurentPoly>> = Vec::new();
    for (m, c) in g.terms() {
        let e = m.exponents()[k];
        let shift = (e - emin) as usize;
        if cache.len() <= shift {
            cache.resize(shift + 1, None);
        }
        if cache[shift].is_none() {
            cache[shift] = Some(p.pow(shift as i64)?);
        }
        let mut exps = m.exponents().to_vec();
        exps[k] = -e;
        let term = LaurentPoly::monomial(exps, c.clone());
        num = num + &term * cache[shift].as_ref().unwrap();
    }
    Ok((num, (-emin) as u32))
}

/// Expresses a Laurent polynomial in the initial cluster as a fraction of
/// Laurent polynomials in the cluster reached by `path`.
pub fn express_in_cluster(initial: &Seed, path: &[usize], f: &LaurentPoly) -> Result<LaurentFraction> {
    let mut seed = initial.clone();
    let mut frac = LaurentFraction::from_poly(f.clone());
    for &k in path {
        let p = exchange_binomial(&seed, k)?;
        let (n1, a) = substitute_exchange(&frac.num, k, &p)?;
        let (n2, b) = substitute_exchange(&frac.den, k, &p)?;
        // num/den = (n1 / P^a) / (n2 / P^b)
        let lo = a.min(b);
        frac = LaurentFraction {
            num: &n1 * &p.pow((b - lo) as i64)?,
            den: &n2 * &p.pow((a - lo) as i64)?,
        };
        if let Ok(h) = frac.num.exact_div(&frac.den) {
            frac = LaurentFraction::from_poly(h);
        }
        seed = mutate_matrix(&seed, k)?;
    }
    Ok(frac)
}

/// `nu_j(f)`, computed in every supplied state; all must agree.
pub fn frozen_valuation(initial: &Seed, f: &LaurentPoly, j: usize, states: &[SeedState]) -> Result<i64> {
    if initial.is_mutable(j) {
        return Err(Error::InvalidArgument("valuation vertex must be frozen".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut value: Option<i64> = None;
    for st in states {
        let v = express_in_cluster(initial, &st.path, f)?.valuation(j)? as i64;
        match value {
            None => value = Some(v),
            Some(first) if first != v => {
                return Err(Error::SeedDisagreement { first, second: v })
            }
            _ => {}
        }
    }
    match value {
        Some(v) => Ok(v),
        None => Ok(f.min_exponent(j)? as i64),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    InUpperBar,
    InUpperOnly,
    NotLaurent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub seed_path: Vec<usize>,
    /// Vertex position where the check failed.
    pub offending_vertex: usize,
    /// The negative valuation found, for `Sigma` failures.
    pub exponent: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub depth: usize,
    pub seeds_checked: usize,
    pub witnesses: Vec<Witness>,
}

/// Bounded membership test: Laurent in every state, and `nu_i(f) >= 0` for
/// every `i` in `sigma`. States should come from [`enumerate_seeds`] on the
/// initial seed with the stated depth.
pub fn membership(
    initial: &Seed,
    f: &LaurentPoly,
    sigma: &[usize],
    states: &[SeedState],
    depth: usize,
) -> Result<MembershipReport> {
    let mut not_laurent = Vec::new();
    let mut sigma_fail = Vec::new();
    for st in states {
        let frac = express_in_cluster(initial, &st.path, f)?;
        match frac.as_laurent() {
            None => not_laurent.push(Witness {
                seed_path: st.path.clone(),
                offending_vertex: st.path.last().copied().unwrap_or(0),
                exponent: None,
            }),
            Some(h) => {
                if h.is_zero() {
                    continue;
                }
                for &i in sigma {
                    let v = h.min_exponent(i)? as i64;
                    if v < 0 {
                        sigma_fail.push(Witness {
                            seed_path: st.path.clone(),
                            offending_vertex: i,
                            exponent: Some(v),
                        });
                    }
                }
            }
        }
    }
    let (verdict, witnesses) = if !not_laurent.is_empty() {
        (Verdict::NotLaurent, not_laurent)
    } else if !sigma_fail.is_empty() {
        (Verdict::InUpperOnly, sigma_fail)
    } else {
        (Verdict::InUpperBar, Vec::new())
    };
    Ok(MembershipReport {
        verdict,
        depth,
        seeds_checked: states.len(),
        witnesses,
    })
}

/// Substitutes rational values for some variables, leaving the others.
pub fn specialize(f: &LaurentPoly, assignment: &[(usize, Rational)]) -> Result<LaurentPoly> {
    let n = f.nvars();
    let mut out = LaurentPoly::zero(n);
    'terms: for (m, c) in f.terms() {
        let mut exps = m.exponents().to_vec();
        let mut coeff = c.clone();
        for (v, val) in assignment {
            let e = exps[*v];
            if e == 0 {
                continue;
            }
            if val.is_zero() {
                if e < 0 {
                    return Err(Error::NonInvertibleSubstitution(*v));
                }
                continue 'terms;
            }
            coeff *= num_traits::pow::Pow::pow(val, e);
            exps[*v] = 0;
        }
        out.add_term(Monomial::new(exps), coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootDatum;
    use crate::seed::framed_seed;
    use crate::{q, qf};
    use alloc::string::String;

    fn toy(eps: Vec<Vec<i64>>, mutable: Vec<bool>) -> Seed {
        let n = eps.len();
        Seed::from_matrix(
            (1..=n as i64).collect(),
            (0..n).map(|i| alloc::format!("x{i}")).collect(),
            mutable,
            eps.into_iter().map(|r| r.into_iter().map(q).collect()).collect(),
            vec![1; n],
            vec![1; n],
        )
        .unwrap()
    }

    fn sl2() -> (Seed, Vec<String>) {
        let fs = framed_seed(&RootDatum::of_type("A1").unwrap()).unwrap();
        let names = fs.built.seed.names().to_vec();
        (fs.built.seed, names)
    }

    #[test]
    fn rank_two_flip() {
        let s = toy(vec![vec![0, 1], vec![-1, 0]], vec![true, true]);
        let m = mutate_matrix(&s, 0).unwrap();
        assert_eq!(m.epsilon()[0][1], q(-1));
        assert_eq!(m.epsilon()[1][0], q(1));
        assert_eq!(mutate_matrix(&m, 0).unwrap(), s);
    }

    #[test]
    fn frozen_vertex_rejected() {
        let (s, _) = sl2();
        assert_eq!(mutate_matrix(&s, 0), Err(Error::FrozenVertex(0)));
    }

    #[test]
    fn sl2_exchange_relation() {
        let (s, names) = sl2();
        let st = SeedState::initial(s.clone());
        let m = mutate_state(&st, 2).unwrap();
        assert_eq!(m.vars[2].display(&names), "A2*A1^-1*A3 + A0*A1^-1");
        let v = |i| LaurentPoly::var(4, i);
        let expect = (v(1) * v(3) + v(0)) * v(2).pow(-1).unwrap();
        assert_eq!(m.vars[2], expect);
        // arrows through A1 reverse; the 2-paths A0 -> A1 -> A2 and
        // A0 -> A1 -> A3 shift those frozen pairs by one, (A2, A3) stays
        for p in [0, 1, 3] {
            assert_eq!(m.seed.epsilon()[2][p], -s.epsilon()[2][p].clone());
            for r in [0, 1, 3] {
                let shift = match (p, r) {
                    (0, 1) | (0, 3) => q(1),
                    (1, 0) | (3, 0) => q(-1),
                    _ => q(0),
                };
                assert_eq!(m.seed.epsilon()[p][r], &s.epsilon()[p][r] + shift);
            }
        }
        let back = mutate_state(&m, 2).unwrap();
        assert_eq!(back.vars, st.vars);
        assert_eq!(back.seed, st.seed);
    }

    #[test]
    fn enumeration_sizes() {
        let (s, _) = sl2();
        let st = SeedState::initial(s);
        assert_eq!(enumerate_seeds(&st, 0, 100).unwrap().len(), 1);
        assert_eq!(enumerate_seeds(&st, 1, 100).unwrap().len(), 2);
        assert_eq!(enumerate_seeds(&st, 2, 100).unwrap().len(), 2);
        assert_eq!(enumerate_seeds(&st, 1, 1), Err(Error::CapExceeded(1)));
    }

    #[test]
    fn valuations_and_membership() {
        let (s, _) = sl2();
        let st = SeedState::initial(s.clone());
        let states = enumerate_seeds(&st, 1, 100).unwrap();
        let v = |i| LaurentPoly::var(4, i);
        let a0 = v(0);
        assert_eq!(frozen_valuation(&s, &a0, 0, &states).unwrap(), 1);
        let a1p = (v(1) * v(3) + v(0)) * v(2).pow(-1).unwrap();
        assert_eq!(frozen_valuation(&s, &a1p, 3, &states).unwrap(), 0);
        let f = v(1) * a0.pow(2).unwrap();
        assert_eq!(frozen_valuation(&s, &f, 0, &states).unwrap(), 2);

        let all_frozen = s.frozen_positions();
        let r = membership(&s, &a1p, &all_frozen, &states, 1).unwrap();
        assert_eq!(r.verdict, Verdict::InUpperBar);
        let inv = a0.pow(-1).unwrap();
        assert_eq!(membership(&s, &inv, &[1, 3], &states, 1).unwrap().verdict, Verdict::InUpperBar);
        let r = membership(&s, &inv, &all_frozen, &states, 1).unwrap();
        assert_eq!(r.verdict, Verdict::InUpperOnly);
        assert_eq!(r.witnesses[0].exponent, Some(-1));
        let r = membership(&s, &v(2).pow(-1).unwrap(), &all_frozen, &states, 1).unwrap();
        assert_eq!(r.verdict, Verdict::NotLaurent);
        assert_eq!(r.witnesses[0].seed_path, vec![2]);
    }

    #[test]
    fn specialization() {
        let v = |i| LaurentPoly::var(2, i);
        let f = v(0) * v(1) - v(0).pow(2).unwrap();
        let g = specialize(&f, &[(0, qf(1, 2))]).unwrap();
        assert_eq!(g, v(1).scale(&qf(1, 2)) - LaurentPoly::constant(2, qf(1, 4)));
        let z = specialize(&f, &[(0, q(0))]).unwrap();
        assert!(z.is_zero());
        assert_eq!(
            specialize(&v(0).pow(-1).unwrap(), &[(0, q(0))]),
            Err(Error::NonInvertibleSubstitution(0))
        );
    }
}
