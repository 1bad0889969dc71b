//! Verification suites. Each suite returns a [`Report`] whose checks are
//! ordered deterministically; identical configurations give identical
//! reports.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use vinberg_core::cartan::{RootDatum, Weight};
use vinberg_core::cluster::{enumerate_seeds, frozen_valuation, mutate_matrix, mutate_state, SeedState};
use vinberg_core::crystal::{
    bounded_vectors, check_minor_shape, crystal_elements, leading_injectivity, minor_string,
    small_weights, string_param, tensor_subadditivity, StringTriple,
};
use vinberg_core::group::{label_values, random_point_from, sample_points, verify_exchange, GroupPoint};
use vinberg_core::laurent::LaurentPoly;
use vinberg_core::monoid::{
    boundary_valuation_sl2, build_dotted_cartan, det2, gl2_cartan, gl2_family, is_monomial_monoid_hom,
    sl2_env_presentation, sl2_fibre_relation, specialize_frozen, to_sl2_cluster, torus_cone_generators,
    vinberg_valuation_sl2, Side,
};
use vinberg_core::seed::{framed_seed, longest_double_word, build_seed, FramedSeed, Seed};
use vinberg_core::{q, qf, Error, Rational};

use crate::CliError;

pub const SUITES: [&str; 8] = [
    "sl2",
    "presentations",
    "sl3",
    "valuations",
    "crystal",
    "gl2",
    "properties",
    "monomial",
];

#[derive(Clone, Debug)]
pub struct Config {
    pub rng_seed: u64,
    pub depth: Option<usize>,
    pub samples: Option<usize>,
    pub k: Vec<u32>,
    pub max_seeds: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            rng_seed: 42,
            depth: None,
            samples: None,
            k: Vec::new(),
            max_seeds: crate::max_seeds_from_env(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub rng_seed: u64,
    pub depth: usize,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn new() -> Self {
        Builder { checks: Vec::new() }
    }

    fn push(&mut self, id: &str, passed: bool, detail: Value) {
        self.checks.push(Check {
            id: id.to_string(),
            passed,
            detail,
        });
    }

    /// Runs a check; an error fails it and is recorded in the detail.
    fn run(&mut self, id: &str, f: impl FnOnce() -> Result<(bool, Value), CliError>) {
        match f() {
            Ok((ok, detail)) => self.push(id, ok, detail),
            Err(e) => self.push(id, false, json!({ "error": e.to_string() })),
        }
    }

    fn finish(self, suite: &str, cfg: &Config, depth: usize, samples: usize) -> Report {
        let passed = self.checks.iter().all(|c| c.passed);
        Report {
            suite: suite.to_string(),
            rng_seed: cfg.rng_seed,
            depth,
            samples,
            passed,
            checks: self.checks,
        }
    }
}

/// Independent generator for a named sub-task of a run.
pub fn stream(rng_seed: u64, tag: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(rng_seed);
    r.set_stream(tag);
    r
}

fn sub_seed(rng_seed: u64, tag: u64) -> u64 {
    stream(rng_seed, tag).next_u64()
}

pub fn run_suite(name: &str, cfg: &Config) -> Result<Report, CliError> {
    match name {
        "sl2" => Ok(sl2(cfg)),
        "presentations" => Ok(presentations(cfg)),
        "sl3" => Ok(sl3(cfg)),
        "valuations" => Ok(valuations(cfg)),
        "crystal" => Ok(crystal(cfg)),
        "gl2" => Ok(gl2(cfg)),
        "properties" => Ok(properties(cfg)),
        "monomial" => Ok(monomial(cfg)),
        other => Err(CliError::Input(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn names_of(seed: &Seed, ps: &[usize]) -> Vec<String> {
    ps.iter().map(|&p| seed.names()[p].clone()).collect()
}

fn pos(seed: &Seed, name: &str) -> Result<usize, CliError> {
    seed.position_of_name(name)
        .ok_or_else(|| CliError::Input(format!("no vertex named {name}")))
}

fn framed(ty: &str) -> Result<(RootDatum, FramedSeed), CliError> {
    let d = RootDatum::of_type(ty)?;
    let fs = framed_seed(&d)?;
    Ok((d, fs))
}

fn exchange_check(
    datum: &RootDatum,
    fs: &FramedSeed,
    k: usize,
    points: &[GroupPoint],
    curve_seed: u64,
) -> Result<(bool, Value), CliError> {
    let seed = &fs.built.seed;
    let st = SeedState::initial(seed.clone());
    let rep = verify_exchange(datum, seed, &fs.built.labels, &st, k, points, Some(curve_seed))?;
    let m = mutate_state(&st, k)?;
    Ok((
        rep.passed(),
        json!({
            "vertex": seed.names()[k],
            "mutated": m.vars[k].display(seed.names()),
            "points": rep.points_checked,
            "failures": rep.failures.len(),
            "replay_mismatches": rep.replay_mismatches,
            "curves": rep.curves_checked,
            "irregular_curves": rep.irregular_curves,
        }),
    ))
}

/// Framed `SL_2`: shape, the exchange relation `A1 A1' = A2 A3 + A0`
/// symbolically and at random points.
pub fn sl2(cfg: &Config) -> Report {
    let samples = cfg.samples.unwrap_or(100);
    let depth = cfg.depth.unwrap_or(1);
    let mut b = Builder::new();
    let built = framed("A1");
    let (a1, fs) = match built {
        Ok(x) => x,
        Err(e) => {
            b.push("build", false, json!({ "error": e.to_string() }));
            return b.finish("sl2", cfg, depth, samples);
        }
    };
    let seed = &fs.built.seed;
    let mutable = seed.mutable_positions();
    let frozen = seed.frozen_positions();
    b.push(
        "shape",
        mutable.len() == 1 && frozen.len() == 3,
        json!({
            "word": fs.built.word.letters(),
            "mutable": names_of(seed, &mutable),
            "frozen": names_of(seed, &frozen),
            "sigma": names_of(seed, &fs.sigma),
            "i_prime": names_of(seed, &fs.i_prime),
        }),
    );
    b.run("exchange_symbolic", || {
        let v = |name: &str| -> Result<LaurentPoly, CliError> { Ok(LaurentPoly::var(4, pos(seed, name)?)) };
        let k = pos(seed, "A1")?;
        let m = mutate_state(&SeedState::initial(seed.clone()), k)?;
        let rel = v("A1")? * &m.vars[k] - v("A2")? * v("A3")? - v("A0")?;
        Ok((
            rel.is_zero() && mutable == vec![k],
            json!({
                "A1'": m.vars[k].display(seed.names()),
                "relation": "A1*A1' - A2*A3 - A0",
                "residual": rel.display(seed.names()),
            }),
        ))
    });
    let points = sample_points(&a1, &fs.built.labels, sub_seed(cfg.rng_seed, 1), samples);
    b.run("exchange_pointwise", || {
        let points = points.clone()?;
        let (ok, mut detail) = exchange_check(&a1, &fs, mutable[0], &points, sub_seed(cfg.rng_seed, 2))?;
        detail["convention"] = json!("A0 = t^2, A1 = g11 t, A2 = -g12 t, A3 = -g21 t");
        Ok((ok && points.len() == samples, detail))
    });
    // A1' against the matrix entry g22 t, independently of the seed
    b.run("mutated_variable_is_g22_t", || {
        let points = points?;
        let k = mutable[0];
        let m = mutate_state(&SeedState::initial(seed.clone()), k)?;
        let mut mismatches = 0;
        for p in &points {
            let vals = label_values(&a1, &fs.built.labels, p)?;
            if m.vars[k].eval(&vals)? != &p.matrix[1][1] * &p.torus[0] {
                mismatches += 1;
            }
        }
        Ok((mismatches == 0, json!({ "points": points.len(), "mismatches": mismatches })))
    });
    b.finish("sl2", cfg, depth, samples)
}

fn random_small(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.random_range(-6..=6);
    let d: i64 = rng.random_range(1..=3);
    qf(n, d)
}

/// `[y11, y12, y21, y22]` of a random 2x2 matrix with determinant `c`.
fn matrix_with_det(rng: &mut ChaCha8Rng, c: &Rational) -> [Rational; 4] {
    loop {
        let a = random_small(rng);
        let b = random_small(rng);
        let cc = random_small(rng);
        if a == q(0) {
            continue;
        }
        let d = (c + &b * &cc) / &a;
        return [a, b, cc, d];
    }
}

/// `SL_2` presentation and its fibres under `A0 -> c`.
pub fn presentations(cfg: &Config) -> Report {
    let samples = cfg.samples.unwrap_or(20);
    let mut b = Builder::new();
    let p = sl2_env_presentation();
    let names = p.generators.clone();
    let a0 = p.generator("A0").expect("A0 is a generator");
    b.run("relation_vanishes_on_m2", || {
        Ok((p.verify()?, json!({ "relations": p.relation_strings() })))
    });
    let mut rng = stream(cfg.rng_seed, 3);
    // values for (A1, A2, A3, A1', A0) from a matrix (y11, y12, y21, y22)
    let eval_at = |rel: &LaurentPoly, y: &[Rational; 4], a0v: &Rational| -> Result<Rational, CliError> {
        Ok(rel.eval(&[y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone(), a0v.clone()])?)
    };
    for (id, c) in [
        ("group_fibre_a0_1", q(1)),
        ("gl2_fibre_a0_2", q(2)),
        ("gl2_fibre_a0_-3", q(-3)),
        ("gl2_fibre_a0_1/2", qf(1, 2)),
    ] {
        let ys: Vec<[Rational; 4]> = (0..samples).map(|_| matrix_with_det(&mut rng, &c)).collect();
        b.run(id, || {
            let s = specialize_frozen(&p, &[(a0, c.clone())])?;
            let rel = &s.relations[0];
            let symbolic = *rel == sl2_fibre_relation(&c);
            let mut bad = 0;
            for y in &ys {
                if eval_at(rel, y, &q(0))? != q(0) {
                    bad += 1;
                }
            }
            Ok((
                symbolic && bad == 0,
                json!({ "relation": rel.display(&names), "matrices": ys.len(), "nonvanishing": bad }),
            ))
        });
    }
    let rank_one: Vec<[Rational; 4]> = (0..samples)
        .map(|_| {
            let (u1, u2, w1, w2) = (
                random_small(&mut rng),
                random_small(&mut rng),
                random_small(&mut rng),
                random_small(&mut rng),
            );
            [&u1 * &w1, &u1 * &w2, &u2 * &w1, &u2 * &w2]
        })
        .collect();
    let generic = matrix_with_det(&mut rng, &q(5));
    b.run("asymptotic_semigroup_a0_0", || {
        let s = specialize_frozen(&p, &[(a0, q(0))])?;
        let rel = &s.relations[0];
        let expected = LaurentPoly::var(5, 0) * LaurentPoly::var(5, 3) - LaurentPoly::var(5, 1) * LaurentPoly::var(5, 2);
        let mut bad = 0;
        for y in &rank_one {
            if eval_at(rel, y, &q(0))? != q(0) {
                bad += 1;
            }
        }
        let separates = eval_at(rel, &generic, &q(0))? != q(0);
        Ok((
            *rel == expected && bad == 0 && separates,
            json!({ "relation": rel.display(&names), "rank_one_matrices": rank_one.len(), "nonvanishing": bad }),
        ))
    });
    b.finish("presentations", cfg, 0, samples)
}

/// Framed `SL_3`: shape, Laurent phenomenon up to the given depth and the
/// four initial exchange relations.
pub fn sl3(cfg: &Config) -> Report {
    let samples = cfg.samples.unwrap_or(50);
    let depth = cfg.depth.unwrap_or(3);
    let mut b = Builder::new();
    let (a2, fs) = match framed("A2") {
        Ok(x) => x,
        Err(e) => {
            b.push("build", false, json!({ "error": e.to_string() }));
            return b.finish("sl3", cfg, depth, samples);
        }
    };
    let seed = &fs.built.seed;
    let mutable = seed.mutable_positions();
    b.push(
        "shape",
        seed.len() == 10 && mutable.len() == 4,
        json!({
            "vertices": seed.len(),
            "mutable": names_of(seed, &mutable),
            "frozen": names_of(seed, &seed.frozen_positions()),
            "sigma": names_of(seed, &fs.sigma),
        }),
    );
    b.run("laurent_phenomenon", || {
        let initial = SeedState::initial(seed.clone());
        match enumerate_seeds(&initial, depth, cfg.max_seeds) {
            Ok(states) => {
                let vars: usize = states.iter().map(|s| s.vars.len()).sum();
                Ok((true, json!({ "states": states.len(), "variables_checked": vars, "violations": 0 })))
            }
            Err(Error::LaurentViolation(k)) => Ok((
                false,
                json!({ "violations": 1, "vertex": seed.names()[k] }),
            )),
            Err(e) => Err(e.into()),
        }
    });
    let points = sample_points(&a2, &fs.built.labels, sub_seed(cfg.rng_seed, 4), samples);
    let results: Vec<(usize, Result<(bool, Value), CliError>)> = mutable
        .par_iter()
        .map(|&k| {
            let r = points
                .clone()
                .map_err(CliError::from)
                .and_then(|pts| exchange_check(&a2, &fs, k, &pts, sub_seed(cfg.rng_seed, 100 + k as u64)));
            (k, r)
        })
        .collect();
    for (k, r) in results {
        b.run(&format!("exchange_{}", seed.names()[k]), || r);
    }
    b.finish("sl3", cfg, depth, samples)
}

/// Deterministic random polynomial in the `y_ij` with 1 to 4 terms.
fn random_y_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    loop {
        let terms = rng.random_range(1..=4);
        let mut f = LaurentPoly::zero(4);
        for _ in 0..terms {
            let exps: Vec<i32> = (0..4).map(|_| rng.random_range(0..=2)).collect();
            let c: i64 = rng.random_range(-5..=5);
            f = f + LaurentPoly::monomial(exps, q(c));
        }
        if rng.random_bool(0.3) {
            f = f * det2().pow(rng.random_range(1..=2)).expect("nonnegative power");
        }
        if !f.is_zero() {
            return f;
        }
    }
}

fn monomials_up_to(nvars: usize, max_deg: i32) -> Vec<LaurentPoly> {
    bounded_vectors(nvars, max_deg as usize)
        .into_iter()
        .map(|e| LaurentPoly::monomial(e.into_iter().map(|x| x as i32).collect(), q(1)))
        .collect()
}

/// Valuation corpus for `SL_2`: cluster variables, monomials of degree at
/// most 3, determinant multiples and seeded random polynomials.
pub fn valuation_corpus(rng_seed: u64, random: usize) -> Vec<(String, LaurentPoly)> {
    let y = |i| LaurentPoly::var(4, i);
    let mut out = vec![
        ("cluster:A0".to_string(), det2()),
        ("cluster:A1".to_string(), y(0)),
        ("cluster:A2".to_string(), y(1)),
        ("cluster:A3".to_string(), y(2)),
        ("cluster:A1'".to_string(), y(3)),
    ];
    for (i, m) in monomials_up_to(4, 3).into_iter().enumerate() {
        out.push((format!("monomial:{i:02}"), m));
    }
    for (i, m) in monomials_up_to(4, 1).into_iter().enumerate() {
        out.push((format!("det_multiple:{i}"), &m * &det2()));
        out.push((format!("det2_multiple:{i}"), &m * &det2().pow(2).expect("power")));
    }
    let mut rng = stream(rng_seed, 5);
    for i in 0..random {
        out.push((format!("random:{i:03}"), random_y_poly(&mut rng)));
    }
    out
}

/// Frozen valuations of the framed `SL_2` seed against the `det`-, `y12`-
/// and `y21`-adic orders.
pub fn valuations(cfg: &Config) -> Report {
    let samples = cfg.samples.unwrap_or(200);
    let depth = cfg.depth.unwrap_or(2);
    let mut b = Builder::new();
    let setup = (|| -> Result<_, CliError> {
        let (_, fs) = framed("A1")?;
        let seed = fs.built.seed.clone();
        let positions = [pos(&seed, "A0")?, pos(&seed, "A1")?, pos(&seed, "A2")?, pos(&seed, "A3")?];
        let states = enumerate_seeds(&SeedState::initial(seed.clone()), depth, cfg.max_seeds)?;
        Ok((seed, positions, states))
    })();
    let (seed, positions, states) = match setup {
        Ok(x) => x,
        Err(e) => {
            b.push("setup", false, json!({ "error": e.to_string() }));
            return b.finish("valuations", cfg, depth, samples);
        }
    };
    let corpus = valuation_corpus(cfg.rng_seed, samples);
    let ynames: Vec<String> = vinberg_core::monoid::Y_NAMES.iter().map(|s| s.to_string()).collect();
    let rows: Vec<Result<Value, String>> = corpus
        .par_iter()
        .map(|(id, f)| {
            let run = || -> Result<Value, CliError> {
                let g = to_sl2_cluster(f, positions)?;
                let cl = [
                    frozen_valuation(&seed, &g, positions[0], &states)?,
                    frozen_valuation(&seed, &g, positions[2], &states)?,
                    frozen_valuation(&seed, &g, positions[3], &states)?,
                ];
                let geo = [
                    vinberg_valuation_sl2(f)? as i64,
                    boundary_valuation_sl2(f, Side::Plus)? as i64,
                    boundary_valuation_sl2(f, Side::Minus)? as i64,
                ];
                Ok(json!({
                    "id": id,
                    "f": f.display(&ynames),
                    "cluster": cl,
                    "adic": geo,
                    "agree": cl == geo,
                }))
            };
            run().map_err(|e| format!("{id}: {e}"))
        })
        .collect();
    let mut table = Vec::new();
    let mut errors = Vec::new();
    for r in rows {
        match r {
            Ok(v) => table.push(v),
            Err(e) => errors.push(e),
        }
    }
    let mismatches = table.iter().filter(|v| v["agree"] != json!(true)).count();
    b.push(
        "valuation_agreement",
        mismatches == 0 && errors.is_empty(),
        json!({
            "items": corpus.len(),
            "seeds": states.len(),
            "columns": ["nu(A0) vs det", "nu(A2) vs y12", "nu(A3) vs y21"],
            "mismatches": mismatches,
            "errors": errors,
            "table": table,
        }),
    );
    b.finish("valuations", cfg, depth, samples)
}

/// All reduced words of `w0` in type `A_{n-1}`, for `n <= 3`.
fn w0_words(n: usize) -> Vec<Vec<usize>> {
    match n {
        2 => vec![vec![1]],
        3 => vec![vec![1, 2, 1], vec![2, 1, 2]],
        _ => Vec::new(),
    }
}

/// String parametrizations, the three minor shapes on the framed `SL_3`
/// word and leading-term injectivity.
pub fn crystal(cfg: &Config) -> Report {
    let max_dim = cfg.samples.unwrap_or(100);
    let bound = cfg.depth.unwrap_or(3);
    let mut b = Builder::new();
    for n in [2usize, 3] {
        b.run(&format!("string_injective_A{}", n - 1), || {
            let weights = small_weights(n, max_dim, max_dim as i64)?;
            let mut elements = 0usize;
            let mut collisions = 0usize;
            for (lam, dim) in &weights {
                let elts = crystal_elements(lam)?;
                if elts.len() != *dim {
                    collisions += 1;
                }
                for red in w0_words(n) {
                    let mut strings = elts
                        .iter()
                        .map(|x| string_param(x, &red, n))
                        .collect::<Result<Vec<_>, _>>()?;
                    strings.sort();
                    strings.dedup();
                    collisions += elts.len() - strings.len();
                }
                elements += elts.len();
            }
            Ok((
                collisions == 0,
                json!({ "weights": weights.len(), "elements": elements, "collisions": collisions, "max_dim": max_dim }),
            ))
        });
    }
    b.run("minor_shapes_framed_sl3", || {
        let (_, fs) = framed("A2")?;
        let a2 = RootDatum::of_type("A2")?;
        let inner = longest_double_word(&a2)?;
        let inner_seed = build_seed(&inner)?;
        let framed_word = &fs.built.word;
        let r = a2.rank();
        let seed = &fs.built.seed;
        let mut checked = Vec::new();
        let mut failures = Vec::new();
        for p in 0..seed.len() {
            let k = seed.ids()[p];
            let level = seed.levels()[p];
            if level <= r {
                let q_ = inner_seed
                    .seed
                    .position_of_id(k)
                    .ok_or_else(|| CliError::Input(format!("vertex {k} missing from the SL3 word")))?;
                let t = minor_string(&inner, &inner_seed.labels[q_])?;
                if let Err(e) = check_minor_shape(&inner, k, &t) {
                    failures.push(e);
                }
            } else {
                // omega_{i'} is fixed by the Levi Weyl group, so both strings vanish
                let fd = framed_word.datum();
                let lab = &fs.built.labels[p];
                let om = fd.fundamental_weight(level);
                let fixed = fd.element(&lab.u_word)?.apply(&om) == om && fd.element(&lab.v_word)?.apply(&om) == om;
                if !(k < 0 && fixed) {
                    failures.push(format!("vertex {k}: frame level {level} not fixed"));
                }
            }
            checked.push(seed.names()[p].clone());
        }
        Ok((failures.is_empty(), json!({ "vertices": checked, "failures": failures })))
    });
    b.run("leading_injectivity", || {
        let a2 = RootDatum::of_type("A2")?;
        let w = longest_double_word(&a2)?;
        let built = build_seed(&w)?;
        let triples: Vec<StringTriple> = built
            .labels
            .iter()
            .map(|l| minor_string(&w, l))
            .collect::<Result<_, _>>()?;
        let ds = bounded_vectors(triples.len(), bound);
        Ok((
            leading_injectivity(&triples, &ds),
            json!({ "vertices": triples.len(), "max_total_degree": bound, "vectors": ds.len() }),
        ))
    });
    b.run("tensor_lex_subadditivity", || {
        let pairs = [([1, 0], [1, 0]), ([1, 0], [0, 1]), ([1, 1], [1, 0]), ([0, 2], [1, 1])];
        let mut checked = 0;
        let mut failures = Vec::new();
        for (m1, m2) in pairs {
            for red in w0_words(3) {
                match tensor_subadditivity(&Weight(m1.to_vec()), &Weight(m2.to_vec()), &red)? {
                    Ok(c) => checked += c,
                    Err((x, y)) => failures.push(json!([x, y])),
                }
            }
        }
        Ok((failures.is_empty(), json!({ "pairs_checked": checked, "failures": failures })))
    });
    b.finish("crystal", cfg, bound, max_dim)
}

/// The `GL_2` family: determinant identity, Cartan matrix and the `k = 1`
/// torus cone.
pub fn gl2(cfg: &Config) -> Report {
    let ks = if cfg.k.is_empty() { vec![0, 1, 2, 3] } else { cfg.k.clone() };
    let mut b = Builder::new();
    for &k in &ks {
        b.run(&format!("identity_k{k}"), || {
            let p = gl2_family(k);
            Ok((p.verify()?, json!({ "relations": p.relation_strings() })))
        });
        b.run(&format!("dotted_cartan_k{k}"), || {
            let a1 = vinberg_core::cartan::CartanMatrix::of_type("A1")?;
            let c = build_dotted_cartan(&a1, &[vec![1 + 2 * k as i64]])?;
            let e = -1 - 2 * k as i64;
            let ok = c.entries() == &vec![vec![2, e], vec![e, 2]] && c == gl2_cartan(k)?;
            Ok((ok, json!({ "matrix": c.entries() })))
        });
    }
    b.run("torus_cone_k1", || {
        let x = |i| LaurentPoly::var(2, i);
        let mut got = torus_cone_generators(1);
        got.sort();
        got.dedup();
        let mut want = vec![
            x(0).pow(2)? * x(1),
            x(0) * x(1).pow(2)?,
            x(0) * x(1),
        ];
        want.sort();
        let names = ["x11", "x22"];
        Ok((
            got == want,
            json!({ "generators": got.iter().map(|g| g.display(&names)).collect::<Vec<_>>() }),
        ))
    });
    b.finish("gl2", cfg, 0, ks.len())
}

fn is_skew_symmetrizable(s: &Seed) -> bool {
    let d = s.symmetrizers();
    (0..s.len()).all(|i| (0..s.len()).all(|j| s.entry(i, j) * q(d[j]) == -(s.entry(j, i) * q(d[i]))))
}

/// Random mutation walks, valuation seed-independence and the central
/// twist.
pub fn properties(cfg: &Config) -> Report {
    let samples = cfg.samples.unwrap_or(500);
    let depth = cfg.depth.unwrap_or(2);
    let mut b = Builder::new();
    let seeds = match (framed("A1"), framed("A2")) {
        (Ok(x), Ok(y)) => [x, y],
        (Err(e), _) | (_, Err(e)) => {
            b.push("build", false, json!({ "error": e.to_string() }));
            return b.finish("properties", cfg, depth, samples);
        }
    };
    b.run("mutation_involutive", || {
        let mut rng = stream(cfg.rng_seed, 6);
        let mut states: Vec<SeedState> = seeds.iter().map(|(_, fs)| SeedState::initial(fs.built.seed.clone())).collect();
        let (mut matrix_fail, mut state_fail, mut skew_fail) = (0, 0, 0);
        for step in 0..samples {
            let which = rng.random_range(0..states.len());
            if step % 12 == 0 {
                states[which] = SeedState::initial(seeds[which].1.built.seed.clone());
            }
            let st = &states[which];
            let ks = st.seed.mutable_positions();
            let k = ks[rng.random_range(0..ks.len())];
            let m = mutate_state(st, k)?;
            if !is_skew_symmetrizable(&m.seed) {
                skew_fail += 1;
            }
            if mutate_matrix(&m.seed, k)? != st.seed {
                matrix_fail += 1;
            }
            let back = mutate_state(&m, k)?;
            if back.vars != st.vars {
                state_fail += 1;
            }
            states[which] = m;
        }
        Ok((
            matrix_fail + state_fail + skew_fail == 0,
            json!({
                "mutations": samples,
                "matrix_failures": matrix_fail,
                "state_failures": state_fail,
                "skew_failures": skew_fail,
            }),
        ))
    });
    for (ty, (_, fs)) in ["A1", "A2"].iter().zip(&seeds) {
        b.run(&format!("valuation_seed_independence_{ty}"), || {
            let seed = &fs.built.seed;
            let states = enumerate_seeds(&SeedState::initial(seed.clone()), depth, cfg.max_seeds)?;
            let mut vars: Vec<LaurentPoly> = states.iter().flat_map(|s| s.vars.iter().cloned()).collect();
            vars.sort();
            vars.dedup();
            let frozen = seed.frozen_positions();
            let tasks: Vec<(usize, usize)> = (0..vars.len()).flat_map(|i| frozen.iter().map(move |&j| (i, j))).collect();
            let results: Vec<Result<i64, Error>> = tasks
                .par_iter()
                .map(|&(i, j)| frozen_valuation(seed, &vars[i], j, &states))
                .collect();
            let disagreements = results.iter().filter(|r| matches!(r, Err(Error::SeedDisagreement { .. }))).count();
            let errors = results.iter().filter(|r| r.is_err()).count() - disagreements;
            let negative = results.iter().filter(|r| matches!(r, Ok(v) if *v < 0)).count();
            Ok((
                disagreements == 0 && errors == 0 && negative == 0,
                json!({
                    "seeds": states.len(),
                    "variables": vars.len(),
                    "frozen": frozen.len(),
                    "seed_disagreements": disagreements,
                    "errors": errors,
                    "negative_valuations": negative,
                }),
            ))
        });
    }
    b.run("z_twist_sl2", || {
        let (a1, fs) = &seeds[0];
        let mut rng = stream(cfg.rng_seed, 7);
        let zeta = q(-1);
        let mut differ = 0;
        let count = 100;
        for _ in 0..count {
            let p = random_point_from(a1, &mut rng)?;
            let tw = p.twist(&zeta);
            if !tw.is_valid() || label_values(a1, &fs.built.labels, &p)? != label_values(a1, &fs.built.labels, &tw)? {
                differ += 1;
            }
        }
        Ok((differ == 0, json!({ "points": count, "zeta": "-1", "differences": differ })))
    });
    b.finish("properties", cfg, depth, samples)
}

/// Random maps `x_i -> f_i(y)`: half monomial, half with a two-term entry.
pub fn monomial_maps(rng_seed: u64, each: usize) -> Vec<(Vec<LaurentPoly>, bool)> {
    let mut rng = stream(rng_seed, 8);
    let mono = |rng: &mut ChaCha8Rng, ny: usize| -> LaurentPoly {
        let e: Vec<i32> = (0..ny).map(|_| rng.random_range(0..=3)).collect();
        LaurentPoly::monomial(e, q(1))
    };
    let mut out = Vec::new();
    for i in 0..2 * each {
        let ny = rng.random_range(1..=3);
        let nx = rng.random_range(1..=3);
        let mut map: Vec<LaurentPoly> = (0..nx).map(|_| mono(&mut rng, ny)).collect();
        let expected = i % 2 == 0;
        if !expected {
            let slot = rng.random_range(0..nx);
            loop {
                let extra = mono(&mut rng, ny);
                if extra != map[slot] {
                    map[slot] = &map[slot] + &extra;
                    break;
                }
            }
        }
        out.push((map, expected));
    }
    out
}

pub fn monomial(cfg: &Config) -> Report {
    let each = cfg.samples.unwrap_or(50);
    let mut b = Builder::new();
    let maps = monomial_maps(cfg.rng_seed, each);
    let verdicts: Vec<bool> = maps.par_iter().map(|(m, _)| is_monomial_monoid_hom(m)).collect();
    let accepted = verdicts.iter().filter(|&&v| v).count();
    let errors = maps.iter().zip(&verdicts).filter(|((_, e), v)| e != *v).count();
    b.push(
        "classifier",
        errors == 0 && accepted == each,
        json!({ "maps": maps.len(), "accepted": accepted, "rejected": maps.len() - accepted, "errors": errors }),
    );
    b.push(
        "zero_map_accepted",
        is_monomial_monoid_hom(&[LaurentPoly::zero(2)]),
        json!({}),
    );
    b.finish("monomial", cfg, 0, each)
}
