//! Monoid-side constructions at small rank: the `SL_2` Vinberg monoid and
//! the `GL_2` family `M_k` as explicit presentations, dotted Cartan matrices
//! from specialization data, valuation oracles and the monomial test.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cartan::CartanMatrix;
use crate::cluster::specialize;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::Rational;

/// Generators, defining relations and a reference substitution into a
/// polynomial ring under which every relation must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<LaurentPoly>,
    pub target_names: Vec<String>,
    /// Image of each generator in the target ring.
    pub substitution: Vec<LaurentPoly>,
}

impl MonoidPresentation {
    /// True iff every relation maps to zero.
    pub fn verify(&self) -> Result<bool> {
        for rel in &self.relations {
            if !rel.substitute(&self.substitution)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.to_canonical_string(&self.generators))
            .collect()
    }
}

/// Variable names of the matrix coordinate ring of `M_2`.
pub const Y_NAMES: [&str; 4] = ["y11", "y12", "y21", "y22"];

fn yvar(i: usize) -> LaurentPoly {
    LaurentPoly::var(4, i)
}

/// `y11 y22 - y12 y21`.
pub fn det2() -> LaurentPoly {
    yvar(0) * yvar(3) - yvar(1) * yvar(2)
}

const GENERATORS: [&str; 5] = ["A1", "A2", "A3", "A1'", "A0"];

fn gvar(i: usize) -> LaurentPoly {
    LaurentPoly::var(5, i)
}

/// `C[A1, A2, A3, A1', A0] / (A1 A1' - A2 A3 - A0)` mapped onto `C[M_2]`.
pub fn sl2_env_presentation() -> MonoidPresentation {
    gl2_family(0)
}

/// Presentation of `C[M_k]`: relation `A1 A1' - A2 A3 - A0^{1+2k}`, with
/// `A1, A2, A3, A1' -> y_ij Delta^k` and `A0 -> Delta`.
pub fn gl2_family(k: u32) -> MonoidPresentation {
    let rel = gvar(0) * gvar(3) - gvar(1) * gvar(2) - gvar(4).pow(1 + 2 * k as i64).unwrap();
    let dk = det2().pow(k as i64).unwrap();
    let substitution = vec![
        yvar(0) * &dk,
        yvar(1) * &dk,
        yvar(2) * &dk,
        yvar(3) * &dk,
        det2(),
    ];
    MonoidPresentation {
        generators: GENERATORS.iter().map(|s| s.to_string()).collect(),
        relations: vec![rel],
        target_names: Y_NAMES.iter().map(|s| s.to_string()).collect(),
        substitution,
    }
}

/// Cartan matrix `[[2, -1-2k], [-1-2k, 2]]` of the family.
pub fn gl2_cartan(k: u32) -> Result<CartanMatrix> {
    let a1 = CartanMatrix::of_type("A1")?;
    build_dotted_cartan(&a1, &[vec![1 + 2 * k as i64]])
}

/// Images of the generators on the diagonal torus `diag(x11, x22)`, zero
/// images dropped: the generators of the torus-restricted algebra.
pub fn torus_cone_generators(k: u32) -> Vec<LaurentPoly> {
    let pres = gl2_family(k);
    pres.substitution
        .iter()
        .map(|p| specialize(p, &[(1, Rational::zero()), (2, Rational::zero())]).unwrap())
        .filter(|p| !p.is_zero())
        .map(|p| p.rename(&[0, 0, 0, 1], 2))
        .collect()
}

/// Block matrix on `I ⊔ J`: `A` on `I`, `2 delta` on `J`,
/// `a_{ij'} = -f_ij`, `a_{j'i} = -d_i f_ij`.
pub fn build_dotted_cartan(a: &CartanMatrix, f: &[Vec<i64>]) -> Result<CartanMatrix> {
    let r = a.rank();
    if f.len() != r {
        return Err(Error::InvalidArgument(format!(
            "specialization matrix has {} rows, expected {r}",
            f.len()
        )));
    }
    let k = f.first().map_or(0, |row| row.len());
    if f.iter().any(|row| row.len() != k || row.iter().any(|&x| x < 0)) {
        return Err(Error::InvalidArgument(
            "specialization matrix must be a rectangular nonnegative integer matrix".into(),
        ));
    }
    let d = a.symmetrizers();
    let mut m = vec![vec![0i64; r + k]; r + k];
    for i in 0..r {
        for j in 0..r {
            m[i][j] = a.entries()[i][j];
        }
        for j in 0..k {
            m[i][r + j] = -f[i][j];
            m[r + j][i] = -d[i] * f[i][j];
        }
    }
    for j in 0..k {
        m[r + j][r + j] = 2;
    }
    let mut labels = a.labels().to_vec();
    labels.extend((1..=k).map(|j| format!("{j}'")));
    CartanMatrix::new(labels, m)
}

/// Syntactic test: every entry is zero or one term with coefficient 1.
pub fn is_monomial_map(map: &[LaurentPoly]) -> bool {
    map.iter().all(|p| {
        p.is_zero() || (p.is_monomial() && p.terms().all(|(_, c)| c.is_one()))
    })
}

/// Whether each `f(x_i)` is group-like for the coordinatewise
/// comultiplication, `f(x_i)(y z) = f(x_i)(y) f(x_i)(z)`; agrees with
/// [`is_monomial_map`] on polynomial maps.
pub fn is_monomial_monoid_hom(map: &[LaurentPoly]) -> bool {
    let ok = map.iter().all(|p| {
        let n = p.nvars();
        let left: Vec<LaurentPoly> = (0..n).map(|j| LaurentPoly::var(2 * n, j)).collect();
        let right: Vec<LaurentPoly> = (0..n).map(|j| LaurentPoly::var(2 * n, n + j)).collect();
        let prod: Vec<LaurentPoly> = (0..n).map(|j| &left[j] * &right[j]).collect();
        if n == 0 {
            return p.is_zero() || p.constant_term().is_one();
        }
        let delta = p.substitute(&prod).expect("arity matches");
        let tensor = p.substitute(&left).expect("arity") * p.substitute(&right).expect("arity");
        delta == tensor
    });
    debug_assert_eq!(ok, is_monomial_map(map));
    ok
}

/// Order of vanishing along `{det = 0}`.
pub fn vinberg_valuation_sl2(f: &LaurentPoly) -> Result<u32> {
    f.adic_valuation(&det2())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// `y12`-adic order for `Plus`, `y21`-adic order for `Minus`.
pub fn boundary_valuation_sl2(f: &LaurentPoly, side: Side) -> Result<u32> {
    let v = match side {
        Side::Plus => yvar(1),
        Side::Minus => yvar(2),
    };
    f.adic_valuation(&v)
}

/// Substitutes constants for generators in every relation.
pub fn specialize_frozen(p: &MonoidPresentation, assignment: &[(usize, Rational)]) -> Result<MonoidPresentation> {
    let relations = p
        .relations
        .iter()
        .map(|r| specialize(r, assignment))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidPresentation {
        relations,
        ..p.clone()
    })
}

/// Expresses a polynomial in the `y_ij` in the initial cluster of the framed
/// `SL_2` seed: `y11 -> A1, y12 -> A2, y21 -> A3, y22 -> (A2 A3 + A0)/A1`.
/// `positions` gives the seed positions of `[A0, A1, A2, A3]`.
pub fn to_sl2_cluster(f: &LaurentPoly, positions: [usize; 4]) -> Result<LaurentPoly> {
    let n = 4;
    let v = |name: usize| LaurentPoly::var(n, positions[name]);
    let a1p = (v(2) * v(3) + v(0)) * v(1).pow(-1)?;
    f.substitute(&[v(1), v(2), v(3), a1p])
}

/// `A1 A1' - A2 A3 - c` with the named constant in place of `A0`.
pub fn sl2_fibre_relation(c: &Rational) -> LaurentPoly {
    gvar(0) * gvar(3) - gvar(1) * gvar(2) - LaurentPoly::constant(5, c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn sl2_relation_vanishes() {
        let p = sl2_env_presentation();
        assert!(p.verify().unwrap());
        assert_eq!(
            p.relation_strings()[0],
            "1/1*A1*A1' + -1/1*A2*A3 + -1/1*A0"
        );
    }

    #[test]
    fn fibres() {
        let p = sl2_env_presentation();
        let a0 = p.generator("A0").unwrap();
        let at1 = specialize_frozen(&p, &[(a0, q(1))]).unwrap();
        assert_eq!(at1.relations[0], sl2_fibre_relation(&q(1)));
        let at0 = specialize_frozen(&p, &[(a0, q(0))]).unwrap();
        assert_eq!(at0.relations[0], sl2_fibre_relation(&q(0)));
        // y11 y22 = y12 y21 on the zero fibre
        let img = at0.relations[0].substitute(&p.substitution).unwrap();
        assert_eq!(img, det2());
    }

    #[test]
    fn gl2_identities() {
        for k in 0..4 {
            assert!(gl2_family(k).verify().unwrap());
            let c = -1 - 2 * k as i64;
            assert_eq!(gl2_cartan(k).unwrap().entries(), &vec![vec![2, c], vec![c, 2]]);
        }
        assert_eq!(gl2_family(0), sl2_env_presentation());
    }

    #[test]
    fn torus_cone_k1() {
        let x = |i| LaurentPoly::var(2, i);
        let gens = torus_cone_generators(1);
        assert_eq!(
            gens,
            vec![
                x(0).pow(2).unwrap() * x(1),
                x(0) * x(1).pow(2).unwrap(),
                x(0) * x(1)
            ]
        );
    }

    #[test]
    fn dotted_cartan() {
        let a1 = CartanMatrix::of_type("A1").unwrap();
        assert_eq!(build_dotted_cartan(&a1, &[vec![1]]).unwrap(), a1.frame());
        let a2 = CartanMatrix::of_type("A2").unwrap();
        let d = build_dotted_cartan(&a2, &[vec![1], vec![1]]).unwrap();
        assert_eq!(d.entries()[0][2], -1);
        assert_eq!(d.entries()[1][2], -1);
        assert_eq!(d.entries()[2][0], -1);
        assert!(build_dotted_cartan(&a2, &[vec![-1], vec![1]]).is_err());
        // non-symmetric: the forced column differs from the framed matrix
        let b2 = CartanMatrix::of_type("B2").unwrap();
        let db = build_dotted_cartan(&b2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(db.entries()[2][0], -2);
        assert_ne!(db.entries(), b2.frame().entries());
    }

    #[test]
    fn monomial_classifier() {
        let y = |i| LaurentPoly::var(2, i);
        assert!(is_monomial_monoid_hom(&[y(0) * y(1).pow(3).unwrap()]));
        assert!(!is_monomial_monoid_hom(&[y(0) + y(1)]));
        assert!(is_monomial_monoid_hom(&[LaurentPoly::zero(2)]));
        assert!(!is_monomial_monoid_hom(&[y(0).scale(&q(2))]));
    }

    #[test]
    fn valuations() {
        let y = yvar;
        let d = det2();
        assert_eq!(vinberg_valuation_sl2(&d).unwrap(), 1);
        assert_eq!(boundary_valuation_sl2(&d, Side::Plus).unwrap(), 0);
        let f = y(1).pow(2).unwrap() * &d;
        assert_eq!(vinberg_valuation_sl2(&f).unwrap(), 1);
        assert_eq!(boundary_valuation_sl2(&f, Side::Plus).unwrap(), 2);
        assert_eq!(boundary_valuation_sl2(&f, Side::Minus).unwrap(), 0);
        assert_eq!(vinberg_valuation_sl2(&(y(0) * y(3))).unwrap(), 0);
    }
}
