//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Variables are positional: a polynomial carries its variable count and
//! every exponent vector has exactly that length. Names only appear when a
//! polynomial is printed, so the same value can be rendered against different
//! variable tables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic with the first variable most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(exponents: Vec<i32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Divisibility in the polynomial sense.
    fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Q[x_1^{±1}, ..., x_n^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The single variable `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Vec<i32>, coeff: Rational) -> Self {
        let mut p = LaurentPoly::zero(exponents.len());
        p.add_term(Monomial(exponents), coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| c.is_one() && m.0.iter().all(|&e| e == 0))
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    /// A single term with nonzero coefficient.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// No negative exponents anywhere.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Pads exponent vectors with zeros up to `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> LaurentPoly {
        assert!(nvars >= self.nvars, "cannot drop variables");
        if nvars == self.nvars {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        LaurentPoly { nvars, terms }
    }

    fn aligned<'a>(
        a: &'a LaurentPoly,
        b: &'a LaurentPoly,
    ) -> (alloc::borrow::Cow<'a, LaurentPoly>, alloc::borrow::Cow<'a, LaurentPoly>) {
        use alloc::borrow::Cow;
        match a.nvars.cmp(&b.nvars) {
            Ordering::Equal => (Cow::Borrowed(a), Cow::Borrowed(b)),
            Ordering::Less => (Cow::Owned(a.with_nvars(b.nvars)), Cow::Borrowed(b)),
            Ordering::Greater => (Cow::Borrowed(a), Cow::Owned(b.with_nvars(a.nvars))),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> LaurentPoly {
        let s = Monomial(shift.to_vec());
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&s), c.clone()))
                .collect(),
        }
    }

    /// Integer power; negative powers are only defined for monomials.
    pub fn pow(&self, exp: i64) -> Result<LaurentPoly> {
        if exp < 0 {
            let inv = self.monomial_inverse().ok_or(Error::NotDivisible)?;
            return inv.pow(-exp);
        }
        let mut base = self.clone();
        let mut acc = LaurentPoly::one(self.nvars);
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Inverse of a single nonzero term.
    pub fn monomial_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_monomial() {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        Some(LaurentPoly::monomial(
            m.0.iter().map(|e| -e).collect(),
            c.recip(),
        ))
    }

    /// Minimum exponent of `var` across all terms.
    pub fn min_exponent(&self, var: usize) -> Result<i32> {
        self.terms
            .keys()
            .map(|m| m.0[var])
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn max_exponent(&self, var: usize) -> Result<i32> {
        self.terms
            .keys()
            .map(|m| m.0[var])
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Componentwise minimum exponents (the monomial content).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out = vec![i32::MAX; self.nvars];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                *o = (*o).min(e);
            }
        }
        if self.terms.is_empty() {
            out.iter_mut().for_each(|o| *o = 0);
        }
        out
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Multivariate division by a single divisor in the polynomial sense,
    /// using graded-lex leading terms. Returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        let (f, g) = Self::aligned(self, divisor);
        let (lm, lc) = g.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let n = f.nvars;
        let mut p = f.into_owned();
        let mut quot = LaurentPoly::zero(n);
        let mut rem = LaurentPoly::zero(n);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if m.divisible_by(&lm) {
                let tm = m.div(&lm);
                let tc = &c / &lc;
                for (gm, gc) in g.terms.iter() {
                    p.add_term(gm.mul(&tm), -(gc * &tc));
                }
                quot.add_term(tm, tc);
            } else {
                p.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact division in the Laurent ring: returns `h` with `self = divisor * h`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (f, g) = Self::aligned(self, divisor);
        if f.is_zero() {
            return Ok(LaurentPoly::zero(f.nvars));
        }
        if let Some(inv) = g.monomial_inverse() {
            return Ok(&*f * &inv);
        }
        // Strip monomial content from both sides; the reduced divisor is then
        // coprime to every variable, so Laurent divisibility is polynomial
        // divisibility of the reduced operands.
        let cf = f.min_exponents();
        let cg = g.min_exponents();
        let fs = f.shift(&neg_vec(&cf));
        let gs = g.shift(&neg_vec(&cg));
        let (quot, rem) = fs.div_rem(&gs)?;
        if !rem.is_zero() {
            return Err(Error::NotDivisible);
        }
        let back: Vec<i32> = cf.iter().zip(&cg).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&back))
    }

    /// Exact division in the polynomial ring (both operands polynomials).
    pub fn poly_exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (quot, rem) = self.div_rem(divisor)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Largest `k` with `p^k | self` in the polynomial ring.
    pub fn adic_valuation(&self, p: &LaurentPoly) -> Result<u32> {
        if self.is_zero() || p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_polynomial() || !p.is_polynomial() {
            return Err(Error::InvalidArgument(
                "adic valuation needs ordinary polynomials".into(),
            ));
        }
        if p.terms.keys().all(|m| m.0.iter().all(|&e| e == 0)) {
            return Err(Error::ConstantDivisor);
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Ok(next) = cur.poly_exact_div(p) {
            cur = next;
            k += 1;
        }
        Ok(k)
    }

    /// Substitutes `x_i -> images[i]`. All images must share one variable
    /// count, which becomes the variable count of the result. A variable that
    /// occurs with a negative exponent needs a single-term image.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::ArityMismatch {
                expected: target,
                got: bad.nvars,
            });
        }
        let mut cache: Vec<BTreeMap<i32, LaurentPoly>> = vec![BTreeMap::new(); self.nvars];
        let mut out = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = images[i]
                        .pow(e as i64)
                        .map_err(|_| Error::NonInvertibleSubstitution(i))?;
                    cache[i].insert(e, p);
                }
                term = &term * &cache[i][&e];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: values.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if values[i].is_zero() {
                    if e < 0 {
                        return Err(Error::NonInvertibleSubstitution(i));
                    }
                    t = Rational::zero();
                    break;
                }
                t *= num_traits::pow::Pow::pow(&values[i], e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Renames variables: `x_i -> y_{map[i]}` in a ring with `target` variables.
    pub fn rename(&self, map: &[usize], target: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Canonical text: terms in descending graded-lex order joined by `" + "`,
    /// each as a `p/q` coefficient followed by `*name^exp` factors.
    pub fn to_canonical_string<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.terms.is_empty() {
            return String::from("0/1");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}/{}", c.numer(), c.denom());
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => {
                        let _ = write!(out, "*{}", names[i].as_ref());
                    }
                    _ => {
                        let _ = write!(out, "*{}^{}", names[i].as_ref(), e);
                    }
                }
            }
        }
        out
    }

    /// Human-oriented rendering (`2*x^2 - y/3`), used in reports and errors.
    pub fn display<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.0.iter().all(|&e| e == 0);
            let mut first = true;
            if !a.is_one() || is_const {
                let _ = write!(out, "{}", a);
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    out.push('*');
                }
                first = false;
                out.push_str(names[i].as_ref());
                if e != 1 {
                    let _ = write!(out, "^{}", e);
                }
            }
        }
        out
    }
}

fn neg_vec(v: &[i32]) -> Vec<i32> {
    v.iter().map(|x| -x).collect()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut out = LaurentPoly::zero(a.nvars);
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$f(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Quotient of two Laurent polynomials, kept unreduced. Used when a Laurent
/// polynomial is rewritten into a cluster where it need not stay Laurent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFraction {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl LaurentFraction {
    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        LaurentFraction {
            num: p,
            den: LaurentPoly::one(n),
        }
    }

    /// The Laurent polynomial this fraction equals, if it is one.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        self.num.exact_div(&self.den).ok()
    }

    /// Valuation along `x_var`: order in the numerator minus order in the
    /// denominator. Well defined because the minimum exponent of a fixed
    /// variable is additive on products.
    pub fn valuation(&self, var: usize) -> Result<i32> {
        Ok(self.num.min_exponent(var)? - self.den.min_exponent(var)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qf};

    fn x() -> LaurentPoly {
        LaurentPoly::var(2, 0)
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(2, 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = (x() + y()) * (x() - y());
        let expect = x().pow(2).unwrap() - y().pow(2).unwrap();
        assert_eq!(p, expect);
        assert_eq!(&p * &LaurentPoly::one(2), p);
    }

    #[test]
    fn laurent_binomial_square() {
        let f = x().pow(-1).unwrap() + y();
        let sq = f.pow(2).unwrap();
        let expect = x().pow(-2).unwrap()
            + x().pow(-1).unwrap().scale(&q(2)) * y()
            + y().pow(2).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn exact_division_cases() {
        let num = x().pow(2).unwrap() - y().pow(2).unwrap();
        assert_eq!(num.exact_div(&(x() - y())).unwrap(), x() + y());
        // monomial divisor always divides in the Laurent ring
        let h = (x() + y()).exact_div(&x()).unwrap();
        assert_eq!(h, LaurentPoly::one(2) + x().pow(-1).unwrap() * y());
        let bad = (x() + y()).exact_div(&(x() + y().scale(&q(2))));
        assert_eq!(bad, Err(Error::NotDivisible));
        assert_eq!(x().exact_div(&LaurentPoly::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn exact_division_with_monomial_content() {
        // (x^-1 y + 1)(x + y) / (x^-1 y + 1)
        let g = x().pow(-1).unwrap() * y() + LaurentPoly::one(2);
        let f = &g * &(x() + y());
        assert_eq!(f.exact_div(&g).unwrap(), x() + y());
    }

    #[test]
    fn min_exponent_scans_terms() {
        let f = x().pow(2).unwrap() * y() + x().pow(-1).unwrap();
        assert_eq!(f.min_exponent(0).unwrap(), -1);
        assert_eq!(LaurentPoly::zero(2).min_exponent(0), Err(Error::ZeroPolynomial));
    }

    fn det2() -> LaurentPoly {
        let v = |i| LaurentPoly::var(4, i);
        v(0) * v(3) - v(1) * v(2)
    }

    #[test]
    fn adic_valuation_against_determinant() {
        let d = det2();
        assert_eq!(d.pow(2).unwrap().adic_valuation(&d).unwrap(), 2);
        assert_eq!(LaurentPoly::var(4, 0).adic_valuation(&d).unwrap(), 0);
        let g = LaurentPoly::var(4, 0) + LaurentPoly::var(4, 1).scale(&q(3));
        assert!((&d * &g).adic_valuation(&d).unwrap() >= 1);
        assert_eq!(
            LaurentPoly::var(4, 1).adic_valuation(&LaurentPoly::one(4)),
            Err(Error::ConstantDivisor)
        );
    }

    #[test]
    fn substitution_cases() {
        // A0 -> det^(1+2k), k = 1
        let a0 = LaurentPoly::var(1, 0);
        let img = a0.substitute(&[det2().pow(3).unwrap()]).unwrap();
        assert_eq!(img, det2().pow(3).unwrap());
        // x -> 0 with nonnegative exponents keeps the constant term
        let f = x() * y() + LaurentPoly::constant(2, q(5));
        let at = f.substitute(&[LaurentPoly::zero(1), LaurentPoly::var(1, 0)]).unwrap();
        assert_eq!(at, LaurentPoly::constant(1, q(5)));
        // A1^-1 at A1 = 2
        let inv = LaurentPoly::var(1, 0).pow(-1).unwrap();
        assert_eq!(inv.eval(&[q(2)]).unwrap(), qf(1, 2));
        assert_eq!(inv.eval(&[q(0)]), Err(Error::NonInvertibleSubstitution(0)));
        assert_eq!(
            inv.substitute(&[LaurentPoly::zero(1)]),
            Err(Error::NonInvertibleSubstitution(0))
        );
    }

    #[test]
    fn canonical_text_is_graded_lex_descending() {
        let f = x().pow(-1).unwrap() + y().pow(2).unwrap().scale(&qf(3, 2)) - x();
        assert_eq!(
            f.to_canonical_string(&["x", "y"]),
            "3/2*y^2 + -1/1*x + 1/1*x^-1"
        );
        assert_eq!(f.display(&["x", "y"]), "3/2*y^2 - x + x^-1");
    }
}
