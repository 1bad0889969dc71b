//! Type `A_{n-1}` crystals on words in the letters `1..=n`, string
//! parametrizations and the leading-term data of generalized minors.
//!
//! Signature rule: for the operators with index `i`, each letter `i` reads as
//! `)` and each `i+1` as `(`; adjacent `()` pairs cancel repeatedly. `e_i`
//! turns the leftmost unmatched `(` into `i`, `f_i` turns the rightmost
//! unmatched `)` into `i+1`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::seed::{DoubleWord, MinorLabel};

/// Crystal element: a word in `1..=n`.
pub type CrystalWord = Vec<usize>;

/// Positions of unmatched `)` (letters `i`) and `(` (letters `i+1`).
fn unmatched(word: &[usize], i: usize) -> (Vec<usize>, Vec<usize>) {
    let mut open: Vec<usize> = Vec::new();
    let mut close: Vec<usize> = Vec::new();
    for (p, &x) in word.iter().enumerate() {
        if x == i + 1 {
            open.push(p);
        } else if x == i {
            if open.pop().is_none() {
                close.push(p);
            }
        }
    }
    (close, open)
}

pub fn crystal_e(word: &[usize], i: usize) -> Option<CrystalWord> {
    let (_, open) = unmatched(word, i);
    let &p = open.first()?;
    let mut w = word.to_vec();
    w[p] = i;
    Some(w)
}

pub fn crystal_f(word: &[usize], i: usize) -> Option<CrystalWord> {
    let (close, _) = unmatched(word, i);
    let &p = close.last()?;
    let mut w = word.to_vec();
    w[p] = i + 1;
    Some(w)
}

pub fn epsilon(word: &[usize], i: usize) -> usize {
    unmatched(word, i).1.len()
}

pub fn phi(word: &[usize], i: usize) -> usize {
    unmatched(word, i).0.len()
}

/// `Lambda_i`: raise as far as possible.
pub fn raise_fully(word: &[usize], i: usize) -> CrystalWord {
    let (_, open) = unmatched(word, i);
    let mut w = word.to_vec();
    for p in open {
        w[p] = i;
    }
    w
}

/// Weight in fundamental-weight coordinates of `A_{n-1}`.
pub fn weight(word: &[usize], n: usize) -> Weight {
    let mut count = vec![0i64; n + 2];
    for &x in word {
        count[x] += 1;
    }
    Weight((1..n).map(|i| count[i] - count[i + 1]).collect())
}

pub fn is_highest_weight(word: &[usize], n: usize) -> bool {
    (1..n).all(|i| epsilon(word, i) == 0)
}

/// Reading word (rows bottom to top) of the Yamanouchi tableau of `lambda`.
pub fn highest_weight_word(lambda: &Weight) -> Result<CrystalWord> {
    if !lambda.is_dominant() {
        return Err(Error::InvalidArgument("highest weight must be dominant".into()));
    }
    let r = lambda.0.len();
    let mut out = Vec::new();
    for row in (1..=r).rev() {
        let len: i64 = lambda.0[row - 1..].iter().sum();
        out.extend(core::iter::repeat(row).take(len as usize));
    }
    Ok(out)
}

/// All elements of `B(lambda)`, in breadth-first order from the highest
/// weight element (lowering by `f_1, ..., f_{n-1}` in that order).
pub fn crystal_elements(lambda: &Weight) -> Result<Vec<CrystalWord>> {
    crystal_component(&highest_weight_word(lambda)?, lambda.0.len() + 1)
}

/// Connected component of `start` under the lowering operators.
pub fn crystal_component(start: &[usize], n: usize) -> Result<Vec<CrystalWord>> {
    let mut seen = BTreeSet::new();
    seen.insert(start.to_vec());
    let mut out = vec![start.to_vec()];
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 1..n {
            if let Some(x) = crystal_f(&w, i) {
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                    queue.push_back(x);
                }
            }
        }
    }
    Ok(out)
}

/// The unique element of `B(lambda)` with a given extremal weight.
pub fn extremal_element(lambda: &Weight, target: &Weight) -> Result<CrystalWord> {
    let n = lambda.0.len() + 1;
    let hits: Vec<CrystalWord> = crystal_elements(lambda)?
        .into_iter()
        .filter(|w| weight(w, n) == *target)
        .collect();
    match hits.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(Error::InvalidArgument(format!(
            "weight {:?} is not extremal in B({:?})",
            target.0, lambda.0
        ))),
    }
}

/// Type `A_{n-1}` root datum.
pub fn type_a(n: usize) -> Result<RootDatum> {
    RootDatum::of_type(&format!("A{}", n - 1))
}

/// String parametrization along a reduced word for `w0`.
pub fn string_param(word: &[usize], reduced: &[usize], n: usize) -> Result<Vec<usize>> {
    let datum = type_a(n)?;
    let len = datum.longest_element()?.length();
    if reduced.len() != len || !datum.is_reduced(reduced)? {
        return Err(Error::NotReduced);
    }
    let mut b = word.to_vec();
    let mut out = Vec::with_capacity(len);
    for &i in reduced {
        out.push(epsilon(&b, i));
        b = raise_fully(&b, i);
    }
    Ok(out)
}

/// Leading data of a minor: strings of both tensor factors and the weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringTriple {
    pub u_string: Vec<usize>,
    pub v_string: Vec<usize>,
    pub weight: Weight,
}

impl StringTriple {
    fn add_scaled(&self, other: &StringTriple, c: usize) -> StringTriple {
        StringTriple {
            u_string: self.u_string.iter().zip(&other.u_string).map(|(a, b)| a + c * b).collect(),
            v_string: self.v_string.iter().zip(&other.v_string).map(|(a, b)| a + c * b).collect(),
            weight: self.weight.add(&other.weight.scale(c as i64)),
        }
    }

    fn zero(len: usize, r: usize) -> StringTriple {
        StringTriple {
            u_string: vec![0; len],
            v_string: vec![0; len],
            weight: Weight::zero(r),
        }
    }
}

/// String data of `Delta_{u omega_i, v omega_i}` for a vertex of an
/// unshuffled `(w0, w0)` word: the `u` side is the extremal element of
/// weight `u omega_i` in `B(omega_i)`, read along the `u` word; the `v` side
/// is the extremal element of weight `-v omega_i` in `B(-w0 omega_i)`, read
/// along the diagram-involuted `v` word.
pub fn minor_string(word: &DoubleWord, label: &MinorLabel) -> Result<StringTriple> {
    let datum = word.datum();
    if !datum.cartan().is_standard_type_a() {
        return Err(Error::Unsupported("string data needs type A".into()));
    }
    let r = datum.rank();
    let n = r + 1;
    let i = label.level;
    if i == 0 || i > r {
        return Err(Error::InvalidArgument("label level outside the datum".into()));
    }
    let bar = datum.bar_involution()?;
    let omega = Weight::fundamental(r, i);
    let u = datum.element(&label.u_word)?;
    let v = datum.element(&label.v_word)?;
    let b_u = extremal_element(&omega, &u.apply(&omega))?;
    let dual = Weight::fundamental(r, bar[i - 1]);
    let b_v = extremal_element(&dual, &v.apply(&omega).neg())?;
    let v_bar: Vec<usize> = word.v_word().iter().map(|&x| bar[x - 1]).collect();
    Ok(StringTriple {
        u_string: string_param(&b_u, &word.u_word(), n)?,
        v_string: string_param(&b_v, &v_bar, n)?,
        weight: omega,
    })
}

/// Checks the three shapes: zero strings on negative vertices, and on the
/// `v` (resp. `u`) block a string vanishing after the vertex's own index
/// with a 1 there. Returns a description of the first violation.
pub fn check_minor_shape(word: &DoubleWord, k: i64, t: &StringTriple) -> core::result::Result<(), String> {
    let nn = word.v_word().len();
    let level = word.level(k);
    if t.weight != Weight::fundamental(word.rank(), level) {
        return Err(format!("vertex {k}: weight {:?}", t.weight.0));
    }
    let tail_ok = |s: &[usize], idx: usize| s.get(idx - 1) == Some(&1) && s[idx..].iter().all(|&x| x == 0);
    if k < 0 {
        if t.u_string.iter().any(|&x| x != 0) || t.v_string.iter().any(|&x| x != 0) {
            return Err(format!("vertex {k}: nonzero strings"));
        }
    } else if (k as usize) <= nn {
        if t.u_string.iter().any(|&x| x != 0) || !tail_ok(&t.v_string, k as usize) {
            return Err(format!("vertex {k}: strings {:?} {:?}", t.u_string, t.v_string));
        }
    } else if !tail_ok(&t.u_string, k as usize - nn) {
        return Err(format!("vertex {k}: u string {:?}", t.u_string));
    }
    Ok(())
}

/// Whether `d -> sum_k d_k c(Delta(k))` is injective on the given vectors.
pub fn leading_injectivity(triples: &[StringTriple], ds: &[Vec<usize>]) -> bool {
    let Some(first) = triples.first() else {
        return ds.len() <= 1;
    };
    let zero = StringTriple::zero(first.u_string.len(), first.weight.0.len());
    let mut seen: BTreeMap<StringTriple, &Vec<usize>> = BTreeMap::new();
    for d in ds {
        let sum = triples
            .iter()
            .zip(d)
            .fold(zero.clone(), |acc, (t, &c)| acc.add_scaled(t, c));
        if let Some(prev) = seen.insert(sum, d) {
            if prev != d {
                return false;
            }
        }
    }
    true
}

/// All vectors in `N^len` with entry sum at most `max`.
pub fn bounded_vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(len, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::new(), &mut out);
    out
}

/// Lexicographic `a <= b`.
pub fn lex_leq(a: &[usize], b: &[usize]) -> bool {
    a <= b
}

/// For every `b in B(mu1)`, `b' in B(mu2)` with `b b'` in the Cartan
/// component, checks `c(b b') <=_lex c(b) + c(b')`. Returns the number of
/// pairs checked, or the first offending pair.
pub fn tensor_subadditivity(
    mu1: &Weight,
    mu2: &Weight,
    reduced: &[usize],
) -> Result<core::result::Result<usize, (CrystalWord, CrystalWord)>> {
    let n = mu1.0.len() + 1;
    let b1 = crystal_elements(mu1)?;
    let b2 = crystal_elements(mu2)?;
    let mut top = highest_weight_word(mu1)?;
    top.extend(highest_weight_word(mu2)?);
    let cartan: BTreeSet<CrystalWord> = crystal_component(&top, n)?.into_iter().collect();
    let mut checked = 0;
    for x in &b1 {
        let cx = string_param(x, reduced, n)?;
        for y in &b2 {
            let mut xy = x.clone();
            xy.extend_from_slice(y);
            if !cartan.contains(&xy) {
                continue;
            }
            let cy = string_param(y, reduced, n)?;
            let sum: Vec<usize> = cx.iter().zip(&cy).map(|(a, b)| a + b).collect();
            if !lex_leq(&string_param(&xy, reduced, n)?, &sum) {
                return Ok(Err((x.clone(), y.clone())));
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

/// Dominant weights of `A_{n-1}` whose crystal has at most `max_dim`
/// elements, found by enumerating coordinates up to `bound`.
pub fn small_weights(n: usize, max_dim: usize, bound: i64) -> Result<Vec<(Weight, usize)>> {
    let r = n - 1;
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    loop {
        let w = Weight(cur.clone());
        let dim = weyl_dimension(&w);
        if dim <= max_dim as u128 {
            out.push((w, dim as usize));
        }
        let mut p = 0;
        loop {
            if p == r {
                return Ok(out);
            }
            cur[p] += 1;
            if cur[p] <= bound {
                break;
            }
            cur[p] = 0;
            p += 1;
        }
    }
}

/// Weyl dimension formula for `A_{n-1}`.
pub fn weyl_dimension(lambda: &Weight) -> u128 {
    let r = lambda.0.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        for j in i..r {
            let s: i64 = lambda.0[i..=j].iter().sum::<i64>() + (j - i + 1) as i64;
            num *= s as u128;
            den *= (j - i + 1) as u128;
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::{build_seed, longest_double_word};

    #[test]
    fn operators_on_single_letters() {
        assert_eq!(crystal_e(&[2], 1), Some(vec![1]));
        assert_eq!(crystal_e(&[1], 1), None);
        assert_eq!(crystal_e(&[3], 2), Some(vec![2]));
        assert_eq!(crystal_e(&[2], 1), Some(vec![1]));
        let hw = highest_weight_word(&Weight(vec![1, 1])).unwrap();
        assert_eq!(hw, vec![2, 1, 1]);
        assert!(is_highest_weight(&hw, 3));
        assert_eq!(highest_weight_word(&Weight(vec![0, 1])).unwrap(), vec![2, 1]);
    }

    #[test]
    fn crystal_sizes_match_dimension() {
        for w in [vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 0]] {
            let lam = Weight(w);
            assert_eq!(crystal_elements(&lam).unwrap().len() as u128, weyl_dimension(&lam));
        }
    }

    #[test]
    fn string_examples() {
        assert_eq!(string_param(&[2], &[1], 2).unwrap(), vec![1]);
        assert_eq!(string_param(&[3], &[1, 2, 1], 3).unwrap(), vec![0, 1, 1]);
        assert_eq!(string_param(&[1], &[1, 2, 1], 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(string_param(&[3], &[1, 2], 3), Err(Error::NotReduced));
        assert_eq!(string_param(&[3], &[1, 1, 2], 3), Err(Error::NotReduced));
    }

    #[test]
    fn sl2_minor_strings() {
        let a1 = RootDatum::of_type("A1").unwrap();
        let w = longest_double_word(&a1).unwrap();
        let b = build_seed(&w).unwrap();
        let triples: Vec<StringTriple> = b.labels.iter().map(|l| minor_string(&w, l).unwrap()).collect();
        assert_eq!(triples[0].u_string, vec![0]);
        assert_eq!(triples[0].v_string, vec![0]);
        assert_eq!(triples[1].v_string, vec![1]);
        assert_eq!(triples[2].u_string, vec![1]);
        for (p, &k) in b.seed.ids().iter().enumerate() {
            check_minor_shape(&w, k, &triples[p]).unwrap();
        }
    }

    #[test]
    fn vectors_enumeration() {
        assert_eq!(bounded_vectors(2, 1).len(), 3);
        assert_eq!(bounded_vectors(8, 3).len(), 165);
    }
}
