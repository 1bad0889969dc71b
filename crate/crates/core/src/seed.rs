//! Double reduced words and the seeds they define on double Bruhat cells.
//!
//! Vertices are the signed indices `J = [-r, -1] ⊔ [1, l]`; vertex `-k` sits
//! on level `k`. Internally a seed stores vertices by position in `J` order.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::cartan::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::{q, Rational};

/// A word over `[-r, -1] ⊔ [1, r]` whose negative letters spell a reduced
/// word for `u` and positive letters a reduced word for `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleWord {
    datum: RootDatum,
    letters: Vec<i32>,
}

impl DoubleWord {
    /// Reducedness is checked on the sub-datum spanned by the levels in use,
    /// so words over a framed datum of infinite type are accepted as long as
    /// they stay in a finite-type Levi part.
    pub fn new(datum: RootDatum, letters: Vec<i32>) -> Result<Self> {
        let r = datum.rank() as i32;
        if let Some(&bad) = letters.iter().find(|&&x| x == 0 || x.abs() > r) {
            return Err(Error::InvalidWord(format!("letter {bad} out of range")));
        }
        let used: Vec<usize> = letters
            .iter()
            .map(|x| x.unsigned_abs() as usize)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let sub = RootDatum::new(datum.cartan().restrict(&used)?);
        let local = |x: i32| used.iter().position(|&u| u == x.unsigned_abs() as usize).unwrap() + 1;
        for sign in [-1, 1] {
            let part: Vec<usize> = letters
                .iter()
                .filter(|&&x| x.signum() == sign)
                .map(|&x| local(x))
                .collect();
            let ok = sub.is_reduced(&part).map_err(|e| match e {
                Error::InfiniteType(m) => Error::InvalidWord(m),
                other => other,
            })?;
            if !ok {
                return Err(Error::InvalidWord(format!(
                    "{} letters do not form a reduced word",
                    if sign < 0 { "negative" } else { "positive" }
                )));
            }
        }
        Ok(DoubleWord { datum, letters })
    }

    /// Positive letters of `v_word` followed by negative letters of `u_word`.
    pub fn unshuffled(datum: RootDatum, u_word: &[usize], v_word: &[usize]) -> Result<Self> {
        let mut letters: Vec<i32> = v_word.iter().map(|&i| i as i32).collect();
        letters.extend(u_word.iter().map(|&i| -(i as i32)));
        Self::new(datum, letters)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Word length `l`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `J` in increasing order.
    pub fn vertices(&self) -> Vec<i64> {
        let r = self.rank() as i64;
        (-r..0).chain(1..=self.len() as i64).collect()
    }

    /// The signed letter `i_k`; `i_{-k} = -k`.
    pub fn letter(&self, k: i64) -> i32 {
        if k < 0 {
            k as i32
        } else {
            self.letters[(k - 1) as usize]
        }
    }

    pub fn level(&self, k: i64) -> usize {
        self.letter(k).unsigned_abs() as usize
    }

    fn sign(&self, k: i64) -> i64 {
        self.letter(k).signum() as i64
    }

    /// Next vertex on the same level, or `l + 1`.
    pub fn kplus(&self, k: i64) -> i64 {
        let lev = self.level(k);
        let start = if k < 0 { 1 } else { k + 1 };
        (start..=self.len() as i64)
            .find(|&m| self.level(m) == lev)
            .unwrap_or(self.len() as i64 + 1)
    }

    pub fn is_frozen(&self, k: i64) -> bool {
        k < 0 || self.kplus(k) > self.len() as i64
    }

    /// Reduced word of `u` (absolute values of the negative letters).
    pub fn u_word(&self) -> Vec<usize> {
        self.part(-1)
    }

    /// Reduced word of `v`.
    pub fn v_word(&self) -> Vec<usize> {
        self.part(1)
    }

    fn part(&self, sign: i32) -> Vec<usize> {
        self.letters
            .iter()
            .filter(|&&x| x.signum() == sign)
            .map(|x| x.unsigned_abs() as usize)
            .collect()
    }

    /// Word of `u_{<=k}`: negative letters among positions `1..=k`.
    pub fn u_prefix(&self, k: i64) -> Vec<usize> {
        if k < 0 {
            return Vec::new();
        }
        self.letters[..k as usize]
            .iter()
            .filter(|&&x| x < 0)
            .map(|x| x.unsigned_abs() as usize)
            .collect()
    }

    /// Word of `v_{>k} = s_{i_l} ... s_{i_{k+1}}` over positive letters.
    pub fn v_suffix(&self, k: i64) -> Vec<usize> {
        let from = k.max(0) as usize;
        self.letters[from..]
            .iter()
            .rev()
            .filter(|&&x| x > 0)
            .map(|&x| x as usize)
            .collect()
    }

    /// Entry `epsilon_{jk}` of the exchange matrix.
    pub fn exchange_entry(&self, j: i64, k: i64) -> Rational {
        let a = self.datum.cartan().a(self.level(k), self.level(j));
        if a == 0 {
            return Rational::zero();
        }
        let l = self.len() as i64;
        let (jp, kp) = (self.kplus(j), self.kplus(k));
        let s = |x: i64| self.sign(x);
        let mut t = 0i64;
        if j == kp {
            t += s(j);
        }
        if jp == k {
            t -= s(k);
        }
        if k < j && j < kp && j > 0 {
            t += s(j);
        }
        if k < jp && jp < kp && jp <= l {
            t -= s(jp);
        }
        if j < k && k < jp && k > 0 {
            t -= s(k);
        }
        if j < kp && kp < jp && kp <= l {
            t += s(kp);
        }
        Rational::new((a * t).into(), 2.into())
    }
}

/// A labeled seed. Vertex data is stored by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    ids: Vec<i64>,
    names: Vec<String>,
    mutable: Vec<bool>,
    epsilon: Vec<Vec<Rational>>,
    symmetrizers: Vec<i64>,
    levels: Vec<usize>,
}

impl Seed {
    /// Checks skew-symmetrizability and integrality on mutable rows/columns.
    pub fn from_matrix(
        ids: Vec<i64>,
        names: Vec<String>,
        mutable: Vec<bool>,
        epsilon: Vec<Vec<Rational>>,
        symmetrizers: Vec<i64>,
        levels: Vec<usize>,
    ) -> Result<Self> {
        let n = ids.len();
        let sizes_ok = names.len() == n
            && mutable.len() == n
            && symmetrizers.len() == n
            && levels.len() == n
            && epsilon.len() == n
            && epsilon.iter().all(|r| r.len() == n);
        if !sizes_ok {
            return Err(Error::InvalidSeed("inconsistent vertex counts".into()));
        }
        if symmetrizers.iter().any(|&d| d <= 0) {
            return Err(Error::InvalidSeed("symmetrizers must be positive".into()));
        }
        let seed = Seed {
            ids,
            names,
            mutable,
            epsilon,
            symmetrizers,
            levels,
        };
        seed.check()?;
        Ok(seed)
    }

    fn check(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.epsilon[i][j] * q(self.symmetrizers[j]);
                let rhs = -(&self.epsilon[j][i] * q(self.symmetrizers[i]));
                if lhs != rhs {
                    return Err(Error::InvalidSeed(format!(
                        "not skew-symmetrizable at ({}, {})",
                        self.ids[i], self.ids[j]
                    )));
                }
                if (self.mutable[i] || self.mutable[j]) && !self.epsilon[i][j].is_integer() {
                    return Err(Error::InvalidSeed(format!(
                        "non-integral entry at ({}, {})",
                        self.ids[i], self.ids[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[i64] {
        &self.ids
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn epsilon(&self) -> &[Vec<Rational>] {
        &self.epsilon
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.epsilon[i][j]
    }

    pub fn is_mutable(&self, pos: usize) -> bool {
        self.mutable[pos]
    }

    pub fn mutable_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.mutable[p]).collect()
    }

    pub fn frozen_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| !self.mutable[p]).collect()
    }

    pub fn position_of_id(&self, id: i64) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn position_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Same seed with the exchange matrix replaced; structural data kept.
    pub fn with_epsilon(&self, epsilon: Vec<Vec<Rational>>) -> Result<Seed> {
        Seed::from_matrix(
            self.ids.clone(),
            self.names.clone(),
            self.mutable.clone(),
            epsilon,
            self.symmetrizers.clone(),
            self.levels.clone(),
        )
    }

    /// Positive entries of row `k` give arrows `k -> i`.
    pub fn arrows(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.epsilon[i][j].is_positive() {
                    out.push((i, j, self.epsilon[i][j].clone()));
                }
            }
        }
        out
    }
}

/// How a vertex's cluster variable is realized as a function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelKind {
    /// `Delta_{u omega_i, v omega_i} e^{torus_shift}`.
    Minor,
    /// The torus character `e^{torus_shift}` alone.
    FrameCharacter,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorLabel {
    pub u_word: Vec<usize>,
    pub v_word: Vec<usize>,
    pub level: usize,
    pub kind: LabelKind,
    pub torus_shift: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltSeed {
    pub word: DoubleWord,
    pub seed: Seed,
    pub labels: Vec<MinorLabel>,
}

/// Seed of a double reduced word, with minor labels for every vertex.
pub fn build_seed(word: &DoubleWord) -> Result<BuiltSeed> {
    let verts = word.vertices();
    let l = word.len() as i64;
    let d = word.datum().cartan().symmetrizers();
    let mutable: Vec<bool> = verts.iter().map(|&k| !word.is_frozen(k)).collect();
    let levels: Vec<usize> = verts.iter().map(|&k| word.level(k)).collect();
    let epsilon: Vec<Vec<Rational>> = verts
        .iter()
        .map(|&j| verts.iter().map(|&k| word.exchange_entry(j, k)).collect())
        .collect();
    let symmetrizers = levels.iter().map(|&lev| d[lev - 1]).collect();
    let names = display_names(word, &verts, &mutable);
    let r = word.rank();
    let labels = verts
        .iter()
        .map(|&k| MinorLabel {
            u_word: word.u_prefix(k),
            v_word: word.v_suffix(k),
            level: word.level(k),
            kind: LabelKind::Minor,
            torus_shift: Weight::zero(r),
        })
        .collect();
    debug_assert!(verts.iter().all(|&k| k <= l));
    let seed = Seed::from_matrix(verts, names, mutable, epsilon, symmetrizers, levels)?;
    Ok(BuiltSeed {
        word: word.clone(),
        seed,
        labels,
    })
}

/// Display names `A0, A1, ...`: negative vertices on levels the word never
/// uses come first, then mutable vertices, then the remaining frozen ones,
/// each group in `J` order.
fn display_names(word: &DoubleWord, verts: &[i64], mutable: &[bool]) -> Vec<String> {
    let used: BTreeSet<usize> = word
        .letters()
        .iter()
        .map(|x| x.unsigned_abs() as usize)
        .collect();
    let unused_level = |p: usize| verts[p] < 0 && !used.contains(&word.level(verts[p]));
    let mut order: Vec<usize> = (0..verts.len()).filter(|&p| unused_level(p)).collect();
    order.extend((0..verts.len()).filter(|&p| mutable[p]));
    order.extend((0..verts.len()).filter(|&p| !mutable[p] && !unused_level(p)));
    let mut names = vec![String::new(); verts.len()];
    for (idx, &p) in order.iter().enumerate() {
        names[p] = format!("A{idx}");
    }
    names
}

/// Seed for `(w_I, w_I)` of a Levi part inside a larger datum, with the
/// frozen vertices split by role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviSeed {
    pub built: BuiltSeed,
    /// Negative vertices on Levi levels.
    pub i_minus: Vec<usize>,
    /// Negative vertices on the remaining levels.
    pub i_prime: Vec<usize>,
    /// Positive frozen vertices.
    pub i_plus: Vec<usize>,
    /// All frozen vertices except `i_prime`.
    pub sigma: Vec<usize>,
}

pub type FramedSeed = LeviSeed;

/// Seed for the unshuffled word of `(w_I, w_I)`, letters from `levi`
/// (1-based letters of `ambient`), built over the full ambient datum.
pub fn levi_seed(ambient: &RootDatum, levi: &[usize]) -> Result<LeviSeed> {
    let sub = RootDatum::new(ambient.cartan().restrict(levi)?);
    let w0 = sub.longest_element()?;
    let word: Vec<usize> = w0.word().iter().map(|&i| levi[i - 1]).collect();
    let dw = DoubleWord::unshuffled(ambient.clone(), &word, &word)?;
    let built = build_seed(&dw)?;
    let seed = &built.seed;
    let mut i_minus = Vec::new();
    let mut i_prime = Vec::new();
    let mut i_plus = Vec::new();
    for p in seed.frozen_positions() {
        let id = seed.ids()[p];
        if id > 0 {
            i_plus.push(p);
        } else if levi.contains(&seed.levels()[p]) {
            i_minus.push(p);
        } else {
            i_prime.push(p);
        }
    }
    let sigma = seed
        .frozen_positions()
        .into_iter()
        .filter(|p| !i_prime.contains(p))
        .collect();
    Ok(LeviSeed {
        built,
        i_minus,
        i_prime,
        i_plus,
        sigma,
    })
}

/// Framed seed of a finite-type datum: the `(w0, w0)` seed over the framed
/// datum, labels carrying the torus factors `e^{omega_i}` and `e^{alpha_i}`.
pub fn framed_seed(datum: &RootDatum) -> Result<FramedSeed> {
    if !datum.cartan().is_finite_type() {
        return Err(Error::InfiniteType("framed seed needs a finite-type datum".into()));
    }
    let r = datum.rank();
    let levi: Vec<usize> = (1..=r).collect();
    let mut fs = levi_seed(&datum.frame(), &levi)?;
    for label in &mut fs.built.labels {
        if label.level <= r {
            label.torus_shift = Weight::fundamental(r, label.level);
        } else {
            label.kind = LabelKind::FrameCharacter;
            label.torus_shift = datum.simple_root(label.level - r);
        }
    }
    Ok(fs)
}

/// The `(w0, w0)` unshuffled word of a finite-type datum over itself.
pub fn longest_double_word(datum: &RootDatum) -> Result<DoubleWord> {
    let w0 = datum.longest_element()?;
    DoubleWord::unshuffled(datum.clone(), w0.word(), w0.word())
}

/// Whether every exchange entry touching a mutable vertex is an integer
/// and the matrix has no positive diagonal; used by property tests.
pub fn is_well_formed(seed: &Seed) -> bool {
    (0..seed.len()).all(|i| seed.entry(i, i).is_zero())
        && seed.mutable_positions().iter().all(|&k| {
            (0..seed.len()).all(|j| seed.entry(k, j).is_integer() && seed.entry(j, k).is_integer())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;

    fn a(n: usize) -> RootDatum {
        RootDatum::of_type(&format!("A{n}")).unwrap()
    }

    #[test]
    fn unshuffled_words() {
        let a1 = a(1);
        let w = DoubleWord::unshuffled(a1.clone(), &[1], &[1]).unwrap();
        assert_eq!(w.letters(), &[1, -1]);
        assert!(DoubleWord::unshuffled(a1, &[], &[]).unwrap().is_empty());
        assert_eq!(longest_double_word(&a(2)).unwrap().letters(), &[1, 2, 1, -1, -2, -1]);
        assert!(matches!(
            DoubleWord::new(a(1), vec![1, 1]),
            Err(Error::InvalidWord(_))
        ));
        assert!(matches!(
            DoubleWord::new(a(1), vec![2]),
            Err(Error::InvalidWord(_))
        ));
    }

    #[test]
    fn kplus_scan() {
        let w = DoubleWord::new(a(1), vec![1, -1]).unwrap();
        assert_eq!(w.kplus(1), 2);
        assert_eq!(w.kplus(2), 3);
        assert_eq!(w.kplus(-1), 1);
        let w2 = longest_double_word(&a(2)).unwrap();
        assert_eq!(w2.kplus(-2), 2);
        assert_eq!(w2.kplus(2), 5);
    }

    #[test]
    fn sl2_word_seed() {
        let w = DoubleWord::new(a(1), vec![1, -1]).unwrap();
        let b = build_seed(&w).unwrap();
        let s = &b.seed;
        assert_eq!(s.ids(), &[-1, 1, 2]);
        assert_eq!(s.mutable_positions(), vec![1]);
        // A1 A1' = A_{-1} A_2 + 1 on SL2^{w0,w0}
        assert_eq!(s.entry(1, 0), &q(1));
        assert_eq!(s.entry(1, 2), &q(1));
        assert_eq!(s.entry(0, 2), &q(0));
    }

    #[test]
    fn empty_word_all_frozen() {
        let w = DoubleWord::new(a(2), vec![]).unwrap();
        let b = build_seed(&w).unwrap();
        assert_eq!(b.seed.len(), 2);
        assert!(b.seed.mutable_positions().is_empty());
    }

    #[test]
    fn framed_sl2_seed_matches_example() {
        let fs = framed_seed(&a(1)).unwrap();
        let s = &fs.built.seed;
        assert_eq!(s.ids(), &[-2, -1, 1, 2]);
        assert_eq!(s.names(), &["A0", "A2", "A1", "A3"]);
        assert_eq!(s.mutable_positions(), vec![2]);
        assert_eq!(fs.i_prime, vec![0]);
        assert_eq!(fs.sigma, vec![1, 3]);
        // vertex 1 adjacent to all three frozen vertices
        for p in [0, 1, 3] {
            assert!(!s.entry(2, p).is_zero());
        }
        // A1 A1' = A2 A3 + A0
        assert_eq!(s.entry(2, 1), &q(1));
        assert_eq!(s.entry(2, 3), &q(1));
        assert_eq!(s.entry(2, 0), &q(-1));
        assert_eq!(fs.built.labels[0].kind, LabelKind::FrameCharacter);
        assert_eq!(fs.built.labels[0].torus_shift, Weight(vec![2]));
    }

    #[test]
    fn framed_sl3_counts() {
        let fs = framed_seed(&a(2)).unwrap();
        assert_eq!(fs.built.seed.len(), 10);
        assert_eq!(fs.built.seed.mutable_positions().len(), 4);
        assert_eq!((fs.i_minus.len(), fs.i_prime.len(), fs.i_plus.len()), (2, 2, 2));
    }

    #[test]
    fn dotted_levi_counts() {
        for k in 0..3i64 {
            let c = -1 - 2 * k;
            let d = RootDatum::new(CartanMatrix::from_entries(vec![vec![2, c], vec![c, 2]]).unwrap());
            let ls = levi_seed(&d, &[1]).unwrap();
            assert_eq!(ls.built.seed.len(), 4);
            assert_eq!(ls.built.seed.mutable_positions().len(), 1);
            let s = &ls.built.seed;
            assert_eq!(s.entry(2, 0), &q(c));
        }
    }

    #[test]
    fn non_simply_laced_seed_is_valid() {
        let b2 = RootDatum::of_type("B2").unwrap();
        let b = build_seed(&longest_double_word(&b2).unwrap()).unwrap();
        assert_eq!(b.seed.mutable_positions().len(), 6);
        assert!(is_well_formed(&b.seed));
    }
}
