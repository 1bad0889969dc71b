//! Generalized Cartan matrices, simply connected root data and Weyl groups.
//!
//! Letters of words are 1-based (`1..=r`), as in the usual notation for
//! reduced words. Weights are integer vectors in the basis of fundamental
//! weights, indexed from 0.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IMatrix};
use crate::{q, Rational};

/// Symmetrizable generalized Cartan matrix with minimal symmetrizers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    labels: Vec<String>,
    entries: IMatrix,
    symmetrizers: Vec<i64>,
}

impl CartanMatrix {
    /// Validates `entries` and computes symmetrizers; labels default to `1..=r`.
    pub fn from_entries(entries: IMatrix) -> Result<Self> {
        let labels = (1..=entries.len()).map(|i| i.to_string()).collect();
        Self::new(labels, entries)
    }

    pub fn new(labels: Vec<String>, entries: IMatrix) -> Result<Self> {
        let r = entries.len();
        if labels.len() != r {
            return Err(Error::NotGcm(format!(
                "{} labels for a rank {} matrix",
                labels.len(),
                r
            )));
        }
        if entries.iter().any(|row| row.len() != r) {
            return Err(Error::NotGcm("matrix is not square".into()));
        }
        for i in 0..r {
            if entries[i][i] != 2 {
                return Err(Error::NotGcm(format!("diagonal entry {} is not 2", i + 1)));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(Error::NotGcm(format!(
                        "positive off-diagonal entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::NotGcm(format!(
                        "zero pattern not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let symmetrizers = symmetrizers(&entries)?;
        Ok(CartanMatrix {
            labels,
            entries,
            symmetrizers,
        })
    }

    /// Cartan matrix of a finite type given by name: `A<n>`, `B<n>`, `C<n>`,
    /// `D<n>` or `G2`.
    pub fn of_type(name: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown Cartan type {name:?}"));
        let (kind, n) = name.split_at(1);
        let n: usize = n.parse().map_err(|_| bad())?;
        let chain = |n: usize| -> IMatrix {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect()
        };
        let m = match (kind, n) {
            ("A", n) if n >= 1 => chain(n),
            ("B", n) if n >= 2 => {
                let mut m = chain(n);
                m[n - 1][n - 2] = -2;
                m
            }
            ("C", n) if n >= 2 => {
                let mut m = chain(n);
                m[n - 2][n - 1] = -2;
                m
            }
            ("D", n) if n >= 4 => {
                let mut m = chain(n);
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 2] = 0;
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 3] = -1;
                m
            }
            ("G", 2) => vec![vec![2, -1], vec![-3, 2]],
            _ => return Err(bad()),
        };
        Self::from_entries(m)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &IMatrix {
        &self.entries
    }

    /// Entry `a_ij` for 1-based letters.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    /// Framed matrix on `I ⊔ I'`: `I'` letters are `r+1..=2r`, label `i'`.
    pub fn frame(&self) -> CartanMatrix {
        let r = self.rank();
        let mut m = vec![vec![0i64; 2 * r]; 2 * r];
        for i in 0..r {
            for j in 0..r {
                m[i][j] = self.entries[i][j];
            }
            m[i][r + i] = -1;
            m[r + i][i] = -1;
            m[r + i][r + i] = 2;
        }
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| format!("{l}'")));
        CartanMatrix::new(labels, m).expect("framing preserves the Cartan axioms")
    }

    /// Principal submatrix on the given 1-based letters, in the given order.
    pub fn restrict(&self, letters: &[usize]) -> Result<CartanMatrix> {
        for &i in letters {
            self.check_letter(i)?;
        }
        let m = letters
            .iter()
            .map(|&i| letters.iter().map(|&j| self.a(i, j)).collect())
            .collect();
        let labels = letters.iter().map(|&i| self.labels[i - 1].clone()).collect();
        CartanMatrix::new(labels, m)
    }

    pub fn check_letter(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Finite type iff the symmetrized matrix `D A` is positive definite.
    pub fn is_finite_type(&self) -> bool {
        let r = self.rank();
        let da: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| q(self.symmetrizers[i] * self.entries[i][j]))
                    .collect()
            })
            .collect();
        (1..=r).all(|k| linalg::leading_minor(&da, k).is_positive())
    }

    /// True for the standard `A_r` chain in the natural order, the case in
    /// which points of `SL_{r+1}` can be evaluated.
    pub fn is_standard_type_a(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| {
            (0..r).all(|j| {
                self.entries[i][j]
                    == match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    }
            })
        })
    }

    pub fn is_invertible(&self) -> bool {
        !linalg::det(&linalg::to_rational(&self.entries)).is_zero()
    }
}

/// Minimal positive symmetrizers, normalized per connected component.
fn symmetrizers(a: &IMatrix) -> Result<Vec<i64>> {
    let r = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; r];
    let mut out = vec![0i64; r];
    for root in 0..r {
        if d[root].is_some() {
            continue;
        }
        let mut comp = vec![root];
        d[root] = Some(q(1));
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in 0..r {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = d[i].clone().unwrap() * q(a[i][j]) / q(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
        let lcm = comp
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, &i| {
                acc.lcm(d[i].as_ref().unwrap().denom())
            });
        let ints: Vec<num_bigint::BigInt> = comp
            .iter()
            .map(|&i| (d[i].clone().unwrap() * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
        for (&i, x) in comp.iter().zip(&ints) {
            let v: num_bigint::BigInt = x / &g;
            out[i] = i64::try_from(v).map_err(|_| Error::NotSymmetrizable)?;
        }
    }
    Ok(out)
}

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(r: usize) -> Self {
        Weight(vec![0; r])
    }

    /// `omega_i` for a 1-based letter.
    pub fn fundamental(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i - 1] = 1;
        Weight(v)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
}

/// Weyl group element: its matrix on the weight lattice plus a reduced word.
#[derive(Clone, Debug)]
pub struct WeylElement {
    matrix: IMatrix,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn matrix(&self) -> &IMatrix {
        &self.matrix
    }

    /// Cached reduced word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(linalg::int_apply(&self.matrix, &w.0))
    }
}

/// Simply connected root datum attached to a Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootDatum {
    cartan: CartanMatrix,
}

/// Default bound on descent steps when computing longest elements.
pub const DEFAULT_DESCENT_CAP: usize = 10_000;

impl RootDatum {
    pub fn new(cartan: CartanMatrix) -> Self {
        RootDatum { cartan }
    }

    pub fn of_type(name: &str) -> Result<Self> {
        Ok(Self::new(CartanMatrix::of_type(name)?))
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn frame(&self) -> RootDatum {
        RootDatum::new(self.cartan.frame())
    }

    /// `alpha_j` in fundamental-weight coordinates: column `j` of `A`.
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight(self.cartan.entries.iter().map(|row| row[j - 1]).collect())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `s_i(lambda) = lambda - <alpha_i^vee, lambda> alpha_i`.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let c = lambda.0[i - 1];
        if c == 0 {
            return lambda.clone();
        }
        lambda.sub(&self.simple_root(i).scale(c))
    }

    fn reflection_matrix(&self, i: usize) -> IMatrix {
        let r = self.rank();
        let mut m = linalg::int_identity(r);
        for (a, row) in m.iter_mut().enumerate() {
            row[i - 1] -= self.cartan.entries[a][i - 1];
        }
        m
    }

    fn word_matrix(&self, word: &[usize]) -> IMatrix {
        word.iter().fold(linalg::int_identity(self.rank()), |acc, &i| {
            linalg::int_mul(&acc, &self.reflection_matrix(i))
        })
    }

    /// Whether a root given in weight coordinates is positive. Exact solve of
    /// `A c = v`; requires an invertible Cartan matrix.
    pub fn is_positive_root(&self, v: &Weight) -> Result<bool> {
        let a = linalg::to_rational(&self.cartan.entries);
        let rhs: Vec<Rational> = v.0.iter().map(|&x| q(x)).collect();
        let c = linalg::solve(&a, &rhs).ok_or_else(|| {
            Error::InfiniteType("root positivity needs an invertible Cartan matrix".into())
        })?;
        Ok(c.iter().all(|x| !x.is_negative()) && c.iter().any(|x| x.is_positive()))
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        word.iter().try_for_each(|&i| self.cartan.check_letter(i))
    }

    /// Position of the first letter that fails to increase the length.
    fn first_descent(&self, word: &[usize]) -> Result<Option<usize>> {
        let mut m = linalg::int_identity(self.rank());
        for (k, &i) in word.iter().enumerate() {
            let image = Weight(linalg::int_apply(&m, &self.simple_root(i).0));
            if !self.is_positive_root(&image)? {
                return Ok(Some(k));
            }
            m = linalg::int_mul(&m, &self.reflection_matrix(i));
        }
        Ok(None)
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        self.check_word(word)?;
        Ok(self.first_descent(word)?.is_none())
    }

    /// A reduced word for the same element, by the deletion property.
    pub fn reduce(&self, word: &[usize]) -> Result<Vec<usize>> {
        self.check_word(word)?;
        let mut w = word.to_vec();
        while let Some(k) = self.first_descent(&w)? {
            let target = self.word_matrix(&w[..=k]);
            let j = (0..k)
                .rev()
                .find(|&j| {
                    let mut cand: Vec<usize> = w[..=k].to_vec();
                    cand.remove(k);
                    cand.remove(j);
                    self.word_matrix(&cand) == target
                })
                .expect("exchange condition guarantees a deletable pair");
            w.remove(k);
            w.remove(j);
        }
        Ok(w)
    }

    /// Element spelled by `word`, with a reduced word cached.
    pub fn element(&self, word: &[usize]) -> Result<WeylElement> {
        let word = self.reduce(word)?;
        Ok(WeylElement {
            matrix: self.word_matrix(&word),
            word,
        })
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            matrix: linalg::int_identity(self.rank()),
            word: Vec::new(),
        }
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        self.element(&w)
    }

    pub fn inverse(&self, a: &WeylElement) -> WeylElement {
        let word: Vec<usize> = a.word.iter().rev().copied().collect();
        WeylElement {
            matrix: self.word_matrix(&word),
            word,
        }
    }

    /// Longest element by greedy descent from `rho`, smallest letter first.
    pub fn longest_element(&self) -> Result<WeylElement> {
        self.longest_element_capped(DEFAULT_DESCENT_CAP)
    }

    pub fn longest_element_capped(&self, cap: usize) -> Result<WeylElement> {
        if !self.cartan.is_finite_type() {
            return Err(Error::InfiniteType("no longest element".into()));
        }
        let mut lambda = self.rho();
        let mut applied = Vec::new();
        while let Some(i) = lambda.0.iter().position(|&x| x > 0) {
            if applied.len() >= cap {
                return Err(Error::InfiniteType(format!(
                    "descent exceeded {cap} steps"
                )));
            }
            lambda = self.reflect(i + 1, &lambda);
            applied.push(i + 1);
        }
        applied.reverse();
        Ok(WeylElement {
            matrix: self.word_matrix(&applied),
            word: applied,
        })
    }

    /// The diagram involution `i -> bar i` with `s_{bar i} = w0 s_i w0`,
    /// as a 1-based map stored at index `i - 1`.
    pub fn bar_involution(&self) -> Result<Vec<usize>> {
        let w0 = self.longest_element()?;
        (1..=self.rank())
            .map(|i| {
                let conj = linalg::int_mul(
                    &linalg::int_mul(&w0.matrix, &self.reflection_matrix(i)),
                    &w0.matrix,
                );
                (1..=self.rank())
                    .find(|&j| self.reflection_matrix(j) == conj)
                    .ok_or_else(|| Error::InfiniteType("w0 does not normalize simple reflections".into()))
            })
            .collect()
    }

    /// `lambda <= mu` iff `mu - lambda` is a nonnegative integer combination
    /// of simple roots.
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> Result<bool> {
        let a = linalg::to_rational(&self.cartan.entries);
        let rhs: Vec<Rational> = mu.sub(lambda).0.iter().map(|&x| q(x)).collect();
        let c = linalg::solve(&a, &rhs).ok_or(Error::SingularCartan)?;
        Ok(c.iter().all(|x| x.is_integer() && !x.is_negative()))
    }

    /// Number of positive roots, by orbit enumeration of the simple roots.
    pub fn positive_root_count(&self) -> Result<usize> {
        Ok(self.longest_element()?.length())
    }
}
