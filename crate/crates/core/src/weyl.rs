//! Root data and their finite Weyl groups.
//!
//! A [`RootDatum`] is stored in coordinates: the character lattice `X` and
//! the cocharacter lattice `Y` are both `ℤ^r` with the standard pairing, and
//! the datum is generated by its simple roots and simple coroots. The full
//! root system is produced by closure under simple reflections.
//!
//! [`WeylGroup`] enumerates `W` through its simply transitive action on the
//! orbit of `2ρ` (the sum of positive roots). Elements are identified by their
//! lexicographically least reduced word, obtained greedily by always peeling
//! off the smallest left descent.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Maximal number of roots accepted while closing a root system.
const MAX_ROOTS: usize = 10_000;

/// Default bound on `|W|` for [`WeylGroup::new`].
pub const DEFAULT_ELEMENT_BOUND: usize = 100_000;

/// `⟨x, y⟩` for `x ∈ X`, `y ∈ Y`.
pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn axpy(x: &[i64], c: i64, a: &[i64]) -> Vec<i64> {
    x.iter().zip(a).map(|(xi, ai)| xi + c * ai).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
        }
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (letter, rank) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let n: usize = rank
            .parse()
            .map_err(|_| Error::Parse(format!("bad Cartan type {s:?}")))?;
        match letter {
            "A" | "a" => Ok(CartanType::A(n)),
            "B" | "b" => Ok(CartanType::B(n)),
            "C" | "c" => Ok(CartanType::C(n)),
            "D" | "d" => Ok(CartanType::D(n)),
            _ => Err(Error::Parse(format!("bad Cartan type {s:?}"))),
        }
    }
}

impl CartanType {
    /// Cartan matrix `a[i][j] = ⟨α_i, α_j^∨⟩` in Bourbaki numbering (0-based).
    pub fn cartan_matrix(self) -> Result<Vec<Vec<i64>>> {
        let n = match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) => n,
            CartanType::D(n) => n,
        };
        let ok = match self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 2,
        };
        if !ok {
            return Err(Error::InvalidDatum(format!("no Cartan type {self}")));
        }
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = match self {
            CartanType::D(n) => n.saturating_sub(1),
            _ => n,
        };
        for i in 0..chain.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
        match self {
            CartanType::B(n) => a[n - 2][n - 1] = -2,
            CartanType::C(n) => a[n - 1][n - 2] = -2,
            CartanType::D(n) if n >= 3 => {
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            _ => {}
        }
        Ok(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isogeny {
    /// `X` is the root lattice.
    Adjoint,
    /// `X` is the weight lattice.
    SimplyConnected,
}

/// Serialized form of a root datum: simple roots in `X` and simple coroots
/// in `Y`, as integer rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumDoc {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

/// A root datum `(X, R, Y, R^∨)` with a chosen base `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RootDatumDoc", into = "RootDatumDoc")]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    /// Coefficients of each root in the simple roots.
    coefficients: Vec<Vec<i64>>,
    positive_count: usize,
}

impl TryFrom<RootDatumDoc> for RootDatum {
    type Error = Error;

    fn try_from(doc: RootDatumDoc) -> Result<Self> {
        RootDatum::new(doc.rank, doc.simple_roots, doc.simple_coroots)
    }
}

impl From<RootDatum> for RootDatumDoc {
    fn from(d: RootDatum) -> Self {
        RootDatumDoc {
            rank: d.rank,
            simple_roots: d.simple_roots,
            simple_coroots: d.simple_coroots,
        }
    }
}

fn matrix_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                let g = num_integer::gcd(a, b);
                let (a, b) = (a / g, b / g);
                for k in 0..cols {
                    m[r][k] = a * m[r][k] - b * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

impl RootDatum {
    /// Builds a root datum from simple roots and simple coroots and closes
    /// the root system under the simple reflections.
    pub fn new(rank: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Result<Self> {
        let l = simple_roots.len();
        if simple_coroots.len() != l {
            return Err(Error::InvalidDatum(format!(
                "{l} simple roots but {} simple coroots",
                simple_coroots.len()
            )));
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != rank) {
            return Err(Error::InvalidDatum(format!("vectors must have length {rank}")));
        }
        for i in 0..l {
            for j in 0..l {
                let a = pairing(&simple_roots[i], &simple_coroots[j]);
                if i == j && a != 2 {
                    return Err(Error::InvalidDatum(format!("<α{i}, α{i}^∨> = {a}, expected 2")));
                }
                if i != j {
                    let b = pairing(&simple_roots[j], &simple_coroots[i]);
                    if a > 0 || (a == 0) != (b == 0) {
                        return Err(Error::InvalidDatum(format!(
                            "pairings <α{i}, α{j}^∨> = {a}, <α{j}, α{i}^∨> = {b} do not form a Cartan matrix"
                        )));
                    }
                }
            }
        }
        if matrix_rank(&simple_roots) != l || matrix_rank(&simple_coroots) != l {
            return Err(Error::InvalidDatum("simple roots or coroots are linearly dependent".into()));
        }

        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut coroots: Vec<Vec<i64>> = Vec::new();
        let mut coefficients: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            let mut c = vec![0; l];
            c[i] = 1;
            seen.insert(simple_roots[i].clone(), roots.len());
            roots.push(simple_roots[i].clone());
            coroots.push(simple_coroots[i].clone());
            coefficients.push(c);
            queue.push_back(i);
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..l {
                let n = pairing(&roots[k], &simple_coroots[i]);
                let m = pairing(&simple_roots[i], &coroots[k]);
                let beta = axpy(&roots[k], -n, &simple_roots[i]);
                let beta_v = axpy(&coroots[k], -m, &simple_coroots[i]);
                let mut c = coefficients[k].clone();
                c[i] -= n;
                match seen.get(&beta) {
                    Some(&j) => {
                        if coroots[j] != beta_v || coefficients[j] != c {
                            return Err(Error::InvalidDatum(
                                "reflections do not act consistently on roots and coroots".into(),
                            ));
                        }
                    }
                    None => {
                        if roots.len() >= MAX_ROOTS {
                            return Err(Error::UnsupportedDatum(format!(
                                "root system closure exceeds {MAX_ROOTS} roots (infinite Weyl group?)"
                            )));
                        }
                        seen.insert(beta.clone(), roots.len());
                        queue.push_back(roots.len());
                        roots.push(beta);
                        coroots.push(beta_v);
                        coefficients.push(c);
                    }
                }
            }
        }
        for (k, c) in coefficients.iter().enumerate() {
            if !(c.iter().all(|&v| v >= 0) || c.iter().all(|&v| v <= 0)) {
                return Err(Error::InvalidDatum(format!(
                    "root {:?} is not a signed combination of simple roots",
                    roots[k]
                )));
            }
            if pairing(&roots[k], &coroots[k]) != 2 {
                return Err(Error::InvalidDatum(format!("root {:?} pairs to ≠ 2 with its coroot", roots[k])));
            }
        }

        // Positive roots first, by height then coefficient vector; negatives mirror them.
        let mut order: Vec<usize> = (0..roots.len()).collect();
        let height = |c: &Vec<i64>| c.iter().sum::<i64>();
        order.sort_by(|&a, &b| {
            let (ha, hb) = (height(&coefficients[a]), height(&coefficients[b]));
            (ha < 0)
                .cmp(&(hb < 0))
                .then(ha.abs().cmp(&hb.abs()))
                .then(coefficients[b].cmp(&coefficients[a]))
        });
        let positive_count = order.iter().filter(|&&k| height(&coefficients[k]) > 0).count();
        let pick = |v: &Vec<Vec<i64>>| order.iter().map(|&k| v[k].clone()).collect::<Vec<_>>();
        Ok(RootDatum {
            rank,
            roots: pick(&roots),
            coroots: pick(&coroots),
            coefficients: pick(&coefficients),
            simple_roots,
            simple_coroots,
            positive_count,
        })
    }

    /// The root datum of a simple Cartan type at the given isogeny. The
    /// adjoint form uses the simple roots as a basis of `X`; the simply
    /// connected form uses the fundamental weights.
    pub fn cartan(ty: CartanType, isogeny: Isogeny) -> Result<Self> {
        let a = ty.cartan_matrix()?;
        let n = a.len();
        let (roots, coroots) = match isogeny {
            Isogeny::Adjoint => {
                let roots = (0..n).map(|j| unit(n, j)).collect();
                let coroots = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
                (roots, coroots)
            }
            Isogeny::SimplyConnected => {
                let roots = a.clone();
                let coroots = (0..n).map(|j| unit(n, j)).collect();
                (roots, coroots)
            }
        };
        RootDatum::new(n, roots, coroots)
    }

    /// The root datum of `GL_n`: `X = ℤ^n`, roots `e_i - e_j`.
    pub fn gl(n: usize) -> Self {
        let simple: Vec<Vec<i64>> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        RootDatum::new(n, simple.clone(), simple).expect("GL_n root datum is valid")
    }

    /// Type `B_n` on `X = ℤ^n`: roots `±e_i ± e_j`, `±e_i`; the short
    /// coroots are `±2e_i`, so they lie in `2Y`.
    pub fn type_b_standard(n: usize) -> Self {
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut coroots: Vec<Vec<i64>> = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            roots.push(v.clone());
            coroots.push(v);
        }
        if n > 0 {
            roots.push(unit(n, n - 1));
            let mut c = vec![0; n];
            c[n - 1] = 2;
            coroots.push(c);
        }
        RootDatum::new(n, roots, coroots).expect("B_n root datum is valid")
    }

    /// A torus of rank `n`: no roots.
    pub fn torus(n: usize) -> Self {
        RootDatum::new(n, vec![], vec![]).expect("torus is valid")
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &RootDatum) -> RootDatum {
        let n = self.rank + other.rank;
        let embed = |v: &Vec<i64>, offset: usize| {
            let mut w = vec![0; n];
            w[offset..offset + v.len()].copy_from_slice(v);
            w
        };
        let roots = self
            .simple_roots
            .iter()
            .map(|v| embed(v, 0))
            .chain(other.simple_roots.iter().map(|v| embed(v, self.rank)))
            .collect();
        let coroots = self
            .simple_coroots
            .iter()
            .map(|v| embed(v, 0))
            .chain(other.simple_coroots.iter().map(|v| embed(v, self.rank)))
            .collect();
        RootDatum::new(n, roots, coroots).expect("direct sum of valid data is valid")
    }

    /// Rank of the lattice `X`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// All roots; the first [`Self::positive_roots`]`().len()` are positive.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.positive_count]
    }

    /// Coefficients of root `k` in the simple roots.
    pub fn root_coefficients(&self, k: usize) -> &[i64] {
        &self.coefficients[k]
    }

    /// Whether the `i`-th simple coroot lies in `2Y`.
    pub fn coroot_in_2y(&self, i: usize) -> bool {
        self.simple_coroots[i].iter().all(|c| c % 2 == 0)
    }

    /// `s_i(x) = x − ⟨x, α_i^∨⟩ α_i` on `X`.
    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let n = pairing(x, &self.simple_coroots[i]);
        axpy(x, -n, &self.simple_roots[i])
    }

    /// `s_i(y) = y − ⟨α_i, y⟩ α_i^∨` on `Y`.
    pub fn reflect_coweight(&self, i: usize, y: &[i64]) -> Vec<i64> {
        let n = pairing(&self.simple_roots[i], y);
        axpy(y, -n, &self.simple_coroots[i])
    }

    /// Cartan matrix `⟨α_i, α_j^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.semisimple_rank();
        (0..l)
            .map(|i| (0..l).map(|j| pairing(&self.simple_roots[i], &self.simple_coroots[j])).collect())
            .collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// An element of a finite Weyl group, stored as its lexicographically least
/// reduced word in the simple reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        Self { word: Vec::new() }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for s in &self.word {
            write!(f, "s{s}")?;
        }
        Ok(())
    }
}

/// The Weyl group of a root datum as a finite Coxeter system.
///
/// Elements are indexed `0..order()` in (length, word) order; index 0 is the
/// identity.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    datum: RootDatum,
    points: Vec<Vec<i64>>,
    words: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    coxeter: Vec<Vec<u32>>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        Self::with_bound(datum, DEFAULT_ELEMENT_BOUND)
    }

    /// Enumerates `W`, failing with [`Error::UnsupportedDatum`] if more than
    /// `bound` elements are produced.
    pub fn with_bound(datum: RootDatum, bound: usize) -> Result<Self> {
        let l = datum.semisimple_rank();
        let mut x_reg = vec![0i64; datum.rank()];
        for r in datum.positive_roots() {
            x_reg = axpy(&x_reg, 1, r);
        }
        if (0..l).any(|i| pairing(&x_reg, &datum.simple_coroots()[i]) <= 0) {
            return Err(Error::InvalidDatum("sum of positive roots is not regular dominant".into()));
        }

        // Breadth-first search over the orbit of 2ρ; words are built from the
        // smallest left descent, so they come out lexicographically least.
        let mut points = vec![x_reg.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(x_reg, 0)]);
        let mut head = 0;
        while head < points.len() {
            for i in 0..l {
                let p = datum.reflect(i, &points[head]);
                if index.contains_key(&p) {
                    continue;
                }
                if points.len() >= bound {
                    return Err(Error::UnsupportedDatum(format!("Weyl group has more than {bound} elements")));
                }
                let first = (0..l)
                    .find(|&j| pairing(&p, &datum.simple_coroots()[j]) < 0)
                    .expect("non-identity element has a left descent");
                let rest = index[&datum.reflect(first, &p)];
                let mut word = vec![first];
                word.extend_from_slice(&words[rest]);
                index.insert(p.clone(), points.len());
                points.push(p);
                words.push(word);
            }
            head += 1;
        }

        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| words[a].len().cmp(&words[b].len()).then(words[a].cmp(&words[b])));
        let points: Vec<Vec<i64>> = order.iter().map(|&k| points[k].clone()).collect();
        let words: Vec<Vec<usize>> = order.iter().map(|&k| words[k].clone()).collect();
        let index: HashMap<Vec<i64>, usize> = points.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let left: Vec<Vec<usize>> = (0..l)
            .map(|i| points.iter().map(|p| index[&datum.reflect(i, p)]).collect())
            .collect();

        let mut coxeter = vec![vec![1u32; l]; l];
        for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                let (mut w, mut m) = (0usize, 0u32);
                loop {
                    w = left[i][left[j][w]];
                    m += 1;
                    if w == 0 {
                        break;
                    }
                }
                coxeter[i][j] = m;
            }
        }
        Ok(WeylGroup {
            datum,
            points,
            words,
            left,
            coxeter,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn generator_count(&self) -> usize {
        self.datum.semisimple_rank()
    }

    /// Coxeter matrix `m(s_i, s_j)`.
    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    /// All elements in (length, word) order.
    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.order()).map(|k| self.element(k))
    }

    pub fn element(&self, index: usize) -> WeylElement {
        WeylElement {
            word: self.words[index].clone(),
        }
    }

    pub fn index_of(&self, w: &WeylElement) -> Result<usize> {
        self.index_of_word(w.word())
    }

    /// Index of the product of the letters of `word` (reduced or not).
    pub fn index_of_word(&self, word: &[usize]) -> Result<usize> {
        let l = self.generator_count();
        let mut k = 0;
        for &s in word.iter().rev() {
            if s >= l {
                return Err(Error::InvalidInput(format!("letter {s} out of range (rank {l})")));
            }
            k = self.left[s][k];
        }
        Ok(k)
    }

    /// Canonical reduced word of the product of `word`.
    pub fn normal_form(&self, word: &[usize]) -> Result<WeylElement> {
        Ok(self.element(self.index_of_word(word)?))
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        let mut word = u.word.clone();
        word.extend_from_slice(&v.word);
        self.normal_form(&word)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let word: Vec<usize> = w.word.iter().rev().copied().collect();
        self.normal_form(&word).expect("letters of a group element are in range")
    }

    pub fn longest(&self) -> WeylElement {
        self.element(self.order() - 1)
    }

    /// The action of `w` on `X`.
    pub fn act(&self, w: &WeylElement, x: &[i64]) -> Vec<i64> {
        w.word
            .iter()
            .rev()
            .fold(x.to_vec(), |acc, &s| self.datum.reflect(s, &acc))
    }

    /// The contragredient action of `w` on `Y`.
    pub fn act_coweight(&self, w: &WeylElement, y: &[i64]) -> Vec<i64> {
        w.word
            .iter()
            .rev()
            .fold(y.to_vec(), |acc, &s| self.datum.reflect_coweight(s, &acc))
    }

    pub(crate) fn len_of(&self, k: usize) -> usize {
        self.words[k].len()
    }

    pub(crate) fn word_of(&self, k: usize) -> &[usize] {
        &self.words[k]
    }

    pub(crate) fn left_mul(&self, s: usize, k: usize) -> usize {
        self.left[s][k]
    }
}
