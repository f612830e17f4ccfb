//! Iwahori-Hecke and affine Hecke algebras in the Bernstein presentation.
//!
//! Elements are stored in the basis `θ_x T_w γ` (lattice part on the left,
//! R-group part on the right) with [`LaurentCoeff`] coefficients. The only
//! rewriting rules needed are
//!
//! * `T_s T_w = T_{sw}` if `ℓ(sw) > ℓ(w)`, else `(q_s − 1) T_w + q_s T_{sw}`;
//! * `T_s θ_x = θ_{s(x)} T_s + C_s(x)`, where `C_s(x)` is the cross
//!   correction returned by [`HeckeAlgebra::cross_correction`];
//! * `γ θ_x = θ_{γx} γ`, `γ T_w = T_{γ(w)} γ` and `γ δ = ♮(γ, δ) (γδ)`.
//!
//! A product `(θ_x T_w γ)(θ_y T_v δ)` is evaluated by moving `γ` to the right
//! and then pushing `θ_{γy}` leftwards through `T_w` one simple reflection at
//! a time; each step lowers the length of the `T`-part standing to the left of
//! a `θ`, so the rewriting terminates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentCoeff;
use crate::weyl::{pairing, RootDatum, WeylElement, WeylGroup};
use crate::{Error, Result};

/// Parameters attached to one simple reflection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleParam {
    /// Index of the indeterminate `q_var` (with `v_var² = q_var`).
    pub var: usize,
    /// `q_s = q_var^λ`.
    #[serde(with = "rational_str")]
    pub lambda: BigRational,
    /// Only meaningful when `α^∨ ∈ 2Y`; otherwise it must be absent or equal
    /// to `lambda`.
    #[serde(default, with = "opt_rational_str", skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<BigRational>,
}

impl SimpleParam {
    pub fn new(var: usize, lambda: i64) -> Self {
        Self {
            var,
            lambda: BigRational::from_integer(lambda.into()),
            lambda_star: None,
        }
    }

    pub fn with_star(mut self, lambda_star: i64) -> Self {
        self.lambda_star = Some(BigRational::from_integer(lambda_star.into()));
        self
    }
}

pub(crate) mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::laurent::{format_rational, parse_rational};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(BigRational::from_integer(i.into())),
            Raw::Str(s) => parse_rational(&s).map_err(serde::de::Error::custom),
        }
    }
}

mod opt_rational_str {
    use num_rational::BigRational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => super::rational_str::serialize(r, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        super::rational_str::deserialize(d).map(Some)
    }
}

#[derive(Debug, Clone)]
struct Resolved {
    param: SimpleParam,
    doubled: bool,
    q_s: LaurentCoeff,
    q_s_minus_one: LaurentCoeff,
    /// `q^{(λ+λ*)/2} − q^{(λ−λ*)/2}`, zero unless `α^∨ ∈ 2Y`.
    star_term: LaurentCoeff,
}

/// A root datum with Hecke parameters `λ`, `λ*` on its simple reflections.
#[derive(Debug, Clone)]
pub struct HeckeParams {
    weyl: WeylGroup,
    simple: Vec<Resolved>,
    orbits: Vec<usize>,
}

/// Orbit index of each simple reflection under `W`-conjugacy: two simple
/// reflections are conjugate iff joined by a path of odd `m(s, t)`.
pub fn simple_reflection_orbits(coxeter: &[Vec<u32>]) -> Vec<usize> {
    let l = coxeter.len();
    let mut orbit = vec![usize::MAX; l];
    let mut next = 0;
    for start in 0..l {
        if orbit[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        orbit[start] = next;
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if orbit[j] == usize::MAX && coxeter[i][j] % 2 == 1 && i != j {
                    orbit[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    orbit
}

impl HeckeParams {
    pub fn new(datum: RootDatum, params: Vec<SimpleParam>) -> Result<Self> {
        let weyl = WeylGroup::new(datum)?;
        Self::from_weyl(weyl, params)
    }

    pub fn from_weyl(weyl: WeylGroup, params: Vec<SimpleParam>) -> Result<Self> {
        let l = weyl.generator_count();
        if params.len() != l {
            return Err(Error::InvalidParams(format!("{} parameters for {l} simple reflections", params.len())));
        }
        let orbits = simple_reflection_orbits(weyl.coxeter_matrix());
        let mut simple = Vec::with_capacity(l);
        for (i, p) in params.into_iter().enumerate() {
            let doubled = weyl.datum().coroot_in_2y(i);
            let mut p = p;
            if !doubled {
                match &p.lambda_star {
                    Some(ls) if *ls != p.lambda => {
                        return Err(Error::InvalidParams(format!(
                            "λ*(α{i}) must equal λ(α{i}) because α{i}^∨ is not in 2Y"
                        )))
                    }
                    _ => p.lambda_star = None,
                }
            }
            let lambda_star = p.lambda_star.clone().unwrap_or_else(|| p.lambda.clone());
            let q_s = LaurentCoeff::q_power(p.var, &p.lambda)?;
            let q_s_minus_one = &q_s - &LaurentCoeff::one();
            let star_term = if doubled {
                let two = BigRational::from_integer(2.into());
                let plus = (&p.lambda + &lambda_star) / &two;
                let minus = (&p.lambda - &lambda_star) / &two;
                &LaurentCoeff::q_power(p.var, &plus)? - &LaurentCoeff::q_power(p.var, &minus)?
            } else {
                LaurentCoeff::zero()
            };
            simple.push(Resolved {
                param: p,
                doubled,
                q_s,
                q_s_minus_one,
                star_term,
            });
        }
        for i in 0..l {
            for j in 0..l {
                if orbits[i] == orbits[j] && simple[i].param != simple[j].param {
                    return Err(Error::InvalidParams(format!(
                        "s{i} and s{j} are conjugate but carry different parameters"
                    )));
                }
            }
        }
        Ok(HeckeParams { weyl, simple, orbits })
    }

    /// One indeterminate per conjugacy class of simple reflections, `λ = 1`,
    /// and `λ* = λ`.
    pub fn generic(datum: RootDatum) -> Result<Self> {
        let weyl = WeylGroup::new(datum)?;
        let orbits = simple_reflection_orbits(weyl.coxeter_matrix());
        let params = orbits.iter().map(|&o| SimpleParam::new(o, 1)).collect();
        Self::from_weyl(weyl, params)
    }

    /// Like [`Self::generic`], but reflections with `α^∨ ∈ 2Y` get `λ = 2`,
    /// `λ* = 1`, so the extra term of the cross relation is nonzero.
    pub fn generic_unequal(datum: RootDatum) -> Result<Self> {
        let weyl = WeylGroup::new(datum)?;
        let orbits = simple_reflection_orbits(weyl.coxeter_matrix());
        let params = orbits
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                if weyl.datum().coroot_in_2y(i) {
                    SimpleParam::new(o, 2).with_star(1)
                } else {
                    SimpleParam::new(o, 1)
                }
            })
            .collect();
        Self::from_weyl(weyl, params)
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn datum(&self) -> &RootDatum {
        self.weyl.datum()
    }

    pub fn simple_params(&self) -> Vec<SimpleParam> {
        self.simple.iter().map(|r| r.param.clone()).collect()
    }

    /// Conjugacy-class index of each simple reflection.
    pub fn orbits(&self) -> &[usize] {
        &self.orbits
    }

    /// `q_s` for the `i`-th simple reflection.
    pub fn q(&self, i: usize) -> &LaurentCoeff {
        &self.simple[i].q_s
    }
}

/// A finite group acting on the root datum by automorphisms preserving the
/// base, with its multiplication table.
#[derive(Debug, Clone)]
pub struct RGroup {
    labels: Vec<String>,
    matrices: Vec<Vec<Vec<i64>>>,
    perms: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| pairing(row, x)).collect()
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

const MAX_RGROUP: usize = 1024;

impl RGroup {
    pub fn trivial(rank: usize) -> Self {
        RGroup {
            labels: vec!["e".into()],
            matrices: vec![identity_matrix(rank)],
            perms: vec![],
            mul: vec![vec![0]],
            inv: vec![0],
        }
    }

    /// Closes the given generators (label, matrix of the action on `X`)
    /// under multiplication. Elements are labelled by the shortest word in
    /// the generator labels, `e` for the identity.
    pub fn generate(datum: &RootDatum, generators: &[(String, Vec<Vec<i64>>)]) -> Result<Self> {
        let n = datum.rank();
        for (label, m) in generators {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidRGroup(format!("matrix of {label} must be {n}×{n}")));
            }
            if label == "e" {
                return Err(Error::InvalidRGroup("generator label e is reserved".into()));
            }
        }
        let mut labels = vec!["e".to_string()];
        let mut matrices = vec![identity_matrix(n)];
        let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::from([(identity_matrix(n), 0)]);
        let mut head = 0;
        while head < matrices.len() {
            for (label, g) in generators {
                let m = mat_mul(&matrices[head], g);
                if index.contains_key(&m) {
                    continue;
                }
                if matrices.len() >= MAX_RGROUP {
                    return Err(Error::InvalidRGroup(format!("group generated exceeds {MAX_RGROUP} elements")));
                }
                let name = if head == 0 {
                    label.clone()
                } else {
                    format!("{}{}", labels[head], label)
                };
                index.insert(m.clone(), matrices.len());
                labels.push(name);
                matrices.push(m);
            }
            head += 1;
        }
        let size = matrices.len();
        let mut mul = vec![vec![0; size]; size];
        for a in 0..size {
            for b in 0..size {
                let m = mat_mul(&matrices[a], &matrices[b]);
                mul[a][b] = *index
                    .get(&m)
                    .ok_or_else(|| Error::InvalidRGroup("generated set is not closed".into()))?;
            }
        }
        let inv: Vec<usize> = (0..size)
            .map(|a| (0..size).find(|&b| mul[a][b] == 0).expect("finite group has inverses"))
            .collect();

        let simple = datum.simple_roots();
        let simple_v = datum.simple_coroots();
        let mut perms = Vec::with_capacity(size);
        for g in 0..size {
            let ginv_t = transpose(&matrices[inv[g]]);
            let mut perm = Vec::with_capacity(simple.len());
            for (i, alpha) in simple.iter().enumerate() {
                let image = mat_vec(&matrices[g], alpha);
                let j = simple.iter().position(|b| *b == image).ok_or_else(|| {
                    Error::InvalidRGroup(format!("{} does not map simple root α{i} to a simple root", labels[g]))
                })?;
                if mat_vec(&ginv_t, &simple_v[i]) != simple_v[j] {
                    return Err(Error::InvalidRGroup(format!(
                        "{} does not map α{i}^∨ to α{j}^∨",
                        labels[g]
                    )));
                }
                perm.push(j);
            }
            perms.push(perm);
        }
        Ok(RGroup {
            labels,
            matrices,
            perms,
            mul,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    fn act(&self, g: usize, x: &[i64]) -> Vec<i64> {
        if g == 0 {
            x.to_vec()
        } else {
            mat_vec(&self.matrices[g], x)
        }
    }

    fn perm(&self, g: usize, s: usize) -> usize {
        if g == 0 {
            s
        } else {
            self.perms[g][s]
        }
    }
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Key of a basis element `θ_x T_w γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct BasisKey {
    x: Vec<i64>,
    w: usize,
    gamma: usize,
}

/// A finite linear combination of basis elements `θ_x T_w γ`.
///
/// Elements are only meaningful together with the [`HeckeAlgebra`] that
/// produced them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<BasisKey, LaurentCoeff>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: BasisKey, c: LaurentCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.scale(&-LaurentCoeff::one()))
    }

    pub fn scale(&self, c: &LaurentCoeff) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Applies a coefficient map, e.g. a specialization of the parameters.
    pub fn map_coefficients(&self, f: impl Fn(&LaurentCoeff) -> Result<LaurentCoeff>) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v)?);
        }
        Ok(out)
    }

    /// Largest `ℓ(w)` in the support, `None` for zero.
    pub fn max_length(&self, algebra: &HeckeAlgebra) -> Option<usize> {
        self.terms.keys().map(|k| algebra.weyl().len_of(k.w)).max()
    }

    /// Coefficient of `θ_x T_w γ` (`γ = e` when `gamma` is `None`).
    pub fn coefficient(
        &self,
        algebra: &HeckeAlgebra,
        x: &[i64],
        w: &WeylElement,
        gamma: Option<&str>,
    ) -> Result<LaurentCoeff> {
        let key = algebra.key(x, w, gamma)?;
        Ok(self.terms.get(&key).cloned().unwrap_or_default())
    }
}

/// One term of a serialized element, `coeff · θ_x T_w γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub x: Vec<i64>,
    pub w: Vec<usize>,
    pub gamma: String,
    pub coeff: LaurentCoeff,
}

/// Outcome of one relation check in [`HeckeAlgebra::verify_relations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub all_passed: bool,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    fn from_checks(checks: Vec<RelationCheck>) -> Self {
        RelationReport {
            all_passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// An extended affine Hecke algebra `H(R, λ, λ*, q) ⋊ ℂ[Γ, ♮]`.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    params: HeckeParams,
    rgroup: RGroup,
    cocycle: Vec<Vec<LaurentCoeff>>,
    /// `γ(w)` for every `γ` and every `w`, by index.
    gamma_on_w: Vec<Vec<usize>>,
}

impl HeckeAlgebra {
    /// The affine Hecke algebra without R-group.
    pub fn new(params: HeckeParams) -> Self {
        let rank = params.datum().rank();
        let order = params.weyl().order();
        HeckeAlgebra {
            params,
            rgroup: RGroup::trivial(rank),
            cocycle: vec![vec![LaurentCoeff::one()]],
            gamma_on_w: vec![(0..order).collect()],
        }
    }

    /// Crossed product with a finite group `Γ` acting on the datum and a
    /// 2-cocycle `♮` with unit values (unlisted pairs default to 1).
    pub fn extend_by_rgroup(
        params: HeckeParams,
        generators: &[(String, Vec<Vec<i64>>)],
        cocycle: &[((String, String), LaurentCoeff)],
    ) -> Result<Self> {
        let rgroup = RGroup::generate(params.datum(), generators)?;
        let size = rgroup.order();
        for g in 0..size {
            for i in 0..params.simple.len() {
                let j = rgroup.perm(g, i);
                if params.simple[i].param != params.simple[j].param {
                    return Err(Error::InvalidRGroup(format!(
                        "{} moves s{i} to s{j} but their parameters differ",
                        rgroup.labels[g]
                    )));
                }
            }
        }
        let mut table = vec![vec![LaurentCoeff::one(); size]; size];
        for ((a, b), c) in cocycle {
            let ia = rgroup
                .index_of(a)
                .ok_or_else(|| Error::InvalidRGroup(format!("unknown R-group element {a}")))?;
            let ib = rgroup
                .index_of(b)
                .ok_or_else(|| Error::InvalidRGroup(format!("unknown R-group element {b}")))?;
            if !c.is_unit() {
                return Err(Error::CocycleFailure(format!("♮({a}, {b}) = {c} is not a unit")));
            }
            table[ia][ib] = c.clone();
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    let ab = rgroup.mul[a][b];
                    let bc = rgroup.mul[b][c];
                    let lhs = &table[a][b] * &table[ab][c];
                    let rhs = &table[a][bc] * &table[b][c];
                    if lhs != rhs {
                        return Err(Error::CocycleFailure(format!(
                            "♮(a,b)♮(ab,c) ≠ ♮(a,bc)♮(b,c) at a={}, b={}, c={}",
                            rgroup.labels[a], rgroup.labels[b], rgroup.labels[c]
                        )));
                    }
                }
            }
        }
        let weyl = params.weyl();
        let gamma_on_w = (0..size)
            .map(|g| {
                (0..weyl.order())
                    .map(|w| {
                        let word: Vec<usize> = weyl.word_of(w).iter().map(|&s| rgroup.perm(g, s)).collect();
                        weyl.index_of_word(&word).expect("permuted letters are in range")
                    })
                    .collect()
            })
            .collect();
        Ok(HeckeAlgebra {
            params,
            rgroup,
            cocycle: table,
            gamma_on_w,
        })
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn weyl(&self) -> &WeylGroup {
        self.params.weyl()
    }

    pub fn datum(&self) -> &RootDatum {
        self.params.datum()
    }

    pub fn rgroup(&self) -> &RGroup {
        &self.rgroup
    }

    fn gamma_index(&self, gamma: Option<&str>) -> Result<usize> {
        match gamma {
            None => Ok(0),
            Some(l) => self
                .rgroup
                .index_of(l)
                .ok_or_else(|| Error::InvalidInput(format!("unknown R-group element {l}"))),
        }
    }

    fn check_x(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.datum().rank() {
            return Err(Error::InvalidInput(format!(
                "lattice vector {x:?} must have length {}",
                self.datum().rank()
            )));
        }
        Ok(())
    }

    fn key(&self, x: &[i64], w: &WeylElement, gamma: Option<&str>) -> Result<BasisKey> {
        self.check_x(x)?;
        Ok(BasisKey {
            x: x.to_vec(),
            w: self.weyl().index_of(w)?,
            gamma: self.gamma_index(gamma)?,
        })
    }

    fn basis(&self, x: Vec<i64>, w: usize, gamma: usize) -> HeckeElement {
        let mut e = HeckeElement::zero();
        e.add_term(BasisKey { x, w, gamma }, LaurentCoeff::one());
        e
    }

    pub fn one(&self) -> HeckeElement {
        self.basis(vec![0; self.datum().rank()], 0, 0)
    }

    pub fn scalar(&self, c: LaurentCoeff) -> HeckeElement {
        self.one().scale(&c)
    }

    pub fn theta(&self, x: &[i64]) -> Result<HeckeElement> {
        self.check_x(x)?;
        Ok(self.basis(x.to_vec(), 0, 0))
    }

    pub fn t(&self, w: &WeylElement) -> Result<HeckeElement> {
        Ok(self.basis(vec![0; self.datum().rank()], self.weyl().index_of(w)?, 0))
    }

    /// `T_{s_{i_1}} ⋯ T_{s_{i_k}}` for an arbitrary (possibly non-reduced) word.
    pub fn t_word(&self, word: &[usize]) -> Result<HeckeElement> {
        let l = self.weyl().generator_count();
        let mut e = self.one();
        for &s in word.iter().rev() {
            if s >= l {
                return Err(Error::InvalidInput(format!("letter {s} out of range (rank {l})")));
            }
            e = self.push_generator(s, &e);
        }
        Ok(e)
    }

    pub fn gamma(&self, label: &str) -> Result<HeckeElement> {
        let g = self.gamma_index(Some(label))?;
        Ok(self.basis(vec![0; self.datum().rank()], 0, g))
    }

    /// Right-hand side `C_s(x)` of
    /// `θ_x T_s − T_s θ_{s(x)} = C_s(x)` for the `i`-th simple root, expanded
    /// as a finite geometric sum so it has no denominators.
    pub fn cross_correction(&self, x: &[i64], i: usize) -> Result<HeckeElement> {
        self.check_x(x)?;
        if i >= self.weyl().generator_count() {
            return Err(Error::InvalidInput(format!("no simple root α{i}")));
        }
        let mut out = HeckeElement::zero();
        for (z, c) in self.correction_terms(x, i) {
            out.add_term(BasisKey { x: z, w: 0, gamma: 0 }, c);
        }
        Ok(out)
    }

    fn correction_terms(&self, x: &[i64], i: usize) -> Vec<(Vec<i64>, LaurentCoeff)> {
        let datum = self.datum();
        let alpha = &datum.simple_roots()[i];
        let n = pairing(x, &datum.simple_coroots()[i]);
        if n == 0 {
            return Vec::new();
        }
        let r = &self.params.simple[i];
        let neg_alpha: Vec<i64> = alpha.iter().map(|a| -a).collect();
        // Numerator factor and the step of the geometric series.
        let (factor, step, count): (Vec<(Vec<i64>, &LaurentCoeff)>, i64, i64) = if r.doubled {
            (
                vec![(vec![0; x.len()], &r.q_s_minus_one), (neg_alpha, &r.star_term)],
                2,
                n.abs() / 2,
            )
        } else {
            (vec![(vec![0; x.len()], &r.q_s_minus_one)], 1, n.abs())
        };
        // (θ_x − θ_{s(x)}) / (θ_0 − θ_{−step·α}) = ±Σ_j θ_{start − j·step·α}
        let (start, sign) = if n > 0 {
            (x.to_vec(), LaurentCoeff::one())
        } else {
            (datum.reflect(i, x), -LaurentCoeff::one())
        };
        let mut acc: BTreeMap<Vec<i64>, LaurentCoeff> = BTreeMap::new();
        for j in 0..count {
            let base: Vec<i64> = start.iter().zip(alpha).map(|(s, a)| s - j * step * a).collect();
            for (shift, c) in &factor {
                if c.is_zero() {
                    continue;
                }
                let z: Vec<i64> = base.iter().zip(shift).map(|(b, s)| b + s).collect();
                let term = &sign * *c;
                let entry = acc.entry(z).or_default();
                *entry += &term;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `T_s · e`.
    fn push_generator(&self, s: usize, e: &HeckeElement) -> HeckeElement {
        let weyl = self.weyl();
        let r = &self.params.simple[s];
        let mut out = HeckeElement::zero();
        for (key, c) in &e.terms {
            let sy = self.datum().reflect(s, &key.x);
            let su = weyl.left_mul(s, key.w);
            if weyl.len_of(su) > weyl.len_of(key.w) {
                out.add_term(BasisKey { x: sy, w: su, gamma: key.gamma }, c.clone());
            } else {
                out.add_term(
                    BasisKey {
                        x: sy.clone(),
                        w: key.w,
                        gamma: key.gamma,
                    },
                    c * &r.q_s_minus_one,
                );
                out.add_term(BasisKey { x: sy, w: su, gamma: key.gamma }, c * &r.q_s);
            }
            for (z, cz) in self.correction_terms(&key.x, s) {
                out.add_term(BasisKey { x: z, w: key.w, gamma: key.gamma }, c * &cz);
            }
        }
        out
    }

    /// Product in the algebra.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let weyl = self.weyl();
        let mut out = HeckeElement::zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let g = ka.gamma;
                let moved = BasisKey {
                    x: self.rgroup.act(g, &kb.x),
                    w: self.gamma_on_w[g][kb.w],
                    gamma: self.rgroup.mul[g][kb.gamma],
                };
                let mut e = HeckeElement::zero();
                e.add_term(moved, LaurentCoeff::one());
                for &s in weyl.word_of(ka.w).iter().rev() {
                    e = self.push_generator(s, &e);
                }
                let c = &(ca * cb) * &self.cocycle[g][kb.gamma];
                for (k, v) in e.terms {
                    let x = k.x.iter().zip(&ka.x).map(|(p, q)| p + q).collect();
                    out.add_term(BasisKey { x, w: k.w, gamma: k.gamma }, &v * &c);
                }
            }
        }
        out
    }

    /// Product `T_u T_v` in the finite Hecke algebra.
    pub fn mul_t(&self, u: &WeylElement, v: &WeylElement) -> Result<HeckeElement> {
        Ok(self.mul(&self.t(u)?, &self.t(v)?))
    }

    /// Evaluates a formal expression into the normal-form basis.
    pub fn normal_form(&self, expr: &Expr) -> Result<HeckeElement> {
        match expr {
            Expr::Scalar(c) => Ok(self.scalar(c.clone())),
            Expr::Theta(x) => self.theta(x),
            Expr::T(word) => self.t_word(word),
            Expr::Gamma(label) => self.gamma(label),
            Expr::Sum(items) => items
                .iter()
                .try_fold(HeckeElement::zero(), |acc, e| Ok(acc.add(&self.normal_form(e)?))),
            Expr::Product(items) => items
                .iter()
                .try_fold(self.one(), |acc, e| Ok(self.mul(&acc, &self.normal_form(e)?))),
            Expr::Neg(inner) => Ok(self.normal_form(inner)?.scale(&-LaurentCoeff::one())),
        }
    }

    /// Parses and evaluates an expression in the text syntax of [`Expr`].
    pub fn evaluate(&self, text: &str) -> Result<HeckeElement> {
        self.normal_form(&Expr::parse(text)?)
    }

    /// Checks the defining relations through the multiplication engine, using
    /// the Coxeter matrix of the Weyl group.
    pub fn verify_relations(&self) -> RelationReport {
        let m = self.weyl().coxeter_matrix().to_vec();
        self.verify_relations_with(&m)
    }

    /// As [`Self::verify_relations`] but with a caller-supplied Coxeter
    /// matrix for the braid relations.
    pub fn verify_relations_with(&self, coxeter: &[Vec<u32>]) -> RelationReport {
        let l = self.weyl().generator_count();
        let rank = self.datum().rank();
        let gen = |s: usize| self.t_word(&[s]).expect("generator in range");
        let alternating = |a: usize, b: usize, m: u32| -> Vec<usize> {
            (0..m as usize).map(|k| if k % 2 == 0 { a } else { b }).collect()
        };
        let push_word = |word: &[usize], e: &HeckeElement| {
            word.iter().rev().fold(e.clone(), |acc, &s| self.mul(&gen(s), &acc))
        };
        let lattice_basis: Vec<Vec<i64>> = (0..rank)
            .map(|j| (0..rank).map(|k| i64::from(j == k)).collect())
            .collect();
        let mut checks = Vec::new();

        for s in 0..l {
            let ts = gen(s);
            let lhs = self.mul(&ts, &ts);
            let rhs = ts.scale(&self.params.simple[s].q_s_minus_one).add(&self.scalar(self.params.q(s).clone()));
            checks.push(RelationCheck {
                relation: format!("quadratic s{s}"),
                passed: lhs == rhs,
            });
        }
        for s in 0..l {
            for t in s + 1..l {
                let m = coxeter[s][t];
                let lhs = self.t_word(&alternating(s, t, m)).expect("letters in range");
                let rhs = self.t_word(&alternating(t, s, m)).expect("letters in range");
                checks.push(RelationCheck {
                    relation: format!("braid s{s} s{t} (m = {m})"),
                    passed: lhs == rhs,
                });
            }
        }
        for s in 0..l {
            let r = &self.params.simple[s];
            let alpha = &self.datum().simple_roots()[s];
            let step: i64 = if r.doubled { 2 } else { 1 };
            let theta_step: Vec<i64> = alpha.iter().map(|a| -step * a).collect();
            let denominator = self.one().sub(&self.theta(&theta_step).expect("rank matches"));
            let mut numerator_factor = self.scalar(r.q_s_minus_one.clone());
            if r.doubled {
                let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
                numerator_factor = numerator_factor.add(&self.theta(&neg).expect("rank matches").scale(&r.star_term));
            }
            for x in &lattice_basis {
                let sx = self.datum().reflect(s, x);
                let theta_x = self.theta(x).expect("rank matches");
                let theta_sx = self.theta(&sx).expect("rank matches");
                let lhs = self.mul(&theta_x, &gen(s)).sub(&self.mul(&gen(s), &theta_sx));
                let rhs = self.cross_correction(x, s).expect("valid input");
                // The expansion times the denominator must give the numerator.
                let polynomial = self.mul(&rhs, &denominator) == self.mul(&numerator_factor, &theta_x.sub(&theta_sx));
                checks.push(RelationCheck {
                    relation: format!("cross s{s} x = {x:?}"),
                    passed: lhs == rhs && polynomial,
                });

                let once = self.mul(&gen(s), &theta_x);
                let twice = self.mul(&gen(s), &once);
                let expected = once
                    .scale(&r.q_s_minus_one)
                    .add(&theta_x.scale(self.params.q(s)));
                checks.push(RelationCheck {
                    relation: format!("quadratic on θ s{s} x = {x:?}"),
                    passed: twice == expected,
                });
            }
        }
        for s in 0..l {
            for t in s + 1..l {
                let m = coxeter[s][t];
                for x in &lattice_basis {
                    let theta_x = self.theta(x).expect("rank matches");
                    let lhs = push_word(&alternating(s, t, m), &theta_x);
                    let rhs = push_word(&alternating(t, s, m), &theta_x);
                    checks.push(RelationCheck {
                        relation: format!("braid on θ s{s} s{t} x = {x:?}"),
                        passed: lhs == rhs,
                    });
                }
            }
        }
        for g in 1..self.rgroup.order() {
            let label = &self.rgroup.labels[g];
            let gamma = self.basis(vec![0; rank], 0, g);
            let gamma_inv = self.basis(vec![0; rank], 0, self.rgroup.inv[g]);
            let unit = self.mul(&gamma, &gamma_inv);
            for s in 0..l {
                let lhs = self.mul(&self.mul(&gamma, &gen(s)), &gamma_inv);
                let rhs = self.mul(&gen(self.rgroup.perm(g, s)), &unit);
                checks.push(RelationCheck {
                    relation: format!("{label} T_s{s} {label}^-1"),
                    passed: lhs == rhs,
                });
            }
            for x in &lattice_basis {
                let theta_x = self.theta(x).expect("rank matches");
                let lhs = self.mul(&self.mul(&gamma, &theta_x), &gamma_inv);
                let rhs = self.mul(&self.theta(&self.rgroup.act(g, x)).expect("rank matches"), &unit);
                checks.push(RelationCheck {
                    relation: format!("{label} θ_{x:?} {label}^-1"),
                    passed: lhs == rhs,
                });
            }
        }
        RelationReport::from_checks(checks)
    }

    /// Terms sorted by `x`, then reduced word, then R-group label.
    pub fn records(&self, e: &HeckeElement) -> Vec<ElementRecord> {
        let mut out: Vec<ElementRecord> = e
            .terms
            .iter()
            .map(|(k, c)| ElementRecord {
                x: k.x.clone(),
                w: self.weyl().word_of(k.w).to_vec(),
                gamma: self.rgroup.labels[k.gamma].clone(),
                coeff: c.clone(),
            })
            .collect();
        out.sort_by(|a, b| a.x.cmp(&b.x).then(a.w.cmp(&b.w)).then(a.gamma.cmp(&b.gamma)));
        out
    }

    /// Rebuilds an element from records; words need not be reduced.
    pub fn from_records(&self, records: &[ElementRecord]) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero();
        for r in records {
            self.check_x(&r.x)?;
            let term = self
                .mul(&self.theta(&r.x)?, &self.mul(&self.t_word(&r.w)?, &self.gamma(&r.gamma)?))
                .scale(&r.coeff);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Human-readable form, e.g. `(q0 - 1)*θ[1] + θ[-1]T[0]`.
    pub fn display(&self, e: &HeckeElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        self.records(e)
            .iter()
            .map(|r| {
                let mut basis = String::new();
                if r.x.iter().any(|&c| c != 0) {
                    basis.push_str(&format!("θ{:?}", r.x));
                }
                if !r.w.is_empty() {
                    basis.push_str(&format!("T{:?}", r.w));
                }
                if r.gamma != "e" {
                    basis.push_str(&format!("γ[{}]", r.gamma));
                }
                let coeff = r.coeff.to_string();
                match (basis.is_empty(), r.coeff.is_one()) {
                    (true, _) => format!("({coeff})"),
                    (false, true) => basis,
                    (false, false) => format!("({coeff})*{basis}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A formal expression over the symbols `θ_x`, `T_w`, `γ` and scalars.
///
/// Text syntax: sums and differences of products joined by `*`; factors are
/// `theta(1,0)`, `T(0,1)` (product of simple generators, `T()` is the unit),
/// `g(label)`, rational numbers such as `3/2`, `q` or `q1` (a parameter),
/// `v` or `v1` (its square root), an optional integer power `^k` on `q`/`v`,
/// and parenthesized subexpressions.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Scalar(LaurentCoeff),
    Theta(Vec<i64>),
    T(Vec<usize>),
    Gamma(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = ExprParser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let e = p.sum()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected input at position {} in {text:?}", p.pos)));
        }
        Ok(e)
    }
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at position {}", self.pos)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut items = vec![self.product()?];
        loop {
            if self.eat('+') {
                items.push(self.product()?);
            } else if self.eat('-') {
                items.push(Expr::Neg(Box::new(self.product()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Sum(items) })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut items = vec![self.factor()?];
        while self.eat('*') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Product(items) })
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            let neg = self.eat('-');
            let d = self.digits();
            let v: i64 = d
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer at position {}", self.pos)))?;
            out.push(if neg { -v } else { v });
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn exponent(&mut self) -> Result<i32> {
        if !self.eat('^') {
            return Ok(1);
        }
        let neg = self.eat('-');
        let d = self.digits();
        let v: i32 = d
            .parse()
            .map_err(|_| Error::Parse(format!("expected an exponent at position {}", self.pos)))?;
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        if self.eat('(') {
            let e = self.sum()?;
            self.expect(')')?;
            return Ok(e);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let text = if self.eat('/') {
                    format!("{num}/{}", self.digits())
                } else {
                    num
                };
                Ok(Expr::Scalar(LaurentCoeff::constant(crate::laurent::parse_rational(&text)?)))
            }
            Some('θ') => {
                self.pos += 1;
                Ok(Expr::Theta(self.int_list()?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.word();
                match name.as_str() {
                    "theta" => Ok(Expr::Theta(self.int_list()?)),
                    "T" => {
                        let letters = self.int_list()?;
                        let word = letters
                            .into_iter()
                            .map(|s| usize::try_from(s).map_err(|_| Error::Parse(format!("bad letter {s}"))))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Expr::T(word))
                    }
                    "g" => {
                        self.expect('(')?;
                        let start = self.pos;
                        while self.peek().is_some_and(|c| c != ')') {
                            self.pos += 1;
                        }
                        let label: String = self.chars[start..self.pos].iter().collect();
                        self.expect(')')?;
                        Ok(Expr::Gamma(label))
                    }
                    "q" | "v" => {
                        let d = self.digits();
                        let var: usize = if d.is_empty() { 0 } else { d.parse().map_err(|_| Error::Parse(d.clone()))? };
                        let power = self.exponent()?;
                        let per = if name == "q" { 2 } else { 1 };
                        Ok(Expr::Scalar(LaurentCoeff::v_power(var, per * power)))
                    }
                    other => Err(Error::Parse(format!("unknown symbol {other:?}"))),
                }
            }
            _ => Err(Error::Parse(format!("unexpected input at position {}", self.pos))),
        }
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.relation)?;
        }
        Ok(())
    }
}
