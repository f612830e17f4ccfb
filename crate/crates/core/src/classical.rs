//! Finite classical groups: orders, centralizers of semisimple elements and
//! the Lusztig dimension formula.
//!
//! Semisimple elements are described only through their eigenvalue orbits
//! under Frobenius (degree, self-duality and multiplicity); no finite-field
//! arithmetic is involved.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::{Error, Result, Sign};

/// Families of finite classical groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `Sp_{2m}`
    Sp,
    /// `SO_{2m+1}`
    SOodd,
    /// `O^+_{2m}`
    Oplus,
    /// `O^-_{2m}`
    Ominus,
    /// `GL_m`
    GL,
    /// `U_m`
    U,
}

impl Family {
    fn is_orthosymplectic(self) -> bool {
        matches!(self, Family::Sp | Family::SOodd | Family::Oplus | Family::Ominus)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sp => "Sp",
            Family::SOodd => "SOodd",
            Family::Oplus => "Oplus",
            Family::Ominus => "Ominus",
            Family::GL => "GL",
            Family::U => "U",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Sp" => Ok(Family::Sp),
            "SOodd" | "SO" => Ok(Family::SOodd),
            "Oplus" | "O+" => Ok(Family::Oplus),
            "Ominus" | "O-" => Ok(Family::Ominus),
            "GL" => Ok(Family::GL),
            "U" => Ok(Family::U),
            other => Err(Error::Parse(format!("unknown group family {other:?}"))),
        }
    }
}

/// Decomposes `q = p^k`, returning `None` unless `q` is a prime power > 1.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// A finite classical group `G(q)` of rank `m`: `Sp_{2m}`, `SO_{2m+1}`,
/// `O^±_{2m}`, `GL_m` or `U_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub rank: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

impl GroupDescriptor {
    pub fn new(family: Family, rank: u32, q: Option<u64>) -> Result<Self> {
        let g = GroupDescriptor { family, rank, q };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(q) = self.q {
            if prime_power(q).is_none() {
                return Err(Error::InvalidInput(format!("q = {q} is not a prime power")));
            }
        }
        Ok(())
    }

    /// The characteristic `p` of `F_q`, if `q` is numeric.
    pub fn characteristic(&self) -> Option<u64> {
        self.q.and_then(prime_power).map(|(p, _)| p)
    }

    pub fn order(&self) -> FactoredOrder {
        let sign = match self.family {
            Family::Oplus => Some(Sign::Plus),
            Family::Ominus => Some(Sign::Minus),
            _ => None,
        };
        family_order(self.family, self.rank, 1, sign)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.rank;
        match self.family {
            Family::Sp => write!(f, "Sp_{}", 2 * m),
            Family::SOodd => write!(f, "SO_{}", 2 * m + 1),
            Family::Oplus => write!(f, "O+_{}", 2 * m),
            Family::Ominus => write!(f, "O-_{}", 2 * m),
            Family::GL => write!(f, "GL_{m}"),
            Family::U => write!(f, "U_{m}"),
        }?;
        if let Some(q) = self.q {
            write!(f, "({q})")?;
        }
        Ok(())
    }
}

/// `c · q^a · Π (q^d ± 1)^e`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredOrder {
    coefficient: u64,
    q_power: u64,
    /// `(d, s) ↦ e` for the factor `(q^d + s)^e`, `s ∈ {−1, +1}`.
    factors: BTreeMap<(u64, i8), u32>,
}

impl FactoredOrder {
    pub fn one() -> Self {
        FactoredOrder {
            coefficient: 1,
            q_power: 0,
            factors: BTreeMap::new(),
        }
    }

    fn push(&mut self, degree: u64, constant: i8) {
        *self.factors.entry((degree, constant)).or_insert(0) += 1;
    }

    pub fn coefficient(&self) -> u64 {
        self.coefficient
    }

    pub fn q_power(&self) -> u64 {
        self.q_power
    }

    pub fn mul(&self, other: &FactoredOrder) -> FactoredOrder {
        let mut out = self.clone();
        out.coefficient *= other.coefficient;
        out.q_power += other.q_power;
        for (k, e) in &other.factors {
            *out.factors.entry(*k).or_insert(0) += e;
        }
        out
    }

    /// Value at a numeric `q`.
    pub fn evaluate(&self, q: u64) -> BigUint {
        let qb = BigUint::from(q);
        let mut out = BigUint::from(self.coefficient) * qb.pow(self.q_power as u32);
        for (&(d, s), &e) in &self.factors {
            let qd = qb.pow(d as u32);
            let f = if s > 0 { qd + 1u32 } else { qd - 1u32 };
            out *= f.pow(e);
        }
        out
    }

    /// Symbolic prime-to-`p` part: the `q^a` factor removed. At `p = 2` the
    /// coefficient 2 of orthogonal groups is a `p`-part too; use
    /// [`Self::p_prime_value`] for exact numbers.
    pub fn p_prime(&self) -> FactoredOrder {
        FactoredOrder {
            q_power: 0,
            ..self.clone()
        }
    }

    /// Largest divisor of the order prime to the characteristic of `q`.
    pub fn p_prime_value(&self, q: u64) -> Result<BigUint> {
        let (p, _) = prime_power(q).ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
        Ok(strip_prime(self.evaluate(q), p))
    }

    /// The same polynomial as a product of cyclotomic polynomials.
    pub fn cyclotomic(&self) -> CyclotomicForm {
        let mut exps = BTreeMap::new();
        for (&(d, s), &e) in &self.factors {
            // q^d - 1 = Π_{k | d} Φ_k;  q^d + 1 = Π_{k | 2d, k ∤ d} Φ_k.
            let ks: Vec<u64> = if s < 0 {
                divisors(d)
            } else {
                divisors(2 * d).into_iter().filter(|k| d % k != 0).collect()
            };
            for k in ks {
                *exps.entry(k).or_insert(0i64) += i64::from(e);
            }
        }
        CyclotomicForm {
            coefficient: BigRational::from_integer(self.coefficient.into()),
            q_power: self.q_power as i64,
            exponents: exps,
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

fn strip_prime(mut n: BigUint, p: u64) -> BigUint {
    let pb = BigUint::from(p);
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
    }
    n
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.coefficient != 1 {
            parts.push(self.coefficient.to_string());
        }
        match self.q_power {
            0 => {}
            1 => parts.push("q".into()),
            a => parts.push(format!("q^{a}")),
        }
        for (&(d, s), &e) in &self.factors {
            let base = if d == 1 { "q".to_string() } else { format!("q^{d}") };
            let op = if s > 0 { '+' } else { '-' };
            if e == 1 {
                parts.push(format!("({base}{op}1)"));
            } else {
                parts.push(format!("({base}{op}1)^{e}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// `c · q^a · Π Φ_k(q)^{e_k}` with rational `c` and signed exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicForm {
    pub coefficient: BigRational,
    pub q_power: i64,
    pub exponents: BTreeMap<u64, i64>,
}

impl CyclotomicForm {
    pub fn div(&self, other: &CyclotomicForm) -> CyclotomicForm {
        let mut exponents = self.exponents.clone();
        for (k, e) in &other.exponents {
            *exponents.entry(*k).or_insert(0) -= e;
        }
        exponents.retain(|_, e| *e != 0);
        CyclotomicForm {
            coefficient: &self.coefficient / &other.coefficient,
            q_power: self.q_power - other.q_power,
            exponents,
        }
    }

    /// True when no cyclotomic factor or power of `q` has negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.q_power >= 0 && self.exponents.values().all(|&e| e >= 0)
    }
}

impl fmt::Display for CyclotomicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coefficient.is_one() {
            parts.push(crate::laurent::format_rational(&self.coefficient));
        }
        match self.q_power {
            0 => {}
            1 => parts.push("q".into()),
            a => parts.push(format!("q^{a}")),
        }
        for (k, e) in &self.exponents {
            if *e == 1 {
                parts.push(format!("Φ{k}"));
            } else {
                parts.push(format!("Φ{k}^{e}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Order of the group of the given family and rank over `F_{q^e}`; `sign`
/// selects `O^±` and is ignored otherwise.
fn family_order(family: Family, rank: u32, e: u32, sign: Option<Sign>) -> FactoredOrder {
    let m = u64::from(rank);
    let e = u64::from(e);
    let mut o = FactoredOrder::one();
    match family {
        Family::Sp | Family::SOodd => {
            o.q_power = e * m * m;
            for i in 1..=m {
                o.push(2 * i * e, -1);
            }
        }
        Family::Oplus | Family::Ominus => {
            if m == 0 {
                return o;
            }
            let plus = match sign {
                Some(s) => s == Sign::Plus,
                None => family == Family::Oplus,
            };
            o.coefficient = 2;
            o.q_power = e * m * (m - 1);
            o.push(m * e, if plus { -1 } else { 1 });
            for i in 1..m {
                o.push(2 * i * e, -1);
            }
        }
        Family::GL => {
            o.q_power = e * m * (m.saturating_sub(1)) / 2;
            for i in 1..=m {
                o.push(i * e, -1);
            }
        }
        Family::U => {
            o.q_power = e * m * (m.saturating_sub(1)) / 2;
            for i in 1..=m {
                o.push(i * e, if i % 2 == 1 { 1 } else { -1 });
            }
        }
    }
    o
}

/// Exact order of a finite classical group, as a factored polynomial in `q`.
pub fn group_order(g: &GroupDescriptor) -> FactoredOrder {
    g.order()
}

/// The order with its `p`-part removed: numeric when `q` is known, symbolic
/// (the `q^a` factor dropped) otherwise.
pub fn p_prime_part(g: &GroupDescriptor) -> Result<OrderValue> {
    let order = g.order();
    Ok(match g.q {
        Some(q) => OrderValue::Numeric(order.p_prime_value(q)?),
        None => OrderValue::Symbolic(order.p_prime()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderValue {
    Numeric(BigUint),
    Symbolic(FactoredOrder),
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Numeric(n) => write!(f, "{n}"),
            OrderValue::Symbolic(o) => write!(f, "{o}"),
        }
    }
}

/// Serializes a big integer as a JSON number when it fits in `u64`, as a
/// decimal string otherwise.
pub fn serialize_biguint<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

/// Kind of a Frobenius orbit of eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitKind {
    One,
    MinusOne,
    SelfDualOther,
    NonSelfDualPair,
}

/// One eigenvalue orbit `⟨λ⟩` with its multiplicity `ν_λ(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenOrbit {
    pub label: String,
    pub degree: u32,
    pub kind: OrbitKind,
    pub mult: u32,
    /// Resolves the `O^±` type of the resulting factor when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
}

impl EigenOrbit {
    pub fn new(label: &str, degree: u32, kind: OrbitKind, mult: u32) -> Self {
        EigenOrbit {
            label: label.into(),
            degree,
            kind,
            mult,
            sign: None,
        }
    }
}

/// A semisimple element of a classical group, given by its eigenvalue orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenData {
    pub ambient: GroupDescriptor,
    pub orbits: Vec<EigenOrbit>,
}

impl EigenData {
    /// Number of torus coordinates occupied by one eigenvalue of the orbit.
    fn footprint(&self, o: &EigenOrbit) -> Result<u32> {
        let family = self.ambient.family;
        match o.kind {
            OrbitKind::One | OrbitKind::MinusOne => {
                if o.degree != 1 {
                    return Err(Error::InvalidEigenData(format!("orbit {} of ±1 must have degree 1", o.label)));
                }
                Ok(1)
            }
            OrbitKind::SelfDualOther if family.is_orthosymplectic() => {
                if !o.degree.is_multiple_of(2) {
                    return Err(Error::InvalidEigenData(format!(
                        "self-dual orbit {} must have even degree",
                        o.label
                    )));
                }
                Ok(o.degree / 2)
            }
            _ => Ok(o.degree),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.ambient.validate()?;
        let mut labels = BTreeSet::new();
        let mut total = 0u64;
        let mut seen = BTreeSet::new();
        for o in &self.orbits {
            if !labels.insert(o.label.as_str()) {
                return Err(Error::InvalidEigenData(format!("duplicate orbit label {}", o.label)));
            }
            if o.degree == 0 || o.mult == 0 {
                return Err(Error::InvalidEigenData(format!("orbit {} has zero degree or multiplicity", o.label)));
            }
            if matches!(o.kind, OrbitKind::One | OrbitKind::MinusOne) && !seen.insert(o.kind) {
                return Err(Error::InvalidEigenData(format!("more than one orbit of kind {:?}", o.kind)));
            }
            total += u64::from(self.footprint(o)?) * u64::from(o.mult);
        }
        if total != u64::from(self.ambient.rank) {
            return Err(Error::InvalidEigenData(format!(
                "orbits fill {total} torus coordinates, the rank is {}",
                self.ambient.rank
            )));
        }
        Ok(())
    }
}

/// Family of a centralizer factor. Orthogonal factors carry their sign
/// separately, since it may be undetermined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorFamily {
    Sp,
    SOodd,
    O,
    GL,
    U,
}

/// Which part of the centralizer a factor belongs to: eigenvalue 1, −1, or
/// neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorGroup {
    One,
    MinusOne,
    Other,
}

/// `G_{(λ)}(s)`: a classical group of rank `rank` over `F_{q^field_degree}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CentralizerFactor {
    pub group: FactorGroup,
    pub family: FactorFamily,
    pub rank: u32,
    pub field_degree: u32,
    /// `O^±` type; `None` for an orthogonal factor means undetermined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    pub source: String,
}

impl CentralizerFactor {
    /// Rank over the algebraic closure.
    pub fn absolute_rank(&self) -> u32 {
        self.rank * self.field_degree
    }

    pub fn is_ambiguous(&self) -> bool {
        self.family == FactorFamily::O && self.sign.is_none() && self.rank > 0
    }

    /// Order of the factor; ambiguous orthogonal factors need `sign`.
    pub fn order(&self, sign: Option<Sign>) -> Result<FactoredOrder> {
        let family = match self.family {
            FactorFamily::Sp => Family::Sp,
            FactorFamily::SOodd => Family::SOodd,
            FactorFamily::GL => Family::GL,
            FactorFamily::U => Family::U,
            FactorFamily::O => match self.sign.or(sign) {
                Some(Sign::Plus) => Family::Oplus,
                Some(Sign::Minus) => Family::Ominus,
                None if self.rank == 0 => Family::Oplus,
                None => {
                    return Err(Error::InvalidEigenData(format!(
                        "sign of the orthogonal factor from {} is undetermined",
                        self.source
                    )))
                }
            },
        };
        let sign = match family {
            Family::Oplus => Some(Sign::Plus),
            Family::Ominus => Some(Sign::Minus),
            _ => None,
        };
        Ok(family_order(family, self.rank, self.field_degree, sign))
    }
}

impl fmt::Display for CentralizerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        match self.family {
            FactorFamily::Sp => write!(f, "Sp_{}", 2 * n)?,
            FactorFamily::SOodd => write!(f, "SO_{}", 2 * n + 1)?,
            FactorFamily::O => match self.sign {
                Some(s) => write!(f, "O{s}_{}", 2 * n)?,
                None => write!(f, "O±_{}", 2 * n)?,
            },
            FactorFamily::GL => write!(f, "GL_{n}")?,
            FactorFamily::U => write!(f, "U_{n}")?,
        }
        if self.field_degree != 1 {
            write!(f, "(q^{})", self.field_degree)?;
        }
        Ok(())
    }
}

/// `C_G(s)` as a product of factors, one per eigenvalue orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerDecomposition {
    pub ambient: GroupDescriptor,
    pub factors: Vec<CentralizerFactor>,
}

impl CentralizerDecomposition {
    pub fn group(&self, g: FactorGroup) -> impl Iterator<Item = &CentralizerFactor> {
        self.factors.iter().filter(move |f| f.group == g)
    }

    /// Sum of absolute ranks; equals the ambient rank.
    pub fn total_rank(&self) -> u32 {
        self.factors.iter().map(CentralizerFactor::absolute_rank).sum()
    }

    pub fn ambiguous_count(&self) -> usize {
        self.factors.iter().filter(|f| f.is_ambiguous()).count()
    }

    /// Order of the centralizer with the ambiguous `O^±` signs fixed in
    /// order of appearance.
    pub fn order(&self, signs: &[Sign]) -> Result<FactoredOrder> {
        let mut it = signs.iter();
        let mut out = FactoredOrder::one();
        for f in &self.factors {
            let s = if f.is_ambiguous() {
                Some(*it.next().ok_or_else(|| Error::InvalidInput("too few signs".into()))?)
            } else {
                None
            };
            out = out.mul(&f.order(s)?);
        }
        Ok(out)
    }
}

/// Splits `C_G(s)` into quasi-simple factors following the eigenvalue orbits.
pub fn centralizer_decomposition(s: &EigenData) -> Result<CentralizerDecomposition> {
    s.validate()?;
    let family = s.ambient.family;
    let mut factors = Vec::new();
    let factor = |group, family, rank, field_degree, sign, source: &str| CentralizerFactor {
        group,
        family,
        rank,
        field_degree,
        sign,
        source: source.to_string(),
    };
    // SO_{2m+1} always keeps the odd orthogonal factor of eigenvalue 1.
    if family == Family::SOodd && !s.orbits.iter().any(|o| o.kind == OrbitKind::One) {
        factors.push(factor(FactorGroup::One, FactorFamily::SOodd, 0, 1, None, "1"));
    }
    for o in &s.orbits {
        let nu = o.mult;
        let f = match (family, o.kind) {
            (Family::GL, kind) => {
                let group = match kind {
                    OrbitKind::One => FactorGroup::One,
                    OrbitKind::MinusOne => FactorGroup::MinusOne,
                    _ => FactorGroup::Other,
                };
                factor(group, FactorFamily::GL, nu, o.degree, None, &o.label)
            }
            (Family::U, OrbitKind::One) => factor(FactorGroup::One, FactorFamily::U, nu, 1, None, &o.label),
            (Family::U, OrbitKind::MinusOne) => factor(FactorGroup::MinusOne, FactorFamily::U, nu, 1, None, &o.label),
            (Family::U, OrbitKind::SelfDualOther) => {
                factor(FactorGroup::Other, FactorFamily::U, nu, o.degree, None, &o.label)
            }
            (Family::U, OrbitKind::NonSelfDualPair) => {
                factor(FactorGroup::Other, FactorFamily::GL, nu, o.degree, None, &o.label)
            }
            (Family::Sp, OrbitKind::One) => factor(FactorGroup::One, FactorFamily::Sp, nu, 1, None, &o.label),
            (Family::Sp, OrbitKind::MinusOne) => factor(FactorGroup::MinusOne, FactorFamily::Sp, nu, 1, None, &o.label),
            (Family::SOodd, OrbitKind::One) => factor(FactorGroup::One, FactorFamily::SOodd, nu, 1, None, &o.label),
            (Family::SOodd, OrbitKind::MinusOne) => {
                factor(FactorGroup::MinusOne, FactorFamily::O, nu, 1, o.sign, &o.label)
            }
            (Family::Oplus | Family::Ominus, OrbitKind::One) => {
                factor(FactorGroup::One, FactorFamily::O, nu, 1, o.sign, &o.label)
            }
            (Family::Oplus | Family::Ominus, OrbitKind::MinusOne) => {
                factor(FactorGroup::MinusOne, FactorFamily::O, nu, 1, o.sign, &o.label)
            }
            (_, OrbitKind::SelfDualOther) => {
                factor(FactorGroup::Other, FactorFamily::U, nu, o.degree / 2, None, &o.label)
            }
            (_, OrbitKind::NonSelfDualPair) => {
                factor(FactorGroup::Other, FactorFamily::GL, nu, o.degree, None, &o.label)
            }
        };
        factors.push(f);
    }
    Ok(CentralizerDecomposition {
        ambient: s.ambient,
        factors,
    })
}

/// One value of the dimension formula, for one choice of the undetermined
/// `O^±` signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimValue {
    /// `(orbit label, sign)` for each ambiguous orthogonal factor.
    pub signs: Vec<(String, Sign)>,
    /// The index `|G|_{p'} / |C(s)|_{p'}` times `dim_u`, for generic `q`.
    pub generic: String,
    #[serde(serialize_with = "serialize_opt_biguint", skip_serializing_if = "Option::is_none")]
    pub value: Option<BigUint>,
}

fn serialize_opt_biguint<S: Serializer>(n: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n {
        Some(n) => serialize_biguint(n, s),
        None => s.serialize_none(),
    }
}

/// `dim π = |G|_{p'} / |C(s)|_{p'} · dim π^u`, one value per assignment of the
/// undetermined orthogonal signs in the centralizer.
///
/// `s` describes the semisimple element in the dual group, which has the
/// same rank as `g`. When `q` is numeric the index must be an integer.
pub fn dim_from_unipotent(g: &GroupDescriptor, s: &EigenData, dim_u: u64) -> Result<Vec<DimValue>> {
    g.validate()?;
    if dim_u == 0 {
        return Err(Error::InvalidInput("dim_u must be positive".into()));
    }
    if s.ambient.rank != g.rank {
        return Err(Error::InvalidEigenData(format!(
            "eigen-data has rank {}, the group has rank {}",
            s.ambient.rank, g.rank
        )));
    }
    let decomposition = centralizer_decomposition(s)?;
    let q = g.q.or(s.ambient.q);
    let ambiguous: Vec<&CentralizerFactor> = decomposition.factors.iter().filter(|f| f.is_ambiguous()).collect();
    let g_order = g.order();
    let dim_u_big = BigUint::from(dim_u);
    let mut out = Vec::new();
    for mask in 0..(1u32 << ambiguous.len()) {
        let signs: Vec<Sign> = (0..ambiguous.len())
            .map(|i| if mask >> i & 1 == 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        let c_order = decomposition.order(&signs)?;
        let ratio = g_order.p_prime().cyclotomic().div(&c_order.p_prime().cyclotomic());
        let mut generic = ratio.clone();
        generic.coefficient *= BigRational::from_integer(dim_u.into());
        let label: Vec<(String, Sign)> = ambiguous.iter().zip(&signs).map(|(f, s)| (f.source.clone(), *s)).collect();
        if !ratio.is_polynomial() {
            return Err(Error::NonDivisible(format!("|C(s)| does not divide |G| for generic q (signs {label:?})")));
        }
        let value = match q {
            Some(q) => {
                let num = g_order.p_prime_value(q)?;
                let den = c_order.p_prime_value(q)?;
                let (quot, rem) = num.div_rem(&den);
                if !rem.is_zero() {
                    return Err(Error::NonDivisible(format!(
                        "|C(s)|_p' = {den} does not divide |G|_p' = {num} at q = {q}"
                    )));
                }
                Some(quot * &dim_u_big)
            }
            None => None,
        };
        out.push(DimValue {
            signs: label,
            generic: generic.to_string(),
            value,
        });
    }
    Ok(out)
}
