//! Sparse Laurent polynomials with rational coefficients.
//!
//! The indeterminates are `v_0, v_1, …` with `v_i² = q_i`. Exponents are
//! stored as integer powers of `v_i`, which is the doubled encoding of the
//! half-integer powers of `q_i` that appear in the affine Hecke relations.
//! Exponent vectors never carry trailing zeros, so polynomials in different
//! numbers of variables compare and combine directly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exponent vector in powers of the `v_i`.
pub type Exponents = Vec<i32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exponents(a: &[i32], b: &[i32]) -> Exponents {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect(),
    )
}

/// Parses `p` or `p/q` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A Laurent polynomial in `v_0, v_1, …` over `ℚ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentCoeff {
    terms: BTreeMap<Exponents, BigRational>,
}

impl LaurentCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c · v^e`.
    pub fn monomial(c: BigRational, e: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(e), c);
        }
        Self { terms }
    }

    /// `v_var^power`.
    pub fn v_power(var: usize, power: i32) -> Self {
        let mut e = vec![0; var + 1];
        e[var] = power;
        Self::monomial(BigRational::one(), e)
    }

    /// `q_var^exponent`; the exponent must be a half-integer.
    pub fn q_power(var: usize, exponent: &BigRational) -> Result<Self> {
        let doubled = exponent * BigRational::from_integer(2.into());
        if !doubled.is_integer() {
            return Err(Error::InvalidParams(format!(
                "exponent {} of q{var} is not a half-integer",
                format_rational(exponent)
            )));
        }
        let p: i32 = doubled
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidParams("exponent out of range".into()))?;
        Ok(Self::v_power(var, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(One::is_one)
    }

    /// A nonzero monomial: the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Substitutes `v_i ↦ values[i]` for the listed variables; variables
    /// without a value are left symbolic.
    pub fn substitute(&self, values: &BTreeMap<usize, BigRational>) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut rest = e.clone();
            for (i, p) in e.iter().enumerate() {
                if let Some(v) = values.get(&i) {
                    if v.is_zero() && *p < 0 {
                        return Err(Error::InvalidInput(format!("v{i} = 0 in a negative power")));
                    }
                    c *= num_traits::pow::Pow::pow(v, *p);
                    rest[i] = 0;
                }
            }
            out.add_term(rest, c);
        }
        Ok(out)
    }

    /// The specialization `v_i ↦ 1` for every variable.
    pub fn at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Largest variable index appearing, plus one.
    pub fn variable_count(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

impl Add for &LaurentCoeff {
    type Output = LaurentCoeff;

    fn add(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentCoeff {
    type Output = LaurentCoeff;

    fn add(mut self, rhs: LaurentCoeff) -> LaurentCoeff {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentCoeff> for LaurentCoeff {
    fn add_assign(&mut self, rhs: &LaurentCoeff) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentCoeff {
    type Output = LaurentCoeff;

    fn neg(self) -> LaurentCoeff {
        LaurentCoeff {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentCoeff {
    type Output = LaurentCoeff;

    fn neg(self) -> LaurentCoeff {
        -&self
    }
}

impl Sub for &LaurentCoeff {
    type Output = LaurentCoeff;

    fn sub(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        self + &(-rhs)
    }
}

impl Sub for LaurentCoeff {
    type Output = LaurentCoeff;

    fn sub(self, rhs: LaurentCoeff) -> LaurentCoeff {
        &self - &rhs
    }
}

impl Mul for &LaurentCoeff {
    type Output = LaurentCoeff;

    fn mul(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        let mut out = LaurentCoeff::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exponents(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentCoeff {
    type Output = LaurentCoeff;

    fn mul(self, rhs: LaurentCoeff) -> LaurentCoeff {
        &self * &rhs
    }
}

/// Written in `q_i` with half-integer exponents, e.g. `q0^(3/2) - q1 + 1/2`.
impl fmt::Display for LaurentCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<i32>(), b.iter().sum::<i32>());
            db.cmp(&da).then(b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let is_const = e.is_empty();
            if is_const || !abs.is_one() {
                write!(f, "{}", format_rational(&abs))?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            let mut first = true;
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if p == 2 {
                    write!(f, "q{i}")?;
                } else if p % 2 == 0 {
                    write!(f, "q{i}^{}", p / 2)?;
                } else if p < 0 {
                    write!(f, "q{i}^(-{}/2)", -p)?;
                } else {
                    write!(f, "q{i}^({p}/2)")?;
                }
            }
        }
        Ok(())
    }
}

/// Serialized as a list of `[exponents, "p/q"]` pairs in exponent order.
impl Serialize for LaurentCoeff {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<(&Exponents, String)> = self.terms.iter().map(|(e, c)| (e, format_rational(c))).collect();
        list.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentCoeff {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let list: Vec<(Exponents, String)> = Vec::deserialize(deserializer)?;
        let mut out = LaurentCoeff::zero();
        for (e, c) in list {
            out.add_term(e, parse_rational(&c).map_err(serde::de::Error::custom)?);
        }
        Ok(out)
    }
}
