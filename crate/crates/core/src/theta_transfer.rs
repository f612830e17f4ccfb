//! Inertial classes of `Sp_{2n}(F)` and `O(V_m)` and their transfer under
//! the theta correspondence.
//!
//! Supercuspidal representations are opaque labels. A class
//! `[G_{n_0} × GL_{n_1} × ⋯ × GL_{n_ℓ}, π ⊗ τ_1 ⊗ ⋯ ⊗ τ_ℓ]` records the base
//! label and, per `GL` factor, its size, label, quadratic twist and formal
//! unramified exponent `s` of `ν_F^s`. Unramified exponents are part of a
//! supercuspidal support but not of an inertial class.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::hecke::{rational_str, HeckeAlgebra, HeckeParams, SimpleParam};
use crate::weyl::RootDatum;
use crate::{Error, Result, Sign};

/// `1` or the quadratic character `η_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quad {
    #[serde(rename = "1")]
    Trivial,
    #[serde(rename = "eta")]
    Eta,
}

impl Quad {
    /// Multiplication in `ℤ/2`.
    pub fn times(self, other: Quad) -> Quad {
        if self == other {
            Quad::Trivial
        } else {
            Quad::Eta
        }
    }
}

/// A character `η^a ν_F^s` of `F^×`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterTwist {
    #[serde(with = "rational_str")]
    pub nr_exponent: BigRational,
    pub quad: Quad,
}

impl CharacterTwist {
    pub fn trivial() -> Self {
        CharacterTwist {
            nr_exponent: BigRational::zero(),
            quad: Quad::Trivial,
        }
    }

    pub fn compose(&self, other: &CharacterTwist) -> CharacterTwist {
        CharacterTwist {
            nr_exponent: &self.nr_exponent + &other.nr_exponent,
            quad: self.quad.times(other.quad),
        }
    }
}

/// The cuspidal `GL_size(F)` representation `label`, twisted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GLFactor {
    pub size: u32,
    pub label: String,
    pub quad: Quad,
    #[serde(with = "rational_str", default = "BigRational::zero")]
    pub nr_exp: BigRational,
}

impl GLFactor {
    pub fn new(size: u32, label: &str) -> Self {
        GLFactor {
            size,
            label: label.into(),
            quad: Quad::Trivial,
            nr_exp: BigRational::zero(),
        }
    }

    pub fn twist(&self) -> CharacterTwist {
        CharacterTwist {
            nr_exponent: self.nr_exp.clone(),
            quad: self.quad,
        }
    }

    pub fn twisted(&self, t: &CharacterTwist) -> GLFactor {
        let c = self.twist().compose(t);
        GLFactor {
            size: self.size,
            label: self.label.clone(),
            quad: c.quad,
            nr_exp: c.nr_exponent,
        }
    }

    /// Inertial key: the factor up to unramified twist.
    fn key(&self) -> (u32, String, Quad) {
        (self.size, self.label.clone(), self.quad)
    }
}

/// Which member of the dual pair a class lives on. Orthogonal Witt towers
/// are identified by `ε` and a discriminant label; `η_m` is trivial exactly
/// when the discriminant is `"1"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "side")]
pub enum Side {
    Sp,
    O { eps: Sign, disc: String },
}

impl Side {
    pub fn orthogonal(eps: Sign, disc: &str) -> Side {
        Side::O {
            eps,
            disc: disc.into(),
        }
    }

    /// Key of the Witt tower in a first-occurrence table.
    pub fn tower(&self) -> String {
        match self {
            Side::Sp => "Sp".into(),
            Side::O { eps, disc } => format!("O{eps}/{disc}"),
        }
    }

    fn eta_m(&self) -> Option<Quad> {
        match self {
            Side::Sp => None,
            Side::O { disc, .. } => Some(if disc == "1" { Quad::Trivial } else { Quad::Eta }),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Base {
    pub size: u32,
    pub label: String,
}

/// A supercuspidal support, or (when every `nr_exp` is 0 and the factors are
/// sorted) an inertial class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InertialClass {
    #[serde(flatten)]
    pub side: Side,
    pub total: u32,
    pub base: Base,
    #[serde(default)]
    pub factors: Vec<GLFactor>,
}

impl InertialClass {
    pub fn new(side: Side, base_size: u32, base_label: &str, factors: Vec<GLFactor>) -> Result<Self> {
        let total = base_size + factors.iter().map(|f| f.size).sum::<u32>();
        let c = InertialClass {
            side,
            total,
            base: Base {
                size: base_size,
                label: base_label.into(),
            },
            factors,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.iter().any(|f| f.size == 0) {
            return Err(Error::InvalidInput("GL factors must have size at least 1".into()));
        }
        let sum = self.base.size + self.factors.iter().map(|f| f.size).sum::<u32>();
        if sum != self.total {
            return Err(Error::SizeMismatch(format!(
                "base {} plus GL sizes is {sum}, total is {}",
                self.base.size, self.total
            )));
        }
        Ok(())
    }

    /// Forgets unramified exponents and sorts the factors.
    pub fn normalized(&self) -> InertialClass {
        let mut factors: Vec<GLFactor> = self
            .factors
            .iter()
            .map(|f| GLFactor {
                nr_exp: BigRational::zero(),
                ..f.clone()
            })
            .collect();
        factors.sort_by_key(|a| a.key());
        InertialClass {
            factors,
            ..self.clone()
        }
    }

    /// Equality as inertial classes.
    pub fn inertially_equal(&self, other: &InertialClass) -> bool {
        self.normalized() == other.normalized()
    }

    /// Twists each GL factor by an unramified character `ν_F^{s_i}`.
    pub fn twist_unramified(&self, exponents: &[BigRational]) -> Result<InertialClass> {
        if exponents.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "{} exponents for {} GL factors",
                exponents.len(),
                self.factors.len()
            )));
        }
        let factors = self
            .factors
            .iter()
            .zip(exponents)
            .map(|(f, s)| {
                f.twisted(&CharacterTwist {
                    nr_exponent: s.clone(),
                    quad: Quad::Trivial,
                })
            })
            .collect();
        Ok(InertialClass {
            factors,
            ..self.clone()
        })
    }
}

/// First occurrence of the supercuspidal `label` in a Witt tower: `θ^0` lives
/// on the member of size `r_min` and is the supercuspidal `image`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FirstOccurrence {
    pub label: String,
    pub tower: String,
    pub r_min: u32,
    pub image: String,
}

/// First-occurrence data keyed by `(label, tower)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<FirstOccurrence>", into = "Vec<FirstOccurrence>")]
pub struct FirstOccurrenceTable {
    entries: BTreeMap<(String, String), FirstOccurrence>,
}

impl From<Vec<FirstOccurrence>> for FirstOccurrenceTable {
    fn from(v: Vec<FirstOccurrence>) -> Self {
        let mut t = FirstOccurrenceTable::default();
        for e in v {
            t.insert(e);
        }
        t
    }
}

impl From<FirstOccurrenceTable> for Vec<FirstOccurrence> {
    fn from(t: FirstOccurrenceTable) -> Self {
        t.entries.into_values().collect()
    }
}

impl FirstOccurrenceTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: FirstOccurrence) {
        self.entries.insert((e.label.clone(), e.tower.clone()), e);
    }

    pub fn with(mut self, label: &str, tower: &Side, r_min: u32, image: &str) -> Self {
        self.insert(FirstOccurrence {
            label: label.into(),
            tower: tower.tower(),
            r_min,
            image: image.into(),
        });
        self
    }

    pub fn get(&self, label: &str, tower: &str) -> Result<&FirstOccurrence> {
        self.entries
            .get(&(label.to_string(), tower.to_string()))
            .ok_or_else(|| Error::MissingFirstOccurrence {
                label: label.into(),
                tower: tower.into(),
            })
    }

    pub fn iter(&self) -> impl Iterator<Item = &FirstOccurrence> {
        self.entries.values()
    }
}

/// Direction of a transfer: from the symplectic side to the orthogonal side
/// or back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// The result of [`support_transfer`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub direction: Direction,
    pub d0: i64,
    pub chain_length: u32,
    pub support: InertialClass,
}

/// Supercuspidal support of the theta lift of a representation with support
/// `source` to the member of size `target_size` of the tower `target`.
///
/// The base goes to its first occurrence, each `GL` factor is twisted by
/// `η_m^{∓1}`, and a chain of `t` characters of `GL_1` with exponents
/// `(d_0−1)/2, (d_0−3)/2, …` is appended, `t` being fixed by the sizes.
pub fn support_transfer(
    source: &InertialClass,
    target: &Side,
    target_size: u32,
    fo: &FirstOccurrenceTable,
) -> Result<Transfer> {
    source.validate()?;
    let (direction, eta) = match (&source.side, target) {
        (Side::Sp, Side::O { .. }) => (Direction::Up, target.eta_m().expect("orthogonal")),
        (Side::O { .. }, Side::Sp) => (Direction::Down, source.side.eta_m().expect("orthogonal")),
        _ => {
            return Err(Error::InvalidInput(format!(
                "theta transfer goes between Sp and O, not {} to {target}",
                source.side
            )))
        }
    };
    let first = fo.get(&source.base.label, &target.tower())?;
    let image_size = first.r_min;
    let gl_total: u32 = source.factors.iter().map(|f| f.size).sum();
    let t = i64::from(target_size) - i64::from(image_size) - i64::from(gl_total);
    if t < 0 {
        return Err(Error::NegativeChain(t));
    }
    // d_0 = n_0 - m_0 + 1 with n_0 the symplectic and m_0 the orthogonal base.
    let (n0, m0) = match direction {
        Direction::Up => (source.base.size, image_size),
        Direction::Down => (image_size, source.base.size),
    };
    let d0 = i64::from(n0) - i64::from(m0) + 1;
    let factor_twist = CharacterTwist {
        nr_exponent: BigRational::zero(),
        quad: eta,
    };
    let chain_quad = match direction {
        Direction::Up => Quad::Trivial,
        Direction::Down => eta,
    };
    let mut factors: Vec<GLFactor> = source.factors.iter().map(|f| f.twisted(&factor_twist)).collect();
    let start = BigRational::new((d0 - 1).into(), 2.into());
    for j in 0..t {
        factors.push(GLFactor {
            size: 1,
            label: "triv".into(),
            quad: chain_quad,
            nr_exp: &start - BigRational::from_integer(j.into()),
        });
    }
    let support = InertialClass {
        side: target.clone(),
        total: target_size,
        base: Base {
            size: image_size,
            label: first.image.clone(),
        },
        factors,
    };
    support.validate()?;
    Ok(Transfer {
        direction,
        d0,
        chain_length: t as u32,
        support,
    })
}

/// `θ(𝔰)`: the inertial class of the theta lift.
pub fn theta_inertial(
    source: &InertialClass,
    target: &Side,
    target_size: u32,
    fo: &FirstOccurrenceTable,
) -> Result<InertialClass> {
    Ok(support_transfer(source, target, target_size, fo)?.support.normalized())
}

/// Caller-supplied reducibility data for a cuspidal `GL` label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reducibility {
    SelfdualWithParameter,
    NonSelfdual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentType {
    /// `W(B_m)`, on the standard lattice `ℤ^m`.
    B,
    /// The symmetric group `S_m`, on the lattice of `GL_m`.
    A,
}

/// One group of inertially equivalent `GL` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComponent {
    pub size: u32,
    pub label: String,
    pub quad: Quad,
    pub multiplicity: u32,
    #[serde(rename = "type")]
    pub ty: ComponentType,
    /// Whether an R-group contribution is left to the caller.
    pub caller_decides: bool,
}

/// `W^𝔰 = W(Σ^𝔰) ⋊ R^𝔰` as a product of type `B` and type `A` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockShape {
    pub rank: u32,
    pub components: Vec<BlockComponent>,
}

impl BlockShape {
    /// Root datum of the block: the direct sum of the components.
    pub fn datum(&self) -> RootDatum {
        self.components.iter().fold(RootDatum::torus(0), |acc, c| {
            let m = c.multiplicity as usize;
            let d = match c.ty {
                ComponentType::B => RootDatum::type_b_standard(m),
                ComponentType::A => RootDatum::gl(m),
            };
            acc.direct_sum(&d)
        })
    }

    /// Component types and multiplicities, without labels.
    pub fn skeleton(&self) -> Vec<(ComponentType, u32)> {
        let mut v: Vec<(ComponentType, u32)> = self.components.iter().map(|c| (c.ty, c.multiplicity)).collect();
        v.sort_by_key(|&(t, m)| (t == ComponentType::A, m));
        v
    }
}

/// Groups the `GL` factors of `s` by inertial class.
pub fn block_weyl_shape(s: &InertialClass, reducibility: &BTreeMap<String, Reducibility>) -> Result<BlockShape> {
    let mut groups: BTreeMap<(u32, String, Quad), u32> = BTreeMap::new();
    for f in &s.factors {
        *groups.entry(f.key()).or_insert(0) += 1;
    }
    let mut components = Vec::new();
    for ((size, label, quad), multiplicity) in groups {
        let r = reducibility
            .get(&label)
            .ok_or_else(|| Error::UnclassifiedLabel(label.clone()))?;
        let (ty, caller_decides) = match r {
            Reducibility::SelfdualWithParameter => (ComponentType::B, false),
            Reducibility::NonSelfdual => (ComponentType::A, true),
        };
        components.push(BlockComponent {
            size,
            label,
            quad,
            multiplicity,
            ty,
            caller_decides,
        });
    }
    Ok(BlockShape {
        rank: components.iter().map(|c| c.multiplicity).sum(),
        components,
    })
}

/// Hecke parameters of one block component: `λ` on the reflections
/// `e_i − e_{i+1}`, and `λ`, `λ*` on the reflection in `e_m` for type `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentParams {
    pub var: usize,
    #[serde(with = "rational_str")]
    pub lambda_a: BigRational,
    #[serde(with = "rational_str")]
    pub lambda: BigRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<i64>,
}

impl ComponentParams {
    pub fn uniform(var: usize) -> Self {
        ComponentParams {
            var,
            lambda_a: BigRational::from_integer(1.into()),
            lambda: BigRational::from_integer(1.into()),
            lambda_star: None,
        }
    }
}

/// The affine Hecke algebra of the block with trivial cocycle.
pub fn instantiate_block_hecke(shape: &BlockShape, params: &[ComponentParams]) -> Result<HeckeAlgebra> {
    if params.len() != shape.components.len() {
        return Err(Error::InvalidParams(format!(
            "{} parameter sets for {} components",
            params.len(),
            shape.components.len()
        )));
    }
    let mut simple = Vec::new();
    for (c, p) in shape.components.iter().zip(params) {
        let m = c.multiplicity as usize;
        for _ in 0..m.saturating_sub(1) {
            simple.push(SimpleParam {
                var: p.var,
                lambda: p.lambda_a.clone(),
                lambda_star: None,
            });
        }
        if c.ty == ComponentType::B && m > 0 {
            simple.push(SimpleParam {
                var: p.var,
                lambda: p.lambda.clone(),
                lambda_star: p.lambda_star.map(|s| BigRational::from_integer(s.into())),
            });
        }
    }
    Ok(HeckeAlgebra::new(HeckeParams::new(shape.datum(), simple)?))
}

/// A-priori bound on a first occurrence and the persistence range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceBounds {
    pub label: String,
    pub tower: String,
    pub bound: u32,
    pub r_min: u32,
    /// The lift is nonzero on every member of size at least this.
    pub nonzero_from: u32,
    pub image: String,
    pub image_kind: String,
}

/// Checks a recorded first occurrence against the ambient size `bound`.
pub fn occurrence_bounds(fo: &FirstOccurrence, bound: u32) -> Result<OccurrenceBounds> {
    if fo.r_min > bound {
        return Err(Error::OccurrenceBound { r_min: fo.r_min, bound });
    }
    Ok(OccurrenceBounds {
        label: fo.label.clone(),
        tower: fo.tower.clone(),
        bound,
        r_min: fo.r_min,
        nonzero_from: fo.r_min,
        image: fo.image.clone(),
        image_kind: "irreducible supercuspidal".into(),
    })
}
