//! The unipotent Howe correspondence for `(Sp_{2n}(F_q), O^ε_{2n'}(F_q))` on
//! the level of Weyl-group labels.
//!
//! Unipotent representations in the Harish-Chandra series of the cuspidal
//! `τ_k` of `Sp_{2k(k+1)}` are labelled by bipartitions of `N_k = n − k(k+1)`;
//! on the orthogonal side the cuspidal `τ_{θ(k)}` leaves `N'_k = n' − θ(k)²`.
//! The correspondence between the two label sets is the multiplicity
//! function [`omega_multiplicity`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical::{
    centralizer_decomposition, CentralizerDecomposition, CentralizerFactor, EigenData, FactorFamily, FactorGroup,
    Family,
};
use crate::partitions::{enumerate_bipartitions, enumerate_partitions, Bipartition, Partition};
use crate::{Error, Result, Sign};

/// Which of the two cuspidal unipotent representations of an even
/// orthogonal group a tower starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CuspidalLabel {
    I,
    II,
}

/// `θ(τ_k)` for the tower of `O^ε`: `τ_k^{II}` if `ε = sign((−1)^k)`,
/// else `τ_{k+1}^{I}`.
pub fn theta_tower(k: u32, eps: Sign) -> (u32, CuspidalLabel) {
    if eps == Sign::of_power(k) {
        (k, CuspidalLabel::II)
    } else {
        (k + 1, CuspidalLabel::I)
    }
}

/// The two shapes of the multiplicity function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum OmegaCase {
    /// `O^+` with `k` even or `O^-` with `k` odd.
    Case1,
    /// `O^+` with `k` odd or `O^-` with `k` even.
    Case2,
}

impl OmegaCase {
    pub fn of(k: u32, eps: Sign) -> OmegaCase {
        if eps == Sign::of_power(k) {
            OmegaCase::Case1
        } else {
            OmegaCase::Case2
        }
    }
}

impl From<OmegaCase> for u8 {
    fn from(c: OmegaCase) -> u8 {
        match c {
            OmegaCase::Case1 => 1,
            OmegaCase::Case2 => 2,
        }
    }
}

impl TryFrom<u8> for OmegaCase {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(OmegaCase::Case1),
            2 => Ok(OmegaCase::Case2),
            other => Err(Error::Parse(format!("case must be 1 or 2, got {other}"))),
        }
    }
}

impl fmt::Display for OmegaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// Levels of a pair of Harish-Chandra series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Levels {
    pub theta_k: u32,
    pub label: CuspidalLabel,
    pub n_k: u32,
    pub n_prime_k: u32,
    pub case: OmegaCase,
}

/// `N_k = n − k(k+1)`, `N'_k = n' − θ(k)²` and the multiplicity case.
pub fn levels(n: u32, n_prime: u32, k: u32, eps: Sign) -> Result<Levels> {
    let (theta_k, label) = theta_tower(k, eps);
    let base = k * (k + 1);
    let base_prime = theta_k * theta_k;
    if n < base {
        return Err(Error::NegativeLevel(format!("n = {n} < k(k+1) = {base}")));
    }
    if n_prime < base_prime {
        return Err(Error::NegativeLevel(format!("n' = {n_prime} < θ(k)² = {base_prime}")));
    }
    Ok(Levels {
        theta_k,
        label,
        n_k: n - base,
        n_prime_k: n_prime - base_prime,
        case: OmegaCase::of(k, eps),
    })
}

/// Multiplicity of `χ_up ⊗ χ_down` in `Ω_{N_k, N'_k}`, with `N_k = |up|` and
/// `N'_k = |down|`.
///
/// In case 1 the multiplicity counts the partitions `ζ` interleaving both
/// second components; in case 2 it is 0 or 1.
pub fn omega_multiplicity(up: &Bipartition, down: &Bipartition, case: OmegaCase) -> u64 {
    match case {
        OmegaCase::Case1 => {
            if up.first != down.first {
                return 0;
            }
            common_interleavers(&up.second, &down.second)
        }
        OmegaCase::Case2 => u64::from(down.first.precedes(&up.first) && up.second.precedes(&down.second)),
    }
}

/// `#{ζ : ζ ⪯ a and ζ ⪯ b}`: each part `ζ_i` ranges independently over
/// `[max(a_{i+1}, b_{i+1}), min(a_i, b_i)]`.
fn common_interleavers(a: &Partition, b: &Partition) -> u64 {
    let len = a.len().max(b.len());
    let mut count = 1u64;
    for i in 0..len {
        let hi = a.part(i).min(b.part(i));
        let lo = a.part(i + 1).max(b.part(i + 1));
        if hi < lo {
            return 0;
        }
        count *= u64::from(hi - lo + 1);
    }
    count
}

/// A fixed pair of levels `(N_k, N'_k)` and a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaInstance {
    pub n_k: u32,
    pub n_prime_k: u32,
    pub case: OmegaCase,
}

impl OmegaInstance {
    pub fn new(n_k: u32, n_prime_k: u32, case: OmegaCase) -> Self {
        OmegaInstance { n_k, n_prime_k, case }
    }

    /// [`omega_multiplicity`] with the sizes checked against the levels.
    pub fn multiplicity(&self, up: &Bipartition, down: &Bipartition) -> Result<u64> {
        if up.size() != self.n_k {
            return Err(Error::SizeMismatch(format!("|{up}| = {} but N_k = {}", up.size(), self.n_k)));
        }
        if down.size() != self.n_prime_k {
            return Err(Error::SizeMismatch(format!(
                "|{down}| = {} but N'_k = {}",
                down.size(),
                self.n_prime_k
            )));
        }
        Ok(omega_multiplicity(up, down, self.case))
    }

    /// Expands the defining triple sum term by term, without the closed
    /// multiplicity formula. Keys are `(up, down)`.
    pub fn expand(&self) -> BTreeMap<(Bipartition, Bipartition), u64> {
        let (n, n2) = (self.n_k, self.n_prime_k);
        let mut out = BTreeMap::new();
        for r in 0..=n.min(n2) {
            for pair in enumerate_bipartitions(r) {
                match self.case {
                    OmegaCase::Case1 => {
                        let (xi, zeta) = (&pair.first, &pair.second);
                        let (Some(a), Some(b)) = (n.checked_sub(xi.size()), n2.checked_sub(xi.size())) else {
                            continue;
                        };
                        for eta in enumerate_partitions(a) {
                            if !zeta.precedes(&eta) {
                                continue;
                            }
                            for eta2 in enumerate_partitions(b) {
                                if zeta.precedes(&eta2) {
                                    let key = (
                                        Bipartition::new(xi.clone(), eta.clone()),
                                        Bipartition::new(xi.clone(), eta2),
                                    );
                                    *out.entry(key).or_insert(0) += 1;
                                }
                            }
                        }
                    }
                    OmegaCase::Case2 => {
                        let (xi, eta) = (&pair.first, &pair.second);
                        let (Some(a), Some(b)) = (n.checked_sub(eta.size()), n2.checked_sub(xi.size())) else {
                            continue;
                        };
                        for xi2 in enumerate_partitions(a) {
                            if !xi.precedes(&xi2) {
                                continue;
                            }
                            for eta2 in enumerate_partitions(b) {
                                if eta.precedes(&eta2) {
                                    let key = (
                                        Bipartition::new(xi2.clone(), eta.clone()),
                                        Bipartition::new(xi.clone(), eta2),
                                    );
                                    *out.entry(key).or_insert(0) += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// `Θ_{ξ',η'}`: the labels of size `N_k` occurring with `down`, in the order
/// of [`enumerate_bipartitions`].
pub fn theta_set(down: &Bipartition, n_k: u32, case: OmegaCase) -> Result<Vec<Bipartition>> {
    if n_k < down.size() {
        return Err(Error::SizeMismatch(format!("N_k = {n_k} is smaller than |{down}| = {}", down.size())));
    }
    Ok(enumerate_bipartitions(n_k)
        .into_iter()
        .filter(|up| omega_multiplicity(up, down, case) > 0)
        .collect())
}

/// Closed-form maximal and minimal members of `Θ_{ξ',η'}` in case 1, with the
/// interleaving partitions `ζ` certifying membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremal {
    pub max: Bipartition,
    pub min: Bipartition,
    pub max_witness: Partition,
    pub min_witness: Partition,
}

/// `(ξ', (N_k − N'_k + η'_1 + η'_2, η'_3, …))` and `(ξ', (N_k − N'_k) ∪ η')`.
pub fn extremal(down: &Bipartition, n_k: u32) -> Result<Extremal> {
    let n2 = down.size();
    if n_k < n2 {
        return Err(Error::SizeMismatch(format!("N_k = {n_k} is smaller than |{down}| = {n2}")));
    }
    let d = n_k - n2;
    let eta = &down.second;
    let mut max_parts = vec![d + eta.part(0) + eta.part(1)];
    max_parts.extend(eta.parts().iter().skip(2));
    let max_eta = Partition::new(max_parts).map_err(|e| Error::InvalidInput(format!("internal: {e}")))?;
    let min_eta = Partition::row(d).union(eta);
    let max_witness = Partition::new(eta.parts().iter().skip(1).copied().collect())
        .map_err(|e| Error::InvalidInput(format!("internal: {e}")))?;
    Ok(Extremal {
        max: Bipartition::new(down.first.clone(), max_eta),
        min: Bipartition::new(down.first.clone(), min_eta),
        max_witness,
        min_witness: eta.clone(),
    })
}

/// How a label `(ξ, η)` is turned into a partition of `N_k` for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparator {
    /// `ξ + η`, partwise.
    ComponentwiseSum,
    /// `ξ ∪ η`, as multisets of parts.
    MultisetUnion,
}

impl Comparator {
    pub const ALL: [Comparator; 2] = [Comparator::ComponentwiseSum, Comparator::MultisetUnion];

    pub fn apply(self, b: &Bipartition) -> Partition {
        match self {
            Comparator::ComponentwiseSum => b.first.sum(&b.second),
            Comparator::MultisetUnion => b.first.union(&b.second),
        }
    }
}

impl std::str::FromStr for Comparator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "componentwise-sum" | "sum" => Ok(Comparator::ComponentwiseSum),
            "multiset-union" | "union" => Ok(Comparator::MultisetUnion),
            other => Err(Error::Parse(format!("unknown comparator {other:?}"))),
        }
    }
}

/// Findings for one `down` label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalFinding {
    pub down: Bipartition,
    pub members: usize,
    pub max: Bipartition,
    pub min: Bipartition,
    pub max_member: bool,
    pub min_member: bool,
    /// Every member compares `≤` the closed-form maximum.
    pub max_greatest: bool,
    /// Every member compares `≥` the closed-form minimum.
    pub min_least: bool,
    /// Number of members that compare `≥` every member.
    pub greatest_count: usize,
    /// Number of members that compare `≤` every member.
    pub least_count: usize,
    /// A member not below the closed-form maximum, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_counterexample: Option<Bipartition>,
    /// A member not above the closed-form minimum, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_counterexample: Option<Bipartition>,
}

impl ExtremalFinding {
    pub fn max_unique(&self) -> bool {
        self.max_greatest && self.greatest_count == 1
    }

    pub fn min_unique(&self) -> bool {
        self.min_least && self.least_count == 1
    }
}

/// Brute-force certification of the closed-form extremal labels for every
/// `down` of size `N'_k`, in case 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub n_k: u32,
    pub n_prime_k: u32,
    pub comparator: Comparator,
    pub all_members: bool,
    pub all_max_greatest: bool,
    pub all_min_least: bool,
    pub all_unique: bool,
    pub findings: Vec<ExtremalFinding>,
}

pub fn validate_extremal(n_k: u32, n_prime_k: u32, comparator: Comparator) -> Result<ExtremalReport> {
    if n_prime_k > n_k {
        return Err(Error::SizeMismatch(format!("N'_k = {n_prime_k} exceeds N_k = {n_k}")));
    }
    let mut findings = Vec::new();
    for down in enumerate_bipartitions(n_prime_k) {
        let members = theta_set(&down, n_k, OmegaCase::Case1)?;
        let ext = extremal(&down, n_k)?;
        let shapes: Vec<Partition> = members.iter().map(|m| comparator.apply(m)).collect();
        let max_shape = comparator.apply(&ext.max);
        let min_shape = comparator.apply(&ext.min);
        let le = |a: &Partition, b: &Partition| a.dominance_le(b).expect("shapes have size N_k");
        let max_counterexample = members.iter().zip(&shapes).find(|(_, s)| !le(s, &max_shape)).map(|(m, _)| m.clone());
        let min_counterexample = members.iter().zip(&shapes).find(|(_, s)| !le(&min_shape, s)).map(|(m, _)| m.clone());
        let greatest_count = shapes.iter().filter(|a| shapes.iter().all(|b| le(b, a))).count();
        let least_count = shapes.iter().filter(|a| shapes.iter().all(|b| le(a, b))).count();
        findings.push(ExtremalFinding {
            members: members.len(),
            max_member: members.contains(&ext.max),
            min_member: members.contains(&ext.min),
            max_greatest: max_counterexample.is_none(),
            min_least: min_counterexample.is_none(),
            greatest_count,
            least_count,
            max_counterexample,
            min_counterexample,
            max: ext.max,
            min: ext.min,
            down,
        });
    }
    Ok(ExtremalReport {
        n_k,
        n_prime_k,
        comparator,
        all_members: findings.iter().all(|f| f.max_member && f.min_member),
        all_max_greatest: findings.iter().all(|f| f.max_greatest),
        all_min_least: findings.iter().all(|f| f.min_least),
        all_unique: findings.iter().all(|f| f.max_unique() && f.min_unique()),
        findings,
    })
}

/// The unipotent label of one factor of `L_s(π)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentPiece {
    pub label: String,
    /// Twisted by the sign character.
    #[serde(default)]
    pub sgn: bool,
    /// Principal-series label, when the piece is read as a bipartition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<Bipartition>,
}

impl UnipotentPiece {
    pub fn new(label: &str) -> Self {
        UnipotentPiece {
            label: label.into(),
            sgn: false,
            bipartition: None,
        }
    }
}

/// One side of a pair: the semisimple element (in the dual group) and the
/// three unipotent pieces `π^u_1 ⊗ π^u_{−1} ⊗ π^u_{≠}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatSide {
    pub eigen: EigenData,
    pub one: UnipotentPiece,
    pub minus_one: UnipotentPiece,
    pub other: UnipotentPiece,
}

/// `sp` is the symplectic side (its dual group is `SO_{2n+1}`), `o` the
/// even orthogonal side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatInput {
    pub sp: CompatSide,
    pub o: CompatSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompatStatus {
    Pass,
    NotVerified,
    Inconclusive,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BulletResult {
    pub bullet: FactorGroup,
    pub status: CompatStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatReport {
    pub status: CompatStatus,
    pub bullets: Vec<BulletResult>,
}

/// Checks the structural constraints that the Howe correspondence imposes on
/// the Lusztig-series data of corresponding `π`, `π'`:
///
/// * eigenvalue 1: the factors must form a smaller dual pair of symplectic
///   and orthogonal type; if both pieces carry bipartitions, the smaller
///   correspondence is tested through [`omega_multiplicity`];
/// * eigenvalue −1: isomorphic orthogonal factors, labels equal up to `sgn`;
/// * other eigenvalues: equal factor multisets and equal labels.
pub fn lusztig_compat_check(input: &CompatInput) -> Result<CompatReport> {
    if input.sp.eigen.ambient.family != Family::SOodd {
        return Err(Error::InvalidInput(
            "the symplectic side needs eigen-data in the dual group SOodd".into(),
        ));
    }
    let eps = match input.o.eigen.ambient.family {
        Family::Oplus => Sign::Plus,
        Family::Ominus => Sign::Minus,
        other => {
            return Err(Error::InvalidInput(format!(
                "the orthogonal side needs eigen-data in Oplus or Ominus, got {other}"
            )))
        }
    };
    let ds = centralizer_decomposition(&input.sp.eigen)?;
    let dt = centralizer_decomposition(&input.o.eigen)?;
    let bullets = vec![
        check_one(&ds, &dt, &input.sp.one, &input.o.one, eps),
        check_minus_one(&ds, &dt, &input.sp.minus_one, &input.o.minus_one),
        check_other(&ds, &dt, &input.sp.other, &input.o.other),
    ];
    let status = bullets.iter().map(|b| b.status).max().unwrap_or(CompatStatus::Pass);
    Ok(CompatReport { status, bullets })
}

fn bullet(bullet: FactorGroup, status: CompatStatus, detail: impl Into<String>) -> BulletResult {
    BulletResult {
        bullet,
        status,
        detail: detail.into(),
    }
}

fn rank_in(d: &CentralizerDecomposition, g: FactorGroup) -> u32 {
    d.group(g).map(|f| f.rank).sum()
}

/// Writes `value = k(k+1)` or `value = k²`, if possible.
fn solve_level(value: u32, f: impl Fn(u32) -> u32) -> Option<u32> {
    (0..=value).take_while(|&k| f(k) <= value).find(|&k| f(k) == value)
}

fn check_one(
    ds: &CentralizerDecomposition,
    dt: &CentralizerDecomposition,
    ps: &UnipotentPiece,
    pt: &UnipotentPiece,
    eps: Sign,
) -> BulletResult {
    let g = FactorGroup::One;
    if ds.group(g).any(|f| f.family != FactorFamily::SOodd) || dt.group(g).any(|f| f.family != FactorFamily::O) {
        return bullet(g, CompatStatus::Fail, "eigenvalue-1 factors are not of type (SO_odd, O)");
    }
    let (n, n2) = (rank_in(ds, g), rank_in(dt, g));
    let (Some(up), Some(down)) = (&ps.bipartition, &pt.bipartition) else {
        return bullet(g, CompatStatus::Pass, format!("dual pair (Sp_{}, O_{}); labels not checked", 2 * n, 2 * n2));
    };
    if up.size() > n || down.size() > n2 {
        return bullet(g, CompatStatus::Fail, format!("label {up} or {down} is larger than the rank"));
    }
    let Some(k) = solve_level(n - up.size(), |k| k * (k + 1)) else {
        return bullet(g, CompatStatus::NotVerified, format!("n - |{up}| is not of the form k(k+1)"));
    };
    let Some(k2) = solve_level(n2 - down.size(), |k| k * k) else {
        return bullet(g, CompatStatus::NotVerified, format!("n' - |{down}| is not a square"));
    };
    let sign = dt.group(g).next().and_then(|f| f.sign).unwrap_or(eps);
    let (theta_k, _) = theta_tower(k, sign);
    if theta_k != k2 {
        return bullet(
            g,
            CompatStatus::NotVerified,
            format!("cuspidal levels k = {k}, k' = {k2} are not in one tower (θ(k) = {theta_k})"),
        );
    }
    let m = omega_multiplicity(up, down, OmegaCase::of(k, sign));
    if m > 0 {
        bullet(g, CompatStatus::Pass, format!("{up} and {down} correspond with multiplicity {m}"))
    } else {
        bullet(
            g,
            CompatStatus::NotVerified,
            format!("{up} and {down} do not correspond; a sgn twist is not modelled"),
        )
    }
}

fn check_minus_one(
    ds: &CentralizerDecomposition,
    dt: &CentralizerDecomposition,
    ps: &UnipotentPiece,
    pt: &UnipotentPiece,
) -> BulletResult {
    let g = FactorGroup::MinusOne;
    let a: Vec<&CentralizerFactor> = ds.group(g).filter(|f| f.rank > 0).collect();
    let b: Vec<&CentralizerFactor> = dt.group(g).filter(|f| f.rank > 0).collect();
    if a.is_empty() && b.is_empty() {
        return bullet(g, CompatStatus::Pass, "no eigenvalue -1");
    }
    let (Some(fa), Some(fb)) = (a.first(), b.first()) else {
        return bullet(g, CompatStatus::Fail, "eigenvalue -1 occurs on one side only");
    };
    if fa.family != fb.family || fa.rank != fb.rank {
        return bullet(g, CompatStatus::Fail, format!("{fa} is not isomorphic to {fb}"));
    }
    if ps.label != pt.label {
        return bullet(
            g,
            CompatStatus::Fail,
            format!("labels {} and {} differ beyond a sgn twist", ps.label, pt.label),
        );
    }
    match (fa.sign, fb.sign) {
        (Some(x), Some(y)) if x != y => bullet(g, CompatStatus::Fail, format!("{fa} is not isomorphic to {fb}")),
        (Some(_), Some(_)) => bullet(g, CompatStatus::Pass, format!("{fa} on both sides")),
        _ => bullet(g, CompatStatus::Inconclusive, format!("the O± type of {fa} / {fb} is undetermined")),
    }
}

fn check_other(
    ds: &CentralizerDecomposition,
    dt: &CentralizerDecomposition,
    ps: &UnipotentPiece,
    pt: &UnipotentPiece,
) -> BulletResult {
    let g = FactorGroup::Other;
    let shape = |d: &CentralizerDecomposition| {
        let mut v: Vec<(FactorFamily, u32, u32)> = d.group(g).map(|f| (f.family, f.rank, f.field_degree)).collect();
        v.sort();
        v
    };
    let (a, b) = (shape(ds), shape(dt));
    if a.is_empty() && b.is_empty() {
        return bullet(g, CompatStatus::Pass, "no eigenvalues other than ±1");
    }
    if a != b {
        return bullet(g, CompatStatus::Fail, "the factors for eigenvalues other than ±1 differ");
    }
    if ps.label != pt.label || ps.sgn != pt.sgn {
        return bullet(g, CompatStatus::Fail, format!("labels {} and {} differ", ps.label, pt.label));
    }
    bullet(g, CompatStatus::Pass, format!("{} matching factors", a.len()))
}
