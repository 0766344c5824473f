//! Dimension functions on spectral spaces.
//!
//! A dimension function assigns each point an ordinal such that no value is
//! a limit ordinal, values weakly decrease along specialisation, and a proper
//! specialisation strictly decreases the value. It is *spectral* when every
//! sublevel set `X_{≤α}` is Thomason. Two are built in: the Krull dimension
//! of a finite space (strip closed points, repeat) and the Cantor–Bendixson
//! rank of a space carrying the constructible topology (strip isolated
//! points, repeat).
//!
//! Assignments are stored as strata, one subset per attained value, so that
//! infinite ordinal spaces are handled the same way as finite ones.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalError};
use crate::space::{OrdinalSet, OrdinalSpace, PointId, Space, SpaceError, SubsetHandle, MAX_LEVEL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error("NotSupported: {0}")]
    NotSupported(&'static str),
    #[error("NotConstructible: the space does not carry the constructible topology")]
    NotConstructible,
    #[error("RankUndefined: no ordinal exhausts the space")]
    RankUndefined,
    #[error("RankMismatch: {0}")]
    RankMismatch(String),
    #[error("InvalidAssignment: {0}")]
    InvalidAssignment(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

impl From<OrdinalError> for DimError {
    fn from(e: OrdinalError) -> Self {
        DimError::Space(e.into())
    }
}

impl DimError {
    pub fn name(&self) -> &'static str {
        match self {
            DimError::NotSupported(_) => "NotSupported",
            DimError::NotConstructible => "NotConstructible",
            DimError::RankUndefined => "RankUndefined",
            DimError::RankMismatch(_) => "RankMismatch",
            DimError::InvalidAssignment(_) => "InvalidAssignment",
            DimError::Space(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimensionKind {
    Krull,
    CbRank,
}

impl DimensionKind {
    pub fn compute(self, space: &Space) -> Result<DimensionAssignment, DimError> {
        match self {
            DimensionKind::Krull => krull(space),
            DimensionKind::CbRank => cbrank(space),
        }
    }
}

impl fmt::Display for DimensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionKind::Krull => "krull",
            DimensionKind::CbRank => "cbrank",
        })
    }
}

impl FromStr for DimensionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "krull" => Ok(DimensionKind::Krull),
            "cbrank" | "cb" => Ok(DimensionKind::CbRank),
            _ => Err(format!(
                "unknown dimension kind `{s}` (expected krull or cbrank)"
            )),
        }
    }
}

/// A map from points to ordinals, stored as its nonempty level sets in
/// increasing order of value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionAssignment {
    space: Space,
    strata: Vec<(Ordinal, SubsetHandle)>,
}

impl DimensionAssignment {
    /// Checks that the strata are nonempty, strictly increasing in value and
    /// partition the space.
    pub fn from_strata(
        space: Space,
        strata: Vec<(Ordinal, SubsetHandle)>,
    ) -> Result<Self, DimError> {
        let mut covered = space.empty()?;
        for (i, (value, set)) in strata.iter().enumerate() {
            space.check_subset(set)?;
            if set.is_empty() {
                return Err(DimError::InvalidAssignment(format!(
                    "empty stratum for {value}"
                )));
            }
            if i > 0 && strata[i - 1].0 >= *value {
                return Err(DimError::InvalidAssignment("values out of order".into()));
            }
            if !covered.is_disjoint(set) {
                return Err(DimError::InvalidAssignment(format!(
                    "stratum {value} overlaps an earlier one"
                )));
            }
            covered = covered.union(set);
        }
        if covered != space.all()? {
            return Err(DimError::InvalidAssignment(format!(
                "points {} have no value",
                space.format_subset(&space.all()?.difference(&covered))
            )));
        }
        Ok(DimensionAssignment { space, strata })
    }

    /// Pointwise values on a finite space.
    pub fn from_values(space: Space, values: &[Ordinal]) -> Result<Self, DimError> {
        let Space::Finite(f) = &space else {
            return Err(DimError::NotSupported(
                "pointwise values need a finite space",
            ));
        };
        if values.len() != f.len() {
            return Err(DimError::InvalidAssignment(format!(
                "{} values for {} points",
                values.len(),
                f.len()
            )));
        }
        let mut sorted: Vec<&Ordinal> = values.iter().collect();
        sorted.sort();
        sorted.dedup();
        let strata = sorted
            .into_iter()
            .map(|v| {
                let set = (0..f.len()).filter(|&i| values[i] == *v).collect();
                (v.clone(), SubsetHandle::Explicit(set))
            })
            .collect();
        Self::from_strata(space, strata)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn strata(&self) -> &[(Ordinal, SubsetHandle)] {
        &self.strata
    }

    pub fn value(&self, x: &PointId) -> Option<&Ordinal> {
        self.strata
            .iter()
            .find(|(_, s)| s.contains(x))
            .map(|(v, _)| v)
    }

    pub fn attained(&self) -> Vec<Ordinal> {
        self.strata.iter().map(|(v, _)| v.clone()).collect()
    }

    /// Least `α` with `X_{≤α} = X`.
    pub fn space_dim(&self) -> Ordinal {
        self.strata
            .last()
            .map(|(v, _)| v.clone())
            .unwrap_or_default()
    }

    /// `X_{≤α}`.
    pub fn sublevel(&self, alpha: &Ordinal) -> SubsetHandle {
        self.strata.iter().take_while(|(v, _)| v <= alpha).fold(
            self.space
                .empty()
                .expect("assignment on a representable space"),
            |acc, (_, s)| acc.union(s),
        )
    }

    /// `X_{>α}`.
    pub fn superlevel(&self, alpha: &Ordinal) -> SubsetHandle {
        self.strata.iter().skip_while(|(v, _)| v <= alpha).fold(
            self.space
                .empty()
                .expect("assignment on a representable space"),
            |acc, (_, s)| acc.union(s),
        )
    }

    /// Points with value exactly `α` (possibly empty).
    pub fn stratum(&self, alpha: &Ordinal) -> SubsetHandle {
        self.strata
            .iter()
            .find(|(v, _)| v == alpha)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| {
                self.space
                    .empty()
                    .expect("assignment on a representable space")
            })
    }

    /// `dim <point> = <value>` lines sorted by point name (one line per
    /// stratum on ordinal spaces), then `space_dim = <value>`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.space {
            Space::Finite(f) => {
                let mut lines: Vec<(String, &Ordinal)> = (0..f.len())
                    .map(|i| {
                        let v = self.value(&PointId::Index(i)).expect("total assignment");
                        (f.name(i).to_string(), v)
                    })
                    .collect();
                lines.sort();
                for (name, v) in lines {
                    let _ = writeln!(out, "dim {name} = {v}");
                }
            }
            _ => {
                for (v, s) in &self.strata {
                    let _ = writeln!(out, "dim {} = {v}", self.space.format_subset(s));
                }
            }
        }
        let _ = writeln!(out, "space_dim = {}", self.space_dim());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// No limit values.
    NoLimitValues,
    /// `y ∈ V(x)` implies `dim y ≤ dim x`.
    Monotone,
    /// `y ∈ V(x)` and `dim y = dim x` imply `x = y`.
    Strict,
    /// Every sublevel set is Thomason.
    Spectral,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::NoLimitValues => "i",
            Axiom::Monotone => "ii",
            Axiom::Strict => "iii",
            Axiom::Spectral => "spectral",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn render(&self) -> String {
        if self.passes() {
            return "PASS\n".into();
        }
        self.violations
            .iter()
            .map(|v| format!("FAIL {} at {}\n", v.axiom, v.witness))
            .collect()
    }
}

/// Checks the dimension-function axioms and the spectral condition. The
/// spectral condition is only tested at attained values, since `X_{≤α}` is
/// constant between consecutive attained values.
pub fn validate(assignment: &DimensionAssignment) -> AxiomReport {
    let space = &assignment.space;
    let mut violations = Vec::new();
    for (v, s) in &assignment.strata {
        if v.is_limit() {
            violations.push(Violation {
                axiom: Axiom::NoLimitValues,
                witness: format!("{} (value {v})", space.format_subset(s)),
            });
        }
    }
    // ordinal spaces are Hausdorff: V(x) = {x}, so (ii) and (iii) are vacuous
    if let Space::Finite(f) = space {
        let value = |i| {
            assignment
                .value(&PointId::Index(i))
                .expect("total assignment")
        };
        for x in 0..f.len() {
            for y in (0..f.len()).filter(|&y| y != x && f.specialises(x, y)) {
                let (dx, dy) = (value(x), value(y));
                if dy > dx {
                    violations.push(Violation {
                        axiom: Axiom::Monotone,
                        witness: format!("{} -> {}", f.name(x), f.name(y)),
                    });
                } else if dy == dx {
                    violations.push(Violation {
                        axiom: Axiom::Strict,
                        witness: format!("{} -> {}", f.name(x), f.name(y)),
                    });
                }
            }
        }
    }
    for (v, _) in &assignment.strata {
        let sub = assignment.sublevel(v);
        if !space.is_thomason(&sub).unwrap_or(false) {
            violations.push(Violation {
                axiom: Axiom::Spectral,
                witness: format!("sublevel {v} = {}", space.format_subset(&sub)),
            });
        }
    }
    AxiomReport { violations }
}

/// Krull dimension of a finite space: level 0 holds the closed points, and
/// level `k+1` the points closed in what remains after removing levels
/// `0..=k`.
pub fn krull(space: &Space) -> Result<DimensionAssignment, DimError> {
    let Space::Finite(f) = space else {
        return Err(DimError::NotSupported(
            "Krull dimension is computed for finite (noetherian) spaces only",
        ));
    };
    let mut remaining = f.all();
    let mut strata = Vec::new();
    let mut k = 0u64;
    while !remaining.is_empty() {
        let closed: crate::space::PointSet = remaining
            .iter()
            .copied()
            .filter(|&x| remaining.iter().all(|&y| y == x || !f.specialises(x, y)))
            .collect();
        remaining = &remaining - &closed;
        strata.push((Ordinal::nat(k), SubsetHandle::Explicit(closed)));
        k += 1;
    }
    DimensionAssignment::from_strata(space.clone(), strata)
}

/// Cantor–Bendixson rank: level 0 holds the isolated points, level `k+1` the
/// points isolated in what remains.
///
/// On ordinal spaces the rank is computed by stripping isolated points and
/// re-coordinatising the remaining limit points through division by ω, then
/// checked against a second route: the least-exponent formula on a full
/// interval `[0, α]`, or direct derived-set iteration on a closed subspace.
/// Disagreement is reported as [`DimError::RankMismatch`].
pub fn cbrank(space: &Space) -> Result<DimensionAssignment, DimError> {
    match space {
        Space::Cantor => Err(DimError::RankUndefined),
        Space::Finite(f) => {
            if !f.is_discrete() {
                return Err(DimError::NotConstructible);
            }
            let strata = if f.is_empty() {
                Vec::new()
            } else {
                vec![(Ordinal::zero(), SubsetHandle::Explicit(f.all()))]
            };
            DimensionAssignment::from_strata(space.clone(), strata)
        }
        Space::Ordinal(o) => {
            let stripped = strata_by_recoordinatization(o.carrier())?;
            let (check, route) = if o.is_full() {
                (strata_by_least_exponent(o), "least-exponent formula")
            } else {
                (strata_by_derived_sets(o.carrier()), "derived-set iteration")
            };
            if stripped != check {
                return Err(DimError::RankMismatch(format!(
                    "slice stripping gave {stripped:?}, {route} gave {check:?}"
                )));
            }
            let strata = stripped
                .into_iter()
                .enumerate()
                .map(|(k, s)| (Ordinal::nat(k as u64), SubsetHandle::Ordinals(s)))
                .collect();
            DimensionAssignment::from_strata(space.clone(), strata)
        }
    }
}

/// Strips isolated points, divides the remaining (limit) points by ω and
/// repeats; stratum `k` is mapped back by multiplying by `ω^k`.
pub fn strata_by_recoordinatization(carrier: &OrdinalSet) -> Result<Vec<OrdinalSet>, DimError> {
    let mut strata = Vec::new();
    let mut current = carrier.clone();
    let mut scale = 0u32;
    while !current.is_empty() {
        let isolated = current.isolated_points();
        if isolated.is_empty() {
            return Err(DimError::RankMismatch(format!(
                "{current} has no isolated point"
            )));
        }
        strata.push(isolated.scale_up(scale)?);
        let rest = current.difference(&isolated);
        if rest.is_empty() {
            break;
        }
        current = rest.scale_down(1).ok_or_else(|| {
            DimError::RankMismatch(format!("derived set {rest} contains a successor ordinal"))
        })?;
        scale += 1;
        if scale > MAX_LEVEL {
            return Err(DimError::RankMismatch("stripping did not terminate".into()));
        }
    }
    Ok(strata)
}

/// Iterated derived sets in the original coordinates.
pub fn strata_by_derived_sets(carrier: &OrdinalSet) -> Vec<OrdinalSet> {
    let mut strata = Vec::new();
    let mut current = carrier.clone();
    while !current.is_empty() {
        let isolated = current.isolated_points();
        current = current.difference(&isolated);
        strata.push(isolated);
    }
    strata
}

/// On `[0, α]` the rank of `δ > 0` is the last exponent of its normal form.
fn strata_by_least_exponent(space: &OrdinalSpace) -> Vec<OrdinalSet> {
    let end = space.top().succ().expect("top fits the representation");
    let levels = space.top().leading_exponent().unwrap_or(0);
    (0..=levels)
        .map(|k| OrdinalSet::level_slice(Ordinal::zero(), end.clone(), 1u64 << k))
        .filter(|s| !s.is_empty())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceCheck {
    /// The slice is `X_{>below}`.
    pub below: Ordinal,
    pub slice: SubsetHandle,
    /// Points with value `below + 1` in the whole space.
    pub expected: SubsetHandle,
    /// Points with value 0 in the slice, recomputed there.
    pub found: SubsetHandle,
    /// For ordinal slices divisible by ω: whether the rank computed on the
    /// re-coordinatised slice agrees with the rank computed in place.
    pub recoordinated: Option<bool>,
}

impl SliceCheck {
    pub fn passes(&self) -> bool {
        self.expected == self.found && self.recoordinated != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatReport {
    pub kind: DimensionKind,
    pub checks: Vec<SliceCheck>,
}

impl CompatReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(SliceCheck::passes)
    }

    pub fn render(&self, space: &Space) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passes() { "ok" } else { "FAIL" };
            let _ = write!(
                out,
                "slice >{} {status} expected={} found={}",
                c.below,
                space.format_subset(&c.expected),
                space.format_subset(&c.found)
            );
            if let Some(r) = c.recoordinated {
                let _ = write!(out, " recoordinated={}", if r { "ok" } else { "FAIL" });
            }
            out.push('\n');
        }
        out.push_str(if self.passes() { "PASS\n" } else { "FAIL\n" });
        out
    }
}

/// For every attained `α`, recomputes the dimension function on the subspace
/// `X_{>α}` and checks `dim_X(x) = α+1 ⟺ dim_{X>α}(x) = 0` on the slice.
pub fn check_compatibility(space: &Space, kind: DimensionKind) -> Result<CompatReport, DimError> {
    let assignment = kind.compute(space)?;
    let mut checks = Vec::new();
    for alpha in assignment.attained() {
        let slice = assignment.superlevel(&alpha);
        if slice.is_empty() {
            continue;
        }
        let view = space.subspace(&slice)?;
        let local = kind.compute(view.space())?;
        let found = view.push_forward(&local.stratum(&Ordinal::zero()));
        let expected = assignment.stratum(&alpha.succ()?);
        let recoordinated = match view.recoordinatization() {
            Some(rc) if kind == DimensionKind::CbRank => {
                let image = cbrank(&Space::Ordinal(rc.image.clone()))?;
                let mut agree = image.strata.len() == local.strata.len();
                for ((_, img), (_, here)) in image.strata.iter().zip(&local.strata) {
                    let (SubsetHandle::Ordinals(img), SubsetHandle::Ordinals(here)) = (img, here)
                    else {
                        unreachable!()
                    };
                    agree &= rc.set_from_image(img)? == *here;
                }
                Some(agree)
            }
            _ => None,
        };
        checks.push(SliceCheck {
            below: alpha,
            slice,
            expected,
            found,
            recoordinated,
        });
    }
    Ok(CompatReport { kind, checks })
}

/// `dim X < ω + ω`.
pub fn bound_check(assignment: &DimensionAssignment) -> bool {
    let omega_two = Ordinal::from_terms(vec![(1, 2)]).expect("canonical");
    assignment.space_dim() < omega_two
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::finite::tests::arb_finite;
    use crate::space::FiniteSpace;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn finite(n: usize, rel: &[(usize, usize)]) -> Space {
        let names = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        Space::Finite(FiniteSpace::new(names, rel).unwrap())
    }

    /// Longest specialisation chain from `x` down to a closed point.
    fn chain_oracle(f: &FiniteSpace, x: usize) -> u64 {
        (0..f.len())
            .filter(|&y| y != x && f.specialises(x, y))
            .map(|y| 1 + chain_oracle(f, y))
            .max()
            .unwrap_or(0)
    }

    fn values(a: &DimensionAssignment) -> Vec<Ordinal> {
        let Space::Finite(f) = a.space() else {
            panic!()
        };
        (0..f.len())
            .map(|i| a.value(&PointId::Index(i)).unwrap().clone())
            .collect()
    }

    #[test]
    fn krull_examples() {
        let anti = Space::Finite(FiniteSpace::antichain(4));
        assert_eq!(values(&krull(&anti).unwrap()), vec![o("0"); 4]);

        let chain = finite(3, &[(0, 1), (1, 2)]);
        let k = krull(&chain).unwrap();
        assert_eq!(values(&k), vec![o("2"), o("1"), o("0")]);

        // x ⤳ y1, y2 ⤳ z
        let diamond = finite(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let k = krull(&diamond).unwrap();
        let Space::Finite(f) = &diamond else {
            unreachable!()
        };
        for i in 0..4 {
            assert_eq!(values(&k)[i], Ordinal::nat(chain_oracle(f, i)));
        }
        assert_eq!(values(&k)[0], o("2"));
    }

    #[test]
    fn krull_rejects_ordinal_spaces() {
        let w = Space::ordinal(o("w")).unwrap();
        assert!(matches!(krull(&w), Err(DimError::NotSupported(_))));
        assert!(matches!(
            krull(&Space::Cantor),
            Err(DimError::NotSupported(_))
        ));
    }

    #[test]
    fn sublevel_examples() {
        let chain = finite(2, &[(0, 1)]);
        let k = krull(&chain).unwrap();
        assert_eq!(k.sublevel(&o("0")), chain.parse_subset("{b}").unwrap());
        assert_eq!(k.sublevel(&k.space_dim()), chain.all().unwrap());

        let w = Space::ordinal(o("w")).unwrap();
        let cb = cbrank(&w).unwrap();
        assert_eq!(cb.sublevel(&o("0")), w.parse_subset("[0,w)").unwrap());
    }

    #[test]
    fn validate_examples() {
        let chain = finite(2, &[(0, 1)]);
        let constant = DimensionAssignment::from_values(chain.clone(), &[o("0"), o("0")]).unwrap();
        let report = validate(&constant);
        assert!(report.violates(Axiom::Strict));
        assert_eq!(report.render(), "FAIL iii at a -> b\n");

        let limit = DimensionAssignment::from_values(chain.clone(), &[o("w"), o("0")]).unwrap();
        assert!(validate(&limit).violates(Axiom::NoLimitValues));

        let upward = DimensionAssignment::from_values(chain.clone(), &[o("0"), o("1")]).unwrap();
        let report = validate(&upward);
        assert!(report.violates(Axiom::Monotone));
        assert!(report.violates(Axiom::Spectral));

        assert!(validate(&krull(&chain).unwrap()).passes());
    }

    #[test]
    fn cbrank_examples() {
        let anti = Space::Finite(FiniteSpace::antichain(3));
        let cb = cbrank(&anti).unwrap();
        assert_eq!(cb.space_dim(), o("0"));
        assert_eq!(cb.strata().len(), 1);

        let w = Space::ordinal(o("w")).unwrap();
        let cb = cbrank(&w).unwrap();
        assert_eq!(cb.value(&PointId::Ordinal(o("7"))), Some(&o("0")));
        assert_eq!(cb.value(&PointId::Ordinal(o("w"))), Some(&o("1")));
        assert_eq!(cb.space_dim(), o("1"));

        let w2 = Space::ordinal(o("w^2")).unwrap();
        let cb = cbrank(&w2).unwrap();
        assert_eq!(cb.value(&PointId::Ordinal(o("w^2"))), Some(&o("2")));
        assert_eq!(cb.value(&PointId::Ordinal(o("w*3"))), Some(&o("1")));
        assert!(validate(&cb).passes());

        assert_eq!(cbrank(&Space::Cantor), Err(DimError::RankUndefined));
        assert_eq!(
            cbrank(&finite(2, &[(0, 1)])),
            Err(DimError::NotConstructible)
        );
    }

    #[test]
    fn cbrank_on_subspace() {
        let w2 = Space::ordinal(o("w^2")).unwrap();
        let s = w2.parse_subset("[0,3]u[w*2,w*3]u[w^2,w^2]").unwrap();
        let view = w2.subspace(&s).unwrap();
        let cb = cbrank(view.space()).unwrap();
        // w^2 is isolated in the subspace
        assert_eq!(cb.value(&PointId::Ordinal(o("w^2"))), Some(&o("0")));
        assert_eq!(cb.value(&PointId::Ordinal(o("w*3"))), Some(&o("1")));
        assert_eq!(cb.value(&PointId::Ordinal(o("w*2"))), Some(&o("0")));
    }

    #[test]
    fn compatibility_examples() {
        let chain = finite(3, &[(0, 1), (1, 2)]);
        let report = check_compatibility(&chain, DimensionKind::Krull).unwrap();
        assert!(report.passes());
        assert_eq!(report.checks[0].slice, chain.parse_subset("{a,b}").unwrap());

        let w2 = Space::ordinal(o("w^2")).unwrap();
        let report = check_compatibility(&w2, DimensionKind::CbRank).unwrap();
        assert!(report.passes(), "{}", report.render(&w2));
        assert_eq!(report.checks.len(), 2);
        assert_eq!(report.checks[0].recoordinated, Some(true));

        let anti = Space::Finite(FiniteSpace::antichain(3));
        let report = check_compatibility(&anti, DimensionKind::CbRank).unwrap();
        assert!(report.checks.is_empty() && report.passes());
    }

    #[test]
    fn bound_examples() {
        let at = |v: &str| {
            DimensionAssignment::from_values(Space::Finite(FiniteSpace::antichain(1)), &[o(v)])
                .unwrap()
        };
        assert!(bound_check(&at("3")));
        assert!(bound_check(&at("w+1")));
        assert!(!bound_check(&at("w*2")));
    }

    #[test]
    fn strata_must_partition() {
        let s = Space::Finite(FiniteSpace::antichain(2));
        let err = DimensionAssignment::from_strata(
            s.clone(),
            vec![(o("0"), s.parse_subset("{p0}").unwrap())],
        );
        assert!(matches!(err, Err(DimError::InvalidAssignment(_))));
    }

    #[test]
    fn render_lines() {
        let chain = finite(2, &[(0, 1)]);
        assert_eq!(
            krull(&chain).unwrap().render(),
            "dim a = 1\ndim b = 0\nspace_dim = 1\n"
        );
        let w = Space::ordinal(o("w")).unwrap();
        assert_eq!(
            cbrank(&w).unwrap().render(),
            "dim [0,w) = 0\ndim [w,w] = 1\nspace_dim = 1\n"
        );
    }

    fn arb_top() -> impl Strategy<Value = Ordinal> {
        (0u64..3, 0u64..3, 0u64..3).prop_map(|(a, b, c)| {
            let terms: Vec<_> = [(2, a), (1, b), (0, c)]
                .into_iter()
                .filter(|t| t.1 > 0)
                .collect();
            if terms.is_empty() {
                o("1")
            } else {
                Ordinal::from_terms(terms).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn krull_matches_chains_and_validates(f in arb_finite(10)) {
            let space = Space::Finite(f.clone());
            let a = krull(&space).unwrap();
            for (x, v) in values(&a).into_iter().enumerate() {
                prop_assert_eq!(v, Ordinal::from(chain_oracle(&f, x)));
            }
            prop_assert!(validate(&a).passes());
            prop_assert!(bound_check(&a));
            prop_assert!(check_compatibility(&space, DimensionKind::Krull).unwrap().passes());
        }

        #[test]
        fn krull_on_every_view(f in arb_finite(6), bits in 0u32..64) {
            let n = f.len();
            let space = Space::Finite(f);
            let s = SubsetHandle::Explicit((0..n).filter(|i| bits & (1 << i) != 0).collect());
            let view = space.subspace(&s).unwrap();
            prop_assert!(validate(&krull(view.space()).unwrap()).passes());
        }

        #[test]
        fn cbrank_is_the_trailing_exponent(top in arb_top()) {
            let space = Space::ordinal(top.clone()).unwrap();
            let a = cbrank(&space).unwrap();
            prop_assert!(validate(&a).passes());
            prop_assert!(check_compatibility(&space, DimensionKind::CbRank).unwrap().passes());
            let by_levels = strata_by_recoordinatization(&OrdinalSet::closed_interval(o("0"), top.clone())).unwrap();
            prop_assert_eq!(by_levels, strata_by_derived_sets(&OrdinalSet::closed_interval(o("0"), top.clone())));
            for (v, stratum) in a.strata() {
                let SubsetHandle::Ordinals(set) = stratum else { panic!() };
                for p in set.pieces() {
                    let d = &p.start;
                    let expect = d.trailing_exponent().map_or(0, u64::from);
                    prop_assert_eq!(v, &Ordinal::from(expect));
                    prop_assert_eq!(p.mask, 1u64 << expect);
                }
            }
        }
    }
}
