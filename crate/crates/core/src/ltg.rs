//! Local-to-global filtrations at the level of supports.
//!
//! An object is modelled only by its support `supp A ⊆ X`. The idempotent
//! operators act on supports by
//!
//! ```text
//! supp(Γ_V A) = supp A ∩ V        supp(L_V A) = supp A ∖ V
//! ```
//!
//! for Thomason `V`, and `Γ_x A` is `Γ_V L_W A` for a Thomason pair with
//! `V ∖ W = {x}`. Nothing here constructs objects of a triangulated
//! category; the module checks the combinatorial shadow of the statements
//! only.
//!
//! [`filtration`] replays the transfinite induction over the sublevel sets
//! `X_{≤α}` of a dimension function: a base stage built from Thomason
//! singletons, successor stages whose new points have dimension 0 in the
//! slice `X_{>α}`, and (empty) limit stages.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::dimfn::{DimError, DimensionAssignment, DimensionKind};
use crate::ordinal::Ordinal;
use crate::space::{
    FiniteSpace, PointId, PointSet, Space, SpaceError, SubsetHandle, VisibilityWitness,
};

/// Largest finite space [`thomason_ideals`] will enumerate.
pub const MAX_ENUMERATION_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LtgError {
    #[error("NotThomason: {0}")]
    NotThomason(String),
    #[error("ZeroStage: points {0} at level 0 do not have Thomason singletons")]
    ZeroStage(String),
    #[error("CompatibilityViolation: {0}")]
    CompatibilityViolation(String),
    #[error("WitnessDependence: {0}")]
    WitnessDependence(String),
    #[error("TooLarge: {0} points (limit {MAX_ENUMERATION_POINTS})")]
    TooLarge(usize),
    #[error(transparent)]
    Dim(#[from] DimError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

impl LtgError {
    pub fn name(&self) -> &'static str {
        match self {
            LtgError::NotThomason(_) => "NotThomason",
            LtgError::ZeroStage(_) => "ZeroStage",
            LtgError::CompatibilityViolation(_) => "CompatibilityViolation",
            LtgError::WitnessDependence(_) => "WitnessDependence",
            LtgError::TooLarge(_) => "TooLarge",
            LtgError::Dim(e) => e.name(),
            LtgError::Space(e) => e.name(),
        }
    }
}

/// The support of a notional object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportDatum {
    space: Space,
    supp: SubsetHandle,
}

impl SupportDatum {
    pub fn new(space: Space, supp: SubsetHandle) -> Result<Self, LtgError> {
        space.check_subset(&supp)?;
        Ok(SupportDatum { space, supp })
    }

    /// Full support.
    pub fn unit(space: Space) -> Result<Self, LtgError> {
        let supp = space.all()?;
        Ok(SupportDatum { space, supp })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn supp(&self) -> &SubsetHandle {
        &self.supp
    }

    fn with_supp(&self, supp: SubsetHandle) -> Self {
        SupportDatum {
            space: self.space.clone(),
            supp,
        }
    }

    fn require_thomason(&self, v: &SubsetHandle) -> Result<(), LtgError> {
        if self.space.is_thomason(v)? {
            Ok(())
        } else {
            Err(LtgError::NotThomason(self.space.format_subset(v)))
        }
    }

    /// `Γ_V`: the part supported on `V`.
    pub fn gamma(&self, v: &SubsetHandle) -> Result<Self, LtgError> {
        self.require_thomason(v)?;
        Ok(self.with_supp(self.supp.intersection(v)))
    }

    /// `L_V`: the part supported away from `V`.
    pub fn ell(&self, v: &SubsetHandle) -> Result<Self, LtgError> {
        self.require_thomason(v)?;
        Ok(self.with_supp(self.supp.difference(v)))
    }

    /// `Γ_V L_W` for a witness pair `(V, W)`.
    pub fn gamma_with(&self, x: &PointId, witness: &VisibilityWitness) -> Result<Self, LtgError> {
        self.space.check_witness(x, witness)?;
        self.ell(&witness.inner)?.gamma(&witness.outer)
    }

    /// `Γ_x`, computed through the standard witness and checked against a
    /// second witness and against `supp ∩ {x}`.
    pub fn gamma_point(&self, x: &PointId) -> Result<Self, LtgError> {
        let witness = self.space.visibility_witness(x)?;
        let result = self.gamma_with(x, &witness)?;
        let direct = self.supp.intersection(&self.space.singleton(x)?);
        if result.supp != direct {
            return Err(LtgError::WitnessDependence(format!(
                "Γ at {} gave {}, expected {}",
                self.space.format_point(x),
                self.space.format_subset(&result.supp),
                self.space.format_subset(&direct)
            )));
        }
        if let Some(alt) = second_witness(&self.space, x)? {
            let other = self.gamma_with(x, &alt)?;
            if other.supp != result.supp {
                return Err(LtgError::WitnessDependence(format!(
                    "two witnesses at {} disagree",
                    self.space.format_point(x)
                )));
            }
        }
        Ok(result)
    }
}

/// A witness pair independent of [`Space::visibility_witness`]:
/// `(V(x), V(x) ∖ {x})` on a finite space, `([0,x], [0,x))` cut down to the
/// carrier on an ordinal space. `None` when it coincides with the standard
/// one.
pub fn second_witness(space: &Space, x: &PointId) -> Result<Option<VisibilityWitness>, LtgError> {
    let point = space.singleton(x)?;
    let witness = match (space, x) {
        (Space::Finite(f), PointId::Index(i)) => {
            let outer = SubsetHandle::Explicit(f.closure(&[*i].into()));
            let inner = outer.difference(&point);
            VisibilityWitness { outer, inner }
        }
        (Space::Ordinal(o), PointId::Ordinal(d)) => {
            let below = crate::space::OrdinalSet::half_open(Ordinal::zero(), d.clone());
            let inner = SubsetHandle::Ordinals(o.carrier().intersection(&below));
            VisibilityWitness {
                outer: inner.union(&point),
                inner,
            }
        }
        _ => {
            return Err(
                SpaceError::Unsupported("visibility needs a finite or ordinal space").into(),
            )
        }
    };
    if witness == space.visibility_witness(x)? {
        return Ok(None);
    }
    space.check_witness(x, &witness)?;
    Ok(Some(witness))
}

/// Level-0 points whose singleton is not Thomason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroStageReport {
    pub offending: SubsetHandle,
}

impl ZeroStageReport {
    pub fn passes(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Checks that every `x` with `dim x = 0` has Thomason `{x}`, so that the
/// base of a filtration is a disjoint union of points.
pub fn zero_stage_check(assignment: &DimensionAssignment) -> Result<ZeroStageReport, LtgError> {
    let space = assignment.space();
    let level0 = assignment.sublevel(&Ordinal::zero());
    let offending = match (space, &level0) {
        (Space::Finite(_), SubsetHandle::Explicit(points)) => {
            let mut bad = PointSet::new();
            for &i in points {
                if !space.is_thomason(&space.singleton(&PointId::Index(i))?)? {
                    bad.insert(i);
                }
            }
            SubsetHandle::Explicit(bad)
        }
        // {x} is open in the carrier exactly when x is isolated
        (Space::Ordinal(_), _) => level0.difference(&space.isolated_points()?),
        _ => return Err(SpaceError::Unsupported("zero-stage check on the Cantor marker").into()),
    };
    Ok(ZeroStageReport { offending })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    Base,
    Successor,
    Limit,
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageKind::Base => "base",
            StageKind::Successor => "successor",
            StageKind::Limit => "limit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub value: Ordinal,
    pub kind: StageKind,
    /// `supp ∩ X_{≤value}`.
    pub cumulative: SubsetHandle,
    pub delta: SubsetHandle,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FiltrationOptions {
    /// Omit limit stages (they never add points).
    pub compact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationTrace {
    pub kind: DimensionKind,
    pub stages: Vec<Stage>,
    pub terminal: bool,
}

impl FiltrationTrace {
    pub fn total(&self) -> Option<&SubsetHandle> {
        self.stages.last().map(|s| &s.cumulative)
    }

    pub fn render(&self, space: &Space) -> String {
        let mut out = String::new();
        for s in &self.stages {
            let _ = writeln!(
                out,
                "stage {} {} delta={} cum={}",
                s.value,
                s.kind,
                space.format_subset(&s.delta),
                space.format_subset(&s.cumulative)
            );
        }
        if let Some(total) = self.total() {
            let _ = writeln!(out, "total={}", space.format_subset(total));
        }
        out
    }
}

/// Builds the filtration of `datum` along the sublevel sets of the chosen
/// dimension function, certifying each successor delta on the slice above
/// the previous stage.
pub fn filtration(
    datum: &SupportDatum,
    kind: DimensionKind,
    opts: FiltrationOptions,
) -> Result<FiltrationTrace, LtgError> {
    let space = &datum.space;
    let assignment = kind.compute(space)?;
    let zero = zero_stage_check(&assignment)?;
    if !zero.passes() {
        return Err(LtgError::ZeroStage(space.format_subset(&zero.offending)));
    }
    let empty = space.empty()?;
    let mut stages: Vec<Stage> = Vec::new();
    let mut cumulative = empty.clone();
    let mut previous: Option<Ordinal> = None;
    for (value, stratum) in assignment.strata() {
        if cumulative == datum.supp && !stages.is_empty() {
            break;
        }
        let delta = datum.supp.intersection(stratum);
        let kind_here = match &previous {
            None => StageKind::Base,
            Some(prev) => {
                let pred = value.pred().expect("dimension values are successors");
                if pred.is_limit() && &pred != prev && !opts.compact {
                    stages.push(Stage {
                        value: pred,
                        kind: StageKind::Limit,
                        cumulative: cumulative.clone(),
                        delta: empty.clone(),
                    });
                }
                certify_slice(&assignment, kind, prev, value, &datum.supp, &delta)?;
                StageKind::Successor
            }
        };
        cumulative = cumulative.union(&delta);
        stages.push(Stage {
            value: value.clone(),
            kind: kind_here,
            cumulative: cumulative.clone(),
            delta,
        });
        previous = Some(value.clone());
    }
    if stages.is_empty() {
        stages.push(Stage {
            value: Ordinal::zero(),
            kind: StageKind::Base,
            cumulative: empty.clone(),
            delta: empty,
        });
    }
    let terminal = cumulative == datum.supp;
    Ok(FiltrationTrace {
        kind,
        stages,
        terminal,
    })
}

/// `x ∈ delta ⟺ dim_{X>prev}(x) = 0` for `x ∈ supp ∩ X_{>prev}`.
fn certify_slice(
    assignment: &DimensionAssignment,
    kind: DimensionKind,
    prev: &Ordinal,
    value: &Ordinal,
    supp: &SubsetHandle,
    delta: &SubsetHandle,
) -> Result<(), LtgError> {
    let space = assignment.space();
    let slice = assignment.superlevel(prev);
    let view = space.subspace(&slice)?;
    let local = kind.compute(view.space())?;
    let bottom = view.push_forward(&local.stratum(&Ordinal::zero()));
    let certified = supp.intersection(&bottom);
    if &certified != delta {
        return Err(LtgError::CompatibilityViolation(format!(
            "stage {value}: delta {} but dimension 0 on slice >{prev} gives {}",
            space.format_subset(delta),
            space.format_subset(&certified)
        )));
    }
    Ok(())
}

/// All specialisation-closed subsets, ordered by size and then by their
/// sorted point indices.
pub fn thomason_ideals(space: &FiniteSpace) -> Result<Vec<SubsetHandle>, LtgError> {
    let n = space.len();
    if n > MAX_ENUMERATION_POINTS {
        return Err(LtgError::TooLarge(n));
    }
    // closed points first, so a point is decided after everything below it
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| space.specialises(x, y)).count());
    let below: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x && space.specialises(x, y))
                .collect()
        })
        .collect();

    fn walk(
        k: usize,
        order: &[usize],
        below: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        out: &mut Vec<PointSet>,
    ) {
        if k == order.len() {
            out.push((0..chosen.len()).filter(|&i| chosen[i]).collect());
            return;
        }
        let x = order[k];
        walk(k + 1, order, below, chosen, out);
        if below[x].iter().all(|&y| chosen[y]) {
            chosen[x] = true;
            walk(k + 1, order, below, chosen, out);
            chosen[x] = false;
        }
    }

    let mut out = Vec::new();
    walk(0, &order, &below, &mut vec![false; n], &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(out.into_iter().map(SubsetHandle::Explicit).collect())
}
