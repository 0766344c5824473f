//! Spectral spaces in three concrete forms: finite T0 spaces, ordinal
//! spaces `[0, α]` (and their closed subspaces), and a symbolic Cantor space.
//!
//! The predicates use the standard characterisations for each form. In a
//! finite space every subset is proconstructible, the quasi-compact opens are
//! the generization-closed sets and the Thomason sets are the
//! specialisation-closed ones. An ordinal space is compact Hausdorff and
//! carries the constructible topology: quasi-compact opens are the clopens,
//! Thomason subsets are the open sets and proconstructible subsets the closed
//! ones.

pub(crate) mod finite;
mod io;
mod ordset;

use std::fmt;

use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalError};

pub use finite::{FiniteSpace, PointSet};
pub use ordset::{level, OrdinalSet, Piece, MAX_LEVEL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("ParseError at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("LiteralError at column {column}: {message}")]
    Literal { column: usize, message: String },
    #[error("CyclicSpecialisation: {0} and {1} specialise to each other")]
    CyclicSpecialisation(String, String),
    #[error("PointOutOfRange: {0} is not a point of the space")]
    PointOutOfRange(String),
    #[error("Unsupported: {0}")]
    Unsupported(&'static str),
    #[error("NotProconstructible: {0} is not closed in the constructible topology")]
    NotProconstructible(String),
    #[error("NotVisible: {0}")]
    NotVisible(String),
    #[error("Unrepresentable: {0}")]
    Unrepresentable(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

impl SpaceError {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceError::Parse { .. } => "ParseError",
            SpaceError::Literal { .. } => "LiteralError",
            SpaceError::CyclicSpecialisation(..) => "CyclicSpecialisation",
            SpaceError::PointOutOfRange(_) => "PointOutOfRange",
            SpaceError::Unsupported(_) => "Unsupported",
            SpaceError::NotProconstructible(_) => "NotProconstructible",
            SpaceError::NotVisible(_) => "NotVisible",
            SpaceError::Unrepresentable(_) => "Unrepresentable",
            SpaceError::Ordinal(e) => e.name(),
        }
    }
}

const CANTOR: &str = "the Cantor space has no representable subsets";

/// A closed subspace of `[0, top]`; the full interval for a freshly built
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalSpace {
    top: Ordinal,
    carrier: OrdinalSet,
}

impl OrdinalSpace {
    pub fn new(top: Ordinal) -> Result<Self, SpaceError> {
        if top.leading_exponent().unwrap_or(0) > MAX_LEVEL {
            return Err(SpaceError::Unrepresentable(format!(
                "ordinal spaces are limited to tops below w^{}",
                MAX_LEVEL + 1
            )));
        }
        let carrier = OrdinalSet::closed_interval(Ordinal::zero(), top.clone());
        Ok(OrdinalSpace { top, carrier })
    }

    fn with_carrier(top: Ordinal, carrier: OrdinalSet) -> Self {
        OrdinalSpace { top, carrier }
    }

    /// The top of the ambient interval `[0, top]`.
    pub fn top(&self) -> &Ordinal {
        &self.top
    }

    pub fn carrier(&self) -> &OrdinalSet {
        &self.carrier
    }

    pub fn is_full(&self) -> bool {
        self.carrier == OrdinalSet::closed_interval(Ordinal::zero(), self.top.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Finite(FiniteSpace),
    Ordinal(OrdinalSpace),
    Cantor,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointId {
    Index(usize),
    Ordinal(Ordinal),
}

/// A representable subset of a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetHandle {
    Explicit(PointSet),
    Ordinals(OrdinalSet),
}

macro_rules! pairwise {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $explicit:expr, $ordinals:expr) => {
        match ($a, $b) {
            (SubsetHandle::Explicit($x), SubsetHandle::Explicit($y)) => $explicit,
            (SubsetHandle::Ordinals($x), SubsetHandle::Ordinals($y)) => $ordinals,
            _ => panic!("subset handles from different kinds of space"),
        }
    };
}

impl SubsetHandle {
    pub fn union(&self, other: &SubsetHandle) -> SubsetHandle {
        pairwise!(
            self,
            other,
            |a, b| SubsetHandle::Explicit(a | b),
            SubsetHandle::Ordinals(a.union(b))
        )
    }

    pub fn intersection(&self, other: &SubsetHandle) -> SubsetHandle {
        pairwise!(
            self,
            other,
            |a, b| SubsetHandle::Explicit(a & b),
            SubsetHandle::Ordinals(a.intersection(b))
        )
    }

    pub fn difference(&self, other: &SubsetHandle) -> SubsetHandle {
        pairwise!(
            self,
            other,
            |a, b| SubsetHandle::Explicit(a - b),
            SubsetHandle::Ordinals(a.difference(b))
        )
    }

    pub fn is_subset(&self, other: &SubsetHandle) -> bool {
        pairwise!(self, other, |a, b| a.is_subset(b), a.is_subset(b))
    }

    pub fn is_disjoint(&self, other: &SubsetHandle) -> bool {
        pairwise!(self, other, |a, b| a.is_disjoint(b), a.is_disjoint(b))
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SubsetHandle::Explicit(s) => s.is_empty(),
            SubsetHandle::Ordinals(s) => s.is_empty(),
        }
    }

    pub fn contains(&self, x: &PointId) -> bool {
        match (self, x) {
            (SubsetHandle::Explicit(s), PointId::Index(i)) => s.contains(i),
            (SubsetHandle::Ordinals(s), PointId::Ordinal(d)) => s.contains(d),
            _ => false,
        }
    }

    /// Empty handle of the same kind.
    pub fn cleared(&self) -> SubsetHandle {
        match self {
            SubsetHandle::Explicit(_) => SubsetHandle::Explicit(PointSet::new()),
            SubsetHandle::Ordinals(_) => SubsetHandle::Ordinals(OrdinalSet::empty()),
        }
    }
}

/// A pair of Thomason subsets cutting out one point:
/// `{x} = outer ∖ (outer ∩ inner)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityWitness {
    pub outer: SubsetHandle,
    pub inner: SubsetHandle,
}

impl Space {
    pub fn finite(space: FiniteSpace) -> Self {
        Space::Finite(space)
    }

    pub fn ordinal(top: Ordinal) -> Result<Self, SpaceError> {
        OrdinalSpace::new(top).map(Space::Ordinal)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Space::Finite(_) => "finite",
            Space::Ordinal(_) => "ordinal",
            Space::Cantor => "cantor",
        }
    }

    pub fn all(&self) -> Result<SubsetHandle, SpaceError> {
        match self {
            Space::Finite(f) => Ok(SubsetHandle::Explicit(f.all())),
            Space::Ordinal(o) => Ok(SubsetHandle::Ordinals(o.carrier.clone())),
            Space::Cantor => Err(SpaceError::Unsupported(CANTOR)),
        }
    }

    pub fn empty(&self) -> Result<SubsetHandle, SpaceError> {
        match self {
            Space::Finite(_) => Ok(SubsetHandle::Explicit(PointSet::new())),
            Space::Ordinal(_) => Ok(SubsetHandle::Ordinals(OrdinalSet::empty())),
            Space::Cantor => Err(SpaceError::Unsupported(CANTOR)),
        }
    }

    pub fn singleton(&self, x: &PointId) -> Result<SubsetHandle, SpaceError> {
        self.check_point(x)?;
        Ok(match x {
            PointId::Index(i) => SubsetHandle::Explicit([*i].into()),
            PointId::Ordinal(d) => SubsetHandle::Ordinals(OrdinalSet::singleton(d.clone())),
        })
    }

    pub fn complement(&self, s: &SubsetHandle) -> Result<SubsetHandle, SpaceError> {
        Ok(self.all()?.difference(s))
    }

    pub fn check_point(&self, x: &PointId) -> Result<(), SpaceError> {
        let ok = match (self, x) {
            (Space::Finite(f), PointId::Index(i)) => *i < f.len(),
            (Space::Ordinal(o), PointId::Ordinal(d)) => o.carrier.contains(d),
            (Space::Cantor, _) => return Err(SpaceError::Unsupported(CANTOR)),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(SpaceError::PointOutOfRange(self.format_point(x)))
        }
    }

    pub fn check_subset(&self, s: &SubsetHandle) -> Result<(), SpaceError> {
        let ok = match (self, s) {
            (Space::Finite(f), SubsetHandle::Explicit(p)) => p.iter().all(|&i| i < f.len()),
            (Space::Ordinal(o), SubsetHandle::Ordinals(p)) => p.is_subset(&o.carrier),
            (Space::Cantor, _) => return Err(SpaceError::Unsupported(CANTOR)),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(SpaceError::PointOutOfRange(self.format_subset(s)))
        }
    }

    /// Points of a finite space, in index order.
    pub fn finite_points(&self) -> Option<Vec<PointId>> {
        match self {
            Space::Finite(f) => Some((0..f.len()).map(PointId::Index).collect()),
            _ => None,
        }
    }

    pub fn closure(&self, s: &SubsetHandle) -> Result<SubsetHandle, SpaceError> {
        self.check_subset(s)?;
        Ok(match (self, s) {
            (Space::Finite(f), SubsetHandle::Explicit(p)) => SubsetHandle::Explicit(f.closure(p)),
            (_, SubsetHandle::Ordinals(p)) => SubsetHandle::Ordinals(p.closure()),
            _ => unreachable!(),
        })
    }

    /// `Z(x)`: the points that do not specialise to `x`.
    pub fn z_set(&self, x: &PointId) -> Result<SubsetHandle, SpaceError> {
        self.check_point(x)?;
        Ok(match (self, x) {
            (Space::Finite(f), PointId::Index(x)) => {
                SubsetHandle::Explicit((0..f.len()).filter(|&y| !f.specialises(y, *x)).collect())
            }
            (Space::Ordinal(o), PointId::Ordinal(d)) => {
                SubsetHandle::Ordinals(o.carrier.difference(&OrdinalSet::singleton(d.clone())))
            }
            _ => unreachable!(),
        })
    }

    pub fn is_open(&self, s: &SubsetHandle) -> Result<bool, SpaceError> {
        self.check_subset(s)?;
        Ok(match (self, s) {
            (Space::Finite(f), SubsetHandle::Explicit(p)) => f.is_generization_closed(p),
            (Space::Ordinal(o), SubsetHandle::Ordinals(p)) => p.is_open_in(&o.carrier),
            _ => unreachable!(),
        })
    }

    pub fn is_closed(&self, s: &SubsetHandle) -> Result<bool, SpaceError> {
        self.check_subset(s)?;
        Ok(match (self, s) {
            (Space::Finite(f), SubsetHandle::Explicit(p)) => f.is_specialisation_closed(p),
            (Space::Ordinal(_), SubsetHandle::Ordinals(p)) => p.is_closed(),
            _ => unreachable!(),
        })
    }

    pub fn is_quasi_compact_open(&self, s: &SubsetHandle) -> Result<bool, SpaceError> {
        match self {
            Space::Finite(_) => self.is_open(s),
            // compact Hausdorff: quasi-compact opens are the clopens
            Space::Ordinal(_) => Ok(self.is_open(s)? && self.is_closed(s)?),
            Space::Cantor => Err(SpaceError::Unsupported(CANTOR)),
        }
    }

    pub fn is_thomason(&self, s: &SubsetHandle) -> Result<bool, SpaceError> {
        match self {
            Space::Finite(_) => self.is_closed(s),
            Space::Ordinal(_) => self.is_open(s),
            Space::Cantor => Err(SpaceError::Unsupported(CANTOR)),
        }
    }

    pub fn is_proconstructible(&self, s: &SubsetHandle) -> Result<bool, SpaceError> {
        match self {
            Space::Finite(_) => self.check_subset(s).map(|_| true),
            Space::Ordinal(_) => self.is_closed(s),
            Space::Cantor => Err(SpaceError::Unsupported(CANTOR)),
        }
    }

    /// `X = X^con`.
    pub fn constructible_check(&self) -> bool {
        match self {
            Space::Finite(f) => f.is_discrete(),
            Space::Ordinal(_) | Space::Cantor => true,
        }
    }

    /// Points whose singleton is open.
    pub fn isolated_points(&self) -> Result<SubsetHandle, SpaceError> {
        match self {
            Space::Finite(f) => Ok(SubsetHandle::Explicit(
                (0..f.len()).filter(|&x| f.is_open_point(x)).collect(),
            )),
            Space::Ordinal(o) => Ok(SubsetHandle::Ordinals(o.carrier.isolated_points())),
            Space::Cantor => Err(SpaceError::Unsupported(CANTOR)),
        }
    }

    pub fn subspace(&self, s: &SubsetHandle) -> Result<SpaceView, SpaceError> {
        if !self.is_proconstructible(s)? {
            return Err(SpaceError::NotProconstructible(self.format_subset(s)));
        }
        Ok(match (self, s) {
            (Space::Finite(f), SubsetHandle::Explicit(p)) => {
                let (sub, embedding) = f.induced(p);
                SpaceView {
                    base: self.clone(),
                    subset: s.clone(),
                    space: Space::Finite(sub),
                    embedding,
                    recoordinatization: None,
                }
            }
            (Space::Ordinal(o), SubsetHandle::Ordinals(p)) => SpaceView {
                base: self.clone(),
                subset: s.clone(),
                space: Space::Ordinal(OrdinalSpace::with_carrier(o.top.clone(), p.clone())),
                embedding: Vec::new(),
                recoordinatization: Recoordinatization::of(p),
            },
            _ => unreachable!(),
        })
    }

    /// A pair of Thomason subsets isolating `x`: `(V(x), Z(x))` in a finite
    /// space, `(X, X ∖ {x})` in an ordinal space.
    pub fn visibility_witness(&self, x: &PointId) -> Result<VisibilityWitness, SpaceError> {
        self.check_point(x)?;
        let outer = match (self, x) {
            (Space::Finite(f), PointId::Index(i)) => {
                SubsetHandle::Explicit(f.closure(&[*i].into()))
            }
            _ => self.all()?,
        };
        let witness = VisibilityWitness {
            outer,
            inner: self.z_set(x)?,
        };
        self.check_witness(x, &witness)?;
        Ok(witness)
    }

    /// Checks that `witness` is a pair of Thomason subsets cutting out `x`.
    pub fn check_witness(
        &self,
        x: &PointId,
        witness: &VisibilityWitness,
    ) -> Result<(), SpaceError> {
        let cut = witness.outer.difference(&witness.inner);
        if !self.is_thomason(&witness.outer)? || !self.is_thomason(&witness.inner)? {
            return Err(SpaceError::NotVisible(format!(
                "witness for {} is not a Thomason pair",
                self.format_point(x)
            )));
        }
        if cut != self.singleton(x)? {
            return Err(SpaceError::NotVisible(format!(
                "witness for {} cuts out {}",
                self.format_point(x),
                self.format_subset(&cut)
            )));
        }
        Ok(())
    }

    pub fn format_point(&self, x: &PointId) -> String {
        match (self, x) {
            (Space::Finite(f), PointId::Index(i)) if *i < f.len() => f.name(*i).to_string(),
            (_, PointId::Index(i)) => format!("#{i}"),
            (_, PointId::Ordinal(d)) => d.to_string(),
        }
    }

    /// Canonical literal: `{a,b}` sorted by name for finite spaces, the
    /// interval form for ordinal spaces.
    pub fn format_subset(&self, s: &SubsetHandle) -> String {
        match s {
            SubsetHandle::Explicit(p) => {
                let mut names: Vec<String> = p
                    .iter()
                    .map(|&i| self.format_point(&PointId::Index(i)))
                    .collect();
                names.sort();
                format!("{{{}}}", names.join(","))
            }
            SubsetHandle::Ordinals(o) => o.to_string(),
        }
    }

    pub fn parse_point(&self, text: &str) -> Result<PointId, SpaceError> {
        let x = match self {
            Space::Finite(f) => PointId::Index(
                f.index_of(text.trim())
                    .ok_or_else(|| SpaceError::PointOutOfRange(text.trim().to_string()))?,
            ),
            Space::Ordinal(_) => PointId::Ordinal(text.parse()?),
            Space::Cantor => return Err(SpaceError::Unsupported(CANTOR)),
        };
        self.check_point(&x)?;
        Ok(x)
    }

    /// Parses a subset literal; `all` names the whole space.
    pub fn parse_subset(&self, text: &str) -> Result<SubsetHandle, SpaceError> {
        let text = text.trim();
        if text == "all" {
            return self.all();
        }
        let s = match self {
            Space::Finite(f) => SubsetHandle::Explicit(io::parse_finite_subset(f, text)?),
            Space::Ordinal(o) => {
                SubsetHandle::Ordinals(io::parse_ordinal_subset(text, &o.carrier)?)
            }
            Space::Cantor => return Err(SpaceError::Unsupported(CANTOR)),
        };
        self.check_subset(&s)?;
        Ok(s)
    }

    /// Reads the line-oriented space file format.
    pub fn from_text(text: &str) -> Result<Space, SpaceError> {
        io::parse_space(text)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Finite(s) => write!(f, "finite space with {} points", s.len()),
            Space::Ordinal(o) if o.is_full() => write!(f, "ordinal space [0,{}]", o.top),
            Space::Ordinal(o) => write!(f, "ordinal subspace {}", o.carrier),
            Space::Cantor => f.write_str("cantor space"),
        }
    }
}

/// Identifies a closed set of ordinals all divisible by `ω^scale` with its
/// image under division by `ω^scale`, a closed subspace of a fresh ordinal
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recoordinatization {
    pub scale: u32,
    pub image: OrdinalSpace,
}

impl Recoordinatization {
    fn of(carrier: &OrdinalSet) -> Option<Self> {
        let scale = carrier.omega_divisibility();
        if scale == 0 || carrier.is_empty() {
            return None;
        }
        let image = carrier.scale_down(scale)?;
        let top = image.max_point()?;
        Some(Recoordinatization {
            scale,
            image: OrdinalSpace::with_carrier(top, image),
        })
    }

    pub fn to_image(&self, d: &Ordinal) -> Ordinal {
        d.div_rem_omega_pow(self.scale).0
    }

    pub fn from_image(&self, d: &Ordinal) -> Result<Ordinal, OrdinalError> {
        d.mul_omega_pow(self.scale)
    }

    pub fn set_from_image(&self, s: &OrdinalSet) -> Result<OrdinalSet, OrdinalError> {
        s.scale_up(self.scale)
    }
}

/// A proconstructible subset viewed as a spectral space in its own right.
#[derive(Clone, Debug)]
pub struct SpaceView {
    base: Space,
    subset: SubsetHandle,
    space: Space,
    // view index -> base index, finite views only
    embedding: Vec<usize>,
    recoordinatization: Option<Recoordinatization>,
}

impl SpaceView {
    pub fn base(&self) -> &Space {
        &self.base
    }

    pub fn subset(&self) -> &SubsetHandle {
        &self.subset
    }

    /// The subspace as a space (finite views are re-indexed).
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn into_space(self) -> Space {
        self.space
    }

    pub fn recoordinatization(&self) -> Option<&Recoordinatization> {
        self.recoordinatization.as_ref()
    }

    pub fn point_to_base(&self, x: &PointId) -> PointId {
        match x {
            PointId::Index(i) => PointId::Index(self.embedding[*i]),
            PointId::Ordinal(_) => x.clone(),
        }
    }

    pub fn point_from_base(&self, x: &PointId) -> Option<PointId> {
        if !self.subset.contains(x) {
            return None;
        }
        Some(match x {
            PointId::Index(i) => PointId::Index(self.embedding.binary_search(i).ok()?),
            PointId::Ordinal(_) => x.clone(),
        })
    }

    /// Preimage of a base subset under the inclusion.
    pub fn pull_back(&self, s: &SubsetHandle) -> SubsetHandle {
        match s {
            SubsetHandle::Explicit(p) => SubsetHandle::Explicit(
                self.embedding
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| p.contains(b))
                    .map(|(i, _)| i)
                    .collect(),
            ),
            SubsetHandle::Ordinals(_) => s.intersection(&self.subset),
        }
    }

    /// Image of a view subset under the inclusion.
    pub fn push_forward(&self, s: &SubsetHandle) -> SubsetHandle {
        match s {
            SubsetHandle::Explicit(p) => {
                SubsetHandle::Explicit(p.iter().map(|&i| self.embedding[i]).collect())
            }
            SubsetHandle::Ordinals(_) => s.clone(),
        }
    }
}
