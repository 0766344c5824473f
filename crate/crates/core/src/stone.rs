//! Absolutely flat rings through their Boolean presentations.
//!
//! A presentation stands in for the ring: a finite product of fields, the
//! clopen algebra of an ordinal interval, or an atomless algebra (whose
//! Stone space is the Cantor set). The spectrum always carries the
//! constructible topology, and the ring is semi-artinian exactly when the
//! spectrum has a Cantor–Bendixson rank.
//!
//! For a finite product of `k` fields, complexes split into their `k`
//! components, so an object is recorded by graded dimensions per component.
//! This makes the subset/localising-subcategory correspondence
//! `σ(L) = {P | k(P) ⊗ L ≠ 0}`, `τ(W) = Loc(k(P) | P ∈ W)` computable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dimfn::cbrank;
use crate::ordinal::Ordinal;
use crate::space::{FiniteSpace, PointSet, Space, SpaceError, SubsetHandle};

/// Largest product of fields [`roundtrip_check`] enumerates.
pub const MAX_ROUNDTRIP_FIELDS: usize = 12;
/// Up to this many fields order preservation is checked on all pairs.
pub const EXHAUSTIVE_ORDER_FIELDS: usize = 5;
/// Random generator families per round trip.
pub const RANDOM_FAMILIES: usize = 100;
const SEED: u64 = 0x5eed_0ff1_e1d5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoneError {
    #[error("Presentation: {0}")]
    Presentation(String),
    #[error("ParseError at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("NotProductOfFields: objects are modelled for finite products of fields only")]
    NotProductOfFields,
    #[error("ComponentOutOfRange: object `{object}` uses component {component} of {fields}")]
    ComponentOutOfRange {
        object: String,
        component: usize,
        fields: usize,
    },
    #[error("TooLarge: {0} fields (limit {MAX_ROUNDTRIP_FIELDS})")]
    TooLarge(usize),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

impl StoneError {
    pub fn name(&self) -> &'static str {
        match self {
            StoneError::Presentation(_) => "Presentation",
            StoneError::Parse { .. } => "ParseError",
            StoneError::NotProductOfFields => "NotProductOfFields",
            StoneError::ComponentOutOfRange { .. } => "ComponentOutOfRange",
            StoneError::TooLarge(_) => "TooLarge",
            StoneError::Space(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanPresentation {
    /// `k ≥ 1` named fields.
    ProductOfFields(Vec<String>),
    /// Clopen algebra of `[0, top]`.
    IntervalAlgebra(Ordinal),
    Atomless,
}

impl BooleanPresentation {
    pub fn fields(k: usize) -> Result<Self, StoneError> {
        if k == 0 {
            return Err(StoneError::Presentation(
                "a product needs at least one field".into(),
            ));
        }
        Ok(BooleanPresentation::ProductOfFields(
            (0..k).map(|i| format!("k{i}")).collect(),
        ))
    }

    /// Number of factors of a product of fields.
    pub fn field_count(&self) -> Result<usize, StoneError> {
        match self {
            BooleanPresentation::ProductOfFields(names) => Ok(names.len()),
            _ => Err(StoneError::NotProductOfFields),
        }
    }
}

impl FromStr for BooleanPresentation {
    type Err = StoneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "atomless" {
            return Ok(BooleanPresentation::Atomless);
        }
        if let Some(k) = s.strip_prefix("fields:") {
            let k: usize = k
                .parse()
                .map_err(|_| StoneError::Presentation(format!("bad field count `{k}`")))?;
            return Self::fields(k);
        }
        if let Some(top) = s.strip_prefix("interval:") {
            let top: Ordinal = top
                .parse()
                .map_err(|e| StoneError::Presentation(format!("{e}")))?;
            return Ok(BooleanPresentation::IntervalAlgebra(top));
        }
        Err(StoneError::Presentation(format!(
            "unknown presentation `{s}` (expected fields:<k>, interval:<ordinal> or atomless)"
        )))
    }
}

impl fmt::Display for BooleanPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BooleanPresentation::ProductOfFields(n) => write!(f, "fields:{}", n.len()),
            BooleanPresentation::IntervalAlgebra(top) => write!(f, "interval:{top}"),
            BooleanPresentation::Atomless => f.write_str("atomless"),
        }
    }
}

/// The Stone space: `k` discrete points named `0..k`, `[0, top]`, or the
/// Cantor marker.
pub fn spec_of(p: &BooleanPresentation) -> Result<Space, StoneError> {
    Ok(match p {
        BooleanPresentation::ProductOfFields(names) => {
            let labels = (0..names.len()).map(|i| i.to_string()).collect();
            Space::Finite(FiniteSpace::new(labels, &[])?)
        }
        BooleanPresentation::IntervalAlgebra(top) => Space::ordinal(top.clone())?,
        BooleanPresentation::Atomless => Space::Cantor,
    })
}

/// Decided by the presentation tag; [`semi_artinian_by_rank`] is the
/// independent route through the rank computation.
pub fn is_semi_artinian(p: &BooleanPresentation) -> bool {
    !matches!(p, BooleanPresentation::Atomless)
}

pub fn semi_artinian_by_rank(p: &BooleanPresentation) -> Result<bool, StoneError> {
    Ok(cbrank(&spec_of(p)?).is_ok())
}

/// Graded dimensions of a complex over a product of fields, per component.
/// Only nonzero dimensions are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedObject {
    pub name: String,
    dims: BTreeMap<usize, BTreeMap<i64, u64>>,
}

impl GradedObject {
    pub fn zero(name: impl Into<String>) -> Self {
        GradedObject {
            name: name.into(),
            dims: BTreeMap::new(),
        }
    }

    /// The residue field `k(P)`: dimension 1 in degree 0 at component `P`.
    pub fn stalk(component: usize) -> Self {
        let mut a = Self::zero(format!("k({component})"));
        a.set(component, 0, 1);
        a
    }

    pub fn set(&mut self, component: usize, degree: i64, dim: u64) {
        let comp = self.dims.entry(component).or_default();
        if dim == 0 {
            comp.remove(&degree);
        } else {
            comp.insert(degree, dim);
        }
        if comp.is_empty() {
            self.dims.remove(&component);
        }
    }

    pub fn dim(&self, component: usize, degree: i64) -> u64 {
        self.dims
            .get(&component)
            .and_then(|c| c.get(&degree))
            .copied()
            .unwrap_or(0)
    }

    /// Components with nonzero total dimension.
    pub fn components(&self) -> impl Iterator<Item = usize> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }
}

/// Reads `obj <name>` headers, each followed by `dim <component> <degree>
/// <dimension>` lines; `#` starts a comment.
pub fn parse_objects(text: &str) -> Result<Vec<GradedObject>, StoneError> {
    let mut objects: Vec<GradedObject> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| StoneError::Parse {
            line: i + 1,
            message,
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["obj", name] => objects.push(GradedObject::zero(*name)),
            ["dim", c, d, n] => {
                let obj = objects
                    .last_mut()
                    .ok_or_else(|| err("`dim` before any `obj`".into()))?;
                let c: usize = c.parse().map_err(|_| err(format!("bad component `{c}`")))?;
                let d: i64 = d.parse().map_err(|_| err(format!("bad degree `{d}`")))?;
                let n: u64 = n.parse().map_err(|_| err(format!("bad dimension `{n}`")))?;
                if obj.dim(c, d) != 0 {
                    return Err(err(format!("component {c} degree {d} given twice")));
                }
                obj.set(c, d, n);
            }
            _ => return Err(err(format!("unrecognised line `{line}`"))),
        }
    }
    Ok(objects)
}

fn check_object(k: usize, a: &GradedObject) -> Result<(), StoneError> {
    match a.components().find(|&c| c >= k) {
        Some(component) => Err(StoneError::ComponentOutOfRange {
            object: a.name.clone(),
            component,
            fields: k,
        }),
        None => Ok(()),
    }
}

/// `{P | k(P) ⊗ A ≠ 0}`: the components where `A` is nonzero.
pub fn object_support(
    p: &BooleanPresentation,
    a: &GradedObject,
) -> Result<SubsetHandle, StoneError> {
    let k = p.field_count()?;
    check_object(k, a)?;
    Ok(SubsetHandle::Explicit(a.components().collect()))
}

/// `A ∈ τ(W)`: `A` is supported in `W`.
pub fn tau_membership(
    p: &BooleanPresentation,
    w: &SubsetHandle,
    a: &GradedObject,
) -> Result<bool, StoneError> {
    Ok(object_support(p, a)?.is_subset(w))
}

/// `σ(Loc(G))`: the union of the supports of the generators.
pub fn sigma(
    p: &BooleanPresentation,
    generators: &[GradedObject],
) -> Result<SubsetHandle, StoneError> {
    let mut acc = SubsetHandle::Explicit(PointSet::new());
    for g in generators {
        acc = acc.union(&object_support(p, g)?);
    }
    Ok(acc)
}

/// Membership in `Loc(G)` decided without supports: every nonzero component
/// of `A` must be hit by some generator in some degree (the shifts and sums
/// of that generator's component then build it).
pub fn generated_by(generators: &[GradedObject], a: &GradedObject) -> bool {
    a.components().all(|c| {
        generators
            .iter()
            .any(|g| g.dims.get(&c).is_some_and(|m| m.values().any(|&n| n > 0)))
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoundtripReport {
    pub fields: usize,
    pub subsets: usize,
    pub subsets_passed: usize,
    pub families: usize,
    pub order_pairs: usize,
    pub counterexamples: Vec<String>,
}

impl RoundtripReport {
    pub fn passes(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{} {}/{} subsets\n",
            if self.passes() { "PASS" } else { "FAIL" },
            self.subsets_passed,
            self.subsets
        );
        for c in &self.counterexamples {
            out.push_str(c);
            out.push('\n');
        }
        out
    }
}

fn subset_of(mask: u32, k: usize) -> SubsetHandle {
    SubsetHandle::Explicit((0..k).filter(|&i| mask >> i & 1 == 1).collect())
}

fn random_object(rng: &mut ChaCha8Rng, k: usize, name: String) -> GradedObject {
    let mut a = GradedObject::zero(name);
    for c in 0..k {
        if rng.random_bool(0.3) {
            let degree = rng.random_range(-3..=3);
            a.set(c, degree, rng.random_range(1..=3));
        }
    }
    a
}

/// Checks the subset/subcategory correspondence for a product of `k ≤ 12`
/// fields:
///
/// * `σ(τ(W)) = W` for every `W`, with `τ(W)` generated by its stalks;
/// * for random families `G`, every generator lies in `τ(σ(G))`, and
///   membership in `τ(σ(G))` agrees with direct generation by `G`;
/// * `τ` and `σ` preserve inclusions (all pairs for `k ≤ 5`, sampled above).
pub fn roundtrip_check(p: &BooleanPresentation) -> Result<RoundtripReport, StoneError> {
    let k = p.field_count()?;
    if k > MAX_ROUNDTRIP_FIELDS {
        return Err(StoneError::TooLarge(k));
    }
    let space = spec_of(p)?;
    let mut report = RoundtripReport {
        fields: k,
        subsets: 1 << k,
        ..Default::default()
    };
    let stalks: Vec<GradedObject> = (0..k).map(GradedObject::stalk).collect();

    for mask in 0..1u32 << k {
        let w = subset_of(mask, k);
        let generators: Vec<GradedObject> = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| stalks[i].clone())
            .collect();
        let back = sigma(p, &generators)?;
        let stalks_ok = stalks
            .iter()
            .enumerate()
            .all(|(i, s)| tau_membership(p, &w, s) == Ok(mask >> i & 1 == 1));
        if back == w && stalks_ok {
            report.subsets_passed += 1;
        } else {
            report.counterexamples.push(format!(
                "sigma(tau({})) = {}",
                space.format_subset(&w),
                space.format_subset(&back)
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ k as u64);
    for f in 0..RANDOM_FAMILIES {
        let size = rng.random_range(0..=4);
        let family: Vec<GradedObject> = (0..size)
            .map(|j| random_object(&mut rng, k, format!("g{f}.{j}")))
            .collect();
        let s = sigma(p, &family)?;
        for g in &family {
            if !tau_membership(p, &s, g)? {
                report
                    .counterexamples
                    .push(format!("generator {} not in tau(sigma(G))", g.name));
            }
        }
        for t in 0..8 {
            let probe = random_object(&mut rng, k, format!("a{f}.{t}"));
            if tau_membership(p, &s, &probe)? != generated_by(&family, &probe) {
                report.counterexamples.push(format!(
                    "object {} membership disagrees with generation in family {f}",
                    probe.name
                ));
            }
        }
        // σ is monotone on a random sub-family
        let sub: Vec<GradedObject> = family
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .cloned()
            .collect();
        if !sigma(p, &sub)?.is_subset(&s) {
            report
                .counterexamples
                .push(format!("sigma not monotone on family {f}"));
        }
        report.families += 1;
    }

    // τ(W) ⊆ τ(W') for W ⊆ W', tested on probes with every possible support
    let full = (1u32 << k) - 1;
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    if k <= EXHAUSTIVE_ORDER_FIELDS {
        for w in 0..=full {
            let mut sup = w;
            loop {
                pairs.push((w, sup));
                if sup == full {
                    break;
                }
                sup = (sup + 1) | w;
            }
        }
    } else {
        for _ in 0..200 {
            let w = rng.random_range(0..=full);
            pairs.push((w, w | rng.random_range(0..=full)));
        }
    }
    let probes: Vec<u32> = if k <= EXHAUSTIVE_ORDER_FIELDS {
        (0..=full).collect()
    } else {
        (0..64).map(|_| rng.random_range(0..=full)).collect()
    };
    for &(w, sup) in &pairs {
        let (small, large) = (subset_of(w, k), subset_of(sup, k));
        for &u in &probes {
            let mut probe = GradedObject::zero(format!("probe{u}"));
            for c in (0..k).filter(|&c| u >> c & 1 == 1) {
                probe.set(c, 0, 1);
            }
            if tau_membership(p, &small, &probe)? && !tau_membership(p, &large, &probe)? {
                report.counterexamples.push(format!(
                    "tau not monotone: {} in tau({}) but not tau({})",
                    probe.name,
                    space.format_subset(&small),
                    space.format_subset(&large)
                ));
            }
        }
        report.order_pairs += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields(k: usize) -> BooleanPresentation {
        BooleanPresentation::fields(k).unwrap()
    }

    fn set(v: &[usize]) -> SubsetHandle {
        SubsetHandle::Explicit(v.iter().copied().collect())
    }

    #[test]
    fn presentations() {
        assert_eq!(
            "fields:3".parse::<BooleanPresentation>().unwrap(),
            fields(3)
        );
        assert!("fields:0".parse::<BooleanPresentation>().is_err());
        assert!("ring:3".parse::<BooleanPresentation>().is_err());
        let p: BooleanPresentation = "interval:w^2".parse().unwrap();
        assert_eq!(p.to_string(), "interval:w^2");
    }

    #[test]
    fn spectra() {
        let Space::Finite(f) = spec_of(&fields(3)).unwrap() else {
            panic!()
        };
        assert!(f.len() == 3 && f.is_discrete());
        let w = spec_of(&"interval:w".parse().unwrap()).unwrap();
        assert_eq!(w, Space::ordinal("w".parse().unwrap()).unwrap());
        assert_eq!(
            spec_of(&BooleanPresentation::Atomless).unwrap(),
            Space::Cantor
        );
        for p in [
            fields(2),
            "interval:w*3".parse().unwrap(),
            BooleanPresentation::Atomless,
        ] {
            assert!(spec_of(&p).unwrap().constructible_check());
        }
    }

    #[test]
    fn semi_artinian() {
        let cases = [
            (fields(5), true),
            ("interval:w^2".parse().unwrap(), true),
            (BooleanPresentation::Atomless, false),
        ];
        for (p, expected) in cases {
            assert_eq!(is_semi_artinian(&p), expected);
            assert_eq!(semi_artinian_by_rank(&p).unwrap(), expected);
        }
    }

    #[test]
    fn supports() {
        let p = fields(4);
        assert!(object_support(&p, &GradedObject::zero("0"))
            .unwrap()
            .is_empty());
        assert_eq!(
            object_support(&p, &GradedObject::stalk(2)).unwrap(),
            set(&[2])
        );
        let mut a = GradedObject::zero("a");
        a.set(0, 0, 1);
        a.set(3, -1, 2);
        assert_eq!(object_support(&p, &a).unwrap(), set(&[0, 3]));
        a.set(7, 0, 1);
        assert!(matches!(
            object_support(&p, &a),
            Err(StoneError::ComponentOutOfRange { component: 7, .. })
        ));
        assert_eq!(
            object_support(&BooleanPresentation::Atomless, &GradedObject::zero("z")),
            Err(StoneError::NotProductOfFields)
        );
    }

    #[test]
    fn tau_and_sigma() {
        let p = fields(4);
        let stalk = GradedObject::stalk(1);
        assert!(tau_membership(&p, &set(&[0, 1, 2, 3]), &stalk).unwrap());
        assert!(tau_membership(&p, &set(&[1]), &stalk).unwrap());
        assert!(!tau_membership(&p, &set(&[]), &stalk).unwrap());

        assert!(sigma(&p, &[]).unwrap().is_empty());
        assert_eq!(sigma(&p, &[stalk]).unwrap(), set(&[1]));
        let mut g1 = GradedObject::zero("g1");
        g1.set(0, 2, 1);
        g1.set(1, 0, 1);
        let mut g2 = GradedObject::zero("g2");
        g2.set(1, -1, 3);
        g2.set(3, 0, 1);
        assert_eq!(sigma(&p, &[g1, g2]).unwrap(), set(&[0, 1, 3]));
    }

    #[test]
    fn object_files() {
        let objs = parse_objects("obj A\ndim 0 0 1\ndim 3 -1 2\n# c\nobj Z\n").unwrap();
        assert_eq!(objs.len(), 2);
        assert_eq!(objs[0].dim(3, -1), 2);
        assert!(objs[1].is_zero());
        assert!(matches!(
            parse_objects("dim 0 0 1\n"),
            Err(StoneError::Parse { line: 1, .. })
        ));
        assert!(parse_objects("obj A\ndim 0 0 x\n").is_err());
    }

    #[test]
    fn roundtrips() {
        let r = roundtrip_check(&fields(1)).unwrap();
        assert!(r.passes() && r.subsets == 2);
        let r = roundtrip_check(&fields(3)).unwrap();
        assert_eq!(r.render(), "PASS 8/8 subsets\n");
        assert_eq!(r.order_pairs, 27);
        let r = roundtrip_check(&fields(8)).unwrap();
        assert!(r.passes() && r.families == RANDOM_FAMILIES);
        assert_eq!(roundtrip_check(&fields(13)), Err(StoneError::TooLarge(13)));
    }
}
