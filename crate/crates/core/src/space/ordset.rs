//! Subsets of ordinal spaces.
//!
//! Every point `δ` of an ordinal space has a *level*: the exponent of the
//! last term of its Cantor normal form, with level 0 for `δ = 0`. A set is
//! stored as disjoint half-open pieces `[start, end)`, each carrying a bit
//! mask of levels; the piece holds exactly the points of the interval whose
//! level is in the mask. This algebra contains all finite unions of
//! intervals, is closed under the Boolean operations, and is closed under
//! topological closure in the order topology, since a point of level `n`
//! is a limit from the left of points of every level below `n` and of no
//! other points.

use std::fmt;

use crate::ordinal::{Ordinal, OrdinalError};

/// Highest level a set can carry.
pub const MAX_LEVEL: u32 = 63;

pub fn level(d: &Ordinal) -> u32 {
    d.trailing_exponent().unwrap_or(0)
}

fn bit(m: u32) -> u64 {
    1u64 << m
}

fn levels_of(mask: u64) -> impl Iterator<Item = u32> {
    (0..=MAX_LEVEL).filter(move |&m| mask & bit(m) != 0)
}

fn succ(d: &Ordinal) -> Ordinal {
    d.succ().expect("ordinal set bound overflowed")
}

/// Least point `≥ s` of level `m`.
fn next_at_level(s: &Ordinal, m: u32) -> Ordinal {
    if m == 0 {
        return if s.is_zero() || s.is_successor() {
            s.clone()
        } else {
            succ(s)
        };
    }
    let (q, r) = s.div_rem_omega_pow(m);
    let q = if r.is_zero() { q } else { succ(&q) };
    let q = if q.is_successor() { q } else { succ(&q) };
    q.mul_omega_pow(m).expect("level exceeds representation")
}

/// For the level-`m` points below `e`: their maximum plus one, or their
/// supremum when there is no maximum. `None` when there are no such points.
fn tight_end(e: &Ordinal, m: u32) -> Option<Ordinal> {
    if m == 0 {
        return match e.pred() {
            Some(p) if p.is_limit() => Some(p),
            Some(_) => Some(e.clone()),
            None if e.is_zero() => None,
            None => Some(e.clone()),
        };
    }
    let (q, r) = e.div_rem_omega_pow(m);
    let top = match q.pred() {
        Some(p) if r.is_zero() => p,
        _ => q,
    };
    if top.is_zero() {
        None
    } else if top.is_successor() {
        Some(succ(&top.mul_omega_pow(m).ok()?))
    } else {
        top.mul_omega_pow(m).ok()
    }
}

/// Levels having at least one point in `[s, e)`.
fn present_levels(s: &Ordinal, e: &Ordinal) -> u64 {
    if s >= e {
        return 0;
    }
    let highest = e.leading_exponent().unwrap_or(0).min(MAX_LEVEL);
    (0..=highest)
        .filter(|&m| next_at_level(s, m) < *e)
        .fold(0, |acc, m| acc | bit(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub start: Ordinal,
    pub end: Ordinal,
    pub mask: u64,
}

impl Piece {
    /// Restricts the mask to present levels and shrinks both ends onto the
    /// points actually held.
    fn tighten(mut self) -> Option<Piece> {
        loop {
            self.mask &= present_levels(&self.start, &self.end);
            if self.mask == 0 {
                return None;
            }
            let start = levels_of(self.mask)
                .map(|m| next_at_level(&self.start, m))
                .min()
                .unwrap();
            let end = levels_of(self.mask)
                .filter_map(|m| tight_end(&self.end, m))
                .max()
                .unwrap();
            if start == self.start && end == self.end {
                return Some(self);
            }
            self.start = start;
            self.end = end;
        }
    }

    fn is_full(&self) -> bool {
        self.mask == present_levels(&self.start, &self.end)
    }
}

/// A subset of an ordinal space. Equality is set equality.
#[derive(Clone, Default)]
pub struct OrdinalSet {
    pieces: Vec<Piece>,
}

impl PartialEq for OrdinalSet {
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces || (self.is_subset(other) && other.is_subset(self))
    }
}

impl Eq for OrdinalSet {}

impl OrdinalSet {
    pub fn empty() -> Self {
        OrdinalSet { pieces: Vec::new() }
    }

    /// `{δ : start ≤ δ < end, level(δ) ∈ mask}`.
    pub fn level_slice(start: Ordinal, end: Ordinal, mask: u64) -> Self {
        Self::from_disjoint(vec![Piece { start, end, mask }])
    }

    pub fn half_open(start: Ordinal, end: Ordinal) -> Self {
        Self::level_slice(start, end, u64::MAX)
    }

    /// `[lo, hi]`.
    pub fn closed_interval(lo: Ordinal, hi: Ordinal) -> Self {
        let end = succ(&hi);
        Self::half_open(lo, end)
    }

    pub fn singleton(d: Ordinal) -> Self {
        let m = level(&d);
        let end = succ(&d);
        Self::level_slice(d, end, bit(m))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, d: &Ordinal) -> bool {
        let i = self.pieces.partition_point(|p| p.end <= *d);
        self.pieces
            .get(i)
            .is_some_and(|p| p.start <= *d && p.mask & bit(level(d)) != 0)
    }

    pub fn min_point(&self) -> Option<&Ordinal> {
        self.pieces.first().map(|p| &p.start)
    }

    /// Largest point, if the set has one.
    pub fn max_point(&self) -> Option<Ordinal> {
        let last = self.pieces.last()?;
        last.end.pred().filter(|p| self.contains(p))
    }

    /// Supremum bound: every point is `< bound()`.
    pub fn bound(&self) -> Ordinal {
        self.pieces
            .last()
            .map(|p| p.end.clone())
            .unwrap_or_default()
    }

    /// Sorted disjoint pieces to the canonical form. The result depends
    /// only on the set: cut at every start and tight end of a maximal run of
    /// same-level points, then merge greedily from the left.
    fn from_disjoint(raw: Vec<Piece>) -> Self {
        let raw: Vec<Piece> = raw.into_iter().filter_map(Piece::tighten).collect();
        let all = raw.iter().fold(0, |acc, p| acc | p.mask);
        let mut runs: Vec<(u32, Ordinal, Ordinal)> = Vec::new();
        for m in levels_of(all) {
            let mut open: Option<(Ordinal, Ordinal)> = None;
            for p in raw.iter().filter(|p| p.mask & bit(m) != 0) {
                let start = next_at_level(&p.start, m);
                let end = tight_end(&p.end, m).expect("tightened piece lost a level");
                open = match open {
                    Some((s, e)) if next_at_level(&e, m) >= start => Some((s, end)),
                    Some((s, e)) => {
                        runs.push((m, s, e));
                        Some((start, end))
                    }
                    None => Some((start, end)),
                };
            }
            runs.extend(open.map(|(s, e)| (m, s, e)));
        }
        let mut cuts: Vec<&Ordinal> = runs.iter().flat_map(|(_, s, e)| [s, e]).collect();
        cuts.sort();
        cuts.dedup();
        let atoms = cuts.windows(2).filter_map(|w| {
            let mask = runs
                .iter()
                .filter(|(_, s, e)| s <= w[0] && w[1] <= e)
                .fold(0, |acc, (m, _, _)| acc | bit(*m));
            Piece {
                start: w[0].clone(),
                end: w[1].clone(),
                mask,
            }
            .tighten()
        });
        let mut pieces: Vec<Piece> = Vec::with_capacity(raw.len());
        for piece in atoms {
            if let Some(cur) = pieces.last_mut() {
                let merged = cur.mask | piece.mask;
                let ok = present_levels(&cur.start, &cur.end) & merged == cur.mask
                    && present_levels(&piece.start, &piece.end) & merged == piece.mask
                    && present_levels(&cur.end, &piece.start) & merged == 0;
                if ok {
                    cur.end = piece.end;
                    cur.mask = merged;
                    continue;
                }
            }
            pieces.push(piece);
        }
        OrdinalSet { pieces }
    }

    fn combine(&self, other: &OrdinalSet, op: impl Fn(u64, u64) -> u64) -> OrdinalSet {
        let mut cuts: Vec<&Ordinal> = self
            .pieces
            .iter()
            .chain(&other.pieces)
            .flat_map(|p| [&p.start, &p.end])
            .collect();
        cuts.sort();
        cuts.dedup();
        let mask_at = |pieces: &[Piece], idx: &mut usize, lo: &Ordinal| -> u64 {
            while *idx < pieces.len() && pieces[*idx].end <= *lo {
                *idx += 1;
            }
            match pieces.get(*idx) {
                Some(p) if p.start <= *lo => p.mask,
                _ => 0,
            }
        };
        let (mut i, mut j) = (0, 0);
        let mut raw = Vec::new();
        for w in cuts.windows(2) {
            let a = mask_at(&self.pieces, &mut i, w[0]);
            let b = mask_at(&other.pieces, &mut j, w[0]);
            let mask = op(a, b);
            if mask != 0 {
                raw.push(Piece {
                    start: w[0].clone(),
                    end: w[1].clone(),
                    mask,
                });
            }
        }
        Self::from_disjoint(raw)
    }

    pub fn union(&self, other: &OrdinalSet) -> OrdinalSet {
        self.combine(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &OrdinalSet) -> OrdinalSet {
        self.combine(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &OrdinalSet) -> OrdinalSet {
        self.combine(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &OrdinalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &OrdinalSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Points that are limits of points of `self` (from the left; the order
    /// topology has no other accumulation).
    pub fn accumulation(&self) -> OrdinalSet {
        self.pieces.iter().fold(OrdinalSet::empty(), |acc, p| {
            let lowest = p.mask.trailing_zeros();
            if lowest >= MAX_LEVEL {
                return acc;
            }
            let above = !((bit(lowest) << 1) - 1);
            let limits = Self::level_slice(succ(&p.start), succ(&p.end), above);
            acc.union(&limits)
        })
    }

    pub fn closure(&self) -> OrdinalSet {
        self.union(&self.accumulation())
    }

    pub fn is_closed(&self) -> bool {
        self.accumulation().is_subset(self)
    }

    /// Points isolated in the subspace topology of `self`.
    pub fn isolated_points(&self) -> OrdinalSet {
        self.difference(&self.accumulation())
    }

    /// Whether `self` is open as a subset of the closed set `universe`.
    pub fn is_open_in(&self, universe: &OrdinalSet) -> bool {
        universe.difference(self).accumulation().is_disjoint(self)
    }

    /// Image under `δ ↦ ω^m·δ`.
    pub fn scale_up(&self, m: u32) -> Result<OrdinalSet, OrdinalError> {
        if m == 0 {
            return Ok(self.clone());
        }
        let mut raw = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            if p.mask.leading_zeros() < m {
                return Err(OrdinalError::Overflow);
            }
            raw.push(Piece {
                start: p.start.mul_omega_pow(m)?,
                end: p.end.mul_omega_pow(m)?,
                mask: p.mask << m,
            });
        }
        let scaled = Self::from_disjoint(raw);
        Ok(if self.contains(&Ordinal::zero()) {
            scaled.union(&Self::singleton(Ordinal::zero()))
        } else {
            scaled
        })
    }

    /// Preimage under `δ ↦ ω^m·δ`; `None` unless every point is `0` or has
    /// level at least `m`.
    pub fn scale_down(&self, m: u32) -> Option<OrdinalSet> {
        if m == 0 {
            return Some(self.clone());
        }
        let multiples = Self::level_slice(Ordinal::zero(), self.bound(), !(bit(m) - 1))
            .union(&Self::singleton(Ordinal::zero()));
        if !self.is_subset(&multiples) {
            return None;
        }
        let ceil_div = |d: &Ordinal| {
            let (q, r) = d.div_rem_omega_pow(m);
            if r.is_zero() {
                q
            } else {
                succ(&q)
            }
        };
        let raw = self
            .pieces
            .iter()
            .map(|p| Piece {
                start: ceil_div(&p.start),
                end: ceil_div(&p.end),
                mask: p.mask >> m,
            })
            .collect();
        let zero = Self::singleton(Ordinal::zero());
        let scaled = Self::from_disjoint(raw).difference(&zero);
        Some(if self.contains(&Ordinal::zero()) {
            scaled.union(&zero)
        } else {
            scaled
        })
    }

    /// Largest `m ≥ 1` such that [`scale_down`](Self::scale_down) succeeds.
    pub fn omega_divisibility(&self) -> u32 {
        let mut m = 0;
        while m < MAX_LEVEL && self.scale_down(m + 1).is_some() {
            m += 1;
        }
        m
    }
}

fn write_interval(f: &mut fmt::Formatter<'_>, start: &Ordinal, end: &Ordinal) -> fmt::Result {
    match end.pred() {
        Some(last) => write!(f, "[{start},{last}]"),
        None => write!(f, "[{start},{end})"),
    }
}

/// Literal form: pieces joined by `u`; a plain `[a,b]` / `[a,b)` holds every
/// point of the interval, `@m[a,b)` only the points of level `m`.
impl fmt::Display for OrdinalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("{}");
        }
        let mut first = true;
        for p in &self.pieces {
            if p.is_full() {
                if !first {
                    f.write_str("u")?;
                }
                first = false;
                write_interval(f, &p.start, &p.end)?;
                continue;
            }
            for m in levels_of(p.mask) {
                if !first {
                    f.write_str("u")?;
                }
                first = false;
                write!(f, "@{m}")?;
                write_interval(f, &p.start, &p.end)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrdinalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
