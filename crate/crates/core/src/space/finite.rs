use std::collections::{BTreeSet, HashMap};

use super::SpaceError;

pub type PointSet = BTreeSet<usize>;

/// A finite T0 space given by its specialisation order. `x ⤳ y` means
/// `y ∈ V(x)`, the closure of `x`; closed sets are the specialisation-closed
/// sets and open sets the generization-closed ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    names: Vec<String>,
    // spec[x][y] iff x ⤳ y; reflexive and transitive
    spec: Vec<Vec<bool>>,
}

impl FiniteSpace {
    /// Builds the space from cover relations `(x, y)` meaning `x ⤳ y`,
    /// taking the reflexive-transitive closure.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, SpaceError> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(SpaceError::Parse {
                    line: 0,
                    message: format!("duplicate point name `{}` ({j} and {i})", name),
                });
            }
        }
        let mut spec = vec![vec![false; n]; n];
        for (i, row) in spec.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(SpaceError::PointOutOfRange(x.max(y).to_string()));
            }
            spec[x][y] = true;
        }
        for k in 0..n {
            let through = spec[k].clone();
            for row in spec.iter_mut().filter(|row| row[k]) {
                for (cell, &reach) in row.iter_mut().zip(&through) {
                    *cell |= reach;
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if spec[i][j] && spec[j][i] {
                    return Err(SpaceError::CyclicSpecialisation(
                        names[i].clone(),
                        names[j].clone(),
                    ));
                }
            }
        }
        Ok(FiniteSpace { names, spec })
    }

    /// Builds the space from a predicate `le(x, y)` that is already a partial
    /// order (`x ⤳ y`).
    pub fn from_order(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self, SpaceError> {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let rel: Vec<_> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && le(i, j))
            .collect();
        Self::new(names, &rel)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_order(n, |_, _| false).unwrap()
    }

    /// `p0 ⤳ p1 ⤳ … ⤳ p(n-1)`; the last point is the closed one.
    pub fn chain(n: usize) -> Self {
        Self::from_order(n, |i, j| i <= j).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn specialises(&self, x: usize, y: usize) -> bool {
        self.spec[x][y]
    }

    pub fn all(&self) -> PointSet {
        (0..self.len()).collect()
    }

    /// Specialisation closure: `⋃_{x∈S} V(x)`.
    pub fn closure(&self, s: &PointSet) -> PointSet {
        (0..self.len())
            .filter(|&y| s.iter().any(|&x| self.spec[x][y]))
            .collect()
    }

    pub fn generization_closure(&self, s: &PointSet) -> PointSet {
        (0..self.len())
            .filter(|&x| s.iter().any(|&y| self.spec[x][y]))
            .collect()
    }

    pub fn is_specialisation_closed(&self, s: &PointSet) -> bool {
        s.iter()
            .all(|&x| (0..self.len()).all(|y| !self.spec[x][y] || s.contains(&y)))
    }

    pub fn is_generization_closed(&self, s: &PointSet) -> bool {
        s.iter()
            .all(|&y| (0..self.len()).all(|x| !self.spec[x][y] || s.contains(&x)))
    }

    /// `V(x) = {x}`.
    pub fn is_closed_point(&self, x: usize) -> bool {
        (0..self.len()).all(|y| y == x || !self.spec[x][y])
    }

    /// `{x}` is open: no proper generization.
    pub fn is_open_point(&self, x: usize) -> bool {
        (0..self.len()).all(|y| y == x || !self.spec[y][x])
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| self.is_closed_point(x))
    }

    /// The induced subspace on `s` together with its embedding (view index to
    /// base index).
    pub fn induced(&self, s: &PointSet) -> (FiniteSpace, Vec<usize>) {
        let embedding: Vec<usize> = s.iter().copied().collect();
        let names = embedding.iter().map(|&i| self.names[i].clone()).collect();
        let spec = embedding
            .iter()
            .map(|&i| embedding.iter().map(|&j| self.spec[i][j]).collect())
            .collect();
        (FiniteSpace { names, spec }, embedding)
    }
}
