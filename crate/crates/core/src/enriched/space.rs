use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::quantale::{Base, QValue};

use super::EnrichedError;

/// A finite category enriched in one of the two bases: a generalized metric
/// space over R̄₊ or a preorder over Bool.
///
/// `dist(x, y)` is the hom-object `A(x, y)`; the matrix is stored row-major
/// in the declared point order, which is also the iteration order of every
/// operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    name: String,
    base: Base,
    points: Vec<String>,
    dist: Vec<QValue>,
}

/// A failed unit or triangle law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Diagonal { point: String, value: QValue },
    /// `A(y,z) ⊗ A(x,y) ⋢ A(x,z)`.
    Triangle { x: String, y: String, z: String, direct: QValue, via: QValue },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Diagonal { point, value } => {
                write!(f, "diagonal ({point},{point}) is {value}, expected unit")
            }
            Violation::Triangle { x, y, z, direct, via } => write!(
                f,
                "triangle ({x},{y},{z}): d({x},{z}) = {direct} but d({x},{y}) ⊗ d({y},{z}) = {via}"
            ),
        }
    }
}

impl Space {
    /// Builds a space and checks both enrichment laws.
    pub fn new(
        name: impl Into<String>,
        base: Base,
        points: Vec<String>,
        dist: Vec<QValue>,
    ) -> Result<Space, EnrichedError> {
        let space = Space::unchecked(name, base, points, dist)?;
        let violations = space.violations();
        if violations.is_empty() {
            Ok(space)
        } else {
            Err(EnrichedError::InvalidSpace(violations))
        }
    }

    /// Checks shape, base and point-name uniqueness only. The laws can then
    /// be inspected with [`Space::violations`].
    pub fn unchecked(
        name: impl Into<String>,
        base: Base,
        points: Vec<String>,
        dist: Vec<QValue>,
    ) -> Result<Space, EnrichedError> {
        let n = points.len();
        if dist.len() != n * n {
            return Err(EnrichedError::Shape(format!(
                "distance matrix has {} entries, expected {}",
                dist.len(),
                n * n
            )));
        }
        if let Some(v) = dist.iter().find(|v| v.base() != base) {
            return Err(EnrichedError::Base(base, v.base()));
        }
        let mut seen = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if seen.insert(p.as_str(), i).is_some() {
                return Err(EnrichedError::DuplicatePoint(p.clone()));
            }
        }
        Ok(Space { name: name.into(), base, points, dist })
    }

    /// Builds a space from a closure over point indices.
    pub fn from_fn(
        name: impl Into<String>,
        base: Base,
        points: Vec<String>,
        f: impl Fn(usize, usize) -> QValue,
    ) -> Result<Space, EnrichedError> {
        let n = points.len();
        let dist = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Space::new(name, base, points, dist)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Space {
        self.name = name.into();
        self
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, EnrichedError> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| EnrichedError::UnknownPoint(name.to_string()))
    }

    #[inline]
    pub fn dist(&self, x: usize, y: usize) -> QValue {
        self.dist[x * self.points.len() + y]
    }

    pub fn matrix(&self) -> &[QValue] {
        &self.dist
    }

    /// Unit and triangle law violations, in point order.
    pub fn violations(&self) -> Vec<Violation> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            let d = self.dist(x, x);
            if !self.base.unit().le(d) {
                out.push(Violation::Diagonal { point: self.points[x].clone(), value: d });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let via = self.dist(y, z).tensor(self.dist(x, y));
                    let direct = self.dist(x, z);
                    if !via.le(direct) {
                        out.push(Violation::Triangle {
                            x: self.points[x].clone(),
                            y: self.points[y].clone(),
                            z: self.points[z].clone(),
                            direct,
                            via,
                        });
                    }
                }
            }
        }
        out
    }

    /// `x → y` in the underlying ordinary category: `A(x,y)` is the unit.
    #[inline]
    pub fn arrow(&self, x: usize, y: usize) -> bool {
        self.base.unit().le(self.dist(x, y))
    }

    /// Zero-isomorphic: arrows both ways.
    pub fn iso(&self, x: usize, y: usize) -> bool {
        self.arrow(x, y) && self.arrow(y, x)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.dist(x, y) == self.dist(y, x)))
    }

    /// The underlying preorder as a Bool space; identity on Bool spaces.
    pub fn underlying_preorder(&self) -> Space {
        if self.base == Base::Bool {
            return self.clone();
        }
        let n = self.len();
        let dist = (0..n * n).map(|i| QValue::Bool(self.arrow(i / n, i % n))).collect();
        Space { name: self.name.clone(), base: Base::Bool, points: self.points.clone(), dist }
    }

    /// Identifies zero-isomorphic points, keeping the first of each class.
    pub fn zero_quotient(&self) -> (Space, Vec<usize>) {
        let n = self.len();
        let mut reps: Vec<usize> = Vec::new();
        let mut class = vec![0; n];
        for x in 0..n {
            match reps.iter().position(|&r| self.iso(r, x)) {
                Some(c) => class[x] = c,
                None => {
                    class[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let m = reps.len();
        let dist = (0..m * m).map(|i| self.dist(reps[i / m], reps[i % m])).collect();
        let points = reps.iter().map(|&r| self.points[r].clone()).collect();
        (Space { name: self.name.clone(), base: self.base, points, dist }, class)
    }

    /// A bijection `iso[i]` from this space's points onto `other`'s with
    /// `self.dist(i,j) == other.dist(iso[i], iso[j])`, if one exists.
    pub fn isomorphism_to(&self, other: &Space) -> Option<Vec<usize>> {
        if self.base != other.base || self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let signature = |s: &Space, i: usize| {
            let mut row: Vec<String> = (0..n).map(|j| s.dist(i, j).to_string()).collect();
            let mut col: Vec<String> = (0..n).map(|j| s.dist(j, i).to_string()).collect();
            row.sort();
            col.sort();
            (row, col)
        };
        let sig_a: Vec<_> = (0..n).map(|i| signature(self, i)).collect();
        let sig_b: Vec<_> = (0..n).map(|i| signature(other, i)).collect();
        let mut assignment = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            a: &Space,
            b: &Space,
            sig_a: &[(Vec<String>, Vec<String>)],
            sig_b: &[(Vec<String>, Vec<String>)],
            assignment: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = a.len();
            if i == n {
                return true;
            }
            for j in 0..n {
                if used[j] || sig_a[i] != sig_b[j] {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    a.dist(i, k) == b.dist(j, assignment[k]) && a.dist(k, i) == b.dist(assignment[k], j)
                }) && a.dist(i, i) == b.dist(j, j);
                if !consistent {
                    continue;
                }
                used[j] = true;
                assignment[i] = j;
                if go(i + 1, a, b, sig_a, sig_b, assignment, used) {
                    return true;
                }
                used[j] = false;
            }
            false
        }
        if go(0, self, other, &sig_a, &sig_b, &mut assignment, &mut used) {
            Some(assignment)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &Space) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Encodes a preorder as a generalized metric space: arrows become
    /// distance 0, non-arrows distance ∞.
    pub fn bool_to_rplus(&self) -> Result<Space, EnrichedError> {
        if self.base != Base::Bool {
            return Err(EnrichedError::Base(Base::Bool, self.base));
        }
        let dist = self
            .dist
            .iter()
            .map(|&v| if v == QValue::TRUE { QValue::ZERO } else { QValue::Infinity })
            .collect();
        Ok(Space { name: self.name.clone(), base: Base::RPlus, points: self.points.clone(), dist })
    }

    pub fn into_ref(self) -> Arc<Space> {
        Arc::new(self)
    }
}

/// A nonexpansive map (R̄₊) or monotone map (Bool) between spaces.
#[derive(Debug, Clone)]
pub struct Map {
    source: Arc<Space>,
    target: Arc<Space>,
    assignment: Vec<usize>,
}

impl Map {
    pub fn new(
        source: Arc<Space>,
        target: Arc<Space>,
        assignment: Vec<usize>,
    ) -> Result<Map, EnrichedError> {
        if source.base() != target.base() {
            return Err(EnrichedError::Base(source.base(), target.base()));
        }
        if assignment.len() != source.len() || assignment.iter().any(|&b| b >= target.len()) {
            return Err(EnrichedError::Shape("map assignment does not fit its spaces".into()));
        }
        for x in 0..source.len() {
            for y in 0..source.len() {
                if !source.dist(x, y).le(target.dist(assignment[x], assignment[y])) {
                    return Err(EnrichedError::NotNonexpansive {
                        x: source.point(x).to_string(),
                        y: source.point(y).to_string(),
                    });
                }
            }
        }
        Ok(Map { source, target, assignment })
    }

    pub fn identity(space: Arc<Space>) -> Map {
        let assignment = (0..space.len()).collect();
        Map { source: space.clone(), target: space, assignment }
    }

    pub fn constant(source: Arc<Space>, target: Arc<Space>, b: usize) -> Result<Map, EnrichedError> {
        let assignment = vec![b; source.len()];
        Map::new(source, target, assignment)
    }

    /// Every nonexpansive map between two spaces, in lexicographic order of
    /// assignments.
    pub fn all(source: &Arc<Space>, target: &Arc<Space>) -> Vec<Map> {
        let n = source.len();
        let m = target.len();
        let mut out = Vec::new();
        if m == 0 && n > 0 {
            return out;
        }
        let mut assignment = vec![0usize; n];
        loop {
            if let Ok(map) = Map::new(source.clone(), target.clone(), assignment.clone()) {
                out.push(map);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                assignment[i] += 1;
                if assignment[i] < m {
                    break;
                }
                assignment[i] = 0;
            }
        }
    }

    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

pub(crate) fn same_space(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
