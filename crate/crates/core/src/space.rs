//! Q-topological spaces over a fixed finite algebra `Q`.
//!
//! A space on `n` points carries a topology: a set of Q-valued functions on
//! the points (value tuples of length `n`) closed under the pointwise
//! operations of `Q`. Opens are stored sorted and deduplicated, so two spaces
//! are equal exactly when they have the same algebra, point count and opens.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{close_under, FiniteAlgebra, Subset};
use crate::caps::Caps;
use crate::error::{checked_pow, guard, Error, Result};
use crate::tuples::{decode, for_each_index};

/// A Q-valued function on the points of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct QFunction(pub Vec<usize>);

impl QFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn constant(value: usize, points: usize) -> Self {
        QFunction(vec![value; points])
    }

    pub fn restrict(&self, m: &[usize]) -> QFunction {
        QFunction(m.iter().map(|&i| self.0[i]).collect())
    }
}

impl From<Vec<usize>> for QFunction {
    fn from(v: Vec<usize>) -> Self {
        QFunction(v)
    }
}

/// Applies operation `op` of `q` pointwise to functions on `points` points.
pub(crate) fn pointwise(q: &FiniteAlgebra, op: usize, args: &[&QFunction], points: usize) -> QFunction {
    let mut coords = vec![0; args.len()];
    QFunction(
        (0..points)
            .map(|x| {
                for (c, a) in coords.iter_mut().zip(args) {
                    *c = a.0[x];
                }
                q.apply(op, &coords)
            })
            .collect(),
    )
}

/// ⟨generators⟩ inside `Q^points`, computed without materializing `Q^points`.
pub(crate) fn generate_in_power(
    q: &FiniteAlgebra,
    points: usize,
    generators: impl IntoIterator<Item = QFunction>,
    caps: &Caps,
) -> Result<Vec<QFunction>> {
    close_under(
        q.signature(),
        generators,
        |op, args| pointwise(q, op, args, points),
        Some(("topology size", caps.max_topology)),
    )
}

/// A finite set of points together with a Q-topology on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSpace {
    q: Arc<FiniteAlgebra>,
    points: usize,
    topology: Vec<QFunction>,
}

impl QSpace {
    /// Builds a space from an explicit list of opens, which must already be
    /// closed under the pointwise operations of `q`.
    pub fn new(q: Arc<FiniteAlgebra>, points: usize, opens: impl IntoIterator<Item = QFunction>) -> Result<Self> {
        let opens: BTreeSet<QFunction> = opens.into_iter().collect();
        for p in &opens {
            check_function(&q, points, p)?;
        }
        let topology: Vec<QFunction> = opens.into_iter().collect();
        let space = QSpace { q, points, topology };
        if let Some(missing) = space.first_unclosed() {
            return Err(Error::Document(format!(
                "opens are not closed under the operations of {}: {:?} missing",
                space.q.name(),
                missing.0
            )));
        }
        Ok(space)
    }

    /// Caller guarantees `topology` is sorted, deduplicated and closed.
    pub(crate) fn from_closed(q: Arc<FiniteAlgebra>, points: usize, topology: Vec<QFunction>) -> Self {
        debug_assert!(topology.windows(2).all(|w| w[0] < w[1]));
        QSpace { q, points, topology }
    }

    fn first_unclosed(&self) -> Option<QFunction> {
        for (i, op) in self.q.signature().ops().iter().enumerate() {
            let mut missing = None;
            for_each_index(&vec![self.topology.len(); op.arity], |t| {
                let args: Vec<&QFunction> = t.iter().map(|&j| &self.topology[j]).collect();
                let r = pointwise(&self.q, i, &args, self.points);
                if self.contains(&r) {
                    true
                } else {
                    missing = Some(r);
                    false
                }
            });
            if missing.is_some() {
                return missing;
            }
        }
        None
    }

    pub fn q(&self) -> &Arc<FiniteAlgebra> {
        &self.q
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn topology(&self) -> &[QFunction] {
        &self.topology
    }

    pub fn contains(&self, p: &QFunction) -> bool {
        self.topology.binary_search(p).is_ok()
    }

    /// Position of `p` in the sorted topology.
    pub fn open_index(&self, p: &QFunction) -> Option<usize> {
        self.topology.binary_search(p).ok()
    }
}

fn check_function(q: &FiniteAlgebra, points: usize, p: &QFunction) -> Result<()> {
    if p.len() != points {
        return Err(Error::ShapeMismatch {
            expected: points,
            found: p.len(),
        });
    }
    if let Some(&bad) = p.0.iter().find(|&&v| v >= q.size()) {
        return Err(Error::OutOfRange {
            value: bad,
            size: q.size(),
            context: "open value".into(),
        });
    }
    Ok(())
}

/// `f_Q^←(α) = α ∘ f`.
pub fn preimage_operator(f: &[usize], alpha: &QFunction) -> Result<QFunction> {
    f.iter()
        .map(|&y| {
            alpha.0.get(y).copied().ok_or(Error::OutOfRange {
                value: y,
                size: alpha.len(),
                context: "point map value".into(),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(QFunction)
}

fn pullback(f: &[usize], alpha: &QFunction) -> QFunction {
    QFunction(f.iter().map(|&y| alpha.0[y]).collect())
}

/// The space on `points` points whose topology is generated by `subbasis`.
pub fn generate_topology(
    q: Arc<FiniteAlgebra>,
    points: usize,
    subbasis: impl IntoIterator<Item = QFunction>,
    caps: &Caps,
) -> Result<QSpace> {
    let subbasis: Vec<QFunction> = subbasis.into_iter().collect();
    for p in &subbasis {
        check_function(&q, points, p)?;
    }
    let topology = generate_in_power(&q, points, subbasis, caps)?;
    Ok(QSpace::from_closed(q, points, topology))
}

/// The Q-Sierpinski space: the carrier of `q` topologized by ⟨id⟩.
pub fn sierpinski(q: Arc<FiniteAlgebra>, caps: &Caps) -> Result<QSpace> {
    let n = q.size();
    generate_topology(q, n, [QFunction((0..n).collect())], caps)
}

/// True iff `f` is a well-formed point map whose pullback sends every open of
/// `cod` to an open of `dom`.
pub fn is_continuous(f: &[usize], dom: &QSpace, cod: &QSpace) -> bool {
    dom.q == cod.q
        && f.len() == dom.points
        && f.iter().all(|&y| y < cod.points)
        && cod.topology.iter().all(|alpha| dom.contains(&pullback(f, alpha)))
}

/// `{α ∘ f | α ∈ cod.topology}`, sorted and deduplicated.
pub fn pullback_topology(f: &[usize], cod: &QSpace) -> Vec<QFunction> {
    cod.topology
        .iter()
        .map(|alpha| pullback(f, alpha))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub fn is_injective(f: &[usize]) -> bool {
    f.iter().collect::<BTreeSet<_>>().len() == f.len()
}

/// True iff `f` is a continuous bijection with continuous inverse.
pub fn is_homeomorphism(f: &[usize], dom: &QSpace, cod: &QSpace) -> bool {
    dom.points == cod.points
        && is_injective(f)
        && is_continuous(f, dom, cod)
        && pullback_topology(f, cod) == dom.topology
}

/// First homeomorphism `x → y` in lexicographic order of point maps, if any.
pub fn find_homeomorphism(x: &QSpace, y: &QSpace) -> Option<Vec<usize>> {
    if x.q != y.q || x.points != y.points || x.topology.len() != y.topology.len() {
        return None;
    }
    (0..y.points).permutations(x.points).find(|f| is_homeomorphism(f, x, y))
}

/// A point map between two spaces over the same algebra, verified continuous.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuousMap {
    dom: QSpace,
    cod: QSpace,
    values: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(dom: QSpace, cod: QSpace, values: Vec<usize>) -> Result<Self> {
        if dom.q != cod.q {
            return Err(Error::AlgebraMismatch);
        }
        if values.len() != dom.points {
            return Err(Error::ShapeMismatch {
                expected: dom.points,
                found: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= cod.points) {
            return Err(Error::OutOfRange {
                value: bad,
                size: cod.points,
                context: "point map value".into(),
            });
        }
        if let Some(alpha) = cod.topology.iter().find(|a| !dom.contains(&pullback(&values, a))) {
            return Err(Error::NotContinuous(alpha.0.clone()));
        }
        Ok(ContinuousMap { dom, cod, values })
    }

    pub fn identity(x: QSpace) -> Self {
        let values = (0..x.points).collect();
        ContinuousMap {
            dom: x.clone(),
            cod: x,
            values,
        }
    }

    pub fn dom(&self) -> &QSpace {
        &self.dom
    }

    pub fn cod(&self) -> &QSpace {
        &self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn image(&self) -> Subset {
        Subset::new(self.cod.points, self.values.iter().copied()).expect("values in range")
    }

    pub fn is_injective(&self) -> bool {
        is_injective(&self.values)
    }

    pub fn is_homeomorphism(&self) -> bool {
        is_homeomorphism(&self.values, &self.dom, &self.cod)
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &ContinuousMap) -> Result<ContinuousMap> {
        if then.dom != self.cod {
            return Err(Error::Document("composite of maps with mismatched spaces".into()));
        }
        let values = self.values.iter().map(|&y| then.values[y]).collect();
        Ok(ContinuousMap {
            dom: self.dom.clone(),
            cod: then.cod.clone(),
            values,
        })
    }
}

/// The subspace on `m` and its inclusion into `x`. Point `i` of the subspace
/// is `m.members()[i]`.
pub fn subspace(x: &QSpace, m: &Subset) -> Result<(QSpace, ContinuousMap)> {
    if m.parent_size() != x.points {
        return Err(Error::ShapeMismatch {
            expected: x.points,
            found: m.parent_size(),
        });
    }
    let topology: Vec<QFunction> = x
        .topology
        .iter()
        .map(|p| p.restrict(m.members()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let sub = QSpace::from_closed(x.q.clone(), m.len(), topology);
    let inclusion = ContinuousMap {
        dom: sub.clone(),
        cod: x.clone(),
        values: m.members().to_vec(),
    };
    Ok((sub, inclusion))
}

/// The `exponent`-fold power of `base`. Points are mixed-radix tuples of base
/// points in lexicographic order; the topology is generated by the pullbacks
/// of base opens along the projections, which are returned alongside.
pub fn power_space(base: &QSpace, exponent: usize, caps: &Caps) -> Result<(QSpace, Vec<ContinuousMap>)> {
    let b = base.points;
    let points = checked_pow(b, exponent);
    guard("power space points", points, caps.max_power_carrier as u128)?;
    let points = points as usize;
    let tuples: Vec<Vec<usize>> = (0..points).map(|i| decode(i, b, exponent)).collect();
    let projections: Vec<Vec<usize>> = (0..exponent).map(|c| tuples.iter().map(|t| t[c]).collect()).collect();
    let generators = projections
        .iter()
        .flat_map(|proj| base.topology.iter().map(move |alpha| pullback(proj, alpha)));
    let topology = generate_in_power(&base.q, points, generators, caps)?;
    let power = QSpace::from_closed(base.q.clone(), points, topology);
    let maps = projections
        .into_iter()
        .map(|values| ContinuousMap::new(power.clone(), base.clone(), values))
        .collect::<Result<Vec<_>>>()?;
    Ok((power, maps))
}

/// True iff every two distinct points are separated by some open.
pub fn is_t0(x: &QSpace) -> bool {
    // points are separated iff their value columns over all opens differ
    let columns: BTreeSet<Vec<usize>> = (0..x.points)
        .map(|pt| x.topology.iter().map(|p| p.0[pt]).collect())
        .collect();
    columns.len() == x.points
}

/// All functions `points → Q` in lexicographic order.
pub fn all_functions(q_size: usize, points: usize) -> Vec<QFunction> {
    let mut out = Vec::new();
    for_each_index(&vec![q_size; points], |t| {
        out.push(QFunction(t.to_vec()));
        true
    });
    out
}
