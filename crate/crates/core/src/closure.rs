//! The [ ]-closure, epimorphism and embedding tests, extremal monos and the
//! firmness inverse, all inside the category of Q-T0 spaces.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, Subset};
use crate::caps::Caps;
use crate::error::{checked_pow, guard, Error, Result};
use crate::space::{
    generate_in_power, is_injective, is_t0, power_space, pullback_topology, sierpinski, ContinuousMap, QFunction,
    QSpace,
};
use crate::spectrum::{lift_with_spectra, spectrum, SpectrumResult};
use crate::tuples::{encode, for_each_index};

/// `Eq(f, g)`: the positions where two equally long tuples agree.
pub fn equalizer_set(f: &[usize], g: &[usize]) -> Result<Subset> {
    if f.len() != g.len() {
        return Err(Error::ShapeMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    Subset::new(f.len(), (0..f.len()).filter(|&i| f[i] == g[i]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureCertificate {
    pub subset: Subset,
    pub closure: Subset,
    /// Unordered pairs of distinct opens (by index, `i < j`) agreeing on `subset`.
    pub witness_pairs: Vec<(usize, usize)>,
}

impl ClosureCertificate {
    pub fn is_closed(&self) -> bool {
        self.subset == self.closure
    }
}

fn agree_on(p: &QFunction, q: &QFunction, m: &[usize]) -> bool {
    m.iter().all(|&i| p.values()[i] == q.values()[i])
}

/// `[M]`: the intersection of `Eq(f, g)` over all pairs of opens that agree
/// on `M`. Diagonal pairs contribute every point and are skipped.
pub fn m_closure(x: &QSpace, m: &Subset) -> Result<ClosureCertificate> {
    if m.parent_size() != x.points() {
        return Err(Error::ShapeMismatch {
            expected: x.points(),
            found: m.parent_size(),
        });
    }
    let opens = x.topology();
    let mut inside = vec![true; x.points()];
    let mut witness_pairs = Vec::new();
    for i in 0..opens.len() {
        for j in i + 1..opens.len() {
            if agree_on(&opens[i], &opens[j], m.members()) {
                witness_pairs.push((i, j));
                for (pt, keep) in inside.iter_mut().enumerate() {
                    *keep &= opens[i].values()[pt] == opens[j].values()[pt];
                }
            }
        }
    }
    let closure = Subset::new(x.points(), (0..x.points()).filter(|&pt| inside[pt]))?;
    Ok(ClosureCertificate {
        subset: m.clone(),
        closure,
        witness_pairs,
    })
}

/// The two epimorphism criteria evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpiCertificate {
    /// The pullback `f_Q^←` is injective on the codomain's opens.
    pub via_injectivity: bool,
    /// `[f(X)]` is the whole codomain.
    pub via_closure: bool,
    /// Two distinct codomain opens with equal pullback.
    pub counterexample_pair: Option<(QFunction, QFunction)>,
    /// A codomain point outside `[f(X)]`.
    pub counterexample_point: Option<usize>,
}

impl EpiCertificate {
    pub fn is_epi(&self) -> bool {
        self.via_injectivity && self.via_closure
    }

    pub fn criteria_agree(&self) -> bool {
        self.via_injectivity == self.via_closure
    }
}

/// Both epimorphism criteria for a map between T0 spaces, given as raw parts.
pub fn epi_certificate(f: &[usize], dom: &QSpace, cod: &QSpace) -> Result<EpiCertificate> {
    if !is_t0(dom) || !is_t0(cod) {
        return Err(Error::NotT0);
    }
    let mut counterexample_pair = None;
    let mut seen: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
    for (j, q) in cod.topology().iter().enumerate() {
        let pulled: Vec<usize> = f.iter().map(|&y| q.values()[y]).collect();
        if let Some(&i) = seen.get(&pulled) {
            counterexample_pair = Some((cod.topology()[i].clone(), q.clone()));
            break;
        }
        seen.insert(pulled, j);
    }
    let image = Subset::new(cod.points(), f.iter().copied())?;
    let closure = m_closure(cod, &image)?.closure;
    let counterexample_point = (0..cod.points()).find(|&y| !closure.contains(y));
    Ok(EpiCertificate {
        via_injectivity: counterexample_pair.is_none(),
        via_closure: counterexample_point.is_none(),
        counterexample_pair,
        counterexample_point,
    })
}

pub fn is_epi(f: &ContinuousMap) -> Result<EpiCertificate> {
    epi_certificate(f.values(), f.dom(), f.cod())
}

/// Injective, continuous, and the domain carries the initial topology.
pub fn is_embedding_parts(f: &[usize], dom: &QSpace, cod: &QSpace) -> bool {
    crate::space::is_continuous(f, dom, cod) && is_injective(f) && pullback_topology(f, cod) == dom.topology()
}

pub fn is_embedding(f: &ContinuousMap) -> bool {
    is_embedding_parts(f.values(), f.dom(), f.cod())
}

/// Extremal monos between T0 spaces are the [ ]-closed embeddings.
pub fn is_extremal_mono_parts(f: &[usize], dom: &QSpace, cod: &QSpace) -> Result<bool> {
    if !is_t0(dom) || !is_t0(cod) {
        return Err(Error::NotT0);
    }
    if !is_embedding_parts(f, dom, cod) {
        return Ok(false);
    }
    let image = Subset::new(cod.points(), f.iter().copied())?;
    Ok(m_closure(cod, &image)?.is_closed())
}

pub fn is_extremal_mono(f: &ContinuousMap) -> Result<bool> {
    is_extremal_mono_parts(f.values(), f.dom(), f.cod())
}

/// `Q_S^J`, the `J`-fold power of the Sierpinski space, handled without
/// materializing its topology. Points are value tuples in `Q^J`.
///
/// The opens of `Q_S^J` form the subalgebra of `Q^(Q^J)` generated by the
/// projections, and restricting to a set of points is a homomorphism. So the
/// opens restricted to `N ⊆ Q^J` are generated by the restricted projections,
/// and `y ∈ [M]` exactly when, inside `⟨projections restricted to M ∪ {y}⟩`,
/// the value at `y` is determined by the values on `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SierpinskiPower {
    q: Arc<FiniteAlgebra>,
    exponent: usize,
}

impl SierpinskiPower {
    pub fn new(q: Arc<FiniteAlgebra>, exponent: usize) -> Self {
        SierpinskiPower { q, exponent }
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn point_count(&self) -> u128 {
        checked_pow(self.q.size(), self.exponent)
    }

    /// Point index of a tuple in the materialized power space.
    pub fn index_of(&self, point: &[usize]) -> usize {
        encode(point, self.q.size())
    }

    fn restricted_projections(&self, points: &[&[usize]]) -> Vec<QFunction> {
        (0..self.exponent)
            .map(|j| QFunction(points.iter().map(|t| t[j]).collect()))
            .collect()
    }

    /// The subspace of `Q_S^J` on the listed points, in the given order.
    pub fn subspace(&self, points: &[Vec<usize>], caps: &Caps) -> Result<QSpace> {
        let refs: Vec<&[usize]> = points.iter().map(Vec::as_slice).collect();
        let topology = generate_in_power(&self.q, points.len(), self.restricted_projections(&refs), caps)?;
        Ok(QSpace::from_closed(self.q.clone(), points.len(), topology))
    }

    /// Whether `y` lies in the [ ]-closure of `m`.
    pub fn in_closure(&self, m: &[Vec<usize>], y: &[usize], caps: &Caps) -> Result<bool> {
        if m.iter().any(|t| t.as_slice() == y) {
            return Ok(true);
        }
        let mut refs: Vec<&[usize]> = m.iter().map(Vec::as_slice).collect();
        refs.push(y);
        let restricted = generate_in_power(&self.q, refs.len(), self.restricted_projections(&refs), caps)?;
        let on_m: BTreeSet<&[usize]> = restricted.iter().map(|p| &p.values()[..m.len()]).collect();
        Ok(on_m.len() == restricted.len())
    }

    /// `[M]` as a sorted list of tuples.
    pub fn closure(&self, m: &[Vec<usize>], caps: &Caps) -> Result<Vec<Vec<usize>>> {
        guard("Q_S^J points", self.point_count(), caps.max_power_carrier as u128)?;
        let mut out = Vec::new();
        let mut failure = None;
        for_each_index(&vec![self.q.size(); self.exponent], |y| {
            match self.in_closure(m, y, caps) {
                Ok(true) => {
                    out.push(y.to_vec());
                    true
                }
                Ok(false) => true,
                Err(e) => {
                    failure = Some(e);
                    false
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// The full power space with its generated topology.
    pub fn materialize(&self, caps: &Caps) -> Result<QSpace> {
        let qs = sierpinski(self.q.clone(), caps)?;
        Ok(power_space(&qs, self.exponent, caps)?.0)
    }
}

/// A pair of maps into `Q_S^J` whose equalizer is `[image(m)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualizerWitness {
    /// `J`: pairs of distinct codomain opens (by index) agreeing on the image.
    pub pairs: Vec<(usize, usize)>,
    pub power: SierpinskiPower,
    /// `f*(y) = (f_j(y))_j` for each codomain point `y`.
    pub f_star: Vec<Vec<usize>>,
    /// `g*(y) = (g_j(y))_j`.
    pub g_star: Vec<Vec<usize>>,
}

impl EqualizerWitness {
    pub fn equalizer(&self) -> Subset {
        Subset::new(
            self.f_star.len(),
            (0..self.f_star.len()).filter(|&y| self.f_star[y] == self.g_star[y]),
        )
        .expect("indices in range")
    }

    /// Continuity of both maps into `Q_S^J`, checked on the generating
    /// projections (pullback is a homomorphism).
    pub fn maps_are_continuous(&self, cod: &QSpace) -> bool {
        (0..self.pairs.len()).all(|j| {
            let fj = QFunction(self.f_star.iter().map(|t| t[j]).collect());
            let gj = QFunction(self.g_star.iter().map(|t| t[j]).collect());
            cod.contains(&fj) && cod.contains(&gj)
        })
    }
}

/// The maps `f*, g*: Y → Q_S^J` induced by all pairs of opens agreeing on the
/// image of `m`, indexed in lexicographic order of open pairs.
pub fn equalizer_witness(m: &ContinuousMap, caps: &Caps) -> Result<EqualizerWitness> {
    let cod = m.cod();
    let cert = m_closure(cod, &m.image())?;
    let pairs = cert.witness_pairs;
    guard("equalizer index pairs", pairs.len() as u128, caps.max_topology as u128)?;
    let opens = cod.topology();
    let f_star = (0..cod.points())
        .map(|y| pairs.iter().map(|&(i, _)| opens[i].values()[y]).collect())
        .collect();
    let g_star = (0..cod.points())
        .map(|y| pairs.iter().map(|&(_, j)| opens[j].values()[y]).collect())
        .collect();
    Ok(EqualizerWitness {
        power: SierpinskiPower::new(cod.q().clone(), pairs.len()),
        pairs,
        f_star,
        g_star,
    })
}

/// Evidence that `f*: pt τ_X → Y` is an isomorphism for an epimorphic
/// embedding `f: X → Y` into a sober space.
#[derive(Debug, Clone)]
pub struct FirmnessCertificate {
    /// For each open `p` of X (by index), the index of the unique open `p_f`
    /// of Y with `p_f ∘ f = p`.
    pub p_f: Vec<usize>,
    /// `g: Y → pt τ_X`, `g(y)(p) = p_f(y)`.
    pub g: ContinuousMap,
    /// `f*: pt τ_X → Y` with `f* ∘ η_X = f`.
    pub f_star: ContinuousMap,
    /// `g ∘ f* = id` on `pt τ_X`.
    pub g_after_f_star_is_id: bool,
    /// `f* ∘ g = id` on `Y`.
    pub f_star_after_g_is_id: bool,
}

impl FirmnessCertificate {
    pub fn is_inverse(&self) -> bool {
        self.g_after_f_star_is_id && self.f_star_after_g_is_id
    }
}

/// Builds the inverse of `f*` for an epimorphic embedding `f` into a sober
/// codomain, from precomputed spectra.
pub fn firmness_inverse_with(
    f: &[usize],
    source: &SpectrumResult,
    target: &SpectrumResult,
) -> Result<FirmnessCertificate> {
    let x = source.source();
    let y = target.source();
    if !target.eta_is_bijective() {
        return Err(Error::NotSober("codomain".into()));
    }
    let pulled: Vec<QFunction> = y
        .topology()
        .iter()
        .map(|q| QFunction(f.iter().map(|&pt| q.values()[pt]).collect()))
        .collect();
    let p_f = x
        .topology()
        .iter()
        .map(|p| {
            let mut hits = pulled.iter().enumerate().filter(|(_, q)| *q == p).map(|(j, _)| j);
            match (hits.next(), hits.next()) {
                (Some(j), None) => Ok(j),
                (Some(_), Some(_)) => Err(Error::PfNotUnique(p.values().to_vec())),
                (None, _) => Err(Error::PfMissing(p.values().to_vec())),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if !is_injective(f) {
        return Err(Error::NotEmbedding("map is not injective".into()));
    }
    let g_values = (0..y.points())
        .map(|pt| {
            let hom: Vec<usize> = p_f.iter().map(|&j| y.topology()[j].values()[pt]).collect();
            source
                .hom_index(&hom)
                .ok_or_else(|| Error::NotEmbedding(format!("g({pt}) = {hom:?} is not a homomorphism")))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = ContinuousMap::new(y.clone(), source.pt_space().clone(), g_values)?;
    let f_star_values = lift_with_spectra(f, source, target)?;
    let f_star = ContinuousMap::new(source.pt_space().clone(), y.clone(), f_star_values)?;
    let g_after_f_star_is_id = (0..source.homs().len()).all(|a| g.values()[f_star.values()[a]] == a);
    let f_star_after_g_is_id = (0..y.points()).all(|pt| f_star.values()[g.values()[pt]] == pt);
    Ok(FirmnessCertificate {
        p_f,
        g,
        f_star,
        g_after_f_star_is_id,
        f_star_after_g_is_id,
    })
}

pub fn firmness_inverse(f: &ContinuousMap, caps: &Caps) -> Result<FirmnessCertificate> {
    let target = spectrum(f.cod(), caps)?;
    if !target.eta_is_bijective() {
        return Err(Error::NotSober("codomain".into()));
    }
    let source = spectrum(f.dom(), caps)?;
    firmness_inverse_with(f.values(), &source, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::space::{generate_topology, subspace};

    fn alg(name: &str) -> Arc<FiniteAlgebra> {
        Arc::new(builtin(name).unwrap())
    }

    fn f(v: &[usize]) -> QFunction {
        QFunction(v.to_vec())
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn meet_full() -> QSpace {
        generate_topology(alg("MEET_SL"), 2, [f(&[0, 1]), f(&[1, 0])], &caps()).unwrap()
    }

    fn point_into_sierpinski() -> ContinuousMap {
        let s = sierpinski(alg("BOOL_LAT"), &caps()).unwrap();
        subspace(&s, &Subset::new(2, [1]).unwrap()).unwrap().1
    }

    #[test]
    fn equalizer_set_examples() {
        assert_eq!(equalizer_set(&[0, 1], &[0, 1]).unwrap(), Subset::full(2));
        assert_eq!(equalizer_set(&[0, 0], &[1, 1]).unwrap(), Subset::empty(2));
        assert_eq!(equalizer_set(&[0, 1], &[0, 0]).unwrap().members(), &[0]);
        assert!(equalizer_set(&[0], &[0, 0]).is_err());
    }

    #[test]
    fn closure_examples() {
        let s = sierpinski(alg("BOOL_LAT"), &caps()).unwrap();
        assert_eq!(m_closure(&s, &Subset::full(2)).unwrap().closure, Subset::full(2));
        let empty = m_closure(&s, &Subset::empty(2)).unwrap();
        assert!(empty.closure.is_empty());
        // (c0, c1) agree on the empty set and disagree everywhere
        assert!(empty.witness_pairs.contains(&(0, 2)));
        let one = m_closure(&s, &Subset::new(2, [1]).unwrap()).unwrap();
        assert!(one.is_closed());
        assert_eq!(one.witness_pairs, vec![(1, 2)]);
    }

    #[test]
    fn closure_of_meet_example_in_power() {
        let x = meet_full();
        let spec = spectrum(&x, &caps()).unwrap();
        let power = SierpinskiPower::new(x.q().clone(), x.topology().len());
        let tx = power.materialize(&caps()).unwrap();
        let image: Vec<Vec<usize>> = spec.eta().iter().map(|&h| spec.homs()[h].clone()).collect();
        let m = Subset::new(tx.points(), image.iter().map(|t| power.index_of(t))).unwrap();
        let scanned = m_closure(&tx, &m).unwrap().closure;
        let expected = Subset::new(tx.points(), spec.homs().iter().map(|t| power.index_of(t))).unwrap();
        assert_eq!(scanned, expected);
        assert_eq!(scanned.len(), 3);
        // the generated-relation route lands on the same set
        let routed = power.closure(&image, &caps()).unwrap();
        assert_eq!(routed, spec.homs());
    }

    #[test]
    fn power_routes_agree_on_all_small_subsets() {
        for (name, exponent) in [("BOOL_LAT", 2), ("MEET_SL", 2), ("CHAIN3", 1)] {
            let q = alg(name);
            let power = SierpinskiPower::new(q.clone(), exponent);
            let tx = power.materialize(&caps()).unwrap();
            let points: Vec<Vec<usize>> = crate::space::all_functions(q.size(), exponent)
                .into_iter()
                .map(|p| p.0)
                .collect();
            for mask in 0u32..(1 << points.len()) {
                let chosen: Vec<Vec<usize>> = (0..points.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| points[i].clone())
                    .collect();
                let m = Subset::new(tx.points(), chosen.iter().map(|t| power.index_of(t))).unwrap();
                let scanned: Vec<usize> = m_closure(&tx, &m).unwrap().closure.members().to_vec();
                let routed: Vec<usize> = power
                    .closure(&chosen, &caps())
                    .unwrap()
                    .iter()
                    .map(|t| power.index_of(t))
                    .collect();
                assert_eq!(scanned, routed, "{name} mask {mask:b}");

                let sub_scanned = subspace(&tx, &m).unwrap().0;
                let sub_routed = power.subspace(&chosen, &caps()).unwrap();
                assert_eq!(sub_scanned, sub_routed);
            }
        }
    }

    #[test]
    fn epi_examples() {
        let x = meet_full();
        let id = ContinuousMap::identity(x.clone());
        assert!(is_epi(&id).unwrap().is_epi());

        let eta = spectrum(&x, &caps()).unwrap().eta_map();
        let cert = is_epi(&eta).unwrap();
        assert!(cert.via_injectivity && cert.via_closure);

        let inc = point_into_sierpinski();
        let cert = is_epi(&inc).unwrap();
        assert!(!cert.via_injectivity && !cert.via_closure);
        assert_eq!(cert.counterexample_pair, Some((f(&[0, 1]), f(&[1, 1]))));
        assert_eq!(cert.counterexample_point, Some(0));
    }

    #[test]
    fn epi_rejects_non_t0() {
        let c = generate_topology(alg("BOOL_LAT"), 2, [], &caps()).unwrap();
        assert_eq!(is_epi(&ContinuousMap::identity(c)), Err(Error::NotT0));
    }

    #[test]
    fn embedding_examples() {
        let x = meet_full();
        assert!(is_embedding(&ContinuousMap::identity(x.clone())));
        assert!(is_embedding(&spectrum(&x, &caps()).unwrap().eta_map()));
        let point = generate_topology(alg("MEET_SL"), 1, [], &caps()).unwrap();
        let collapse = ContinuousMap::new(x, point, vec![0, 0]).unwrap();
        assert!(!is_embedding(&collapse));
    }

    #[test]
    fn extremal_examples() {
        assert!(is_extremal_mono(&point_into_sierpinski()).unwrap());
        let x = meet_full();
        assert!(is_extremal_mono(&ContinuousMap::identity(x.clone())).unwrap());

        // e: X → Q_S^τ for the non-sober example
        let spec = spectrum(&x, &caps()).unwrap();
        let power = SierpinskiPower::new(x.q().clone(), x.topology().len());
        let tx = power.materialize(&caps()).unwrap();
        let e: Vec<usize> = spec.eta().iter().map(|&h| power.index_of(&spec.homs()[h])).collect();
        let e = ContinuousMap::new(x, tx, e).unwrap();
        assert!(is_embedding(&e));
        assert!(!is_extremal_mono(&e).unwrap());
    }

    #[test]
    fn equalizer_witness_examples() {
        let x = meet_full();
        let w = equalizer_witness(&ContinuousMap::identity(x.clone()), &caps()).unwrap();
        assert_eq!(w.equalizer(), Subset::full(2));

        // {extra point, η(0)} is closed in the sobrification; η's own image is dense
        let spec = spectrum(&x, &caps()).unwrap();
        let pt = spec.pt_space();
        let inc = subspace(pt, &Subset::new(3, [0, 1]).unwrap()).unwrap().1;
        let w = equalizer_witness(&inc, &caps()).unwrap();
        assert!(w.maps_are_continuous(pt));
        assert_eq!(w.equalizer(), inc.image());
        assert!(is_extremal_mono(&inc).unwrap());
        let dense = equalizer_witness(&spec.eta_map(), &caps()).unwrap();
        assert_eq!(dense.equalizer(), Subset::full(3));

        let inc = point_into_sierpinski();
        let w = equalizer_witness(&inc, &caps()).unwrap();
        let closure = m_closure(inc.cod(), &inc.image()).unwrap().closure;
        assert_eq!(w.equalizer(), closure);
        assert_eq!(closure, inc.image());
    }

    #[test]
    fn firmness_for_reflection() {
        let x = meet_full();
        let spec = spectrum(&x, &caps()).unwrap();
        let cert = firmness_inverse(&spec.eta_map(), &caps()).unwrap();
        assert!(cert.is_inverse());
        assert_eq!(cert.g.values(), &[0, 1, 2]);
        assert_eq!(cert.f_star.values(), &[0, 1, 2]);
    }

    #[test]
    fn firmness_rejects_non_epi() {
        assert!(matches!(
            firmness_inverse(&point_into_sierpinski(), &caps()),
            Err(Error::PfNotUnique(p)) if p == vec![1]
        ));
    }

    #[test]
    fn firmness_rejects_non_sober_codomain() {
        let x = meet_full();
        assert!(matches!(
            firmness_inverse(&ContinuousMap::identity(x), &caps()),
            Err(Error::NotSober(_))
        ));
    }
}
