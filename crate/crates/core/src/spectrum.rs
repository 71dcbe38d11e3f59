//! The spectrum of a space: points are the homomorphisms from its topology
//! (read as an algebra) into `Q`, opens are the evaluations at opens.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{enumerate_homs, FiniteAlgebra, Subset};
use crate::caps::Caps;
use crate::error::{checked_pow, guard, Error, Result};
use crate::space::{
    is_homeomorphism, is_injective, pointwise, power_space, sierpinski, subspace, ContinuousMap, QFunction, QSpace,
};
use crate::tuples::{decode, encode, for_each_index};

/// The topology of a space viewed as an algebra in its own right. Element `i`
/// of the algebra is the `i`-th open in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReifiedTopology {
    space: QSpace,
    algebra: FiniteAlgebra,
}

impl ReifiedTopology {
    pub fn space(&self) -> &QSpace {
        &self.space
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn open(&self, index: usize) -> &QFunction {
        &self.space.topology()[index]
    }
}

pub fn reify_topology(x: &QSpace, caps: &Caps) -> Result<ReifiedTopology> {
    let q = x.q();
    let opens = x.topology();
    let n = opens.len();
    let mut tables = Vec::with_capacity(q.signature().len());
    for (i, op) in q.signature().ops().iter().enumerate() {
        guard(
            "reified table entries",
            checked_pow(n, op.arity),
            caps.max_hom_search as u128,
        )?;
        let mut table = Vec::new();
        for_each_index(&vec![n; op.arity], |t| {
            let args: Vec<&QFunction> = t.iter().map(|&j| &opens[j]).collect();
            let r = pointwise(q, i, &args, x.points());
            table.push(x.open_index(&r).expect("topology is closed"));
            true
        });
        tables.push(table);
    }
    let algebra = FiniteAlgebra::new(format!("tau({})", q.name()), q.signature().clone(), n, tables)?;
    Ok(ReifiedTopology {
        space: x.clone(),
        algebra,
    })
}

/// `(pt τ, φ(τ))` for a source space `(X, τ)`, with the unit `η_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumResult {
    source: QSpace,
    homs: Vec<Vec<usize>>,
    pt_space: QSpace,
    eta: Vec<usize>,
    phi: Vec<usize>,
}

impl SpectrumResult {
    pub fn source(&self) -> &QSpace {
        &self.source
    }

    /// The points of `pt τ` as value tuples indexed by the source's opens.
    pub fn homs(&self) -> &[Vec<usize>] {
        &self.homs
    }

    pub fn pt_space(&self) -> &QSpace {
        &self.pt_space
    }

    /// `η_X` as a point map into `pt τ`.
    pub fn eta(&self) -> &[usize] {
        &self.eta
    }

    /// `φ` as a map from open index of the source to open index of `pt τ`.
    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn eta_map(&self) -> ContinuousMap {
        ContinuousMap::new(self.source.clone(), self.pt_space.clone(), self.eta.clone()).expect("eta is continuous")
    }

    pub fn eta_is_injective(&self) -> bool {
        is_injective(&self.eta)
    }

    pub fn eta_is_bijective(&self) -> bool {
        self.eta_is_injective() && self.eta.len() == self.homs.len()
    }

    pub fn eta_is_homeomorphism(&self) -> bool {
        is_homeomorphism(&self.eta, &self.source, &self.pt_space)
    }

    /// Position in `pt τ` of a homomorphism given by its value tuple.
    pub fn hom_index(&self, hom: &[usize]) -> Option<usize> {
        self.homs.binary_search_by(|h| h.as_slice().cmp(hom)).ok()
    }

    /// `η_X^{-1}` when it exists.
    pub fn eta_inverse(&self) -> Option<Vec<usize>> {
        if !self.eta_is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.eta.len()];
        for (x, &h) in self.eta.iter().enumerate() {
            inv[h] = x;
        }
        Some(inv)
    }
}

/// The evaluation hom `p ↦ p(x)` as a tuple over the opens of `x`.
pub fn evaluation(space: &QSpace, point: usize) -> Vec<usize> {
    space.topology().iter().map(|p| p.values()[point]).collect()
}

pub fn spectrum(x: &QSpace, caps: &Caps) -> Result<SpectrumResult> {
    let reified = reify_topology(x, caps)?;
    let homs: Vec<Vec<usize>> = enumerate_homs(reified.algebra(), x.q(), caps)?
        .into_iter()
        .map(|h| h.into_values())
        .collect();
    let phi_functions: Vec<QFunction> = (0..x.topology().len())
        .map(|p| QFunction(homs.iter().map(|h| h[p]).collect()))
        .collect();
    let topology: Vec<QFunction> = phi_functions
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // φ is a homomorphism, so its image is already a subalgebra
    let pt_space = QSpace::from_closed(x.q().clone(), homs.len(), topology);
    let phi = phi_functions
        .iter()
        .map(|p| pt_space.open_index(p).expect("image of phi"))
        .collect();
    let mut result = SpectrumResult {
        source: x.clone(),
        homs,
        pt_space,
        eta: Vec::new(),
        phi,
    };
    result.eta = (0..x.points())
        .map(|pt| {
            result
                .hom_index(&evaluation(x, pt))
                .expect("evaluation at a point is a homomorphism")
        })
        .collect();
    Ok(result)
}

/// Sober iff `η_X` is a bijection.
pub fn is_sober(x: &QSpace, caps: &Caps) -> Result<bool> {
    Ok(spectrum(x, caps)?.eta_is_bijective())
}

/// The sobrification `η_X: X → (pt τ, φ(τ))`; same payload as [`spectrum`].
pub fn sobrify(x: &QSpace, caps: &Caps) -> Result<SpectrumResult> {
    spectrum(x, caps)
}

/// Given `f: X → Y` with `Y` sober, the unique continuous `f*: pt τ_X → Y`
/// with `f* ∘ η_X = f`, computed from precomputed spectra of both ends.
///
/// `f*(α)` is the point of `Y` whose evaluation hom is `q ↦ α(q ∘ f)`.
pub fn lift_with_spectra(f: &[usize], source: &SpectrumResult, target: &SpectrumResult) -> Result<Vec<usize>> {
    let x = source.source();
    let y = target.source();
    let inverse = target
        .eta_inverse()
        .ok_or_else(|| Error::NotSober("eta of the codomain is not bijective".into()))?;
    let pulled: Vec<usize> = y
        .topology()
        .iter()
        .map(|q| {
            let qf = QFunction(f.iter().map(|&pt| q.values()[pt]).collect());
            x.open_index(&qf)
                .ok_or_else(|| Error::NotContinuous(q.values().to_vec()))
        })
        .collect::<Result<_>>()?;
    source
        .homs()
        .iter()
        .map(|alpha| {
            let alpha_prime: Vec<usize> = pulled.iter().map(|&p| alpha[p]).collect();
            target
                .hom_index(&alpha_prime)
                .map(|k| inverse[k])
                .ok_or_else(|| Error::NotSober(format!("no point of the codomain evaluates as {alpha_prime:?}")))
        })
        .collect()
}

/// The factorization of `f` through the reflection `η_X`.
pub fn lift_through_reflection(f: &ContinuousMap, caps: &Caps) -> Result<ContinuousMap> {
    let source = spectrum(f.dom(), caps)?;
    let target = spectrum(f.cod(), caps)?;
    let values = lift_with_spectra(f.values(), &source, &target)?;
    ContinuousMap::new(source.pt_space().clone(), f.cod().clone(), values)
}

/// The equalizer construction attached to the Sierpinski adjunction:
/// `TX = Q_S^τ`, `ψ_X(x)(p) = p(x)`, and `EX ⊆ TX` the points on which
/// `Tψ_X` and `ψ_{TX}` agree.
#[derive(Debug, Clone)]
pub struct AdjunctionEqualizer {
    pub tx: QSpace,
    /// `ψ_X` as a point map into `TX`.
    pub psi: Vec<usize>,
    /// `EX` with the subspace topology of `TX`.
    pub ex: QSpace,
    /// Points of `EX` as point indices of `TX`.
    pub ex_points: Vec<usize>,
    /// `k_X: X → EX`, with `ψ_X = e ∘ k_X`.
    pub k: Vec<usize>,
    /// `EX → pt τ`, when every point of `EX` is a homomorphism.
    pub iso_to_pt: Option<Vec<usize>>,
    pub spectrum: SpectrumResult,
}

impl AdjunctionEqualizer {
    /// `EX` and `pt τ` have the same points and the same opens.
    pub fn ex_is_pt(&self) -> bool {
        let Some(iso) = &self.iso_to_pt else {
            return false;
        };
        if iso.len() != self.spectrum.homs().len() || !is_injective(iso) {
            return false;
        }
        is_homeomorphism(iso, &self.ex, self.spectrum.pt_space())
    }

    /// `k_X` agrees with `η_X` under the identification of `EX` with `pt τ`.
    pub fn k_is_eta(&self) -> bool {
        match &self.iso_to_pt {
            Some(iso) => self.k.iter().map(|&e| iso[e]).eq(self.spectrum.eta().iter().copied()),
            None => false,
        }
    }

    pub fn k_is_homeomorphism(&self) -> bool {
        is_homeomorphism(&self.k, &self.spectrum.source, &self.ex)
    }
}

pub fn adjunction_equalizer(x: &QSpace, caps: &Caps) -> Result<AdjunctionEqualizer> {
    let q: &Arc<FiniteAlgebra> = x.q();
    let n = q.size();
    let tau = x.topology();
    guard("TX points", checked_pow(n, tau.len()), caps.max_power_carrier as u128)?;
    let qs = sierpinski(q.clone(), caps)?;
    let (tx, _) = power_space(&qs, tau.len(), caps)?;
    let spectrum = spectrum(x, caps)?;

    let psi: Vec<usize> = (0..x.points()).map(|pt| encode(&evaluation(x, pt), n)).collect();
    // α ∘ ψ_X is open in X for every open α of TX; record its index in τ
    let pulled: Vec<usize> = tx
        .topology()
        .iter()
        .map(|alpha| {
            let a = QFunction(psi.iter().map(|&f| alpha.values()[f]).collect());
            x.open_index(&a)
                .ok_or_else(|| Error::NotContinuous(alpha.values().to_vec()))
        })
        .collect::<Result<_>>()?;
    let ex_points: Vec<usize> = (0..tx.points())
        .filter(|&f| {
            let tuple = decode(f, n, tau.len());
            tx.topology()
                .iter()
                .zip(&pulled)
                .all(|(alpha, &p)| tuple[p] == alpha.values()[f])
        })
        .collect();
    let members = Subset::new(tx.points(), ex_points.iter().copied())?;
    let (ex, _) = subspace(&tx, &members)?;
    let k = psi
        .iter()
        .map(|f| {
            ex_points
                .binary_search(f)
                .map_err(|_| Error::Document("psi_X does not factor through EX".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso_to_pt = ex_points
        .iter()
        .map(|&f| spectrum.hom_index(&decode(f, n, tau.len())))
        .collect::<Option<Vec<_>>>();
    Ok(AdjunctionEqualizer {
        tx,
        psi,
        ex,
        ex_points,
        k,
        iso_to_pt,
        spectrum,
    })
}
