use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{enumerate_spaces, InstanceSpec, Outcome};
use crate::algebra::{builtin, FiniteAlgebra, Subset, BUILTIN_NAMES};
use crate::closure::{
    epi_certificate, equalizer_witness, firmness_inverse_with, is_embedding_parts, is_extremal_mono_parts, m_closure,
    SierpinskiPower,
};
use crate::doc::AlgebraRef;
use crate::doc::SpaceDoc;
use crate::error::{checked_pow, Error, Result};
use crate::space::{all_functions, is_continuous, is_t0, power_space, sierpinski, ContinuousMap, QSpace};
use crate::spectrum::{adjunction_equalizer, lift_with_spectra, spectrum, SpectrumResult};
use crate::tuples::for_each_index;

/// Power spaces up to this many points are also closed by a full pair scan.
const CROSS_CHECK_POINTS: u128 = 16;

type Verdict = std::result::Result<(), String>;

struct Instance {
    space: QSpace,
    spectrum: SpectrumResult,
    t0: bool,
    sober: bool,
}

fn instances(spec: &InstanceSpec) -> Result<Vec<Instance>> {
    enumerate_spaces(spec)?
        .into_par_iter()
        .map(|space| {
            let spectrum = spectrum(&space, &spec.caps)?;
            Ok(Instance {
                t0: is_t0(&space),
                sober: spectrum.eta_is_bijective(),
                space,
                spectrum,
            })
        })
        .collect()
}

fn space_json(x: &QSpace) -> Value {
    serde_json::to_value(SpaceDoc::of(x)).expect("documents serialize")
}

fn map_json(dom: &QSpace, cod: &QSpace, values: &[usize]) -> Value {
    json!({ "dom": space_json(dom), "cod": space_json(cod), "values": values })
}

fn settle(result: Result<Verdict>, context: impl FnOnce() -> Value) -> Outcome {
    match result {
        Ok(Ok(())) => Outcome::Pass,
        Ok(Err(detail)) => Outcome::Fail {
            detail,
            counterexample: context(),
        },
        Err(Error::SizeGuard { .. }) => Outcome::Skip,
        Err(e) => Outcome::Fail {
            detail: e.to_string(),
            counterexample: context(),
        },
    }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

/// Every continuous point map `x → y`, in lexicographic order.
fn continuous_maps(x: &QSpace, y: &QSpace) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_index(&vec![y.points(); x.points()], |f| {
        if is_continuous(f, x, y) {
            out.push(f.to_vec());
        }
        true
    });
    out
}

/// All ordered pairs of the selected instances.
fn pairs<'a>(sources: &[&'a Instance], targets: &[&'a Instance]) -> Vec<(&'a Instance, &'a Instance)> {
    sources
        .iter()
        .flat_map(|s| targets.iter().map(move |t| (*s, *t)))
        .collect()
}

/// Runs `check` over every continuous map of every pair, flattening in order.
fn over_maps(
    pairs: &[(&Instance, &Instance)],
    check: impl Fn(&Instance, &Instance, &[usize]) -> Option<Outcome> + Sync,
) -> Vec<Outcome> {
    pairs
        .par_iter()
        .map(|(x, y)| {
            continuous_maps(&x.space, &y.space)
                .iter()
                .filter_map(|f| check(x, y, f))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub(super) fn run(name: &str, spec: &InstanceSpec) -> Result<Vec<Outcome>> {
    if name == "sierpinski-sober" {
        return Ok(sierpinski_sober(spec));
    }
    let all = instances(spec)?;
    let outcomes = match name {
        "thm-open-iff-continuous" => open_iff_continuous(&all, spec)?,
        "pt-sober" => per_instance(&all, |i| pt_sober(i, spec)),
        "t0-iff-eta-injective" => per_instance(&all, |i| {
            Ok(ensure(i.t0 == i.spectrum.eta_is_injective(), || {
                format!("T0 = {} but eta injective = {}", i.t0, i.spectrum.eta_is_injective())
            }))
        }),
        "sober-iff-eta-homeo" => per_instance(&all, |i| {
            let homeo = i.spectrum.eta_is_homeomorphism();
            Ok(ensure(i.sober == homeo, || {
                format!("sober = {} but eta homeomorphism = {homeo}", i.sober)
            }))
        }),
        "reflection-universal" => reflection_universal(&all, spec)?,
        "epi-equivalence" => epi_equivalence(&all),
        "extremal-equalizer" => extremal_equalizer(&all, spec),
        "firm" => firm(&all),
        "closure-idempotent" => per_instance(&all, closure_idempotent),
        "pt-closed-in-power" => per_instance(t0_only(&all), |i| pt_closed_in_power(i, spec)),
        "hull-characterization" => hull_characterization(&all, spec)?,
        "adjunction" => per_instance(&all, |i| adjunction(i, spec)),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(outcomes)
}

fn t0_only(all: &[Instance]) -> Vec<&Instance> {
    all.iter().filter(|i| i.t0).collect()
}

fn per_instance<'a, I>(all: I, check: impl Fn(&Instance) -> Result<Verdict> + Sync) -> Vec<Outcome>
where
    I: IntoParallelIterator<Item = &'a Instance>,
{
    all.into_par_iter()
        .map(|i| settle(check(i), || json!({ "space": space_json(&i.space) })))
        .collect()
}

fn open_iff_continuous(all: &[Instance], spec: &InstanceSpec) -> Result<Vec<Outcome>> {
    let q = Arc::new(spec.algebra.resolve()?);
    let qs = sierpinski(q.clone(), &spec.caps)?;
    Ok(all
        .par_iter()
        .map(|i| {
            let x = &i.space;
            let bad = all_functions(q.size(), x.points())
                .into_iter()
                .find(|p| x.contains(p) != is_continuous(p.values(), x, &qs));
            match bad {
                None => Outcome::Pass,
                Some(p) => Outcome::Fail {
                    detail: format!("open = {} disagrees with continuity", x.contains(&p)),
                    counterexample: map_json(x, &qs, p.values()),
                },
            }
        })
        .collect())
}

fn sierpinski_sober(spec: &InstanceSpec) -> Vec<Outcome> {
    let mut algebras: Vec<Result<FiniteAlgebra>> = BUILTIN_NAMES.iter().map(|name| builtin(name)).collect();
    if let AlgebraRef::Inline(_) = spec.algebra {
        algebras.push(spec.algebra.resolve());
    }
    algebras
        .into_iter()
        .map(|q| {
            let run = |q: FiniteAlgebra| -> Result<(QSpace, bool)> {
                let s = sierpinski(Arc::new(q), &spec.caps)?;
                let sober = spectrum(&s, &spec.caps)?.eta_is_bijective();
                Ok((s, sober))
            };
            match q.and_then(run) {
                Ok((_, true)) => Outcome::Pass,
                Ok((s, false)) => Outcome::Fail {
                    detail: format!("Sierpinski space of {} is not sober", s.q().name()),
                    counterexample: json!({ "space": space_json(&s) }),
                },
                Err(Error::SizeGuard { .. }) => Outcome::Skip,
                Err(e) => Outcome::Fail {
                    detail: e.to_string(),
                    counterexample: json!({ "algebra": spec.algebra }),
                },
            }
        })
        .collect()
}

fn pt_sober(i: &Instance, spec: &InstanceSpec) -> Result<Verdict> {
    let pt = i.spectrum.pt_space();
    let sober = spectrum(pt, &spec.caps)?.eta_is_bijective();
    Ok(ensure(sober, || {
        format!("pt space with {} points is not sober", pt.points())
    }))
}

fn reflection_universal(all: &[Instance], spec: &InstanceSpec) -> Result<Vec<Outcome>> {
    let target_points = spec.target_points();
    let wider;
    let target_pool: &[Instance] = if target_points == spec.max_points {
        all
    } else {
        wider = instances(&spec.with_max_points(target_points))?;
        &wider
    };
    let sources: Vec<&Instance> = all.iter().filter(|i| i.t0).collect();
    let targets: Vec<&Instance> = target_pool.iter().filter(|i| i.sober).collect();
    Ok(pairs(&sources, &targets)
        .par_iter()
        .map(|(x, y)| {
            let mut failing = None;
            let verdict = (|| -> Result<Verdict> {
                for f in continuous_maps(&x.space, &y.space) {
                    let v = lift_check(x, y, &f)?;
                    if v.is_err() {
                        failing = Some(f);
                        return Ok(v);
                    }
                }
                Ok(Ok(()))
            })();
            settle(verdict, || match &failing {
                Some(f) => map_json(&x.space, &y.space, f),
                None => json!({ "dom": space_json(&x.space), "cod": space_json(&y.space) }),
            })
        })
        .collect())
}

/// `f* ∘ η = f`, `f*` continuous, and no other continuous `g` has `g ∘ η = f`.
fn lift_check(x: &Instance, y: &Instance, f: &[usize]) -> Result<Verdict> {
    let lifted = lift_with_spectra(f, &x.spectrum, &y.spectrum)?;
    let pt = x.spectrum.pt_space();
    if !is_continuous(&lifted, pt, &y.space) {
        return Ok(Err(format!("f* = {lifted:?} is not continuous")));
    }
    let eta = x.spectrum.eta();
    if (0..f.len()).any(|pt| lifted[eta[pt]] != f[pt]) {
        return Ok(Err(format!("f* = {lifted:?} does not factor f = {f:?}")));
    }
    // every g with g ∘ η = f: fixed on the image of η, free elsewhere
    let mut fixed: Vec<Option<usize>> = vec![None; pt.points()];
    for (pt, &h) in eta.iter().enumerate() {
        fixed[h] = Some(f[pt]);
    }
    let free: Vec<usize> = (0..pt.points()).filter(|&h| fixed[h].is_none()).collect();
    let mut factorizations = Vec::new();
    for_each_index(&vec![y.space.points(); free.len()], |choice| {
        let mut g: Vec<usize> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        for (&h, &c) in free.iter().zip(choice) {
            g[h] = c;
        }
        if is_continuous(&g, pt, &y.space) {
            factorizations.push(g);
        }
        true
    });
    Ok(ensure(factorizations == vec![lifted.clone()], || {
        format!("factorizations of f through eta: {factorizations:?}, f* = {lifted:?}")
    }))
}

fn epi_equivalence(all: &[Instance]) -> Vec<Outcome> {
    let t0: Vec<&Instance> = all.iter().filter(|i| i.t0).collect();
    over_maps(&pairs(&t0, &t0), |x, y, f| {
        let verdict = epi_certificate(f, &x.space, &y.space).map(|c| {
            ensure(c.criteria_agree(), || {
                format!(
                    "pullback injective = {}, image dense = {}",
                    c.via_injectivity, c.via_closure
                )
            })
        });
        Some(settle(verdict, || map_json(&x.space, &y.space, f)))
    })
}

fn extremal_equalizer(all: &[Instance], spec: &InstanceSpec) -> Vec<Outcome> {
    let t0: Vec<&Instance> = all.iter().filter(|i| i.t0).collect();
    over_maps(&pairs(&t0, &t0), |x, y, f| {
        if !is_embedding_parts(f, &x.space, &y.space) {
            return None;
        }
        let verdict = (|| -> Result<Verdict> {
            let m = ContinuousMap::new(x.space.clone(), y.space.clone(), f.to_vec())?;
            let witness = equalizer_witness(&m, &spec.caps)?;
            let image = m.image();
            let closure = m_closure(&y.space, &image)?.closure;
            let eq = witness.equalizer();
            if !witness.maps_are_continuous(&y.space) {
                return Ok(Err("witness maps are not continuous".into()));
            }
            if eq != closure {
                return Ok(Err(format!(
                    "Eq(f*, g*) = {:?} but closure = {:?}",
                    eq.members(),
                    closure.members()
                )));
            }
            let extremal = is_extremal_mono_parts(f, &x.space, &y.space)?;
            Ok(ensure(extremal == (eq == image), || {
                format!("extremal = {extremal} but image is an equalizer = {}", eq == image)
            }))
        })();
        Some(settle(verdict, || map_json(&x.space, &y.space, f)))
    })
}

fn firm(all: &[Instance]) -> Vec<Outcome> {
    let t0: Vec<&Instance> = all.iter().filter(|i| i.t0).collect();
    let sober: Vec<&Instance> = all.iter().filter(|i| i.sober).collect();
    over_maps(&pairs(&t0, &sober), |x, y, f| {
        if !is_embedding_parts(f, &x.space, &y.space) {
            return None;
        }
        match epi_certificate(f, &x.space, &y.space) {
            Ok(c) if c.is_epi() => {}
            _ => return None,
        }
        let verdict = firmness_inverse_with(f, &x.spectrum, &y.spectrum).map(|cert| {
            let factors = x
                .spectrum
                .eta()
                .iter()
                .enumerate()
                .all(|(pt, &h)| cert.f_star.values()[h] == f[pt]);
            ensure(cert.is_inverse() && factors, || {
                format!(
                    "g after f* is id = {}, f* after g is id = {}, f* factors f = {factors}",
                    cert.g_after_f_star_is_id, cert.f_star_after_g_is_id
                )
            })
        });
        Some(settle(verdict, || map_json(&x.space, &y.space, f)))
    })
}

fn closure_idempotent(i: &Instance) -> Result<Verdict> {
    let x = &i.space;
    let mut verdict = Ok(());
    let mut failure = None;
    for_each_index(&vec![2; x.points()], |mask| {
        let run = || -> Result<Verdict> {
            let m = Subset::new(x.points(), (0..x.points()).filter(|&p| mask[p] == 1))?;
            let once = m_closure(x, &m)?.closure;
            let twice = m_closure(x, &once)?.closure;
            Ok(ensure(m.is_subset_of(&once) && once == twice, || {
                format!(
                    "M = {:?}, [M] = {:?}, [[M]] = {:?}",
                    m.members(),
                    once.members(),
                    twice.members()
                )
            }))
        };
        match run() {
            Ok(Ok(())) => true,
            Ok(v) => {
                verdict = v;
                false
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(verdict),
    }
}

/// The image of `e: X → Q_S^τ`, `e(x)(μ) = μ(x)`, as tuples.
fn embedded_points(i: &Instance) -> Vec<Vec<usize>> {
    i.spectrum.eta().iter().map(|&h| i.spectrum.homs()[h].clone()).collect()
}

fn pt_closed_in_power(i: &Instance, spec: &InstanceSpec) -> Result<Verdict> {
    let x = &i.space;
    let power = SierpinskiPower::new(x.q().clone(), x.topology().len());
    let image = embedded_points(i);
    let closure = power.closure(&image, &spec.caps)?;
    if closure != i.spectrum.homs() {
        return Ok(Err(format!(
            "[e(X)] = {closure:?} differs from pt = {:?}",
            i.spectrum.homs()
        )));
    }
    if power.point_count() <= CROSS_CHECK_POINTS {
        let tx = power.materialize(&spec.caps)?;
        let m = Subset::new(tx.points(), image.iter().map(|t| power.index_of(t)))?;
        let scanned = m_closure(&tx, &m)?.closure;
        let routed: Vec<usize> = closure.iter().map(|t| power.index_of(t)).collect();
        if scanned.members() != routed {
            return Ok(Err(format!(
                "pair scan gives {:?}, generated route gives {routed:?}",
                scanned.members()
            )));
        }
    }
    let sub = power.subspace(&closure, &spec.caps)?;
    if &sub != i.spectrum.pt_space() {
        return Ok(Err("subspace topology on [e(X)] differs from phi(tau)".into()));
    }
    let sub_spectrum = spectrum(&sub, &spec.caps)?;
    if !sub_spectrum.eta_is_bijective() {
        return Ok(Err("[e(X)] is not sober".into()));
    }
    let corestriction = i.spectrum.eta();
    if !is_embedding_parts(corestriction, x, &sub) || !epi_certificate(corestriction, x, &sub)?.is_epi() {
        return Ok(Err("X → [e(X)] is not an epimorphic embedding".into()));
    }
    let cert = firmness_inverse_with(corestriction, &i.spectrum, &sub_spectrum)?;
    Ok(ensure(cert.is_inverse() && cert.f_star.is_homeomorphism(), || {
        "f*: pt → [e(X)] is not an isomorphism".into()
    }))
}

fn hull_characterization(all: &[Instance], spec: &InstanceSpec) -> Result<Vec<Outcome>> {
    let q = Arc::new(spec.algebra.resolve()?);
    let mut outcomes: Vec<Outcome> = per_instance(t0_only(all), |i| {
        let power = SierpinskiPower::new(i.space.q().clone(), i.space.topology().len());
        let image = embedded_points(i);
        let closed = power.closure(&image, &spec.caps)?.len() == image.len();
        Ok(ensure(closed == i.sober, || {
            format!("sober = {} but e(X) is [ ]-closed in Q_S^tau = {closed}", i.sober)
        }))
    });

    // every [ ]-closed subspace of a small Sierpinski power is sober
    let mut exponent = 0;
    while checked_pow(q.size(), exponent) <= 9 {
        let power = SierpinskiPower::new(q.clone(), exponent);
        let points: Vec<Vec<usize>> = all_functions(q.size(), exponent).into_iter().map(|p| p.0).collect();
        let mut bad = None;
        let verdict = (|| -> Result<Verdict> {
            for mask in 0u64..1 << points.len() {
                let chosen: Vec<Vec<usize>> = (0..points.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| points[b].clone())
                    .collect();
                if power.closure(&chosen, &spec.caps)? != chosen {
                    continue;
                }
                let sub = power.subspace(&chosen, &spec.caps)?;
                if !spectrum(&sub, &spec.caps)?.eta_is_bijective() {
                    bad = Some(sub);
                    return Ok(Err(format!("closed subset {chosen:?} of Q_S^{exponent} is not sober")));
                }
            }
            Ok(Ok(()))
        })();
        outcomes.push(settle(verdict, || match &bad {
            Some(sub) => json!({ "space": space_json(sub) }),
            None => json!({ "exponent": exponent }),
        }));
        exponent += 1;
    }

    // squares of sober spaces are sober
    outcomes.extend(
        all.par_iter()
            .filter(|i| i.sober && i.space.points() <= 2)
            .map(|i| {
                let verdict = (|| -> Result<Verdict> {
                    let (square, _) = power_space(&i.space, 2, &spec.caps)?;
                    let sober = spectrum(&square, &spec.caps)?.eta_is_bijective();
                    Ok(ensure(sober, || "square of a sober space is not sober".into()))
                })();
                settle(verdict, || json!({ "space": space_json(&i.space) }))
            })
            .collect::<Vec<_>>(),
    );
    Ok(outcomes)
}

fn adjunction(i: &Instance, spec: &InstanceSpec) -> Result<Verdict> {
    let opens = i.space.topology().len();
    if opens > spec.adjunction_max_opens {
        return Err(Error::SizeGuard {
            what: "adjunction opens",
            size: opens as u128,
            cap: spec.adjunction_max_opens as u128,
        });
    }
    let a = adjunction_equalizer(&i.space, &spec.caps)?;
    if !a.ex_is_pt() {
        return Ok(Err(format!(
            "EX has points {:?}, pt has {}",
            a.ex_points,
            a.spectrum.homs().len()
        )));
    }
    if !a.k_is_eta() {
        return Ok(Err(format!("k = {:?} differs from eta = {:?}", a.k, a.spectrum.eta())));
    }
    let homeo = a.k_is_homeomorphism();
    Ok(ensure(homeo == i.sober, || {
        format!("sober = {} but k homeomorphism = {homeo}", i.sober)
    }))
}
