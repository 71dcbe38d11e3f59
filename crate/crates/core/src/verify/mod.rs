//! Instance enumeration and the property suites.

mod suites;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{generate_subalgebra, power_algebra, FiniteAlgebra, Subset};
use crate::caps::Caps;
use crate::doc::AlgebraRef;
use crate::error::{checked_pow, guard, Error, Result};
use crate::space::{generate_topology, QFunction, QSpace};
use crate::tuples::decode;

/// Every suite id accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: [&str; 13] = [
    "thm-open-iff-continuous",
    "sierpinski-sober",
    "pt-sober",
    "t0-iff-eta-injective",
    "sober-iff-eta-homeo",
    "reflection-universal",
    "epi-equivalence",
    "extremal-equalizer",
    "firm",
    "closure-idempotent",
    "pt-closed-in-power",
    "hull-characterization",
    "adjunction",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    /// Every topology on every point count up to the bound.
    Exhaustive,
    /// `samples` topologies generated by random subbases.
    Random { seed: u64, samples: usize },
}

/// Which spaces a suite runs over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub algebra: AlgebraRef,
    pub max_points: usize,
    /// Point bound for codomains in the universal-property suite; defaults to
    /// `max_points + 1`.
    pub target_max_points: Option<usize>,
    pub mode: Mode,
    pub caps: Caps,
    /// Spaces with more opens are skipped by the adjunction suite.
    pub adjunction_max_opens: usize,
    /// Worker threads; 0 lets the pool decide.
    #[serde(skip)]
    pub jobs: usize,
}

impl InstanceSpec {
    pub fn exhaustive(algebra: &str, max_points: usize) -> Self {
        InstanceSpec {
            algebra: AlgebraRef::Name(algebra.to_string()),
            max_points,
            target_max_points: None,
            mode: Mode::Exhaustive,
            caps: Caps::default(),
            adjunction_max_opens: 3,
            jobs: 0,
        }
    }

    pub fn target_points(&self) -> usize {
        self.target_max_points.unwrap_or(self.max_points + 1)
    }

    fn with_max_points(&self, max_points: usize) -> Self {
        InstanceSpec {
            max_points,
            ..self.clone()
        }
    }
}

/// Every topology on exactly `points` points, sorted by their open lists.
///
/// Breadth-first over subalgebras of `Q^points`: starting from the least one,
/// each found subalgebra `S` is extended to `⟨S ∪ {a}⟩` for every `a ∉ S`.
/// Every subalgebra is finitely generated, so all are reached.
pub fn enumerate_topologies(q: &Arc<FiniteAlgebra>, points: usize, caps: &Caps) -> Result<Vec<QSpace>> {
    guard(
        "power carrier",
        checked_pow(q.size(), points),
        caps.max_power_carrier as u128,
    )?;
    let power = power_algebra(q, points, caps)?;
    let n = power.size();
    let start = generate_subalgebra(&power, &Subset::empty(n))?;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![start.members().to_vec()];
    seen.insert(start.members().to_vec());
    while let Some(current) = frontier.pop() {
        let subset = Subset::new(n, current.iter().copied())?;
        for a in (0..n).filter(|a| !subset.contains(*a)) {
            let seed = Subset::new(n, current.iter().copied().chain([a]))?;
            let next = generate_subalgebra(&power, &seed)?.members().to_vec();
            if seen.insert(next.clone()) {
                guard("topology count", seen.len() as u128, caps.max_topology as u128)?;
                frontier.push(next);
            }
        }
    }
    let mut spaces: Vec<QSpace> = seen
        .into_iter()
        .map(|members| {
            let opens: Vec<QFunction> = members
                .iter()
                .map(|&i| QFunction(decode(i, q.size(), points)))
                .collect();
            QSpace::from_closed(q.clone(), points, opens)
        })
        .collect();
    spaces.sort_by(|a, b| a.topology().cmp(b.topology()));
    Ok(spaces)
}

/// The instances a suite runs over, in a fixed order.
pub fn enumerate_spaces(spec: &InstanceSpec) -> Result<Vec<QSpace>> {
    let q = Arc::new(spec.algebra.resolve()?);
    match spec.mode {
        Mode::Exhaustive => {
            let mut out = Vec::new();
            for points in 0..=spec.max_points {
                out.extend(enumerate_topologies(&q, points, &spec.caps)?);
            }
            Ok(out)
        }
        Mode::Random { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for _ in 0..samples {
                let points = rng.gen_range(0..=spec.max_points);
                let gens = rng.gen_range(0..=3);
                let subbasis: Vec<QFunction> = (0..gens)
                    .map(|_| QFunction((0..points).map(|_| rng.gen_range(0..q.size())).collect()))
                    .collect();
                let x = generate_topology(q.clone(), points, subbasis, &spec.caps)?;
                if seen.insert((x.points(), x.topology().to_vec())) {
                    out.push(x);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    /// Index of the failing check within the suite.
    pub instance: usize,
    pub detail: String,
    /// Replayable payload: the space(s) and map involved.
    pub counterexample: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub instances_tried: usize,
    pub passes: usize,
    /// Instances outside the suite's size guard; not counted as tried.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of one check within a suite.
#[derive(Debug, Clone)]
pub(crate) enum Outcome {
    Pass,
    Fail {
        detail: String,
        counterexample: serde_json::Value,
    },
    Skip,
}

/// Runs one suite over the instances described by `spec`. Property
/// violations are recorded and the run continues.
pub fn run_suite(name: &str, spec: &InstanceSpec) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| Error::Document(e.to_string()))?;
    let outcomes = pool.install(|| suites::run(name, spec))?;
    let mut report = SuiteReport {
        suite: name.to_string(),
        algebra: spec.algebra.name().to_string(),
        instances_tried: 0,
        passes: 0,
        skipped: 0,
        failures: Vec::new(),
        wall_time: Duration::ZERO,
    };
    for (instance, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Pass => {
                report.instances_tried += 1;
                report.passes += 1;
            }
            Outcome::Fail { detail, counterexample } => {
                report.instances_tried += 1;
                report.failures.push(Failure {
                    instance,
                    detail,
                    counterexample,
                });
            }
            Outcome::Skip => report.skipped += 1,
        }
    }
    report.wall_time = start.elapsed();
    Ok(report)
}
