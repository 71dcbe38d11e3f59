//! Finite Ω-algebras, Q-topological spaces over a fixed finite algebra `Q`,
//! their spectra and sobrification, the [ ]-closure with the epimorphism and
//! extremal-monomorphism tests it supports, and exhaustive property suites
//! over small instances.

pub mod algebra;
pub mod caps;
pub mod closure;
pub mod doc;
pub mod error;
pub mod space;
pub mod spectrum;
pub mod tuples;
pub mod verify;

pub use algebra::{
    builtin, enumerate_homs, generate_subalgebra, is_hom, power_algebra, AlgebraHom, FiniteAlgebra, Operation,
    RawAlgebra, RawOperation, Signature, Subset, BUILTIN_NAMES,
};
pub use caps::Caps;
pub use closure::{
    equalizer_set, equalizer_witness, firmness_inverse, is_embedding, is_epi, is_extremal_mono, m_closure,
    ClosureCertificate, EpiCertificate, EqualizerWitness, FirmnessCertificate, SierpinskiPower,
};
pub use doc::{AlgebraRef, MapDoc, SpaceDoc};
pub use error::{Error, Result};
pub use space::{
    generate_topology, is_continuous, is_t0, power_space, preimage_operator, sierpinski, subspace, ContinuousMap,
    QFunction, QSpace,
};
pub use spectrum::{
    adjunction_equalizer, is_sober, lift_through_reflection, reify_topology, sobrify, spectrum, AdjunctionEqualizer,
    ReifiedTopology, SpectrumResult,
};
pub use verify::{enumerate_spaces, run_suite, InstanceSpec, Mode, SuiteReport, SUITES};
