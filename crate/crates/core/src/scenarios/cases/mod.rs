//! Scenario bodies and their defaults.

mod dirac;
mod em;
mod schrodinger;

use super::config::Params;
use super::Scenario;

/// Lexicographic by name.
pub(super) static REGISTRY: &[Scenario] = &[
    Scenario {
        name: "boost-observables",
        description: "Boosted rest solutions: energy m cosh ξ, momentum m sinh ξ, charge, and a centroid riding at the boost velocity",
        checks: &["centroid", "charge", "energy", "momentum"],
        defaults: dirac::boost_defaults,
        run: dirac::boost_observables,
    },
    Scenario {
        name: "charge-conjugation",
        description: "Charge conjugation pairs the rest solutions, flips the four-current, keeps energy, momentum and spin, and commutes with the lift",
        checks: &["charge-flip", "current-flip", "energy", "lift-identity", "momentum", "pair", "spin"],
        defaults: dirac::lattice_defaults,
        run: dirac::charge_conjugation,
    },
    Scenario {
        name: "commutator",
        description: "Position and momentum generators commute on the two-point field while [Q, P] = iħ holds for the wavefunction; lift and evolution commute",
        checks: &["canonical-commutator", "generator-commutator", "lift-evolution"],
        defaults: schrodinger::commutator_defaults,
        run: schrodinger::commutator,
    },
    Scenario {
        name: "coupled-smoke",
        description: "Reduced matter field and Maxwell potential stepped together at weak coupling; charge and hermiticity are conserved",
        checks: &["charge-drift", "hermiticity"],
        defaults: em::coupled_defaults,
        run: em::coupled_smoke,
    },
    Scenario {
        name: "dirac-rest-table",
        description: "Charge, energy, momentum and spin of the four static localized solutions, plus their free-equation residual",
        checks: &["charge", "energy", "momentum", "residual", "spin", "transverse-spin"],
        defaults: dirac::lattice_defaults,
        run: dirac::rest_table,
    },
    Scenario {
        name: "free-localized",
        description: "Non-spreading localized free solution translating at ħk0/m with constant momentum and energy",
        checks: &["energy", "momentum-drift", "position", "shape"],
        defaults: schrodinger::localized_defaults,
        run: schrodinger::free_localized,
    },
    Scenario {
        name: "gauge-invariance",
        description: "Interacting evolution under a static gauge transformation equals the phased field; current and field strength are unchanged",
        checks: &["current-invariance", "field-strength-invariance", "gauge-evolution"],
        defaults: em::gauge_defaults,
        run: em::gauge_invariance,
    },
    Scenario {
        name: "maxwell-vacuum",
        description: "Lorenz-gauge wave stepper: vacuum plane wave, static Coulomb profile, gauge condition and continuity of sourced currents",
        checks: &["coulomb", "current-continuity", "lorenz-gauge", "plane-wave"],
        defaults: em::maxwell_defaults,
        run: em::maxwell_vacuum,
    },
    Scenario {
        name: "momentum-symmetry",
        description: "Momentum and energy from the x_D slice agree with their momentum-space forms; a localized field transforms to a Gaussian row",
        checks: &["energy-forms", "localized-transform", "momentum-forms"],
        defaults: schrodinger::momentum_defaults,
        run: schrodinger::momentum_symmetry,
    },
    Scenario {
        name: "oscillator-beats",
        description: "Coherence between oscillator levels rotates at the level spacing while the ground-state field stays static",
        checks: &["beat-rate", "ground-drift", "level-spacing"],
        defaults: schrodinger::beats_defaults,
        run: schrodinger::oscillator_beats,
    },
    Scenario {
        name: "support-region",
        description: "Reach of a boosted localized solution along the boost axis, on and off the physical slice",
        checks: &["off-slice-support", "slice-support"],
        defaults: dirac::support_defaults,
        run: dirac::support_region,
    },
];

/// Shared baseline; each scenario overrides what it uses.
fn base() -> Params {
    Params {
        n: 64,
        length: 16.0,
        n_d: 64,
        length_d: 16.0,
        mass: 1.0,
        hbar: 1.0,
        charge: 0.0,
        omega: 1.0,
        sigma: 1.0,
        x0: 0.0,
        k0: 0.0,
        velocity: 0.5,
        direction: [0.0, 0.0, 1.0],
        theta_amplitude: 0.0,
        dt: 0.01,
        steps: 1,
        snapshot_times: Vec::new(),
    }
}

/// Largest absolute entry difference of two equally long sequences.
fn max_diff<T>(a: &[T], b: &[T], norm: impl Fn(&T, &T) -> f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| norm(x, y)).fold(0.0, f64::max)
}
