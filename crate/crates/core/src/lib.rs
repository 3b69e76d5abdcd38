//! Exact analysis of generalized mass-action reaction networks.

pub mod analysis;
pub mod laplacian;
pub mod linalg;
pub mod network;
pub mod numeric;
pub mod report;
pub mod sign;
pub mod stability;

/// Example networks shipped with the crate, as DSL text.
pub mod fixtures {
    pub const LOTKA: &str = include_str!("../../../fixtures/lotka.gmak");
    pub const LOTKA_MAK: &str = include_str!("../../../fixtures/lotka-mak.gmak");
    pub const SIR: &str = include_str!("../../../fixtures/sir.gmak");
    pub const SIGNALING: &str = include_str!("../../../fixtures/signaling.gmak");
    pub const FUTILE: &str = include_str!("../../../fixtures/futile.gmak");
    pub const FUTILE_REVERSED: &str = include_str!("../../../fixtures/futile-reversed.gmak");

    /// `(file stem, text)` for every fixture.
    pub const ALL: [(&str, &str); 6] = [
        ("lotka", LOTKA),
        ("lotka-mak", LOTKA_MAK),
        ("sir", SIR),
        ("signaling", SIGNALING),
        ("futile", FUTILE),
        ("futile-reversed", FUTILE_REVERSED),
    ];
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/networks.md")]
    struct Networks;
    #[doc = include_str!("../../../book/src/sign-conditions.md")]
    struct SignConditions;
    #[doc = include_str!("../../../book/src/stability.md")]
    struct Stability;
    #[doc = include_str!("../../../book/src/numeric.md")]
    struct Numeric;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
