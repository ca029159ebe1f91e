//! Bipartite `d ⊗ d` quantum states invariant under the maximal commutative
//! subgroup of `U(d)` (the diagonal-unitary torus), together with their
//! closed-form positivity and PPT criteria.
//!
//! Two state classes exist, swapped into each other by partial transposition:
//!
//! * **isotropic-like** (`U_x ⊗ U_x*`-invariant):
//!   `ρ = Σ_{ij} a_ij |ii⟩⟨jj| + Σ_{i≠j} c_ij |ij⟩⟨ij|`,
//! * **Werner-like** (`U_x ⊗ U_x`-invariant):
//!   `ρ̃ = Σ_{ij} b_ij |ij⟩⟨ji| + Σ_{i≠j} c_ij |ij⟩⟨ij|`.
//!
//! For both, positivity and positivity of the partial transpose reduce to
//! eigenvalue and 2×2-determinant inequalities on the parameter matrices
//! ([`states`]). Every verdict can be cross-checked against a brute-force
//! eigenvalue oracle on the dense d²×d² matrix ([`linalg`]).
//!
//! On top of the two classes the crate provides:
//!
//! * [`families`]: constructors for the named one-parameter families
//!   (Werner, isotropic, Shor, Horodecki σ_α, Størmer, Ha, ...) with their
//!   analytic thresholds,
//! * [`cones`]: separability and Schmidt-number-2 cone certificates with
//!   independently checkable decompositions,
//! * [`maps`]: a Choi-matrix positive-map engine with one-sided numerical
//!   evidence for indecomposability and atomicity,
//! * [`io`]: JSON file formats for matrices, states and certificates,
//! * [`cli`]: the `torus-ppt` command-line tool (feature `cli`, on by
//!   default).
//!
//! # Quick start
//!
//! Analytic criteria next to the dense oracle:
//!
//! ```
//! use torus_ppt::families::werner;
//! use torus_ppt::linalg::{is_psd, partial_transpose_dense};
//!
//! let state = werner(3, 0.6).unwrap();
//! assert!(state.check_positive(1e-9).verdict);
//! assert!(!state.check_ppt(1e-9).verdict); // PPT only up to p = 1/2
//!
//! // The brute-force eigenvalue oracle agrees.
//! let pt = partial_transpose_dense(&state.to_density(), 3).unwrap();
//! assert!(!is_psd(&pt, 1e-9).unwrap().is_psd);
//! ```
//!
//! Certificates are explicit decompositions that can be rechecked from
//! scratch:
//!
//! ```
//! use torus_ppt::cones::{v2_certificate_werner, verify_certificate};
//! use torus_ppt::families::werner;
//! use torus_ppt::states::ClassState;
//!
//! let state = werner(3, 0.3).unwrap();
//! let cert = v2_certificate_werner(&state, 1e-9).unwrap();
//! assert!(cert.terms.iter().all(|t| t.schmidt_rank <= 2));
//! let check = verify_certificate(&cert, &ClassState::Werner(state)).unwrap();
//! assert!(check.sound);
//! ```

#![forbid(unsafe_code)]

pub mod cones;
pub mod families;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod sampling;
pub mod scan;
pub mod states;

#[cfg(feature = "cli")]
pub mod cli;
