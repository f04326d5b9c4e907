//! Discrete 2D laboratory for paraboloid envelopes of grid functions.
//!
//! A [`grid::GridFunction`] carries a scalar field on a uniform grid over a
//! box. On top of it the lab builds:
//!
//! - exact discrete convex envelopes and `a`-paraboloid envelopes
//!   ([`envelope`], backed by the lifted lower hull in [`hull`]);
//! - contact sets and the minimal-opening curvature function `Θ̲`
//!   ([`contact`], [`theta`]);
//! - level-set measures of `Θ̲` and power-law decay fits ([`decay`]);
//! - the sliding-paraboloid measure inequality check ([`lemma`]);
//! - quadratic inf-convolution regularization ([`moreau`]);
//! - a discrete supersolution test ([`check`]) and a corpus of analytic
//!   test functions with known behavior ([`corpus`]).

pub mod check;
pub mod contact;
pub mod corpus;
pub mod decay;
pub mod envelope;
pub mod error;
pub mod grid;
pub mod hull;
pub mod io;
pub mod lemma;
pub mod lp;
pub mod moreau;
pub mod paraboloid;
pub mod theta;

pub use check::supersolution_check;
pub use contact::{contact_set, contact_tol, ContactSet};
pub use corpus::{corpus, corpus_names, CorpusSpec};
pub use decay::{decay_fit, intrinsic_ratio, DecayFit};
pub use envelope::{a_envelope, convex_envelope};
pub use error::LabError;
pub use grid::GridFunction;
pub use lemma::{lemma_check, LemmaCheckReport};
pub use moreau::inf_convolution;
pub use paraboloid::Paraboloid;
pub use theta::{level_measure, theta};
