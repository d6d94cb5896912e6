//! Certifying hyperbolicity of one-relator groups with small cancellation
//! conditions, together with the angled-complex and disk-diagram toolkit
//! behind the certificate.

pub mod angled_complex;
pub mod diagrams;
pub mod fixtures;
pub mod onerelator;
pub mod rational;
pub mod smallcancel;
pub mod words;

pub use angled_complex::{Angle, AngledComplex};
pub use onerelator::{certify, Certificate, CertifyOptions};
pub use rational::Rational;
pub use smallcancel::{ConditionReport, Piece, TripleWitness};
pub use words::{Alphabet, CyclicWord, Letter, Presentation, Word};
