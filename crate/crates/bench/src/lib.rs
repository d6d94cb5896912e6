//! Benchmark inputs shared by the criterion harnesses.

use hypcert_core::{Alphabet, Presentation, Word};

/// `a^4 b a b a b^-1 a^-1 b^3 a^-1 b`, certified by small cancellation.
pub const EXAMPLE_1: &[i32] = &[1, 1, 1, 1, 2, 1, 2, 1, -2, -1, 2, 2, 2, -1, 2];
/// `a t^-1 a t a^2 t^-2 a^-1 t^2`, left UNKNOWN.
pub const EXAMPLE_2: &[i32] = &[1, -2, 1, 2, 1, 1, -2, -2, -1, 2, 2];

pub fn presentation(names: [&str; 2], codes: &[i32]) -> Presentation {
    let alphabet = Alphabet::new(names.iter().map(|s| s.to_string()).collect::<Vec<_>>()).expect("alphabet");
    Presentation::new(alphabet, &Word::from_signed(codes)).expect("non-trivial relator")
}
