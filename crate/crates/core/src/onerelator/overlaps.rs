use thiserror::Error;

use crate::words::{is_proper_power, symmetrized_set, CyclicWord, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OneRelatorError {
    #[error("relator is empty")]
    EmptyRelator,
    #[error("relator is a proper power")]
    ProperPowerInput,
    #[error("relator has length {0}; at least 4 is needed")]
    ShortRelator(usize),
}

/// A maximal gluing of another precell along the boundary of the precell
/// `C` of `R`. The partner is read as symmetrized-set element
/// `partner`, whose first letter sits on boundary edge `start` of `C`.
/// The two readings agree on exactly `length` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overlap {
    pub start: usize,
    pub length: usize,
    pub partner: usize,
}

/// Checks the relator hypotheses shared by all precell constructions.
pub fn precell_relator(relator: &CyclicWord) -> Result<(), OneRelatorError> {
    if relator.is_empty() {
        return Err(OneRelatorError::EmptyRelator);
    }
    if is_proper_power(relator).is_proper_power {
        return Err(OneRelatorError::ProperPowerInput);
    }
    if relator.len() <= 3 {
        return Err(OneRelatorError::ShortRelator(relator.len()));
    }
    Ok(())
}

/// Index of `w` in `elements`.
fn position(elements: &[Word], w: &Word) -> usize {
    elements.iter().position(|e| e == w).expect("element of the symmetrized set")
}

/// All maximal gluings with `length ≥ 1` (and, optionally, single-vertex
/// contacts with `length = 0`), sorted by `(start, length, partner)`.
pub fn enumerate_overlaps(relator: &CyclicWord, include_vertex_contacts: bool) -> Result<Vec<Overlap>, OneRelatorError> {
    precell_relator(relator)?;
    let r = relator.len();
    let elements = symmetrized_set(relator);
    let at = |i: usize| relator.at(i);
    let mut out = Vec::new();
    for start in 0..r {
        let before = at(start + r - 1);
        for (j, s) in elements.iter().enumerate() {
            let s = s.letters();
            let l = (0..r).take_while(|&i| s[i] == at(start + i)).count();
            if l == r {
                // the identity gluing of C onto itself
                continue;
            }
            if l >= 1 {
                if s[r - 1] != before {
                    out.push(Overlap {
                        start,
                        length: l,
                        partner: j,
                    });
                }
            } else if include_vertex_contacts && is_vertex_contact(s, at(start), before) {
                // read in the other direction the partner is inverse(s); keep one
                let inv = position(&elements, &Word::new(s.to_vec()).inverse());
                if j <= inv {
                    out.push(Overlap {
                        start,
                        length: 0,
                        partner: j,
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A cell read as `s` from boundary vertex `start` shares no edge with `C`
/// there: neither of its two edges at the vertex is one of the two edges
/// of `C` at the vertex.
fn is_vertex_contact(s: &[Letter], out_c: Letter, in_c: Letter) -> bool {
    let r = s.len();
    let out_s = s[0];
    let back_s = s[r - 1].inverse();
    let back_c = in_c.inverse();
    out_s != out_c && out_s != back_c && back_s != out_c && back_s != back_c
}
