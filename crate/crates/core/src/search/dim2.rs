//! Extracting a line-with-letter certificate from a monochromatic tree of
//! dimension 2.

use serde::{Deserialize, Serialize};

use super::line::{line_letter_elements, LineLetterCertificate};
use super::{Coloring, SearchError};
use crate::space::words_of_length;
use crate::tree::OvwTree;
use crate::word::{Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim2Line {
    /// Lex-least non-empty `σ` with `T(1)·σ ⊆ T(2)`.
    pub sigma: Word,
    pub certificate: LineLetterCertificate,
}

pub fn line_letter_from_dim2(t: &OvwTree, f: &Coloring) -> Result<Dim2Line, SearchError> {
    if t.dim() != 2 {
        return Err(SearchError::Domain(format!("expected a tree of dimension 2, got {}", t.dim())));
    }
    let mut color = None;
    for e in t.elements() {
        let c = f.color(e).ok_or_else(|| SearchError::Domain(format!("{e} is outside the coloring")))?;
        if *color.get_or_insert(c) != c {
            return Err(SearchError::NotMonochromatic(format!("{e} has color {c}")));
        }
    }
    let (l1, l2) = (t.levels()[1], t.levels()[2]);
    let t1 = t.level(1)?;
    let sigma = (l2 > l1)
        .then(|| words_of_length(t.k(), l2 - l1).find(|s| t1.iter().all(|x| t.contains(&x.concat(s)))))
        .flatten()
        .ok_or(SearchError::NoConnector)?;
    let Some(&Symbol::Letter(a)) = sigma.last() else { unreachable!("σ is a non-empty word") };
    let g = t.generator().word();
    let cut = g.first_occurrence(1).expect("dimension 2");
    let generator = g.slice(0, cut).concat(&sigma[..sigma.len() - 1]);
    let checked = line_letter_elements(&generator, t.k(), a);
    let c = f.color(&checked[0]);
    if c.is_none() || checked.iter().any(|e| f.color(e) != c) {
        return Err(SearchError::CheckFailed(format!("line {generator} with letter {a} is not homogeneous")));
    }
    Ok(Dim2Line {
        sigma,
        certificate: LineLetterCertificate { generator, letter: a, color: c.unwrap(), checked },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tree_from_generator;
    use crate::word::VarWord;

    fn tree(g: &str) -> OvwTree {
        tree_from_generator(&VarWord::new(g.parse().unwrap(), 2, 2, true).unwrap()).unwrap()
    }

    #[test]
    fn bare_variables() {
        let f = Coloring::constant(2, 4, 0, 2, 0);
        let out = line_letter_from_dim2(&tree("x0x1"), &f).unwrap();
        assert_eq!(out.sigma.to_string(), "0");
        assert_eq!(out.certificate.generator.to_string(), "x0");
        assert_eq!(out.certificate.letter, 0);
        // S(1)·a lands in T(2).
        for e in &out.certificate.checked[1..] {
            assert!(tree("x0x1").level(2).unwrap().contains(e));
        }
    }

    #[test]
    fn letter_between_variables() {
        let f = Coloring::constant(2, 4, 0, 2, 1);
        let out = line_letter_from_dim2(&tree("x0 0x1"), &f).unwrap();
        assert_eq!(out.sigma.to_string(), "0");
        assert_eq!(out.certificate.generator.to_string(), "x0 0");
        assert_eq!(out.certificate.color, 1);
    }

    #[test]
    fn longer_connector() {
        let f = Coloring::constant(2, 6, 0, 2, 0);
        let out = line_letter_from_dim2(&tree("1x0x1 1x1"), &f).unwrap();
        assert_eq!(out.sigma.to_string(), "010");
        assert_eq!(out.certificate.generator.to_string(), "1x0 01");
        assert_eq!(out.certificate.letter, 0);
    }

    #[test]
    fn rejects_non_monochromatic() {
        let f = Coloring::from_fn(2, 4, 0, 2, |w| (w.len() % 2) as u8);
        assert!(matches!(
            line_letter_from_dim2(&tree("x0x1"), &f),
            Err(SearchError::NotMonochromatic(_))
        ));
    }
}
