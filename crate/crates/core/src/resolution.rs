//! Positive and negative resolutions of marked graph diagrams and the
//! admissibility (ch-diagram) test.

use crate::diagram::Diagram;
use crate::epd::EpdCode;
use crate::invariants::{is_trivial_unlink, InvariantError, PdCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub sign: Sign,
    pub diagram: PdCode,
}

/// Smooths every marked vertex; classical crossings are kept and edges relabeled
/// `1..=2(n - m)` along circuits.
pub fn resolve(code: &EpdCode, sign: Sign) -> Resolution {
    Resolution { sign, diagram: resolve_diagram(&code.to_diagram(), sign) }
}

pub fn resolve_diagram(diagram: &Diagram, sign: Sign) -> PdCode {
    let (classical, circles) = diagram.resolve(sign.is_plus());
    PdCode::from_diagram(&classical, circles)
}

/// Both resolutions are trivial unlink diagrams.
pub fn is_admissible(code: &EpdCode) -> Result<bool, InvariantError> {
    is_admissible_diagram(&code.to_diagram())
}

pub fn is_admissible_diagram(diagram: &Diagram) -> Result<bool, InvariantError> {
    for sign in [Sign::Plus, Sign::Minus] {
        if !is_trivial_unlink(&resolve_diagram(diagram, sign))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::component_count;

    pub(crate) const SPHERE_AND_P2: &str = "X[1, 5, 2, 4], X[18, 10, 19, 1], Y[5, 19, 6, 20], X[14, 2, 15, 3], X[3, 13, 4, 14], X[17, 12, 18, 13], X[9, 6, 10, 7], X[20, 16, 17, 15], X[7, 12, 8, 11], X[16, 9, 11, 8]";

    #[test]
    fn classical_codes_resolve_to_themselves() {
        let code = EpdCode::parse("X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]").unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let r = resolve(&code, sign);
            assert_eq!(r.diagram.len(), 3);
            assert_eq!(r.diagram.circles, 0);
        }
        assert!(!is_admissible(&code).unwrap());
    }

    #[test]
    fn sphere_and_p2_is_admissible() {
        let code = EpdCode::parse(SPHERE_AND_P2).unwrap();
        let plus = resolve(&code, Sign::Plus);
        let minus = resolve(&code, Sign::Minus);
        assert_eq!(plus.diagram.len(), 9);
        assert_eq!(minus.diagram.len(), 9);
        let labels: Vec<u32> = plus.diagram.crossings.iter().flatten().copied().collect();
        assert_eq!(*labels.iter().max().unwrap(), 18);
        assert!(is_admissible(&code).unwrap());
    }

    #[test]
    fn hopf_torus_resolutions() {
        // two marked vertices on the Hopf shadow: c+ + c- = 2 for the torus pattern
        for s in ["Y[1,3,2,4],Y[2,3,1,4]", "Y[1,3,2,4],Z[2,3,1,4]"] {
            let code = EpdCode::parse(s).unwrap();
            let cp = component_count(&resolve(&code, Sign::Plus).diagram);
            let cm = component_count(&resolve(&code, Sign::Minus).diagram);
            assert!(cp >= 1 && cm >= 1, "{s}");
            assert_eq!(resolve(&code, Sign::Plus).diagram.len(), 0);
        }
    }

    #[test]
    fn switch_swaps_resolutions() {
        let code = EpdCode::parse(SPHERE_AND_P2).unwrap();
        let a = resolve(&code.switch(), Sign::Plus).diagram;
        let b = resolve(&code, Sign::Minus).diagram;
        assert_eq!(component_count(&a), component_count(&b));
        assert_eq!(
            crate::invariants::kauffman_bracket(&a).unwrap(),
            crate::invariants::kauffman_bracket(&b).unwrap()
        );
    }
}
