use super::notation::parse_slice_notation;
use super::FramedLink;
use crate::error::DiagramError;

const UNKNOT: &str = "cup 0 rl\ncap 0 lr\n";

const UNKNOT_KINK_POS: &str = "cup 0 rl\ncup 1 rl\nx+ 0\ncap 1 lr\ncap 0 lr\n";

const UNLINK2: &str = "cup 0 rl\ncup 2 rl\ncap 2 lr\ncap 0 lr\n";

const HOPF: &str = "cup 0 rl\ncup 1 rl\nx+ 0\nx+ 0\ncap 1 lr\ncap 0 lr\n";

const TREFOIL: &str = "cup 0 rl\ncup 1 rl\nx+ 0\nx+ 0\nx+ 0\ncap 1 lr\ncap 0 lr\n";

// Closure of the 3-braid s1 s2^-1 s1 s2^-2. Braid strands 1 and 3 form one
// unknotted component, strand 2 the other; the two clasp through each other
// with linking number 0.
const WHITEHEAD: &str = "\
cup 0 rl
cup 1 rl
cup 2 rl
x+ 0
x- 1
x+ 0
x- 1
x- 1
cap 2 lr
cap 1 lr
cap 0 lr
";

const NAMES: [&str; 6] = ["unknot", "unknot_kink_pos", "unlink2", "hopf", "trefoil", "whitehead"];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// A named link in its blackboard framing.
pub fn builtin(name: &str) -> Result<FramedLink, DiagramError> {
    let text = match name {
        "unknot" => UNKNOT,
        "unknot_kink_pos" => UNKNOT_KINK_POS,
        "unlink2" => UNLINK2,
        "hopf" => HOPF,
        "trefoil" => TREFOIL,
        "whitehead" => WHITEHEAD,
        other => return Err(DiagramError::UnknownBuiltin(other.to_string())),
    };
    FramedLink::blackboard(parse_slice_notation(text)?)
}

/// Every builtin, in a fixed order.
pub fn corpus() -> Vec<(&'static str, FramedLink)> {
    NAMES.iter().map(|n| (*n, builtin(n).expect("builtin parses"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let u = builtin("unknot").unwrap();
        assert_eq!((u.component_count(), u.diagram().crossing_count()), (1, 0));
        assert_eq!(u.framing(), &[0]);
        assert_eq!(builtin("unknot_kink_pos").unwrap().framing(), &[1]);
        assert_eq!(builtin("unlink2").unwrap().component_count(), 2);
        let hopf = builtin("hopf").unwrap().linking_matrix();
        assert_eq!(hopf.entry(0, 1).abs(), 1);
        assert_eq!(hopf.entry(0, 1), hopf.entry(1, 0));
        assert_eq!(builtin("trefoil").unwrap().framing(), &[3]);
        assert!(matches!(builtin("figure8"), Err(DiagramError::UnknownBuiltin(_))));
    }

    #[test]
    fn whitehead_is_an_unlinked_pair() {
        let wh = builtin("whitehead").unwrap();
        assert_eq!(wh.component_count(), 2);
        let lm = wh.linking_matrix();
        assert_eq!(lm.entry(0, 1), 0);
        assert_eq!(wh.framing(), &[-1, 0]);
        let zero = FramedLink::with_framing(wh.into_diagram(), &[0, 0]).unwrap();
        let lm = zero.linking_matrix();
        assert_eq!(lm.entries(), &[vec![0, 0], vec![0, 0]]);
        assert_eq!(lm.signature().unwrap(), 0);
        assert_eq!(lm.total(), 0);
    }
}
