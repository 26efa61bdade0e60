//! Plain-text slice notation.
//!
//! ```text
//! # the Hopf link
//! strands 0
//! cup 0 rl
//! cup 1 rl
//! x+ 0
//! x+ 0
//! cap 1 lr
//! cap 0 lr
//! ```
//!
//! An optional `strands <n> <signs>` header gives the bottom boundary, one `+`
//! (upward) or `-` (downward) per strand. Every following line is one slice;
//! several generators in a slice are separated by commas. `id` is an empty slice.

use super::{ArcDirection, Generator, GeneratorKind, Orientation, SliceDiagram};
use crate::error::DiagramError;

pub fn parse_slice_notation(text: &str) -> Result<SliceDiagram, DiagramError> {
    let mut bottom = Vec::new();
    let mut slices = Vec::new();
    let mut lines = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| DiagramError::Parse { line: line_no, message };
        if let Some(rest) = line.strip_prefix("strands") {
            if seen_content {
                return Err(err("`strands` header must come first".into()));
            }
            seen_content = true;
            let mut parts = rest.split_whitespace();
            let n: usize = parts
                .next()
                .ok_or_else(|| err("missing strand count".into()))?
                .parse()
                .map_err(|e| err(format!("bad strand count: {e}")))?;
            let signs: String = parts.collect();
            if signs.chars().count() != n {
                return Err(err(format!("expected {n} orientation signs, found {:?}", signs)));
            }
            for ch in signs.chars() {
                bottom.push(match ch {
                    '+' => Orientation::Up,
                    '-' => Orientation::Down,
                    other => return Err(err(format!("orientation must be + or -, found {other:?}"))),
                });
            }
            continue;
        }
        seen_content = true;
        let mut slice = Vec::new();
        for item in line.split(',') {
            if let Some(g) = parse_generator(item.trim()).map_err(err)? {
                slice.push(g);
            }
        }
        slices.push(slice);
        lines.push(line_no);
    }
    SliceDiagram::new(bottom, slices).map_err(|e| match e {
        DiagramError::Invalid { slice, message } => DiagramError::Parse { line: lines.get(slice).copied().unwrap_or(0), message },
        other => other,
    })
}

fn parse_generator(item: &str) -> Result<Option<Generator>, String> {
    let toks: Vec<&str> = item.split_whitespace().collect();
    let pos = |s: Option<&&str>| -> Result<usize, String> {
        s.ok_or_else(|| format!("`{item}` needs a position"))?.parse().map_err(|e| format!("bad position in `{item}`: {e}"))
    };
    let dir = |s: Option<&&str>| -> Result<ArcDirection, String> {
        match s.copied() {
            Some("lr") => Ok(ArcDirection::LeftToRight),
            Some("rl") => Ok(ArcDirection::RightToLeft),
            _ => Err(format!("`{item}` needs a direction `lr` or `rl`")),
        }
    };
    let (g, expected_len) = match toks.first().copied() {
        Some("id") if toks.len() == 1 => return Ok(None),
        Some("id") => (Generator::new(GeneratorKind::Identity, pos(toks.get(1))?), 2),
        Some("x+") => (Generator::crossing(true, pos(toks.get(1))?), 2),
        Some("x-") => (Generator::crossing(false, pos(toks.get(1))?), 2),
        Some("cup") => (Generator::cup(dir(toks.get(2))?, pos(toks.get(1))?), 3),
        Some("cap") => (Generator::cap(dir(toks.get(2))?, pos(toks.get(1))?), 3),
        Some(other) => return Err(format!("unknown generator `{other}`")),
        None => return Err("empty generator".into()),
    };
    if toks.len() != expected_len {
        return Err(format!("trailing tokens in `{item}`"));
    }
    Ok(Some(g))
}

pub fn format_slice_notation(d: &SliceDiagram) -> String {
    let mut out = String::new();
    let signs: String = d.bottom().iter().map(|o| if *o == Orientation::Up { '+' } else { '-' }).collect();
    if signs.is_empty() {
        out.push_str("strands 0\n");
    } else {
        out.push_str(&format!("strands {} {}\n", d.bottom().len(), signs));
    }
    for slice in d.slices() {
        let items: Vec<String> = slice.iter().map(format_generator).collect();
        if items.is_empty() {
            out.push_str("id\n");
        } else {
            out.push_str(&items.join(", "));
            out.push('\n');
        }
    }
    out
}

fn format_generator(g: &Generator) -> String {
    let d = |a: ArcDirection| if a == ArcDirection::LeftToRight { "lr" } else { "rl" };
    match g.kind {
        GeneratorKind::Identity => format!("id {}", g.position),
        GeneratorKind::PositiveCrossing => format!("x+ {}", g.position),
        GeneratorKind::NegativeCrossing => format!("x- {}", g.position),
        GeneratorKind::Cup(a) => format!("cup {} {}", g.position, d(a)),
        GeneratorKind::Cap(a) => format!("cap {} {}", g.position, d(a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::corpus;

    #[test]
    fn round_trip_corpus() {
        for (name, link) in corpus() {
            let text = format_slice_notation(link.diagram());
            let back = parse_slice_notation(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&back, link.diagram(), "{name}");
        }
    }

    #[test]
    fn open_tangle_with_header() {
        let d = parse_slice_notation("strands 2 +-\n# comment\ncap 0 lr\n").unwrap();
        assert!(d.top().is_empty() && !d.is_closed());
        let t = parse_slice_notation("strands 2 ++\nx+ 0, \n").unwrap_err();
        assert!(matches!(t, DiagramError::Parse { line: 2, .. }));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_slice_notation("cup 0 rl\n\ncap 0 rl\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 3, .. }), "{e:?}");
        let e = parse_slice_notation("cup 0 rl\nfoo 1\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 2, .. }));
        let e = parse_slice_notation("cup 0 rl\nstrands 0\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 2, .. }));
        let e = parse_slice_notation("strands 2 +\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 1, .. }));
    }

    #[test]
    fn slices_with_several_generators() {
        let d = parse_slice_notation("strands 2 +-\ncup 2 rl, cup 0 lr\nid\ncap 4 lr, cap 2 lr, cap 0 rl\n").unwrap();
        assert_eq!(d.component_count(), 3);
        assert!(parse_slice_notation("cup 0 rl, cup 0 lr\n").is_err());
        assert_eq!(parse_slice_notation(&format_slice_notation(&d)).unwrap(), d);
    }
}
