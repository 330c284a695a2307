//! Line-oriented text format for markings, points and curve systems.
//!
//! ```text
//! [surface]
//! genus = 2
//! punctures = 0
//! boundary = 0
//!
//! [curves]
//! g1 internal
//!
//! [pants]
//! P1 = g1+ g2+ g3+      # `*` is a puncture
//!
//! [seams]
//! g1 = 0 1
//!
//! [fn]
//! length g1 = 0.05
//! twist g1 = 0.0
//!
//! [curve "beta"]
//! g1 = 2 0              # intersection, twist offset
//! g2 = core 1
//! ```
//!
//! A document may hold any subset of the sections. The writers emit the
//! canonical form: fixed section order, one space around `=`, floats in
//! Rust's shortest round-trip notation, and curve entries only where nonzero.

use std::fmt::Write as _;

use thiserror::Error;

use crate::surface::{
    build_marking, CurveEntry, CurveId, CurveKind, CurveSystem, FNPoint, Marking, Pants,
    PantsCurve, PantsDecomposition, PantsEnd, SeamMatching, Side, SurfaceSpec,
};
use crate::Result;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing section [{0}]")]
    MissingSection(&'static str),
    #[error("no curve named {0:?}")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Located<T> {
    line: usize,
    value: T,
}

/// Parsed but not yet validated contents of a file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    surface: Option<[Option<Located<u32>>; 3]>,
    curves: Option<Vec<Located<(String, CurveKind)>>>,
    pants: Option<Vec<Located<(String, Vec<String>)>>>,
    seams: Option<Vec<Located<(String, [usize; 2])>>>,
    fn_point: Option<Vec<Located<(bool, String, f64)>>>,
    curve_systems: Vec<(String, Vec<Located<(String, CurveEntry)>>)>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Surface,
    Curves,
    Pants,
    Seams,
    Fn,
    Curve,
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

fn parse_f64(s: &str, line: usize) -> std::result::Result<f64, FormatError> {
    let v: f64 = s
        .parse()
        .map_err(|_| syntax(line, format!("expected a number, found {s:?}")))?;
    if !v.is_finite() {
        return Err(syntax(line, format!("number {s:?} is not finite")));
    }
    Ok(v)
}

fn parse_int<T: std::str::FromStr>(s: &str, line: usize) -> std::result::Result<T, FormatError> {
    s.parse()
        .map_err(|_| syntax(line, format!("expected an integer, found {s:?}")))
}

fn split_eq(s: &str, line: usize) -> std::result::Result<(&str, &str), FormatError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| syntax(line, "expected `key = value`"))?;
    Ok((k.trim(), v.trim()))
}

fn open<T>(slot: &mut Option<Vec<T>>, name: &str, line: usize) -> std::result::Result<(), FormatError> {
    if slot.is_some() {
        return Err(syntax(line, format!("section [{name}] given twice")));
    }
    *slot = Some(Vec::new());
    Ok(())
}

pub fn parse_document(text: &str) -> std::result::Result<Document, FormatError> {
    let mut doc = Document::default();
    let mut section: Option<Section> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(head) = body.strip_prefix('[') {
            let head = head
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, "unterminated section header"))?
                .trim();
            section = Some(match head {
                "surface" => {
                    if doc.surface.is_some() {
                        return Err(syntax(line, "section [surface] given twice"));
                    }
                    doc.surface = Some([None, None, None]);
                    Section::Surface
                }
                "curves" => {
                    open(&mut doc.curves, head, line)?;
                    Section::Curves
                }
                "pants" => {
                    open(&mut doc.pants, head, line)?;
                    Section::Pants
                }
                "seams" => {
                    open(&mut doc.seams, head, line)?;
                    Section::Seams
                }
                "fn" => {
                    open(&mut doc.fn_point, head, line)?;
                    Section::Fn
                }
                _ => {
                    let name = head
                        .strip_prefix("curve")
                        .map(str::trim)
                        .and_then(|r| r.strip_prefix('"'))
                        .and_then(|r| r.strip_suffix('"'))
                        .filter(|n| is_name(n))
                        .ok_or_else(|| syntax(line, format!("unknown section [{head}]")))?;
                    if doc.curve_systems.iter().any(|(n, _)| n == name) {
                        return Err(syntax(line, format!("curve {name:?} given twice")));
                    }
                    doc.curve_systems.push((name.to_owned(), Vec::new()));
                    Section::Curve
                }
            });
            continue;
        }
        let Some(sec) = section else {
            return Err(syntax(line, "content before the first section"));
        };
        match sec {
            Section::Surface => {
                let (k, v) = split_eq(body, line)?;
                let slot = match k {
                    "genus" => 0,
                    "punctures" => 1,
                    "boundary" => 2,
                    _ => return Err(syntax(line, format!("unknown surface key {k:?}"))),
                };
                let s = doc.surface.as_mut().expect("open section");
                if s[slot].is_some() {
                    return Err(syntax(line, format!("{k} given twice")));
                }
                s[slot] = Some(Located {
                    line,
                    value: parse_int(v, line)?,
                });
            }
            Section::Curves => {
                let mut it = body.split_whitespace();
                let (name, kind) = (it.next().unwrap(), it.next());
                if !is_name(name) || it.next().is_some() {
                    return Err(syntax(line, "expected `name internal|boundary`"));
                }
                let kind = match kind {
                    Some("internal") => CurveKind::Internal,
                    Some("boundary") => CurveKind::Boundary,
                    _ => return Err(syntax(line, "curve kind must be `internal` or `boundary`")),
                };
                doc.curves.as_mut().unwrap().push(Located {
                    line,
                    value: (name.to_owned(), kind),
                });
            }
            Section::Pants => {
                let (name, ends) = split_eq(body, line)?;
                let ends: Vec<String> = ends.split_whitespace().map(str::to_owned).collect();
                if !is_name(name) || ends.len() != 3 {
                    return Err(syntax(line, "expected `name = end end end`"));
                }
                doc.pants.as_mut().unwrap().push(Located {
                    line,
                    value: (name.to_owned(), ends),
                });
            }
            Section::Seams => {
                let (name, pair) = split_eq(body, line)?;
                let p: Vec<&str> = pair.split_whitespace().collect();
                if p.len() != 2 {
                    return Err(syntax(line, "expected `curve = a b`"));
                }
                doc.seams.as_mut().unwrap().push(Located {
                    line,
                    value: (name.to_owned(), [parse_int(p[0], line)?, parse_int(p[1], line)?]),
                });
            }
            Section::Fn => {
                let (k, v) = split_eq(body, line)?;
                let (what, name) = k
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(line, "expected `length|twist name = value`"))?;
                let is_length = match what {
                    "length" => true,
                    "twist" => false,
                    _ => return Err(syntax(line, format!("unknown coordinate {what:?}"))),
                };
                doc.fn_point.as_mut().unwrap().push(Located {
                    line,
                    value: (is_length, name.trim().to_owned(), parse_f64(v, line)?),
                });
            }
            Section::Curve => {
                let (name, v) = split_eq(body, line)?;
                let p: Vec<&str> = v.split_whitespace().collect();
                let entry = match p.as_slice() {
                    ["core", n] => CurveEntry::core(parse_int(n, line)?),
                    [i, b] => CurveEntry {
                        intersection: parse_int(i, line)?,
                        twist_offset: parse_int(b, line)?,
                        core_copies: 0,
                    },
                    _ => return Err(syntax(line, "expected `curve = i b` or `curve = core n`")),
                };
                doc.curve_systems.last_mut().unwrap().1.push(Located {
                    line,
                    value: (name.to_owned(), entry),
                });
            }
        }
    }
    Ok(doc)
}

fn lookup(marking: &Marking, name: &str, line: usize) -> std::result::Result<CurveId, FormatError> {
    marking
        .decomposition()
        .find_curve(name)
        .ok_or_else(|| syntax(line, format!("no curve named {name:?}")))
}

impl Document {
    pub fn has_marking(&self) -> bool {
        self.surface.is_some()
    }

    pub fn has_point(&self) -> bool {
        self.fn_point.is_some()
    }

    pub fn curve_names(&self) -> Vec<&str> {
        self.curve_systems.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn marking(&self) -> Result<Marking> {
        let s = self.surface.as_ref().ok_or(FormatError::MissingSection("surface"))?;
        let get = |i: usize, k: &str| {
            s[i].as_ref()
                .map(|l| l.value)
                .ok_or_else(|| FormatError::Invalid(format!("[surface] is missing {k}")))
        };
        let spec = SurfaceSpec::new(get(0, "genus")?, get(1, "punctures")?, get(2, "boundary")?)?;
        let curves: Vec<PantsCurve> = self
            .curves
            .as_ref()
            .ok_or(FormatError::MissingSection("curves"))?
            .iter()
            .map(|c| PantsCurve {
                name: c.value.0.clone(),
                kind: c.value.1,
            })
            .collect();
        let find = |name: &str, line: usize| {
            curves
                .iter()
                .position(|c| c.name == name)
                .map(CurveId)
                .ok_or_else(|| syntax(line, format!("no curve named {name:?}")))
        };
        let mut pants = Vec::new();
        for p in self.pants.as_ref().ok_or(FormatError::MissingSection("pants"))? {
            let mut ends = [PantsEnd::Puncture; 3];
            for (slot, tok) in ends.iter_mut().zip(&p.value.1) {
                if tok == "*" {
                    continue;
                }
                let (name, side) = match tok.as_bytes().last() {
                    Some(b'+') => (&tok[..tok.len() - 1], Side::Plus),
                    Some(b'-') => (&tok[..tok.len() - 1], Side::Minus),
                    _ => return Err(syntax(p.line, format!("end {tok:?} needs a side, + or -")).into()),
                };
                *slot = PantsEnd::Curve {
                    curve: find(name, p.line)?,
                    side,
                };
            }
            pants.push(Pants {
                name: p.value.0.clone(),
                ends,
            });
        }
        let decomposition = PantsDecomposition::new(curves.clone(), pants)?;
        let mut seams = Vec::new();
        for s in self.seams.as_ref().ok_or(FormatError::MissingSection("seams"))? {
            seams.push((find(&s.value.0, s.line)?, SeamMatching { pairing: s.value.1 }));
        }
        Ok(build_marking(spec, decomposition, &seams)?)
    }

    pub fn fn_point(&self, marking: &Marking) -> Result<FNPoint> {
        let entries = self.fn_point.as_ref().ok_or(FormatError::MissingSection("fn"))?;
        let n = marking.curve_count();
        let mut lengths = vec![None; n];
        let mut twists = vec![None; n];
        for e in entries {
            let (is_length, name, v) = &e.value;
            let id = lookup(marking, name, e.line)?;
            let slot = if *is_length { &mut lengths[id.0] } else { &mut twists[id.0] };
            if slot.replace(*v).is_some() {
                return Err(syntax(e.line, format!("coordinate for {name:?} given twice")).into());
            }
        }
        let mut l = Vec::with_capacity(n);
        let mut t = Vec::with_capacity(n);
        for id in marking.decomposition().curve_ids() {
            let name = marking.curve_name(id);
            l.push(lengths[id.0].ok_or_else(|| FormatError::Invalid(format!("[fn] has no length for {name:?}")))?);
            t.push(match (twists[id.0], marking.is_internal(id)?) {
                (Some(v), _) => v,
                (None, false) => 0.0,
                (None, true) => return Err(FormatError::Invalid(format!("[fn] has no twist for {name:?}")).into()),
            });
        }
        Ok(FNPoint::new(marking, l, t)?)
    }

    /// The curve systems of the document, in file order.
    pub fn curve_systems(&self, marking: &Marking) -> Result<Vec<(String, CurveSystem)>> {
        let mut out = Vec::new();
        for (name, entries) in &self.curve_systems {
            let mut e = vec![CurveEntry::default(); marking.curve_count()];
            let mut seen = vec![false; e.len()];
            for loc in entries {
                let id = lookup(marking, &loc.value.0, loc.line)?;
                if std::mem::replace(&mut seen[id.0], true) {
                    return Err(syntax(loc.line, format!("entry for {:?} given twice", loc.value.0)).into());
                }
                e[id.0] = loc.value.1;
            }
            out.push((name.clone(), CurveSystem::new(marking, e)?));
        }
        Ok(out)
    }
}

pub fn write_marking(marking: &Marking) -> String {
    let d = marking.decomposition();
    let mut s = String::new();
    if let Some(spec) = marking.spec() {
        let _ = write!(
            s,
            "[surface]\ngenus = {}\npunctures = {}\nboundary = {}\n\n",
            spec.genus, spec.punctures, spec.boundary
        );
    }
    s.push_str("[curves]\n");
    for c in d.curves() {
        let kind = match c.kind {
            CurveKind::Internal => "internal",
            CurveKind::Boundary => "boundary",
        };
        let _ = writeln!(s, "{} {kind}", c.name);
    }
    s.push_str("\n[pants]\n");
    for p in d.pants() {
        let ends: Vec<String> = p
            .ends
            .iter()
            .map(|e| match e {
                PantsEnd::Puncture => "*".to_owned(),
                PantsEnd::Curve { curve, side } => format!(
                    "{}{}",
                    d.curves()[curve.0].name,
                    if *side == Side::Plus { '+' } else { '-' }
                ),
            })
            .collect();
        let _ = writeln!(s, "{} = {}", p.name, ends.join(" "));
    }
    s.push_str("\n[seams]\n");
    for id in d.internal_curves() {
        if let Some(m) = marking.seam(id) {
            let _ = writeln!(s, "{} = {} {}", d.curves()[id.0].name, m.pairing[0], m.pairing[1]);
        }
    }
    s
}

pub fn write_fn(marking: &Marking, sigma: &FNPoint) -> String {
    let mut s = String::from("[fn]\n");
    for id in marking.decomposition().curve_ids() {
        let name = marking.curve_name(id);
        let _ = writeln!(s, "length {name} = {:?}", sigma.lengths()[id.0]);
        if marking.is_internal(id).unwrap_or(false) {
            let _ = writeln!(s, "twist {name} = {:?}", sigma.twists()[id.0].value());
        }
    }
    s
}

pub fn write_curve(marking: &Marking, name: &str, beta: &CurveSystem) -> String {
    let mut s = format!("[curve \"{name}\"]\n");
    for id in marking.decomposition().curve_ids() {
        let e = beta.entries()[id.0];
        let cname = marking.curve_name(id);
        if e.intersection > 0 {
            let _ = writeln!(s, "{cname} = {} {}", e.intersection, e.twist_offset);
        } else if e.core_copies > 0 {
            let _ = writeln!(s, "{cname} = core {}", e.core_copies);
        }
    }
    s
}

/// Canonical text of every section present in `text`, which must contain a
/// marking whenever it contains a point or curves.
pub fn canonicalize(text: &str) -> Result<String> {
    let doc = parse_document(text)?;
    let marking = doc.marking()?;
    let mut parts = vec![write_marking(&marking)];
    if doc.has_point() {
        parts.push(write_fn(&marking, &doc.fn_point(&marking)?));
    }
    for (name, beta) in doc.curve_systems(&marking)? {
        parts.push(write_curve(&marking, &name, &beta));
    }
    Ok(parts.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard::{genus_two, punctured_torus};

    const G2: &str = "[surface]\ngenus = 2\npunctures = 0\nboundary = 0\n\n[curves]\ng1 internal\ng2 internal\ng3 internal\n\n[pants]\nP1 = g1+ g2+ g3+\nP2 = g1- g2- g3-\n\n[seams]\ng1 = 0 1\ng2 = 0 1\ng3 = 0 1\n";

    #[test]
    fn standard_marking_round_trips() {
        assert_eq!(write_marking(&genus_two()), G2);
        let doc = parse_document(G2).unwrap();
        assert_eq!(doc.marking().unwrap(), genus_two());
        let t = write_marking(&punctured_torus());
        assert_eq!(parse_document(&t).unwrap().marking().unwrap(), punctured_torus());
        assert!(t.contains("P1 = g1+ g1- *"));
    }

    #[test]
    fn full_document_round_trips() {
        let text = format!(
            "{G2}\n[fn]\nlength g1 = 0.05\ntwist g1 = -1.25\nlength g2 = 1.2\ntwist g2 = 0.0\nlength g3 = 8e-7\ntwist g3 = 123456.5\n\n[curve \"beta\"]\ng1 = 2 3\ng2 = 2 -1\n\n[curve \"c\"]\ng3 = core 2\n"
        );
        assert_eq!(canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn comments_and_errors() {
        let text = G2.replace("[curves]", "# the curves\n[curves]   # trailing");
        assert!(parse_document(&text).unwrap().marking().is_ok());
        let bad = G2.replace("g1 = 0 1", "g1 = 0");
        let err = parse_document(&bad).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 16, .. }), "{err:?}");
        let missing = G2.replace("[seams]\ng1 = 0 1\ng2 = 0 1\ng3 = 0 1\n", "");
        assert!(matches!(
            parse_document(&missing).unwrap().marking(),
            Err(crate::Error::Format(FormatError::MissingSection("seams")))
        ));
        let no_seam = G2.replace("g2 = 0 1\n", "");
        assert!(matches!(
            parse_document(&no_seam).unwrap().marking(),
            Err(crate::Error::Surface(_))
        ));
        assert!(parse_document("genus = 2").is_err());
        assert!(parse_document("[bogus]").is_err());
    }
}
