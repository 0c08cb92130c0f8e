//! Line-oriented text formats for spaces, modules, filters and sequences.
//!
//! A document is a series of blocks, each opened by a header line:
//!
//! ```text
//! space T3 over rplus
//! points a b c
//! d a b 1
//! module M on T3 left
//! m a 0
//! filter F on T3
//! gen a b
//! seq S on T3
//! pre c
//! cycle b
//! ```
//!
//! `#` starts a comment. Omitted off-diagonal distances default to `inf`
//! over rplus and `0` over bool; diagonal entries may only restate the unit.

use std::fmt;
use std::sync::Arc;

use crate::enriched::{LeftModule, RightModule, Space};
use crate::filters::{EvPeriodicSequence, PrincipalFilter};
use crate::quantale::{Base, QValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedModule {
    Left(LeftModule),
    Right(RightModule),
}

impl ParsedModule {
    pub fn side(&self) -> Side {
        match self {
            ParsedModule::Left(_) => Side::Left,
            ParsedModule::Right(_) => Side::Right,
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        match self {
            ParsedModule::Left(m) => m.space(),
            ParsedModule::Right(n) => n.space(),
        }
    }

    pub fn values(&self) -> &[QValue] {
        match self {
            ParsedModule::Left(m) => m.values(),
            ParsedModule::Right(n) => n.values(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub module: ParsedModule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFilter {
    pub name: String,
    pub filter: PrincipalFilter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSequence {
    pub name: String,
    pub sequence: EvPeriodicSequence,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub spaces: Vec<Arc<Space>>,
    pub modules: Vec<NamedModule>,
    pub filters: Vec<NamedFilter>,
    pub sequences: Vec<NamedSequence>,
}

impl Document {
    fn is_only(&self, kind: &str) -> bool {
        let counts = [
            ("space", self.spaces.len()),
            ("module", self.modules.len()),
            ("filter", self.filters.len()),
            ("seq", self.sequences.len()),
        ];
        counts.iter().all(|&(k, n)| if k == kind { n == 1 } else { n == 0 })
    }
}

/// A literal of the given base: `p/q`, an integer or `inf` over rplus;
/// `0` or `1` over bool.
pub fn parse_qvalue(base: Base, s: &str) -> Result<QValue, String> {
    base.parse_value(s).map_err(|e| e.to_string())
}

/// Strips comments and splits into `(line number, tokens)` for non-blank
/// lines.
fn lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect()
}

fn is_header(word: &str) -> bool {
    matches!(word, "space" | "module" | "filter" | "seq")
}

type Line<'a> = (usize, Vec<&'a str>);

/// Parses every block in `text`. Blocks other than spaces refer to a space
/// by name, looked up among earlier blocks and then in `known`.
pub fn parse_document(text: &str, known: &[Arc<Space>]) -> Result<Document, ParseError> {
    let all = lines(text);
    let mut doc = Document::default();
    let mut i = 0;
    while i < all.len() {
        let (line, ref header) = all[i];
        if !is_header(header[0]) {
            return err(line, format!("expected a block header, found `{}`", header[0]));
        }
        let mut j = i + 1;
        while j < all.len() && !is_header(all[j].1[0]) {
            j += 1;
        }
        let body = &all[i + 1..j];
        match header[0] {
            "space" => {
                let space = space_block(line, header, body)?;
                if doc.spaces.iter().any(|s| s.name() == space.name()) {
                    return err(line, format!("space `{}` defined twice", space.name()));
                }
                doc.spaces.push(space.into_ref());
            }
            "module" => {
                let space = lookup(line, header, &doc.spaces, known)?;
                doc.modules.push(module_block(line, header, body, space)?);
            }
            "filter" => {
                let space = lookup(line, header, &doc.spaces, known)?;
                doc.filters.push(filter_block(line, header, body, space)?);
            }
            _ => {
                let space = lookup(line, header, &doc.spaces, known)?;
                doc.sequences.push(sequence_block(line, header, body, space)?);
            }
        }
        i = j;
    }
    Ok(doc)
}

/// Resolves the `on SPACE` part of a header.
fn lookup(
    line: usize,
    header: &[&str],
    local: &[Arc<Space>],
    known: &[Arc<Space>],
) -> Result<Arc<Space>, ParseError> {
    if header.len() < 4 || header[2] != "on" {
        return err(line, format!("expected `{} NAME on SPACE`", header[0]));
    }
    let name = header[3];
    local
        .iter()
        .chain(known)
        .find(|s| s.name() == name)
        .cloned()
        .ok_or_else(|| ParseError { line, message: format!("unknown space `{name}`") })
}

fn space_block(line: usize, header: &[&str], body: &[Line<'_>]) -> Result<Space, ParseError> {
    if header.len() != 4 || header[2] != "over" {
        return err(line, "expected `space NAME over rplus|bool`");
    }
    let base = match header[3] {
        "rplus" => Base::RPlus,
        "bool" => Base::Bool,
        other => return err(line, format!("unknown base `{other}`")),
    };
    let mut points: Option<Vec<String>> = None;
    let mut entries: Vec<(usize, usize, usize, QValue)> = Vec::new();
    for (l, toks) in body {
        match toks[0] {
            "points" => {
                if points.is_some() {
                    return err(*l, "points listed twice");
                }
                if toks.len() == 1 {
                    return err(*l, "a space needs at least one point");
                }
                let names: Vec<String> = toks[1..].iter().map(|s| s.to_string()).collect();
                for (k, p) in names.iter().enumerate() {
                    if names[..k].contains(p) {
                        return err(*l, format!("duplicate point `{p}`"));
                    }
                }
                points = Some(names);
            }
            "d" => {
                let Some(names) = &points else { return err(*l, "distances before the points line") };
                if toks.len() != 4 {
                    return err(*l, "expected `d X Y VALUE`");
                }
                let find = |p: &str| {
                    names
                        .iter()
                        .position(|n| n == p)
                        .ok_or_else(|| ParseError { line: *l, message: format!("unknown point `{p}`") })
                };
                let (x, y) = (find(toks[1])?, find(toks[2])?);
                let v = parse_qvalue(base, toks[3]).map_err(|m| ParseError { line: *l, message: m })?;
                if x == y && v != base.unit() {
                    return err(*l, format!("diagonal entry for `{}` must be {}", toks[1], base.unit()));
                }
                if entries.iter().any(|&(_, a, b, _)| (a, b) == (x, y)) {
                    return err(*l, format!("distance from `{}` to `{}` given twice", toks[1], toks[2]));
                }
                entries.push((*l, x, y, v));
            }
            other => return err(*l, format!("unexpected `{other}` in a space block")),
        }
    }
    let Some(points) = points else { return err(line, "missing points line") };
    let n = points.len();
    let off = match base {
        Base::RPlus => QValue::Infinity,
        Base::Bool => QValue::FALSE,
    };
    let mut dist: Vec<QValue> = (0..n * n).map(|i| if i / n == i % n { base.unit() } else { off }).collect();
    for &(_, x, y, v) in &entries {
        dist[x * n + y] = v;
    }
    Space::unchecked(header[1], base, points, dist).map_err(|e| ParseError { line, message: e.to_string() })
}

fn point_of(space: &Space, line: usize, name: &str) -> Result<usize, ParseError> {
    space.index_of(name).map_err(|_| ParseError { line, message: format!("unknown point `{name}`") })
}

fn module_block(
    line: usize,
    header: &[&str],
    body: &[Line<'_>],
    space: Arc<Space>,
) -> Result<NamedModule, ParseError> {
    if header.len() != 5 {
        return err(line, "expected `module NAME on SPACE left|right`");
    }
    let side = match header[4] {
        "left" => Side::Left,
        "right" => Side::Right,
        other => return err(line, format!("expected left or right, found `{other}`")),
    };
    let mut values: Vec<Option<QValue>> = vec![None; space.len()];
    for (l, toks) in body {
        if toks[0] != "m" || toks.len() != 3 {
            return err(*l, "expected `m X VALUE`");
        }
        let x = point_of(&space, *l, toks[1])?;
        if values[x].is_some() {
            return err(*l, format!("value for `{}` given twice", toks[1]));
        }
        values[x] = Some(parse_qvalue(space.base(), toks[2]).map_err(|m| ParseError { line: *l, message: m })?);
    }
    let mut full = Vec::with_capacity(values.len());
    for (x, v) in values.into_iter().enumerate() {
        match v {
            Some(v) => full.push(v),
            None => return err(line, format!("no value for point `{}`", space.point(x))),
        }
    }
    let module = match side {
        Side::Left => LeftModule::new(space, full).map(ParsedModule::Left),
        Side::Right => RightModule::new(space, full).map(ParsedModule::Right),
    }
    .map_err(|e| ParseError { line, message: e.to_string() })?;
    Ok(NamedModule { name: header[1].to_string(), module })
}

fn points_of(space: &Space, line: usize, names: &[&str]) -> Result<Vec<usize>, ParseError> {
    names.iter().map(|p| point_of(space, line, p)).collect()
}

fn filter_block(
    line: usize,
    header: &[&str],
    body: &[Line<'_>],
    space: Arc<Space>,
) -> Result<NamedFilter, ParseError> {
    if header.len() != 4 {
        return err(line, "expected `filter NAME on SPACE`");
    }
    let mut generator = Vec::new();
    for (l, toks) in body {
        if toks[0] != "gen" {
            return err(*l, "expected `gen X ...`");
        }
        generator.extend(points_of(&space, *l, &toks[1..])?);
    }
    let filter = PrincipalFilter::new(space, generator).map_err(|e| ParseError { line, message: e.to_string() })?;
    Ok(NamedFilter { name: header[1].to_string(), filter })
}

fn sequence_block(
    line: usize,
    header: &[&str],
    body: &[Line<'_>],
    space: Arc<Space>,
) -> Result<NamedSequence, ParseError> {
    if header.len() != 4 {
        return err(line, "expected `seq NAME on SPACE`");
    }
    let mut pre = Vec::new();
    let mut cycle = Vec::new();
    for (l, toks) in body {
        match toks[0] {
            "pre" => pre.extend(points_of(&space, *l, &toks[1..])?),
            "cycle" => cycle.extend(points_of(&space, *l, &toks[1..])?),
            other => return err(*l, format!("unexpected `{other}` in a sequence block")),
        }
    }
    let sequence =
        EvPeriodicSequence::new(space, pre, cycle).map_err(|e| ParseError { line, message: e.to_string() })?;
    Ok(NamedSequence { name: header[1].to_string(), sequence })
}

fn single<T>(doc: Result<Document, ParseError>, kind: &str, take: impl FnOnce(Document) -> T) -> Result<T, ParseError> {
    let doc = doc?;
    if !doc.is_only(kind) {
        return err(1, format!("expected exactly one {kind} block and nothing else"));
    }
    Ok(take(doc))
}

/// A file holding exactly one space. The laws are not checked here; see
/// [`Space::violations`].
pub fn parse_space(text: &str) -> Result<Space, ParseError> {
    single(parse_document(text, &[]), "space", |mut d| {
        Arc::try_unwrap(d.spaces.remove(0)).unwrap_or_else(|a| (*a).clone())
    })
}

pub fn parse_module(text: &str, space: &Arc<Space>) -> Result<NamedModule, ParseError> {
    single(parse_document(text, std::slice::from_ref(space)), "module", |mut d| d.modules.remove(0))
}

pub fn parse_filter(text: &str, space: &Arc<Space>) -> Result<NamedFilter, ParseError> {
    single(parse_document(text, std::slice::from_ref(space)), "filter", |mut d| d.filters.remove(0))
}

pub fn parse_sequence(text: &str, space: &Arc<Space>) -> Result<NamedSequence, ParseError> {
    single(parse_document(text, std::slice::from_ref(space)), "seq", |mut d| d.sequences.remove(0))
}

/// Every off-diagonal distance is written out, in point order.
pub fn write_space(s: &Space) -> String {
    let base = match s.base() {
        Base::RPlus => "rplus",
        Base::Bool => "bool",
    };
    let mut out = format!("space {} over {}\npoints {}\n", s.name(), base, s.points().join(" "));
    for x in 0..s.len() {
        for y in 0..s.len() {
            if x != y {
                out.push_str(&format!("d {} {} {}\n", s.point(x), s.point(y), s.dist(x, y)));
            }
        }
    }
    out
}

pub fn write_module(name: &str, module: &ParsedModule) -> String {
    let side = match module.side() {
        Side::Left => "left",
        Side::Right => "right",
    };
    let space = module.space();
    let mut out = format!("module {} on {} {}\n", name, space.name(), side);
    for (x, v) in module.values().iter().enumerate() {
        out.push_str(&format!("m {} {}\n", space.point(x), v));
    }
    out
}

pub fn write_filter(name: &str, f: &PrincipalFilter) -> String {
    format!("filter {} on {}\ngen {}\n", name, f.space().name(), f.names().join(" "))
}

pub fn write_sequence(name: &str, s: &EvPeriodicSequence) -> String {
    let names = |xs: &[usize]| xs.iter().map(|&x| s.space().point(x)).collect::<Vec<_>>().join(" ");
    let mut out = format!("seq {} on {}\n", name, s.space().name());
    if !s.preperiod().is_empty() {
        out.push_str(&format!("pre {}\n", names(s.preperiod())));
    }
    out.push_str(&format!("cycle {}\n", names(s.cycle())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{antichain2, t3};

    const T3: &str = "# three points\nspace T3 over rplus\npoints a b c\nd a b 1\nd a c 2\nd b a 2\nd b c 1\nd c a 5\nd c b 4\n";

    #[test]
    fn space_round_trip() {
        let s = parse_space(T3).unwrap();
        assert_eq!(&s, t3().as_ref());
        assert_eq!(parse_space(&write_space(&s)).unwrap(), s);
        let a = antichain2();
        assert_eq!(&parse_space(&write_space(&a)).unwrap(), a.as_ref());
    }

    #[test]
    fn defaults_and_errors() {
        let s = parse_space("space S over rplus\npoints x y\nd x y 1/2\n").unwrap();
        assert_eq!(s.dist(1, 0), QValue::Infinity);
        let s = parse_space("space P over bool\npoints x y\nd x y 1\n").unwrap();
        assert_eq!(s.dist(1, 0), QValue::FALSE);

        let e = parse_space("space S over rplus\npoints\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_space("space S over rplus\npoints x\nd x x 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_space("space S over rplus\npoints x\nd x x 0\n").is_ok());
        let e = parse_space("space S over rplus\npoints x y\n\nd x z 1\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (4, "unknown point `z`"));
        assert!(parse_space("space S over reals\npoints x\n").is_err());
        assert!(parse_space("points x\n").is_err());
        assert!(parse_space("space S over rplus\npoints x y\nd x y -1\n").is_err());
        assert!(parse_space("space S over rplus\npoints x y\nd x y 1\nd x y 2\n").is_err());
        // Laws are left to the validator.
        let broken = parse_space("space B over rplus\npoints x y z\nd x y 1\nd y z 1\nd x z 3\n").unwrap();
        assert!(!broken.violations().is_empty());
    }

    #[test]
    fn modules_filters_sequences() {
        let t = t3();
        let m = parse_module("module M on T3 left\nm a 0\nm b 0\nm c 4\n", &t).unwrap();
        assert_eq!(m.name, "M");
        assert_eq!(parse_module(&write_module("M", &m.module), &t).unwrap(), m);
        let e = parse_module("module M on T3 left\nm a 0\nm b 0\n", &t).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_module("module M on T3 left\nm a 0\nm b 0\nm c 9\n", &t).is_err());
        assert!(parse_module("module M on T4 left\nm a 0\n", &t).is_err());
        let n = parse_module("module N on T3 right\nm a 0\nm b 1\nm c 2\n", &t).unwrap();
        assert_eq!(n.module.side(), Side::Right);

        let f = parse_filter("filter F on T3\ngen a\ngen b\n", &t).unwrap();
        assert_eq!(f.filter.generator(), &[0, 1]);
        assert_eq!(parse_filter(&write_filter("F", &f.filter), &t).unwrap(), f);
        assert!(parse_filter("filter F on T3\n", &t).is_err());

        let s = parse_sequence("seq S on T3\npre c\ncycle b\n", &t).unwrap();
        assert_eq!(s.sequence.at(0), 2);
        assert_eq!(parse_sequence(&write_sequence("S", &s.sequence), &t).unwrap(), s);
        assert!(parse_sequence("seq S on T3\npre c\n", &t).is_err());
    }

    #[test]
    fn documents() {
        let text = format!("{T3}module M on T3 left\nm a 0\nm b 0\nm c 4\nfilter F on T3\ngen a b\n");
        let doc = parse_document(&text, &[]).unwrap();
        assert_eq!((doc.spaces.len(), doc.modules.len(), doc.filters.len()), (1, 1, 1));
        assert!(parse_space(&text).is_err());
        assert!(parse_document("m a 0\n", &[]).is_err());
    }
}
