//! The shared description format for locales, uniformities and maps.
//!
//! ```text
//! # comment
//! frame F
//! elem a
//! elem b
//! le a b            # a ≤ b; the parser closes transitively
//! cover U: a, b     # entries are joins of irreducible names, or 0 / 1
//! entourage E: a ⊕ a | b ⊕ b
//! ```
//!
//! Maps between two such files list one line per target irreducible:
//!
//! ```text
//! map f
//! send q: a+b       # the target irreducible q pulls back to a+b
//! ```
//!
//! `@` is accepted as an ASCII alias for `⊕`.

use std::fmt::Write as _;

use crate::cover::CoverDownset;
use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::hom::FrameHom;
use crate::poset::Poset;
use crate::relation::{ProductFrame, Relation};
use crate::uniform::PreUniformLocale;

#[derive(Debug)]
pub struct ParsedLocale {
    pub name: String,
    pub frame: FiniteFrame,
    pub covers: Vec<(String, CoverDownset)>,
    pub entourages: Vec<(String, Relation)>,
}

impl ParsedLocale {
    /// Builds the validated pre-uniform structure from whichever uniformity
    /// lines are present.
    pub fn structure(&self) -> Result<PreUniformLocale> {
        let cover_base: Vec<CoverDownset> = self.covers.iter().map(|(_, c)| c.clone()).collect();
        let entourage_base: Vec<Relation> =
            self.entourages.iter().map(|(_, e)| e.clone()).collect();
        match (cover_base.is_empty(), entourage_base.is_empty()) {
            (false, false) => PreUniformLocale::from_both(&self.frame, cover_base, entourage_base),
            (false, true) => PreUniformLocale::from_cover_base(&self.frame, cover_base),
            (true, false) => PreUniformLocale::from_entourage_base(&self.frame, entourage_base),
            (true, true) => Err(CoreError::EmptyBase),
        }
    }

    pub fn has_uniformity(&self) -> bool {
        !self.covers.is_empty() || !self.entourages.is_empty()
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'' | '[' | ']'))
}

/// Parses an element expression: `0`, `1`, or a join of irreducible names.
pub fn parse_element(frame: &FiniteFrame, text: &str, line: usize) -> Result<FrameElement> {
    let text = text.trim();
    if text == "0" {
        return Ok(frame.bottom());
    }
    if text == "1" {
        return Ok(frame.top());
    }
    let mut irrs = Vec::new();
    for part in text.split('+') {
        let name = part.trim();
        let idx = frame
            .poset()
            .index_of(name)
            .ok_or_else(|| CoreError::parse(line, format!("unknown element `{name}`")))?;
        irrs.push(idx);
    }
    Ok(frame.element(irrs))
}

/// Parses one locale description.
pub fn parse_locale(text: &str) -> Result<ParsedLocale> {
    let mut name = None;
    let mut elems: Vec<String> = Vec::new();
    let mut les: Vec<(String, String, usize)> = Vec::new();
    // uniformity lines are resolved after the frame is built
    let mut cover_lines: Vec<(String, String, usize)> = Vec::new();
    let mut entourage_lines: Vec<(String, String, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "frame" => {
                if name.is_some() {
                    return Err(CoreError::parse(lineno, "second `frame` line"));
                }
                if !is_ident(rest) {
                    return Err(CoreError::parse(lineno, "frame needs a name"));
                }
                name = Some(rest.to_string());
            }
            "elem" => {
                if !is_ident(rest) {
                    return Err(CoreError::parse(lineno, "elem needs one identifier"));
                }
                if elems.iter().any(|e| e == rest) {
                    return Err(CoreError::parse(lineno, format!("duplicate elem `{rest}`")));
                }
                elems.push(rest.to_string());
            }
            "le" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(CoreError::parse(lineno, "le takes two identifiers"));
                }
                les.push((parts[0].to_string(), parts[1].to_string(), lineno));
            }
            "cover" | "entourage" => {
                let (cname, body) = rest
                    .split_once(':')
                    .ok_or_else(|| CoreError::parse(lineno, format!("{keyword} needs `name:`")))?;
                let cname = cname.trim();
                if !is_ident(cname) {
                    return Err(CoreError::parse(lineno, format!("{keyword} needs a name")));
                }
                let entry = (cname.to_string(), body.to_string(), lineno);
                if keyword == "cover" {
                    cover_lines.push(entry);
                } else {
                    entourage_lines.push(entry);
                }
            }
            other => {
                return Err(CoreError::parse(
                    lineno,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }

    let name = name.ok_or_else(|| CoreError::parse(1, "missing `frame` line"))?;
    let mut pairs = Vec::new();
    let lookup = |n: &str, lineno: usize| -> Result<usize> {
        elems
            .iter()
            .position(|e| e == n)
            .ok_or_else(|| CoreError::parse(lineno, format!("unknown element `{n}`")))
    };
    for (a, b, lineno) in &les {
        pairs.push((lookup(a, *lineno)?, lookup(b, *lineno)?));
    }
    let frame = FiniteFrame::new(Poset::new(elems, &pairs)?);

    let mut covers = Vec::new();
    for (cname, body, lineno) in cover_lines {
        let gens: Result<Vec<FrameElement>> = body
            .split(',')
            .map(|part| parse_element(&frame, part, lineno))
            .collect();
        covers.push((cname, CoverDownset::new(&frame, gens?)?));
    }
    let mut entourages = Vec::new();
    if !entourage_lines.is_empty() {
        let square = ProductFrame::square(&frame)?;
        for (ename, body, lineno) in entourage_lines {
            let mut elem = square.frame().bottom();
            for rect in body.split('|') {
                let sides: Vec<&str> = if rect.contains('⊕') {
                    rect.split('⊕').collect()
                } else {
                    rect.split('@').collect()
                };
                if sides.len() != 2 {
                    return Err(CoreError::parse(
                        lineno,
                        "each rectangle needs two sides (use ⊕ or @)",
                    ));
                }
                let a = parse_element(&frame, sides[0], lineno)?;
                let b = parse_element(&frame, sides[1], lineno)?;
                elem = elem.join(&square.inject(&a, &b));
            }
            entourages.push((ename, Relation::new(&square, elem)?));
        }
    }

    Ok(ParsedLocale {
        name,
        frame,
        covers,
        entourages,
    })
}

#[derive(Debug)]
pub struct ParsedMap {
    pub name: String,
    /// target irreducible name, source element expression, line.
    pub entries: Vec<(String, String, usize)>,
}

pub fn parse_map(text: &str) -> Result<ParsedMap> {
    let mut name = None;
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "map" => {
                if !is_ident(rest) {
                    return Err(CoreError::parse(lineno, "map needs a name"));
                }
                name = Some(rest.to_string());
            }
            "send" => {
                let (target, expr) = rest
                    .split_once(':')
                    .ok_or_else(|| CoreError::parse(lineno, "send needs `target: expression`"))?;
                entries.push((target.trim().to_string(), expr.to_string(), lineno));
            }
            other => {
                return Err(CoreError::parse(
                    lineno,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }
    Ok(ParsedMap {
        name: name.ok_or_else(|| CoreError::parse(1, "missing `map` line"))?,
        entries,
    })
}

/// Resolves a parsed map into the frame map `O target → O source` of a
/// locale map `source → target`: every target irreducible must be sent to a
/// source element.
pub fn resolve_map(
    map: &ParsedMap,
    source: &FiniteFrame,
    target: &FiniteFrame,
) -> Result<FrameHom> {
    let mut images: Vec<Option<FrameElement>> = vec![None; target.irr_count()];
    for (tname, expr, lineno) in &map.entries {
        let idx = target.poset().index_of(tname).ok_or_else(|| {
            CoreError::parse(*lineno, format!("unknown target element `{tname}`"))
        })?;
        images[idx] = Some(parse_element(source, expr, *lineno)?);
    }
    let images: Result<Vec<FrameElement>> = images
        .into_iter()
        .enumerate()
        .map(|(i, im)| {
            im.ok_or_else(|| {
                CoreError::parse(0, format!("no send line for `{}`", target.poset().name(i)))
            })
        })
        .collect();
    FrameHom::try_new(target, source, images?)
}

/// Serializes a locale back into the shared format; the output re-parses to
/// an isomorphic structure. `legend` lines are emitted as comments.
pub fn dump_locale(
    name: &str,
    frame: &FiniteFrame,
    covers: &[(String, CoverDownset)],
    entourages: &[(String, Relation)],
    legend: &[String],
) -> String {
    let mut out = String::new();
    for l in legend {
        let _ = writeln!(out, "# {l}");
    }
    let _ = writeln!(out, "frame {name}");
    let poset = frame.poset();
    for i in 0..poset.len() {
        let _ = writeln!(out, "elem {}", poset.name(i));
    }
    // covering pairs of the order (transitive reduction)
    for j in 0..poset.len() {
        for i in 0..poset.len() {
            if i == j || !poset.leq(i, j) {
                continue;
            }
            let covered =
                (0..poset.len()).any(|k| k != i && k != j && poset.leq(i, k) && poset.leq(k, j));
            if !covered {
                let _ = writeln!(out, "le {} {}", poset.name(i), poset.name(j));
            }
        }
    }
    for (cname, c) in covers {
        let gens: Vec<String> = c.generators().iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "cover {cname}: {}", gens.join(", "));
    }
    for (ename, e) in entourages {
        let sq = e.square();
        let rects: Vec<String> = sq
            .frame()
            .poset()
            .maximal(e.element().set())
            .iter()
            .map(|k| {
                let (i, j) = sq.unpair(k);
                format!("{} ⊕ {}", poset.name(i), poset.name(j))
            })
            .collect();
        if rects.is_empty() {
            let _ = writeln!(out, "entourage {ename}: 0 ⊕ 0");
        } else {
            let _ = writeln!(out, "entourage {ename}: {}", rects.join(" | "));
        }
    }
    out
}

/// Serializes a structure with its stored uniformity bases.
pub fn dump_structure(name: &str, s: &PreUniformLocale, legend: &[String]) -> String {
    let covers: Vec<(String, CoverDownset)> = s
        .covers()
        .map(|cu| {
            cu.base()
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("U{i}"), c.clone()))
                .collect()
        })
        .unwrap_or_default();
    let entourages: Vec<(String, Relation)> = s
        .entourages()
        .map(|eu| {
            eu.base()
                .iter()
                .enumerate()
                .map(|(i, e)| (format!("E{i}"), e.clone()))
                .collect()
        })
        .unwrap_or_default();
    dump_locale(name, s.frame(), &covers, &entourages, legend)
}
