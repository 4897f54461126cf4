//! Canonical line-oriented ASCII formats.
//!
//! All formats use 0-indexed vertices, decimal weight literals, LF line
//! endings and no trailing whitespace. Emission is canonical — edges in
//! input order, vertex lists sorted ascending, weights in shortest
//! round-trip form — so `parse ∘ emit` is byte identity on canonical files
//! and `emit ∘ parse` is value identity on any accepted file.
//!
//! * Undirected (`UHG 1`): `n <n>` then `e <weight> <k> <v1> ... <vk>` per
//!   edge. A lifted hypergraph carries the comment `# lifted from n=<n>`
//!   right after the header so unlifting can recover the source dimension.
//! * Directed (`DHG 1`): `n <n>` then
//!   `e <weight> t <kt> <t1> ... h <kh> <h1> ...` per edge.
//! * Splitting functions (`SFN 1`): `n <n>` then per edge a
//!   `support <k> <v1> ... <vk>` line followed by `v <mask-hex> <value>`
//!   lines for all `2^k` subsets in ascending mask order (bit `i` of the
//!   mask is the `i`-th member of the sorted support).
//! * Tags: one integer per line.
//!
//! Parse errors carry 1-based line numbers.

use crate::error::{Error, Result};
use crate::hypercore::{
    Claims, DirectedHyperedge, DirectedHypergraph, SplittingFunction, SubmodularHypergraph,
    UndirectedHyperedge, UndirectedHypergraph,
};
use crate::lift::LiftedHypergraph;

/// File kind, detected from the header line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Undirected,
    Directed,
    Splitting,
}

/// Reads the header line to classify a file.
pub fn detect_kind(text: &str) -> Result<FileKind> {
    match text.lines().next() {
        Some("UHG 1") => Ok(FileKind::Undirected),
        Some("DHG 1") => Ok(FileKind::Directed),
        Some("SFN 1") => Ok(FileKind::Splitting),
        other => Err(Error::Parse {
            line: 1,
            msg: format!(
                "unrecognized header {:?}, expected \"UHG 1\", \"DHG 1\" or \"SFN 1\"",
                other.unwrap_or("")
            ),
        }),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    /// Source dimension from a `# lifted from n=<n>` comment, if present.
    lifted_from: Option<usize>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
            lifted_from: None,
        }
    }

    /// Next non-comment line as `(1-based number, text)`.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (idx, line) in self.iter.by_ref() {
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("lifted from n=") {
                    self.lifted_from = v.trim().parse().ok();
                }
                continue;
            }
            return Some((idx + 1, line));
        }
        None
    }
}

fn expect_header(lines: &mut Lines<'_>, header: &str) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l == header => Ok(()),
        Some((no, l)) => Err(parse_err(
            no,
            format!("expected header {header:?}, got {l:?}"),
        )),
        None => Err(parse_err(1, "empty file")),
    }
}

fn parse_n(lines: &mut Lines<'_>) -> Result<usize> {
    match lines.next() {
        Some((no, l)) => {
            let mut tok = l.split_whitespace();
            match (tok.next(), tok.next(), tok.next()) {
                (Some("n"), Some(v), None) => v
                    .parse::<usize>()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| parse_err(no, format!("bad vertex count {v:?}"))),
                _ => Err(parse_err(no, format!("expected \"n <count>\", got {l:?}"))),
            }
        }
        None => Err(parse_err(1, "missing \"n <count>\" line")),
    }
}

fn parse_weight(no: usize, tok: &str) -> Result<f64> {
    let w: f64 = tok
        .parse()
        .map_err(|_| parse_err(no, format!("bad weight {tok:?}")))?;
    if !w.is_finite() || w < 0.0 {
        return Err(parse_err(
            no,
            format!("weight {tok} must be finite and nonnegative"),
        ));
    }
    Ok(w)
}

fn parse_vertex_list<'t>(
    no: usize,
    tokens: &mut impl Iterator<Item = &'t str>,
    n: usize,
    what: &str,
) -> Result<Vec<usize>> {
    let count_tok = tokens
        .next()
        .ok_or_else(|| parse_err(no, format!("missing {what} count")))?;
    let count: usize = count_tok
        .parse()
        .map_err(|_| parse_err(no, format!("bad {what} count {count_tok:?}")))?;
    if count == 0 {
        return Err(parse_err(no, format!("empty {what}")));
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let tok = tokens
            .next()
            .ok_or_else(|| parse_err(no, format!("{what} shorter than its count {count}")))?;
        let v: usize = tok
            .parse()
            .map_err(|_| parse_err(no, format!("bad vertex id {tok:?}")))?;
        if v >= n {
            return Err(parse_err(
                no,
                format!("vertex id {v} out of range (n = {n})"),
            ));
        }
        out.push(v);
    }
    let mut sorted = out.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(parse_err(no, format!("duplicate vertex id in {what}")));
    }
    Ok(sorted)
}

/// Parses an undirected hypergraph; the second component is the source
/// dimension from a `# lifted from n=<n>` comment when one is present.
pub fn parse_undirected(text: &str) -> Result<(UndirectedHypergraph, Option<usize>)> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "UHG 1")?;
    let n = parse_n(&mut lines)?;
    let mut edges = Vec::new();
    while let Some((no, l)) = lines.next() {
        if l.is_empty() {
            continue;
        }
        let mut tok = l.split_whitespace();
        match tok.next() {
            Some("e") => {}
            _ => return Err(parse_err(no, format!("expected edge line, got {l:?}"))),
        }
        let w = parse_weight(
            no,
            tok.next().ok_or_else(|| parse_err(no, "missing weight"))?,
        )?;
        let vertices = parse_vertex_list(no, &mut tok, n, "vertex list")?;
        if tok.next().is_some() {
            return Err(parse_err(no, "trailing tokens after edge"));
        }
        edges.push(UndirectedHyperedge {
            vertices,
            weight: w,
        });
    }
    Ok((UndirectedHypergraph::new(n, edges), lines.lifted_from))
}

/// Emits an undirected hypergraph canonically; `lifted_from` adds the
/// `# lifted from n=<n>` comment.
pub fn emit_undirected(h: &UndirectedHypergraph, lifted_from: Option<usize>) -> String {
    let mut out = String::from("UHG 1\n");
    if let Some(n) = lifted_from {
        out.push_str(&format!("# lifted from n={n}\n"));
    }
    out.push_str(&format!("n {}\n", h.n));
    for e in &h.edges {
        out.push_str(&format!("e {} {}", e.weight, e.vertices.len()));
        for v in &e.vertices {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

/// Parses a lifted hypergraph: a UHG file whose `# lifted from n=<n>`
/// comment supplies the source dimension.
pub fn parse_lifted(text: &str) -> Result<LiftedHypergraph> {
    let (graph, lifted_from) = parse_undirected(text)?;
    let source_n = lifted_from
        .ok_or_else(|| parse_err(1, "missing \"# lifted from n=<n>\" comment; cannot unlift"))?;
    if graph.n != source_n * source_n + 1 {
        return Err(parse_err(
            1,
            format!(
                "lifted file claims source n={source_n} but has {} vertices, expected {}",
                graph.n,
                source_n * source_n + 1
            ),
        ));
    }
    Ok(LiftedHypergraph { graph, source_n })
}

pub fn emit_lifted(l: &LiftedHypergraph) -> String {
    emit_undirected(&l.graph, Some(l.source_n))
}

/// Parses a directed hypergraph.
pub fn parse_directed(text: &str) -> Result<DirectedHypergraph> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "DHG 1")?;
    let n = parse_n(&mut lines)?;
    let mut edges = Vec::new();
    while let Some((no, l)) = lines.next() {
        if l.is_empty() {
            continue;
        }
        let mut tok = l.split_whitespace();
        match tok.next() {
            Some("e") => {}
            _ => return Err(parse_err(no, format!("expected edge line, got {l:?}"))),
        }
        let w = parse_weight(
            no,
            tok.next().ok_or_else(|| parse_err(no, "missing weight"))?,
        )?;
        match tok.next() {
            Some("t") => {}
            _ => return Err(parse_err(no, "expected \"t\" marker")),
        }
        let tail = parse_vertex_list(no, &mut tok, n, "tail")?;
        match tok.next() {
            Some("h") => {}
            _ => return Err(parse_err(no, "expected \"h\" marker")),
        }
        let head = parse_vertex_list(no, &mut tok, n, "head")?;
        if tok.next().is_some() {
            return Err(parse_err(no, "trailing tokens after edge"));
        }
        edges.push(DirectedHyperedge {
            tail,
            head,
            weight: w,
        });
    }
    Ok(DirectedHypergraph::new(n, edges))
}

pub fn emit_directed(h: &DirectedHypergraph) -> String {
    let mut out = String::from("DHG 1\n");
    out.push_str(&format!("n {}\n", h.n));
    for e in &h.edges {
        out.push_str(&format!("e {} t {}", e.weight, e.tail.len()));
        for v in &e.tail {
            out.push_str(&format!(" {v}"));
        }
        out.push_str(&format!(" h {}", e.head.len()));
        for v in &e.head {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

/// Parses a submodular hypergraph of table-backed splitting functions.
/// Claims are left unset; callers that need them run the certifiers.
pub fn parse_splitting(text: &str) -> Result<SubmodularHypergraph> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "SFN 1")?;
    let n = parse_n(&mut lines)?;
    let mut edges = Vec::new();
    let mut pending: Option<(usize, Vec<usize>, Vec<f64>)> = None; // (line, support, table)
    let flush = |pending: &mut Option<(usize, Vec<usize>, Vec<f64>)>,
                 edges: &mut Vec<SplittingFunction>|
     -> Result<()> {
        if let Some((no, support, table)) = pending.take() {
            if table.len() != 1 << support.len() {
                return Err(parse_err(
                    no,
                    format!(
                        "support of size {} needs {} value lines, got {}",
                        support.len(),
                        1usize << support.len(),
                        table.len()
                    ),
                ));
            }
            let name = format!("table-{}", edges.len());
            edges.push(
                SplittingFunction::from_table(name, support, Claims::default(), table)
                    .map_err(|e| parse_err(no, e.to_string()))?,
            );
        }
        Ok(())
    };
    while let Some((no, l)) = lines.next() {
        if l.is_empty() {
            continue;
        }
        let mut tok = l.split_whitespace();
        match tok.next() {
            Some("support") => {
                flush(&mut pending, &mut edges)?;
                let support = parse_vertex_list(no, &mut tok, n, "support")?;
                if support.len() > 20 {
                    return Err(parse_err(no, "support larger than 20 not supported"));
                }
                if tok.next().is_some() {
                    return Err(parse_err(no, "trailing tokens after support"));
                }
                pending = Some((no, support, Vec::new()));
            }
            Some("v") => {
                let Some((_, support, table)) = pending.as_mut() else {
                    return Err(parse_err(no, "value line before any support line"));
                };
                let mask_tok = tok.next().ok_or_else(|| parse_err(no, "missing mask"))?;
                let mask = u64::from_str_radix(mask_tok, 16)
                    .map_err(|_| parse_err(no, format!("bad hex mask {mask_tok:?}")))?;
                if mask != table.len() as u64 {
                    return Err(parse_err(
                        no,
                        format!("mask {mask_tok} out of order, expected {:x}", table.len()),
                    ));
                }
                if mask >= 1 << support.len() {
                    return Err(parse_err(
                        no,
                        format!("mask {mask_tok} too large for support"),
                    ));
                }
                let val_tok = tok.next().ok_or_else(|| parse_err(no, "missing value"))?;
                let val: f64 = val_tok
                    .parse()
                    .map_err(|_| parse_err(no, format!("bad value {val_tok:?}")))?;
                if !val.is_finite() || val < 0.0 {
                    return Err(parse_err(no, "values must be finite and nonnegative"));
                }
                if tok.next().is_some() {
                    return Err(parse_err(no, "trailing tokens after value"));
                }
                table.push(val);
            }
            _ => {
                return Err(parse_err(
                    no,
                    format!("expected support or value line, got {l:?}"),
                ))
            }
        }
    }
    flush(&mut pending, &mut edges)?;
    Ok(SubmodularHypergraph::new(n, edges))
}

/// Emits a submodular hypergraph by tabulating each splitting function;
/// requires every arity to be at most 20.
pub fn emit_splitting(h: &SubmodularHypergraph) -> Result<String> {
    let mut out = String::from("SFN 1\n");
    out.push_str(&format!("n {}\n", h.n));
    for (i, f) in h.edges.iter().enumerate() {
        if f.arity() > 20 {
            return Err(Error::InvalidArgument(format!(
                "edge {i}: arity {} too large to tabulate",
                f.arity()
            )));
        }
        out.push_str(&format!("support {}", f.arity()));
        for v in f.support() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        for (mask, value) in f.table().into_iter().enumerate() {
            out.push_str(&format!("v {mask:x} {value}\n"));
        }
    }
    Ok(out)
}

/// Parses a tags file: one nonnegative integer per line.
pub fn parse_tags(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tag: usize = line
            .parse()
            .map_err(|_| parse_err(idx + 1, format!("bad tag {line:?}")))?;
        out.push(tag);
    }
    Ok(out)
}

pub fn emit_tags(tags: &[usize]) -> String {
    let mut out = String::new();
    for t in tags {
        out.push_str(&format!("{t}\n"));
    }
    out
}
