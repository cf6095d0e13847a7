//! Meanders of type-A seaweeds, their orientation and component census, and
//! the index formulas built on them.
//!
//! Vertices are `1..=n`. Each block of the top composition contributes arcs
//! pairing its vertices from the outside in; likewise for the bottom. The
//! index is `2C + P - 1` for `C` cycles and `P` paths (isolated vertices are
//! degenerate paths).

use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seaweed::{Composition, SeaweedSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeanderError {
    #[error("unknown render format {0:?} (expected ascii, svg, tikz or json)")]
    UnknownFormat(String),
    #[error("invalid meander: {0}")]
    Invalid(String),
    #[error("malformed meander JSON: {0}")]
    Json(String),
}

/// Undirected meander. Edges are stored as `(smaller, larger)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meander {
    n: usize,
    top: Vec<(usize, usize)>,
    bottom: Vec<(usize, usize)>,
}

/// Meander with the counterclockwise orientation: top edges run from the
/// larger vertex to the smaller, bottom edges from the smaller to the larger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMeander {
    n: usize,
    top: Vec<(usize, usize)>,
    bottom: Vec<(usize, usize)>,
}

/// A connected component of a meander, as an ordered vertex walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum Component {
    Cycle(Vec<usize>),
    Path(Vec<usize>),
}

impl Component {
    pub fn vertices(&self) -> &[usize] {
        match self {
            Component::Cycle(v) | Component::Path(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    pub cycles: usize,
    pub paths: usize,
}

impl ComponentReport {
    /// `2C + P - 1`.
    pub fn index(&self) -> usize {
        2 * self.cycles + self.paths - 1
    }

    pub fn is_two_paths(&self) -> bool {
        self.cycles == 0 && self.paths == 2
    }

    pub fn is_one_cycle(&self) -> bool {
        self.cycles == 1 && self.paths == 0
    }
}

/// Outside-in arcs of every block of a composition.
fn block_arcs(c: &Composition) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for (start, end) in c.blocks() {
        let (mut lo, mut hi) = (start, end);
        while lo < hi {
            arcs.push((lo, hi));
            lo += 1;
            hi -= 1;
        }
    }
    arcs
}

pub fn build_meander(spec: &SeaweedSpec) -> Meander {
    Meander {
        n: spec.n(),
        top: block_arcs(spec.top()),
        bottom: block_arcs(spec.bottom()),
    }
}

pub fn orient(m: &Meander) -> DirectedMeander {
    DirectedMeander {
        n: m.n,
        top: m.top.iter().map(|&(a, b)| (b, a)).collect(),
        bottom: m.bottom.clone(),
    }
}

impl Meander {
    /// Builds a meander from raw edge lists, checking degrees and nesting.
    pub fn new(
        n: usize,
        top: Vec<(usize, usize)>,
        bottom: Vec<(usize, usize)>,
    ) -> Result<Self, MeanderError> {
        let norm =
            |edges: Vec<(usize, usize)>, side: &str| -> Result<Vec<(usize, usize)>, MeanderError> {
                let mut seen = vec![false; n + 1];
                let mut out = Vec::with_capacity(edges.len());
                for (a, b) in edges {
                    let (a, b) = (a.min(b), a.max(b));
                    if a == 0 || b > n || a == b {
                        return Err(MeanderError::Invalid(format!(
                            "{side} edge ({a}, {b}) out of range"
                        )));
                    }
                    for v in [a, b] {
                        if std::mem::replace(&mut seen[v], true) {
                            return Err(MeanderError::Invalid(format!(
                                "vertex {v} has two {side} edges"
                            )));
                        }
                    }
                    out.push((a, b));
                }
                for (x, &(a, b)) in out.iter().enumerate() {
                    for &(c, d) in &out[x + 1..] {
                        if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                            return Err(MeanderError::Invalid(format!(
                                "{side} edges ({a}, {b}) and ({c}, {d}) cross"
                            )));
                        }
                    }
                }
                Ok(out)
            };
        Ok(Self {
            n,
            top: norm(top, "top")?,
            bottom: norm(bottom, "bottom")?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_edges(&self) -> &[(usize, usize)] {
        &self.top
    }

    pub fn bottom_edges(&self) -> &[(usize, usize)] {
        &self.bottom
    }

    pub fn degree(&self, v: usize) -> usize {
        self.top
            .iter()
            .chain(&self.bottom)
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn to_json(&self) -> MeanderJson {
        MeanderJson {
            n: self.n,
            top: self.top.iter().map(|&(a, b)| [a, b]).collect(),
            bottom: self.bottom.iter().map(|&(a, b)| [a, b]).collect(),
            directed: false,
        }
    }
}

impl DirectedMeander {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_edges(&self) -> &[(usize, usize)] {
        &self.top
    }

    pub fn bottom_edges(&self) -> &[(usize, usize)] {
        &self.bottom
    }

    /// All directed edges, bottom first then top, each in block order.
    pub fn edges(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.bottom.iter().chain(&self.top)
    }

    pub fn undirected(&self) -> Meander {
        Meander {
            n: self.n,
            top: self.top.iter().map(|&(a, b)| (b, a)).collect(),
            bottom: self.bottom.clone(),
        }
    }

    pub fn to_json(&self) -> MeanderJson {
        MeanderJson {
            n: self.n,
            top: self.top.iter().map(|&(a, b)| [a, b]).collect(),
            bottom: self.bottom.iter().map(|&(a, b)| [a, b]).collect(),
            directed: true,
        }
    }
}

/// JSON meander: `{n, top: [[i,j]...], bottom: [[i,j]...], directed}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeanderJson {
    pub n: usize,
    pub top: Vec<[usize; 2]>,
    pub bottom: Vec<[usize; 2]>,
    pub directed: bool,
}

/// Either flavour of meander, as read back from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMeander {
    Undirected(Meander),
    Directed(DirectedMeander),
}

impl MeanderJson {
    pub fn parse(text: &str) -> Result<AnyMeander, MeanderError> {
        let json: MeanderJson =
            serde_json::from_str(text).map_err(|e| MeanderError::Json(e.to_string()))?;
        json.into_meander()
    }

    pub fn into_meander(self) -> Result<AnyMeander, MeanderError> {
        let top: Vec<(usize, usize)> = self.top.iter().map(|e| (e[0], e[1])).collect();
        let bottom: Vec<(usize, usize)> = self.bottom.iter().map(|e| (e[0], e[1])).collect();
        if !self.directed {
            return Ok(AnyMeander::Undirected(Meander::new(self.n, top, bottom)?));
        }
        if top.iter().any(|&(a, b)| a < b) || bottom.iter().any(|&(a, b)| a > b) {
            return Err(MeanderError::Invalid(
                "directed top edges must run right to left, bottom edges left to right".into(),
            ));
        }
        let base = Meander::new(self.n, top, bottom)?;
        Ok(AnyMeander::Directed(orient(&base)))
    }
}

/// Cycle/path decomposition. Paths are walked from their smaller endpoint,
/// cycles from their smallest vertex leaving along the top edge.
pub fn components(m: &Meander) -> ComponentReport {
    let n = m.n;
    let mut top_nb = vec![None; n + 1];
    let mut bottom_nb = vec![None; n + 1];
    for &(a, b) in &m.top {
        top_nb[a] = Some(b);
        top_nb[b] = Some(a);
    }
    for &(a, b) in &m.bottom {
        bottom_nb[a] = Some(b);
        bottom_nb[b] = Some(a);
    }
    let degree = |v: usize| top_nb[v].is_some() as usize + bottom_nb[v].is_some() as usize;
    let mut visited = vec![false; n + 1];
    let mut found = Vec::new();

    // Walk alternating top/bottom edges, starting along `use_top`.
    let walk = |start: usize, mut use_top: bool, visited: &mut Vec<bool>| -> Vec<usize> {
        let mut out = vec![start];
        visited[start] = true;
        let mut cur = start;
        loop {
            let next = if use_top { top_nb[cur] } else { bottom_nb[cur] };
            match next {
                Some(v) if !visited[v] => {
                    visited[v] = true;
                    out.push(v);
                    cur = v;
                    use_top = !use_top;
                }
                _ => break,
            }
        }
        out
    };

    for v in 1..=n {
        if visited[v] || degree(v) == 2 {
            continue;
        }
        let path = walk(v, top_nb[v].is_some(), &mut visited);
        found.push(Component::Path(path));
    }
    for v in 1..=n {
        if !visited[v] {
            found.push(Component::Cycle(walk(v, true, &mut visited)));
        }
    }
    found.sort_by_key(|c| c.vertices().iter().copied().min());
    let cycles = found
        .iter()
        .filter(|c| matches!(c, Component::Cycle(_)))
        .count();
    ComponentReport {
        paths: found.len() - cycles,
        cycles,
        components: found,
    }
}

/// Index of the seaweed via `2C + P - 1`.
pub fn index(spec: &SeaweedSpec) -> usize {
    components(&build_meander(spec)).index()
}

/// Index of `p_n^A a|b|c / n`: `gcd(a + b, b + c) - 1`.
pub fn index_gcd_3part(a: usize, b: usize, c: usize) -> usize {
    (a + b).gcd(&(b + c)) - 1
}

/// Index of `p_n^A a|c / n`: `gcd(a, c) - 1`.
pub fn index_gcd_2part(a: usize, c: usize) -> usize {
    a.gcd(&c) - 1
}

pub fn all_parts_even(spec: &SeaweedSpec) -> bool {
    spec.top()
        .parts()
        .iter()
        .chain(spec.bottom().parts())
        .all(|p| p % 2 == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
    Tikz,
    Json,
}

impl std::str::FromStr for RenderFormat {
    type Err = MeanderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" => Ok(Self::Ascii),
            "svg" => Ok(Self::Svg),
            "tikz" => Ok(Self::Tikz),
            "json" => Ok(Self::Json),
            _ => Err(MeanderError::UnknownFormat(s.to_string())),
        }
    }
}

/// Borrowed view used by the renderers: edges plus optional direction.
pub enum MeanderView<'a> {
    Undirected(&'a Meander),
    Directed(&'a DirectedMeander),
}

struct Arcs {
    n: usize,
    directed: bool,
    /// `(from, to)`; for undirected arcs `from < to`.
    top: Vec<(usize, usize)>,
    bottom: Vec<(usize, usize)>,
}

impl MeanderView<'_> {
    fn arcs(&self) -> Arcs {
        match self {
            MeanderView::Undirected(m) => Arcs {
                n: m.n,
                directed: false,
                top: m.top.clone(),
                bottom: m.bottom.clone(),
            },
            MeanderView::Directed(d) => Arcs {
                n: d.n,
                directed: true,
                top: d.top.clone(),
                bottom: d.bottom.clone(),
            },
        }
    }
}

pub fn render(view: MeanderView<'_>, format: RenderFormat) -> String {
    let arcs = view.arcs();
    match format {
        RenderFormat::Ascii => render_ascii(&arcs),
        RenderFormat::Svg => render_svg(&arcs),
        RenderFormat::Tikz => render_tikz(&arcs),
        RenderFormat::Json => {
            let json = match view {
                MeanderView::Undirected(m) => m.to_json(),
                MeanderView::Directed(d) => d.to_json(),
            };
            serde_json::to_string(&json).expect("meander JSON serializes")
        }
    }
}

/// Nesting level of each arc: 1 for innermost, one more than the deepest arc
/// strictly inside it otherwise.
fn arc_levels(arcs: &[(usize, usize)]) -> Vec<usize> {
    let spans: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut order: Vec<usize> = (0..spans.len()).collect();
    order.sort_by_key(|&i| spans[i].1 - spans[i].0);
    let mut level = vec![0; spans.len()];
    for &i in &order {
        let (lo, hi) = spans[i];
        let inner = spans
            .iter()
            .enumerate()
            .filter(|&(j, &(a, b))| j != i && lo < a && b < hi)
            .map(|(j, _)| level[j])
            .max()
            .unwrap_or(0);
        level[i] = inner + 1;
    }
    level
}

const ASCII_STEP: usize = 4;

fn ascii_rows(arcs: &[(usize, usize)], directed: bool, corner: char, width: usize) -> Vec<String> {
    let levels = arc_levels(arcs);
    let max = levels.iter().copied().max().unwrap_or(0);
    let col = |v: usize| (v - 1) * ASCII_STEP + 1;
    let mut rows = Vec::new();
    for l in (1..=max).rev() {
        let mut line = vec![' '; width];
        for (k, &(from, to)) in arcs.iter().enumerate() {
            let (lo, hi) = (from.min(to), from.max(to));
            if levels[k] == l {
                for c in line.iter_mut().take(col(hi)).skip(col(lo) + 1) {
                    *c = '-';
                }
                line[col(lo)] = corner;
                line[col(hi)] = corner;
                if directed {
                    let mid = (col(lo) + col(hi)) / 2;
                    line[mid] = if from > to { '<' } else { '>' };
                }
            } else if levels[k] > l {
                line[col(lo)] = '|';
                line[col(hi)] = '|';
            }
        }
        rows.push(line.into_iter().collect::<String>().trim_end().to_string());
    }
    rows
}

fn render_ascii(a: &Arcs) -> String {
    let width = (a.n.max(1) - 1) * ASCII_STEP + 3;
    let mut out = String::new();
    for row in ascii_rows(&a.top, a.directed, '.', width) {
        out.push_str(&row);
        out.push('\n');
    }
    let dots: String = (1..=a.n)
        .map(|_| format!("{:<w$}", " o", w = ASCII_STEP))
        .collect();
    out.push_str(dots.trim_end());
    out.push('\n');
    let mut bottom = ascii_rows(&a.bottom, a.directed, '\'', width);
    bottom.reverse();
    for row in bottom {
        out.push_str(&row);
        out.push('\n');
    }
    let labels: String = (1..=a.n)
        .map(|v| format!("{:<w$}", format!(" {v}"), w = ASCII_STEP))
        .collect();
    out.push_str(labels.trim_end());
    out.push('\n');
    out
}

const SVG_STEP: f64 = 40.0;
const SVG_MARGIN: f64 = 30.0;

fn render_svg(a: &Arcs) -> String {
    let x = |v: usize| SVG_MARGIN + SVG_STEP * (v as f64 - 1.0);
    let reach = |arcs: &[(usize, usize)]| {
        arcs.iter()
            .map(|&(p, q)| p.abs_diff(q) as f64 * SVG_STEP / 2.0)
            .fold(0.0, f64::max)
    };
    let up = reach(&a.top);
    let down = reach(&a.bottom);
    let width = 2.0 * SVG_MARGIN + SVG_STEP * (a.n.max(1) as f64 - 1.0);
    let y = SVG_MARGIN + up;
    let height = y + down + SVG_MARGIN + 14.0;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    if a.directed {
        let _ = writeln!(
            s,
            r#"  <defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#
        );
    }
    for (arcs, above) in [(&a.top, true), (&a.bottom, false)] {
        for &(from, to) in arcs.iter() {
            let r = from.abs_diff(to) as f64 * SVG_STEP / 2.0;
            // Semicircle from `from` to `to`; the sweep flag picks the side.
            let going_right = to > from;
            let sweep = if above == going_right { 1 } else { 0 };
            if a.directed {
                let mid_x = (x(from) + x(to)) / 2.0;
                let mid_y = if above { y - r } else { y + r };
                let _ = writeln!(
                    s,
                    r#"  <path d="M {} {y} A {r} {r} 0 0 {sweep} {mid_x} {mid_y} A {r} {r} 0 0 {sweep} {} {y}" fill="none" stroke="black" marker-mid="url(#arrow)"/>"#,
                    x(from),
                    x(to)
                );
            } else {
                let _ = writeln!(
                    s,
                    r#"  <path d="M {} {y} A {r} {r} 0 0 {sweep} {} {y}" fill="none" stroke="black"/>"#,
                    x(from),
                    x(to)
                );
            }
        }
    }
    for v in 1..=a.n {
        let _ = writeln!(
            s,
            r#"  <circle cx="{}" cy="{y}" r="3" fill="black"/>"#,
            x(v)
        );
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="12" text-anchor="middle">v{v}</text>"#,
            x(v),
            y + down + 16.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn render_tikz(a: &Arcs) -> String {
    let mut s = String::new();
    s.push_str("\\begin{tikzpicture}[scale=0.8]\n");
    s.push_str("\\def\\vertex{\\node [circle, fill, inner sep=1.5pt]}\n");
    if a.directed {
        s.push_str(
            "\\tikzset{->-/.style={decoration={\n  markings,\n  mark=at position .55 with {\\arrow{>}}},postaction={decorate}}}\n",
        );
    }
    for v in 1..=a.n {
        let _ = writeln!(
            s,
            "  \\vertex[label=below:\\footnotesize {{$v_{{{v}}}$}}] at ({},0) {{}};",
            v - 1
        );
    }
    if a.directed {
        // bend right keeps top arcs (drawn leftwards) above and bottom arcs
        // (drawn rightwards) below.
        for &(from, to) in a.top.iter().chain(&a.bottom) {
            let _ = writeln!(
                s,
                "  \\draw[->-] ({},0) to[bend right=60] ({},0);",
                from - 1,
                to - 1
            );
        }
    } else {
        for &(lo, hi) in &a.top {
            let _ = writeln!(
                s,
                "  \\draw ({},0) to[bend left=60] ({},0);",
                lo - 1,
                hi - 1
            );
        }
        for &(lo, hi) in &a.bottom {
            let _ = writeln!(
                s,
                "  \\draw ({},0) to[bend left=60] ({},0);",
                hi - 1,
                lo - 1
            );
        }
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}
