//! Link diagrams as oriented PD codes, and the diagram-level oracles built
//! on them.
//!
//! PD convention: each crossing lists its four arc labels counterclockwise,
//! starting from the incoming under-strand. A crossing is positive when the
//! over-strand enters at the fourth slot.

mod bracket;
mod corpus;
mod qskein;
mod surfaces;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::Sign;

pub use bracket::{jones_via_bracket, jones_via_bracket_with, kauffman_bracket, Threads};
pub use corpus::{corpus_root, load_corpus, load_record, LinkRecord, CORPUS_ENV};
pub use qskein::{q_via_skein, q_via_skein_with_stats, SkeinStats};
pub use surfaces::{
    braid_word_from_diagram, faces, goeritz_from_diagram, seifert_circles,
    seifert_matrix_from_braid, seifert_matrix_from_diagram,
};

/// Default crossing budget for the bracket state sum.
pub const BRACKET_BUDGET: usize = 16;
/// Default crossing budget for the Q skein recursion.
pub const SKEIN_BUDGET: usize = 12;

/// An oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    /// Arc labels `0..edges` per crossing, slot 0 the incoming under-strand.
    crossings: Vec<[usize; 4]>,
    /// Slot (1 or 3) where the over-strand enters.
    over_in: Vec<u8>,
    /// Crossingless unknotted components.
    loops: usize,
    edges: usize,
    head: Vec<(usize, u8)>,
    tail: Vec<(usize, u8)>,
    components: Vec<Vec<usize>>,
}

fn role(slot: u8, over_in: Option<u8>) -> Option<bool> {
    match slot {
        0 => Some(true),
        2 => Some(false),
        s => over_in.map(|o| o == s),
    }
}

impl LinkDiagram {
    /// Builds from raw crossings whose labels are arbitrary integers.
    /// `over_in` entries left `None` are inferred from the arcs; a component
    /// that never passes under is oriented so that its labels increase.
    fn from_labelled(
        raw: &[[i64; 4]],
        over_in: Vec<Option<u8>>,
        loops: usize,
    ) -> Result<LinkDiagram> {
        let mut ids: BTreeMap<i64, usize> = BTreeMap::new();
        for x in raw {
            for &l in x {
                let next = ids.len();
                ids.entry(l).or_insert(next);
            }
        }
        let crossings: Vec<[usize; 4]> = raw.iter().map(|x| x.map(|l| ids[&l])).collect();
        Self::orient(crossings, over_in, loops, Some(raw))
    }

    fn orient(
        crossings: Vec<[usize; 4]>,
        mut over_in: Vec<Option<u8>>,
        loops: usize,
        labels: Option<&[[i64; 4]]>,
    ) -> Result<LinkDiagram> {
        let edges = crossings.iter().flatten().map(|&e| e + 1).max().unwrap_or(0);
        let mut occ: Vec<Vec<(usize, u8)>> = vec![Vec::new(); edges];
        for (x, c) in crossings.iter().enumerate() {
            for (k, &e) in c.iter().enumerate() {
                occ[e].push((x, k as u8));
            }
        }
        for (e, o) in occ.iter().enumerate() {
            if o.len() != 2 {
                return Err(Error::Diagram(format!(
                    "arc {e} appears {} times, expected twice",
                    o.len()
                )));
            }
        }
        loop {
            let mut changed = true;
            while changed {
                changed = false;
                for o in &occ {
                    let [(x0, k0), (x1, k1)] = [o[0], o[1]];
                    let r0 = role(k0, over_in[x0]);
                    let r1 = role(k1, over_in[x1]);
                    match (r0, r1) {
                        (Some(a), Some(b)) if a == b => {
                            return Err(Error::Diagram(
                                "inconsistent orientation along an arc".into(),
                            ))
                        }
                        (Some(a), None) => {
                            over_in[x1] = Some(if a { 4 - k1 } else { k1 });
                            changed = true;
                        }
                        (None, Some(b)) => {
                            over_in[x0] = Some(if b { 4 - k0 } else { k0 });
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            let Some(x) = over_in.iter().position(Option::is_none) else {
                break;
            };
            let positive = match labels {
                Some(l) => {
                    let (b, d) = (l[x][1], l[x][3]);
                    b - d == 1 || d - b > 1
                }
                None => true,
            };
            over_in[x] = Some(if positive { 3 } else { 1 });
        }
        let over_in: Vec<u8> = over_in.into_iter().map(|o| o.expect("oriented")).collect();
        if over_in.iter().any(|&o| o != 1 && o != 3) {
            return Err(Error::Diagram("over-strand slot must be 1 or 3".into()));
        }
        let mut head = vec![(0, 0); edges];
        let mut tail = vec![(0, 0); edges];
        for (e, o) in occ.iter().enumerate() {
            for &(x, k) in o {
                if role(k, Some(over_in[x])).expect("known") {
                    head[e] = (x, k);
                } else {
                    tail[e] = (x, k);
                }
            }
        }
        let mut d = LinkDiagram {
            crossings,
            over_in,
            loops,
            edges,
            head,
            tail,
            components: Vec::new(),
        };
        d.components = d.trace_components();
        Ok(d)
    }

    fn trace_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.edges];
        let mut comps = Vec::new();
        for start in 0..self.edges {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            loop {
                seen[e] = true;
                comp.push(e);
                e = self.next_edge(e);
                if e == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// The arc following `e` along its component.
    pub(crate) fn next_edge(&self, e: usize) -> usize {
        let (x, k) = self.head[e];
        self.crossings[x][((k + 2) % 4) as usize]
    }

    /// Closure of a braid word: `k` stands for `σ_k`, `-k` for its inverse.
    /// Strands run upward; `σ_k` is a positive crossing.
    pub fn from_braid(word: &[i64], strands: usize) -> Result<LinkDiagram> {
        let width = word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
        if word.contains(&0) {
            return Err(Error::Parse("braid generator 0".into()));
        }
        if strands < width {
            return Err(Error::Parse(format!(
                "word needs {width} strands, got {strands}"
            )));
        }
        let mut cur: Vec<i64> = (0..strands as i64).collect();
        let mut next = strands as i64;
        let mut raw = Vec::new();
        let mut over = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize - 1;
            let (li, ri) = (cur[i], cur[i + 1]);
            let (lo, ro) = (next, next + 1);
            next += 2;
            if g > 0 {
                raw.push([ri, ro, lo, li]);
                over.push(Some(3));
            } else {
                raw.push([li, ri, ro, lo]);
                over.push(Some(1));
            }
            cur[i] = lo;
            cur[i + 1] = ro;
        }
        let mut rename = BTreeMap::new();
        let mut loops = 0;
        for (j, &c) in cur.iter().enumerate() {
            if c == j as i64 {
                loops += 1;
            } else {
                rename.insert(c, j as i64);
            }
        }
        for x in raw.iter_mut() {
            for l in x.iter_mut() {
                if let Some(&r) = rename.get(l) {
                    *l = r;
                }
            }
        }
        Self::from_labelled(&raw, over, loops)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of link components, crossingless loops included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.loops
    }

    pub fn free_loops(&self) -> usize {
        self.loops
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    /// Arcs of each component with at least one crossing, in order.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn sign(&self, x: usize) -> Sign {
        if self.over_in[x] == 3 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.crossings.len()).map(|x| self.sign(x)).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().map(|s| s.to_i64()).sum()
    }

    /// Linking number of each pair of components; crossingless loops come
    /// last and link nothing.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let c = self.component_count();
        let of = self.component_of();
        let mut twice = vec![vec![0i64; c]; c];
        for (x, arcs) in self.crossings.iter().enumerate() {
            let (a, b) = (of[arcs[0]], of[arcs[1]]);
            if a != b {
                let s = self.sign(x).to_i64();
                twice[a][b] += s;
                twice[b][a] += s;
            }
        }
        twice.iter().map(|row| row.iter().map(|v| v / 2).collect()).collect()
    }

    /// Every component has even total linking number with the others.
    pub fn is_proper(&self) -> bool {
        self.linking_matrix().iter().all(|row| row.iter().sum::<i64>() % 2 == 0)
    }

    pub(crate) fn over_in(&self, x: usize) -> u8 {
        self.over_in[x]
    }

    pub(crate) fn head(&self, e: usize) -> (usize, u8) {
        self.head[e]
    }

    pub(crate) fn tail(&self, e: usize) -> (usize, u8) {
        self.tail[e]
    }

    /// Component index of each arc.
    pub(crate) fn component_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.edges];
        for (i, c) in self.components.iter().enumerate() {
            for &e in c {
                of[e] = i;
            }
        }
        of
    }

    pub(crate) fn from_parts(
        crossings: Vec<[usize; 4]>,
        over_in: Vec<u8>,
        loops: usize,
    ) -> Result<LinkDiagram> {
        Self::orient(crossings, over_in.into_iter().map(Some).collect(), loops, None)
    }

    /// True when the crossings form one connected piece and there are no
    /// extra loops (or the diagram is a single crossingless circle).
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.loops == 1;
        }
        if self.loops > 0 {
            return false;
        }
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for e in 0..self.edges {
            let a = find(&mut parent, self.head[e].0);
            let b = find(&mut parent, self.tail[e].0);
            parent[a] = b;
        }
        let r = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == r)
    }

    /// The mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let mut xs = Vec::with_capacity(self.crossings.len());
        let mut over = Vec::with_capacity(self.crossings.len());
        for (c, &o) in self.crossings.iter().zip(&self.over_in) {
            let [a, b, cc, d] = *c;
            if o == 3 {
                xs.push([d, a, b, cc]);
                over.push(1);
            } else {
                xs.push([b, cc, d, a]);
                over.push(3);
            }
        }
        Self::from_parts(xs, over, self.loops).expect("mirror of a valid diagram")
    }

    /// Reverses the orientation of component `k` (indexing [`Self::components`]).
    pub fn reverse_component(&self, k: usize) -> Result<LinkDiagram> {
        if k >= self.components.len() {
            return Err(Error::Diagram(format!("no component {k}")));
        }
        let of = self.component_of();
        let mut xs = Vec::with_capacity(self.crossings.len());
        let mut over = Vec::with_capacity(self.crossings.len());
        for (c, &o) in self.crossings.iter().zip(&self.over_in) {
            let under_rev = of[c[0]] == k;
            let over_rev = of[c[1]] == k;
            let mut c = *c;
            let mut o = o;
            if under_rev {
                c = [c[2], c[3], c[0], c[1]];
                o = 4 - o;
            }
            if over_rev {
                o = 4 - o;
            }
            xs.push(c);
            over.push(o);
        }
        Self::from_parts(xs, over, self.loops)
    }

    /// Reverses every component.
    pub fn reverse(&self) -> LinkDiagram {
        let mut d = self.clone();
        for k in 0..self.components.len() {
            d = d.reverse_component(k).expect("component exists");
        }
        d
    }
}

/// Parses PD text: `X(1,4,2,5) X(3,6,4,1) ...`, `X[...]` or a nested list
/// `[[1,4,2,5],[3,6,4,1],...]`, plus optional `Loop(k)` terms for
/// crossingless components.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let s = body.trim();
    let mut raw: Vec<[i64; 4]> = Vec::new();
    let mut loops = 0usize;
    if s.starts_with("[[") || s == "[]" {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse("unbalanced brackets".into()))?;
        for group in inner.split(']') {
            let g = group.trim().trim_start_matches(',').trim();
            if g.is_empty() {
                continue;
            }
            let g = g
                .strip_prefix('[')
                .ok_or_else(|| Error::Parse(format!("unexpected text {g:?}")))?;
            raw.push(four(g)?);
        }
    } else {
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == '*');
            if rest.is_empty() {
                break;
            }
            let (is_loop, after) = if let Some(r) = rest.strip_prefix("Loop") {
                (true, r)
            } else if let Some(r) = rest.strip_prefix('X') {
                (false, r)
            } else if let Some(r) = rest.strip_prefix("PD") {
                rest = r.trim_start_matches(['(', '[']);
                continue;
            } else if rest.starts_with([')', ']']) {
                rest = &rest[1..];
                continue;
            } else {
                return Err(Error::Parse(format!("unexpected text {:?}", first_word(rest))));
            };
            let after = after.trim_start();
            let close = match after.chars().next() {
                Some('(') => ')',
                Some('[') => ']',
                _ => return Err(Error::Parse("expected ( or [ after X".into())),
            };
            let end = after
                .find(close)
                .ok_or_else(|| Error::Parse("unclosed crossing".into()))?;
            let inner = &after[1..end];
            if is_loop {
                loops += 1;
            } else {
                raw.push(four(inner)?);
            }
            rest = &after[end + 1..];
        }
    }
    if raw.is_empty() && loops == 0 {
        return Err(Error::Parse("empty diagram".into()));
    }
    LinkDiagram::from_labelled(&raw, vec![None; raw.len()], loops)
}

fn first_word(s: &str) -> &str {
    s.split_whitespace().next().unwrap_or(s)
}

fn four(s: &str) -> Result<[i64; 4]> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad arc label {:?}", t.trim())))
        })
        .collect::<Result<_>>()?;
    v.try_into()
        .map_err(|v: Vec<i64>| Error::Parse(format!("crossing with {} labels", v.len())))
}

impl fmt::Display for LinkDiagram {
    /// PD text with labels `1..=edges`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c[0] + 1, c[1] + 1, c[2] + 1, c[3] + 1))
            .collect();
        parts.extend((0..self.loops).map(|_| "Loop(0)".to_string()));
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linking_numbers() {
        let h = LinkDiagram::from_braid(&[1, 1], 2).unwrap();
        assert_eq!(h.linking_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert!(!h.is_proper());
        let t = LinkDiagram::from_braid(&[1, 1, 1, 1], 2).unwrap();
        assert_eq!(t.linking_matrix()[0][1], 2);
        assert_eq!(t.reverse_component(1).unwrap().linking_matrix()[0][1], -2);
        assert!(t.is_proper());
        let k = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) Loop(7)").unwrap();
        assert_eq!(k.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn trefoil_parses() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe().abs(), 3);
        let e = parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap();
        assert_eq!(e.writhe(), 3);
    }

    #[test]
    fn loops_and_errors() {
        let d = parse_pd("Loop(1) Loop(2)").unwrap();
        assert_eq!((d.crossing_count(), d.component_count()), (0, 2));
        assert!(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,7)").is_err());
        assert!(parse_pd("X(1,2,3)").is_err());
        assert!(parse_pd("").is_err());
    }

    #[test]
    fn braid_closures() {
        let h = LinkDiagram::from_braid(&[1, 1], 2).unwrap();
        assert_eq!((h.component_count(), h.writhe()), (2, 2));
        let t = LinkDiagram::from_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(t.component_count(), 1);
        let u = LinkDiagram::from_braid(&[], 3).unwrap();
        assert_eq!(u.component_count(), 3);
        let f8 = LinkDiagram::from_braid(&[1, -2, 1, -2], 3).unwrap();
        assert_eq!((f8.component_count(), f8.writhe()), (1, 0));
    }

    #[test]
    fn mirror_and_reverse() {
        let t = LinkDiagram::from_braid(&[1, 1, 1, 1], 2).unwrap();
        assert_eq!(t.mirror().writhe(), -4);
        let s = t.reverse_component(0).unwrap();
        assert_eq!(s.writhe(), -4);
        assert_eq!(t.reverse().writhe(), 4);
        let again = parse_pd(&t.to_string()).unwrap();
        assert_eq!(again.writhe(), 4);
    }
}
