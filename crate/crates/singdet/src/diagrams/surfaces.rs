//! Spanning surfaces from diagrams: Seifert matrices via Vogel's braiding
//! moves and Collins' braid formula, and checkerboard Goeritz matrices.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::LinkDiagram;
use crate::error::{Error, Result};
use crate::exactlinalg::{IntMatrix, SymMatrix};
use crate::numtheory::Sign;
use crate::seifert::{SeifertData, SpanningSurfaceData};

/// Half-edge: leave crossing `.0` through slot `.1`.
type HalfEdge = (usize, u8);

fn other_end(d: &LinkDiagram, h: HalfEdge) -> HalfEdge {
    let e = d.crossings[h.0][h.1 as usize];
    if d.tail(e) == h {
        d.head(e)
    } else {
        d.tail(e)
    }
}

/// Faces of the diagram as cycles of half-edges, each face on the left.
pub fn faces(d: &LinkDiagram) -> Vec<Vec<HalfEdge>> {
    let n = d.crossing_count();
    let mut seen = vec![[false; 4]; n];
    let mut out = Vec::new();
    for x in 0..n {
        for k in 0..4u8 {
            if seen[x][k as usize] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = (x, k);
            while !seen[h.0][h.1 as usize] {
                seen[h.0][h.1 as usize] = true;
                face.push(h);
                let (y, l) = other_end(d, h);
                h = (y, (l + 3) % 4);
            }
            out.push(face);
        }
    }
    out
}

/// Outgoing slot paired with incoming slot `k` by the oriented smoothing.
fn smooth_out(over_in: u8, k: u8) -> u8 {
    match (over_in, k) {
        (3, 0) => 1,
        (3, _) => 2,
        (_, 0) => 3,
        _ => 2,
    }
}

/// Seifert circles as cycles of arcs.
pub fn seifert_circles(d: &LinkDiagram) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d.edges];
    let mut out = Vec::new();
    for start in 0..d.edges {
        if seen[start] {
            continue;
        }
        let mut circle = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            circle.push(e);
            let (x, k) = d.head(e);
            e = d.crossings[x][smooth_out(d.over_in(x), k) as usize];
        }
        out.push(circle);
    }
    out
}

fn circle_index(d: &LinkDiagram, circles: &[Vec<usize>]) -> Vec<usize> {
    let mut of = vec![0; d.edges];
    for (i, c) in circles.iter().enumerate() {
        for &e in c {
            of[e] = i;
        }
    }
    of
}

/// Finds two arcs on one face, on different Seifert circles, both running
/// with (or both against) the face boundary. Returns them with that flag.
fn admissible_pair(d: &LinkDiagram) -> Option<(usize, usize, bool)> {
    let circles = seifert_circles(d);
    let of = circle_index(d, &circles);
    for face in faces(d) {
        let sides: Vec<(usize, bool)> = face
            .iter()
            .map(|&h| {
                let e = d.crossings[h.0][h.1 as usize];
                (e, d.tail(e) == h)
            })
            .collect();
        for (i, &(e1, a1)) in sides.iter().enumerate() {
            for &(e2, a2) in &sides[i + 1..] {
                if a1 == a2 && of[e1] != of[e2] {
                    return Some((e1, e2, a1));
                }
            }
        }
    }
    None
}

/// Pushes a finger of arc `e1` across the shared face and over `e2`.
fn reidemeister_two(d: &LinkDiagram, e1: usize, e2: usize, along: bool) -> Result<LinkDiagram> {
    let mut xs = d.crossings.clone();
    let mut over: Vec<u8> = (0..xs.len()).map(|x| d.over_in(x)).collect();
    let base = d.edges;
    let (e1b, e1c, e2b, e2c) = (base, base + 1, base + 2, base + 3);
    let (h1, h2) = (d.head(e1), d.head(e2));
    xs[h1.0][h1.1 as usize] = e1c;
    xs[h2.0][h2.1 as usize] = e2c;
    if along {
        xs.push([e2b, e1b, e2c, e1]);
        over.push(3);
        xs.push([e2, e1b, e2b, e1c]);
        over.push(1);
    } else {
        xs.push([e2b, e1, e2c, e1b]);
        over.push(1);
        xs.push([e2, e1c, e2b, e1b]);
        over.push(3);
    }
    LinkDiagram::from_parts(xs, over, d.loops)
}

/// Left and right Seifert circles at crossing `x`, seen with both strands
/// pointing the same way.
fn sides_at(d: &LinkDiagram, of: &[usize], x: usize) -> (usize, usize) {
    let c = d.crossings[x];
    if d.over_in(x) == 3 {
        (of[c[3]], of[c[0]])
    } else {
        (of[c[0]], of[c[1]])
    }
}

/// Braid word whose closure is isotopic to the diagram, with its strand
/// count. The diagram must be connected.
pub fn braid_word_from_diagram(d: &LinkDiagram) -> Result<(Vec<i64>, usize)> {
    if !d.is_connected() {
        return Err(Error::Diagram("diagram is split; band components together first".into()));
    }
    if d.crossing_count() == 0 {
        return Ok((Vec::new(), 1));
    }
    let mut cur = d.clone();
    let cap = 4 * (d.crossing_count() + 4).pow(2);
    let mut moves = 0;
    while let Some((e1, e2, along)) = admissible_pair(&cur) {
        cur = reidemeister_two(&cur, e1, e2, along)?;
        moves += 1;
        if moves > cap {
            return Err(Error::Diagram("braiding moves did not terminate".into()));
        }
    }
    read_braid(&cur)
}

fn read_braid(d: &LinkDiagram) -> Result<(Vec<i64>, usize)> {
    let circles = seifert_circles(d);
    let of = circle_index(d, &circles);
    let n = d.crossing_count();
    let s = circles.len();
    let mut right_of: Vec<Option<usize>> = vec![None; s];
    let mut has_left = vec![false; s];
    for x in 0..n {
        let (l, r) = sides_at(d, &of, x);
        if l == r || right_of[l].is_some_and(|q| q != r) {
            return Err(Error::Diagram("Seifert circles are not coherently nested".into()));
        }
        right_of[l] = Some(r);
        has_left[r] = true;
    }
    let start = (0..s)
        .find(|&c| !has_left[c])
        .ok_or_else(|| Error::Diagram("Seifert circles form a cycle".into()))?;
    let mut chain = vec![start];
    while let Some(r) = right_of[*chain.last().expect("nonempty")] {
        if chain.contains(&r) {
            return Err(Error::Diagram("Seifert circles form a cycle".into()));
        }
        chain.push(r);
    }
    if chain.len() != s {
        return Err(Error::Diagram("Seifert circles are not a chain".into()));
    }
    let mut pos = vec![0; s];
    for (i, &c) in chain.iter().enumerate() {
        pos[c] = i;
    }
    // crossings met along each circle, in orientation order
    let events: Vec<Vec<usize>> = chain
        .iter()
        .map(|&c| circles[c].iter().map(|&e| d.head(e).0).collect())
        .collect();
    let mut orders: Vec<Vec<usize>> = vec![events[0].clone()];
    for i in 1..s {
        let prev = &orders[i - 1];
        let first = *prev
            .iter()
            .find(|&&x| {
                let (l, r) = sides_at(d, &of, x);
                pos[l] == i - 1 && pos[r] == i
            })
            .ok_or_else(|| Error::Diagram("adjacent circles share no crossing".into()))?;
        let ev = &events[i];
        let at = ev.iter().position(|&x| x == first).expect("crossing on both circles");
        orders.push(ev[at..].iter().chain(&ev[..at]).copied().collect());
    }
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for o in &orders {
        for w in o.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut word = Vec::with_capacity(n);
    while let Some(Reverse(x)) = heap.pop() {
        let (l, _) = sides_at(d, &of, x);
        let g = pos[l] as i64 + 1;
        word.push(if d.sign(x) == Sign::Plus { g } else { -g });
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if word.len() != n {
        return Err(Error::Diagram("inconsistent crossing order".into()));
    }
    Ok((word, s))
}

/// Seifert matrix of a braid closure: one generator per pair of
/// consecutive crossings in each column.
pub fn seifert_matrix_from_braid(word: &[i64]) -> Result<SeifertData> {
    if word.contains(&0) {
        return Err(Error::Parse("braid generator 0".into()));
    }
    let width = word.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(0);
    // (start position, end position, start positive, end positive) per column
    let mut cols: Vec<Vec<(usize, usize, bool, bool)>> = vec![Vec::new(); width];
    for (j, col) in cols.iter_mut().enumerate() {
        let hits: Vec<(usize, bool)> = word
            .iter()
            .enumerate()
            .filter(|(_, g)| g.unsigned_abs() as usize == j + 1)
            .map(|(p, &g)| (p, g > 0))
            .collect();
        if hits.is_empty() {
            return Err(Error::Diagram(format!("braid closure is split at column {}", j + 1)));
        }
        *col = hits.windows(2).map(|w| (w[0].0, w[1].0, w[0].1, w[1].1)).collect();
    }
    let mut index = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        for m in 0..col.len() {
            index.push((j, m));
        }
    }
    let at = |j: usize, m: usize| index.iter().position(|&q| q == (j, m)).expect("generator");
    let size = index.len();
    let mut a = vec![vec![0i64; size]; size];
    for (j, col) in cols.iter().enumerate() {
        for (m, g) in col.iter().enumerate() {
            if g.2 == g.3 {
                a[at(j, m)][at(j, m)] = if g.2 { -1 } else { 1 };
            }
            if m + 1 < col.len() {
                if g.3 {
                    a[at(j, m + 1)][at(j, m)] = 1;
                } else {
                    a[at(j, m)][at(j, m + 1)] = -1;
                }
            }
        }
        if j + 1 < cols.len() {
            for (m, g) in col.iter().enumerate() {
                for (l, h) in cols[j + 1].iter().enumerate() {
                    if h.0 < g.0 && g.0 < h.1 && h.1 < g.1 {
                        a[at(j + 1, l)][at(j, m)] = 1;
                    } else if g.0 < h.0 && h.0 < g.1 && g.1 < h.1 {
                        a[at(j + 1, l)][at(j, m)] = -1;
                    }
                }
            }
        }
    }
    SeifertData::new(IntMatrix::from_rows(&a))
}

/// Seifert matrix from a connected diagram.
pub fn seifert_matrix_from_diagram(d: &LinkDiagram) -> Result<SeifertData> {
    let (word, _) = braid_word_from_diagram(d)?;
    seifert_matrix_from_braid(&word)
}

/// Gordon–Litherland matrix of a checkerboard surface, with
/// `μ = c - #components(surface) + 1`.
///
/// Quadrant `j` of a crossing sits between slots `j` and `j + 1`. A crossing
/// whose shaded quadrants are 0 and 2 has incidence `η = +1`, otherwise -1;
/// it adds `-η` between the two shaded regions it joins and `η` to each of
/// their diagonal entries. The first shaded region is dropped.
pub fn goeritz_from_diagram(d: &LinkDiagram) -> Result<SpanningSurfaceData> {
    let c = d.component_count();
    let n = d.crossing_count();
    if n == 0 {
        // disjoint disks
        return SpanningSurfaceData::new(SymMatrix::zeros(0), 1);
    }
    if !d.is_connected() {
        return Err(Error::Diagram("diagram is split; band components together first".into()));
    }
    let fs = faces(d);
    if fs.len() != n + 2 {
        return Err(Error::Diagram(format!(
            "{} faces for {n} crossings; PD code is not planar",
            fs.len()
        )));
    }
    let mut face_of: BTreeMap<HalfEdge, usize> = BTreeMap::new();
    let mut quadrant = vec![[0usize; 4]; n];
    for (f, face) in fs.iter().enumerate() {
        for &h in face {
            face_of.insert(h, f);
            let (y, l) = other_end(d, h);
            quadrant[y][((l + 3) % 4) as usize] = f;
        }
    }
    let mut color: Vec<Option<u8>> = vec![None; fs.len()];
    color[0] = Some(0);
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        let cf = color[f].expect("colored");
        for &h in &fs[f] {
            let g = face_of[&other_end(d, h)];
            match color[g] {
                None => {
                    color[g] = Some(1 - cf);
                    stack.push(g);
                }
                Some(cg) if cg == cf => {
                    return Err(Error::Diagram("faces are not two-colourable".into()))
                }
                _ => {}
            }
        }
    }
    let shaded: Vec<usize> = (0..fs.len()).filter(|&f| color[f] == Some(1)).collect();
    let idx: BTreeMap<usize, usize> = shaded.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let r = shaded.len();
    let mut g = vec![vec![0i64; r]; r];
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for q in &quadrant {
        let (eta, fa, fb) = if color[q[0]] == Some(1) {
            (1, q[0], q[2])
        } else {
            (-1, q[1], q[3])
        };
        let (i, j) = (idx[&fa], idx[&fb]);
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
            g[i][i] += eta;
            g[j][j] += eta;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
    }
    let comps = (0..r).filter(|&i| find(&mut parent, i) == i).count();
    let reduced: Vec<Vec<i64>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
    let m = SymMatrix::from_rows(&reduced)?;
    SpanningSurfaceData::new(m, c + 1 - comps)
}

#[cfg(test)]
mod tests {
    use super::super::parse_pd;
    use super::*;

    #[test]
    fn face_count() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(faces(&d).len(), 5);
        assert_eq!(seifert_circles(&d).len(), 2);
    }

    #[test]
    fn braid_round_trip() {
        let d = LinkDiagram::from_braid(&[1, -2, 1, -2], 3).unwrap();
        let (w, s) = braid_word_from_diagram(&d).unwrap();
        assert_eq!(s, 3);
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn hopf_and_trefoil_matrices() {
        let h = LinkDiagram::from_braid(&[1, 1], 2).unwrap();
        let a = seifert_matrix_from_diagram(&h).unwrap();
        assert_eq!(a.seifert_matrix(), &IntMatrix::from_rows(&[[-1]]));
        let t = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let a = seifert_matrix_from_diagram(&t).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.determinant(), 3.into());
    }
}
