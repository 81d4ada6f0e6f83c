//! BLM/Ho Q polynomial by skein recursion on unoriented diagrams.
//!
//! `Q(unknot) = 1`, `Q(D ⊔ O) = μ Q(D)` with `μ = 2z^{-1} - 1`, and
//! `Q(D_+) + Q(D_-) = z (Q(D_0) + Q(D_∞))`. A diagram is driven to a
//! descending one by switching its bad crossings one at a time; every
//! smoothing has one crossing fewer.

use std::collections::HashMap;

use super::LinkDiagram;
use crate::error::{Error, Result};
use crate::evaluate::LaurentPolynomial;

/// Unoriented crossings: slots counterclockwise, slots 0 and 2 underneath.
type Crossings = Vec<[u32; 4]>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SkeinStats {
    pub calls: u64,
    pub memo_hits: u64,
}

struct Skein {
    memo: HashMap<Crossings, LaurentPolynomial>,
    stats: SkeinStats,
    mu_pows: Vec<LaurentPolynomial>,
}

fn mu() -> LaurentPolynomial {
    // doubled exponents of z
    LaurentPolynomial::from_terms([(-2, 2), (0, -1)])
}

fn times_z(p: &LaurentPolynomial) -> LaurentPolynomial {
    p.shift(2)
}

/// Relabels arcs by order of first appearance.
fn normalize(xs: &[[u32; 4]]) -> Crossings {
    let mut map: HashMap<u32, u32> = HashMap::new();
    xs.iter()
        .map(|c| {
            c.map(|l| {
                let next = map.len() as u32;
                *map.entry(l).or_insert(next)
            })
        })
        .collect()
}

/// Removes crossing `x`, joining the arcs in each slot pair. Returns the new
/// crossings and the number of closed loops created.
fn smooth(xs: &[[u32; 4]], x: usize, pairs: [(usize, usize); 2]) -> (Crossings, usize) {
    let c = xs[x];
    let mut root: HashMap<u32, u32> = c.iter().map(|&l| (l, l)).collect();
    fn find(r: &HashMap<u32, u32>, mut l: u32) -> u32 {
        while r[&l] != l {
            l = r[&l];
        }
        l
    }
    for (s, t) in pairs {
        let (a, b) = (find(&root, c[s]), find(&root, c[t]));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            root.insert(hi, lo);
        }
    }
    let rest: Crossings = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != x)
        .map(|(_, k)| k.map(|l| if root.contains_key(&l) { find(&root, l) } else { l }))
        .collect();
    let mut closed = 0;
    let mut classes: Vec<u32> = c.iter().map(|&l| find(&root, l)).collect();
    classes.sort_unstable();
    classes.dedup();
    for r in classes {
        if !rest.iter().flatten().any(|&l| l == r) {
            closed += 1;
        }
    }
    (rest, closed)
}

fn switch(xs: &mut [[u32; 4]], x: usize) {
    let [a, b, c, d] = xs[x];
    xs[x] = [b, c, d, a];
}

/// Occurrences `(crossing, slot)` of each arc label.
fn occurrences(xs: &[[u32; 4]]) -> HashMap<u32, Vec<(usize, usize)>> {
    let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (x, c) in xs.iter().enumerate() {
        for (k, &l) in c.iter().enumerate() {
            occ.entry(l).or_default().push((x, k));
        }
    }
    occ
}

/// Walks a component from arc `start` towards its occurrence `dir`,
/// returning passages `(crossing, over)` and the arcs visited.
fn walk(
    xs: &[[u32; 4]],
    occ: &HashMap<u32, Vec<(usize, usize)>>,
    start: u32,
    dir: usize,
) -> (Vec<(usize, bool)>, Vec<u32>) {
    let target = occ[&start][dir];
    let mut passages = Vec::new();
    let mut arcs = Vec::new();
    let (mut label, mut at) = (start, target);
    loop {
        arcs.push(label);
        let (x, k) = at;
        passages.push((x, k % 2 == 1));
        let out = (x, (k + 2) % 4);
        label = xs[x][out.1];
        let o = &occ[&label];
        at = if o[0] == out { o[1] } else { o[0] };
        if label == start && at == target {
            break;
        }
    }
    (passages, arcs)
}

/// Bad crossings in visiting order, and the component count, for a choice of
/// basepoints that greedily minimises the bad count component by component.
fn bad_crossings(xs: &[[u32; 4]]) -> (Vec<usize>, usize) {
    let occ = occurrences(xs);
    let mut labels: Vec<u32> = occ.keys().copied().collect();
    labels.sort_unstable();
    let mut done: HashMap<u32, ()> = HashMap::new();
    let mut seen = vec![false; xs.len()];
    let mut bad = Vec::new();
    let mut comps = 0;
    for &l in &labels {
        if done.contains_key(&l) {
            continue;
        }
        comps += 1;
        let (_, arcs) = walk(xs, &occ, l, 0);
        let mut best: Option<(usize, Vec<usize>)> = None;
        for &a in &arcs {
            for dir in 0..2 {
                let (pass, _) = walk(xs, &occ, a, dir);
                let mut s = seen.clone();
                let mut b = Vec::new();
                for (x, over) in pass {
                    if !s[x] {
                        s[x] = true;
                        if !over {
                            b.push(x);
                        }
                    }
                }
                if best.as_ref().is_none_or(|(n, _)| b.len() < *n) {
                    best = Some((b.len(), b));
                }
            }
        }
        for a in arcs {
            done.insert(a, ());
        }
        for &(x, _) in &walk(xs, &occ, l, 0).0 {
            seen[x] = true;
        }
        bad.extend(best.expect("component has arcs").1);
    }
    (bad, comps)
}

impl Skein {
    fn mu_pow(&mut self, k: usize) -> LaurentPolynomial {
        while self.mu_pows.len() <= k {
            let next = &self.mu_pows[self.mu_pows.len() - 1] * &mu();
            self.mu_pows.push(next);
        }
        self.mu_pows[k].clone()
    }

    /// Q of `xs` together with `loops` extra circles.
    fn q(&mut self, xs: &[[u32; 4]], loops: usize) -> LaurentPolynomial {
        if xs.is_empty() {
            return self.mu_pow(loops.saturating_sub(1));
        }
        let core = self.core(normalize(xs));
        &core * &self.mu_pow(loops)
    }

    fn core(&mut self, xs: Crossings) -> LaurentPolynomial {
        self.stats.calls += 1;
        if let Some(v) = self.memo.get(&xs) {
            self.stats.memo_hits += 1;
            return v.clone();
        }
        let value = self.compute(&xs);
        self.memo.insert(xs, value.clone());
        value
    }

    fn compute(&mut self, xs: &[[u32; 4]]) -> LaurentPolynomial {
        // Reidemeister I: an arc joining adjacent slots of one crossing.
        for (x, c) in xs.iter().enumerate() {
            for k in 0..4 {
                if c[k] == c[(k + 1) % 4] {
                    let (rest, closed) = smooth(xs, x, [(k, (k + 1) % 4), ((k + 2) % 4, (k + 3) % 4)]);
                    return self.q(&rest, closed - 1);
                }
            }
        }
        let (bad, comps) = bad_crossings(xs);
        let mut cur: Crossings = xs.to_vec();
        let mut total = LaurentPolynomial::zero();
        for (j, &x) in bad.iter().enumerate() {
            let (s0, l0) = smooth(&cur, x, [(0, 1), (2, 3)]);
            let (s1, l1) = smooth(&cur, x, [(0, 3), (1, 2)]);
            let a = self.q(&s0, l0);
            let b = self.q(&s1, l1);
            let term = times_z(&(&a + &b));
            total = if j % 2 == 0 { &total + &term } else { &total - &term };
            switch(&mut cur, x);
        }
        let unlink = self.mu_pow(comps - 1);
        if bad.len() % 2 == 0 {
            &total + &unlink
        } else {
            &total - &unlink
        }
    }
}

fn unoriented(d: &LinkDiagram) -> Crossings {
    d.crossings
        .iter()
        .map(|c| c.map(|l| l as u32))
        .collect()
}

/// Q polynomial in `z` (exponents doubled, as in [`LaurentPolynomial`]).
pub fn q_via_skein(d: &LinkDiagram, budget: usize) -> Result<LaurentPolynomial> {
    Ok(q_via_skein_with_stats(d, budget)?.0)
}

pub fn q_via_skein_with_stats(d: &LinkDiagram, budget: usize) -> Result<(LaurentPolynomial, SkeinStats)> {
    let n = d.crossing_count();
    if n > budget {
        return Err(Error::Budget {
            crossings: n,
            budget,
        });
    }
    if d.component_count() == 0 {
        return Err(Error::Diagram("empty diagram".into()));
    }
    let mut s = Skein {
        memo: HashMap::new(),
        stats: SkeinStats::default(),
        mu_pows: vec![LaurentPolynomial::one()],
    };
    let v = s.q(&unoriented(d), d.free_loops());
    debug_assert!(v.terms().all(|(e, _)| e % 2 == 0));
    Ok((v, s.stats))
}

#[cfg(test)]
mod tests {
    use super::super::{parse_pd, SKEIN_BUDGET};
    use super::*;
    use crate::evaluate::{q_at_golden_link, AlgebraicValue, ZSqrt5};
    use crate::exactlinalg::SymMatrix;

    fn q(d: &LinkDiagram) -> LaurentPolynomial {
        q_via_skein(d, SKEIN_BUDGET).unwrap()
    }

    #[test]
    fn unknot_unlink() {
        assert_eq!(q(&parse_pd("Loop(1)").unwrap()), LaurentPolynomial::one());
        assert_eq!(q(&parse_pd("X(1,1,2,2)").unwrap()), LaurentPolynomial::one());
        let two = parse_pd("Loop(1) Loop(2)").unwrap();
        assert_eq!(q(&two), mu());
        let g = q(&two).eval_golden().unwrap();
        assert_eq!(g, ZSqrt5::new(0, 1));
    }

    #[test]
    fn unknot_diagrams() {
        // two-crossing unknot and a Reidemeister II pair
        let r2 = LinkDiagram::from_braid(&[1, -1], 2).unwrap();
        assert_eq!(r2.component_count(), 2);
        assert_eq!(q(&r2), mu());
        let u = LinkDiagram::from_braid(&[1, -2], 3).unwrap();
        assert_eq!(q(&u), LaurentPolynomial::one());
    }

    #[test]
    fn trefoil_is_chiral_blind() {
        let t = LinkDiagram::from_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(q(&t), q(&t.mirror()));
        assert_eq!(q(&t).eval_golden().unwrap(), ZSqrt5::new(-1, 0));
        let f8 = LinkDiagram::from_braid(&[1, -2, 1, -2], 3).unwrap();
        let m = SymMatrix::from_rows(&[[2, -1], [-1, -2]]).unwrap();
        let expect = q_at_golden_link(&m).unwrap();
        assert_eq!(AlgebraicValue::Sqrt5(q(&f8).eval_golden().unwrap()), expect);
    }
}
