//! Kauffman bracket state sum and the Jones polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::LinkDiagram;
use crate::error::{Error, Result};
use crate::evaluate::LaurentPolynomial;

/// Whether the state sum fans out over rayon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threads {
    Single,
    Parallel,
}

fn find(p: &mut [usize], mut i: usize) -> usize {
    while p[i] != i {
        p[i] = p[p[i]];
        i = p[i];
    }
    i
}

/// Loop count of the state `bits` (bit set = B-smoothing).
fn state_loops(d: &LinkDiagram, bits: u64, parent: &mut [usize]) -> usize {
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i;
    }
    let mut classes = d.edges;
    for (x, c) in d.crossings.iter().enumerate() {
        let pairs = if bits >> x & 1 == 0 {
            [(c[0], c[1]), (c[2], c[3])]
        } else {
            [(c[0], c[3]), (c[1], c[2])]
        };
        for (a, b) in pairs {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra] = rb;
                classes -= 1;
            }
        }
    }
    classes + d.loops
}

/// Counts of states by (number of B-smoothings, loops).
fn state_counts(d: &LinkDiagram, threads: Threads) -> Vec<Vec<u64>> {
    let n = d.crossings.len();
    let width = d.edges + d.loops + 1;
    let prefix_bits = n.min(8);
    let suffix = n - prefix_bits;
    let run = |prefix: u64| {
        let mut counts = vec![vec![0u64; width]; n + 1];
        let mut parent = vec![0; d.edges];
        for low in 0..(1u64 << suffix) {
            let bits = prefix << suffix | low;
            let loops = state_loops(d, bits, &mut parent);
            counts[bits.count_ones() as usize][loops] += 1;
        }
        counts
    };
    let merge = |mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                *x += y;
            }
        }
        a
    };
    let zero = || vec![vec![0u64; width]; n + 1];
    let prefixes = 0..(1u64 << prefix_bits);
    match threads {
        Threads::Single => prefixes.map(run).fold(zero(), merge),
        Threads::Parallel => prefixes.into_par_iter().map(run).reduce(zero, merge),
    }
}

type APoly = BTreeMap<i64, BigInt>;

fn mul(a: &APoly, b: &APoly) -> APoly {
    let mut out = APoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn check_budget(d: &LinkDiagram, budget: usize) -> Result<()> {
    let n = d.crossings.len();
    if n > budget {
        return Err(Error::Budget {
            crossings: n,
            budget,
        });
    }
    if n == 0 && d.loops == 0 {
        return Err(Error::Diagram("empty diagram".into()));
    }
    Ok(())
}

/// `<D>` as a map from powers of `A` to coefficients, normalised so a single
/// circle has bracket 1.
pub fn kauffman_bracket(d: &LinkDiagram, budget: usize, threads: Threads) -> Result<BTreeMap<i64, BigInt>> {
    check_budget(d, budget)?;
    let n = d.crossings.len() as i64;
    let counts = state_counts(d, threads);
    // δ = -A^2 - A^{-2}
    let delta: APoly = [(2, BigInt::from(-1)), (-2, BigInt::from(-1))].into();
    let max_loops = counts.iter().map(|r| r.len()).max().unwrap_or(1);
    let mut powers = vec![APoly::from([(0, BigInt::from(1))])];
    for j in 1..max_loops {
        powers.push(mul(&powers[j - 1], &delta));
    }
    let mut out = APoly::new();
    for (b, row) in counts.iter().enumerate() {
        for (loops, &cnt) in row.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            let shift = n - 2 * b as i64;
            for (e, c) in &powers[loops - 1] {
                *out.entry(e + shift).or_insert_with(BigInt::zero) += c * BigInt::from(cnt);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Jones polynomial `V(t) = (-A^3)^{-w} <D>` at `A = t^{-1/4}`.
pub fn jones_via_bracket_with(d: &LinkDiagram, budget: usize, threads: Threads) -> Result<LaurentPolynomial> {
    let br = kauffman_bracket(d, budget, threads)?;
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let mut v = LaurentPolynomial::zero();
    for (e, c) in br {
        let m = e - 3 * w;
        if m % 2 != 0 {
            return Err(Error::Diagram("bracket exponents of mixed parity".into()));
        }
        v.add_term(-m / 2, c * sign);
    }
    Ok(v)
}

pub fn jones_via_bracket(d: &LinkDiagram, budget: usize) -> Result<LaurentPolynomial> {
    jones_via_bracket_with(d, budget, Threads::Parallel)
}

#[cfg(test)]
mod tests {
    use super::super::{parse_pd, BRACKET_BUDGET};
    use super::*;

    fn jones(d: &LinkDiagram) -> LaurentPolynomial {
        jones_via_bracket(d, BRACKET_BUDGET).unwrap()
    }

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(jones(&parse_pd("Loop(1)").unwrap()), LaurentPolynomial::one());
        let kink = parse_pd("X(1,1,2,2)").unwrap();
        assert_eq!(jones(&kink), LaurentPolynomial::one());
        let two = parse_pd("Loop(1) Loop(2)").unwrap();
        assert_eq!(two.to_string(), "Loop(0) Loop(0)");
        assert_eq!(jones(&two), LaurentPolynomial::from_terms([(1, -1), (-1, -1)]));
    }

    #[test]
    fn hopf_and_torus_links() {
        let h = LinkDiagram::from_braid(&[1, 1], 2).unwrap();
        assert_eq!(jones(&h).to_string(), "-t^(5/2) - t^(1/2)");
        assert_eq!(jones(&h.mirror()).to_string(), "-t^(-1/2) - t^(-5/2)");
        let t = LinkDiagram::from_braid(&[1, 1, 1, 1], 2).unwrap();
        assert_eq!(
            jones(&t).to_string(),
            "-t^(11/2) + t^(9/2) - t^(7/2) - t^(3/2)"
        );
        let s = t.reverse_component(0).unwrap();
        assert_eq!(
            jones(&s).to_string(),
            "-t^(-1/2) + t^(-3/2) - t^(-5/2) - t^(-9/2)"
        );
    }

    #[test]
    fn trefoil_and_threads() {
        let d = parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap();
        assert_eq!(jones(&d).to_string(), "-t^4 + t^3 + t");
        let f8 = LinkDiagram::from_braid(&[1, -2, 1, -2], 3).unwrap();
        let a = jones_via_bracket_with(&f8, 16, Threads::Single).unwrap();
        let b = jones_via_bracket_with(&f8, 16, Threads::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "t^2 - t + 1 - t^-1 + t^-2");
    }

    #[test]
    fn budget() {
        let d = LinkDiagram::from_braid(&[1; 5], 2).unwrap();
        assert!(matches!(jones_via_bracket(&d, 4), Err(Error::Budget { .. })));
    }
}
