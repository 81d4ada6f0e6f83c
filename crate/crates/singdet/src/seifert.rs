//! Seifert data, the singular determinant `δ_p` (symmetrized Seifert and
//! Gordon–Litherland presentations), and classical link invariants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{
    inertia, mod_p_block_reduce, mod_p_block_reduce_with, parse_matrix, rank_mod_p, IntMatrix,
    PivotRule, SymMatrix,
};
use crate::numtheory::{check_odd_prime, legendre_unchecked, Sign};

/// An unsymmetrized Seifert matrix `A` with its symmetrization `M = A + A^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    a: IntMatrix,
    m: SymMatrix,
}

impl SeifertData {
    pub fn new(a: IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let m = SymMatrix::new(a.add(&a.transpose()))?;
        Ok(SeifertData { a, m })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// Reads `A` in the matrix text format; `A` itself need not be symmetric.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_matrix(text)?)
    }

    pub fn seifert_matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn symmetrized(&self) -> &SymMatrix {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    /// Number of link components.
    pub fn mu(&self) -> usize {
        mu_of(&self.m).expect("symmetrized Seifert matrices have even diagonal")
    }

    pub fn signature(&self) -> i64 {
        inertia(&self.m).signature()
    }

    /// `|det M|`.
    pub fn determinant(&self) -> BigInt {
        self.m.det().abs()
    }
}

/// A Gordon–Litherland matrix with the caller-supplied `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningSurfaceData {
    pub r: SymMatrix,
    pub mu: usize,
}

impl SpanningSurfaceData {
    pub fn new(r: SymMatrix, mu: usize) -> Result<Self> {
        if mu == 0 {
            return Err(Error::Parity("mu must be at least 1".into()));
        }
        Ok(SpanningSurfaceData { r, mu })
    }
}

/// Corank of `M` over F_2, plus one.
pub fn mu_of(m: &SymMatrix) -> Result<usize> {
    if let Some(i) = m.first_odd_diagonal() {
        return Err(Error::OddDiagonal(i));
    }
    Ok(m.size() - rank_mod_p(m.matrix(), 2) + 1)
}

/// Ingredients and value of a singular determinant computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularDeterminant {
    pub p: u64,
    pub n: usize,
    pub mu: usize,
    pub d_p: usize,
    /// Determinant of the nondegenerate block (1 for the empty block).
    pub det_block: BigInt,
    /// Exponent of -1 in front of `det_block`, reduced mod 2.
    pub sign_exponent: u8,
    pub value: Sign,
}

fn singular_determinant_core(
    m: &SymMatrix,
    p: u64,
    mu: usize,
    oddity: u8,
    rule: PivotRule,
) -> Result<SingularDeterminant> {
    check_odd_prime(p)?;
    let n = m.size();
    let top = n + mu - 1;
    let o = oddity as usize % 8;
    if (top + 8 - o) % 2 != 0 {
        return Err(Error::Parity(format!(
            "n + mu - 1 - o = {n} + {mu} - 1 - {o} is odd"
        )));
    }
    let red = mod_p_block_reduce_with(m, p, rule)?;
    let det_block = red.block.det();
    let half = ((top + 8 - o) / 2) % 2;
    let e = ((red.d_p + half) % 2) as u8;
    let signed = if e == 1 { -&det_block } else { det_block.clone() };
    let value = match legendre_unchecked(&signed, p) {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        _ => unreachable!("block determinant is a unit mod p"),
    };
    Ok(SingularDeterminant {
        p,
        n,
        mu,
        d_p: red.d_p,
        det_block,
        sign_exponent: e,
        value,
    })
}

/// Full singular determinant data of an even-diagonal symmetric matrix.
pub fn singular_determinant(m: &SymMatrix, p: u64) -> Result<SingularDeterminant> {
    singular_determinant_with(m, p, PivotRule::LowestIndex)
}

/// As [`singular_determinant`] with an explicit pivot rule.
pub fn singular_determinant_with(
    m: &SymMatrix,
    p: u64,
    rule: PivotRule,
) -> Result<SingularDeterminant> {
    let mu = mu_of(m)?;
    singular_determinant_core(m, p, mu, 0, rule)
}

/// `δ_p(M)`.
pub fn delta_p(m: &SymMatrix, p: u64) -> Result<Sign> {
    Ok(singular_determinant(m, p)?.value)
}

/// Corank of `M` over F_p.
pub fn d_p(m: &SymMatrix, p: u64) -> Result<usize> {
    Ok(mod_p_block_reduce(m, p)?.d_p)
}

/// Legendre-symbol shortcut, valid only when p does not divide `det M`.
pub fn delta_p_closed_form(m: &SymMatrix, p: u64) -> Result<Option<Sign>> {
    check_odd_prime(p)?;
    let mu = mu_of(m)?;
    let det = m.det();
    let sym = legendre_unchecked(&det, p);
    if sym == 0 {
        return Ok(None);
    }
    let base = Sign::from_i64(sym as i64).expect("unit symbol");
    if p % 4 == 1 {
        return Ok(Some(base));
    }
    // d_p = 0 here
    let e = (m.size() + mu - 1) / 2;
    Ok(Some(base * Sign::parity(e as i64)))
}

/// `v^T R v mod 8` for a characteristic vector `v`, i.e. `Rv ≡ diag(R)`
/// mod 2. Such a `v` always exists. When `R` is singular mod 2 it is only
/// determined up to the mod-2 kernel; free coordinates are set to zero, so
/// even-diagonal matrices get `v = 0`.
pub fn oddity(r: &SymMatrix) -> u8 {
    let v = characteristic_vector(r);
    let n = r.size();
    let mut acc = BigInt::zero();
    for i in (0..n).filter(|&i| v[i]) {
        for j in (0..n).filter(|&j| v[j]) {
            acc += &r[(i, j)];
        }
    }
    acc.mod_floor(&BigInt::from(8)).to_u8().expect("residue mod 8")
}

/// Solves `Rv = diag(R)` over F_2.
pub fn characteristic_vector(r: &SymMatrix) -> Vec<bool> {
    let n = r.size();
    // augmented rows [R | diag] over F_2
    let mut rows: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            let mut row: Vec<bool> = (0..n).map(|j| r[(i, j)].is_odd()).collect();
            row.push(r[(i, i)].is_odd());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        let Some(k) = (top..n).find(|&k| rows[k][col]) else { continue };
        rows.swap(top, k);
        for k in 0..n {
            if k != top && rows[k][col] {
                let src = rows[top].clone();
                for (x, y) in rows[k].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    debug_assert!(rows[top..].iter().all(|row| !row[n]), "diagonal lies in the image mod 2");
    let mut v = vec![false; n];
    for (k, &col) in pivots.iter().enumerate() {
        v[col] = rows[k][n];
    }
    v
}

/// Singular determinant of a Gordon–Litherland matrix with oddity correction.
pub fn delta_p_gl(s: &SpanningSurfaceData, p: u64) -> Result<Sign> {
    Ok(singular_determinant_gl(s, p)?.value)
}

pub fn singular_determinant_gl(s: &SpanningSurfaceData, p: u64) -> Result<SingularDeterminant> {
    singular_determinant_core(&s.r, p, s.mu, oddity(&s.r), PivotRule::LowestIndex)
}

/// Classical invariants of a link from Seifert data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkInvariantBundle {
    /// Number of components.
    pub c: usize,
    pub det: BigInt,
    pub sigma: i64,
    pub d_p: BTreeMap<u64, usize>,
    pub delta_p: BTreeMap<u64, Sign>,
    /// `(-1)^Arf`, knots only.
    pub arf_sign: Option<Sign>,
}

/// `(-1)^Arf` of a knot from its determinant: +1 iff `det ≡ ±1 mod 8`.
pub fn arf_sign_from_det(det: &BigInt) -> Result<Sign> {
    match det.mod_floor(&BigInt::from(8)).to_u8() {
        Some(1 | 7) => Ok(Sign::Plus),
        Some(3 | 5) => Ok(Sign::Minus),
        _ => Err(Error::EvenDeterminant),
    }
}

pub fn classical_invariants(a: &SeifertData, primes: &[u64]) -> Result<LinkInvariantBundle> {
    form_invariants(a.symmetrized(), primes)
}

/// As [`classical_invariants`], from the symmetrized matrix alone.
pub fn form_invariants(m: &SymMatrix, primes: &[u64]) -> Result<LinkInvariantBundle> {
    let c = mu_of(m)?;
    let det = m.det().abs();
    let sigma = inertia(m).signature();
    let mut d = BTreeMap::new();
    let mut delta = BTreeMap::new();
    for &p in primes {
        let sd = singular_determinant(m, p)?;
        d.insert(p, sd.d_p);
        delta.insert(p, sd.value);
    }
    let arf_sign = if c == 1 {
        Some(arf_sign_from_det(&det)?)
    } else {
        None
    };
    Ok(LinkInvariantBundle {
        c,
        det,
        sigma,
        d_p: d,
        delta_p: delta,
        arf_sign,
    })
}

/// The hyperbolic stabilization `M ↦ M ⊕ [[0,1],[1,0]]`.
pub fn stabilize(m: &SymMatrix) -> SymMatrix {
    m.block_sum(&SymMatrix::from_rows(&[[0, 1], [1, 0]]).expect("hyperbolic block"))
}

/// Shape of the crossing-change pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChangeCase {
    /// `P ⊕ (a ∓ 1)`
    Scalar,
    /// `P ⊕ [[0,1],[1,a ∓ 1]]`
    Hyperbolic,
}

/// Matrices `(M_+, M_-)` identical except for the last diagonal entry, which
/// is larger by two in `M_-`. When `a` is even it is shifted by `p` so that
/// the diagonal stays even without changing the residue mod p.
pub fn crossing_change_pair(
    pm: &SymMatrix,
    a: &BigInt,
    case: ChangeCase,
    p: u64,
) -> Result<(SymMatrix, SymMatrix)> {
    check_odd_prime(p)?;
    if let Some(i) = pm.first_odd_diagonal() {
        return Err(Error::OddDiagonal(i));
    }
    let a = if a.is_even() { a + BigInt::from(p) } else { a.clone() };
    let tail = |last: BigInt| -> SymMatrix {
        let block = match case {
            ChangeCase::Scalar => IntMatrix::from_big_rows(vec![vec![last]]),
            ChangeCase::Hyperbolic => IntMatrix::from_big_rows(vec![
                vec![BigInt::zero(), BigInt::from(1)],
                vec![BigInt::from(1), last],
            ]),
        }
        .expect("rectangular block");
        SymMatrix::new(pm.matrix().block_sum(&block)).expect("symmetric block sum")
    };
    Ok((tail(&a - 1), tail(&a + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym<R: AsRef<[i64]>>(rows: &[R]) -> SymMatrix {
        SymMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_of(&SymMatrix::zeros(3)).unwrap(), 4);
        assert_eq!(mu_of(&sym(&[[-2, 1], [1, -2]])).unwrap(), 1);
        assert_eq!(mu_of(&sym(&[[-2]])).unwrap(), 2);
        assert_eq!(mu_of(&sym(&[[2]])).unwrap(), 2);
        assert!(mu_of(&sym(&[[1]])).is_err());
    }

    #[test]
    fn delta_examples() {
        let d = singular_determinant(&sym(&[[0, 7], [7, 0]]), 7).unwrap();
        assert_eq!(d.d_p, 2);
        assert_eq!(d.det_block, BigInt::from(1));
        let m = sym(&[[0, 17, 0, 0], [17, 0, 0, 0], [0, 0, 6, 3], [0, 0, 3, 10]]);
        let d = singular_determinant(&m, 17).unwrap();
        assert_eq!((d.d_p, d.value), (3, Sign::Minus));
        let k = sym(&[[22, 17], [17, 22]]);
        assert_eq!(delta_p(&k, 5).unwrap(), Sign::Minus);
        assert_eq!(delta_p(&k, 13).unwrap(), Sign::Plus);
        for p in [3, 5, 7, 11] {
            assert_eq!(delta_p(&SymMatrix::zeros(2), p).unwrap(), Sign::Plus);
        }
        assert!(delta_p(&k, 9).is_err());
        assert!(delta_p(&sym(&[[1]]), 3).is_err());
    }

    #[test]
    fn nine_46_matches_jones_sign() {
        // V(ζ6) = 3 = ε (i√3)^2 for 9_46, so δ_3 = ε = -1 with d_3 = 2.
        let a = SeifertData::from_rows(&[[1, 0, 0, 0], [0, -1, 0, 0], [1, 0, 1, 1], [-1, -1, 0, 0]])
            .unwrap();
        let d = singular_determinant(a.symmetrized(), 3).unwrap();
        assert_eq!((d.d_p, d.value), (2, Sign::Minus));
        let h = singular_determinant(&sym(&[[0, 3], [3, 0]]), 3).unwrap();
        assert_eq!((h.d_p, h.value), (2, Sign::Minus));
    }

    #[test]
    fn oddity_examples() {
        assert_eq!(oddity(&sym(&[[2, 1], [1, 4]])), 0);
        assert_eq!(oddity(&sym(&[[1]])), 1);
        assert_eq!(oddity(&sym(&[[1, 0], [0, -1]])), 0);
        // v = (1, 0); (1, 1) is not characteristic
        assert_eq!(oddity(&sym(&[[3, 1], [1, 3]])), 3);
        // congruent to the identity of rank 2
        assert_eq!(oddity(&sym(&[[1, 1], [1, 2]])), 2);
        assert_eq!(oddity(&sym(&[[-1]])), 7);
    }

    #[test]
    fn gl_matches_and_is_stable() {
        let m = sym(&[[22, 17], [17, 22]]);
        let s = SpanningSurfaceData::new(m.clone(), 1).unwrap();
        for p in [3, 5, 13] {
            let base = delta_p(&m, p).unwrap();
            assert_eq!(delta_p_gl(&s, p).unwrap(), base);
            for extra in [1, -1, 0] {
                let r = m.block_sum(&sym(&[[extra]]));
                let mu = if extra == 0 { 2 } else { 1 };
                let s2 = SpanningSurfaceData::new(r, mu).unwrap();
                assert_eq!(delta_p_gl(&s2, p).unwrap(), base, "p={p} extra={extra}");
            }
        }
    }

    #[test]
    fn classical_examples() {
        for (a, sigma) in [(-1i64, 1i64), (1, -1)] {
            let h = SeifertData::from_rows(&[[a]]).unwrap();
            let b = classical_invariants(&h, &[3]).unwrap();
            assert_eq!((b.c, b.det.clone(), b.sigma), (2, BigInt::from(2), -sigma));
            assert!(b.arf_sign.is_none());
        }
        let t = SeifertData::from_rows(&[[-1, 1], [0, -1]]).unwrap();
        let b = classical_invariants(&t, &[3]).unwrap();
        assert_eq!(b.det, BigInt::from(3));
        assert_eq!(b.arf_sign, Some(Sign::Minus));
        assert_eq!(b.d_p[&3], 1);
        let p = SeifertData::from_rows(&[[11, 9], [8, 11]]).unwrap();
        assert_eq!(p.determinant(), BigInt::from(195));
    }

    #[test]
    fn crossing_pair_shapes() {
        let pm = sym(&[[2, 1], [1, 2]]);
        let (mp, mm) = crossing_change_pair(&pm, &BigInt::from(1), ChangeCase::Scalar, 5).unwrap();
        assert_eq!(mp.size(), 3);
        assert_eq!(&mm[(2, 2)] - &mp[(2, 2)], BigInt::from(2));
        assert_eq!(
            delta_p(&mp, 5).unwrap(),
            delta_p(&mm, 5).unwrap() * Sign::from_i64(legendre_unchecked(&BigInt::from(-2), 5) as i64).unwrap()
        );
        let (hp, hm) =
            crossing_change_pair(&pm, &BigInt::from(4), ChangeCase::Hyperbolic, 5).unwrap();
        assert!(hp.has_even_diagonal() && hm.has_even_diagonal());
        assert_eq!(d_p(&hp, 5).unwrap(), d_p(&hm, 5).unwrap());
    }

    #[test]
    fn stabilization_keeps_delta() {
        let m = sym(&[[22, 17], [17, 22]]);
        for p in [3, 5, 7, 13] {
            assert_eq!(delta_p(&stabilize(&m), p).unwrap(), delta_p(&m, p).unwrap());
        }
    }
}
