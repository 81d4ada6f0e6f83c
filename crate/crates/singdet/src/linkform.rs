//! Linking forms presented by nonsingular symmetric integer matrices and
//! their Wall decomposition into `A_{p^k}` / `B_{p^k}` summands.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{inverse_ord_normalize, smith_cokernel, IntMatrix, RatMatrix, SymMatrix};
use crate::numtheory::{
    check_odd_prime, legendre_unchecked, ord_p_int, ord_p_unchecked, smallest_nonresidue,
    split_prime_power, Sign, Valuation,
};

/// The form `(x, y) -> x^T M^{-1} y mod 1` on `coker M`.
#[derive(Debug, Clone)]
pub struct LinkingForm {
    matrix: SymMatrix,
    inverse: RatMatrix,
    det: BigInt,
}

impl LinkingForm {
    pub fn new(matrix: SymMatrix) -> Result<Self> {
        let det = matrix.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inverse = matrix
            .to_rational()
            .inverse()
            .ok_or(Error::Singular)?;
        Ok(LinkingForm {
            matrix,
            inverse,
            det,
        })
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &RatMatrix {
        &self.inverse
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// Order of `coker M`.
    pub fn order(&self) -> BigInt {
        self.det.abs()
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

/// `x^T M^{-1} y` reduced into `[0, 1)`.
pub fn eval_form(form: &LinkingForm, x: &[BigInt], y: &[BigInt]) -> Result<BigRational> {
    let n = form.size();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let inv = form.inverse();
    let mut acc = BigRational::zero();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        let mut row = BigRational::zero();
        for j in 0..n {
            if !y[j].is_zero() {
                row += &inv[(i, j)] * BigRational::from_integer(y[j].clone());
            }
        }
        acc += row * BigRational::from_integer(x[i].clone());
    }
    Ok(frac(&acc))
}

/// Isometry class of a cyclic summand: `(1, 1) -> a/p^k` with `a` a residue (A)
/// or a non-residue (B) mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SummandType {
    A,
    B,
}

impl fmt::Display for SummandType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandType::A => "A",
            SummandType::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WallSummand {
    pub p: u64,
    pub k: u32,
    pub kind: SummandType,
}

impl WallSummand {
    /// Numerator of the self-pairing of the generator: 1 for A, the smallest
    /// non-residue for B.
    pub fn witness(&self) -> u64 {
        match self.kind {
            SummandType::A => 1,
            SummandType::B => smallest_nonresidue(self.p).unwrap_or(0),
        }
    }
}

/// Orthogonal decomposition of an odd-order linking form, kept in canonical
/// form: per `(p, k)` at most one B summand, sorted by `(p, k, type)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WallDecomposition {
    summands: Vec<WallSummand>,
}

impl WallDecomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Canonicalizes with `A ⊕ A ≅ B ⊕ B`: an even number of B's becomes all A.
    pub fn from_summands(items: impl IntoIterator<Item = WallSummand>) -> Self {
        let mut counts: BTreeMap<(u64, u32), (usize, usize)> = BTreeMap::new();
        for s in items {
            let e = counts.entry((s.p, s.k)).or_default();
            match s.kind {
                SummandType::A => e.0 += 1,
                SummandType::B => e.1 += 1,
            }
        }
        let mut summands = Vec::new();
        for ((p, k), (a, b)) in counts {
            let total = a + b;
            let nb = b % 2;
            for _ in 0..total - nb {
                summands.push(WallSummand {
                    p,
                    k,
                    kind: SummandType::A,
                });
            }
            if nb == 1 {
                summands.push(WallSummand {
                    p,
                    k,
                    kind: SummandType::B,
                });
            }
        }
        WallDecomposition { summands }
    }

    pub fn summands(&self) -> &[WallSummand] {
        &self.summands
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Orthogonal sum.
    pub fn union(&self, other: &WallDecomposition) -> WallDecomposition {
        Self::from_summands(self.summands.iter().chain(&other.summands).copied())
    }

    /// Group order `Π p^k`.
    pub fn order(&self) -> BigInt {
        self.summands
            .iter()
            .map(|s| BigInt::from(s.p).pow(s.k))
            .product()
    }

    /// Exponents `k` of the p-primary summands, ascending.
    pub fn exponents(&self, p: u64) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .summands
            .iter()
            .filter(|s| s.p == p)
            .map(|s| s.k)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.summands.iter().map(|s| s.p).collect();
        v.dedup();
        v
    }

    /// Number of A-type `(p, k)` summands mod 2.
    pub fn r_pk(&self, p: u64, k: u32) -> u8 {
        let n = self
            .summands
            .iter()
            .filter(|s| s.p == p && s.k == k && s.kind == SummandType::A)
            .count();
        (n % 2) as u8
    }

    /// `Σ_k r_{p,k}` mod 2.
    pub fn r_sum(&self, p: u64) -> u8 {
        let n = self
            .summands
            .iter()
            .filter(|s| s.p == p && s.kind == SummandType::A)
            .count();
        (n % 2) as u8
    }

    /// Number of B-type p-primary summands mod 2, i.e. the exponent of
    /// `Π_i (p^{k_i} λ(f_i, f_i) | p)`. This is the sign the closed forms for
    /// the singular determinant actually use; it differs from [`Self::r_sum`]
    /// by the number of p-primary summands.
    pub fn b_parity(&self, p: u64) -> u8 {
        let n = self
            .summands
            .iter()
            .filter(|s| s.p == p && s.kind == SummandType::B)
            .count();
        (n % 2) as u8
    }
}

impl fmt::Display for WallDecomposition {
    /// One line `p k A|B` per summand.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.summands {
            writeln!(f, "{} {} {}", s.p, s.k, s.kind)?;
        }
        Ok(())
    }
}

impl FromStr for WallDecomposition {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let mut items = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [p, k, t] = parts.as_slice() else {
                return Err(Error::Parse(format!("bad summand line {line:?}")));
            };
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in {line:?}")))?;
            check_odd_prime(p)?;
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {line:?}")))?;
            if k == 0 {
                return Err(Error::Parse(format!("zero exponent in {line:?}")));
            }
            let kind = match *t {
                "A" => SummandType::A,
                "B" => SummandType::B,
                _ => return Err(Error::Parse(format!("bad type in {line:?}"))),
            };
            items.push(WallSummand { p, k, kind });
        }
        Ok(Self::from_summands(items))
    }
}

/// Number of A summands per `(p, k)` mod 2 together with the group structure.
pub fn r_pk(w: &WallDecomposition, p: u64, k: u32) -> u8 {
    w.r_pk(p, k)
}

/// Isometry test: canonical forms coincide.
pub fn isometric(w1: &WallDecomposition, w2: &WallDecomposition) -> bool {
    w1 == w2
}

/// p-primary part of the Wall decomposition of `λ_M`.
pub fn wall_decompose_at(form: &LinkingForm, p: u64) -> Result<Vec<WallSummand>> {
    check_odd_prime(p)?;
    if form.det().is_even() {
        return Err(Error::EvenDeterminant);
    }
    if !(form.det() % BigInt::from(p)).is_zero() {
        return Ok(Vec::new());
    }
    let core = p_local_core(form.matrix(), p);
    if core.size() == 0 {
        return Ok(Vec::new());
    }
    classify_at(&core, p)
}

/// Integer matrix of size `d_p` whose linking form has the same p-primary
/// part as `M`, up to isometry.
///
/// Works over the integers localized at p: p-unit pivots are split off
/// (they carry no p-torsion), and the remaining block is rescaled by the
/// square of a p-unit to clear denominators.
pub fn p_local_core(m: &SymMatrix, p: u64) -> SymMatrix {
    let pb = BigInt::from(p);
    let is_unit = |x: &BigRational| !x.is_zero() && !(x.numer() % &pb).is_zero();
    let mut a = m.to_rational();
    let mut live: Vec<usize> = (0..m.size()).collect();
    loop {
        let piv = match live.iter().position(|&i| is_unit(&a[(i, i)])) {
            Some(k) => k,
            None => {
                let hit = live.iter().enumerate().find_map(|(k, &i)| {
                    live.iter()
                        .find(|&&j| j != i && is_unit(&a[(i, j)]))
                        .map(|&j| (k, j))
                });
                let Some((k, j)) = hit else { break };
                // e_i += e_j makes the diagonal 2 a_ij mod p, a unit as p is odd
                let i = live[k];
                for &l in &live {
                    let v = a[(j, l)].clone();
                    a[(i, l)] += v;
                }
                for &l in &live {
                    let v = a[(l, j)].clone();
                    a[(l, i)] += v;
                }
                k
            }
        };
        let i = live.remove(piv);
        let pivot = a[(i, i)].clone();
        for &k in &live {
            let f = &a[(k, i)] / &pivot;
            if f.is_zero() {
                continue;
            }
            for &l in &live {
                let v = &f * &a[(i, l)];
                a[(k, l)] -= v;
            }
        }
    }
    let scale = live
        .iter()
        .flat_map(|&i| live.iter().map(move |&j| (i, j)))
        .fold(BigInt::one(), |acc, (i, j)| acc.lcm(a[(i, j)].denom()));
    let sq = BigRational::from_integer(&scale * &scale);
    let rows: Vec<Vec<BigInt>> = live
        .iter()
        .map(|&i| live.iter().map(|&j| (&a[(i, j)] * &sq).to_integer()).collect())
        .collect();
    SymMatrix::new(IntMatrix::from_big_rows(rows).expect("square block")).expect("symmetric elimination")
}

/// Wall summands at p of the form presented by a nonsingular `M`.
fn classify_at(m: &SymMatrix, p: u64) -> Result<Vec<WallSummand>> {
    let t = inverse_ord_normalize(m, p)?;
    let conj = m.congruence(&t);
    let inv = conj
        .to_rational()
        .inverse()
        .ok_or(Error::Singular)?;
    let n = conj.size();
    let mut out = Vec::new();
    for i in 0..n {
        let Valuation::Finite(v) = ord_p_unchecked(&inv[(i, i)], p) else {
            continue;
        };
        if v >= 0 {
            continue;
        }
        let k = (-v) as u32;
        // u_i = p^{-k_i} Π_j t_ij with t_ij the reduced denominators of row i.
        let mut u = BigInt::one();
        for j in 0..n {
            u *= inv[(i, j)].denom();
        }
        let pk = BigInt::from(p).pow(k);
        u /= &pk;
        debug_assert_eq!(ord_p_int(&u, p), Valuation::Finite(0));
        let lambda = &inv[(i, i)] * BigRational::from_integer(&u * &u);
        let scaled = BigRational::from_integer(pk) * frac(&lambda);
        let sym = legendre_unchecked(&(scaled.numer() * scaled.denom()), p);
        let kind = if sym == 1 {
            SummandType::A
        } else {
            SummandType::B
        };
        out.push(WallSummand { p, k, kind });
    }
    Ok(out)
}

/// Full Wall decomposition over every odd prime dividing `det M`.
pub fn wall_decompose(form: &LinkingForm) -> Result<WallDecomposition> {
    if form.det().is_even() {
        return Err(Error::EvenDeterminant);
    }
    let coker = smith_cokernel(form.matrix());
    let mut items = Vec::new();
    for &p in coker.prime_parts.keys() {
        items.extend(wall_decompose_at(form, p)?);
    }
    Ok(WallDecomposition::from_summands(items))
}

/// The closed form `(q|p) (-1)^{Σ} (-1)^{((p-1)/2)(α + m + (q-1)/2)}` for the
/// singular determinant of an even-diagonal matrix of odd determinant, where
/// `|det| = p^α q`, `m` is the corank mod p and `Σ` is
/// [`WallDecomposition::b_parity`].
pub fn delta_from_wall(det: &BigInt, d_p: usize, wall: &WallDecomposition, p: u64) -> Result<Sign> {
    check_odd_prime(p)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if det.is_even() {
        return Err(Error::EvenDeterminant);
    }
    let (alpha, q) = split_prime_power(&det.abs(), p);
    let qsym = legendre_unchecked(&q, p);
    let half_q = ((&q - 1u32) / 2u32).is_odd() as i64;
    let e = ((p - 1) / 2) as i64 % 2 * (alpha as i64 + d_p as i64 + half_q);
    let sign = Sign::from_i64(qsym as i64).ok_or(Error::Singular)?
        * Sign::parity(wall.b_parity(p) as i64)
        * Sign::parity(e);
    Ok(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(rows: &[[i64; 2]]) -> LinkingForm {
        LinkingForm::new(SymMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn eval_small() {
        let f = LinkingForm::new(SymMatrix::from_rows(&[[3]]).unwrap()).unwrap();
        assert_eq!(
            eval_form(&f, &[b(1)], &[b(1)]).unwrap(),
            BigRational::new(b(1), b(3))
        );
        assert_eq!(eval_form(&f, &[b(3)], &[b(1)]).unwrap(), BigRational::zero());
        assert!(eval_form(&f, &[b(1), b(0)], &[b(1)]).is_err());
    }

    #[test]
    fn local_core_keeps_summands() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut seen = 0;
        while seen < 200 {
            let n = rng.gen_range(1..=5);
            let m = crate::exactlinalg::random_symmetric(n, 9, true, &mut rng);
            let det = m.det();
            if det.is_zero() || det.is_even() {
                continue;
            }
            seen += 1;
            for p in [3, 5, 7] {
                if !(&det % BigInt::from(p)).is_zero() {
                    continue;
                }
                let core = p_local_core(&m, p);
                assert_eq!(core.size(), crate::seifert::d_p(&m, p).unwrap());
                let fast = WallDecomposition::from_summands(classify_at(&core, p).unwrap());
                let slow = WallDecomposition::from_summands(classify_at(&m, p).unwrap());
                assert_eq!(fast, slow, "{m} at {p}");
            }
        }
    }

    #[test]
    fn single_summand() {
        let f = LinkingForm::new(SymMatrix::from_rows(&[[3]]).unwrap()).unwrap();
        let w = wall_decompose(&f).unwrap();
        assert_eq!(w.to_string(), "3 1 A\n");
        assert_eq!(w.r_pk(3, 1), 1);
    }

    #[test]
    fn relations_and_isometry() {
        let s = |k, kind| WallSummand { p: 3, k, kind };
        let aa = WallDecomposition::from_summands([s(1, SummandType::A), s(1, SummandType::A)]);
        let bb = WallDecomposition::from_summands([s(1, SummandType::B), s(1, SummandType::B)]);
        assert!(isometric(&aa, &bb));
        assert_eq!(aa.r_pk(3, 1), 0);
        let a = WallDecomposition::from_summands([s(1, SummandType::A)]);
        let b1 = WallDecomposition::from_summands([s(1, SummandType::B)]);
        assert!(!isometric(&a, &b1));
        let mixed = WallDecomposition::from_summands([s(1, SummandType::A), s(2, SummandType::B)]);
        assert_eq!((mixed.r_pk(3, 1), mixed.r_pk(3, 2)), (1, 0));
        assert_eq!(WallDecomposition::empty().r_pk(3, 1), 0);
    }

    #[test]
    fn serialization_round_trip() {
        let w: WallDecomposition = "5 1 B\n3 2 A\n3 1 B\n".parse().unwrap();
        assert_eq!(w.to_string(), "3 1 B\n3 2 A\n5 1 B\n");
        assert_eq!(w.to_string().parse::<WallDecomposition>().unwrap(), w);
        assert!("4 1 A".parse::<WallDecomposition>().is_err());
    }

    #[test]
    fn closed_form_small_cases() {
        // corank one at p = 3 and p = 5 with a single B summand
        for (m, p) in [([[2, 1], [1, 2]], 3u64), ([[2, 1], [1, -2]], 5)] {
            let f = form(&m);
            let w = wall_decompose(&f).unwrap();
            assert_eq!(w.b_parity(p), 1);
            assert_eq!(delta_from_wall(f.det(), 1, &w, p).unwrap(), Sign::Minus);
        }
    }

    #[test]
    fn example_195_generator_pairs_to_unit() {
        let f = form(&[[22, 17], [17, 22]]);
        let v = eval_form(&f, &[b(1), b(0)], &[b(1), b(0)]).unwrap();
        assert_eq!(v.denom(), &b(195));
        assert!(v.numer().gcd(&b(195)).is_one());
        let w = wall_decompose(&f).unwrap();
        assert_eq!(w.order(), b(195));
        assert_eq!(w.primes(), vec![3, 5, 13]);
    }
}
