//! Unknotting-number obstructions from singular determinants and linking forms.
//!
//! Everything here reports constraints on hypothetical unknotting sequences;
//! nothing asserts an unknotting number.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::evaluate::{q_at_golden_link, AlgebraicValue, Cyclotomic, ZSqrt5};
use crate::exactlinalg::{
    random_unimodular, smith_cokernel, smith_form, IntMatrix, SymMatrix, Unimodular,
};
use crate::linkform::{eval_form, LinkingForm};
use crate::numtheory::{check_odd_prime, odd_prime_divisors, Sign};
use crate::seifert::{crossing_change_pair, d_p, mu_of, singular_determinant, ChangeCase};

/// Largest `|det|` for which generator searches are attempted.
pub const GENERATOR_SEARCH_LIMIT: u64 = 10_000_000;

/// `d_p(M) - μ(M) + 1`; nonpositive values are vacuous.
pub fn wendt_bound(m: &SymMatrix, p: u64) -> Result<i64> {
    let d = d_p(m, p)? as i64;
    let mu = mu_of(m)? as i64;
    Ok(d - mu + 1)
}

/// Which sign pattern a minimal sequence at the Wendt bound must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityRule {
    /// `p ≡ 1 (8)`: `δ_p = 1`.
    DeltaMustBePlus,
    /// `p ≡ 5 (8)`: `δ_p = (-1)^u`.
    DeltaEqParityU,
    /// `p ≡ 3 (8)`: `δ_p = (-1)^{u_-}`.
    DeltaEqParityUMinus,
    /// `p ≡ 7 (8)`: `δ_p = (-1)^{u_+}`.
    DeltaEqParityUPlus,
}

impl ParityRule {
    pub fn for_prime(p: u64) -> Result<ParityRule> {
        check_odd_prime(p)?;
        Ok(match p % 8 {
            1 => ParityRule::DeltaMustBePlus,
            3 => ParityRule::DeltaEqParityUMinus,
            5 => ParityRule::DeltaEqParityU,
            _ => ParityRule::DeltaEqParityUPlus,
        })
    }

    /// The sign the rule predicts for a sequence with the given counts.
    pub fn predicted(self, u_plus: u64, u_minus: u64) -> Sign {
        match self {
            ParityRule::DeltaMustBePlus => Sign::Plus,
            ParityRule::DeltaEqParityU => Sign::parity((u_plus + u_minus) as i64),
            ParityRule::DeltaEqParityUMinus => Sign::parity(u_minus as i64),
            ParityRule::DeltaEqParityUPlus => Sign::parity(u_plus as i64),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ParityRule::DeltaMustBePlus => "delta_must_be_plus",
            ParityRule::DeltaEqParityU => "delta_eq_parity_u",
            ParityRule::DeltaEqParityUMinus => "delta_eq_parity_u_minus",
            ParityRule::DeltaEqParityUPlus => "delta_eq_parity_u_plus",
        }
    }
}

impl fmt::Display for ParityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedUnknottingConstraint {
    pub p: u64,
    /// Wendt bound `d_p - c + 1`.
    pub base_bound: i64,
    pub rule: ParityRule,
    pub delta: Sign,
}

impl SignedUnknottingConstraint {
    /// Whether `u_+` positive and `u_-` negative changes at the bound are
    /// consistent with `δ_p`. Counts off the bound are rejected.
    pub fn admits(&self, u_plus: u64, u_minus: u64) -> Result<bool> {
        if (u_plus + u_minus) as i64 != self.base_bound {
            return Err(Error::Unsupported(format!(
                "sign rule applies only at u = {}, got u_+ + u_- = {}",
                self.base_bound,
                u_plus + u_minus
            )));
        }
        Ok(self.rule.predicted(u_plus, u_minus) == self.delta)
    }

    /// True when no split of `base_bound` changes is admissible.
    pub fn excludes_bound(&self) -> bool {
        if self.base_bound < 0 {
            return false;
        }
        let u = self.base_bound as u64;
        !(0..=u).any(|k| self.rule.predicted(k, u - k) == self.delta)
    }

    /// One-line human summary of what the constraint says.
    pub fn describe(&self) -> String {
        let u = self.base_bound;
        if u <= 0 {
            return if u == 0 && self.excludes_bound() {
                "u >= 1".to_string()
            } else {
                "vacuous".to_string()
            };
        }
        if self.excludes_bound() {
            return format!("u >= {}", u + 1);
        }
        let need = self.delta.bit();
        let counted = match self.rule {
            ParityRule::DeltaMustBePlus | ParityRule::DeltaEqParityU => {
                return format!("no sign restriction at u = {u}");
            }
            ParityRule::DeltaEqParityUMinus => "u_-",
            ParityRule::DeltaEqParityUPlus => "u_+",
        };
        if u == 2 {
            // u_+ and u_- have equal parity when u = 2.
            let kind = if need == 0 { "same-sign" } else { "opposite-sign" };
            return format!("{kind} changes required at u = 2");
        }
        let parity = if need == 0 { "even" } else { "odd" };
        format!("{counted} {parity} required at u = {u}")
    }
}

/// The signed constraint at `p`.
pub fn signed_obstruction(m: &SymMatrix, p: u64) -> Result<SignedUnknottingConstraint> {
    let sd = singular_determinant(m, p)?;
    Ok(SignedUnknottingConstraint {
        p,
        base_bound: sd.d_p as i64 - sd.mu as i64 + 1,
        rule: ParityRule::for_prime(p)?,
        delta: sd.value,
    })
}

/// The Wendt bound, raised by one when `δ_p` rules out every sequence at it.
pub fn improved_bound(m: &SymMatrix, p: u64) -> Result<i64> {
    let c = signed_obstruction(m, p)?;
    let w = c.base_bound;
    let raise = match p % 8 {
        1 => c.delta == Sign::Minus,
        5 => c.delta != Sign::parity(w),
        _ => false,
    };
    Ok(if raise { w + 1 } else { w })
}

/// Per-prime outcome of the sign-pattern test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCheck {
    pub d_p: usize,
    pub delta: Sign,
    pub pass_plus: bool,
    pub pass_minus: bool,
}

impl PrimeCheck {
    pub fn passes(&self, zeta: Sign) -> bool {
        match zeta {
            Sign::Plus => self.pass_plus,
            Sign::Minus => self.pass_minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LickorishReport {
    /// Crossing signs `ζ` for which a single change could unknot.
    pub admissible_zeta: Vec<Sign>,
    pub per_prime: BTreeMap<u64, PrimeCheck>,
}

fn required_delta(p: u64, zeta: Sign) -> Sign {
    match p % 8 {
        1 => Sign::Plus,
        3 => zeta,
        5 => Sign::Minus,
        _ => -zeta,
    }
}

fn abs_det(m: &SymMatrix) -> Result<BigInt> {
    let det = m.det().abs();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if det.is_even() {
        return Err(Error::EvenDeterminant);
    }
    Ok(det)
}

fn require_knot(m: &SymMatrix) -> Result<()> {
    let mu = mu_of(m)?;
    if mu != 1 {
        return Err(Error::Unsupported(format!(
            "expected a knot (mu = 1), got mu = {mu}"
        )));
    }
    Ok(())
}

/// Sign-pattern test: `ζ` is admissible iff every `p | det` has `d_p = 1`
/// and the mod-8 pattern of `δ_p`.
pub fn lickorish_check(m: &SymMatrix) -> Result<LickorishReport> {
    require_knot(m)?;
    let det = abs_det(m)?;
    let mut per_prime = BTreeMap::new();
    for p in odd_prime_divisors(&det) {
        let sd = singular_determinant(m, p)?;
        let ok = |z| sd.d_p == 1 && sd.value == required_delta(p, z);
        per_prime.insert(
            p,
            PrimeCheck {
                d_p: sd.d_p,
                delta: sd.value,
                pass_plus: ok(Sign::Plus),
                pass_minus: ok(Sign::Minus),
            },
        );
    }
    let admissible_zeta = [Sign::Minus, Sign::Plus]
        .into_iter()
        .filter(|&z| per_prime.values().all(|c| c.passes(z)))
        .collect();
    Ok(LickorishReport {
        admissible_zeta,
        per_prime,
    })
}

/// A generator `g` of a cyclic cokernel and `a` with `λ(g, g) = a / D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGenerator {
    pub order: u64,
    pub vector: Vec<BigInt>,
    pub self_link: u64,
}

/// Generator of `coker M`, or `None` when the cokernel is not cyclic.
pub fn cyclic_generator(m: &SymMatrix) -> Result<Option<CyclicGenerator>> {
    let det = abs_det(m)?;
    let order = det.to_u64().filter(|&d| d <= GENERATOR_SEARCH_LIMIT).ok_or_else(|| {
        Error::Unsupported(format!(
            "determinant {det} above the search limit {GENERATOR_SEARCH_LIMIT}"
        ))
    })?;
    if !smith_cokernel(m.matrix()).is_cyclic() {
        return Ok(None);
    }
    let n = m.size();
    let form = LinkingForm::new(m.clone())?;
    let snf = smith_form(m.matrix());
    let left_inv = Unimodular::new(snf.left)?.inverse();
    // left * M * right = diag(1, .., 1, D), so left^{-1} e_n generates.
    let vector: Vec<BigInt> = (0..n).map(|i| left_inv.matrix()[(i, n - 1)].clone()).collect();
    let lam = eval_form(&form, &vector, &vector)?;
    let a = (lam * BigInt::from(order)).to_integer();
    Ok(Some(CyclicGenerator {
        order,
        vector,
        self_link: a.to_u64().expect("residue below the order"),
    }))
}

fn square_hits(g: &CyclicGenerator, targets: &[u64], units_only: bool) -> bool {
    let d = g.order;
    if d == 1 {
        return true;
    }
    let a = g.self_link as u128;
    (0..d).any(|b| {
        if units_only && b.gcd(&d) != 1 {
            return false;
        }
        let v = ((b as u128 * b as u128 % d as u128) * a % d as u128) as u64;
        targets.contains(&v)
    })
}

fn residue(x: i64, d: u64) -> u64 {
    x.rem_euclid(d as i64) as u64
}

/// Direct search: the `ζ` for which some generator `h` has
/// `λ(h, h) = 2ζ(-1)^{(D-1)/2} / D`.
pub fn lickorish_generator_search(m: &SymMatrix) -> Result<Vec<Sign>> {
    require_knot(m)?;
    let Some(g) = cyclic_generator(m)? else {
        return Ok(Vec::new());
    };
    let d = g.order;
    let s = Sign::parity(((d - 1) / 2) as i64).to_i64();
    Ok([Sign::Minus, Sign::Plus]
        .into_iter()
        .filter(|z| square_hits(&g, &[residue(2 * z.to_i64() * s, d)], true))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoimenowReport {
    pub q_value: ZSqrt5,
    /// Some `h` has `λ(h, h) = ±2 / det`.
    pub exists_h: bool,
    pub predicted: ZSqrt5,
}

impl StoimenowReport {
    pub fn agrees(&self) -> bool {
        self.q_value == self.predicted
    }
}

/// Compare `Q(golden)` with the conjectured `∓√5` for a knot with cyclic
/// cokernel and `5 | det`.
pub fn stoimenow_check(m: &SymMatrix) -> Result<StoimenowReport> {
    require_knot(m)?;
    let det = abs_det(m)?;
    if !(&det % 5u32).is_zero() {
        return Err(Error::Unsupported(format!("5 does not divide det = {det}")));
    }
    let g = cyclic_generator(m)?
        .ok_or_else(|| Error::Unsupported("cokernel is not cyclic".into()))?;
    let d = g.order;
    let exists_h = square_hits(&g, &[residue(2, d), residue(-2, d)], false);
    let q_value = match q_at_golden_link(m)? {
        AlgebraicValue::Sqrt5(v) => v,
        AlgebraicValue::Cyclo(_) => unreachable!("golden value lies in Z[sqrt5]"),
    };
    let predicted = ZSqrt5::new(0, if exists_h { -1 } else { 1 });
    Ok(StoimenowReport {
        q_value,
        exists_h,
        predicted,
    })
}

/// Predicted `V(ζ_6)` for an unknotting sequence of length `d_3 - c + 1`
/// with `u_minus` negative changes.
pub fn traczyk_value(m: &SymMatrix, u_minus: u64) -> Result<AlgebraicValue> {
    let c = mu_of(m)? as u32;
    let d3 = d_p(m, 3)? as u32;
    let v = &(&Cyclotomic::i().pow(c - 1) * &Cyclotomic::i_sqrt3().pow(d3))
        .scale(&BigInt::from(Sign::parity(u_minus as i64).to_i64()));
    Ok(AlgebraicValue::Cyclo(v.clone()))
}

/// If `q = (-1)^{a+c} (√5)^a` for some `a ≥ 0`, the strict lower bound
/// `a - c + 1` on the unknotting number.
pub fn golden_unknotting_bound(q: &ZSqrt5, c: usize) -> Option<i64> {
    let (mag, neg) = match (q.a.is_zero(), q.b.is_zero()) {
        (false, true) => (q.a.abs(), q.a.is_negative()),
        (true, false) => (q.b.abs(), q.b.is_negative()),
        _ => return None,
    };
    let odd = q.a.is_zero();
    let mut e = 0i64;
    let mut r = mag;
    while r > BigInt::one() && (&r % 5u32).is_zero() {
        r /= 5u32;
        e += 1;
    }
    if !r.is_one() {
        return None;
    }
    let a = 2 * e + i64::from(odd);
    (Sign::parity(a + c as i64) == if neg { Sign::Minus } else { Sign::Plus })
        .then_some(a - c as i64 + 1)
}

/// Matrices along a crossing-change sequence from an unlink, each step
/// raising `d_p` by one.
#[derive(Debug, Clone)]
pub struct SyntheticSequence {
    pub p: u64,
    /// `matrices[0]` is the unlink; `matrices[i + 1]` differs from
    /// `matrices[i]` by a crossing change of sign `signs[i]`.
    pub matrices: Vec<SymMatrix>,
    pub signs: Vec<Sign>,
}

impl SyntheticSequence {
    pub fn u_plus(&self) -> u64 {
        self.signs.iter().filter(|&&s| s == Sign::Plus).count() as u64
    }

    pub fn u_minus(&self) -> u64 {
        self.signs.iter().filter(|&&s| s == Sign::Minus).count() as u64
    }

    pub fn last(&self) -> &SymMatrix {
        self.matrices.last().expect("sequence starts with the unlink")
    }
}

fn congruent_mod(a: &SymMatrix, b: &SymMatrix, p: u64) -> bool {
    let p = BigInt::from(p);
    a.size() == b.size()
        && (0..a.size())
            .all(|i| (0..a.size()).all(|j| ((&a[(i, j)] - &b[(i, j)]) % &p).is_zero()))
}

/// Grow a Seifert form by one crossing change of the given sign.
///
/// With `c ≡ 1/2 (mod p)` the block `B = [[2sc(c-1), s(1-2c)], [s(1-2c), 2s]]`
/// has determinant -1, so `X ⊕ B` is S-equivalent to `X`. Zeroing the
/// last entry gives the form one crossing change away, and modulo p the
/// pair is the scalar crossing-change pair over `X ⊕ (2sc(c-1))`.
fn grow<R: Rng + ?Sized>(x: &SymMatrix, sign: Sign, p: u64, rng: &mut R) -> Result<SymMatrix> {
    let s = BigInt::from(sign.to_i64());
    let c = BigInt::from((p + 1) / 2 + p * rng.gen_range(0..3u64));
    let top = BigInt::from(2) * &s * &c * (&c - BigInt::one());
    let off = &s * (BigInt::one() - BigInt::from(2) * &c);
    let block = |last: BigInt| {
        SymMatrix::new(
            IntMatrix::from_big_rows(vec![vec![top.clone(), off.clone()], vec![off.clone(), last]])
                .expect("2x2 block"),
        )
        .expect("symmetric block")
    };
    let after = x.block_sum(&block(BigInt::zero()));
    let before = x.block_sum(&block(BigInt::from(2) * &s));
    debug_assert_eq!(before.det(), -x.det());

    let pm = x.block_sum(
        &SymMatrix::new(IntMatrix::from_big_rows(vec![vec![top.clone()]]).expect("1x1"))
            .expect("1x1 symmetric"),
    );
    let (m_plus, m_minus) = crossing_change_pair(&pm, &s, ChangeCase::Scalar, p)?;
    let (l_plus, l_minus) = match sign {
        Sign::Plus => (&after, &before),
        Sign::Minus => (&before, &after),
    };
    if !congruent_mod(l_plus, &m_plus, p) || !congruent_mod(l_minus, &m_minus, p) {
        return Err(Error::Unsupported("pair is not the crossing-change pair mod p".into()));
    }
    let n = after.size();
    let t = random_unimodular(n, 4 * n, rng);
    Ok(after.congruence(&t))
}

/// Random sequence of `steps` crossing changes starting from the
/// `components`-component unlink.
pub fn synthetic_sequence<R: Rng + ?Sized>(
    p: u64,
    components: usize,
    steps: usize,
    rng: &mut R,
) -> Result<SyntheticSequence> {
    check_odd_prime(p)?;
    if components == 0 {
        return Err(Error::Unsupported("a link has at least one component".into()));
    }
    let mut matrices = vec![SymMatrix::zeros(components - 1)];
    let mut signs = Vec::with_capacity(steps);
    for _ in 0..steps {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let next = grow(matrices.last().expect("nonempty"), sign, p, rng)?;
        matrices.push(next);
        signs.push(sign);
    }
    Ok(SyntheticSequence { p, matrices, signs })
}

/// Check a sequence against the signed rule. Sequences in which some step
/// fails to raise `d_p` by exactly one are rejected.
pub fn verify_sequence(seq: &SyntheticSequence) -> Result<bool> {
    let p = seq.p;
    let mut prev = d_p(&seq.matrices[0], p)?;
    if prev + 1 != mu_of(&seq.matrices[0])? {
        return Err(Error::Unsupported("sequence must start at an unlink form".into()));
    }
    for m in &seq.matrices[1..] {
        let d = d_p(m, p)?;
        if d != prev + 1 {
            return Err(Error::Unsupported(format!(
                "d_p went from {prev} to {d}; not a minimal sequence"
            )));
        }
        prev = d;
    }
    signed_obstruction(seq.last(), p)?.admits(seq.u_plus(), seq.u_minus())
}

/// Everything the obstruction layer can say about one form at one prime.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub p: u64,
    pub wendt: i64,
    pub improved: i64,
    pub constraint: SignedUnknottingConstraint,
    pub lickorish: Option<LickorishReport>,
    pub stoimenow: Option<StoimenowReport>,
    /// Strict lower bound from the golden-ratio Q value, when it applies.
    pub golden_bound: Option<i64>,
}

/// Collect every applicable obstruction for `m` at `p`.
pub fn obstruction_report(m: &SymMatrix, p: u64) -> Result<ObstructionReport> {
    let constraint = signed_obstruction(m, p)?;
    let improved = improved_bound(m, p)?;
    let mu = mu_of(m)?;
    let det = m.det().abs();
    let knot_ok = mu == 1 && det.is_odd();
    let small = det <= BigInt::from(GENERATOR_SEARCH_LIMIT);
    let lickorish = if knot_ok { Some(lickorish_check(m)?) } else { None };
    let stoimenow = if knot_ok
        && small
        && (&det % 5u32).is_zero()
        && smith_cokernel(m.matrix()).is_cyclic()
    {
        Some(stoimenow_check(m)?)
    } else {
        None
    };
    let golden_bound = match q_at_golden_link(m)? {
        AlgebraicValue::Sqrt5(q) => golden_unknotting_bound(&q, mu),
        AlgebraicValue::Cyclo(_) => None,
    };
    Ok(ObstructionReport {
        p,
        wendt: constraint.base_bound,
        improved,
        constraint,
        lickorish,
        stoimenow,
        golden_bound,
    })
}

fn zeta_list(z: &[Sign]) -> String {
    if z.is_empty() {
        return "none".into();
    }
    z.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

impl ObstructionReport {
    /// Machine-readable `key = value` lines in a fixed order.
    pub fn key_values(&self) -> Vec<(String, String)> {
        let p = self.p;
        let mut kv = vec![
            ("p".to_string(), p.to_string()),
            (format!("wendt_{p}"), self.wendt.to_string()),
            (format!("improved_{p}"), self.improved.to_string()),
            (format!("rule_{p}"), self.constraint.rule.to_string()),
            (format!("delta_{p}"), self.constraint.delta.to_string()),
            (format!("constraint_{p}"), self.constraint.describe()),
        ];
        if let Some(l) = &self.lickorish {
            kv.push(("lickorish_zeta".into(), zeta_list(&l.admissible_zeta)));
        }
        if let Some(s) = &self.stoimenow {
            kv.push(("stoimenow_q".into(), s.q_value.to_string()));
            kv.push(("stoimenow_h_exists".into(), s.exists_h.to_string()));
            let verdict = if s.agrees() { "agrees" } else { "counterexample" };
            kv.push(("stoimenow".into(), verdict.into()));
        }
        if let Some(b) = self.golden_bound {
            kv.push(("golden_u_gt".into(), b.to_string()));
        }
        kv
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        let w = self.wendt;
        if w > 0 {
            writeln!(f, "Wendt bound (p = {p}): u >= {w}")?;
        } else {
            writeln!(f, "Wendt bound (p = {p}): vacuous")?;
        }
        writeln!(
            f,
            "signed rule: {} with delta_{p} = {}: {}",
            self.constraint.rule,
            self.constraint.delta,
            self.constraint.describe()
        )?;
        if self.improved > w {
            writeln!(f, "improved bound: u >= {}", self.improved)?;
        }
        if let Some(l) = &self.lickorish {
            if l.admissible_zeta.is_empty() {
                writeln!(f, "Lickorish: no admissible generator; u = 1 excluded")?;
            } else {
                writeln!(f, "Lickorish: admissible zeta {}", zeta_list(&l.admissible_zeta))?;
            }
        }
        if let Some(s) = &self.stoimenow {
            let verdict = if s.agrees() { "agrees" } else { "counterexample" };
            writeln!(
                f,
                "Stoimenow: Q(golden) = {}, h with lambda(h,h) = +-2/det {}: {verdict}",
                s.q_value,
                if s.exists_h { "exists" } else { "does not exist" }
            )?;
        }
        if let Some(b) = self.golden_bound {
            writeln!(f, "Q(golden) bound: u > {b}")?;
        }
        Ok(())
    }
}
