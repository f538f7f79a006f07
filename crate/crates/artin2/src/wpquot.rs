//! The quotient K/℘(K): canonical coset representatives, the filtration
//! V_n, the symbol [a, b) and the quadratic characters χ_a.
//!
//! A coset a + ℘(K) has a unique canonical representative
//! ε·a₀ + Σ c_n·x^{−n} with n ranging over odd positive integers, ε ∈ F₂
//! and a₀ the distinguished trace-1 constant: the 𝔭-part of any element
//! lies in ℘(K), even negative exponents fold down by
//! c·x^{−2m} ≡ √c·x^{−m} (mod ℘(K)), and a constant c reduces to Tr(c)·a₀.
//!
//! The symbol is computed by the residue formula
//! [a, b) = Tr(res(a·db/b)), whose defining properties (bilinearity,
//! triviality on ℘(K), the unramified character) are exercised by the tests
//! rather than assumed.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2f::{FieldCtx, FqElem};
use crate::laurent::{push_term, LaurentSeries};

/// Canonical representative of a coset a + ℘(K).
///
/// `eps` is the coefficient of a₀; `pp` maps odd positive n to the nonzero
/// coefficient of x^{−n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WpCoset {
    eps: bool,
    pp: BTreeMap<u64, FqElem>,
}

/// Ramification type of the quadratic extension attached to a coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosetLevel {
    Zero,
    Unramified,
    /// The unique positive break of K(℘⁻¹(u))/K; always odd.
    Ramified(u64),
}

impl WpCoset {
    /// The zero coset ℘(K).
    pub fn zero() -> Self {
        WpCoset::default()
    }

    /// The unramified coset a₀ + ℘(K).
    ///
    /// Constants represent this coset exactly when their trace is 1: a
    /// trace-0 unit is ℘ of another constant and reduces to zero. Over F₂
    /// every unit has trace 1, so there "any unit works"; for f > 1 the
    /// trace condition is essential and a₀ is pinned to the smallest
    /// trace-1 element.
    pub fn unramified() -> Self {
        WpCoset {
            eps: true,
            pp: BTreeMap::new(),
        }
    }

    /// Builds a coset from canonical data. Keys must be odd and positive,
    /// values nonzero.
    pub fn from_parts(eps: bool, pp: BTreeMap<u64, FqElem>) -> Self {
        for (&n, c) in &pp {
            assert!(n % 2 == 1, "principal-part exponent {n} must be odd");
            assert!(!c.is_zero(), "principal-part coefficient must be nonzero");
        }
        WpCoset { eps, pp }
    }

    pub fn eps(&self) -> bool {
        self.eps
    }

    pub fn pp(&self) -> &BTreeMap<u64, FqElem> {
        &self.pp
    }

    pub fn is_zero(&self) -> bool {
        !self.eps && self.pp.is_empty()
    }

    /// Componentwise sum in the F₂-vector space K/℘(K).
    pub fn add(&self, other: &Self) -> Self {
        let mut pp = self.pp.clone();
        for (&n, &c) in &other.pp {
            match pp.remove(&n) {
                None => {
                    pp.insert(n, c);
                }
                Some(prev) => {
                    let sum = prev.xor(c);
                    if !sum.is_zero() {
                        pp.insert(n, sum);
                    }
                }
            }
        }
        WpCoset {
            eps: self.eps ^ other.eps,
            pp,
        }
    }

    /// Zero / unramified / ramified(t) with t the largest exponent of the
    /// principal part.
    pub fn level(&self) -> CosetLevel {
        match self.pp.keys().next_back() {
            Some(&t) => CosetLevel::Ramified(t),
            None if self.eps => CosetLevel::Unramified,
            None => CosetLevel::Zero,
        }
    }

    /// The exact series underlying the canonical representative.
    pub fn lift(&self, ctx: &FieldCtx) -> LaurentSeries {
        let mut terms: Vec<(i64, FqElem)> =
            self.pp.iter().map(|(&n, &c)| (-(n as i64), c)).collect();
        if self.eps {
            terms.push((0, ctx.a0()));
        }
        LaurentSeries::exact_from_terms(*ctx, &terms)
    }

    /// Smallest n with the coset inside V_n (0 for the zero and unramified
    /// cosets).
    pub fn min_level(&self) -> u64 {
        match self.level() {
            CosetLevel::Ramified(t) => t,
            _ => 0,
        }
    }
}

impl fmt::Display for WpCoset {
    /// Series-literal rendering of the canonical representative with the
    /// constant part printed as `a0`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut buf = String::new();
        for (&n, c) in self.pp.iter().rev() {
            for j in 0..16 {
                if c.bits() >> j & 1 == 1 {
                    push_term(&mut buf, j, -(n as i64));
                }
            }
        }
        if self.eps {
            if !buf.is_empty() {
                buf.push_str(" + ");
            }
            buf.push_str("a0");
        }
        write!(out, "{buf}")
    }
}

/// Outcome of a reduction: the canonical coset plus the ℘-witness, an
/// element w with a = lift(coset) + ℘(w) up to the input's precision.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub coset: WpCoset,
    pub witness: LaurentSeries,
}

impl Reduction {
    /// Recomputes a + lift + ℘(w) and checks that it vanishes on the window
    /// where all three are known. Returns the verified cutoff.
    pub fn verify(&self, ctx: &FieldCtx, a: &LaurentSeries) -> Result<i64> {
        let diff = a.add(&self.coset.lift(ctx)).add(&self.witness.wp_apply());
        if diff.is_zero() {
            Ok(diff.precision())
        } else {
            Err(Error::DomainError(format!(
                "witness fails: residual {diff} is nonzero"
            )))
        }
    }
}

/// Canonical representative of a + ℘(K), discarding the witness.
pub fn reduce_mod_wp(ctx: &FieldCtx, a: &LaurentSeries) -> Result<WpCoset> {
    Ok(reduce_mod_wp_with_witness(ctx, a)?.coset)
}

/// Canonical representative of a + ℘(K) together with the ℘-witness.
///
/// Requires the constant term to be known (precision ≥ 1); the principal
/// part is then automatically exact.
pub fn reduce_mod_wp_with_witness(ctx: &FieldCtx, a: &LaurentSeries) -> Result<Reduction> {
    if a.precision() < 1 {
        return Err(Error::PrecisionExhausted(format!(
            "reduction needs the constant term; precision is {}",
            a.precision()
        )));
    }
    let mut witness = LaurentSeries::exact_zero(*ctx);

    // (1) The 𝔭-part lies in ℘(K); its witness is the unique root in 𝔭.
    let ppart_terms: Vec<(i64, FqElem)> = a.terms().filter(|&(e, _)| e >= 1).collect();
    if !ppart_terms.is_empty() {
        let ppart = LaurentSeries::from_terms(*ctx, &ppart_terms, a.precision());
        witness = witness.add(&ppart.wp_solve()?);
    }

    // (2) Fold even negative exponents: c·x^{-2m} ≡ √c·x^{-m} (mod ℘), the
    // two sides differing by ℘(√c·x^{-m}). Most negative exponent first;
    // folds may cascade and may cancel existing coefficients.
    let mut principal: BTreeMap<i64, FqElem> = a.terms().filter(|&(e, _)| e < 0).collect();
    let constant = a.coeff_at(0).expect("precision checked above");
    while let Some((&e, &c)) = principal.iter().find(|&(&e, _)| e % 2 == 0) {
        principal.remove(&e);
        let half = e / 2;
        debug_assert!(half <= -1, "folds stay in the principal part");
        let root = ctx.sqrt(c);
        witness = witness.add(&LaurentSeries::monomial(*ctx, root, half));
        let entry = principal.entry(half).or_insert_with(|| ctx.zero());
        *entry = ctx.add(*entry, root);
        if entry.is_zero() {
            principal.remove(&half);
        }
    }

    // (3) The constant c₀ reduces to Tr(c₀)·a₀; the difference has trace 0
    // and is ℘ of a constant.
    let eps = ctx.trace(constant);
    let residual = if eps {
        ctx.add(constant, ctx.a0())
    } else {
        constant
    };
    if !residual.is_zero() {
        let d = ctx
            .wp_preimage(residual)
            .expect("trace-0 constants are in ℘(F_q)");
        witness = witness.add(&LaurentSeries::monomial(*ctx, d, 0));
    }

    let pp: BTreeMap<u64, FqElem> = principal
        .into_iter()
        .map(|(e, c)| ((-e) as u64, c))
        .collect();
    Ok(Reduction {
        coset: WpCoset::from_parts(eps, pp),
        witness,
    })
}

/// F₂-dimension of V_n = 1 + f·⌈n/2⌉.
///
/// The filtration gains a codimension-f step at each odd level, so the
/// constant-field degree multiplies the step count. See
/// [`filtration_dim_rank_one`] for the rank-one count that drops the factor
/// f; the two agree exactly when f = 1.
pub fn filtration_dim(ctx: &FieldCtx, n: u64) -> u64 {
    1 + (ctx.f() as u64) * n.div_ceil(2)
}

/// The f-independent count 1 + ⌈n/2⌉ (number of filtration steps plus one).
pub fn filtration_dim_rank_one(n: u64) -> u64 {
    1 + n.div_ceil(2)
}

/// Deterministic basis of V_n: a₀ first, then g^j·x^{−m} for odd m ≤ n
/// ascending, j = 0..f ascending.
pub fn vn_basis(ctx: &FieldCtx, n: u64) -> Vec<WpCoset> {
    let mut basis = vec![WpCoset::unramified()];
    for m in (1..=n).filter(|m| m % 2 == 1) {
        for j in 0..ctx.f() {
            let c = ctx.pow(ctx.gen(), j as u64);
            let mut pp = BTreeMap::new();
            pp.insert(m, c);
            basis.push(WpCoset::from_parts(false, pp));
        }
    }
    debug_assert_eq!(basis.len() as u64, filtration_dim(ctx, n));
    basis
}

/// The symbol [a, b) = Tr(res(lift(a)·db/b)) ∈ F₂.
pub fn as_symbol(ctx: &FieldCtx, a: &WpCoset, b: &LaurentSeries) -> Result<bool> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let dlog = b.derivative().mul(&b.inv()?);
    let integrand = a.lift(ctx).mul(&dlog);
    Ok(ctx.trace(integrand.residue()?))
}

/// The quadratic character χ_a = (−1)^[a,·) attached to a nonzero coset.
#[derive(Debug, Clone)]
pub struct QuadChar {
    ctx: FieldCtx,
    coset: WpCoset,
}

/// A value in {+1, −1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(out, "+1"),
            Sign::Minus => write!(out, "-1"),
        }
    }
}

impl QuadChar {
    pub fn new(ctx: &FieldCtx, coset: WpCoset) -> Result<Self> {
        if coset.is_zero() {
            return Err(Error::ZeroCoset);
        }
        Ok(QuadChar { ctx: *ctx, coset })
    }

    pub fn coset(&self) -> &WpCoset {
        &self.coset
    }

    pub fn eval(&self, b: &LaurentSeries) -> Result<Sign> {
        Ok(Sign::from_bit(as_symbol(&self.ctx, &self.coset, b)?))
    }
}
