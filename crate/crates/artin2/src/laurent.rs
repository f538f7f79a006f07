//! Truncated Laurent series over F_q: the computational model of
//! K = F_q((x)), its ring of integers 𝔬 (val ≥ 0) and maximal ideal 𝔭
//! (val ≥ 1), together with the additive endomorphism ℘(x) = x² + x and its
//! inverse on 𝔭.
//!
//! A series carries a single precision cutoff `prec`: coefficients at
//! exponents ≥ prec are unknown, everything below is exact. Precision
//! propagates pessimistically through arithmetic, except that squaring is
//! exact in characteristic 2 ((a+e)² = a² + e²) and doubles the cutoff.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2f::{FieldCtx, FqElem};
use crate::parse;

/// Default precision cutoff for parsed series.
pub const DEFAULT_PRECISION: i64 = 64;

/// Sentinel cutoff for exact series (finite sums of monomials).
pub(crate) const EXACT_PREC: i64 = 1 << 60;

const EXACT_THRESHOLD: i64 = EXACT_PREC / 2;

fn clamp_prec(p: i64) -> i64 {
    p.min(EXACT_PREC)
}

/// A truncated Laurent series. The zero series is the distinguished value
/// with no known nonzero coefficient; its valuation is undefined (`None`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    ctx: FieldCtx,
    /// Exponent of the stored window's first coefficient; equals `prec` for
    /// the zero series.
    val: i64,
    /// Stored coefficients for exponents `val..val+len`; leading and
    /// trailing entries are nonzero. Exponents outside the window but below
    /// `prec` are zero.
    coeffs: Vec<FqElem>,
    prec: i64,
}

impl LaurentSeries {
    /// Normalizing constructor: trims zero fringes and drops anything at or
    /// beyond the cutoff.
    fn build(ctx: FieldCtx, mut start: i64, mut coeffs: Vec<FqElem>, prec: i64) -> Self {
        let prec = clamp_prec(prec);
        if start >= prec {
            coeffs.clear();
        } else {
            let window = (prec - start).min(coeffs.len() as i64).max(0) as usize;
            coeffs.truncate(window);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries {
                ctx,
                val: prec,
                coeffs: Vec::new(),
                prec,
            },
            Some(k) => {
                coeffs.drain(..k);
                start += k as i64;
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                LaurentSeries {
                    ctx,
                    val: start,
                    coeffs,
                    prec,
                }
            }
        }
    }

    /// The zero series known up to the given cutoff.
    pub fn zero(ctx: FieldCtx, prec: i64) -> Self {
        let prec = clamp_prec(prec);
        LaurentSeries {
            ctx,
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    /// The exact zero series.
    pub fn exact_zero(ctx: FieldCtx) -> Self {
        Self::zero(ctx, EXACT_PREC)
    }

    /// Builds a series from (exponent, coefficient) terms, combining like
    /// exponents in characteristic 2.
    pub fn from_terms(ctx: FieldCtx, terms: &[(i64, FqElem)], prec: i64) -> Self {
        if terms.is_empty() {
            return Self::zero(ctx, prec);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![ctx.zero(); (hi - lo + 1) as usize];
        for &(e, c) in terms {
            let k = (e - lo) as usize;
            coeffs[k] = ctx.add(coeffs[k], c);
        }
        Self::build(ctx, lo, coeffs, prec)
    }

    /// An exact finite sum of monomials.
    pub fn exact_from_terms(ctx: FieldCtx, terms: &[(i64, FqElem)]) -> Self {
        Self::from_terms(ctx, terms, EXACT_PREC)
    }

    /// The exact monomial c·x^n.
    pub fn monomial(ctx: FieldCtx, c: FqElem, n: i64) -> Self {
        Self::exact_from_terms(ctx, &[(n, c)])
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::monomial(ctx, ctx.one(), 0)
    }

    /// The uniformizer x, of valuation 1.
    pub fn uniformizer(ctx: FieldCtx) -> Self {
        Self::monomial(ctx, ctx.one(), 1)
    }

    /// Parses the input grammar at [`DEFAULT_PRECISION`].
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self> {
        parse::parse_series(ctx, text, DEFAULT_PRECISION)
    }

    pub fn parse_with_prec(ctx: &FieldCtx, text: &str, prec: i64) -> Result<Self> {
        parse::parse_series(ctx, text, prec)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    /// ν-valuation; `None` for the zero series (infinite).
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT_THRESHOLD
    }

    /// Valuation lower bound: the valuation itself, or the cutoff for the
    /// zero series.
    fn lower(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.val
        }
    }

    fn window_end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient at exponent n, `None` if beyond the cutoff.
    pub fn coeff_at(&self, n: i64) -> Option<FqElem> {
        if n >= self.prec {
            return None;
        }
        if n < self.val || n >= self.window_end() {
            return Some(self.ctx.zero());
        }
        Some(self.coeffs[(n - self.val) as usize])
    }

    /// Stored nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.val + i as i64, c))
    }

    /// Restricts the cutoff to at most `prec`.
    pub fn with_prec(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::build(self.ctx, self.val, self.coeffs.clone(), prec)
    }

    fn assert_same_ctx(&self, other: &Self) {
        debug_assert_eq!(self.ctx, other.ctx, "mixed field contexts");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let prec = self.prec.min(other.prec);
        let lo = self.lower().min(other.lower());
        if lo >= prec {
            return Self::zero(self.ctx, prec);
        }
        // zero operands have an empty stored window; only real coefficients
        // bound the allocation
        let stored = |s: &Self| {
            if s.coeffs.is_empty() {
                lo
            } else {
                s.window_end()
            }
        };
        let hi = stored(self).max(stored(other)).min(prec).max(lo);
        let mut coeffs = vec![self.ctx.zero(); (hi - lo) as usize];
        for (e, c) in self.terms().chain(other.terms()) {
            if e < prec {
                let k = (e - lo) as usize;
                coeffs[k] = self.ctx.add(coeffs[k], c);
            }
        }
        Self::build(self.ctx, lo, coeffs, prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let prec = clamp_prec(
            (self.prec.saturating_add(other.lower())).min(other.prec.saturating_add(self.lower())),
        );
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx, prec);
        }
        let val = self.val + other.val;
        let len = (prec - val).min(self.coeffs.len() as i64 + other.coeffs.len() as i64 - 1);
        if len <= 0 {
            return Self::zero(self.ctx, prec);
        }
        let mut coeffs = vec![self.ctx.zero(); len as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if (k as i64) >= len {
                    break;
                }
                coeffs[k] = self.ctx.add(coeffs[k], self.ctx.mul(a, b));
            }
        }
        Self::build(self.ctx, val, coeffs, prec)
    }

    /// Frobenius square: coefficients square, exponents double, and the
    /// cutoff doubles because (a+e)² = a² + e² in characteristic 2.
    pub fn square(&self) -> Self {
        let prec = clamp_prec(self.prec.saturating_mul(2));
        if self.is_zero() {
            return Self::zero(self.ctx, prec);
        }
        let mut coeffs = vec![self.ctx.zero(); 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = self.ctx.square(c);
        }
        Self::build(self.ctx, 2 * self.val, coeffs, prec)
    }

    /// Multiplicative inverse. The result is known to `prec − 2·val`.
    /// An exact input yields a window of [`DEFAULT_PRECISION`] coefficients,
    /// since the inverse of a polynomial is in general an infinite series.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let eff_prec = if self.is_exact() {
            v + DEFAULT_PRECISION
        } else {
            self.prec
        };
        let window = (eff_prec - v) as usize;
        let lead_inv = self.ctx.inv(self.coeffs[0]).expect("leading coeff nonzero");
        let mut out = vec![self.ctx.zero(); window];
        out[0] = lead_inv;
        for k in 1..window {
            // c0·b_k = Σ_{i=1..k} a_i·b_{k-i}
            let mut s = self.ctx.zero();
            for i in 1..=k {
                let a = if i < self.coeffs.len() {
                    self.coeffs[i]
                } else {
                    self.ctx.zero()
                };
                if !a.is_zero() && !out[k - i].is_zero() {
                    s = self.ctx.add(s, self.ctx.mul(a, out[k - i]));
                }
            }
            out[k] = self.ctx.mul(lead_inv, s);
        }
        Ok(Self::build(
            self.ctx,
            -v,
            out,
            eff_prec.saturating_sub(2 * v),
        ))
    }

    /// Formal derivative: c·xⁿ ↦ (n mod 2)·c·x^{n−1}; the cutoff drops by 1.
    pub fn derivative(&self) -> Self {
        let prec = self.prec.saturating_sub(1);
        let terms: Vec<(i64, FqElem)> = self
            .terms()
            .filter(|(e, _)| e.rem_euclid(2) == 1)
            .map(|(e, c)| (e - 1, c))
            .collect();
        Self::from_terms(self.ctx, &terms, prec)
    }

    /// Coefficient of x^{−1}.
    pub fn residue(&self) -> Result<FqElem> {
        self.coeff_at(-1).ok_or_else(|| {
            Error::PrecisionExhausted(format!(
                "residue needs the x^-1 coefficient but the cutoff is {}",
                self.prec
            ))
        })
    }

    /// The Artin-Schreier endomorphism ℘(x) = x² + x.
    pub fn wp_apply(&self) -> Self {
        self.square().add(self)
    }

    /// Solves ℘(z) = z² + z = y for the unique root z ∈ 𝔭, by the
    /// fixed-point iteration z ← y + z² (the error valuation doubles each
    /// step). Requires ν(y) ≥ 1.
    pub fn wp_solve(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            // The zero series: the unique root in 𝔭 is 0.
            return Ok(self.clone());
        };
        if v <= 0 {
            return Err(Error::DomainError(format!(
                "wp_solve needs valuation >= 1, got {v}"
            )));
        }
        let prec = if self.is_exact() {
            DEFAULT_PRECISION.max(v + 1)
        } else {
            self.prec
        };
        let y = self.with_prec(prec);
        let mut z = y.clone();
        for _ in 0..128 {
            let next = y.add(&z.square());
            if next == z {
                return Ok(z);
            }
            z = next;
        }
        unreachable!("wp_solve fixed point must stabilize within 128 doublings")
    }

    /// True when the two series agree on every coefficient known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.assert_same_ctx(other);
        let common = self.prec.min(other.prec);
        if common >= EXACT_THRESHOLD {
            return self.val == other.val && self.coeffs == other.coeffs;
        }
        let lo = self.lower().min(other.lower()).min(common);
        (lo..common).all(|n| self.coeff_at(n) == other.coeff_at(n))
    }
}

impl fmt::Display for LaurentSeries {
    /// Known terms in increasing exponent order; multi-monomial coefficients
    /// split into one term per monomial of g, ascending. Round-trips through
    /// the parser.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut buf = String::new();
        for (e, c) in self.terms() {
            for j in 0..16 {
                if c.bits() >> j & 1 == 1 {
                    push_term(&mut buf, j, e);
                }
            }
        }
        write!(out, "{buf}")
    }
}

/// Appends the rendering of the monomial g^j · x^n.
pub(crate) fn push_term(out: &mut String, j: u32, n: i64) {
    if !out.is_empty() {
        out.push_str(" + ");
    }
    if n == 0 {
        match j {
            0 => out.push('1'),
            1 => out.push('g'),
            _ => out.push_str(&format!("g^{j}")),
        }
        return;
    }
    match j {
        0 => {}
        1 => out.push_str("g*"),
        _ => out.push_str(&format!("g^{j}*")),
    }
    if n == 1 {
        out.push('x');
    } else {
        out.push_str(&format!("x^{n}"));
    }
}
