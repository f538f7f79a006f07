//! Arithmetic in the residue field k = F_q, q = 2^f, in a polynomial basis.
//!
//! A [`FieldCtx`] fixes the residue degree `f` and an irreducible modulus
//! polynomial over F₂; elements are coefficient bit-vectors in the basis
//! `1, g, g², …, g^{f−1}` where `g` is the class of the indeterminate.
//! Everything is exact; `f ≤ 16` keeps exhaustive checks cheap.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported residue degree.
pub const MAX_F: u32 = 16;

/// Smallest irreducible polynomial of each degree 1..=16, encoded with bit i
/// as the coefficient of g^i. Entry `DEFAULT_MODULI[f-1]` has degree f.
///
/// "Smallest" compares the encodings as integers, which for fixed degree is
/// the lexicographic order on coefficient vectors read from the top.
pub const DEFAULT_MODULI: [u32; 16] = [
    0x2,     // g
    0x7,     // g^2+g+1
    0xb,     // g^3+g+1
    0x13,    // g^4+g+1
    0x25,    // g^5+g^2+1
    0x43,    // g^6+g+1
    0x83,    // g^7+g+1
    0x11b,   // g^8+g^4+g^3+g+1
    0x203,   // g^9+g+1
    0x409,   // g^10+g^3+1
    0x805,   // g^11+g^2+1
    0x1009,  // g^12+g^3+1
    0x201b,  // g^13+g^4+g^3+g+1
    0x4021,  // g^14+g^5+1
    0x8003,  // g^15+g+1
    0x1002b, // g^16+g^5+g^3+g+1
];

/// Degree of a GF(2) polynomial, `None` for the zero polynomial.
pub(crate) fn poly_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carryless multiplication of GF(2) polynomials.
pub(crate) fn poly_mul(a: u64, b: u64) -> u64 {
    debug_assert!(poly_degree(a).unwrap_or(0) + poly_degree(b).unwrap_or(0) < 64);
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `a` modulo `m` over GF(2).
pub(crate) fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m).expect("zero modulus");
    while let Some(da) = poly_degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// Exhaustive trial division: no factor of degree 1..=deg/2 means irreducible.
pub fn poly_is_irreducible(p: u64) -> bool {
    let deg = match poly_degree(p) {
        Some(0) | None => return false,
        Some(d) => d,
    };
    if deg == 1 {
        return true;
    }
    for q in 2..(1u64 << (deg / 2 + 1)) {
        if poly_mod(p, q) == 0 {
            return false;
        }
    }
    true
}

/// An element of F_q in the polynomial basis of its [`FieldCtx`].
///
/// The tag `f` records which context the element belongs to; operations on
/// mixed contexts are a contract violation caught by debug assertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    bits: u16,
    f: u8,
}

impl FqElem {
    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    /// Sum of two elements of the same field; addition is coefficientwise
    /// XOR in every polynomial basis, so no context is needed.
    pub fn xor(self, other: FqElem) -> FqElem {
        debug_assert_eq!(self.f, other.f, "mixed field contexts");
        FqElem {
            bits: self.bits ^ other.bits,
            f: self.f,
        }
    }
}

impl fmt::Display for FqElem {
    /// Renders as a polynomial in `g` with descending exponents, e.g. `g^2+g+1`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(out, "0");
        }
        let mut first = true;
        for i in (0..16).rev() {
            if self.bits >> i & 1 == 1 {
                if !first {
                    write!(out, "+")?;
                }
                match i {
                    0 => write!(out, "1")?,
                    1 => write!(out, "g")?,
                    _ => write!(out, "g^{i}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

/// The field F_q = F₂[g]/(modulus), q = 2^f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    f: u32,
    modulus: u32,
    a0_bits: u16,
}

impl FieldCtx {
    /// Builds the field of degree `f` with the default (smallest irreducible)
    /// modulus.
    pub fn new(f: u32) -> Result<Self> {
        if f == 0 || f > MAX_F {
            return Err(Error::DegreeMismatch(format!(
                "residue degree must be in 1..={MAX_F}, got {f}"
            )));
        }
        Self::with_modulus(f, DEFAULT_MODULI[(f - 1) as usize])
    }

    /// Builds the field of degree `f` with an explicit modulus polynomial.
    pub fn with_modulus(f: u32, modulus: u32) -> Result<Self> {
        if f == 0 || f > MAX_F {
            return Err(Error::DegreeMismatch(format!(
                "residue degree must be in 1..={MAX_F}, got {f}"
            )));
        }
        if poly_degree(modulus as u64) != Some(f) {
            return Err(Error::DegreeMismatch(format!(
                "modulus {modulus:#x} does not have degree {f}"
            )));
        }
        if !poly_is_irreducible(modulus as u64) {
            return Err(Error::ReduciblePolynomial(format!("{modulus:#x}")));
        }
        let mut ctx = FieldCtx {
            f,
            modulus,
            a0_bits: 0,
        };
        // Smallest element with absolute trace 1; exists since the trace
        // form is surjective onto F₂.
        ctx.a0_bits = (0..1u32 << f)
            .find(|&b| {
                ctx.trace(FqElem {
                    bits: b as u16,
                    f: f as u8,
                })
            })
            .expect("trace form is surjective") as u16;
        Ok(ctx)
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field size q = 2^f.
    pub fn order(&self) -> u64 {
        1 << self.f
    }

    /// The distinguished unramified generator: the smallest element of F_q
    /// with trace 1. For odd f this is 1; for even f the constant 1 has
    /// trace 0 and a higher-degree element is selected.
    pub fn a0(&self) -> FqElem {
        FqElem {
            bits: self.a0_bits,
            f: self.f as u8,
        }
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    /// The class of the indeterminate g (reduces to 0 when f = 1).
    pub fn gen(&self) -> FqElem {
        self.elem_reduced(2)
    }

    /// Element from raw basis bits; bits at positions ≥ f must be clear.
    pub fn elem(&self, bits: u16) -> FqElem {
        assert!(
            (bits as u32) < (1u32 << self.f),
            "element bits {bits:#x} out of range for f={}",
            self.f
        );
        FqElem {
            bits,
            f: self.f as u8,
        }
    }

    /// Element from an arbitrary GF(2) polynomial, reduced mod the modulus.
    pub fn elem_reduced(&self, poly: u64) -> FqElem {
        FqElem {
            bits: poly_mod(poly, self.modulus as u64) as u16,
            f: self.f as u8,
        }
    }

    /// Iterator over all q elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(|b| FqElem {
            bits: b as u16,
            f: self.f as u8,
        })
    }

    fn check(&self, x: FqElem) {
        debug_assert_eq!(
            x.f as u32, self.f,
            "element of F_2^{} used in F_2^{}",
            x.f, self.f
        );
    }

    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        self.check(x);
        self.check(y);
        FqElem {
            bits: x.bits ^ y.bits,
            f: self.f as u8,
        }
    }

    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        self.check(x);
        self.check(y);
        self.elem_reduced(poly_mul(x.bits as u64, y.bits as u64))
    }

    pub fn square(&self, x: FqElem) -> FqElem {
        self.mul(x, x)
    }

    pub fn pow(&self, x: FqElem, e: u64) -> FqElem {
        let mut base = x;
        let mut e = e;
        let mut acc = self.one();
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, via x^(q-2).
    pub fn inv(&self, x: FqElem) -> Result<FqElem> {
        self.check(x);
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.order() - 2))
    }

    /// Absolute trace Tr_{F_q/F₂}(x) = Σ x^(2^i), i = 0..f.
    pub fn trace(&self, x: FqElem) -> bool {
        self.check(x);
        let mut acc = self.zero();
        let mut t = x;
        for _ in 0..self.f {
            acc = self.add(acc, t);
            t = self.square(t);
        }
        debug_assert!(acc.bits <= 1, "trace must land in the prime field");
        acc.bits == 1
    }

    /// Inverse of Frobenius: the unique square root x^(2^{f-1}).
    pub fn sqrt(&self, x: FqElem) -> FqElem {
        self.check(x);
        let mut t = x;
        for _ in 0..self.f - 1 {
            t = self.square(t);
        }
        t
    }

    /// Solves ℘(d) = d² + d = c over F_q by exhaustion; `None` iff Tr(c) = 1.
    pub fn wp_preimage(&self, c: FqElem) -> Option<FqElem> {
        self.check(c);
        self.elements().find(|&d| self.add(self.square(d), d) == c)
    }
}
