//! Finite fields `F_{p^m}` in a fixed power basis.
//!
//! A field element is an integer `0..p^m`; its little-endian base-`p` digits
//! are the coordinates with respect to the power basis `1, t, t^2, ...` of a
//! root `t` of the modulus.  All subfields of interest live inside one ambient
//! field, and membership in `F_{p^d}` is decided by Frobenius fixedness
//! (`a^(p^d) == a`) rather than by re-encoding.
//!
//! Multiplication and inversion go through discrete log tables built once per
//! context, so the supported field orders are deliberately capped at desk
//! scale.

use crate::error::{Error, Result};

/// Largest supported field order (log/exp tables are materialised in full).
pub const MAX_FIELD_ORDER: u128 = 1 << 20;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn gcd_usize(a: usize, b: usize) -> usize {
    gcd(a as u64, b as u64) as usize
}

/// `base^exp mod md` for u64 inputs without overflow (md <= 2^32 in practice).
fn pow_mod_u64(base: u64, exp: u64, md: u64) -> u64 {
    if md == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut b: u128 = (base % md) as u128;
    let mut e = exp;
    let m = md as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A power of the absolute Frobenius `x -> x^(p^exp)`.
///
/// The exponent is kept as given; contexts reduce it modulo the field degree
/// where it matters.  On `F_{p^m}` the map fixes exactly `F_{p^gcd(exp, m)}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Automorphism {
    pub exp: usize,
}

impl Automorphism {
    pub fn new(exp: usize) -> Self {
        Automorphism { exp }
    }

    pub fn identity() -> Self {
        Automorphism { exp: 0 }
    }

    pub fn reduced(self, m: usize) -> usize {
        self.exp % m
    }

    pub fn compose(self, other: Self, m: usize) -> Self {
        Automorphism::new((self.exp + other.exp) % m)
    }

    pub fn inverse(self, m: usize) -> Self {
        Automorphism::new((m - self.exp % m) % m)
    }

    /// Multiplicative order as an automorphism of `F_{p^m}`.
    pub fn order_in(self, m: usize) -> usize {
        m / self.fixed_degree(m)
    }

    /// Degree over the prime field of the fixed subfield (`gcd(exp, m)`,
    /// with exponent 0 fixing everything).
    pub fn fixed_degree(self, m: usize) -> usize {
        gcd_usize(self.exp % m, m) // gcd(0, m) == m
    }
}

/// Arithmetic context for `F_{p^m}`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    m: usize,
    q: u64,
    /// Monic degree-`m` modulus over `F_p`, constant first (length `m + 1`).
    modulus: Vec<u64>,
    exp_table: Vec<u64>,
    log_table: Vec<u64>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(p={}, m={}, modulus={:?})", self.p, self.m, self.modulus)
    }
}

impl FieldCtx {
    /// Builds `F_{p^m}` with the lexicographically least monic irreducible
    /// modulus of degree `m` over `F_p` (ordered by the integer encoding of
    /// the coefficient vector).  For `m == 1` the modulus is `y`.
    pub fn new(p: u64, m: usize) -> Result<FieldCtx> {
        let modulus = Self::default_modulus(p, m)?;
        Self::with_modulus(p, m, modulus)
    }

    /// Builds `F_{p^m}` with a caller-supplied monic irreducible modulus,
    /// given constant-first over `F_p`.
    pub fn with_modulus(p: u64, m: usize, modulus: Vec<u64>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("field degree must be positive".into()));
        }
        let q128 = (p as u128).checked_pow(m as u32).ok_or(Error::FieldTooLarge(u128::MAX))?;
        if q128 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q128));
        }
        let q = q128 as u64;

        if modulus.len() != m + 1 || modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus {
                expected: m,
                got: format!("{modulus:?}"),
            });
        }
        if m > 1 {
            let prime = FieldCtx::prime_field(p)?;
            let poly = crate::poly::Poly::from_coeffs(modulus.clone());
            if !poly.is_irreducible_over(&prime, 1)? {
                return Err(Error::ReducibleModulus);
            }
        }

        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            exp_table: Vec::new(),
            log_table: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn prime_field(p: u64) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut ctx = FieldCtx {
            p,
            m: 1,
            q: p,
            modulus: vec![0, 1],
            exp_table: Vec::new(),
            log_table: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn default_modulus(p: u64, m: usize) -> Result<Vec<u64>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("field degree must be positive".into()));
        }
        if m == 1 {
            return Ok(vec![0, 1]);
        }
        let q128 = (p as u128).checked_pow(m as u32).ok_or(Error::FieldTooLarge(u128::MAX))?;
        if q128 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q128));
        }
        let prime = FieldCtx::prime_field(p)?;
        let count = q128 as u64;
        for k in 0..count {
            let mut coeffs: Vec<u64> = prime_digits(k, p, m);
            coeffs.push(1);
            let poly = crate::poly::Poly::from_coeffs(coeffs.clone());
            if poly.is_irreducible_over(&prime, 1)? {
                return Ok(coeffs);
            }
        }
        Err(Error::ReducibleModulus) // unreachable: irreducibles exist for every degree
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.exp_table = vec![1];
            self.log_table = vec![u64::MAX, 0];
            return;
        }
        let factors = prime_factors(q - 1);
        let mut gen = 0;
        for cand in 2..q {
            let full_order = factors
                .iter()
                .all(|&r| self.slow_pow(cand, (q - 1) / r) != 1);
            if full_order {
                gen = cand;
                break;
            }
        }
        assert!(gen != 0, "no generator found (field construction bug)");
        let mut exp_table = Vec::with_capacity((q - 1) as usize);
        let mut log_table = vec![u64::MAX; q as usize];
        let mut acc = 1u64;
        for i in 0..(q - 1) {
            exp_table.push(acc);
            log_table[acc as usize] = i;
            acc = self.slow_mul(acc, gen);
        }
        self.exp_table = exp_table;
        self.log_table = log_table;
    }

    /// Polynomial-basis multiplication; only used while building the tables.
    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let m = self.m;
        let da = prime_digits(a, p, m);
        let db = prime_digits(b, p, m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic modulus
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] % p;
                prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
            }
        }
        let mut enc = 0u64;
        for i in (0..m).rev() {
            enc = enc * p + prod[i];
        }
        enc
    }

    fn slow_pow(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.q
    }

    fn check(&self, a: u64) -> u64 {
        debug_assert!(a < self.q, "element {a} out of range for q={}", self.q);
        a
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        let p = self.p;
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut x, mut y) = (a, b);
        for _ in 0..self.m {
            let d = (x % p + y % p) % p;
            out += d * pw;
            pw *= p;
            x /= p;
            y /= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.check(a);
        let p = self.p;
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut x = a;
        for _ in 0..self.m {
            let d = (p - x % p) % p;
            out += d * pw;
            pw *= p;
            x /= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let i = (self.log_table[a as usize] + self.log_table[b as usize]) % n;
        self.exp_table[i as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        self.check(a);
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        let i = (n - self.log_table[a as usize]) % n;
        Ok(self.exp_table[i as usize])
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow(&self, a: u64, e: u128) -> u64 {
        self.check(a);
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u128;
        let i = (self.log_table[a as usize] as u128) * (e % n) % n;
        self.exp_table[i as usize]
    }

    /// Applies `x -> x^(p^i)`.
    pub fn frobenius_exp(&self, a: u64, i: usize) -> u64 {
        self.check(a);
        if a == 0 {
            return 0;
        }
        let i = i % self.m;
        let n = self.q - 1;
        let e = pow_mod_u64(self.p, i as u64, n);
        let idx = (self.log_table[a as usize] as u128) * (e as u128) % (n as u128);
        self.exp_table[idx as usize]
    }

    pub fn apply(&self, aut: Automorphism, a: u64) -> u64 {
        self.frobenius_exp(a, aut.exp)
    }

    /// Field norm from `F_{p^m}` down to `F_{p^d}` (requires `d | m`):
    /// `a^((p^m - 1)/(p^d - 1))`, with `norm(0) = 0`.
    pub fn norm_to(&self, a: u64, d: usize) -> Result<u64> {
        self.check(a);
        if d == 0 || self.m % d != 0 {
            return Err(Error::NotADivisor(d, self.m));
        }
        if a == 0 {
            return Ok(0);
        }
        let pd = (self.p as u128).pow(d as u32) - 1;
        let e = ((self.q as u128) - 1) / pd;
        Ok(self.pow(a, e))
    }

    /// Frobenius-fixedness test for membership in `F_{p^d}`.
    pub fn in_subfield(&self, a: u64, d: usize) -> bool {
        self.frobenius_exp(a, d) == a
    }

    /// All elements of the subfield `F_{p^gcd(d, m)}`, in increasing encoding.
    pub fn subfield_elements(&self, d: usize) -> Vec<u64> {
        (0..self.q).filter(|&a| self.in_subfield(a, d)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        prime_digits(a, self.p, self.m)
    }

    pub fn encode(&self, digits: &[u64]) -> u64 {
        let mut enc = 0u64;
        for (i, &d) in digits.iter().enumerate().rev() {
            debug_assert!(d < self.p && i < self.m);
            enc = enc * self.p + d;
        }
        enc
    }

    /// `-1` as a field element.
    pub fn minus_one(&self) -> u64 {
        self.neg(1)
    }

    /// `(-1)^k` as a field element.
    pub fn sign(&self, k: usize) -> u64 {
        if k % 2 == 0 {
            1
        } else {
            self.minus_one()
        }
    }
}

fn prime_digits(a: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    let mut x = a;
    for _ in 0..m {
        out.push(x % p);
        x /= p;
    }
    out
}
