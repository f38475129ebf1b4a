//! Ordinary (commutative) dense polynomials over a [`FieldCtx`].
//!
//! Coefficients are field encodings, constant term first, with no trailing
//! zeros; the zero polynomial is the empty vector.  These polynomials carry
//! the centre variable `y` of the skew theory: moduli, minimal polynomials,
//! residues mod an irreducible.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;

#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: u64) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * y^k`.
    pub fn monomial(c: u64, k: usize) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient list padded with zeros up to length `len`.
    pub fn padded_coeffs(&self, len: usize) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        while v.len() < len {
            v.push(0);
        }
        v
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn add(&self, field: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(field.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, field: &FieldCtx) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn sub(&self, field: &FieldCtx, other: &Poly) -> Poly {
        self.add(field, &other.neg(field))
    }

    pub fn mul(&self, field: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, field: &FieldCtx, c: u64) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn make_monic(&self, field: &FieldCtx) -> Poly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(field, field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn divmod(&self, field: &FieldCtx, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor.deg().ok_or(Error::DivisionByZero)?;
        let lb = divisor.leading().unwrap();
        let lb_inv = field.inv(lb)?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let d = rem.len() - 1;
            let lead = rem[d];
            if lead != 0 {
                let c = field.mul(lead, lb_inv);
                quo[d - db] = c;
                for j in 0..=db {
                    let idx = d - db + j;
                    rem[idx] = field.sub(rem[idx], field.mul(c, divisor.coeff(j)));
                }
            }
            rem.pop();
        }
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, field: &FieldCtx, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(field, divisor)?.1)
    }

    /// Monic gcd; `gcd(0, 0)` is an error.
    pub fn gcd(&self, field: &FieldCtx, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic(field))
    }

    /// Extended gcd: returns monic `g` and `(u, v)` with `u*a + v*b = g`.
    pub fn egcd(&self, field: &FieldCtx, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut r0 = self.clone();
        let mut u0 = Poly::one();
        let mut v0 = Poly::zero();
        let mut r1 = other.clone();
        let mut u1 = Poly::zero();
        let mut v1 = Poly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divmod(field, &r1)?;
            let u = u0.sub(field, &q.mul(field, &u1));
            let v = v0.sub(field, &q.mul(field, &v1));
            r0 = r1;
            u0 = u1;
            v0 = v1;
            r1 = r;
            u1 = u;
            v1 = v;
        }
        let lc = r0.leading().unwrap();
        let s = field.inv(lc)?;
        Ok((r0.scale(field, s), u0.scale(field, s), v0.scale(field, s)))
    }

    pub fn lcm(&self, field: &FieldCtx, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let g = self.gcd(field, other)?;
        let (q, r) = self.divmod(field, &g)?;
        debug_assert!(r.is_zero());
        Ok(q.mul(field, other).make_monic(field))
    }

    pub fn eval(&self, field: &FieldCtx, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, x), c);
        }
        acc
    }

    /// `self^e mod md` by square and multiply.
    pub fn pow_mod(&self, field: &FieldCtx, e: u128, md: &Poly) -> Result<Poly> {
        let mut acc = Poly::one().rem(field, md)?;
        let mut base = self.rem(field, md)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, md)?;
            }
            base = base.mul(field, &base).rem(field, md)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Do all coefficients lie in `F_{p^d}`?
    pub fn has_coeffs_in_subfield(&self, field: &FieldCtx, d: usize) -> bool {
        self.coeffs.iter().all(|&c| field.in_subfield(c, d))
    }

    /// Irreducibility over the subfield `F_{p^d}` (all coefficients must lie
    /// there).  Uses the standard Frobenius-power criterion: monic `f` of
    /// degree `s` is irreducible iff `y^(q^s) = y mod f` and
    /// `gcd(y^(q^(s/r)) - y, f) = 1` for every prime `r | s`, where `q = p^d`.
    pub fn is_irreducible_over(&self, field: &FieldCtx, d: usize) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.has_coeffs_in_subfield(field, d) {
            return Err(Error::CoefficientOutsideSubfield(
                *self
                    .coeffs
                    .iter()
                    .find(|&&c| !field.in_subfield(c, d))
                    .unwrap(),
            ));
        }
        let s = self.deg().unwrap();
        if s == 0 {
            return Ok(false);
        }
        if s == 1 {
            return Ok(true);
        }
        let f = self.make_monic(field);
        let qs = (field.p() as u128).pow(d as u32);
        let y = Poly::monomial(1, 1);
        // powers[k] = y^(qs^(k+1)) mod f
        let mut powers = Vec::with_capacity(s);
        let mut cur = y.pow_mod(field, qs, &f)?;
        powers.push(cur.clone());
        for _ in 1..s {
            cur = cur.pow_mod(field, qs, &f)?;
            powers.push(cur.clone());
        }
        if powers[s - 1] != y.rem(field, &f)? {
            return Ok(false);
        }
        for r in prime_divisors(s) {
            let w = powers[s / r - 1].sub(field, &y);
            let g = if w.is_zero() {
                f.clone()
            } else {
                w.gcd(field, &f)?
            };
            if g.deg() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least monic irreducible of degree `deg` with coefficients in
    /// `F_{p^d}`, ordered by the coefficient tuple (constant term varying
    /// fastest, subfield elements in increasing encoding).
    pub fn least_irreducible_over(field: &FieldCtx, d: usize, deg: usize) -> Result<Poly> {
        if deg == 0 {
            return Err(Error::InvalidParameter("degree must be positive".into()));
        }
        let sub = field.subfield_elements(d);
        let qd = sub.len() as u128;
        let total = qd.pow(deg as u32);
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut x = idx;
            for _ in 0..deg {
                coeffs.push(sub[(x % qd) as usize]);
                x /= qd;
            }
            coeffs.push(1);
            let f = Poly::from_coeffs(coeffs);
            if f.is_irreducible_over(field, d)? {
                return Ok(f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree");
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(text: &str) -> Result<Poly> {
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
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
