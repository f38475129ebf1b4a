//! Skew polynomial rings `L[x; sigma]` with zero derivation.
//!
//! Coefficients live in an ambient field `L = F_{p^m}` and the twist is a
//! Frobenius power `sigma` of order `n`, so the fixed field `K = F_{p^e}`
//! (with `m = e n`) is the centre's coefficient field: the centre is
//! `K[x^n]`.  Multiplication obeys `x a = sigma(a) x`; degrees add, and both
//! one-sided Euclidean divisions are available, which is all the structure
//! the quotient and code layers need.

use crate::error::{Error, Result};
use crate::gf::{Automorphism, FieldCtx};
use crate::linalg::{self, Field};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct SkewPoly {
    coeffs: Vec<u64>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        SkewPoly { coeffs: vec![1] }
    }

    pub fn constant(c: u64) -> Self {
        SkewPoly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: u64, k: usize) -> Self {
        if c == 0 {
            return SkewPoly::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        SkewPoly { coeffs }
    }

    pub fn x() -> Self {
        SkewPoly::monomial(1, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

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
}

/// Ring context: ambient field plus the twisting automorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewRing {
    field: FieldCtx,
    sigma: Automorphism,
    n: usize,
    e: usize,
}

impl SkewRing {
    pub fn new(field: FieldCtx, sigma: Automorphism) -> SkewRing {
        let m = field.m();
        let e = sigma.fixed_degree(m);
        let n = m / e;
        SkewRing { field, sigma, n, e }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn sigma(&self) -> Automorphism {
        self.sigma
    }

    /// Order of the twist; the degree of `L` over the fixed field.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree over the prime field of the fixed field `K`.
    pub fn e(&self) -> usize {
        self.e
    }

    /// `|K| = p^e`.
    pub fn centre_order(&self) -> u64 {
        self.field.p().pow(self.e as u32)
    }

    /// Elements of the fixed field `K`, increasing encoding.
    pub fn centre_elements(&self) -> Vec<u64> {
        self.field.subfield_elements(self.sigma.exp)
    }

    /// `sigma^i` applied to a coefficient.
    pub fn twist(&self, a: u64, i: usize) -> u64 {
        let m = self.field.m();
        self.field.frobenius_exp(a, (self.sigma.exp % m) * (i % m) % m)
    }

    fn twist_inv(&self, a: u64, i: usize) -> u64 {
        let m = self.field.m();
        let fwd = (self.sigma.exp % m) * (i % m) % m;
        self.field.frobenius_exp(a, (m - fwd) % m)
    }

    pub fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add(a.coeff(i), b.coeff(i)));
        }
        SkewPoly::from_coeffs(out)
    }

    pub fn neg(&self, a: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.add(a, &self.neg(b))
    }

    /// Product with the commutation rule `x a = sigma(a) x`:
    /// the `x^(i+j)` contribution of `a_i x^i * b_j x^j` is `a_i sigma^i(b_j)`.
    pub fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        if a.is_zero() || b.is_zero() {
            return SkewPoly::zero();
        }
        let mut out = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let term = self.field.mul(ai, self.twist(bj, i));
                out[i + j] = self.field.add(out[i + j], term);
            }
        }
        SkewPoly::from_coeffs(out)
    }

    /// Left scalar multiple `c * f` (coefficients scale in place).
    pub fn scale(&self, c: u64, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(f.coeffs.iter().map(|&a| self.field.mul(c, a)).collect())
    }

    /// Right scalar multiple `f * c`; coefficient `i` picks up `sigma^i(c)`.
    pub fn scale_right(&self, f: &SkewPoly, c: u64) -> SkewPoly {
        SkewPoly::from_coeffs(
            f.coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| self.field.mul(a, self.twist(c, i)))
                .collect(),
        )
    }

    /// Monic normalisation by a left unit: `lc(f)^(-1) * f`.
    pub fn monic(&self, f: &SkewPoly) -> SkewPoly {
        match f.leading() {
            None | Some(1) => f.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("nonzero leading"), f),
        }
    }

    /// Right division: `a = q * b + r` with `deg r < deg b`.
    pub fn right_divmod(&self, a: &SkewPoly, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let lb = b.leading().unwrap();
        let mut rem = a.coeffs.clone();
        let mut quo = vec![0u64; a.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let d = rem.len() - 1;
            let lead = rem[d];
            if lead != 0 {
                let shift = d - db;
                // (c x^shift)(lb x^db) has leading coefficient c * sigma^shift(lb)
                let c = self.field.div(lead, self.twist(lb, shift))?;
                quo[shift] = c;
                for j in 0..=db {
                    let sub = self.field.mul(c, self.twist(b.coeff(j), shift));
                    rem[shift + j] = self.field.sub(rem[shift + j], sub);
                }
            }
            rem.pop();
        }
        Ok((SkewPoly::from_coeffs(quo), SkewPoly::from_coeffs(rem)))
    }

    pub fn rem_right(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divmod(a, b)?.1)
    }

    pub fn divides_right(&self, b: &SkewPoly, a: &SkewPoly) -> Result<bool> {
        Ok(self.rem_right(a, b)?.is_zero())
    }

    /// Left division: `a = b * q + r` with `deg r < deg b`.
    pub fn left_divmod(&self, a: &SkewPoly, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let lb = b.leading().unwrap();
        let mut rem = a.coeffs.clone();
        let mut quo = vec![0u64; a.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let d = rem.len() - 1;
            let lead = rem[d];
            if lead != 0 {
                let shift = d - db;
                // (lb x^db)(c x^shift) has leading coefficient lb * sigma^db(c)
                let c = self.twist_inv(self.field.div(lead, lb)?, db);
                quo[shift] = c;
                for j in 0..=db {
                    let sub = self.field.mul(b.coeff(j), self.twist(c, j));
                    rem[shift + j] = self.field.sub(rem[shift + j], sub);
                }
            }
            rem.pop();
        }
        Ok((SkewPoly::from_coeffs(quo), SkewPoly::from_coeffs(rem)))
    }

    /// Greatest common right divisor, monic.  `gcrd(0, 0)` is an error.
    pub fn gcrd(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let r = self.rem_right(&r0, &r1)?;
            r0 = r1;
            r1 = r;
        }
        Ok(self.monic(&r0))
    }

    /// Extended gcrd: monic `g` plus `(u, v)` with `u*a + v*b = g`.
    pub fn extended_gcrd(
        &self,
        a: &SkewPoly,
        b: &SkewPoly,
    ) -> Result<(SkewPoly, SkewPoly, SkewPoly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut r0 = a.clone();
        let mut u0 = SkewPoly::one();
        let mut v0 = SkewPoly::zero();
        let mut r1 = b.clone();
        let mut u1 = SkewPoly::zero();
        let mut v1 = SkewPoly::one();
        while !r1.is_zero() {
            let (q, r) = self.right_divmod(&r0, &r1)?;
            let u = self.sub(&u0, &self.mul(&q, &u1));
            let v = self.sub(&v0, &self.mul(&q, &v1));
            r0 = r1;
            u0 = u1;
            v0 = v1;
            r1 = r;
            u1 = u;
            v1 = v;
        }
        let lc = r0.leading().unwrap();
        let s = self.field.inv(lc)?;
        Ok((self.scale(s, &r0), self.scale(s, &u0), self.scale(s, &v0)))
    }

    /// Companion matrix of a monic `f` of degree `s`: ones on the first
    /// subdiagonal and `-f_i` down the last column.
    pub fn companion(&self, f: &SkewPoly) -> Result<Mat> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let s = f.deg().unwrap();
        if s == 0 {
            return Err(Error::InvalidParameter("constant polynomial".into()));
        }
        let mut c = Mat::zero(s);
        for i in 1..s {
            c.set(i, i - 1, 1);
        }
        for i in 0..s {
            c.set(i, s - 1, self.field.neg(f.coeff(i)));
        }
        Ok(c)
    }

    /// Matrix of `v -> x^n v mod_r f` on coefficient vectors:
    /// `C_f * C_f^sigma * ... * C_f^(sigma^(n-1))`.
    pub fn power_matrix(&self, f: &SkewPoly) -> Result<Mat> {
        let c = self.companion(f)?;
        let mut acc = c.clone();
        let mut cur = c;
        for _ in 1..self.n {
            cur = cur.map(|a| self.twist(a, 1));
            acc = acc.mul(&self.field, &cur);
        }
        Ok(acc)
    }

    /// Minimal central left multiple of a monic `f`: the least degree monic
    /// `F` in the centre `K[y]` (with `y = x^n`) such that `F(x^n)` is
    /// right-divisible by `f`.  Computed as the minimal polynomial of the
    /// power matrix; every coefficient must land in `K`, anything else
    /// indicates an arithmetic bug and errors out.
    pub fn mclm(&self, f: &SkewPoly) -> Result<Poly> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if f.deg() == Some(0) {
            // a unit generates the whole ring; the least monic central
            // multiple is 1 itself
            return Ok(Poly::one());
        }
        let a = self.power_matrix(f)?;
        let mp = a.min_poly(&self.field)?;
        for &c in mp.coeffs() {
            if self.field.apply(self.sigma, c) != c {
                return Err(Error::CoefficientOutsideSubfield(c));
            }
        }
        Ok(mp)
    }

    /// Reference implementation of [`SkewRing::mclm`] by exhaustive search:
    /// monic centre polynomials of degree 1, 2, ... are enumerated in
    /// increasing coefficient order until one expands to a right multiple of
    /// `f`.  Only usable at desk scale; kept for cross-checking.
    pub fn mclm_reference(&self, f: &SkewPoly, max_deg: usize) -> Result<Poly> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if f.deg() == Some(0) {
            return Ok(Poly::one());
        }
        let centre = self.centre_elements();
        let qk = centre.len() as u128;
        for deg in 1..=max_deg {
            let total = qk.pow(deg as u32);
            for idx in 0..total {
                let mut coeffs = Vec::with_capacity(deg + 1);
                let mut x = idx;
                for _ in 0..deg {
                    coeffs.push(centre[(x % qk) as usize]);
                    x /= qk;
                }
                coeffs.push(1);
                let cand = Poly::from_coeffs(coeffs);
                let expanded = self.central_expand(&cand);
                if self.rem_right(&expanded, f)?.is_zero() {
                    return Ok(cand);
                }
            }
        }
        Err(Error::BudgetExhausted { searched: 0 })
    }

    /// Is `f` irreducible?  Equivalent to: its minimal central left multiple
    /// is irreducible in `K[y]` and has the same degree as `f`.
    pub fn is_irreducible(&self, f: &SkewPoly) -> Result<bool> {
        let mp = self.mclm(f)?;
        if mp.deg() != f.deg() {
            return Ok(false);
        }
        mp.is_irreducible_over(&self.field, self.e)
    }

    /// Expands a centre polynomial `F(y)` to the skew polynomial `F(x^n)`.
    pub fn central_expand(&self, cf: &Poly) -> SkewPoly {
        if cf.is_zero() {
            return SkewPoly::zero();
        }
        let d = cf.deg().unwrap();
        let mut coeffs = vec![0u64; d * self.n + 1];
        for (j, &c) in cf.coeffs().iter().enumerate() {
            coeffs[j * self.n] = c;
        }
        SkewPoly::from_coeffs(coeffs)
    }

    /// First monic degree-`s` right divisor of `F(x^n)` in the deterministic
    /// coefficient-tuple order, where `s = deg F` and `F` is irreducible in
    /// `K[y]`.  The budget caps the number of candidates tried.
    pub fn find_irreducible_divisor(&self, cf: &Poly, budget: u64) -> Result<SkewPoly> {
        if !cf.is_monic() {
            return Err(Error::NotMonic);
        }
        if !cf.is_irreducible_over(&self.field, self.e)? {
            return Err(Error::InvalidParameter(
                "divisor search needs an irreducible centre polynomial".into(),
            ));
        }
        let s = cf.deg().unwrap();
        let target = self.central_expand(cf);
        let ql = self.field.q() as u128;
        let total = ql.pow(s as u32);
        let cap = total.min(budget as u128);
        let mut idx: u128 = 0;
        while idx < cap {
            let mut coeffs = Vec::with_capacity(s + 1);
            let mut x = idx;
            for _ in 0..s {
                coeffs.push((x % ql) as u64);
                x /= ql;
            }
            coeffs.push(1);
            let cand = SkewPoly::from_coeffs(coeffs);
            if self.rem_right(&target, &cand)?.is_zero() {
                return Ok(cand);
            }
            idx += 1;
        }
        Err(Error::BudgetExhausted { searched: cap as u64 })
    }

    /// Canonical text: `p,e,n,sigma_exp;c0,c1,...`.
    pub fn poly_text(&self, f: &SkewPoly) -> String {
        let coeffs = if f.is_zero() {
            "0".to_string()
        } else {
            f.coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{},{},{},{};{}",
            self.field.p(),
            self.e,
            self.n,
            self.sigma.exp % self.field.m(),
            coeffs
        )
    }

    /// Parses the canonical text, checking the header against this ring.
    pub fn parse_poly_text(&self, text: &str) -> Result<SkewPoly> {
        let (header, body) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse("missing ';' separator".into()))?;
        let parts: Vec<u64> = header
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad header field {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.len() != 4 {
            return Err(Error::Parse("header must be p,e,n,sigma_exp".into()));
        }
        let expect = [
            self.field.p(),
            self.e as u64,
            self.n as u64,
            (self.sigma.exp % self.field.m()) as u64,
        ];
        if parts != expect {
            return Err(Error::ContextMismatch(format!(
                "header {parts:?} does not match ring {expect:?}"
            )));
        }
        let coeffs: Vec<u64> = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(&bad) = coeffs.iter().find(|&&c| !self.field.contains(c)) {
            return Err(Error::ElementOutOfRange(bad));
        }
        Ok(SkewPoly::from_coeffs(coeffs))
    }
}

/// Square matrix over the ambient field, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    size: usize,
    entries: Vec<u64>,
}

impl Mat {
    pub fn zero(size: usize) -> Self {
        Mat {
            size,
            entries: vec![0; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Mat::zero(size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.size + j] = v;
    }

    pub fn map(&self, f: impl Fn(u64) -> u64) -> Mat {
        Mat {
            size: self.size,
            entries: self.entries.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn mul(&self, field: &FieldCtx, other: &Mat) -> Mat {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, field: &FieldCtx, v: &[u64]) -> Vec<u64> {
        let n = self.size;
        let mut out = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                out[i] = field.add(out[i], field.mul(self.get(i, j), v[j]));
            }
        }
        out
    }

    /// Minimal polynomial via Krylov sequences: for each seed vector the
    /// first linear dependency yields a local annihilator, and the answer is
    /// the lcm of the local ones.
    pub fn min_poly(&self, field: &FieldCtx) -> Result<Poly> {
        let s = self.size;
        let amb = linalg::Ambient(field);
        let mut result = Poly::one();
        for seed in 0..s {
            // rows: [vector | combination], pivots only in the vector part
            let mut rows: Vec<(Vec<u64>, Vec<u64>, usize)> = Vec::new();
            let mut vec_part = vec![0u64; s];
            vec_part[seed] = 1;
            let mut combo = vec![1u64];
            loop {
                // reduce against stored rows
                let mut v = vec_part.clone();
                let mut c = combo.clone();
                for (rv, rc, piv) in &rows {
                    let coef = v[*piv];
                    if coef != 0 {
                        for j in 0..s {
                            v[j] = field.sub(v[j], field.mul(coef, rv[j]));
                        }
                        while c.len() < rc.len() {
                            c.push(0);
                        }
                        for (j, &rcj) in rc.iter().enumerate() {
                            c[j] = field.sub(c[j], field.mul(coef, rcj));
                        }
                    }
                }
                match v.iter().position(|&a| a != 0) {
                    None => {
                        let local = Poly::from_coeffs(c).make_monic(field);
                        result = result.lcm(field, &local)?;
                        break;
                    }
                    Some(piv) => {
                        let inv = amb.inv(&v[piv]);
                        let v: Vec<u64> = v.iter().map(|&a| field.mul(a, inv)).collect();
                        let c: Vec<u64> = c.iter().map(|&a| field.mul(a, inv)).collect();
                        // next Krylov vector continues from the reduced row
                        vec_part = self.apply(field, &v);
                        combo = {
                            let mut shifted = vec![0u64];
                            shifted.extend_from_slice(&c);
                            shifted
                        };
                        rows.push((v, c, piv));
                    }
                }
            }
            if result.deg() == Some(s) {
                break;
            }
        }
        Ok(result)
    }
}
