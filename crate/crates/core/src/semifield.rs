//! The `k = 1` specialization: nonassociative division-algebra
//! multiplications whose spread sets are the codes of [`crate::codes`].
//!
//! For an irreducible divisor `f` of `F(x^n)`, multiplication on the
//! residues of degree `< s` is `a * b = (A b) mod_r f`, where `A` is `a`
//! with the extra term `eta a_0^rho x^s` attached.  At `eta = 0` this is
//! the classical quotient-algebra product `ab mod_r f`; at `s = 1`,
//! `F = y - 1` it is Albert's twisted multiplication on the field itself.

use std::io::Write;

use crate::codes::{Code, Subspace};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::quotient::{MatrixRep, QuotientCtx};
use crate::skewpoly::SkewPoly;

/// `a b - eta a^{p^i} b^{p^j}` on the ambient field.  With `eta = 0` this
/// is plain field multiplication; otherwise it is a presemifield product
/// exactly when `eta` avoids a norm condition, which the exhaustive
/// checks below detect empirically.
pub fn twisted_field_mul(field: &FieldCtx, eta: u64, i: usize, j: usize, a: u64, b: u64) -> u64 {
    let twisted = field.mul(
        eta,
        field.mul(field.frobenius_exp(a, i), field.frobenius_exp(b, j)),
    );
    field.sub(field.mul(a, b), twisted)
}

/// Plain quotient-algebra product: the right remainder of `ab` by the
/// chosen irreducible divisor.
pub fn petit_mul(quo: &QuotientCtx, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
    let f = quo
        .divisor()
        .ok_or_else(|| Error::InvalidParameter("no irreducible divisor chosen".into()))?;
    let prod = quo.ring().mul(a, b);
    quo.ring().rem_right(&prod, f)
}

/// A `k = 1` code together with the module it acts on; the pair carries a
/// (pre)semifield multiplication on `q^{ns}` elements.
pub struct SemifieldCtx<'a> {
    code: Code<'a>,
}

impl<'a> SemifieldCtx<'a> {
    pub fn new(code: Code<'a>) -> Result<SemifieldCtx<'a>> {
        if code.k() != 1 {
            return Err(Error::InvalidParameter(format!(
                "semifield multiplication requires k = 1, got k = {}",
                code.k()
            )));
        }
        if code.quotient().divisor().is_none() {
            return Err(Error::InvalidParameter(
                "no irreducible divisor chosen".into(),
            ));
        }
        Ok(SemifieldCtx { code })
    }

    pub fn code(&self) -> &Code<'a> {
        &self.code
    }

    pub fn quotient(&self) -> &QuotientCtx {
        self.code.quotient()
    }

    pub fn order(&self) -> u128 {
        self.code.size()
    }

    /// Whether the sufficient condition for division holds.
    pub fn condition(&self) -> bool {
        self.code.condition()
    }

    /// Decodes an index into the degree `< s` residue it names.
    pub fn element(&self, idx: u128) -> SkewPoly {
        let q = self.quotient().field().q() as u128;
        let s = self.quotient().s();
        let mut coeffs = Vec::with_capacity(s);
        let mut x = idx;
        for _ in 0..s {
            coeffs.push((x % q) as u64);
            x /= q;
        }
        SkewPoly::from_coeffs(coeffs)
    }

    /// The product: `a`'s coefficient tuple names a code element, which
    /// multiplies `b` and is then reduced to degree `< s`.
    pub fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
        let s = self.quotient().s();
        for op in [a, b] {
            if op.deg().is_some_and(|d| d >= s) {
                return Err(Error::InvalidParameter(format!(
                    "operand degree must stay below {s}"
                )));
            }
        }
        let multiplier = self.code.element(&a.padded_coeffs(s))?;
        let f = self.quotient().divisor().expect("checked at construction");
        let prod = self.quotient().ring().mul(&multiplier, b);
        self.quotient().ring().rem_right(&prod, f)
    }

    /// The code elements as a prime-field subspace of the quotient ring.
    pub fn spread_subspace(&self) -> Subspace {
        self.code.subspace()
    }

    /// Matrices of every code element over the residue field, in the basis
    /// `1, x, ..., x^{n-1}`; defined for `n = s`.
    pub fn spread_matrices(&self) -> Result<Vec<MatrixRep>> {
        let quo = self.quotient();
        if quo.n() != quo.s() {
            return Err(Error::InvalidParameter(format!(
                "square spread displays need n = s, got n = {}, s = {}",
                quo.n(),
                quo.s()
            )));
        }
        let basis = quo.vf_basis()?;
        for (i, b) in basis.iter().enumerate() {
            if *b != SkewPoly::monomial(1, i) {
                return Err(Error::ContextMismatch(
                    "module basis is not 1, x, x^2, ...".into(),
                ));
            }
        }
        (0..self.order())
            .map(|idx| quo.matrix_rep(&self.code.element_by_index(idx), &basis))
            .collect()
    }

    /// CSV rows `a,b,product` over all index pairs.
    pub fn write_mul_table_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "a,b,product")?;
        let order = self.order();
        for a_idx in 0..order {
            let a = self.element(a_idx);
            for b_idx in 0..order {
                let b = self.element(b_idx);
                let prod = self.mul(&a, &b)?;
                writeln!(out, "{a_idx},{b_idx},{}", self.encode(&prod))?;
            }
        }
        Ok(())
    }

    fn encode(&self, el: &SkewPoly) -> u128 {
        let q = self.quotient().field().q() as u128;
        let s = self.quotient().s();
        el.padded_coeffs(s)
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * q + c as u128)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemifieldReport {
    pub pairs_checked: u64,
    pub counterexample: Option<(u128, u128)>,
}

impl SemifieldReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively multiplies all nonzero pairs looking for zero divisors.
/// In finite dimension their absence is equivalent to unique solvability
/// of `ax = b` and `ya = b`, i.e. to the division property.
pub fn verify_semifield(ctx: &SemifieldCtx<'_>, budget: u64) -> Result<SemifieldReport> {
    let order = ctx.order();
    let nonzero = order - 1;
    if nonzero * nonzero > budget as u128 {
        return Err(Error::BudgetExhausted { searched: 0 });
    }
    let mut pairs_checked = 0;
    for a_idx in 1..order {
        let a = ctx.element(a_idx);
        for b_idx in 1..order {
            let b = ctx.element(b_idx);
            pairs_checked += 1;
            if ctx.mul(&a, &b)?.is_zero() {
                return Ok(SemifieldReport {
                    pairs_checked,
                    counterexample: Some((a_idx, b_idx)),
                });
            }
        }
    }
    Ok(SemifieldReport {
        pairs_checked,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Automorphism;
    use crate::poly::Poly;
    use crate::skewpoly::SkewRing;

    fn quo_with_divisor(p: u64, m: usize, modulus: Vec<u64>) -> QuotientCtx {
        let ring = SkewRing::new(FieldCtx::new(p, m).unwrap(), Automorphism::new(1));
        let mut quo = QuotientCtx::new(ring, Poly::from_coeffs(modulus)).unwrap();
        quo.find_divisor(1 << 16).unwrap();
        quo
    }

    fn petit_ctx(quo: &QuotientCtx) -> SemifieldCtx<'_> {
        let code = Code::new(quo, 1, 0, Automorphism::new(0), None).unwrap();
        SemifieldCtx::new(code).unwrap()
    }

    #[test]
    fn construction_requires_k1_and_divisor() {
        let ring = SkewRing::new(FieldCtx::new(3, 2).unwrap(), Automorphism::new(1));
        let quo = QuotientCtx::new(ring, Poly::from_coeffs(vec![1, 0, 1])).unwrap();
        // no divisor chosen yet
        let code = Code::new(&quo, 1, 0, Automorphism::new(0), None).unwrap();
        assert!(SemifieldCtx::new(code).is_err());
    }

    #[test]
    fn petit_identity_and_monomial_square() {
        let quo = quo_with_divisor(3, 2, vec![1, 0, 1]);
        let ctx = petit_ctx(&quo);
        let one = SkewPoly::one();
        for idx in 0..ctx.order() {
            let b = ctx.element(idx);
            assert_eq!(ctx.mul(&one, &b).unwrap(), b);
            assert_eq!(ctx.mul(&b, &one).unwrap(), b);
        }
        // f = x^2 + t, so x * x = -t = 2t
        let beta = quo.field().neg(3);
        assert_eq!(
            ctx.mul(&SkewPoly::x(), &SkewPoly::x()).unwrap(),
            SkewPoly::constant(beta)
        );
        // the same product through the free function
        assert_eq!(
            petit_mul(&quo, &SkewPoly::x(), &SkewPoly::x()).unwrap(),
            SkewPoly::constant(beta)
        );
    }

    #[test]
    fn petit_has_no_zero_divisors_at_q2() {
        let quo = quo_with_divisor(2, 2, vec![1, 1, 1]);
        let ctx = petit_ctx(&quo);
        let report = verify_semifield(&ctx, 1 << 20).unwrap();
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 225);
    }

    #[test]
    fn twisted_code_divides_when_condition_holds() {
        let quo = quo_with_divisor(3, 2, vec![1, 0, 1]);
        let code = Code::new(&quo, 1, 4, Automorphism::new(1), None).unwrap();
        let ctx = SemifieldCtx::new(code).unwrap();
        assert!(ctx.condition());
        assert!(verify_semifield(&ctx, 1 << 20).unwrap().passed());
    }

    #[test]
    fn broken_eta_yields_a_counterexample() {
        // eta = t has t^4 = 1, and a zero divisor indeed appears
        let quo = quo_with_divisor(3, 2, vec![1, 0, 1]);
        let code = Code::new(&quo, 1, 3, Automorphism::new(1), None).unwrap();
        let ctx = SemifieldCtx::new(code).unwrap();
        assert!(!ctx.condition());
        let report = verify_semifield(&ctx, 1 << 20).unwrap();
        let (a_idx, b_idx) = report.counterexample.expect("zero divisor exists");
        let prod = ctx.mul(&ctx.element(a_idx), &ctx.element(b_idx)).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn budget_is_enforced() {
        let quo = quo_with_divisor(2, 2, vec![1, 1, 1]);
        let ctx = petit_ctx(&quo);
        assert!(matches!(
            verify_semifield(&ctx, 10),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn twisted_field_mul_over_f9() {
        let field = FieldCtx::new(3, 2).unwrap();
        // eta = 0 is the field product
        for a in field.elements() {
            for b in field.elements() {
                assert_eq!(twisted_field_mul(&field, 0, 0, 1, a, b), field.mul(a, b));
            }
        }
        // eta = 1 + t has eta^4 != 1: no zero divisors among 80 x 80 pairs
        let eta = 4;
        assert_ne!(field.pow(eta, 4), 1);
        for a in 1..field.q() {
            for b in 1..field.q() {
                assert_ne!(twisted_field_mul(&field, eta, 0, 1, a, b), 0);
            }
        }
        // eta = t has t^4 = 1 and zero divisors do appear
        let bad = 3;
        assert_eq!(field.pow(bad, 4), 1);
        let found = (1..field.q())
            .flat_map(|a| (1..field.q()).map(move |b| (a, b)))
            .any(|(a, b)| twisted_field_mul(&field, bad, 0, 1, a, b) == 0);
        assert!(found);
    }

    #[test]
    fn twisted_field_spread_set_is_the_s1_code() {
        // over F_9 with F = y - 1 and f = x - 1: left multiplication by a
        // under ab - eta a b^sigma is the skew polynomial a - (eta a) x
        let field = FieldCtx::new(3, 2).unwrap();
        let eta = 4;
        let ring = SkewRing::new(field, Automorphism::new(1));
        let mut quo = QuotientCtx::new(ring, Poly::from_coeffs(vec![2, 1])).unwrap();
        quo.set_divisor(SkewPoly::from_coeffs(vec![2, 1])).unwrap();
        let code = Code::new(
            &quo,
            1,
            quo.field().neg(eta),
            Automorphism::new(0),
            None,
        )
        .unwrap();
        let sub = code.subspace();
        for a in quo.field().elements() {
            let lin = SkewPoly::from_coeffs(vec![a, quo.field().neg(quo.field().mul(eta, a))]);
            assert!(sub.contains(&quo, &lin));
        }
        // the product rule agrees with the twisted field product
        let ctx = SemifieldCtx::new(code).unwrap();
        for a in quo.field().elements() {
            for b in quo.field().elements() {
                let direct = twisted_field_mul(quo.field(), eta, 0, 1, a, b);
                let via_code = ctx
                    .mul(&SkewPoly::constant(a), &SkewPoly::constant(b))
                    .unwrap();
                assert_eq!(via_code, SkewPoly::constant(direct));
            }
        }
        // with i = 0 the twist degenerates: a * b = a(b - eta b^sigma) is
        // isotopic to the field itself, so the normalized spread set is the
        // constants and every invariant is the whole of F_9.  The proper
        // twisted-field tuple is exercised at (ne, i, j) = (4, 2, 1) in the
        // codes module, where the gcd formula genuinely applies.
        let rep = ctx.code().nuclear_parameters().unwrap();
        assert_eq!(rep.computed.as_tuple(), (9, 9, 9, 9, 9));
    }

    #[test]
    fn spread_matrices_take_the_displayed_form() {
        let quo = quo_with_divisor(3, 2, vec![1, 0, 1]);
        let field = quo.field();
        let beta = field.neg(quo.divisor().unwrap().coeff(0));
        let eta = 4;
        let code = Code::new(&quo, 1, eta, Automorphism::new(1), None).unwrap();
        let ctx = SemifieldCtx::new(code).unwrap();
        let mats = ctx.spread_matrices().unwrap();
        assert_eq!(mats.len(), 81);
        for (idx, mat) in mats.iter().enumerate() {
            let el = ctx.code().element_by_index(idx as u128);
            let (a0, a1) = (el.coeff(0), el.coeff(1));
            let top = field.mul(eta, field.frobenius_exp(a0, 1));
            let expected = vec![
                field.add(a0, field.mul(top, beta)),
                field.mul(a1, beta),
                field.frobenius_exp(a1, 1),
                field.add(
                    field.frobenius_exp(a0, 1),
                    field.mul(field.frobenius_exp(top, 1), beta),
                ),
            ];
            assert_eq!(mat.eval_entries(field, beta), expected, "index {idx}");
        }
    }

    #[test]
    fn spread_matrices_require_square_shape() {
        // n = 4, s = 1 quotient: spread display is rejected
        let field = FieldCtx::new(3, 4).unwrap();
        let ring = SkewRing::new(field, Automorphism::new(1));
        let mut quo = QuotientCtx::new(ring, Poly::from_coeffs(vec![2, 1])).unwrap();
        quo.find_divisor(1 << 16).unwrap();
        let code = Code::new(&quo, 1, 0, Automorphism::new(0), None).unwrap();
        let ctx = SemifieldCtx::new(code).unwrap();
        assert!(matches!(
            ctx.spread_matrices(),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn mul_table_csv_round_trip() {
        let quo = quo_with_divisor(2, 2, vec![1, 1, 1]);
        let ctx = petit_ctx(&quo);
        let mut out = Vec::new();
        ctx.write_mul_table_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a,b,product");
        assert_eq!(lines.len(), 1 + 256);
        // 1 * b = b down the first stripe
        assert!(lines.contains(&"1,2,2"));
        // and the table agrees with direct multiplication everywhere
        for line in &lines[1..] {
            let parts: Vec<u128> = line.split(',').map(|v| v.parse().unwrap()).collect();
            let prod = ctx
                .mul(&ctx.element(parts[0]), &ctx.element(parts[1]))
                .unwrap();
            assert_eq!(ctx.encode(&prod), parts[2]);
        }
    }

    #[test]
    fn spread_set_of_petit_equals_the_zero_eta_code() {
        let quo = quo_with_divisor(3, 2, vec![1, 0, 1]);
        let ctx = petit_ctx(&quo);
        let code_sub = ctx.spread_subspace();
        // every degree < s residue is a code element and vice versa
        for idx in 0..ctx.order() {
            assert!(code_sub.contains(&quo, &ctx.element(idx)));
        }
        assert_eq!(code_sub.dim(), 4);
    }
}
