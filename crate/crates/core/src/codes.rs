//! The rank-metric code family living inside `R_F`: elements
//! `a_0 + a_1 x + ... + a_{ks-1} x^{ks-1} + eta a_0^rho x^{ks}` with the
//! `a_t` ranging over `L`.
//!
//! The family is `K'`-linear for a subfield `K'` fixed by `rho`, has
//! `q^{nsk}` elements, and is maximum rank distance (minimum rank
//! `n - k + 1`) whenever a product of two norms avoids the value 1.  This
//! module constructs the codes, checks that norm condition, verifies
//! minimum rank by enumeration (parallel, budgeted, or sampled), and
//! computes the idealiser/centraliser/centre invariants that separate the
//! family from previously known constructions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{gcd_usize, Automorphism};
use crate::linalg::{self, Echelon, PrimeField};
use crate::quotient::QuotientCtx;
use crate::skewpoly::SkewPoly;

pub struct Code<'a> {
    quo: &'a QuotientCtx,
    k: usize,
    eta: u64,
    rho: Automorphism,
    kprime: usize,
}

impl<'a> Code<'a> {
    /// `kprime` is the degree `d` of the linearity subfield `F_{p^d}`;
    /// when omitted it defaults to the largest valid choice: `e` for
    /// `eta = 0`, otherwise `gcd(e, fixed degree of rho)`.
    pub fn new(
        quo: &'a QuotientCtx,
        k: usize,
        eta: u64,
        rho: Automorphism,
        kprime: Option<usize>,
    ) -> Result<Code<'a>> {
        let n = quo.n();
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!(
                "k must satisfy 1 <= k <= n - 1, got k = {k}, n = {n}"
            )));
        }
        if !quo.field().contains(eta) {
            return Err(Error::ElementOutOfRange(eta));
        }
        let e = quo.ring().e();
        let m = quo.field().m();
        let rho_fix = rho.fixed_degree(m);
        let max_d = if eta == 0 { e } else { gcd_usize(e, rho_fix) };
        let kprime = kprime.unwrap_or(max_d);
        if kprime == 0 || e % kprime != 0 {
            return Err(Error::InvalidParameter(format!(
                "linearity subfield degree {kprime} does not divide e = {e}"
            )));
        }
        if eta != 0 && rho_fix % kprime != 0 {
            return Err(Error::InvalidParameter(format!(
                "rho does not fix the subfield of degree {kprime}"
            )));
        }
        Ok(Code {
            quo,
            k,
            eta,
            rho,
            kprime,
        })
    }

    pub fn quotient(&self) -> &QuotientCtx {
        self.quo
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eta(&self) -> u64 {
        self.eta
    }

    pub fn rho(&self) -> Automorphism {
        self.rho
    }

    pub fn kprime(&self) -> usize {
        self.kprime
    }

    pub fn tuple_len(&self) -> usize {
        self.k * self.quo.s()
    }

    pub fn size(&self) -> u128 {
        (self.quo.field().q() as u128).pow(self.tuple_len() as u32)
    }

    /// Builds the representative for a coefficient tuple `(a_0, ...,
    /// a_{ks-1})`; the top coefficient is `eta a_0^rho`.
    pub fn element(&self, coords: &[u64]) -> Result<SkewPoly> {
        let ks = self.tuple_len();
        if coords.len() != ks {
            return Err(Error::InvalidParameter(format!(
                "tuple has {} entries, expected {ks}",
                coords.len()
            )));
        }
        let field = self.quo.field();
        let mut coeffs = Vec::with_capacity(ks + 1);
        for &c in coords {
            if !field.contains(c) {
                return Err(Error::ElementOutOfRange(c));
            }
            coeffs.push(c);
        }
        coeffs.push(field.mul(self.eta, field.apply(self.rho, coords[0])));
        Ok(SkewPoly::from_coeffs(coeffs))
    }

    pub fn element_by_index(&self, idx: u128) -> SkewPoly {
        let q = self.quo.field().q() as u128;
        let ks = self.tuple_len();
        let mut coords = Vec::with_capacity(ks);
        let mut x = idx;
        for _ in 0..ks {
            coords.push((x % q) as u64);
            x /= q;
        }
        self.element(&coords).expect("decoded coordinates are valid")
    }

    /// The norm condition sufficient for the code to be MRD:
    /// `N_{L:K'}(eta) * N_{K:K'}((-1)^{sk(n-1)} F_0^k) != 1`.
    /// `eta = 0` makes the left factor zero, so the condition holds.
    pub fn condition(&self) -> bool {
        if self.eta == 0 {
            return true;
        }
        let field = self.quo.field();
        let n = self.quo.n();
        let s = self.quo.s();
        let left = field
            .norm_to(self.eta, self.kprime)
            .expect("kprime divides m");
        let f0 = self.quo.modulus().coeff(0);
        let c = field.mul(
            field.sign(s * self.k * (n - 1)),
            field.pow(f0, self.k as u128),
        );
        // norm from K down to K'
        let pe = (field.p() as u128).pow(self.quo.ring().e() as u32);
        let pd = (field.p() as u128).pow(self.kprime as u32);
        let right = field.pow(c, (pe - 1) / (pd - 1));
        field.mul(left, right) != 1
    }

    /// Generators whose spans give the code as a prime-field subspace:
    /// images of `p^l` in each tuple slot.
    pub fn fp_generators(&self) -> Vec<SkewPoly> {
        let ks = self.tuple_len();
        let m = self.quo.field().m();
        let p = self.quo.field().p();
        let mut gens = Vec::with_capacity(ks * m);
        for t in 0..ks {
            for l in 0..m {
                let mut coords = vec![0u64; ks];
                coords[t] = p.pow(l as u32);
                gens.push(self.element(&coords).expect("valid generator tuple"));
            }
        }
        gens
    }

    pub fn subspace(&self) -> Subspace {
        let sub = Subspace::from_elements(self.quo, self.fp_generators());
        assert_eq!(
            sub.dim(),
            self.tuple_len() * self.quo.field().m(),
            "code generators must be independent"
        );
        sub
    }

    /// Right-multiplies the code by the inverse of an invertible member so
    /// the result contains 1.  Pivot choice: 1 itself if present, else `x`
    /// (a member whenever `sk > 1`), else the first invertible element in
    /// enumeration order.
    pub fn normalize(&self) -> Result<NormalizedCode> {
        let sub = self.subspace();
        if sub.contains(self.quo, &SkewPoly::one()) {
            return Ok(NormalizedCode {
                subspace: sub,
                pivot: SkewPoly::one(),
            });
        }
        let pivot = if sub.contains(self.quo, &SkewPoly::x()) && self.quo.is_invertible(&SkewPoly::x())
        {
            SkewPoly::x()
        } else {
            let mut found = None;
            for idx in 1..self.size() {
                let cand = self.element_by_index(idx);
                if self.quo.is_invertible(&cand) {
                    found = Some(cand);
                    break;
                }
            }
            found.ok_or_else(|| {
                Error::InvalidParameter("code has no invertible element".into())
            })?
        };
        let inv = self.quo.inverse(&pivot)?;
        let rotated: Vec<SkewPoly> = sub
            .basis()
            .iter()
            .map(|b| self.quo.mul(b, &inv))
            .collect();
        let subspace = Subspace::from_elements(self.quo, rotated);
        assert_eq!(subspace.dim(), sub.dim());
        assert!(subspace.contains(self.quo, &SkewPoly::one()));
        Ok(NormalizedCode { subspace, pivot })
    }

    /// Enumerates nonzero elements and reports the minimum rank with a
    /// deterministic witness (smallest rank, then smallest index).
    pub fn verify(&self, mode: VerifyMode) -> Result<VerifyOutcome> {
        let total = self.size() - 1;
        let (min_rank, witness_idx, checked, exhaustive) = match mode {
            VerifyMode::Exhaustive { budget } => {
                if total > budget as u128 {
                    return Err(Error::BudgetExhausted { searched: 0 });
                }
                let total = total as u64;
                let best = (1..=total)
                    .into_par_iter()
                    .map(|i| {
                        let el = self.element_by_index(i as u128);
                        (self.quo.rank(&el), i)
                    })
                    .min()
                    .expect("at least one nonzero element");
                (best.0, best.1 as u128, total, true)
            }
            VerifyMode::Sampled { samples, seed } => {
                if samples == 0 {
                    return Err(Error::InvalidParameter(
                        "sample count must be positive".into(),
                    ));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut best = (usize::MAX, 0u128);
                for _ in 0..samples {
                    let idx = rng.gen_range(1..=total);
                    let el = self.element_by_index(idx);
                    let cand = (self.quo.rank(&el), idx);
                    if cand < best {
                        best = cand;
                    }
                }
                (best.0, best.1, samples, false)
            }
        };
        Ok(VerifyOutcome {
            min_rank,
            witness: self.element_by_index(witness_idx),
            checked,
            exhaustive,
            mrd_bound: self.quo.n() - self.k + 1,
        })
    }

    /// Predicted invariant sizes, available inside the hypotheses
    /// `k <= n/2` and `sk > 1`.
    pub fn predicted_parameters(&self) -> Option<NuclearParams> {
        let n = self.quo.n();
        let s = self.quo.s();
        if 2 * self.k > n || s * self.k <= 1 {
            return None;
        }
        let e = self.quo.ring().e();
        let m = self.quo.field().m();
        let p = self.quo.field().p() as u128;
        let pw = |exp: usize| p.checked_pow(exp as u32).expect("size fits in u128");
        let size = pw(e * n * s * self.k);
        if self.eta == 0 {
            return Some(NuclearParams {
                size,
                left_idealiser: pw(m),
                right_idealiser: pw(m),
                centraliser: pw(s * e),
                centre: pw(e),
            });
        }
        let exps = predicted_exponent_tuple(
            n,
            s,
            self.k,
            e,
            self.rho.exp,
            self.quo.ring().sigma().exp,
        );
        Some(NuclearParams {
            size: pw(exps[0]),
            left_idealiser: pw(exps[1]),
            right_idealiser: pw(exps[2]),
            centraliser: pw(exps[3]),
            centre: pw(exps[4]),
        })
    }

    /// Computed invariant sizes of the normalized code.
    pub fn nuclear_parameters(&self) -> Result<NuclearReport> {
        let normalized = self.normalize()?;
        let sub = &normalized.subspace;
        let p = self.quo.field().p() as u128;
        let pw = |dim: usize| p.checked_pow(dim as u32).expect("size fits in u128");
        let computed = NuclearParams {
            size: pw(sub.dim()),
            left_idealiser: pw(left_idealiser(self.quo, sub).dim()),
            right_idealiser: pw(right_idealiser(self.quo, sub).dim()),
            centraliser: pw(centraliser(self.quo, sub).dim()),
            centre: pw(centre(self.quo, sub).dim()),
        };
        Ok(NuclearReport {
            computed,
            predicted: self.predicted_parameters(),
        })
    }
}

/// The `p`-exponents of the predicted invariant sizes for a nonzero twist:
/// `(nsek, (ne,i), (ne,skj-i), s(ne,j), (ne,i,j))` where `i`, `j` are the
/// Frobenius exponents of `rho` and `sigma`.
pub fn predicted_exponent_tuple(
    n: usize,
    s: usize,
    k: usize,
    e: usize,
    i: usize,
    j: usize,
) -> [usize; 5] {
    let m = n * e;
    let (i, j) = (i % m, j % m);
    let skj_i = ((s * k * j) as i128 - i as i128).rem_euclid(m as i128) as usize;
    [
        n * s * e * k,
        gcd_usize(m, i),
        gcd_usize(m, skj_i),
        s * gcd_usize(m, j),
        gcd_usize(gcd_usize(m, i), j),
    ]
}

pub enum VerifyMode {
    Exhaustive { budget: u64 },
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub min_rank: usize,
    pub witness: SkewPoly,
    pub checked: u64,
    pub exhaustive: bool,
    /// `n - k + 1`: the rank every nonzero element must reach for the code
    /// to be maximum rank distance.
    pub mrd_bound: usize,
}

impl VerifyOutcome {
    pub fn is_mrd(&self) -> bool {
        self.min_rank >= self.mrd_bound
    }
}

pub struct NormalizedCode {
    pub subspace: Subspace,
    pub pivot: SkewPoly,
}

/// A prime-field subspace of `R_F`, kept as an independent basis plus the
/// echelon of coordinate vectors for membership tests.
pub struct Subspace {
    basis: Vec<SkewPoly>,
    ech: Echelon<PrimeField>,
}

impl Subspace {
    pub fn from_elements(
        quo: &QuotientCtx,
        elems: impl IntoIterator<Item = SkewPoly>,
    ) -> Subspace {
        let prime = PrimeField::new(quo.field().p());
        let width = quo.n() * quo.s() * quo.field().m();
        let mut ech = Echelon::new(width);
        let mut basis = Vec::new();
        for el in elems {
            let el = quo.reduce(&el);
            if ech.insert(&prime, &quo.fp_coords(&el)) {
                basis.push(el);
            }
        }
        Subspace { basis, ech }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self, p: u64) -> u128 {
        (p as u128)
            .checked_pow(self.dim() as u32)
            .expect("size fits in u128")
    }

    pub fn basis(&self) -> &[SkewPoly] {
        &self.basis
    }

    pub fn contains(&self, quo: &QuotientCtx, el: &SkewPoly) -> bool {
        let prime = PrimeField::new(quo.field().p());
        self.ech.contains(&prime, &quo.fp_coords(&quo.reduce(el)))
    }

    /// Residual of `el` against this subspace; zero exactly on members.
    fn project_out(&self, quo: &QuotientCtx, el: &SkewPoly) -> Vec<u64> {
        let prime = PrimeField::new(quo.field().p());
        self.ech.reduce(&prime, &quo.fp_coords(&quo.reduce(el)))
    }

    pub fn rank_multiset(&self, quo: &QuotientCtx) -> Vec<usize> {
        // ranks of all members, sorted; only sensible at desk scale
        let p = quo.field().p();
        let total = self.size(p);
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut acc = SkewPoly::zero();
            let mut x = idx;
            for b in &self.basis {
                let c = (x % p as u128) as u64;
                x /= p as u128;
                if c != 0 {
                    acc = quo.add(&acc, &quo.ring().scale(c, b));
                }
            }
            out.push(quo.rank(&acc));
        }
        out.sort_unstable();
        out
    }
}

enum ConstraintKind {
    LeftMultiple,
    RightMultiple,
    Commutator,
    CentreMember,
}

fn solution_space(quo: &QuotientCtx, code: &Subspace, kind: ConstraintKind) -> Subspace {
    let prime = PrimeField::new(quo.field().p());
    let width = quo.n() * quo.s() * quo.field().m();
    // column r of the constraint matrix is the stacked image of the r-th
    // unit vector; all the maps below are linear over the prime field
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(width);
    for r in 0..width {
        let mut unit = vec![0u64; width];
        unit[r] = 1;
        let z = quo.from_fp_coords(&unit);
        let mut col = Vec::new();
        for c in code.basis() {
            match kind {
                ConstraintKind::LeftMultiple => {
                    col.extend(code.project_out(quo, &quo.mul(&z, c)));
                }
                ConstraintKind::RightMultiple => {
                    col.extend(code.project_out(quo, &quo.mul(c, &z)));
                }
                ConstraintKind::Commutator => {
                    let diff = quo.sub(&quo.mul(&z, c), &quo.mul(c, &z));
                    col.extend(quo.fp_coords(&diff));
                }
                ConstraintKind::CentreMember => {
                    col.extend(code.project_out(quo, &quo.mul(&z, c)));
                    let diff = quo.sub(&quo.mul(&z, c), &quo.mul(c, &z));
                    col.extend(quo.fp_coords(&diff));
                }
            }
        }
        columns.push(col);
    }
    let height = columns.first().map_or(0, Vec::len);
    let rows: Vec<Vec<u64>> = (0..height)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    let kernel = linalg::kernel(&prime, &rows, width);
    Subspace::from_elements(quo, kernel.iter().map(|v| quo.from_fp_coords(v)))
}

/// `{ z : z c in code for all c }`.
pub fn left_idealiser(quo: &QuotientCtx, code: &Subspace) -> Subspace {
    solution_space(quo, code, ConstraintKind::LeftMultiple)
}

/// `{ z : c z in code for all c }`.
pub fn right_idealiser(quo: &QuotientCtx, code: &Subspace) -> Subspace {
    solution_space(quo, code, ConstraintKind::RightMultiple)
}

/// `{ z : z c = c z for all c }`.
pub fn centraliser(quo: &QuotientCtx, code: &Subspace) -> Subspace {
    solution_space(quo, code, ConstraintKind::Commutator)
}

/// Left idealiser intersected with the centraliser.
pub fn centre(quo: &QuotientCtx, code: &Subspace) -> Subspace {
    solution_space(quo, code, ConstraintKind::CentreMember)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct NuclearParams {
    pub size: u128,
    pub left_idealiser: u128,
    pub right_idealiser: u128,
    pub centraliser: u128,
    pub centre: u128,
}

impl NuclearParams {
    pub fn as_tuple(&self) -> (u128, u128, u128, u128, u128) {
        (
            self.size,
            self.left_idealiser,
            self.right_idealiser,
            self.centraliser,
            self.centre,
        )
    }
}

#[derive(Clone, Debug)]
pub struct NuclearReport {
    pub computed: NuclearParams,
    pub predicted: Option<NuclearParams>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub family: String,
    pub parameters: String,
}

fn p_exponent(p: u64, mut size: u128) -> Option<usize> {
    let mut exp = 0;
    while size > 1 {
        if size % p as u128 != 0 {
            return None;
        }
        size /= p as u128;
        exp += 1;
    }
    Some(exp)
}

/// Parameter-level comparison against the tabulated known semifield
/// families.  A match means only that the five sizes coincide; it is not an
/// isotopy test.
pub fn compare_known_families(p: u64, params: &NuclearParams) -> Vec<FamilyMatch> {
    let mut out = Vec::new();
    let exps = [
        params.size,
        params.left_idealiser,
        params.right_idealiser,
        params.centraliser,
        params.centre,
    ]
    .map(|v| p_exponent(p, v));
    let [Some(total), Some(a), Some(b), Some(c), Some(z)] = exps else {
        return out;
    };

    // cyclic semifields: (q^{ns}, q^n, q^n, q^s, q) with q = p^e
    if z > 0 && a == b && a % z == 0 && c % z == 0 {
        let (n, s) = (a / z, c / z);
        if n >= 2 && s >= 2 && n * s * z == total {
            out.push(FamilyMatch {
                family: "cyclic (Petit)".into(),
                parameters: format!("n={n}, s={s}, e={z}"),
            });
        }
    }

    // generalised twisted fields: (p^N, p^(N,i), p^(N,j-i), p^(N,j), p^(N,i,j))
    'gtf: for i in 1..total {
        for j in 1..total {
            if i == j {
                continue;
            }
            let ji = (j as i128 - i as i128).rem_euclid(total as i128) as usize;
            if gcd_usize(total, i) == a
                && gcd_usize(total, ji) == b
                && gcd_usize(total, j) == c
                && gcd_usize(gcd_usize(total, i), j) == z
            {
                out.push(FamilyMatch {
                    family: "generalised twisted field".into(),
                    parameters: format!("ne={total}, i={i}, j={j}"),
                });
                break 'gtf;
            }
        }
    }

    // Pott-Zhou: (p^{2n}, p^(n,i,j), p^(n,i), p^(n,i,j), p^(n,i,j))
    if total % 2 == 0 {
        let n = total / 2;
        'pz: for i in 0..=n {
            let gi = gcd_usize(n, i);
            if n / gi % 2 == 0 {
                continue;
            }
            for j in 0..=n {
                let gij = gcd_usize(gi, j);
                if gij == a && gi == b && gij == c && gij == z {
                    out.push(FamilyMatch {
                        family: "Pott-Zhou".into(),
                        parameters: format!("n={n}, i={i}, j={j}"),
                    });
                    break 'pz;
                }
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use crate::poly::Poly;
    use crate::skewpoly::SkewRing;

    fn quo(p: u64, m: usize, modulus: Vec<u64>) -> QuotientCtx {
        let ring = SkewRing::new(FieldCtx::new(p, m).unwrap(), Automorphism::new(1));
        QuotientCtx::new(ring, Poly::from_coeffs(modulus)).unwrap()
    }

    fn quo_q3_ns2() -> QuotientCtx {
        quo(3, 2, vec![1, 0, 1])
    }

    fn quo_q2_ns2() -> QuotientCtx {
        quo(2, 2, vec![1, 1, 1])
    }

    #[test]
    fn parameter_validation() {
        let q = quo_q3_ns2();
        assert!(Code::new(&q, 0, 0, Automorphism::new(0), None).is_err());
        assert!(Code::new(&q, 2, 0, Automorphism::new(0), None).is_err()); // k = n
        assert!(Code::new(&q, 1, 99, Automorphism::new(0), None).is_err());
        // kprime must divide e
        assert!(Code::new(&q, 1, 0, Automorphism::new(0), Some(3)).is_err());
        let c = Code::new(&q, 1, 4, Automorphism::new(1), None).unwrap();
        assert_eq!(c.kprime(), 1);
        assert_eq!(c.size(), 81);
    }

    #[test]
    fn element_construction() {
        let q = quo_q3_ns2();
        let eta = 4;
        let c = Code::new(&q, 1, eta, Automorphism::new(1), None).unwrap();
        assert_eq!(c.element(&[0, 0]).unwrap(), SkewPoly::zero());
        // (1, 0) -> 1 + eta x^2 since 1^rho = 1
        assert_eq!(
            c.element(&[1, 0]).unwrap(),
            SkewPoly::from_coeffs(vec![1, 0, eta])
        );
        assert!(c.element(&[1]).is_err());
        // eta = 0 gives plain low-degree representatives
        let petit = Code::new(&q, 1, 0, Automorphism::new(0), None).unwrap();
        assert_eq!(
            petit.element(&[5, 7]).unwrap(),
            SkewPoly::from_coeffs(vec![5, 7])
        );
    }

    #[test]
    fn condition_counts_at_q3() {
        // F_0 = 1, so the condition reads eta^4 != 1; exactly half of the
        // fourth powers in F_9* are 1
        let q = quo_q3_ns2();
        let field = q.field().clone();
        let mut good = 0;
        for eta in field.elements() {
            if eta == 0 {
                continue;
            }
            let c = Code::new(&q, 1, eta, Automorphism::new(1), None).unwrap();
            let direct = field.pow(eta, 4) != 1;
            assert_eq!(c.condition(), direct);
            if direct {
                good += 1;
            }
        }
        assert_eq!(good, 4);
    }

    #[test]
    fn condition_always_fails_over_f4_with_prime_subfield() {
        // N_{L:F_2} is identically 1 on L*, so no eta can satisfy the
        // condition once the second factor is also 1
        let q = quo_q2_ns2();
        for eta in 1..4u64 {
            let c = Code::new(&q, 1, eta, Automorphism::new(1), Some(1)).unwrap();
            assert!(!c.condition());
        }
        // but eta = 0 passes
        let c0 = Code::new(&q, 1, 0, Automorphism::new(0), None).unwrap();
        assert!(c0.condition());
    }

    #[test]
    fn subspace_dimension_and_kprime_linearity() {
        let q = quo_q3_ns2();
        let c = Code::new(&q, 1, 4, Automorphism::new(1), None).unwrap();
        let sub = c.subspace();
        assert_eq!(sub.dim(), 4); // ks * m = 2 * 2
        assert_eq!(sub.size(3), 81);
        // closed under K' = F_3 scalars
        for idx in 0..c.size() {
            let el = c.element_by_index(idx);
            assert!(sub.contains(&q, &el));
            assert!(sub.contains(&q, &q.ring().scale(2, &el)));
        }
        // not closed under all of L: t * (1 + eta x^2) leaves the code
        let t = 3;
        let el = c.element(&[1, 0]).unwrap();
        assert!(!sub.contains(&q, &q.ring().scale(t, &el)));
    }

    #[test]
    fn petit_code_is_mrd_at_q2_and_q3() {
        for quo in [quo_q2_ns2(), quo_q3_ns2()] {
            let c = Code::new(&quo, 1, 0, Automorphism::new(0), None).unwrap();
            let out = c
                .verify(VerifyMode::Exhaustive { budget: 1 << 20 })
                .unwrap();
            assert!(out.exhaustive);
            assert_eq!(out.checked as u128, c.size() - 1);
            assert_eq!(out.min_rank, 2);
            assert!(out.is_mrd());
        }
    }

    #[test]
    fn twisted_codes_at_q3_meet_the_bound_when_condition_holds() {
        let q = quo_q3_ns2();
        let field = q.field().clone();
        for rho_exp in 0..4 {
            for eta in field.elements() {
                if eta == 0 {
                    continue;
                }
                let c = Code::new(&q, 1, eta, Automorphism::new(rho_exp), None).unwrap();
                let out = c
                    .verify(VerifyMode::Exhaustive { budget: 1 << 20 })
                    .unwrap();
                if c.condition() {
                    assert_eq!(out.min_rank, 2, "eta={eta} rho={rho_exp}");
                } else {
                    // the condition is sufficient, not necessary; record
                    // only that the bound can fail here
                    assert!(out.min_rank >= 1);
                }
            }
        }
    }

    #[test]
    fn condition_failures_do_exist_empirically() {
        // at q=3, eta^4 F_0 = 1 cases really do produce rank-1 elements
        let q = quo_q3_ns2();
        let field = q.field().clone();
        let mut broken = 0;
        for eta in field.elements() {
            if eta == 0 || field.pow(eta, 4) != 1 {
                continue;
            }
            let c = Code::new(&q, 1, eta, Automorphism::new(1), None).unwrap();
            let out = c
                .verify(VerifyMode::Exhaustive { budget: 1 << 20 })
                .unwrap();
            if out.min_rank < 2 {
                broken += 1;
            }
        }
        assert!(broken > 0);
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let q = quo_q3_ns2();
        let c = Code::new(&q, 1, 4, Automorphism::new(1), None).unwrap();
        let a = c
            .verify(VerifyMode::Sampled {
                samples: 50,
                seed: 7,
            })
            .unwrap();
        let b = c
            .verify(VerifyMode::Sampled {
                samples: 50,
                seed: 7,
            })
            .unwrap();
        assert_eq!(a.min_rank, b.min_rank);
        assert_eq!(a.witness, b.witness);
        assert!(!a.exhaustive);
    }

    #[test]
    fn budget_is_enforced() {
        let q = quo_q3_ns2();
        let c = Code::new(&q, 1, 0, Automorphism::new(0), None).unwrap();
        assert!(matches!(
            c.verify(VerifyMode::Exhaustive { budget: 10 }),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn normalization_pivots() {
        // Petit code contains 1 already
        let q = quo_q3_ns2();
        let petit = Code::new(&q, 1, 0, Automorphism::new(0), None).unwrap();
        let norm = petit.normalize().unwrap();
        assert_eq!(norm.pivot, SkewPoly::one());

        // twisted code pivots on x
        let c = Code::new(&q, 1, 4, Automorphism::new(1), None).unwrap();
        let norm = c.normalize().unwrap();
        assert_eq!(norm.pivot, SkewPoly::x());
        assert!(norm.subspace.contains(&q, &SkewPoly::one()));
        // equivalence preserves the rank multiset
        assert_eq!(
            c.subspace().rank_multiset(&q),
            norm.subspace.rank_multiset(&q)
        );
    }

    #[test]
    fn idealiser_of_full_ring_is_everything() {
        let q = quo_q2_ns2();
        let all = Subspace::from_elements(&q, (0..q.element_count()).map(|i| q.element(i)));
        assert_eq!(all.dim(), 8);
        let ideal = left_idealiser(&q, &all);
        assert_eq!(ideal.dim(), 8);
    }

    #[test]
    fn idealiser_sizes_invariant_under_normalization() {
        let q = quo_q3_ns2();
        let c = Code::new(&q, 1, 4, Automorphism::new(1), None).unwrap();
        let raw = c.subspace();
        let norm = c.normalize().unwrap().subspace;
        assert_eq!(
            left_idealiser(&q, &raw).dim(),
            left_idealiser(&q, &norm).dim()
        );
        assert_eq!(
            right_idealiser(&q, &raw).dim(),
            right_idealiser(&q, &norm).dim()
        );
    }

    #[test]
    fn cyclic_code_invariants_match_closed_form() {
        // (q^{ns}, q^n, q^n, q^s, q) at q=2, n=s=2: (16, 4, 4, 4, 2)
        let q = quo_q2_ns2();
        let c = Code::new(&q, 1, 0, Automorphism::new(0), None).unwrap();
        let rep = c.nuclear_parameters().unwrap();
        assert_eq!(rep.computed.as_tuple(), (16, 4, 4, 4, 2));
        assert_eq!(rep.predicted, Some(rep.computed));
    }

    #[test]
    fn twisted_invariants_match_prediction_for_all_rho() {
        // q=3, n=s=2, k=1, eta != 0: the invariants depend only on the
        // parity of the rho exponent
        let q = quo_q3_ns2();
        for rho_exp in 0..4usize {
            let c = Code::new(&q, 1, 4, Automorphism::new(rho_exp), None).unwrap();
            let rep = c.nuclear_parameters().unwrap();
            let expected = if rho_exp % 2 == 0 {
                (81, 9, 9, 9, 3)
            } else {
                (81, 3, 3, 9, 3)
            };
            assert_eq!(rep.computed.as_tuple(), expected, "rho_exp={rho_exp}");
            assert_eq!(rep.predicted, Some(rep.computed));
        }
    }

    #[test]
    fn s1_code_carries_twisted_field_parameters() {
        // n=4, s=1, F = y - 1 over F_81 with rho = sigma^2: the spread set
        // is a twisted field with exponents (i, j) = (2, 1), so the
        // invariants are (81, 9, 3, 3, 3) and the comparator finds the row
        let field = FieldCtx::new(3, 4).unwrap();
        let ring = SkewRing::new(field, Automorphism::new(1));
        let q = QuotientCtx::new(ring, Poly::from_coeffs(vec![2, 1])).unwrap();
        let eta = q
            .field()
            .elements()
            .find(|&v| v != 0 && q.field().norm_to(v, 1).unwrap() != 1)
            .unwrap();
        let c = Code::new(&q, 1, eta, Automorphism::new(2), None).unwrap();
        assert!(c.condition());
        let rep = c.nuclear_parameters().unwrap();
        assert_eq!(rep.computed.as_tuple(), (81, 9, 3, 3, 3));
        // outside the prediction hypotheses: sk = 1
        assert_eq!(rep.predicted, None);
        let families = compare_known_families(3, &rep.computed);
        assert!(families
            .iter()
            .any(|m| m.family.contains("twisted field")), "{families:?}");
    }

    #[test]
    fn known_family_comparison() {
        // cyclic parameters match the cyclic row
        let petit = NuclearParams {
            size: 16,
            left_idealiser: 4,
            right_idealiser: 4,
            centraliser: 4,
            centre: 2,
        };
        let matches = compare_known_families(2, &petit);
        assert!(matches.iter().any(|m| m.family.contains("Petit")));

        // the q^12 semifield with all nuclei q^2 and centre q matches nothing
        let novel = NuclearParams {
            size: 1 << 12,
            left_idealiser: 4,
            right_idealiser: 4,
            centraliser: 4,
            centre: 2,
        };
        assert!(compare_known_families(2, &novel).is_empty());
    }
}
