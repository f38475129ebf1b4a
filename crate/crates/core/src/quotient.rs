//! The quotient ring `R_F = L[x;sigma] / (F(x^n))` for `F` monic irreducible
//! in `K[y]`, together with its concrete realisation as `n x n` matrices
//! over the residue field `E_F = K[y]/(F)`.
//!
//! The quotient is isomorphic to a full matrix ring, so every element has a
//! well-defined rank, computed here from one-sided gcds rather than by
//! building matrices.  Matrices are still available: once a degree-`s`
//! irreducible right divisor `f` of `F(x^n)` is fixed, `V_f = R/Rf` becomes
//! an `n`-dimensional `E_F`-space and left multiplication gives the matrix
//! picture used for display and cross-checks.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::{self, Echelon, PrimeField, ResidueField};
use crate::poly::Poly;
use crate::skewpoly::{SkewPoly, SkewRing};

pub struct QuotientCtx {
    ring: SkewRing,
    modulus: Poly,
    s: usize,
    expanded: SkewPoly,
    divisor: Option<SkewPoly>,
}

impl QuotientCtx {
    /// `modulus` must be monic irreducible over the fixed field `K` with a
    /// nonzero constant term (so the quotient is a matrix ring rather than
    /// one with nilpotents).
    pub fn new(ring: SkewRing, modulus: Poly) -> Result<QuotientCtx> {
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if modulus.coeff(0) == 0 {
            return Err(Error::InvalidParameter(
                "modulus must have a nonzero constant term".into(),
            ));
        }
        if !modulus.is_irreducible_over(ring.field(), ring.e())? {
            return Err(Error::ReducibleModulus);
        }
        let s = modulus.deg().unwrap();
        let expanded = ring.central_expand(&modulus);
        Ok(QuotientCtx {
            ring,
            modulus,
            s,
            expanded,
            divisor: None,
        })
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn field(&self) -> &FieldCtx {
        self.ring.field()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    /// `F(x^n)`, the generator of the ideal being quotiented out.
    pub fn expanded(&self) -> &SkewPoly {
        &self.expanded
    }

    pub fn divisor(&self) -> Option<&SkewPoly> {
        self.divisor.as_ref()
    }

    /// Installs a degree-`s` irreducible right divisor of `F(x^n)`,
    /// verified by recomputing its minimal central left multiple.
    pub fn set_divisor(&mut self, f: SkewPoly) -> Result<()> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.ring.mclm(&f)? != self.modulus {
            return Err(Error::NotADivisor(
                f.deg().unwrap_or(0),
                self.s * self.n(),
            ));
        }
        self.divisor = Some(f);
        Ok(())
    }

    /// Searches for a divisor in deterministic order and installs it.
    pub fn find_divisor(&mut self, budget: u64) -> Result<&SkewPoly> {
        let f = self.ring.find_irreducible_divisor(&self.modulus, budget)?;
        self.divisor = Some(f);
        Ok(self.divisor.as_ref().unwrap())
    }

    pub fn element_count(&self) -> u128 {
        (self.field().q() as u128).pow((self.n() * self.s) as u32)
    }

    /// Decodes an index into a residue, little-endian base `|L|`.
    pub fn element(&self, idx: u128) -> SkewPoly {
        let q = self.field().q() as u128;
        let len = self.n() * self.s;
        let mut coeffs = Vec::with_capacity(len);
        let mut x = idx;
        for _ in 0..len {
            coeffs.push((x % q) as u64);
            x /= q;
        }
        SkewPoly::from_coeffs(coeffs)
    }

    pub fn reduce(&self, a: &SkewPoly) -> SkewPoly {
        self.ring
            .rem_right(a, &self.expanded)
            .expect("modulus is nonzero")
    }

    pub fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.ring.add(a, b)
    }

    pub fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.ring.sub(a, b)
    }

    pub fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.reduce(&self.ring.mul(a, b))
    }

    /// Rank of the residue as an endomorphism: `n` minus the number of
    /// degree-`s` blocks in `gcrd(a, F(x^n))`.
    pub fn rank(&self, a: &SkewPoly) -> usize {
        let a = self.reduce(a);
        if a.is_zero() {
            return 0;
        }
        let g = self
            .ring
            .gcrd(&a, &self.expanded)
            .expect("nonzero arguments");
        let d = g.deg().unwrap();
        assert!(
            d % self.s == 0,
            "gcrd degree {d} not a multiple of {}",
            self.s
        );
        self.n() - d / self.s
    }

    pub fn is_invertible(&self, a: &SkewPoly) -> bool {
        self.rank(a) == self.n()
    }

    /// Two-sided inverse of a full-rank residue.
    pub fn inverse(&self, a: &SkewPoly) -> Result<SkewPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (g, u, _) = self.ring.extended_gcrd(&a, &self.expanded)?;
        if !g.is_one() {
            return Err(Error::NotInvertible {
                rank: self.rank(&a),
                full: self.n(),
            });
        }
        Ok(self.reduce(&u))
    }

    /// The residue field `E_F = K[y]/(F)` of size `q^s`.
    pub fn residue_field(&self) -> ResidueField<'_> {
        ResidueField {
            field: self.field(),
            modulus: self.modulus.clone(),
        }
    }

    /// Flattens a residue to its prime-field coordinate vector.
    pub fn fp_coords(&self, a: &SkewPoly) -> Vec<u64> {
        let len = self.n() * self.s;
        let m = self.field().m();
        let mut out = Vec::with_capacity(len * m);
        for c in a.padded_coeffs(len) {
            out.extend(self.field().digits(c));
        }
        out
    }

    pub fn from_fp_coords(&self, coords: &[u64]) -> SkewPoly {
        let m = self.field().m();
        let coeffs = coords
            .chunks(m)
            .map(|chunk| self.field().encode(chunk))
            .collect();
        SkewPoly::from_coeffs(coeffs)
    }

    /// Right action of `z` in `E_F` on a representative of `V_f = R/Rf`:
    /// `v * z := (v z(x^n)) mod_r f`.
    pub fn module_action(&self, v: &SkewPoly, z: &Poly) -> Result<SkewPoly> {
        let f = self
            .divisor
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("no divisor installed".into()))?;
        let prod = self.ring.mul(v, &self.ring.central_expand(z));
        self.ring.rem_right(&prod, f)
    }

    fn fp_basis_of_fixed_field(&self) -> Vec<u64> {
        let e = self.ring.e();
        let prime = PrimeField::new(self.field().p());
        let mut ech = Echelon::new(self.field().m());
        let mut basis = Vec::with_capacity(e);
        for a in self.field().subfield_elements(self.ring.sigma().exp) {
            if a != 0 && ech.insert(&prime, &self.field().digits(a)) {
                basis.push(a);
                if basis.len() == e {
                    break;
                }
            }
        }
        assert_eq!(basis.len(), e);
        basis
    }

    /// Generators of `E_F` as a prime-field space: `b * y^j` for `b` in a
    /// basis of `K` and `j < s`.
    fn residue_field_generators(&self) -> Vec<Poly> {
        let kbasis = self.fp_basis_of_fixed_field();
        let mut gens = Vec::with_capacity(self.s * kbasis.len());
        for j in 0..self.s {
            for &b in &kbasis {
                gens.push(Poly::monomial(b, j));
            }
        }
        gens
    }

    fn module_coords(&self, v: &SkewPoly) -> Vec<u64> {
        let m = self.field().m();
        let mut out = Vec::with_capacity(self.s * m);
        for c in v.padded_coeffs(self.s) {
            out.extend(self.field().digits(c));
        }
        out
    }

    /// An `E_F`-basis of `V_f`, found greedily: residues of `1, x, x^2, ...`
    /// first, then `a x^i` over all scalars if the powers alone do not span.
    /// Each accepted vector enlarges the prime-field span by a full
    /// `|E_F|`-block; anything else would contradict `E_F` acting freely.
    pub fn vf_basis(&self) -> Result<Vec<SkewPoly>> {
        let f = self
            .divisor
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("no divisor installed".into()))?;
        let n = self.n();
        let block = self.s * self.ring.e();
        let gens = self.residue_field_generators();
        let prime = PrimeField::new(self.field().p());
        let width = self.s * self.field().m();
        let mut ech: Echelon<PrimeField> = Echelon::new(width);
        let mut basis: Vec<SkewPoly> = Vec::with_capacity(n);

        let mut candidates: Vec<SkewPoly> = (0..n * self.s)
            .map(|i| SkewPoly::monomial(1, i))
            .collect();
        for a in self.field().elements() {
            if a == 0 || a == 1 {
                continue;
            }
            for i in 0..n * self.s {
                candidates.push(SkewPoly::monomial(a, i));
            }
        }

        for cand in candidates {
            if basis.len() == n {
                break;
            }
            let v = self.ring.rem_right(&cand, f)?;
            let mut trial = ech.clone();
            let mut jump = 0;
            for z in &gens {
                let image = self.module_action(&v, z)?;
                if trial.insert(&prime, &self.module_coords(&image)) {
                    jump += 1;
                }
            }
            assert!(
                jump == 0 || jump == block,
                "cyclic submodule has unexpected dimension {jump}"
            );
            if jump == block {
                ech = trial;
                basis.push(v);
            }
        }

        if basis.len() == n {
            Ok(basis)
        } else {
            Err(Error::BasisNotFound)
        }
    }

    /// The matrix of left multiplication by `a` on `V_f` in the given
    /// basis: column `j` holds the `E_F`-coordinates of `a * b_j mod_r f`.
    pub fn matrix_rep(&self, a: &SkewPoly, basis: &[SkewPoly]) -> Result<MatrixRep> {
        let f = self
            .divisor
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("no divisor installed".into()))?;
        let n = self.n();
        if basis.len() != n {
            return Err(Error::InvalidParameter(format!(
                "basis has {} elements, expected {n}",
                basis.len()
            )));
        }
        let gens = self.residue_field_generators();
        let block = gens.len();
        let prime = PrimeField::new(self.field().p());
        let width = self.s * self.field().m();

        // columns of the coordinate system: action of each generator on each
        // basis element
        let mut columns: Vec<Vec<u64>> = Vec::with_capacity(n * block);
        for b in basis {
            for z in &gens {
                columns.push(self.module_coords(&self.module_action(b, z)?));
            }
        }
        let rows: Vec<Vec<u64>> = (0..width)
            .map(|r| columns.iter().map(|c| c[r]).collect())
            .collect();

        let mut entries = vec![Poly::zero(); n * n];
        for (j, b) in basis.iter().enumerate() {
            let image = self.ring.rem_right(&self.ring.mul(a, b), f)?;
            let rhs = self.module_coords(&image);
            let xi = linalg::solve(&prime, &rows, &rhs, n * block)
                .ok_or(Error::BasisNotFound)?;
            for i in 0..n {
                let mut z = Poly::zero();
                for (r, gen) in gens.iter().enumerate() {
                    let c = xi[i * block + r];
                    if c != 0 {
                        z = z.add(self.field(), &gen.scale(self.field(), c));
                    }
                }
                entries[i * n + j] = z;
            }
        }
        Ok(MatrixRep { size: n, entries })
    }
}

/// Matrix over `E_F`, entries stored as residues of the modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixRep {
    size: usize,
    entries: Vec<Poly>,
}

impl MatrixRep {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.size + j]
    }

    pub fn identity(size: usize) -> MatrixRep {
        let mut entries = vec![Poly::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = Poly::one();
        }
        MatrixRep { size, entries }
    }

    pub fn add(&self, rf: &ResidueField<'_>, other: &MatrixRep) -> MatrixRep {
        assert_eq!(self.size, other.size);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| linalg::Field::add(rf, a, b))
            .collect();
        MatrixRep {
            size: self.size,
            entries,
        }
    }

    pub fn mul(&self, rf: &ResidueField<'_>, other: &MatrixRep) -> MatrixRep {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut entries = vec![Poly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let term = linalg::Field::mul(rf, a, other.entry(k, j));
                    entries[i * n + j] =
                        linalg::Field::add(rf, &entries[i * n + j], &term);
                }
            }
        }
        MatrixRep { size: n, entries }
    }

    /// Row rank over `E_F`.
    pub fn rank(&self, rf: &ResidueField<'_>) -> usize {
        let rows: Vec<Vec<Poly>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        linalg::rank(rf, &rows, self.size)
    }

    /// Evaluates every entry at a root of the modulus, giving ambient-field
    /// encodings; the usual way to display the matrix when `E_F` embeds in
    /// `L`.
    pub fn eval_entries(&self, field: &FieldCtx, beta: u64) -> Vec<u64> {
        self.entries.iter().map(|z| z.eval(field, beta)).collect()
    }
}
