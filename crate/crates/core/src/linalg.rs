//! Exact dense linear algebra over small fields.
//!
//! The solvers are generic over a minimal field trait so the same elimination
//! code serves the prime field, the ambient field, and residue fields of
//! irreducible polynomials.

use crate::gf::FieldCtx;
use crate::poly::Poly;

pub trait Field {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
}

/// `Z/p` with elements `0..p`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat; p is prime and a nonzero
        let mut acc = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

/// The ambient field `F_{p^m}` seen through the trait.
#[derive(Clone, Copy)]
pub struct Ambient<'a>(pub &'a FieldCtx);

impl Field for Ambient<'_> {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.0.add(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.0.sub(*a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.mul(*a, *b)
    }
    fn inv(&self, a: &u64) -> u64 {
        self.0.inv(*a).expect("inverse of nonzero element")
    }
}

/// Residues of an irreducible polynomial over a subfield of the ambient
/// field: the field `F_{p^d}[y]/(modulus)`.
#[derive(Clone)]
pub struct ResidueField<'a> {
    pub field: &'a FieldCtx,
    pub modulus: Poly,
}

impl Field for ResidueField<'_> {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(self.field, b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(self.field, b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(self.field, b)
            .rem(self.field, &self.modulus)
            .expect("nonzero modulus")
    }
    fn inv(&self, a: &Poly) -> Poly {
        let (g, u, _) = a.egcd(self.field, &self.modulus).expect("nonzero input");
        assert!(g.is_one(), "residue not invertible");
        u.rem(self.field, &self.modulus).expect("nonzero modulus")
    }
}

/// Incremental row echelon basis of a subspace.
pub struct Echelon<K: Field> {
    width: usize,
    rows: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> Clone for Echelon<K> {
    fn clone(&self) -> Self {
        Echelon {
            width: self.width,
            rows: self.rows.clone(),
            pivots: self.pivots.clone(),
        }
    }
}

impl<K: Field> Echelon<K> {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows, returning the residual.
    pub fn reduce(&self, k: &K, v: &[K::Elem]) -> Vec<K::Elem> {
        let mut v = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if !k.is_zero(&v[piv]) {
                let c = v[piv].clone();
                for j in 0..self.width {
                    v[j] = k.sub(&v[j], &k.mul(&c, &row[j]));
                }
            }
        }
        v
    }

    /// Inserts `v` if independent of the current rows; returns whether the
    /// rank grew.
    pub fn insert(&mut self, k: &K, v: &[K::Elem]) -> bool {
        let mut v = self.reduce(k, v);
        let piv = match v.iter().position(|c| !k.is_zero(c)) {
            Some(p) => p,
            None => return false,
        };
        let inv = k.inv(&v[piv]);
        for c in v.iter_mut() {
            *c = k.mul(c, &inv);
        }
        // keep earlier rows reduced against the new one
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !k.is_zero(&row[piv]) {
                let c = row[piv].clone();
                for j in 0..self.width {
                    row[j] = k.sub(&row[j], &k.mul(&c, &v[j]));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    pub fn contains(&self, k: &K, v: &[K::Elem]) -> bool {
        self.reduce(k, v).iter().all(|c| k.is_zero(c))
    }
}

pub fn rank<K: Field>(k: &K, rows: &[Vec<K::Elem>], width: usize) -> usize {
    let mut ech = Echelon::new(width);
    for r in rows {
        ech.insert(k, r);
    }
    ech.rank()
}

/// Basis of `{ x : M x = 0 }` for `M` given by rows of length `width`.
pub fn kernel<K: Field>(k: &K, rows: &[Vec<K::Elem>], width: usize) -> Vec<Vec<K::Elem>> {
    // reduced row echelon form
    let mut m: Vec<Vec<K::Elem>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let mut sel = None;
        for i in r..m.len() {
            if !k.is_zero(&m[i][col]) {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(r, sel);
        let inv = k.inv(&m[r][col].clone());
        for j in 0..width {
            m[r][j] = k.mul(&m[r][j], &inv);
        }
        for i in 0..m.len() {
            if i != r && !k.is_zero(&m[i][col]) {
                let c = m[i][col].clone();
                for j in 0..width {
                    m[i][j] = k.sub(&m[i][j], &k.mul(&c, &m[r][j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![k.zero(); width];
        x[free] = k.one();
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = k.neg(&m[i][free]);
        }
        basis.push(x);
    }
    basis
}

/// One solution of `M x = rhs`, if any.
pub fn solve<K: Field>(
    k: &K,
    rows: &[Vec<K::Elem>],
    rhs: &[K::Elem],
    width: usize,
) -> Option<Vec<K::Elem>> {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<K::Elem>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let aug = width + 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let mut sel = None;
        for i in r..m.len() {
            if !k.is_zero(&m[i][col]) {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(r, sel);
        let inv = k.inv(&m[r][col].clone());
        for j in 0..aug {
            m[r][j] = k.mul(&m[r][j], &inv);
        }
        for i in 0..m.len() {
            if i != r && !k.is_zero(&m[i][col]) {
                let c = m[i][col].clone();
                for j in 0..aug {
                    m[i][j] = k.sub(&m[i][j], &k.mul(&c, &m[r][j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    // inconsistent?
    for row in m.iter().skip(pivots.len()) {
        if !k.is_zero(&row[width]) {
            return None;
        }
    }
    let mut x = vec![k.zero(); width];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = m[i][width].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_over_f2() {
        let k = PrimeField { p: 2 };
        // x0 + x1 = 0, x1 + x2 = 0 -> kernel spanned by (1,1,1)
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let ker = kernel(&k, &rows, 3);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], vec![1, 1, 1]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let k = PrimeField { p: 3 };
        let rows = vec![vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 1]];
        let ker = kernel(&k, &rows, 4);
        for x in &ker {
            for row in &rows {
                let s = row
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (a, b)| k.add(&acc, &k.mul(a, b)));
                assert_eq!(s, 0);
            }
        }
        assert_eq!(rank(&k, &rows, 4) + ker.len(), 4);
    }

    #[test]
    fn solve_square_system() {
        let k = PrimeField { p: 5 };
        let rows = vec![vec![1, 2], vec![3, 4]];
        let rhs = vec![4, 2];
        let x = solve(&k, &rows, &rhs, 2).unwrap();
        for (row, b) in rows.iter().zip(&rhs) {
            let s = row
                .iter()
                .zip(&x)
                .fold(0, |acc, (a, c)| k.add(&acc, &k.mul(a, c)));
            assert_eq!(s, *b);
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let k = PrimeField { p: 2 };
        let rows = vec![vec![1, 1], vec![1, 1]];
        assert!(solve(&k, &rows, &[0, 1], 2).is_none());
    }

    #[test]
    fn echelon_tracks_span() {
        let k = PrimeField { p: 2 };
        let mut e = Echelon::new(3);
        assert!(e.insert(&k, &[1, 1, 0]));
        assert!(e.insert(&k, &[0, 1, 1]));
        assert!(!e.insert(&k, &[1, 0, 1]));
        assert!(e.contains(&k, &[1, 0, 1]));
        assert!(!e.contains(&k, &[1, 0, 0]));
        assert_eq!(e.rank(), 2);
    }
}
