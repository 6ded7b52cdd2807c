//! Dense exact linear algebra over a [`Field`], plus the projective
//! containers [`LinearSubspace`] and [`ProjPoint`] over ℚ.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{primitive_integer_vector, Field, Rationals};

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are moved to the bottom.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(&m[r][c]).expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i == r || field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..cols {
                let t = field.mul(&factor, &m[r][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row-echelon rank (no back substitution).
pub fn rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut a: Matrix<F::Elem> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(&a[r][c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for j in c..cols {
                let t = field.mul(&factor, &a[r][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
        r += 1;
    }
    r
}

/// Rank and a basis of the right kernel `{v : M v = 0}`. The basis is the
/// standard one read off the reduced row echelon form: one vector per free
/// column, with a 1 in that column.
pub fn rank_kernel<F: Field>(
    field: &F,
    m: &[Vec<F::Elem>],
    cols: usize,
) -> (usize, Vec<Vec<F::Elem>>) {
    let mut a: Matrix<F::Elem> = m.to_vec();
    let pivots = rref(field, &mut a);
    let rank = pivots.len();
    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&a[row][free]);
        }
        kernel.push(v);
    }
    (rank, kernel)
}

/// Determinant by Gaussian elimination.
pub fn det<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a: Matrix<F::Elem> = m.to_vec();
    let mut d = field.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if pr != c {
            a.swap(c, pr);
            d = field.neg(&d);
        }
        d = field.mul(&d, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for j in c..n {
                let t = field.mul(&factor, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    d
}

/// Unique solution of the square system `M x = b`, if `M` is invertible.
pub fn solve<F: Field>(field: &F, m: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = m.len();
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

pub fn transpose<E: Clone>(m: &[Vec<E>]) -> Matrix<E> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_vec<F: Field>(field: &F, m: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
        })
        .collect()
}

/// Row indices of a maximal linearly independent subset of rows, chosen greedily.
pub fn independent_rows<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Matrix<F::Elem> = Vec::new();
    for (i, row) in m.iter().enumerate() {
        basis.push(row.clone());
        if rank(field, &basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

fn int_to_rat(a: &BigInt) -> BigRational {
    BigRational::from_integer(a.clone())
}

/// Linear subspace of Kⁿ (a projective subspace of Pⁿ⁻¹), stored as a
/// canonical basis: reduced row echelon form with each row scaled to a
/// primitive integer vector with positive leading entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl LinearSubspace {
    pub fn empty(ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        let rows: Vec<Vec<BigRational>> = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Self::span_of(ambient, &rows)
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span_of(ambient: usize, vectors: &[Vec<BigRational>]) -> Self {
        let mut m: Matrix<BigRational> = vectors.to_vec();
        for v in &m {
            assert_eq!(v.len(), ambient, "vector length must match the ambient space");
        }
        let pivots = rref(&Rationals, &mut m);
        let basis = m
            .into_iter()
            .take(pivots.len())
            .map(|row| primitive_integer_vector(&row))
            .collect();
        LinearSubspace { ambient, basis }
    }

    pub fn span_of_ints(ambient: usize, vectors: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| v.iter().map(|&a| BigRational::from_integer(a.into())).collect())
            .collect();
        Self::span_of(ambient, &rows)
    }

    /// Common zero set of linear forms given by their coefficient vectors.
    pub fn from_equations(ambient: usize, equations: &[Vec<BigRational>]) -> Self {
        if equations.is_empty() {
            return Self::whole(ambient);
        }
        let (_, ker) = rank_kernel(&Rationals, equations, ambient);
        Self::span_of(ambient, &ker)
    }

    /// `V(x_i : i ∈ vars)`.
    pub fn coordinate(ambient: usize, vanishing: &[usize]) -> Self {
        let eqs: Vec<Vec<BigRational>> = vanishing
            .iter()
            .map(|&i| {
                (0..ambient)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Self::from_equations(ambient, &eqs)
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_rational(&self) -> Vec<Vec<BigRational>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(int_to_rat).collect())
            .collect()
    }

    /// Vector-space dimension.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension; −1 for the empty subspace.
    pub fn proj_dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coefficient vectors of a canonical set of linear equations.
    pub fn equations(&self) -> Vec<Vec<BigInt>> {
        if self.basis.is_empty() {
            return Self::whole(self.ambient).basis;
        }
        let (_, ker) = rank_kernel(&Rationals, &self.basis_rational(), self.ambient);
        Self::span_of(self.ambient, &ker).basis
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis_rational();
        rows.push(v.to_vec());
        rank(&Rationals, &rows) == self.basis.len()
    }

    pub fn contains(&self, other: &LinearSubspace) -> bool {
        other
            .basis_rational()
            .iter()
            .all(|v| self.contains_vector(v))
    }

    pub fn join(&self, other: &LinearSubspace) -> LinearSubspace {
        let mut rows = self.basis_rational();
        rows.extend(other.basis_rational());
        Self::span_of(self.ambient, &rows)
    }

    pub fn intersect(&self, other: &LinearSubspace) -> LinearSubspace {
        let to_rat = |eqs: Vec<Vec<BigInt>>| -> Vec<Vec<BigRational>> {
            eqs.into_iter()
                .map(|r| r.iter().map(int_to_rat).collect())
                .collect()
        };
        let mut eqs = to_rat(self.equations());
        eqs.extend(to_rat(other.equations()));
        Self::from_equations(self.ambient, &eqs)
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.ambient];
        for (row, c) in self.basis.iter().zip(coeffs) {
            for (x, a) in v.iter_mut().zip(row) {
                *x += c * int_to_rat(a);
            }
        }
        v
    }

    /// Pivot column of each basis row.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|a| !a.is_zero()).expect("nonzero row"))
            .collect()
    }

    /// Renders as `V(l1, l2, …)` using the canonical equations.
    pub fn equations_string(&self) -> String {
        let eqs = self.equations();
        if eqs.is_empty() {
            return String::from("P^") + &alloc::format!("{}", self.ambient as isize - 1);
        }
        let mut parts = Vec::new();
        for e in eqs {
            let coeffs: Vec<BigRational> = e.iter().map(int_to_rat).collect();
            let form = crate::poly::MultiPoly::linear_form(&coeffs);
            parts.push(crate::parse::print_poly(&form));
        }
        alloc::format!("V({})", parts.join(", "))
    }
}

impl fmt::Display for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        f.write_str(&self.equations_string())
    }
}

/// Point of projective space with rational homogeneous coordinates.
/// Equality is up to a nonzero scalar.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<BigRational>,
}

impl ProjPoint {
    /// Fails (returns `None`) on the zero vector.
    pub fn new(coords: Vec<BigRational>) -> Option<Self> {
        if coords.iter().all(Zero::is_zero) {
            None
        } else {
            Some(ProjPoint { coords })
        }
    }

    pub fn from_ints(coords: &[i64]) -> Option<Self> {
        Self::new(
            coords
                .iter()
                .map(|&a| BigRational::from_integer(a.into()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Primitive integer representative with positive first nonzero coordinate.
    pub fn normalized(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.coords)
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && self.normalized() == other.normalized()
    }
}

impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        write!(f, "(")?;
        for (i, a) in n.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Projective equality of two vectors over GF(p) (both assumed nonzero).
pub fn proportional_mod(field: &crate::field::PrimeField, a: &[u64], b: &[u64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    // all 2x2 minors vanish
    let Some(i) = a.iter().position(|&x| x != 0) else {
        return b.iter().all(|&x| x == 0);
    };
    if b[i] == 0 {
        return false;
    }
    a.iter().zip(b).all(|(&x, &y)| {
        field.mul_u(x, b[i]) == field.mul_u(y, a[i])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        rows.iter().map(|r| r.iter().map(|&a| q(a)).collect()).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let id: Matrix<BigRational> = (0..5)
            .map(|i| (0..5).map(|j| q((i == j) as i64)).collect())
            .collect();
        let (r, k) = rank_kernel(&Rationals, &id, 5);
        assert_eq!(r, 5);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = qm(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let (r, k) = rank_kernel(&Rationals, &z, 3);
        assert_eq!(r, 0);
        assert_eq!(LinearSubspace::span_of(3, &k), LinearSubspace::whole(3));
    }

    #[test]
    fn hessian_at_e3_kernel() {
        // Hessian of x0x3² + x1x3x4 + x2x4² at (0,0,0,1,0), by hand:
        // f03 = 2x3 = 2, f13 = x4 = 0, f14 = x3 = 1, f33 = 2x0 = 0, f34 = x1 = 0, f44 = 2x2 = 0
        let h = qm(&[
            &[0, 0, 0, 2, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0],
            &[2, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
        ]);
        let (r, k) = rank_kernel(&Rationals, &h, 5);
        assert_eq!(r, 4);
        assert_eq!(
            LinearSubspace::span_of(5, &k),
            LinearSubspace::span_of_ints(5, &[vec![0, 0, 1, 0, 0]])
        );
    }

    #[test]
    fn determinant_and_solve() {
        let m = qm(&[&[2, 1], &[1, 3]]);
        assert_eq!(det(&Rationals, &m), q(5));
        let x = solve(&Rationals, &m, &[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let fld = PrimeField::new(101).unwrap();
        let mm: Matrix<u64> = vec![vec![2, 1], vec![1, 3]];
        assert_eq!(det(&fld, &mm), 5);
    }

    #[test]
    fn subspace_canonical_and_intersections() {
        let a = LinearSubspace::span_of_ints(4, &[vec![2, 4, 0, 0], vec![0, 0, 3, 0]]);
        let b = LinearSubspace::span_of_ints(4, &[vec![1, 2, 3, 0], vec![0, 0, -1, 0]]);
        assert_eq!(a, b);
        let c = LinearSubspace::coordinate(4, &[3]);
        assert!(c.contains(&a));
        let d = LinearSubspace::coordinate(4, &[0]);
        let i = c.intersect(&d);
        assert_eq!(i.proj_dim(), 1);
        assert_eq!(i, LinearSubspace::coordinate(4, &[0, 3]));
        assert_eq!(c.join(&d), LinearSubspace::whole(4));
        assert_eq!(format!("{}", LinearSubspace::coordinate(5, &[3, 4])), "V(x3, x4)");
    }

    #[test]
    fn projective_points_compare_up_to_scalar() {
        let a = ProjPoint::from_ints(&[2, -4, 6]).unwrap();
        let b = ProjPoint::from_ints(&[-1, 2, -3]).unwrap();
        assert_eq!(a, b);
        assert!(ProjPoint::from_ints(&[0, 0]).is_none());
        assert_eq!(format!("{a}"), "(1:-2:3)");
    }
}
