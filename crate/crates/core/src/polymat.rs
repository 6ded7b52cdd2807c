//! Matrices with polynomial entries: symbolic determinant, Pfaffian and
//! pointwise evaluation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{usage, Result};
use crate::field::PrimeField;
use crate::poly::{ModPoly, MultiPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let nvars = rows
            .first()
            .and_then(|row| row.first())
            .map_or(0, MultiPoly::nvars);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(usage("ragged polynomial matrix"));
            }
            for e in row {
                if e.nvars() != nvars {
                    return Err(usage("matrix entries use different variable counts"));
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            entries,
        })
    }

    /// Symmetric matrix; fails unless `rows` is symmetric entrywise.
    pub fn symmetric(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        if !m.is_symmetric() {
            return Err(usage("matrix is not symmetric"));
        }
        Ok(m)
    }

    /// Generic skew-symmetric `n × n` matrix with upper entries `m_ij`
    /// (`i < j`) mapped to `x0, x1, …` in lexicographic order of `(i, j)`.
    pub fn generic_skew(n: usize) -> Self {
        let nv = n * (n.saturating_sub(1)) / 2;
        let mut idx = 0;
        let mut rows = vec![vec![MultiPoly::zero(nv); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = MultiPoly::var(nv, idx);
                rows[j][i] = -&v;
                rows[i][j] = v;
                idx += 1;
            }
        }
        PolyMatrix {
            rows: n,
            cols: n,
            nvars: nv,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Generic `n × n` matrix with entry `(i, j)` equal to `x_{n i + j}`.
    pub fn generic(n: usize) -> Self {
        let nv = n * n;
        PolyMatrix {
            rows: n,
            cols: n,
            nvars: nv,
            entries: (0..nv).map(|k| MultiPoly::var(nv, k)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        assert_eq!(v.nvars(), self.nvars);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<MultiPoly>> {
        self.entries.chunks(self.cols.max(1)).map(<[MultiPoly]>::to_vec).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_zero()).count()
    }

    /// Applies `f` to each entry.
    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        let entries: Vec<MultiPoly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, MultiPoly::nvars);
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries,
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }

    pub fn to_mod(&self, field: &PrimeField) -> Result<ModMatrix> {
        Ok(ModMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| e.to_mod(field))
                .collect::<Result<_>>()?,
        })
    }

    pub fn eval_mod(&self, field: &PrimeField, point: &[u64]) -> Result<Vec<Vec<u64>>> {
        Ok(self.to_mod(field)?.eval(point))
    }

    /// Exact determinant. Sparse matrices are split into independent blocks
    /// and expanded by cofactors; dense ones use fraction-free elimination.
    pub fn det_symbolic(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(usage(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one(self.nvars));
        }
        let rows = self.row_vecs();
        let Some((sign, blocks)) = split_blocks(&rows) else {
            return Ok(MultiPoly::zero(self.nvars));
        };
        let mut det = MultiPoly::one(self.nvars);
        if sign < 0 {
            det = -&det;
        }
        for block in blocks {
            let d = det_block(&block, self.nvars);
            if d.is_zero() {
                return Ok(d);
            }
            det = &det * &d;
        }
        Ok(det)
    }

    /// Pfaffian by expansion along the first row.
    pub fn pfaffian(&self) -> Result<MultiPoly> {
        if !self.is_square() || self.rows % 2 == 1 {
            return Err(usage("the Pfaffian needs an even-sized square matrix"));
        }
        if !self.is_skew() {
            return Err(usage("the Pfaffian needs a skew-symmetric matrix"));
        }
        let mut memo = BTreeMap::new();
        let all: Vec<usize> = (0..self.rows).collect();
        Ok(self.pf_rec(&all, &mut memo))
    }

    fn pf_rec(&self, idx: &[usize], memo: &mut BTreeMap<Vec<usize>, MultiPoly>) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::one(self.nvars);
        }
        if let Some(v) = memo.get(idx) {
            return v.clone();
        }
        let first = idx[0];
        let mut acc = MultiPoly::zero(self.nvars);
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let a = self.get(first, j);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
            let sub = self.pf_rec(&rest, memo);
            if sub.is_zero() {
                continue;
            }
            let term = a * &sub;
            acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        memo.insert(idx.to_vec(), acc.clone());
        acc
    }
}

/// Splits the nonzero pattern into connected row/column blocks. Returns the
/// sign of the block permutation and the blocks, or `None` when some block is
/// structurally singular.
fn split_blocks(rows: &[Vec<MultiPoly>]) -> Option<(i32, Vec<Vec<Vec<MultiPoly>>>)> {
    let n = rows.len();
    // union-find over rows (0..n) and columns (n..2n)
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_zero() {
                let a = find(&mut parent, i);
                let b = find(&mut parent, n + j);
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().0.push(i);
        let c = find(&mut parent, n + i);
        groups.entry(c).or_default().1.push(i);
    }
    let mut row_order = Vec::with_capacity(n);
    let mut col_order = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    // order groups by their smallest row for determinism
    let mut gs: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
    gs.sort();
    for (rs, cs) in gs {
        if rs.len() != cs.len() {
            return None;
        }
        blocks.push(
            rs.iter()
                .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                .collect(),
        );
        row_order.extend(rs);
        col_order.extend(cs);
    }
    Some((perm_sign(&row_order) * perm_sign(&col_order), blocks))
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn det_block(rows: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = rows.len();
    let zeros = rows.iter().flatten().filter(|e| e.is_zero()).count();
    if 2 * zeros >= n * n || n > 10 {
        laplace(rows, nvars)
    } else {
        bareiss(rows, nvars)
    }
}

/// Fraction-free elimination; every division is exact.
pub fn bareiss(rows: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = rows.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut a: Vec<Vec<MultiPoly>> = rows.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return MultiPoly::zero(nvars);
            };
            a.swap(k, s);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination step is exact");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Cofactor expansion down the rows with memoized minors (keyed by the set
/// of columns still available); zero entries and zero minors are skipped.
pub fn laplace(rows: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = rows.len();
    assert!(n <= 64, "cofactor expansion supports at most 64 columns");
    let mut memo: BTreeMap<u64, MultiPoly> = BTreeMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    laplace_rec(rows, nvars, 0, full, &mut memo)
}

fn laplace_rec(
    rows: &[Vec<MultiPoly>],
    nvars: usize,
    row: usize,
    avail: u64,
    memo: &mut BTreeMap<u64, MultiPoly>,
) -> MultiPoly {
    if row == rows.len() {
        return MultiPoly::one(nvars);
    }
    if let Some(v) = memo.get(&avail) {
        return v.clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let mut parity = 0;
    for (j, e) in rows[row].iter().enumerate() {
        if avail & (1 << j) == 0 {
            continue;
        }
        if !e.is_zero() {
            let minor = laplace_rec(rows, nvars, row + 1, avail & !(1 << j), memo);
            if !minor.is_zero() {
                let t = e * &minor;
                acc = if parity == 0 { &acc + &t } else { &acc - &t };
            }
        }
        parity ^= 1;
    }
    memo.insert(avail, acc.clone());
    acc
}

/// A [`PolyMatrix`] reduced modulo a prime, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ModPoly>,
}

impl ModMatrix {
    pub fn eval(&self, point: &[u64]) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entries[i * self.cols + j].eval(point))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .row_vecs()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(crate::parse::print_poly).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Evaluates a matrix of rationals to check it is the zero matrix.
pub fn is_zero_matrix(m: &[Vec<BigRational>]) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn mat(nvars: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_poly(s, Some(nvars)).unwrap().poly)
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn p(nvars: usize, s: &str) -> MultiPoly {
        parse_poly(s, Some(nvars)).unwrap().poly
    }

    #[test]
    fn two_by_two() {
        let m = mat(3, &[&["x0", "x1"], &["x1", "x2"]]);
        assert_eq!(m.det_symbolic().unwrap(), p(3, "x0*x2 - x1^2"));
        assert_eq!(bareiss(&m.row_vecs(), 3), p(3, "x0*x2 - x1^2"));
    }

    #[test]
    fn perazzo_matrix_of_the_seven_variable_example() {
        let m = mat(
            7,
            &[
                &["2*x1", "x0", "x2"],
                &["x0", "0", "x3"],
                &["x2", "x3", "0"],
            ],
        );
        assert_eq!(m.det_symbolic().unwrap(), p(7, "2*x0*x2*x3 - 2*x1*x3^2"));
        assert_eq!(bareiss(&m.row_vecs(), 7), p(7, "2*x0*x2*x3 - 2*x1*x3^2"));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = mat(2, &[&["x0", "x1"]]);
        assert!(m.det_symbolic().is_err());
    }

    #[test]
    fn generic_three_by_three_agrees() {
        let m = PolyMatrix::generic(3);
        let a = bareiss(&m.row_vecs(), 9);
        let b = laplace(&m.row_vecs(), 9);
        assert_eq!(a, b);
        assert_eq!(a.num_terms(), 6);
        assert_eq!(m.det_symbolic().unwrap(), a);
    }

    #[test]
    fn block_permuted_determinant_sign() {
        // [[0, x0], [x1, 0]] has det -x0*x1
        let m = mat(2, &[&["0", "x0"], &["x1", "0"]]);
        assert_eq!(m.det_symbolic().unwrap(), p(2, "-x0*x1"));
        let z = mat(2, &[&["x0", "x1"], &["0", "0"]]);
        assert!(z.det_symbolic().unwrap().is_zero());
    }

    #[test]
    fn pfaffians() {
        let m2 = PolyMatrix::generic_skew(2);
        assert_eq!(m2.pfaffian().unwrap(), MultiPoly::var(1, 0));
        let m4 = PolyMatrix::generic_skew(4);
        // x0..x5 = m01 m02 m03 m12 m13 m23
        assert_eq!(m4.pfaffian().unwrap(), p(6, "x0*x5 - x1*x4 + x2*x3"));
        let m6 = PolyMatrix::generic_skew(6);
        let pf = m6.pfaffian().unwrap();
        assert_eq!(pf.num_terms(), 15);
        assert_eq!(&pf * &pf, m6.det_symbolic().unwrap());
        assert!(PolyMatrix::generic_skew(3).pfaffian().is_err());
        assert!(PolyMatrix::generic(2).pfaffian().is_err());
    }
}
