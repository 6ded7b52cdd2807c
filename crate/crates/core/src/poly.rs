//! Sparse multivariate polynomials.
//!
//! [`MultiPoly`] carries exact rational coefficients and is the universal
//! container for forms, their partials, relations and determinants.
//! [`ModPoly`] is its image over a prime field, used for fast evaluation in
//! randomized checks.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{usage, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg;

/// Exponent vector. Ordered graded-lexicographically with `x0 > x1 > …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// All exponent vectors of total degree `deg` in `nvars` variables,
    /// in descending graded-lex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Monomial(Vec::new()));
                }
                return;
            }
            if i == n - 1 {
                cur[i] = left as u16;
                out.push(Monomial(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, deg, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `n!`.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Sparse polynomial with rational coefficients in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    /// Multiply the first operand by a rational scalar; the second operand is ignored.
    Scale(BigRational),
}

/// Checked arithmetic entry point: operands must live in the same ring.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    if a.nvars != b.nvars {
        return Err(usage(alloc::format!(
            "operands have {} and {} variables",
            a.nvars, b.nvars
        )));
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::Scale(c) => a.scale(&c),
    })
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), BigRational::one());
        p
    }

    pub fn monomial(mono: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(mono.nvars());
        p.add_term(mono, c);
        p
    }

    /// Builds `Σ c·x^e` from integer coefficients, merging duplicates.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u16])]) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(
                Monomial(e.to_vec()),
                BigRational::from_integer(BigInt::from(*c)),
            );
        }
        p
    }

    /// Linear form `Σ cᵢ xᵢ`.
    pub fn linear_form(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    /// Adds `c·mono` in place, keeping the zero-free invariant.
    pub fn add_term(&mut self, mono: Monomial, c: BigRational) {
        debug_assert_eq!(mono.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> MultiPoly {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiplies by a monomial.
    pub fn mul_monomial(&self, mono: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn differentiate(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars, "variable x{i} out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.terms
                .insert(m2, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.differentiate(i)).collect()
    }

    /// Directional derivative `Σ pᵢ ∂f/∂xᵢ`.
    pub fn directional_derivative(&self, p: &[BigRational]) -> MultiPoly {
        assert_eq!(p.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            out = &out + &self.differentiate(i).scale(pi);
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let maxe = self.max_exponents();
        let pows = power_table(&Rationals, point, &maxe);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &pows[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Value at a point of GF(p)ⁿ; fails if p divides a coefficient denominator.
    pub fn eval_mod(&self, field: &PrimeField, point: &[u64]) -> Result<u64> {
        Ok(self.to_mod(field)?.eval(point))
    }

    /// Reduction modulo `p`.
    pub fn to_mod(&self, field: &PrimeField) -> Result<ModPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let r = field.reduce_rational(c)?;
            if r != 0 {
                terms.push((m.clone(), r));
            }
        }
        Ok(ModPoly {
            nvars: self.nvars,
            field: *field,
            terms,
        })
    }

    fn max_exponents(&self) -> Vec<u16> {
        let mut maxe = vec![0u16; self.nvars];
        for m in self.terms.keys() {
            for (a, &e) in maxe.iter_mut().zip(&m.0) {
                *a = (*a).max(e);
            }
        }
        maxe
    }

    /// Substitutes `x_i ↦ images[i]`; all images share one ring.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let maxe = self.max_exponents();
        let mut pows: Vec<Vec<MultiPoly>> = Vec::with_capacity(self.nvars);
        for (i, img) in images.iter().enumerate() {
            let mut row = vec![MultiPoly::one(target)];
            for k in 1..=maxe[i] as usize {
                let next = &row[k - 1] * img;
                row.push(next);
            }
            pows.push(row);
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &pows[i][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// `f(T x)`: replaces `x_i` by `Σ_j T[i][j] x_j`. `T` must be invertible.
    pub fn substitute_linear(&self, t: &[Vec<BigRational>]) -> Result<MultiPoly> {
        let n = self.nvars;
        if t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(usage("substitution matrix must be square of size nvars"));
        }
        if linalg::rank(&Rationals, t) != n {
            return Err(usage("substitution matrix is singular"));
        }
        let images: Vec<MultiPoly> = t.iter().map(|row| MultiPoly::linear_form(row)).collect();
        if n == 0 {
            return Ok(self.clone());
        }
        Ok(self.compose(&images))
    }

    /// Renames variable `i` to `map[i]` inside a ring of `new_nvars` variables.
    pub fn map_vars(&self, map: &[usize], new_nvars: usize) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = MultiPoly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; new_nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Same polynomial viewed in a ring with more variables appended.
    pub fn extend_vars(&self, new_nvars: usize) -> MultiPoly {
        assert!(new_nvars >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.map_vars(&map, new_nvars)
    }

    /// Greatest monomial dividing every term (`1` for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, mono: &Monomial) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.div(mono)?, c.clone());
        }
        Some(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, d.nvars);
        let (lm, lc) = d.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&lm)?;
            let c = rc / &lc;
            rem = &rem - &d.mul_monomial(&m, &c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Scales to integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<BigRational> = self.terms().map(|(_, c)| c.clone()).collect();
        let ints = crate::field::primitive_integer_vector(&coeffs);
        let mut out = MultiPoly::zero(self.nvars);
        for ((m, _), c) in self.terms().zip(ints) {
            out.terms.insert(m.clone(), BigRational::from_integer(c));
        }
        out
    }

    /// True when the two polynomials differ by a nonzero rational factor.
    pub fn proportional(&self, other: &MultiPoly) -> bool {
        self.nvars == other.nvars && self.primitive() == other.primitive()
    }

    /// Euler operator `Σ xᵢ ∂f/∂xᵢ`.
    pub fn euler(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for i in 0..self.nvars {
            let xi = MultiPoly::var(self.nvars, i);
            out = &out + &(&xi * &self.differentiate(i));
        }
        out
    }

    /// `(Σ pᵢ ∂ᵢ)^k f`.
    pub fn directional_power(&self, p: &[BigRational], k: u32) -> MultiPoly {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.directional_derivative(p);
        }
        out
    }
}

fn power_table<F: Field>(field: &F, point: &[F::Elem], maxe: &[u16]) -> Vec<Vec<F::Elem>> {
    point
        .iter()
        .zip(maxe)
        .map(|(x, &m)| {
            let mut row = Vec::with_capacity(m as usize + 1);
            row.push(field.one());
            for k in 1..=m as usize {
                let next = field.mul(&row[k - 1], x);
                row.push(next);
            }
            row
        })
        .collect()
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in addition");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in multiplication");
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print_poly(self))
    }
}

/// Polynomial over GF(p) in sparse form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    nvars: usize,
    field: PrimeField,
    terms: Vec<(Monomial, u64)>,
}

impl ModPoly {
    pub fn zero(nvars: usize, field: PrimeField) -> Self {
        ModPoly {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    fn from_map(nvars: usize, field: PrimeField, map: BTreeMap<Monomial, u64>) -> Self {
        ModPoly {
            nvars,
            field,
            terms: map.into_iter().rev().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let fld = &self.field;
        let mut maxe = vec![0u16; self.nvars];
        for (m, _) in &self.terms {
            for (a, &e) in maxe.iter_mut().zip(&m.0) {
                *a = (*a).max(e);
            }
        }
        let pows = power_table(fld, point, &maxe);
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = fld.mul_u(t, pows[i][e as usize]);
                }
            }
            acc = fld.add_u(acc, t);
        }
        acc
    }

    pub fn differentiate(&self, i: usize) -> ModPoly {
        let fld = &self.field;
        let mut map = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            let v = fld.mul_u(*c, fld.reduce_u64(e as u64));
            if v != 0 {
                map.insert(m2, v);
            }
        }
        ModPoly::from_map(self.nvars, self.field, map)
    }

    pub fn gradient(&self) -> Vec<ModPoly> {
        (0..self.nvars).map(|i| self.differentiate(i)).collect()
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        assert_eq!(self.nvars, other.nvars);
        let fld = &self.field;
        let mut map: BTreeMap<Monomial, u64> = self.terms.iter().cloned().collect();
        for (m, c) in &other.terms {
            let e = map.entry(m.clone()).or_insert(0);
            *e = fld.add_u(*e, *c);
        }
        ModPoly::from_map(self.nvars, self.field, map)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let fld = &self.field;
        let map = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), fld.mul_u(*a, c)))
            .collect();
        ModPoly::from_map(self.nvars, self.field, map)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        assert_eq!(self.nvars, other.nvars);
        let fld = &self.field;
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = map.entry(m1.mul(m2)).or_insert(0);
                *e = fld.add_u(*e, fld.mul_u(*c1, *c2));
            }
        }
        ModPoly::from_map(self.nvars, self.field, map)
    }

    /// `(Σ pᵢ ∂ᵢ)^k f` over GF(p).
    pub fn directional_power(&self, p: &[u64], k: u32) -> ModPoly {
        let mut cur = self.clone();
        for _ in 0..k {
            let mut acc = ModPoly::zero(self.nvars, self.field);
            for (i, &pi) in p.iter().enumerate() {
                if pi != 0 {
                    acc = acc.add(&cur.differentiate(i).scale(pi));
                }
            }
            cur = acc;
        }
        cur
    }

    /// Coefficients (low to high) of `t ↦ f(a + t·b)`.
    pub fn restrict_to_line(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let fld = &self.field;
        let deg = self.total_degree().unwrap_or(0) as usize;
        // evaluate at deg+1 nodes and interpolate
        let nodes: Vec<u64> = (0..=deg as u64).collect();
        let values: Vec<u64> = nodes
            .iter()
            .map(|&t| {
                let pt: Vec<u64> = a
                    .iter()
                    .zip(b)
                    .map(|(&ai, &bi)| fld.add_u(ai, fld.mul_u(t, bi)))
                    .collect();
                self.eval(&pt)
            })
            .collect();
        crate::univariate::interpolate(fld, &nodes, &values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::parse::parse_poly_str;

    fn p(s: &str) -> MultiPoly {
        parse_poly_str(s).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x0 + x1");
        let b = p("x0 - x1");
        assert_eq!(&a * &b, p("x0^2 - x1^2"));
    }

    #[test]
    fn add_zero_is_identity() {
        let f = p("x0*x3^2 + x1*x3*x4 + x2*x4^2");
        let z = MultiPoly::zero(5);
        assert_eq!(poly_arith(&f, &z, PolyOp::Add).unwrap(), f);
    }

    #[test]
    fn monomial_product() {
        let a = p("x0*x3^2").extend_vars(5);
        let b = p("x1*x4");
        assert_eq!(&a * &b, p("x0*x1*x3^2*x4"));
    }

    #[test]
    fn mismatched_rings_are_usage_errors() {
        let a = p("x0");
        let b = p("x1");
        assert!(matches!(
            poly_arith(&a, &b, PolyOp::Add),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn derivatives() {
        let f = p("x0*x3^2 + x1*x3*x4 + x2*x4^2");
        assert_eq!(f.differentiate(3), p("2*x0*x3 + x1*x4").extend_vars(5));
        assert!(p("x0*x3^2").differentiate(2).is_zero());
        assert_eq!(p("x0^3").differentiate(0), p("3*x0^2"));
    }

    #[test]
    fn evaluation() {
        let f = p("x0*x3^2 + x1*x3*x4 + x2*x4^2");
        assert_eq!(f.eval(&[q(1), q(1), q(1), q(1), q(1)]), q(3));
        assert_eq!(f.eval(&[q(0), q(0), q(0), q(0), q(0)]), q(0));
        let c = p("x0*x2 - x1^2");
        assert_eq!(c.eval(&[q(1), q(2), q(4)]), q(0));
        let fld = PrimeField::mersenne61();
        assert_eq!(f.eval_mod(&fld, &[1, 1, 1, 1, 1]).unwrap(), 3);
    }

    #[test]
    fn reduction_error_on_bad_denominator() {
        let f = p("1/7*x0");
        let fld = PrimeField::new(7).unwrap();
        assert_eq!(
            f.eval_mod(&fld, &[1]),
            Err(Error::Reduction { prime: 7 })
        );
    }

    #[test]
    fn linear_substitutions() {
        let f = p("x0*x3^2 + x1*x3*x4 + x2*x4^2");
        let id: Vec<Vec<BigRational>> = (0..5)
            .map(|i| (0..5).map(|j| q((i == j) as i64)).collect())
            .collect();
        assert_eq!(f.substitute_linear(&id).unwrap(), f);

        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(p("x0^2").extend_vars(2).substitute_linear(&swap).unwrap(), p("x1^2"));

        let singular = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(p("x0*x1").substitute_linear(&singular).is_err());
    }

    #[test]
    fn p4_normal_form_reduction() {
        // x0' = x0 + a x3 + b x4, x2' = x2 + c x3 + d x4 absorbs D(x3, x4)
        let (a, b, c, d) = (3i64, -2i64, 5i64, 7i64);
        let y = p(&alloc::format!(
            "x0*x3^2 + 2*x1*x3*x4 + x2*x4^2 + ({a}*x3 + {b}*x4)*x3^2 + ({c}*x3 + {d}*x4)*x4^2"
        ));
        let mut t: Vec<Vec<BigRational>> = (0..5)
            .map(|i| (0..5).map(|j| q((i == j) as i64)).collect())
            .collect();
        // f(T x) with x0 -> x0 - a x3 - b x4 and x2 -> x2 - c x3 - d x4 undoes the shift
        t[0][3] = q(-a);
        t[0][4] = q(-b);
        t[2][3] = q(-c);
        t[2][4] = q(-d);
        let target = p("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2");
        assert_eq!(y.substitute_linear(&t).unwrap(), target);
    }

    #[test]
    fn exact_division() {
        let a = p("x0^2 + x0*x1 - 2*x1^2");
        let d = p("x0 - x1");
        let quot = a.div_exact(&d).unwrap();
        assert_eq!(quot, p("x0 + 2*x1"));
        assert!(p("x0^2 + x1^2").div_exact(&d).is_none());
    }

    #[test]
    fn graded_lex_listing() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].exponents(), &[2, 0, 0]);
        assert_eq!(ms[5].exponents(), &[0, 0, 2]);
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn euler_relation_on_cubic() {
        let f = p("x0*x4*x5 + x1*x4^2 + x2*x4*x6 + x3*x5*x6");
        assert_eq!(f.euler(), f.scale_int(3));
    }

    #[test]
    fn mod_poly_line_restriction() {
        let fld = PrimeField::mersenne61();
        let f = p("x0*x1 - x2^2").to_mod(&fld).unwrap();
        let a = [1u64, 2, 3];
        let b = [4u64, 5, 6];
        let coeffs = f.restrict_to_line(&a, &b);
        for t in [0u64, 7, 11] {
            let pt: Vec<u64> = a
                .iter()
                .zip(&b)
                .map(|(&x, &y)| fld.add_u(x, fld.mul_u(t, y)))
                .collect();
            let direct = f.eval(&pt);
            let via = crate::univariate::eval(&fld, &coeffs, t);
            assert_eq!(direct, via);
        }
    }
}
