//! Dense univariate polynomials over GF(p), coefficients stored low degree first.
//! Enough for line restrictions and root finding.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::field::PrimeField;

pub type UPoly = Vec<u64>;

pub fn trim(a: &mut UPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Horner evaluation.
pub fn eval(fld: &PrimeField, a: &[u64], t: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| fld.add_u(fld.mul_u(acc, t), c))
}

pub fn add(fld: &PrimeField, a: &[u64], b: &[u64]) -> UPoly {
    let n = a.len().max(b.len());
    let mut r: UPoly = (0..n)
        .map(|i| {
            fld.add_u(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(&mut r);
    r
}

pub fn sub(fld: &PrimeField, a: &[u64], b: &[u64]) -> UPoly {
    let nb: UPoly = b.iter().map(|&c| fld.neg_u(c)).collect();
    add(fld, a, &nb)
}

pub fn mul(fld: &PrimeField, a: &[u64], b: &[u64]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = fld.add_u(r[i + j], fld.mul_u(x, y));
        }
    }
    trim(&mut r);
    r
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn divrem(fld: &PrimeField, a: &[u64], b: &[u64]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv = fld.inv_u(b[db]).expect("nonzero leading coefficient");
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = fld.mul_u(r[dr], inv);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[shift + j] = fld.sub_u(r[shift + j], fld.mul_u(c, bj));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(fld: &PrimeField, a: &[u64], b: &[u64]) -> UPoly {
    divrem(fld, a, b).1
}

pub fn make_monic(fld: &PrimeField, a: &[u64]) -> UPoly {
    let mut a = a.to_vec();
    trim(&mut a);
    if let Some(&lc) = a.last() {
        let inv = fld.inv_u(lc).expect("nonzero");
        for c in &mut a {
            *c = fld.mul_u(*c, inv);
        }
    }
    a
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(fld: &PrimeField, a: &[u64], b: &[u64]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(fld, &x, &y);
        x = y;
        y = r;
    }
    make_monic(fld, &x)
}

/// `base^e mod m` by square and multiply.
pub fn powmod(fld: &PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> UPoly {
    let mut result: UPoly = rem(fld, &[1], m);
    let mut b = rem(fld, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(fld, &mul(fld, &result, &b), m);
        }
        b = rem(fld, &mul(fld, &b, &b), m);
        e >>= 1;
    }
    result
}

/// Lagrange interpolation through `(nodes[i], values[i])` with distinct nodes;
/// returns the coefficient vector of degree < nodes.len() (trimmed).
pub fn interpolate(fld: &PrimeField, nodes: &[u64], values: &[u64]) -> UPoly {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    // Newton divided differences
    let mut coef: Vec<u64> = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = fld.sub_u(coef[i], coef[i - 1]);
            let den = fld.sub_u(nodes[i], nodes[i - j]);
            coef[i] = fld.mul_u(num, fld.inv_u(den).expect("distinct interpolation nodes"));
        }
    }
    let mut r: UPoly = Vec::new();
    for i in (0..n).rev() {
        // r = r * (t - nodes[i]) + coef[i]
        r = mul(fld, &r, &[fld.neg_u(nodes[i]), 1]);
        r = add(fld, &r, &[coef[i]]);
    }
    trim(&mut r);
    r
}

/// Product of the distinct linear factors of `g`, i.e. `gcd(t^p - t, g)`.
pub fn linear_part(fld: &PrimeField, g: &[u64]) -> UPoly {
    if degree(g).is_none() {
        return Vec::new();
    }
    let tp = powmod(fld, &[0, 1], fld.modulus(), g);
    let h = sub(fld, &tp, &[0, 1]);
    gcd(fld, &h, g)
}

/// Some root of `g` in GF(p), if one exists. Equal-degree splitting
/// (Cantor–Zassenhaus) of the linear part.
pub fn find_root<R: Rng + ?Sized>(fld: &PrimeField, g: &[u64], rng: &mut R) -> Option<u64> {
    let mut h = linear_part(fld, g);
    let p = fld.modulus();
    loop {
        match degree(&h) {
            None | Some(0) => return None,
            Some(1) => return Some(fld.neg_u(make_monic(fld, &h)[0])),
            Some(_) => {}
        }
        if h[0] == 0 {
            return Some(0);
        }
        if p == 2 {
            // roots are among {0, 1}; 0 was excluded above
            return Some(1);
        }
        let a = rng.gen_range(0..p);
        let w = powmod(fld, &[a, 1], (p - 1) / 2, &h);
        let d = gcd(fld, &sub(fld, &w, &[1]), &h);
        let dd = degree(&d).unwrap_or(0);
        if dd > 0 && dd < degree(&h).unwrap_or(0) {
            // keep the smaller factor
            let (other, _) = divrem(fld, &h, &d);
            h = if dd * 2 <= degree(&h).unwrap_or(0) { d } else { make_monic(fld, &other) };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interpolation_recovers_coefficients() {
        let fld = PrimeField::mersenne61();
        let coeffs = vec![5, 0, 7, 1];
        let nodes: Vec<u64> = (1..=4).collect();
        let vals: Vec<u64> = nodes.iter().map(|&t| eval(&fld, &coeffs, t)).collect();
        assert_eq!(interpolate(&fld, &nodes, &vals), coeffs);
    }

    #[test]
    fn gcd_and_division() {
        let fld = PrimeField::new(101).unwrap();
        // (t-1)(t-2) and (t-1)(t-3)
        let a = mul(&fld, &[100, 1], &[99, 1]);
        let b = mul(&fld, &[100, 1], &[98, 1]);
        assert_eq!(gcd(&fld, &a, &b), vec![100, 1]);
        let (q, r) = divrem(&fld, &a, &[100, 1]);
        assert_eq!(q, vec![99, 1]);
        assert!(r.is_empty());
    }

    #[test]
    fn roots_are_roots() {
        let fld = PrimeField::mersenne61();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // (t - 12345)(t - 777)(t^2 + 1)
        let g = mul(
            &fld,
            &mul(&fld, &[fld.neg_u(12345), 1], &[fld.neg_u(777), 1]),
            &[1, 0, 1],
        );
        let r = find_root(&fld, &g, &mut rng).unwrap();
        assert_eq!(eval(&fld, &g, r), 0);
        // t^2 - 3 has no root mod 7
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(find_root(&f7, &[4, 0, 1], &mut rng), None);
        assert_eq!(find_root(&f7, &[0, 0, 1], &mut rng), Some(0));
    }
}
