//! Dense univariate polynomials over a field, as coefficient vectors in
//! ascending degree order. An empty vector is the zero polynomial; every
//! function returns trimmed vectors (no trailing zeros).

use super::field::Field;

pub fn trim<F: Field>(f: &F, a: &mut Vec<F::Elem>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn trimmed<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    trim(f, &mut a);
    a
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trimmed(f, out)
}

/// Quotient and remainder; panics when `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("trimmed polynomial has nonzero lead");
    let mut r: Vec<F::Elem> = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = f.mul(&r[r.len() - 1], &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
        }
        q[k] = c;
        trim(f, &mut r);
    }
    (trimmed(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

/// Exact quotient, or `None` when `b` does not divide `a`.
pub fn div_exact<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let (q, r) = divrem(f, a, b);
    r.is_empty().then_some(q)
}

pub fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let li = f.inv(l).expect("nonzero leading coefficient");
            scale(f, a, &li)
        }
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trimmed(f, a.to_vec());
    let mut y = trimmed(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
        .collect();
    trimmed(f, out)
}

/// `base^e mod m`.
pub fn pow_mod<F: Field>(f: &F, base: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    acc
}

/// Multiplicity of `x` as a root of `a` (by repeated exact division by `t - x`).
/// Returns `None` for the zero polynomial.
pub fn root_multiplicity<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> Option<usize> {
    let mut cur = trimmed(f, a.to_vec());
    if cur.is_empty() {
        return None;
    }
    let lin = vec![f.neg(x), f.one()];
    let mut m = 0;
    loop {
        let (q, r) = divrem(f, &cur, &lin);
        if !r.is_empty() {
            return Some(m);
        }
        m += 1;
        cur = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    #[test]
    fn divrem_and_gcd() {
        let f = PrimeField::new(7).unwrap();
        // (t+1)(t+2) = t^2 + 3t + 2 ; (t+1)(t+3) = t^2 + 4t + 3
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd(&f, &a, &b), vec![1, 1]);
        let (q, r) = divrem(&f, &a, &[1, 1]);
        assert_eq!(q, vec![2, 1]);
        assert!(r.is_empty());
        assert_eq!(div_exact(&f, &a, &[0, 1]), None);
    }

    #[test]
    fn multiplicity_by_division() {
        let f = PrimeField::new(11).unwrap();
        // t^3 (t - 2)
        let a = mul(&f, &[0, 0, 0, 1], &[9, 1]);
        assert_eq!(root_multiplicity(&f, &a, &0), Some(3));
        assert_eq!(root_multiplicity(&f, &a, &2), Some(1));
        assert_eq!(root_multiplicity(&f, &a, &5), Some(0));
        assert_eq!(root_multiplicity(&f, &[], &5), None);
    }

    #[test]
    fn derivative_in_small_characteristic() {
        let f = PrimeField::new(5).unwrap();
        assert!(derivative(&f, &[0, 0, 0, 0, 0, 1]).is_empty());
    }
}
