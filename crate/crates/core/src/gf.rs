//! Table-driven arithmetic in GF(p^h).
//!
//! Elements are encoded as integers `0..q` by reading the coefficients of
//! their polynomial representative as base-p digits (constant term least
//! significant). `0` is zero and `1` is one in every field.

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest field order accepted by [`Field::new`].
pub const DEFAULT_MAX_ORDER: u64 = 128;

/// Conway polynomials, coefficients from the constant term up, leading 1 included.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
];

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^h` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut h) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p, h))
}

impl Field {
    pub fn new(p: u64, h: u32) -> Result<Self> {
        Self::with_bound(p, h, DEFAULT_MAX_ORDER)
    }

    pub fn from_order(q: u64) -> Result<Self> {
        let (p, h) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, h)
    }

    pub fn with_bound(p: u64, h: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(h).filter(|&q| q <= bound && q <= u32::MAX as u64 / 2).ok_or(Error::OrderTooLarge {
            p,
            h,
            bound,
        })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = CONWAY
            .iter()
            .find(|(cp, ch, _)| *cp == p && *ch == h)
            .map(|(_, _, m)| m.to_vec())
            .unwrap_or_else(|| first_irreducible(p, h));
        Ok(Self::from_modulus(p, h, q, modulus))
    }

    fn from_modulus(p: u32, h: u32, q: u32, modulus: Vec<u32>) -> Self {
        let qs = q as usize;
        let digits: Vec<Vec<u32>> = (0..q).map(|x| decode(x, p, h)).collect();
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&sum, p);
                mul[a * qs + b] = encode(&poly_mul_mod(&digits[a], &digits[b], &modulus, p), p);
            }
        }
        let neg = (0..qs).map(|a| (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap()).collect();
        let inv = (0..qs)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * qs + b as usize] == 1).unwrap() })
            .collect();
        Field { p, h, q, modulus, add, mul, neg, inv }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, mut base: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.p as u64)
    }

    /// `sqrt(q)` when the degree is even.
    pub fn sqrt_order(&self) -> Option<u32> {
        self.h.is_multiple_of(2).then(|| self.p.pow(self.h / 2))
    }

    /// The subfield of order `sqrt(q)`: the fixed points of `x -> x^sqrt(q)`.
    pub fn subfield(&self) -> Result<Vec<Elem>> {
        let root = self.sqrt_order().ok_or(Error::OddDegree(self.h))?;
        Ok(self.elements().filter(|&x| self.pow(x, root as u64) == x).collect())
    }
}

fn decode(mut x: u32, p: u32, h: u32) -> Vec<u32> {
    (0..h)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two residues modulo a monic polynomial of degree `h`.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let h = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (h..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = top - h + i;
            prod[idx] = (prod[idx] + (p - c) * m) % p;
        }
    }
    prod.truncate(h);
    prod.resize(h, 0);
    prod
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = (1..p).find(|&x| x * m[dm] % p == 1).unwrap();
    while r.len() > dm {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * mi % p) % p;
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            let mut f = decode(code as u32, p, d as u32);
            f.push(1);
            if poly_rem(poly, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `h` in the base-p encoding order.
fn first_irreducible(p: u32, h: u32) -> Vec<u32> {
    if h == 1 {
        return vec![0, 1];
    }
    (0..(p as u64).pow(h))
        .map(|code| {
            let mut f = decode(code as u32, p, h);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<Field> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1)]
            .into_iter()
            .map(|(p, h)| Field::new(p, h).unwrap())
            .collect()
    }

    #[test]
    fn gf2_identity() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn frobenius_fixes_prime_field_of_gf4() {
        let f = Field::new(2, 2).unwrap();
        let fixed: Vec<_> = f.elements().filter(|&x| f.mul(x, x) == x).collect();
        assert_eq!(fixed, vec![0, 1]);
    }

    #[test]
    fn gf16_has_four_element_subfield() {
        let f = Field::new(2, 4).unwrap();
        let fixed = f.elements().filter(|&x| f.pow(x, 4) == x).count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn field_axioms_exhaustive_up_to_16() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        for f in small_fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn subfields() {
        assert_eq!(Field::new(2, 2).unwrap().subfield().unwrap(), vec![0, 1]);
        let gf9 = Field::new(3, 2).unwrap();
        assert_eq!(gf9.subfield().unwrap(), vec![0, 1, 2]);
        let gf16 = Field::new(2, 4).unwrap();
        let sub = gf16.subfield().unwrap();
        assert_eq!(sub.len(), 4);
        for &a in &sub {
            for &b in &sub {
                assert!(sub.contains(&gf16.mul(a, b)));
                assert!(sub.contains(&gf16.add(a, b)));
            }
        }
        assert_eq!(Field::new(2, 3).unwrap().subfield(), Err(Error::OddDegree(3)));
    }

    #[test]
    fn conway_table_is_irreducible_and_primitive() {
        for &(p, h, m) in CONWAY {
            assert!(is_irreducible(m, p), "{p}^{h}");
            let f = Field::new(p as u64, h).unwrap();
            // x is encoded as p; it must generate the multiplicative group
            let x = p;
            let q = f.order() as u64;
            let order = (1..q).find(|&e| f.pow(x, e) == 1).unwrap();
            assert_eq!(order, q - 1, "{p}^{h}");
        }
    }

    #[test]
    fn fallback_modulus_for_fields_outside_the_table() {
        let f = Field::new(7, 2).unwrap();
        assert_eq!(f.order(), 49);
        assert!(is_irreducible(f.modulus(), 7));
        for a in 1..49 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.subfield().unwrap().len(), 7);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1), Err(Error::NonPrimeCharacteristic(4)));
        assert_eq!(Field::new(2, 0), Err(Error::ZeroDegree));
        assert!(matches!(Field::new(2, 8), Err(Error::OrderTooLarge { .. })));
        assert!(Field::with_bound(2, 8, 256).is_ok());
        assert_eq!(Field::from_order(12), Err(Error::NotPrimePower(12)));
        assert_eq!(Field::from_order(81).unwrap().degree(), 4);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = Field::new(3, 3).unwrap();
        let b = Field::new(3, 3).unwrap();
        assert_eq!(a.mul, b.mul);
        assert_eq!(a.add, b.add);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(128), Some((2, 7)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(36), None);
        assert_eq!(prime_power(13), Some((13, 1)));
    }
}
