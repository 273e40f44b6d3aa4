//! A fast, one-sided coprimality test used to skip the PRS on generic inputs.
//!
//! For a variable `v`, pick values for the other variables in `R = F_p[s]/(m)` and run
//! Euclid on the univariate images in `R[v]`, dividing only by units. If the leading
//! coefficient of `a` in `v` maps to a unit and the sequence ends in a unit constant, no
//! common factor of `a` and `b` involves `v`: its image would keep its `v`-degree (its
//! leading coefficient divides a unit) and divide every remainder. `m` is irreducible of
//! degree `k` with `p^k >= 2^40`, so over small fields the points are not confined to the
//! handful of rational lines that generic high-degree curves always meet.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{inv_mod, mul_mod, reduce_bigint, Field, FieldElement};
use crate::poly::Polynomial;

/// Prime used over `Q`; integer polynomials are reduced modulo it.
const RATIONAL_PRIME: u64 = 2_305_843_009_213_693_951;
const MIN_RING_BITS: u32 = 40;
const ATTEMPTS: u64 = 3;
/// Below this many terms the PRS is cheap enough that the test does not pay for itself.
const MIN_TERMS: usize = 16;

/// `true` only if `a` and `b` provably share no nonconstant factor. Over `Q` both must
/// have integer coefficients up to a common scale (denominators invertible mod the prime).
pub(crate) fn certainly_coprime(a: &Polynomial, b: &Polynomial) -> bool {
    if a.len() + b.len() < MIN_TERMS {
        return false;
    }
    let p = match a.field() {
        Field::Prime(p) => p,
        Field::Rational => RATIONAL_PRIME,
    };
    let (ca, cb) = match (residues(a, p), residues(b, p)) {
        (Some(x), Some(y)) => (x, y),
        _ => return false,
    };
    let ring = match Ring::new(p) {
        Some(r) => r,
        None => return false,
    };
    let mut seed = 0u64;
    (0..a.nvars()).all(|v| {
        if !a.uses_var(v) || !b.uses_var(v) {
            return true;
        }
        (0..ATTEMPTS).any(|_| {
            let point: Vec<Vec<u64>> = (0..a.nvars()).map(|_| ring.sample(&mut seed)).collect();
            let ia = ring.image(a, &ca, v, &point);
            match ia.last() {
                Some(lc) if ia.len() == a.degree_in(v) as usize + 1 && ring.inv(lc).is_some() => {}
                _ => return false,
            }
            let ib = ring.image(b, &cb, v, &point);
            ring.coprime(ia, ib)
        })
    })
}

fn residues(a: &Polynomial, p: u64) -> Option<Vec<u64>> {
    a.terms()
        .iter()
        .map(|(_, c)| match c {
            FieldElement::Residue(v) => Some(*v),
            FieldElement::Rational(r) => {
                let den = reduce_bigint(r.denom(), p);
                (den != 0).then(|| mul_mod(reduce_bigint(r.numer(), p), inv_mod(den, p), p))
            }
        })
        .collect()
}

// Dense polynomials over F_p, coefficients low to high, no trailing zeros.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// `a mod m` for monic-or-not nonzero `m`.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let inv = inv_mod(*m.last().unwrap(), p);
    while a.len() >= m.len() {
        let k = mul_mod(*a.last().unwrap(), inv, p);
        let shift = a.len() - m.len();
        for (i, &c) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - mul_mod(k, c, p)) % p;
        }
        a = trim(a);
    }
    a
}

fn poly_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a.len().wrapping_sub(1)
}

/// `u` with `u * a = 1 mod m`, if `gcd(a, m) = 1`.
fn poly_inv(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        // q = r0 / r1
        let inv = inv_mod(*r1.last().unwrap(), p);
        let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
        let mut r = r0.clone();
        while r.len() >= r1.len() {
            let k = mul_mod(*r.last().unwrap(), inv, p);
            let shift = r.len() - r1.len();
            q[shift] = k;
            for (i, &c) in r1.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(k, c, p)) % p;
            }
            r = trim(r);
        }
        let qs = poly_mul(&trim(q), &s1, p);
        let mut s = s0.clone();
        s.resize(s.len().max(qs.len()), 0);
        for (i, &c) in qs.iter().enumerate() {
            s[i] = (s[i] + p - c) % p;
        }
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, trim(s));
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(poly_rem(s0.iter().map(|&x| mul_mod(x, c, p)).collect(), m, p))
}

/// `F_p[s]/(m)`; elements are reduced coefficient vectors.
struct Ring {
    p: u64,
    modulus: Vec<u64>,
}

impl Ring {
    fn new(p: u64) -> Option<Ring> {
        let mut k = 1usize;
        let mut size = p as u128;
        while size < 1u128 << MIN_RING_BITS {
            size *= p as u128;
            k += 1;
        }
        if k == 1 {
            return Some(Ring { p, modulus: vec![0, 1] });
        }
        // Monic candidates with hashed lower coefficients; irreducibles have density ~1/k.
        let mut seed = 0x5151_u64;
        let probe = Ring { p, modulus: vec![0; k + 1] };
        for _ in 0..64 * k {
            let mut m = probe.sample(&mut seed);
            m.resize(k, 0);
            if m[0] == 0 {
                m[0] = 1;
            }
            m.push(1);
            if is_irreducible(&m, p) {
                return Some(Ring { p, modulus: m });
            }
        }
        None
    }

    fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    fn constant(&self, c: u64) -> Vec<u64> {
        trim(vec![c % self.p])
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        poly_rem(poly_mul(a, b, self.p), &self.modulus, self.p)
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p;
        }
        trim(out)
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let neg: Vec<u64> = b.iter().map(|&x| (self.p - x) % self.p).collect();
        self.add(a, &neg)
    }

    fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.is_empty() {
            return None;
        }
        poly_inv(a, &self.modulus, self.p)
    }

    /// A deterministic pseudo-random element.
    fn sample(&self, seed: &mut u64) -> Vec<u64> {
        let v = (0..self.k())
            .map(|_| {
                *seed = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
                let mut z = *seed;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
                (z ^ (z >> 31)) % self.p
            })
            .collect();
        trim(v)
    }

    /// `a` with every variable but `v` set from `point`, as coefficients in `v`.
    fn image(&self, a: &Polynomial, coeffs: &[u64], v: usize, point: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.nvars();
        let powers: Vec<Vec<Vec<u64>>> = (0..n)
            .map(|j| {
                let top = if j == v { 0 } else { a.degree_in(j) as usize };
                let mut out = vec![self.constant(1)];
                for e in 1..=top {
                    let next = self.mul(&out[e - 1], &point[j]);
                    out.push(next);
                }
                out
            })
            .collect();
        let mut out = vec![Vec::new(); a.degree_in(v) as usize + 1];
        for ((m, _), &c) in a.terms().iter().zip(coeffs) {
            let mut x = self.constant(c);
            for (j, &e) in m.exponents().iter().enumerate() {
                if j != v && e > 0 {
                    x = self.mul(&x, &powers[j][e as usize]);
                }
            }
            let slot = &mut out[m.exponent(v) as usize];
            *slot = self.add(slot, &x);
        }
        while out.last().is_some_and(|c| c.is_empty()) {
            out.pop();
        }
        out
    }

    /// Euclid in `R[v]` dividing only by units; `true` when it ends in a unit constant.
    fn coprime(&self, mut a: Vec<Vec<u64>>, mut b: Vec<Vec<u64>>) -> bool {
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
        }
        loop {
            match b.len() {
                0 => return false,
                1 => return self.inv(&b[0]).is_some(),
                _ => {}
            }
            let inv = match self.inv(b.last().unwrap()) {
                Some(i) => i,
                None => return false,
            };
            while a.len() >= b.len() {
                let k = self.mul(a.last().unwrap(), &inv);
                let shift = a.len() - b.len();
                for (i, c) in b.iter().enumerate() {
                    a[shift + i] = self.sub(&a[shift + i], &self.mul(&k, c));
                }
                while a.last().is_some_and(|c| c.is_empty()) {
                    a.pop();
                }
            }
            core::mem::swap(&mut a, &mut b);
        }
    }
}

/// Ben-Or: `m` of degree `k` is irreducible iff `gcd(s^(p^i) - s, m) = 1` for `i <= k/2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    let s = poly_rem(vec![0, 1], m, p);
    let mut h = s.clone();
    for _ in 0..k / 2 {
        h = poly_powmod(&h, p, m, p);
        let mut d = h.clone();
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        if poly_gcd_degree(m.to_vec(), trim(d), p) != 0 {
            return false;
        }
    }
    true
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}
