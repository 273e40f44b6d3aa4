//! Sparse product kernel.
//!
//! When every exponent of the result fits in a fixed-width slot, monomials are packed
//! into one `u128` (x0 in the high bits, so integer order on the key is lexicographic
//! order) and multiplied by addition. The product is then accumulated one total degree at a time (see [`by_class`]). Unpackable
//! exponents fall back to a single hash table.
//! Coefficients use the cheapest exact representation available: lazily reduced residues
//! over `F_p`, `i128` over `Z` when a size bound proves no overflow, `BigInt` otherwise, and
//! full rationals only for inputs with denominators.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::field::{Field, FieldElement};
use crate::poly::{check_cap, rational, residue, Monomial, Polynomial};

trait Coeffs {
    type C: Clone;
    fn zero(&self) -> Self::C;
    fn convert(&self, c: &FieldElement) -> Self::C;
    fn mul_add(&self, acc: &mut Self::C, a: &Self::C, b: &Self::C);
    /// Brings an accumulator into canonical form; `is_zero` and `lift` expect this.
    fn normalize(&self, _c: &mut Self::C) {}
    fn is_zero(&self, c: &Self::C) -> bool;
    fn lift(&self, c: Self::C) -> FieldElement;
}

/// Residues mod `p < 2^62`, accumulated unreduced in a `u128` (each product is below
/// `2^124`) and folded back only when the sum nears overflow.
struct Residues(u64);

impl Coeffs for Residues {
    type C = u128;
    fn zero(&self) -> u128 {
        0
    }
    fn convert(&self, c: &FieldElement) -> u128 {
        residue(c) as u128
    }
    fn mul_add(&self, acc: &mut u128, a: &u128, b: &u128) {
        // Inputs are reduced residues; the casts let this compile to one 64x64 multiply.
        *acc += (*a as u64 as u128) * (*b as u64 as u128);
        if *acc >= 1 << 127 {
            *acc %= self.0 as u128;
        }
    }
    fn normalize(&self, c: &mut u128) {
        *c %= self.0 as u128;
    }
    fn is_zero(&self, c: &u128) -> bool {
        *c == 0
    }
    fn lift(&self, c: u128) -> FieldElement {
        FieldElement::Residue((c % self.0 as u128) as u64)
    }
}

struct SmallInts;

impl Coeffs for SmallInts {
    type C = i128;
    fn zero(&self) -> i128 {
        0
    }
    fn convert(&self, c: &FieldElement) -> i128 {
        rational(c).numer().to_i128().expect("bounded by caller")
    }
    fn mul_add(&self, acc: &mut i128, a: &i128, b: &i128) {
        *acc += a * b;
    }
    fn is_zero(&self, c: &i128) -> bool {
        *c == 0
    }
    fn lift(&self, c: i128) -> FieldElement {
        FieldElement::Rational(BigRational::from_integer(BigInt::from(c)))
    }
}

struct BigInts;

impl Coeffs for BigInts {
    type C = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn convert(&self, c: &FieldElement) -> BigInt {
        rational(c).numer().clone()
    }
    fn mul_add(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        *acc += a * b;
    }
    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }
    fn lift(&self, c: BigInt) -> FieldElement {
        FieldElement::Rational(BigRational::from_integer(c))
    }
}

struct Generic(Field);

impl Coeffs for Generic {
    type C = FieldElement;
    fn zero(&self) -> FieldElement {
        self.0.zero()
    }
    fn convert(&self, c: &FieldElement) -> FieldElement {
        c.clone()
    }
    fn mul_add(&self, acc: &mut FieldElement, a: &FieldElement, b: &FieldElement) {
        *acc = self.0.add(acc, &self.0.mul(a, b));
    }
    fn is_zero(&self, c: &FieldElement) -> bool {
        self.0.is_zero(c)
    }
    fn lift(&self, c: FieldElement) -> FieldElement {
        c
    }
}

#[derive(Clone, Copy)]
struct Packing {
    bits: u32,
    nvars: usize,
}

impl Packing {
    /// A layout that holds every exponent of `a * b`, if one exists.
    fn for_product(a: &Polynomial, b: &Polynomial) -> Option<Packing> {
        let nvars = a.nvars();
        if nvars == 0 {
            return None;
        }
        let bits = (128 / nvars as u32).min(32);
        if bits < 4 {
            return None;
        }
        let limit = 1u64 << bits;
        for v in 0..nvars {
            if a.degree_in(v) as u64 + b.degree_in(v) as u64 >= limit {
                return None;
            }
        }
        Some(Packing { bits, nvars })
    }

    fn pack(&self, m: &Monomial) -> u128 {
        m.exponents().iter().fold(0u128, |acc, &e| (acc << self.bits) | e as u128)
    }

    /// `((degree, first exponent), start, end)` runs of a term list in descending order,
    /// or plain degree runs when `refine` is off. The first exponent is kept in place
    /// (not shifted down) so that class sums are plain additions.
    fn classes<C>(&self, terms: &[(u64, u128, C)], refine: bool) -> Vec<((u64, u128), usize, usize)> {
        let shift = if refine { self.bits * (self.nvars as u32 - 1) } else { 128 };
        let mut classes: Vec<((u64, u128), usize, usize)> = Vec::new();
        for (i, t) in terms.iter().enumerate() {
            let class = (t.0, t.1.checked_shr(shift).map_or(0, |k| k << shift));
            match classes.last_mut() {
                Some(last) if last.0 == class => last.2 = i + 1,
                _ => classes.push((class, i, i + 1)),
            }
        }
        classes
    }

    fn unpack(&self, key: u128) -> Monomial {
        let mask = (1u128 << self.bits) - 1;
        let mut exps: smallvec::SmallVec<[u32; 8]> = smallvec::smallvec![0; self.nvars];
        for (i, e) in exps.iter_mut().enumerate() {
            let shift = self.bits * (self.nvars - 1 - i) as u32;
            *e = ((key >> shift) & mask) as u32;
        }
        Monomial::new(&exps)
    }
}

fn accumulate<K, R, F>(ring: &R, a: &[(K, R::C)], b: &[(K, R::C)], mul_key: F, cap: usize) -> Result<Vec<(K, R::C)>>
where
    K: Hash + Eq,
    R: Coeffs,
    F: Fn(&K, &K) -> Result<K>,
{
    let mut acc: HashMap<K, R::C> = HashMap::with_capacity(b.len() * 2);
    for (ka, ca) in a {
        for (kb, cb) in b {
            let slot = acc.entry(mul_key(ka, kb)?).or_insert_with(|| ring.zero());
            ring.mul_add(slot, ca, cb);
        }
        check_cap(acc.len(), cap)?;
    }
    Ok(acc
        .into_iter()
        .filter_map(|(k, mut c)| {
            ring.normalize(&mut c);
            (!ring.is_zero(&c)).then_some((k, c))
        })
        .collect())
}

/// Product of two term lists sorted by `(degree, key)` descending, one term class at a
/// time.
///
/// A class is a run of terms sharing total degree and, for long runs, the exponent of
/// the first variable (the top bits of the key); runs are contiguous in the term order. The
/// product classes are visited in descending order by merging class sums, and each is
/// accumulated in a small reused table and sorted on its own. That table stays
/// cache-resident even when the full product has millions of terms. The first
/// variable matters for homogenized input, where every term has the same degree.
fn by_class<R: Coeffs>(
    ring: &R,
    pk: Packing,
    a: &[(u64, u128, R::C)],
    b: &[(u64, u128, R::C)],
    cap: usize,
) -> Result<Vec<(u64, u128, R::C)>> {
    // Splitting on the first exponent only pays off when degree classes are large;
    // otherwise the class merge overhead dominates.
    let degrees = 1 + b.windows(2).filter(|w| w[0].0 != w[1].0).count();
    let refine = b.len() / degrees > 1024;
    let (ga, gb) = (pk.classes(a, refine), pk.classes(b, refine));
    // Max-heap over (class of a[i] + class of b[next[i]], i).
    let mut next = alloc::vec![0usize; ga.len()];
    let mut heap: BinaryHeap<((u64, u128), usize)> =
        ga.iter().enumerate().map(|(i, g)| (class_sum(g.0, gb[0].0), i)).collect();
    let mut table: HashMap<u128, R::C> = HashMap::new();
    let mut out: Vec<(u64, u128, R::C)> = Vec::with_capacity(a.len().max(b.len()));
    let mut slice: Vec<(u128, R::C)> = Vec::new();
    let mut ready: Vec<usize> = Vec::new();
    while let Some((class, i)) = heap.pop() {
        ready.push(i);
        while heap.peek().is_some_and(|top| top.0 == class) {
            ready.push(heap.pop().unwrap().1);
        }
        for i in ready.drain(..) {
            let (_, sa, ea) = ga[i];
            let (_, sb, eb) = gb[next[i]];
            for (_, ka, ca) in &a[sa..ea] {
                for (_, kb, cb) in &b[sb..eb] {
                    let slot = table.entry(ka + kb).or_insert_with(|| ring.zero());
                    ring.mul_add(slot, ca, cb);
                }
            }
            next[i] += 1;
            if let Some(g) = gb.get(next[i]) {
                heap.push((class_sum(ga[i].0, g.0), i));
            }
        }
        slice.extend(table.drain().filter_map(|(k, mut c)| {
            ring.normalize(&mut c);
            (!ring.is_zero(&c)).then_some((k, c))
        }));
        slice.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        out.extend(slice.drain(..).map(|(k, c)| (class.0, k, c)));
        check_cap(out.len(), cap)?;
    }
    Ok(out)
}

fn class_sum(x: (u64, u128), y: (u64, u128)) -> (u64, u128) {
    (x.0 + y.0, x.1 + y.1)
}

fn run<R: Coeffs>(ring: R, small: &Polynomial, large: &Polynomial, cap: usize) -> Result<Polynomial> {
    let (field, nvars) = (small.field(), small.nvars());
    let terms = match Packing::for_product(small, large) {
        Some(pk) => {
            let conv = |p: &Polynomial| -> Vec<(u64, u128, R::C)> {
                p.terms().iter().map(|(m, c)| (m.degree(), pk.pack(m), ring.convert(c))).collect()
            };
            let (a, b) = (conv(small), conv(large));
            let raw = by_class(&ring, pk, &a, &b, cap)?;
            raw.into_iter().map(|(_, k, c)| (pk.unpack(k), ring.lift(c))).collect()
        }
        None => {
            let conv = |p: &Polynomial| -> Vec<(Monomial, R::C)> {
                p.terms().iter().map(|(m, c)| (m.clone(), ring.convert(c))).collect()
            };
            let (a, b) = (conv(small), conv(large));
            let mut raw = accumulate(&ring, &a, &b, |x, y| x.checked_mul(y), cap)?;
            raw.sort_unstable_by(|x, y| y.0.cmp(&x.0));
            raw.into_iter().map(|(m, c)| (m, ring.lift(c))).collect()
        }
    };
    Ok(Polynomial { nvars, field, terms })
}

fn max_bits(p: &Polynomial) -> u64 {
    p.terms().iter().map(|(_, c)| rational(c).numer().bits()).max().unwrap_or(0)
}

/// `small * large`; both nonzero, compatible, `small` the shorter one.
pub(crate) fn multiply(small: &Polynomial, large: &Polynomial, cap: usize) -> Result<Polynomial> {
    match small.field() {
        Field::Prime(p) => run(Residues(p), small, large, cap),
        Field::Rational => {
            if !(small.is_integral() && large.is_integral()) {
                return run(Generic(Field::Rational), small, large, cap);
            }
            // |sum| <= len(small) * max|a| * max|b|
            let len_bits = 64 - (small.len() as u64).leading_zeros() as u64;
            if max_bits(small) + max_bits(large) + len_bits + 1 < 127 {
                run(SmallInts, small, large, cap)
            } else {
                run(BigInts, small, large, cap)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trip_preserves_order() {
        let a = Monomial::new(&[3, 0, 1]);
        let b = Monomial::new(&[2, 2, 0]);
        let pk = Packing { bits: 32, nvars: 3 };
        assert_eq!(pk.unpack(pk.pack(&a)), a);
        assert!(pk.pack(&a) > pk.pack(&b));
    }

    #[test]
    fn all_coefficient_paths_agree() {
        let f = Field::Rational;
        let big = Polynomial::from_terms(
            f,
            2,
            [
                (Monomial::new(&[1, 0]), f.from_bigint(&(BigInt::from(1u8) << 120u32))),
                (Monomial::new(&[0, 1]), f.from_i64(3)),
            ],
        )
        .unwrap();
        let small = Polynomial::from_int_terms(f, 2, &[(2, &[1, 0]), (-1, &[0, 1])]);
        let via_big = run(BigInts, &small, &big, usize::MAX).unwrap();
        let via_generic = run(Generic(f), &small, &big, usize::MAX).unwrap();
        assert_eq!(via_big, via_generic);
        let via_small = run(SmallInts, &small, &small, usize::MAX).unwrap();
        assert_eq!(via_small, run(Generic(f), &small, &small, usize::MAX).unwrap());
    }

    #[test]
    fn unpackable_exponents_fall_back() {
        let f = Field::prime(5).unwrap();
        let x = Polynomial::from_terms(
            f,
            8,
            [
                (Monomial::new(&[40000, 0, 0, 0, 0, 0, 0, 0]), f.one()),
                (Monomial::new(&[0, 1, 0, 0, 0, 0, 0, 0]), f.one()),
            ],
        )
        .unwrap();
        assert!(Packing::for_product(&x, &x).is_none());
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.leading_term().unwrap().0.exponent(0), 80000);
    }
}
