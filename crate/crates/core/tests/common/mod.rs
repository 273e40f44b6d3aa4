//! Reference implementations that share no code with the library: a naive dense-ish
//! polynomial type over `Z` or `Z/p`, and an exponent-matrix model of monomial maps.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use degseq_core::{Field, FieldElement, Polynomial};

/// Exponent vector -> nonzero integer coefficient, reduced mod `p` when set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naive {
    pub nvars: usize,
    pub modulus: Option<i64>,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Naive {
    pub fn zero(nvars: usize, modulus: Option<i64>) -> Naive {
        Naive { nvars, modulus, terms: BTreeMap::new() }
    }

    pub fn var(nvars: usize, modulus: Option<i64>, i: usize) -> Naive {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Naive::term(nvars, modulus, e, 1)
    }

    pub fn term(nvars: usize, modulus: Option<i64>, exps: Vec<u32>, c: i64) -> Naive {
        let mut out = Naive::zero(nvars, modulus);
        out.push(exps, BigInt::from(c));
        out
    }

    pub fn constant(nvars: usize, modulus: Option<i64>, c: i64) -> Naive {
        Naive::term(nvars, modulus, vec![0; nvars], c)
    }

    fn push(&mut self, exps: Vec<u32>, c: BigInt) {
        let entry = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if let Some(p) = self.modulus {
            *entry = ((&*entry % p) + p) % p;
        }
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Naive) -> Naive {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.push(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Naive) -> Naive {
        let mut out = Naive::zero(self.nvars, self.modulus);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.push(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Naive {
        let mut out = Naive::constant(self.nvars, self.modulus, 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `self(images)`, term by term.
    pub fn substitute(&self, images: &[Naive]) -> Naive {
        let nv = images[0].nvars;
        let mut out = Naive::zero(nv, self.modulus);
        for (e, c) in &self.terms {
            let mut t = Naive::zero(nv, self.modulus);
            t.push(vec![0; nv], c.clone());
            for (i, &k) in e.iter().enumerate() {
                t = t.mul(&images[i].pow(k));
            }
            out = out.add(&t);
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let first = it.next().cloned().unwrap_or_else(|| vec![0; self.nvars]);
        it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn shift_down(&self, by: &[u32]) -> Naive {
        let mut out = Naive::zero(self.nvars, self.modulus);
        for (e, c) in &self.terms {
            out.push(e.iter().zip(by).map(|(a, b)| a - b).collect(), c.clone());
        }
        out
    }

    /// Same polynomial as the library's, coefficient for coefficient.
    pub fn from_poly(p: &Polynomial) -> Naive {
        let modulus = match p.field() {
            Field::Rational => None,
            Field::Prime(q) => Some(q as i64),
        };
        let mut out = Naive::zero(p.nvars(), modulus);
        for (m, c) in p.terms() {
            let c = match c {
                FieldElement::Residue(v) => BigInt::from(*v),
                FieldElement::Rational(r) => {
                    assert!(r.is_integer(), "oracle handles integer coefficients only");
                    r.numer().clone()
                }
            };
            out.push(m.exponents().to_vec(), c);
        }
        out
    }

    /// `self * k` for an integer `k`.
    pub fn scale(&self, k: &BigInt) -> Naive {
        let mut out = Naive::zero(self.nvars, self.modulus);
        for (e, c) in &self.terms {
            out.push(e.clone(), c * k);
        }
        out
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::one)
    }
}

/// An affine polynomial map as naive components.
#[derive(Clone, Debug)]
pub struct NaiveMap(pub Vec<Naive>);

impl NaiveMap {
    pub fn from_polys(ps: &[Polynomial]) -> NaiveMap {
        NaiveMap(ps.iter().map(Naive::from_poly).collect())
    }

    /// `self o other`.
    pub fn compose(&self, other: &NaiveMap) -> NaiveMap {
        NaiveMap(self.0.iter().map(|c| c.substitute(&other.0)).collect())
    }

    /// For a polynomial map of affine space this is the degree of its projective
    /// extension.
    pub fn degree(&self) -> u32 {
        self.0.iter().filter_map(Naive::degree).max().unwrap_or(0)
    }
}

/// Degrees of the iterates of the projective monomial map with exponent rows `rows`:
/// products of exponent matrices with the common monomial removed after each step.
/// Written independently of the library's own oracle, with `u128` arithmetic.
pub fn exponent_matrix_degrees(rows: &[Vec<u32>], n: usize) -> Vec<u128> {
    let strip = |m: &mut Vec<Vec<u128>>| {
        for c in 0..m[0].len() {
            let low = m.iter().map(|r| r[c]).min().unwrap();
            m.iter_mut().for_each(|r| r[c] -= low);
        }
    };
    let mut a: Vec<Vec<u128>> = rows.iter().map(|r| r.iter().map(|&e| e as u128).collect()).collect();
    strip(&mut a);
    let k = a.len();
    let mut cur = a.clone();
    let mut out = vec![cur[0].iter().sum()];
    for _ in 1..n {
        let mut next = vec![vec![0u128; k]; k];
        for i in 0..k {
            for j in 0..k {
                next[i][j] = (0..k).map(|l| a[i][l] * cur[l][j]).sum();
            }
        }
        strip(&mut next);
        cur = next;
        out.push(cur[0].iter().sum());
    }
    out
}

pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Large Mersenne prime used where exact rational coefficients would be too slow.
pub const BIG_PRIME: u64 = 2_305_843_009_213_693_951;
