//! Multivariate polynomial GCD.
//!
//! Recursive content / primitive-part splitting on the highest-index variable present,
//! with a primitive pseudo-remainder sequence for the primitive parts. Over `Q` the inputs
//! are first cleared to primitive integer polynomials so every intermediate stays in
//! `Z[x]`; the final answer is rescaled to be monic in graded-lex order.

use alloc::borrow::Cow;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::coprime::certainly_coprime;
use crate::field::{Field, FieldElement};
use crate::poly::{rational, Monomial, Polynomial};

/// Monic greatest common divisor of `a` and `b`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    if a.nvars() != b.nvars() {
        return Err(Error::ArityMismatch(a.nvars(), b.nvars()));
    }
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::GcdOfZeros),
        (true, false) => return Ok(b.monic()),
        (false, true) => return Ok(a.monic()),
        _ => {}
    }
    let (a, b) = match a.field() {
        Field::Rational => (Cow::Owned(primitive_integer(a)), Cow::Owned(primitive_integer(b))),
        Field::Prime(_) => (Cow::Borrowed(a), Cow::Borrowed(b)),
    };
    if !a.is_monomial() && !b.is_monomial() {
        let (ma, mb) = (a.monomial_content(), b.monomial_content());
        let (sa, sb) = (a.div_monomial_unchecked(&ma), b.div_monomial_unchecked(&mb));
        if !sa.is_constant() && !sb.is_constant() && certainly_coprime(&sa, &sb) {
            let one = Polynomial::one(a.field(), a.nvars());
            return one.mul_term(&ma.gcd(&mb), &a.field().one());
        }
    }
    let g = gcd_rec(&a, &b);
    Ok(g.monic())
}

/// GCD of a whole family, stopping early once it reaches a constant.
///
/// Sparse members are folded in first: a monomial member collapses the running GCD to a
/// monomial immediately, which keeps the common case (a power of one coordinate) cheap.
pub fn gcd_many(polys: &[Polynomial]) -> Result<Polynomial> {
    let mut order: Vec<&Polynomial> = polys.iter().filter(|p| !p.is_zero()).collect();
    let first = match order.first() {
        Some(p) => *p,
        None => return Err(Error::GcdOfZeros),
    };
    for p in polys {
        if p.field() != first.field() {
            return Err(Error::FieldMismatch(first.field(), p.field()));
        }
        if p.nvars() != first.nvars() {
            return Err(Error::ArityMismatch(first.nvars(), p.nvars()));
        }
    }
    order.sort_by_key(|p| p.len());
    if order.len() >= 3 && !order[0].is_monomial() {
        // A factor of every member divides both the first and any combination of the
        // rest; pairs alone can share factors the whole family does not.
        let field = first.field();
        let m = order.iter().map(|p| p.monomial_content()).reduce(|a, b| a.gcd(&b)).unwrap();
        let mut combo = Polynomial::zero(field, first.nvars());
        for (i, p) in order[1..].iter().enumerate() {
            let weight = match field {
                Field::Prime(q) => field.from_i64((i as u64 % (q - 1) + 1) as i64),
                Field::Rational => field.from_i64(i as i64 + 1),
            };
            combo = combo.add(&p.div_monomial_unchecked(&m).scale(&weight))?;
        }
        if certainly_coprime(&order[0].div_monomial_unchecked(&m), &combo) {
            return Polynomial::one(field, first.nvars()).mul_term(&m, &field.one());
        }
    }
    let mut g = order[0].monic();
    for p in &order[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, p)?;
    }
    Ok(g)
}

/// Over `Q`: multiply through by denominators and divide out the integer content, leaving
/// a primitive integer polynomial with positive leading coefficient.
pub(crate) fn primitive_integer(p: &Polynomial) -> Polynomial {
    let field = p.field();
    debug_assert_eq!(field, Field::Rational);
    if p.is_zero() {
        return p.clone();
    }
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(rational(c).denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in p.terms() {
        let r = rational(c);
        let n = r.numer() * (&lcm / r.denom());
        content = content.gcd(&n);
    }
    if rational(p.leading_coefficient().unwrap()).is_negative() {
        content = -content;
    }
    let scale = BigRational::new(lcm, content);
    p.scale(&FieldElement::Rational(scale))
}

fn integer_content(p: &Polynomial) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        g = g.gcd(rational(c).numer());
        if g.is_one() {
            break;
        }
    }
    g
}

/// Fixes the unit ambiguity: monic over `F_p`, positive leading coefficient over `Z`.
fn normalize_unit(p: Polynomial) -> Polynomial {
    match p.field() {
        Field::Prime(_) => p.monic(),
        Field::Rational => {
            if p.leading_coefficient().map(|c| c.is_negative()).unwrap_or(false) {
                p.neg()
            } else {
                p
            }
        }
    }
}

fn unit_or_int_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (field, nvars) = (a.field(), a.nvars());
    match field {
        Field::Prime(_) => Polynomial::one(field, nvars),
        Field::Rational => {
            let g = integer_content(a).gcd(&integer_content(b));
            Polynomial::constant(field, nvars, field.from_bigint(&g))
        }
    }
}

fn times_monomial(p: Polynomial, m: &Monomial) -> Polynomial {
    if m.is_one() {
        p
    } else {
        let one = p.field().one();
        p.mul_term(m, &one).expect("monomial content cannot overflow its source exponents")
    }
}

fn exact(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.div_exact(b)
        .expect("compatible operands")
        .expect("gcd factor must divide exactly")
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    debug_assert!(!a.is_zero() && !b.is_zero());
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a = a.div_monomial_unchecked(&ma);
    let b = b.div_monomial_unchecked(&mb);

    if a.is_constant() || b.is_constant() {
        return times_monomial(unit_or_int_gcd(&a, &b), &m);
    }
    let var = match (0..a.nvars()).rev().find(|&v| a.uses_var(v) || b.uses_var(v)) {
        Some(v) => v,
        None => return times_monomial(unit_or_int_gcd(&a, &b), &m),
    };
    let g = match (a.uses_var(var), b.uses_var(var)) {
        (true, false) => gcd_rec(&content_in(&a, var), &b),
        (false, true) => gcd_rec(&a, &content_in(&b, var)),
        _ => {
            let ca = content_in(&a, var);
            let cb = content_in(&b, var);
            let pa = exact(&a, &ca);
            let pb = exact(&b, &cb);
            let c = gcd_rec(&ca, &cb);
            let g = primitive_prs(pa, pb, var);
            c.mul(&g).expect("compatible operands")
        }
    };
    times_monomial(normalize_unit(g), &m)
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut coeffs: Vec<Polynomial> =
        p.coefficients_in(var).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = normalize_unit(coeffs[0].clone());
    for c in &coeffs[1..] {
        if g.is_constant() && (p.field().is_finite() || g.is_one()) {
            break;
        }
        g = gcd_rec(&g, c);
    }
    g
}

fn primitive_part_in(p: &Polynomial, var: usize) -> Polynomial {
    normalize_unit(exact(p, &content_in(p, var)))
}

fn primitive_prs(a: Polynomial, b: Polynomial, var: usize) -> Polynomial {
    let (mut p, mut q) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&p, &q, var);
        if r.is_zero() {
            return primitive_part_in(&q, var);
        }
        if r.degree_in(var) == 0 {
            return Polynomial::one(p.field(), p.nvars());
        }
        p = q;
        q = primitive_part_in(&r, var);
    }
}

/// `lc(b)^k * a mod b` with respect to `var`, without fractions.
pub(crate) fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var);
    let lcb = b.leading_coefficient_in(var);
    let one = a.field().one();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db && r.uses_var(var) {
        let dr = r.degree_in(var);
        let lcr = r.leading_coefficient_in(var);
        let mut shift = alloc::vec![0u32; a.nvars()];
        shift[var] = dr - db;
        let t = lcr
            .mul_term(&Monomial::new(&shift), &one)
            .and_then(|t| t.mul(b))
            .expect("compatible operands");
        r = lcb.mul(&r).expect("compatible operands").sub_unchecked(&t);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(field: Field, n: usize) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(field, n, i)).collect()
    }

    #[test]
    fn shared_linear_factor() {
        let f = Field::Rational;
        let v = vars(f, 2);
        let s = v[0].add(&v[1]).unwrap();
        let d = v[0].sub(&v[1]).unwrap();
        let a = s.mul(&s).unwrap();
        let b = s.mul(&d).unwrap();
        assert_eq!(gcd(&a, &b).unwrap(), s);
    }

    #[test]
    fn coprime_monomials() {
        let f = Field::Rational;
        let v = vars(f, 2);
        let g = gcd(&v[0].pow(2).unwrap(), &v[1].pow(2).unwrap()).unwrap();
        assert!(g.is_one());
    }

    #[test]
    fn frobenius_square_in_char_two() {
        let f = Field::prime(2).unwrap();
        let v = vars(f, 2);
        let a = v[0].pow(2).unwrap().add(&v[1].pow(2).unwrap()).unwrap();
        let b = v[0].add(&v[1]).unwrap();
        assert_eq!(gcd(&a, &b).unwrap(), b);
    }

    #[test]
    fn both_zero_is_an_error() {
        let z = Polynomial::zero(Field::Rational, 2);
        assert_eq!(gcd(&z, &z), Err(Error::GcdOfZeros));
        let x = Polynomial::var(Field::Rational, 2, 0).scale(&Field::Rational.from_i64(3));
        assert_eq!(gcd(&z, &x).unwrap(), Polynomial::var(Field::Rational, 2, 0));
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        let f = Field::Rational;
        let v = vars(f, 3);
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        // (x/2 + y z) * (x - 3) and (x/2 + y z) * (y + 7/3)
        let common = v[0].scale(&half).add(&v[1].mul(&v[2]).unwrap()).unwrap();
        let a = common.mul(&v[0].sub(&Polynomial::from_i64(f, 3, 3)).unwrap()).unwrap();
        let seven_thirds = f.from_ratio(&BigInt::from(7), &BigInt::from(3)).unwrap();
        let b = common
            .mul(&v[1].add(&Polynomial::constant(f, 3, seven_thirds)).unwrap())
            .unwrap();
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, common.monic());
    }

    #[test]
    fn gcd_many_stops_on_monomial() {
        let f = Field::Rational;
        let v = vars(f, 3);
        let comps = [
            v[0].pow(2).unwrap(),
            v[0].mul(&v[1]).unwrap(),
            v[0].mul(&v[2]).unwrap(),
        ];
        assert_eq!(gcd_many(&comps).unwrap(), v[0]);
    }

    #[test]
    fn family_gcd_ignores_factors_shared_by_pairs() {
        let f = Field::prime(7).unwrap();
        let v = vars(f, 3);
        let mut h = Polynomial::one(f, 3);
        for i in 0..3 {
            h = h.mul(&v[i].add(&v[(i + 1) % 3]).unwrap().add(&Polynomial::from_i64(f, 3, 2)).unwrap()).unwrap();
        }
        let shifted = h.add(&v[2].pow(3).unwrap()).unwrap();
        let comps = [h.mul(&v[0]).unwrap(), h.mul(&v[1]).unwrap(), shifted.mul(&v[2]).unwrap()];
        assert_eq!(gcd(&comps[0], &comps[1]).unwrap(), h.monic());
        assert!(gcd_many(&comps).unwrap().is_one());
        let x0 = [comps[0].mul(&v[0]).unwrap(), comps[1].mul(&v[0]).unwrap(), comps[2].mul(&v[0]).unwrap()];
        assert_eq!(gcd_many(&x0).unwrap(), v[0]);
    }

    #[test]
    fn nested_variables() {
        let f = Field::prime(7).unwrap();
        let v = vars(f, 3);
        // g = x0*x2 + x1^2 + 1
        let g = v[0]
            .mul(&v[2])
            .unwrap()
            .add(&v[1].pow(2).unwrap())
            .unwrap()
            .add(&Polynomial::one(f, 3))
            .unwrap();
        let a = g.mul(&v[2].add(&v[0]).unwrap()).unwrap();
        let b = g.mul(&v[1].pow(3).unwrap().sub(&v[2]).unwrap()).unwrap();
        assert_eq!(gcd(&a, &b).unwrap(), g.monic());
    }
}
