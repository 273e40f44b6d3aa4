//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted by descending graded-lexicographic order (total degree first,
//! then lexicographic with `x0 > x1 > ...`), with no zero coefficients and no repeated
//! monomials. Two polynomials are equal exactly when their term vectors are equal.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;
use num_rational::BigRational;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

type Exponents = SmallVec<[u32; 8]>;

/// Total degree, with the zero polynomial sitting below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Exponent vector of a single term.
///
/// Field order matters: the derived `Ord` compares total degree first and then the
/// exponents lexicographically, which is graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u64,
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: smallvec::smallvec![0; nvars] }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn new(exps: &[u32]) -> Self {
        Monomial { degree: exps.iter().map(|&e| e as u64).sum(), exps: exps.into() }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(o).ok_or(Error::ExponentOverflow)?;
        }
        let degree = self.degree.checked_add(other.degree).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { degree, exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div_unchecked(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { degree: self.degree - other.degree, exps }
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect();
        Monomial { degree: exps.iter().map(|&e| e as u64).sum(), exps }
    }

    fn with_exponent(&self, index: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        let old = exps[index];
        exps[index] = e;
        Monomial { degree: self.degree - old as u64 + e as u64, exps }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    pub(crate) nvars: usize,
    pub(crate) field: Field,
    pub(crate) terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial { nvars, field, terms: Vec::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: FieldElement) -> Self {
        Polynomial::monomial(field, Monomial::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Polynomial::constant(field, nvars, field.one())
    }

    pub fn from_i64(field: Field, nvars: usize, c: i64) -> Self {
        Polynomial::constant(field, nvars, field.from_i64(c))
    }

    pub fn var(field: Field, nvars: usize, index: usize) -> Self {
        Polynomial::monomial(field, Monomial::var(nvars, index), field.one())
    }

    pub fn monomial(field: Field, m: Monomial, c: FieldElement) -> Self {
        let nvars = m.nvars();
        if field.is_zero(&c) {
            return Polynomial::zero(field, nvars);
        }
        Polynomial { nvars, field, terms: vec![(m, c)] }
    }

    /// Builds a canonical polynomial from arbitrary terms: like terms are combined,
    /// zeros dropped and the result sorted.
    pub fn from_terms<I>(field: Field, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch(nvars, m.nvars()));
            }
            if !field.contains(&c) {
                return Err(Error::InvalidArgument(alloc::format!(
                    "coefficient {} is not an element of {}",
                    c,
                    field
                )));
            }
            match acc.get_mut(&m) {
                Some(existing) => *existing = field.add(existing, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Polynomial::from_map(field, nvars, acc))
    }

    fn from_map(field: Field, nvars: usize, acc: HashMap<Monomial, FieldElement>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, field, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field.is_one(&self.terms[0].1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Degree {
        // Sorted by degree first, so the leading term carries the maximum.
        match self.terms.first() {
            None => Degree::NegInfinity,
            Some((m, _)) => Degree::Finite(m.degree()),
        }
    }

    /// True iff every term has the same total degree. The zero polynomial counts.
    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) => a.0.degree() == b.0.degree(),
            _ => true,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, FieldElement)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest exponent of `var` across all terms (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let field = self.field;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => terms.push(a.next().unwrap().clone()),
                    Ordering::Less => terms.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        let c = field.add(&x.1, &y.1);
                        if !field.is_zero(&c) {
                            terms.push((x.0.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => terms.push(a.next().unwrap().clone()),
                (None, Some(_)) => terms.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        Polynomial { nvars: self.nvars, field, terms }
    }

    pub(crate) fn sub_unchecked(&self, other: &Polynomial) -> Polynomial {
        self.add_unchecked(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field;
        Polynomial {
            nvars: self.nvars,
            field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        let field = self.field;
        if field.is_zero(c) {
            return Polynomial::zero(field, self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            field,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), field.mul(x, c))).collect(),
        }
    }

    /// Multiplies by `c * m`. Multiplying every monomial by a fixed monomial preserves
    /// the term order, so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Result<Polynomial> {
        let field = self.field;
        if field.is_zero(c) {
            return Ok(Polynomial::zero(field, self.nvars));
        }
        let unit = field.is_one(c);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (x, y) in &self.terms {
            let coeff = if unit { y.clone() } else { field.mul(y, c) };
            terms.push((x.checked_mul(m)?, coeff));
        }
        Ok(Polynomial { nvars: self.nvars, field, terms })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.mul_capped(other, usize::MAX)
    }

    /// Product, failing with [`Error::BudgetExceeded`] once the result would hold more
    /// than `cap` terms.
    pub fn mul_capped(&self, other: &Polynomial, cap: usize) -> Result<Polynomial> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.field, self.nvars));
        }
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            let out = large.mul_term(m, c)?;
            check_cap(out.len(), cap)?;
            return Ok(out);
        }
        crate::mul::multiply(small, large, cap)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        self.pow_capped(e, usize::MAX)
    }

    pub fn pow_capped(&self, mut e: u32, cap: usize) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_capped(&base, cap)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_capped(&base, cap)?;
            }
        }
        Ok(acc)
    }

    /// Over `Q`: every coefficient is an integer.
    pub(crate) fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| match c {
            FieldElement::Rational(r) => r.is_integer(),
            FieldElement::Residue(_) => true,
        })
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if self.field.is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some((first, _)) => {
                let mut g = first.clone();
                for (m, _) in it {
                    if g.is_one() {
                        break;
                    }
                    g = g.gcd(m);
                }
                g
            }
        }
    }

    /// Divides every term by `m`, which must divide each of them.
    pub(crate) fn div_monomial_unchecked(&self, m: &Monomial) -> Polynomial {
        if m.is_one() {
            return self.clone();
        }
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(x, c)| (x.div_unchecked(m), c.clone())).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_compatible(divisor)?;
        let field = self.field;
        let (lm, lc) = match divisor.leading_term() {
            None => return Err(Error::DivisionByZero),
            Some(t) => t,
        };
        if divisor.is_monomial() {
            if !self.terms.iter().all(|(m, _)| lm.divides(m)) {
                return Ok(None);
            }
            let inv = field.inv(lc)?;
            let q = self.div_monomial_unchecked(lm);
            return Ok(Some(if field.is_one(&inv) { q } else { q.scale(&inv) }));
        }
        let inv = field.inv(lc)?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            if !lm.divides(rm) || rm.degree() < lm.degree() {
                return Ok(None);
            }
            let qm = rm.div_unchecked(lm);
            let qc = field.mul(rc, &inv);
            let sub = divisor.mul_term(&qm, &qc)?;
            rem = rem.sub_unchecked(&sub);
            quotient.push((qm, qc));
        }
        // Quotient terms are produced in strictly decreasing order.
        Ok(Some(Polynomial { nvars: self.nvars, field, terms: quotient }))
    }

    /// Whether `divisor` divides `self` exactly.
    pub fn is_divisible_by(&self, divisor: &Polynomial) -> Result<bool> {
        Ok(self.div_exact(divisor)?.is_some())
    }

    /// Coefficients with respect to `var`: entry `k` holds the coefficient of `var^k`,
    /// as a polynomial in the same ambient ring not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].push((m.with_exponent(var, 0), c.clone()));
        }
        // Clearing one coordinate shared by a group keeps that group's order.
        out.into_iter()
            .map(|terms| Polynomial { nvars: self.nvars, field: self.field, terms })
            .collect()
    }

    /// Coefficient of the highest power of `var`.
    pub fn leading_coefficient_in(&self, var: usize) -> Polynomial {
        let deg = self.degree_in(var);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) == deg)
            .map(|(m, c)| (m.with_exponent(var, 0), c.clone()))
            .collect();
        Polynomial { nvars: self.nvars, field: self.field, terms }
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .filter_map(|(m, c)| {
                let e = m.exponent(var);
                let k = field.mul(c, &field.from_i64(e as i64));
                if field.is_zero(&k) {
                    None
                } else {
                    Some((m.with_exponent(var, e - 1), k))
                }
            })
            .collect();
        Polynomial { nvars: self.nvars, field, terms }
    }

    /// Re-embeds into a ring with `nvars` variables; variable `i` goes to `map[i]`.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; nvars];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::new(&exps), c.clone())
        });
        Polynomial::from_terms(self.field, nvars, terms).expect("renaming preserves the field")
    }

    /// Evaluates `self` at `images`, one polynomial per variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        self.substitute_capped(images, usize::MAX)
    }

    pub fn substitute_capped(&self, images: &[Polynomial], cap: usize) -> Result<Polynomial> {
        let mut out = substitute_all(core::slice::from_ref(self), images, cap)?;
        Ok(out.pop().expect("one input, one output"))
    }
}

/// Evaluates every polynomial in `polys` at the same `images`, sharing the table of
/// image powers between them.
pub fn substitute_all(
    polys: &[Polynomial],
    images: &[Polynomial],
    cap: usize,
) -> Result<Vec<Polynomial>> {
    let first_poly = match polys.first() {
        Some(p) => p,
        None => return Ok(Vec::new()),
    };
    let nvars = first_poly.nvars;
    for p in polys {
        first_poly.check_compatible(p)?;
    }
    if images.len() != nvars {
        return Err(Error::ArityMismatch(nvars, images.len()));
    }
    let first = match images.first() {
        Some(p) => p,
        None => return Ok(polys.to_vec()),
    };
    let (field, out_vars) = (first.field, first.nvars);
    if field != first_poly.field {
        return Err(Error::FieldMismatch(first_poly.field, field));
    }
    for img in images {
        first.check_compatible(img)?;
    }
    // powers[i][k] = images[i]^k, up to the largest exponent any input needs.
    let mut powers: Vec<Vec<Polynomial>> =
        images.iter().map(|p| vec![Polynomial::one(field, out_vars), p.clone()]).collect();
    for (i, row) in powers.iter_mut().enumerate() {
        let need = polys.iter().map(|p| p.degree_in(i)).max().unwrap_or(0) as usize;
        while row.len() <= need {
            let next = row.last().unwrap().mul_capped(&images[i], cap)?;
            row.push(next);
        }
    }
    let mut out = Vec::with_capacity(polys.len());
    for p in polys {
        let mut acc = Polynomial::zero(field, out_vars);
        for (m, c) in &p.terms {
            // Shortest factors first keeps intermediate products small.
            let mut factors: Vec<&Polynomial> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| &powers[i][e as usize])
                .collect();
            factors.sort_by_key(|f| f.len());
            let mut term: Option<Polynomial> = None;
            for factor in factors {
                {
                    term = Some(match term {
                        None => factor.clone(),
                        Some(t) => t.mul_capped(factor, cap)?,
                    });
                }
            }
            let term = match term {
                None => Polynomial::constant(field, out_vars, c.clone()),
                Some(t) => t.scale(c),
            };
            acc = acc.add_unchecked(&term);
            check_cap(acc.len(), cap)?;
        }
        out.push(acc);
    }
    Ok(out)
}

pub(crate) fn check_cap(terms: usize, cap: usize) -> Result<()> {
    if terms > cap {
        Err(Error::BudgetExceeded { terms, cap })
    } else {
        Ok(())
    }
}

pub(crate) fn residue(c: &FieldElement) -> u64 {
    match c {
        FieldElement::Residue(v) => *v,
        FieldElement::Rational(_) => unreachable!("rational coefficient in a prime-field polynomial"),
    }
}

pub(crate) fn rational(c: &FieldElement) -> &BigRational {
    match c {
        FieldElement::Rational(r) => r,
        FieldElement::Residue(_) => unreachable!("residue coefficient in a rational polynomial"),
    }
}

impl Polynomial {
    /// Helper for building test and gallery polynomials from `(coefficient, exponents)`.
    pub fn from_int_terms(field: Field, nvars: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            field,
            nvars,
            terms.iter().map(|(c, e)| (Monomial::new(e), field.from_i64(*c))),
        )
        .expect("well-formed literal terms")
    }

    /// `true` when this is the constant 1 up to scaling, i.e. a unit.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn xy(field: Field) -> (Polynomial, Polynomial) {
        (Polynomial::var(field, 2, 0), Polynomial::var(field, 2, 1))
    }

    #[test]
    fn add_cancels() {
        let (x, y) = xy(q());
        let a = x.add(&y).unwrap();
        let b = x.sub(&y).unwrap();
        assert_eq!(a.add(&b).unwrap(), x.scale(&q().from_i64(2)));
        let zero = Polynomial::zero(q(), 2);
        assert_eq!(a.add(&zero).unwrap(), a);
        let (x2, y2) = xy(f2());
        let s = x2.add(&y2).unwrap();
        assert!(s.add(&s).unwrap().is_zero());
    }

    #[test]
    fn mul_examples() {
        let (x, y) = xy(q());
        let p = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let expected = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(p, expected);
        let one = Polynomial::one(q(), 2);
        assert_eq!(p.mul(&one).unwrap(), p);

        let (x, y) = xy(f2());
        let s = x.add(&y).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq, x.pow(2).unwrap().add(&y.pow(2).unwrap()).unwrap());
    }

    #[test]
    fn mismatch_errors() {
        let a = Polynomial::var(q(), 2, 0);
        let b = Polynomial::var(q(), 3, 0);
        assert_eq!(a.add(&b), Err(Error::ArityMismatch(2, 3)));
        let c = Polynomial::var(f2(), 2, 0);
        assert!(matches!(a.mul(&c), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn degree_and_homogeneity() {
        let f = q();
        // x^2 y + z
        let p = Polynomial::from_int_terms(f, 3, &[(1, &[2, 1, 0]), (1, &[0, 0, 1])]);
        assert_eq!(p.total_degree(), Degree::Finite(3));
        assert!(!p.is_homogeneous());
        assert_eq!(Polynomial::from_i64(f, 3, 5).total_degree(), Degree::Finite(0));
        assert_eq!(Polynomial::zero(f, 3).total_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));

        let h = Polynomial::from_int_terms(f, 2, &[(1, &[2, 0]), (1, &[1, 1])]);
        assert!(h.is_homogeneous());
        let nh = Polynomial::from_int_terms(f, 2, &[(1, &[2, 0]), (1, &[1, 0])]);
        assert!(!nh.is_homogeneous());
        assert!(Polynomial::zero(f, 2).is_homogeneous());
    }

    #[test]
    fn substitute_examples() {
        let f = q();
        let (x, y) = xy(f);
        let x_plus_y = x.add(&y).unwrap();
        let p = x.pow(2).unwrap();
        let img = p.substitute(&[x_plus_y.clone(), y.clone()]).unwrap();
        let expected = Polynomial::from_int_terms(f, 2, &[(1, &[2, 0]), (2, &[1, 1]), (1, &[0, 2])]);
        assert_eq!(img, expected);

        assert_eq!(x_plus_y.substitute(&[y.clone(), x.clone()]).unwrap(), x_plus_y);

        let xy_ = x.mul(&y).unwrap();
        let out = xy_.substitute(&[x.pow(2).unwrap(), y.pow(3).unwrap()]).unwrap();
        assert_eq!(out, Polynomial::from_int_terms(f, 2, &[(1, &[2, 3])]));
    }

    #[test]
    fn exact_division() {
        let f = q();
        let (x, y) = xy(f);
        let a = x.add(&y).unwrap();
        let b = x.sub(&y).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.div_exact(&a).unwrap(), Some(b.clone()));
        assert_eq!(prod.div_exact(&x).unwrap(), None);
        assert_eq!(x.pow(3).unwrap().div_exact(&x.pow(2).unwrap()).unwrap(), Some(x.clone()));
    }

    #[test]
    fn derivative_in_char_p() {
        let f3 = Field::prime(3).unwrap();
        let x = Polynomial::var(f3, 1, 0);
        assert!(x.pow(3).unwrap().derivative(0).is_zero());
        let q1 = Polynomial::var(q(), 1, 0);
        assert_eq!(q1.pow(3).unwrap().derivative(0), q1.pow(2).unwrap().scale(&q().from_i64(3)));
    }

    #[test]
    fn budget_cap_trips() {
        let f = q();
        let vars: Vec<_> = (0..4).map(|i| Polynomial::var(f, 4, i)).collect();
        let s = vars.iter().fold(Polynomial::zero(f, 4), |a, v| a.add(v).unwrap());
        let err = s.pow_capped(6, 20).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 20, .. }));
    }
}
