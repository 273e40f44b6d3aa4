//! Rational self-maps of `P^d` and polynomial endomorphisms of `A^d`.
//!
//! A [`ProjectiveMap`] is always stored reduced (its components share no nonconstant
//! factor) and canonically scaled (first nonzero component monic), so two maps are equal
//! as rational maps exactly when they are equal as values.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gcd::gcd_many;
use crate::poly::{substitute_all, Degree, Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectiveMap {
    dim: usize,
    field: Field,
    degree: u64,
    components: Vec<Polynomial>,
}

/// Result of reducing raw components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub map: ProjectiveMap,
    /// Degree of the common factor that was divided out.
    pub removed_degree: u64,
}

/// Result of composing two projective maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub map: ProjectiveMap,
    /// `deg(f) * deg(g) - deg(f o g)`.
    pub drop: u64,
}

impl ProjectiveMap {
    /// Divides `raw` by the GCD of its components and scales the first nonzero
    /// component to be monic.
    pub fn reduce(raw: Vec<Polynomial>) -> Result<Reduced> {
        let n = raw.len();
        if n < 2 {
            return Err(Error::ComponentCount { expected: 2, found: n });
        }
        let field = raw[0].field();
        for p in &raw {
            if p.field() != field {
                return Err(Error::FieldMismatch(field, p.field()));
            }
            if p.nvars() != n {
                return Err(Error::ArityMismatch(n, p.nvars()));
            }
        }
        let mut degree = None;
        for (index, p) in raw.iter().enumerate() {
            if !p.is_homogeneous() {
                return Err(Error::NotHomogeneous { index });
            }
            if let Degree::Finite(d) = p.total_degree() {
                match degree {
                    None => degree = Some(d),
                    Some(expected) if expected != d => {
                        return Err(Error::DegreeMismatch { index, expected, found: d })
                    }
                    _ => {}
                }
            }
        }
        let raw_degree = degree.ok_or(Error::ZeroMap)?;
        let g = gcd_many(&raw)?;
        let removed_degree = g.total_degree().finite().unwrap_or(0);
        let mut components = if removed_degree == 0 {
            raw
        } else {
            raw.iter()
                .map(|p| {
                    if p.is_zero() {
                        Ok(p.clone())
                    } else {
                        p.div_exact(&g)?.ok_or(Error::InvalidArgument(
                            "gcd does not divide a component".into(),
                        ))
                    }
                })
                .collect::<Result<Vec<_>>>()?
        };
        let lead = components
            .iter()
            .find(|p| !p.is_zero())
            .and_then(|p| p.leading_coefficient())
            .cloned()
            .expect("at least one nonzero component");
        if !field.is_one(&lead) {
            let inv = field.inv(&lead)?;
            components = components.iter().map(|p| p.scale(&inv)).collect();
        }
        let map = ProjectiveMap { dim: n - 1, field, degree: raw_degree - removed_degree, components };
        Ok(Reduced { map, removed_degree })
    }

    pub fn new(raw: Vec<Polynomial>) -> Result<ProjectiveMap> {
        Ok(ProjectiveMap::reduce(raw)?.map)
    }

    pub fn identity(field: Field, dim: usize) -> ProjectiveMap {
        let n = dim + 1;
        ProjectiveMap {
            dim,
            field,
            degree: 1,
            components: (0..n).map(|i| Polynomial::var(field, n, i)).collect(),
        }
    }

    /// `[x0^a0 : ... : xd^ad]` style monomial maps; `rows[i]` holds the exponents of
    /// component `i`. Rows must share one total degree.
    pub fn monomial(field: Field, rows: &[Vec<u32>]) -> Result<ProjectiveMap> {
        let comps = rows
            .iter()
            .map(|r| Polynomial::monomial(field, Monomial::new(r), field.one()))
            .collect();
        ProjectiveMap::new(comps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Total number of stored terms across components.
    pub fn term_count(&self) -> usize {
        self.components.iter().map(Polynomial::len).sum()
    }

    fn check_compatible(&self, other: &ProjectiveMap) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// `self o other`: substitutes `other` into every component of `self`, then reduces.
    pub fn compose(&self, other: &ProjectiveMap) -> Result<Composition> {
        self.compose_capped(other, usize::MAX)
    }

    pub fn compose_capped(&self, other: &ProjectiveMap, cap: usize) -> Result<Composition> {
        self.check_compatible(other)?;
        let raw = substitute_all(&self.components, &other.components, cap)?;
        let naive = self.degree * other.degree;
        let reduced = ProjectiveMap::reduce(raw)?;
        debug_assert_eq!(naive, reduced.map.degree + reduced.removed_degree);
        Ok(Composition { drop: naive - reduced.map.degree, map: reduced.map })
    }

    /// Restriction to the chart `x0 != 0`, as a polynomial endomorphism of `A^d`.
    pub fn dehomogenize(&self) -> Result<AffineMap> {
        let n = self.dim + 1;
        if self.components[0].is_zero() {
            return Err(Error::NotPolynomialOnChart { index: 0 });
        }
        let field = self.field;
        let mut chart = vec![Polynomial::one(field, self.dim)];
        chart.extend((0..self.dim).map(|i| Polynomial::var(field, self.dim, i)));
        debug_assert_eq!(chart.len(), n);
        let restricted = substitute_all(&self.components, &chart, usize::MAX)?;
        let denom = &restricted[0];
        let mut comps = Vec::with_capacity(self.dim);
        for (index, num) in restricted.iter().enumerate().skip(1) {
            match num.div_exact(denom)? {
                Some(q) => comps.push(q),
                None => return Err(Error::NotPolynomialOnChart { index }),
            }
        }
        AffineMap::new(comps)
    }
}

/// Equality as rational maps. Canonical storage makes this a syntactic comparison.
pub fn maps_equal(f: &ProjectiveMap, g: &ProjectiveMap) -> bool {
    f == g
}

/// Polynomial endomorphism `(x1, ..., xd) -> (f1, ..., fd)`; variable `xi` is index `i-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    dim: usize,
    field: Field,
    components: Vec<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominanceHint {
    Dominant,
    NotDominant,
    Unknown,
}

impl AffineMap {
    pub fn new(components: Vec<Polynomial>) -> Result<AffineMap> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::ComponentCount { expected: 1, found: 0 });
        }
        let field = components[0].field();
        for p in &components {
            if p.field() != field {
                return Err(Error::FieldMismatch(field, p.field()));
            }
            if p.nvars() != dim {
                return Err(Error::ArityMismatch(dim, p.nvars()));
            }
        }
        Ok(AffineMap { dim, field, components })
    }

    pub fn identity(field: Field, dim: usize) -> AffineMap {
        AffineMap { dim, field, components: (0..dim).map(|i| Polynomial::var(field, dim, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Largest component degree; 0 for the zero map.
    pub fn degree(&self) -> u64 {
        self.components.iter().filter_map(|p| p.total_degree().finite()).max().unwrap_or(0)
    }

    /// `self o other` computed directly in affine coordinates.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        AffineMap::new(substitute_all(&self.components, &other.components, usize::MAX)?)
    }

    /// Embeds into `P^d` via `x0`, the hyperplane at infinity being `x0 = 0`.
    pub fn homogenize(&self) -> Result<ProjectiveMap> {
        if self.components.iter().all(Polynomial::is_zero) {
            return Err(Error::ZeroMap);
        }
        let n = self.dim + 1;
        let field = self.field;
        let top = self.degree();
        let shift: Vec<usize> = (1..n).collect();
        let mut raw = Vec::with_capacity(n);
        let mut x0_top = vec![0u32; n];
        x0_top[0] = exponent(top)?;
        raw.push(Polynomial::monomial(field, Monomial::new(&x0_top), field.one()));
        for p in &self.components {
            let lifted = p.rename_vars(n, &shift);
            let terms = lifted.terms().iter().map(|(m, c)| {
                let mut exps = m.exponents().to_vec();
                exps[0] = exponent(top - m.degree())?;
                Ok((Monomial::new(&exps), c.clone()))
            });
            let terms = terms.collect::<Result<Vec<_>>>()?;
            raw.push(Polynomial::from_terms(field, n, terms)?);
        }
        ProjectiveMap::new(raw)
    }

    /// Nonvanishing of the Jacobian determinant. Over `F_p` a zero Jacobian does not
    /// certify anything (e.g. `x^p`), so the answer there is always `Unknown`.
    pub fn jacobian_dominance_hint(&self) -> DominanceHint {
        if self.field.is_finite() {
            return DominanceHint::Unknown;
        }
        if jacobian_determinant(self).is_zero() {
            DominanceHint::NotDominant
        } else {
            DominanceHint::Dominant
        }
    }
}

fn exponent(e: u64) -> Result<u32> {
    u32::try_from(e).map_err(|_| Error::ExponentOverflow)
}

pub fn jacobian_determinant(f: &AffineMap) -> Polynomial {
    let rows: Vec<Vec<Polynomial>> = f
        .components
        .iter()
        .map(|p| (0..f.dim).map(|j| p.derivative(j)).collect())
        .collect();
    let cols: Vec<usize> = (0..f.dim).collect();
    laplace(&rows, 0, &cols, f.field, f.dim)
}

fn laplace(rows: &[Vec<Polynomial>], row: usize, cols: &[usize], field: Field, nvars: usize) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::one(field, nvars);
    }
    let mut acc = Polynomial::zero(field, nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(rows, row + 1, &rest, field, nvars);
        let term = entry.mul(&minor).expect("same ring");
        acc = if k % 2 == 0 { acc.add_unchecked(&term) } else { acc.sub_unchecked(&term) };
    }
    acc
}
