//! Built-in example maps with known degree behaviour, plus controls.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::maps::{AffineMap, ProjectiveMap};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GalleryMap {
    Affine(AffineMap),
    Projective(ProjectiveMap),
}

impl GalleryMap {
    pub fn dim(&self) -> usize {
        match self {
            GalleryMap::Affine(f) => f.dim(),
            GalleryMap::Projective(f) => f.dim(),
        }
    }

    /// The map as a rational self-map of `P^d`.
    pub fn projective(&self) -> Result<ProjectiveMap> {
        match self {
            GalleryMap::Affine(f) => f.homogenize(),
            GalleryMap::Projective(f) => Ok(f.clone()),
        }
    }
}

impl fmt::Display for GalleryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryMap::Affine(m) => m.fmt(f),
            GalleryMap::Projective(m) => m.fmt(f),
        }
    }
}

/// What the degree sequence is expected to look like.
#[derive(Clone, Debug, PartialEq)]
pub enum ExpectedLaw {
    /// `deg(f^n) = first + step * (n - 1)`.
    Arithmetic { first: u64, step: u64 },
    /// `deg(f^n) = base^n`.
    Geometric { base: u64 },
    /// `deg(f^n) = n^exponent`.
    Power { exponent: u32 },
    /// `deg(f^n) = cycle[(n - 1) % cycle.len()]`.
    Periodic(Vec<u64>),
    /// Explicit values for `n = 1 ..= values.len()`.
    Exact(Vec<u64>),
    /// Only the order of polynomial growth is known.
    GrowthOrder { dpol: u32 },
}

impl ExpectedLaw {
    /// Exact `deg(f^n)` when the law pins it down.
    pub fn value(&self, n: usize) -> Option<u64> {
        if n == 0 {
            return None;
        }
        match self {
            ExpectedLaw::Arithmetic { first, step } => Some(first + step * (n as u64 - 1)),
            ExpectedLaw::Geometric { base } => base.checked_pow(n as u32),
            ExpectedLaw::Power { exponent } => (n as u64).checked_pow(*exponent),
            ExpectedLaw::Periodic(cycle) => cycle.get((n - 1) % cycle.len()).copied(),
            ExpectedLaw::Exact(values) => values.get(n - 1).copied(),
            ExpectedLaw::GrowthOrder { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ExpectedLaw::GrowthOrder { .. })
    }

    /// Expected order of polynomial growth; `None` for exponential growth.
    pub fn dpol(&self) -> Option<f64> {
        match self {
            ExpectedLaw::Arithmetic { step: 0, .. } | ExpectedLaw::Periodic(_) => Some(0.0),
            ExpectedLaw::Arithmetic { .. } => Some(1.0),
            ExpectedLaw::Geometric { base } if *base <= 1 => Some(0.0),
            ExpectedLaw::Geometric { .. } => None,
            ExpectedLaw::Power { exponent } => Some(*exponent as f64),
            ExpectedLaw::GrowthOrder { dpol } => Some(*dpol as f64),
            ExpectedLaw::Exact(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// One of the published examples; the text says which.
    Published(&'static str),
    Control(&'static str),
}

impl Provenance {
    pub fn describe(&self) -> &'static str {
        match self {
            Provenance::Published(s) | Provenance::Control(s) => s,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Published(_) => "published",
            Provenance::Control(_) => "control",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GalleryEntry {
    pub name: String,
    pub map: GalleryMap,
    /// Law the computed sequence must match.
    pub expected: ExpectedLaw,
    /// Order of growth the entry is meant to exhibit, when known.
    pub dpol: Option<u32>,
    /// A law stated in the literature that differs from `expected` in its exact values.
    pub stated: Option<ExpectedLaw>,
    pub provenance: Provenance,
}

fn affine(field: Field, dim: usize, comps: &[&[(i64, &[u32])]]) -> AffineMap {
    AffineMap::new(comps.iter().map(|t| Polynomial::from_int_terms(field, dim, t)).collect())
        .expect("well-formed gallery map")
}

/// `g = (x + yz, y, z)` and `h = (x, y + xz, z)`.
pub fn linearex_factors(field: Field) -> (AffineMap, AffineMap) {
    let g = affine(field, 3, &[&[(1, &[1, 0, 0]), (1, &[0, 1, 1])], &[(1, &[0, 1, 0])], &[(1, &[0, 0, 1])]]);
    let h = affine(field, 3, &[&[(1, &[1, 0, 0])], &[(1, &[0, 1, 0]), (1, &[1, 0, 1])], &[(1, &[0, 0, 1])]]);
    (g, h)
}

fn linearex_map(field: Field) -> AffineMap {
    // g o h = (x + z(y + xz), y + xz, z)
    affine(
        field,
        3,
        &[
            &[(1, &[1, 0, 0]), (1, &[0, 1, 1]), (1, &[1, 0, 2])],
            &[(1, &[0, 1, 0]), (1, &[1, 0, 1])],
            &[(1, &[0, 0, 1])],
        ],
    )
}

/// The three-dimensional automorphism with `deg(f^n) = 2n + 1`.
pub fn make_linearex(field: Field) -> GalleryEntry {
    GalleryEntry {
        name: "linearex".into(),
        map: GalleryMap::Affine(linearex_map(field)),
        expected: ExpectedLaw::Arithmetic { first: 3, step: 2 },
        dpol: Some(1),
        stated: None,
        provenance: Provenance::Published("automorphism of A^3 with deg(f^n) = 2n+1, f = g o h"),
    }
}

/// Polynomial-growth automorphisms of `A^d` built by stacking copies of the `linearex`
/// block: odd `d` recurses on `d - 2`, even `d` takes `f_(d-1)` and leaves `x_d` fixed.
pub fn exaut_map(field: Field, d: usize) -> Result<AffineMap> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("exaut needs d >= 3, got {}", d)));
    }
    if d == 3 {
        return Ok(linearex_map(field));
    }
    if d % 2 == 0 {
        let inner = exaut_map(field, d - 1)?;
        let shift: Vec<usize> = (0..d - 1).collect();
        let mut comps: Vec<Polynomial> = inner.components().iter().map(|p| p.rename_vars(d, &shift)).collect();
        comps.push(Polynomial::var(field, d, d - 1));
        return AffineMap::new(comps);
    }
    let inner = exaut_map(field, d - 2)?;
    let shift: Vec<usize> = (2..d).collect();
    let x = |i: usize| Polynomial::var(field, d, i);
    // x1 + x3 (x2 + x1 x3), x2 + x1 x3
    let x2_plus = x(1).add(&x(0).mul(&x(2))?)?;
    let mut comps = vec![x(0).add(&x(2).mul(&x2_plus)?)?, x2_plus];
    comps.extend(inner.components().iter().map(|p| p.rename_vars(d, &shift)));
    AffineMap::new(comps)
}

/// Order of growth realised by [`exaut_map`]: `floor(d/2)` for odd `d`, and that of
/// `f_(d-1)` for even `d`.
pub fn exaut_dpol(d: usize) -> u32 {
    if d % 2 == 1 {
        (d / 2) as u32
    } else {
        ((d - 1) / 2) as u32
    }
}

pub fn make_exaut(field: Field, d: usize) -> Result<GalleryEntry> {
    let map = exaut_map(field, d)?;
    let dpol = exaut_dpol(d);
    let expected = if d == 3 {
        ExpectedLaw::Arithmetic { first: 3, step: 2 }
    } else {
        ExpectedLaw::GrowthOrder { dpol }
    };
    Ok(GalleryEntry {
        name: format!("exaut-{}", d),
        map: GalleryMap::Affine(map),
        expected,
        dpol: Some(dpol),
        stated: Some(ExpectedLaw::GrowthOrder { dpol: (d / 2) as u32 }),
        provenance: Provenance::Published("recursive automorphisms of A^d with polynomial growth"),
    })
}

/// `(x1, x1 x2, ..., x1 x2 ... xd)` on `A^d`.
pub fn monomial_triangular_map(field: Field, d: usize) -> Result<AffineMap> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("monomial map needs d >= 2, got {}", d)));
    }
    let comps = (1..=d)
        .map(|k| {
            let exps: Vec<u32> = (0..d).map(|i| u32::from(i < k)).collect();
            Polynomial::from_int_terms(field, d, &[(1, &exps)])
        })
        .collect();
    AffineMap::new(comps)
}

/// Exponent rows of the homogenised triangular monomial map, built straight from its
/// definition: `x0^d`, then `x0^(d-k) x1 ... xk`.
pub fn monomial_triangular_rows(d: usize) -> Vec<Vec<u64>> {
    let mut rows = vec![{
        let mut r = vec![0u64; d + 1];
        r[0] = d as u64;
        r
    }];
    for k in 1..=d {
        let mut r = vec![0u64; d + 1];
        r[0] = (d - k) as u64;
        for e in r.iter_mut().take(k + 1).skip(1) {
            *e = 1;
        }
        rows.push(r);
    }
    rows
}

/// Degrees of iterates of a projective monomial map computed from exponent matrices
/// alone: compose by integer matrix product, strip the common monomial (column minima),
/// read the degree off a row sum. `None` on overflow.
pub fn monomial_exponent_degrees(rows: &[Vec<u64>], n: usize) -> Option<Vec<u64>> {
    let reduce = |m: &mut Vec<Vec<u64>>| {
        let width = m[0].len();
        for c in 0..width {
            let min = m.iter().map(|r| r[c]).min().unwrap_or(0);
            for r in m.iter_mut() {
                r[c] -= min;
            }
        }
    };
    let mut base: Vec<Vec<u64>> = rows.to_vec();
    reduce(&mut base);
    let mut current = base.clone();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            // row i of (f o g) = sum_j base[i][j] * current[j]
            let mut next = vec![vec![0u64; current[0].len()]; base.len()];
            for (i, row) in base.iter().enumerate() {
                for (j, &a) in row.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (c, &b) in current[j].iter().enumerate() {
                        next[i][c] = next[i][c].checked_add(a.checked_mul(b)?)?;
                    }
                }
            }
            reduce(&mut next);
            current = next;
        }
        out.push(current[0].iter().try_fold(0u64, |acc, &e| acc.checked_add(e))?);
    }
    Some(out)
}

/// Window over which [`make_monomial_triangular`] carries exact oracle values.
pub const MONOMIAL_ORACLE_WINDOW: usize = 60;

pub fn make_monomial_triangular(field: Field, d: usize) -> Result<GalleryEntry> {
    let map = monomial_triangular_map(field, d)?;
    let values = monomial_exponent_degrees(&monomial_triangular_rows(d), MONOMIAL_ORACLE_WINDOW)
        .ok_or(Error::ExponentOverflow)?;
    Ok(GalleryEntry {
        name: format!("monomial-{}", d),
        map: GalleryMap::Affine(map),
        expected: ExpectedLaw::Exact(values),
        dpol: Some((d - 1) as u32),
        stated: Some(ExpectedLaw::Power { exponent: (d - 1) as u32 }),
        provenance: Provenance::Published("triangular monomial birational map of P^d"),
    })
}

/// `(y, y^2 + x)`: exponential control with `deg(h^n) = 2^n`.
pub fn make_henon_control(field: Field) -> GalleryEntry {
    GalleryEntry {
        name: "henon".into(),
        map: GalleryMap::Affine(affine(field, 2, &[&[(1, &[0, 1])], &[(1, &[0, 2]), (1, &[1, 0])]])),
        expected: ExpectedLaw::Geometric { base: 2 },
        dpol: None,
        stated: None,
        provenance: Provenance::Control("Henon-type automorphism of A^2, exponential growth"),
    }
}

/// `[prod_{j != 0} x_j : ... : prod_{j != d} x_j]`, an involution.
pub fn sigma_map(field: Field, d: usize) -> Result<ProjectiveMap> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("sigma needs d >= 2, got {}", d)));
    }
    let rows: Vec<Vec<u32>> = (0..=d).map(|i| (0..=d).map(|j| u32::from(i != j)).collect()).collect();
    ProjectiveMap::monomial(field, &rows)
}

pub fn make_sigma_involution(field: Field, d: usize) -> Result<GalleryEntry> {
    Ok(GalleryEntry {
        name: format!("sigma-{}", d),
        map: GalleryMap::Projective(sigma_map(field, d)?),
        expected: ExpectedLaw::Periodic(vec![d as u64, 1]),
        dpol: Some(0),
        stated: None,
        provenance: Provenance::Control("standard Cremona involution, bounded degree with drops"),
    })
}

/// `[x1 : x2 : ... : xd : x0]`, a linear map of order `d + 1`.
pub fn coordinate_cycle(field: Field, d: usize) -> ProjectiveMap {
    let rows: Vec<Vec<u32>> = (0..=d).map(|i| (0..=d).map(|j| u32::from(j == (i + 1) % (d + 1))).collect()).collect();
    ProjectiveMap::monomial(field, &rows).expect("permutation matrix is a valid map")
}

pub fn make_coordinate_cycle(field: Field, d: usize) -> GalleryEntry {
    GalleryEntry {
        name: format!("cycle-{}", d + 1),
        map: GalleryMap::Projective(coordinate_cycle(field, d)),
        expected: ExpectedLaw::Arithmetic { first: 1, step: 0 },
        dpol: Some(0),
        stated: None,
        provenance: Provenance::Control("cyclic permutation of coordinates"),
    }
}

/// Every built-in entry over `field`, in a fixed order.
pub fn list_gallery(field: Field) -> Vec<GalleryEntry> {
    let mut out = vec![make_linearex(field)];
    for d in 3..=6 {
        out.push(make_exaut(field, d).expect("d >= 3"));
    }
    for d in 2..=4 {
        out.push(make_monomial_triangular(field, d).expect("d >= 2"));
    }
    out.push(make_henon_control(field));
    for d in 2..=3 {
        out.push(make_sigma_involution(field, d).expect("d >= 2"));
    }
    out.push(make_coordinate_cycle(field, 2));
    out
}

pub fn find_entry(field: Field, name: &str) -> Option<GalleryEntry> {
    list_gallery(field).into_iter().find(|e| e.name == name)
}
