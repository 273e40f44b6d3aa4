//! Degree sequences of iterates and of monoid balls, plus periodicity over `F_p`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::maps::{AffineMap, ProjectiveMap};

/// Default cap on the number of terms any single polynomial may hold.
pub const DEFAULT_TERM_CAP: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_terms: DEFAULT_TERM_CAP }
    }
}

impl Budget {
    pub fn new(max_terms: usize) -> Result<Budget> {
        if max_terms == 0 {
            return Err(Error::InvalidArgument("budget must be positive".into()));
        }
        Ok(Budget { max_terms })
    }
}

/// How a sequence was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// `f^n = f o f^(n-1)`, reduced at every step.
    LeftMultiply,
    /// Each `f^n` rebuilt from scratch by binary powering.
    Squaring,
    /// Supplied numbers, not computed from a map.
    Synthetic,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::LeftMultiply => "left-multiply",
            Strategy::Squaring => "squaring",
            Strategy::Synthetic => "synthetic",
        }
    }
}

/// Where a computation stopped because the term budget ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// First index that could not be computed.
    pub at: usize,
    pub terms: usize,
    pub cap: usize,
}

/// `deg(f^1), ..., deg(f^N)` with the drop recorded at each step.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeSequence {
    /// `degrees[k]` is `deg(f^(k+1))`.
    pub degrees: Vec<u64>,
    /// `drops[k] = deg(f) * deg(f^k) - deg(f^(k+1))`; `drops[0] = 0`.
    pub drops: Vec<u64>,
    pub strategy: Strategy,
    pub source: String,
    pub dim: Option<usize>,
    pub requested: usize,
    pub truncated: Option<Truncation>,
    /// Set when a period was certified for the underlying map.
    pub period: Option<Period>,
}

impl DegreeSequence {
    /// Wraps plain numbers, e.g. for classifier controls.
    pub fn synthetic(degrees: Vec<u64>, source: &str) -> DegreeSequence {
        let n = degrees.len();
        DegreeSequence {
            drops: vec![0; n],
            degrees,
            strategy: Strategy::Synthetic,
            source: source.into(),
            dim: None,
            requested: n,
            truncated: None,
            period: None,
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `deg(f^n)` for `n >= 1`.
    pub fn degree(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|k| self.degrees.get(k).copied())
    }

    pub fn is_partial(&self) -> bool {
        self.truncated.is_some()
    }

    /// `deg(f)^n`, the degree with no cancellation at all.
    pub fn naive_degree(&self, n: usize) -> Option<u128> {
        let d = *self.degrees.first()? as u128;
        let mut acc: u128 = 1;
        for _ in 0..n {
            acc = acc.checked_mul(d)?;
        }
        Some(acc)
    }

    /// `deg(f^(n+m)) <= deg(f^n) deg(f^m)` over every stored pair, and each recorded
    /// drop matching `deg(f) deg(f^n) - deg(f^(n+1))`.
    pub fn is_consistent(&self) -> bool {
        let d = &self.degrees;
        for i in 0..d.len() {
            for j in 0..d.len() {
                if i + j + 1 < d.len() && d[i + j + 1] as u128 > d[i] as u128 * d[j] as u128 {
                    return false;
                }
            }
        }
        if self.strategy == Strategy::Synthetic {
            return true;
        }
        self.drops.len() == d.len()
            && self.drops.first().map_or(true, |&x| x == 0)
            && (1..d.len()).all(|k| d[0] as u128 * d[k - 1] as u128 == (d[k] + self.drops[k]) as u128)
    }
}

/// Successive iterates `f, f^2, f^3, ...` by left multiplication.
pub struct Orbit<'a> {
    f: &'a ProjectiveMap,
    current: Option<ProjectiveMap>,
    budget: Budget,
}

impl<'a> Orbit<'a> {
    pub fn new(f: &'a ProjectiveMap, budget: Budget) -> Self {
        Orbit { f, current: None, budget }
    }

    /// Next iterate and the drop incurred producing it.
    pub fn step(&mut self) -> Result<(&ProjectiveMap, u64)> {
        let (next, drop) = match &self.current {
            None => (self.f.clone(), 0),
            Some(prev) => {
                let c = self.f.compose_capped(prev, self.budget.max_terms)?;
                (c.map, c.drop)
            }
        };
        if next.components().iter().any(|p| p.len() > self.budget.max_terms) {
            let terms = next.components().iter().map(|p| p.len()).max().unwrap_or(0);
            return Err(Error::BudgetExceeded { terms, cap: self.budget.max_terms });
        }
        self.current = Some(next);
        Ok((self.current.as_ref().unwrap(), drop))
    }
}

/// Degrees of `f^1 .. f^n`. Running out of budget yields a partial sequence with
/// [`DegreeSequence::truncated`] set rather than an error.
pub fn iterate_degrees(f: &ProjectiveMap, n: usize, budget: Budget) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument("iteration count must be at least 1".into()));
    }
    let mut seq = DegreeSequence {
        degrees: Vec::with_capacity(n),
        drops: Vec::with_capacity(n),
        strategy: Strategy::LeftMultiply,
        source: String::new(),
        dim: Some(f.dim()),
        requested: n,
        truncated: None,
        period: None,
    };
    let mut orbit = Orbit::new(f, budget);
    for k in 1..=n {
        match orbit.step() {
            Ok((map, drop)) => {
                seq.degrees.push(map.degree());
                seq.drops.push(drop);
            }
            Err(Error::BudgetExceeded { terms, cap }) => {
                seq.truncated = Some(Truncation { at: k, terms, cap });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(seq)
}

/// `f^n` by binary powering, reducing after every composition.
pub fn power(f: &ProjectiveMap, mut n: usize, budget: Budget) -> Result<ProjectiveMap> {
    let mut acc = ProjectiveMap::identity(f.field(), f.dim());
    let mut base = f.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.compose_capped(&base, budget.max_terms)?.map;
        }
        n >>= 1;
        if n > 0 {
            base = base.compose_capped(&base, budget.max_terms)?.map;
        }
    }
    Ok(acc)
}

/// Same as [`iterate_degrees`] but every iterate is recomputed independently.
pub fn iterate_degrees_squaring(f: &ProjectiveMap, n: usize, budget: Budget) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument("iteration count must be at least 1".into()));
    }
    let mut seq = DegreeSequence {
        degrees: Vec::with_capacity(n),
        drops: Vec::with_capacity(n),
        strategy: Strategy::Squaring,
        source: String::new(),
        dim: Some(f.dim()),
        requested: n,
        truncated: None,
        period: None,
    };
    for k in 1..=n {
        match power(f, k, budget) {
            Ok(map) => {
                let drop = match seq.degrees.last() {
                    None => 0,
                    Some(&prev) => f.degree() * prev - map.degree(),
                };
                seq.degrees.push(map.degree());
                seq.drops.push(drop);
            }
            Err(Error::BudgetExceeded { terms, cap }) => {
                seq.truncated = Some(Truncation { at: k, terms, cap });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(seq)
}

/// Outcome of checking `deg(f^d) = deg(f)^d` for an affine endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aut1Certificate {
    pub certified: bool,
    /// `deg(f^1) .. deg(f^d)`.
    pub degrees: Vec<u64>,
    pub base_degree: u64,
    /// Whether the caller vouched that `f` is an automorphism.
    pub asserted_automorphism: bool,
    /// `deg(f)`, when the sequence is predicted to be `deg(f)^n`.
    pub predicted_base: Option<u64>,
}

impl Aut1Certificate {
    /// Predicted `deg(f^n)` if a prediction was made.
    pub fn predicted_degree(&self, n: u32) -> Option<u128> {
        self.predicted_base.and_then(|b| (b as u128).checked_pow(n))
    }
}

/// If `f` is an automorphism with `deg(f^d) = deg(f)^d` then `deg(f^n) = deg(f)^n` for
/// every `n`. Invertibility is not checked; the caller's assertion is recorded and the
/// prediction is only issued when it was made.
pub fn aut1_certificate(f: &AffineMap, asserted_automorphism: bool, budget: Budget) -> Result<Aut1Certificate> {
    let d = f.dim();
    let h = f.homogenize()?;
    let mut orbit = Orbit::new(&h, budget);
    let mut degrees = Vec::with_capacity(d);
    for _ in 0..d {
        degrees.push(orbit.step()?.0.degree());
    }
    let base = degrees[0];
    let certified = (base as u128).checked_pow(d as u32) == Some(*degrees.last().unwrap() as u128);
    Ok(Aut1Certificate {
        certified,
        degrees,
        base_degree: base,
        asserted_automorphism,
        predicted_base: if certified && asserted_automorphism { Some(base) } else { None },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallElement {
    pub map: ProjectiveMap,
    /// Generator indices of one shortest word, applied as `s[w0] o s[w1] o ...`.
    pub word: Vec<usize>,
    pub degree: u64,
}

impl BallElement {
    pub fn word_length(&self) -> usize {
        self.word.len()
    }
}

/// Distinct elements of word length at most `radius`, in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBall {
    pub radius: usize,
    pub elements: Vec<BallElement>,
}

impl WordBall {
    /// Elements of word length at most `m`.
    pub fn within(&self, m: usize) -> impl Iterator<Item = &BallElement> {
        self.elements.iter().filter(move |e| e.word_length() <= m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallDegrees {
    pub ball: WordBall,
    /// `max_degrees[m-1] = D_S(m)`, the largest degree in the ball of radius `m`.
    pub max_degrees: Vec<u64>,
    pub truncated: Option<Truncation>,
}

/// Breadth-first expansion of the monoid generated by `generators` (taken as given,
/// not symmetrized), deduplicated by canonical form.
pub fn monoid_ball_degrees(generators: &[ProjectiveMap], radius: usize, budget: Budget) -> Result<BallDegrees> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("generating set is empty".into()))?;
    if radius == 0 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    for g in generators {
        if g.dim() != first.dim() {
            return Err(Error::DimensionMismatch(first.dim(), g.dim()));
        }
        if g.field() != first.field() {
            return Err(Error::FieldMismatch(first.field(), g.field()));
        }
    }
    let identity = ProjectiveMap::identity(first.field(), first.dim());
    let mut index: BTreeMap<ProjectiveMap, usize> = BTreeMap::new();
    index.insert(identity.clone(), 0);
    let mut elements = vec![BallElement { map: identity, word: Vec::new(), degree: 1 }];
    let mut frontier = vec![0usize];
    let mut max_degrees = Vec::with_capacity(radius);
    let mut best = 1;
    for m in 1..=radius {
        let mut next = Vec::new();
        for &e in &frontier {
            for (gi, g) in generators.iter().enumerate() {
                let composed = match elements[e].map.compose_capped(g, budget.max_terms) {
                    Ok(c) => c.map,
                    Err(Error::BudgetExceeded { terms, cap }) => {
                        return Ok(BallDegrees {
                            ball: WordBall { radius: m - 1, elements },
                            max_degrees,
                            truncated: Some(Truncation { at: m, terms, cap }),
                        });
                    }
                    Err(err) => return Err(err),
                };
                if index.contains_key(&composed) {
                    continue;
                }
                let mut word = elements[e].word.clone();
                word.push(gi);
                let degree = composed.degree();
                best = best.max(degree);
                index.insert(composed.clone(), elements.len());
                next.push(elements.len());
                elements.push(BallElement { map: composed, word, degree });
            }
        }
        max_degrees.push(best);
        frontier = next;
    }
    Ok(BallDegrees { ball: WordBall { radius, elements }, max_degrees, truncated: None })
}

/// `f^(preperiod + period) = f^preperiod`, with the smallest such indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Period {
    pub preperiod: usize,
    pub period: usize,
}

impl Period {
    /// Index of the iterate that equals `f^n`, folded into `[1, preperiod + period)`.
    pub fn representative(&self, n: usize) -> usize {
        let end = self.preperiod + self.period;
        if n < end {
            n
        } else {
            self.preperiod + (n - self.preperiod) % self.period
        }
    }
}

/// Looks for the first repeat `f^i = f^j` with `i < j <= max_steps`. Only meaningful over
/// a finite field, where maps of bounded degree are finite in number.
pub fn period_detect(f: &ProjectiveMap, max_steps: usize, budget: Budget) -> Result<Option<Period>> {
    if !f.field().is_finite() {
        return Err(Error::NeedsFiniteField(f.field()));
    }
    let mut seen: BTreeMap<ProjectiveMap, usize> = BTreeMap::new();
    let mut orbit = Orbit::new(f, budget);
    for j in 1..=max_steps {
        let (map, _) = orbit.step()?;
        if let Some(&i) = seen.get(map) {
            return Ok(Some(Period { preperiod: i, period: j - i }));
        }
        seen.insert(map.clone(), j);
    }
    Ok(None)
}
