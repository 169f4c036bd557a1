//! Exact sparse exterior algebra on the coordinate 1-forms of the
//! summand-zero torus, modulo its linear relations.
//!
//! At level `n` the generators are `dz^q_i` and `dz̄^q_i` for components
//! `q ∈ {1, 2}` and indices `1 <= i <= n`, subject to one relation per
//! (component, conjugation) pair:
//!
//! ```text
//! dz^q_1 + dz^q_2 + ... + dz^q_n = 0
//! ```
//!
//! [`Form::normalize`] projects onto the canonical representative that
//! eliminates the highest index `n`, so the reduced degree-1 space has the
//! expected `4(n - 1)` generators. Coefficients are exact rationals
//! throughout; every operation returns a fresh value.

mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{ArithError, Level};
use crate::autgroup::AutElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("component must be 1 or 2, got {0}")]
    InvalidComponent(u8),
    #[error("generator index must be >= 1")]
    ZeroIndex,
    #[error("generator index {index} exceeds level {level}")]
    IndexOutOfRange { index: u64, level: u64 },
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u64, right: u64 },
    #[error("monomial generators must be strictly ascending")]
    UnsortedMonomial,
    #[error("repeated generator in monomial")]
    RepeatedGenerator,
    #[error("images {0:?} are not a bijection of 1..=n")]
    InvalidPermutation(Vec<u64>),
    #[error(transparent)]
    Regime(#[from] ArithError),
    #[error("cannot parse form: {0}")]
    Parse(String),
}

/// A coordinate 1-form `dz^q_i` (or `dz̄^q_i` when `conjugated`).
///
/// The field order gives the derived total order used everywhere:
/// conjugation, then component, then index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    conjugated: bool,
    component: u8,
    index: u64,
}

impl Generator {
    pub fn new(conjugated: bool, component: u8, index: u64) -> Result<Self, ExteriorError> {
        if component != 1 && component != 2 {
            return Err(ExteriorError::InvalidComponent(component));
        }
        if index == 0 {
            return Err(ExteriorError::ZeroIndex);
        }
        Ok(Generator {
            conjugated,
            component,
            index,
        })
    }

    /// `dz^component_index`
    pub fn holomorphic(component: u8, index: u64) -> Result<Self, ExteriorError> {
        Self::new(false, component, index)
    }

    /// `dz̄^component_index`
    pub fn antiholomorphic(component: u8, index: u64) -> Result<Self, ExteriorError> {
        Self::new(true, component, index)
    }

    pub fn conjugated(self) -> bool {
        self.conjugated
    }

    pub fn component(self) -> u8 {
        self.component
    }

    pub fn index(self) -> u64 {
        self.index
    }

    fn with_index(self, index: u64) -> Generator {
        Generator { index, ..self }
    }
}

/// A wedge monomial: a strictly ascending list of generators with
/// implicit coefficient `+1`. Ordered by degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    generators: Vec<Generator>,
}

impl Monomial {
    /// The empty product (degree 0).
    pub fn unit() -> Self {
        Monomial {
            generators: Vec::new(),
        }
    }

    /// Requires the generators to be strictly ascending already; use
    /// [`Monomial::from_unsorted`] to sort with a sign.
    pub fn new(generators: Vec<Generator>) -> Result<Self, ExteriorError> {
        for pair in generators.windows(2) {
            if pair[0] == pair[1] {
                return Err(ExteriorError::RepeatedGenerator);
            }
            if pair[0] > pair[1] {
                return Err(ExteriorError::UnsortedMonomial);
            }
        }
        Ok(Monomial { generators })
    }

    /// Sorts the generators, returning the canonical monomial and whether
    /// the sorting permutation was odd. `None` when a generator repeats
    /// (the wedge is zero).
    pub fn from_unsorted(mut generators: Vec<Generator>) -> Option<(Self, bool)> {
        let mut negative = false;
        for i in 1..generators.len() {
            let mut j = i;
            while j > 0 && generators[j - 1] > generators[j] {
                generators.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if generators.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Monomial { generators }, negative))
    }

    pub fn degree(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    fn contains_index(&self, index: u64) -> bool {
        self.generators.iter().any(|g| g.index == index)
    }

    fn max_index(&self) -> u64 {
        self.generators.iter().map(|g| g.index).max().unwrap_or(1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.generators.cmp(&other.generators))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Merge two strictly ascending generator lists, tracking the parity of
/// the interleaving permutation. `None` on a shared generator.
fn merge_with_sign(a: &[Generator], b: &[Generator]) -> Option<(Vec<Generator>, bool)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut negative = false;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                merged.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] moves past every remaining generator of a
                if (a.len() - i) % 2 == 1 {
                    negative = !negative;
                }
                merged.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    Some((merged, negative))
}

/// A degree-graded sparse form: a finite rational combination of wedge
/// monomials at a fixed level.
///
/// Equality is structural (same monomial-to-coefficient map); equality in
/// the quotient algebra is `(a - b).is_zero()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    level: Level,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Form {
    pub fn zero(level: Level) -> Form {
        Form {
            level,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `c` (a degree-0 form).
    pub fn scalar(level: Level, c: BigRational) -> Form {
        let mut form = Form::zero(level);
        form.add_term(Monomial::unit(), c);
        form
    }

    /// The 1-form consisting of a single generator.
    pub fn generator(level: Level, g: Generator) -> Result<Form, ExteriorError> {
        if g.index > level.get() {
            return Err(ExteriorError::IndexOutOfRange {
                index: g.index,
                level: level.get(),
            });
        }
        let mut form = Form::zero(level);
        form.add_term(
            Monomial {
                generators: vec![g],
            },
            BigRational::one(),
        );
        Ok(form)
    }

    pub fn from_terms<I>(level: Level, terms: I) -> Result<Form, ExteriorError>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut form = Form::zero(level);
        for (monomial, coeff) in terms {
            if monomial.max_index() > level.get() {
                return Err(ExteriorError::IndexOutOfRange {
                    index: monomial.max_index(),
                    level: level.get(),
                });
            }
            form.add_term(monomial, coeff);
        }
        Ok(form)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored coefficient of a canonical monomial, or 0.
    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// True when no monomial uses the eliminable index `n`.
    pub fn is_reduced(&self) -> bool {
        let top = self.level.get();
        self.terms.keys().all(|m| !m.contains_index(top))
    }

    /// Zero as an element of the quotient algebra.
    pub fn is_zero(&self) -> bool {
        self.normalize().terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Form {
        if c.is_zero() {
            return Form::zero(self.level);
        }
        Form {
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Bilinear extension of the monomial wedge.
    pub fn wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        self.same_level(other)?;
        let mut out = Form::zero(self.level);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((generators, negative)) =
                    merge_with_sign(&ma.generators, &mb.generators)
                {
                    let mut coeff = ca * cb;
                    if negative {
                        coeff = -coeff;
                    }
                    out.add_term(Monomial { generators }, coeff);
                }
            }
        }
        Ok(out)
    }

    /// Canonical representative in the quotient: every index-`n` generator
    /// is replaced by minus the sum of its lower-index siblings, expanded
    /// multilinearly, and collected. Idempotent, and the identity on
    /// already-reduced forms.
    pub fn normalize(&self) -> Form {
        if self.is_reduced() {
            return self.clone();
        }
        let top = self.level.get();
        let mut out = Form::zero(self.level);
        for (monomial, coeff) in &self.terms {
            if !monomial.contains_index(top) {
                out.add_term(monomial.clone(), coeff.clone());
                continue;
            }
            let mut expanded = Form::scalar(self.level, coeff.clone());
            for g in &monomial.generators {
                let factor = if g.index == top {
                    self.relation_complement(*g)
                } else {
                    Form::generator(self.level, *g).expect("index below level")
                };
                expanded = expanded.wedge(&factor).expect("levels agree");
            }
            for (m, c) in expanded.terms {
                out.add_term(m, c);
            }
        }
        out
    }

    /// `-(g_1 + ... + g_{n-1})` with the same component and conjugation
    /// as `g`; the relation solved for the index-`n` generator.
    fn relation_complement(&self, g: Generator) -> Form {
        let mut form = Form::zero(self.level);
        for k in 1..self.level.get() {
            form.add_term(
                Monomial {
                    generators: vec![g.with_index(k)],
                },
                -BigRational::one(),
            );
        }
        form
    }

    /// Induced action of a kernel-group element on translation-invariant
    /// forms: pure translations act as the identity, inversion-type
    /// elements negate every generator (so a degree-k monomial picks up
    /// `(-1)^k`). The result is re-normalized.
    pub fn pullback(&self, g: &AutElement) -> Result<Form, ExteriorError> {
        if g.modulus() != self.level.get() {
            return Err(ExteriorError::LevelMismatch {
                left: self.level.get(),
                right: g.modulus(),
            });
        }
        if g.is_pure_translation() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        for (monomial, coeff) in out.terms.iter_mut() {
            if monomial.degree() % 2 == 1 {
                *coeff = -&*coeff;
            }
        }
        if out.is_reduced() {
            return Ok(out);
        }
        Ok(out.normalize())
    }

    /// Relabels every generator index through the permutation and
    /// re-normalizes. Reduced inputs are fine: they are ordinary forms on
    /// the indices `1..n-1`.
    pub fn permute(&self, perm: &Permutation) -> Result<Form, ExteriorError> {
        if perm.size() != self.level.get() {
            return Err(ExteriorError::LevelMismatch {
                left: self.level.get(),
                right: perm.size(),
            });
        }
        let mut out = Form::zero(self.level);
        for (monomial, coeff) in &self.terms {
            let relabeled: Vec<Generator> = monomial
                .generators
                .iter()
                .map(|g| g.with_index(perm.apply(g.index)))
                .collect();
            let (canonical, negative) =
                Monomial::from_unsorted(relabeled).expect("bijection keeps generators distinct");
            let mut c = coeff.clone();
            if negative {
                c = -c;
            }
            out.add_term(canonical, c);
        }
        Ok(out.normalize())
    }

    fn add_term(&mut self, monomial: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn same_level(&self, other: &Form) -> Result<Level, ExteriorError> {
        if self.level != other.level {
            return Err(ExteriorError::LevelMismatch {
                left: self.level.get(),
                right: other.level.get(),
            });
        }
        Ok(self.level)
    }
}

impl Add for &Form {
    type Output = Form;

    /// Panics on mismatched levels; use forms from a single level.
    fn add(self, rhs: &Form) -> Form {
        self.same_level(rhs).expect("form levels must agree");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        Form {
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }
}

/// A permutation of `{1, .., n}`, stored as one-based images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u64>,
}

impl Permutation {
    pub fn identity(n: Level) -> Permutation {
        Permutation {
            images: (1..=n.get()).collect(),
        }
    }

    /// `images[i - 1]` is the image of `i`; must be a bijection of `1..=n`.
    pub fn from_images(images: Vec<u64>) -> Result<Permutation, ExteriorError> {
        let n = images.len() as u64;
        let mut seen = vec![false; images.len()];
        for &image in &images {
            if image == 0 || image > n || seen[(image - 1) as usize] {
                return Err(ExteriorError::InvalidPermutation(images));
            }
            seen[(image - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: Level, i: u64, j: u64) -> Result<Permutation, ExteriorError> {
        let mut images: Vec<u64> = (1..=n.get()).collect();
        if i == 0 || j == 0 || i > n.get() || j > n.get() {
            return Err(ExteriorError::InvalidPermutation(vec![i, j]));
        }
        images.swap((i - 1) as usize, (j - 1) as usize);
        Ok(Permutation { images })
    }

    pub fn size(&self) -> u64 {
        self.images.len() as u64
    }

    pub fn apply(&self, i: u64) -> u64 {
        self.images[(i - 1) as usize]
    }
}

/// The invariant (2,1)-form `Σ_i dz^1_i ∧ dz^2_i ∧ dz̄^2_i`, returned as
/// its reduced representative. Homogeneous of degree 3 and nonzero; the
/// monomial `dz^1_1 ∧ dz^2_2 ∧ dz̄^2_2` appears with coefficient `-1`.
pub fn build_tau_tilde(n: Level) -> Result<Form, ExteriorError> {
    n.require_hyperkaehler()?;
    let mut sum = Form::zero(n);
    for i in 1..=n.get() {
        let term = Form::generator(n, Generator::holomorphic(1, i)?)?
            .wedge(&Form::generator(n, Generator::holomorphic(2, i)?)?)?
            .wedge(&Form::generator(n, Generator::antiholomorphic(2, i)?)?)?;
        sum = &sum + &term;
    }
    Ok(sum.normalize())
}

/// The witness monomial `dz^1_1 ∧ dz^2_2 ∧ dz̄^2_2` whose coefficient in
/// the reduced invariant form is exactly `-1` for every level `n >= 3`.
pub fn witness_monomial() -> Monomial {
    Monomial::new(vec![
        Generator::holomorphic(1, 1).unwrap(),
        Generator::holomorphic(2, 2).unwrap(),
        Generator::antiholomorphic(2, 2).unwrap(),
    ])
    .unwrap()
}
