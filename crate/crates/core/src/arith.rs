//! Divisor sums, torsion orders, and the `p`/`d` bookkeeping consumed by
//! the Lefschetz layer.

use std::fmt;

use thiserror::Error;

use crate::autgroup::TorsionElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("level n = {0} is below the hyperkaehler regime (requires n >= 3)")]
    BelowHyperkaehlerRegime(u64),
}

/// The length parameter `n >= 1`. The associated manifold has complex
/// dimension `2(n - 1)`; the certified claims need `n >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u64);

impl Level {
    pub fn new(n: u64) -> Result<Self, ArithError> {
        if n == 0 {
            return Err(ArithError::Zero);
        }
        Ok(Level(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Guards operations that only make sense for `2(n - 1) >= 4`.
    pub fn require_hyperkaehler(self) -> Result<Self, ArithError> {
        if self.0 < 3 {
            return Err(ArithError::BelowHyperkaehlerRegime(self.0));
        }
        Ok(self)
    }

    pub fn manifold_dimension(self) -> u64 {
        2 * (self.0 - 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All positive divisors of `n`, ascending. Trial division up to `sqrt(n)`;
/// inputs stay at desk scale so nothing fancier is warranted.
pub fn divisors(n: u64) -> Result<Vec<u64>, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// Sum of all positive divisors of `n`.
pub fn sigma(n: u64) -> Result<u64, ArithError> {
    Ok(divisors(n)?.iter().sum())
}

/// Order `p` of a torsion class in `(Z/n)^4`, i.e. `n / gcd(n, a1, .., a4)`.
/// Equals 1 exactly for the zero class.
pub fn torsion_order(a: &TorsionElement) -> u64 {
    a.modulus() / torsion_codegree(a)
}

/// The complementary divisor `d = n/p = gcd(n, a1, .., a4)`. Always divides
/// `n`, and `d < n` exactly when the class is nonzero.
pub fn torsion_codegree(a: &TorsionElement) -> u64 {
    a.coords()
        .iter()
        .fold(a.modulus(), |g, &c| num_integer::gcd(g, c))
}
