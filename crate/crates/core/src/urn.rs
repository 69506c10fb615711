//! Two-colour urn models.
//!
//! An urn starts with `white0` white and `black0` black balls. Each draw picks
//! a ball uniformly at random, returns it, and adds balls according to a
//! [`Replacement`] rule. The quantity of interest is the number of white
//! balls after all draws.
//!
//! Matrix convention: a rule is written `[[α, β], [γ, δ]]`. The first row
//! fires when a *black* ball is drawn (β white and α black balls are added),
//! the second row fires when a *white* ball is drawn (δ white and γ black
//! balls are added). A plain Pólya-Eggenberger urn with step `s` is
//! `[[s, 0], [0, s]]`. The clique-growth urn used for vertex degrees in a
//! k-tree is `[[k, 0], [1, k - 1]]`; build it with
//! [`Replacement::clique_growth`] rather than by hand.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Balls added after each draw, keyed by the colour drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Replacement {
    /// α: black balls added when black is drawn.
    pub black_on_black: u64,
    /// β: white balls added when black is drawn.
    pub white_on_black: u64,
    /// γ: black balls added when white is drawn.
    pub black_on_white: u64,
    /// δ: white balls added when white is drawn.
    pub white_on_white: u64,
}

impl Replacement {
    /// From `[[α, β], [γ, δ]]`, rows ordered (black drawn, white drawn).
    pub const fn from_matrix(m: [[u64; 2]; 2]) -> Self {
        Replacement {
            black_on_black: m[0][0],
            white_on_black: m[0][1],
            black_on_white: m[1][0],
            white_on_white: m[1][1],
        }
    }

    pub const fn matrix(&self) -> [[u64; 2]; 2] {
        [
            [self.black_on_black, self.white_on_black],
            [self.black_on_white, self.white_on_white],
        ]
    }

    /// Pólya-Eggenberger reinforcement by `s` balls of the drawn colour.
    pub const fn polya(s: u64) -> Self {
        Self::from_matrix([[s, 0], [0, s]])
    }

    /// `[[k, 0], [1, k - 1]]`: white balls are the k-cliques containing a
    /// fixed vertex of a random k-tree.
    pub fn clique_growth(k: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidUrn("clique growth needs k >= 1".into()));
        }
        Ok(Self::from_matrix([[k, 0], [1, k - 1]]))
    }

    pub fn is_polya(&self) -> bool {
        self.white_on_black == 0
            && self.black_on_white == 0
            && self.black_on_black == self.white_on_white
    }

    pub fn is_triangular(&self) -> bool {
        self.white_on_black == 0
    }
}

/// Initial contents, replacement rule and number of draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UrnSpec {
    pub white0: u64,
    pub black0: u64,
    pub replacement: Replacement,
    pub draws: u64,
}

impl UrnSpec {
    pub fn new(white0: u64, black0: u64, replacement: Replacement, draws: u64) -> Self {
        UrnSpec { white0, black0, replacement, draws }
    }

    pub fn polya(white0: u64, black0: u64, s: u64, draws: u64) -> Self {
        Self::new(white0, black0, Replacement::polya(s), draws)
    }

    pub fn validate(&self) -> Result<()> {
        if self.white0.checked_add(self.black0).unwrap_or(u64::MAX) == 0 {
            return Err(Error::InvalidUrn("urn holds no balls".into()));
        }
        Ok(())
    }
}

/// Running contents of an urn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UrnState {
    pub white: u64,
    pub black: u64,
}

impl UrnState {
    pub fn total(&self) -> u64 {
        self.white + self.black
    }

    /// One draw: a single uniform compared against `white / total`.
    pub fn draw<R: Rng + ?Sized>(&mut self, rule: &Replacement, rng: &mut R) -> Result<()> {
        let total = self.white as f64 + self.black as f64;
        let u: f64 = rng.random();
        let (dw, db) = if u * total < self.white as f64 {
            (rule.white_on_white, rule.black_on_white)
        } else {
            (rule.white_on_black, rule.black_on_black)
        };
        self.white = self.white.checked_add(dw).ok_or(Error::UrnOverflow)?;
        self.black = self.black.checked_add(db).ok_or(Error::UrnOverflow)?;
        if self.white.checked_add(self.black).is_none() {
            return Err(Error::UrnOverflow);
        }
        Ok(())
    }
}

/// Number of white balls after `spec.draws` draws.
pub fn urn_sample<R: Rng + ?Sized>(spec: &UrnSpec, rng: &mut R) -> Result<u64> {
    spec.validate()?;
    let mut state = UrnState { white: spec.white0, black: spec.black0 };
    for _ in 0..spec.draws {
        state.draw(&spec.replacement, rng)?;
    }
    Ok(state.white)
}

/// [`urn_sample`] restricted to triangular rules (β = 0), the only shape the
/// degree analysis uses.
pub fn urn_sample_triangular<R: Rng + ?Sized>(spec: &UrnSpec, rng: &mut R) -> Result<u64> {
    if !spec.replacement.is_triangular() {
        return Err(Error::InvalidUrn(format!(
            "matrix {:?} is not triangular (β must be 0)",
            spec.replacement.matrix()
        )));
    }
    urn_sample(spec, rng)
}

/// Exact mean and variance of a Pólya-Eggenberger urn `(a, b, s, n)`:
/// `a + a·s·n/w` and `a·b·s²·n·(s·n + w) / (w²·(w + s))` with `w = a + b`.
pub fn urn_mean_variance(a: u64, b: u64, s: u64, n: u64) -> Result<(BigRational, BigRational)> {
    UrnSpec::polya(a, b, s, n).validate()?;
    let (a, b, s, n) = (BigInt::from(a), BigInt::from(b), BigInt::from(s), BigInt::from(n));
    let w = &a + &b;
    let mean = BigRational::from(a.clone()) + BigRational::new(&a * &s * &n, w.clone());
    let var = BigRational::new(
        &a * &b * &s * &s * &n * (&s * &n + &w),
        &w * &w * (&w + &s),
    );
    Ok((mean, var))
}

/// `P[Urn(a, b, s, n) = a]`: no white ball is ever drawn.
///
/// Computed as `Π_{i<n} (1 - a / (a + b + i·s))`.
pub fn urn_survival_probability(a: u64, b: u64, s: u64, n: u64) -> Result<BigRational> {
    if a == 0 {
        return Ok(BigRational::one());
    }
    UrnSpec::polya(a, b, s, n).validate()?;
    let mut p = BigRational::one();
    for i in 0..n {
        let total = (a as u128) + (b as u128) + (i as u128) * (s as u128);
        let factor = BigRational::new(BigInt::from(total - a as u128), BigInt::from(total));
        if factor.is_zero() {
            return Ok(BigRational::zero());
        }
        p *= factor;
    }
    Ok(p)
}

/// `(c / (c + n))^(a / s)`, which bounds [`urn_survival_probability`] from
/// above whenever `c >= (a + b) / s`.
pub fn survival_upper_bound(a: u64, s: u64, n: u64, c: f64) -> f64 {
    (c / (c + n as f64)).powf(a as f64 / s as f64)
}

/// Leading term of the r-th moment bound for a triangular urn
/// `[[α, 0], [γ, δ]]` with `γ, δ > 0`, `α = γ + δ` and `r·δ >= α`:
/// `(α·n / (W0 + B0))^(r·δ/α) · Π_{i<r} (W0 + i·δ)`.
///
/// Returns `None` when the hypotheses do not hold.
pub fn moment_upper_bound(spec: &UrnSpec, r: u32) -> Option<f64> {
    let rule = &spec.replacement;
    let (alpha, gamma, delta) = (rule.black_on_black, rule.black_on_white, rule.white_on_white);
    if rule.white_on_black != 0
        || gamma == 0
        || delta == 0
        || alpha != gamma + delta
        || (r as u64) * delta < alpha
        || r == 0
    {
        return None;
    }
    let w = (spec.white0 + spec.black0) as f64;
    let exponent = r as f64 * delta as f64 / alpha as f64;
    let lead = (alpha as f64 * spec.draws as f64 / w).powf(exponent);
    let rising: f64 = (0..r).map(|i| spec.white0 as f64 + i as f64 * delta as f64).product();
    Some(lead * rising)
}

/// Monte Carlo estimate of `E[X^r]` over `trials` independent runs.
pub fn urn_moment_estimate<R: Rng + ?Sized>(
    spec: &UrnSpec,
    r: u32,
    trials: u64,
    rng: &mut R,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let mut sum = 0.0;
    for _ in 0..trials {
        let x = urn_sample(spec, rng)? as f64;
        sum += x.powi(r as i32);
    }
    Ok(sum / trials as f64)
}

/// Number of white balls in the [`Replacement::clique_growth`] urn translated
/// into a vertex degree: `A + (X - B) / (k - 1)` for a vertex with `A`
/// neighbours that lies in `B` cliques.
pub fn degree_from_clique_urn(neighbors: u64, cliques: u64, urn_white: u64, k: u64) -> f64 {
    neighbors as f64 + (urn_white as f64 - cliques as f64) / (k as f64 - 1.0)
}
