//! Concrete null sequences used as the infinitesimal basis, termwise
//! evaluation of generalized reals, and the literal sequence-level
//! arithmetic used to cross-check the coefficient representation.
//!
//! A generalized real is a convergent real sequence. The library never
//! materializes arbitrary sequences: every value is `shadow + sum c_i g_i`
//! where each `g_i` is one of the catalog generators below. The catalog
//! members are linearly independent as sequences, which is what makes
//! structural equality of coefficient vectors sound.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::real::GeneralizedReal;

/// Ratio of a geometric generator, always in `]0, 1[`.
#[derive(Debug, Clone, Copy)]
pub struct Ratio(f64);

impl Ratio {
    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r > 0.0 && r < 1.0 {
            Ok(Ratio(r))
        } else {
            Err(Error::Domain(format!("geometric ratio must lie in ]0,1[, got {r}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// A named sequence `n -> term(n)` converging to zero.
///
/// Wire ids: `e:<k>` for the impulse at index `k`, `h` for the harmonic
/// sequence `1/n`, `g:<r>` for the geometric sequence `r^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    /// 1 at index `k`, 0 elsewhere (eventually null).
    Impulse(u32),
    /// `1/n`.
    Harmonic,
    /// `r^n` with `0 < r < 1`.
    Geometric(Ratio),
}

impl Generator {
    pub fn impulse(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("impulse index starts at 1".into()));
        }
        Ok(Generator::Impulse(k))
    }

    pub fn harmonic() -> Self {
        Generator::Harmonic
    }

    pub fn geometric(r: f64) -> Result<Self> {
        Ratio::new(r).map(Generator::Geometric)
    }

    /// Term at 1-based index `n`.
    pub fn term(&self, n: u64) -> f64 {
        debug_assert!(n >= 1, "sequence indices start at 1");
        match *self {
            Generator::Impulse(k) => {
                if n == u64::from(k) {
                    1.0
                } else {
                    0.0
                }
            }
            Generator::Harmonic => 1.0 / n as f64,
            Generator::Geometric(r) => {
                if n > i32::MAX as u64 {
                    0.0
                } else {
                    r.get().powi(n as i32)
                }
            }
        }
    }

    pub fn id(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Impulse(k) => write!(f, "e:{k}"),
            Generator::Harmonic => write!(f, "h"),
            // `{}` on f64 is the shortest decimal that round-trips.
            Generator::Geometric(r) => write!(f, "g:{}", r.get()),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownGenerator(s.to_string());
        if s == "h" {
            return Ok(Generator::Harmonic);
        }
        if let Some(k) = s.strip_prefix("e:") {
            let k: u32 = k.parse().map_err(|_| unknown())?;
            return Generator::impulse(k).map_err(|_| unknown());
        }
        if let Some(r) = s.strip_prefix("g:") {
            let r: f64 = r.parse().map_err(|_| unknown())?;
            let g = Generator::geometric(r).map_err(|_| unknown())?;
            // Only canonical spellings are accepted so ids stay unique.
            if g.to_string() != s {
                return Err(unknown());
            }
            return Ok(g);
        }
        Err(unknown())
    }
}

/// A fixed list of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    members: Vec<Generator>,
}

impl Catalog {
    pub fn new(members: Vec<Generator>) -> Result<Self> {
        let mut seen = members.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != members.len() {
            return Err(Error::Domain("catalog ids must be unique".into()));
        }
        Ok(Catalog { members })
    }

    /// Impulses `e:1..=e:impulses`, the harmonic sequence, and the given
    /// geometric ratios.
    pub fn standard(impulses: u32, ratios: &[f64]) -> Result<Self> {
        let mut members = Vec::new();
        for k in 1..=impulses {
            members.push(Generator::impulse(k)?);
        }
        members.push(Generator::Harmonic);
        for &r in ratios {
            members.push(Generator::geometric(r)?);
        }
        Catalog::new(members)
    }

    pub fn members(&self) -> &[Generator] {
        &self.members
    }

    pub fn lookup(&self, id: &str) -> Result<Generator> {
        let g: Generator = id.parse()?;
        if self.members.contains(&g) {
            Ok(g)
        } else {
            Err(Error::UnknownGenerator(id.to_string()))
        }
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::standard(8, &[0.5, 0.25, 0.75, 0.9]).expect("static catalog is valid")
    }
}

/// `x_n = sigma(x) + sum c_i g_i(n)`.
pub fn term(x: &GeneralizedReal, n: u64) -> f64 {
    x.dpart_coeffs()
        .iter()
        .fold(x.sigma(), |acc, (g, c)| acc + c * g.term(n))
}

/// First `n_terms` terms of `x`, starting at index 1.
pub fn prefix(x: &GeneralizedReal, n_terms: usize) -> Vec<f64> {
    (1..=n_terms as u64).map(|n| term(x, n)).collect()
}

/// Indices examined by [`convergence_witness`]: `1..=1024` together with
/// every power of two up to `2^23`, clipped to `nmax`.
pub fn sampled_indices(nmax: u64) -> Vec<u64> {
    let mut idx: Vec<u64> = (1..=1024u64.min(nmax)).collect();
    idx.extend((11..=23).map(|k| 1u64 << k).filter(|&n| n <= nmax));
    idx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// Every sampled index from `N` on is within `eps` of the limit.
    Converged(u64),
    Failure,
}

/// Smallest sampled `N <= nmax` with `|x_n - sigma(x)| < eps` for every
/// sampled `n` in `[N, nmax]`.
pub fn convergence_witness(x: &GeneralizedReal, eps: f64, nmax: u64) -> Witness {
    let limit = x.sigma();
    let idx = sampled_indices(nmax.max(1));
    let mut witness = None;
    for &n in idx.iter().rev() {
        if (term(x, n) - limit).abs() < eps {
            witness = Some(n);
        } else {
            break;
        }
    }
    witness.map_or(Witness::Failure, Witness::Converged)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Mul,
}

/// Literal termwise sum/product of two convergent sequences:
/// `(xi_n + eta_n)` and `(lim x * eta_n + lim y * xi_n - lim x * lim y)`.
pub fn oracle_binary(op: BinaryOp, x: &GeneralizedReal, y: &GeneralizedReal, n_terms: usize) -> Vec<f64> {
    let (lx, ly) = (x.sigma(), y.sigma());
    (1..=n_terms as u64)
        .map(|n| {
            let (xn, yn) = (term(x, n), term(y, n));
            match op {
                BinaryOp::Add => xn + yn,
                BinaryOp::Mul => lx * yn + ly * xn - lx * ly,
            }
        })
        .collect()
}

/// Termwise inverse `(1/lim x - (xi_n - lim x)/(lim x)^2)`.
pub fn oracle_inv(x: &GeneralizedReal, n_terms: usize) -> Result<Vec<f64>> {
    let lx = x.sigma();
    if lx == 0.0 {
        return Err(Error::NotInvertible);
    }
    Ok((1..=n_terms as u64)
        .map(|n| 1.0 / lx - (term(x, n) - lx) / (lx * lx))
        .collect())
}

/// `x^m` by repeated termwise products. The running product's limit is
/// tracked alongside its terms, as the product formula needs both.
pub fn oracle_pow(x: &GeneralizedReal, m: u32, n_terms: usize) -> Vec<f64> {
    let lx = x.sigma();
    let xs = prefix(x, n_terms);
    let mut acc = vec![1.0; n_terms];
    let mut lacc = 1.0;
    for _ in 0..m {
        for (a, xn) in acc.iter_mut().zip(&xs) {
            *a = lacc * xn + lx * *a - lacc * lx;
        }
        lacc *= lx;
    }
    acc
}
