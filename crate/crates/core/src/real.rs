//! The ring of generalized reals: convergent sequences with the product
//! `x*y := (lim x * eta_n + lim y * xi_n - lim x * lim y)`.
//!
//! Every value is stored in its shadow + differential decomposition. The
//! differential is a finite real combination of catalog generators (see
//! [`crate::seq`]). Products of infinitesimals vanish, so the differential
//! of any ring expression is a linear combination of input differentials
//! and the representation is closed under all operations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::seq::Generator;

/// Result of the three-way comparison. Indiscernible values share a shadow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cmp3 {
    Less,
    Indiscernible,
    Greater,
}

/// A generalized real `sigma + dx`.
///
/// Equality is structural: same shadow and same coefficient vector.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GeneralizedReal {
    shadow: f64,
    dpart: BTreeMap<Generator, f64>,
}

// -0.0 and 0.0 are the same value here.
fn unsign_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn check_finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(unsign_zero(v))
    } else {
        Err(Error::NonFiniteInput(v))
    }
}

impl GeneralizedReal {
    /// Builds `shadow + sum coeff * generator`, dropping zero coefficients.
    pub fn make<I>(shadow: f64, dpart: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Generator, f64)>,
    {
        let shadow = check_finite(shadow)?;
        let mut map = BTreeMap::new();
        for (g, c) in dpart {
            let c = check_finite(c)?;
            if c != 0.0 {
                map.insert(g, c);
            }
        }
        Ok(GeneralizedReal { shadow, dpart: map })
    }

    /// Embeds a real number as a constant sequence.
    pub fn real(value: f64) -> Result<Self> {
        Ok(GeneralizedReal {
            shadow: check_finite(value)?,
            dpart: BTreeMap::new(),
        })
    }

    pub fn zero() -> Self {
        GeneralizedReal::default()
    }

    pub fn one() -> Self {
        GeneralizedReal {
            shadow: 1.0,
            dpart: BTreeMap::new(),
        }
    }

    /// The infinitesimal `coeff * g`.
    pub fn infinitesimal(g: Generator, coeff: f64) -> Result<Self> {
        GeneralizedReal::make(0.0, [(g, coeff)])
    }

    // Internal constructor for results of arithmetic on valid values.
    // Overflow is not an error in the ring operations; coefficients that
    // cancel to zero are pruned.
    fn from_parts(shadow: f64, dpart: BTreeMap<Generator, f64>) -> Self {
        let dpart = dpart
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .collect();
        GeneralizedReal {
            shadow: unsign_zero(shadow),
            dpart,
        }
    }

    /// `value + slope * dx`: the affine germ at this point with the
    /// given value and slope. Used by every natural extension.
    pub fn lift(&self, value: f64, slope: f64) -> Self {
        let dpart = self
            .dpart
            .iter()
            .map(|(g, c)| (*g, slope * c))
            .collect();
        GeneralizedReal::from_parts(value, dpart)
    }

    /// The shadow (limit) of the sequence.
    pub fn sigma(&self) -> f64 {
        self.shadow
    }

    /// The differential `dx`, the unique infinitesimal with `x = sigma x + dx`.
    pub fn dpart(&self) -> GeneralizedReal {
        GeneralizedReal {
            shadow: 0.0,
            dpart: self.dpart.clone(),
        }
    }

    pub fn dpart_coeffs(&self) -> &BTreeMap<Generator, f64> {
        &self.dpart
    }

    pub fn coeff(&self, g: &Generator) -> f64 {
        self.dpart.get(g).copied().unwrap_or(0.0)
    }

    pub fn is_real(&self) -> bool {
        self.dpart.is_empty()
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.shadow == 0.0
    }

    pub fn is_positive(&self) -> bool {
        self.shadow > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.shadow < 0.0
    }

    pub fn scale(&self, k: f64) -> Self {
        self.lift(k * self.shadow, k)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.shadow == 0.0 {
            return Err(Error::NotInvertible);
        }
        let s = self.shadow;
        Ok(self.lift(1.0 / s, -1.0 / (s * s)))
    }

    /// `y / self`.
    pub fn div_into(&self, y: &GeneralizedReal) -> Result<Self> {
        Ok(y * &self.inv()?)
    }

    pub fn checked_div(&self, divisor: &GeneralizedReal) -> Result<Self> {
        divisor.div_into(self)
    }

    /// `x^m = (sigma x)^m + m (sigma x)^(m-1) dx`; `x^0 = 1`.
    pub fn pow_nat(&self, m: u32) -> Self {
        if m == 0 {
            return GeneralizedReal::one();
        }
        let s = self.shadow;
        let slope = f64::from(m) * powi(s, m - 1);
        self.lift(powi(s, m), slope)
    }

    /// The unique positive `m`-th root, defined for positive values.
    pub fn root(&self, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("root order must exceed 1, got {m}")));
        }
        if self.shadow <= 0.0 {
            return Err(Error::Domain(format!(
                "root of non-positive value (shadow {})",
                self.shadow
            )));
        }
        let r = real_root(self.shadow, m);
        let slope = 1.0 / (f64::from(m) * powi(r, m - 1));
        Ok(self.lift(r, slope))
    }

    pub fn cmp3(&self, other: &GeneralizedReal) -> Cmp3 {
        if self.shadow < other.shadow {
            Cmp3::Less
        } else if self.shadow > other.shadow {
            Cmp3::Greater
        } else {
            Cmp3::Indiscernible
        }
    }

    pub fn lt(&self, other: &GeneralizedReal) -> bool {
        self.shadow < other.shadow
    }

    pub fn gt(&self, other: &GeneralizedReal) -> bool {
        other.lt(self)
    }

    /// Same shadow.
    pub fn indiscernible(&self, other: &GeneralizedReal) -> bool {
        self.shadow == other.shadow
    }

    /// Less than or indiscernible from.
    pub fn lesssim(&self, other: &GeneralizedReal) -> bool {
        self.shadow <= other.shadow
    }

    /// The image in the quotient by indiscernibility, which is `R` itself.
    pub fn quotient_repr(&self) -> f64 {
        self.shadow
    }
}

/// Real `m`-th root of a positive number.
pub fn real_root(value: f64, m: u32) -> f64 {
    match m {
        2 => value.sqrt(),
        3 => value.cbrt(),
        _ => value.powf(1.0 / f64::from(m)),
    }
}

/// `value^m` for a natural exponent.
pub fn powi(value: f64, m: u32) -> f64 {
    if m <= i32::MAX as u32 {
        value.powi(m as i32)
    } else {
        value.powf(f64::from(m))
    }
}

/// Smallest `m >= 1` with `m * x > y`. Requires `x` positive.
pub fn archimedean_witness(x: &GeneralizedReal, y: &GeneralizedReal) -> Result<u64> {
    let (sx, sy) = (x.sigma(), y.sigma());
    if sx <= 0.0 {
        return Err(Error::Domain("archimedean witness needs a positive x".into()));
    }
    let guess = (sy / sx).floor();
    let mut m = if guess.is_finite() && guess >= 0.0 {
        (guess as u64).saturating_add(1)
    } else {
        1
    };
    // Correct for rounding in the quotient.
    while m > 1 && (m - 1) as f64 * sx > sy {
        m -= 1;
    }
    while m as f64 * sx <= sy {
        m += 1;
    }
    Ok(m)
}

/// A real strictly between `x < y`.
pub fn density_real_between(x: &GeneralizedReal, y: &GeneralizedReal) -> Result<f64> {
    if !x.lt(y) {
        return Err(Error::Domain("density witness needs x < y".into()));
    }
    Ok(x.sigma() / 2.0 + y.sigma() / 2.0)
}

/// A non-real generalized real strictly between two reals `xi < eta`.
pub fn density_nonreal_between(xi: f64, eta: f64) -> Result<GeneralizedReal> {
    if !(xi < eta) {
        return Err(Error::Domain("density witness needs xi < eta".into()));
    }
    let e1 = Generator::Impulse(1);
    GeneralizedReal::make(xi / 2.0 + eta / 2.0, [(e1, 1.0)])
}

fn merge(
    a: &BTreeMap<Generator, f64>,
    b: &BTreeMap<Generator, f64>,
    ka: f64,
    kb: f64,
) -> BTreeMap<Generator, f64> {
    let mut out = BTreeMap::new();
    for (g, c) in a {
        out.insert(*g, ka * c);
    }
    for (g, c) in b {
        let v = kb * c;
        out.entry(*g).and_modify(|acc| *acc += v).or_insert(v);
    }
    out
}

impl Add for &GeneralizedReal {
    type Output = GeneralizedReal;

    fn add(self, rhs: &GeneralizedReal) -> GeneralizedReal {
        let mut out = self.dpart.clone();
        for (g, c) in &rhs.dpart {
            out.entry(*g).and_modify(|acc| *acc += c).or_insert(*c);
        }
        GeneralizedReal::from_parts(self.shadow + rhs.shadow, out)
    }
}

impl Sub for &GeneralizedReal {
    type Output = GeneralizedReal;

    fn sub(self, rhs: &GeneralizedReal) -> GeneralizedReal {
        let mut out = self.dpart.clone();
        for (g, c) in &rhs.dpart {
            out.entry(*g).and_modify(|acc| *acc -= c).or_insert(-c);
        }
        GeneralizedReal::from_parts(self.shadow - rhs.shadow, out)
    }
}

impl Mul for &GeneralizedReal {
    type Output = GeneralizedReal;

    /// `sigma x sigma y + sigma x dy + sigma y dx`; `dx dy` is null.
    fn mul(self, rhs: &GeneralizedReal) -> GeneralizedReal {
        let mut out = BTreeMap::new();
        for (g, c) in &rhs.dpart {
            out.insert(*g, self.shadow * c);
        }
        for (g, c) in &self.dpart {
            let v = rhs.shadow * c;
            out.entry(*g).and_modify(|acc| *acc += v).or_insert(v);
        }
        GeneralizedReal::from_parts(self.shadow * rhs.shadow, out)
    }
}

impl Neg for &GeneralizedReal {
    type Output = GeneralizedReal;

    fn neg(self) -> GeneralizedReal {
        GeneralizedReal::from_parts(-self.shadow, merge(&self.dpart, &BTreeMap::new(), -1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GeneralizedReal {
            type Output = GeneralizedReal;
            fn $m(self, rhs: GeneralizedReal) -> GeneralizedReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GeneralizedReal> for GeneralizedReal {
            type Output = GeneralizedReal;
            fn $m(self, rhs: &GeneralizedReal) -> GeneralizedReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<GeneralizedReal> for &GeneralizedReal {
            type Output = GeneralizedReal;
            fn $m(self, rhs: GeneralizedReal) -> GeneralizedReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GeneralizedReal {
    type Output = GeneralizedReal;
    fn neg(self) -> GeneralizedReal {
        -&self
    }
}

impl Mul<f64> for &GeneralizedReal {
    type Output = GeneralizedReal;
    fn mul(self, k: f64) -> GeneralizedReal {
        self.scale(k)
    }
}

impl Mul<f64> for GeneralizedReal {
    type Output = GeneralizedReal;
    fn mul(self, k: f64) -> GeneralizedReal {
        self.scale(k)
    }
}

/// Division panics on an infinitesimal divisor; use
/// [`GeneralizedReal::checked_div`] to get an error instead.
impl Div for &GeneralizedReal {
    type Output = GeneralizedReal;
    fn div(self, rhs: &GeneralizedReal) -> GeneralizedReal {
        self.checked_div(rhs).expect("division by an infinitesimal")
    }
}

impl fmt::Display for GeneralizedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shadow)?;
        for (g, c) in &self.dpart {
            let (sign, mag) = if *c < 0.0 { ('-', -c) } else { ('+', *c) };
            if mag == 1.0 {
                write!(f, " {sign} {g}")?;
            } else {
                write!(f, " {sign} {mag}*{g}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    shadow: f64,
    #[serde(default)]
    d: BTreeMap<String, f64>,
}

impl Serialize for GeneralizedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            shadow: self.shadow,
            d: self.dpart.iter().map(|(g, c)| (g.id(), *c)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneralizedReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = Wire::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(wire.d.len());
        for (id, c) in wire.d {
            let g: Generator = id.parse().map_err(D::Error::custom)?;
            coeffs.push((g, c));
        }
        GeneralizedReal::make(wire.shadow, coeffs).map_err(D::Error::custom)
    }
}

impl GeneralizedReal {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite values always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            // Surface id failures with their own variant.
            match msg.strip_prefix("unknown generator id `") {
                Some(rest) => Error::UnknownGenerator(rest.split('`').next().unwrap_or("").to_string()),
                None => Error::Parse(msg),
            }
        })
    }
}
