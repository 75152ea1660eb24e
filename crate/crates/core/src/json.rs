//! JSON encoding of polynomials.
//!
//! ```text
//! {"space": {"dim": d, "norm": "l1|l2|linf"},
//!  "coeffs": [{"n": 6, "re": [..d..], "im": [..d..]}, ...]}
//! ```
//!
//! Power polynomials use `"alpha": [exponents]` in place of `"n"`. Floats are
//! written in shortest round-trip form, so decoding an encoding reproduces
//! every coefficient bit for bit.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{CoeffSpaceSpec, CoeffVector, NormTag};
use crate::dirichlet::DirichletPoly;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::power::PowerPoly;

#[derive(Serialize, Deserialize)]
struct SpaceDto {
    dim: usize,
    norm: NormTag,
}

#[derive(Serialize, Deserialize)]
struct DirichletTerm {
    n: u64,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DirichletDto {
    space: SpaceDto,
    coeffs: Vec<DirichletTerm>,
}

#[derive(Serialize, Deserialize)]
struct PowerTerm {
    alpha: Vec<u32>,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PowerDto {
    space: SpaceDto,
    coeffs: Vec<PowerTerm>,
}

fn space_dto(s: CoeffSpaceSpec) -> SpaceDto {
    SpaceDto {
        dim: s.dim(),
        norm: s.norm_tag(),
    }
}

fn split(v: &CoeffVector) -> (Vec<f64>, Vec<f64>) {
    v.entries().iter().map(|z| (z.re, z.im)).unzip()
}

fn join(re: Vec<f64>, im: Vec<f64>, space: CoeffSpaceSpec) -> Result<CoeffVector> {
    if re.len() != im.len() {
        return Err(Error::Parse(format!(
            "re has {} entries but im has {}",
            re.len(),
            im.len()
        )));
    }
    CoeffVector::new(
        re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect(),
        space,
    )
}

impl From<&DirichletPoly> for DirichletDto {
    fn from(d: &DirichletPoly) -> Self {
        Self {
            space: space_dto(d.space()),
            coeffs: d
                .iter()
                .map(|(n, v)| {
                    let (re, im) = split(v);
                    DirichletTerm { n, re, im }
                })
                .collect(),
        }
    }
}

impl TryFrom<DirichletDto> for DirichletPoly {
    type Error = Error;

    fn try_from(dto: DirichletDto) -> Result<Self> {
        let space = CoeffSpaceSpec::new(dto.space.dim, dto.space.norm)?;
        DirichletPoly::from_coeffs(
            space,
            dto.coeffs
                .into_iter()
                .map(|t| Ok((t.n, join(t.re, t.im, space)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl From<&PowerPoly> for PowerDto {
    fn from(p: &PowerPoly) -> Self {
        Self {
            space: space_dto(p.space()),
            coeffs: p
                .iter()
                .map(|(a, v)| {
                    let (re, im) = split(v);
                    PowerTerm {
                        alpha: a.exponents().to_vec(),
                        re,
                        im,
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<PowerDto> for PowerPoly {
    type Error = Error;

    fn try_from(dto: PowerDto) -> Result<Self> {
        let space = CoeffSpaceSpec::new(dto.space.dim, dto.space.norm)?;
        PowerPoly::from_coeffs(
            space,
            dto.coeffs
                .into_iter()
                .map(|t| Ok((MultiIndex::new(t.alpha), join(t.re, t.im, space)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl Serialize for DirichletPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DirichletDto::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DirichletDto::deserialize(d)?.try_into().map_err(D::Error::custom)
    }
}

impl Serialize for PowerPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PowerDto::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PowerPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PowerDto::deserialize(d)?.try_into().map_err(D::Error::custom)
    }
}

pub fn dirichlet_from_json(text: &str) -> Result<DirichletPoly> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn dirichlet_to_json(d: &DirichletPoly) -> String {
    serde_json::to_string(d).expect("polynomial encoding cannot fail")
}

pub fn power_from_json(text: &str) -> Result<PowerPoly> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn power_to_json(p: &PowerPoly) -> String {
    serde_json::to_string(p).expect("polynomial encoding cannot fail")
}

/// Serde adapter for exponents that may be infinite: finite values are
/// plain numbers and infinity is the string `"inf"`.
pub mod exponent {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if p.is_infinite() && *p > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(p) => Ok(p),
            Repr::Text(t) => super::parse_exponent(&t).map_err(D::Error::custom),
        }
    }
}

/// Parses an exponent `p`, accepting `inf`, `infinity` and `∞` for
/// infinity.
pub fn parse_exponent(text: &str) -> Result<f64> {
    let t = text.trim();
    if ["inf", "infinity", "∞"].iter().any(|w| t.eq_ignore_ascii_case(w)) {
        return Ok(f64::INFINITY);
    }
    t.parse::<f64>()
        .ok()
        .filter(|p| p.is_finite())
        .ok_or_else(|| Error::Parse(format!("cannot parse exponent {text:?}")))
}
