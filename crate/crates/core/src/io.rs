//! JSON formats for series, polynomials and root sets.
//!
//! Coefficient files look like `{"order": n, "coeffs": [b0, ..., bn]}`; each
//! coefficient is either a JSON number (taken as the binary64 value) or a
//! decimal string (exact to the precision it is read at). Root sets are lists
//! of `{"re": "...", "im": "..."}` decimal strings.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::polynomial::{Exactness, Polynomial, RootSet};
use crate::series::PowerSeries;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Number(f64),
    Decimal(String),
}

impl Coeff {
    pub fn to_ext(&self, bits: usize) -> Result<Ext> {
        match self {
            Coeff::Number(x) => Ok(Ext::from_f64(*x, bits)),
            Coeff::Decimal(s) => Ext::parse(s, bits),
        }
    }

    /// Decimal strings are parsed well above binary64 precision and rounded once.
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Coeff::Number(x) => Ok(*x),
            Coeff::Decimal(s) => Ok(Ext::parse(s, 192)?.to_f64()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffFile {
    #[serde(alias = "degree")]
    pub order: usize,
    pub coeffs: Vec<Coeff>,
}

impl CoeffFile {
    pub fn from_reader<R: Read>(r: R) -> Result<Self> {
        let f: CoeffFile = serde_json::from_reader(r).map_err(|e| Error::Parse(e.to_string()))?;
        if f.coeffs.len() != f.order + 1 {
            return Err(Error::Parse(format!("order {} needs {} coefficients, found {}", f.order, f.order + 1, f.coeffs.len())));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    pub fn to_f64(&self) -> Result<Vec<f64>> {
        self.coeffs.iter().map(Coeff::to_f64).collect()
    }

    pub fn to_ext(&self, bits: usize) -> Result<Vec<Ext>> {
        self.coeffs.iter().map(|c| c.to_ext(bits)).collect()
    }

    pub fn from_f64(v: &[f64]) -> Self {
        CoeffFile { order: v.len().saturating_sub(1), coeffs: v.iter().map(|&x| Coeff::Number(x)).collect() }
    }

    pub fn from_ext(v: &[Ext]) -> Self {
        CoeffFile { order: v.len().saturating_sub(1), coeffs: v.iter().map(|x| Coeff::Decimal(x.to_decimal())).collect() }
    }

    pub fn write<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }
}

/// Reads a binary64 series and zero-extends it to order `n` when shorter.
pub fn load_series_f64(path: &Path, n: usize) -> Result<PowerSeries<f64>> {
    let mut c = CoeffFile::load(path)?.to_f64()?;
    if c.len() <= n {
        c.resize(n + 1, 0.0);
    }
    PowerSeries::from_f64(&c)
}

pub fn load_polynomial_f64(path: &Path) -> Result<Polynomial<f64>> {
    Polynomial::new(CoeffFile::load(path)?.to_f64()?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub re: String,
    pub im: String,
}

pub fn roots_to_json<W: Write>(set: &RootSet, w: W) -> Result<()> {
    let v: Vec<RootEntry> = set.roots.iter().map(|z| RootEntry { re: z.re.to_decimal(), im: z.im.to_decimal() }).collect();
    serde_json::to_writer_pretty(w, &v)?;
    Ok(())
}

pub fn roots_from_json<R: Read>(r: R, bits: usize) -> Result<RootSet> {
    let v: Vec<RootEntry> = serde_json::from_reader(r).map_err(|e| Error::Parse(e.to_string()))?;
    let roots = v
        .iter()
        .map(|e| Ok(Cx::new(Ext::parse(&e.re, bits)?, Ext::parse(&e.im, bits)?)))
        .collect::<Result<_>>()?;
    Ok(RootSet { roots, exactness: Exactness::Computed })
}
