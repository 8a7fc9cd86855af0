//! Root conditioning of monic polynomials and what it implies for the
//! coefficients of `q = 1/p`.
//!
//! With distinct nonzero roots `a_j`, partial fractions give
//! `q_k = -sum_j Res(q, a_j) / a_j^(k+1)` with `Res(q, a_j) = 1 / prod_{i != j} (a_j - a_i)`.
//! A coefficientwise relative perturbation of size `eps` moves each root by
//! at most about `eps * kappa(a_j)`, `kappa(a_j) = |p|(|a_j|) / |p'(a_j)|`.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::polynomial::{Polynomial, RootSet};
use crate::real::Real;

/// `|p(z)| / |p|(|z|)`; `z` lies in the `eps`-pseudozero set iff this is `<= eps`.
pub fn pseudozero_indicator<R: Real>(p: &Polynomial<R>, z: &Cx<R>) -> Result<R> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let den = p.eval_abs(&z.abs());
    if den.is_zero() {
        // only the constant coefficient can be nonzero-free here: p(0) = 0
        return Ok(den);
    }
    Ok(p.eval(z).abs() / den)
}

/// `kappa(a, p) = |p|(|a|) / |p'(a)|`.
pub fn root_condition(p: &Polynomial<Ext>, a: &Cx<Ext>) -> Result<Ext> {
    let d = p.derivative();
    let dv = d.eval(a).abs();
    let scale = d.eval_abs(&a.abs());
    let tiny = Ext::pow2(-(dv.bits().max(a.re.bits()) as i32) + 16, 64);
    if dv.is_zero() || dv <= &scale * &tiny {
        return Err(Error::NearMultipleRoot(dv.to_f64()));
    }
    Ok(p.eval_abs(&a.abs()) / dv)
}

/// `Res(q, a_j) = 1 / prod_{i != j} (a_j - a_i)`.
pub fn residues(roots: &RootSet) -> Result<Vec<Cx<Ext>>> {
    let r = &roots.roots;
    let mut out = Vec::with_capacity(r.len());
    for j in 0..r.len() {
        let mut prod = Cx::real(r[j].re.one_like());
        for i in 0..r.len() {
            if i == j {
                continue;
            }
            let d = &r[j] - &r[i];
            if d.is_zero() {
                return Err(Error::CoincidentRoots(i.min(j), i.max(j)));
            }
            prod = &prod * &d;
        }
        out.push(prod.recip());
    }
    Ok(out)
}

/// `eps |p|(|a_hat|)` to the power `1/n`: every root of a relative
/// `eps`-perturbation of `p` lies within this distance of some root.
pub fn root_error_bound(p: &Polynomial<Ext>, a_hat: &Cx<Ext>, eps: f64) -> f64 {
    if eps == 0.0 {
        return 0.0;
    }
    let v = Ext::from_f64(eps, 64) * p.eval_abs(&a_hat.abs());
    (v.ln_abs() / p.degree() as f64).exp()
}

/// Roots of `p` with their condition numbers and residues of `1/p`.
#[derive(Clone, Debug)]
pub struct RootAnalysis {
    pub roots: Vec<Cx<Ext>>,
    pub kappa: Vec<Ext>,
    pub residues: Vec<Cx<Ext>>,
}

impl RootAnalysis {
    pub fn new(p: &Polynomial<Ext>, roots: &RootSet) -> Result<Self> {
        if roots.len() != p.degree() {
            return Err(Error::OrderMismatch { left: roots.len(), right: p.degree() });
        }
        let residues = residues(roots)?;
        let kappa = roots.roots.iter().map(|a| root_condition(p, a)).collect::<Result<_>>()?;
        Ok(RootAnalysis { roots: roots.roots.clone(), kappa, residues })
    }

    fn check_nonzero(&self) -> Result<()> {
        match self.roots.iter().position(Cx::is_zero) {
            Some(j) => Err(Error::ZeroRoot(j)),
            None => Ok(()),
        }
    }

    /// `Res_j / a_j^(k+1)` for `k = 0..=n`, one vector per root.
    fn pole_terms(&self, n: usize) -> Result<Vec<Vec<Cx<Ext>>>> {
        self.check_nonzero()?;
        Ok(self
            .roots
            .iter()
            .zip(&self.residues)
            .map(|(a, r)| {
                let inv = a.recip();
                let mut t = r * &inv;
                let mut v = Vec::with_capacity(n + 1);
                for _ in 0..=n {
                    v.push(t.clone());
                    t = &t * &inv;
                }
                v
            })
            .collect())
    }

    /// `q_k = -sum_j Res_j / a_j^(k+1)` for `k = 0..=n`.
    pub fn inverse_coeffs(&self, n: usize) -> Result<Vec<Cx<Ext>>> {
        let terms = self.pole_terms(n)?;
        Ok((0..=n)
            .map(|k| {
                let mut acc = Cx::real(self.roots[0].re.zero_like());
                for t in &terms {
                    acc = &acc - &t[k];
                }
                acc
            })
            .collect())
    }

    pub fn inverse_coeff(&self, k: usize) -> Result<Cx<Ext>> {
        Ok(self.inverse_coeffs(k)?.pop().expect("k + 1 entries"))
    }

    /// `eps sum_j |Res_j / a_j^(k+1)| ((k+1) kappa_j / |a_j| + sum_{i != j} (kappa_i + kappa_j) / |a_j - a_i|)`
    /// for `k = 0..=n`.
    pub fn kappa_bounds(&self, n: usize, eps: f64) -> Result<Vec<Ext>> {
        let terms = self.pole_terms(n)?;
        let bits = self.roots[0].re.bits();
        let m = self.roots.len();
        // cross[j] = sum_{i != j} (kappa_i + kappa_j) / |a_j - a_i|
        let cross: Vec<Ext> = (0..m)
            .map(|j| {
                let mut acc = Ext::zero(bits);
                for i in (0..m).filter(|&i| i != j) {
                    acc += &((&self.kappa[i] + &self.kappa[j]) / (&self.roots[j] - &self.roots[i]).abs());
                }
                acc
            })
            .collect();
        let own: Vec<Ext> = (0..m).map(|j| &self.kappa[j] / &self.roots[j].abs()).collect();
        let eps = Ext::from_f64(eps, bits);
        Ok((0..=n)
            .map(|k| {
                let kk = Ext::from_i64(k as i64 + 1, bits);
                let mut acc = Ext::zero(bits);
                for j in 0..m {
                    acc += &(terms[j][k].abs() * (&kk * &own[j] + &cross[j]));
                }
                &acc * &eps
            })
            .collect())
    }

    pub fn kappa_bound(&self, k: usize, eps: f64) -> Result<Ext> {
        Ok(self.kappa_bounds(k, eps)?.pop().expect("k + 1 entries"))
    }

    /// First-order change of `q_k` when each root moves by `deltas[j]`:
    /// `-sum_j (Res_j / a_j^(k+1)) ((k+1) Δa_j / a_j + sum_{i != j} (Δa_j - Δa_i) / (a_j - a_i))`.
    pub fn first_order_coeff_error(&self, deltas: &[Cx<Ext>], k: usize) -> Result<Cx<Ext>> {
        if deltas.len() != self.roots.len() {
            return Err(Error::OrderMismatch { left: deltas.len(), right: self.roots.len() });
        }
        let terms = self.pole_terms(k)?;
        let bits = self.roots[0].re.bits();
        let kk = Ext::from_i64(k as i64 + 1, bits);
        let mut acc = Cx::real(Ext::zero(bits));
        for j in 0..self.roots.len() {
            let mut inner = (&deltas[j] / &self.roots[j]).scale(&kk);
            for i in (0..self.roots.len()).filter(|&i| i != j) {
                let diff = &self.roots[j] - &self.roots[i];
                if diff.is_zero() {
                    return Err(Error::CoincidentRoots(i.min(j), i.max(j)));
                }
                inner = &inner + &(&(&deltas[j] - &deltas[i]) / &diff);
            }
            acc = &acc - &(&terms[j][k] * &inner);
        }
        Ok(acc)
    }
}

/// Closed rectangle in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl std::str::FromStr for Rect {
    type Err = Error;
    /// `re_min,re_max,im_min,im_max`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad rectangle '{s}'"))))
            .collect::<Result<_>>()?;
        match v[..] {
            [re_min, re_max, im_min, im_max] => Ok(Rect { re_min, re_max, im_min, im_max }),
            _ => Err(Error::InvalidArgument(format!("rectangle needs four numbers, got '{s}'"))),
        }
    }
}

/// Indicator values sampled on a regular grid, row-major with rows running
/// along the imaginary axis (`values[row * resolution + col]`).
#[derive(Clone, Debug, Serialize)]
pub struct PseudozeroGrid {
    pub rect: Rect,
    pub resolution: usize,
    pub values: Vec<f64>,
}

impl PseudozeroGrid {
    pub fn re_at(&self, col: usize) -> f64 {
        let r = &self.rect;
        r.re_min + (r.re_max - r.re_min) * col as f64 / (self.resolution - 1) as f64
    }

    pub fn im_at(&self, row: usize) -> f64 {
        let r = &self.rect;
        r.im_min + (r.im_max - r.im_min) * row as f64 / (self.resolution - 1) as f64
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.resolution + col]
    }

    /// Grid points in the `eps`-pseudozero set.
    pub fn members(&self, eps: f64) -> Vec<(usize, usize)> {
        let n = self.resolution;
        (0..n * n).filter(|&i| self.values[i] <= eps).map(|i| (i / n, i % n)).collect()
    }

    /// Points of the level set `indicator = eps`, found by linear
    /// interpolation of `log10(indicator)` along grid edges that cross it.
    pub fn contour(&self, eps: f64) -> Vec<(f64, f64)> {
        let n = self.resolution;
        let level = eps.log10();
        let lg = |v: f64| v.max(1e-300).log10();
        let mut pts = Vec::new();
        for row in 0..n {
            for col in 0..n {
                let here = lg(self.value(row, col));
                for (dr, dc) in [(0usize, 1usize), (1, 0)] {
                    let (r2, c2) = (row + dr, col + dc);
                    if r2 >= n || c2 >= n {
                        continue;
                    }
                    let there = lg(self.value(r2, c2));
                    if (here - level) * (there - level) < 0.0 {
                        let t = (level - here) / (there - here);
                        let re = self.re_at(col) + t * (self.re_at(c2) - self.re_at(col));
                        let im = self.im_at(row) + t * (self.im_at(r2) - self.im_at(row));
                        pts.push((re, im));
                    }
                }
            }
        }
        pts
    }
}

const GRID_BITS: usize = 192;

/// Indicator sampled on a `resolution x resolution` grid, evaluated in
/// extended precision on the binary64 coefficients.
pub fn pseudozero_grid(p: &Polynomial<f64>, rect: Rect, resolution: usize) -> Result<PseudozeroGrid> {
    if resolution < 2 {
        return Err(Error::DegenerateGrid(format!("resolution {resolution} < 2")));
    }
    if !(rect.re_min < rect.re_max && rect.im_min < rect.im_max) {
        return Err(Error::DegenerateGrid(format!("{rect:?}")));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // binary64 evaluation noise (about n u) would swamp levels near u
    let pe = Polynomial::new(p.coeffs().iter().map(|&c| Ext::from_f64(c, GRID_BITS)).collect())?;
    let mut grid = PseudozeroGrid { rect, resolution, values: vec![0.0; resolution * resolution] };
    let rows: Vec<Vec<f64>> = (0..resolution)
        .into_par_iter()
        .map(|row| {
            let im = grid.im_at(row);
            (0..resolution)
                .map(|col| {
                    let z = Cx::new(Ext::from_f64(grid.re_at(col), GRID_BITS), Ext::from_f64(im, GRID_BITS));
                    pseudozero_indicator(&pe, &z).expect("nonzero polynomial").to_f64()
                })
                .collect()
        })
        .collect();
    grid.values = rows.into_iter().flatten().collect();
    Ok(grid)
}
