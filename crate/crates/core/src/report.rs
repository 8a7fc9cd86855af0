//! Per-coefficient comparison of a binary64 computation against its oracle.

use std::io::Write;

use crate::error::{Error, Result};
use crate::ext::Ext;

/// A named bound column, stored as relative bounds (one per row; `None` on
/// excluded rows) and, when the bound is absolute by nature, the absolute values.
#[derive(Clone, Debug)]
pub struct BoundColumn {
    pub name: String,
    pub abs: Option<Vec<Ext>>,
    pub rel: Vec<Option<Ext>>,
}

/// Input form of a bound column.
#[derive(Clone, Debug)]
pub enum Bound {
    /// Bounds `|computed - oracle|`; converted to relative by dividing by `|oracle|`.
    Absolute(String, Vec<Ext>),
    /// Already bounds `|computed - oracle| / |oracle|`.
    Relative(String, Vec<Ext>),
}

#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub label: String,
    pub k: Vec<usize>,
    pub computed: Vec<f64>,
    pub oracle: Vec<Ext>,
    pub abs_err: Vec<Ext>,
    /// `None` where the oracle coefficient is exactly zero (excluded row).
    pub rel_err: Vec<Option<Ext>>,
    pub bounds: Vec<BoundColumn>,
}

/// Builds the report; rows where the oracle is exactly 0 keep their absolute
/// error but are excluded from every relative column.
pub fn error_report(label: &str, computed: &[f64], oracle: &[Ext], bounds: Vec<Bound>) -> Result<ErrorReport> {
    if computed.len() != oracle.len() {
        return Err(Error::OrderMismatch { left: computed.len(), right: oracle.len() });
    }
    let bits = oracle.iter().map(Ext::bits).max().unwrap_or(64);
    let abs_err: Vec<Ext> = computed.iter().zip(oracle).map(|(c, o)| (&Ext::from_f64(*c, bits) - o).abs()).collect();
    let rel_err = abs_err
        .iter()
        .zip(oracle)
        .map(|(e, o)| if o.is_zero() { None } else { Some(e / &o.abs()) })
        .collect();
    let mut cols = Vec::with_capacity(bounds.len());
    for b in bounds {
        let (name, values, absolute) = match b {
            Bound::Absolute(n, v) => (n, v, true),
            Bound::Relative(n, v) => (n, v, false),
        };
        if values.len() != oracle.len() {
            return Err(Error::OrderMismatch { left: values.len(), right: oracle.len() });
        }
        let rel = values
            .iter()
            .zip(oracle)
            .map(|(v, o)| match (o.is_zero(), absolute) {
                (true, _) => None,
                (false, true) => Some(v.div_up(&o.abs())),
                (false, false) => Some(v.clone()),
            })
            .collect();
        cols.push(BoundColumn { name, abs: absolute.then_some(values), rel });
    }
    Ok(ErrorReport {
        label: label.to_string(),
        k: (0..computed.len()).collect(),
        computed: computed.to_vec(),
        oracle: oracle.to_vec(),
        abs_err,
        rel_err,
        bounds: cols,
    })
}

impl ErrorReport {
    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn excluded(&self, row: usize) -> bool {
        self.rel_err[row].is_none()
    }

    pub fn bound(&self, name: &str) -> Option<&BoundColumn> {
        self.bounds.iter().find(|b| b.name == name)
    }

    /// Keeps only the rows selected by `keep(k)`.
    pub fn filter_rows(&self, keep: impl Fn(usize) -> bool) -> ErrorReport {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(self.k[i])).collect();
        let pick = |v: &[Ext]| idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        let pick_opt = |v: &[Option<Ext>]| idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        ErrorReport {
            label: self.label.clone(),
            k: idx.iter().map(|&i| self.k[i]).collect(),
            computed: idx.iter().map(|&i| self.computed[i]).collect(),
            oracle: pick(&self.oracle),
            abs_err: pick(&self.abs_err),
            rel_err: pick_opt(&self.rel_err),
            bounds: self
                .bounds
                .iter()
                .map(|b| BoundColumn { name: b.name.clone(), abs: b.abs.as_deref().map(pick), rel: pick_opt(&b.rel) })
                .collect(),
        }
    }

    /// Rows (by `k`) whose relative error exceeds the named bound.
    pub fn violations(&self, name: &str) -> Vec<usize> {
        let Some(col) = self.bound(name) else { return Vec::new() };
        (0..self.len())
            .filter(|&i| match (&self.rel_err[i], &col.rel[i]) {
                (Some(e), Some(b)) => e > b,
                _ => false,
            })
            .map(|i| self.k[i])
            .collect()
    }

    /// Relative error of row `i` as binary64 (`None` when excluded).
    pub fn rel_f64(&self, i: usize) -> Option<f64> {
        self.rel_err[i].as_ref().map(Ext::to_f64)
    }

    /// Largest relative error over non-excluded rows.
    pub fn max_rel(&self) -> f64 {
        (0..self.len()).filter_map(|i| self.rel_f64(i)).fold(0.0, f64::max)
    }

    /// Relative error at coefficient index `k`.
    pub fn rel_at(&self, k: usize) -> Option<f64> {
        self.k.iter().position(|&x| x == k).and_then(|i| self.rel_f64(i))
    }

    /// Ratios bound / actual over rows with a nonzero actual error.
    pub fn ratios(&self, name: &str) -> Vec<f64> {
        let Some(col) = self.bound(name) else { return Vec::new() };
        (0..self.len())
            .filter_map(|i| match (&self.rel_err[i], &col.rel[i]) {
                (Some(e), Some(b)) if !e.is_zero() => Some((b / e).to_f64()),
                _ => None,
            })
            .collect()
    }

    /// Writes `k,computed,oracle,abs_err,rel_err,excluded` plus one
    /// `<name>_rel` column per bound.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["k", "computed", "oracle", "abs_err", "rel_err", "excluded"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        header.extend(self.bounds.iter().map(|b| format!("{}_rel", b.name)));
        out.write_record(&header)?;
        for i in 0..self.len() {
            let mut row = vec![
                self.k[i].to_string(),
                fmt_f64(self.computed[i]),
                self.oracle[i].to_decimal(),
                fmt_f64(self.abs_err[i].to_f64_up()),
                self.rel_err[i].as_ref().map(|e| fmt_f64(e.to_f64())).unwrap_or_default(),
                self.excluded(i).to_string(),
            ];
            row.extend(self.bounds.iter().map(|b| b.rel[i].as_ref().map(|v| fmt_f64(v.to_f64_up())).unwrap_or_default()));
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Shortest representation that round-trips to the same binary64 value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

/// Median of a nonempty slice (mean of the two middle values for even length).
pub fn median(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    Some(if s.len() % 2 == 1 { s[m] } else { 0.5 * (s[m - 1] + s[m]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(v: &[f64]) -> Vec<Ext> {
        v.iter().map(|&x| Ext::from_f64(x, 384)).collect()
    }

    #[test]
    fn identical_inputs_have_zero_error() {
        let r = error_report("same", &[1.0, 2.0, -3.0], &ext(&[1.0, 2.0, -3.0]), vec![]).unwrap();
        assert!(r.abs_err.iter().all(Ext::is_zero));
        assert_eq!(r.max_rel(), 0.0);
    }

    #[test]
    fn single_perturbation_is_localized() {
        let r = error_report("one", &[1.0, 2.5, -3.0], &ext(&[1.0, 2.0, -3.0]), vec![]).unwrap();
        let nz: Vec<usize> = (0..3).filter(|&i| !r.abs_err[i].is_zero()).collect();
        assert_eq!(nz, vec![1]);
        assert_eq!(r.rel_at(1), Some(0.25));
    }

    #[test]
    fn zero_oracle_rows_are_excluded() {
        let bound = Bound::Absolute("b".into(), ext(&[0.1, 0.1]));
        let r = error_report("z", &[1e-20, 1.0], &ext(&[0.0, 1.0]), vec![bound]).unwrap();
        assert!(r.excluded(0) && !r.excluded(1));
        assert!(r.bound("b").unwrap().rel[0].is_none());
        assert!(r.violations("b").is_empty());
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,computed,oracle,abs_err,rel_err,excluded,b_rel\n"));
        assert!(text.lines().nth(1).unwrap().contains(",,true,"));
    }

    #[test]
    fn order_mismatch_rejected() {
        assert!(matches!(error_report("x", &[1.0], &ext(&[1.0, 2.0]), vec![]), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn median_cases() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }
}
