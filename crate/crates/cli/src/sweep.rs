//! Parameter sweeps and their CSV and gnuplot renderings.
//!
//! Cells are evaluated in parallel and collected in a fixed order: series
//! value, grid index, method, bound. Monte Carlo cells use the grid index as
//! their stream id, so every series value sees the same random numbers at a
//! given grid point and the output does not depend on the worker count.
//!
//! CSV columns, in order:
//!
//! ```text
//! variable,value,link,bound,method,sop,error_bound,samples,seed,
//! n,rs_bits,lambda_db,g_main,g_eve,r_g,chord_b,chord_l,r_s,height_h,error
//! ```
//!
//! Reals are written with 17 significant digits. A failed cell leaves `sop`
//! and `error_bound` empty and carries the message in `error`.

use std::io::Write;

use rayon::prelude::*;
use uavsec_core::{Bound, Decomposition, SopMethod};

use crate::config::{ConfigError, Link, Params, REAL_FIELDS};
use crate::eval::evaluate;

/// A parameter that follows the swept variable: `name = factor · value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tie {
    pub name: String,
    pub factor: f64,
}

impl std::str::FromStr for Tie {
    type Err = String;

    /// `name` or `name*factor`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, factor) = match s.split_once('*') {
            Some((n, f)) => (n.trim(), f.trim().parse::<f64>().map_err(|_| format!("bad tie factor in {s:?}"))?),
            None => (s.trim(), 1.0),
        };
        if !factor.is_finite() {
            return Err(format!("bad tie factor in {s:?}"));
        }
        Ok(Tie {
            name: name.to_string(),
            factor,
        })
    }
}

/// A second variable whose values each produce a separate curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

impl std::str::FromStr for Series {
    type Err = String;

    /// `name=v1,v2,...`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, list) = s.split_once('=').ok_or_else(|| format!("expected name=v1,v2,... in {s:?}"))?;
        Ok(Series {
            name: name.trim().to_string(),
            values: parse_grid(list)?,
        })
    }
}

/// Parses a comma-separated list of reals.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("bad grid value {t:?}"))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: Params,
    pub variable: String,
    pub grid: Vec<f64>,
    pub methods: Vec<SopMethod>,
    pub bounds: Vec<Bound>,
    pub decomposition: Decomposition,
    pub series: Option<Series>,
    pub ties: Vec<Tie>,
}

impl SweepSpec {
    pub fn new(base: Params, variable: &str, grid: Vec<f64>) -> Self {
        SweepSpec {
            base,
            variable: variable.to_string(),
            grid,
            methods: vec![SopMethod::Quadrature],
            bounds: vec![Bound::Lower],
            decomposition: Decomposition::Exact,
            series: None,
            ties: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        if !REAL_FIELDS.contains(&self.variable.as_str()) {
            return invalid(format!(
                "cannot sweep {:?}; expected one of {}",
                self.variable,
                REAL_FIELDS.join(", ")
            ));
        }
        if self.grid.is_empty() {
            return invalid("grid is empty".into());
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("grid must be strictly increasing".into());
        }
        if self.methods.is_empty() || self.bounds.is_empty() {
            return invalid("at least one method and one bound are required".into());
        }
        if let Some(s) = &self.series {
            if !REAL_FIELDS.contains(&s.name.as_str()) || s.name == self.variable {
                return invalid(format!("bad series variable {:?}", s.name));
            }
            if s.values.is_empty() {
                return invalid("series has no values".into());
            }
        }
        for t in &self.ties {
            if !REAL_FIELDS.contains(&t.name.as_str()) || t.name == self.variable {
                return invalid(format!("bad tied variable {:?}", t.name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub variable: String,
    pub value: f64,
    pub link: Link,
    pub bound: Bound,
    pub method: SopMethod,
    pub sop: Option<f64>,
    pub error_bound: Option<f64>,
    pub samples: u64,
    pub seed: u64,
    /// Parameters the cell was evaluated with.
    pub params: Params,
    pub error: Option<String>,
    pub series_value: Option<f64>,
}

struct Cell {
    grid_index: usize,
    value: f64,
    series_value: Option<f64>,
    method: SopMethod,
    bound: Bound,
}

fn cell_params(spec: &SweepSpec, cell: &Cell) -> Params {
    let mut p = spec.base.clone();
    // Names were checked by SweepSpec::validate.
    if let (Some(s), Some(v)) = (&spec.series, cell.series_value) {
        let _ = p.set_real(&s.name, v);
    }
    let _ = p.set_real(&spec.variable, cell.value);
    for t in &spec.ties {
        let _ = p.set_real(&t.name, t.factor * cell.value);
    }
    p
}

/// Evaluates every cell of the sweep. Individual failures are recorded in
/// their rows; only an invalid spec is an error.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, ConfigError> {
    spec.validate()?;
    let series: Vec<Option<f64>> = match &spec.series {
        Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
        None => vec![None],
    };
    let mut cells = Vec::new();
    for &series_value in &series {
        for (grid_index, &value) in spec.grid.iter().enumerate() {
            for &method in &spec.methods {
                for &bound in &spec.bounds {
                    cells.push(Cell {
                        grid_index,
                        value,
                        series_value,
                        method,
                        bound,
                    });
                }
            }
        }
    }
    let rows = cells
        .par_iter()
        .map(|cell| {
            let params = cell_params(spec, cell);
            let result = params
                .validate()
                .map_err(Into::into)
                .and_then(|_| evaluate(&params, cell.method, cell.bound, spec.decomposition, cell.grid_index as u64));
            let (sop, error_bound, samples, error) = match result {
                Ok(e) => (Some(e.value), Some(e.error_bound), e.samples, None),
                Err(e) => (None, None, 0, Some(e.to_string())),
            };
            SweepRow {
                variable: spec.variable.clone(),
                value: cell.value,
                link: params.link,
                bound: cell.bound,
                method: cell.method,
                sop,
                error_bound,
                samples,
                seed: params.seed,
                params,
                error,
                series_value: cell.series_value,
            }
        })
        .collect();
    Ok(rows)
}

pub const CSV_HEADER: [&str; 20] = [
    "variable",
    "value",
    "link",
    "bound",
    "method",
    "sop",
    "error_bound",
    "samples",
    "seed",
    "n",
    "rs_bits",
    "lambda_db",
    "g_main",
    "g_eve",
    "r_g",
    "chord_b",
    "chord_l",
    "r_s",
    "height_h",
    "error",
];

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let mut rec = vec![
            r.variable.clone(),
            real(r.value),
            r.link.tag().to_string(),
            r.bound.as_str().to_string(),
            r.method.as_str().to_string(),
            r.sop.map(real).unwrap_or_default(),
            r.error_bound.map(real).unwrap_or_default(),
            r.samples.to_string(),
            r.seed.to_string(),
        ];
        rec.extend(REAL_FIELDS.iter().map(|f| real(r.params.real(f).unwrap_or(f64::NAN))));
        rec.push(r.error.clone().unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// One data block per (series value, method, bound), separated by two blank
/// lines so gnuplot's `index` can address them. Failed cells become NaN.
pub fn write_gnuplot<W: Write>(rows: &[SweepRow], series: Option<&str>, mut out: W) -> std::io::Result<()> {
    let key = |r: &SweepRow| (r.series_value.map(f64::to_bits), r.method, r.bound);
    let mut keys = Vec::new();
    for r in rows {
        if !keys.contains(&key(r)) {
            keys.push(key(r));
        }
    }
    for (b, k) in keys.iter().enumerate() {
        let block: Vec<&SweepRow> = rows.iter().filter(|r| key(r) == *k).collect();
        let head = block[0];
        if b > 0 {
            writeln!(out, "\n")?;
        }
        write!(out, "# link={} method={} bound={}", head.link, head.method.as_str(), head.bound.as_str())?;
        if let (Some(name), Some(v)) = (series, head.series_value) {
            write!(out, " {name}={}", real(v))?;
        }
        writeln!(out, "\n# {} sop error_bound", head.variable)?;
        for r in block {
            writeln!(
                out,
                "{} {} {}",
                real(r.value),
                real(r.sop.unwrap_or(f64::NAN)),
                real(r.error_bound.unwrap_or(f64::NAN))
            )?;
        }
    }
    Ok(())
}
