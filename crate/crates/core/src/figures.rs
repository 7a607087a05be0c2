//! Tabular data behind the seven figures, phase-shift sweeps and spectra.
//!
//! Tables are plain rows of cells with deterministic CSV rendering: reals are
//! printed with 17 significant digits, '.' as decimal separator and '\n' line
//! endings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::basis::{BasisSpec, MapKind};
use crate::error::{HahnError, Result};
use crate::hamiltonian::{
    build_h, build_h0_jacobi_radial, build_h0_jacobi_trig, build_h0_laguerre_1d,
    build_t_laguerre_radial, HamiltonianSet, SymTridiag, DEFAULT_DIMENSION,
};
use crate::orthopoly::ContinuousHahnParams;
use crate::reconstruct::{
    default_grid, identify_closed_form, reconstruct_potential, reference_potential, LinearFit,
    DEFAULT_GRID_POINTS, DEFAULT_M,
};
use crate::spectra::{
    example1_phase, example1_spectrum, example2_phase, example2_spectrum, example3_phase,
    example3_spectrum, ExampleOneParams, ExampleThreeParams, ExampleTwoParams, SpectrumEntry,
    DEFAULT_K_MAX,
};

/// Named numeric parameters, as read from `key=value` flags or a config file.
pub type Params = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self, out: &mut String) {
        match self {
            Cell::Int(i) => write!(out, "{i}").unwrap(),
            Cell::Real(v) => write!(out, "{v:.16e}").unwrap(),
            Cell::Text(s) => out.push_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub title: String,
    pub metadata: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            metadata: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }

    /// Values of a real-valued column.
    pub fn real_column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        self.rows
            .iter()
            .map(|r| match r[idx] {
                Cell::Real(v) => Some(v),
                Cell::Int(i) => Some(i as f64),
                Cell::Text(_) => None,
            })
            .collect()
    }
}

fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Reads parameters against a fixed set of defaults, rejecting unknown keys.
struct Reader<'a> {
    given: &'a Params,
    defaults: Params,
}

impl<'a> Reader<'a> {
    fn new(given: &'a Params, defaults: &[(&str, f64)], optional: &[&str]) -> Result<Self> {
        let defaults: Params = defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for key in given.keys() {
            if !defaults.contains_key(key) && !optional.contains(&key.as_str()) {
                let mut known: Vec<&str> = defaults.keys().map(|s| s.as_str()).collect();
                known.extend(optional);
                return Err(HahnError::InvalidParameter(format!(
                    "unknown parameter '{key}' (known: {})",
                    known.join(", ")
                )));
            }
        }
        Ok(Self { given, defaults })
    }

    fn get(&self, key: &str) -> f64 {
        self.given.get(key).copied().unwrap_or(self.defaults[key])
    }

    fn opt(&self, key: &str) -> Option<f64> {
        self.given.get(key).copied()
    }

    fn count(&self, key: &str) -> Result<usize> {
        let v = self.get(key);
        if v >= 0.0 && v.fract() == 0.0 && v < 1e7 {
            Ok(v as usize)
        } else {
            Err(HahnError::InvalidParameter(format!(
                "{key} must be a nonnegative integer, got {v}"
            )))
        }
    }

    fn effective(&self) -> Params {
        let mut all = self.defaults.clone();
        all.extend(self.given.iter().map(|(k, v)| (k.clone(), *v)));
        all
    }
}

/// Caption parameter set of a figure, the starting point for overrides.
pub fn figure_defaults(id: u32) -> Result<Params> {
    let pairs: &[(&str, f64)] = match id {
        1 => &[("mu", -14.5), ("lambda", 1.0)],
        2 => &[("V", 7.5), ("lambda", 1.0), ("k_max", 10.0)],
        3 => &[("a", -7.5), ("nu", 1.0), ("lambda", 1.0)],
        4 => &[
            ("lambda", 1.0),
            ("alpha", 5.0),
            ("beta", 2.0),
            ("mu", 3.0),
            ("nu", 4.0),
            ("a", 2.0),
        ],
        5 => &[
            ("L", 2.0),
            ("alpha", 1.5),
            ("beta", 3.5),
            ("mu", 3.0),
            ("nu", 4.0),
            ("a", 2.5),
        ],
        6 => &[
            ("lambda", 1.0),
            ("beta", 2.7),
            ("mu", 3.0),
            ("nu", 4.0),
            ("a", 2.5),
        ],
        7 => &[
            ("lambda", 2.0),
            ("ell", 1.0),
            ("mu", 3.0),
            ("nu", 4.0),
            ("a", 2.5),
        ],
        _ => {
            return Err(HahnError::InvalidParameter(format!(
                "unknown figure {id}; expected 1-7"
            )))
        }
    };
    let mut p: Params = pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    if id >= 4 {
        p.insert("points".into(), DEFAULT_GRID_POINTS as f64);
        p.insert("M".into(), DEFAULT_M as f64);
        p.insert("dim".into(), DEFAULT_DIMENSION as f64);
    }
    Ok(p)
}

const FIG1_A: [f64; 4] = [-5.0, -7.0, -9.0, -11.0];
const FIG2_A: [f64; 4] = [-10.0, -12.0, -14.0, -16.0];
const FIG3_GAMMA: [f64; 6] = [-0.5, -1.0, -1.5, -2.0, -3.0, -5.0];

const SPECTRUM_COLUMNS: [&str; 8] = [
    "k",
    "a_or_gamma",
    "Re_E",
    "Im_E",
    "kind",
    "units",
    "Re_E_scaled",
    "Im_E_scaled",
];

fn push_spectrum(
    table: &mut Table,
    label: f64,
    entries: &[SpectrumEntry],
    unit: f64,
    unit_name: &str,
) {
    for e in entries {
        table.rows.push(vec![
            Cell::Int(e.k as i64),
            Cell::Real(label),
            Cell::Real(e.energy.re),
            Cell::Real(e.energy.im),
            Cell::Text(e.kind.as_str().into()),
            Cell::Text(unit_name.into()),
            Cell::Real(e.energy.re / unit),
            Cell::Real(e.energy.im / unit),
        ]);
    }
}

fn spectrum_table(
    title: &str,
    example: u32,
    reader: &Reader,
    chains: &[f64],
    table_meta: &[(&str, String)],
) -> Result<Table> {
    let mut table = Table::new(title, &SPECTRUM_COLUMNS);
    let lambda = reader.get("lambda");
    let l2 = lambda * lambda;
    match example {
        1 => {
            let mu = reader.get("mu");
            for &a in chains {
                let p = ExampleOneParams::new(mu, a, lambda)?;
                push_spectrum(
                    &mut table,
                    a,
                    &example1_spectrum(&p),
                    0.5 * l2,
                    "lambda^2/2",
                );
            }
        }
        2 => {
            let v = reader.get("V") * 0.5 * l2;
            let k_max = reader.count("k_max")?;
            for &a in chains {
                let b = reader.opt("b").unwrap_or(a);
                let p = ExampleTwoParams::new(v, a, b, lambda)?;
                push_spectrum(
                    &mut table,
                    a,
                    &example2_spectrum(&p, k_max),
                    0.5 * l2,
                    "lambda^2/2",
                );
            }
        }
        _ => {
            let a = reader.get("a");
            let nu = reader.get("nu");
            for &g in chains {
                let p = ExampleThreeParams::new(g, a, nu, lambda)?;
                push_spectrum(&mut table, g, &example3_spectrum(&p), l2, "lambda^2");
            }
        }
    }
    for (k, v) in reader.effective() {
        table.meta(&format!("param.{k}"), format_real(v));
    }
    for (k, v) in table_meta {
        table.meta(k, v);
    }
    Ok(table)
}

/// A reconstruction configuration: basis plus `H`, `H₀` and `Ṽ`.
#[derive(Debug, Clone)]
pub struct PotentialSetup {
    pub spec: BasisSpec,
    pub hahn: ContinuousHahnParams,
    pub set: HamiltonianSet,
}

fn potential_setup_from(id: u32, reader: &Reader) -> Result<PotentialSetup> {
    let mu = reader.get("mu");
    let nu = reader.get("nu");
    let a = reader.get("a");
    let dim = reader.count("dim")?;
    let (spec, h0, b): (BasisSpec, SymTridiag, f64) = match id {
        4 => {
            let (l, al, be) = (
                reader.get("lambda"),
                reader.get("alpha"),
                reader.get("beta"),
            );
            (
                BasisSpec::jacobi_radial(al, be, l)?,
                build_h0_jacobi_radial(al, be, l, dim)?,
                a,
            )
        }
        5 => {
            let (len, al, be) = (reader.get("L"), reader.get("alpha"), reader.get("beta"));
            (
                BasisSpec::jacobi_trig(al, be, len)?,
                build_h0_jacobi_trig(al, be, len, dim)?,
                -a,
            )
        }
        6 => {
            let (l, be) = (reader.get("lambda"), reader.get("beta"));
            (
                BasisSpec::laguerre_exp(be, l)?,
                build_h0_laguerre_1d(be, l, dim)?,
                -a,
            )
        }
        _ => {
            let l = reader.get("lambda");
            let ell = reader.get("ell");
            if !(ell >= 0.0 && ell.fract() == 0.0) {
                return Err(HahnError::InvalidParameter(format!(
                    "ell must be a nonnegative integer, got {ell}"
                )));
            }
            (
                BasisSpec::laguerre_radial(ell as u32, l)?,
                build_t_laguerre_radial(ell as u32, l, dim)?,
                a,
            )
        }
    };
    let b = reader.opt("b").unwrap_or(b);
    let hahn = ContinuousHahnParams::new(mu, nu, a, b);
    let h = build_h(&hahn, spec.lambda(), dim)?;
    Ok(PotentialSetup {
        spec,
        hahn,
        set: HamiltonianSet::new(h, h0)?,
    })
}

/// Basis and matrices of the potential figure `id` (4–7).
pub fn potential_setup(id: u32, overrides: &Params) -> Result<PotentialSetup> {
    if !(4..=7).contains(&id) {
        return Err(HahnError::InvalidParameter(format!(
            "figure {id} is not a potential figure; expected 4-7"
        )));
    }
    let defaults = figure_defaults(id)?;
    let pairs: Vec<(&str, f64)> = defaults.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let r = Reader::new(overrides, &pairs, &["b"])?;
    potential_setup_from(id, &r)
}

fn potential_table(id: u32, reader: &Reader) -> Result<Table> {
    let m = reader.count("M")?;
    let points = reader.count("points")?;
    let PotentialSetup { spec, hahn, set } = potential_setup_from(id, reader)?;
    let b = hahn.b;
    let vt = set.vt;
    let coord = match spec.map.kind {
        MapKind::RadialTanh | MapKind::RadialSquare => "r",
        _ => "x",
    };
    let grid = default_grid(&spec, points);
    let rec = reconstruct_potential(&vt, &spec, m, &grid)?;
    let fit = LinearFit {
        v0: rec.v0,
        v1: rec.v1,
        residual: rec.residual,
    };
    let closed = identify_closed_form(&fit, &spec)?;

    let mut columns = vec![coord, "V_tilde", "V_total"];
    if id == 7 {
        columns.push("V_eff");
    }
    let mut table = Table::new(format!("figure {id}"), &columns);
    for (x, v) in rec.grid.iter().zip(&rec.v_tilde) {
        let total = reference_potential(&spec, *x) + v;
        let mut row = vec![Cell::Real(*x), Cell::Real(*v), Cell::Real(total)];
        if id == 7 {
            let ell = reader.get("ell");
            row.push(Cell::Real(ell * (ell + 1.0) / (2.0 * x * x) + total));
        }
        table.rows.push(row);
    }
    for (k, v) in reader.effective() {
        table.meta(&format!("param.{k}"), format_real(v));
    }
    table.meta("param.b", format_real(b));
    table.meta("fit.v0", format_real(rec.v0));
    table.meta("fit.v1", format_real(rec.v1));
    table.meta("fit.residual", format_real(rec.residual));
    table.meta("closed_form", format!("{:?}", closed.kind()));
    for (k, v) in closed.coefficients() {
        table.meta(&format!("closed_form.{k}"), format_real(v));
    }
    table.meta("excluded_points", rec.excluded.len());
    table.meta("units", "energy in absolute units (lambda^2 scale)");
    Ok(table)
}

/// Data behind figure `id` with `overrides` applied to the caption parameters.
///
/// For figures 1–3 a single `a` (or `gamma`) override replaces the list of
/// chains; without it all caption chains are emitted.
pub fn figure(id: u32, overrides: &Params) -> Result<Table> {
    let defaults = figure_defaults(id)?;
    let pairs: Vec<(&str, f64)> = defaults.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    match id {
        1 => {
            let r = Reader::new(overrides, &pairs, &["a"])?;
            let chains = r.opt("a").map_or(FIG1_A.to_vec(), |a| vec![a]);
            spectrum_table(
                "figure 1",
                1,
                &r,
                &chains,
                &[
                    ("figure", "1".into()),
                    ("units", "energies also given in units of lambda^2/2".into()),
                ],
            )
        }
        2 => {
            let r = Reader::new(overrides, &pairs, &["a", "b"])?;
            let chains = r.opt("a").map_or(FIG2_A.to_vec(), |a| vec![a]);
            spectrum_table(
                "figure 2",
                2,
                &r,
                &chains,
                &[
                    ("figure", "2".into()),
                    (
                        "units",
                        "V in units of lambda^2/2; energies also given in units of lambda^2/2"
                            .into(),
                    ),
                ],
            )
        }
        3 => {
            let r = Reader::new(overrides, &pairs, &["gamma"])?;
            let chains = r.opt("gamma").map_or(FIG3_GAMMA.to_vec(), |g| vec![g]);
            spectrum_table(
                "figure 3",
                3,
                &r,
                &chains,
                &[
                    ("figure", "3".into()),
                    ("units", "energies also given in units of lambda^2".into()),
                ],
            )
        }
        _ => {
            let r = Reader::new(overrides, &pairs, &["b"])?;
            potential_table(id, &r)
        }
    }
}

/// Defaults of the `reconstruct` command: figure 4's configuration plus the
/// selector `config` (4–7).
pub fn reconstruction_defaults(config: u32) -> Result<Params> {
    let mut p = potential_defaults(config)?;
    p.insert("config".into(), config as f64);
    Ok(p)
}

fn potential_defaults(id: u32) -> Result<Params> {
    if !(4..=7).contains(&id) {
        return Err(HahnError::InvalidParameter(format!(
            "unknown configuration {id}; expected 4-7"
        )));
    }
    figure_defaults(id)
}

/// Reconstructed `Ṽ` against its linear fit in `y` and the identified closed
/// form, for one of the four potential configurations.
///
/// `config` selects the configuration (defaults to 4); the remaining keys are
/// those of the matching figure.
pub fn reconstruction(overrides: &Params) -> Result<Table> {
    let config = match overrides.get("config") {
        None => 4,
        Some(&c) if c.fract() == 0.0 && (4.0..=7.0).contains(&c) => c as u32,
        Some(c) => {
            return Err(HahnError::InvalidParameter(format!(
                "config must be 4, 5, 6 or 7, got {c}"
            )))
        }
    };
    let defaults = reconstruction_defaults(config)?;
    let pairs: Vec<(&str, f64)> = defaults.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let r = Reader::new(overrides, &pairs, &["b"])?;
    let m = r.count("M")?;
    let points = r.count("points")?;
    let PotentialSetup { spec, hahn, set } = potential_setup_from(config, &r)?;
    let grid = default_grid(&spec, points);
    let rec = reconstruct_potential(&set.vt, &spec, m, &grid)?;
    let short = reconstruct_potential(&set.vt, &spec, 2.min(m), &grid)?;
    let truncation = rec
        .v_tilde
        .iter()
        .zip(&short.v_tilde)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let fit = LinearFit {
        v0: rec.v0,
        v1: rec.v1,
        residual: rec.residual,
    };
    let closed = identify_closed_form(&fit, &spec)?;

    let mut table = Table::new(
        format!("reconstruction {config}"),
        &["x", "y", "V_tilde", "V_fit", "V_closed_form"],
    );
    for ((x, y), v) in rec.grid.iter().zip(&rec.y).zip(&rec.v_tilde) {
        table.rows.push(vec![
            Cell::Real(*x),
            Cell::Real(*y),
            Cell::Real(*v),
            Cell::Real(rec.v0 + rec.v1 * y),
            Cell::Real(closed.v_tilde(&spec, *x)),
        ]);
    }
    for (k, v) in r.effective() {
        table.meta(&format!("param.{k}"), format_real(v));
    }
    table.meta("param.b", format_real(hahn.b));
    table.meta("fit.v0", format_real(rec.v0));
    table.meta("fit.v1", format_real(rec.v1));
    table.meta("fit.residual", format_real(rec.residual));
    table.meta("truncation_difference", format_real(truncation));
    table.meta("closed_form", format!("{:?}", closed.kind()));
    for (k, v) in closed.coefficients() {
        table.meta(&format!("closed_form.{k}"), format_real(v));
    }
    table.meta("excluded_points", rec.excluded.len());
    Ok(table)
}

/// Defaults of the single-chain `spectrum` command for `example`.
pub fn spectrum_defaults(example: u32) -> Result<Params> {
    let pairs: &[(&str, f64)] = match example {
        1 => &[("mu", -14.5), ("a", -5.0), ("lambda", 1.0)],
        2 => &[
            ("V", 7.5),
            ("a", -10.0),
            ("b", -10.0),
            ("lambda", 1.0),
            ("k_max", DEFAULT_K_MAX as f64),
        ],
        3 => &[("gamma", -2.0), ("a", -7.5), ("nu", 1.0), ("lambda", 1.0)],
        _ => {
            return Err(HahnError::InvalidParameter(format!(
                "unknown example {example}; expected 1-3"
            )))
        }
    };
    Ok(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
}

/// Spectrum of one example for a single parameter set.
///
/// `V` of example two is read in units of λ²/2, as in the figure captions.
pub fn spectrum(example: u32, overrides: &Params) -> Result<Table> {
    let defaults = spectrum_defaults(example)?;
    let pairs: Vec<(&str, f64)> = defaults.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let r = Reader::new(overrides, &pairs, &[])?;
    let chain = match example {
        1 | 2 => r.get("a"),
        _ => r.get("gamma"),
    };
    let title = format!("spectrum {example}");
    let units = match example {
        3 => "energies also given in units of lambda^2",
        _ => "energies also given in units of lambda^2/2",
    };
    spectrum_table(&title, example, &r, &[chain], &[("units", units.into())])
}

/// Defaults of the `phase` command for `example`, including the energy grid.
pub fn phase_defaults(example: u32) -> Result<Params> {
    let pairs: &[(&str, f64)] = match example {
        1 => &[("mu", 2.0), ("a", 1.0), ("lambda", 1.0)],
        2 => &[("V", 7.5), ("a", -10.0), ("b", -10.0), ("lambda", 1.0)],
        3 => &[("gamma", -2.0), ("a", -7.5), ("nu", 1.0), ("lambda", 1.0)],
        _ => {
            return Err(HahnError::InvalidParameter(format!(
                "unknown example {example}; expected 1-3"
            )))
        }
    };
    let mut p: Params = pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    p.insert("E_min".into(), 0.05);
    p.insert("E_max".into(), 10.0);
    p.insert("steps".into(), 200.0);
    Ok(p)
}

/// Phase shift `δ(E)` on a uniform energy grid of `steps` intervals.
///
/// Energies where a Γ argument hits a pole are emitted with `delta = NaN` and
/// the flag `pole`.
pub fn phase(example: u32, overrides: &Params) -> Result<Table> {
    let defaults = phase_defaults(example)?;
    let pairs: Vec<(&str, f64)> = defaults.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let r = Reader::new(overrides, &pairs, &[])?;
    let steps = r.count("steps")?;
    if steps == 0 {
        return Err(HahnError::InvalidParameter(
            "steps must be at least 1".into(),
        ));
    }
    let (e_min, e_max) = (r.get("E_min"), r.get("E_max"));
    if !(e_max >= e_min) {
        return Err(HahnError::InvalidParameter(format!(
            "E_max = {e_max} is below E_min = {e_min}"
        )));
    }
    let lambda = r.get("lambda");
    let eval: Box<dyn Fn(f64) -> Result<f64>> = match example {
        1 => {
            let p = ExampleOneParams::new(r.get("mu"), r.get("a"), lambda)?;
            if !(p.mu > 0.0) {
                return Err(HahnError::ScatteringRegime(p.mu));
            }
            Box::new(move |e| example1_phase(&p, e))
        }
        2 => {
            let p = ExampleTwoParams::new(
                r.get("V") * 0.5 * lambda * lambda,
                r.get("a"),
                r.get("b"),
                lambda,
            )?;
            Box::new(move |e| example2_phase(&p, e))
        }
        _ => {
            let p = ExampleThreeParams::new(r.get("gamma"), r.get("a"), r.get("nu"), lambda)?;
            Box::new(move |e| example3_phase(&p, e))
        }
    };
    let mut table = Table::new(format!("phase {example}"), &["E", "delta", "flag"]);
    for i in 0..=steps {
        let e = e_min + (e_max - e_min) * i as f64 / steps as f64;
        let (delta, flag) = match eval(e) {
            Ok(d) => (d, "ok"),
            Err(HahnError::PhaseUndefined) => (f64::NAN, "pole"),
            Err(err) => return Err(err),
        };
        table.rows.push(vec![
            Cell::Real(e),
            Cell::Real(delta),
            Cell::Text(flag.into()),
        ]);
    }
    for (k, v) in r.effective() {
        table.meta(&format!("param.{k}"), format_real(v));
    }
    table.meta(
        "units",
        "E in absolute units; delta in radians (principal branch sum)",
    );
    Ok(table)
}
