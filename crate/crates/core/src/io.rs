//! CSV and manifest output.
//!
//! Field files hold one header line
//! `# field=<name> species=<s> t=<time> units=<unit>`, a column line and
//! `x,value` rows printed with 17 significant digits, so a file read back
//! reproduces the values bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinetic::{Snapshot, SolverConfig};
use crate::moments::MomentSet;
use crate::params::UnitSystem;
use crate::scenarios::{FluidConfig, PairDistances, ScenarioConfig, ScenarioReport, Summary};

/// One field on a 1D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldCsv {
    pub field: String,
    /// 1-based species index; `None` for mixture fields.
    pub species: Option<usize>,
    pub t: f64,
    pub units: String,
    pub x: Vec<f64>,
    pub values: Vec<f64>,
}

impl FieldCsv {
    pub fn to_csv_string(&self) -> String {
        let sp = self.species.map_or_else(|| "mix".to_string(), |s| s.to_string());
        let mut out = format!("# field={} species={} t={:.16e} units={}\nx,value\n", self.field, sp, self.t, self.units);
        for (x, v) in self.x.iter().zip(&self.values) {
            let _ = writeln!(out, "{x:.16e},{v:.16e}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Config(format!("field csv: {m}"));
        let mut lines = text.lines();
        let head = lines.next().and_then(|l| l.strip_prefix('#')).ok_or_else(|| bad("missing header"))?;
        let mut out = FieldCsv { field: String::new(), species: None, t: f64::NAN, units: String::new(), x: Vec::new(), values: Vec::new() };
        for kv in head.split_whitespace() {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad("malformed header entry"))?;
            match k {
                "field" => out.field = v.to_string(),
                "species" if v != "mix" => out.species = Some(v.parse().map_err(|_| bad("species"))?),
                "species" => {}
                "t" => out.t = v.parse().map_err(|_| bad("t"))?,
                "units" => out.units = v.to_string(),
                _ => return Err(bad(&format!("unknown header key '{k}'"))),
            }
        }
        for line in lines {
            let line = line.trim();
            if line.is_empty() || line == "x,value" {
                continue;
            }
            let (x, v) = line.split_once(',').ok_or_else(|| bad("expected two columns"))?;
            out.x.push(x.trim().parse().map_err(|_| bad("x"))?);
            out.values.push(v.trim().parse().map_err(|_| bad("value"))?);
        }
        if out.field.is_empty() || out.x.is_empty() {
            return Err(bad("no data"));
        }
        Ok(out)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv_string())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

pub fn field_units(field: &str, units: UnitSystem) -> &'static str {
    match (units, field) {
        (UnitSystem::Abstract, _) => "1",
        (UnitSystem::Molar, "n") => "mol/m^3",
        (UnitSystem::Molar, "rho") => "g/m^3",
        (UnitSystem::Molar, "u") => "m/s",
        (UnitSystem::Molar, "T") => "K",
        (UnitSystem::Molar, _) => "1",
    }
}

/// Species n, u, T and mixture rho, u, T of a moment set.
pub fn moment_fields(m: &MomentSet, x: &[f64], t: f64, units: UnitSystem) -> Vec<FieldCsv> {
    let mk = |field: &str, species, values: &[f64]| FieldCsv {
        field: field.to_string(),
        species,
        t,
        units: field_units(field, units).to_string(),
        x: x.to_vec(),
        values: values.to_vec(),
    };
    let mut out = Vec::new();
    for (s, f) in m.species.iter().enumerate() {
        out.push(mk("n", Some(s + 1), &f.n));
        out.push(mk("u", Some(s + 1), &f.u));
        out.push(mk("T", Some(s + 1), &f.t));
    }
    out.push(mk("rho", None, &m.rho));
    out.push(mk("u", None, &m.u));
    out.push(mk("T", None, &m.t));
    out
}

fn file_name(label: &str, f: &FieldCsv, index: Option<usize>) -> String {
    let sp = f.species.map_or_else(|| "mix".to_string(), |s| format!("s{s}"));
    match index {
        Some(k) => format!("{label}_{}_{sp}_t{k:03}.csv", f.field),
        None => format!("{label}_{}_{sp}.csv", f.field),
    }
}

/// Rows `eps,t,distance_species_1..L` of one model pair.
pub fn scaling_csv(eps: &[f64], pair: &PairDistances) -> String {
    let l = pair.per_species.len();
    let mut out = String::from("eps,t");
    for s in 1..=l {
        let _ = write!(out, ",distance_species_{s}");
    }
    out.push('\n');
    for (e, rows) in eps.iter().zip(&pair.series) {
        for (t, d) in pair.times.iter().zip(rows) {
            let _ = write!(out, "{e:.16e},{t:.16e}");
            for v in d {
                let _ = write!(out, ",{v:.16e}");
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverEcho {
    pub version: String,
    pub kinetic: SolverConfig,
    pub fluid: Option<FluidConfig>,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub run: String,
    pub kinetic: Vec<Snapshot>,
    /// (t, totals of the conservative variables) for fluid runs.
    pub fluid: Vec<(f64, Vec<f64>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub scenario: String,
    #[serde(rename = "config-echo")]
    pub config_echo: ScenarioConfig,
    pub solver: SolverEcho,
    #[serde(rename = "conservation-ledger")]
    pub conservation_ledger: Vec<LedgerEntry>,
    #[serde(rename = "wall-time")]
    pub wall_time: f64,
}

impl Manifest {
    pub fn new(cfg: &ScenarioConfig, report: &ScenarioReport) -> Self {
        let mut ledger: Vec<LedgerEntry> =
            report.kinetic.iter().map(|k| LedgerEntry { run: k.label(), kinetic: k.ledger.clone(), fluid: Vec::new() }).collect();
        ledger.extend(report.fluid.iter().map(|f| LedgerEntry { run: f.label(), kinetic: Vec::new(), fluid: f.totals.clone() }));
        Manifest {
            scenario: report.scenario.clone(),
            config_echo: cfg.clone(),
            solver: SolverEcho {
                version: env!("CARGO_PKG_VERSION").to_string(),
                kinetic: cfg.solver,
                fluid: cfg.fluid.clone(),
                threads: rayon::current_num_threads(),
            },
            conservation_ledger: ledger,
            wall_time: report.wall_time,
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Config(e.to_string()))
}

/// Write field CSVs, `manifest.json`, `summary.json` and (for discrepancy
/// runs) one scaling CSV per model pair into `dir`. Returns the files written.
pub fn write_report(cfg: &ScenarioConfig, report: &ScenarioReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let units = cfg.mixture.units;
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> Result<()> {
        let p = dir.join(name);
        fs::write(&p, text)?;
        written.push(p);
        Ok(())
    };
    for k in &report.kinetic {
        let label = k.label();
        for f in moment_fields(&k.moments, &k.x, k.t, units) {
            put(file_name(&label, &f, None), f.to_csv_string())?;
        }
        for (i, (t, m)) in k.snapshots.iter().enumerate() {
            for f in moment_fields(m, &k.x, *t, units) {
                put(file_name(&label, &f, Some(i)), f.to_csv_string())?;
            }
        }
    }
    for fr in &report.fluid {
        let label = fr.label();
        for f in moment_fields(&fr.moments, &fr.x, fr.t, units) {
            put(file_name(&label, &f, None), f.to_csv_string())?;
        }
    }
    if let Summary::Discrepancy { eps, pairs } = &report.summary {
        for p in pairs {
            put(format!("scaling_{}-{}.csv", p.reference, p.other), scaling_csv(eps, p))?;
        }
    }
    put("manifest.json".into(), to_json(&Manifest::new(cfg, report))?)?;
    put("summary.json".into(), to_json(&report.summary)?)?;
    Ok(written)
}
