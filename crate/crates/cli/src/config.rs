//! Experiment configuration, as TOML or an equivalent JSON document.
//!
//! ```toml
//! input = """
//! rep=pointset dim=2
//! point -1 0
//! point 1 0
//! """
//! operator = "minkowski"
//! family = [90, "origin"]        # degrees for 2-D lines, axis names otherwise
//! schedule = "random seed=7"     # or "cyclic", or a list of family indices
//! max_steps = 20
//! tol = 1e-6
//! checks = ["mean_width"]
//!
//! [outputs]
//! csv = "run.csv"
//! svg = "frames/step_{step}.svg"
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use symlab_core::sequences::RunOptions;
use symlab_core::{parse_set, Operator, Schedule, ScheduleSpec, SetRep, Subspace};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    input: String,
    operator: String,
    family: Vec<RawSubspace>,
    #[serde(default)]
    schedule: Option<RawSchedule>,
    max_steps: usize,
    tol: f64,
    #[serde(default)]
    snap: Option<f64>,
    #[serde(default)]
    reference: Option<String>,
    #[serde(default)]
    outputs: Outputs,
    #[serde(default)]
    checks: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawSubspace {
    Angle(f64),
    Name(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawSchedule {
    Text(String),
    List(Vec<usize>),
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub csv: Option<PathBuf>,
    /// Path pattern with a `{step}` placeholder.
    pub svg: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Converged,
    MeanWidth,
    VolumeMonotone,
    KlainSymmetry,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Converged, Check::MeanWidth, Check::VolumeMonotone, Check::KlainSymmetry];

    pub fn name(self) -> &'static str {
        match self {
            Check::Converged => "converged",
            Check::MeanWidth => "mean_width",
            Check::VolumeMonotone => "volume_monotone",
            Check::KlainSymmetry => "klain_symmetry",
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// A validated experiment.
#[derive(Clone, Debug)]
pub struct Plan {
    pub input: SetRep,
    pub spec: ScheduleSpec,
    pub options: RunOptions,
    pub outputs: Outputs,
    pub checks: Vec<Check>,
}

fn field(name: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("field `{name}`: {msg}"))
}

/// Reads a set literal, or the file it names relative to `base`.
fn load_set(name: &str, value: &str, base: &Path) -> Result<SetRep, CliError> {
    let literal = value.contains('\n') || value.trim_start().starts_with("rep=");
    let text = if literal {
        value.to_string()
    } else {
        let path = base.join(value);
        std::fs::read_to_string(&path).map_err(|e| field(name, format!("cannot read {}: {e}", path.display())))?
    };
    parse_set(&text).map_err(|e| field(name, e))
}

fn subspace(i: usize, raw: &RawSubspace, dim: usize) -> Result<Subspace, CliError> {
    let name = format!("family[{i}]");
    match raw {
        RawSubspace::Angle(deg) if dim == 2 => Ok(Subspace::line_2d(deg.to_radians())),
        RawSubspace::Angle(_) => Err(field(&name, format!("lines by angle need a 2-D input, got dimension {dim}"))),
        RawSubspace::Name(s) if s == "origin" => Ok(Subspace::origin(dim)),
        RawSubspace::Name(s) => {
            let mut axes = Vec::new();
            for ch in s.chars() {
                let k = "xyz".find(ch).ok_or_else(|| field(&name, format!("unknown axis `{ch}` in `{s}`")))?;
                if k >= dim || axes.contains(&k) {
                    return Err(field(&name, format!("axes `{s}` do not name distinct axes of R^{dim}")));
                }
                axes.push(k);
            }
            axes.sort_unstable();
            Subspace::axes(dim, &axes).map_err(|e| field(&name, e))
        }
    }
}

fn schedule(raw: Option<RawSchedule>) -> Result<Schedule, CliError> {
    match raw {
        None => Ok(Schedule::Cyclic),
        Some(RawSchedule::List(ix)) => Ok(Schedule::Explicit(ix)),
        Some(RawSchedule::Text(t)) => {
            let t = t.trim();
            if t == "cyclic" {
                return Ok(Schedule::Cyclic);
            }
            let seed = t
                .strip_prefix("random")
                .map(str::trim)
                .and_then(|r| r.strip_prefix("seed="))
                .ok_or_else(|| field("schedule", format!("expected `cyclic`, `random seed=<u64>` or a list, got `{t}`")))?;
            let seed = seed.parse().map_err(|_| field("schedule", format!("seed `{seed}` is not a u64")))?;
            Ok(Schedule::Random { seed })
        }
    }
}

fn parse_raw(text: &str, json: bool) -> Result<RawConfig, CliError> {
    if json {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column())))
    } else {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Parses and validates a configuration. Relative paths inside it are
/// resolved against `base`.
pub fn parse(text: &str, json: bool, base: &Path) -> Result<Plan, CliError> {
    let raw = parse_raw(text, json)?;
    let mut input = load_set("input", &raw.input, base)?;
    if let Some(delta) = raw.snap {
        let SetRep::Points(p) = &input else {
            return Err(field("snap", format!("snap applies to point sets, the input is {}", input.kind())));
        };
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(field("snap", format!("must be positive, got {delta}")));
        }
        input = p.with_snap_exp(delta.log2().floor() as i32).into();
    }
    let operator = Operator::from_str(&raw.operator).map_err(|e| field("operator", e))?;
    if matches!(operator, Operator::Fiber | Operator::Steiner) && !matches!(input, SetRep::Grid(_)) {
        return Err(field("operator", format!("{operator} symmetrization needs a grid input, got {}", input.kind())));
    }
    if raw.family.is_empty() {
        return Err(field("family", "needs at least one subspace"));
    }
    let family = raw.family.iter().enumerate().map(|(i, r)| subspace(i, r, input.dim())).collect::<Result<Vec<_>, _>>()?;
    let spec = ScheduleSpec::new(family, schedule(raw.schedule)?, raw.max_steps, raw.tol, operator)
        .map_err(|e| field("schedule", e))?;
    let reference = raw.reference.as_deref().map(|r| load_set("reference", r, base)).transpose()?;
    if let Some(r) = &reference {
        if r.dim() != input.dim() {
            return Err(field("reference", format!("dimension {} differs from the input's {}", r.dim(), input.dim())));
        }
    }
    if let Some(svg) = &raw.outputs.svg {
        if input.dim() > 2 {
            return Err(field("outputs.svg", "rendering needs a 1-D or 2-D set"));
        }
        if !svg.contains("{step}") {
            return Err(field("outputs.svg", "the path pattern needs a `{step}` placeholder"));
        }
    }
    let checks = raw.checks.iter().map(|c| c.parse().map_err(|e| field("checks", e))).collect::<Result<Vec<_>, _>>()?;
    let mut outputs = raw.outputs;
    outputs.csv = outputs.csv.map(|p| base.join(p));
    outputs.svg = outputs.svg.map(|p| base.join(p).to_string_lossy().into_owned());
    Ok(Plan { input, spec, options: RunOptions { reference, ..RunOptions::default() }, outputs, checks })
}

/// Reads a configuration file; `.json` files and documents starting with
/// `{` are read as JSON.
pub fn load(path: &Path) -> Result<Plan, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    let base = path.parent().unwrap_or(Path::new("."));
    parse(&text, json, base).map_err(|e| match e {
        CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
input = "rep=pointset dim=2\npoint -1 0\npoint 1 0\n"
operator = "minkowski"
family = [90]
max_steps = 4
tol = 1e-6
"#;

    fn plan(extra: &str) -> Result<Plan, CliError> {
        parse(&format!("{BASE}{extra}"), false, Path::new("."))
    }

    fn config_error(r: Result<Plan, CliError>) -> String {
        match r {
            Err(CliError::Config(m)) => m,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config() {
        let p = plan("").unwrap();
        assert_eq!(p.input.dim(), 2);
        assert_eq!(p.spec.schedule, Schedule::Cyclic);
        // 90 degrees is the y-axis
        let b = p.spec.family[0].basis()[0].as_slice().to_vec();
        assert!(b[0].abs() < 1e-15 && (b[1].abs() - 1.0).abs() < 1e-15);
        assert!(p.checks.is_empty() && p.outputs == Outputs::default());
    }

    #[test]
    fn schedules_and_names() {
        let p = plan("schedule = \"random seed=9\"\nchecks = [\"converged\", \"mean_width\"]").unwrap();
        assert_eq!(p.spec.schedule, Schedule::Random { seed: 9 });
        assert_eq!(p.checks, vec![Check::Converged, Check::MeanWidth]);
        let p = plan("schedule = [0, 0]").unwrap();
        assert_eq!(p.spec.schedule, Schedule::Explicit(vec![0, 0]));
    }

    #[test]
    fn json_is_equivalent() {
        let json = r#"{"input": "rep=intervals dim=1\ninterval -1 -0.5\ninterval 0.5 1\n",
            "operator": "minkowski", "family": ["origin"], "max_steps": 3, "tol": 1e-9}"#;
        let p = parse(json, true, Path::new(".")).unwrap();
        assert_eq!(p.input.kind(), "intervals");
        assert_eq!(p.spec.family[0].dim(), 0);
    }

    #[test]
    fn errors_name_the_field() {
        assert!(config_error(plan("bogus = 1")).contains("bogus"));
        assert!(config_error(plan("schedule = \"sometimes\"")).contains("schedule"));
        assert!(config_error(plan("checks = [\"vibes\"]")).contains("checks"));
        assert!(config_error(plan("snap = -1.0")).contains("snap"));
        let m = config_error(parse(&BASE.replace("minkowski", "fiber"), false, Path::new(".")));
        assert!(m.contains("operator") && m.contains("grid"));
        let m = config_error(parse(&BASE.replace("[90]", "[\"xq\"]"), false, Path::new(".")));
        assert!(m.contains("family[0]"));
        let m = config_error(parse(&BASE.replace("point 1 0", "point 1"), false, Path::new(".")));
        assert!(m.contains("input") && m.contains("line 3"));
    }

    #[test]
    fn toml_syntax_errors_carry_lines() {
        let m = config_error(parse("input = \"x\"\noperator = \n", false, Path::new(".")));
        assert!(m.contains("line 2"), "{m}");
    }
}
