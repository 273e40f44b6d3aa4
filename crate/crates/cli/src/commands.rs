//! One function per subcommand. Each returns the JSON `result` (plus optional CSV rows)
//! and the envelope is assembled in [`run`].

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use degseq_core::dynamics::iterate_degrees_squaring;
use degseq_core::gallery::{self, ExpectedLaw, GalleryEntry, GalleryMap};
use degseq_core::growth::{self, GrowthConfig};
use degseq_core::{
    aut1_certificate, iterate_degrees, monoid_ball_degrees, parse_map, period_detect, AffineMap, DegreeSequence,
    Error, Field, ParsedMap, ProjectiveMap,
};
use serde_json::{json, Value};

use crate::cli::{
    Aut1Args, BallArgs, BoundsArgs, ClassifyArgs, Command, DegreesArgs, Format, GalleryArgs, PeriodArgs, PlotArgs,
    Source, StrategyArg,
};
use crate::config::RunConfig;
use crate::render;
use crate::CliError;

/// Largest tolerated gap between a fitted and an expected growth order.
const DPOL_TOLERANCE: f64 = 0.25;

/// What a command produced, before serialization.
struct Report {
    result: Value,
    truncation: Option<Value>,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// Nonzero when the command ran but its check failed.
    status: i32,
}

impl Report {
    fn new(result: Value) -> Report {
        Report { result, truncation: None, table: None, status: 0 }
    }
}

/// Runs the configured command and writes its output; returns the process exit code.
pub fn run(config: &RunConfig) -> Result<i32, CliError> {
    let report = match &config.command {
        Command::Degrees(a) => degrees(config, a)?,
        Command::Classify(a) => classify(config, a)?,
        Command::Aut1(a) => aut1(config, a)?,
        Command::Ball(a) => ball(config, a)?,
        Command::Period(a) => period(config, a)?,
        Command::Bounds(a) => bounds(a)?,
        Command::Gallery(a) => gallery_cmd(config, a)?,
        Command::Plotdata(a) => plotdata(config, a)?,
    };
    let mut buf = Vec::new();
    match config.format {
        Format::Json => {
            let doc = render::envelope(config, report.truncation, report.result);
            render::write_json(&doc, &mut buf)?;
        }
        Format::Csv => {
            let (header, rows) = report.table.ok_or_else(|| {
                CliError::Input(format!("`{}` has no CSV form; use --format json", config.command_name()))
            })?;
            render::write_csv(&header, &rows, &mut buf)?;
        }
    }
    match &config.output {
        Some(path) => fs::write(path, &buf)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&buf)?;
            out.flush()?;
        }
    }
    Ok(report.status)
}

/// A map from `--map` or `--gallery`, with the text it came from.
struct Loaded {
    label: String,
    map: ParsedMap,
}

impl Loaded {
    fn projective(&self) -> Result<ProjectiveMap, CliError> {
        Ok(self.map.projective()?)
    }

    fn affine(&self) -> Result<AffineMap, CliError> {
        match &self.map {
            ParsedMap::Affine(a) => Ok(a.clone()),
            ParsedMap::Projective(_) => Err(CliError::Input(format!("`{}` is not an affine map", self.label))),
        }
    }
}

fn parse(text: &str, field: Field) -> Result<ParsedMap, CliError> {
    parse_map(text, field).map(|e| e.map).map_err(|e| CliError::from_parse(text, e))
}

fn lookup(name: &str, field: Field) -> Result<GalleryEntry, CliError> {
    gallery::find_entry(field, name).ok_or_else(|| {
        let names: Vec<String> = gallery::list_gallery(field).into_iter().map(|e| e.name).collect();
        CliError::Input(format!("no gallery entry `{}`; known: {}", name, names.join(", ")))
    })
}

fn load_parts(map: Option<&str>, name: Option<&str>, field: Field) -> Result<Loaded, CliError> {
    match (map, name) {
        (Some(text), _) => Ok(Loaded { label: text.to_string(), map: parse(text, field)? }),
        (None, Some(name)) => {
            let entry = lookup(name, field)?;
            let map = match &entry.map {
                GalleryMap::Affine(a) => ParsedMap::Affine(a.clone()),
                GalleryMap::Projective(p) => ParsedMap::Projective(p.clone()),
            };
            Ok(Loaded { label: entry.name, map })
        }
        (None, None) => Err(CliError::Input("one of --map or --gallery is required".into())),
    }
}

fn load(source: &Source, field: Field) -> Result<Loaded, CliError> {
    load_parts(source.map.as_deref(), source.gallery.as_deref(), field)
}

fn sequence(loaded: &Loaded, n: usize, strategy: StrategyArg, config: &RunConfig) -> Result<DegreeSequence, CliError> {
    let f = loaded.projective()?;
    let mut seq = match strategy {
        StrategyArg::Left => iterate_degrees(&f, n, config.budget)?,
        StrategyArg::Squaring => iterate_degrees_squaring(&f, n, config.budget)?,
    };
    seq.source = loaded.label.clone();
    Ok(seq)
}

fn sequence_result(loaded: &Loaded, seq: &DegreeSequence) -> Value {
    let mut v = render::sequence_json(seq);
    v["map"] = json!(loaded.map.to_string());
    v
}

fn degrees(config: &RunConfig, a: &DegreesArgs) -> Result<Report, CliError> {
    let loaded = load(&a.source, config.field)?;
    let seq = sequence(&loaded, a.n, a.strategy, config)?;
    Ok(Report {
        result: sequence_result(&loaded, &seq),
        truncation: seq.truncated.as_ref().map(render::truncation_json),
        table: Some((render::SEQUENCE_HEADER.to_vec(), render::sequence_rows(&seq))),
        status: 0,
    })
}

fn running_max(values: &[u64]) -> Vec<u64> {
    values
        .iter()
        .scan(0, |best, &v| {
            *best = (*best).max(v);
            Some(*best)
        })
        .collect()
}

/// Field size for the logarithmic threshold: explicit, or the prime of the base field.
fn threshold_q(explicit: Option<u64>, field: Field) -> Option<u64> {
    explicit.or(match field {
        Field::Prime(p) => Some(p),
        Field::Rational => None,
    })
}

fn thresholds(values: &[u64], dim: Option<usize>, q: Option<u64>) -> Result<Value, CliError> {
    match dim {
        Some(d) if !values.is_empty() => {
            Ok(render::threshold_json(&growth::threshold_check(&running_max(values), d as u32, q)?))
        }
        _ => Ok(Value::Null),
    }
}

fn classify(config: &RunConfig, a: &ClassifyArgs) -> Result<Report, CliError> {
    let growth_config = GrowthConfig { eps_exp: a.eps_exp, fit_tolerance: a.fit_tolerance };
    let q = threshold_q(a.q, config.field);
    if let Some(values) = &a.input.values {
        let dim = a.dim.map(|d| d as usize);
        let report = growth::classify_degrees(values, dim, false, &growth_config)?;
        let result = json!({
            "source": "values",
            "degrees": values,
            "growth": render::growth_json(&report),
            "thresholds": thresholds(values, dim, q)?,
        });
        return Ok(Report::new(result));
    }
    let loaded = load_parts(a.input.map.as_deref(), a.input.gallery.as_deref(), config.field)?;
    let seq = sequence(&loaded, a.n, StrategyArg::Left, config)?;
    let report = growth::classify_growth(&seq, &growth_config)?;
    let mut result = sequence_result(&loaded, &seq);
    result["growth"] = render::growth_json(&report);
    result["thresholds"] = thresholds(&seq.degrees, seq.dim, q)?;
    Ok(Report {
        result,
        truncation: seq.truncated.as_ref().map(render::truncation_json),
        table: None,
        status: 0,
    })
}

fn aut1(config: &RunConfig, a: &Aut1Args) -> Result<Report, CliError> {
    let loaded = load(&a.source, config.field)?;
    let f = loaded.affine()?;
    match aut1_certificate(&f, a.assert_automorphism, config.budget) {
        Ok(cert) => {
            let predicted: Vec<Value> = (1..=a.n as u32).map(|n| render::wide(cert.predicted_degree(n))).collect();
            Ok(Report::new(json!({
                "map": loaded.map.to_string(),
                "dim": f.dim(),
                "certified": cert.certified,
                "baseDegree": cert.base_degree,
                "degrees": cert.degrees,
                "assertedAutomorphism": cert.asserted_automorphism,
                "predictedBase": cert.predicted_base,
                "predicted": if cert.predicted_base.is_some() { json!(predicted) } else { Value::Null },
            })))
        }
        Err(Error::BudgetExceeded { terms, cap }) => Ok(Report {
            result: json!({ "map": loaded.map.to_string(), "dim": f.dim(), "certified": null }),
            truncation: Some(render::overrun_json(terms, cap)),
            table: None,
            status: 0,
        }),
        Err(e) => Err(e.into()),
    }
}

fn ball(config: &RunConfig, a: &BallArgs) -> Result<Report, CliError> {
    let generators = a
        .generators
        .iter()
        .map(|g| parse(g, config.field)?.projective().map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let ball = monoid_ball_degrees(&generators, a.radius, config.budget)?;
    let elements: Vec<Value> = ball
        .ball
        .elements
        .iter()
        .map(|e| json!({ "word": e.word, "degree": e.degree }))
        .collect();
    let dim = generators.first().map(|g| g.dim());
    let rows = ball
        .max_degrees
        .iter()
        .enumerate()
        .map(|(i, d)| vec![(i + 1).to_string(), d.to_string()])
        .collect();
    Ok(Report {
        result: json!({
            "generators": generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "radius": a.radius,
            "computedRadius": ball.ball.radius,
            "maxDegrees": ball.max_degrees,
            "elements": elements,
            "thresholds": thresholds(&ball.max_degrees, dim, threshold_q(a.q, config.field))?,
        }),
        truncation: ball.truncated.as_ref().map(render::truncation_json),
        table: Some((vec!["m", "maxDegree"], rows)),
        status: 0,
    })
}

fn period(config: &RunConfig, a: &PeriodArgs) -> Result<Report, CliError> {
    let loaded = load(&a.source, config.field)?;
    let f = loaded.projective()?;
    let map = loaded.map.to_string();
    match period_detect(&f, a.max_steps, config.budget) {
        Ok(found) => Ok(Report::new(json!({
            "map": map,
            "maxSteps": a.max_steps,
            "found": found.is_some(),
            "preperiod": found.map(|p| p.preperiod),
            "period": found.map(|p| p.period),
        }))),
        Err(Error::BudgetExceeded { terms, cap }) => Ok(Report {
            result: json!({ "map": map, "maxSteps": a.max_steps, "found": false, "preperiod": null, "period": null }),
            truncation: Some(render::overrun_json(terms, cap)),
            table: None,
            status: 0,
        }),
        Err(e) => Err(e.into()),
    }
}

fn bounds(a: &BoundsArgs) -> Result<Report, CliError> {
    let b = growth::degaut_bound(a.d, a.k)?;
    let mut result = json!({
        "d": a.d,
        "K": a.k,
        "C_d": render::rational(&b.c_d),
        "C_dExact": render::rational_exact(&b.c_d),
        "bound": render::rational(&b.bound),
        "boundExact": render::rational_exact(&b.bound),
        "dimCheck": render::big(&b.dim_check),
        "holds": b.holds,
        "boundary": b.boundary,
    });
    if let Some(q) = a.q {
        let count = growth::finite_field_count_bound(q, a.d, a.k)?;
        result["q"] = json!(q);
        result["coefficientCount"] = render::big(&growth::coefficient_count(a.d, a.k));
        result["finiteFieldCount"] = render::big(&count);
        result["C_dq"] = json!(growth::log_threshold_constant(a.d, q));
    }
    Ok(Report::new(result))
}

/// Compares a computed prefix with the entry's law. `None` when it cannot be decided.
fn law_matches(entry: &GalleryEntry, seq: &DegreeSequence) -> (Option<bool>, Vec<Value>, Option<f64>) {
    if entry.expected.is_exact() {
        let mismatches: Vec<Value> = seq
            .degrees
            .iter()
            .enumerate()
            .filter_map(|(i, &d)| {
                let want = entry.expected.value(i + 1);
                (want != Some(d)).then(|| json!({ "n": i + 1, "expected": want, "computed": d }))
            })
            .collect();
        return (Some(mismatches.is_empty()), mismatches, None);
    }
    let want = match &entry.expected {
        ExpectedLaw::GrowthOrder { dpol } => *dpol as f64,
        _ => return (None, Vec::new(), None),
    };
    match growth::classify_growth(seq, &GrowthConfig::default()) {
        Ok(r) => {
            let got = r.dpol;
            (got.map(|g| (g - want).abs() <= DPOL_TOLERANCE), Vec::new(), got)
        }
        Err(_) => (None, Vec::new(), None),
    }
}

fn gallery_cmd(config: &RunConfig, a: &GalleryArgs) -> Result<Report, CliError> {
    let Some(name) = &a.run else {
        let entries: Vec<Value> = gallery::list_gallery(config.field).iter().map(render::entry_json).collect();
        return Ok(Report::new(json!({ "entries": entries })));
    };
    let entry = lookup(name, config.field)?;
    let f = entry.map.projective()?;
    let mut seq = iterate_degrees(&f, a.n, config.budget)?;
    seq.source = entry.name.clone();
    let (matches, mismatches, dpol) = law_matches(&entry, &seq);
    let mut result = render::sequence_json(&seq);
    result["entry"] = render::entry_json(&entry);
    result["matches"] = json!(matches);
    result["mismatches"] = json!(mismatches);
    result["dpolEstimate"] = json!(dpol);
    Ok(Report {
        result,
        truncation: seq.truncated.as_ref().map(render::truncation_json),
        table: Some((render::SEQUENCE_HEADER.to_vec(), render::sequence_rows(&seq))),
        status: if matches == Some(true) { 0 } else { 1 },
    })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn plotdata(config: &RunConfig, a: &PlotArgs) -> Result<Report, CliError> {
    let loaded = load(&a.source, config.field)?;
    let seq = sequence(&loaded, a.n, StrategyArg::Left, config)?;
    let linear = with_suffix(&a.prefix, ".dat");
    let loglog = with_suffix(&a.prefix, ".loglog.dat");
    fs::write(&linear, render::plot_linear(&seq.degrees))?;
    fs::write(&loglog, render::plot_loglog(&seq.degrees))?;
    Ok(Report {
        result: json!({
            "map": loaded.map.to_string(),
            "points": seq.len(),
            "files": { "linear": linear.display().to_string(), "loglog": loglog.display().to_string() },
            "degrees": seq.degrees,
        }),
        truncation: seq.truncated.as_ref().map(render::truncation_json),
        table: None,
        status: 0,
    })
}
