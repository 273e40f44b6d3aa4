//! The resolved settings of one run, echoed into every JSON document.

use std::path::PathBuf;

use degseq_core::{Budget, Field};
use serde_json::{json, Value};

use crate::cli::{Cli, Command, Format};
use crate::CliError;

/// Bumped whenever a key is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub field: Field,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub budget: Budget,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, CliError> {
        let budget = match cli.common.budget {
            Some(cap) => Budget::new(cap).map_err(|e| CliError::Input(format!("--budget: {}", e)))?,
            None => Budget::default(),
        };
        let config = RunConfig {
            command: cli.command,
            field: cli.common.field,
            format: cli.common.format,
            output: cli.common.output,
            budget,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        let n = match &self.command {
            Command::Degrees(a) => Some(a.n),
            Command::Classify(a) => Some(a.n),
            Command::Aut1(a) => Some(a.n),
            Command::Gallery(a) => Some(a.n),
            Command::Plotdata(a) => Some(a.n),
            Command::Period(a) => Some(a.max_steps),
            Command::Ball(_) | Command::Bounds(_) => None,
        };
        if n == Some(0) {
            return Err(CliError::Input("the iteration count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn command_name(&self) -> &'static str {
        match self.command {
            Command::Degrees(_) => "degrees",
            Command::Classify(_) => "classify",
            Command::Aut1(_) => "aut1",
            Command::Ball(_) => "ball",
            Command::Period(_) => "period",
            Command::Bounds(_) => "bounds",
            Command::Gallery(_) => "gallery",
            Command::Plotdata(_) => "plotdata",
        }
    }

    /// Everything that determines the output, in a fixed shape.
    pub fn to_json(&self) -> Value {
        let args = match &self.command {
            Command::Degrees(a) => json!({
                "map": a.source.map,
                "gallery": a.source.gallery,
                "n": a.n,
                "strategy": format!("{:?}", a.strategy).to_lowercase(),
            }),
            Command::Classify(a) => json!({
                "map": a.input.map,
                "gallery": a.input.gallery,
                "values": a.input.values,
                "dim": a.dim,
                "n": a.n,
                "epsExp": a.eps_exp,
                "fitTolerance": a.fit_tolerance,
                "q": a.q,
            }),
            Command::Aut1(a) => json!({
                "map": a.source.map,
                "gallery": a.source.gallery,
                "assertAutomorphism": a.assert_automorphism,
                "n": a.n,
            }),
            Command::Ball(a) => json!({ "generators": a.generators, "radius": a.radius, "q": a.q }),
            Command::Period(a) => json!({
                "map": a.source.map,
                "gallery": a.source.gallery,
                "maxSteps": a.max_steps,
            }),
            Command::Bounds(a) => json!({ "d": a.d, "K": a.k, "q": a.q }),
            Command::Gallery(a) => json!({ "run": a.run, "n": a.n }),
            Command::Plotdata(a) => json!({
                "map": a.source.map,
                "gallery": a.source.gallery,
                "n": a.n,
                "prefix": a.prefix.display().to_string(),
            }),
        };
        json!({
            "command": self.command_name(),
            "field": self.field.to_string(),
            "budget": self.budget.max_terms,
            "format": format!("{:?}", self.format).to_lowercase(),
            "output": self.output.as_ref().map(|p| p.display().to_string()),
            "args": args,
        })
    }
}
