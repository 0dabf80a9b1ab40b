//! Run specifications and their validation.

use serde::{Deserialize, Serialize};

/// Guard against accidental explosion: levels above this are refused.
pub const MAX_LEVEL: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Tsptw,
    Snake,
    Latin,
    Rna,
    /// The built-in 8-leaf example tree.
    Tree,
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Problem::Tsptw => "tsptw",
            Problem::Snake => "snake",
            Problem::Latin => "latin",
            Problem::Rna => "rna",
            Problem::Tree => "tree",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Lds,
    Ns,
}

impl std::fmt::Display for Algo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algo::Lds => "lds",
            Algo::Ns => "ns",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VarFlag {
    Dom,
    Deg,
}

impl From<VarFlag> for latin::VarHeuristic {
    fn from(flag: VarFlag) -> Self {
        match flag {
            VarFlag::Dom => latin::VarHeuristic::Dom,
            VarFlag::Deg => latin::VarHeuristic::Deg,
        }
    }
}

impl std::fmt::Display for VarFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VarFlag::Dom => "dom",
            VarFlag::Deg => "deg",
        })
    }
}

/// One benchmark run: problem, instance locator or inline parameters,
/// algorithm, level and limits. Domain flags apply only to their problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub problem: Problem,
    pub algo: Algo,
    pub level: u32,
    /// Instance file path (tsptw, rna).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    /// Puzzle name within an rna puzzle file; defaults to the first puzzle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Wall-clock limit in seconds; falls back to the timeout environment
    /// variable, then unlimited.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_seconds: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_budget: Option<u64>,
    /// Latin: variable selection heuristic (default deg).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<VarFlag>,
    /// Latin: symmetry breaking (default off).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sym: Option<bool>,
    /// Latin: stronger propagation (default off).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mac: Option<bool>,
    /// Snake: hypercube dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u8>,
    /// Snake: comma-separated vertex list to resume from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_path: Option<String>,
    /// Latin: square order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

impl RunSpec {
    pub fn new(problem: Problem, algo: Algo, level: u32) -> Self {
        RunSpec {
            problem,
            algo,
            level,
            instance: None,
            name: None,
            max_seconds: None,
            step_budget: None,
            var: None,
            sym: None,
            mac: None,
            dimension: None,
            start_path: None,
            order: None,
        }
    }

    /// Check the spec is self-consistent: the level guard, required
    /// locators, and no flags outside their problem.
    pub fn validate(&self) -> Result<(), String> {
        if self.level > MAX_LEVEL {
            return Err(format!("level {} exceeds the guard of {MAX_LEVEL}", self.level));
        }
        if let Some(seconds) = self.max_seconds {
            if !(seconds >= 0.0) {
                return Err(format!("max_seconds must be non-negative, got {seconds}"));
            }
        }
        let forbid = |cond: bool, what: &str| -> Result<(), String> {
            if cond {
                Err(format!("{what} is not valid for problem {}", self.problem))
            } else {
                Ok(())
            }
        };
        match self.problem {
            Problem::Tsptw => {
                if self.instance.is_none() {
                    return Err("tsptw requires an instance file".into());
                }
                forbid(self.name.is_some(), "name")?;
                forbid(self.var.is_some() || self.sym.is_some() || self.mac.is_some(), "var/sym/mac")?;
                forbid(self.dimension.is_some() || self.start_path.is_some(), "dimension/start-path")?;
                forbid(self.order.is_some(), "order")?;
            }
            Problem::Rna => {
                if self.instance.is_none() {
                    return Err("rna requires a puzzle file".into());
                }
                forbid(self.var.is_some() || self.sym.is_some() || self.mac.is_some(), "var/sym/mac")?;
                forbid(self.dimension.is_some() || self.start_path.is_some(), "dimension/start-path")?;
                forbid(self.order.is_some(), "order")?;
            }
            Problem::Snake => {
                let Some(dimension) = self.dimension else {
                    return Err("snake requires a dimension".into());
                };
                if dimension == 0 || dimension > snake::MAX_DIMENSION {
                    return Err(format!("dimension must be in 1..={}", snake::MAX_DIMENSION));
                }
                forbid(self.instance.is_some() || self.name.is_some(), "instance/name")?;
                forbid(self.var.is_some() || self.sym.is_some() || self.mac.is_some(), "var/sym/mac")?;
                forbid(self.order.is_some(), "order")?;
            }
            Problem::Latin => {
                let Some(order) = self.order else {
                    return Err("latin requires an order".into());
                };
                if order == 0 || order > latin::MAX_ORDER {
                    return Err(format!("order must be in 1..={}", latin::MAX_ORDER));
                }
                forbid(self.instance.is_some() || self.name.is_some(), "instance/name")?;
                forbid(self.dimension.is_some() || self.start_path.is_some(), "dimension/start-path")?;
            }
            Problem::Tree => {
                forbid(self.instance.is_some() || self.name.is_some(), "instance/name")?;
                forbid(self.var.is_some() || self.sym.is_some() || self.mac.is_some(), "var/sym/mac")?;
                forbid(self.dimension.is_some() || self.start_path.is_some(), "dimension/start-path")?;
                forbid(self.order.is_some(), "order")?;
            }
        }
        Ok(())
    }

    /// Label used in the report's `instance` column.
    pub fn instance_label(&self) -> String {
        match self.problem {
            Problem::Tsptw => self.instance.clone().unwrap_or_default(),
            Problem::Rna => match (&self.instance, &self.name) {
                (Some(path), Some(name)) => format!("{path}#{name}"),
                (Some(path), None) => path.clone(),
                _ => String::new(),
            },
            Problem::Snake => format!("dim-{}", self.dimension.unwrap_or(0)),
            Problem::Latin => format!("order-{}", self.order.unwrap_or(0)),
            Problem::Tree => "figure-tree".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_guard_rejects_large_levels() {
        let mut spec = RunSpec::new(Problem::Tree, Algo::Lds, 17);
        assert!(spec.validate().is_err());
        spec.level = 16;
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn flags_outside_their_problem_are_rejected() {
        let mut spec = RunSpec::new(Problem::Tree, Algo::Ns, 1);
        spec.var = Some(VarFlag::Deg);
        assert!(spec.validate().is_err());

        let mut spec = RunSpec::new(Problem::Snake, Algo::Ns, 1);
        spec.dimension = Some(3);
        spec.order = Some(5);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn missing_locators_are_rejected() {
        assert!(RunSpec::new(Problem::Tsptw, Algo::Lds, 1).validate().is_err());
        assert!(RunSpec::new(Problem::Rna, Algo::Lds, 1).validate().is_err());
        assert!(RunSpec::new(Problem::Snake, Algo::Lds, 1).validate().is_err());
        assert!(RunSpec::new(Problem::Latin, Algo::Lds, 1).validate().is_err());
        assert!(RunSpec::new(Problem::Tree, Algo::Lds, 1).validate().is_ok());
    }

    #[test]
    fn labels_identify_instances() {
        let mut spec = RunSpec::new(Problem::Latin, Algo::Ns, 3);
        spec.order = Some(7);
        assert_eq!(spec.instance_label(), "order-7");
        let mut spec = RunSpec::new(Problem::Rna, Algo::Ns, 1);
        spec.instance = Some("puzzles.tsv".into());
        spec.name = Some("hairpin".into());
        assert_eq!(spec.instance_label(), "puzzles.tsv#hairpin");
    }
}
