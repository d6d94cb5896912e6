use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hypcert_core::angled_complex::DEFAULT_CYCLE_BOUND;
use hypcert_core::rational::{format_rational, parse_rational};
use hypcert_core::Rational;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Certify hyperbolicity of a one-relator presentation.
    Certify,
    /// List pieces and small cancellation conditions of a presentation.
    Pieces,
    /// Show vertex links of an angled complex and their short 2-full cycles.
    Link,
    /// Check the combinatorial Gauss-Bonnet identity of an angled complex.
    GaussBonnet,
    /// Reduce a disk diagram over a target complex and check the area bound.
    Reduce,
    /// Check that an angled complex is strictly systolic up to the cycle bound.
    Validate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    Inline(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub lambda: Rational,
    pub cycle_bound: usize,
    pub json: bool,
    pub validate_complex: bool,
    pub include_vertex_contacts: bool,
    pub allow_empty_piece: bool,
    pub two_full_strict: bool,
    pub vr_consecutive: bool,
    pub input: Input,
    /// Target complex for `reduce`.
    pub target: Option<PathBuf>,
    /// Restricts `link` to one vertex.
    pub vertex: Option<u32>,
}

impl CliConfig {
    pub fn new(command: Command, input: Input) -> Self {
        Self {
            command,
            lambda: Rational::new(1, 4),
            cycle_bound: DEFAULT_CYCLE_BOUND,
            json: false,
            validate_complex: false,
            include_vertex_contacts: false,
            allow_empty_piece: false,
            two_full_strict: false,
            vr_consecutive: false,
            input,
            target: None,
            vertex: None,
        }
    }

    pub fn inline(command: Command, text: impl Into<String>) -> Self {
        Self::new(command, Input::Inline(text.into()))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        if self.lambda <= zero || self.lambda >= one {
            return Err(ConfigError::Lambda(format_rational(&self.lambda)));
        }
        if self.cycle_bound < 4 {
            return Err(ConfigError::CycleBound(self.cycle_bound));
        }
        if self.command == Command::Reduce && self.target.is_none() {
            return Err(ConfigError::MissingTarget);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("--lambda must satisfy 0 < lambda < 1, got {0}")]
    Lambda(String),
    #[error("--cycle-bound must be at least 4, got {0}")]
    CycleBound(usize),
    #[error("`reduce` needs --target <complex.cx>")]
    MissingTarget,
    #[error("give either an input file or --inline, not both")]
    AmbiguousInput,
    #[error("missing input: give a file or --inline")]
    MissingInput,
}

/// Command-line arguments of the `hypcert` binary.
#[derive(Debug, Clone, Parser)]
#[command(name = "hypcert", version, about = "Small cancellation certificates and angled-complex tools")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Input file: a presentation for certify/pieces, a .cx complex for
    /// link/gauss-bonnet/validate, a .dg diagram for reduce.
    pub input: Option<PathBuf>,
    /// Input text given directly instead of a file.
    #[arg(long, value_name = "TEXT")]
    pub inline: Option<String>,
    /// Target complex (.cx) of the diagram, for reduce.
    #[arg(long, value_name = "FILE")]
    pub target: Option<PathBuf>,
    #[arg(long, default_value = "1/4", value_parser = parse_rational)]
    pub lambda: Rational,
    /// Longest link cycle examined.
    #[arg(long, default_value_t = DEFAULT_CYCLE_BOUND)]
    pub cycle_bound: usize,
    #[arg(long)]
    pub json: bool,
    /// Attach central-link evidence to the certificate.
    #[arg(long)]
    pub validate_complex: bool,
    /// Admit single-vertex contacts as overlaps of length zero.
    #[arg(long)]
    pub include_vertex_contacts: bool,
    /// Allow one empty piece in triples.
    #[arg(long)]
    pub allow_empty_piece: bool,
    /// Use the stricter reading of 2-full cycles.
    #[arg(long)]
    pub two_full_strict: bool,
    /// Only adjacent mirrored corners violate vertex reducedness.
    #[arg(long)]
    pub vr_consecutive: bool,
    /// Only show the link of this vertex.
    #[arg(long)]
    pub vertex: Option<u32>,
}

impl Cli {
    pub fn into_config(self) -> Result<CliConfig, ConfigError> {
        let input = match (self.input, self.inline) {
            (Some(_), Some(_)) => return Err(ConfigError::AmbiguousInput),
            (Some(p), None) => Input::Path(p),
            (None, Some(s)) => Input::Inline(s),
            (None, None) => return Err(ConfigError::MissingInput),
        };
        let config = CliConfig {
            command: self.command,
            lambda: self.lambda,
            cycle_bound: self.cycle_bound,
            json: self.json,
            validate_complex: self.validate_complex,
            include_vertex_contacts: self.include_vertex_contacts,
            allow_empty_piece: self.allow_empty_piece,
            two_full_strict: self.two_full_strict,
            vr_consecutive: self.vr_consecutive,
            input,
            target: self.target,
            vertex: self.vertex,
        };
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<CliConfig, ConfigError> {
        Cli::try_parse_from(std::iter::once("hypcert").chain(args.iter().copied()))
            .expect("clap accepts")
            .into_config()
    }

    #[test]
    fn defaults() {
        let c = parse(&["certify", "--inline", "< a | a >"]).unwrap();
        assert_eq!(c, CliConfig::inline(Command::Certify, "< a | a >"));
    }

    #[test]
    fn flags() {
        let c = parse(&["gauss-bonnet", "x.cx", "--cycle-bound", "8", "--json", "--two-full-strict"]).unwrap();
        assert_eq!(c.command, Command::GaussBonnet);
        assert_eq!(c.input, Input::Path("x.cx".into()));
        assert_eq!(c.cycle_bound, 8);
        assert!(c.json && c.two_full_strict && !c.vr_consecutive);
        let c = parse(&["pieces", "--inline", "<a|a>", "--lambda", "1/6"]).unwrap();
        assert_eq!(c.lambda, Rational::new(1, 6));
    }

    #[test]
    fn invariants() {
        assert_eq!(parse(&["certify", "--inline", "x", "--lambda", "1"]), Err(ConfigError::Lambda("1".into())));
        assert_eq!(parse(&["certify", "--inline", "x", "--lambda", "0"]), Err(ConfigError::Lambda("0".into())));
        assert_eq!(parse(&["link", "x.cx", "--cycle-bound", "3"]), Err(ConfigError::CycleBound(3)));
        assert_eq!(parse(&["reduce", "d.dg"]), Err(ConfigError::MissingTarget));
        assert_eq!(parse(&["certify"]), Err(ConfigError::MissingInput));
        assert_eq!(parse(&["certify", "f", "--inline", "x"]), Err(ConfigError::AmbiguousInput));
        assert!(Cli::try_parse_from(["hypcert", "certify", "--lambda", "x/y"]).is_err());
    }
}
