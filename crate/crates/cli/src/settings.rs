//! Flag values, the `key=value` config file, and their merge.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use fpa::Error;

/// Options shared by every experiment command. Flags override the config file.
#[derive(Args, Clone, Debug, Default, PartialEq)]
pub struct Flags {
    /// Benchmark name (see `list-benchmarks`).
    #[arg(long)]
    pub benchmark: Option<String>,
    /// Dimension; defaults to the benchmark's table dimension.
    #[arg(long)]
    pub dim: Option<usize>,
    /// `fpa`, `ga`, `pso` or `all`.
    #[arg(long)]
    pub algorithm: Option<String>,
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// FPA switch probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Population size for every algorithm.
    #[arg(long)]
    pub n: Option<usize>,
    /// Lévy exponent.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Lévy step scale.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Target tolerance amount.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "max-iters")]
    pub max_iters: Option<usize>,
    /// Output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File of `key=value` lines using the flag names as keys.
    #[arg(long = "config-file")]
    pub config_file: Option<PathBuf>,
}

impl Flags {
    /// Config-file values with these flags laid over them.
    pub fn resolve(&self) -> Result<Flags, Error> {
        let mut merged = match &self.config_file {
            Some(path) => read_config(path)?,
            None => Flags::default(),
        };
        merged.overlay(self);
        merged.config_file = None;
        Ok(merged)
    }

    fn overlay(&mut self, top: &Flags) {
        macro_rules! take {
            ($($f:ident),*) => { $( if top.$f.is_some() { self.$f = top.$f.clone(); } )* };
        }
        take!(benchmark, dim, algorithm, runs, seed, p, n, lambda, scale, tol, max_iters, out);
    }
}

pub fn read_config(path: &Path) -> Result<Flags, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_config(&text).map_err(|message| Error::Parse { path: path.to_path_buf(), message })
}

/// Blank lines and lines starting with `#` are skipped.
pub fn parse_config(text: &str) -> Result<Flags, String> {
    let mut flags = Flags::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| format!("line {}: expected key=value, got `{line}`", i + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| format!("line {}: {key}: {e}", i + 1);
        match key {
            "benchmark" => flags.benchmark = Some(value.to_string()),
            "dim" => flags.dim = Some(parse(value).map_err(bad)?),
            "algorithm" => flags.algorithm = Some(value.to_string()),
            "runs" => flags.runs = Some(parse(value).map_err(bad)?),
            "seed" => flags.seed = Some(parse(value).map_err(bad)?),
            "p" => flags.p = Some(parse(value).map_err(bad)?),
            "n" => flags.n = Some(parse(value).map_err(bad)?),
            "lambda" => flags.lambda = Some(parse(value).map_err(bad)?),
            "scale" => flags.scale = Some(parse(value).map_err(bad)?),
            "tol" => flags.tol = Some(parse(value).map_err(bad)?),
            "max-iters" => flags.max_iters = Some(parse(value).map_err(bad)?),
            "out" => flags.out = Some(PathBuf::from(value)),
            _ => return Err(format!("line {}: unknown key `{key}`", i + 1)),
        }
    }
    Ok(flags)
}

fn parse<V: FromStr>(value: &str) -> Result<V, String>
where
    V::Err: std::fmt::Display,
{
    value.parse().map_err(|e: V::Err| format!("`{value}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let f = parse_config("# comment\nbenchmark = ackley\n\nruns=5\nmax-iters=100\np=0.5\nout=x.csv\n").unwrap();
        assert_eq!(f.benchmark.as_deref(), Some("ackley"));
        assert_eq!(f.runs, Some(5));
        assert_eq!(f.max_iters, Some(100));
        assert_eq!(f.p, Some(0.5));
        assert_eq!(f.out, Some(PathBuf::from("x.csv")));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_config("runs").unwrap_err().contains("line 1"));
        assert!(parse_config("colour=red").unwrap_err().contains("unknown key"));
        assert!(parse_config("runs=-3").unwrap_err().contains("runs"));
    }

    #[test]
    fn flags_win_over_file() {
        let file = Flags { runs: Some(5), seed: Some(1), ..Flags::default() };
        let mut merged = file.clone();
        merged.overlay(&Flags { runs: Some(9), ..Flags::default() });
        assert_eq!(merged.runs, Some(9));
        assert_eq!(merged.seed, Some(1));
    }
}
