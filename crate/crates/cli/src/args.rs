use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use dft_unitary::{DivisorSet, IndexSet, Modulus};

/// `--n N` or `--p P --m M`.
#[derive(Args, Debug, Clone)]
pub struct ModulusArgs {
    /// Modulus N.
    #[arg(long, conflicts_with_all = ["p", "m"])]
    pub n: Option<usize>,
    /// Prime p, with --m, for N = p^M.
    #[arg(long, requires = "m")]
    pub p: Option<usize>,
    /// Exponent M, with --p.
    #[arg(long, requires = "p")]
    pub m: Option<u32>,
}

impl ModulusArgs {
    pub fn modulus(&self) -> Result<Modulus> {
        match (self.n, self.p, self.m) {
            (Some(n), None, None) => Ok(Modulus::new(n)?),
            (None, Some(p), Some(m)) => Ok(Modulus::prime_power(p, m)?),
            _ => bail!("give either --n or both --p and --m"),
        }
    }
}

/// `--p P --m M` where a prime power is required.
#[derive(Args, Debug, Clone)]
pub struct PrimePowerArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub m: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

/// Comma- or whitespace-separated decimals, or `@path` to read them from a file.
pub fn parse_list(raw: &str) -> Result<Vec<usize>> {
    let text = match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => raw.to_string(),
    };
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("{t:?} is not a nonnegative integer"))
        })
        .collect()
}

pub fn index_set(modulus: &Modulus, raw: &str) -> Result<IndexSet> {
    Ok(IndexSet::new(modulus, parse_list(raw)?)?)
}

pub fn divisor_set(modulus: &Modulus, raw: &str) -> Result<DivisorSet> {
    Ok(DivisorSet::new(modulus, parse_list(raw)?)?)
}
