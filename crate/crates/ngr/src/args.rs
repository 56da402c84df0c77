use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ngr_core::FieldSpec;

#[derive(Parser, Debug)]
#[command(name = "ngr", version, about = "Exact certificates for noncommutative Grassmannian Z-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// `q` (rationals) or a prime `p`
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// worker threads for independent certificates
    #[arg(long, global = true, env = "NGR_JOBS")]
    pub jobs: Option<usize>,
    /// record wall-clock time per certificate (reports stop being reproducible)
    #[arg(long, global = true)]
    pub timings: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// largest allowed `hi - lo` for `--window`
    #[arg(long, global = true, default_value_t = 20)]
    pub max_window: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert table of A^{m,V} or of a custom algebra
    Build {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
        /// also write the algebra as a config file
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Acyclicity of the Koszul complexes on a window
    KoszulCheck {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
    },
    /// The quadratic dual: dims, Frobenius and dual-dimension certificates
    Dual {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
        /// Frobenius degree; defaults to n - m + 1
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Extend O(m-n), …, O to a helix and check it is geometric
    Helix {
        #[command(flatten)]
        spec: SpecArgs,
        /// objects added beyond the starting collection
        #[arg(long, default_value_t = 4)]
        extend: usize,
    },
    /// A^{m,V} against line bundles on P(V) and against the helix
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// The point functor of W
    Point {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
    },
    /// Ext algebra of O_{P(W)}
    Ext {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        subspace: PathBuf,
    },
    /// Quadratic presentation of the local ring at the point of W
    LocalRing {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        subspace: PathBuf,
        /// Hilbert truncation and Koszul window length
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Every certificate for one (m, n)
    Suite {
        #[command(flatten)]
        spec: SpecArgs,
        /// W for the point certificates; defaults to span(x1, …, xm)
        #[arg(long)]
        subspace: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SpecArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    #[arg(long, requires = "n", conflicts_with = "algebra")]
    pub m: Option<usize>,
    #[arg(long, requires = "m", conflicts_with = "algebra")]
    pub n: Option<usize>,
    /// custom quadratic Z-algebra (JSON)
    #[arg(long, required_unless_present = "m")]
    pub algebra: Option<PathBuf>,
}

pub fn parse_window(s: &str) -> anyhow::Result<(i64, i64)> {
    let (a, b) = s.split_once("..").context("expected LO..HI")?;
    let lo: i64 = a.trim().parse().context("bad lower bound")?;
    let hi: i64 = b.trim().parse().context("bad upper bound")?;
    if hi < lo {
        bail!("empty window {lo}..{hi}");
    }
    Ok((lo, hi))
}

pub fn parse_field(s: &str) -> anyhow::Result<FieldSpec> {
    let t = s.trim().to_ascii_lowercase();
    if matches!(t.as_str(), "q" | "qq" | "rationals") {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = t.strip_prefix("prime:").or_else(|| t.strip_prefix("p:")).unwrap_or(&t).parse().context("expected q or a prime")?;
    if ngr_core::PrimeField::new(p).is_none() {
        bail!("{p} is not a prime below 2^63");
    }
    Ok(FieldSpec::Prime(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-4..4").unwrap(), (-4, 4));
        assert_eq!(parse_window("0..0").unwrap(), (0, 0));
        assert!(parse_window("3..1").is_err());
        assert!(parse_window("3").is_err());
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("101").unwrap(), FieldSpec::Prime(101));
        assert_eq!(parse_field("prime:7").unwrap(), FieldSpec::Prime(7));
        assert!(parse_field("100").is_err());
    }
}
