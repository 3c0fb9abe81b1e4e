use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exact checks for retractions of polynomial rings and exponential maps.
///
/// Polynomials use `+ - * ^`, parentheses and rational literals such as
/// `3/4`; multiplication must be explicit. Lists of polynomials are
/// separated by `;` inside one quoted argument.
#[derive(Debug, Parser)]
#[command(name = "retractlab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Coefficient field: Q, or F<p> / GF<p> for a prime p.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Comma-separated variable names (default: x,y,z for up to three
    /// variables, x1,...,xn beyond).
    #[arg(long)]
    pub vars: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check f_i(f_1, ..., f_n) = f_i for every image.
    VerifyRetraction {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide that the image of a retraction of k[x,y] or k[x,y,z] is a polynomial ring.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        /// Degree bound for the bounded sub-checks.
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate retractions whose images are zeros or monic monomials.
    EnumMonomial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_exp: u32,
        /// Corpus of family patterns to match the enumeration against.
        #[arg(long)]
        match_corpus: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exponential maps x_i -> g_i(x, U).
    Expmap {
        #[command(subcommand)]
        action: ExpmapAction,
    },
    /// Induced Z-grading on the algebra generated by homogeneous generators.
    Grading {
        /// Comma-separated integer weights, one per variable.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check ker(phi) = (h) on monomials up to a degree bound.
    KernelCheck {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Search f = P(g_1, ..., g_r) with deg P <= bound.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Search a relation of degree <= bound among the generators.
    Dependence {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Rescale images to zero constant terms and lex-leading coefficient 1.
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExpmapAction {
    /// Check both exponential-map axioms.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[command(flatten)]
        common: Common,
    },
    /// Basis of the fixed polynomials of total degree <= bound.
    Constants {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Local slice of minimal sigma-degree and the localization identities.
    Slice {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Common constants of several maps (an upper approximation of ML).
    Ml {
        /// One map per occurrence.
        #[arg(long, required = true, allow_hyphen_values = true)]
        images: Vec<String>,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[command(flatten)]
        common: Common,
    },
}
