use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    LemmaFpr,
    LemmaInd,
    LemmaIndfpr,
    Bg,
    Primmax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parent {
    #[value(name = "Sn", alias = "sn")]
    Sn,
    #[value(name = "An", alias = "an")]
    An,
}

/// Permutation groups, coset actions and genera of subcovers.
#[derive(Debug, Parser)]
#[command(name = "primcover", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: OutputFormat,
    /// Seed for random sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest group order to enumerate or build a lattice for.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_order: Option<u64>,
    /// Largest coset index to build an action on.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_index: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal transitive subgroups of S_n with the ratio ind/[S_n:H].
    Table1 {
        #[arg(long, value_delimiter = ',', default_value = "5,6,7")]
        n: Vec<usize>,
    },
    /// Exhaustive checks of the fpr, index and primitivity bounds.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Genus of a subcover from a tuple file.
    Genus {
        #[arg(long)]
        input: PathBuf,
        /// `trivial`, `stab`, `whole`, or generators like `(1,2);(3,4,5)`.
        #[arg(long, default_value = "trivial")]
        subgroup: String,
        /// Read a group file instead and sample a tuple with this many branches.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Conjugacy classes of subgroups of S_n or A_n.
    Subgroups {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "Sn")]
        parent: Parent,
        #[arg(long)]
        transitive: bool,
        /// Only classes maximal in the parent.
        #[arg(long)]
        maximal: bool,
    },
    /// Fixed points, fpr and index on a coset or subset action.
    Action {
        /// Group file; defaults to the parent group of degree `--n`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "Sn")]
        parent: Parent,
        /// Act on cosets of the subgroup with these generators.
        #[arg(long, conflicts_with = "ell")]
        subgroup: Option<String>,
        /// Act on the `ell`-subsets of the points.
        #[arg(long)]
        ell: Option<usize>,
        /// Report only this element.
        #[arg(long)]
        element: Option<String>,
    },
    /// Primitivity test of a generator set.
    Primitive {
        #[arg(long, conflicts_with_all = ["degree", "gens"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "gens")]
        degree: Option<usize>,
        /// Generators separated by `;`.
        #[arg(long, requires = "degree")]
        gens: Option<String>,
    },
}

/// Resolved caps; `None` leaves the library default in place.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Caps {
    pub order: Option<u64>,
    pub index: Option<u64>,
    pub lattice: Option<u64>,
}

/// A parsed invocation.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
    pub caps: Caps,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli, threads_env: Option<&str>) -> Result<Self, String> {
        let threads = match threads_env {
            None | Some("") => None,
            Some(s) => match s.trim().parse::<usize>() {
                Ok(k) if k > 0 => Some(k),
                _ => {
                    return Err(format!(
                        "PRIMCOVER_THREADS must be a positive integer, got {s:?}"
                    ))
                }
            },
        };
        Ok(RunConfig {
            command: cli.command,
            output_format: cli.global.format,
            seed: cli.global.seed,
            caps: Caps {
                order: cli.global.cap_order,
                index: cli.global.cap_index,
                lattice: cli.global.cap_order,
            },
            threads,
        })
    }

    pub fn n(&self) -> Option<usize> {
        match &self.command {
            Command::Subgroups { n, .. } => Some(*n),
            Command::Action { n, .. } => *n,
            Command::Table1 { n } | Command::Verify { n, .. } => n.first().copied(),
            _ => None,
        }
    }

    pub fn input_path(&self) -> Option<&PathBuf> {
        match &self.command {
            Command::Genus { input, .. } => Some(input),
            Command::Action { input, .. } | Command::Primitive { input, .. } => input.as_ref(),
            _ => None,
        }
    }
}
