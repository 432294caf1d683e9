use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "geon", version, about = "Quantum-logic lattices and self-consistent wormhole billiards")]
pub struct Cli {
    /// Output directory [default: out]
    #[arg(long, global = true, env = "GEON_OUT_DIR")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Orthomodular,
    Distributive,
    Atomic,
    Covering,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Orthomodular => "orthomodular",
            Check::Distributive => "distributive",
            Check::Atomic => "atomic",
            Check::Covering => "covering",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run lattice law checks on a lattice file
    Lattice {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated subset of checks [default: all]
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Generate the proposition logic of a universe and test it for classicality
    Geon {
        #[arg(long)]
        config: PathBuf,
    },
    /// Enumerate self-consistent evolutions of a wormhole billiard
    Billiard {
        #[arg(long)]
        config: PathBuf,
        /// Also run the finer-grid oracle and compare its roots
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Compare a universe's logic with its spin-1/2 subspace lattice
    Hilbert {
        #[arg(long)]
        config: PathBuf,
    },
    /// Re-run the command recorded in a manifest
    Replay {
        #[arg(long)]
        manifest: PathBuf,
    },
}
