//! Command-line interface: netlist analysis with JSON output.
//!
//! All analysis results go to stdout as a single JSON object with exact
//! rational values; the exit code is 0 whenever the analysis itself ran
//! (even when the verdict is `not_rigid`) and nonzero on input errors.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use rigidport::multiport::solve::PortVar;
use rigidport::multiport::Multiport;
use rigidport::netlist::Netlist;
use rigidport::ratio::parse_q;
use rigidport::report;
use rigidport::Label;

#[derive(Parser)]
#[command(name = "rigidport", about = "Exact rigidity analysis of electrical multiports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Topological, matroidal and exact rigidity verdicts.
    Rigidity { file: PathBuf },
    /// Hybrid representation of the port behaviour.
    Hybrid { file: PathBuf },
    /// Exact solve with one voltage or current fixed per port.
    Solve {
        file: PathBuf,
        /// Port assignments, e.g. --port p1.v=5/2 --port p2.i=0
        #[arg(long = "port", value_name = "NAME.{v|i}=VALUE")]
        ports: Vec<String>,
    },
    /// The port behaviour as an affine space.
    Behaviour { file: PathBuf },
    /// Port minimization: minimized netlist plus lift blocks.
    Minports { file: PathBuf },
    /// Column independence of chosen ports in the behaviour minors.
    Independence {
        file: PathBuf,
        /// Comma-separated port labels.
        #[arg(long = "ports", value_delimiter = ',')]
        ports: Vec<String>,
    },
    /// Maximally distant spanning forests of the netlist graph.
    MatroidUnion { file: PathBuf },
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &PathBuf) -> Result<(Netlist, Multiport)> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))?;
    let netlist = Netlist::parse(&text).context("parsing netlist")?;
    let multiport = netlist.multiport().context("validating netlist")?;
    Ok((netlist, multiport))
}

fn parse_assignment(spec: &str) -> Result<(Label, PortVar)> {
    let (name, value) = spec
        .split_once('=')
        .with_context(|| format!("assignment `{spec}` needs `name.v=value` or `name.i=value`"))?;
    let (port, kind) = name
        .rsplit_once('.')
        .with_context(|| format!("assignment `{spec}` needs a `.v` or `.i` suffix"))?;
    let label: Label = port.parse().map_err(|e: String| anyhow::anyhow!(e))?;
    let value = parse_q(value).map_err(|e| anyhow::anyhow!(e))?;
    match kind {
        "v" => Ok((label, PortVar::Voltage(value))),
        "i" => Ok((label, PortVar::Current(value))),
        other => bail!("unknown port variable `{other}` in `{spec}` (use v or i)"),
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    let report = match &cli.command {
        Command::Rigidity { file } => {
            let (netlist, n) = load(file)?;
            report::rigidity_report(&netlist, &n)
        }
        Command::Hybrid { file } => {
            let (netlist, n) = load(file)?;
            report::hybrid_report(&netlist, &n).map_err(|e| anyhow::anyhow!(e))?
        }
        Command::Solve { file, ports } => {
            let (netlist, n) = load(file)?;
            let mut assignment = rigidport::multiport::solve::PortAssignment::new();
            for spec in ports {
                let (label, var) = parse_assignment(spec)?;
                assignment.insert(label, var);
            }
            let solution = n.solve(&assignment).context("solving")?;
            report::solve_report(&netlist, &solution)
        }
        Command::Behaviour { file } => {
            let (netlist, n) = load(file)?;
            let behaviour = n.port_behaviour();
            report::behaviour_report(&netlist, &behaviour)
        }
        Command::Minports { file } => {
            let (netlist, n) = load(file)?;
            report::minports_report(&netlist, &n).context("minimizing ports")?
        }
        Command::Independence { file, ports } => {
            let (netlist, n) = load(file)?;
            let chosen: BTreeSet<Label> = ports
                .iter()
                .map(|p| p.parse::<Label>().map_err(|e| anyhow::anyhow!(e)))
                .collect::<Result<_>>()?;
            report::independence_report(&netlist, &n, &chosen).context("independence test")?
        }
        Command::MatroidUnion { file } => {
            let (netlist, _) = load(file)?;
            report::matroid_union_report(&netlist)
        }
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
