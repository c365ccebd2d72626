//! Netlist ingestion and emission.
//!
//! The format is line oriented; `#` starts a comment. Sections:
//!
//! ```text
//! edge <label> <tail> <head>          # graph section
//! resistor <edge> [p/q]               # devices; omitted parameters of
//! vsource <edge> <p/q>                # resistors and controlled sources
//! isource <edge> <p/q>                # default to fresh distinct primes
//! ccvs <ctl> <out> [p/q]
//! vccs <ctl> <out> [p/q]
//! cccs <ctl> <out> [p/q]
//! vcvs <ctl> <out> [p/q]
//! port <label>...                     # port section
//! coupling <decorated-label>...      # optional coupling section header
//! couple <p/q>... = <p/q>            # one affine row per line
//! ```
//!
//! Rational literals are `p/q` or integers; floats are rejected. Defaulted
//! parameters are materialized into the model, so parse → emit → parse
//! round-trips to an identical model.

use std::collections::BTreeSet;

use num::BigInt;
use thiserror::Error;

use crate::colspace::AffineSpace;
use crate::graph::Graph;
use crate::label::Label;
use crate::multiport::{DeviceSpec, ModelError, Multiport};
use crate::ratio::{format_q, parse_q, primes, Q};

#[derive(Debug, Error)]
pub enum NetlistError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Model { line: usize, source: ModelError },
    #[error("{0}")]
    Structure(ModelError),
}

/// A parsed netlist: the circuit model plus bookkeeping for reproducible
/// output.
#[derive(Debug, Clone)]
pub struct Netlist {
    pub graph: Graph,
    pub ports: BTreeSet<Label>,
    pub devices: Vec<DeviceSpec>,
    /// Parameters that were not given in the file and were assigned fresh
    /// primes, as (description, value) pairs in file order.
    pub defaulted: Vec<(String, Q)>,
    /// Optional affine coupling rows for connecting multiports.
    pub coupling: Option<AffineSpace>,
}

impl Netlist {
    pub fn parse(text: &str) -> Result<Netlist, NetlistError> {
        let syntax = |line: usize, message: String| NetlistError::Syntax { line, message };
        let mut edges: Vec<(Label, String, String)> = Vec::new();
        let mut ports: BTreeSet<Label> = BTreeSet::new();
        let mut raw_devices: Vec<(usize, RawDevice)> = Vec::new();
        let mut coupling_columns: Option<Vec<Label>> = None;
        let mut coupling_rows: Vec<Vec<Q>> = Vec::new();
        let mut coupling_rhs: Vec<Q> = Vec::new();

        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let keyword = tokens.next().expect("nonempty line");
            let rest: Vec<&str> = tokens.collect();
            match keyword {
                "edge" => {
                    let [l, t, h] = rest.as_slice() else {
                        return Err(syntax(line, "edge needs `edge <label> <tail> <head>`".into()));
                    };
                    let label: Label =
                        l.parse().map_err(|e: String| syntax(line, e))?;
                    edges.push((label, t.to_string(), h.to_string()));
                }
                "port" => {
                    if rest.is_empty() {
                        return Err(syntax(line, "port needs at least one label".into()));
                    }
                    for l in rest {
                        ports.insert(l.parse().map_err(|e: String| syntax(line, e))?);
                    }
                }
                "resistor" | "vsource" | "isource" => {
                    let (edge, value) = match rest.as_slice() {
                        [e] => (e, None),
                        [e, v] => (e, Some(parse_q(v).map_err(|m| syntax(line, m))?)),
                        _ => {
                            return Err(syntax(
                                line,
                                format!("{keyword} needs `{keyword} <edge> [value]`"),
                            ))
                        }
                    };
                    if value.is_none() && keyword != "resistor" {
                        return Err(syntax(line, format!("{keyword} needs an explicit value")));
                    }
                    let edge: Label = edge.parse().map_err(|e: String| syntax(line, e))?;
                    raw_devices.push((line, RawDevice::Single(keyword.to_string(), edge, value)));
                }
                "ccvs" | "vccs" | "cccs" | "vcvs" => {
                    let (ctl, out, value) = match rest.as_slice() {
                        [c, o] => (c, o, None),
                        [c, o, v] => (c, o, Some(parse_q(v).map_err(|m| syntax(line, m))?)),
                        _ => {
                            return Err(syntax(
                                line,
                                format!("{keyword} needs `{keyword} <control> <output> [value]`"),
                            ))
                        }
                    };
                    let ctl: Label = ctl.parse().map_err(|e: String| syntax(line, e))?;
                    let out: Label = out.parse().map_err(|e: String| syntax(line, e))?;
                    raw_devices.push((line, RawDevice::Controlled(keyword.to_string(), ctl, out, value)));
                }
                "coupling" => {
                    if coupling_columns.is_some() {
                        return Err(syntax(line, "duplicate coupling header".into()));
                    }
                    let cols: Result<Vec<Label>, _> =
                        rest.iter().map(|t| t.parse::<Label>()).collect();
                    coupling_columns = Some(cols.map_err(|e| syntax(line, e))?);
                }
                "couple" => {
                    let Some(cols) = &coupling_columns else {
                        return Err(syntax(line, "couple row before coupling header".into()));
                    };
                    let Some(eq) = rest.iter().position(|t| *t == "=") else {
                        return Err(syntax(line, "couple row needs `= <rhs>`".into()));
                    };
                    if eq != cols.len() || rest.len() != eq + 2 {
                        return Err(syntax(
                            line,
                            format!("couple row needs {} coefficients and one rhs", cols.len()),
                        ));
                    }
                    let row: Result<Vec<Q>, _> = rest[..eq].iter().map(|t| parse_q(t)).collect();
                    coupling_rows.push(row.map_err(|m| syntax(line, m))?);
                    coupling_rhs.push(parse_q(rest[eq + 1]).map_err(|m| syntax(line, m))?);
                }
                other => {
                    return Err(syntax(line, format!("unknown directive `{other}`")));
                }
            }
        }

        // Assign fresh distinct primes to omitted parameters, skipping any
        // value that already occurs in the file.
        let mut used: BTreeSet<Q> = raw_devices
            .iter()
            .filter_map(|(_, d)| d.value().cloned())
            .collect();
        let mut fresh = primes(64).into_iter().map(|p| Q::from(BigInt::from(p)));
        let mut next_prime = move |used: &mut BTreeSet<Q>| -> Q {
            for candidate in fresh.by_ref() {
                if used.insert(candidate.clone()) {
                    return candidate;
                }
            }
            unreachable!("prime pool exhausted");
        };
        let mut defaulted = Vec::new();
        let mut devices = Vec::new();
        for (line, raw) in raw_devices {
            let device = match raw {
                RawDevice::Single(kind, edge, value) => {
                    let value = value.unwrap_or_else(|| {
                        let v = next_prime(&mut used);
                        defaulted.push((format!("{kind} {edge}"), v.clone()));
                        v
                    });
                    match kind.as_str() {
                        "resistor" => DeviceSpec::Resistor { edge, ohms: value },
                        "vsource" => DeviceSpec::VSource { edge, volts: value },
                        _ => DeviceSpec::ISource { edge, amps: value },
                    }
                }
                RawDevice::Controlled(kind, control, output, value) => {
                    let value = value.unwrap_or_else(|| {
                        let v = next_prime(&mut used);
                        defaulted.push((format!("{kind} {control} {output}"), v.clone()));
                        v
                    });
                    match kind.as_str() {
                        "ccvs" => DeviceSpec::Ccvs { control, output, transresistance: value },
                        "vccs" => DeviceSpec::Vccs { control, output, transconductance: value },
                        "cccs" => DeviceSpec::Cccs { control, output, gain: value },
                        _ => DeviceSpec::Vcvs { control, output, gain: value },
                    }
                }
            };
            // Surface duplicate-coverage problems with their line number.
            if let Err(e) = crate::multiport::Roles::from_devices(
                &devices.iter().cloned().chain([device.clone()]).collect::<Vec<_>>(),
            ) {
                return Err(NetlistError::Model { line, source: e });
            }
            devices.push(device);
        }

        let graph = Graph::new(edges).map_err(|e| NetlistError::Syntax {
            line: 0,
            message: e.to_string(),
        })?;
        let coupling = match coupling_columns {
            None => None,
            Some(cols) => Some(
                AffineSpace::solution_set(&cols, coupling_rows, coupling_rhs).ok_or_else(
                    || NetlistError::Syntax {
                        line: 0,
                        message: "coupling rows are inconsistent".into(),
                    },
                )?,
            ),
        };
        Ok(Netlist { graph, ports, devices, defaulted, coupling })
    }

    /// Validate into a multiport.
    pub fn multiport(&self) -> Result<Multiport, NetlistError> {
        Multiport::new(self.graph.clone(), self.ports.clone(), self.devices.clone())
            .map_err(NetlistError::Structure)
    }

    /// Emit the netlist; parses back to an identical model.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for e in self.graph.edges() {
            out.push_str(&format!("edge {} {} {}\n", e.label, e.tail, e.head));
        }
        for d in &self.devices {
            let line = match d {
                DeviceSpec::Resistor { edge, ohms } => format!("resistor {edge} {}", format_q(ohms)),
                DeviceSpec::VSource { edge, volts } => format!("vsource {edge} {}", format_q(volts)),
                DeviceSpec::ISource { edge, amps } => format!("isource {edge} {}", format_q(amps)),
                DeviceSpec::Ccvs { control, output, transresistance } => {
                    format!("ccvs {control} {output} {}", format_q(transresistance))
                }
                DeviceSpec::Vccs { control, output, transconductance } => {
                    format!("vccs {control} {output} {}", format_q(transconductance))
                }
                DeviceSpec::Cccs { control, output, gain } => {
                    format!("cccs {control} {output} {}", format_q(gain))
                }
                DeviceSpec::Vcvs { control, output, gain } => {
                    format!("vcvs {control} {output} {}", format_q(gain))
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        if !self.ports.is_empty() {
            out.push_str("port");
            for p in &self.ports {
                out.push_str(&format!(" {p}"));
            }
            out.push('\n');
        }
        if let Some(coupling) = &self.coupling {
            out.push_str("coupling");
            for l in coupling.columns() {
                out.push_str(&format!(" {l}"));
            }
            out.push('\n');
            // Emit the affine set as offset-plus-basis constraint rows:
            // the orthocomplement of the translate gives the row space of
            // the constraints, with rhs from the offset.
            let normals = coupling.translate().orthocomplement();
            for row in normals.basis() {
                out.push_str("couple ");
                let rendered: Vec<String> = row.iter().map(format_q).collect();
                out.push_str(&rendered.join(" "));
                let rhs: Q = row
                    .iter()
                    .zip(coupling.offset())
                    .map(|(a, b)| a * b)
                    .sum();
                out.push_str(&format!(" = {}\n", format_q(&rhs)));
            }
        }
        out
    }
}

#[derive(Debug)]
enum RawDevice {
    Single(String, Label, Option<Q>),
    Controlled(String, Label, Label, Option<Q>),
}

impl RawDevice {
    fn value(&self) -> Option<&Q> {
        match self {
            RawDevice::Single(_, _, v) | RawDevice::Controlled(_, _, _, v) => v.as_ref(),
        }
    }
}
