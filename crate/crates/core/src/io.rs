//! File formats.
//!
//! - Function tables and set files are JSON.
//! - Operator artifacts are line-oriented text: a `dims,<rows>,<cols>`
//!   header, one `row,col,re,im` line per nonzero entry (17 significant
//!   digits), then `#`-prefixed metadata lines carrying the kind, the flat
//!   basis labels, and the domain/codomain coordinate maps.
//! - Circuit artifacts are line-oriented text: a `qubits,<q>` header, one
//!   gate per line, then `# role` lines; each qubit gets an initial-role
//!   line (input-map / ancilla-0 / ancilla-1) and a final-role line
//!   (output-map / garbage / passthrough), with map labels on the
//!   input-map and output-map lines.
//! - Plans export as ordered stage manifests (text).

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{FinalRole, Gate, GateCircuit, InitialRole, RegisterLayout};
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::kernels::{FunctionKernel, KernelKind};
use crate::plan::InnerProductPlan;
use crate::space::Space;
use crate::state::BasisMapOperator;

/// 17-significant-digit formatting used for every exported number.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

// ---------------------------------------------------------------------------
// Function tables (JSON)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FunctionTableRepr {
    domain: Vec<String>,
    codomain: Vec<String>,
    map: Vec<usize>,
}

pub fn function_to_json(f: &FiniteFunction) -> String {
    let repr = FunctionTableRepr {
        domain: f.domain().labels().to_vec(),
        codomain: f.codomain().labels().to_vec(),
        map: f.map().to_vec(),
    };
    serde_json::to_string_pretty(&repr).expect("function tables serialize")
}

pub fn function_from_json(text: &str) -> Result<FiniteFunction> {
    let repr: FunctionTableRepr =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("function table: {e}")))?;
    FiniteFunction::from_labels(repr.domain, repr.codomain, repr.map)
}

pub fn read_function(path: impl AsRef<Path>) -> Result<FiniteFunction> {
    function_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_function(path: impl AsRef<Path>, f: &FiniteFunction) -> Result<()> {
    Ok(std::fs::write(path, function_to_json(f))?)
}

// ---------------------------------------------------------------------------
// Set files (JSON)
// ---------------------------------------------------------------------------

/// Members of a set file: one list for unary inputs, two for the arguments
/// of a binary circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetMembers {
    Unary(Vec<String>),
    Binary(Vec<String>, Vec<String>),
}

/// A set over a labeled value space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFile {
    pub space: Vec<String>,
    pub members: SetMembers,
}

#[derive(Serialize, Deserialize)]
struct SetFileRepr {
    space: Vec<String>,
    members: serde_json::Value,
}

pub fn set_to_json(set: &SetFile) -> String {
    let members = match &set.members {
        SetMembers::Unary(m) => serde_json::json!(m),
        SetMembers::Binary(a, b) => serde_json::json!([a, b]),
    };
    let repr = SetFileRepr {
        space: set.space.clone(),
        members,
    };
    serde_json::to_string_pretty(&repr).expect("set files serialize")
}

pub fn set_from_json(text: &str) -> Result<SetFile> {
    let repr: SetFileRepr =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("set file: {e}")))?;
    let members = parse_members(&repr.members)?;
    Ok(SetFile {
        space: repr.space,
        members,
    })
}

fn parse_members(value: &serde_json::Value) -> Result<SetMembers> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::Parse("set members must be an array".into()))?;
    if items.iter().all(|v| v.is_string()) {
        return Ok(SetMembers::Unary(
            items
                .iter()
                .map(|v| v.as_str().unwrap().to_string())
                .collect(),
        ));
    }
    if items.len() == 2 && items.iter().all(|v| v.is_array()) {
        let mut lists = items.iter().map(|v| {
            v.as_array()
                .unwrap()
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Parse("set members must be labels".into()))
                })
                .collect::<Result<Vec<String>>>()
        });
        let a = lists.next().unwrap()?;
        let b = lists.next().unwrap()?;
        return Ok(SetMembers::Binary(a, b));
    }
    Err(Error::Parse(
        "set members must be a list of labels or a pair of label lists".into(),
    ))
}

pub fn read_set(path: impl AsRef<Path>) -> Result<SetFile> {
    set_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_set(path: impl AsRef<Path>, set: &SetFile) -> Result<()> {
    Ok(std::fs::write(path, set_to_json(set))?)
}

// ---------------------------------------------------------------------------
// Operator artifacts (text)
// ---------------------------------------------------------------------------

pub fn operator_to_text(kernel: &FunctionKernel) -> String {
    let op = &kernel.operator;
    let mut out = String::new();
    out.push_str(&format!("dims,{},{}\n", op.rows(), op.cols()));
    let mut entries = op.nonzeros();
    entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
    for (r, c, v) in entries {
        out.push_str(&format!(
            "{r},{c},{},{}\n",
            format_f64(v.re),
            format_f64(v.im)
        ));
    }
    out.push_str(&format!("# kind {}\n", kernel.kind.name()));
    for (coord, label) in op.input_space().labels().iter().enumerate() {
        out.push_str(&format!("# inlabel {coord} {label}\n"));
    }
    for (coord, label) in op.output_space().labels().iter().enumerate() {
        out.push_str(&format!("# outlabel {coord} {label}\n"));
    }
    for (ord, &coord) in kernel.domain_coords.iter().enumerate() {
        out.push_str(&format!(
            "# domain {ord} {coord} {}\n",
            kernel.domain.label(ord)
        ));
    }
    for (ord, &coord) in kernel.codomain_coords.iter().enumerate() {
        out.push_str(&format!(
            "# codomain {ord} {coord} {}\n",
            kernel.codomain.label(ord)
        ));
    }
    out
}

pub fn operator_from_text(text: &str) -> Result<FunctionKernel> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty operator file".into()))?;
    let dims: Vec<&str> = header.split(',').collect();
    if dims.len() != 3 || dims[0] != "dims" {
        return Err(Error::Parse(format!("bad operator header {header:?}")));
    }
    let rows: usize = parse_num(dims[1], "rows")?;
    let cols: usize = parse_num(dims[2], "cols")?;

    let mut entries = Vec::new();
    let mut kind = None;
    let mut in_labels = vec![None; cols];
    let mut out_labels = vec![None; rows];
    let mut domain: Vec<(usize, usize, String)> = Vec::new();
    let mut codomain: Vec<(usize, usize, String)> = Vec::new();

    for line in lines {
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix("# ") {
            let mut parts = comment.splitn(2, ' ');
            let tag = parts.next().unwrap_or_default();
            let rest = parts.next().unwrap_or_default();
            match tag {
                "kind" => {
                    kind = Some(KernelKind::parse(rest.trim()).ok_or_else(|| {
                        Error::Parse(format!("unknown kernel kind {rest:?}"))
                    })?);
                }
                "inlabel" | "outlabel" => {
                    let (coord, label) = split_index_label(rest)?;
                    let slot = if tag == "inlabel" {
                        in_labels.get_mut(coord)
                    } else {
                        out_labels.get_mut(coord)
                    };
                    *slot.ok_or_else(|| {
                        Error::Parse(format!("{tag} coordinate {coord} out of range"))
                    })? = Some(label);
                }
                "domain" | "codomain" => {
                    let (ord, rest2) = split_first_num(rest)?;
                    let (coord, label) = split_index_label(rest2)?;
                    if tag == "domain" {
                        domain.push((ord, coord, label));
                    } else {
                        codomain.push((ord, coord, label));
                    }
                }
                _ => return Err(Error::Parse(format!("unknown metadata line {line:?}"))),
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("bad entry line {line:?}")));
        }
        let r: usize = parse_num(fields[0], "row")?;
        let c: usize = parse_num(fields[1], "col")?;
        let re: f64 = fields[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad real part {:?}", fields[2])))?;
        let im: f64 = fields[3]
            .parse()
            .map_err(|_| Error::Parse(format!("bad imaginary part {:?}", fields[3])))?;
        entries.push((r, c, Complex64::new(re, im)));
    }

    let kind = kind.ok_or_else(|| Error::Parse("operator file missing '# kind'".into()))?;
    let input = Space::new("in", collect_labels(in_labels, "inlabel")?)?;
    let output = Space::new("out", collect_labels(out_labels, "outlabel")?)?;
    let operator = BasisMapOperator::from_entries(input, output, entries)?;

    let (domain_space, domain_coords) = ordered_space("domain", domain)?;
    let (codomain_space, codomain_coords) = ordered_space("codomain", codomain)?;
    Ok(FunctionKernel {
        kind,
        operator,
        domain: domain_space,
        codomain: codomain_space,
        domain_coords,
        codomain_coords,
    })
}

fn collect_labels(slots: Vec<Option<String>>, what: &str) -> Result<Vec<String>> {
    slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| Error::Parse(format!("missing {what} for coordinate {i}"))))
        .collect()
}

fn ordered_space(
    name: &str,
    mut items: Vec<(usize, usize, String)>,
) -> Result<(Arc<Space>, Vec<usize>)> {
    if items.is_empty() {
        return Err(Error::Parse(format!("operator file missing '# {name}' lines")));
    }
    items.sort_unstable_by_key(|&(ord, _, _)| ord);
    for (want, &(ord, _, _)) in items.iter().enumerate() {
        if ord != want {
            return Err(Error::Parse(format!("{name} ordinals must be 0..len, got {ord}")));
        }
    }
    let labels: Vec<String> = items.iter().map(|(_, _, l)| l.clone()).collect();
    let coords: Vec<usize> = items.iter().map(|&(_, c, _)| c).collect();
    Ok((Space::new(name, labels)?, coords))
}

fn parse_num(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn split_index_label(rest: &str) -> Result<(usize, String)> {
    let mut parts = rest.splitn(2, ' ');
    let idx = parse_num(parts.next().unwrap_or_default(), "coordinate")?;
    let label = parts
        .next()
        .ok_or_else(|| Error::Parse(format!("missing label in {rest:?}")))?;
    Ok((idx, label.to_string()))
}

fn split_first_num(rest: &str) -> Result<(usize, &str)> {
    let mut parts = rest.splitn(2, ' ');
    let idx = parse_num(parts.next().unwrap_or_default(), "ordinal")?;
    let tail = parts
        .next()
        .ok_or_else(|| Error::Parse(format!("truncated metadata {rest:?}")))?;
    Ok((idx, tail))
}

pub fn read_operator(path: impl AsRef<Path>) -> Result<FunctionKernel> {
    operator_from_text(&std::fs::read_to_string(path)?)
}

pub fn write_operator(path: impl AsRef<Path>, kernel: &FunctionKernel) -> Result<()> {
    Ok(std::fs::write(path, operator_to_text(kernel))?)
}

// ---------------------------------------------------------------------------
// Circuit artifacts (text)
// ---------------------------------------------------------------------------

/// A gate circuit with its layout and the value-grid labels needed to apply
/// it to named sets: `domain` labels one argument map (all arguments share
/// it), `codomain` labels the output map.
#[derive(Debug, Clone)]
pub struct CircuitArtifact {
    pub circuit: GateCircuit,
    pub layout: RegisterLayout,
    pub domain: Arc<Space>,
    pub codomain: Arc<Space>,
    pub args: usize,
}

impl CircuitArtifact {
    pub fn new(
        circuit: GateCircuit,
        layout: RegisterLayout,
        domain: Arc<Space>,
        codomain: Arc<Space>,
        args: usize,
    ) -> Result<Self> {
        if circuit.qubit_count() != layout.qubit_count() {
            return Err(Error::LengthMismatch(format!(
                "{} qubits vs layout over {}",
                circuit.qubit_count(),
                layout.qubit_count()
            )));
        }
        Ok(CircuitArtifact {
            circuit,
            layout,
            domain,
            codomain,
            args,
        })
    }
}

fn gate_to_line(gate: &Gate) -> String {
    match *gate {
        Gate::X { target } => format!("X {target}"),
        Gate::Cnot { control, target } => format!("CNOT {control} {target}"),
        Gate::Ccnot { c1, c2, target } => format!("CCNOT {c1} {c2} {target}"),
        Gate::Swap { a, b } => format!("SWAP {a} {b}"),
        Gate::Cswap { control, a, b } => format!("CSWAP {control} {a} {b}"),
    }
}

fn gate_from_line(line: &str) -> Result<Gate> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    let arg = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .ok_or_else(|| Error::Parse(format!("truncated gate line {line:?}")))
            .and_then(|s| parse_num(s, "qubit index"))
    };
    match parts.first().copied() {
        Some("X") => Ok(Gate::X { target: arg(1)? }),
        Some("CNOT") => Ok(Gate::Cnot {
            control: arg(1)?,
            target: arg(2)?,
        }),
        Some("CCNOT") => Ok(Gate::Ccnot {
            c1: arg(1)?,
            c2: arg(2)?,
            target: arg(3)?,
        }),
        Some("SWAP") => Ok(Gate::Swap {
            a: arg(1)?,
            b: arg(2)?,
        }),
        Some("CSWAP") => Ok(Gate::Cswap {
            control: arg(1)?,
            a: arg(2)?,
            b: arg(3)?,
        }),
        other => Err(Error::Parse(format!("unknown gate {other:?}"))),
    }
}

pub fn circuit_to_text(artifact: &CircuitArtifact) -> String {
    let mut out = String::new();
    out.push_str(&format!("qubits,{}\n", artifact.circuit.qubit_count()));
    for gate in artifact.circuit.gates() {
        out.push_str(&gate_to_line(gate));
        out.push('\n');
    }
    out.push_str(&format!("# args {}\n", artifact.args));
    for (ord, label) in artifact.domain.labels().iter().enumerate() {
        out.push_str(&format!("# domain {ord} {label}\n"));
    }
    for (ord, label) in artifact.codomain.labels().iter().enumerate() {
        out.push_str(&format!("# codomain {ord} {label}\n"));
    }
    let mut seen_inputs = 0usize;
    for (q, role) in artifact.layout.initial.iter().enumerate() {
        match role {
            InitialRole::InputMap { .. } => {
                let ordinal = seen_inputs % artifact.domain.dim();
                seen_inputs += 1;
                out.push_str(&format!(
                    "# role {q} input-map {}\n",
                    artifact.domain.label(ordinal)
                ));
            }
            InitialRole::AncillaZero => out.push_str(&format!("# role {q} ancilla-0\n")),
            InitialRole::AncillaOne => out.push_str(&format!("# role {q} ancilla-1\n")),
        }
    }
    for (q, role) in artifact.layout.fin.iter().enumerate() {
        match role {
            FinalRole::OutputMap { codomain } => out.push_str(&format!(
                "# role {q} output-map {}\n",
                artifact.codomain.label(*codomain)
            )),
            FinalRole::Garbage => out.push_str(&format!("# role {q} garbage\n")),
            FinalRole::Passthrough => out.push_str(&format!("# role {q} passthrough\n")),
        }
    }
    out
}

pub fn circuit_from_text(text: &str) -> Result<CircuitArtifact> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty circuit file".into()))?;
    let parts: Vec<&str> = header.split(',').collect();
    if parts.len() != 2 || parts[0] != "qubits" {
        return Err(Error::Parse(format!("bad circuit header {header:?}")));
    }
    let qubits: usize = parse_num(parts[1], "qubit count")?;
    let mut circuit = GateCircuit::new(qubits);

    let mut args = 1usize;
    let mut domain_labels: Option<Vec<String>> = None;
    let mut codomain_labels: Option<Vec<String>> = None;
    let mut initial = vec![None; qubits];
    let mut fin = vec![None; qubits];
    let mut output_label_by_qubit: Vec<(usize, String)> = Vec::new();

    for line in lines {
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix("# ") {
            let mut p = comment.splitn(2, ' ');
            let tag = p.next().unwrap_or_default();
            let rest = p.next().unwrap_or_default();
            match tag {
                "args" => args = parse_num(rest, "argument count")?,
                "domain" | "codomain" => {
                    let (ord, label) = split_index_label(rest)?;
                    let list = if tag == "domain" {
                        &mut domain_labels
                    } else {
                        &mut codomain_labels
                    };
                    let list = list.get_or_insert_with(Vec::new);
                    if ord != list.len() {
                        return Err(Error::Parse(format!(
                            "{tag} ordinals must arrive in order, got {ord}"
                        )));
                    }
                    list.push(label);
                }
                "role" => {
                    let (q, rest2) = split_first_num(rest)?;
                    if q >= qubits {
                        return Err(Error::Parse(format!("role qubit {q} out of range")));
                    }
                    let mut rp = rest2.splitn(2, ' ');
                    let role = rp.next().unwrap_or_default();
                    let label = rp.next();
                    match role {
                        "input-map" => initial[q] = Some(InitialRole::InputMap { arg: 0 }),
                        "ancilla-0" => initial[q] = Some(InitialRole::AncillaZero),
                        "ancilla-1" => initial[q] = Some(InitialRole::AncillaOne),
                        "garbage" => fin[q] = Some(FinalRole::Garbage),
                        "passthrough" => fin[q] = Some(FinalRole::Passthrough),
                        "output-map" => {
                            let label = label.ok_or_else(|| {
                                Error::Parse(format!("output-map line for qubit {q} needs a label"))
                            })?;
                            output_label_by_qubit.push((q, label.to_string()));
                            fin[q] = Some(FinalRole::OutputMap { codomain: 0 });
                        }
                        other => return Err(Error::Parse(format!("unknown role {other:?}"))),
                    }
                }
                other => return Err(Error::Parse(format!("unknown metadata tag {other:?}"))),
            }
            continue;
        }
        circuit.push(gate_from_line(line)?)?;
    }

    let domain_labels =
        domain_labels.ok_or_else(|| Error::Parse("circuit file missing domain space".into()))?;
    let codomain_labels = codomain_labels
        .ok_or_else(|| Error::Parse("circuit file missing codomain space".into()))?;
    let domain = Space::new("domain", domain_labels)?;
    let codomain = Space::new("codomain", codomain_labels)?;

    let mut initial: Vec<InitialRole> = initial
        .into_iter()
        .enumerate()
        .map(|(q, r)| r.ok_or_else(|| Error::Parse(format!("qubit {q} missing initial role"))))
        .collect::<Result<_>>()?;
    let mut fin: Vec<FinalRole> = fin
        .into_iter()
        .enumerate()
        .map(|(q, r)| r.ok_or_else(|| Error::Parse(format!("qubit {q} missing final role"))))
        .collect::<Result<_>>()?;

    // Argument index of input-map qubits: consecutive equal blocks in order.
    let input_qubits: Vec<usize> = initial
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r, InitialRole::InputMap { .. }))
        .map(|(q, _)| q)
        .collect();
    if args == 0 || input_qubits.len() % args != 0 {
        return Err(Error::Parse(format!(
            "{} input-map qubits cannot split into {args} arguments",
            input_qubits.len()
        )));
    }
    let per_arg = input_qubits.len() / args;
    for (k, &q) in input_qubits.iter().enumerate() {
        initial[q] = InitialRole::InputMap { arg: k / per_arg };
    }
    // Codomain ordinals of output-map qubits come from their labels.
    for (q, label) in output_label_by_qubit {
        let ordinal = codomain.require(&label)?;
        fin[q] = FinalRole::OutputMap { codomain: ordinal };
    }

    let layout = RegisterLayout::new(initial, fin)?;
    CircuitArtifact::new(circuit, layout, domain, codomain, args)
}

pub fn read_circuit(path: impl AsRef<Path>) -> Result<CircuitArtifact> {
    circuit_from_text(&std::fs::read_to_string(path)?)
}

pub fn write_circuit(path: impl AsRef<Path>, artifact: &CircuitArtifact) -> Result<()> {
    Ok(std::fs::write(path, circuit_to_text(artifact))?)
}

// ---------------------------------------------------------------------------
// Plan manifests (text)
// ---------------------------------------------------------------------------

pub fn plan_to_text(plan: &InnerProductPlan) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "inner-product-plan N={} n={}\n",
        plan.terms,
        plan.grid.len()
    ));
    out.push_str(&format!("leading-order-qubits {}\n", plan.leading_order_qubits));
    out.push_str(&format!("itemized-qubits {}\n", plan.itemized_qubits));
    for stage in &plan.stages {
        out.push_str(&format!(
            "stage {} {} {} {}\n",
            stage.index,
            stage.op.name(),
            stage.inputs[0],
            stage.inputs[1]
        ));
    }
    out
}
