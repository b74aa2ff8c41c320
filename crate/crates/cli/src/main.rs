//! `topoq` — compile finite function tables into unitary basis-map
//! operators or reversible qubit-map circuits, apply them to sets, and
//! verify the results.
//!
//! Exit codes: 0 success, 1 usage, 2 validation, 3 numerical-check failure.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use topoq_core::io::{self, format_f64, CircuitArtifact, SetFile, SetMembers};
use topoq_core::sim::index_to_bits;
use topoq_core::*;

mod report;

use report::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "topoq", version, about = "Topographic-map compiler and simulator", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompileKind {
    Bijection,
    Injection,
    Surjection,
    Arbitrary,
    QubitUnary,
    QubitBinary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Csv,
    Gates,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a function table into an operator or circuit artifact.
    Compile {
        #[arg(long, value_enum)]
        kind: CompileKind,
        /// Function table (JSON).
        #[arg(long = "fn")]
        table: PathBuf,
        /// Artifact file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply an operator or circuit artifact to an input set.
    Apply {
        /// Operator or circuit artifact.
        #[arg(long)]
        op: PathBuf,
        /// Set file (JSON).
        #[arg(long)]
        input: PathBuf,
    },
    /// Re-check an artifact: unitarity for operators, reversibility for circuits.
    Verify {
        #[arg(long)]
        op: PathBuf,
    },
    /// Print injectivity/surjectivity statistics and per-kind size formulas.
    Stats {
        #[arg(long = "fn")]
        table: PathBuf,
    },
    /// Route a token through a demultiplexer and print the resulting map.
    Demux {
        /// Address width in qubits.
        #[arg(long)]
        bits: usize,
        /// Address to route.
        #[arg(long)]
        k: usize,
        /// Optional circuit artifact to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the qubit budget of one network layer.
    Estimate {
        /// M N n: neurons, inputs per neuron, grid points.
        #[arg(long, num_args = 3, value_names = ["M", "N", "GRID"])]
        layer: Vec<u64>,
    },
    /// Re-emit an artifact in a pinned format.
    Export {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version requests are successes, everything else is usage
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Compile { kind, table, out } => compile(kind, &table, &out),
        Command::Apply { op, input } => apply(&op, &input),
        Command::Verify { op } => verify(&op),
        Command::Stats { table } => stats(&table),
        Command::Demux { bits, k, out } => demux(bits, k, out.as_deref()),
        Command::Estimate { layer } => estimate(&layer),
        Command::Export { op, format, out } => export(&op, format, out.as_deref()),
    }
}

fn compile(kind: CompileKind, table: &std::path::Path, out: &std::path::Path) -> CliResult<()> {
    let f = io::read_function(table)?;
    match kind {
        CompileKind::Bijection | CompileKind::Injection | CompileKind::Surjection | CompileKind::Arbitrary => {
            let k = match kind {
                CompileKind::Bijection => KernelKind::Bijection,
                CompileKind::Injection => KernelKind::Injection,
                CompileKind::Surjection => KernelKind::Surjection,
                _ => KernelKind::Arbitrary,
            };
            let kernel = kernels::compile(k, &f)?;
            let residual = kernel.operator.unitarity_residual()?;
            io::write_operator(out, &kernel)?;
            println!("kind {}", k.name());
            println!("dims {} {}", kernel.operator.rows(), kernel.operator.cols());
            println!("unitarity-residual {}", format_f64(residual));
            println!("wrote {}", out.display());
            if residual > UNITARY_TOL {
                return Err(CliError::numerical(format!(
                    "unitarity residual {residual:e} exceeds {UNITARY_TOL:e}"
                )));
            }
            Ok(())
        }
        CompileKind::QubitUnary => {
            let (circuit, layout) = unary_map_circuit(&f)?;
            let artifact = CircuitArtifact::new(
                circuit,
                layout,
                f.domain().clone(),
                f.codomain().clone(),
                1,
            )?;
            io::write_circuit(out, &artifact)?;
            print_circuit_summary("qubit-unary", &artifact);
            println!("wrote {}", out.display());
            Ok(())
        }
        CompileKind::QubitBinary => {
            let grid = f.codomain().clone();
            let binary = BinaryFunction::new(grid, f)?;
            let (circuit, layout) = binary_map_circuit(&binary)?;
            let artifact = CircuitArtifact::new(
                circuit,
                layout,
                binary.grid().clone(),
                binary.grid().clone(),
                2,
            )?;
            io::write_circuit(out, &artifact)?;
            print_circuit_summary("qubit-binary", &artifact);
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

fn print_circuit_summary(kind: &str, artifact: &CircuitArtifact) {
    println!("kind {kind}");
    println!("qubits {}", artifact.circuit.qubit_count());
    println!("gates {}", artifact.circuit.gate_count());
    println!("inputs {}", artifact.layout.input_count());
    println!("ancilla-0 {}", artifact.layout.ancilla_zero_count());
    println!("ancilla-1 {}", artifact.layout.ancilla_one_count());
    println!("outputs {}", artifact.layout.output_count());
    println!("garbage {}", artifact.layout.garbage_count());
    println!("passthrough {}", artifact.layout.passthrough_count());
}

/// What kind of artifact a file holds, judged by its header line.
enum Artifact {
    Operator(FunctionKernel),
    Circuit(CircuitArtifact),
}

fn read_artifact(path: &std::path::Path) -> CliResult<Artifact> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    if text.starts_with("dims,") {
        Ok(Artifact::Operator(io::operator_from_text(&text)?))
    } else if text.starts_with("qubits,") {
        Ok(Artifact::Circuit(io::circuit_from_text(&text)?))
    } else {
        Err(CliError::validation(format!(
            "{} is neither an operator nor a circuit artifact",
            path.display()
        )))
    }
}

fn members_to_ordinals(space: &Space, labels: &[String]) -> CliResult<BTreeSet<usize>> {
    labels
        .iter()
        .map(|l| space.require(l).map_err(CliError::from))
        .collect()
}

fn check_set_space(file_space: &[String], space: &Space) -> CliResult<()> {
    if file_space != space.labels() {
        return Err(CliError::validation(format!(
            "input set space {:?} does not match the artifact's value space {:?}",
            file_space,
            space.labels()
        )));
    }
    Ok(())
}

fn apply(op: &std::path::Path, input: &std::path::Path) -> CliResult<()> {
    let set: SetFile = io::read_set(input)?;
    match read_artifact(op)? {
        Artifact::Operator(kernel) => {
            let members = match &set.members {
                SetMembers::Unary(m) => m,
                SetMembers::Binary(..) => {
                    return Err(CliError::validation(
                        "operator artifacts take a single member list".into(),
                    ))
                }
            };
            check_set_space(&set.space, &kernel.domain)?;
            let members = members_to_ordinals(&kernel.domain, members)?;
            let image = kernel.apply_set(&members)?;
            let out_space = kernel.operator.output_space();
            for (coord, amp) in image.output.amplitudes().iter().enumerate() {
                if amp.norm() > 0.0 {
                    println!(
                        "amplitude {} {} {}",
                        out_space.label(coord),
                        format_f64(amp.re),
                        format_f64(amp.im)
                    );
                }
            }
            println!("set {}", format_set(&kernel.codomain, &image.image));
            println!("garbage-norm {}", format_f64(image.garbage_norm));
            Ok(())
        }
        Artifact::Circuit(artifact) => {
            check_set_space(&set.space, &artifact.domain)?;
            let arg_sets: Vec<Vec<String>> = match (&set.members, artifact.args) {
                (SetMembers::Unary(m), 1) => vec![m.clone()],
                (SetMembers::Binary(a, b), 2) => vec![a.clone(), b.clone()],
                (members, args) => {
                    return Err(CliError::validation(format!(
                        "circuit takes {args} argument map(s), set file provides {}",
                        match members {
                            SetMembers::Unary(_) => 1,
                            SetMembers::Binary(..) => 2,
                        }
                    )))
                }
            };
            let n = artifact.domain.dim();
            let mut maps: Vec<Vec<bool>> = Vec::new();
            for labels in &arg_sets {
                let ordinals = members_to_ordinals(&artifact.domain, labels)?;
                maps.push((0..n).map(|j| ordinals.contains(&j)).collect());
            }
            let map_refs: Vec<&[bool]> = maps.iter().map(|m| m.as_slice()).collect();
            let bits = artifact.layout.initial_bits(&map_refs)?;
            let out = simulate_basis(&artifact.circuit, &bits)?;
            let mut by_codomain = artifact.layout.output_qubits();
            by_codomain.sort_unstable_by_key(|&(_, c)| c);
            for (q, codomain) in by_codomain {
                println!(
                    "output {} {}",
                    artifact.codomain.label(codomain),
                    u8::from(out[q])
                );
            }
            let image = artifact.layout.read_output_set(&out)?;
            println!("set {}", format_set(&artifact.codomain, &image));
            let garbage: String = artifact
                .layout
                .fin
                .iter()
                .enumerate()
                .filter(|(_, r)| matches!(r, FinalRole::Garbage))
                .map(|(q, _)| if out[q] { '1' } else { '0' })
                .collect();
            println!("garbage-bits {garbage}");
            Ok(())
        }
    }
}

fn format_set(space: &Space, members: &BTreeSet<usize>) -> String {
    let labels: Vec<&str> = members.iter().map(|&i| space.label(i)).collect();
    format!("{{{}}}", labels.join(","))
}

fn verify(op: &std::path::Path) -> CliResult<()> {
    match read_artifact(op)? {
        Artifact::Operator(kernel) => {
            let residual = kernel.operator.unitarity_residual()?;
            println!("kind {}", kernel.kind.name());
            println!("dims {} {}", kernel.operator.rows(), kernel.operator.cols());
            println!("unitarity-residual {}", format_f64(residual));
            if residual > UNITARY_TOL {
                println!("verify FAIL");
                return Err(CliError::numerical(format!(
                    "unitarity residual {residual:e} exceeds {UNITARY_TOL:e}"
                )));
            }
            println!("verify PASS");
            Ok(())
        }
        Artifact::Circuit(artifact) => {
            let circuit = &artifact.circuit;
            let q = circuit.qubit_count();
            let inverse = circuit.inverted();
            let cases: Vec<Vec<bool>> = if q <= 12 {
                (0..1usize << q).map(|i| index_to_bits(i, q)).collect()
            } else {
                // deterministic spread of probe patterns
                (0..1000usize)
                    .map(|i| (0..q).map(|b| (i * 2654435761 + b * 40503) % 3 == 0).collect())
                    .collect()
            };
            let count = cases.len();
            for bits in cases {
                let forward = simulate_basis(circuit, &bits)?;
                let back = simulate_basis(&inverse, &forward)?;
                if back != bits {
                    println!("verify FAIL");
                    return Err(CliError::numerical(
                        "inverse replay failed to restore an input".into(),
                    ));
                }
            }
            println!("qubits {q}");
            println!("reversibility-checked {count}");
            println!("verify PASS");
            Ok(())
        }
    }
}

fn stats(table: &std::path::Path) -> CliResult<()> {
    let f = io::read_function(table)?;
    let s = f.stats();
    println!("n {}", s.n);
    println!("m {}", s.m);
    println!("image-size {}", s.m_r);
    println!("m_nr {}", s.m_nr);
    println!("n_b {}", s.n_b);
    println!("n_n {}", s.n_n);
    println!("m_n {}", s.m_n);
    for (i, &count) in s.multiplicities.iter().enumerate() {
        println!("multiplicity {} {}", f.codomain().label(i), count);
    }
    let available = |ok: bool, value: usize, unit: &str, why: &str| -> String {
        if ok {
            format!("{unit} {value}")
        } else {
            format!("unavailable ({why})")
        }
    };
    println!(
        "compile bijection {}",
        available(f.is_bijective(), s.n, "dim", "not a bijection")
    );
    println!(
        "compile injection {}",
        available(
            f.is_injective() && s.n < s.m,
            s.n * s.m,
            "dim",
            "not a non-surjective injection"
        )
    );
    println!(
        "compile surjection {}",
        available(f.is_surjective(), s.n, "dim", "not surjective")
    );
    println!("compile arbitrary dim {}", (s.m + 1) * (s.n + 1));
    println!(
        "compile qubit-unary {}",
        available(
            s.n == s.m,
            2 * s.n_n + s.n_b + s.m_nr - s.m_n,
            "qubits",
            "domain and codomain sizes differ"
        )
    );
    println!(
        "compile qubit-binary {}",
        available(
            s.n == s.m * s.m,
            2 * s.m * s.m + s.m + 2 * s.m_nr,
            "qubits",
            "domain is not the codomain grid squared"
        )
    );
    Ok(())
}

fn demux(bits: usize, k: usize, out: Option<&std::path::Path>) -> CliResult<()> {
    let (circuit, layout) = demux_circuit(bits)?;
    let n = 1usize << bits;
    if k >= n {
        return Err(CliError::validation(format!(
            "address {k} needs more than {bits} bits"
        )));
    }
    let address: Vec<bool> = (0..bits).map(|b| k >> (bits - 1 - b) & 1 == 1).collect();
    let init = layout.initial_bits(&[address.as_slice()])?;
    let outbits = simulate_basis(&circuit, &init)?;
    let register: String = outbits[..bits].iter().map(|&b| if b { '1' } else { '0' }).collect();
    let map: String = outbits[bits..].iter().map(|&b| if b { '1' } else { '0' }).collect();
    println!("bits {bits}");
    println!("k {k}");
    println!("register {register}");
    println!("map {map}");
    if let Some(path) = out {
        let artifact = CircuitArtifact::new(
            circuit,
            layout,
            Space::indexed("address", bits),
            Space::indexed("position", n),
            1,
        )?;
        io::write_circuit(path, &artifact)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn estimate(layer: &[u64]) -> CliResult<()> {
    let [m, n, grid]: [u64; 3] = layer
        .try_into()
        .map_err(|_| CliError::validation("estimate needs --layer M N n".into()))?;
    if m < 1 || n < 1 || grid < 1 {
        return Err(CliError::validation("layer counts must be at least 1".into()));
    }
    let e = estimate_layer(m, n, grid);
    println!("M {}", e.neurons);
    println!("N {}", e.inputs);
    println!("n {}", e.grid);
    println!("multiply-qubits {}", e.multiply_qubits);
    println!("add-qubits {}", e.add_qubits);
    println!("copy-ancillae {}", e.copy_ancillae);
    println!("total {}", e.total);
    Ok(())
}

fn export(op: &std::path::Path, format: ExportFormat, out: Option<&std::path::Path>) -> CliResult<()> {
    let text = match (read_artifact(op)?, format) {
        (Artifact::Operator(kernel), ExportFormat::Csv) => io::operator_to_text(&kernel),
        (Artifact::Circuit(artifact), ExportFormat::Gates) => io::circuit_to_text(&artifact),
        (Artifact::Operator(_), ExportFormat::Gates) => {
            return Err(CliError::validation(
                "gates format applies to circuit artifacts, this is an operator".into(),
            ))
        }
        (Artifact::Circuit(_), ExportFormat::Csv) => {
            return Err(CliError::validation(
                "csv format applies to operator artifacts, this is a circuit".into(),
            ))
        }
    };
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(Error::from)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}
