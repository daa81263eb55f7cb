//! `dk`: command-line front end for the spinor-substructure library —
//! decomposition, identity verification, sector construction, plane-wave
//! dynamics, and Lorentz covariance checks, all reporting deterministic JSON.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use dirac_kahler as dk;
use dk::{ComplexScalar, PairCaseLabel, PairCaseParams, PlaneWaveField, SectorLabel, Spinor4};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser)]
#[command(
    name = "dk",
    version,
    about = "Spinor-pair decomposition into tensor multiplets, with identity, sector, covariance, and field-equation verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose one, two, or four spinors into the 16-component multiplet.
    Decompose {
        /// JSON file: a spinor, a pair, or a quad of spinors.
        #[arg(long)]
        input: PathBuf,
        /// Upper-block constant for the partner built from single-spinor input.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        mu: Option<ComplexScalar>,
        /// Lower-block constant for the partner built from single-spinor input.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        nu: Option<ComplexScalar>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded identity suite over random pairs and quads.
    Verify {
        /// RNG seed; identical seeds give byte-identical reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeded samples (at least 1).
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
        /// Base tolerance applied at unit component scale.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build, classify, or evaluate single-boson sector quads.
    Sector {
        #[command(subcommand)]
        action: SectorAction,
    },
    /// Evaluate the plane-wave field equations for a branch pair.
    Dynamics {
        /// Spatial 3-momentum px,py,pz (energy completes the mass shell).
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, default_value = "0,0,0")]
        momentum: [f64; 3],
        /// Fermion mass M > 0.
        #[arg(long, value_parser = parse_positive, allow_hyphen_values = true)]
        mass: f64,
        /// Dirac branch indices for the two factors, e.g. 0,1.
        #[arg(long, value_parser = parse_branches, default_value = "0,0")]
        branches: [usize; 2],
        /// Boson mass in the equations (defaults to the consistent 2M).
        #[arg(long, allow_hyphen_values = true)]
        boson_mass: Option<f64>,
        /// Linear-system residual threshold (nonlinear uses 10x this).
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check covariance of the decomposition under sampled Lorentz elements.
    LorentzCheck {
        /// RNG seed for the sampled spinor pairs and group elements.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled pairs (at least 1).
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
        /// Rapidity bound for sampled boosts (or the exact rapidity with --axis).
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        rapidity: f64,
        /// Rotation-angle bound in radians (or the exact angle with --axis).
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        angle: f64,
        /// Unit axis x,y,z; when given, one fixed element is tested.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        axis: Option<[f64; 3]>,
        /// Covariance residual threshold.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SectorAction {
    /// Solve the sector's bilinear constraints from a seeded start.
    Build {
        /// Sector label: scalar, pseudoscalar, vector, or pseudovector.
        #[arg(long)]
        sector: String,
        /// RNG seed for the free components of the constructed quad.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual threshold for the built quad's own check.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Identify which sector a quad of spinors lies in.
    Classify {
        /// JSON file holding exactly four spinors.
        #[arg(long)]
        input: PathBuf,
        /// Residual threshold scaled by the squared component magnitude.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate one sector's constraint residuals on a quad.
    Residuals {
        /// JSON file holding exactly four spinors.
        #[arg(long)]
        input: PathBuf,
        /// Sector label: scalar, pseudoscalar, vector, or pseudovector.
        #[arg(long)]
        sector: String,
        /// Residual threshold scaled by the squared component magnitude.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_complex(s: &str) -> Result<ComplexScalar, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("bad number {x:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(ComplexScalar::new(parse(re)?, 0.0)),
        [re, im] => Ok(ComplexScalar::new(parse(re)?, parse(im)?)),
        _ => Err("expected re or re,im".to_string()),
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated numbers".to_string());
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number {part:?}: {e}"))?;
    }
    Ok(out)
}

fn parse_branches(s: &str) -> Result<[usize; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected two comma-separated branch indices".to_string());
    }
    let mut out = [0usize; 2];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("bad branch {part:?}: {e}"))?;
        if *slot > 1 {
            return Err(format!("branch index must be 0 or 1, got {slot}"));
        }
    }
    Ok(out)
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let value = s
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad number {s:?}: {e}"))?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(format!("must be positive, got {value}"))
    }
}

fn complex_json(z: ComplexScalar) -> Value {
    json!([z.re + 0.0, z.im + 0.0])
}

fn verdict_str(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn component_order() -> Value {
    json!({
        "groups": ["scalar", "pseudoscalar", "vector", "pseudovector", "tensor"],
        "tensor_index_pairs": dk::TENSOR_INDEX_PAIRS,
    })
}

fn emit(output: &Option<PathBuf>, report: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| usage(format!("cannot serialize report: {e}")))?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum SpinorInput {
    Single(Spinor4),
    Pair(Spinor4, Spinor4),
    Quad([Spinor4; 4]),
}

fn read_spinor_file(path: &PathBuf) -> Result<SpinorInput, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| usage(format!("invalid JSON in {}: {e}", path.display())))?;
    let arr = value
        .as_array()
        .ok_or_else(|| usage("input must be a JSON array"))?;

    // A bare spinor is four [re, im] pairs; collections nest one level deeper.
    let is_component = |v: &Value| {
        v.as_array()
            .is_some_and(|xs| xs.len() == 2 && xs.iter().all(Value::is_number))
    };
    if arr.len() == 4 && arr.iter().all(is_component) {
        let spinor = serde_json::from_value(value.clone())
            .map_err(|e| usage(format!("invalid spinor: {e}")))?;
        return Ok(SpinorInput::Single(spinor));
    }

    let spinors: Vec<Spinor4> = arr
        .iter()
        .map(|v| serde_json::from_value(v.clone()))
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("invalid spinor entry: {e}")))?;
    match spinors.as_slice() {
        [s] => Ok(SpinorInput::Single(*s)),
        [a, b] => Ok(SpinorInput::Pair(*a, *b)),
        [a, b, c, d] => Ok(SpinorInput::Quad([*a, *b, *c, *d])),
        other => Err(usage(format!(
            "input must hold one, two, or four spinors, found {}",
            other.len()
        ))),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Decompose {
            input,
            mu,
            nu,
            output,
        } => cmd_decompose(&input, mu, nu, &output),
        Command::Verify {
            seed,
            samples,
            tol,
            output,
        } => cmd_verify(seed, samples, tol, &output),
        Command::Sector { action } => match action {
            SectorAction::Build {
                sector,
                seed,
                tol,
                output,
            } => cmd_sector_build(&sector, seed, tol, &output),
            SectorAction::Classify { input, tol, output } => {
                cmd_sector_classify(&input, tol, &output)
            }
            SectorAction::Residuals {
                input,
                sector,
                tol,
                output,
            } => cmd_sector_residuals(&input, &sector, tol, &output),
        },
        Command::Dynamics {
            momentum,
            mass,
            branches,
            boson_mass,
            tol,
            output,
        } => cmd_dynamics(momentum, mass, branches, boson_mass, tol, &output),
        Command::LorentzCheck {
            seed,
            samples,
            rapidity,
            angle,
            axis,
            tol,
            output,
        } => cmd_lorentz_check(seed, samples, rapidity, angle, axis, tol, &output),
    }
}

fn cmd_decompose(
    input: &PathBuf,
    mu: Option<ComplexScalar>,
    nu: Option<ComplexScalar>,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let parsed = read_spinor_file(input)?;
    let report = match parsed {
        SpinorInput::Single(base) => {
            let (mu, nu) = match (mu, nu) {
                (Some(mu), Some(nu)) => (mu, nu),
                _ => {
                    return Err(usage(
                        "single-spinor input needs both --mu and --nu to build the partner",
                    ))
                }
            };
            let params = PairCaseParams { base, mu, nu };
            let (phi, psi) =
                dk::pair_case_build(PairCaseLabel::ScalarPseudoscalarZero, &params)
                    .map_err(|e| usage(format!("cannot build the blockwise partner: {e}")))?;
            let t = dk::decompose_pair(&phi, &psi);
            json!({
                "input_kind": "blockwise_pair",
                "mu": complex_json(mu),
                "nu": complex_json(nu),
                "pair": [phi, psi],
                "tensor": t,
                "component_order": component_order(),
                "identity_reports": [
                    dk::residual_orthogonality(&t),
                    dk::residual_fierz(&t),
                    dk::residual_isotropy(&t, mu, nu, &phi),
                ],
            })
        }
        SpinorInput::Pair(phi, psi) => {
            if mu.is_some() || nu.is_some() {
                return Err(usage("--mu/--nu only apply to single-spinor input"));
            }
            let t = dk::decompose_pair(&phi, &psi);
            json!({
                "input_kind": "pair",
                "tensor": t,
                "component_order": component_order(),
                "identity_reports": [
                    dk::residual_orthogonality(&t),
                    dk::residual_fierz(&t),
                ],
            })
        }
        SpinorInput::Quad([a, b, p, q]) => {
            if mu.is_some() || nu.is_some() {
                return Err(usage("--mu/--nu only apply to single-spinor input"));
            }
            let t = dk::decompose_quad(&a, &b, &p, &q);
            let pairwise = dk::decompose_pair(&a, &b) + dk::decompose_pair(&p, &q);
            let additivity_defect = (t - pairwise).max_abs();
            json!({
                "input_kind": "quad",
                "tensor": t,
                "component_order": component_order(),
                "additivity_defect": additivity_defect,
                "identity_reports": [
                    dk::residual_orthogonality(&t),
                    dk::residual_fierz(&t),
                ],
            })
        }
    };
    emit(output, &report)
}

fn cmd_verify(seed: u64, samples: u32, tol: f64, output: &Option<PathBuf>) -> Result<(), CliError> {
    const MAX_ECHOED_FAILURES: usize = 25;
    const REFUTATION_FLOOR: f64 = 1e-3;
    let mut failures: Vec<Value> = Vec::new();
    let mut totals: std::collections::BTreeMap<&str, (u64, u64)> = Default::default();
    let mut record =
        |name: &'static str,
         passed: bool,
         failures: &mut Vec<Value>,
         detail: &dyn Fn() -> Value| {
            let entry = totals.entry(name).or_insert((0, 0));
            entry.0 += 1;
            if !passed {
                entry.1 += 1;
                if failures.len() < MAX_ECHOED_FAILURES {
                    failures.push(detail());
                }
            }
        };

    let mut pair_tensors = Vec::with_capacity(samples as usize);
    let mut quad_tensors = Vec::with_capacity(samples as usize);
    let mut refuted: u32 = 0;

    for k in 0..samples {
        let sample_seed = seed.wrapping_add(u64::from(k));
        let mut rng = dk::rng_from_seed(sample_seed);
        let phi = dk::random_spinor(&mut rng);
        let psi = dk::random_spinor(&mut rng);

        for scale in [1e-3, 1.0, 1e3] {
            let scaled = phi.scaled(ComplexScalar::new(scale, 0.0));
            let t = dk::decompose_pair(&scaled, &psi);
            let checks = [
                ("orthogonality", dk::residual_orthogonality(&t)),
                ("fierz", dk::residual_fierz(&t)),
                (
                    "pair_ansatz_parameters",
                    dk::residual_quad_ansatz(
                        &t,
                        ComplexScalar::new(-1.0, 0.0),
                        ComplexScalar::new(1.0, 0.0),
                        ComplexScalar::new(0.0, 0.0),
                        ComplexScalar::new(0.0, 0.0),
                    ),
                ),
            ];
            for (name, rep) in checks {
                let threshold =
                    (rep.tolerance * (tol / dk::IDENTITY_BASE_TOL)).max(f64::MIN_POSITIVE);
                let passed = rep.max_residual < threshold;
                record(name, passed, &mut failures, &|| {
                    json!({
                        "check": name,
                        "seed": sample_seed,
                        "scale": scale,
                        "max_residual": rep.max_residual,
                        "threshold": threshold,
                        "inputs": [scaled, psi],
                    })
                });
            }
            if scale == 1.0 {
                pair_tensors.push(t);
            }
        }

        // Blockwise-scaled family: vector/pseudovector mixing and isotropy.
        let params = PairCaseParams {
            base: dk::random_spinor(&mut rng),
            mu: dk::random_complex(&mut rng),
            nu: dk::random_complex(&mut rng),
        };
        match dk::pair_case_build(PairCaseLabel::ScalarPseudoscalarZero, &params) {
            Ok((bphi, bpsi)) => {
                let t = dk::decompose_pair(&bphi, &bpsi);
                let i = ComplexScalar::new(0.0, 1.0);
                let mixing = (0..4)
                    .map(|a| {
                        ((params.nu - params.mu) * t.vector[a]
                            - i * (params.nu + params.mu) * t.pseudovector[a])
                            .norm()
                    })
                    .fold(0.0, f64::max);
                let mixing_threshold = (tol
                    * t.max_abs()
                    * (params.mu.norm() + params.nu.norm()))
                .max(f64::MIN_POSITIVE);
                record(
                    "blockwise_mixing",
                    mixing < mixing_threshold,
                    &mut failures,
                    &|| {
                        json!({
                            "check": "blockwise_mixing",
                            "seed": sample_seed,
                            "max_residual": mixing,
                            "threshold": mixing_threshold,
                            "inputs": [bphi, bpsi],
                        })
                    },
                );
                let iso = dk::residual_isotropy(&t, params.mu, params.nu, &bphi);
                let iso_threshold =
                    (iso.tolerance * (tol / dk::IDENTITY_BASE_TOL)).max(f64::MIN_POSITIVE);
                record(
                    "isotropy",
                    iso.max_residual < iso_threshold,
                    &mut failures,
                    &|| {
                        json!({
                            "check": "isotropy",
                            "seed": sample_seed,
                            "max_residual": iso.max_residual,
                            "threshold": iso_threshold,
                            "inputs": [bphi, bpsi],
                        })
                    },
                );
            }
            Err(e) => {
                record("blockwise_mixing", false, &mut failures, &|| {
                    json!({
                        "check": "blockwise_mixing",
                        "seed": sample_seed,
                        "error": e.to_string(),
                    })
                });
            }
        }

        // Sums of two pairs must escape the pair-parameter ansatz pointwise.
        let t4 = dk::decompose_quad(
            &dk::random_spinor(&mut rng),
            &dk::random_spinor(&mut rng),
            &dk::random_spinor(&mut rng),
            &dk::random_spinor(&mut rng),
        );
        let quad_res = dk::residual_quad_ansatz(
            &t4,
            ComplexScalar::new(-1.0, 0.0),
            ComplexScalar::new(1.0, 0.0),
            ComplexScalar::new(0.0, 0.0),
            ComplexScalar::new(0.0, 0.0),
        );
        if quad_res.max_residual > REFUTATION_FLOOR {
            refuted += 1;
        }
        quad_tensors.push(t4);
    }

    let refutation_ok = u64::from(refuted) * 100 >= u64::from(samples) * 99;

    let fit_pairs = dk::fit_quad_ansatz(&pair_tensors);
    let fit_recovers = (fit_pairs.alpha + ComplexScalar::new(1.0, 0.0)).norm() < 1e-6
        && (fit_pairs.beta - ComplexScalar::new(1.0, 0.0)).norm() < 1e-6
        && fit_pairs.rho.norm() < 1e-6
        && fit_pairs.sigma.norm() < 1e-6
        && fit_pairs.rms_residual < tol.max(1e-14);

    let fit_quads = dk::fit_quad_ansatz(&quad_tensors);
    let floor_ok = fit_quads.rms_residual > REFUTATION_FLOOR;

    let identity_failures: u64 = totals.values().map(|(_, f)| *f).sum();
    let pass = identity_failures == 0 && refutation_ok && fit_recovers && floor_ok;

    let checks_json: Value = totals
        .iter()
        .map(|(name, (evaluations, fails))| {
            (
                name.to_string(),
                json!({"evaluations": evaluations, "failures": fails}),
            )
        })
        .collect::<serde_json::Map<String, Value>>()
        .into();

    let mut report = json!({
        "seed": seed,
        "samples": samples,
        "tolerance": tol,
        "component_order": component_order(),
        "checks": checks_json,
        "failures": failures,
        "quad_refutation": {
            "refuted": refuted,
            "total": samples,
            "floor": REFUTATION_FLOOR,
            "passed": refutation_ok,
        },
        "ansatz_fit": {
            "on_pairs": fit_pairs,
            "on_pairs_recovers_expected_parameters": fit_recovers,
            "on_quads": fit_quads,
            "on_quads_rms_above_floor": floor_ok,
        },
        "verdict": verdict_str(pass),
    });
    if !pass && tol < 1e-14 {
        report.as_object_mut().unwrap().insert(
            "guidance".to_string(),
            json!(format!(
                "tolerance {tol:e} sits below the floating-point rounding floor; \
                 residuals of exactly-satisfied identities land near 1e-16 at unit \
                 scale, so thresholds under ~1e-14 fail spuriously. Rerun with \
                 --tol 1e-12 or looser."
            )),
        );
    }
    emit(output, &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{identity_failures} identity check(s) failed; see the failures list in the report"
        )))
    }
}

fn parse_sector_label(s: &str) -> Result<SectorLabel, CliError> {
    SectorLabel::from_str(s).map_err(|e| usage(format!("unknown sector {s:?}: {e}")))
}

fn cmd_sector_build(
    sector: &str,
    seed: u64,
    tol: f64,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let label = parse_sector_label(sector)?;
    let spec = dk::sector_spec(label);
    let quad = dk::sector_build(label, seed)
        .map_err(|e| CliError::Verification(format!("sector construction failed: {e}")))?;
    let [phi, psi, phi_p, psi_p] = &quad;
    let residuals: Vec<f64> = dk::sector_residuals(phi, psi, phi_p, psi_p, &spec)
        .iter()
        .map(|z| z.norm())
        .collect();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let t = dk::decompose_quad(phi, psi, phi_p, psi_p);
    let free_groups: Vec<Value> = spec
        .free_components
        .iter()
        .map(|&g| {
            json!({
                "group": g,
                "magnitude": dk::group_max_abs(&t, g),
            })
        })
        .collect();
    let classified = dk::sector_classify(phi, psi, phi_p, psi_p, tol);
    let pass = max_residual < tol && classified == Some(label);
    let report = json!({
        "sector": label,
        "seed": seed,
        "tolerance": tol,
        "constraint_count": spec.constraint_count,
        "quad": quad,
        "residuals": residuals,
        "max_residual": max_residual,
        "free_groups": free_groups,
        "classified_as": classified,
        "verdict": verdict_str(pass),
    });
    emit(output, &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "built quad failed its own checks (max residual {max_residual:e})"
        )))
    }
}

fn read_quad_file(path: &PathBuf) -> Result<[Spinor4; 4], CliError> {
    match read_spinor_file(path)? {
        SpinorInput::Quad(quad) => Ok(quad),
        _ => Err(usage("this command needs exactly four spinors in the input")),
    }
}

fn cmd_sector_classify(
    input: &PathBuf,
    tol: f64,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let [phi, psi, phi_p, psi_p] = read_quad_file(input)?;
    let label = dk::sector_classify(&phi, &psi, &phi_p, &psi_p, tol);
    let report = json!({
        "tolerance": tol,
        "sector": label,
    });
    emit(output, &report)?;
    match label {
        Some(_) => Ok(()),
        None => Err(CliError::Verification(
            "the quad does not lie in any single-boson sector at this tolerance".to_string(),
        )),
    }
}

fn cmd_sector_residuals(
    input: &PathBuf,
    sector: &str,
    tol: f64,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let label = parse_sector_label(sector)?;
    let [phi, psi, phi_p, psi_p] = read_quad_file(input)?;
    let spec = dk::sector_spec(label);
    let residuals: Vec<f64> = dk::sector_residuals(&phi, &psi, &phi_p, &psi_p, &spec)
        .iter()
        .map(|z| z.norm())
        .collect();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let scale = [phi, psi, phi_p, psi_p]
        .iter()
        .map(Spinor4::max_abs)
        .fold(0.0, f64::max);
    let threshold = (tol * scale * scale).max(f64::MIN_POSITIVE);
    let report = json!({
        "sector": label,
        "constraint_count": spec.constraint_count,
        "residuals": residuals,
        "max_residual": max_residual,
        "tolerance": tol,
        "threshold": threshold,
        "verdict": verdict_str(max_residual < threshold),
    });
    emit(output, &report)
}

fn cmd_dynamics(
    momentum: [f64; 3],
    mass: f64,
    branches: [usize; 2],
    boson_mass: Option<f64>,
    tol: f64,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let p = [
        dk::onshell_energy(momentum, mass),
        momentum[0],
        momentum[1],
        momentum[2],
    ];
    let phi = PlaneWaveField::from_branch(p, mass, branches[0])
        .map_err(|e| usage(e.to_string()))?;
    let psi = PlaneWaveField::from_branch(p, mass, branches[1])
        .map_err(|e| usage(e.to_string()))?;
    let m = boson_mass.unwrap_or(2.0 * mass);
    let linear = dk::linear_system_residual_with_mass(&phi, &psi, m)
        .map_err(|e| usage(e.to_string()))?;
    let linear_max = linear.max_residual;
    let linear_pass = linear_max < tol;

    let (nonlinear_json, nonlinear_pass) = match dk::nonlinear_system_residual(&phi, &psi) {
        Ok(rep) => {
            let pass = rep.max_residual < 10.0 * tol;
            (serde_json::to_value(&rep).unwrap(), pass)
        }
        Err(dk::DynamicsError::RewriteSingular {
            pseudoscalar_magnitude,
            threshold,
        }) => (
            json!({
                "rewrite_singular": true,
                "pseudoscalar_magnitude": pseudoscalar_magnitude,
                "threshold": threshold,
                "note": "the pseudoscalar vanishes, so the substituted system is undefined for this pair",
            }),
            true,
        ),
        Err(e) => return Err(usage(e.to_string())),
    };

    let pass = linear_pass && nonlinear_pass;
    let report = json!({
        "momentum": p,
        "fermion_mass": mass,
        "boson_mass": m,
        "branches": branches,
        "tolerance": tol,
        "linear": linear,
        "nonlinear": nonlinear_json,
        "verdict": verdict_str(pass),
    });
    emit(output, &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "field-equation residuals exceed the threshold (linear max {linear_max:e})"
        )))
    }
}

fn cmd_lorentz_check(
    seed: u64,
    samples: u32,
    rapidity: f64,
    angle: f64,
    axis: Option<[f64; 3]>,
    tol: f64,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let mut rng = dk::rng_from_seed(seed);
    let mut max_residual = 0.0f64;
    let mut worst_sample = 0u32;
    for k in 0..samples {
        let phi = dk::random_spinor(&mut rng);
        let psi = dk::random_spinor(&mut rng);
        let g = match axis {
            Some(n) => {
                let boost = dk::element_from_boost(n, rapidity)
                    .map_err(|e| usage(e.to_string()))?;
                let rotation = dk::element_from_rotation(n, angle)
                    .map_err(|e| usage(e.to_string()))?;
                rotation.after(&boost)
            }
            None => {
                let boost = dk::element_from_boost(
                    dk::random_unit_axis(&mut rng),
                    dk::random_real(&mut rng, -rapidity.abs(), rapidity.abs()),
                )
                .expect("sampled axis is unit");
                let rotation = dk::element_from_rotation(
                    dk::random_unit_axis(&mut rng),
                    dk::random_real(&mut rng, 0.0, angle),
                )
                .expect("sampled axis is unit");
                rotation.after(&boost)
            }
        };
        let residual = dk::covariance_residual(&g, &phi, &psi);
        if residual > max_residual {
            max_residual = residual;
            worst_sample = k;
        }
    }
    let pass = max_residual < tol;
    let report = json!({
        "seed": seed,
        "samples": samples,
        "mode": if axis.is_some() { "fixed_element" } else { "sampled" },
        "rapidity": rapidity,
        "angle": angle,
        "axis": axis,
        "max_residual": max_residual,
        "worst_sample": worst_sample,
        "tolerance": tol,
        "verdict": verdict_str(pass),
    });
    emit(output, &report)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "covariance residual {max_residual:e} exceeds tolerance {tol:e}"
        )))
    }
}
