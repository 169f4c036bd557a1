//! `kummer` — exact certificates for the kernel group acting on the
//! cohomology of a generalized Kummer manifold.
//!
//! Exit codes: 0 = success / certified, 1 = verification failure (a
//! counterexample was found), 2 = input error.

mod envelope;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use kummer_core::arith::{ArithError, Level};
use kummer_core::autgroup::{AutElement, GroupError};
use kummer_core::exterior::{build_tau_tilde, witness_monomial, ExteriorError, Permutation};
use kummer_core::lefschetz::{
    certify_faithful_on_kernel_with_fault, euler_kummer, lefschetz_report,
    translation_class_table, InjectedFault, LefschetzError, Verdict,
};
use kummer_core::symplectic::{
    check_fixed_locus_symplectic, parse_matrix_text, SymplecticError, SymplecticSpace,
};

use envelope::{EnvelopeVerdict, OutputEnvelope};

/// Exhaustive scans walk all 2n^4 kernel elements; past this bound they
/// stop being instant, so raising it takes an explicit flag.
const DEFAULT_SCAN_BOUND: u64 = 50;

const ASSUME_KERNEL: &str = "kernel-identification: the automorphisms acting trivially on degree-2 \
     cohomology are exactly the n-torsion translations extended by the inversion involution, \
     with the translations forming the normal factor";
const ASSUME_EULER: &str = "euler-number: the level-n manifold has topological Euler number \
     n^3*sigma(n), valid for n = 1 and n = 2 as well";
const ASSUME_FIXED_LOCUS: &str = "fixed-locus-structure: a nontrivial torsion translation of \
     order p fixes exactly p^3 disjoint copies of the level-(n/p) manifold of the quotient torus";
const ASSUME_FIXED_POINT: &str = "fixed-point-formula: the Lefschetz number of such a translation \
     equals the Euler number of its fixed locus";
const ASSUME_INJECTIVITY: &str = "pullback-injectivity: pullbacks along the resolution and the \
     symmetric-quotient map are injective on Dolbeault cohomology, so the nonvanishing of the \
     invariant witness form at the torus level implies nonvanishing upstairs";

#[derive(Debug, Parser)]
#[command(
    name = "kummer",
    version,
    about = "Exact certificates for automorphism actions on generalized Kummer manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultKind {
    /// Corrupt one translation witness so its Lefschetz value shows no gap.
    Translation,
    /// Check inversion-type pullbacks against the unnegated witness form.
    Inversion,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler number n^3*sigma(n) of the level-n manifold.
    Euler {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Lefschetz report for one nontrivial torsion translation.
    Lefschetz {
        #[arg(long)]
        n: u64,
        /// Translation as `a1,a2,a3,a4`.
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Lefschetz values of all nontrivial translations, grouped by class.
    KernelTable {
        #[arg(long)]
        n: u64,
        /// Admit the level-2 (K3 surface) case for anchoring.
        #[arg(long)]
        allow_k3: bool,
        /// Raise the default scan bound of 50.
        #[arg(long)]
        max_n_unsafe: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build the invariant witness 3-form, optionally checking pullbacks
    /// and symmetric-group invariance.
    Tau {
        #[arg(long)]
        n: u64,
        /// Apply the pullback by this element (`a1,a2,a3,a4[,iota]`).
        #[arg(long)]
        pullback: Option<String>,
        /// Verify invariance under every adjacent transposition.
        #[arg(long)]
        check_invariance: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exhaustive faithfulness certificate over all 2n^4 kernel elements.
    Certify {
        #[arg(long)]
        n: u64,
        /// Raise the default scan bound of 50.
        #[arg(long)]
        max_n_unsafe: Option<u64>,
        /// Test hook: corrupt the certificate to exercise the failure path.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultKind>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Fixed-subspace check for a finite-order symplectic matrix read from
    /// a file (`rows cols` then entries; optional second block for the form).
    Symplectic {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 24)]
        max_order: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Euler { n, format } => run_euler(n, format),
        Command::Lefschetz { n, a, format } => run_lefschetz(n, &a, format),
        Command::KernelTable {
            n,
            allow_k3,
            max_n_unsafe,
            format,
        } => run_kernel_table(n, allow_k3, max_n_unsafe, format),
        Command::Tau {
            n,
            pullback,
            check_invariance,
            format,
        } => run_tau(n, pullback.as_deref(), check_invariance, format),
        Command::Certify {
            n,
            max_n_unsafe,
            inject_fault,
            format,
        } => run_certify(n, max_n_unsafe, inject_fault, format),
        Command::Symplectic {
            matrix,
            max_order,
            format,
        } => run_symplectic(&matrix, max_order, format),
    }
}

fn emit(envelope: &OutputEnvelope, text: &str, format: Format) -> u8 {
    match format {
        Format::Json => println!("{}", envelope.to_json_pretty()),
        Format::Text => print!("{text}"),
    }
    match envelope.verdict {
        EnvelopeVerdict::Failed => 1,
        _ => 0,
    }
}

fn check_scan_bound(n: u64, max_n_unsafe: Option<u64>) -> Result<(), CliError> {
    let bound = max_n_unsafe.unwrap_or(DEFAULT_SCAN_BOUND);
    if n > bound {
        return Err(CliError::Input(format!(
            "n = {n} exceeds the scan bound {bound}; raise it with --max-n-unsafe"
        )));
    }
    Ok(())
}

fn run_euler(n: u64, format: Format) -> Result<u8, CliError> {
    let level = Level::new(n)?;
    let chi = euler_kummer(level);
    let envelope = OutputEnvelope::new(
        "euler",
        json!({ "n": n }),
        json!({ "euler_characteristic": chi }),
        &[ASSUME_EULER],
        EnvelopeVerdict::NotApplicable,
    );
    Ok(emit(&envelope, &format!("{chi}\n"), format))
}

fn run_lefschetz(n: u64, element_text: &str, format: Format) -> Result<u8, CliError> {
    let element = AutElement::parse(element_text, n)?;
    if !element.is_pure_translation() {
        return Err(CliError::Input(format!(
            "`{element_text}` is not a pure translation; drop the `iota` suffix"
        )));
    }
    let report = lefschetz_report(element.translation())?;
    let verdict = if report.cohomologically_trivial_possible {
        EnvelopeVerdict::Failed
    } else {
        EnvelopeVerdict::Certified
    };
    let envelope = OutputEnvelope::new(
        "lefschetz",
        json!({ "a": element.to_string(), "n": n }),
        json!({
            "p": report.order,
            "d": report.codegree,
            "lefschetz_value": report.lefschetz_value,
            "euler_value": report.euler_value,
            "cohomologically_trivial_possible": report.cohomologically_trivial_possible,
            "fixed_locus": {
                "component_count": (report.order as u128).pow(3),
                "component_level": report.codegree,
            },
        }),
        &[ASSUME_EULER, ASSUME_FIXED_LOCUS, ASSUME_FIXED_POINT],
        verdict,
    );
    let mut text = String::new();
    let _ = writeln!(text, "L(a) = {}", report.lefschetz_value);
    let _ = writeln!(text, "chi_top = {}", report.euler_value);
    let _ = writeln!(
        text,
        "cohomologically_trivial_possible = {}",
        report.cohomologically_trivial_possible
    );
    Ok(emit(&envelope, &text, format))
}

fn run_kernel_table(
    n: u64,
    allow_k3: bool,
    max_n_unsafe: Option<u64>,
    format: Format,
) -> Result<u8, CliError> {
    check_scan_bound(n, max_n_unsafe)?;
    let level = Level::new(n)?;
    let (classes, nontrivial) = translation_class_table(level, allow_k3)?;
    let chi = euler_kummer(level);
    let all_gapped = classes.iter().all(|c| c.lefschetz_value < chi);
    let verdict = if all_gapped {
        EnvelopeVerdict::Certified
    } else {
        EnvelopeVerdict::Failed
    };
    let envelope = OutputEnvelope::new(
        "kernel-table",
        json!({ "allow_k3": allow_k3, "n": n }),
        json!({
            "classes": serde_json::to_value(&classes).expect("classes serialize"),
            "euler_value": chi,
            "nontrivial_translations": nontrivial,
        }),
        &[ASSUME_EULER, ASSUME_FIXED_LOCUS, ASSUME_FIXED_POINT],
        verdict,
    );
    let mut text = String::new();
    let _ = writeln!(text, "d\tp\telements\tL(a)");
    for class in &classes {
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}",
            class.codegree, class.order, class.element_count, class.lefschetz_value
        );
    }
    let _ = writeln!(text, "chi_top = {chi}");
    let _ = writeln!(text, "verdict: {verdict}");
    Ok(emit(&envelope, &text, format))
}

fn run_tau(
    n: u64,
    pullback: Option<&str>,
    check_invariance: bool,
    format: Format,
) -> Result<u8, CliError> {
    let level = Level::new(n)?;
    let tau = build_tau_tilde(level)?;
    let nonzero = !tau.is_zero();
    let witness_coefficient = tau.coefficient(&witness_monomial());
    let minus_one = kummer_core::num_rational::BigRational::from_integer((-1).into());
    let mut certified = nonzero && witness_coefficient == minus_one;

    let mut result = json!({
        "degree": 3,
        "form": tau.to_string(),
        "nonzero": nonzero,
        "term_count": tau.term_count(),
        "witness_coefficient": witness_coefficient.to_string(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "tau_tilde at level {n}: {} terms, degree 3", tau.term_count());
    let _ = writeln!(text, "nonzero = {nonzero}");
    let _ = writeln!(
        text,
        "coefficient at {} = {witness_coefficient}",
        witness_monomial()
    );

    if let Some(element_text) = pullback {
        let element = AutElement::parse(element_text, n)?;
        let pulled = tau.pullback(&element)?;
        let equals_original = pulled == tau;
        let equals_negation = pulled == -&tau;
        // translations must fix the form, inversion-type elements negate it
        let matches_expected = if element.is_pure_translation() {
            equals_original
        } else {
            equals_negation
        };
        certified = certified && matches_expected;
        result["pullback"] = json!({
            "element": element.to_string(),
            "equals_original": equals_original,
            "equals_negation": equals_negation,
            "matches_expected_action": matches_expected,
        });
        let _ = writeln!(
            text,
            "pullback by {element}: equals_original = {equals_original}, equals_negation = {equals_negation}"
        );
    }

    if check_invariance {
        let mut invariant = true;
        let mut checked = 0u64;
        for i in 1..n {
            let swap = Permutation::transposition(level, i, i + 1)?;
            invariant &= tau.permute(&swap)? == tau;
            checked += 1;
        }
        certified = certified && invariant;
        result["invariance"] = json!({
            "adjacent_transpositions_checked": checked,
            "invariant": invariant,
        });
        let _ = writeln!(
            text,
            "invariant under all {checked} adjacent transpositions = {invariant}"
        );
    }

    let verdict = if certified {
        EnvelopeVerdict::Certified
    } else {
        EnvelopeVerdict::Failed
    };
    let _ = writeln!(text, "form: {tau}");
    let _ = writeln!(text, "verdict: {verdict}");
    let envelope = OutputEnvelope::new(
        "tau",
        json!({
            "check_invariance": check_invariance,
            "n": n,
            "pullback": pullback,
        }),
        result,
        &[ASSUME_INJECTIVITY],
        verdict,
    );
    Ok(emit(&envelope, &text, format))
}

fn run_certify(
    n: u64,
    max_n_unsafe: Option<u64>,
    inject_fault: Option<FaultKind>,
    format: Format,
) -> Result<u8, CliError> {
    check_scan_bound(n, max_n_unsafe)?;
    let level = Level::new(n)?;
    let fault = inject_fault.map(|kind| match kind {
        FaultKind::Translation => InjectedFault::TranslationGap,
        FaultKind::Inversion => InjectedFault::InversionSign,
    });
    let report = certify_faithful_on_kernel_with_fault(level, fault)?;
    let verdict = match report.verdict {
        Verdict::Certified => EnvelopeVerdict::Certified,
        Verdict::Failed => EnvelopeVerdict::Failed,
    };
    let envelope = OutputEnvelope::new(
        "certify",
        json!({ "n": n }),
        serde_json::to_value(&report).expect("report serializes"),
        &[
            ASSUME_KERNEL,
            ASSUME_EULER,
            ASSUME_FIXED_LOCUS,
            ASSUME_FIXED_POINT,
            ASSUME_INJECTIVITY,
        ],
        verdict,
    );
    let translation_count: u128 = report
        .translation_witnesses
        .iter()
        .map(|c| c.element_count)
        .sum();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "level n = {n}: {} kernel elements, {} nontrivial",
        report.total_elements, report.nontrivial_elements
    );
    let _ = writeln!(
        text,
        "translation witnesses: {translation_count} across {} class(es), chi_top = {}",
        report.translation_witnesses.len(),
        euler_kummer(level)
    );
    let _ = writeln!(
        text,
        "inversion witnesses: {} (all negate the nonzero witness form: {})",
        report.inversion_witnesses.element_count,
        report.inversion_witnesses.all_negate_witness_form
    );
    if let Some(counterexample) = &report.counterexample {
        let _ = writeln!(text, "counterexample: {counterexample}");
    }
    let _ = writeln!(text, "verdict: {verdict}");
    Ok(emit(&envelope, &text, format))
}

fn run_symplectic(path: &PathBuf, max_order: u32, format: Format) -> Result<u8, CliError> {
    let text_input = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let (matrix, custom_form) = parse_matrix_text(&text_input)?;
    let space = match custom_form {
        Some(form) => SymplecticSpace::with_form(form)?,
        None => SymplecticSpace::standard(matrix.rows())?,
    };
    let report = check_fixed_locus_symplectic(&matrix, &space, max_order)?;
    let verdict = if report.even && report.nondegenerate {
        EnvelopeVerdict::Certified
    } else {
        EnvelopeVerdict::Failed
    };
    let envelope = OutputEnvelope::new(
        "symplectic",
        json!({
            "matrix": path.display().to_string(),
            "max_order": max_order,
        }),
        serde_json::to_value(&report).expect("report serializes"),
        &[],
        verdict,
    );
    let mut text = String::new();
    let _ = writeln!(text, "order = {}", report.order);
    let _ = writeln!(text, "fixed_dimension = {}", report.fixed_dimension);
    let _ = writeln!(text, "even = {}", report.even);
    let _ = writeln!(text, "nondegenerate = {}", report.nondegenerate);
    let _ = writeln!(text, "gram:");
    let _ = write!(text, "{}", report.gram);
    let _ = writeln!(text, "verdict: {verdict}");
    Ok(emit(&envelope, &text, format))
}
