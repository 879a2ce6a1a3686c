//! Command-line surface over the whole crate: machine parsing,
//! enumeration queries, tabulation, mixture identity and dominance
//! checks, prefix-code allocation, dispatcher synthesis, and gap
//! reports.
//!
//! Machine-readable reports go to stdout, a one-line human log to
//! stderr. Exit codes: 0 when every check the command runs passes,
//! 1 when a check fails, 2 for usage, file, or parse problems.
//! Reports are byte-identical across runs of the same configuration.
//! `SOLOLAB_THREADS` caps the worker count; the first command to run
//! in a process fixes it.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::bits::BitString;
use crate::dyadic::DyadicRational;
use crate::enumeration::{
    decode_machine, encode_machine, index_code, index_code_len, machine_count_for_code_len,
    UniversalMachine,
};
use crate::format::{parse_machine, render_machine};
use crate::gap::{gap_report, make_delta_prime};
use crate::kraft::{synthesize_universal, verify_synthesis, KraftAllocator};
use crate::mixture::{
    dominance_check, inner_budget, mixture_table, mixture_value, split_sum_check, DominanceReport,
    WeightScheme,
};
use crate::semimeasure::{approx_value, tabulate, ApproxTable, Budget};
use crate::tm::MachineSpec;

#[derive(Debug, Parser)]
#[command(
    name = "sololab",
    version,
    about = "Exact desk-scale laboratory for monotone machines, their budgeted semimeasures, and prefix-code dispatchers"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a machine file and echo its canonical rendering.
    Parse {
        /// Machine table file.
        file: PathBuf,
    },
    /// Query the canonical machine enumeration.
    #[command(subcommand)]
    Enum(EnumCmd),
    /// Tabulate a machine's budgeted semimeasure, or evaluate one string.
    Lambda(LambdaArgs),
    /// Evaluate and check weighted mixtures.
    #[command(subcommand)]
    Mix(MixCmd),
    /// Allocate prefix codes and synthesize dispatchers from weights.
    #[command(subcommand)]
    Kc(KcCmd),
    /// Gap reports and the halved-root counterexample.
    #[command(subcommand)]
    Gap(GapCmd),
}

#[derive(Debug, Subcommand)]
enum EnumCmd {
    /// Print the machine at an enumeration index as a table file.
    Show { index: BigUint },
    /// Print the enumeration index of a machine file.
    Encode { file: PathBuf },
    /// Print the self-delimiting codeword of an index as JSON.
    Code { index: BigUint },
}

#[derive(Clone, Copy, Debug, Args)]
struct BudgetArgs {
    /// Longest input prefix a run may consume.
    #[arg(long, default_value_t = 11)]
    max_len: u64,
    /// Work steps allowed per run.
    #[arg(long, default_value_t = 128)]
    fuel: u64,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget::new(self.max_len, self.fuel)
    }
}

#[derive(Clone, Debug, Args)]
#[group(multiple = false)]
struct MachineSource {
    /// Enumeration index of a machine.
    #[arg(long)]
    index: Option<BigUint>,
    /// Path to a machine table file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// The self-delimiting dispatcher over all machines (the default).
    #[arg(long)]
    universal: bool,
}

enum ResolvedMachine {
    Spec(MachineSpec),
    Universal,
}

impl MachineSource {
    fn resolve(&self) -> Result<(ResolvedMachine, String), Failure> {
        if let Some(index) = &self.index {
            Ok((
                ResolvedMachine::Spec(decode_machine(index)),
                format!("machine {index}"),
            ))
        } else if let Some(path) = &self.spec {
            let spec = parse_machine(&read_file(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok((ResolvedMachine::Spec(spec), path.display().to_string()))
        } else {
            Ok((ResolvedMachine::Universal, "the dispatcher".to_string()))
        }
    }
}

impl ResolvedMachine {
    fn tabulate(&self, depth: usize, budget: Budget) -> ApproxTable {
        match self {
            ResolvedMachine::Spec(spec) => tabulate(spec, depth, budget),
            ResolvedMachine::Universal => tabulate(&UniversalMachine, depth, budget),
        }
    }

    fn value(&self, x: &BitString, budget: Budget) -> DyadicRational {
        match self {
            ResolvedMachine::Spec(spec) => approx_value(spec, x, budget),
            ResolvedMachine::Universal => approx_value(&UniversalMachine, x, budget),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct LambdaArgs {
    #[command(flatten)]
    source: MachineSource,
    /// Table depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Evaluate this single string instead of the whole table.
    #[arg(long)]
    x: Option<BitString>,
    /// Report format for full tables.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum MixCmd {
    /// Tabulate the mixture, or evaluate it on one string.
    Eval(MixEvalArgs),
    /// Check the dispatcher's table equals the full mixture's, exactly.
    SplitCheck(SplitCheckArgs),
    /// Check the mixture dominates one machine scaled by its weight.
    Dominance(DominanceArgs),
}

#[derive(Clone, Debug, Args)]
struct SchemeArgs {
    /// Use the dispatcher weights over the first `count` machines.
    #[arg(long, conflicts_with = "weights")]
    count: Option<usize>,
    /// Weights file: one dyadic rational per line, `#` comments.
    #[arg(long)]
    weights: Option<PathBuf>,
}

impl SchemeArgs {
    /// Falls back to the dispatcher weights over every machine whose
    /// codeword fits the budget.
    fn resolve(&self, max_len: u64) -> Result<WeightScheme, Failure> {
        match (self.count, &self.weights) {
            (Some(count), _) => Ok(WeightScheme::dispatcher_default(count)),
            (None, Some(path)) => parse_weights(&read_file(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display()))),
            (None, None) => Ok(WeightScheme::dispatcher_default(
                machine_count_for_code_len(max_len) as usize,
            )),
        }
    }
}

#[derive(Debug, Args)]
struct MixEvalArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Table depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Evaluate this single string instead of the whole table.
    #[arg(long)]
    x: Option<BitString>,
    /// Report format for full tables.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct SplitCheckArgs {
    /// Table depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Args)]
struct DominanceArgs {
    /// Enumeration index of the dominated machine.
    #[arg(short, long)]
    j: u64,
    /// Table depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Subcommand)]
enum KcCmd {
    /// Allocate prefix-free codewords of the given lengths, in order.
    Request {
        /// Codeword lengths, processed left to right.
        #[arg(required = true)]
        lengths: Vec<u64>,
    },
    /// Print the dispatch table synthesized from a weight scheme.
    Synth(SynthArgs),
    /// Check the synthesized dispatcher tabulates to its mixture.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct RequiredSchemeArgs {
    /// Use the dispatcher weights over the first `count` machines.
    #[arg(long)]
    count: Option<usize>,
    /// Weights file: one dyadic rational per line, `#` comments.
    #[arg(long)]
    weights: Option<PathBuf>,
}

impl RequiredSchemeArgs {
    fn resolve(&self) -> Result<WeightScheme, Failure> {
        match (self.count, &self.weights) {
            (Some(count), _) => Ok(WeightScheme::dispatcher_default(count)),
            (None, Some(path)) => parse_weights(&read_file(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display()))),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[command(flatten)]
    scheme: RequiredSchemeArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Table depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Subcommand)]
enum GapCmd {
    /// Gaps, relative gaps, and floor comparisons for one table.
    Report(GapReportArgs),
    /// Build the halved-root transform over a base mixture and check
    /// that it dominates yet fails the mixture floor at the root.
    DeltaPrime(DeltaPrimeArgs),
}

#[derive(Debug, Args)]
struct GapReportArgs {
    #[command(flatten)]
    source: MachineSource,
    /// Table depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Constant in the relative-gap floor.
    #[arg(long, default_value_t = DyadicRational::one())]
    c: DyadicRational,
}

#[derive(Debug, Args)]
struct DeltaPrimeArgs {
    /// Weights file for the base mixture.
    #[arg(long, conflicts_with = "count")]
    base: Option<PathBuf>,
    /// Base the mixture on the first `count` machines instead.
    #[arg(long)]
    count: Option<usize>,
    /// Table depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Constant in the relative-gap floor; must be positive.
    #[arg(long, default_value_t = DyadicRational::one())]
    c: DyadicRational,
}

/// What a finished command wants the process to do.
#[derive(Clone, Debug)]
pub struct CmdOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn into_output(self) -> CmdOutput {
        CmdOutput {
            exit_code: self.code,
            stdout: String::new(),
            stderr: self.message + "\n",
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Parses a weights file: one dyadic rational per line, with blank
/// lines and `#` comments ignored.
pub fn parse_weights(text: &str) -> Result<WeightScheme, String> {
    let mut weights = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let weight: DyadicRational = line
            .parse()
            .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        weights.push(weight);
    }
    WeightScheme::new(weights).map_err(|e| e.to_string())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SOLOLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "SOLOLAB_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn ok(stdout: String, stderr: String) -> CmdOutput {
    CmdOutput {
        exit_code: 0,
        stdout,
        stderr,
    }
}

fn checked(passed: bool, stdout: String, stderr: String) -> CmdOutput {
    CmdOutput {
        exit_code: if passed { 0 } else { 1 },
        stdout,
        stderr,
    }
}

/// Runs one parsed command; the binary only forwards the result.
pub fn execute(cli: Cli) -> CmdOutput {
    let run = || -> Result<CmdOutput, Failure> {
        configure_threads()?;
        match cli.command {
            Command::Parse { file } => run_parse(&file),
            Command::Enum(cmd) => run_enum(cmd),
            Command::Lambda(args) => run_lambda(args),
            Command::Mix(MixCmd::Eval(args)) => run_mix_eval(args),
            Command::Mix(MixCmd::SplitCheck(args)) => Ok(run_split_check(args)),
            Command::Mix(MixCmd::Dominance(args)) => run_dominance(args),
            Command::Kc(KcCmd::Request { lengths }) => Ok(run_kc_request(&lengths)),
            Command::Kc(KcCmd::Synth(args)) => run_kc_synth(args),
            Command::Kc(KcCmd::Verify(args)) => run_kc_verify(args),
            Command::Gap(GapCmd::Report(args)) => run_gap_report(args),
            Command::Gap(GapCmd::DeltaPrime(args)) => run_delta_prime(args),
        }
    };
    run().unwrap_or_else(Failure::into_output)
}

fn run_parse(file: &Path) -> Result<CmdOutput, Failure> {
    let spec =
        parse_machine(&read_file(file)?).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    Ok(ok(
        render_machine(&spec),
        format!("well-formed machine with {} states\n", spec.num_states()),
    ))
}

fn run_enum(cmd: EnumCmd) -> Result<CmdOutput, Failure> {
    match cmd {
        EnumCmd::Show { index } => {
            let spec = decode_machine(&index);
            Ok(ok(
                render_machine(&spec),
                format!("machine {index}: {} states\n", spec.num_states()),
            ))
        }
        EnumCmd::Encode { file } => {
            let spec = parse_machine(&read_file(&file)?)
                .map_err(|e| usage(format!("{}: {e}", file.display())))?;
            Ok(ok(format!("{}\n", encode_machine(&spec)), String::new()))
        }
        EnumCmd::Code { index } => {
            let payload = json!({
                "index": index.to_string(),
                "code": index_code(&index),
                "len": index_code_len(&index),
            });
            Ok(ok(pretty(&payload), String::new()))
        }
    }
}

fn emit_table(table: &ApproxTable, format: Format, stderr: String) -> CmdOutput {
    let stdout = match format {
        Format::Json => pretty(table),
        Format::Csv => table.to_csv(),
    };
    ok(stdout, stderr)
}

fn run_lambda(args: LambdaArgs) -> Result<CmdOutput, Failure> {
    let budget = args.budget.budget();
    let (machine, label) = args.source.resolve()?;
    match args.x {
        Some(x) => {
            if args.format == Format::Csv {
                return Err(usage("csv output needs a full table; drop --x"));
            }
            let value = machine.value(&x, budget);
            let payload = json!({ "x": x, "budget": budget, "value": value });
            Ok(ok(
                pretty(&payload),
                format!("value of {label} on {}\n", x.display_or_epsilon()),
            ))
        }
        None => {
            let table = machine.tabulate(args.depth, budget);
            Ok(emit_table(
                &table,
                args.format,
                format!("tabulated {label} to depth {}\n", args.depth),
            ))
        }
    }
}

fn run_mix_eval(args: MixEvalArgs) -> Result<CmdOutput, Failure> {
    let budget = args.budget.budget();
    let scheme = args.scheme.resolve(budget.max_len)?;
    let label = format!("mixture over {} machines", scheme.machine_count());
    match args.x {
        Some(x) => {
            if args.format == Format::Csv {
                return Err(usage("csv output needs a full table; drop --x"));
            }
            let value = mixture_value(&scheme, &x, budget);
            let payload = json!({ "x": x, "budget": budget, "value": value });
            Ok(ok(
                pretty(&payload),
                format!("value of the {label} on {}\n", x.display_or_epsilon()),
            ))
        }
        None => {
            let table = mixture_table(&scheme, args.depth, budget);
            Ok(emit_table(
                &table,
                args.format,
                format!("tabulated the {label} to depth {}\n", args.depth),
            ))
        }
    }
}

fn run_split_check(args: SplitCheckArgs) -> CmdOutput {
    let budget = args.budget.budget();
    let count = machine_count_for_code_len(budget.max_len) as usize;
    let report = split_sum_check(args.depth, budget, count);
    let stderr = if report.passed {
        format!(
            "dispatcher table equals the mixture over {count} machines at depth {} (max_len {}, fuel {})\n",
            args.depth, budget.max_len, budget.fuel
        )
    } else {
        format!(
            "split-sum identity fails on {} strings\n",
            report.discrepancies().count()
        )
    };
    checked(report.passed, pretty(&report), stderr)
}

fn run_dominance(args: DominanceArgs) -> Result<CmdOutput, Failure> {
    let budget = args.budget.budget();
    let report = dominance_check(args.j, args.depth, budget).map_err(|e| usage(e.to_string()))?;
    let stderr = if report.passed {
        format!(
            "dispatcher dominates machine {} with constant {}\n",
            args.j, report.constant
        )
    } else {
        format!(
            "dominance fails for machine {} on {} strings\n",
            args.j,
            report.rows.iter().filter(|row| !row.ok).count()
        )
    };
    Ok(checked(report.passed, pretty(&report), stderr))
}

fn run_kc_request(lengths: &[u64]) -> CmdOutput {
    let mut allocator = KraftAllocator::new();
    let mut issued: Vec<BitString> = Vec::new();
    for (position, &len) in lengths.iter().enumerate() {
        match allocator.request(len) {
            Ok(word) => issued.push(word),
            Err(e) => {
                let payload = json!({
                    "requests": lengths,
                    "issued": issued,
                    "failed_at": position,
                    "requested": len,
                    "free_mass": e.free_mass,
                });
                return checked(
                    false,
                    pretty(&payload),
                    format!("request {position} for a {len}-bit codeword does not fit\n"),
                );
            }
        }
    }
    let payload = json!({
        "requests": lengths,
        "issued": issued,
        "issued_mass": allocator.issued_mass(),
        "free_mass": allocator.free_mass(),
    });
    ok(
        pretty(&payload),
        format!(
            "issued {} codewords, mass {}\n",
            lengths.len(),
            allocator.issued_mass()
        ),
    )
}

fn run_kc_synth(args: SynthArgs) -> Result<CmdOutput, Failure> {
    let scheme = args.scheme.resolve()?;
    let dispatcher = synthesize_universal(&scheme).expect("valid schemes always fit");
    let table = dispatcher.dispatch_table();
    let stderr = format!("dispatch table with {} codewords\n", table.len());
    Ok(ok(pretty(&table), stderr))
}

fn run_kc_verify(args: VerifyArgs) -> Result<CmdOutput, Failure> {
    let budget = args.budget.budget();
    let scheme = args.scheme.resolve(budget.max_len)?;
    let report = verify_synthesis(&scheme, args.depth, budget).expect("valid schemes always fit");
    let stderr = if report.passed {
        format!(
            "synthesized dispatcher realizes its {}-machine mixture at depth {}\n",
            scheme.machine_count(),
            args.depth
        )
    } else {
        format!(
            "synthesis check fails on {} strings\n",
            report.discrepancies().count()
        )
    };
    Ok(checked(report.passed, pretty(&report), stderr))
}

fn run_gap_report(args: GapReportArgs) -> Result<CmdOutput, Failure> {
    let budget = args.budget.budget();
    let (machine, label) = args.source.resolve()?;
    let table = machine.tabulate(args.depth, budget);
    let report = gap_report(&table, &args.c);
    let flagged = report.flagged().count();
    let mut stderr = if flagged == 0 {
        format!("no gaps of {label} fall under the floor (c = {})\n", args.c)
    } else {
        format!(
            "{flagged} of {} gaps fall under the floor (c = {})\n",
            report.rows.len(),
            args.c
        )
    };
    if report.not_a_universal_mixture() {
        stderr.push_str("not-a-mixture: zero gap with positive value\n");
    }
    Ok(checked(flagged == 0, pretty(&report), stderr))
}

fn run_delta_prime(args: DeltaPrimeArgs) -> Result<CmdOutput, Failure> {
    if args.c.is_zero() || args.c.is_negative() {
        return Err(usage(format!("--c must be positive, got {}", args.c)));
    }
    if args.depth == 0 {
        return Err(usage("--depth must be at least 1 to inspect the root gap"));
    }
    let budget = args.budget.budget();
    let scheme = match (&args.base, args.count) {
        (Some(path), _) => parse_weights(&read_file(path)?)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
        (None, Some(count)) => WeightScheme::dispatcher_default(count),
        (None, None) => {
            WeightScheme::dispatcher_default(machine_count_for_code_len(budget.max_len) as usize)
        }
    };
    let delta_prime = make_delta_prime(&mixture_table(&scheme, args.depth, budget));
    let root_gap = delta_prime.gap(&BitString::new());
    let report = gap_report(&delta_prime, &args.c);
    let root_flagged = report
        .rows
        .first()
        .is_some_and(|row| row.x.is_empty() && row.flagged);

    let covered: Vec<u64> = (0..scheme.machine_count() as u64)
        .filter(|&j| inner_budget(budget, j).is_some())
        .collect();
    let dominance: Vec<DominanceReport> = covered
        .iter()
        .map(|&j| {
            let inner = inner_budget(budget, j).expect("covered by construction");
            let table = tabulate(&decode_machine(&BigUint::from(j)), args.depth, inner);
            let constant = scheme.weight(j as usize).halve();
            DominanceReport::compare(j, constant, &delta_prime, &table)
        })
        .collect();
    let dominance_passed = dominance.iter().all(|r| r.passed);

    let passed =
        root_gap.is_zero() && root_flagged && report.not_a_universal_mixture() && dominance_passed;
    let payload = json!({
        "c": args.c,
        "depth": args.depth,
        "budget": budget,
        "root_gap": root_gap,
        "dominance_checked": covered,
        "dominance_passed": dominance_passed,
        "not_a_universal_mixture": report.not_a_universal_mixture(),
        "rows": report.rows,
        "passed": passed,
    });
    let mut stderr = String::new();
    if root_gap.is_zero() && root_flagged {
        stderr.push_str("not-a-mixture: root gap 0\n");
    } else {
        stderr.push_str("root gap check failed\n");
    }
    if dominance_passed {
        stderr.push_str(&format!(
            "halved constants dominate all {} covered machines\n",
            covered.len()
        ));
    } else {
        stderr.push_str("halved-constant dominance failed\n");
    }
    Ok(checked(passed, pretty(&payload), stderr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CmdOutput {
        execute(Cli::try_parse_from(args).unwrap())
    }

    #[test]
    fn enum_code_prints_the_frozen_codeword() {
        let out = run(&["sololab", "enum", "code", "3"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("\"code\": \"11000\""));
        assert!(out.stdout.contains("\"len\": 5"));
    }

    #[test]
    fn lambda_csv_is_the_golden_table() {
        let out = run(&[
            "sololab",
            "lambda",
            "--index",
            "5",
            "--depth",
            "1",
            "--max-len",
            "2",
            "--fuel",
            "8",
            "--format",
            "csv",
        ]);
        assert_eq!(out.exit_code, 0);
        assert_eq!(
            out.stdout,
            "x,value_mantissa,value_exponent\n,1,0\n0,0,0\n1,1,0\n"
        );
    }

    #[test]
    fn lambda_single_value_uses_json() {
        let out = run(&[
            "sololab",
            "lambda",
            "--index",
            "5",
            "--max-len",
            "2",
            "--fuel",
            "8",
            "--x",
            "1",
        ]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("\"mantissa\": \"1\""));
        let out = run(&[
            "sololab",
            "lambda",
            "--index",
            "5",
            "--max-len",
            "2",
            "--fuel",
            "8",
            "--x",
            "1",
            "--format",
            "csv",
        ]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn mix_eval_sums_the_covered_weights_at_the_root() {
        let out = run(&[
            "sololab",
            "mix",
            "eval",
            "--count",
            "3",
            "--max-len",
            "5",
            "--fuel",
            "16",
            "--x",
            "",
        ]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("\"mantissa\": \"3\""));
        assert!(out.stdout.contains("\"exponent\": 2"));
    }

    #[test]
    fn split_check_passes_at_a_small_budget() {
        let out = run(&[
            "sololab",
            "mix",
            "split-check",
            "--depth",
            "2",
            "--max-len",
            "5",
            "--fuel",
            "32",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        assert!(out.stderr.contains("7 machines"));
    }

    #[test]
    fn dominance_exit_codes_separate_failure_kinds() {
        let out = run(&[
            "sololab",
            "mix",
            "dominance",
            "-j",
            "1",
            "--depth",
            "2",
            "--max-len",
            "5",
            "--fuel",
            "32",
        ]);
        assert_eq!(out.exit_code, 0);
        let out = run(&[
            "sololab",
            "mix",
            "dominance",
            "-j",
            "15",
            "--depth",
            "2",
            "--max-len",
            "5",
            "--fuel",
            "32",
        ]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn kc_request_allocates_and_reports_infeasible_sequences() {
        let out = run(&["sololab", "kc", "request", "1", "2", "3", "3"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("\"110\""));
        assert!(out.stdout.contains("\"111\""));
        let out = run(&["sololab", "kc", "request", "1", "1", "1"]);
        assert_eq!(out.exit_code, 1);
        assert!(out.stdout.contains("\"failed_at\": 2"));
    }

    #[test]
    fn kc_synth_needs_a_scheme_and_verify_defaults_to_the_cover() {
        assert!(Cli::try_parse_from(["sololab", "kc", "synth"]).is_err());
        let out = run(&["sololab", "kc", "synth", "--count", "3"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("\"codeword\": \"100\""));
        let out = run(&[
            "sololab",
            "kc",
            "verify",
            "--depth",
            "2",
            "--max-len",
            "5",
            "--fuel",
            "16",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        assert!(out.stderr.contains("7-machine"));
    }

    #[test]
    fn gap_report_defaults_to_the_dispatcher() {
        let out = run(&[
            "sololab",
            "gap",
            "report",
            "--depth",
            "2",
            "--max-len",
            "5",
            "--fuel",
            "32",
            "--c",
            "1/1024",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        assert!(out.stdout.contains("\"rows\""));
    }

    #[test]
    fn delta_prime_finds_its_counterexample() {
        let out = run(&[
            "sololab",
            "gap",
            "delta-prime",
            "--count",
            "3",
            "--depth",
            "2",
            "--max-len",
            "5",
            "--fuel",
            "16",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        assert!(out.stderr.contains("not-a-mixture: root gap 0"));
        assert!(out.stdout.contains("\"passed\": true"));
        let out = run(&[
            "sololab",
            "gap",
            "delta-prime",
            "--count",
            "3",
            "--max-len",
            "5",
            "--c",
            "0",
        ]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn parse_and_encode_roundtrip_through_a_file() {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("sololab-cli-test-{}.mt", std::process::id()));
        let rendered = render_machine(&decode_machine(&BigUint::from(50u32)));
        std::fs::write(&path, &rendered).unwrap();
        let out = run(&["sololab", "parse", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.stdout, rendered);
        let out = run(&["sololab", "enum", "encode", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.stdout, "50\n");
        std::fs::remove_file(&path).unwrap();
        let out = run(&["sololab", "parse", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn weights_files_accept_comments_and_report_bad_lines() {
        let scheme = parse_weights("# header\n1/2\n\n 1/4 # tail\n").unwrap();
        assert_eq!(scheme.machine_count(), 2);
        let err = parse_weights("1/2\nnope\n").unwrap_err();
        assert!(err.starts_with("line 2:"), "{err}");
        let err = parse_weights("1/2\n3/4\n").unwrap_err();
        assert!(err.contains("above 1"), "{err}");
    }
}
