use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lpca::report::Record;
use lpca::signature::SignatureStatus;
use lpca::{
    check_profile, classify_expected, dichotomy_case, enumerate_fixed_tails, is_tail_fixed,
    periodic_point_search, pgm, sample_prevalence, signature, signature_periodic, spacetime_window,
    verify_conjugacy, AdditiveForm, Configuration, Error, EventuallyPeriodicWord, Exec, ExpectedProfile,
    LeftProvider, LocalRule, OdometerSignature, RuleFile, SignatureOptions, Verdict, DEFAULT_TABLE_BUDGET,
};

const LEFT_HELP: &str = "Left half x_-1, x_-2, .. of the configuration:
  zero                    all zeros
  ep:TRANSIENT:(PERIOD)   eventually periodic, x_-1 first, read leftward
  rand:SEED               seeded pseudorandom symbols
  word:SYMBOLS            x_-1 first, zeros beyond the word";

#[derive(Parser)]
#[command(name = "lpca", version, about = "Orbit structure of left-permutive cellular automata")]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect or transform a rule file.
    #[command(subcommand)]
    Rule(RuleCommand),
    /// Right tails fixed by a power of the one-sided automaton.
    #[command(subcommand)]
    Tails(TailsCommand),
    /// Extract the odometer signature of an orbit.
    Signature {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Check the orbit against the odometer built from its signature.
    Conjugacy {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        sig: SigArgs,
        /// Orbit points compared.
        #[arg(long, default_value_t = 200)]
        iters: u64,
    },
    /// Compare the predicted and extracted profile of an additive rule.
    Classify {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Bounded finite/infinite verdicts over seeded random left halves.
    Prevalence {
        file: PathBuf,
        #[arg(long, default_value = ":(0)")]
        tail: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 1 << 16)]
        window: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print every trial, not just the summary.
        #[arg(long)]
        trials_detail: bool,
    },
    /// Search spatially periodic configurations containing a word for a
    /// temporal period.
    PeriodicSearch {
        file: PathBuf,
        #[arg(long, default_value = "")]
        word: String,
        /// Largest temporal period accepted.
        #[arg(long, default_value_t = 64)]
        bound: usize,
        /// Largest spatial period tried.
        #[arg(long, default_value_t = 12)]
        max_spatial: usize,
    },
    /// Write a space-time window as a PGM image.
    Render {
        #[command(flatten)]
        point: PointArgs,
        /// Places A..=B, e.g. -40:10.
        #[arg(long, default_value = "-40:10", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum RuleCommand {
    /// Permutivity, anticipation, injectivity and identity order.
    Info {
        file: PathBuf,
        /// Largest power tried for the identity order.
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Print the rule of the N-th power.
    Power {
        file: PathBuf,
        n: usize,
        /// Drop unused trailing coordinates.
        #[arg(long)]
        trim: bool,
    },
}

#[derive(Subcommand)]
enum TailsCommand {
    /// List tails fixed by the given power.
    Enum {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, default_value_t = 2)]
        max_transient: usize,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
    },
}

#[derive(Args)]
struct PointArgs {
    file: PathBuf,
    /// Right tail x_1, x_2, .. as TRANSIENT:(PERIOD).
    #[arg(long, default_value = ":(0)")]
    tail: String,
    #[arg(long, default_value = "rand:1", long_help = LEFT_HELP)]
    left: String,
    /// The symbol x_0.
    #[arg(long, default_value_t = 1)]
    anchor: u8,
}

#[derive(Args)]
struct SigArgs {
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// Leftmost place searched for a moving coordinate.
    #[arg(long, default_value_t = 1 << 16)]
    window: usize,
    /// Bound on the tail period when the tail is not fixed.
    #[arg(long, default_value_t = 64)]
    q_max: u64,
}

enum Status {
    Ok,
    Falsified,
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, record: &Record, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", record.to_line());
        } else {
            println!("{}", text());
        }
    }
}

fn load_rule(path: &Path) -> Result<LocalRule> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = RuleFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(file.to_rule()?)
}

fn load_point(args: &PointArgs) -> Result<(LocalRule, Configuration)> {
    let rule = load_rule(&args.file)?;
    let tail: EventuallyPeriodicWord = args.tail.parse().context("--tail")?;
    let left: LeftProvider = args.left.parse().context("--left")?;
    let config = Configuration::new(rule.alphabet(), left, args.anchor, tail)?;
    Ok((rule, config))
}

fn extract(rule: &LocalRule, config: &Configuration, sig: &SigArgs) -> lpca::Result<OdometerSignature> {
    let opts = SignatureOptions {
        window: sig.window,
        ..SignatureOptions::default()
    };
    if is_tail_fixed(&config.tail, rule, 1) {
        signature(config, rule, sig.depth, opts)
    } else {
        signature_periodic(config, rule, sig.depth, sig.q_max, opts)
    }
}

fn stages_text(sig: &OdometerSignature) -> String {
    let mut out: String = sig.stage_pairs().iter().map(|[k, s]| format!("({k},{s})")).collect();
    if let SignatureStatus::OrbitAppearsFinite { stage } = sig.status {
        out.push_str(&format!(" [no moving place found after stage {stage}]"));
    }
    out
}

fn rule_info(out: &Out, file: &Path, bound: usize) -> Result<Status> {
    let rule = load_rule(file)?;
    let permutive = rule.is_left_permutive();
    let effective = rule.effective_anticipation();
    let injective = rule.is_injective(DEFAULT_TABLE_BUDGET)?;
    let order = rule.identity_order(bound, DEFAULT_TABLE_BUDGET)?;
    let additive = AdditiveForm::detect(&rule).map(|f| {
        json!({"coefficient": f.coefficient, "theta": f.theta})
    });
    let case = if permutive && effective > 0 {
        Some(dichotomy_case(&rule, bound, DEFAULT_TABLE_BUDGET)?)
    } else {
        None
    };
    let details = json!({
        "alphabet": rule.alphabet(),
        "anticipation": rule.anticipation(),
        "effective_anticipation": effective,
        "left_permutive": permutive,
        "injective": injective,
        "identity_order": order,
        "identity_bound": bound,
        "additive": additive,
    });
    let record = Record::new("rule_info", &rule)
        .with_verdict(case.as_ref().map(|c| c.name()))
        .with_details(&details);
    out.emit(&record, || {
        let mut lines = vec![
            format!("alphabet              {}", rule.alphabet()),
            format!("anticipation          {}", rule.anticipation()),
            format!("effective anticipation {effective}"),
            format!("left permutive        {permutive}"),
            format!("injective             {injective}"),
            match order {
                Some(m) => format!("identity order        {m}"),
                None => format!("identity order        none up to {bound}"),
            },
        ];
        if let Some(f) = AdditiveForm::detect(&rule) {
            lines.push(format!("additive              a = {}, theta = {:?}", f.coefficient, f.theta));
        }
        if let Some(c) = &case {
            lines.push(format!("dichotomy             {}", c.name()));
        }
        lines.join("\n")
    });
    Ok(Status::Ok)
}

fn rule_power(out: &Out, file: &Path, n: usize, trim: bool) -> Result<Status> {
    let rule = load_rule(file)?;
    let pw = if trim {
        rule.power_trimmed(n, DEFAULT_TABLE_BUDGET)?
    } else {
        rule.power(n)?
    };
    let text = RuleFile::Table(pw.clone()).to_string();
    let record = Record::new("rule_power", &rule).with_details(json!({
        "n": n,
        "anticipation": pw.anticipation(),
        "effective_anticipation": pw.effective_anticipation(),
        "rule": text,
    }));
    out.emit(&record, || text.trim_end().to_string());
    Ok(Status::Ok)
}

fn tails_enum(out: &Out, file: &Path, power: usize, max_transient: usize, max_period: usize) -> Result<Status> {
    let rule = load_rule(file)?;
    if power == 0 {
        bail!("--power must be at least 1");
    }
    let tails = enumerate_fixed_tails(&rule, power, max_transient, max_period, Exec::default())?;
    for t in &tails {
        let record = Record::new("tail", &rule)
            .with_tail(t)
            .with_details(json!({"power": power}));
        out.emit(&record, || t.to_string());
    }
    if !out.json {
        eprintln!("{} tails", tails.len());
    }
    Ok(Status::Ok)
}

fn run_signature(out: &Out, point: &PointArgs, sig_args: &SigArgs) -> Result<Status> {
    let (rule, config) = load_point(point)?;
    let sig = extract(&rule, &config, sig_args)?;
    let record = Record::new("signature", &rule)
        .with_tail(&config.tail)
        .with_signature(&sig)
        .with_verdict(sig.status.clone())
        .with_details(json!({"left": config.left.to_string(), "anchor": config.anchor, "depth": sig_args.depth}));
    out.emit(&record, || stages_text(&sig));
    Ok(Status::Ok)
}

fn run_conjugacy(out: &Out, point: &PointArgs, sig_args: &SigArgs, iters: u64) -> Result<Status> {
    let (rule, config) = load_point(point)?;
    let sig = extract(&rule, &config, sig_args)?;
    let report = verify_conjugacy(&config, &rule, &sig, iters, Exec::default())?;
    let passed = report.passed();
    let record = Record::new("conjugacy", &rule)
        .with_tail(&config.tail)
        .with_signature(&sig)
        .with_verdict(if passed { Verdict::Pass } else { Verdict::Fail })
        .with_violations(report.violations.clone())
        .with_details(json!({
            "iterations": report.iterations,
            "pairs_checked": report.pairs_checked,
            "violation_count": report.violation_count,
        }));
    out.emit(&record, || {
        let mut lines = vec![
            format!("stages      {}", stages_text(&sig)),
            format!("iterations  {}", report.iterations),
            format!("pairs       {}", report.pairs_checked),
            format!("violations  {}", report.violation_count),
        ];
        for v in &report.violations {
            lines.push(format!("  {} m={} n={} level={}", v.kind, v.m, v.n, v.level));
        }
        lines.push(if passed { "PASS".into() } else { "FAIL".into() });
        lines.join("\n")
    });
    Ok(if passed { Status::Ok } else { Status::Falsified })
}

fn run_classify(out: &Out, point: &PointArgs, sig_args: &SigArgs) -> Result<Status> {
    let (rule, config) = load_point(point)?;
    let expected = match classify_expected(&rule, &config.tail, sig_args.q_max) {
        Ok(e) => e,
        Err(Error::NotAdditiveForm) => ExpectedProfile::NotCovered {
            reason: "rule is not additive".into(),
        },
        Err(e) => return Err(e.into()),
    };
    let (sig, verdict) = if let ExpectedProfile::NotCovered { .. } = expected {
        (None, Verdict::Unknown)
    } else {
        let sig = extract(&rule, &config, sig_args)?;
        let v = check_profile(&expected, &sig);
        (Some(sig), v)
    };
    let mut record = Record::new("classify", &rule)
        .with_tail(&config.tail)
        .with_verdict(verdict)
        .with_details(json!({"expected": &expected, "left": config.left.to_string(), "depth": sig_args.depth}));
    if let Some(sig) = &sig {
        record = record.with_signature(sig);
    }
    out.emit(&record, || {
        let mut line = format!("{} expected {expected}", verdict.name());
        if let Some(sig) = &sig {
            line.push_str(&format!(", stages {}", stages_text(sig)));
        }
        line
    });
    Ok(match verdict {
        Verdict::Fail => Status::Falsified,
        _ => Status::Ok,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_prevalence(
    out: &Out,
    file: &Path,
    tail: &str,
    trials: u64,
    depth: usize,
    window: usize,
    seed: u64,
    detail: bool,
) -> Result<Status> {
    let rule = load_rule(file)?;
    let tail: EventuallyPeriodicWord = tail.parse().context("--tail")?;
    let stats = sample_prevalence(&rule, &tail, trials, depth, window, seed, Exec::default())?;
    if detail || out.json {
        for rec in &stats.records {
            let record = Record::new("trial", &rule)
                .with_tail(&tail)
                .with_verdict(&rec.verdict)
                .with_details(json!({"trial": rec.trial, "left": rec.left, "anchor": rec.anchor}));
            out.emit(&record, || format!("{:>5} {} {}", rec.trial, rec.verdict.name(), rec.left));
        }
    }
    let summary = Record::new("prevalence", &rule).with_tail(&tail).with_details(json!({
        "seed": stats.seed,
        "trials": stats.trials,
        "depth": stats.depth,
        "window": stats.window,
        "infinite_so_far": stats.infinite_so_far,
        "cycle_found": stats.cycle_found,
        "inconclusive": stats.inconclusive,
        "fraction": stats.fraction,
        "histogram": stats.histogram,
        "identity_order": stats.identity_order,
        "caveat": "verdicts are bounded by depth and window",
    }));
    out.emit(&summary, || {
        let mut lines = vec![
            format!("trials          {}", stats.trials),
            format!("infinite so far {}", stats.infinite_so_far),
            format!("cycle found     {}", stats.cycle_found),
            format!("inconclusive    {}", stats.inconclusive),
        ];
        if let Some(f) = stats.fraction {
            lines.push(format!("fraction        {f:.4}"));
        }
        for (moduli, count) in &stats.histogram {
            lines.push(format!("  ({moduli}) x{count}"));
        }
        if let Some(m) = stats.identity_order {
            lines.push(format!("every orbit is finite: power {m} is the identity"));
        }
        lines.push(format!("(bounded verdicts: depth {}, window {})", stats.depth, stats.window));
        lines.join("\n")
    });
    Ok(Status::Ok)
}

fn run_periodic(out: &Out, file: &Path, word: &str, bound: usize, max_spatial: usize) -> Result<Status> {
    let rule = load_rule(file)?;
    let word = lpca::word::parse_symbols(word).context("--word")?;
    let found = periodic_point_search(&rule, &word, bound, max_spatial, Exec::default())?;
    let record = Record::new("periodic_point", &rule).with_details(&found);
    out.emit(&record, || match &found {
        Some(pt) => format!(
            "block {} spatial period {} temporal period {}",
            lpca::word::format_symbols(&pt.block),
            pt.spatial_period,
            pt.temporal_period
        ),
        None => format!("none with spatial period <= {max_spatial} and temporal period <= {bound}"),
    });
    Ok(Status::Ok)
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("window {text:?} is not A:B"))?;
    let a: i64 = a.trim().parse().with_context(|| format!("window start {a:?}"))?;
    let b: i64 = b.trim().parse().with_context(|| format!("window end {b:?}"))?;
    if a > b {
        bail!("window {text:?} is empty");
    }
    Ok((a, b))
}

fn run_render(out: &Out, point: &PointArgs, window: &str, steps: usize, output: &Path) -> Result<Status> {
    let (rule, config) = load_point(point)?;
    let (a, b) = parse_window(window)?;
    let rows = spacetime_window(&config, &rule, -a, b, steps)?;
    let image = pgm::render(&rows, rule.alphabet())?;
    fs::write(output, image).with_context(|| format!("writing {}", output.display()))?;
    let record = Record::new("render", &rule).with_tail(&config.tail).with_details(json!({
        "left": config.left.to_string(),
        "window": [a, b],
        "steps": steps,
        "output": output.display().to_string(),
    }));
    out.emit(&record, || format!("wrote {} ({}x{})", output.display(), b - a + 1, steps + 1));
    Ok(Status::Ok)
}

fn run(cli: Cli) -> Result<Status> {
    let out = Out { json: cli.json };
    match cli.command {
        Command::Rule(RuleCommand::Info { file, bound }) => rule_info(&out, &file, bound),
        Command::Rule(RuleCommand::Power { file, n, trim }) => rule_power(&out, &file, n, trim),
        Command::Tails(TailsCommand::Enum {
            file,
            power,
            max_transient,
            max_period,
        }) => tails_enum(&out, &file, power, max_transient, max_period),
        Command::Signature { point, sig } => run_signature(&out, &point, &sig),
        Command::Conjugacy { point, sig, iters } => run_conjugacy(&out, &point, &sig, iters),
        Command::Classify { point, sig } => run_classify(&out, &point, &sig),
        Command::Prevalence {
            file,
            tail,
            trials,
            depth,
            window,
            seed,
            trials_detail,
        } => run_prevalence(&out, &file, &tail, trials, depth, window, seed, trials_detail),
        Command::PeriodicSearch {
            file,
            word,
            bound,
            max_spatial,
        } => run_periodic(&out, &file, &word, bound, max_spatial),
        Command::Render {
            point,
            window,
            steps,
            output,
        } => run_render(&out, &point, &window, steps, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Falsified) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
