//! `swld`: plan, encode, decode and simulate syndrome coding with
//! decoder side information.

mod files;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swld::codec::{decode, encode, write_transcript_csv, Code, DecodeStatus, FeedbackDecoder, SyndromePacket};
use swld::correlation::{CorrelationModel, WindowPolicy};
use swld::crc::CrcSpec;
use swld::gf::{Field, Symbol};
use swld::listdecode::GsConfig;
use swld::planner::{
    default_grid, plan_feedback_runtime, plan_with, sweep, write_sweep_csv, Family, RatePlan,
};

#[derive(Parser)]
#[command(name = "swld", version, about = "Syndrome source coding with list decoding")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Choose a code and print its rates.
    Plan(PlanArgs),
    /// Compress a source file into concatenated syndrome packets.
    Encode(EncodeArgs),
    /// Recover the source from packets and a side-information file.
    Decode(DecodeArgs),
    /// Encode and decode random blocks over a simulated channel.
    Simulate(SimulateArgs),
    /// Write rate curves over a grid of p as CSV.
    Sweep(SweepArgs),
    /// Simulate the feedback protocol and write round transcripts.
    FeedbackSim(FeedbackArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeArg {
    Rs,
    Bch,
}

impl From<CodeArg> for Family {
    fn from(c: CodeArg) -> Self {
        match c {
            CodeArg::Rs => Family::Rs,
            CodeArg::Bch => Family::Bch,
        }
    }
}

#[derive(Args, Clone)]
struct Channel {
    /// Alphabet size (2 for BCH).
    #[arg(long, default_value_t = 256)]
    q: usize,
    /// Block length.
    #[arg(long, default_value_t = 255)]
    n: usize,
    /// Probability that a side-information symbol differs from the source.
    #[arg(long)]
    p: f64,
    /// Target decoding error rate.
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = CodeArg::Rs)]
    code: CodeArg,
    /// Decoder multiplicity (default 4 for RS, 1 for BCH).
    #[arg(long)]
    mult: Option<usize>,
    /// CRC registry id (default depends on the code family).
    #[arg(long)]
    crc: Option<u8>,
}

impl Channel {
    fn family(&self) -> Family {
        self.code.into()
    }

    fn multiplicity(&self) -> usize {
        self.mult.unwrap_or(match self.code {
            CodeArg::Rs => 4,
            CodeArg::Bch => 1,
        })
    }

    fn plan(&self) -> Result<RatePlan, Failure> {
        if self.multiplicity() == 0 {
            return Err(Failure::usage("--mult must be at least 1"));
        }
        plan_with(self.q, self.n, self.p, self.eps, self.family(), self.multiplicity()).map_err(Failure::usage)
    }

    fn code_and_crc(&self, plan: &RatePlan) -> Result<(Code, CrcSpec), Failure> {
        let code = match plan.family {
            Family::Rs => Code::rs(plan.m, plan.k),
            Family::Bch => Code::bch(plan.m, plan.k),
        }
        .map_err(Failure::usage)?;
        let field = code_field(&code);
        let crc = match self.crc {
            Some(id) => CrcSpec::from_id(id, &field).map_err(Failure::usage)?,
            None => CrcSpec::from_id(plan.crc_id, &field).map_err(Failure::usage)?,
        };
        Ok((code, crc))
    }

    fn gs_config(&self) -> GsConfig {
        GsConfig::with_multiplicity(self.multiplicity())
    }
}

fn code_field(code: &Code) -> Field {
    use swld::listdecode::LinearCode;
    code.symbol_field().clone()
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    channel: Channel,
    /// Also write the plan as a CSV row to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    channel: Channel,
    /// Source file of packed symbols.
    #[arg(long = "in")]
    input: PathBuf,
    /// Packet file to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecodeArgs {
    /// Packet file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Side-information file of packed symbols.
    #[arg(long)]
    side: PathBuf,
    /// Reconstructed source file to write.
    #[arg(long)]
    out: PathBuf,
    /// Decoder multiplicity (default 4 for RS, 1 for BCH).
    #[arg(long)]
    mult: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    channel: Channel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 256)]
    q: usize,
    #[arg(long, default_value_t = 255)]
    n: usize,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = CodeArg::Rs)]
    code: CodeArg,
    /// Largest grid value of p; the grid step is 0.01.
    #[arg(long, default_value_t = 0.5)]
    p_max: f64,
    /// CSV file to write (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FeedbackArgs {
    #[command(flatten)]
    channel: Channel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Error-count window `l,h` (default: equal tails of eps/2).
    #[arg(long, value_parser = parse_window)]
    window: Option<(usize, usize)>,
    /// Transcript CSV to write (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (l, h) = s.split_once(',').ok_or("expected l,h")?;
    let l = l.trim().parse().map_err(|e| format!("{e}"))?;
    let h = h.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((l, h))
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }

    fn decode(message: String) -> Self {
        Failure { code: 1, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Plan(a) => run_plan(a),
        Cmd::Encode(a) => run_encode(a),
        Cmd::Decode(a) => run_decode(a),
        Cmd::Simulate(a) => run_simulate(a),
        Cmd::Sweep(a) => run_sweep(a),
        Cmd::FeedbackSim(a) => run_feedback(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "INFEASIBLE".into(), |v| v.to_string())
}

fn format_plan(p: &RatePlan) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: String| writeln!(s, "{k:<18}{v}").unwrap();
    line("family", p.family.to_string());
    line("q", p.q.to_string());
    line("n", p.n.to_string());
    line("p", p.p.to_string());
    line("eps", format!("{:e}", p.eps));
    line("T_eps", p.t_eps.to_string());
    line("code", format!("({},{})", p.n, p.k));
    if let Some(d) = p.delta {
        line("bose distance", d.to_string());
    }
    line("planning radius", format!("{:.2}", p.tau));
    line("crc", format!("id {} ({} symbols)", p.crc_id, p.rho));
    line("rate", format!("{:.4}", p.rate_no_crc));
    line("rate with crc", format!("{:.4}", p.rate_with_crc));
    line(
        "unique decoding",
        p.unique_alt
            .map_or_else(|| "INFEASIBLE".into(), |u| format!("({},{}) rate {:.4}", p.n, u.k, u.rate)),
    );
    line("H(X|Y)", format!("{:.4}", p.h_cond));
    line("gap", format!("{:.4}", p.gap));
    match p.runtime_radius {
        Some(r) => {
            line("runtime radius", format!("{r} at multiplicity {}", p.runtime_multiplicity));
            if !p.runtime_reaches_t_eps() {
                line("note", "runtime radius is below T_eps; list decoding to T_eps is planning-only".into());
            }
        }
        None => line("runtime radius", "via the RS supercode".into()),
    }
    s
}

fn run_plan(a: &PlanArgs) -> Result<(), Failure> {
    let plan = a.channel.plan()?;
    print!("{}", format_plan(&plan));
    if let Some(path) = &a.out {
        let mut s = String::from("family,q,n,p,eps,t_eps,k,tau,rho,rate_no_crc,rate_with_crc,rate_unique,h_cond,gap\n");
        writeln!(
            s,
            "{},{},{},{},{:e},{},{},{:.6},{},{:.6},{:.6},{},{:.6},{:.6}",
            plan.family,
            plan.q,
            plan.n,
            plan.p,
            plan.eps,
            plan.t_eps,
            plan.k,
            plan.tau,
            plan.rho,
            plan.rate_no_crc,
            plan.rate_with_crc,
            opt(plan.unique_alt.map(|u| format!("{:.6}", u.rate))),
            plan.h_cond,
            plan.gap
        )
        .unwrap();
        std::fs::write(path, s)?;
    }
    Ok(())
}

fn run_encode(a: &EncodeArgs) -> Result<(), Failure> {
    let plan = a.channel.plan()?;
    let (code, crc) = a.channel.code_and_crc(&plan)?;
    let blocks = files::read_blocks(&a.input, code.family(), code.m(), code.n())?;
    let mut out = Vec::new();
    for x in &blocks {
        let pkt = encode(x, &code, &crc).map_err(Failure::usage)?;
        out.extend(pkt.to_bytes().map_err(Failure::usage)?);
    }
    std::fs::write(&a.out, out)?;
    Ok(())
}

fn run_decode(a: &DecodeArgs) -> Result<(), Failure> {
    let bytes = std::fs::read(&a.input)?;
    let mut packets = Vec::new();
    let mut rest = &bytes[..];
    while !rest.is_empty() {
        let (pkt, tail) = SyndromePacket::split_first(rest).map_err(Failure::usage)?;
        packets.push(pkt);
        rest = tail;
    }
    let first = packets.first().ok_or_else(|| Failure::usage("packet file is empty"))?;
    let family = first.family;
    let sides = files::read_blocks(&a.side, family, first.m as u32, first.n)?;
    if sides.len() != packets.len() {
        return Err(Failure::usage(format!(
            "{} packets but {} side-information blocks",
            packets.len(),
            sides.len()
        )));
    }
    let mult = a.mult.unwrap_or(match family {
        Family::Rs => 4,
        Family::Bch => 1,
    });
    if mult == 0 {
        return Err(Failure::usage("--mult must be at least 1"));
    }
    let cfg = GsConfig::with_multiplicity(mult);
    let mut recovered = Vec::new();
    for (i, (pkt, y)) in packets.iter().zip(&sides).enumerate() {
        if pkt.family != family || pkt.n != first.n || pkt.m != first.m {
            return Err(Failure::usage(format!("packet {i} uses a different code")));
        }
        let out = decode(pkt, y, &cfg).map_err(Failure::usage)?;
        match out.recovered {
            Some(x) if out.status == DecodeStatus::Success => recovered.push(x),
            _ => return Err(Failure::decode(format!("{} (block {i}, list size {})", out.status, out.list_size))),
        }
    }
    files::write_blocks(&a.out, &recovered, family, first.m as u32)?;
    Ok(())
}

fn random_block(n: usize, q: usize, rng: &mut ChaCha8Rng) -> Vec<Symbol> {
    (0..n).map(|_| rng.gen_range(0..q) as Symbol).collect()
}

fn run_simulate(a: &SimulateArgs) -> Result<(), Failure> {
    let plan = a.channel.plan()?;
    let (code, crc) = a.channel.code_and_crc(&plan)?;
    let field = code_field(&code);
    let q = field.size();
    let model = CorrelationModel::new(field, a.channel.p, a.seed).map_err(Failure::usage)?;
    let cfg = a.channel.gs_config();
    let radius = code.runtime_radius(cfg.multiplicity).map_err(Failure::usage)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut within = 0;
    for _ in 0..a.trials {
        let x = random_block(code.n(), q, &mut rng);
        let (y, e) = model.sample_side_info_with(&x, &mut rng);
        within += usize::from(e <= radius);
        let out = decode(&encode(&x, &code, &crc).map_err(Failure::usage)?, &y, &cfg).map_err(Failure::usage)?;
        let key = match out.recovered {
            Some(r) if r == x => "SUCCESS",
            Some(_) => "WRONG_SUCCESS",
            None => out.status.as_str(),
        };
        *counts.entry(key).or_default() += 1;
    }
    let stdout = io::stdout();
    let mut w = stdout.lock();
    writeln!(w, "code              ({},{})", code.n(), code.k())?;
    writeln!(w, "runtime radius    {radius} at multiplicity {}", cfg.multiplicity)?;
    writeln!(w, "trials            {}", a.trials)?;
    writeln!(w, "within radius     {within}")?;
    for (status, c) in &counts {
        writeln!(w, "{status:<18}{c}")?;
    }
    Ok(())
}

fn run_sweep(a: &SweepArgs) -> Result<(), Failure> {
    if !(a.p_max > 0.0 && a.p_max < 1.0) {
        return Err(Failure::usage("--p-max must be in (0, 1)"));
    }
    let rows = sweep(a.q, a.n, a.eps, a.code.into(), &default_grid(a.p_max)).map_err(Failure::usage)?;
    match &a.out {
        Some(path) => write_sweep_csv(&rows, std::fs::File::create(path)?),
        None => write_sweep_csv(&rows, io::stdout().lock()),
    }
    .map_err(Failure::usage)
}

fn run_feedback(a: &FeedbackArgs) -> Result<(), Failure> {
    let ch = &a.channel;
    if ch.family() != Family::Rs {
        return Err(Failure::usage("feedback-sim supports --code rs only"));
    }
    let policy = match a.window {
        Some((l, h)) => WindowPolicy::Fixed { l, h },
        None => WindowPolicy::EqualSplit,
    };
    let mult = ch.multiplicity();
    if mult == 0 {
        return Err(Failure::usage("--mult must be at least 1"));
    }
    let sched = plan_feedback_runtime(ch.q, ch.n, ch.p, ch.eps, policy, mult).map_err(Failure::usage)?;
    let field = Field::new(ch.q.trailing_zeros()).map_err(Failure::usage)?;
    let crc = match ch.crc {
        Some(id) => CrcSpec::from_id(id, &field).map_err(Failure::usage)?,
        None => CrcSpec::default_for(&field),
    };
    if crc.rho() != sched.rho {
        return Err(Failure::usage(format!("the schedule is planned for a {}-symbol CRC", sched.rho)));
    }
    let decoder = FeedbackDecoder::new(sched, crc).map_err(Failure::usage)?;
    let model = CorrelationModel::new(field, ch.p, a.seed).map_err(Failure::usage)?;
    let cfg = GsConfig::with_multiplicity(mult);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut records = Vec::new();
    let (mut ok, mut total) = (0, 0.0);
    for _ in 0..a.trials {
        let x = random_block(ch.n, ch.q, &mut rng);
        let (y, _) = model.sample_side_info_with(&x, &mut rng);
        let run = decoder.run(&x, &y, &cfg).map_err(Failure::usage)?;
        ok += usize::from(run.outcome.recovered.as_deref() == Some(&x[..]));
        total += run.realized_rate();
        records.extend(run.transcript);
    }
    match &a.out {
        Some(path) => write_transcript_csv(&records, std::fs::File::create(path)?),
        None => write_transcript_csv(&records, io::stdout().lock()),
    }
    .map_err(Failure::usage)?;
    eprintln!(
        "{ok}/{} recovered, mean rate {:.5}, planned {:.5}",
        a.trials,
        total / a.trials.max(1) as f64,
        decoder.schedule().expected_rate_with_crc
    );
    Ok(())
}
