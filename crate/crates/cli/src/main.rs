use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use nonsing::charclasses::{chern_jet1_line, projective_line_report, sw_virtual};
use nonsing::cohomology::{Coefficients, TruncatedRing};
use nonsing::ext::{ext_chart, render_chart, resolve, ChartFormat};
use nonsing::module::SteenrodModule;
use nonsing::repro::{parity_h2, Verdict, STEM, WINDOW_S, WINDOW_T};
use nonsing::stablerange::{
    projective_space_betti, render_e1_zones, stability_bound, stable_series, RangeInput,
    ZoneFormat, ZoneParams,
};
use nonsing::steenrod::SteenrodAlgebra;
use nonsing::thom::build_thom_module;

#[derive(Parser)]
#[command(
    name = "nonsing",
    version,
    about = "Stable homology of non-singular sections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability range for a Taylor condition.
    Range(RangeArgs),
    /// Total Stiefel-Whitney class of J1 O(d) - T CP^n.
    Sw(ProjectiveArgs),
    /// Total Chern class of J1 O(d) on CP^n.
    Chern(ProjectiveArgs),
    /// Thom module of J1 O(d) - T CP^n, as JSON.
    Thom(ThomArgs),
    /// Ext chart of a module file.
    Ext(ExtArgs),
    /// Stable rational cohomology series.
    StableBetti(BettiArgs),
    /// Support zones of the first page of the Vassiliev spectral sequence.
    E1Zones(ZoneArgs),
    /// H_2 of non-singular sections of O(d) on CP^2, from the Adams E2 page.
    ReproH2(ReproArgs),
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, default_value_t = 1)]
    n: i64,
    #[arg(long, default_value_t = 1)]
    r: i64,
    /// Jet ampleness (d for O(d) on projective space).
    #[arg(long = "d", alias = "amp")]
    amp: i64,
    /// Use the zero section of the jet bundle as the Taylor condition.
    #[arg(long)]
    zero_section: bool,
    #[arg(long, conflicts_with = "zero_section")]
    rk: Option<i64>,
    /// Real codimension of the Taylor condition.
    #[arg(long, conflicts_with = "zero_section")]
    codim: Option<i64>,
}

#[derive(Args)]
struct ProjectiveArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: i64,
}

#[derive(Args)]
struct ThomArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: i64,
    #[arg(long, default_value_t = 2)]
    thom_degree: i32,
}

#[derive(Args)]
struct ExtArgs {
    #[arg(long)]
    module: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_s: u32,
    #[arg(long, default_value_t = 12)]
    max_t: i32,
    #[arg(long, default_value = "ascii")]
    format: String,
}

#[derive(Args)]
struct BettiArgs {
    /// Betti numbers of CP^n.
    #[arg(long, conflicts_with_all = ["betti", "betti_file"])]
    cpn: Option<usize>,
    /// Comma-separated b0,b1,...
    #[arg(long, value_delimiter = ',', conflicts_with = "betti_file")]
    betti: Option<Vec<u64>>,
    /// File of "deg: dim" lines.
    #[arg(long)]
    betti_file: Option<PathBuf>,
    #[arg(long = "max")]
    max_deg: usize,
    /// Print "deg: dim" lines and generators instead of one line.
    #[arg(long)]
    lines: bool,
}

#[derive(Args)]
struct ZoneArgs {
    #[arg(long = "N", conflicts_with_all = ["n", "r", "amp"], requires = "e")]
    big_n: Option<i64>,
    #[arg(long)]
    e: Option<i64>,
    /// Optional upper cutoff t <= 2|s| rk.
    #[arg(long)]
    rk: Option<i64>,
    #[arg(long, requires_all = ["r", "amp"])]
    n: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    amp: Option<i64>,
    #[arg(long, default_value_t = 8)]
    tmax: u32,
    #[arg(long, default_value = "ascii")]
    format: String,
}

#[derive(Args)]
struct ReproArgs {
    #[arg(long)]
    d: i64,
    /// Format of the chart printed when the result is inconclusive.
    #[arg(long, default_value = "ascii")]
    format: String,
}

/// Failures carry their exit code.
enum Failure {
    Invalid(anyhow::Error),
    Parse(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

type CmdResult = Result<String, Failure>;

fn invalid<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Invalid(e.into())
}

fn cmd_range(a: &RangeArgs) -> CmdResult {
    let inp = if a.zero_section {
        RangeInput::zero_section(a.n, a.r, a.amp).map_err(invalid)?
    } else {
        let (Some(rk), Some(codim)) = (a.rk, a.codim) else {
            return Err(invalid(anyhow!(
                "give --zero-section or both --rk and --codim"
            )));
        };
        RangeInput {
            n: a.n,
            r: a.r,
            amp: a.amp,
            rk,
            codim_real: codim,
        }
    };
    Ok(stability_bound(&inp).map_err(invalid)?.to_string())
}

fn cmd_sw(a: &ProjectiveArgs) -> CmdResult {
    let w = sw_virtual(a.n, a.d).map_err(invalid)?;
    let mut out = format!("{w}\n");
    if a.n == 1 {
        out.push_str(&format!(
            "{}\n",
            projective_line_report(a.d).map_err(invalid)?
        ));
    }
    Ok(out)
}

fn cmd_chern(a: &ProjectiveArgs) -> CmdResult {
    Ok(format!("{}\n", chern_jet1_line(a.n, a.d).map_err(invalid)?))
}

fn cmd_thom(a: &ThomArgs) -> CmdResult {
    let ring = TruncatedRing::projective_space(a.n, Coefficients::F2);
    let w = sw_virtual(a.n, a.d).map_err(invalid)?;
    let module = build_thom_module(&ring, &w, a.thom_degree).map_err(invalid)?;
    Ok(module.render())
}

fn chart_format(s: &str) -> Result<ChartFormat, Failure> {
    s.parse::<ChartFormat>().map_err(invalid)
}

fn cmd_ext(a: &ExtArgs) -> CmdResult {
    let format = chart_format(&a.format)?;
    let text =
        fs::read_to_string(&a.module).with_context(|| format!("reading {}", a.module.display()))?;
    let module = SteenrodModule::parse(&text)
        .with_context(|| format!("parsing {}", a.module.display()))
        .map_err(Failure::Parse)?;
    let algebra = SteenrodAlgebra::default();
    let res = resolve(&algebra, &module, a.max_s, a.max_t).map_err(invalid)?;
    Ok(render_chart(&ext_chart(&res), format))
}

fn parse_betti_lines(text: &str) -> Result<Vec<u64>, Failure> {
    let mut betti = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = line.split_once(':').and_then(|(deg, dim)| {
            Some((
                deg.trim().parse::<usize>().ok()?,
                dim.trim().parse::<u64>().ok()?,
            ))
        });
        let Some((deg, dim)) = parsed else {
            return Err(Failure::Parse(anyhow!(
                "line {}: expected \"deg: dim\", got {line:?}",
                i + 1
            )));
        };
        if betti.len() <= deg {
            betti.resize(deg + 1, 0);
        }
        betti[deg] = dim;
    }
    Ok(betti)
}

fn cmd_stable_betti(a: &BettiArgs) -> CmdResult {
    let betti = if let Some(n) = a.cpn {
        projective_space_betti(n)
    } else if let Some(b) = &a.betti {
        b.clone()
    } else if let Some(path) = &a.betti_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        parse_betti_lines(&text)?
    } else {
        return Err(invalid(anyhow!(
            "give one of --cpn, --betti or --betti-file"
        )));
    };
    let series = stable_series(&betti, a.max_deg).map_err(invalid)?;
    if a.lines {
        let mut out = series.to_string();
        for g in &series.generators {
            out.push_str(&format!(
                "generators: {} in degree {} ({:?})\n",
                g.count, g.degree, g.parity
            ));
        }
        Ok(out)
    } else {
        let coeffs: Vec<String> = series.coefficients.iter().map(u128::to_string).collect();
        Ok(format!("{}\n", coeffs.join(" ")))
    }
}

fn cmd_e1_zones(a: &ZoneArgs) -> CmdResult {
    let format: ZoneFormat = a.format.parse().map_err(|e: String| invalid(anyhow!(e)))?;
    let params = match (a.big_n, a.e, a.n, a.r, a.amp) {
        (Some(big_n), Some(e), ..) => ZoneParams::new(big_n, e, a.rk).map_err(invalid)?,
        (None, _, Some(n), Some(r), Some(amp)) => {
            let inp = RangeInput::zero_section(n, r, amp).map_err(invalid)?;
            ZoneParams::from_input(&inp).map_err(invalid)?
        }
        _ => return Err(invalid(anyhow!("give --N and --e, or --n, --r and --amp"))),
    };
    Ok(render_e1_zones(&params, a.tmax, format))
}

fn cmd_repro_h2(a: &ReproArgs) -> CmdResult {
    let format = chart_format(&a.format)?;
    let algebra = SteenrodAlgebra::default();
    let report = parity_h2(&algebra, a.d).map_err(invalid)?;
    let mut out = String::new();
    out.push_str(&format!("w(J1 O({}) - T CP^2) = {}\n", a.d, report.w));
    let dims: Vec<String> = report
        .stem_dims
        .iter()
        .map(|(s, n)| format!("s={s}:{n}"))
        .collect();
    out.push_str(&format!(
        "stem {STEM} E2 (s <= {WINDOW_S}, t <= {WINDOW_T}): {}\n",
        dims.join(" ")
    ));
    out.push_str(&format!("stem {STEM} total: {}\n", report.stem_total));
    if report.differentials.is_empty() {
        out.push_str(&format!(
            "possible differentials touching stem {STEM}: none\n"
        ));
    } else {
        for p in &report.differentials {
            out.push_str(&format!(
                "possible d{}: (s={}, t={}) -> (s={}, t={})\n",
                p.r, p.source.0, p.source.1, p.target.0, p.target.1
            ));
        }
    }
    if report.verdict == Verdict::Inconclusive {
        out.push_str(&render_chart(&report.chart, format));
    }
    out.push_str(&format!("{}\n", report.verdict));
    Ok(out)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Range(a) => cmd_range(a),
        Command::Sw(a) => cmd_sw(a),
        Command::Chern(a) => cmd_chern(a),
        Command::Thom(a) => cmd_thom(a),
        Command::Ext(a) => cmd_ext(a),
        Command::StableBetti(a) => cmd_stable_betti(a),
        Command::E1Zones(a) => cmd_e1_zones(a),
        Command::ReproH2(a) => cmd_repro_h2(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
