//! `fusionkit`: runs the verification suites, emits decomposition diagrams,
//! and computes chain posets for user-supplied finite groups.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use fusionkit_core::cases::{
    aut_gamma_summary, builtin_group, emit_decomposition, run_suite, BuiltinGroup, Case, CaseConfig, Summary,
    VerificationReport,
};
use fusionkit_core::fingroup::symmetric;
use fusionkit_core::fusion::{collapse, ChainAutReport, DecompositionDiagram, FusionData, SdPoset};
use fusionkit_core::{CayleyTable, Group, DEFAULT_CAP};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "fusionkit", version, about = "Normalizer decompositions of fusion systems, verified exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, env = "FUSIONKIT_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "FUSIONKIT_OUT")]
    out: Option<PathBuf>,
    /// Closure cap for matrix groups.
    #[arg(long, global = true, env = "FUSIONKIT_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the verification suite for one selection, or for all of them.
    Verify {
        #[command(flatten)]
        sel: Selection,
        /// Every supported (case, prime, index) selection.
        #[arg(long)]
        all: bool,
    },
    /// Emit the chain poset and the collapsed decomposition diagram.
    Decompose {
        #[command(flatten)]
        sel: Selection,
    },
    /// Brute-force Aut(Γ) and its extension by GL2(F_p).
    AutGamma {
        #[arg(long, env = "FUSIONKIT_PRIME")]
        prime: u32,
    },
    /// Chain poset of a finite group given by its multiplication table.
    Fusion {
        /// JSON file {order, mult, labels, prime}.
        #[arg(long)]
        input: PathBuf,
        /// Overrides the prime stored in the file.
        #[arg(long, env = "FUSIONKIT_PRIME")]
        prime: Option<u32>,
    },
    /// Export a builtin group as JSON.
    DumpGroup {
        /// gamma, rho, chain, full (matrix groups) or symmetric (table).
        #[arg(long)]
        group: String,
        #[arg(long, env = "FUSIONKIT_PRIME")]
        prime: Option<u32>,
        /// Degree of the symmetric group.
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
struct Selection {
    #[arg(long, env = "FUSIONKIT_CASE", value_parser = parse_case)]
    case: Option<Case>,
    #[arg(long, env = "FUSIONKIT_PRIME")]
    prime: Option<u32>,
    /// Shephard–Todd index of an AZ group (12, 29, 31, 34).
    #[arg(long, env = "FUSIONKIT_INDEX")]
    index: Option<u32>,
    /// Truncation level of the discrete tori.
    #[arg(long, env = "FUSIONKIT_LEVEL", default_value_t = 1)]
    level: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse()
}

impl Selection {
    fn config(&self, cap: usize) -> Result<CaseConfig> {
        let case = self.case.context("--case is required (up, sup or az)")?;
        Ok(CaseConfig::new(case, self.prime, self.level, self.index)?.with_cap(cap))
    }

    fn is_empty(&self) -> bool {
        self.case.is_none() && self.prime.is_none() && self.index.is_none()
    }
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(body: T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { schema_version: SCHEMA_VERSION, body })?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct Batch<'a> {
    reports: &'a [VerificationReport],
    summary: Summary,
    all_pass: bool,
}

#[derive(Serialize)]
struct DecompositionOut<'a> {
    case: Case,
    prime: u32,
    level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    az_index: Option<u32>,
    poset: &'a SdPoset,
    diagram: &'a DecompositionDiagram,
    checks: &'a VerificationReport,
}

#[derive(Serialize)]
struct ClassOut {
    id: usize,
    chain: Vec<String>,
    conjugates_in_s: usize,
    orders: Vec<usize>,
    report: ChainAutReport,
}

#[derive(Serialize)]
struct FusionOut {
    prime: u32,
    order: usize,
    sylow_order: usize,
    centric_radical_orders: Vec<usize>,
    classes: Vec<ClassOut>,
    poset: SdPoset,
    diagram: DecompositionDiagram,
    all_hold: bool,
}

/// Rendered output and whether every check held.
struct Outcome {
    text: String,
    ok: bool,
}

fn format_error(format: Format, command: &str) -> anyhow::Error {
    anyhow::anyhow!("format {format:?} is not available for `{command}`")
}

fn verify(sel: &Selection, all: bool, format: Format, cap: usize) -> Result<Outcome> {
    if format == Format::Dot {
        return Err(format_error(format, "verify"));
    }
    let configs = if all {
        if !sel.is_empty() {
            bail!("--all cannot be combined with --case, --prime or --index");
        }
        CaseConfig::matrix(sel.level).into_iter().map(|c| c.with_cap(cap)).collect()
    } else {
        vec![sel.config(cap)?]
    };
    let reports: Vec<VerificationReport> = configs.par_iter().map(run_suite).collect();
    let summary = reports.iter().fold(Summary::default(), |mut acc, r| {
        acc.pass += r.summary.pass;
        acc.fail += r.summary.fail;
        acc.skipped += r.summary.skipped;
        acc
    });
    let ok = summary.fail == 0;
    let text = match (format, all) {
        (Format::Json, false) => to_json(&reports[0])?,
        (Format::Json, true) => to_json(Batch { reports: &reports, summary, all_pass: ok })?,
        _ => {
            let mut s: String = reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
            if all {
                let _ = writeln!(
                    s,
                    "\ntotal: {} selections, {} pass, {} fail, {} skipped",
                    reports.len(),
                    summary.pass,
                    summary.fail,
                    summary.skipped
                );
            }
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn diagram_text(poset: &SdPoset, diagram: &DecompositionDiagram) -> String {
    let mut s = String::from("chain classes:\n");
    for n in &poset.nodes {
        let order = n.autl_order.map(|o| o.to_string()).unwrap_or_else(|| "?".into());
        let _ = writeln!(s, "  [{}] {}: {} ({})", n.id, n.chain.join(" < "), n.tag, order);
    }
    s.push_str("arrows:\n");
    for a in &poset.arrows {
        let _ = writeln!(s, "  {} -> {}{}", a.src, a.dst, if a.restriction_bijective { " (bijective)" } else { "" });
    }
    s.push_str("collapsed diagram:\n");
    for n in &diagram.nodes {
        let _ = writeln!(s, "  [{}] {}: {}", n.id, n.chain.join(" < "), n.tag);
    }
    for [a, b] in &diagram.edges {
        let _ = writeln!(s, "  {a} -> {b}");
    }
    s
}

fn decompose(sel: &Selection, format: Format, cap: usize) -> Result<Outcome> {
    let cfg = sel.config(cap)?;
    let d = emit_decomposition(&cfg)?;
    let ok = d.report.all_pass();
    let text = match format {
        Format::Json => to_json(DecompositionOut {
            case: cfg.case,
            prime: cfg.prime,
            level: cfg.level,
            az_index: cfg.az_index,
            poset: &d.poset,
            diagram: &d.diagram,
            checks: &d.report,
        })?,
        Format::Dot => {
            let name = match cfg.az_index {
                Some(i) => format!("{}_i{i}", cfg.case.name()),
                None => format!("{}_p{}", cfg.case.name(), cfg.prime),
            };
            d.diagram.to_dot(&name)
        }
        Format::Text => diagram_text(&d.poset, &d.diagram) + &d.report.to_text(),
    };
    Ok(Outcome { text, ok })
}

fn aut_gamma(prime: u32, format: Format) -> Result<Outcome> {
    let s = aut_gamma_summary(prime)?;
    let ok = s.holds();
    let text = match format {
        Format::Json => to_json(&s)?,
        Format::Text => format!(
            "|Aut(Γ)| = {} (expected {})\n|Inn(Γ)| = {}\nAut(Γ) → GL2(F_{}) onto: {}, kernel = Inn(Γ): {}\ncomplement: {}\n",
            s.aut_order,
            s.expected_order,
            s.inn_order,
            s.prime,
            s.onto_gl2,
            s.kernel_is_inn,
            s.complement_order.map(|o| format!("order {o}")).unwrap_or_else(|| "none".into())
        ),
        Format::Dot => return Err(format_error(format, "aut-gamma")),
    };
    Ok(Outcome { text, ok })
}

fn fusion(input: &PathBuf, prime: Option<u32>, format: Format) -> Result<Outcome> {
    let raw = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let (table, file_prime) =
        CayleyTable::from_json_str(&raw).with_context(|| format!("malformed group table in {}", input.display()))?;
    let p = prime.or(file_prime).context("no prime given (use --prime or a `prime` field)")?;
    let data = FusionData::new(&table, p as usize)?;
    let (poset, classes) = data.sd_poset()?;
    let diagram = collapse(&poset);
    let mut out_classes = Vec::with_capacity(classes.len());
    for (id, c) in classes.into_iter().enumerate() {
        let report = data.chain_aut(&c.rep)?;
        out_classes.push(ClassOut {
            id,
            chain: c.names,
            conjugates_in_s: c.conjugates_in_s,
            orders: c.rep.iter().map(|h| h.order()).collect(),
            report,
        });
    }
    let all_hold = out_classes.iter().all(|c| c.report.ses_identity && c.report.restriction_injective);
    let out = FusionOut {
        prime: p,
        order: table.order(),
        sylow_order: data.sylow().order(),
        centric_radical_orders: data.centric_radical().iter().map(|h| h.order()).collect(),
        classes: out_classes,
        poset,
        diagram,
        all_hold,
    };
    let text = match format {
        Format::Json => to_json(&out)?,
        Format::Dot => out.diagram.to_dot("fusion"),
        Format::Text => {
            let mut s = format!(
                "|G| = {}, p = {}, |S| = {}\ncentric radical orders: {:?}\n",
                out.order, p, out.sylow_order, out.centric_radical_orders
            );
            s += &diagram_text(&out.poset, &out.diagram);
            for c in &out.classes {
                let r = &c.report;
                let _ = writeln!(
                    s,
                    "  {}: |Aut_F| = {}, |Z| = {}, |Aut_L| = {} (by quotient {}), restriction injective: {}",
                    c.chain.join(" < "),
                    r.autf_order,
                    r.center_order,
                    r.autl_order,
                    r.autl_by_quotient,
                    r.restriction_injective
                );
            }
            s
        }
    };
    Ok(Outcome { text, ok: all_hold })
}

fn dump_group(group: &str, prime: Option<u32>, degree: usize, format: Format, cap: usize) -> Result<Outcome> {
    if format != Format::Json {
        return Err(format_error(format, "dump-group"));
    }
    let text = if group == "symmetric" {
        if !(1..=6).contains(&degree) {
            bail!("--degree must be between 1 and 6");
        }
        to_json(symmetric(degree).to_json(prime))?
    } else {
        let which: BuiltinGroup = group.parse().map_err(anyhow::Error::msg)?;
        let p = prime.context("--prime is required for matrix groups")?;
        let g = builtin_group(which, p, cap)?;
        to_json(g.to_json())?
    };
    Ok(Outcome { text, ok: true })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify { sel, all } => verify(sel, *all, cli.format, cli.cap),
        Command::Decompose { sel } => decompose(sel, cli.format, cli.cap),
        Command::AutGamma { prime } => aut_gamma(*prime, cli.format),
        Command::Fusion { input, prime } => fusion(input, *prime, cli.format),
        Command::DumpGroup { group, prime, degree } => dump_group(group, *prime, *degree, cli.format, cli.cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
