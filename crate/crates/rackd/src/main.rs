//! Command-line driver: classification runs with verifiable certificates,
//! witness re-verification, subrack censuses, survivor tables, cocycle
//! checks, and catalog rack dumps.
//!
//! Exit codes: 0 = verified outcome (including exceptions and negative
//! results), 1 = usage or input error, 2 = a certificate failed
//! verification, 3 = the classifier gave up within its caps (UNKNOWN).

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rack_core::cocycle::{braiding_check, CocycleFile};
use rack_core::group::{Ambient, ConjClassSpec, SplitPart};
use rack_core::perm::CycleType;
use rack_core::rack::{catalog_rack, two_generated_census, FiniteRack};
use rack_core::reps::{theorem_table, ClassOutcome, ClassReport};
use rack_core::typed::{
    check_witness, class_rack, classify, exhaustive_type_d_search, Caps, ExhaustiveOutcome,
    TypeDWitness, Verdict,
};

#[derive(Parser)]
#[command(name = "rackd", version, about = "Finite-rack collapse certificates for symmetric and alternating conjugacy classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupFlag {
    S,
    A,
}

impl From<GroupFlag> for Ambient {
    fn from(g: GroupFlag) -> Ambient {
        match g {
            GroupFlag::S => Ambient::Symmetric,
            GroupFlag::A => Ambient::Alternating,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitFlag {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CapArgs {
    /// Cap on explicit subgroup closures (default 1000000).
    #[arg(long)]
    cap_group: Option<usize>,
    /// Cap on conjugation orbits, i.e. class enumerations (default 100000).
    #[arg(long)]
    cap_orbit: Option<usize>,
    /// Cap on enumerated subracks in exhaustive searches (default 20000).
    #[arg(long)]
    cap_subracks: Option<usize>,
    /// Worker threads for table sweeps (output is order-independent).
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl CapArgs {
    /// Explicit flags beat the `RACKD_CAPS` environment variable, which
    /// holds comma-separated `key=value` pairs (keys: group, orbit,
    /// subracks); the environment beats the defaults.
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Ok(spec) = std::env::var("RACKD_CAPS") {
            for pair in spec.split(',') {
                let Some((key, value)) = pair.split_once('=') else { continue };
                let Ok(value) = value.trim().parse::<usize>() else { continue };
                match key.trim() {
                    "group" => caps.group_closure = value,
                    "orbit" => caps.class_orbit = value,
                    "subracks" => caps.subrack_enumeration = value,
                    _ => {}
                }
            }
        }
        if let Some(v) = self.cap_group {
            caps.group_closure = v;
        }
        if let Some(v) = self.cap_orbit {
            caps.class_orbit = v;
        }
        if let Some(v) = self.cap_subracks {
            caps.subrack_enumeration = v;
        }
        caps
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one conjugacy class; emits a checkable certificate.
    Classify {
        #[arg(long, ignore_case = true)]
        group: GroupFlag,
        #[arg(long)]
        m: usize,
        /// Cycle type, e.g. "1^2,2^2" or "2,3".
        #[arg(long = "type")]
        type_string: String,
        #[arg(long, ignore_case = true)]
        split: Option<SplitFlag>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the witness certificate to this path.
        #[arg(long)]
        emit_witness: Option<String>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Re-verify a witness certificate from scratch.
    Verify {
        /// Path to a witness JSON file.
        path: String,
    },
    /// Census of all proper two-generated subracks of a class.
    Census {
        #[arg(long, ignore_case = true)]
        group: GroupFlag,
        #[arg(long)]
        m: usize,
        #[arg(long = "type")]
        type_string: String,
        #[arg(long, ignore_case = true)]
        split: Option<SplitFlag>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Survivor tables over a range of degrees.
    Table {
        #[arg(long, ignore_case = true)]
        group: GroupFlag,
        #[arg(long)]
        m_from: usize,
        #[arg(long)]
        m_to: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Validate a cocycle file: the twisted identity and the braid equation.
    CocycleCheck {
        /// Path to a cocycle JSON file ({rack, cocycle}).
        path: String,
    },
    /// Exhaustive type-D decision on a small explicit rack or class.
    Exhaust {
        #[arg(long, ignore_case = true)]
        group: GroupFlag,
        #[arg(long)]
        m: usize,
        #[arg(long = "type")]
        type_string: String,
        #[arg(long, ignore_case = true)]
        split: Option<SplitFlag>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Dump a catalog rack as JSON.
    Rack {
        #[arg(long)]
        name: String,
    },
}

fn parse_spec(
    group: GroupFlag,
    m: usize,
    type_string: &str,
    split: Option<SplitFlag>,
) -> Result<ConjClassSpec> {
    let t = CycleType::parse(type_string).map_err(|e| anyhow!("bad --type: {e}"))?;
    let split = split.map(|s| match s {
        SplitFlag::Plus => SplitPart::Plus,
        SplitFlag::Minus => SplitPart::Minus,
    });
    ConjClassSpec::new(m, t, group.into(), split).map_err(|e| anyhow!("{e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep exit codes documented: all usage errors are 1
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { group, m, type_string, split, format, emit_witness, caps } => {
            let spec = parse_spec(group, m, &type_string, split)?;
            if m < 5 {
                return Err(anyhow!("classification requires m ≥ 5"));
            }
            let verdict = classify(&spec, &caps.caps());
            if let (Some(path), Verdict::TypeD { witness }) = (&emit_witness, &verdict) {
                fs::write(path, serde_json::to_string_pretty(witness)?)
                    .with_context(|| format!("writing {path}"))?;
            }
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "class": spec.to_string(),
                        "verdict": verdict,
                    }))?
                ),
                Format::Text => {
                    println!("class    {spec}");
                    println!("verdict  {}", verdict.short());
                    match &verdict {
                        Verdict::TypeD { witness } => {
                            print_witness_summary(witness);
                        }
                        Verdict::NotTypeD { scope } => println!("scope    {scope}"),
                        Verdict::Exception { fact, .. } => println!("fact     {fact:?}"),
                        Verdict::Unknown { report } => println!("report   {report}"),
                    }
                }
            }
            Ok(match verdict {
                Verdict::Unknown { .. } => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Verify { path } => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
            let witness: TypeDWitness = serde_json::from_str(&text)?;
            match check_witness(&witness) {
                Ok(checks) => {
                    println!("ok: all clauses verified ({checks:?})");
                    Ok(ExitCode::SUCCESS)
                }
                Err(violation) => {
                    println!("violation: {violation}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Census { group, m, type_string, split, format, caps } => {
            let spec = parse_spec(group, m, &type_string, split)?;
            let caps = caps.caps();
            let rack = class_rack(&spec, caps.class_orbit)
                .ok_or_else(|| anyhow!("class enumeration exceeded the orbit cap"))?;
            if rack.size() > 2000 {
                return Err(anyhow!(
                    "census is limited to classes with at most 2000 elements, got {}",
                    rack.size()
                ));
            }
            let census = two_generated_census(&rack);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&census)?),
                Format::Text => {
                    println!("census of proper two-generated subracks of {spec}:");
                    for line in census {
                        println!("  {:<20} size {:>3}   pairs {:>6}", line.name, line.size, line.pairs);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { group, m_from, m_to, format, caps } => {
            if m_from < 5 || m_to < m_from {
                return Err(anyhow!("need 5 ≤ m-from ≤ m-to"));
            }
            let caps_v = caps.caps();
            let ambient: Ambient = group.into();
            let mut reports: Vec<(usize, Vec<ClassReport>)> = Vec::new();
            let degrees: Vec<usize> = (m_from..=m_to).collect();
            if caps.threads > 1 {
                let mut slots: Vec<Option<Vec<ClassReport>>> = vec![None; degrees.len()];
                std::thread::scope(|scope| {
                    let chunks = slots.chunks_mut(1).zip(&degrees);
                    let mut handles = Vec::new();
                    for (slot, &m) in chunks {
                        let caps_v = caps_v.clone();
                        handles.push(scope.spawn(move || {
                            slot[0] = Some(theorem_table(m, ambient, &caps_v));
                        }));
                        if handles.len() >= caps.threads {
                            handles.drain(..).for_each(|h| h.join().expect("table worker"));
                        }
                    }
                    handles.into_iter().for_each(|h| h.join().expect("table worker"));
                });
                for (&m, slot) in degrees.iter().zip(slots) {
                    reports.push((m, slot.expect("every degree computed")));
                }
            } else {
                for &m in &degrees {
                    reports.push((m, theorem_table(m, ambient, &caps_v)));
                }
            }
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(
                        &reports
                            .iter()
                            .map(|(m, rows)| serde_json::json!({ "m": m, "classes": rows }))
                            .collect::<Vec<_>>()
                    )?
                ),
                Format::Text => print_table_text(&reports, ambient),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CocycleCheck { path } => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
            let file: CocycleFile = serde_json::from_str(&text)?;
            let rack = FiniteRack::from_json(&file.rack)?;
            rack.validate().map_err(|e| anyhow!("rack axioms fail: {e}"))?;
            let identity = file.cocycle.validate(&rack);
            let braid = braiding_check(&rack, &file.cocycle);
            println!("cocycle identity: {}", verdict_word(identity.is_ok()));
            println!("braid equation:   {}", verdict_word(braid.is_ok()));
            match (&identity, &braid) {
                (Ok(()), Ok(())) => Ok(ExitCode::SUCCESS),
                (Err(a), Err(b)) => {
                    println!("first violations: {a}; {b}");
                    Ok(ExitCode::from(2))
                }
                (Err(a), Ok(())) => Err(anyhow!("checks disagree: identity fails ({a}) but the braid equation holds")),
                (Ok(()), Err(b)) => Err(anyhow!("checks disagree: braid equation fails ({b}) but the identity holds")),
            }
        }
        Command::Exhaust { group, m, type_string, split, format, caps } => {
            let spec = parse_spec(group, m, &type_string, split)?;
            let caps = caps.caps();
            let rack = class_rack(&spec, caps.class_orbit)
                .ok_or_else(|| anyhow!("class enumeration exceeded the orbit cap"))?;
            let outcome = exhaustive_type_d_search(&rack, &caps);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome)?),
                Format::Text => match &outcome {
                    ExhaustiveOutcome::NotTypeD { subracks, pairs } => println!(
                        "NOT_TYPE_D: full exhaustion over {subracks} subracks, {pairs} decomposable pairs"
                    ),
                    ExhaustiveOutcome::TypeD { witness } => {
                        println!("TYPE_D");
                        print_witness_summary(witness);
                    }
                    ExhaustiveOutcome::Unknown { report } => println!("UNKNOWN (partial): {report}"),
                },
            }
            Ok(match outcome {
                ExhaustiveOutcome::Unknown { .. } => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Rack { name } => {
            let rack = catalog_rack(&name)?;
            println!("{}", serde_json::to_string_pretty(&rack.to_json()?)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}

fn print_witness_summary(witness: &TypeDWitness) {
    println!("witness  provenance {}", witness.provenance);
    println!("         |Y| = {} (R ⊔ S)", witness.size_of_y());
    for note in &witness.notes {
        println!("         note: {note}");
    }
}

fn row_label(spec: &ConjClassSpec) -> String {
    match spec.split {
        Some(SplitPart::Plus) => format!("{}+", spec.type_string()),
        Some(SplitPart::Minus) => format!("{}-", spec.type_string()),
        None => spec.type_string(),
    }
}

fn print_table_text(reports: &[(usize, Vec<ClassReport>)], ambient: Ambient) {
    for (m, rows) in reports {
        println!("== {ambient}_{m} ==");
        let mut survivors = 0usize;
        for row in rows {
            match &row.outcome {
                ClassOutcome::KilledAllReps { reason } => {
                    println!("  {:<16} killed, all reps: {}", row_label(&row.spec), reason.label());
                }
                ClassOutcome::Survivors {
                    survivors: s,
                    killed_by_restriction,
                    restriction_citation,
                    notes,
                } => {
                    for pair in s {
                        println!(
                            "  {:<16} SURVIVES ({}): {}",
                            row_label(&row.spec),
                            pair.item,
                            pair.rep
                        );
                        survivors += 1;
                    }
                    println!(
                        "  {:<16} {} other degree-one pairs restricted away [{}]",
                        row_label(&row.spec),
                        killed_by_restriction,
                        restriction_citation
                    );
                    for note in notes {
                        println!("  {:<16} note: {note}", "");
                    }
                }
            }
        }
        println!("  -- surviving pairs: {survivors}");
    }
}
