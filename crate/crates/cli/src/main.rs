use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grouplift::catalog::{catalog, MANIFEST};
use grouplift::classes::member;
use grouplift::factorize::{
    p_core_tower, perfect_core_factorization, sylow_decomposition, Factorization,
};
use grouplift::group::{classify_group, derived_series, lower_central_series};
use grouplift::io::{
    resolve_group, resolve_morphism, resolve_pool, to_json, write_json, GroupData,
};
use grouplift::lifting::{pool_orthogonal, ConjugationMode, LiftVerdict, Side};
use grouplift::verify::{self, ClaimRecord, Options, Verdict, CLAIMS};
use grouplift::{Budget, ClassId, Error, Lifter, Result};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "grouplift",
    version,
    about = "Lifting properties of finite-group homomorphisms"
)]
struct Cli {
    /// Print machine-readable JSON only.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural flags and series of a group.
    Classify {
        /// Catalog name, `builtin:<descriptor>`, or a group JSON file.
        #[arg(long)]
        group: String,
    },
    /// Decide a lifting problem `left ⋌ right`.
    Lift {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = LiftMode::Exists)]
        mode: LiftMode,
    },
    /// Decide membership of a morphism in a named class.
    Member {
        /// Class identifier such as `ABKER_LR` or `ZP_ZERO_R(3)`.
        #[arg(long)]
        class: String,
        #[arg(long)]
        morphism: String,
    },
    /// Factor a morphism or group into labelled stages.
    Factor {
        #[arg(long, value_enum, default_value_t = FactorKind::Perfect)]
        kind: FactorKind,
        /// Morphism to factor (`perfect`).
        #[arg(long, required_if_eq("kind", "perfect"))]
        morphism: Option<String>,
        /// Group to decompose (`tower`, `sylow`).
        #[arg(long, required_if_eq_any([("kind", "tower"), ("kind", "sylow")]))]
        group: Option<String>,
        #[arg(long, required_if_eq_any([("kind", "tower"), ("kind", "sylow")]))]
        p: Option<u64>,
        /// Pool used as evidence for claimed tower labels.
        #[arg(long, default_value = "homs:6")]
        evidence: String,
    },
    /// Adjudicate claims against catalog pools.
    Adjudicate {
        /// Claim identifier; repeatable. Omit together with `--all` to list claims.
        #[arg(long)]
        claim: Vec<String>,
        #[arg(long, conflicts_with = "claim")]
        all: bool,
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        /// Restrict prime-indexed claims to this prime.
        #[arg(long)]
        p: Option<u64>,
        /// Restrict the embedding claim to this target group.
        #[arg(long)]
        s: Option<String>,
        /// Write the records to this JSON file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List or export the group catalog.
    Catalog {
        #[arg(long)]
        list: bool,
        /// Write one group JSON file per entry plus `manifest.json`.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Pool-relative orthogonal of a pool within a candidate pool.
    Orth {
        #[arg(long)]
        pool: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        candidates: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftMode {
    Exists,
    Unique,
    ConjBottom,
    ConjBoth,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FactorKind {
    Perfect,
    Tower,
    Sylow,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

/// Success, or a negative answer to a yes/no query.
enum Outcome {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    let out = if json {
        to_json(value)
    } else {
        format!("{}\n", text())
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn run(cli: &Cli) -> Result<Outcome> {
    let budget = Budget::from_env();
    match &cli.command {
        Command::Classify { group } => classify(cli.json, group),
        Command::Lift { left, right, mode } => lift(cli.json, &budget, left, right, *mode),
        Command::Member { class, morphism } => membership(cli.json, &budget, class, morphism),
        Command::Factor {
            kind,
            morphism,
            group,
            p,
            evidence,
        } => factor(
            cli.json,
            &budget,
            *kind,
            morphism.as_deref(),
            group.as_deref(),
            *p,
            evidence,
        ),
        Command::Adjudicate {
            claim,
            all,
            max_order,
            p,
            s,
            report,
        } => adjudicate(
            cli.json,
            &budget,
            claim,
            *all,
            *max_order,
            *p,
            s.clone(),
            report.as_ref(),
        ),
        Command::Catalog { list, export } => catalog_cmd(cli.json, *list, export.as_ref()),
        Command::Orth {
            pool,
            side,
            candidates,
        } => orth(cli.json, &budget, pool, *side, candidates),
    }
}

#[derive(Serialize)]
struct Classification {
    group: String,
    #[serde(flatten)]
    record: grouplift::group::PropertyRecord,
    derived_series_orders: Vec<usize>,
    lower_central_series_orders: Vec<usize>,
}

fn classify(json: bool, group: &str) -> Result<Outcome> {
    let g = resolve_group(group)?;
    let out = Classification {
        group: g.name().to_string(),
        record: classify_group(&g),
        derived_series_orders: derived_series(&g).iter().map(|s| s.len()).collect(),
        lower_central_series_orders: lower_central_series(&g).iter().map(|s| s.len()).collect(),
    };
    emit(json, &out, || {
        let r = &out.record;
        format!(
            "{} (order {})\nsoluble={} nilpotent={} abelian={} perfect={}\nderived series: {:?}\nlower central series: {:?}",
            out.group,
            r.order,
            yes_no(r.soluble),
            yes_no(r.nilpotent),
            yes_no(r.abelian),
            yes_no(r.perfect),
            out.derived_series_orders,
            out.lower_central_series_orders
        )
    });
    Ok(Outcome::Yes)
}

#[derive(Serialize)]
struct LiftOutput<'a> {
    left: &'a str,
    right: &'a str,
    #[serde(flatten)]
    verdict: LiftVerdict,
}

fn lift(json: bool, budget: &Budget, left: &str, right: &str, mode: LiftMode) -> Result<Outcome> {
    let f = resolve_morphism(left, budget)?;
    let g = resolve_morphism(right, budget)?;
    let g = g.as_finite().ok_or(Error::PresentedOnRight)?;
    let lifter = Lifter::new(budget.clone());
    let verdict = match mode {
        LiftMode::Exists => lifter.check_lift(&f, g)?,
        LiftMode::Unique => lifter.check_unique_lift(&f, g)?,
        LiftMode::ConjBottom | LiftMode::ConjBoth => {
            let f = f.as_finite().ok_or_else(|| {
                Error::Unsupported("conjugation modes need a concrete left map".into())
            })?;
            let cm = if matches!(mode, LiftMode::ConjBottom) {
                ConjugationMode::TwistBottom
            } else {
                ConjugationMode::TwistBoth
            };
            lifter.check_lift_up_to_conj(f, g, cm)?
        }
    };
    let holds = verdict.holds();
    let out = LiftOutput {
        left,
        right,
        verdict,
    };
    emit(json, &out, || {
        let mut text = format!(
            "{:?} ({} squares checked)",
            out.verdict.status, out.verdict.squares_checked
        );
        if let Some(w) = &out.verdict.witness {
            text.push_str(&format!(
                "\nwitness square: i={:?} j={:?}",
                w.square.i, w.square.j
            ));
            if !w.diagonals.is_empty() {
                text.push_str(&format!("\ndiagonals: {:?}", w.diagonals));
            }
        }
        text
    });
    Ok(if holds { Outcome::Yes } else { Outcome::No })
}

fn membership(json: bool, budget: &Budget, class: &str, morphism: &str) -> Result<Outcome> {
    let class: ClassId = class.parse()?;
    let m = resolve_morphism(morphism, budget)?;
    let h = m
        .as_finite()
        .ok_or_else(|| Error::Unsupported("class membership needs a concrete morphism".into()))?;
    let result = member(&class, h, &budget.clone().with_subgroup_order(60))?;
    emit(json, &result, || {
        format!(
            "{}: {}\ncertificate: {}",
            result.class,
            if result.member {
                "member"
            } else {
                "not a member"
            },
            serde_json::to_string(&result.certificate).expect("certificates serialize")
        )
    });
    Ok(if result.member {
        Outcome::Yes
    } else {
        Outcome::No
    })
}

fn describe_factorization(f: &Factorization) -> String {
    let mut lines = vec![format!(
        "{} stages; recomposes: {}",
        f.stages.len(),
        yes_no(f.verify())
    )];
    for (k, ((stage, label), kernel)) in f
        .stages
        .iter()
        .zip(&f.stage_labels)
        .zip(&f.kernels)
        .enumerate()
    {
        let evidence = label
            .evidence
            .as_ref()
            .map(|e| {
                format!(
                    " [evidence {}: {} members, holds={}]",
                    e.pool,
                    e.members_checked,
                    yes_no(e.holds)
                )
            })
            .unwrap_or_default();
        lines.push(format!(
            "  {k}: {} -> {}  kernel order {}  {} ({:?}){evidence}",
            stage.source().order(),
            stage.target().order(),
            kernel.len(),
            label.label,
            label.status
        ));
    }
    lines.join("\n")
}

fn factor(
    json: bool,
    budget: &Budget,
    kind: FactorKind,
    morphism: Option<&str>,
    group: Option<&str>,
    p: Option<u64>,
    evidence: &str,
) -> Result<Outcome> {
    let missing = |what: &str| Error::Parse(format!("--{what} is required for this kind"));
    match kind {
        FactorKind::Perfect => {
            let m = resolve_morphism(morphism.ok_or_else(|| missing("morphism"))?, budget)?;
            let h = m
                .as_finite()
                .ok_or_else(|| Error::Unsupported("factoring needs a concrete morphism".into()))?;
            let f = perfect_core_factorization(h, budget)?;
            emit(json, &f.to_data(), || describe_factorization(&f));
        }
        FactorKind::Tower => {
            let g = resolve_group(group.ok_or_else(|| missing("group"))?)?;
            let lifter = Lifter::new(budget.clone());
            let pool = resolve_pool(evidence, budget)?;
            let f = p_core_tower(&g, p.ok_or_else(|| missing("p"))?, &lifter, &pool)?;
            emit(json, &f.to_data(), || describe_factorization(&f));
        }
        FactorKind::Sylow => {
            let g = resolve_group(group.ok_or_else(|| missing("group"))?)?;
            let report = sylow_decomposition(
                &g,
                p.ok_or_else(|| missing("p"))?,
                &Lifter::new(budget.clone()),
            )?;
            emit(json, &report, || {
                format!(
                    "Sylow {}-subgroup of order {}; {} conjugates; {} p-subgroups, all lift: {}; maximal all conjugate: {}",
                    report.p,
                    report.sylow.len(),
                    report.conjugates.len(),
                    report.p_subgroups.len(),
                    yes_no(report.all_lift),
                    yes_no(report.maximal_all_conjugate)
                )
            });
        }
    }
    Ok(Outcome::Yes)
}

fn record_line(r: &ClaimRecord) -> String {
    let verdict = match &r.verdict {
        Verdict::ConfirmedOnPool => "confirmed-on-pool".to_string(),
        Verdict::Refuted => "REFUTED".to_string(),
        Verdict::Skipped { reason } => format!("skipped ({reason})"),
    };
    let witness = match &r.witness {
        Some(verify::Witness::MissingLift {
            left_label,
            right_label,
            ..
        }) => {
            format!("  witness: {left_label} does not lift against {right_label}")
        }
        Some(verify::Witness::UnexpectedLift {
            left_label,
            right_label,
            ..
        }) => {
            format!("  witness: {left_label} lifts against {right_label}")
        }
        Some(verify::Witness::Instance {
            subject,
            expected,
            found,
        }) => {
            format!("  witness: {subject}: expected {expected}, found {found}")
        }
        None => String::new(),
    };
    format!(
        "{:<15} {:<18} candidates={} pairs={} instances={}{witness}",
        r.claim, verdict, r.stats.candidates, r.stats.pairs_checked, r.stats.instances_checked
    )
}

#[allow(clippy::too_many_arguments)]
fn adjudicate(
    json: bool,
    budget: &Budget,
    claims: &[String],
    all: bool,
    max_order: usize,
    p: Option<u64>,
    s: Option<String>,
    report: Option<&PathBuf>,
) -> Result<Outcome> {
    if claims.is_empty() && !all {
        emit(json, &CLAIMS, || {
            CLAIMS
                .iter()
                .map(|c| format!("{:<15} {}", c.id, c.statement))
                .collect::<Vec<_>>()
                .join("\n")
        });
        return Ok(Outcome::Yes);
    }
    let ids: Vec<&str> = if all {
        CLAIMS.iter().map(|c| c.id).collect()
    } else {
        claims.iter().map(String::as_str).collect()
    };
    let lifter = Lifter::new(budget.clone());
    let options = Options { max_order, p, s };
    let records = ids
        .iter()
        .map(|id| verify::adjudicate_with(id, &options, &lifter))
        .collect::<Result<Vec<_>>>()?;
    if let Some(path) = report {
        verify::write_report(path, &records)?;
    }
    emit(json, &records, || {
        records
            .iter()
            .map(record_line)
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if records.iter().any(ClaimRecord::is_refuted) {
        Outcome::No
    } else {
        Outcome::Yes
    })
}

fn file_name(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn catalog_cmd(json: bool, _list: bool, export: Option<&PathBuf>) -> Result<Outcome> {
    if let Some(dir) = export {
        fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        })?;
        for e in catalog() {
            write_json(
                dir.join(format!("{}.json", file_name(e.name()))),
                &GroupData::from(e.group.as_ref()),
            )?;
        }
        write_json(dir.join("manifest.json"), &MANIFEST)?;
    }
    emit(json, &MANIFEST, || {
        MANIFEST
            .iter()
            .map(|m| {
                format!(
                    "{:<8} {:>3}  {:<40} abelian={} nilpotent={} soluble={} perfect={}",
                    m.name,
                    m.order,
                    m.descriptor,
                    yes_no(m.abelian),
                    yes_no(m.nilpotent),
                    yes_no(m.soluble),
                    yes_no(m.perfect)
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(Outcome::Yes)
}

fn orth(
    json: bool,
    budget: &Budget,
    pool: &str,
    side: SideArg,
    candidates: &str,
) -> Result<Outcome> {
    let pool = resolve_pool(pool, budget)?;
    let candidates = resolve_pool(candidates, budget)?;
    let side = match side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let report = pool_orthogonal(&Lifter::new(budget.clone()), &pool, side, &candidates)?;
    emit(json, &report, || {
        format!(
            "{} of {} candidates lie in the {} orthogonal of {} ({} pairs)\n{}",
            report.orthogonal.len(),
            candidates.len(),
            if side == Side::Left { "left" } else { "right" },
            report.pool,
            report.pairs.len(),
            report.orthogonal_labels.join("\n")
        )
    });
    Ok(Outcome::Yes)
}
