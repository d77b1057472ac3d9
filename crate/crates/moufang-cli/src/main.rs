//! Command-line front end: construct Chein doubles, check loop tables,
//! verify presentations, plan goodness derivations, search isomorphisms,
//! run the census, and rebuild the order-12 visual model.
//!
//! Exit status is 0 when every requested check passes, 1 when a check
//! fails, and 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use moufang::chein::chein_construct;
use moufang::group::{catalog_selector, FiniteGroup};
use moufang::json::{loop_to_json, CayleyTableJson};
use moufang::latin::moufang_neutral_scan;
use moufang::presentation::{
    goodness_closure, plan_derivation, validate_plan, verify_presentation_relations,
    DerivationCertificate, PresentationError, PresentationSpec,
};
use moufang::table::{FiniteLoop, MoufangVariant};
use moufang::visual::{build_visual_loop, derive_triangles, emit_diagram, verify_visual_claims};
use moufang::{find_isomorphism, sigma_census, GroupWord};

#[derive(Parser)]
#[command(name = "moufang", version, about = "Finite Moufang loops: Chein doubles, presentations, censuses and the order-12 visual model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DeriveFormat {
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum M12Artifact {
    Table,
    Dot,
    Report,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the Chein double of a group and print its table
    Chein {
        /// Catalog selector (e.g. symmetric3, cyclic:4) or a JSON table path
        #[arg(long)]
        group: String,
        /// Write the JSON table here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a JSON Cayley table: loop axioms, the three Moufang
    /// identities, associativity and diassociativity
    Check {
        /// Path to a JSON Cayley table
        table: PathBuf,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Verify that the double of a group satisfies its compact
    /// presentation, and print the goodness certificate
    VerifyPresentation {
        /// Catalog selector or JSON table path
        #[arg(long)]
        group: String,
        /// Semicolon-separated relators, e.g. "x^2;y^3;(xy)^2"
        #[arg(long)]
        relators: String,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Plan a goodness derivation for a word and print the plan tree
    Derive {
        /// The word to derive, e.g. "x^2y^-1x"
        #[arg(long)]
        word: String,
        /// Output format for the plan tree
        #[arg(long, value_enum, default_value_t = DeriveFormat::Text)]
        emit: DeriveFormat,
        /// Validate the plan against this group's double
        #[arg(long)]
        group: Option<String>,
    },
    /// Search for an isomorphism between two loop tables
    Iso {
        /// First table: JSON path or catalog selector
        a: String,
        /// Second table: JSON path or catalog selector
        b: String,
        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
    /// List the non-associative Chein doubles up to an order bound,
    /// one per isomorphism class
    Sigma {
        /// Largest loop order to include (at most 64)
        #[arg(long)]
        max_order: usize,
        /// Emit the census as JSON
        #[arg(long)]
        json: bool,
    },
    /// The order-12 visual model: its table, its diagram, or the full
    /// verification report
    M12 {
        #[arg(long, value_enum, default_value_t = M12Artifact::Report)]
        emit: M12Artifact,
        /// Emit the report as JSON (report mode only)
        #[arg(long)]
        json: bool,
        /// Write the artifact here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit a catalog group's Cayley table
    Table {
        /// Catalog selector (e.g. dihedral:4)
        #[arg(long)]
        group: String,
        /// Write the JSON table here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively confirm that small Latin squares satisfying the
    /// first Moufang identity always have a neutral element
    Kunen {
        /// Largest square order to scan (default: MOUFANG_KUNEN_MAX or 4; capped at 5)
        #[arg(long)]
        max_order: Option<usize>,
        /// Emit the scan as JSON
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Chein { group, output } => {
            let group = resolve_group(&group)?;
            let doubled = chein_construct(&group);
            write_artifact(output.as_deref(), &loop_to_json(&doubled))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { table, json } => cmd_check(&table, json),
        Command::VerifyPresentation {
            group,
            relators,
            json,
        } => cmd_verify_presentation(&group, &relators, json),
        Command::Derive { word, emit, group } => cmd_derive(&word, emit, group.as_deref()),
        Command::Iso { a, b, json } => cmd_iso(&a, &b, json),
        Command::Sigma { max_order, json } => cmd_sigma(max_order, json),
        Command::M12 { emit, json, output } => cmd_m12(emit, json, output.as_deref()),
        Command::Table { group, output } => {
            let group = resolve_group(&group)?;
            write_artifact(output.as_deref(), &loop_to_json(group.as_loop()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Kunen { max_order, json } => cmd_kunen(max_order, json),
    }
}

/// Resolves a group argument: an existing file is read as a JSON table
/// (a generating pair is searched for), anything else is a catalog
/// selector.
fn resolve_group(arg: &str) -> Result<FiniteGroup> {
    if Path::new(arg).is_file() {
        let table = read_loop(Path::new(arg))?;
        return FiniteGroup::from_loop(table)
            .with_context(|| format!("table {arg} is not a two-generated group"));
    }
    catalog_selector(arg).map_err(|e| anyhow!("{e}"))
}

/// Resolves a table argument: JSON file path or catalog selector.
fn resolve_table(arg: &str) -> Result<FiniteLoop> {
    if Path::new(arg).is_file() {
        return read_loop(Path::new(arg));
    }
    Ok(catalog_selector(arg)
        .map_err(|e| anyhow!("{e}"))?
        .as_loop()
        .clone())
}

fn read_loop(path: &Path) -> Result<FiniteLoop> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    moufang::json::loop_from_json(&text)
        .with_context(|| format!("{} is not a valid loop table", path.display()))
}

fn write_artifact(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text.as_bytes())
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn triple_names(l: &moufang::MagmaTable, triple: [usize; 3]) -> String {
    format!(
        "({}, {}, {})",
        l.name(triple[0]),
        l.name(triple[1]),
        l.name(triple[2])
    )
}

fn cmd_check(path: &Path, json: bool) -> Result<ExitCode> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let doc = CayleyTableJson::parse(&text)?;
    let magma = doc.to_magma()?;

    let latin = magma.is_quasigroup();
    let neutral = magma.find_neutral();
    let declared_neutral_ok = neutral == Some(doc.neutral);
    let is_loop = latin && declared_neutral_ok;

    let mut moufang_results = Vec::new();
    let mut associative = None;
    let mut diassociative = None;
    for variant in MoufangVariant::ALL {
        moufang_results.push((variant.index(), magma.moufang_counterexample(variant)));
    }
    let assoc_witness = magma.associativity_counterexample();
    if is_loop {
        let l = FiniteLoop::new(magma.clone(), doc.neutral).expect("checked above");
        associative = Some(assoc_witness.is_none());
        diassociative = Some(l.is_diassociative());
    }

    if json {
        let report = serde_json::json!({
            "order": magma.order(),
            "latin_square": latin,
            "neutral": neutral,
            "declared_neutral": doc.neutral,
            "is_loop": is_loop,
            "moufang": moufang_results
                .iter()
                .map(|(v, cex)| serde_json::json!({
                    "variant": v,
                    "holds": cex.is_none(),
                    "counterexample": cex,
                }))
                .collect::<Vec<_>>(),
            "associative": associative,
            "associativity_counterexample": assoc_witness,
            "diassociative": diassociative,
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("order: {}", magma.order());
        println!("latin square: {}", if latin { "yes" } else { "no" });
        match neutral {
            Some(e) => println!(
                "neutral: {} (index {e}){}",
                magma.name(e),
                if declared_neutral_ok {
                    ""
                } else {
                    " -- does not match the declared neutral"
                }
            ),
            None => println!("neutral: none"),
        }
        for (variant, cex) in &moufang_results {
            match cex {
                None => println!("moufang identity {variant}: yes"),
                Some(t) => println!(
                    "moufang identity {variant}: no  (first violation {})",
                    triple_names(&magma, *t)
                ),
            }
        }
        match assoc_witness {
            None => println!("associative: yes"),
            Some(t) => println!(
                "associative: no  (first violation {})",
                triple_names(&magma, t)
            ),
        }
        match diassociative {
            Some(true) => println!("diassociative: yes"),
            Some(false) => println!("diassociative: no"),
            None => println!("diassociative: skipped (not a loop)"),
        }
    }
    Ok(if is_loop {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn certificate_lines(group: &FiniteGroup, cert: &DerivationCertificate) -> Vec<String> {
    cert.steps
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let element = group.name(group.evaluate_word(&step.output));
            let inputs = step
                .inputs
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            if inputs.is_empty() {
                format!("{:3}. {} -> {}  [{}]", i + 1, step.output, element, step.kind)
            } else {
                format!(
                    "{:3}. {} -> {}  [{} from {}]",
                    i + 1,
                    step.output,
                    element,
                    step.kind,
                    inputs
                )
            }
        })
        .collect()
}

fn cmd_verify_presentation(group_arg: &str, relators: &str, json: bool) -> Result<ExitCode> {
    let group = resolve_group(group_arg)?;
    let spec = PresentationSpec::parse(relators).map_err(|e| anyhow!("bad relator list: {e}"))?;

    let relations_verdict = verify_presentation_relations(&group, &spec);
    let (relations_in_group, relations_in_double, failure_reason) = match &relations_verdict {
        Ok(ok) => (true, *ok, None),
        Err(PresentationError::RelationsFailInGroup { relator, value }) => (
            false,
            false,
            Some(format!("relations fail in the group: {relator} = {value}")),
        ),
    };

    let closure = if relations_in_group {
        Some(goodness_closure(&group))
    } else {
        None
    };
    let (closure_ok, certificate) = match &closure {
        Some(Ok(cert)) => (cert.validate(&group).is_ok(), Some(cert)),
        Some(Err(_)) => (false, None),
        None => (false, None),
    };
    let pass = relations_in_group && relations_in_double && closure_ok;

    if json {
        let report = serde_json::json!({
            "group": group_arg,
            "relators": spec.relators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "relations_hold_in_group": relations_in_group,
            "double_satisfies_presentation": relations_in_double,
            "closure_certificate_valid": closure_ok,
            "pass": pass,
            "failure": failure_reason,
            "certificate": certificate.map(|c| {
                c.steps.iter().map(|s| serde_json::json!({
                    "output": s.output.to_string(),
                    "kind": s.kind.to_string(),
                    "inputs": s.inputs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "element": group.name(group.evaluate_word(&s.output)),
                })).collect::<Vec<_>>()
            }),
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        if let Some(reason) = &failure_reason {
            println!("FAIL ({reason})");
        } else {
            println!(
                "relators hold in the group: {}",
                if relations_in_group { "yes" } else { "no" }
            );
            println!(
                "double satisfies the relators and u^2 = (xu)^2 = (yu)^2 = (xy*u)^2 = e: {}",
                if relations_in_double { "yes" } else { "no" }
            );
            println!(
                "goodness closure covers the group with a valid certificate: {}",
                if closure_ok { "yes" } else { "no" }
            );
            println!("{}", if pass { "PASS" } else { "FAIL" });
            if let Some(cert) = certificate {
                println!("certificate ({} steps):", cert.steps.len());
                for line in certificate_lines(&group, cert) {
                    println!("{line}");
                }
            }
        }
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_derive(word: &str, emit: DeriveFormat, group: Option<&str>) -> Result<ExitCode> {
    let word: GroupWord = word.parse().map_err(|e| anyhow!("bad word: {e}"))?;
    let plan = plan_derivation(&word).map_err(|e| anyhow!("{e}"))?;
    match emit {
        DeriveFormat::Text => print!("{}", plan.render_text()),
        DeriveFormat::Dot => print!("{}", plan.render_dot()),
    }
    if let Some(selector) = group {
        let group = resolve_group(selector)?;
        match validate_plan(&group, &plan) {
            Ok(()) => {
                println!("plan validates against {selector}: yes");
            }
            Err(violation) => {
                println!("plan validates against {selector}: no ({violation})");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_iso(a: &str, b: &str, json: bool) -> Result<ExitCode> {
    let table_a = resolve_table(a)?;
    let table_b = resolve_table(b)?;
    let witness = find_isomorphism(&table_a, &table_b);
    if json {
        let report = serde_json::json!({
            "a": a,
            "b": b,
            "isomorphic": witness.is_some(),
            "mapping": witness.as_ref().map(|w| &w.mapping),
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        match &witness {
            Some(w) => {
                println!("isomorphic: yes");
                for (from, to) in w.mapping.iter().enumerate() {
                    println!("  {} -> {}", table_a.name(from), table_b.name(*to));
                }
            }
            None => println!("isomorphic: no"),
        }
    }
    Ok(if witness.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_sigma(max_order: usize, json: bool) -> Result<ExitCode> {
    if max_order > 64 {
        return Err(anyhow!("census bound {max_order} exceeds the catalog range (64)"));
    }
    let census = sigma_census(max_order);
    if json {
        let report = serde_json::json!({
            "max_order": max_order,
            "count": census.len(),
            "loops": census
                .iter()
                .map(|(name, l)| serde_json::json!({
                    "group": name.to_string(),
                    "order": l.order(),
                }))
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for (name, l) in &census {
            println!("M_{}({},2)  order {}", l.order(), name, l.order());
        }
        println!("count: {}", census.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_m12(emit: M12Artifact, json: bool, output: Option<&Path>) -> Result<ExitCode> {
    let spec = derive_triangles().map_err(|e| anyhow!("{e}"))?;
    match emit {
        M12Artifact::Table => {
            let l = build_visual_loop(&spec).map_err(|e| anyhow!("{e}"))?;
            write_artifact(output, &loop_to_json(&l))?;
            Ok(ExitCode::SUCCESS)
        }
        M12Artifact::Dot => {
            write_artifact(output, emit_diagram(&spec).trim_end())?;
            Ok(ExitCode::SUCCESS)
        }
        M12Artifact::Report => {
            let l = build_visual_loop(&spec).map_err(|e| anyhow!("{e}"))?;
            let report = verify_visual_claims(&l);
            let text = if json {
                serde_json::to_string_pretty(&report)?
            } else {
                format!(
                    "{}overall: {}",
                    report,
                    if report.all_pass() { "PASS" } else { "FAIL" }
                )
            };
            write_artifact(output, &text)?;
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn cmd_kunen(max_order: Option<usize>, json: bool) -> Result<ExitCode> {
    let from_env = std::env::var("MOUFANG_KUNEN_MAX")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    let max_order = max_order.or(from_env).unwrap_or(4);
    if max_order > 5 {
        return Err(anyhow!(
            "order {max_order} is beyond desk scale; the scan is capped at 5"
        ));
    }
    let scans = moufang_neutral_scan(max_order);
    let pass = scans.iter().all(|s| s.violations == 0);
    if json {
        println!("{}", serde_json::to_string_pretty(&scans)?);
    } else {
        for scan in &scans {
            println!(
                "order {}: {} squares, {} satisfy the first Moufang identity, {} without neutral",
                scan.order, scan.squares, scan.moufang_squares, scan.violations
            );
        }
        println!(
            "{}",
            if pass {
                "PASS: every Moufang Latin square in range is a loop"
            } else {
                "FAIL: found a Moufang Latin square without a neutral element"
            }
        );
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
