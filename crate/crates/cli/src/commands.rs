use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use valmax_core::curveval::{ingest, CurveSpec, IngestOptions};
use valmax_core::duality::dual;
use valmax_core::fuzz;
use valmax_core::generation::{
    build_fprime, check_generation, decomposition_failures, reconstruct, relmax_outside_fprime,
    GenerationInput,
};
use valmax_core::io::{to_canonical, GenerationDoc, IdealDoc};
use valmax_core::maximals::{classify_maximals, symmetry_check_with_dual};
use valmax_core::stdbasis::{
    audit_eji, branch_generator_values, coverage_report, eji_sets, irr_absmax_by_characterization,
    irreducible_absolute_maximals,
};
use valmax_core::{GoodIdeal, Window};

use crate::args::{Cli, Command, Kind};

/// Runs the command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let (value, ok, table) = match &cli.command {
        Command::Validate { input } => validate(&load(input, cli.limit)?),
        Command::Dual { input } => dual_cmd(&load(input, cli.limit)?)?,
        Command::Maximals { input, kind } => maximals(&load(input, cli.limit)?, *kind),
        Command::SymmetryCheck { input } => symmetry(&load(input, cli.limit)?)?,
        Command::Reconstruct {
            input,
            window,
            emit_inputs,
        } => reconstruct_cmd(input, window.map(|w| w.0), *emit_inputs, cli.limit)?,
        Command::CheckGeneration { input, window } => {
            generation_check(&load(input, cli.limit)?, window.map(|w| w.0))?
        }
        Command::StdbasisReport { input, nu } => stdbasis(&load(input, cli.limit)?, nu.map(|n| n.0))?,
        Command::FromCurve {
            input,
            degree_bound,
            trials,
            seed,
            window,
        } => {
            let text = read(input)?;
            let spec = CurveSpec::from_json(&text)?;
            let opts = IngestOptions {
                degree_bound: *degree_bound,
                coefficient_trials: *trials,
                seed: *seed,
                window: window.map(|w| w.0),
            };
            let e = ingest(&spec, &opts)?;
            let table = format!(
                "ring conductor {}\nideal min {} conductor {}\nsmall elements {}\n",
                e.ambient().gamma(),
                e.mu(),
                e.gamma_e(),
                e.small().len()
            );
            (serde_json::to_value(IdealDoc::of(&e))?, true, table)
        }
        Command::Fuzz { seeds, p, bound } => {
            let summary = fuzz::run(seeds.0.clone(), *p, *bound)?;
            for f in &summary.failures {
                eprintln!("failing seed {} ({:?}): {}", f.seed, f.check, f.detail);
            }
            let table = format!(
                "p={} bound={} instances={} passed={} generation failures={}\n",
                summary.p,
                summary.bound,
                summary.instances,
                summary.passed,
                summary.generation_failures.len()
            );
            (serde_json::to_value(&summary)?, summary.ok(), table)
        }
    };
    emit(&value, cli.output.as_deref())?;
    if cli.table {
        eprint!("{table}");
    }
    Ok(ok)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path, limit: i64) -> Result<GoodIdeal> {
    let doc: IdealDoc =
        serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(doc.build(limit)?)
}

fn emit(value: &Value, output: Option<&Path>) -> Result<()> {
    let mut text = to_canonical(value)?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

type Outcome = (Value, bool, String);

fn validate(e: &GoodIdeal) -> Outcome {
    // The ambient semigroup is checked too; a semigroup document repeats its findings.
    let mut report = e.ambient().validate();
    for v in e.validate().violations {
        if !report.violations.contains(&v) {
            report.violations.push(v);
        }
    }
    let ok = report.passed();
    let table = if ok {
        "valid\n".to_string()
    } else {
        report
            .violations
            .iter()
            .map(|v| format!("violation: {v:?}\n"))
            .collect()
    };
    (json!({ "valid": ok, "violations": report.violations }), ok, table)
}

fn dual_cmd(e: &GoodIdeal) -> Result<Outcome> {
    let d = dual(e)?.dual;
    let table = format!("dual min {} conductor {} small {:?}\n", d.mu(), d.gamma_e(), d.small());
    Ok((serde_json::to_value(IdealDoc::of(&d))?, true, table))
}

fn maximals(e: &GoodIdeal, kind: Kind) -> Outcome {
    let report = classify_maximals(e);
    let mut table = String::from("alpha\tbeta\tabsolute\trelative\n");
    for pair in &report.pairs {
        table += &format!(
            "{}\t{}\t{}\t{}\n",
            pair.alpha, pair.beta, pair.kinds.absolute, pair.kinds.relative
        );
    }
    let value = match kind {
        Kind::All => json!({
            "maximals": report.maximals,
            "absolute": report.absolute,
            "relative": report.relative,
            "irreducible-absolute": irreducible_absolute_maximals(e),
            "pairs": report.pairs,
        }),
        Kind::Absolute => json!({ "kind": "absolute", "points": report.absolute }),
        Kind::Relative => json!({ "kind": "relative", "points": report.relative }),
        Kind::IrreducibleAbsolute => {
            json!({ "kind": "irreducible-absolute", "points": irreducible_absolute_maximals(e) })
        }
    };
    (value, true, table)
}

fn symmetry(e: &GoodIdeal) -> Result<Outcome> {
    let d = dual(e)?.dual;
    let report = symmetry_check_with_dual(e, &d);
    let mut table = String::from("alpha\tbeta\talpha relative\tbeta absolute\tholds\n");
    for v in &report.verdicts {
        table += &format!(
            "{}\t{}\t{}\t{}\t{}\n",
            v.alpha, v.beta, v.alpha_relative, v.beta_absolute, v.holds
        );
    }
    table += &format!("skipped {}\n", report.skipped);
    let holds = report.holds();
    let mut value = serde_json::to_value(&report)?;
    value["holds"] = json!(holds);
    Ok((value, holds, table))
}

fn reconstruct_cmd(path: &Path, window: Option<Window>, emit_inputs: bool, limit: i64) -> Result<Outcome> {
    let value: Value = serde_json::from_str(&read(path)?)?;
    let (source, ambient, g) = if value.get("projections").is_some() {
        if emit_inputs {
            bail!("--emit-inputs needs an ideal document");
        }
        let doc: GenerationDoc = serde_json::from_value(value)?;
        let (ambient, g) = doc.build(limit)?;
        (None, ambient, g)
    } else {
        let e = serde_json::from_value::<IdealDoc>(value)?.build(limit)?;
        if emit_inputs {
            return Ok((serde_json::to_value(GenerationDoc::of(&e)?)?, true, String::new()));
        }
        let g = GenerationInput::of(&e)?;
        (Some(e.clone()), Arc::clone(e.ambient()), g)
    };
    let window = match window {
        Some(w) => w,
        None => g.default_window()?,
    };
    let r = reconstruct(&g, ambient, &window)?;
    let ok = match &source {
        Some(e) => r.equals(e)?,
        None => true,
    };
    let mut table = format!("window {}..{}\nreconstructed min {} conductor {}\n", window.lo(), window.hi(), r.mu(), r.gamma_e());
    if source.is_some() {
        table += &format!("matches source: {ok}\n");
    }
    if !ok {
        eprintln!("reconstruction differs from the source ideal");
    }
    Ok((serde_json::to_value(IdealDoc::of(&r))?, ok, table))
}

fn generation_check(e: &GoodIdeal, window: Option<Window>) -> Result<Outcome> {
    let g = GenerationInput::of(e)?;
    let fp = build_fprime(e)?;
    let window = match window {
        Some(w) => w,
        None => Window::new(e.mu(), e.gamma_e().checked_add(&valmax_core::Point::ones(e.dim()))?)?,
    };
    let disagreements = check_generation(e, &g, &fp, &window);
    let outside = relmax_outside_fprime(&g, &fp);
    let decomposition = decomposition_failures(e);
    let ok = disagreements.is_empty() && outside.is_empty() && decomposition.is_empty();
    let table = format!(
        "window {}..{}\nrelative maximals {}\nF' size {} (nu {})\ndisagreements {}\nrelative maximals outside F' {}\ndecomposition failures {}\n",
        window.lo(),
        window.hi(),
        g.relmax.len(),
        fp.fprime.len(),
        fp.nu_dual,
        disagreements.len(),
        outside.len(),
        decomposition.len()
    );
    let value = json!({
        "window": { "lo": window.lo(), "hi": window.hi() },
        "relmax": g.relmax,
        "fprime": fp,
        "disagreements": disagreements,
        "relmax_outside_fprime": outside,
        "decomposition_failures": decomposition,
        "passed": ok,
    });
    Ok((value, ok, table))
}

fn stdbasis(e: &GoodIdeal, nu: Option<valmax_core::Point>) -> Result<Outcome> {
    let nu = nu.unwrap_or_else(|| e.gamma_e());
    let generators = branch_generator_values(e)?;
    let sets = eji_sets(e, &nu)?;
    let characterized = irr_absmax_by_characterization(e, &nu)?;
    let audit = audit_eji(e, &nu)?;
    let coverage = coverage_report(e)?;
    let ok = audit.clean();
    let mut table = format!("nu {nu}\n");
    for (i, hs) in generators.per_branch.iter().enumerate() {
        table += &format!("branch {}: generator values {:?}\n", i + 1, hs);
    }
    table += &format!(
        "irreducible absolute maximals: direct {:?}, characterized {:?}, uncovered {:?}\n",
        coverage.direct, characterized, coverage.uncovered
    );
    let value = json!({
        "nu": nu,
        "generator_values": generators.per_branch,
        "eji_sets": sets,
        "characterized": characterized,
        "audit": audit,
        "coverage": coverage,
        "passed": ok,
    });
    Ok((value, ok, table))
}
