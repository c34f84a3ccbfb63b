//! Subcommand implementations; each returns its rendered result and a status.

use num_bigint::BigUint;
use serde_json::{json, Value};

use indsat::bounds::{self, BoundReport, BoundValue};
use indsat::chains::{chain_partition, width, ChainPartition};
use indsat::containment::Mode;
use indsat::procedures::{self, ColoringFailureKind, PipelineReport, WitnessPair};
use indsat::saturation::{is_saturated, min_saturated, SaturationVerdict, SolveOutcome, SolverOptions};
use indsat::{parse_poset, Family, PosetSpec};

use crate::args::{BoundsArgs, Command, Pipeline, ProceduresArgs, SolveArgs, VerifyArgs};
use crate::cache::{Cache, Lookup, RunRecord};
use crate::error::{CliError, CliResult};
use crate::family_io::{bit_list, bits, family_json, parse_set, read_family, read_partition};
use crate::render::{Rendered, Table};
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A verification or audit failed; the output carries the witness.
    Failed,
    /// The search budget ran out.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failed => 1,
            Status::Inconclusive => 3,
        }
    }

    fn from_pass(pass: bool) -> Status {
        if pass {
            Status::Success
        } else {
            Status::Failed
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub rendered: Rendered,
    /// Written to standard error.
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(status: Status, rendered: Rendered) -> Outcome {
        Outcome { status, rendered, warnings: Vec::new() }
    }
}

pub fn run(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Verify(a) => verify(a),
        Command::Solve(a) => solve(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Slopes { k } => slopes(k),
        Command::Crossover { k_max } => crossover(k_max),
        Command::Procedures(a) => procedures_cmd(a),
        Command::Report(a) => report::run(a),
    }
}

fn verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let family = read_family(&a.family)?;
    let target = parse_poset(&a.poset)?;
    let mode = Mode::from(a.mode);
    let verdict = is_saturated(&family, &target, mode)?;
    let n = family.n();
    let (failure, detail) = match &verdict {
        SaturationVerdict::Saturated => (Value::Null, "saturated".to_string()),
        SaturationVerdict::ContainsCopy(e) => {
            let sets = bit_list(&e.sets(family.members()), n);
            (json!({"kind": "contains_copy", "sets": sets}), format!("contains a copy: {}", sets.join(" ")))
        }
        SaturationVerdict::MissingBlocker(s) => (
            json!({"kind": "missing_blocker", "set": bits(*s, n)}),
            format!("adding {} creates no copy", bits(*s, n)),
        ),
    };
    let saturated = verdict.is_saturated();
    let json = json!({
        "command": "verify",
        "n": n,
        "target": target.label(),
        "mode": mode.as_str(),
        "family": family_json(&family),
        "saturated": saturated,
        "failure": failure,
    });
    let table = Table::fields(vec![
        ("target", target.label().to_string()),
        ("mode", mode.as_str().to_string()),
        ("n", n.to_string()),
        ("|F|", family.len().to_string()),
        ("saturated", saturated.to_string()),
        ("detail", detail),
    ]);
    Ok(Outcome::new(Status::from_pass(saturated), Rendered::new(json, vec![table])))
}

/// Cache key: everything the exact answer depends on.
fn solve_parameters(n: u32, target: &PosetSpec, mode: Mode) -> Value {
    json!({
        "n": n,
        "target": target.label(),
        "size": target.size(),
        "relations": target.relations(),
        "mode": mode.as_str(),
    })
}

fn witness_from_payload(payload: &Value, n: u32) -> Option<Family> {
    let sets = payload.get("witness")?.as_array()?;
    let masks: Option<Vec<u32>> = sets
        .iter()
        .map(|s| s.as_str().and_then(indsat::Subset::from_bitstring).map(|x| x.bits()))
        .collect();
    Family::from_masks(n, masks?).ok()
}

fn solve(a: &SolveArgs) -> CliResult<Outcome> {
    let target = parse_poset(&a.poset)?;
    let mode = Mode::from(a.mode);
    let params = solve_parameters(a.n, &target, mode);
    let cache = if a.no_cache { None } else { Cache::from_env() };
    let mut warnings = Vec::new();

    if let Some(cache) = &cache {
        match cache.load("solve", &params) {
            Lookup::Hit(record) => {
                let witness = witness_from_payload(&record.payload, a.n);
                let size = record.payload.get("min_size").and_then(Value::as_u64);
                match (witness, size) {
                    (Some(w), Some(m))
                        if w.len() as u64 == m && is_saturated(&w, &target, mode)?.is_saturated() =>
                    {
                        return Ok(render_solve(a.n, &target, mode, &record.payload, true, warnings));
                    }
                    _ => warnings.push("cached solve result failed re-verification; recomputing".into()),
                }
            }
            Lookup::Miss => {}
            Lookup::Stale => warnings.push("ignoring cache entry from another version".into()),
            Lookup::Corrupt(why) => warnings.push(format!("skipping corrupt cache entry ({why})")),
        }
    }

    let options = SolverOptions {
        budget: a.budget,
        symmetry: !a.no_symmetry,
        seed_lower_bound: !a.no_seed,
        incremental_pruning: !a.no_incremental,
        jobs: a.jobs,
    };
    let result = min_saturated(a.n, &target, mode, &options)?;
    let verified = is_saturated(result.witness(), &target, mode)?.is_saturated();
    if !verified {
        return Err(CliError::Input("solver witness failed verification".into()));
    }
    let (status, min_size, lower, upper) = match &result.outcome {
        SolveOutcome::Exact { min_size, .. } => ("exact", Some(*min_size), *min_size, *min_size),
        SolveOutcome::Inconclusive { lower, upper, .. } => ("inconclusive", None, *lower, *upper),
    };
    let payload = json!({
        "status": status,
        "min_size": min_size,
        "lower": lower,
        "upper": upper,
        "witness": bit_list(result.witness().members(), a.n),
        "lower_bound_seed": result.lower_bound_seed,
        "nodes_explored": result.nodes_explored,
        "elapsed_us": u64::try_from(result.elapsed.as_micros()).unwrap_or(u64::MAX),
    });
    if let (Some(cache), Some(_)) = (&cache, min_size) {
        if let Err(e) = cache.store(&RunRecord::new("solve", params, payload.clone())) {
            warnings.push(format!("could not write cache in {}: {e}", cache.dir().display()));
        }
    }
    Ok(render_solve(a.n, &target, mode, &payload, false, warnings))
}

fn render_solve(n: u32, target: &PosetSpec, mode: Mode, payload: &Value, cached: bool, warnings: Vec<String>) -> Outcome {
    let mut json = json!({
        "command": "solve",
        "n": n,
        "target": target.label(),
        "mode": mode.as_str(),
        "cached": cached,
    });
    let obj = json.as_object_mut().expect("object");
    for (k, v) in payload.as_object().expect("payload object") {
        if k == "witness" {
            obj.insert(k.clone(), json!({"n": n, "sets": v}));
        } else {
            obj.insert(k.clone(), v.clone());
        }
    }
    let show = |v: &Value| match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    };
    let status = if payload["status"] == "exact" { Status::Success } else { Status::Inconclusive };
    let table = Table::fields(vec![
        ("target", target.label().to_string()),
        ("mode", mode.as_str().to_string()),
        ("n", n.to_string()),
        ("status", show(&payload["status"])),
        ("min_size", show(&payload["min_size"])),
        ("interval", format!("[{}, {}]", payload["lower"], payload["upper"])),
        ("witness", show(&payload["witness"])),
        ("nodes", show(&payload["nodes_explored"])),
        ("elapsed_ms", format!("{:.1}", payload["elapsed_us"].as_u64().unwrap_or(0) as f64 / 1e3)),
        ("cached", cached.to_string()),
    ]);
    Outcome { status, rendered: Rendered::new(json, vec![table]), warnings }
}

fn bounds_descriptor(a: &BoundsArgs) -> CliResult<String> {
    let d = a.poset.trim();
    match (&a.k, d) {
        (None, _) => Ok(d.to_string()),
        (Some(k), "antichain" | "chain") => Ok(format!("{d}:{}", k + 1u32)),
        (Some(_), _) => Err(CliError::Input("--k needs --poset antichain or --poset chain".into())),
    }
}

pub fn bound_report_json(r: &BoundReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            let value = match &e.value {
                BoundValue::Integer(v) => json!(v.to_string()),
                BoundValue::Real(x) => json!(x),
            };
            json!({
                "name": e.name,
                "kind": e.kind.as_str(),
                "value": value,
                "condition": e.condition,
                "applicability": e.applicability.as_str(),
            })
        })
        .collect();
    json!({
        "target": r.target,
        "n": r.n.to_string(),
        "k": r.k.as_ref().map(|k| k.to_string()),
        "entries": entries,
        "best_lower": r.best_lower().map(|v| v.to_string()),
        "best_upper": r.best_upper().map(|v| v.to_string()),
        "consistent": r.is_consistent(),
    })
}

fn bounds_cmd(a: &BoundsArgs) -> CliResult<Outcome> {
    let descriptor = bounds_descriptor(a)?;
    let report = bounds::reference_bounds(&descriptor, &a.n)?;
    let mut json = bound_report_json(&report);
    json["command"] = json!("bounds");
    let mut table = Table::new(&["name", "kind", "value", "applicability", "condition"]);
    for e in &report.entries {
        table.push(vec![
            e.name.clone(),
            e.kind.as_str().into(),
            e.value.to_string(),
            e.applicability.as_str().into(),
            e.condition.clone(),
        ]);
    }
    let title = format!(
        "{} at n = {}{}",
        report.target,
        report.n,
        report.k.as_ref().map_or(String::new(), |k| format!(", k = {k}"))
    );
    Ok(Outcome::new(Status::Success, Rendered::new(json, vec![table.titled(title)])))
}

fn slopes(k: &BigUint) -> CliResult<Outcome> {
    let c = bounds::slope_compare(k)?;
    let json = json!({
        "command": "slopes",
        "k": k.to_string(),
        "slope_a": c.slope_a.to_string(),
        "slope_b": c.slope_b.to_string(),
        "winner": c.winner.to_string(),
    });
    let table = Table::fields(vec![
        ("k", k.to_string()),
        ("slope_a", c.slope_a.to_string()),
        ("slope_b", c.slope_b.to_string()),
        ("winner", c.winner.to_string()),
    ]);
    Ok(Outcome::new(Status::Success, Rendered::new(json, vec![table])))
}

fn crossover(k_max: &BigUint) -> CliResult<Outcome> {
    if k_max < &BigUint::from(3u32) {
        return Err(CliError::Input("--k-max must be at least 3".into()));
    }
    let k = bounds::crossover(k_max);
    let json = json!({
        "command": "crossover",
        "k_max": k_max.to_string(),
        "crossover": k.as_ref().map(|k| k.to_string()),
    });
    let table = Table::fields(vec![
        ("k_max", k_max.to_string()),
        ("crossover", k.map_or("none".to_string(), |k| k.to_string())),
    ]);
    Ok(Outcome::new(Status::Success, Rendered::new(json, vec![table])))
}

fn chains_json(p: &ChainPartition) -> Value {
    json!(p.chains().iter().map(|c| bit_list(c, p.n())).collect::<Vec<_>>())
}

fn chains_table(p: &ChainPartition, title: &str) -> Table {
    let mut t = Table::new(&["chain", "sets"]).titled(title);
    for (i, c) in p.chains().iter().enumerate() {
        t.push(vec![i.to_string(), bit_list(c, p.n()).join(" ")]);
    }
    t
}

fn pair_json(p: &Option<WitnessPair>, n: u32) -> Value {
    match p {
        Some(p) => json!({"index": p.index, "f": bits(p.f, n), "g": bits(p.g, n)}),
        None => Value::Null,
    }
}

fn pipeline_outcome(name: &str, report: &PipelineReport) -> Outcome {
    let steps: Vec<Value> =
        report.steps.iter().map(|s| json!({"name": s.name, "pass": s.pass, "detail": s.detail})).collect();
    let json = json!({"command": "procedures", "pipeline": name, "steps": steps, "pass": report.pass()});
    let mut t = Table::new(&["step", "pass", "detail"]);
    for s in &report.steps {
        t.push(vec![s.name.to_string(), s.pass.to_string(), s.detail.clone()]);
    }
    Outcome::new(Status::from_pass(report.pass()), Rendered::new(json, vec![t]))
}

fn interior_partition(family: &Family, given: Option<&std::path::Path>) -> CliResult<ChainPartition> {
    match given {
        Some(path) => read_partition(path, family.n()),
        None => Ok(chain_partition(&family.interior())?),
    }
}

fn procedures_cmd(a: &ProceduresArgs) -> CliResult<Outcome> {
    let family = read_family(&a.family)?;
    let n = family.n();
    let outcome = match a.pipeline {
        Pipeline::Dilworth => {
            let (w, antichain) = width(&family)?;
            let p = chain_partition(&family)?;
            let json = json!({
                "command": "procedures",
                "pipeline": "dilworth",
                "width": w,
                "antichain": bit_list(&antichain, n),
                "chains": chains_json(&p),
            });
            let summary = Table::fields(vec![("width", w.to_string()), ("antichain", bit_list(&antichain, n).join(" "))]);
            Outcome::new(Status::Success, Rendered::new(json, vec![summary, chains_table(&p, "chains")]))
        }
        Pipeline::Gaps => {
            let p = interior_partition(&family, a.partition.as_deref())?.augmented()?;
            let audit = procedures::gap_fullness_audit(&family, &p)?;
            let gaps: Vec<Value> = p
                .gaps()
                .iter()
                .map(|g| json!({"chain": g.chain, "lower": bits(g.lower, n), "upper": bits(g.upper, n), "size": g.size}))
                .collect();
            let failure = audit.failure.map(|(g, z)| {
                json!({"chain": g.chain, "lower": bits(g.lower, n), "upper": bits(g.upper, n), "missing": bits(z, n)})
            });
            let json = json!({
                "command": "procedures",
                "pipeline": "gaps",
                "chains": chains_json(&p),
                "gaps": gaps,
                "full": audit.pass,
                "failure": failure,
            });
            let mut t = Table::new(&["chain", "lower", "upper", "size"]).titled("gaps");
            for g in p.gaps() {
                t.push(vec![g.chain.to_string(), bits(g.lower, n), bits(g.upper, n), g.size.to_string()]);
            }
            let verdict = Table::fields(vec![
                ("full", audit.pass.to_string()),
                ("missing", failure.map_or("-".into(), |f| f["missing"].as_str().unwrap_or("").to_string())),
            ]);
            Outcome::new(Status::from_pass(audit.pass), Rendered::new(json, vec![t, verdict]))
        }
        Pipeline::Widegap => {
            let p = interior_partition(&family, a.partition.as_deref())?.augmented()?;
            let (out, trace) = procedures::eliminate_wide_gaps(&p)?;
            if let Some(path) = &a.trace {
                std::fs::write(path, trace.to_text(n)).map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            let moves: Vec<Value> = trace
                .moves
                .iter()
                .map(|m| {
                    json!({
                        "t": bits(m.t, n),
                        "from": m.from,
                        "to": m.to,
                        "gap": [bits(m.gap_lower, n), bits(m.gap_upper, n)],
                        "measure_before": [m.measure_before.0, m.measure_before.1],
                        "measure_after": [m.measure_after.0, m.measure_after.1],
                        "potential_before": m.potential_before,
                        "potential_after": m.potential_after,
                    })
                })
                .collect();
            let json = json!({
                "command": "procedures",
                "pipeline": "widegap",
                "moves": moves,
                "chains": chains_json(&out),
                "measure_strictly_decreasing": trace.measure_strictly_decreasing(),
                "potential_strictly_decreasing": trace.potential_strictly_decreasing(),
            });
            let mut t = Table::new(&["T", "from", "to", "gap"]).titled("moves");
            for m in &trace.moves {
                t.push(vec![
                    bits(m.t, n),
                    m.from.to_string(),
                    m.to.to_string(),
                    format!("{}..{}", bits(m.gap_lower, n), bits(m.gap_upper, n)),
                ]);
            }
            Outcome::new(Status::Success, Rendered::new(json, vec![t, chains_table(&out, "final chains")]))
        }
        Pipeline::Color => {
            let p = interior_partition(&family, a.partition.as_deref())?;
            let coloring = procedures::greedy_color(&family, &p)?;
            let check = procedures::coloring_gap_check(&family, &coloring)?;
            let failures: Vec<Value> = check
                .failures
                .iter()
                .map(|f| match &f.detail {
                    ColoringFailureKind::Gap(g) => json!({
                        "class": f.class, "kind": "gap",
                        "lower": bits(g.lower, n), "upper": bits(g.upper, n), "size": g.size,
                    }),
                    ColoringFailureKind::Size { actual, required } => json!({
                        "class": f.class, "kind": "size", "actual": actual, "required": required,
                    }),
                })
                .collect();
            let classes: Vec<Vec<String>> = coloring.classes.iter().map(|c| bit_list(c, n)).collect();
            let json = json!({
                "command": "procedures",
                "pipeline": "color",
                "classes": classes,
                "pass": check.pass,
                "failures": failures,
            });
            let mut t = Table::new(&["class", "sets"]).titled("colour classes");
            for (j, c) in classes.iter().enumerate() {
                t.push(vec![(j + 1).to_string(), c.join(" ")]);
            }
            let verdict = Table::fields(vec![("pass", check.pass.to_string()), ("failures", failures.len().to_string())]);
            Outcome::new(Status::from_pass(check.pass), Rendered::new(json, vec![t, verdict]))
        }
        Pipeline::Pairs => {
            let stars = match &a.fstar {
                Some(s) => vec![parse_set(s, n)?],
                None => family.members().to_vec(),
            };
            let mut tables_json = Vec::new();
            let mut t = Table::new(&["fstar", "index", "side", "f", "g"]);
            let mut all_complete = true;
            for s in stars {
                let table = procedures::pair_witnesses(&family, s)?;
                all_complete &= table.complete;
                for (side, rows) in [("inside", &table.inside), ("outside", &table.outside)] {
                    for (i, p) in rows {
                        let (f, g) = p.map_or(("-".into(), "-".into()), |p| (bits(p.f, n), bits(p.g, n)));
                        t.push(vec![bits(s, n), i.to_string(), side.into(), f, g]);
                    }
                }
                tables_json.push(json!({
                    "fstar": bits(s, n),
                    "complete": table.complete,
                    "inside": table.inside.iter().map(|(_, p)| pair_json(p, n)).collect::<Vec<_>>(),
                    "outside": table.outside.iter().map(|(_, p)| pair_json(p, n)).collect::<Vec<_>>(),
                }));
            }
            let json = json!({"command": "procedures", "pipeline": "pairs", "tables": tables_json, "complete": all_complete});
            let verdict = Table::fields(vec![("complete", all_complete.to_string())]);
            Outcome::new(Status::from_pass(all_complete), Rendered::new(json, vec![t, verdict]))
        }
        Pipeline::Digraph => {
            let d = procedures::diamond_digraph_audit(&family);
            let json = json!({
                "command": "procedures",
                "pipeline": "digraph",
                "arcs": d.arcs,
                "linked_pairs": d.linked_pairs,
                "family_size": d.family_size,
                "pass": d.pass,
            });
            let t = Table::fields(vec![
                ("arcs", d.arcs.to_string()),
                ("linked_pairs", d.linked_pairs.to_string()),
                ("|F|", d.family_size.to_string()),
                ("pass", d.pass.to_string()),
            ]);
            Outcome::new(Status::from_pass(d.pass), Rendered::new(json, vec![t]))
        }
        Pipeline::Audit => {
            let target = a
                .poset
                .as_deref()
                .ok_or_else(|| CliError::Input("audit needs --poset diamond or --poset antichain:m".into()))?;
            let spec = parse_poset(target)?;
            match spec.kind() {
                indsat::poset::PosetKind::Diamond => pipeline_outcome("audit:diamond", &procedures::diamond_pipeline(&family)),
                indsat::poset::PosetKind::Antichain(_) => {
                    pipeline_outcome("audit:antichain", &procedures::antichain_pipeline(&family))
                }
                _ => return Err(CliError::Input(format!("no audit pipeline for {target}"))),
            }
        }
    };
    Ok(outcome)
}
