use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use semiprime_lab::closure::{
    bounded_dvr_candidates, check_axioms, element_chain_candidates, fractional_violation,
    sakuma_consistency, AxiomReport, FractionalCandidate, FractionalChain, FractionalVerdict,
};
use semiprime_lab::ideal::{classify_shape, enumerate_ideals, hasse_diagram, IdealRecord};
use semiprime_lab::search::{explain_pruning, search, SearchMode, SearchProblem};
use semiprime_lab::{
    Axiom, ClosureOperation, Error, Ideal, NumericalSemigroup, Ring, TruncatedSeries,
};

use crate::{Command, Failure, IdealsAction, ModeArg, RingArgs};

/// Version of every JSON document this tool prints.
pub const SCHEMA_VERSION: u32 = 1;

type Outcome = Result<(), Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Semigroup { gens, json } => semigroup(&gens, json),
        Command::Canon { ring, elems, json } => canon(&ring, &elems, json),
        Command::Ideals { action } => match action {
            IdealsAction::Enumerate {
                ring,
                max_order,
                json,
            } => ideals_enumerate(&ring, max_order, json),
            IdealsAction::Classify {
                ring,
                max_order,
                json,
            } => ideals_classify(&ring, max_order, json),
        },
        Command::Lattice {
            ring,
            max_order,
            dot: _,
            out,
        } => {
            let r = build_ring(&ring)?;
            let dot = hasse_diagram(&enumerate_ideals(&r, max_order)?);
            match out {
                Some(path) => std::fs::write(&path, dot)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
                None => {
                    print!("{dot}");
                    Ok(())
                }
            }
        }
        Command::Verify {
            ring,
            max_order,
            op,
            axioms,
            include_zero,
            sakuma,
            expect_pass,
            json,
        } => verify(
            &ring,
            max_order,
            &op,
            &axioms,
            include_zero,
            sakuma,
            expect_pass,
            json,
        ),
        Command::Search {
            ring,
            max_order,
            mode,
            margin,
            budget,
            no_zero,
            expect_identity_only,
            explain,
            json,
        } => {
            let r = build_ring(&ring)?;
            let mode = match mode {
                ModeArg::Prime => SearchMode::Prime,
                ModeArg::Semiprime => SearchMode::Semiprime,
            };
            let margin = margin.unwrap_or(2 * r.width() as u32);
            let mut problem = if r.is_dvr() {
                SearchProblem::dvr_chain(&r, max_order, mode, margin)?
            } else {
                SearchProblem::lattice(&r, max_order, mode, margin)
            };
            problem = problem.with_zero(!no_zero).with_explain(explain);
            if let Some(b) = budget {
                problem = problem.with_budget(b);
            }
            let result = search(&problem)?;
            if json {
                let mut doc = envelope("search");
                doc["margin"] = json!(margin);
                doc["result"] = json!(result.summary());
                if explain {
                    doc["explain"] = json!(explain_pruning(&result));
                }
                print_json(&doc);
            } else {
                println!("{}: {} operation(s)", result.label, result.tables.len());
                for (k, moved) in result.summary().operations.iter().enumerate() {
                    if moved.is_empty() {
                        println!("[{k}] identity");
                    } else {
                        println!("[{k}] moves {} ideal(s)", moved.len());
                        for (from, to) in moved {
                            println!("    f{from} = {to}");
                        }
                    }
                }
                if explain {
                    print!("{}", explain_pruning(&result));
                }
            }
            if expect_identity_only && !result.is_identity_only() {
                return Err(Failure::Expectation(format!(
                    "expected the identity only, found {} operation(s)",
                    result.tables.len()
                )));
            }
            Ok(())
        }
        Command::DemoFractional {
            dvr,
            element,
            gens,
            p,
            depth,
            candidate,
            ideal,
            margin,
            json,
        } => demo_fractional(
            dvr, element, &gens, p, depth, &candidate, ideal, margin, json,
        ),
    }
}

fn envelope(command: &str) -> serde_json::Value {
    json!({ "schema_version": SCHEMA_VERSION, "command": command })
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

fn build_ring(args: &RingArgs) -> Result<Arc<Ring>, Failure> {
    Ok(Ring::from_gens(&args.gens, args.p)?)
}

fn semigroup(gens: &[u32], json: bool) -> Outcome {
    let s = NumericalSemigroup::from_generators(gens)?;
    if json {
        let mut doc = envelope("semigroup");
        doc["generators"] = json!(s.generators());
        doc["gaps"] = json!(s.gaps());
        doc["frobenius"] = json!(s.frobenius());
        doc["conductor"] = json!(s.conductor());
        doc["multiplicity"] = json!(s.multiplicity());
        print_json(&doc);
    } else {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
        println!("generators: {}", list(s.generators()));
        println!("gaps: {}", list(s.gaps()));
        println!("frobenius: {}", s.frobenius());
        println!("conductor: {}", s.conductor());
        println!("multiplicity: {}", s.multiplicity());
    }
    Ok(())
}

fn canon(args: &RingArgs, elems: &[String], json: bool) -> Outcome {
    let r = build_ring(args)?;
    // Generators need precision past order + width; the tail beyond the
    // written terms is zero.
    let mut gens = Vec::new();
    for e in elems {
        let bound = semiprime_lab::series::parse_terms(e)?
            .iter()
            .map(|(e, _)| e + 1)
            .max()
            .unwrap_or(0)
            + r.width();
        gens.push(TruncatedSeries::parse(e, r.field(), bound)?);
    }
    if gens.iter().all(TruncatedSeries::is_zero) {
        return Err(Error::ZeroInput.into());
    }
    let ideal = Ideal::from_generators(&r, &gens)?;
    if ideal.is_unit() {
        return Err(Error::UnitInput.into());
    }
    let shape = classify_shape(&ideal)?;
    if json {
        let mut doc = envelope("canon");
        doc["ring"] = json!(r.to_string());
        doc["ideal"] = json!(ideal.record());
        print_json(&doc);
    } else {
        println!("{ideal}");
        println!("shape: {shape}");
    }
    Ok(())
}

fn ideals_enumerate(args: &RingArgs, max_order: u32, json: bool) -> Outcome {
    let r = build_ring(args)?;
    let ideals = enumerate_ideals(&r, max_order)?;
    if json {
        let records: Vec<IdealRecord> = ideals.iter().map(Ideal::record).collect();
        let mut doc = envelope("ideals enumerate");
        doc["ring"] = json!(r.to_string());
        doc["max_order"] = json!(max_order);
        doc["count"] = json!(records.len());
        doc["ideals"] = json!(records);
        print_json(&doc);
    } else {
        for i in &ideals {
            let record = i.record();
            let mu = i.min_generators().map_or(0, |m| m);
            println!(
                "{i}\t{}\tmu={mu}",
                record.shape.unwrap_or_else(|| "-".into())
            );
        }
        println!("{} ideal(s)", ideals.len());
    }
    Ok(())
}

#[derive(Serialize)]
struct OrderCounts {
    order: u32,
    total: usize,
    families: BTreeMap<String, usize>,
}

fn ideals_classify(args: &RingArgs, max_order: u32, json: bool) -> Outcome {
    let r = build_ring(args)?;
    let ideals = enumerate_ideals(&r, max_order)?;
    let mut counts: BTreeMap<u32, OrderCounts> = BTreeMap::new();
    let mut max_mu = 0;
    for i in ideals.iter().filter(|i| i.is_proper()) {
        let tag = classify_shape(i)?;
        if tag.expand(&r) != *i {
            return Err(Error::UnclassifiedIdeal(i.to_string()).into());
        }
        max_mu = max_mu.max(i.min_generators()?);
        let n = i.order().expect("proper");
        let entry = counts.entry(n).or_insert_with(|| OrderCounts {
            order: n,
            total: 0,
            families: BTreeMap::new(),
        });
        entry.total += 1;
        *entry.families.entry(tag.family.to_string()).or_default() += 1;
    }
    if json {
        let mut doc = envelope("ideals classify");
        doc["ring"] = json!(r.to_string());
        doc["max_order"] = json!(max_order);
        doc["proper_ideals"] = json!(ideals.len() - 1);
        doc["max_min_generators"] = json!(max_mu);
        doc["per_order"] = json!(counts.values().collect::<Vec<_>>());
        print_json(&doc);
    } else {
        for c in counts.values() {
            let fams: Vec<String> = c.families.iter().map(|(f, k)| format!("{f} {k}")).collect();
            println!("order {}: {} ({})", c.order, c.total, fams.join(", "));
        }
        println!(
            "{} proper ideal(s) classified, at most {max_mu} generator(s)",
            ideals.len() - 1
        );
    }
    Ok(())
}

fn report_text(report: &AxiomReport) -> String {
    let mut out = String::new();
    for r in &report.results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        write!(
            out,
            "{status} {}: checked {}, skipped {}, violations {}",
            r.axiom, r.checked, r.skipped, r.violation_count
        )
        .unwrap();
        if let Some(m) = r.multipliers {
            write!(out, ", multipliers {m}").unwrap();
        }
        out.push('\n');
        for w in r.witnesses.iter().take(3) {
            let inputs: Vec<String> = w.inputs.iter().map(Ideal::to_string).collect();
            writeln!(
                out,
                "    inputs [{}]: lhs {}, rhs {}",
                inputs.join(", "),
                w.lhs,
                w.rhs
            )
            .unwrap();
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn verify(
    args: &RingArgs,
    max_order: u32,
    op_name: &str,
    axioms: &str,
    include_zero: bool,
    sakuma: bool,
    expect_pass: bool,
    json: bool,
) -> Outcome {
    let r = build_ring(args)?;
    let op = ClosureOperation::builtin(op_name, &r)?.with_includes_zero(include_zero);
    let mut ideals = enumerate_ideals(&r, max_order)?;
    if include_zero {
        ideals.push(Ideal::zero(&r));
    }
    let (reports, passed) = if sakuma {
        let rep = sakuma_consistency(&op, &ideals)?;
        let passed = rep.preconditions.passed() && rep.consequences.passed();
        (vec![rep.preconditions, rep.consequences], passed)
    } else {
        let list = Axiom::parse_list(axioms)?;
        let rep = check_axioms(&op, &ideals, &list)?;
        let passed = rep.passed();
        (vec![rep], passed)
    };
    if json {
        let mut doc = envelope("verify");
        doc["ring"] = json!(r.to_string());
        doc["max_order"] = json!(max_order);
        doc["passed"] = json!(passed);
        doc["reports"] = json!(reports);
        print_json(&doc);
    } else {
        println!(
            "{} on {} ideal(s) of {r} up to order {max_order}",
            op.name(),
            reports[0].ideals
        );
        if sakuma {
            println!("preconditions:");
            print!("{}", report_text(&reports[0]));
            println!("consequences:");
        }
        print!("{}", report_text(reports.last().unwrap()));
    }
    if expect_pass && !passed {
        return Err(Failure::Expectation("some axioms fail".into()));
    }
    Ok(())
}

/// `key=value` pairs and bare flags of a candidate spec such as
/// `bounded:m=2,shift=1,fix-negatives`.
fn spec_params(spec: &str) -> (String, BTreeMap<String, String>) {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = rest
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|kv| match kv.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
            None => (kv.trim().to_string(), String::new()),
        })
        .collect();
    (kind.trim().to_string(), params)
}

fn int_param(
    params: &BTreeMap<String, String>,
    key: &str,
    default: Option<i64>,
) -> Result<i64, Failure> {
    match params.get(key) {
        Some(v) => v.parse().map_err(|_| {
            Failure::Usage(format!("candidate parameter {key}={v} is not an integer"))
        }),
        None => default.ok_or_else(|| Failure::Usage(format!("candidate needs {key}=..."))),
    }
}

#[allow(clippy::too_many_arguments)]
fn demo_fractional(
    dvr: bool,
    element: Option<String>,
    gens: &[u32],
    p: u32,
    depth: u32,
    candidate: &str,
    ideal: Option<String>,
    margin: u32,
    json: bool,
) -> Outcome {
    let mut problems = Vec::new();
    if dvr == element.is_some() {
        problems.push("give exactly one of --dvr and --element");
    }
    if element.is_some() && gens.is_empty() {
        problems.push("--element needs --gens");
    }
    if dvr && !gens.is_empty() && gens != [1] {
        problems.push("--dvr takes no --gens other than 1");
    }
    if ideal.is_some() && element.is_none() {
        problems.push("--ideal applies to element chains only");
    }
    if !problems.is_empty() {
        return Err(Failure::Usage(problems.join("; ")));
    }
    let (kind, params) = spec_params(candidate);
    let (chain, candidates) = if dvr {
        let ring = Ring::dvr(p)?;
        let chain = FractionalChain::dvr(&ring, depth)?;
        let candidates = match kind.as_str() {
            "family" => bounded_dvr_candidates(&chain)?,
            "identity" => vec![FractionalCandidate::identity(&chain)],
            "bounded" => vec![FractionalCandidate::dvr_bounded(
                &chain,
                int_param(&params, "m", None)?,
                int_param(&params, "shift", Some(0))?,
                params.contains_key("fix-negatives"),
            )],
            "enlarge" => vec![FractionalCandidate::dvr_enlarging(
                &chain,
                int_param(&params, "k", Some(1))?,
            )],
            other => return Err(Failure::Usage(format!("unknown DVR candidate {other:?}"))),
        };
        (chain, candidates)
    } else {
        let ring = Ring::from_gens(gens, p)?;
        let text = element.expect("checked above");
        let bound = semiprime_lab::series::parse_terms(&text)?
            .iter()
            .map(|(e, _)| e + 1)
            .max()
            .unwrap_or(0)
            + ring.width();
        let s = TruncatedSeries::parse(&text, ring.field(), bound)?;
        let chain = FractionalChain::element(&ring, &s, depth)?;
        let candidates = match kind.as_str() {
            "family" => {
                let lead = s.order().ok_or(Error::ZeroInput)? as u32;
                let ideals = enumerate_ideals(&ring, lead * depth)?;
                element_chain_candidates(&chain, &ideals)
            }
            "identity" => vec![FractionalCandidate::identity(&chain)],
            "bounded" => {
                let text =
                    ideal.ok_or_else(|| Failure::Usage("bounded:n=N needs --ideal".into()))?;
                let i = Ideal::parse(&ring, &text)?;
                vec![FractionalCandidate::element_bounded(
                    &chain,
                    int_param(&params, "n", None)?,
                    &i,
                )]
            }
            other => {
                return Err(Failure::Usage(format!(
                    "unknown element-chain candidate {other:?}"
                )))
            }
        };
        (chain, candidates)
    };
    let verdicts: Vec<(String, FractionalVerdict)> = candidates
        .iter()
        .map(|c| Ok((c.name.clone(), fractional_violation(&chain, c, margin)?)))
        .collect::<Result<_, Error>>()?;
    if json {
        let mut doc = envelope("demo-fractional");
        doc["ring"] = json!(chain.ring().to_string());
        doc["depth"] = json!(depth);
        doc["candidates"] = json!(verdicts
            .iter()
            .map(|(name, v)| json!({ "candidate": name, "result": v }))
            .collect::<Vec<_>>());
        print_json(&doc);
    } else {
        for (name, v) in &verdicts {
            match v {
                FractionalVerdict::Witness(w) => println!(
                    "{name}: {:?} at (i, j) = ({}, {}): f(C_i) f(C_j) = {} is not inside f(C_(i+j)) = {}",
                    w.kind, w.i, w.j, w.product, w.target
                ),
                FractionalVerdict::CertifiedIdentityOnly => {
                    println!("{name}: no witness; the identity is the only semiprime operation on the chain")
                }
                FractionalVerdict::Unrefuted => println!("{name}: no witness in the window"),
            }
        }
    }
    Ok(())
}
