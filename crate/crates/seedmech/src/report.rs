//! JSON renderings of core results. Every rational is a `"num/den"` string.

use serde_json::{json, Value};

use seedmech_core::audit::{ApproxReport, AuditReport, DisjointBoundReport, ExtensionAnalysis, ReproReport};
use seedmech_core::checks::{IndifferenceReport, Verdict, Witness};
use seedmech_core::mechanisms::{MechanismTable, RunOutcome, ScalarTable};
use seedmech_core::profile::{player_name, AllocationProfile, BidProfile};
use seedmech_core::rational::{format_rational, int};
use seedmech_core::{Rational, WelfareModel};

pub fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn qs(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(q).collect())
}

pub fn bids(b: &BidProfile) -> Value {
    json!(b.budgets())
}

pub fn sets(model: &dyn WelfareModel, p: &AllocationProfile) -> Value {
    Value::Array(
        p.sets().iter().map(|s| Value::Array(s.iter().map(|e| Value::String(model.element_label(e))).collect())).collect(),
    )
}

pub fn allocation(model: &dyn WelfareModel, p: &AllocationProfile, welfare: &Rational, trace: &[Rational]) -> Value {
    json!({ "sets": sets(model, p), "welfare": q(welfare), "trace": qs(trace) })
}

pub fn run_outcome(model: &dyn WelfareModel, out: &RunOutcome, seed: u64) -> Value {
    let mut v = allocation(model, &out.profile, &out.welfare, &out.trace);
    let obj = v.as_object_mut().expect("object");
    obj.insert("mechanism".into(), json!(out.mechanism.name()));
    obj.insert("bids".into(), bids(&out.bids));
    obj.insert("seed".into(), json!(seed));
    obj.insert("sequence".into(), json!(out.sequence.to_string()));
    obj.insert("utilities".into(), qs(&out.utilities));
    obj.insert("warnings".into(), json!(out.warnings));
    v
}

pub fn witness(model: &dyn WelfareModel, w: &Witness) -> Value {
    let terms: Vec<Value> = w
        .terms
        .iter()
        .zip(&w.values)
        .map(|(t, v)| json!({ "profile": sets(model, &t.profile), "player": t.player, "value": q(v) }))
        .collect();
    json!({ "property": w.property.name(), "terms": terms, "text": w.to_string() })
}

pub fn verdict(model: &dyn WelfareModel, v: &Verdict) -> Value {
    match v.witness() {
        None => json!({ "verdict": "PASS" }),
        Some(w) => json!({ "verdict": "FAIL", "witness": witness(model, w) }),
    }
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn indifference(model: &dyn WelfareModel, r: &IndifferenceReport) -> Value {
    json!({
        "mei": verdict(model, &r.mei),
        "agi": verdict(model, &r.agi),
        "anonymity": verdict(model, &r.anonymity),
        "implication": pass_fail(r.implication_holds()),
    })
}

pub fn mechanism_table(t: &MechanismTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|(&(a, b), e)| {
            let sequences: Vec<Value> = e
                .distribution
                .entries()
                .iter()
                .map(|o| json!({ "sequence": o.sequence.to_string(), "probability": q(&o.probability), "utilities": qs(&o.utilities) }))
                .collect();
            json!({
                "a": a,
                "b": b,
                "alpha": e.alpha.as_ref().map(q),
                "w_a": q(&e.w_a),
                "w_b": q(&e.w_b),
                "welfare": q(&e.welfare),
                "sequences": sequences,
            })
        })
        .collect();
    json!({ "kind": "mechanism_table", "t_max": t.t_max(), "disjoint": t.disjoint(), "entries": entries })
}

pub fn scalar_table(model: &dyn WelfareModel, t: &ScalarTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|(&(a, b), e)| {
            let words: Vec<Value> =
                e.words.iter().map(|(w, p)| json!({ "word": w.to_string(), "probability": q(p) })).collect();
            json!({ "a": a, "b": b, "p": q(&e.p), "w_a": q(&e.w_a), "w_b": q(&e.w_b), "words": words })
        })
        .collect();
    let order: Vec<String> = t.order().elements.iter().map(|&e| model.element_label(e)).collect();
    json!({ "kind": "scalar_table", "order": order, "w": qs(&t.order().w), "entries": entries })
}

pub fn sweep(r: &AuditReport) -> Value {
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "player": player_name(w.player).to_string(),
                "bids": bids(&w.bids),
                "raised": bids(&w.raised),
                "before": q(&w.before),
                "after": q(&w.after),
            })
        })
        .collect();
    let utilities: Vec<Value> = r.utilities.iter().map(|(b, u)| json!({ "bids": bids(b), "utilities": qs(u) })).collect();
    json!({
        "verdict": pass_fail(r.passed()),
        "budget_cap": r.budget_cap,
        "profiles_checked": r.profiles_checked,
        "monotone": r.monotone,
        "witnesses": witnesses,
        "utilities": utilities,
    })
}

pub fn approximation(r: &ApproxReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            let ratio = if row.welfare == int(0) { Value::Null } else { q(&(&row.opt / &row.welfare)) };
            json!({ "bids": bids(&row.bids), "welfare": q(&row.welfare), "opt": q(&row.opt), "ratio": ratio, "holds": row.holds })
        })
        .collect();
    json!({ "verdict": pass_fail(r.passed()), "fraction": q(&r.fraction), "disjoint_opt": r.disjoint_opt, "rows": rows })
}

pub fn disjoint_bound(model: &dyn WelfareModel, r: &DisjointBoundReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let links: Vec<Value> = c
                .links
                .iter()
                .map(|l| json!({ "name": l.name, "lhs": q(&l.lhs), "rhs": q(&l.rhs), "holds": l.holds() }))
                .collect();
            json!({
                "sequence": c.sequence.to_string(),
                "greedy": sets(model, &c.greedy),
                "greedy_welfare": q(&c.greedy_welfare),
                "o0_welfare": q(&c.o0_welfare),
                "links": links,
            })
        })
        .collect();
    json!({
        "bids": bids(&r.bids),
        "verdict": pass_fail(r.all_hold()),
        "opt": sets(model, &r.opt),
        "opt_welfare": q(&r.opt_welfare),
        "exhaustive": r.exhaustive,
        "worst_ratio": r.worst_ratio().as_ref().map(q),
        "checks": checks,
    })
}

pub fn repro(r: &ReproReport) -> Value {
    let values: Vec<Value> = r
        .values
        .iter()
        .map(|v| {
            json!({
                "label": v.label,
                "exact": q(&v.exact),
                "printed": v.printed,
                "printed_value": v.printed_value.as_ref().map(q),
                "deviation": v.deviation().as_ref().map(q),
            })
        })
        .collect();
    json!({
        "case": r.case,
        // Zero marks a parameter the case does not use.
        "epsilon": unused_as_null(&r.epsilon),
        "N": unused_as_null(&r.n),
        "claim": r.claim,
        "verdict": pass_fail(r.claim_holds),
        "values": values,
        "notes": r.notes,
    })
}

pub fn extension(a: &ExtensionAnalysis) -> Value {
    let rows: Vec<Value> = a
        .rows
        .iter()
        .map(|r| json!({ "bids": bids(&r.bids), "first": r.first.map(|p| player_name(p).to_string()), "utilities": qs(&r.utilities) }))
        .collect();
    json!({
        "verdict": pass_fail(a.demonstrates_infeasibility()),
        "rows": rows,
        "offsets": qs(&a.offsets),
        "max_welfare": q(&a.max_welfare),
        "forced_welfare_cap": q(&a.forced_welfare_cap()),
        "positive_welfare_feasible": a.positive_welfare_feasible,
    })
}

fn unused_as_null(x: &Rational) -> Value {
    if *x == int(0) {
        Value::Null
    } else {
        q(x)
    }
}
