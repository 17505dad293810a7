//! Plain-text rendering of reports.

use std::fmt::Write;

use serde_json::Value;

use nicecurve_core::report::{Claim, VerificationReport};

pub fn text(report: &VerificationReport) -> String {
    let mut out = String::new();
    for c in &report.claims {
        let _ = writeln!(out, "{:<14} {}", c.status.to_string(), c.id);
        if let Some(f) = &c.first_failure {
            let _ = writeln!(out, "    first failure: {} {}", f.name, f.operands);
        }
        details(&mut out, c);
        for n in &c.notes {
            let _ = writeln!(out, "    note: {n}");
        }
        if let Some(s) = &c.source {
            let _ = writeln!(out, "    source: {s}");
        }
    }
    let _ = writeln!(out, "overall: {}", report.status());
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.strip_suffix("/1").unwrap_or(s).to_string(),
        Value::Array(items) => format!("({})", items.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn details(out: &mut String, c: &Claim) {
    let w = &c.witnesses;
    match c.id.as_str() {
        "lemma-quotient" | "prop-hyper" => {
            if let Some(Value::Array(pts)) = w.get("points") {
                let _ = writeln!(out, "    {} points: {}", pts.len(), pts.iter().map(plain).collect::<Vec<_>>().join(" "));
            }
        }
        "torsion" => {
            if let (Some(t), Some(d)) = (w.get("torsion"), w.get("distinguished_d")) {
                let _ = writeln!(out, "    torsion {} (distinguished d = {d})", plain(t));
            }
        }
        "param.t" | "param.u" => {
            if let Some(Value::Array(rows)) = w.get("rows") {
                for r in rows {
                    let _ = writeln!(out, "    {r}");
                }
            }
        }
        "chabauty.count" => chabauty_table(out, c),
        _ => {}
    }
}

fn chabauty_table(out: &mut String, c: &Claim) {
    let w = &c.witnesses;
    let get = |k: &str| w.get(k).map(plain).unwrap_or_default();
    let p = c.parameters.get("p").map(plain).unwrap_or_default();
    let _ = writeln!(
        out,
        "    verdict {} at p = {p}: bound {} (disk sum {}, Coleman {})",
        get("verdict"),
        get("bound"),
        get("disk_sum"),
        get("coleman_bound")
    );
    let _ = writeln!(out, "    {:<10} {:<12} {:<16} {:>10} {:>6} {:>6}", "disk", "kind", "method", "strassmann", "bound", "known");
    if let Some(Value::Array(disks)) = w.get("disks") {
        for d in disks {
            let f = |k: &str| d.get(k).map(plain).unwrap_or_default();
            let known = d.get("known").and_then(Value::as_array).map_or(0, Vec::len);
            let _ = writeln!(
                out,
                "    {:<10} {:<12} {:<16} {:>10} {:>6} {:>6}",
                f("residue"),
                f("kind"),
                f("method"),
                f("strassmann"),
                f("bound"),
                known
            );
        }
    }
    if let Some(Value::Array(open)) = w.get("unresolved_disks") {
        let _ = writeln!(out, "    unresolved: {}", open.iter().map(plain).collect::<Vec<_>>().join(" "));
    }
}
