//! Plain-text views of the JSON records.

use std::fmt::Write as _;

use serde_json::Value;

const SECTIONS: [&str; 6] = [
    "valency",
    "components",
    "cosets",
    "burnside",
    "theorem24",
    "retract",
];

fn verdict(pass: &Value) -> &'static str {
    if pass.as_bool() == Some(true) {
        "PASS"
    } else {
        "FAIL"
    }
}

fn set(v: &Value) -> String {
    let items: Vec<&str> = v
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default();
    format!("{{{}}}", items.join(", "))
}

fn record_lines(out: &mut String, records: &Value, indent: &str) {
    for r in records.as_array().into_iter().flatten() {
        let _ = write!(
            out,
            "{indent}{} {}: predicted {} oracle {}",
            verdict(&r["pass"]),
            r["check"].as_str().unwrap_or("?"),
            r["predicted"],
            r["oracle"]
        );
        if let Some(w) = r.get("witness").and_then(Value::as_str) {
            let _ = write!(out, " [{w}]");
        }
        out.push('\n');
    }
}

pub fn analysis_text(v: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "group: {} (order {})",
        v["group"].as_str().unwrap_or("?"),
        v["order"]
    );
    let _ = writeln!(out, "L: {}", set(&v["left"]));
    let _ = writeln!(out, "R: {}", set(&v["right"]));
    let _ = writeln!(out, "arcs: {}", v["arcs"]);
    for name in SECTIONS {
        if let Some(Value::Object(section)) = v.get(name) {
            let _ = writeln!(out, "[{name}]");
            for (key, value) in section {
                let _ = writeln!(out, "  {key}: {value}");
            }
        }
    }
    out.push_str("checks:\n");
    record_lines(&mut out, &v["checks"], "  ");
    let _ = writeln!(out, "result: {}", verdict(&v["pass"]));
    out
}

pub fn fixtures_text(v: &Value) -> String {
    let mut out = String::new();
    let list = v["fixtures"].as_array().cloned().unwrap_or_default();
    for f in &list {
        let _ = writeln!(
            out,
            "{} {}  {}",
            verdict(&f["pass"]),
            f["id"].as_str().unwrap_or("?"),
            f["title"].as_str().unwrap_or("")
        );
        record_lines(&mut out, &f["records"], "    ");
    }
    let passed = list.iter().filter(|f| f["pass"] == true).count();
    let _ = writeln!(out, "fixtures: {passed}/{} passed", list.len());
    let _ = writeln!(out, "result: {}", verdict(&v["pass"]));
    out
}

pub fn verify_text(v: &Value) -> String {
    let mut out = String::new();
    let c = &v["config"];
    let _ = writeln!(
        out,
        "seed {}, {} instances, max order {}",
        c["seed"], c["instances"], c["max_order"]
    );
    let rows = v["summary"].as_array().cloned().unwrap_or_default();
    let width = rows
        .iter()
        .filter_map(|r| r["check"].as_str())
        .map(str::len)
        .max()
        .unwrap_or(0);
    for r in &rows {
        let _ = writeln!(
            out,
            "  {:<width$}  {}/{}",
            r["check"].as_str().unwrap_or("?"),
            r["pass"],
            r["total"]
        );
    }
    for o in v["outcomes"].as_array().into_iter().flatten() {
        if o["pass"] != true {
            let _ = writeln!(
                out,
                "FAIL instance {}: {} L={} R={}",
                o["index"],
                o["group"].as_str().unwrap_or("?"),
                set(&o["left"]),
                set(&o["right"])
            );
            let failing: Vec<Value> = o["records"]
                .as_array()
                .into_iter()
                .flatten()
                .filter(|r| r["pass"] != true)
                .cloned()
                .collect();
            record_lines(&mut out, &Value::Array(failing), "    ");
        }
    }
    let _ = writeln!(out, "instances: {}/{} passed", v["passed"], v["total"]);
    let _ = writeln!(out, "result: {}", verdict(&v["pass"]));
    out
}
