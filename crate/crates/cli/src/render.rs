//! Text and JSON output.

use std::fmt::Write;

use evfusion::{expr, Frame};

use crate::report::Report;

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

pub(crate) fn number(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn glyphs(text: &str, unicode: bool) -> String {
    if unicode {
        text.replace('&', "∩").replace('|', "∪")
    } else {
        text.to_string()
    }
}

/// One row per element, one column per rule, then `k` and the mass sum.
pub fn render_table(report: &Report, unicode: bool) -> String {
    let mut out = String::new();
    if let Some(name) = &report.scenario {
        writeln!(out, "scenario: {name}").unwrap();
    }
    let model = if report.shafer { "shafer" } else { "free" };
    let constraints = if report.constraints.is_empty() {
        String::new()
    } else {
        let c: Vec<String> = report.constraints.iter().map(|c| glyphs(c, unicode)).collect();
        format!(" + {} = {{}}", c.join(", "))
    };
    writeln!(out, "frame:    {}", report.frame.join(", ")).unwrap();
    writeln!(out, "model:    {model}{constraints}, {} world", world(report)).unwrap();
    writeln!(out, "mode:     {}", report.mode).unwrap();
    writeln!(out).unwrap();

    let mut rows: Vec<String> = Vec::new();
    for r in &report.results {
        for e in &r.masses {
            if !rows.contains(&e.element) {
                rows.push(e.element.clone());
            }
        }
    }
    if let Ok(frame) = Frame::new(report.frame.iter().map(String::as_str)) {
        rows.sort_by_cached_key(|text| expr::parse(&frame, text).ok());
    }

    let labels: Vec<String> = report.results.iter().map(|r| r.label()).collect();
    let mut first = vec!["element".to_string()];
    first.extend(rows.iter().map(|r| glyphs(r, unicode)));
    first.push("k".into());
    first.push("sum".into());
    let first_width = first.iter().map(|s| s.chars().count()).max().unwrap_or(0);

    let mut columns: Vec<Vec<String>> = Vec::new();
    for (r, label) in report.results.iter().zip(&labels) {
        let mut col = vec![label.clone()];
        if r.error.is_some() {
            col.extend(std::iter::repeat_n("-".to_string(), rows.len() + 2));
        } else {
            col.extend(rows.iter().map(|e| number(r.mass(e).unwrap_or(0.0))));
            col.push(r.k.map(number).unwrap_or_else(|| "-".into()));
            col.push(r.audit.as_ref().map(|a| number(a.mass_sum)).unwrap_or_else(|| "-".into()));
        }
        columns.push(col);
    }

    for (i, head) in first.iter().enumerate() {
        let pad = first_width - head.chars().count();
        write!(out, "{head}{}", " ".repeat(pad)).unwrap();
        for col in &columns {
            let w = col.iter().map(|s| s.chars().count()).max().unwrap_or(0);
            write!(out, "  {:>w$}", col[i]).unwrap();
        }
        writeln!(out).unwrap();
    }

    let errors: Vec<String> = report
        .results
        .iter()
        .filter_map(|r| r.error.as_ref().map(|e| format!("  {}: {} ({})", r.label(), e.message, e.kind)))
        .collect();
    if !errors.is_empty() {
        writeln!(out, "\nerrors:").unwrap();
        for e in errors {
            writeln!(out, "{e}").unwrap();
        }
    }
    let warnings: Vec<String> = report
        .results
        .iter()
        .filter_map(|r| {
            let w = r.audit.as_ref()?.warning.as_ref()?;
            Some(format!("  {}: {w}", r.label()))
        })
        .collect();
    if !warnings.is_empty() {
        writeln!(out, "\nwarnings:").unwrap();
        for w in warnings {
            writeln!(out, "{w}").unwrap();
        }
    }
    let timings: Vec<String> = report
        .results
        .iter()
        .filter_map(|r| r.timing_us.map(|t| format!("  {}: {t} us", r.label())))
        .collect();
    if !timings.is_empty() {
        writeln!(out, "\ntiming:").unwrap();
        for t in timings {
            writeln!(out, "{t}").unwrap();
        }
    }
    out
}

fn world(report: &Report) -> &'static str {
    match report.world {
        crate::scenario::WorldSpec::Closed => "closed",
        crate::scenario::WorldSpec::Open => "open",
    }
}
