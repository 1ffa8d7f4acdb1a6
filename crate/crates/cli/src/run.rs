use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use evfusion::expr::{self, Glyphs};
use evfusion::{
    conjunctive, dempster, disjunctive, dubois_prade, hybrid_combine, murphy, pcr1_combine, smets, validate,
    wao_combine, wao_combine_extended, wo_combine, yager, Bba64, CombinationResult64, Element, Frame, FusionState,
    MassMap, Model, Scalar, WaoState, WeightVector, World,
};

use crate::render::number;
use crate::report::{Audit, Breakdown, ErrorRecord, MassEntry, Report, RuleReport, REPORT_SCHEMA};
use crate::scenario::{Decimal, Mode, RuleId, Scenario, WorldSpec, SCENARIO_SCHEMA};
use crate::CliError;

/// Command-line overrides applied on top of a scenario.
#[derive(Clone, Debug)]
pub struct Options {
    pub rules: Option<Vec<String>>,
    pub mode: Option<Mode>,
    pub tolerance: f64,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { rules: None, mode: None, tolerance: evfusion::mass::MASS_TOLERANCE, timing: false }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Schema(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
    })
}

pub fn run_path(path: &Path, options: &Options) -> Result<Report, CliError> {
    run_scenario(&load_scenario(path)?, options)
}

/// Validated, ready-to-combine form of a scenario.
struct Prepared {
    frame: Frame,
    model: Model,
    sources: Vec<Bba64>,
    weights: BTreeMap<String, WeightVector<f64>>,
    rules: Vec<RuleId>,
}

fn parse_element(frame: &Frame, text: &str, location: &str) -> Result<Element, CliError> {
    expr::parse(frame, text).map_err(|e| CliError::Schema(format!("{location} `{text}`: {e}")))
}

fn parse_mass(value: &Decimal, location: &str) -> Result<f64, CliError> {
    f64::from_decimal(&value.to_string())
        .ok_or_else(|| CliError::Schema(format!("{location}: `{value}` is not a decimal number")))
}

fn prepare(scenario: &Scenario, options: &Options) -> Result<Prepared, CliError> {
    if scenario.schema != SCENARIO_SCHEMA {
        return Err(CliError::Schema(format!(
            "schema: expected `{SCENARIO_SCHEMA}`, found `{}`",
            scenario.schema
        )));
    }
    let rule_names = options.rules.as_ref().unwrap_or(&scenario.rules);
    if rule_names.is_empty() {
        return Err(CliError::Schema("rules: at least one rule is required".into()));
    }
    let rules = rule_names
        .iter()
        .map(|r| r.parse::<RuleId>().map_err(|e| CliError::Schema(format!("rules: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    for rule in &rules {
        if let RuleId::Wo(name) = rule {
            if !scenario.weights.contains_key(name) {
                return Err(CliError::Schema(format!("rules: `wo:{name}` names no entry in `weights`")));
            }
        }
    }

    let frame = Frame::new(scenario.frame.iter().map(String::as_str))
        .map_err(|e| CliError::Validation(format!("frame: {e}")))?;
    let mut model = if scenario.shafer { Model::shafer(frame.clone()) } else { Model::free(frame.clone()) };
    for (i, text) in scenario.constraints.iter().enumerate() {
        let x = parse_element(&frame, text, &format!("constraints[{i}]"))?;
        model = model.with_constraint(x).map_err(|e| CliError::Validation(e.to_string()))?;
    }
    let open = scenario.world == WorldSpec::Open;
    model = model.with_world(if open { World::Open } else { World::Closed });

    if scenario.sources.len() < 2 {
        return Err(CliError::Validation(format!(
            "sources: at least two are required, found {}",
            scenario.sources.len()
        )));
    }
    let mut sources = Vec::with_capacity(scenario.sources.len());
    for (i, spec) in scenario.sources.iter().enumerate() {
        let mut masses = Vec::with_capacity(spec.masses.len());
        for (text, value) in &spec.masses {
            let location = format!("sources[{i}].masses");
            masses.push((parse_element(&frame, text, &location)?, parse_mass(value, &format!("{location}[`{text}`]"))?));
        }
        let b = Bba64::with_tolerance(frame.clone(), masses, open, options.tolerance)
            .map_err(|e| CliError::Validation(format!("source `{}`: {e}", spec.name)))?;
        sources.push(b);
    }

    let mut weights = BTreeMap::new();
    for (name, entries) in &scenario.weights {
        let mut w = Vec::with_capacity(entries.len());
        for (text, value) in entries {
            let location = format!("weights.{name}");
            w.push((parse_element(&frame, text, &location)?, parse_mass(value, &format!("{location}[`{text}`]"))?));
        }
        let w = WeightVector::new(frame.clone(), w)
            .map_err(|e| CliError::Validation(format!("weights `{name}`: {e}")))?;
        weights.insert(name.clone(), w);
    }

    Ok(Prepared { frame, model, sources, weights, rules })
}

/// Runs every requested rule. Rule failures are recorded in the report;
/// only input problems are returned as errors.
pub fn run_scenario(scenario: &Scenario, options: &Options) -> Result<Report, CliError> {
    let p = prepare(scenario, options)?;
    let mode = options.mode.unwrap_or(scenario.mode);
    let mut results = Vec::new();
    for rule in &p.rules {
        match mode {
            Mode::Batch => results.push(timed(options, || apply(&p, rule, &p.sources, options), None)),
            Mode::Sequential => {
                if matches!(rule, RuleId::Pcr1 | RuleId::Wao) {
                    results.push(timed(options, || fold_state(&p, rule, options), Some("state")));
                }
                results.push(timed(options, || pairwise(&p, rule, options), Some("pairwise")));
            }
        }
    }
    let constraints = scenario
        .constraints
        .iter()
        .map(|c| expr::format(&p.frame, &expr::parse(&p.frame, c).expect("checked in prepare"), Glyphs::Ascii))
        .collect();
    Ok(Report {
        schema: REPORT_SCHEMA.to_string(),
        scenario: scenario.name.clone(),
        frame: scenario.frame.clone(),
        shafer: scenario.shafer,
        constraints,
        world: scenario.world,
        mode,
        sources: scenario.sources.iter().map(|s| s.name.clone()).collect(),
        tolerance: options.tolerance,
        results,
    })
}

fn timed(options: &Options, f: impl FnOnce() -> RuleReport, variant: Option<&str>) -> RuleReport {
    let start = Instant::now();
    let mut r = f();
    if options.timing {
        r.timing_us = Some(start.elapsed().as_micros() as u64);
    }
    r.variant = variant.map(str::to_string);
    r
}

fn entries(frame: &Frame, masses: &MassMap<f64>) -> Vec<MassEntry> {
    masses.iter().map(|(x, m)| MassEntry { element: expr::format(frame, x, Glyphs::Ascii), mass: *m }).collect()
}

fn error_record(e: &evfusion::Error) -> ErrorRecord {
    let kind = match e {
        evfusion::Error::TotalConflict { .. } => "total_conflict",
        evfusion::Error::UnsupportedArity { .. } => "unsupported_arity",
        evfusion::Error::ClosedWorldRequired(_) => "closed_world_required",
        evfusion::Error::NotNormalized { .. } => "invalid_intermediate",
        _ => "invalid_input",
    };
    ErrorRecord { kind: kind.to_string(), message: e.to_string() }
}

fn empty_report(rule: &RuleId) -> RuleReport {
    RuleReport {
        rule: rule.to_string(),
        variant: None,
        masses: Vec::new(),
        k: None,
        transfers: Vec::new(),
        audit: None,
        breakdown: None,
        error: None,
        timing_us: None,
    }
}

fn report_result(p: &Prepared, rule: &RuleId, r: evfusion::Result<CombinationResult64>, tolerance: f64) -> RuleReport {
    let mut out = empty_report(rule);
    match r {
        Ok(r) => {
            let audit = validate(&r.masses, &p.model, tolerance);
            let warning = (!audit.passed)
                .then(|| format!("masses sum to {}, deficit {}", number(audit.sum), number(audit.deficit)));
            out.masses = entries(&p.frame, &r.masses);
            out.k = r.k;
            out.transfers = entries(&p.frame, &r.transfers);
            out.audit = Some(Audit {
                mass_sum: audit.sum,
                deficit: audit.deficit,
                empty_mass: audit.empty_mass,
                passed: audit.passed,
                warning,
            });
        }
        Err(e) => out.error = Some(error_record(&e)),
    }
    out
}

fn combine(p: &Prepared, rule: &RuleId, sources: &[Bba64]) -> evfusion::Result<(CombinationResult64, Option<Breakdown>)> {
    let m = &p.model;
    let plain = |r: evfusion::Result<CombinationResult64>| r.map(|r| (r, None));
    match rule {
        RuleId::Conjunctive => conjunctive(sources, m).map(|c| {
            let r = CombinationResult64 {
                frame: p.frame.clone(),
                audit: validate(&c.consensus, m, evfusion::mass::MASS_TOLERANCE),
                masses: c.consensus,
                k: Some(c.k),
                transfers: MassMap::new(),
            };
            (r, None)
        }),
        RuleId::Disjunctive => plain(disjunctive(sources, m)),
        RuleId::Dempster => plain(dempster(sources, m)),
        RuleId::Smets => plain(smets(sources, m)),
        RuleId::Yager => plain(yager(sources, m)),
        RuleId::DuboisPrade => plain(dubois_prade(sources, m)),
        RuleId::Murphy => plain(murphy(sources, m)),
        RuleId::Wao => plain(wao_combine(sources, m)),
        RuleId::WaoExtended => plain(wao_combine_extended(sources, m)),
        RuleId::Pcr1 => plain(pcr1_combine(sources, m)),
        RuleId::DsmHybrid => hybrid_combine(sources, m).map(|(r, parts)| {
            let breakdown = Breakdown {
                s1: entries(&p.frame, &parts.s1),
                s2: entries(&p.frame, &parts.s2),
                s3: entries(&p.frame, &parts.s3),
            };
            (r, Some(breakdown))
        }),
        RuleId::Wo(name) => plain(wo_combine(sources, m, &p.weights[name])),
    }
}

fn apply(p: &Prepared, rule: &RuleId, sources: &[Bba64], options: &Options) -> RuleReport {
    match combine(p, rule, sources) {
        Ok((r, breakdown)) => {
            let mut out = report_result(p, rule, Ok(r), options.tolerance);
            out.breakdown = breakdown;
            out
        }
        Err(e) => report_result(p, rule, Err(e), options.tolerance),
    }
}

/// Quasi-associative fold: running consensus plus column sums (PCR1) or
/// running averages (WAO), finalized once.
fn fold_state(p: &Prepared, rule: &RuleId, options: &Options) -> RuleReport {
    let result = match rule {
        RuleId::Pcr1 => p
            .sources
            .iter()
            .try_fold(FusionState::new(p.model.clone()), |st, b| st.absorb(b))
            .and_then(|st| st.finalize()),
        _ => p
            .sources
            .iter()
            .try_fold(WaoState::new(p.model.clone()), |st, b| st.absorb(b))
            .and_then(|st| st.finalize()),
    };
    report_result(p, rule, result, options.tolerance)
}

/// Naive iteration: combine two sources, treat the result as a source, and
/// combine it with the next one.
fn pairwise(p: &Prepared, rule: &RuleId, options: &Options) -> RuleReport {
    let mut acc = p.sources[0].clone();
    let mut last = None;
    for next in &p.sources[1..] {
        match combine(p, rule, &[acc.clone(), next.clone()]) {
            Ok((r, breakdown)) => {
                if let Ok(b) = r.to_bba() {
                    acc = b;
                    last = Some((Ok(r), breakdown));
                } else if std::ptr::eq(next, p.sources.last().expect("at least two sources")) {
                    last = Some((Ok(r), breakdown));
                } else {
                    let e = evfusion::Error::NotNormalized { sum: r.total() };
                    return report_result(p, rule, Err(e), options.tolerance);
                }
            }
            Err(e) => return report_result(p, rule, Err(e), options.tolerance),
        }
    }
    let (result, breakdown) = last.expect("at least two sources");
    let mut out = report_result(p, rule, result, options.tolerance);
    out.breakdown = breakdown;
    out
}
