use gammalab_core::enumerate::{eulerian_by_enumeration, joint_distribution_where, simple_by_enumeration};
use gammalab_core::hclasses::{class_polynomial, equivalence_class, h5_classes, verify_reduction, SimpTable};
use gammalab_core::poly::gamma_expand_bivariate;
use gammalab_core::rsk::rsk_two_sided_eulerian;
use gammalab_core::series::{simple_series, verify_system_identities, SimpleMethod};
use gammalab_core::{in_h, BivarGammaExpansion, BivarPoly, Error, Permutation, Result, MAX_ENUMERATION_N};
use serde_json::json;

use crate::output::Report;
use crate::properties;
use crate::{Method, RunConfig, Suite, Target};

pub const DEFAULT_MAX_N: usize = 10;
/// Largest n enumerated without `--long-run`.
const SAFE_N: usize = 10;

fn enumeration_allowed(cfg: RunConfig, n: usize, cheaper: Option<Method>) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let cap = if cfg.long_run { MAX_ENUMERATION_N } else { SAFE_N };
    let bound = cfg.max_n.min(cap);
    if n <= bound {
        return Ok(());
    }
    let mut hints = Vec::new();
    if let Some(m) = cheaper {
        hints.push(format!("use --method {}", method_name(m)));
    }
    if n <= MAX_ENUMERATION_N {
        hints.push(if cfg.long_run || n <= SAFE_N {
            format!("raise --max-n to {n}")
        } else {
            format!("pass --long-run --max-n {n}")
        });
    }
    Err(Error::Resource { what: "full enumeration of S_n", n, bound, hint: Some(hints.join("; or ")) })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Enumerate => "enumerate",
        Method::Rsk => "rsk",
        Method::Inversion => "inversion",
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Eulerian => "eulerian",
        Target::Simple => "simple",
        Target::Separable => "separable",
        Target::H5 => "h5",
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Conjecture => "conjecture",
        Suite::Reduction => "reduction",
        Suite::System => "system",
        Suite::Lemma39 => "lemma39",
        Suite::Properties => "properties",
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn gamma_text(g: &BivarGammaExpansion) -> String {
    let parts: Vec<String> = g.iter().map(|((i, j), c)| format!("({i},{j}):{c}")).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

fn gamma_json(g: &BivarGammaExpansion) -> serde_json::Value {
    g.iter().map(|((i, j), c)| json!({"i": i, "j": j, "c": c})).collect()
}

pub fn stats(text: &str) -> Result<Report> {
    let p: Permutation = text.parse()?;
    let des_set = p.descent_set();
    let json = json!({
        "permutation": p.to_string(),
        "n": p.len(),
        "descent_set": des_set,
        "des": p.des(),
        "ides": p.ides(),
        "simple": p.is_simple(),
        "sum_indecomposable": p.is_sum_indecomposable(),
        "skew_indecomposable": p.is_skew_indecomposable(),
        "in_h2": in_h(&p, 2),
        "in_h5": in_h(&p, 5),
    });
    let des_text = des_set.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    Ok(Report::record(
        json,
        vec![
            ("permutation", p.to_string()),
            ("n", p.len().to_string()),
            ("descent_set", if des_text.is_empty() { "-".into() } else { des_text }),
            ("des", p.des().to_string()),
            ("ides", p.ides().to_string()),
            ("simple", yes_no(p.is_simple())),
            ("sum_indecomposable", yes_no(p.is_sum_indecomposable())),
            ("skew_indecomposable", yes_no(p.is_skew_indecomposable())),
            ("in_h2", yes_no(in_h(&p, 2))),
            ("in_h5", yes_no(in_h(&p, 5))),
        ],
    ))
}

pub fn decompose(text: &str) -> Result<Report> {
    let p: Permutation = text.parse()?;
    let tree = gammalab_core::decompose(&p);
    let brc = tree.brc_partition();
    let lengths = brc.lengths();
    let simplified = tree.simplify();
    let json = json!({
        "permutation": p.to_string(),
        "tree": tree.to_string(),
        "tree_json": tree,
        "brc_chains": brc.chains,
        "brc_lengths": lengths,
        "r_odd": brc.r_odd,
        "simplified": simplified.to_string(),
        "g_tree": tree.is_g_tree(),
    });
    let lengths_text = lengths.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    Ok(Report::record(
        json,
        vec![
            ("permutation", p.to_string()),
            ("tree", tree.to_string()),
            ("brc_lengths", if lengths_text.is_empty() { "-".into() } else { lengths_text }),
            ("r_odd", brc.r_odd.to_string()),
            ("simplified", simplified.to_string()),
        ],
    ))
}

pub fn class(text: &str) -> Result<Report> {
    let p: Permutation = text.parse()?;
    let c = equivalence_class(&p)?;
    let sig = c.signature;
    let poly = class_polynomial(&c);
    let members: Vec<String> = c.members.iter().map(Permutation::to_string).collect();
    let json = json!({
        "permutation": p.to_string(),
        "minimal": c.minimal.to_string(),
        "minimal_permutation": c.minimal_permutation().to_string(),
        "members": members,
        "size": members.len(),
        "signature": sig,
        "i": sig.i(),
        "j": sig.j(),
        "polynomial": poly.to_string(),
    });
    Ok(Report::record(
        json,
        vec![
            ("permutation", p.to_string()),
            ("minimal", c.minimal.to_string()),
            ("minimal_permutation", c.minimal_permutation().to_string()),
            ("size", members.len().to_string()),
            ("members", members.join(", ")),
            ("d2 v4 v5 r", format!("{} {} {} {}", sig.d2, sig.v4, sig.v5, sig.r)),
            ("gamma_index", format!("({},{})", sig.i(), sig.j())),
            ("polynomial", poly.to_string()),
        ],
    ))
}

fn target_poly(cfg: RunConfig, target: Target, n: usize, method: Method) -> Result<BivarPoly> {
    let unsupported = || {
        Err(Error::Input(format!(
            "method {} does not apply to target {}",
            method_name(method),
            target_name(target)
        )))
    };
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    match (target, method) {
        (Target::Eulerian, Method::Enumerate) => {
            enumeration_allowed(cfg, n, Some(Method::Rsk))?;
            Ok(eulerian_by_enumeration(n)?.into_poly())
        }
        (Target::Eulerian, Method::Rsk) => rsk_two_sided_eulerian(n),
        (Target::Simple, Method::Enumerate) => {
            enumeration_allowed(cfg, n, Some(Method::Inversion))?;
            if n < 4 {
                return Ok(BivarPoly::zero());
            }
            Ok(simple_by_enumeration(n)?.into_poly())
        }
        (Target::Simple, Method::Inversion) => Ok(simple_series(n, SimpleMethod::Inversion)?.coeff(n).clone()),
        (Target::Separable, Method::Enumerate) => {
            enumeration_allowed(cfg, n, None)?;
            Ok(joint_distribution_where(n, |p| in_h(p, 2))?.into_poly())
        }
        (Target::H5, Method::Enumerate) => {
            enumeration_allowed(cfg, n, None)?;
            Ok(joint_distribution_where(n, |p| in_h(p, 5))?.into_poly())
        }
        _ => unsupported(),
    }
}

pub fn poly(cfg: RunConfig, target: Target, n: usize, method: Option<Method>) -> Result<Report> {
    let method = method.unwrap_or(match target {
        Target::Eulerian => Method::Rsk,
        Target::Simple => Method::Inversion,
        Target::Separable | Target::H5 => Method::Enumerate,
    });
    let p = target_poly(cfg, target, n, method)?;
    let gamma = gamma_expand_bivariate(&p, n - 1)?;
    let positive = gamma.is_gamma_positive();
    let json = json!({
        "target": target_name(target),
        "n": n,
        "method": method_name(method),
        "polynomial": p.to_string(),
        "terms": p,
        "darga": n - 1,
        "gamma": gamma_json(&gamma),
        "positive": positive,
    });
    Ok(Report::record(
        json,
        vec![
            ("target", target_name(target).into()),
            ("n", n.to_string()),
            ("method", method_name(method).into()),
            ("polynomial", p.to_string()),
            ("gamma", gamma_text(&gamma)),
            ("positive", yes_no(positive)),
        ],
    )
    .with_poly_csv(&p))
}

struct Case {
    case: String,
    passed: bool,
    detail: String,
}

fn case(case: impl Into<String>, passed: bool, detail: impl Into<String>) -> Case {
    Case { case: case.into(), passed, detail: detail.into() }
}

pub fn verify(cfg: RunConfig, suite: Suite, method: Option<Method>, seed: u64) -> Result<(Report, bool)> {
    let max_n = cfg.max_n;
    let mut extra = serde_json::Map::new();
    let cases: Vec<Case> = match suite {
        Suite::Conjecture => {
            let method = method.unwrap_or(Method::Inversion);
            let series = match method {
                Method::Inversion => simple_series(max_n, SimpleMethod::Inversion)?,
                Method::Enumerate => {
                    enumeration_allowed(cfg, max_n, Some(Method::Inversion))?;
                    simple_series(max_n, SimpleMethod::Enumerate)?
                }
                Method::Rsk => return Err(Error::Input("the conjecture sweep uses --method inversion or enumerate".into())),
            };
            extra.insert("method".into(), method_name(method).into());
            (4..=max_n)
                .map(|n| {
                    let g = gamma_expand_bivariate(series.coeff(n), n - 1)?;
                    Ok(case(format!("n={n}"), g.is_gamma_positive(), gamma_text(&g)))
                })
                .collect::<Result<_>>()?
        }
        Suite::Reduction => {
            enumeration_allowed(cfg, max_n, None)?;
            let simp = SimpTable::new(max_n);
            (1..=max_n)
                .map(|n| {
                    let r = verify_reduction(n, &simp)?;
                    let detail = match r.failures.first() {
                        Some(f) => f.clone(),
                        None if !r.sum_matches_eulerian => "groups do not sum to A_n".into(),
                        None => format!("{} groups", r.groups),
                    };
                    Ok(case(format!("n={n}"), r.passed(), detail))
                })
                .collect::<Result<_>>()?
        }
        Suite::System => {
            enumeration_allowed(cfg, max_n, None)?;
            verify_system_identities(max_n)?
                .checks
                .into_iter()
                .map(|c| case(c.name, c.passed, c.detail.unwrap_or_default()))
                .collect()
        }
        Suite::Lemma39 => {
            enumeration_allowed(cfg, max_n, None)?;
            (1..=max_n)
                .map(|n| {
                    let r = h5_classes(n)?;
                    let detail = match r.failures.first() {
                        Some(f) => f.clone(),
                        None => format!("{} classes; gamma {}", r.classes.len(), gamma_text(&r.gamma)),
                    };
                    Ok(case(format!("n={n}"), r.passed() && r.positive, detail))
                })
                .collect::<Result<_>>()?
        }
        Suite::Properties => {
            extra.insert("seed".into(), seed.into());
            let additivity = properties::inflation_additivity(seed, properties::INFLATION_TRIALS);
            let round_trip = properties::gamma_round_trip(seed, properties::ROUND_TRIP_TRIALS);
            vec![
                case(
                    "inflation additivity",
                    additivity.is_none(),
                    additivity.unwrap_or_else(|| format!("{} trials", properties::INFLATION_TRIALS)),
                ),
                case(
                    "gamma round trip",
                    round_trip.is_none(),
                    round_trip.unwrap_or_else(|| format!("{} trials", properties::ROUND_TRIP_TRIALS)),
                ),
            ]
        }
    };
    let passed = cases.iter().all(|c| c.passed);
    let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
    let mut json = serde_json::Map::new();
    json.insert("suite".into(), suite_name(suite).into());
    if suite != Suite::Properties {
        json.insert("max_n".into(), max_n.into());
    }
    json.extend(extra);
    json.insert(
        "results".into(),
        cases.iter().map(|c| json!({"case": c.case, "passed": c.passed, "detail": c.detail})).collect(),
    );
    json.insert("passed".into(), passed.into());
    let mut text: Vec<(&str, String)> =
        cases.iter().map(|c| (c.case.as_str(), format!("{}  {}", verdict(c.passed), c.detail))).collect();
    text.push(("result", verdict(passed).into()));
    let rows = cases.iter().map(|c| vec![c.case.clone(), c.passed.to_string(), c.detail.clone()]).collect();
    let report = Report::record(json.into(), text).with_table(&["case", "passed", "detail"], rows);
    Ok((report, passed))
}
