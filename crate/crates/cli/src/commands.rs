//! One function per subcommand. Each returns the rendered report and whether
//! the run counts as a pass; input problems are returned as errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use hgkm_core::class::{f_lambda_k, top_coset_class};
use hgkm_core::dot::orbit as dot_orbit;
use hgkm_core::hessenberg::parse_list;
use hgkm_core::independence::{independence, theorem5_check, theorem6_check, Hypothesis};
use hgkm_core::{
    Composition, Error, GkmClass, GkmGraph, HessenbergFunction, IndependenceCertificate, IndependenceOptions,
    Orbit, TheoremHypothesisReport, Verdict,
};
use serde_json::{json, Value};

use crate::ClassKind;

pub struct Report {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    pub success: bool,
}

fn parse_h(s: &str) -> anyhow::Result<HessenbergFunction> {
    let h = HessenbergFunction::parse(s).with_context(|| format!("invalid --h {s:?}"))?;
    if !h.is_connected() {
        eprintln!(
            "warning: h = {:?} is not connected; the Hessenberg variety is reducible",
            h.values()
        );
    }
    Ok(h)
}

fn parse_composition(flag: &str, s: &str, n: usize) -> anyhow::Result<Composition> {
    let parts = parse_list(s).with_context(|| format!("invalid --{flag} {s:?}"))?;
    Composition::of(n, parts).with_context(|| format!("invalid --{flag} {s:?}"))
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let raw = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn load_class(path: &Path) -> anyhow::Result<GkmClass> {
    serde_json::from_value(read_json(path)?).with_context(|| format!("{} is not a class file", path.display()))
}

/// A class file contributes one class, an orbit file all of its elements.
fn load_classes(path: &Path) -> anyhow::Result<Vec<GkmClass>> {
    let value = read_json(path)?;
    if value.get("base").is_some() {
        let orbit: Orbit =
            serde_json::from_value(value).with_context(|| format!("{} is not an orbit file", path.display()))?;
        return Ok(orbit.elements);
    }
    let class = serde_json::from_value(value).with_context(|| format!("{} is not a class file", path.display()))?;
    Ok(vec![class])
}

fn class_text(f: &GkmClass) -> String {
    let mut s = String::new();
    let degree = f.declared_degree().map_or("none".to_string(), |d| d.to_string());
    let _ = writeln!(s, "n = {}, polynomial degree {degree}", f.n());
    let support = f.support();
    let _ = writeln!(s, "support: {} of {} fixed points", support.len(), f.values().len());
    for w in support {
        let _ = writeln!(s, "  {w}  {}", f.value(&w).to_factored_string());
    }
    s
}

fn certificate_text(cert: &IndependenceCertificate) -> String {
    let mut s = String::new();
    let verdict = match cert.verdict {
        Verdict::Independent => "independent",
        Verdict::Dependent => "dependent",
        Verdict::Inconclusive => "inconclusive",
    };
    let _ = writeln!(s, "verdict: {verdict}");
    let _ = writeln!(s, "seed: {}, trials: {}", cert.seed, cert.trials);
    let _ = writeln!(
        s,
        "matrix: {} x {} ({} rows in the union of supports)",
        cert.rows, cert.cols, cert.support_rows
    );
    if let Some(point) = &cert.witness {
        let _ = writeln!(s, "witness point: {point:?}");
    }
    if let Some(kernel) = &cert.kernel {
        let entries: Vec<String> = kernel.iter().map(|p| p.to_factored_string()).collect();
        let _ = writeln!(s, "kernel: ({})", entries.join(", "));
    }
    s
}

fn hypotheses_text(s: &mut String, title: &str, list: &[Hypothesis]) {
    if list.is_empty() {
        return;
    }
    let _ = writeln!(s, "{title}:");
    for h in list {
        let mark = if h.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(s, "  [{mark}] {}: required {}, observed {}", h.name, h.required, h.observed);
    }
}

fn theorem_report(
    report: &TheoremHypothesisReport,
    cert: Option<&IndependenceCertificate>,
    seed: u64,
) -> anyhow::Result<Report> {
    let success = report.passed() && report.checks_passed() && cert.is_some_and(|c| c.is_independent());
    let json = json!({
        "seed": seed,
        "passed": success,
        "report": serde_json::to_value(report)?,
        "certificate": cert.map(serde_json::to_value).transpose()?,
    });
    let mut text = String::new();
    let _ = writeln!(text, "{}: {}", report.theorem, if success { "pass" } else { "fail" });
    hypotheses_text(&mut text, "hypotheses", &report.hypotheses);
    hypotheses_text(&mut text, "checks", &report.checks);
    for (k, v) in &report.derived {
        let _ = writeln!(text, "  {k} = {v}");
    }
    match cert {
        Some(c) => text.push_str(&certificate_text(c)),
        None => {
            let _ = writeln!(text, "seed: {seed}");
            text.push_str("no certificate: hypotheses not satisfied\n");
        }
    }
    Ok(Report { json, text, dot: None, success })
}

pub fn graph(h: &str) -> anyhow::Result<Report> {
    let h = parse_h(h)?;
    let graph = GkmGraph::build(&h);
    let mut json = serde_json::to_value(&graph)?;
    json["edge_count"] = json!(graph.len());
    let mut text = String::new();
    let _ = writeln!(text, "GKM graph: n = {}, h = {:?}, {} edges", graph.n, h.values(), graph.len());
    for e in &graph.edges {
        let _ = writeln!(text, "  {} -> {}  {}", e.source, e.target, e.label);
    }
    Ok(Report {
        json,
        text,
        dot: Some(graph.to_dot()),
        success: true,
    })
}

pub fn class(
    kind: ClassKind,
    h: &str,
    mu: Option<&str>,
    lambda: Option<&str>,
    k: Option<usize>,
    no_hypothesis: bool,
) -> anyhow::Result<Report> {
    let h = parse_h(h)?;
    let n = h.n();
    let f = match kind {
        ClassKind::Top => {
            let mu = parse_composition("mu", mu.ok_or_else(|| anyhow!("--kind top needs --mu"))?, n)?;
            top_coset_class(&mu, &h)?
        }
        ClassKind::Fk => {
            let lambda = parse_composition("lambda", lambda.ok_or_else(|| anyhow!("--kind fk needs --lambda"))?, n)?;
            let k = k.ok_or_else(|| anyhow!("--kind fk needs --k"))?;
            match f_lambda_k(&lambda, k, &h, true) {
                Ok(f) => f,
                Err(Error::HypothesisViolated(msg)) if no_hypothesis => {
                    eprintln!("warning: {msg}; the class may violate the GKM conditions");
                    f_lambda_k(&lambda, k, &h, false)?
                }
                Err(Error::HypothesisViolated(msg)) => {
                    bail!("{msg} (pass --no-hypothesis to build the class anyway)")
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    Ok(Report {
        json: serde_json::to_value(&f)?,
        text: class_text(&f),
        dot: None,
        success: true,
    })
}

pub fn verify(class: &Path, h: &str) -> anyhow::Result<Report> {
    let h = parse_h(h)?;
    let f = load_class(class)?;
    let cert = f.verify(&h)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "verdict: {}, {} edges checked, {} violations",
        if cert.passed() { "pass" } else { "fail" },
        cert.edges_checked,
        cert.violations.len()
    );
    for v in &cert.violations {
        let _ = writeln!(
            text,
            "  {} -> {}  label {}  difference {}",
            v.source,
            v.target,
            v.label,
            v.difference.to_factored_string()
        );
    }
    Ok(Report {
        json: serde_json::to_value(&cert)?,
        text,
        dot: None,
        success: cert.passed(),
    })
}

pub fn orbit(class: &Path, lambda: &str) -> anyhow::Result<Report> {
    let f = load_class(class)?;
    let lambda = parse_composition("lambda", lambda, f.n())?;
    let o = dot_orbit(&f, &lambda)?;
    let mut text = String::new();
    let _ = writeln!(text, "orbit of size {} under the representatives for {lambda}", o.len());
    for (v, g) in o.reps.iter().zip(&o.elements) {
        let _ = writeln!(text, "{v} . f");
        for w in g.support() {
            let _ = writeln!(text, "  {w}  {}", g.value(&w).to_factored_string());
        }
    }
    Ok(Report {
        json: serde_json::to_value(&o)?,
        text,
        dot: None,
        success: true,
    })
}

pub fn indep(paths: &[PathBuf], opts: &IndependenceOptions) -> anyhow::Result<Report> {
    let mut classes = Vec::new();
    for p in paths {
        classes.extend(load_classes(p)?);
    }
    let cert = independence(&classes, opts)?;
    Ok(Report {
        json: serde_json::to_value(&cert)?,
        text: certificate_text(&cert),
        dot: None,
        success: cert.is_independent(),
    })
}

pub fn thm5(lambda: &str, h: &str, opts: &IndependenceOptions) -> anyhow::Result<Report> {
    let h = parse_h(h)?;
    let lambda = parse_composition("lambda", lambda, h.n())?;
    lambda.two_parts()?;
    match theorem5_check(&lambda, &h, opts) {
        Ok((report, cert)) => theorem_report(&report, cert.as_ref(), opts.seed),
        Err(e @ Error::J0Undefined { .. }) => Ok(Report {
            json: json!({ "seed": opts.seed, "passed": false, "error": e.to_string() }),
            text: format!("orbit-independence: fail\n  {e}\n"),
            dot: None,
            success: false,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn thm6(h: &str, opts: &IndependenceOptions) -> anyhow::Result<Report> {
    let h = parse_h(h)?;
    let (report, cert) = theorem6_check(&h, opts)?;
    theorem_report(&report, cert.as_ref(), opts.seed)
}
