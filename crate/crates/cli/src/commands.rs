use anyhow::Result;
use fgl_core::formal_group::*;
use fgl_core::hopf::{verify_hopf_axioms, HopfAlgebra, HopfElement, Monomial, TensorElement};
use fgl_core::series::Series;
use fgl_core::Error;
use serde_json::{json, Value};

use crate::json::{self, axiom_report_to_json, series_to_json, tensor_to_json};
use crate::{json_text, Command, Ctx, Format, EXIT_VIOLATION};

pub struct Output {
    pub text: String,
    pub code: i32,
}

pub fn dispatch(ctx: &mut Ctx) -> Result<Output> {
    match &ctx.cli.command {
        Command::CheckHopf { hopf } => check_hopf(ctx, &hopf.clone()),
        Command::Verify(g) => verify(ctx, &g.group.clone()),
        Command::Log(g) => log(ctx, &g.group.clone()),
        Command::Cocycle(g) => cocycle(ctx, &g.group.clone()),
        Command::CheckCocycle { hopf, cocycle } => check_cocycle_cmd(ctx, &hopf.clone(), &cocycle.clone()),
        Command::Coboundary { hopf, element } => coboundary_cmd(ctx, &hopf.clone(), &element.clone()),
        Command::Inverse(g) => inverse(ctx, &g.group.clone()),
        Command::Reconstruct { hopf, log, cocycle } => {
            reconstruct_cmd(ctx, &hopf.clone(), &log.clone(), &cocycle.clone())
        }
        Command::Specialize(g) => specialize(ctx, &g.group.clone()),
        Command::Roundtrip(g) => roundtrip(ctx, &g.group.clone()),
    }
}

fn emit(ctx: &Ctx, command: &str, pass: bool, pretty: Vec<String>, payload: Value) -> Result<Output> {
    let text = match ctx.format() {
        Format::Json => json_text(&ctx.envelope(command, payload))?,
        Format::Pretty => {
            let mut s = ctx.header();
            s.push('\n');
            for line in pretty {
                s.push_str(&line);
                s.push('\n');
            }
            s
        }
    };
    Ok(Output { text, code: if pass { 0 } else { EXIT_VIOLATION } })
}

fn monomial_name(alg: &HopfAlgebra, m: &Monomial) -> String {
    alg.monomial_to_string(m).unwrap_or_else(|_| format!("{:?}", m.exponents()))
}

fn check_hopf(ctx: &mut Ctx, hopf: &str) -> Result<Output> {
    let a = ctx.algebra_unchecked(hopf)?;
    let report = verify_hopf_axioms(&a.algebra);
    let mut lines = vec![format!("dimension: {}", a.algebra.dimension())];
    let mut violations = Vec::new();
    match &report.failure {
        None => lines.push(format!("pass: axioms hold on all {} basis monomials", report.checked_monomials)),
        Some(f) => {
            let at = match &f.other {
                Some(o) => format!("{}, {}", monomial_name(&a.algebra, &f.monomial), monomial_name(&a.algebra, o)),
                None => monomial_name(&a.algebra, &f.monomial),
            };
            lines.push(format!("fail: {} at {at}", f.axiom));
            lines.push(format!("  defect: {}", f.defect));
            violations.push(json!({
                "axiom": f.axiom.name(),
                "monomial": monomial_name(&a.algebra, &f.monomial),
                "other": f.other.as_ref().map(|o| monomial_name(&a.algebra, o)),
                "defect": tensor_to_json(&f.defect),
            }));
        }
    }
    let payload = json!({
        "pass": report.passed(),
        "dimension": a.algebra.dimension(),
        "checked_monomials": report.checked_monomials,
        "violations": violations,
    });
    emit(ctx, "check-hopf", report.passed(), lines, payload)
}

pub(crate) fn axiom_lines(report: &AxiomReport) -> Vec<String> {
    if report.passed() {
        return vec![format!("pass: axioms hold through order {}", report.certified_through)];
    }
    let mut lines = Vec::new();
    for d in &report.defects {
        lines.push(format!("fail: {}", d.axiom));
        lines.push(format!("  defect: {}", d.defect));
    }
    lines.push(format!("compared through order {}", report.certified_through));
    lines
}

pub(crate) fn cocycle_lines(r: &CocycleReport) -> Vec<String> {
    let mut lines = Vec::new();
    if !r.cobar_holds() {
        lines.push("fail: cobar condition".to_string());
        lines.push(format!("  cobar defect: {}", r.cobar_defect));
    }
    if !r.right_counit.is_zero() {
        lines.push("fail: counit condition (id⊗ε)c = 0".to_string());
        lines.push(format!("  defect: {}", r.right_counit));
    }
    if !r.left_counit.is_zero() {
        lines.push("fail: counit condition (ε⊗id)c = 0".to_string());
        lines.push(format!("  defect: {}", r.left_counit));
    }
    if lines.is_empty() {
        lines.push("pass: c is a normalized 2-cocycle".to_string());
    }
    lines
}

fn cocycle_json(r: &CocycleReport) -> Value {
    let mut violations = Vec::new();
    for (name, t) in [("cobar", &r.cobar_defect), ("counit-right", &r.right_counit), ("counit-left", &r.left_counit)] {
        if !t.is_zero() {
            violations.push(json!({ "axiom": name, "defect": tensor_to_json(t) }));
        }
    }
    json!({ "pass": r.passed(), "violations": violations })
}

fn verify(ctx: &mut Ctx, group: &str) -> Result<Output> {
    let g = ctx.group(group)?;
    let report = check_axioms(&g.law)?;
    let mut payload = serde_json::to_value(axiom_report_to_json(&report))?;
    payload["certified_through"] = report.certified_through.into();
    emit(ctx, "verify", report.passed(), axiom_lines(&report), payload)
}

fn series_output(ctx: &Ctx, command: &str, s: &Series) -> Result<Output> {
    let payload = serde_json::to_value(series_to_json(s))?;
    emit(ctx, command, true, vec![s.to_string()], payload)
}

fn log(ctx: &mut Ctx, group: &str) -> Result<Output> {
    let g = ctx.group(group)?;
    let log = logarithm(&g.law)?;
    series_output(ctx, "log", &log.with_order(g.law.order()))
}

fn cocycle(ctx: &mut Ctx, group: &str) -> Result<Output> {
    let g = ctx.group(group)?;
    let log = logarithm(&g.law)?;
    let c = extract_cocycle(&g.law, &log)?;
    emit(ctx, "cocycle", true, vec![format!("c = {}", show(&c))], tensor_to_json(&c))
}

fn show(t: &TensorElement) -> String {
    if t.is_zero() {
        "0".to_string()
    } else {
        t.to_string()
    }
}

fn check_cocycle_cmd(ctx: &mut Ctx, hopf: &str, src: &str) -> Result<Output> {
    let a = ctx.algebra(hopf)?;
    let c = ctx.element(&a.algebra, 2, src)?;
    ctx.check_grading_cocycle(&a.algebra, &c)?;
    let r = check_cocycle(&c)?;
    emit(ctx, "check-cocycle", r.passed(), cocycle_lines(&r), cocycle_json(&r))
}

fn coboundary_cmd(ctx: &mut Ctx, hopf: &str, src: &str) -> Result<Output> {
    let a = ctx.algebra(hopf)?;
    let h = HopfElement::from_tensor(ctx.element(&a.algebra, 1, src)?)?;
    let dh = coboundary(&h)?;
    emit(ctx, "coboundary", true, vec![format!("dh = {}", show(&dh))], tensor_to_json(&dh))
}

fn inverse(ctx: &mut Ctx, group: &str) -> Result<Output> {
    let g = ctx.group(group)?;
    let theta = inverse_series(&g.law)?;
    series_output(ctx, "inverse", &theta.with_order(g.law.order()))
}

fn reconstruct_cmd(ctx: &mut Ctx, hopf: &str, log_src: &str, c_src: &str) -> Result<Output> {
    let a = ctx.algebra(hopf)?;
    let n = ctx.order(None);
    let g = ctx.log_series(&a.algebra, n, log_src)?;
    let c = ctx.element(&a.algebra, 2, c_src)?;
    ctx.check_grading_cocycle(&a.algebra, &c)?;
    let f = reconstruct(&g, &c, n)?;
    let payload = serde_json::to_value(json::group_to_json(&a.spec, &f)?)?;
    emit(ctx, "reconstruct", true, vec![format!("F = {}", f.truncated())], payload)
}

fn specialize(ctx: &mut Ctx, group: &str) -> Result<Output> {
    let g = ctx.group(group)?;
    let n = g.law.order();
    let log = logarithm(&g.law)?;
    let s = specialize_classical(&g.law, &log)?;
    let mut lines = vec![
        format!("law: {}", s.law.with_order(n)),
        format!("logarithm: {}", s.logarithm.with_order(n)),
    ];
    if s.holds() {
        lines.push(format!("pass: εg(F(X,Y)) = εg(X) + εg(Y) through order {}", s.identity.through));
    } else {
        lines.push("fail: εg(F(X,Y)) ≠ εg(X) + εg(Y)".to_string());
        lines.push(format!("  defect: {}", s.identity.defect));
    }
    let payload = json!({
        "pass": s.holds(),
        "law": series_to_json(&s.law.with_order(n)),
        "logarithm": series_to_json(&s.logarithm.with_order(n)),
        "defect": series_to_json(&s.identity.defect),
    });
    emit(ctx, "specialize", s.holds(), lines, payload)
}

struct Stages {
    lines: Vec<String>,
    json: Vec<Value>,
    pass: bool,
}

impl Stages {
    fn record(&mut self, stage: &str, pass: bool, detail: String) {
        let mark = if pass { "pass" } else { "fail" };
        self.lines.push(format!("{stage}: {mark}  {detail}"));
        self.json.push(json!({ "stage": stage, "pass": pass, "detail": detail }));
        self.pass &= pass;
    }

    fn fail(&mut self, stage: &str, e: &Error) {
        self.record(stage, false, e.to_string());
    }
}

fn roundtrip(ctx: &mut Ctx, group: &str) -> Result<Output> {
    let g = ctx.group(group)?;
    let f = &g.law;
    let n = f.order();
    let mut st = Stages { lines: Vec::new(), json: Vec::new(), pass: true };
    run_stages(f, n, &mut st)?;
    let payload = json!({ "pass": st.pass, "stages": st.json });
    let pass = st.pass;
    emit(ctx, "roundtrip", pass, st.lines, payload)
}

fn run_stages(f: &FormalGroupLaw, n: u32, st: &mut Stages) -> Result<(), Error> {
    let report = check_axioms(f)?;
    if !report.passed() {
        for d in &report.defects {
            st.record("axioms", false, format!("{}: {}", d.axiom, d.defect));
        }
        return Ok(());
    }
    st.record("axioms", true, format!("certified through order {}", report.certified_through));

    let g = match logarithm(f) {
        Ok(g) => g,
        Err(e @ Error::TruncationInsufficient { .. }) => return Err(e),
        Err(e) => {
            st.fail("logarithm", &e);
            return Ok(());
        }
    };
    st.record("logarithm", true, format!("g = {}", g.with_order(n)));

    let c = match extract_cocycle(f, &g) {
        Ok(c) => c,
        Err(e @ Error::TruncationInsufficient { .. }) => return Err(e),
        Err(e) => {
            st.fail("cocycle", &e);
            return Ok(());
        }
    };
    st.record("cocycle", true, format!("c = {}", show(&c)));

    let r = check_cocycle(&c)?;
    let detail = if r.passed() { "normalized 2-cocycle".to_string() } else { cocycle_lines(&r).join("; ") };
    st.record("check-cocycle", r.passed(), detail);

    let agr = verify_log_equation(f, &g, &c)?;
    let detail = if agr.holds() {
        format!("(Δg)(F) = c + g(X) + g(Y) through order {}", agr.through)
    } else {
        format!("defect {}", agr.defect)
    };
    st.record("log-equation", agr.holds(), detail);
    if !r.passed() || !agr.holds() {
        return Ok(());
    }

    let f2 = match reconstruct(&g, &c, n) {
        Ok(f2) => f2,
        Err(e @ Error::TruncationInsufficient { .. }) => return Err(e),
        Err(e) => {
            st.fail("reconstruct", &e);
            return Ok(());
        }
    };
    st.record("reconstruct", true, format!("exact through order {}", f2.order()));

    let agr = f2.truncated().compare(&f.truncated())?;
    let through = agr.through;
    let same = agr.holds() && through >= n as i64;
    let detail = if !agr.holds() {
        format!("defect {}", agr.defect)
    } else if same {
        format!("identical through order {n}")
    } else {
        format!("only compared through order {through}")
    };
    st.record("compare", same, detail);
    Ok(())
}
