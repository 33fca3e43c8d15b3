//! Built-in worked examples with their expected values.

use polarsparse::{
    basis_pursuit, check_erc, check_fuchs, check_fuchs_corollary, cone_contains,
    enumerate_polar_vertices, omp, recover_primal_from_dual, AtomMatrix, Representation,
    SignedSupport, Tolerances, Vector,
};
use serde_json::{json, Value};

use crate::input::InputError;
use crate::report;

pub const NAMES: [&str; 3] = ["fig-regions", "unit-norm-d3", "omp-two-step"];

const CHECK_TOL: f64 = 1e-9;

/// Collects transcript lines and checks against expected values.
struct Demo {
    name: &'static str,
    lines: Vec<String>,
    checks: Vec<Value>,
    passed: bool,
}

impl Demo {
    fn new(name: &'static str) -> Self {
        Demo {
            name,
            lines: Vec::new(),
            checks: Vec::new(),
            passed: true,
        }
    }

    fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn value(&mut self, what: &str, actual: f64, expected: f64) {
        let ok = (actual - expected).abs() <= CHECK_TOL;
        self.passed &= ok;
        self.say(format!("  {what} = {actual:.15} (expected {expected:.15})"));
        self.checks.push(json!({
            "check": what,
            "value": actual,
            "expected": expected,
            "pass": ok,
        }));
    }

    fn vector(&mut self, what: &str, actual: &Vector, expected: &[f64]) {
        let ok = actual.len() == expected.len()
            && actual
                .iter()
                .zip(expected)
                .all(|(a, e)| (a - e).abs() <= CHECK_TOL);
        self.passed &= ok;
        self.say(format!(
            "  {what} = {} (expected {})",
            fmt_vec(actual.as_slice()),
            fmt_vec(expected)
        ));
        self.checks.push(json!({
            "check": what,
            "value": report::vector(actual),
            "expected": expected,
            "pass": ok,
        }));
    }

    fn truth(&mut self, what: &str, actual: bool, expected: bool) {
        let ok = actual == expected;
        self.passed &= ok;
        self.say(format!("  {what}: {actual} (expected {expected})"));
        self.checks.push(json!({
            "check": what,
            "value": actual,
            "expected": expected,
            "pass": ok,
        }));
    }

    fn verdict_line(&self) -> String {
        let word = if self.passed { "PASS" } else { "FAIL" };
        format!("{word} {} (tolerance {CHECK_TOL:e})", self.name)
    }

    fn json(&self) -> Value {
        json!({
            "demo": self.name,
            "tolerance": CHECK_TOL,
            "checks": self.checks,
            "pass": self.passed,
        })
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

fn atoms(cols: &[&[f64]], tol: &Tolerances) -> AtomMatrix {
    let cols: Vec<Vec<f64>> = cols.iter().map(|c| c.to_vec()).collect();
    AtomMatrix::from_columns(&cols, tol).expect("built-in dictionary is valid")
}

fn unit_norm_d3(tol: &Tolerances) -> anyhow::Result<Demo> {
    let mut demo = Demo::new("unit-norm-d3");
    let r = 1.0 / 3f64.sqrt();
    let a = atoms(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[r, r, r]], tol);
    let x0 = Representation::new(Vector::from_vec(vec![1.0, 1.0, 0.0]), tol);
    let y = a.synthesize(x0.coeffs());
    let limit = 2.0 / 3f64.sqrt();
    demo.say("dictionary a1 = e1, a2 = e2, a3 = (1,1,1)/sqrt(3); x0 = (1, 1, 0)");

    demo.say("ERC on support {1,2}:");
    let erc = check_erc(&a, &[0, 1], tol)?;
    demo.value("max_j ||A_S^+ a_j||_1", erc.coefficient, limit);
    demo.truth("ERC holds", erc.holds, false);

    demo.say("Fuchs condition:");
    let fuchs = check_fuchs(&a, &x0, tol)?;
    demo.truth("Fuchs holds", fuchs.holds, true);
    if let Some(c) = &fuchs.witness {
        demo.say(format!("  witness c = {}", fmt_vec(c.as_slice())));
        demo.value("a1'c", a.atom(0).dot(c), 1.0);
        demo.value("a2'c", a.atom(1).dot(c), 1.0);
        let dot3 = a.atom(2).dot(c);
        demo.say(format!("  a3'c = {dot3:.15}"));
        demo.truth("|a3'c| < 1", dot3.abs() < 1.0, true);
    }

    demo.say("Fuchs corollary at c_opt = (A_S^+)' sign(x0):");
    let cor = check_fuchs_corollary(&a, &x0, tol)?;
    demo.vector("c_opt", &cor.c_opt, &[1.0, 1.0, 0.0]);
    demo.value("max off-support |a_j'c_opt|", cor.max_dot, limit);
    demo.truth("corollary holds", cor.holds, false);

    demo.say("flipped signs x0 = (1, -1, 0):");
    let flipped = Representation::new(Vector::from_vec(vec![1.0, -1.0, 0.0]), tol);
    let cor = check_fuchs_corollary(&a, &flipped, tol)?;
    demo.value("max off-support |a_j'c_opt|", cor.max_dot, 0.0);
    demo.truth("corollary holds", cor.holds, true);

    demo.say("basis pursuit on y = A x0:");
    let bp = basis_pursuit(&a, &y, tol)?;
    demo.vector("x", &bp.coeffs, &[1.0, 1.0, 0.0]);
    Ok(demo)
}

fn long_atom(tol: &Tolerances) -> AtomMatrix {
    let s = 2f64.sqrt();
    atoms(&[&[1.0, 0.0], &[s, s]], tol)
}

fn omp_two_step(tol: &Tolerances) -> anyhow::Result<Demo> {
    let mut demo = Demo::new("omp-two-step");
    let a = long_atom(tol);
    let y = Vector::from_vec(vec![1.0, 0.0]);
    let s = 2f64.sqrt();
    demo.say("dictionary a1 = (1, 0), a2 = (sqrt2, sqrt2); y = a1");

    let erc = check_erc(&a, &[0], tol)?;
    demo.value("ERC coefficient for {1}", erc.coefficient, s);
    demo.truth("ERC holds", erc.holds, false);

    let trace = omp(&a, &y, 2, tol)?;
    if let Some(step) = trace.steps.first() {
        demo.say("step 1:");
        demo.value("a1'y", a.atom(0).dot(&y), 1.0);
        demo.value("a2'y", a.atom(1).dot(&y), s);
        demo.truth("chooses a2", step.atom() == 1, true);
        demo.value("x2", step.coeffs_after[1], 1.0 / (2.0 * s));
        demo.vector("approximation", &(&y - &step.residual), &[0.5, 0.5]);
        demo.vector("residual", &step.residual, &[0.5, -0.5]);
    }
    if let Some(step) = trace.steps.get(1) {
        demo.say("step 2:");
        let r = &trace.steps[0].residual;
        demo.value("a1'r", a.atom(0).dot(r), 0.5);
        demo.value("a2'r", a.atom(1).dot(r), 0.0);
        demo.truth("chooses a1", step.atom() == 0, true);
        demo.vector("x", &step.coeffs_after, &[1.0, 0.0]);
    }
    demo.truth(
        "recovered after 2 steps",
        trace.converged && trace.steps_used == 2,
        true,
    );
    demo.vector("final x", &trace.final_coeffs, &[1.0, 0.0]);
    Ok(demo)
}

fn fig_regions(tol: &Tolerances) -> anyhow::Result<Demo> {
    let mut demo = Demo::new("fig-regions");
    let a = long_atom(tol);
    let h = 1.0 / 2f64.sqrt();
    demo.say("dictionary a1 = (1, 0), a2 = (sqrt2, sqrt2)");

    let vertices = enumerate_polar_vertices(&a, tol)?;
    demo.value("vertex count", vertices.len() as f64, 4.0);
    for v in &vertices {
        demo.say(format!(
            "  vertex {} tight at {}",
            fmt_vec(v.point.as_slice()),
            v.active_labels(a.len()).join(",")
        ));
    }
    let find = |label: &str| {
        vertices
            .iter()
            .find(|v| v.active_labels(a.len()).join(",") == label)
            .map(|v| v.point.clone())
    };
    let pp = find("+1,+2").ok_or_else(|| anyhow::anyhow!("no vertex tight at +1,+2"))?;
    let pm = find("+1,-2").ok_or_else(|| anyhow::anyhow!("no vertex tight at +1,-2"))?;
    demo.vector("c(+1,+2)", &pp, &[1.0, h - 1.0]);
    demo.vector("c(+1,-2)", &pm, &[1.0, -h - 1.0]);

    let both = SignedSupport::positive(&[0, 1])?;
    demo.truth(
        "c(+1,+2) inside cone{a1, a2}",
        cone_contains(&a, &both, &pp, tol)?,
        false,
    );

    let beta = 2.0;
    let y = a.atom(0) * beta;
    demo.say(format!(
        "y = {beta} a1: dual objective y'c at the two vertices"
    ));
    demo.value("y'c(+1,+2)", y.dot(&pp), beta);
    demo.value("y'c(+1,-2)", y.dot(&pm), beta);
    let from_pp = recover_primal_from_dual(&a, &y, &pp, tol)?;
    let from_pm = recover_primal_from_dual(&a, &y, &pm, tol)?;
    demo.vector("x from c(+1,+2)", &from_pp, &[beta, 0.0]);
    demo.vector("x from c(+1,-2)", &from_pm, &[beta, 0.0]);

    demo.say("contrast: a2 = (1, 1)/sqrt2");
    let unit = atoms(&[&[1.0, 0.0], &[h, h]], tol);
    let vertices = enumerate_polar_vertices(&unit, tol)?;
    let pp = vertices
        .iter()
        .find(|v| v.active_labels(2).join(",") == "+1,+2")
        .map(|v| v.point.clone())
        .ok_or_else(|| anyhow::anyhow!("no vertex tight at +1,+2"))?;
    demo.vector("c(+1,+2)", &pp, &[1.0, 2f64.sqrt() - 1.0]);
    demo.truth(
        "c(+1,+2) inside cone{a1, a2}",
        cone_contains(&unit, &both, &pp, tol)?,
        true,
    );
    Ok(demo)
}

/// Runs a demo. Transcript and verdict go to stderr (verdict only to stdout
/// with `quiet`), the JSON summary to stdout.
pub fn run(name: &str, quiet: bool, tol: &Tolerances) -> anyhow::Result<()> {
    let demo = match name {
        "fig-regions" => fig_regions(tol)?,
        "unit-norm-d3" => unit_norm_d3(tol)?,
        "omp-two-step" => omp_two_step(tol)?,
        other => {
            return Err(InputError::Parse(format!(
                "unknown demo `{other}`, expected one of {}",
                NAMES.join(", ")
            ))
            .into())
        }
    };
    if quiet {
        println!("{}", demo.verdict_line());
        return Ok(());
    }
    for line in &demo.lines {
        eprintln!("{line}");
    }
    eprintln!("{}", demo.verdict_line());
    println!("{}", serde_json::to_string_pretty(&demo.json())?);
    Ok(())
}
