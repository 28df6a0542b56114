//! Acceptance criteria: one PASS/FAIL line per criterion, nonzero exit on
//! any failure. Each criterion runs the named suites through the library
//! entry point and checks required checks, recorded numbers and wall time.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qwk_cli::config::SuiteConfig;
use qwk_cli::report::{Report, Status};
use qwk_cli::suites::{run_suite, Suite};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn cfg(n: usize, nilpotent: &str) -> SuiteConfig {
    let mut c = SuiteConfig { n, ..SuiteConfig::default() };
    c.set("E", nilpotent).expect("valid nilpotent");
    c
}

fn run(suite: Suite, c: &SuiteConfig) -> Result<Report, String> {
    run_suite(suite, c).map_err(|e| format!("{suite} n={}: {e}", c.n))
}

/// Every named check must be present and pass (a skip counts as failure).
fn require(r: &Report, names: &[&str]) -> Result<(), String> {
    for name in names {
        let c = r.check(name).ok_or_else(|| format!("{}: no check {name}", r.suite))?;
        if c.status != Status::Pass {
            return Err(format!("{} n={} {name}: {:?} {:?}", r.suite, r.config.n, c.status, c.witnesses));
        }
    }
    Ok(())
}

fn data<'a>(r: &'a Report, check: &str, key: &str) -> Result<&'a Value, String> {
    r.check(check).and_then(|c| c.data.get(key)).ok_or_else(|| format!("{}: {check} lacks {key}", r.suite))
}

fn structure() -> Outcome {
    for n in 1..=4 {
        let r = run(Suite::Structure, &cfg(n, "principal"))?;
        require(&r, &["bracket-table", "super-antisymmetry", "super-jacobi"])?;
        let mode = data(&r, "super-jacobi", "mode")?;
        let triples = data(&r, "super-jacobi", "triples")?;
        let want = if n <= 3 { ("exhaustive", (2 * n * n).pow(3)) } else { ("seeded", 1000) };
        if mode != want.0 || triples != &Value::from(want.1) {
            return Err(format!("n={n}: Jacobi mode {mode} with {triples} triples"));
        }
    }
    Ok("n = 1..4".into())
}

fn forms() -> Outcome {
    for n in 1..=3 {
        let r = run(Suite::Forms, &cfg(n, "principal"))?;
        require(&r, &["odd-trace-oracle", "parity-vanishing", "supersymmetry", "invariance", "gram-rank"])?;
        if data(&r, "gram-rank", "pairing_rank")? != &Value::from(n * n) {
            return Err(format!("n={n}: pairing rank differs from n²"));
        }
    }
    Ok("n = 1..3, pairing rank n²".into())
}

fn pbw() -> Outcome {
    let r = run(Suite::Pbw, &cfg(2, "principal"))?;
    require(&r, &["normal-form-independence", "representation-oracle", "associativity", "ideal-reduce"])?;
    if data(&r, "normal-form-independence", "kazhdan_degree")? != &Value::from(6) || data(&r, "ideal-reduce", "cases")? != &Value::from(500) {
        return Err("wrong degree or case count".into());
    }
    Ok(format!("rank {} at Kazhdan degree 6", data(&r, "normal-form-independence", "rank")?))
}

fn clifford_verma() -> Outcome {
    let r = run(Suite::Clifford, &cfg(2, "principal"))?;
    require(&r, &["clifford-relations", "clifford-type"])?;
    if data(&r, "clifford-relations", "weights")? != &Value::from(200) || data(&r, "clifford-relations", "max_rank")? != &Value::from(4) {
        return Err("wrong sample shape".into());
    }
    let v = run(Suite::Verma, &cfg(2, "principal"))?;
    require(&v, &["character-series"])?;
    if data(&v, "character-series", "depth")? != &Value::from(4) {
        return Err("Verma depth is not 4".into());
    }
    Ok("200 weights, depth 4".into())
}

fn lemma() -> Outcome {
    let mut c = cfg(2, "principal");
    c.timings = true;
    let r = run(Suite::Whittaker, &c)?;
    let names = ["lambda-nu-transcription", "lambda-nu-zero-character", "lambda-nu-negative-family"];
    require(&r, &names)?;
    let ms: u64 = names.iter().filter_map(|n| r.check(n)?.elapsed_ms).sum();
    if ms > 1000 {
        return Err(format!("{ms} ms is not instantaneous"));
    }
    Ok(format!("{} cases, {ms} ms", data(&r, "lambda-nu-transcription", "cases")?))
}

fn singular_witness() -> Outcome {
    let r = run(Suite::Verma, &cfg(2, "principal"))?;
    require(&r, &["singular-witness", "generic-no-singular"])?;
    Ok(format!("{}", data(&r, "singular-witness", "singular_dims")?))
}

fn shipped() -> [SuiteConfig; 3] {
    [cfg(2, "principal"), cfg(3, "principal"), cfg(3, "minimal")]
}

fn good_grading() -> Outcome {
    for c in shipped() {
        let r = run(Suite::GoodGrading, &c)?;
        require(&r, &["axiom-a", "axiom-b", "axiom-c", "ad-e-bijection", "degree-minus-one-parity", "wrong-grading-fails-b"])?;
    }
    Ok("q(2) principal, q(3) principal, q(3) minimal".into())
}

fn dw_lemmas() -> Outcome {
    for c in shipped() {
        let r = run(Suite::DwLemmas, &c)?;
        require(&r, &["first-decomposition", "second-decomposition", "omega-nondegenerate"])?;
    }
    Ok("all shipped data".into())
}

fn w_dims() -> Outcome {
    let mut out = Vec::new();
    for (c, cap) in [(cfg(2, "principal"), 6), (cfg(3, "minimal"), 4)] {
        let r = run(Suite::WDims, &c)?;
        require(&r, &["invariance", "graded-dimensions"])?;
        if data(&r, "graded-dimensions", "cap")? != &Value::from(cap) {
            return Err(format!("n={}: cap is not {cap}", c.n));
        }
        out.push(format!("{}", data(&r, "graded-dimensions", "w_dims")?));
    }
    Ok(out.join(" "))
}

fn lagrangian() -> Outcome {
    let r = run(Suite::WDims, &cfg(3, "minimal"))?;
    require(&r, &["lagrangian-independence"])?;
    Ok(format!("{} vs {}", data(&r, "lagrangian-independence", "forward")?, data(&r, "lagrangian-independence", "reverse")?))
}

fn theta() -> Outcome {
    let mut c = cfg(3, "minimal");
    c.theta = Some(vec![1, 1, 0]);
    let r = run(Suite::Theta, &c)?;
    require(&r, &["theta-split", "levi-quotient"])?;
    if data(&r, "levi-quotient", "levi_blocks")? != &serde_json::json!([[0, 1], [2]]) {
        return Err("Levi is not q(2) ⊕ q(1)".into());
    }
    Ok(format!("{}", data(&r, "levi-quotient", "quotient_filtered")?))
}

fn star() -> Outcome {
    let r = run(Suite::Star, &cfg(3, "minimal"))?;
    require(&r, &["moyal-relations", "moyal-associativity", "moyal-poisson"])?;
    let g = run(Suite::Star, &cfg(2, "principal"))?;
    require(&g, &["gutt-relations", "gutt-associativity", "gutt-poisson", "gutt-transport"])?;
    for rep in [&r, &g] {
        for p in ["moyal", "gutt"] {
            if let Some(c) = rep.check(&format!("{p}-associativity")) {
                if c.status == Status::Pass && (c.data.get("triples") != Some(&Value::from(200)) || c.data.get("hbar_power") != Some(&Value::from(4)))
                {
                    return Err(format!("{p}: associativity sample is not 200 triples to ħ⁴"));
                }
            }
        }
    }
    Ok("Moyal on q(3) minimal, Gutt on q(2)".into())
}

fn whittaker() -> Outcome {
    let r = run(Suite::Whittaker, &cfg(2, "principal"))?;
    require(&r, &["strict-vanishing", "window-monotonicity", "induced-from-even", "regular-golden", "gamma-containment"])?;
    if data(&r, "window-monotonicity", "configurations")? != &Value::from(100) {
        return Err("window monotonicity did not use 100 configurations".into());
    }
    Ok(format!("golden {}", data(&r, "regular-golden", "dims_by_depth")?))
}

fn determinism() -> Outcome {
    let configs: Vec<(Suite, SuiteConfig)> = Suite::ALL
        .into_iter()
        .map(|s| match s {
            Suite::Theta | Suite::Star => (s, cfg(3, "minimal")),
            _ => (s, cfg(2, "principal")),
        })
        .collect();
    for (s, c) in &configs {
        let a = run(*s, c)?.to_json();
        let b = run(*s, c)?.to_json();
        if a != b {
            return Err(format!("{s}: reports differ between runs"));
        }
    }
    Ok(format!("{} suites", configs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("structure suite", Duration::from_secs(10), structure),
        ("odd form suite", Duration::from_secs(5), forms),
        ("PBW suite", Duration::from_secs(60), pbw),
        ("Clifford/Verma suite", Duration::from_secs(60), clifford_verma),
        ("Λ(ν) criterion", Duration::from_secs(60), lemma),
        ("singular-vector witness", Duration::from_secs(30), singular_witness),
        ("good-grading suite", Duration::from_secs(10), good_grading),
        ("decomposition lemmas", Duration::from_secs(10), dw_lemmas),
        ("W-algebra graded dimensions", Duration::from_secs(600), w_dims),
        ("Lagrangian independence", Duration::from_secs(600), lagrangian),
        ("θ-grading and Levi quotient", Duration::from_secs(900), theta),
        ("star-product suite", Duration::from_secs(60), star),
        ("Whittaker suite", Duration::from_secs(120), whittaker),
        ("determinism", Duration::from_secs(900), determinism),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let t = Instant::now();
        let outcome = f();
        let el = t.elapsed();
        let outcome = match outcome {
            Ok(s) if el > budget => Err(format!("{s}; over budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(s) => println!("PASS {name} ({:.2}s): {s}", el.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {name} ({:.2}s): {e}", el.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", 14 - failed, 14);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
