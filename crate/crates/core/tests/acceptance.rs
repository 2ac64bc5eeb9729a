//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use canonclass::canonical::{
    brute_row, brute_solve_canonical, certify_table, ordered_table, restriction_ordered,
    restriction_single_form, restriction_single_form_paths, single_form_table, WeightClasses,
};
use canonclass::fibration::{tower_restriction, tower_table};
use canonclass::orbits::{FiberEngine, TypedEngine};
use canonclass::oracle::{billey_table, compare_tables};
use canonclass::{CartanType, Orbit, OrbitSpec, Poly, RestrictionTable};

use CartanType::*;

type Outcome = Result<String, String>;

fn orbit(t: CartanType, n: usize) -> Result<Orbit, String> {
    Orbit::standard(t, n).map_err(|e| format!("{t}{n}: {e}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const LISTED: [(CartanType, usize); 8] = [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (D, 4)];

fn b2_example() -> Outcome {
    let start = Instant::now();
    let o = orbit(B, 2)?;
    let p = o.resolve("m:-2,1").map_err(err)?;
    let q = o.resolve("m:2,1").map_err(err)?;
    let cg = o.canonical();
    let classes = o.tower().classes();
    let want = Poly::parse("x1 + x2", 2).map_err(err)?;
    let got = [
        ("gz", restriction_single_form(cg, p, q).map_err(err)?),
        ("ordered", restriction_ordered(cg, p, q, &classes).map_err(err)?.value),
        ("typed", TypedEngine::new(&o).map_err(err)?.restriction(p, q).map_err(err)?.value().clone()),
        ("brute", brute_row(o.oriented(), p).map_err(err)?.swap_remove(q)),
    ];
    let elapsed = start.elapsed();
    for (name, v) in &got {
        if *v != want {
            return Err(format!("{name} gives {v}"));
        }
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("x1 + x2 from gz, ordered, typed, brute in {elapsed:.2?}"))
}

fn engine_agreement() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (t, n) in LISTED {
        let o = orbit(t, n)?;
        let tables = vec![
            ("typed".to_string(), TypedEngine::new(&o).map_err(err)?.table(true).map_err(err)?),
            ("brute".to_string(), canonclass::canonical::brute_solve_canonical_with(o.oriented(), true).map_err(err)?),
            ("gz".to_string(), single_form_table(o.canonical(), true).map_err(err)?),
        ];
        let r = compare_tables(&tables);
        if !r.agree() {
            let m = &r.mismatches[0];
            return Err(format!("{t}{n}: {} ({}: {} = {}, {} = {})", r.summary(), m.p, m.engine_a, m.value_a, m.engine_b, m.value_b));
        }
        pairs += r.pairs_checked;
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{pairs} pairs over A1-A3, B2, B3, C2, C3, D4 in {elapsed:.2?}"))
}

fn billey_equality() -> Outcome {
    let mut pairs = 0;
    for (t, n) in [(A, 1), (A, 2), (A, 3), (B, 2), (C, 2)] {
        let o = orbit(t, n)?;
        let r = compare_tables(&[
            ("billey".to_string(), billey_table(&o).map_err(err)?),
            ("gz".to_string(), single_form_table(o.canonical(), false).map_err(err)?),
        ]);
        if !r.agree() {
            return Err(format!("{t}{n}: {}", r.summary()));
        }
        pairs += r.pairs_checked;
    }
    Ok(format!("{pairs} pairs over A1-A3, B2, C2"))
}

fn theta_one() -> Outcome {
    let mut edges = 0;
    let mut instances = 0;
    for t in [A, B, C, D] {
        for n in 1..=4 {
            if t == D && n < 2 {
                continue;
            }
            let o = orbit(t, n)?;
            let r = o.cocan_report().map_err(err)?;
            if !r.is_ok() {
                return Err(format!("{t}{n}: {r:?}"));
            }
            edges += o.canonical().edges().len();
            instances += 1;
        }
    }
    Ok(format!("{edges} canonical edges over {instances} orbits (all types, ranks up to 4)"))
}

fn path_certificates() -> Outcome {
    let mut checked = 0;
    for (t, n) in LISTED {
        let o = orbit(t, n)?;
        let (c, failed) = TypedEngine::new(&o).map_err(err)?.certify_all().map_err(err)?;
        if !failed.is_empty() {
            return Err(format!("{t}{n}: {} failing terms, first {}", failed.len(), failed[0]));
        }
        checked += c;
    }
    Ok(format!("{checked} path terms factor as distinct positive roots times an allowed constant"))
}

fn path_reduction() -> Outcome {
    let o = orbit(A, 2)?;
    let cg = o.canonical();
    let n = o.num_vertices();
    let mut witness = None;
    for p in 0..n {
        for q in 0..n {
            let (v, all) = restriction_single_form_paths(cg, p, q).map_err(err)?;
            let tower = tower_restriction(cg, o.tower(), p, q).map_err(err)?;
            if tower.value != v {
                return Err(format!("values differ at ({}, {})", o.id(p), o.id(q)));
            }
            if tower.paths.len() < all.len() && witness.is_none() {
                witness = Some(format!("|C| = {} < |Sigma| = {} at ({}, {})", tower.paths.len(), all.len(), o.id(p), o.id(q)));
            }
        }
    }
    witness.ok_or_else(|| "no pair with fewer tower paths".into())
}

fn pairing() -> Outcome {
    let mut targets = 0;
    let mut pairs = 0;
    for (t, n) in [(B, 2), (B, 3), (D, 4)] {
        let o = orbit(t, n)?;
        let f = FiberEngine::new(&o).map_err(err)?;
        for r in f.pairing_all().map_err(err)? {
            if !r.is_ok() {
                return Err(format!("{t}{n}, target {}: {r:?}", r.target));
            }
            targets += 1;
            pairs += r.pairs;
        }
    }
    Ok(format!("{pairs} pairs over {targets} fiber targets on B2, B3, D4"))
}

/// Single-entry corruptions of a correct table; returns (injected, detected).
fn inject_faults(o: &Orbit, table: &RestrictionTable, classes: &WeightClasses) -> (usize, usize) {
    let cg = o.canonical();
    let n = o.num_vertices();
    let m = table.nvars();
    let mut injected = 0;
    let mut detected = 0;
    let mut check = |t: RestrictionTable| {
        injected += 1;
        if !certify_table(cg, &t, classes, true).passed {
            detected += 1;
        }
    };
    let picks = [(0, n - 1), (n - 1, 0), (n / 2, n / 2), (1, n - 1), (n / 3, 2 * n / 3), (2 * n / 3, n / 3)];
    for (p, q) in picks {
        let v = table.get(p, q).clone();
        let mut t = table.clone();
        if v.is_zero() {
            let d = o.oriented().morse_index(p) as u32;
            t.set(p, q, Poly::var(m, 0).pow(d));
        } else {
            t.set(p, q, &v + &v);
        }
        check(t);
    }
    (injected, detected)
}

fn certificate_suite() -> Outcome {
    let mut tables = 0;
    let mut injected = 0;
    let mut detected = 0;
    for (t, n) in LISTED {
        let o = orbit(t, n)?;
        let cg = o.canonical();
        let classes = WeightClasses::moment(o.oriented());
        let mut computed = vec![
            ("gz", single_form_table(cg, true).map_err(err)?),
            ("ordered", ordered_table(cg, &o.tower().classes()).map_err(err)?),
            ("tower", tower_table(cg, o.tower()).map_err(err)?),
            ("typed", TypedEngine::new(&o).map_err(err)?.table(true).map_err(err)?),
            ("brute", brute_solve_canonical(o.oriented()).map_err(err)?),
        ];
        if o.num_vertices() <= 48 {
            computed.push(("billey", billey_table(&o).map_err(err)?));
        }
        for (name, table) in &computed {
            let c = certify_table(cg, table, &classes, true);
            if !c.passed {
                return Err(format!("{t}{n} {name}: {}", c.failures[0]));
            }
            tables += 1;
        }
        let (i, d) = inject_faults(&o, &computed[0].1, &classes);
        injected += i;
        detected += d;
    }
    if detected != injected {
        return Err(format!("only {detected} of {injected} injected faults detected"));
    }
    Ok(format!("{tables} tables certified, {detected}/{injected} injected faults detected"))
}

fn mu_invariance() -> Outcome {
    for n in 1..=3 {
        let mut tables = Vec::new();
        for gap in [1, 2] {
            let spec = OrbitSpec::with_spacing(A, n, gap).map_err(err)?;
            let o = Orbit::new(spec).map_err(err)?;
            tables.push(single_form_table(o.canonical(), false).map_err(err)?);
        }
        if tables[0] != tables[1] {
            return Err(format!("A{n}: tables differ at {:?}", tables[0].differences(&tables[1]).first()));
        }
    }
    Ok("A1-A3 tables identical for two choices of mu".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("B2 worked example", b2_example),
        ("engine agreement", engine_agreement),
        ("Billey oracle", billey_equality),
        ("Theta = 1", theta_one),
        ("path certificates", path_certificates),
        ("path reduction", path_reduction),
        ("pairing", pairing),
        ("certificate suite", certificate_suite),
        ("mu invariance", mu_invariance),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
