//! Acceptance checks, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use sghom::autom::{check_antiautomorphic, check_transitivity};
use sghom::density::{average_degree, mad_bruteforce, mad_exact};
use sghom::discharge::{degree_case_audit_sp9, is_config_free, run_discharge, threshold_audit_spq};
use sghom::forbid::{
    blowup_estimate, forbid_table, max_forbidden, p24_star_check, propositions, twenty_case_audit,
    twenty_case_spec, AuditBudget, ForbidOptions, DEFAULT_SEED, DEFAULT_TRIALS, TWENTY_CASE_BOUND,
};
use sghom::hom::{chi_s_exact, chi_sp_exact, graph_from_code, hom, hom_by_switching, is_hom, ChiValue};
use sghom::random::{config_free_graph, gnp, rng, sparse_below};
use sghom::reduce::{catalog, config_reducible, Engine, Theorem};
use sghom::signed::cycle;
use sghom::target::{check_property_p, gen_sp, rho_sp, rho_sp_plus, sp_graph};
use sghom::{ratio, Sign, TargetGraph};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn check(failures: &mut Vec<String>, cond: bool, msg: impl FnOnce() -> String) {
    if !cond {
        failures.push(msg());
    }
}

fn verdict(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        outcome(true, ok)
    } else {
        outcome(false, failures.join("; "))
    }
}

fn cf_table() -> Outcome {
    let t = rho_sp_plus(9).unwrap();
    let table = forbid_table(&t, Sign::Positive).unwrap();
    let mut expected = vec![0usize; 21];
    for (c, v) in expected.iter_mut().enumerate() {
        *v = match c {
            0 => 20,
            1 => 11,
            2 => 6,
            3..=4 => 4,
            5..=6 => 2,
            7..=11 => 1,
            _ => 0,
        };
    }
    outcome(table == expected, format!("table={table:?}"))
}

fn p24_star() -> Outcome {
    let r = p24_star_check(&rho_sp_plus(9).unwrap()).unwrap();
    let got = (r.max_forbid_full, r.max_forbid_minus_one);
    outcome(got == (2, 3), format!("(full, minus one) = {got:?}, {} sets", r.distinct_sets))
}

fn target_properties() -> Outcome {
    let mut failures = Vec::new();
    let mut tight = 0;
    let mut run = |name: &str, t: &TargetGraph, props: &[(usize, i64)], failures: &mut Vec<String>| {
        let mut any_tight = false;
        for &(k, n) in props {
            if n < 0 {
                continue;
            }
            let r = check_property_p(t, k, n as usize);
            check(failures, r.holds, || format!("{name} {}", r.line()));
            any_tight |= r.minimum == Some(n as usize);
        }
        check(failures, any_tight, || format!("{name}: no tight property"));
        if any_tight {
            tight += 1;
        }
    };
    for q in [5i64, 9, 13] {
        let qu = q as usize;
        run(&format!("SP{q}"), &gen_sp(qu).unwrap(), &[(1, (q - 1) / 2), (2, (q - 5) / 4)], &mut failures);
        run(
            &format!("rho(SP{q})"),
            &rho_sp(qu).unwrap(),
            &[(1, q - 1), (2, (q - 3) / 2), (3, ((q - 9) / 4).max(0))],
            &mut failures,
        );
        run(
            &format!("rho(SP{q}+)"),
            &rho_sp_plus(qu).unwrap(),
            &[(1, q), (2, (q - 1) / 2), (3, (q - 5) / 4)],
            &mut failures,
        );
        for (name, t) in [(format!("SP{q}"), gen_sp(qu).unwrap()), (format!("rho(SP{q}+)"), rho_sp_plus(qu).unwrap())] {
            for level in 1..=2 {
                let r = check_transitivity(&t, level).unwrap();
                check(&mut failures, r.holds, || format!("{name} {}", r.line()));
            }
            let r = check_antiautomorphic(&t);
            check(&mut failures, r.holds, || format!("{name} {}", r.line()));
        }
    }
    verdict(failures, format!("9 targets, {tight} with a tight property, transitivity and antiautomorphism hold"))
}

fn sp5_claims() -> Outcome {
    let reports = sghom::claims::sp5_neighbor_claims(&rho_sp(5).unwrap());
    let got: Vec<usize> = reports.iter().map(|r| r.max_forbidden).collect();
    let pass = reports.iter().all(|r| r.holds) && reports[0].min_forbidden == 1 && got[0] == 1 && got[1] <= 2 && got[2] <= 1;
    outcome(pass, format!("max forbidden (2-vertex, 3-worse, 3-bad) = {got:?}"))
}

fn reducibility() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for (theorem, upto) in [(Theorem::Sp5, 5), (Theorem::Sp9, 4)] {
        for id in catalog(theorem).into_iter().filter(|id| id.index <= upto) {
            let r = config_reducible(&id.to_string(), Engine::Auto).unwrap();
            count += 1;
            check(&mut failures, r.reducible, || format!("{id} not reducible"));
        }
    }
    verdict(failures, format!("{count} configurations reducible"))
}

fn discharging() -> Outcome {
    let theorems = [Theorem::Sp5, Theorem::Sp9, Theorem::Spq(13)];
    let mut failures = Vec::new();
    let mut r = rng(6);
    for i in 0..500 {
        let n = r.gen_range(1..=20);
        let p = r.gen_range(0.05..0.6);
        let g = gnp(n, p, &mut r);
        for th in theorems {
            let rep = run_discharge(&g, th).unwrap();
            check(&mut failures, rep.conserved(&g), || format!("conservation fails on graph {i} for {th}"));
        }
    }
    let mut corpus_vertices = 0;
    for th in theorems {
        let mut r = rng(60);
        for i in 0..50 {
            let n = r.gen_range(10..=24);
            let g = config_free_graph(th, n, 3 * n, &mut r);
            corpus_vertices += g.n();
            check(&mut failures, is_config_free(&g, th), || format!("{th} corpus graph {i} has a configuration"));
            let rep = run_discharge(&g, th).unwrap();
            check(&mut failures, rep.violations.is_empty(), || {
                format!("{th} corpus graph {i}: negative weight at {:?}", rep.violations)
            });
        }
    }
    let audit = degree_case_audit_sp9();
    check(&mut failures, audit.passed(), || format!("degree audit: {:?}", audit.failures));
    for q in [13, 17, 25] {
        let a = threshold_audit_spq(q).unwrap();
        let zeros = a.lines.iter().filter(|l| l.contains("equality expected") && l.contains("weight 0/1")).count();
        check(&mut failures, a.passed() && zeros == 2, || format!("threshold audit q={q}: {:?}", a.failures));
    }
    verdict(
        failures,
        format!(
            "500 graphs conserve weight; 150 corpus graphs ({corpus_vertices} vertices) end >= 0; {} degree cases checked, {} skipped; q=13,17,25 thresholds tight",
            audit.checked, audit.skipped
        ),
    )
}

fn mad_agreement() -> Outcome {
    let mut failures = Vec::new();
    let mut r = rng(7);
    for i in 0..200 {
        let n = r.gen_range(1..=12);
        let p = if i % 2 == 0 { 0.3 } else { 0.5 };
        let g = gnp(n, p, &mut r);
        let flow = mad_exact(&g).unwrap();
        let brute = mad_bruteforce(&g).unwrap();
        check(&mut failures, flow.value == brute.value, || format!("graph {i}: {} vs {}", flow.value, brute.value));
        check(&mut failures, average_degree(&g, &flow.witness) == flow.value, || format!("graph {i}: witness density"));
    }
    verdict(failures, "200 graphs agree, witnesses recomputed exactly".into())
}

fn hom_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let targets: Vec<_> = (0..27).map(|c| graph_from_code(3, c)).collect();
    let mut r = rng(8);
    let mut found = 0;
    for i in 0..100 {
        let n = r.gen_range(1..=8);
        let g = gnp(n, r.gen_range(0.2..0.7), &mut r);
        for (c, h) in targets.iter().enumerate() {
            let a = hom(&g, h).unwrap();
            let b = hom_by_switching(&g, h).unwrap();
            check(&mut failures, a.is_some() == b.is_some(), || format!("graph {i} target {c}: disagreement"));
            if let Some(w) = &a {
                found += 1;
                check(&mut failures, is_hom(&g, h, w), || format!("graph {i} target {c}: bad witness"));
            }
        }
    }
    verdict(failures, format!("100 graphs x 27 targets agree, {found} homomorphisms verified"))
}

fn chi_facts() -> Outcome {
    let mut failures = Vec::new();
    for len in [4, 6] {
        let v = chi_s_exact(&cycle(len, &[0]), 5).unwrap();
        check(&mut failures, v == ChiValue::Exact(4), || format!("unbalanced C{len}: {v}"));
    }
    let mut r = rng(9);
    for i in 0..50 {
        let n = r.gen_range(1..=6);
        let g = gnp(n, r.gen_range(0.2..0.8), &mut r);
        let (s, sp) = (chi_s_exact(&g, 5).unwrap(), chi_sp_exact(&g, 5).unwrap());
        match (s, sp) {
            (ChiValue::Exact(s), ChiValue::Exact(sp)) => {
                check(&mut failures, s <= sp && sp <= 2 * s, || format!("graph {i}: chi_s={s} chi_sp={sp}"))
            }
            _ => failures.push(format!("graph {i}: inexact {s} {sp}")),
        }
    }
    verdict(failures, "unbalanced C4 and C6 have 4; 50 graphs satisfy chi_s <= chi_sp <= 2 chi_s".into())
}

fn heavy_propositions() -> Outcome {
    let t = rho_sp_plus(9).unwrap();
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for p in propositions() {
        let r = max_forbidden(&t, &p.spec, ForbidOptions::sampled(DEFAULT_SEED, DEFAULT_TRIALS)).unwrap();
        parts.push(format!("{}={}<= {}", p.id, r.max_forbidden, p.bound));
        check(&mut failures, r.max_forbidden <= p.bound, || format!("{} sampled {} > {}", p.id, r.max_forbidden, p.bound));
    }
    let budget = AuditBudget::default();
    let mut large = 0;
    for case in 1..=20 {
        let spec = twenty_case_spec(case).unwrap();
        if blowup_estimate(&t, &spec) <= budget.exhaustive_limit {
            continue;
        }
        large += 1;
        let r = max_forbidden(&t, &spec, ForbidOptions::sampled(DEFAULT_SEED, DEFAULT_TRIALS)).unwrap();
        check(&mut failures, r.max_forbidden <= TWENTY_CASE_BOUND, || format!("case {case} sampled {}", r.max_forbidden));
    }
    for o in twenty_case_audit(&t, budget).unwrap() {
        check(&mut failures, o.passed, || format!("case {} ({}) {} > {}", o.case, o.result.mode, o.result.max_forbidden, o.bound));
    }
    verdict(failures, format!("{}; {large} large cases sampled, all twenty within 17", parts.join(" ")))
}

fn end_to_end() -> Outcome {
    let h = sp_graph(5).unwrap();
    let bound = ratio(20, 7);
    let mut failures = Vec::new();
    let mut r = rng(11);
    let mut edges = 0;
    for i in 0..50 {
        let n = r.gen_range(8..=24);
        let g = sparse_below(n, bound, 6 * n, &mut r);
        edges += g.edge_count();
        let cert = mad_exact(&g).unwrap();
        check(&mut failures, cert.value < bound, || format!("graph {i}: mad {}", cert.value));
        match hom(&g, &h).unwrap() {
            Some(w) => check(&mut failures, is_hom(&g, &h, &w), || format!("graph {i}: witness rejected")),
            None => failures.push(format!("graph {i}: no homomorphism to SP5")),
        }
    }
    verdict(failures, format!("50 graphs ({edges} edges) with mad < 20/7 map to SP5"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("cf table", cf_table, Duration::from_secs(120)),
        ("P24*", p24_star, Duration::from_secs(10)),
        ("target properties", target_properties, Duration::from_secs(300)),
        ("SP5 neighbor claims", sp5_claims, Duration::from_secs(60)),
        ("reducibility", reducibility, Duration::from_secs(600)),
        ("discharging", discharging, Duration::from_secs(600)),
        ("mad", mad_agreement, Duration::from_secs(120)),
        ("hom equivalence", hom_equivalence, Duration::from_secs(300)),
        ("chi facts", chi_facts, Duration::from_secs(600)),
        ("heavy propositions", heavy_propositions, Duration::from_secs(1800)),
        ("end to end", end_to_end, Duration::from_secs(600)),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= *limit;
        all &= pass;
        println!(
            "criterion {:>2} {:<20} {} ({:.1}s) {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
