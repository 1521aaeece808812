//! Acceptance suite. Run with `cargo test -p hgkm-core --test acceptance`.
//!
//! Each criterion prints one PASS or FAIL line together with its wall time.
//! A criterion that finishes but exceeds its time budget is a FAIL.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use hgkm_core::class::{f_lambda_k, top_coset_class};
use hgkm_core::dot::{dot, orbit};
use hgkm_core::independence::{
    degree_condition, identity_matrices, independence, minors, module_signature, stabilizers_conjugate,
    theorem5_check, theorem6_check, two_orbit_classes,
};
use hgkm_core::permutation::{coset_decompose, in_young_subgroup, special_reps};
use hgkm_core::{GkmClass, GkmGraph, IndependenceCertificate, IndependenceOptions, MultiPoly, Permutation, Root, Side, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lf(i: usize, j: usize, n: usize) -> MultiPoly {
    MultiPoly::linear_form(Root::new(i, j).unwrap(), n).unwrap()
}

/// Independence verdicts collected while running the criteria, rechecked at
/// the end.
struct Fixtures(Vec<(String, Vec<GkmClass>, IndependenceCertificate)>);

impl Fixtures {
    fn record(&mut self, name: String, classes: &[GkmClass], cert: &IndependenceCertificate) {
        self.0.push((name, classes.to_vec(), cert.clone()));
    }
}

fn gkm_graph_small() -> Check {
    let graph = GkmGraph::build(&h(&[2, 3, 3]));
    let s = |w: &[usize]| p(w);
    let expected: BTreeSet<(Permutation, Permutation, Root)> = [
        (s(&[3, 2, 1]), s(&[2, 3, 1]), Root::new(2, 3).unwrap()),
        (s(&[3, 2, 1]), s(&[3, 1, 2]), Root::new(1, 2).unwrap()),
        (s(&[2, 3, 1]), s(&[2, 1, 3]), Root::new(1, 3).unwrap()),
        (s(&[3, 1, 2]), s(&[1, 3, 2]), Root::new(1, 3).unwrap()),
        (s(&[2, 1, 3]), s(&[1, 2, 3]), Root::new(1, 2).unwrap()),
        (s(&[1, 3, 2]), s(&[1, 2, 3]), Root::new(2, 3).unwrap()),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<(Permutation, Permutation, Root)> =
        graph.edges.iter().map(|e| (e.source.clone(), e.target.clone(), e.label)).collect();
    ensure(graph.len() == 6, || format!("{} edges", graph.len()))?;
    ensure(got == expected, || format!("edges {got:?}"))
}

fn top_coset_table(fixtures: &mut Fixtures) -> Check {
    let n = 3;
    let mu = c(&[1, 2]);
    let f = top_coset_class(&mu, &h(&[2, 3, 3])).unwrap();
    let s1 = Permutation::simple(n, 1);
    let s2s1 = &Permutation::simple(n, 2) * &s1;
    let rows = [f.clone(), dot(&s1, &f).unwrap(), dot(&s2s1, &f).unwrap()];
    // columns e, s1, s2, s1s2, s2s1, s1s2s1
    let cols = [
        Permutation::identity(n),
        s1.clone(),
        Permutation::simple(n, 2),
        &s1 * &Permutation::simple(n, 2),
        s2s1.clone(),
        Permutation::longest(n),
    ];
    let z = MultiPoly::zero(n);
    let table = [
        [z.clone(), z.clone(), z.clone(), lf(1, 3, n), z.clone(), lf(1, 2, n)],
        [z.clone(), z.clone(), lf(2, 3, n), z.clone(), lf(2, 1, n), z.clone()],
        [lf(3, 2, n), lf(3, 1, n), z.clone(), z.clone(), z.clone(), z],
    ];
    for (r, class) in rows.iter().enumerate() {
        for (col, w) in cols.iter().enumerate() {
            ensure(class.value(w) == &table[r][col], || {
                format!("row {r} column {w}: got {}", class.value(w))
            })?;
        }
    }
    let o = orbit(&f, &mu).unwrap();
    let mut a: Vec<&GkmClass> = o.elements.iter().collect();
    let mut b: Vec<&GkmClass> = rows.iter().collect();
    a.sort_by_key(|g| g.support());
    b.sort_by_key(|g| g.support());
    ensure(a == b, || "orbit differs from the three table rows".into())?;
    let cert = independence(&o.elements, &IndependenceOptions::default()).unwrap();
    fixtures.record("top-coset orbit n=3".into(), &o.elements, &cert);
    ensure(cert.is_independent(), || format!("{:?}", cert.verdict))?;
    ensure(module_signature(&o).unwrap() == vec![2, 1], || "signature".into())
}

fn six_dimensional_non_example() -> Check {
    let hh = h(&[3, 4, 5, 6, 6, 6]);
    let lambda = c(&[2, 4]);
    let graph = GkmGraph::build(&hh);
    let f1 = f_lambda_k(&lambda, 1, &hh, false).unwrap();
    let cert = f1.verify_with_graph(&graph);
    ensure(!cert.passed(), || "f^(1) unexpectedly passes".into())?;
    let v1 = special_reps(&lambda, 1).unwrap();
    let v3 = special_reps(&lambda, 3).unwrap();
    let s4v1 = &Permutation::simple(6, 4) * &v1;
    let t14 = Root::new(1, 4).unwrap();
    ensure(
        cert.violations.iter().any(|v| v.source == v3 && v.target == s4v1 && v.label == t14),
        || format!("violation (v3, s4 v1, t1-t4) missing among {}", cert.violations.len()),
    )?;
    let f2 = f_lambda_k(&lambda, 2, &hh, true).unwrap();
    let cert = f2.verify_with_graph(&graph);
    ensure(cert.passed(), || format!("{} violations", cert.violations.len()))?;
    // every vertex meets dim = 9 edges and each edge is counted once
    ensure(cert.edges_checked == 720 * 9 / 2, || format!("{} edges", cert.edges_checked))?;
    let cohomological = f2.declared_degree().map(|d| 2 * d);
    ensure(cohomological == Some(8), || format!("degree {cohomological:?}"))
}

fn orbit_independence_exhaustive(fixtures: &mut Fixtures) -> Check {
    let opts = IndependenceOptions::default();
    let mut instances = 0;
    for n in 4..=5 {
        let lambda = c(&[1, n - 1]);
        for hh in connected(n).into_iter().filter(|x| x.get(1) < n - 1) {
            instances += 1;
            let (report, cert) = theorem5_check(&lambda, &hh, &opts).unwrap();
            ensure(report.passed(), || format!("{:?}: hypotheses {:?}", hh.values(), report.hypotheses))?;
            ensure(report.checks_passed(), || format!("{:?}: checks {:?}", hh.values(), report.checks))?;
            let cert = cert.ok_or_else(|| format!("{:?}: no certificate", hh.values()))?;
            let f = f_lambda_k(&lambda, n - 2, &hh, true).unwrap();
            let o = orbit(&f, &lambda).unwrap();
            fixtures.record(format!("orbit-independence h={:?}", hh.values()), &o.elements, &cert);
            ensure(cert.is_independent(), || format!("{:?}: {:?}", hh.values(), cert.verdict))?;
            ensure(stabilizers_conjugate(&o).unwrap(), || format!("{:?}: stabilizers", hh.values()))?;
            let sig = module_signature(&o).unwrap();
            ensure(sig == vec![n - 1, 1], || format!("{:?}: signature {sig:?}", hh.values()))?;
        }
    }
    ensure(instances > 0, || "no instances".into())
}

fn two_orbit_instance(fixtures: &mut Fixtures) -> Check {
    let hh = h(&[3, 4, 5, 5, 5]);
    let deg = degree_condition(&hh).unwrap();
    let get = |k: &str| deg.derived.get(k).and_then(|v| v.as_u64());
    ensure(deg.passed(), || format!("{:?}", deg.hypotheses))?;
    ensure(get("first_cardinality") == Some(2) && get("second_cardinality") == Some(2), || {
        format!("cardinalities {:?} {:?}", get("first_cardinality"), get("second_cardinality"))
    })?;
    ensure(get("j") == Some(2) && get("deg") == Some(2), || format!("j {:?} deg {:?}", get("j"), get("deg")))?;

    let (report, cert) = theorem6_check(&hh, &IndependenceOptions::default()).unwrap();
    ensure(report.passed() && report.checks_passed(), || format!("{report:?}"))?;
    let cert = cert.ok_or("no certificate")?;
    let (fs, gs) = two_orbit_classes(&hh).unwrap();
    let all: Vec<GkmClass> = fs.iter().chain(&gs).cloned().collect();
    fixtures.record("two orbits h=(3,4,5,5,5)".into(), &all, &cert);
    ensure(cert.cols == 10 && cert.is_independent(), || format!("{} classes, {:?}", cert.cols, cert.verdict))?;

    let (a, b) = identity_matrices(&fs, &gs, 2);
    let am = minors(&a, 5);
    let bm = minors(&b, 5);
    ensure(!am[0].is_zero() && am[0] == -&am[2], || format!("A_1 = {}, A_3 = {}", am[0], am[2]))?;
    ensure(bm[2].is_zero(), || format!("B_3 = {}", bm[2]))?;
    ensure(!bm[0].is_zero(), || "B_1 = 0".into())
}

fn two_orbits_of_degree_two(fixtures: &mut Fixtures) -> Check {
    let n = 5;
    let hh = h(&[3, 4, 5, 5, 5]);
    let lambda = c(&[1, 4]);
    let opts = IndependenceOptions::default();
    let mut union: Vec<GkmClass> = Vec::new();
    for k in [n - 2, n - 1] {
        let f = f_lambda_k(&lambda, k, &hh, true).unwrap();
        let o = orbit(&f, &lambda).unwrap();
        ensure(o.len() == 5, || format!("k={k}: orbit size {}", o.len()))?;
        ensure(o.elements.iter().all(|g| g.declared_degree() == Some(2)), || format!("k={k}: degree"))?;
        let sig = module_signature(&o).unwrap();
        ensure(sig == vec![4, 1], || format!("k={k}: signature {sig:?}"))?;
        let cert = independence(&o.elements, &opts).unwrap();
        fixtures.record(format!("orbit k={k} h=(3,4,5,5,5)"), &o.elements, &cert);
        ensure(cert.is_independent(), || format!("k={k}: {:?}", cert.verdict))?;
        ensure(o.elements.iter().all(|g| !union.contains(g)), || format!("k={k}: orbits share a class"))?;
        union.extend(o.elements);
    }
    let cert = independence(&union, &opts).unwrap();
    fixtures.record("union of both orbits".into(), &union, &cert);
    ensure(cert.is_independent(), || format!("union: {:?}", cert.verdict))
}

fn factorization_on_s5() -> Check {
    let n = 5;
    for lambda in two_part_compositions(n) {
        for w in Permutation::all(n) {
            let (y, v) = coset_decompose(&w, &lambda, Side::Right).unwrap();
            ensure(in_young_subgroup(&y, &lambda) && &y * &v == w, || format!("{w} {lambda}: product"))?;
            ensure(w.length() == y.length() + v.length(), || format!("{w} {lambda}: length"))?;
            let v_inv = v.inverse();
            let moved: BTreeSet<Root> = y.neg_inversion_set().into_iter().map(|r| v_inv.act_on_root(r)).collect();
            let mut expected = v.neg_inversion_set();
            ensure(expected.is_disjoint(&moved), || format!("{w} {lambda}: overlap"))?;
            expected.extend(moved);
            ensure(w.neg_inversion_set() == expected, || format!("{w} {lambda}: negative inversions"))?;
        }
    }
    Ok(())
}

fn dot_preserves_validity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..100 {
        let n = rng.gen_range(3..=5);
        let hs = connected(n);
        let hh = &hs[rng.gen_range(0..hs.len())];
        let f = random_valid_class(&mut rng, hh);
        let v = random_perm(&mut rng, n);
        ensure(f.verify(hh).unwrap().passed(), || format!("trial {trial}: base class invalid"))?;
        let g = dot(&v, &f).unwrap();
        ensure(g.verify(hh).unwrap().passed(), || format!("trial {trial}: {v} on h={:?}", hh.values()))?;
    }
    Ok(())
}

fn divisibility_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut divisible = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(2..=5);
        let a = rng.gen_range(1..=n);
        let mut b = rng.gen_range(1..=n);
        while b == a {
            b = rng.gen_range(1..=n);
        }
        let mut q = random_poly(&mut rng, n);
        if rng.gen_bool(0.5) {
            q = &q * &lf(a, b, n);
        }
        let oracle = long_division_remainder(&q, a, b).is_zero();
        divisible += usize::from(oracle);
        ensure(q.divisible_by(Root::new(a, b).unwrap()) == oracle, || format!("trial {trial}: {q} by t{a}-t{b}"))?;
    }
    ensure(divisible > 100 && divisible < 1000, || format!("unbalanced sample: {divisible} divisible"))
}

fn supports_are_upper_sets() -> Check {
    for n in 2..=5 {
        let all = Permutation::all(n);
        for hh in connected(n) {
            for lambda in two_part_compositions(n) {
                let (l1, l2) = lambda.two_parts().unwrap();
                for k in 0..=l2 {
                    let f = f_lambda_k(&lambda, k, &hh, l1 > 1 && hh.get(k + 2) == n).unwrap();
                    let vk = special_reps(&lambda, k).unwrap();
                    let expected: Vec<Permutation> = all.iter().filter(|w| vk.bruhat_leq(w)).cloned().collect();
                    ensure(f.support() == expected, || format!("h={:?} {lambda} k={k}", hh.values()))?;
                }
            }
        }
    }
    Ok(())
}

fn certificates_recheck(fixtures: &Fixtures) -> Check {
    let independent: Vec<_> = fixtures.0.iter().filter(|(_, _, c)| c.verdict == Verdict::Independent).collect();
    ensure(!independent.is_empty(), || "no independent fixtures were recorded".into())?;
    for (name, classes, cert) in independent {
        ensure(cert.recheck(classes).unwrap(), || format!("{name}: witness does not give full rank"))?;
    }
    Ok(())
}

struct Harness {
    failures: usize,
}

impl Harness {
    fn run(&mut self, id: &str, title: &str, budget: Duration, f: impl FnOnce() -> Check) -> Duration {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let result = match outcome {
            Ok(Ok(())) if elapsed <= budget => Ok(()),
            Ok(Ok(())) => Err(format!("exceeded budget of {budget:?}")),
            Ok(Err(msg)) => Err(msg),
            Err(panic) => Err(panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        match result {
            Ok(()) => println!("PASS {id:<3} {title} ({:.2?})", elapsed),
            Err(msg) => {
                self.failures += 1;
                println!("FAIL {id:<3} {title} ({:.2?}): {msg}", elapsed);
            }
        }
        elapsed
    }
}

fn main() -> ExitCode {
    let mut harness = Harness { failures: 0 };
    let mut fixtures = Fixtures(Vec::new());
    let secs = Duration::from_secs;

    harness.run("1", "GKM graph of h=(2,3,3) has the six expected edges", secs(1), gkm_graph_small);
    harness.run("2", "top-coset orbit table for mu=(1,2)", secs(1), || top_coset_table(&mut fixtures));
    harness.run("3", "n=6 non-example fails on (v3, s4 v1, t1-t4); f^(2) passes in degree 8", secs(30), six_dimensional_non_example);
    harness.run("4", "orbit independence exhaustive for n=4,5", secs(120), || orbit_independence_exhaustive(&mut fixtures));
    harness.run("5", "two-orbit theorem for h=(3,4,5,5,5)", secs(10), || two_orbit_instance(&mut fixtures));
    harness.run("6", "two disjoint independent orbits of degree 2 with signature (4,1)", secs(10), || {
        two_orbits_of_degree_two(&mut fixtures)
    });

    let suite_budget = secs(300);
    let mut suite = Duration::ZERO;
    suite += harness.run("7a", "coset factorization on S_5, two-part compositions", suite_budget, factorization_on_s5);
    suite += harness.run("7b", "dot action preserves validity on 100 random pairs", suite_budget, dot_preserves_validity);
    suite += harness.run("7c", "divisibility agrees with long division on 1000 polynomials", suite_budget, divisibility_oracle);
    suite += harness.run("7d", "supports are Bruhat upper sets for n <= 5", suite_budget, supports_are_upper_sets);
    suite += harness.run("7e", "independent certificates recheck by exact integer rank", suite_budget, || {
        certificates_recheck(&fixtures)
    });
    if suite > suite_budget {
        harness.failures += 1;
        println!("FAIL 7   property suites total {suite:.2?} exceeds {suite_budget:?}");
    } else {
        println!("PASS 7   property suites total {suite:.2?}");
    }

    if harness.failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", harness.failures);
        ExitCode::FAILURE
    }
}
