//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twosided::connectivity::digraphs_isomorphic;
use twosided::digraph::{
    arc_multiset, build_cayley, is_undirected, valency_obstruction, valency_profile,
};
use twosided::group::{
    closure, direct_product, double_cosets, make_alternating, make_cyclic, make_dihedral,
    normalizer, parse_subset, FiniteGroup,
};
use twosided::theory::{
    burnside_component_count, coset_connection_lengths, delta_correspondence_check,
    min_connection_length, retract_reduction_check, run_suite, Instance, SuiteConfig,
};
use twosided::ElementSubset;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sub(g: &FiniteGroup, s: &str) -> Result<ElementSubset, String> {
    parse_subset(g, s).map_err(|e| e.to_string())
}

fn labels(g: &FiniteGroup, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    let mut v: Vec<String> = xs.into_iter().map(|x| g.label(x).to_string()).collect();
    v.sort();
    v
}

fn iso(inst: &Instance<'_>, a: usize, b: usize) -> Result<bool, String> {
    let p = &inst.strong;
    digraphs_isomorphic(&inst.digraph, p.component(a), &inst.digraph, p.component(b))
        .map_err(|e| e.to_string())
}

fn c1_a4_valency() -> Outcome {
    let a4 = make_alternating(4).map_err(|e| e.to_string())?;
    let inst = Instance::new(
        &a4,
        sub(&a4, "e, (243)")?,
        sub(&a4, "(234), (12)(34), (132), (14)(23)")?,
    );
    let p = valency_profile(&inst.digraph);
    ensure!(
        p.out_constant == Some(7),
        "out-valency {:?}",
        p.out_valencies
    );
    let six = labels(&a4, a4.elements().filter(|&v| p.in_valencies[v] == 6));
    let mut expected: Vec<String> = ["(123)", "(132)", "(142)", "(143)", "(12)(34)", "(13)(24)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    expected.sort();
    ensure!(six == expected, "in-valency 6 on {six:?}");
    let eight = a4.elements().filter(|&v| p.in_valencies[v] == 8).count();
    ensure!(eight == 6, "in-valency 8 on {eight} vertices");
    ensure!(
        inst.strong.len() == 1,
        "{} strong components",
        inst.strong.len()
    );
    Ok(())
}

fn c2_c7_cayley() -> Outcome {
    let c7 = make_cyclic(7).map_err(|e| e.to_string())?;
    let inst = Instance::new(&c7, sub(&c7, "g^2, g^3")?, sub(&c7, "e, g")?);
    let p = valency_profile(&inst.digraph);
    ensure!(p.regular && p.out_constant == Some(3), "profile {p:?}");
    let cay = build_cayley(&c7, &sub(&c7, "g^4, g^5, g^6")?);
    let all: Vec<usize> = c7.elements().collect();
    let same = digraphs_isomorphic(&inst.digraph, &all, &cay, &all).map_err(|e| e.to_string())?;
    ensure!(same, "not isomorphic to the Cayley digraph");
    let m = arc_multiset(&c7, &inst.left, &inst.right, c7.identity());
    let g5 = c7.index_of("g^5").ok_or("no g^5")?;
    ensure!(m.get(&g5) == Some(&2), "multiset at e {m:?}");
    Ok(())
}

fn c3_d6_obstruction() -> Outcome {
    let d6 = make_dihedral(6).map_err(|e| e.to_string())?;
    let inst = Instance::new(&d6, sub(&d6, "τ, τσ^5")?, sub(&d6, "τσ, τσ^2")?);
    ensure!(
        is_undirected(&d6, &inst.left, &inst.right),
        "not undirected"
    );
    let p = valency_profile(&inst.digraph);
    ensure!(p.regular && p.out_constant == Some(3), "profile {p:?}");
    let expected = sub(&d6, "e, σ, σ^-1")?;
    for g in d6.elements() {
        let o = valency_obstruction(&d6, &inst.left, &inst.right, g);
        ensure!(
            o == expected,
            "obstruction at {} is {}",
            d6.label(g),
            o.display(&d6)
        );
    }
    Ok(())
}

fn c4_a4_complete() -> Outcome {
    let a4 = make_alternating(4).map_err(|e| e.to_string())?;
    let inst = Instance::new(&a4, ElementSubset::whole(&a4), sub(&a4, "(243), (12)(34)")?);
    let p = valency_profile(&inst.digraph);
    ensure!(p.regular && p.out_constant == Some(12), "profile {p:?}");
    let expected = sub(&a4, "e, (124), (142)")?;
    for g in a4.elements() {
        let m = arc_multiset(&a4, &inst.left, &inst.right, g);
        ensure!(
            m.len() == 12 && m.values().all(|&c| c == 2),
            "multiset at {} {m:?}",
            a4.label(g)
        );
        let o = valency_obstruction(&a4, &inst.left, &inst.right, g);
        ensure!(
            o == expected,
            "obstruction at {} is {}",
            a4.label(g),
            o.display(&a4)
        );
    }
    Ok(())
}

fn c5_d6_nonisomorphic() -> Outcome {
    let d6 = make_dihedral(6).map_err(|e| e.to_string())?;
    let inst = Instance::new(&d6, sub(&d6, "τ, τσ^5")?, sub(&d6, "τσ, τσ^2")?);
    let k = min_connection_length(&inst).map_err(|e| e.to_string())?.k;
    ensure!(k == 2, "k = {k}");
    ensure!(
        inst.strong.sizes() == vec![6, 6],
        "sizes {:?}",
        inst.strong.sizes()
    );
    ensure!(!iso(&inst, 0, 1)?, "components isomorphic");
    let expected = sub(&d6, "e, σ^3")?;
    let (nl, nr) = (normalizer(&d6, &inst.left), normalizer(&d6, &inst.right));
    ensure!(
        nl == expected && nr == expected,
        "normalizers {} {}",
        nl.display(&d6),
        nr.display(&d6)
    );
    ensure!(
        !nl.intersects(&inst.left) && !nr.intersects(&inst.right),
        "normalizer meets L or R"
    );
    Ok(())
}

fn c6_d10_isomorphic() -> Outcome {
    let d10 = make_dihedral(10).map_err(|e| e.to_string())?;
    let inst = Instance::new(&d10, sub(&d10, "σ")?, sub(&d10, "τ, σ^3")?);
    let k = min_connection_length(&inst).map_err(|e| e.to_string())?.k;
    ensure!(k == 2, "k = {k}");
    ensure!(
        inst.strong.sizes() == vec![10, 10],
        "sizes {:?}",
        inst.strong.sizes()
    );
    ensure!(iso(&inst, 0, 1)?, "components not isomorphic");
    let sigma = d10.index_of("s").ok_or("no s")?;
    let nl = normalizer(&d10, &inst.left);
    ensure!(
        inst.left.contains(sigma) && nl.contains(sigma),
        "sigma not in L ∩ N(L)"
    );
    Ok(())
}

fn c7_d3xc3() -> Outcome {
    let g = direct_product(
        &make_dihedral(3).map_err(|e| e.to_string())?,
        &make_cyclic(3).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let inst = Instance::new(&g, sub(&g, "(ts^2,g^2)")?, sub(&g, "(e,g^2), (t,g^2)")?);
    let lengths = coset_connection_lengths(&inst).map_err(|e| e.to_string())?;
    ensure!(
        lengths.per_coset.len() == 2,
        "{} double cosets",
        lengths.per_coset.len()
    );
    let ks: Vec<usize> = lengths.per_coset.iter().map(|c| c.k_s).collect();
    ensure!(ks == vec![3, 3], "k_s = {ks:?}");
    ensure!(inst.strong.len() == 6, "{} components", inst.strong.len());
    for c in &lengths.per_coset {
        for &id in &c.component_ids[1..] {
            ensure!(
                iso(&inst, c.component_ids[0], id)?,
                "non-isomorphic components in a coset"
            );
        }
    }
    Ok(())
}

fn c8_a5() -> Outcome {
    let a5 = make_alternating(5).map_err(|e| e.to_string())?;
    let inst = Instance::new(&a5, sub(&a5, "(235)")?, sub(&a5, "(243), (254)")?);
    let hl = closure(&a5, &inst.left);
    let hr = closure(&a5, &inst.right);
    let dc = double_cosets(&a5, &hl, &hr).map_err(|e| e.to_string())?;
    ensure!(dc.len() == 3, "{} double cosets", dc.len());
    let reps: Vec<usize> = ["e", "(123)", "(145)"]
        .iter()
        .map(|s| a5.index_of(s).ok_or(format!("no {s}")))
        .collect::<Result<_, _>>()?;
    let ids: Vec<usize> = reps.iter().map(|&s| dc.coset_of(s)).collect();
    ensure!(
        ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2],
        "cosets {ids:?}"
    );
    let lengths = coset_connection_lengths(&inst).map_err(|e| e.to_string())?;
    let ks: Vec<usize> = ids.iter().map(|&c| lengths.per_coset[c].k_s).collect();
    ensure!(ks == vec![3, 3, 1], "k_s = {ks:?}");
    let sizes: Vec<usize> = reps
        .iter()
        .map(|&s| inst.strong.component(inst.strong.component_of(s)).len())
        .collect();
    ensure!(sizes == vec![4, 12, 12], "sizes {sizes:?}");
    ensure!(inst.strong.len() == 7, "{} components", inst.strong.len());
    ensure!(
        lengths.predicted_components == 7,
        "sum k_s = {}",
        lengths.predicted_components
    );
    let b = burnside_component_count(&a5, &inst.left, &inst.right).map_err(|e| e.to_string())?;
    ensure!(b.count == 7, "burnside {}", b.count);
    Ok(())
}

fn c9_retract() -> Outcome {
    let g = twosided::fixtures::dihedral_semidirect().map_err(|e| e.to_string())?;
    let conn = Instance::new(&g, sub(&g, "(g,e)")?, sub(&g, "(g^2,e), (e,g)")?);
    let r = retract_reduction_check(&conn).map_err(|e| e.to_string())?;
    ensure!(
        r.connected && r.image_connected && r.kernel_within_one,
        "connected case {r:?}"
    );
    let disc = Instance::new(&g, sub(&g, "(e,g), (g,g)")?, sub(&g, "(g^5,g), (g^4,g)")?);
    let r = retract_reduction_check(&disc).map_err(|e| e.to_string())?;
    ensure!(
        !r.connected && !r.image_connected && r.kernel_within_one,
        "disconnected case {r:?}"
    );
    ensure!(
        r.connected == (r.image_connected && r.kernel_within_one),
        "equivalence fails"
    );
    // the complement C2 labels tau as g
    ensure!(
        r.image_isolated == vec!["e", "g"],
        "isolated {:?}",
        r.image_isolated
    );
    ensure!(r.image_loops == vec!["e", "g"], "loops {:?}", r.image_loops);
    Ok(())
}

fn c10_suite() -> Outcome {
    let report = run_suite(SuiteConfig {
        seed: 7,
        instances: 200,
        max_order: 24,
    })
    .map_err(|e| e.to_string())?;
    if let Some(o) = report.outcomes.iter().find(|o| !o.pass) {
        return Err(format!(
            "instance {} {} {:?} {:?}\n{}",
            o.index,
            o.group,
            o.left,
            o.right,
            o.records.render_text()
        ));
    }
    let summary = report.summary();
    for family in [
        "strong_connectivity_criterion",
        "total_components",
        "burnside_count",
        "coset_equal_sizes",
        "weak_equals_strong",
        "u_subgroup",
        "k_generator_independence",
    ] {
        let (pass, total) = summary.get(family).copied().unwrap_or((0, 0));
        ensure!(total > 0 && pass == total, "{family}: {pass}/{total}");
    }
    ensure!(report.total == 200, "{} instances", report.total);
    Ok(())
}

fn c11_delta() -> Outcome {
    let mut pool: Vec<FiniteGroup> = Vec::new();
    for n in 1..=12 {
        pool.push(make_cyclic(n).map_err(|e| e.to_string())?);
    }
    for n in 1..=6 {
        pool.push(make_dihedral(n).map_err(|e| e.to_string())?);
    }
    pool.push(make_alternating(4).map_err(|e| e.to_string())?);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..10 {
        let g = &pool[rng.gen_range(0..pool.len())];
        let n = g.order();
        let size = rng.gen_range(1..=4);
        let pairs: Vec<(usize, usize)> = (0..size)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let r = delta_correspondence_check(g, &pairs).map_err(|e| e.to_string())?;
        ensure!(
            r.all_pass(),
            "instance {i} on {}:\n{}",
            g.name(),
            r.render_text()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("A4 valency fixture", Duration::from_secs(1), c1_a4_valency),
        ("C7 Cayley fixture", Duration::from_secs(1), c2_c7_cayley),
        (
            "D6 obstruction fixture",
            Duration::from_secs(1),
            c3_d6_obstruction,
        ),
        (
            "A4 complete-graph fixture",
            Duration::from_secs(1),
            c4_a4_complete,
        ),
        (
            "D6 two-component fixture",
            Duration::from_secs(1),
            c5_d6_nonisomorphic,
        ),
        ("D10 fixture", Duration::from_secs(1), c6_d10_isomorphic),
        ("D3xC3 fixture", Duration::from_secs(2), c7_d3xc3),
        ("A5 fixture", Duration::from_secs(10), c8_a5),
        ("retract fixtures", Duration::from_secs(1), c9_retract),
        (
            "randomized property suite",
            Duration::from_secs(60),
            c10_suite,
        ),
        (
            "diagonal correspondence",
            Duration::from_secs(30),
            c11_delta,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(()) if elapsed > *limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
