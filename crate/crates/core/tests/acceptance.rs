//! The eleven acceptance criteria, one line each. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use nk_core::algebra::FinitelyPresentedAlgebra;
use nk_core::cech::{cech_exactness, CechStatus, Overring};
use nk_core::differentials::de_rham_exactness_suite;
use nk_core::field::Q;
use nk_core::hochschild::bigrading::{
    check_iterated, kunneth_base_change, n2hc_direct, weighted_polynomial_extension,
};
use nk_core::hochschild::cyclic::cyclic_homology;
use nk_core::hochschild::eulerian::verify_idempotents;
use nk_core::hochschild::hodge::hodge_decompose;
use nk_core::nk_engine::{
    bass_report, tk_base_change, tk_table_artinian, tk_table_curve, two_path_check, NKTable,
};
use nk_core::semigroup::NumericalSemigroup;
use nk_core::verify::{artinian_corpus, run_suite, Suite, SuiteOptions, Target};
use nk_core::witt_cartier::{check_relations, CartierModule};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ring(src: &str) -> FinitelyPresentedAlgebra<Q> {
    FinitelyPresentedAlgebra::parse(src).expect("ring parses")
}

/// Brute-force gap count: integers below the conductor that are not sums
/// of generators.
fn gap_count(gens: &[u64]) -> usize {
    let limit = 200usize;
    let mut reach = vec![false; limit];
    reach[0] = true;
    for k in 1..limit {
        reach[k] = gens
            .iter()
            .any(|&g| k >= g as usize && reach[k - g as usize]);
    }
    reach.iter().filter(|r| !**r).count()
}

fn c1() -> Outcome {
    let r =
        check_relations(&CartierModule::<Q>::polynomial_model(12), 4).map_err(|e| e.to_string())?;
    if let Some(f) = r.failures().next() {
        return Err(format!("{} fails", f.identity));
    }
    Ok(format!("{} identities on tQ[t], N = 12", r.checks.len()))
}

fn c2() -> Outcome {
    for m in 1..=5 {
        verify_idempotents(m).map_err(|(i, j)| format!("S_{m}: pair ({i}, {j})"))?;
    }
    Ok("e^(i) orthogonal and complete in Q[S_m], m ≤ 5".into())
}

fn c3() -> Outcome {
    let opts = SuiteOptions {
        n: 4,
        ..Default::default()
    };
    let mut count = 0;
    for (name, a) in artinian_corpus() {
        let r =
            run_suite(Suite::Hodge, &Target::ring(name, a), &opts).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !c.passed) {
            return Err(format!("{name}: {} ({})", c.name, c.detail));
        }
        count += r.checks.len();
    }
    Ok(format!("{count} equalities over 4 rings, n ≤ 4"))
}

fn c4() -> Outcome {
    let a = ring("ring Q[x]/(x^2)")
        .basis_algebra(None)
        .map_err(|e| e.to_string())?;
    let r = weighted_polynomial_extension(&a, 2, 3).map_err(|e| e.to_string())?;
    if let Some(m) = r.mismatches().first() {
        return Err(format!(
            "n={} i={} weight={}: {} against {}",
            m.n, m.i, m.weight, m.direct, m.predicted
        ));
    }
    let base = hodge_decompose(&a, 4).map_err(|e| e.to_string())?;
    ensure(check_iterated(&base, 3).is_empty(), "iterated N^p formula")?;
    for (n, direct, predicted) in n2hc_direct(&a, 2).map_err(|e| e.to_string())? {
        ensure(
            direct == predicted,
            format!("N²HC_{n}: {direct} against {predicted}"),
        )?;
    }
    Ok(format!(
        "{} NHH + {} NHC pieces; N^p for p ≤ 3",
        r.nhh.len(),
        r.nhc.len()
    ))
}

fn c5() -> Outcome {
    let mut rows = 0;
    for (name, a) in artinian_corpus() {
        for r in two_path_check(&a, 4).map_err(|e| e.to_string())? {
            ensure(
                r.assembled == r.relative_hh,
                format!(
                    "{name}, n = {}: {} against {}",
                    r.n, r.assembled, r.relative_hh
                ),
            )?;
            rows += 1;
        }
    }
    Ok(format!("{rows} (ring, n) pairs agree"))
}

fn c6() -> Outcome {
    let mut seen = Vec::new();
    for gens in [&[2u64, 3][..], &[3, 4, 5], &[2, 5]] {
        let s = NumericalSemigroup::new(gens).map_err(|e| e.to_string())?;
        let t = tk_table_curve(&s, None, -3, 1, 12).map_err(|e| e.to_string())?;
        for n in -3..0 {
            ensure(t.total(n) == Ok(0), format!("{gens:?}: TK_{n} ≠ 0"))?;
        }
        let gaps = gap_count(gens);
        ensure(
            t.dim(0, 1) == gaps,
            format!("{gens:?}: TK_0^(1) = {} against {gaps} gaps", t.dim(0, 1)),
        )?;
        seen.push(gaps);
    }
    ensure(seen == [1, 2, 2], format!("gap counts {seen:?}"))?;
    Ok("gap counts 1, 2, 2; negative rows vanish".into())
}

fn c7() -> Outcome {
    for (name, src, bound) in [
        ("dual numbers", "ring Q[x]/(x^2) weights x=1", None),
        ("cusp", "ring Q[x,y]/(y^2 - x^3) weights x=2 y=3", Some(12)),
    ] {
        let r = de_rham_exactness_suite(&ring(src), bound).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{name}: {r:?}"))?;
    }
    Ok("torsion and cokernel sequences exact".into())
}

fn c8() -> Outcome {
    let corpus = [
        ("dual numbers", "ring Q[x]/(x^2) weights x=1", None, 4),
        ("Q[x]/(x^3)", "ring Q[x]/(x^3) weights x=1", None, 3),
        (
            "fat point",
            "ring Q[x,y]/(x^2, x*y, y^2) weights x=1 y=1",
            None,
            3,
        ),
        (
            "cusp",
            "ring Q[x,y]/(y^2 - x^3) weights x=2 y=3",
            Some(8),
            2,
        ),
        ("cross", "ring Q[x,y]/(x*y) weights x=1 y=1", Some(5), 2),
    ];
    for (name, src, bound, n) in corpus {
        let a = ring(src).basis_algebra(bound).map_err(|e| e.to_string())?;
        let c = cyclic_homology(&a, n).map_err(|e| e.to_string())?;
        if let Some(f) = c.sbi_failures.first() {
            return Err(format!("{name}: weight {} {}", f.weight, f.spot));
        }
        ensure(
            c.s_nonzero_weights.is_empty(),
            format!("{name}: S ≠ 0 in weights {:?}", c.s_nonzero_weights),
        )?;
    }
    Ok("5 graded rings".into())
}

fn c9() -> Outcome {
    let cross = cech_exactness(&Overring::coordinate_cross().map_err(|e| e.to_string())?, 6)
        .map_err(|e| e.to_string())?;
    ensure(cross.exact(), "cross not exact")?;
    let cusp = Overring::semigroup_normalization(&NumericalSemigroup::new(&[2, 3]).unwrap())
        .map_err(|e| e.to_string())?;
    let r = cech_exactness(&cusp, 6).map_err(|e| e.to_string())?;
    ensure(r.equalizer_is_a(), "cusp equalizer differs from A")?;
    let d1 = &r.degrees[1];
    ensure(
        d1.dim_b == 1 && d1.equalizer_dim == 0 && d1.status == CechStatus::Exact,
        "t should not equalize",
    )?;
    Ok("cross exact in degrees ≤ 6; cusp equalizer = A, t⊗1 ≠ 1⊗t".into())
}

fn c10() -> Outcome {
    let a = ring("ring Q[x]/(x^2)");
    let r = kunneth_base_change(&a.basis_algebra(None).map_err(|e| e.to_string())?, 3)
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("{:?}", r.rows))?;
    for row in tk_base_change(&a, 3).map_err(|e| e.to_string())? {
        ensure(
            row.over_f == row.predicted,
            format!(
                "TK_{}^({}): {} against {}",
                row.n, row.i, row.over_f, row.predicted
            ),
        )?;
    }
    Ok("HH and TK over Q(u), n ≤ 3".into())
}

fn c11() -> Outcome {
    let mut tables: Vec<NKTable> = Vec::new();
    for (_, a) in artinian_corpus() {
        tables.push(tk_table_artinian(&a, -1, 4).map_err(|e| e.to_string())?);
    }
    for gens in [&[1u64][..], &[2, 3], &[3, 4, 5], &[2, 5]] {
        tables.push(
            tk_table_curve(&NumericalSemigroup::new(gens).unwrap(), None, -2, 2, 12)
                .map_err(|e| e.to_string())?,
        );
    }
    let mut checked = 0;
    for t in &tables {
        for n in t.n_min + 1..=t.n_max {
            let r = bass_report(t, n).map_err(|e| e.to_string())?;
            ensure(r.biconditional_holds, format!("{} n = {n}", t.ring))?;
            checked += 1;
        }
    }
    let cusp = &tables[5];
    let r = bass_report(cusp, 1).map_err(|e| e.to_string())?;
    ensure(
        !r.nk_prev_zero && !r.n2k_zero,
        "cusp n = 1 should have NK_0 ≠ 0 and N²K_1 ≠ 0",
    )?;
    Ok(format!(
        "{checked} (ring, n) verdicts; cusp N²K_1 ≠ 0 from NK_0 ≠ 0"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Cartier relations on tQ[t]", c1, Duration::from_secs(1)),
        ("Eulerian idempotents", c2, Duration::from_secs(30)),
        ("Hodge consistency", c3, Duration::from_secs(300)),
        ("A[t] bigrading", c4, Duration::from_secs(300)),
        ("two-path NK", c5, Duration::from_secs(300)),
        ("curve tables", c6, Duration::from_secs(60)),
        ("de Rham exactness", c7, Duration::from_secs(300)),
        ("SBI and S = 0", c8, Duration::from_secs(300)),
        ("Čech exactness", c9, Duration::from_secs(300)),
        ("base change to Q(u)", c10, Duration::from_secs(300)),
        ("N²K biconditional", c11, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > *budget => Err(format!("{d}; took {took:.2?}, budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS  {name}: {d} ({took:.2?})", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e} ({took:.2?})", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
