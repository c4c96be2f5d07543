//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.
//!
//! Exits nonzero if any criterion fails. Criteria that cannot hold are still
//! checked as stated.

mod common;

use std::time::{Duration, Instant};

use common::{check_duality, dmr0_dim_by_orthogonality};
use dshuffle::series::{
    dmr0_membership, exp_star, stabilizer_check, tilde_dmr0_factor, TruncSeries,
};
use dshuffle::solver::{
    dmr0_space, stab_space_upper, verify_main_theorem, LieCoordinates, SolverConfig, SourceBound,
};
use dshuffle::suites::{group_laws, lie_laws, paper_deg1, paper_deg2, CheckReport, SuiteConfig};
use dshuffle::word::{xg, X0};
use dshuffle::{GroupSpec, Rational, XPoly, YLetter, YWord};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cyclic(n: u32) -> GroupSpec {
    GroupSpec::cyclic(n).unwrap()
}

fn all_pass(reports: &[CheckReport]) -> Outcome {
    match reports.iter().find(|r| !r.passed) {
        None => Ok(()),
        Some(r) => {
            let f = r.first_failure.as_ref().expect("failed checks carry a witness");
            let at = if f.source == r.check { String::new() } else { format!(" at {}", f.source) };
            Err(format!("{}{at}: expected {}, got {}", r.check, f.expected, f.got))
        }
    }
}

fn within(t: Duration, limit: Duration) -> Outcome {
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {:.2?}, limit {:.0?}", t, limit))
    }
}

/// The degree-2 goldens for a group, with stab_space_upper(2, 1) = {0} in place
/// of the suite's certified-degree check.
fn degree_two(g: &GroupSpec) -> Outcome {
    let cfg = SuiteConfig::new(g.clone());
    let reports = paper_deg2(&cfg).map_err(|e| e.to_string())?;
    let goldens: Vec<_> = reports.into_iter().filter(|r| !r.check.starts_with("stab[2]")).collect();
    let golden = all_pass(&goldens);
    let solver = SolverConfig { source_bound: SourceBound::Fixed(1), ..SolverConfig::default() };
    let k = stab_space_upper(2, g, 1, &solver).map_err(|e| e.to_string())?;
    let zero = if k.is_zero() {
        Ok(())
    } else {
        let coords = LieCoordinates::new(2, g).unwrap();
        let span: Vec<String> = coords.elements(&k).iter().map(|e| e.to_text(g)).collect();
        Err(format!("stab_space_upper(2, 1) = span{{{}}}, expected {{0}}", span.join("; ")))
    };
    match (golden, zero) {
        (Ok(()), Ok(())) => Ok(()),
        (Err(a), Err(b)) => Err(format!("{a}; {b}")),
        (Err(a), _) | (_, Err(a)) => Err(a),
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    degree_two(&GroupSpec::trivial())?;
    within(t.elapsed(), Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    degree_two(&cyclic(2))?;
    within(t.elapsed(), Duration::from_secs(1))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    for n in 1..=6u32 {
        let g = cyclic(n);
        all_pass(&paper_deg1(&SuiteConfig::new(g.clone())).map_err(|e| e.to_string())?)
            .map_err(|e| format!("Z/{n}: {e}"))?;
        let rep = verify_main_theorem(1, &g, &SolverConfig::default()).map_err(|e| e.to_string())?;
        let want = (n as usize - 1).div_ceil(2);
        if rep.dim_dmr0 != want || rep.dim_stab_upper != want + 2 || !rep.certified {
            return Err(format!("Z/{n}: {rep:?}, expected dmr0 dimension {want}"));
        }
    }
    within(t.elapsed(), Duration::from_secs(5))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    for (n, top) in [(1u32, 8usize), (2, 6), (3, 5)] {
        let g = cyclic(n);
        for d in 1..=top {
            let rep = verify_main_theorem(d, &g, &SolverConfig::default()).map_err(|e| format!("Z/{n} n={d}: {e}"))?;
            if !rep.certified {
                return Err(format!("Z/{n} n={d} not certified: {rep:?}"));
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(600))
}

fn criterion_5() -> Outcome {
    for g in [GroupSpec::trivial(), cyclic(2), cyclic(3)] {
        let mut cfg = SuiteConfig::new(g.clone());
        cfg.lie_cases = 100;
        cfg.lyndon_degree = 6;
        all_pass(&lie_laws(&cfg).map_err(|e| e.to_string())?).map_err(|e| format!("{g}: {e}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    check_duality(&GroupSpec::trivial(), 6)?;
    check_duality(&cyclic(2), 4)?;
    Ok(())
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    for (g, d) in [(GroupSpec::trivial(), 8), (cyclic(3), 5)] {
        let mut cfg = SuiteConfig::new(g.clone());
        cfg.trunc = d;
        cfg.group_cases = 50;
        all_pass(&group_laws(&cfg).map_err(|e| e.to_string())?).map_err(|e| format!("{g}, D = {d}: {e}"))?;
    }
    within(t.elapsed(), Duration::from_secs(300))
}

fn criterion_8() -> Outcome {
    let g = GroupSpec::trivial();
    let d = 8;
    let e = |e: dshuffle::AlgebraError| e.to_string();
    let coords = LieCoordinates::new(3, &g).map_err(e)?;
    let space = dmr0_space(3, &g).map_err(e)?;
    if space.dim() != 1 {
        return Err(format!("dim dmr0[3] = {}", space.dim()));
    }
    let psi3 = TruncSeries::new(coords.elements(&space).remove(0), d).map_err(e)?;
    let gg = exp_star(&g, &psi3).map_err(e)?;
    let member = dmr0_membership(&g, &gg);
    if !member.passed() {
        return Err(format!("exp*(psi3) fails membership: {:?}", member.failures[0]));
    }
    let stab = stabilizer_check(&g, &gg, 5).map_err(e)?;
    if !stab.passed() {
        return Err(format!("exp*(psi3) fails the stabilizer check on {}", stab.defects[0].0.render(&g)));
    }

    let ex = |code: u8| TruncSeries::new(XPoly::letter(code), d).and_then(|s| s.exp());
    let g2 = ex(xg(0)).and_then(|l| l.mul(&gg)).and_then(|m| m.mul(&ex(X0)?)).map_err(e)?;
    let stab = stabilizer_check(&g, &g2, 5).map_err(e)?;
    if !stab.passed() {
        return Err(format!("e^x1 g e^x0 fails the stabilizer check on {}", stab.defects[0].0.render(&g)));
    }
    let f = tilde_dmr0_factor(&g, &g2).map_err(e)?;
    if !(f.beta == Rational::one() && f.alpha == Rational::one() && f.core.poly() == gg.poly() && f.is_member()) {
        return Err(format!("factorization gave beta = {}, alpha = {}, member = {}", f.beta, f.alpha, f.is_member()));
    }

    let br = XPoly::letter(X0).commutator(&XPoly::letter(xg(0)));
    let h = exp_star(&g, &TruncSeries::new(br, d).map_err(e)?).map_err(e)?;
    let stab = stabilizer_check(&g, &h, 5).map_err(e)?;
    let y1 = YWord::from_letters(&[YLetter::new(1, 0)]);
    match stab.on(&y1) {
        Some(def) if !def.is_zero() => Ok(()),
        _ => Err(format!("exp*([x0,x1]) shows no defect on y1 ({} defective words)", stab.defects.len())),
    }
}

fn criterion_9() -> Outcome {
    let want = [0, 0, 1, 0, 1, 0, 1, 1];
    let g = GroupSpec::trivial();
    for (i, &w) in want.iter().enumerate() {
        let n = i + 1;
        let solver = dmr0_space(n, &g).map_err(|e| e.to_string())?.dim();
        let oracle = dmr0_dim_by_orthogonality(n);
        if solver != w || oracle != w {
            return Err(format!("n = {n}: expected {w}, solver {solver}, orthogonality route {oracle}"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("degree-2 goldens, trivial group", criterion_1),
        ("degree-2 goldens, Z/2", criterion_2),
        ("degree-1 structure for Z/N, N <= 6", criterion_3),
        ("certification: trivial 1-8, Z/2 1-6, Z/3 1-5", criterion_4),
        ("Lie-law suite", criterion_5),
        ("coproduct duality with the quasi-shuffle oracle", criterion_6),
        ("group-law suite at D = 8 (trivial) and D = 5 (Z/3)", criterion_7),
        ("group-level stabilizer at D = 8", criterion_8),
        ("dmr0 dimensions 0,0,1,0,1,0,1,1 by two routes", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
