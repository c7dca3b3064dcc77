//! Acceptance criteria, run in sequence so that each timing is measured alone.
//! One `PASS`/`FAIL` line is printed per criterion.

use std::time::{Duration, Instant};

use num_complex::Complex64 as C;

use superq_core::gold::{self, GoldMatrix};
use superq_core::lattice::{build_l_prefundamental, solve_l_by_intertwining};
use superq_core::pit::{prove, GoldAgreement, Identity, PitConfig, Point, RootVectorAgreement, Verdict};
use superq_core::repr_affine::{build_r_closed_form, FqMode};
use superq_core::repr_osp::{build_r_osp, build_w};
use superq_core::scalar::{GaussianRational as G, QParams, Sampler, Scalar};
use superq_core::suite::{run_suite, unit_params, Backend, Preset, Report, RunConfig, Suite};
use superq_core::superlinalg::Sign;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit: Duration) -> Option<String> {
    (elapsed > limit).then(|| format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if let Some(slow) = within(elapsed, limit) {
        o.ok = false;
        o.detail = format!("{}; {slow}", o.detail);
    } else {
        o.detail = format!("{} ({elapsed:.2?})", o.detail);
    }
    o
}

fn suite(suites: &[Suite], backend: Backend, tweak: impl FnOnce(&mut RunConfig)) -> Report {
    let mut cfg = RunConfig {
        suites: suites.to_vec(),
        backend,
        ..RunConfig::preset(Preset::Fast)
    };
    tweak(&mut cfg);
    run_suite(&cfg).expect("valid config")
}

fn all_verdict(r: &Report, family: &str, v: Verdict) -> (bool, usize) {
    let recs: Vec<_> = r.family(family).collect();
    (!recs.is_empty() && recs.iter().all(|x| x.verdict == v), recs.len())
}

fn gold_osp() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..5 {
        let p = QParams::new(Sampler::default().sample(seed).unwrap().qs).unwrap();
        for (s, g) in [(1, GoldMatrix::OspW1W1), (2, GoldMatrix::OspW2W2)] {
            let w = build_w(s, Sign::Plus, &p).unwrap();
            let r = build_r_osp(&w, &w).unwrap();
            let one = G::one();
            if r.matrix != g.build(&p, &one, &one).unwrap() {
                failures.push(format!("{} seed {seed}", g.name()));
            }
        }
    }
    for g in [GoldMatrix::OspW1W1, GoldMatrix::OspW2W2] {
        let o = prove(&GoldAgreement { gold: g }, &PitConfig::default());
        if o.verdict != Verdict::ProvedExact {
            failures.push(format!("{}: {:?}", g.name(), o.verdict));
        }
    }
    outcome(failures.is_empty(), format!("4×4 and 9×9 exact at 5 points and proved; failures {failures:?}"))
}

fn gold_affine() -> Outcome {
    let mut failures = Vec::new();
    for (s, g) in [(1, GoldMatrix::AffineHalf), (2, GoldMatrix::AffineOne)] {
        let id = GoldAgreement { gold: g };
        for pt in id.sampler().sample_many(11, 5).unwrap() {
            let p = Point::exact(&pt).unwrap();
            let (l1, l2) = (&p.lambdas[0], &p.lambdas[1]);
            let r = build_r_closed_form(s, Sign::Plus, l1, s, Sign::Plus, l2, FqMode::Omitted, &p.params).unwrap();
            let gold = match g {
                GoldMatrix::AffineHalf => gold::affine_half(&p.params, l1, l2).unwrap(),
                _ => gold::affine_one(&p.params, l1, l2).unwrap(),
            };
            if r.product().unwrap() != gold {
                failures.push(format!("{} at {pt}", g.name()));
            }
        }
    }
    outcome(failures.is_empty(), format!("R_(1/2,1/2) and R_(1,1) at 5 points each; failures {failures:?}"))
}

fn relation_suite() -> Outcome {
    let r = suite(&[Suite::Osp, Suite::Affine], Backend::Exact, |_| {});
    let mut ok = r.summary.failed == 0;
    let mut counts = Vec::new();
    for fam in [
        "osp.relations",
        "osp.casimir",
        "osp.intertwining",
        "osp.ybe",
        "affine.relations",
        "affine.serre",
        "affine.intertwining",
        "affine.ybe",
    ] {
        let (proved, n) = all_verdict(&r, fam, Verdict::ProvedExact);
        ok &= proved;
        counts.push(format!("{fam}:{n}"));
    }
    outcome(ok, format!("{} checks, failed {}; {}", r.summary.total, r.summary.failed, counts.join(" ")))
}

fn root_vectors() -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for s in 0..=4 {
        for sign in [Sign::Plus, Sign::Minus] {
            let o = prove(&RootVectorAgreement { s, sign, nmax: 4 }, &PitConfig::default());
            total += 1;
            if o.verdict != Verdict::ProvedExact {
                bad.push(format!("s={s}{}: {:?} {:?}", sign.symbol(), o.verdict, o.witness));
            }
        }
    }
    outcome(bad.is_empty(), format!("{total} families with n ≤ 4 proved; failures {bad:?}"))
}

fn cross_construction() -> Outcome {
    let r = suite(&[Suite::Affine], Backend::Numeric, |c| c.nmax = 8);
    let (agree, n) = all_verdict(&r, "affine.product", Verdict::PassedNumeric);
    let (conv, m) = all_verdict(&r, "affine.product-convergence", Verdict::PassedNumeric);
    let worst_err = r.family("affine.product").map(|x| x.residuals[0].value).fold(0.0, f64::max);
    let ratios: Vec<String> = r
        .family("affine.product-convergence")
        .map(|x| {
            let rs = x.details["ratios"].as_array().unwrap();
            let w = rs.iter().map(|v| v.as_f64().unwrap()).fold(0.0, f64::max);
            format!("{w:.4}")
        })
        .collect();
    outcome(
        agree && conv,
        format!("{n} pairs, max error {worst_err:.2e} at nmax=8; {m} worst ratios {ratios:?} vs bound {:.4}", 1.0 / 16.0 + 0.05),
    )
}

fn grothendieck() -> Outcome {
    let r = suite(&[Suite::Grothendieck, Suite::Prefund], Backend::Exact, |_| {});
    let ids: Vec<_> = r.records.iter().filter(|x| x.check_id.starts_with("grothendieck.")).collect();
    let proved = !ids.is_empty() && ids.iter().all(|x| x.verdict == Verdict::ProvedExact);
    let (dec, n) = all_verdict(&r, "prefund.decompose", Verdict::PassedNumeric);
    let levels_ok = r.family("prefund.decompose").all(|x| x.details["max_level"].as_u64() == Some(8));
    outcome(
        proved && dec && levels_ok && r.summary.failed == 0,
        format!("{} identities exact; decomposition s=0..3 ({n}) exact at 3 points for k+m ≤ 8", ids.len()),
    )
}

fn functional() -> Outcome {
    let r = suite(&[Suite::Functional], Backend::Both, |c| {
        c.fock_levels = 28;
        c.nmax = 12;
        c.fq_order = 40;
        c.twist = 0.5;
        c.lambda_ratio = 1.0 / 6.0;
        c.tolerance = 1e-6;
        c.sites = 1;
    });
    let (fusion, _) = all_verdict(&r, "functional.structural-fusion", Verdict::PassedNumeric);
    let rel = r.family("functional.relations").next().expect("relations record");
    let names: Vec<&str> = rel.residuals.iter().map(|x| x.name.as_str()).collect();
    let covered = ["tq+", "tq-", "wronskian", "fusion(s=1)", "fusion(s=2)", "t2", "ts-sum+(s=3)", "ts-sum-(s=3)"]
        .iter()
        .all(|n| names.contains(n));
    let certs = rel.details["certificates"].as_array().map_or(0, Vec::len);
    let worst = rel.residuals.iter().map(|x| x.value).fold(0.0, f64::max);
    outcome(
        fusion && rel.verdict == Verdict::PassedNumeric && covered && certs == 2 && r.summary.failed == 0,
        format!("structural fusion s=1,2 exact; {} relations max residual {worst:.2e}; {certs} certificates", names.len()),
    )
}

fn oracle() -> Outcome {
    let p: QParams<C> = unit_params();
    let (lam, nu) = (C::new(0.2, 0.0), C::new(1.0, 0.0));
    let mut ok = true;
    let mut parts = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let sol = solve_l_by_intertwining(sign, &lam, &nu, 24, true, 1e-10, &p).unwrap();
        let l = build_l_prefundamental(sign, &lam, &nu, 24, 10, &p).unwrap();
        let t = 2 * sol.trusted_levels;
        let mut diff: f64 = 0.0;
        for r in 0..t {
            for c in 0..t {
                diff = diff.max((sol.l.get(r, c) - l.get(r, c)).norm());
            }
        }
        let blocks = sol.nullity == 1 && sol.block_dims.iter().all(|(_, d)| *d == 1);
        ok &= diff < 1e-8 && blocks;
        parts.push(format!("{}: diff {diff:.2e}, nullity {}, {} blocks", sign.symbol(), sol.nullity, sol.block_dims.len()));
    }
    outcome(ok, parts.join("; "))
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("1 osp gold matrices", Duration::from_secs(1), gold_osp),
        ("2 affine gold matrices", Duration::from_secs(5), gold_affine),
        ("3 exact relation suite", Duration::from_secs(120), relation_suite),
        ("4 root-vector equivalence", Duration::MAX, root_vectors),
        ("5 product vs closed form", Duration::MAX, cross_construction),
        ("6 grothendieck and decomposition", Duration::MAX, grothendieck),
        ("7 functional relations", Duration::from_secs(600), functional),
        ("8 intertwining oracle", Duration::MAX, oracle),
    ];
    let mut failed = Vec::new();
    for (name, limit, f) in criteria {
        let o = timed(limit, f);
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
