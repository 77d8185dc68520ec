//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Every comparison is exact (tolerance 0); runtime limits are wall-clock.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use sylsplit::catalog::{load_catalog, GroupFile};
use sylsplit::fusion::{analyze_zf, op_fusion, z_fusion, FusionContext};
use sylsplit::group::{centralizer, normalizer, prime_divisors, PermGroup};
use sylsplit::structure::{center, complement_search, sylow, Complement};
use sylsplit::theorem::{
    build_a6_example, classify_case, cross_checks, verify_wgs, CaseTag, CheckStatus, SylowSetup, Verdict,
    A6_EXAMPLE_GENERATORS, A6_EXAMPLE_NAME, CHECK_CONTROL, CHECK_NORMAL_SYLOW, CHECK_QUOTIENT, CHECK_ZP_STAR,
};
use sylsplit::transfer::ConjugationModule;
use sylsplit::Permutation;

const SEED: u64 = 0x5eed_2b17;

type Outcome = Result<String, String>;

fn catalog() -> Vec<GroupFile> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    load_catalog(&dir).expect("shipped catalog loads")
}

/// Every `(name, G, p)` of the catalog.
fn pairs(catalog: &[GroupFile]) -> Vec<(String, PermGroup, u64)> {
    catalog
        .iter()
        .flat_map(|e| {
            let g = e.to_group().expect("catalog group builds");
            prime_divisors(g.order())
                .into_iter()
                .map(move |p| (e.name.clone(), g.clone(), p))
        })
        .collect()
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn c1_counterexample() -> Outcome {
    let start = Instant::now();
    let ex = build_a6_example().map_err(err("example"))?;
    let setup = &ex.setup;
    ensure(setup.g.order() == 1440, || format!("|G| = {}", setup.g.order()))?;
    ensure(setup.s.order() == 32, || format!("|S| = {}", setup.s.order()))?;
    let r = &ex.report;
    ensure(r.zs_type.invariant_factors == [2, 4], || {
        format!("Z(S) invariant factors {:?}", r.zs_type.invariant_factors)
    })?;
    let a = Permutation::parse_cycles(A6_EXAMPLE_GENERATORS[2], 10).map_err(err("a"))?;
    let a2 = PermGroup::new(10, vec![a.pow(2)]).map_err(err("a²"))?;
    ensure(r.w == a2, || format!("W_G(S) = {:?}", r.w))?;
    let ctx = FusionContext::with_sylow(setup.g.clone(), setup.s.clone(), 2).map_err(err("fusion"))?;
    let zf = z_fusion(&ctx).map_err(err("Z(F)"))?.center;
    ensure(zf == a2, || format!("Z(F) = {zf:?}"))?;
    let scanned = match complement_search(&r.zs, &r.w).map_err(err("complement"))? {
        Complement::Found(b) => return Err(format!("complement found: {b:?}")),
        Complement::Refuted(c) => c,
    };
    ensure(r.verdict == Verdict::Counterexample, || format!("verdict {}", r.verdict))?;
    within(start, Duration::from_secs(10), "example")?;
    Ok(format!(
        "|G|=1440 |S|=32 Z(S)=[2,4] W=Z(F)=<a^2> subgroups scanned={} candidates refuted={} in {:.2?}",
        scanned.subgroups_scanned,
        scanned.candidates.len(),
        start.elapsed()
    ))
}

fn c2_sweep(pairs: &[(String, PermGroup, u64)]) -> Outcome {
    let start = Instant::now();
    let mut verified = 0;
    for (name, g, p) in pairs {
        let setup = SylowSetup::new(g.clone(), *p).map_err(err(name))?;
        if classify_case(&setup).map_err(err(name))? == CaseTag::None {
            continue;
        }
        let r = verify_wgs(name, &setup).map_err(err(name))?;
        let w = r.witness.as_ref().ok_or_else(|| format!("{name} p={p}: no certificate"))?;
        ensure(r.verdict == Verdict::Verified && w.holds(), || {
            format!(
                "{name} p={p}: verdict {} product={} meet={} image={}",
                r.verdict, w.product_ok, w.intersection_trivial, w.image_is_w
            )
        })?;
        verified += 1;
    }
    within(start, Duration::from_secs(300), "sweep")?;
    Ok(format!("{verified} pairs certified, 0 failures in {:.2?}", start.elapsed()))
}

/// `H = N_G(Z(S))` acting on `M = Z(S)`; `K` runs over `S`, a few cyclic
/// subgroups of `H` and, for small `H`, the trivial group.
fn c3_power_map(pairs: &[(String, PermGroup, u64)]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut triples = 0usize;
    let mut shuffles = 0usize;
    for (name, g, p) in pairs {
        let s = sylow(g, *p).map_err(err(name))?;
        let m = center(&s);
        let h = normalizer(g, &m);
        let module = ConjugationModule::conjugation(m.clone(), h.clone()).map_err(err(name))?;
        let fixed = module.fixed_points(&h).map_err(err(name))?.sorted_elements();
        let h_elements = h.sorted_elements();
        let mut ks = vec![s.clone()];
        for _ in 0..2 {
            let x = h_elements.choose(&mut rng).expect("non-empty");
            ks.push(PermGroup::new(g.degree(), vec![x.clone()]).map_err(err(name))?);
        }
        if h.order() <= 2000 {
            ks.push(PermGroup::trivial(g.degree()));
        }
        for k in &ks {
            let index = (h.order() / k.order()) as i64;
            let reps = h.left_transversal(k).map_err(err(name))?;
            let k_elements = k.sorted_elements();
            for z in &fixed {
                let t = module.transfer(k, z).map_err(err(name))?;
                ensure(t == z.pow(index), || format!("{name} p={p}: tr({z}) = {t}, expected {}", z.pow(index)))?;
                triples += 1;
                // t_i ↦ t_i k_i, in shuffled order
                let mut shuffled: Vec<Permutation> = reps
                    .iter()
                    .map(|t| t.then(k_elements.choose(&mut rng).expect("non-empty")))
                    .collect();
                shuffled.shuffle(&mut rng);
                let t2 = module.transfer_with(k, z, &shuffled).map_err(err(name))?;
                ensure(t2 == t, || format!("{name} p={p}: shuffled transversal changed tr({z})"))?;
                shuffles += 1;
            }
        }
    }
    ensure(triples >= 100, || format!("only {triples} triples"))?;
    Ok(format!("{triples} triples tr(res m) = m^|H:K|, {shuffles} shuffled transversals agree"))
}

fn check_status(
    pairs: &[(String, PermGroup, u64)],
    check: &str,
    applies: impl Fn(&SylowSetup) -> bool,
) -> Result<usize, String> {
    let mut n = 0;
    for (name, g, p) in pairs {
        let setup = SylowSetup::new(g.clone(), *p).map_err(err(name))?;
        if !applies(&setup) {
            continue;
        }
        let checks = cross_checks(&setup).map_err(err(name))?;
        let c = checks
            .iter()
            .find(|c| c.name == check)
            .ok_or_else(|| format!("{name} p={p}: no {check} check"))?;
        ensure(c.status == CheckStatus::Pass, || format!("{name} p={p}: {:?} ({})", c.status, c.detail))?;
        n += 1;
    }
    Ok(n)
}

fn c4_zp_star(pairs: &[(String, PermGroup, u64)]) -> Outcome {
    let n = check_status(pairs, CHECK_ZP_STAR, |_| true)?;
    Ok(format!("W_G(S) = Z(S) ∩ Z_p*(G) on all {n} pairs"))
}

fn c5_control(pairs: &[(String, PermGroup, u64)]) -> Outcome {
    let n = check_status(pairs, CHECK_CONTROL, |s| s.p % 2 == 1)?;
    Ok(format!("W_G(S) = W_N(S) = O_p(Z(N)), N = N_G(J(S)), on all {n} odd pairs"))
}

fn c6_normal_sylow(pairs: &[(String, PermGroup, u64)]) -> Outcome {
    let n = check_status(pairs, CHECK_NORMAL_SYLOW, |s| s.s.is_normal_in(&s.g))?;
    ensure(n > 0, || "no pair with a normal Sylow subgroup".into())?;
    Ok(format!("Z(S) = (Z(S) ∩ Z(G)) × [Z(S), G] on all {n} normal-Sylow pairs"))
}

fn c7_fusion(pairs: &[(String, PermGroup, u64)]) -> Outcome {
    let (mut verified, mut counterexamples, mut other) = (0, 0, 0);
    for (name, g, p) in pairs {
        let ctx = FusionContext::new(g.clone(), *p).map_err(err(name))?;
        let zf = z_fusion(&ctx).map_err(err(name))?.center;
        let w = sylsplit::weak_closure::weakly_closed_subgroup(g, ctx.sylow()).map_err(err(name))?;
        ensure(zf == w, || format!("{name} p={p}: |Z(F)| = {} but |W_G(S)| = {}", zf.order(), w.order()))?;
        let op = op_fusion(&ctx).map_err(err(name))?;
        let r = analyze_zf(name, &ctx).map_err(err(name))?;
        let is_example = name == A6_EXAMPLE_NAME && *p == 2;
        if *p % 2 == 1 || ctx.sylow_center().is_subgroup_of(&op) {
            ensure(r.verdict == Verdict::Verified, || format!("{name} p={p}: verdict {}", r.verdict))?;
            verified += 1;
        } else {
            other += 1;
        }
        ensure((r.verdict == Verdict::Counterexample) == is_example, || {
            format!("{name} p={p}: verdict {}", r.verdict)
        })?;
        counterexamples += usize::from(is_example);
    }
    ensure(counterexamples == 1, || "the example at p = 2 was not reached".into())?;
    Ok(format!(
        "Z(F) = W_G(S) on {} pairs; {verified} verified, counterexample only at {A6_EXAMPLE_NAME} p=2, {other} outside the hypotheses",
        pairs.len()
    ))
}

fn c8_quotient(pairs: &[(String, PermGroup, u64)]) -> Outcome {
    let mut with_core = Vec::new();
    for (name, g, p) in pairs {
        let setup = SylowSetup::new(g.clone(), *p).map_err(err(name))?;
        if setup.radicals().map_err(err(name))?.o_p_prime.is_trivial() {
            continue;
        }
        let checks = cross_checks(&setup).map_err(err(name))?;
        let c = checks.iter().find(|c| c.name == CHECK_QUOTIENT).ok_or("no quotient check")?;
        ensure(c.status == CheckStatus::Pass, || format!("{name} p={p}: {}", c.detail))?;
        with_core.push(format!("{name}@{p}"));
    }
    ensure(with_core.iter().any(|s| s == "sl2-3@3"), || "sl2-3 at p = 3 not covered".into())?;
    Ok(format!("bijection Z(S) → Z(S̄) carrying W onto W on {} pairs with O_p'(G) ≠ 1", with_core.len()))
}

/// All elements by closing the generators under multiplication.
fn naive_elements(g: &PermGroup) -> HashSet<Permutation> {
    let id = g.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        for x in g.generators() {
            let y = queue[i].then(x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
        i += 1;
    }
    seen
}

fn random_perm(rng: &mut StdRng, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("bijection")
}

fn c9_substrate(catalog: &[GroupFile]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let (mut groups, mut probes) = (0, 0);
    for entry in catalog {
        let g = entry.to_group().map_err(err(&entry.name))?;
        if g.order() > 5000 {
            continue;
        }
        let name = &entry.name;
        let all = naive_elements(&g);
        ensure(all.len() as u64 == g.order(), || format!("{name}: order {} vs {}", g.order(), all.len()))?;
        ensure(all.iter().all(|x| g.contains(x)), || format!("{name}: element not recognized"))?;
        for _ in 0..200 {
            let x = random_perm(&mut rng, g.degree());
            ensure(g.contains(&x) == all.contains(&x), || format!("{name}: membership of {x}"))?;
            probes += 1;
        }
        let elements: Vec<&Permutation> = all.iter().collect();
        for _ in 0..4 {
            let x = *elements.choose(&mut rng).expect("non-empty");
            let c = centralizer(&g, x);
            let naive = all.iter().filter(|y| y.commutes_with(x)).count();
            ensure(c.order() as usize == naive && c.generators().iter().all(|y| y.commutes_with(x)), || {
                format!("{name}: centralizer of {x}")
            })?;
            probes += 1;
        }
        for p in prime_divisors(g.order()) {
            let s = sylow(&g, p).map_err(err(name))?;
            let n = normalizer(&g, &s);
            let naive = all.iter().filter(|y| s.conjugate(y) == s).count();
            ensure(n.order() as usize == naive && n.is_subgroup_of(&g), || format!("{name}: N(S_{p})"))?;
            probes += 1;
        }
        groups += 1;
    }
    Ok(format!("{groups} groups of order ≤ 5000, {probes} order/membership/centralizer/normalizer probes agree"))
}

fn main() -> ExitCode {
    let catalog = catalog();
    let pairs = pairs(&catalog);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("counterexample reproduction", Box::new(c1_counterexample)),
        ("splitting sweep", Box::new(|| c2_sweep(&pairs))),
        ("transfer power map", Box::new(|| c3_power_map(&pairs))),
        ("Z_p* identity", Box::new(|| c4_zp_star(&pairs))),
        ("control of weak closure", Box::new(|| c5_control(&pairs))),
        ("normal Sylow splitting", Box::new(|| c6_normal_sylow(&pairs))),
        ("fusion agreement", Box::new(|| c7_fusion(&pairs))),
        ("quotient naturality", Box::new(|| c8_quotient(&pairs))),
        ("substrate oracle", Box::new(|| c9_substrate(&catalog))),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{label}] tol=0 ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL [{label}] tol=0 ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
