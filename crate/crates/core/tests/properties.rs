//! Property tests over random permutation groups of small degree.

use std::collections::HashSet;

use proptest::prelude::*;

use sylsplit::fusion::{op_fusion, z_fusion, FusionContext};
use sylsplit::group::{normalizer, p_part, prime_divisors, subgroup_intersection, PermGroup};
use sylsplit::structure::{abelian_decomp, center, radical_series, sylow};
use sylsplit::theorem::{classify_case, verify_wgs, CaseTag, SylowSetup, Verdict};
use sylsplit::transfer::ConjugationModule;
use sylsplit::weak_closure::weakly_closed_subgroup;
use sylsplit::Permutation;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// A random group on 3..=7 points with 1..=3 generators, and a prime of its order.
fn group_and_prime() -> impl Strategy<Value = (PermGroup, u64, usize)> {
    (3usize..=7)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(perm(n), 1..=3), any::<usize>()))
        .prop_map(|(n, gens, pick)| {
            let g = PermGroup::new(n, gens).unwrap();
            let primes = prime_divisors(g.order());
            let p = if primes.is_empty() { 2 } else { primes[pick % primes.len()] };
            (g, p, pick)
        })
}

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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_agrees_with_closure((g, p, _) in group_and_prime()) {
        let all = naive_elements(&g);
        prop_assert_eq!(all.len() as u64, g.order());
        prop_assert!(g.generators().iter().all(|x| g.contains(x)));
        let s = sylow(&g, p).unwrap();
        prop_assert_eq!(s.order(), p_part(g.order(), p));
        prop_assert!(s.is_subgroup_of(&g));
    }

    /// `tr` is a homomorphism on `C_M(K)`, independent of the transversal,
    /// and the `|H:K|` power map on `C_M(H)`.
    #[test]
    fn transfer_laws((g, p, pick) in group_and_prime()) {
        let s = sylow(&g, p).unwrap();
        let m = center(&s);
        let h = normalizer(&g, &m);
        let module = ConjugationModule::conjugation(m.clone(), h.clone()).unwrap();
        let h_elements = h.sorted_elements();
        let x = &h_elements[pick % h_elements.len()];
        for k in [s.clone(), PermGroup::new(g.degree(), vec![x.clone()]).unwrap()] {
            let domain = module.fixed_points(&k).unwrap().sorted_elements();
            let tr = |z: &Permutation| module.transfer(&k, z).unwrap();
            for a in &domain {
                for b in &domain {
                    prop_assert_eq!(tr(&a.then(b)), tr(a).then(&tr(b)));
                }
            }
            let reps = h.left_transversal(&k).unwrap();
            let k_elements = k.sorted_elements();
            let moved: Vec<Permutation> = reps
                .iter()
                .enumerate()
                .map(|(i, t)| t.then(&k_elements[(i + pick) % k_elements.len()]))
                .rev()
                .collect();
            for z in &domain {
                prop_assert_eq!(module.transfer_with(&k, z, &moved).unwrap(), tr(z));
            }
            let index = (h.order() / k.order()) as i64;
            for z in module.fixed_points(&h).unwrap().sorted_elements() {
                prop_assert_eq!(tr(&z), z.pow(index));
            }
        }
    }

    /// `W_G(S)` from its definition, the `Z_p^*` identity and `Z(F)`.
    #[test]
    fn weak_closure_identities((g, p, _) in group_and_prime()) {
        let s = sylow(&g, p).unwrap();
        let zs = center(&s);
        let w = weakly_closed_subgroup(&g, &s).unwrap();
        let all = naive_elements(&g);
        let s_set: HashSet<Permutation> = s.sorted_elements().into_iter().collect();
        let naive: Vec<Permutation> = s_set
            .iter()
            .filter(|x| all.iter().all(|c| { let y = x.conjugate(c); y == **x || !s_set.contains(&y) }))
            .cloned()
            .collect();
        prop_assert_eq!(naive.len() as u64, w.order());
        prop_assert!(naive.iter().all(|x| w.contains(x) && zs.contains(x)));
        let r = radical_series(&g, p).unwrap();
        prop_assert_eq!(&subgroup_intersection(&zs, &r.z_p_star).unwrap(), &w);
        let ctx = FusionContext::with_sylow(g.clone(), s.clone(), p).unwrap();
        prop_assert_eq!(&z_fusion(&ctx).unwrap().center, &w);
    }

    #[test]
    fn hypotheses_imply_splitting((g, p, _) in group_and_prime()) {
        let setup = SylowSetup::new(g, p).unwrap();
        let case = classify_case(&setup).unwrap();
        if case != CaseTag::None {
            let r = verify_wgs("random", &setup).unwrap();
            prop_assert_eq!(r.verdict, Verdict::Verified);
            prop_assert!(r.witness.unwrap().holds());
        }
    }

    /// `O_p(F)` is normal in `S` and lies between `S ∩ O_{p',p}(G)` and `S`.
    #[test]
    fn fusion_core_bounds((g, p, _) in group_and_prime()) {
        let ctx = FusionContext::new(g.clone(), p).unwrap();
        let op = op_fusion(&ctx).unwrap();
        prop_assert!(op.is_normal_in(ctx.sylow()));
        let r = radical_series(&g, p).unwrap();
        prop_assert!(r.o_p.is_subgroup_of(&op));
        prop_assert!(subgroup_intersection(ctx.sylow(), &r.o_p_prime_p).unwrap().is_subgroup_of(&op));
    }

    #[test]
    fn invariant_factors_certify((g, p, _) in group_and_prime()) {
        let zs = center(&sylow(&g, p).unwrap());
        for a in [center(&g), zs] {
            let d = abelian_decomp(&a).unwrap();
            prop_assert_eq!(d.order(), a.order());
            prop_assert!(d.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0));
            prop_assert!(d.verify(&a).is_ok());
        }
    }
}
