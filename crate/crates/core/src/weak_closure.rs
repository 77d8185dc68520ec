//! Weakly closed elements: `x ∈ S` whose only `G`-conjugate inside `S` is `x`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{prime_divisors, PermGroup};
use crate::perm::Permutation;
use crate::structure::{center, is_sylow};

/// True when the conjugation orbit of `x` under `G` meets `S` only in `x`.
pub fn is_weakly_closed(g: &PermGroup, s: &PermGroup, x: &Permutation) -> Result<bool> {
    if !s.contains(x) {
        return Err(Error::NotMember(format!("{x} is not in S")));
    }
    Caps::check(
        "fusion_group_order",
        Caps::global().fusion_group_order,
        "conjugation orbit",
        g.order(),
    )?;
    Ok(orbit_meets_s_only_in_x(g, s, x))
}

/// Breadth-first over the orbit, stopping at the first other conjugate in `S`.
fn orbit_meets_s_only_in_x(g: &PermGroup, s: &PermGroup, x: &Permutation) -> bool {
    let mut seen: HashSet<Permutation> = HashSet::from([x.clone()]);
    let mut queue = vec![x.clone()];
    let mut i = 0;
    while i < queue.len() {
        for h in g.generators() {
            let y = queue[i].conjugate(h);
            if seen.insert(y.clone()) {
                if s.contains(&y) {
                    return false;
                }
                queue.push(y);
            }
        }
        i += 1;
    }
    true
}

fn check_sylow(g: &PermGroup, s: &PermGroup) -> Result<()> {
    if s.is_trivial() && s.degree() == g.degree() {
        return Ok(());
    }
    let p = prime_divisors(s.order()).first().copied().unwrap_or(2);
    if prime_divisors(s.order()).len() > 1 || !is_sylow(s, g, p) {
        return Err(Error::InvalidArgument(format!(
            "S (order {}) is not a Sylow subgroup of G (order {})",
            s.order(),
            g.order()
        )));
    }
    Ok(())
}

/// `W_G(S)`: the weakly closed elements of `S`, all of which lie in `Z(S)`.
///
/// Tests each element of `Z(S)` by orbit enumeration, then checks that the
/// resulting set is closed under products and inverses before returning it.
pub fn weakly_closed_subgroup(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    check_sylow(g, s)?;
    Caps::check(
        "fusion_group_order",
        Caps::global().fusion_group_order,
        "conjugation orbit",
        g.order(),
    )?;
    let z = center(s);
    let members: Vec<Permutation> = z
        .sorted_elements()
        .into_par_iter()
        .filter(|x| orbit_meets_s_only_in_x(g, s, x))
        .collect();
    let set: HashSet<&Permutation> = members.iter().collect();
    let closed = members.iter().all(|a| {
        set.contains(&a.inverse()) && members.iter().all(|b| set.contains(&a.then(b)))
    });
    if !closed {
        return Err(Error::internal(format!(
            "weakly closed elements of Z(S) do not form a subgroup ({} elements)",
            members.len()
        )));
    }
    let w = PermGroup::from_elements(g.degree(), &members)?;
    if w.order() as usize != members.len() {
        return Err(Error::internal("weakly closed set and its span differ in size"));
    }
    Ok(w)
}

/// Weakly closed elements of all of `S`, for checking that none lies outside `Z(S)`.
pub fn weakly_closed_elements_of_s(g: &PermGroup, s: &PermGroup) -> Result<Vec<Permutation>> {
    check_sylow(g, s)?;
    Ok(s.sorted_elements()
        .into_par_iter()
        .filter(|x| orbit_meets_s_only_in_x(g, s, x))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugator;
    use crate::structure::sylow;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    fn perm(s: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(s, degree).unwrap()
    }

    fn example() -> (PermGroup, PermGroup) {
        (
            grp(10, &["(1,2,3,4,5)", "(4,5,6)", "(5,6)(7,8,9,10)"]),
            grp(10, &["(1,3)(2,4)", "(1,2)(5,6)", "(5,6)(7,8,9,10)"]),
        )
    }

    #[test]
    fn example_elements() {
        let (g, s) = example();
        assert!(is_weakly_closed(&g, &s, &g.identity()).unwrap());
        let z = perm("(1,2)(3,4)", 10);
        assert!(!is_weakly_closed(&g, &s, &z).unwrap());
        let c = conjugator(&g, &z, &perm("(1,3)(2,4)", 10)).unwrap();
        assert_eq!(z.conjugate(&c), perm("(1,3)(2,4)", 10));
        assert!(is_weakly_closed(&g, &s, &perm("(7,9)(8,10)", 10)).unwrap());
        assert!(is_weakly_closed(&g, &s, &perm("(1,2,3)", 10)).is_err());
    }

    #[test]
    fn example_subgroup() {
        let (g, s) = example();
        let w = weakly_closed_subgroup(&g, &s).unwrap();
        assert_eq!(w.order(), 2);
        assert!(w.contains(&perm("(7,9)(8,10)", 10)));
        let all = weakly_closed_elements_of_s(&g, &s).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn s4_and_p_groups() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let d8 = sylow(&s4, 2).unwrap();
        assert!(weakly_closed_subgroup(&s4, &d8).unwrap().is_trivial());
        assert_eq!(weakly_closed_subgroup(&d8, &d8).unwrap(), center(&d8));
        let c2 = grp(4, &["(1,2)"]);
        assert!(weakly_closed_subgroup(&s4, &c2).is_err());
    }

    #[test]
    fn a5_involutions_fuse() {
        let a5 = grp(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let s = sylow(&a5, 2).unwrap();
        assert!(weakly_closed_subgroup(&a5, &s).unwrap().is_trivial());
    }
}
