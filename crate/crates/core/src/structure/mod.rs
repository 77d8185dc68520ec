//! Characteristic and structural subgroups: center, Sylow subgroups, the
//! radical series, the Thompson subgroup, abelian invariants, commutators
//! and complements.

mod abelian;
mod complement;
mod radical;
mod sylow;
mod thompson;

use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{centralizer_of, commutator_subgroup, PermGroup};
use crate::perm::Permutation;

pub use abelian::{abelian_decomp, AbelianDecomp};
pub use complement::{complement_search, Complement, ComplementRefutation};
pub use radical::{p_core, p_prime_core, radical_series, RadicalSeries};
pub use sylow::{is_sylow, sylow};
pub use thompson::{thompson, ThompsonData};

pub fn center(g: &PermGroup) -> PermGroup {
    if g.is_abelian() {
        return g.clone();
    }
    centralizer_of(g, g)
}

/// `[A, G]`, for `A` normalized by `G`.
pub fn commutator_with(a: &PermGroup, g: &PermGroup) -> Result<PermGroup> {
    if a.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: a.degree(),
        });
    }
    if !a.is_normalized_by(g) {
        return Err(Error::NotNormal("commutator_with: A is not normalized by G".into()));
    }
    commutator_subgroup(a, g)
}

/// Least element of each conjugacy class whose members satisfy `keep`
/// (a class function), in increasing order.
pub fn class_representatives(
    g: &PermGroup,
    keep: impl Fn(&Permutation) -> bool,
) -> Result<Vec<Permutation>> {
    Caps::check(
        "fusion_group_order",
        Caps::global().fusion_group_order,
        "conjugacy class enumeration",
        g.order(),
    )?;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for x in g.sorted_elements() {
        if seen.contains(&x) || !keep(&x) {
            continue;
        }
        seen.extend(g.conjugacy_orbit(&x));
        reps.push(x);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::closure;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    #[test]
    fn centers() {
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let z = center(&d8);
        assert_eq!(z.order(), 2);
        let naive = closure(&d8)
            .into_iter()
            .filter(|x| d8.generators().iter().all(|g| g.commutes_with(x)))
            .count();
        assert_eq!(naive, 2);
        let c = grp(5, &["(1,2,3)(4,5)"]);
        assert_eq!(center(&c), c);
        assert!(center(&grp(5, &["(1,2,3,4,5)", "(1,2)"])).is_trivial());
    }

    #[test]
    fn commutators_with() {
        let a4 = grp(4, &["(1,2,3)", "(1,2)(3,4)"]);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(commutator_with(&v4, &a4).unwrap(), v4);
        assert!(commutator_with(&v4, &v4).unwrap().is_trivial());
        let c2 = grp(4, &["(1,2)"]);
        assert!(matches!(commutator_with(&c2, &a4), Err(Error::NotNormal(_))));
    }

    #[test]
    fn class_counts() {
        let s5 = grp(5, &["(1,2,3,4,5)", "(1,2)"]);
        assert_eq!(class_representatives(&s5, |_| true).unwrap().len(), 7);
        let a5 = grp(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert_eq!(class_representatives(&a5, |_| true).unwrap().len(), 5);
        assert_eq!(class_representatives(&a5, |x| x.order() % 2 == 1).unwrap().len(), 4);
    }
}
