use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::PermGroup;

/// Smallest subgroup containing `elements` and closed under conjugation by `over`.
pub fn normal_closure(elements: &[Permutation], over: &PermGroup) -> Result<PermGroup> {
    let mut k = PermGroup::from_elements(over.degree(), elements)?;
    loop {
        let missing: Option<Permutation> = k
            .generators()
            .iter()
            .flat_map(|x| over.generators().iter().map(move |g| x.conjugate(g)))
            .find(|y| !k.contains(y));
        match missing {
            Some(y) => k = k.with_generators(&[y])?,
            None => return Ok(k),
        }
    }
}

/// `[A, B]`: the normal closure in `⟨A, B⟩` of the commutators of generators.
pub fn commutator_subgroup(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let comms: Vec<Permutation> = a
        .generators()
        .iter()
        .flat_map(|x| b.generators().iter().map(move |y| Permutation::commutator(x, y)))
        .filter(|c| !c.is_identity())
        .collect();
    let ambient = a.join(b)?;
    normal_closure(&comms, &ambient)
}

#[derive(Clone, Debug)]
pub struct DerivedSeries {
    /// `G ⊇ G' ⊇ G'' ⊇ …`, ending at the first term equal to its own derived subgroup.
    pub terms: Vec<PermGroup>,
    pub solvable: bool,
}

pub fn derived_series(g: &PermGroup) -> Result<DerivedSeries> {
    let mut terms = vec![g.clone()];
    loop {
        let last = terms.last().expect("non-empty");
        if last.is_trivial() {
            break;
        }
        let next = commutator_subgroup(last, last)?;
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    let solvable = terms.last().expect("non-empty").is_trivial();
    Ok(DerivedSeries { terms, solvable })
}
