use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::table::{ElementTable, SubgroupKind};

/// Outcome of an exhaustive complement scan inside an abelian group.
#[derive(Clone, Debug)]
pub enum Complement {
    /// `B` with `B ∩ W = 1` and `BW = A`.
    Found(PermGroup),
    Refuted(ComplementRefutation),
}

/// Certificate that no complement exists: every subgroup of `A` was
/// scanned, and each one of order `|A:W|` meets `W` in the recorded element.
#[derive(Clone, Debug)]
pub struct ComplementRefutation {
    pub subgroups_scanned: usize,
    pub candidate_order: u64,
    /// `(candidate, nontrivial element of candidate ∩ W)` for every subgroup of the right order.
    pub candidates: Vec<(PermGroup, crate::perm::Permutation)>,
}

impl Complement {
    pub fn found(&self) -> Option<&PermGroup> {
        match self {
            Complement::Found(b) => Some(b),
            Complement::Refuted(_) => None,
        }
    }
}

pub fn complement_search(a: &PermGroup, w: &PermGroup) -> Result<Complement> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian("complement search needs an abelian A".into()));
    }
    if !w.is_subgroup_of(a) {
        return Err(Error::NotSubgroup("complement search: W is not contained in A".into()));
    }
    let caps = Caps::global();
    Caps::check("complement_order", caps.complement_order, "complement search", a.order())?;
    let table = ElementTable::with_cap(a, caps.complement_order)?;
    let w_set = table.set_of_group(w)?;
    let target = (a.order() / w.order()) as usize;
    let subgroups = table.subgroups(SubgroupKind::Abelian)?;
    let mut candidates = Vec::new();
    for b in &subgroups {
        if b.order() != target {
            continue;
        }
        let meet = b.elements.intersection(&w_set);
        let witness = meet.iter().find(|&i| i != table.identity());
        match witness {
            // |B|·|W| = |A| and B ∩ W = 1 give BW = A
            None => return Ok(Complement::Found(table.set_to_group(&b.elements))),
            Some(x) => candidates.push((table.set_to_group(&b.elements), table.element(x).clone())),
        }
    }
    Ok(Complement::Refuted(ComplementRefutation {
        subgroups_scanned: subgroups.len(),
        candidate_order: target as u64,
        candidates,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::structure::center;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let a = grp(6, &["(1,2)", "(3,4,5,6)"]);
        let one = PermGroup::trivial(6);
        assert_eq!(complement_search(&a, &one).unwrap().found().unwrap(), &a);
        assert!(complement_search(&a, &a).unwrap().found().unwrap().is_trivial());
    }

    #[test]
    fn example_does_not_split() {
        let s = grp(10, &["(1,3)(2,4)", "(1,2)(5,6)", "(5,6)(7,8,9,10)"]);
        let z = center(&s);
        let a2 = Permutation::parse_cycles("(7,9)(8,10)", 10).unwrap();
        let w = grp(10, &["(7,9)(8,10)"]);
        match complement_search(&z, &w).unwrap() {
            Complement::Found(b) => panic!("unexpected complement {b:?}"),
            Complement::Refuted(r) => {
                assert_eq!(r.candidate_order, 4);
                // C2 x C4 has three subgroups of order 4, all containing a²
                assert_eq!(r.candidates.len(), 3);
                assert!(r.candidates.iter().all(|(b, x)| b.contains(&a2) && *x == a2));
                // 1, three C2, three of order 4, the whole group
                assert_eq!(r.subgroups_scanned, 8);
            }
        }
    }

    #[test]
    fn found_complement_is_a_complement() {
        let a = grp(6, &["(1,2)", "(3,4,5,6)"]);
        let w = grp(6, &["(3,5)(4,6)"]);
        // W = <b²> inside C2 x C4 again: no complement
        assert!(complement_search(&a, &w).unwrap().found().is_none());
        let w = grp(6, &["(1,2)(3,5)(4,6)"]);
        let b = complement_search(&a, &w).unwrap().found().unwrap().clone();
        assert_eq!(b.order() * w.order(), a.order());
        assert!(crate::group::subgroup_intersection(&b, &w).unwrap().is_trivial());
    }
}
