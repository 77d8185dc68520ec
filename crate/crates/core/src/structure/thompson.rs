use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{prime_divisors, PermGroup};
use crate::table::{ElementTable, SubgroupKind};

/// `d(S)`, the abelian subgroups of order `d(S)`, and their join `J(S)`.
#[derive(Clone, Debug)]
pub struct ThompsonData {
    pub d: u64,
    pub witnesses: Vec<PermGroup>,
    pub j: PermGroup,
}

pub fn thompson(s: &PermGroup) -> Result<ThompsonData> {
    if prime_divisors(s.order()).len() > 1 {
        return Err(Error::InvalidArgument(format!(
            "Thompson subgroup needs a p-group, got order {}",
            s.order()
        )));
    }
    if s.is_abelian() {
        return Ok(ThompsonData {
            d: s.order(),
            witnesses: vec![s.clone()],
            j: s.clone(),
        });
    }
    Caps::check(
        "subgroup_order",
        Caps::global().subgroup_order,
        "abelian subgroup enumeration",
        s.order(),
    )?;
    let table = ElementTable::new(s)?;
    let abelian = table.subgroups(SubgroupKind::Abelian)?;
    let d = abelian.iter().map(|a| a.order()).max().unwrap_or(1);
    let witnesses: Vec<PermGroup> = abelian
        .iter()
        .filter(|a| a.order() == d)
        .map(|a| table.set_to_group(&a.elements))
        .collect();
    let mut j = PermGroup::trivial(s.degree());
    for w in &witnesses {
        j = j.join(w)?;
    }
    Ok(ThompsonData {
        d: d as u64,
        witnesses,
        j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::center;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    #[test]
    fn d8() {
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let t = thompson(&d8).unwrap();
        assert_eq!(t.d, 4);
        assert_eq!(t.witnesses.len(), 3);
        assert_eq!(t.witnesses.iter().filter(|w| w.generators().len() == 1).count(), 1);
        assert_eq!(t.j, d8);
    }

    #[test]
    fn q8() {
        let q8 = grp(8, &["(1,2,5,6)(3,8,7,4)", "(1,3,5,7)(2,4,6,8)"]);
        let t = thompson(&q8).unwrap();
        assert_eq!(t.d, 4);
        assert_eq!(t.witnesses.len(), 3);
        assert!(t.witnesses.iter().all(|w| w.generators().iter().any(|x| x.order() == 4)));
        assert_eq!(t.j, q8);
    }

    #[test]
    fn abelian_and_example() {
        let c = grp(6, &["(1,2,3)", "(4,5,6)"]);
        let t = thompson(&c).unwrap();
        assert_eq!((t.d, t.witnesses.len()), (9, 1));
        let s = grp(10, &["(1,3)(2,4)", "(1,2)(5,6)", "(5,6)(7,8,9,10)"]);
        let t = thompson(&s).unwrap();
        let z = center(&s);
        assert!(z.is_subgroup_of(&center(&t.j)));
        assert!(t.witnesses.iter().all(|w| w.is_abelian() && w.order() == t.d));
    }

    #[test]
    fn rejects_non_p_groups() {
        assert!(thompson(&grp(3, &["(1,2,3)", "(1,2)"])).is_err());
    }
}
