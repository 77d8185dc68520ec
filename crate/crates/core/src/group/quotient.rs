//! `G/N` as the permutation action of `G` on the cosets of `N`.

use std::collections::HashMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::PermGroup;

/// The image of `G` acting on the cosets of a normal subgroup `N`, together
/// with the natural epimorphism. When `N` is trivial the image is `G` itself
/// and the map is the identity.
#[derive(Clone, Debug)]
pub struct Quotient {
    source: PermGroup,
    kernel: PermGroup,
    image: PermGroup,
    cosets: Option<CosetTable>,
}

#[derive(Clone, Debug)]
struct CosetTable {
    /// `reps[i]` represents the coset `N·reps[i]`; `reps[0]` is the identity.
    reps: Vec<Permutation>,
    /// Canonical coset representative → coset index.
    index: HashMap<Permutation, u32>,
}

impl CosetTable {
    fn coset_of(&self, kernel: &PermGroup, g: &Permutation) -> u32 {
        self.index[&kernel.canonical_right_coset_rep(g)]
    }
}

pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    quotient_with_caps(g, n, Caps::global())
}

pub fn quotient_with_caps(g: &PermGroup, n: &PermGroup, caps: &Caps) -> Result<Quotient> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("quotient: N is not contained in G".into()));
    }
    if !n.is_normalized_by(g) {
        return Err(Error::NotNormal("quotient: N is not normal in G".into()));
    }
    if n.is_trivial() {
        return Ok(Quotient {
            source: g.clone(),
            kernel: n.clone(),
            image: g.clone(),
            cosets: None,
        });
    }
    let index = g.order() / n.order();
    Caps::check("quotient_index", caps.quotient_index, "quotient index |G:N|", index)?;

    let mut reps = vec![g.identity()];
    let mut lookup = HashMap::from([(n.canonical_right_coset_rep(&g.identity()), 0u32)]);
    let mut i = 0;
    while i < reps.len() {
        for x in g.generators() {
            let t = reps[i].then(x);
            let key = n.canonical_right_coset_rep(&t);
            if !lookup.contains_key(&key) {
                lookup.insert(key, reps.len() as u32);
                reps.push(t);
            }
        }
        i += 1;
    }
    if reps.len() as u64 != index {
        return Err(Error::internal(format!(
            "coset enumeration found {} cosets, expected {index}",
            reps.len()
        )));
    }
    let table = CosetTable { reps, index: lookup };
    let image_gens = g
        .generators()
        .iter()
        .map(|x| action_on_cosets(&table, n, x))
        .collect();
    let image = PermGroup::new(index as usize, image_gens)?;
    if image.order() != index {
        return Err(Error::internal(format!(
            "quotient image has order {}, expected {index}",
            image.order()
        )));
    }
    Ok(Quotient {
        source: g.clone(),
        kernel: n.clone(),
        image,
        cosets: Some(table),
    })
}

fn action_on_cosets(table: &CosetTable, n: &PermGroup, x: &Permutation) -> Permutation {
    let images = table
        .reps
        .iter()
        .map(|t| table.coset_of(n, &t.then(x)))
        .collect();
    Permutation::from_images_unchecked(images)
}

impl Quotient {
    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn is_identity_map(&self) -> bool {
        self.cosets.is_none()
    }

    /// Image of `x ∈ G` under the natural map.
    pub fn map(&self, x: &Permutation) -> Permutation {
        match &self.cosets {
            None => x.clone(),
            Some(table) => action_on_cosets(table, &self.kernel, x),
        }
    }

    /// Some preimage of an element of the image.
    pub fn lift(&self, y: &Permutation) -> Permutation {
        match &self.cosets {
            None => y.clone(),
            // the image acts regularly: y is determined by where it sends coset 0
            Some(table) => table.reps[y.apply(0) as usize].clone(),
        }
    }

    /// Image of a subgroup `H ≤ G`.
    pub fn map_subgroup(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h.generators().iter().map(|x| self.map(x)).collect();
        PermGroup::new(self.image.degree(), gens)
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, k: &PermGroup) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = self.kernel.generators().to_vec();
        gens.extend(k.generators().iter().map(|y| self.lift(y)));
        PermGroup::new(self.source.degree(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    #[test]
    fn g_mod_g_is_trivial() {
        let s3 = grp(3, &["(1,2,3)", "(1,2)"]);
        let q = quotient(&s3, &s3).unwrap();
        assert_eq!(q.image().order(), 1);
    }

    #[test]
    fn s3_mod_a3() {
        let s3 = grp(3, &["(1,2,3)", "(1,2)"]);
        let a3 = grp(3, &["(1,2,3)"]);
        let q = quotient(&s3, &a3).unwrap();
        assert_eq!(q.image().order(), 2);
        for x in s3.elements() {
            assert_eq!(q.map(&x).is_identity(), a3.contains(&x));
        }
    }

    #[test]
    fn trivial_kernel_gives_the_group_back() {
        let g = grp(10, &["(1,2,3,4,5)", "(4,5,6)", "(5,6)(7,8,9,10)"]);
        let q = quotient(&g, &PermGroup::trivial(10)).unwrap();
        assert!(q.is_identity_map());
        assert_eq!(q.image().order(), 1440);
    }

    #[test]
    fn s4_mod_v4_is_s3_and_kernel_is_exact() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let q = quotient(&s4, &v4).unwrap();
        assert_eq!(q.image().order() * v4.order(), s4.order());
        let elems = s4.elements();
        for a in &elems {
            assert_eq!(q.map(a).is_identity(), v4.contains(a));
            for b in &elems {
                assert_eq!(q.map(&a.then(b)), q.map(a).then(&q.map(b)));
            }
            let y = q.map(a);
            assert_eq!(q.map(&q.lift(&y)), y);
        }
        let pre = q.preimage(&PermGroup::trivial(q.image().degree())).unwrap();
        assert_eq!(pre, v4);
        let whole = q.preimage(q.image()).unwrap();
        assert_eq!(whole, s4);
    }

    #[test]
    fn rejects_non_normal_and_caps() {
        let s3 = grp(3, &["(1,2,3)", "(1,2)"]);
        let c2 = grp(3, &["(1,2)"]);
        assert!(matches!(quotient(&s3, &c2), Err(Error::NotNormal(_))));
        let a3 = grp(3, &["(1,2,3)"]);
        let caps = Caps {
            quotient_index: 1,
            ..Caps::default()
        };
        match quotient_with_caps(&s3, &a3, &caps) {
            Err(Error::Resource { cap_name, .. }) => assert_eq!(cap_name, "quotient_index"),
            other => panic!("expected resource error, got {other:?}"),
        }
    }
}
