//! Small groups held as an explicit multiplication table, for the exhaustive
//! parts of the engine: abelian-subgroup enumeration (Thompson subgroup),
//! normal subgroups of a Sylow subgroup, complement scans in `Z(S)`.

use std::collections::{HashMap, HashSet};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Hard ceiling on the number of subgroups any one enumeration may produce.
pub const MAX_SUBGROUPS: usize = 200_000;

/// A subset of a table group, as a bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.words[i as usize / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let w = &mut self.words[i as usize / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64u32).filter(move |b| w >> b & 1 == 1).map(move |b| k as u32 * 64 + b)
        })
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }
}

/// A subgroup of a table group with the generators used to reach it.
#[derive(Clone, Debug)]
pub struct TableSubgroup {
    pub elements: ElementSet,
    pub gens: Vec<u32>,
}

impl TableSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    All,
    Abelian,
    Normal,
}

/// A finite permutation group with its elements sorted canonically and a
/// full multiplication table.
#[derive(Clone, Debug)]
pub struct ElementTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: &PermGroup) -> Result<Self> {
        Self::with_cap(group, Caps::global().subgroup_order)
    }

    pub fn with_cap(group: &PermGroup, cap: u64) -> Result<Self> {
        Caps::check("subgroup_order", cap, "element table", group.order())?;
        let elements = group.sorted_elements();
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.then(b)];
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        Ok(ElementTable {
            degree: group.degree(),
            elements,
            index,
            mul,
            inv,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        self.index.get(x).copied()
    }

    /// Identity is the least element in canonical order.
    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn set_of(&self, members: impl IntoIterator<Item = u32>) -> ElementSet {
        let mut s = ElementSet::empty(self.len());
        for m in members {
            s.insert(m);
        }
        s
    }

    /// Elements of a subgroup given as a permutation group (must lie in the table).
    pub fn set_of_group(&self, g: &PermGroup) -> Result<ElementSet> {
        let mut s = ElementSet::empty(self.len());
        for x in g.elements() {
            let i = self
                .index_of(&x)
                .ok_or_else(|| Error::NotSubgroup(format!("{x} is outside the table group")))?;
            s.insert(i);
        }
        Ok(s)
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> ElementSet {
        let mut set = ElementSet::empty(self.len());
        set.insert(0);
        let mut list = vec![0u32];
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let y = self.mul(list[i], g);
                if set.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        set
    }

    /// `A·⟨x⟩` for `x` centralizing the subgroup `A`.
    fn abelian_join(&self, a: &ElementSet, x: u32) -> ElementSet {
        let members: Vec<u32> = a.iter().collect();
        let mut out = a.clone();
        let mut power = x;
        while !a.contains(power) {
            for &m in &members {
                out.insert(self.mul(m, power));
            }
            power = self.mul(power, x);
        }
        out
    }

    pub fn to_group(&self, gens: &[u32]) -> PermGroup {
        PermGroup::new(
            self.degree,
            gens.iter().map(|&g| self.elements[g as usize].clone()).collect(),
        )
        .expect("table elements share the degree")
    }

    /// Permutation group on the members of `set`, with a short generating set.
    pub fn set_to_group(&self, set: &ElementSet) -> PermGroup {
        let members: Vec<Permutation> = set.iter().map(|i| self.elements[i as usize].clone()).collect();
        PermGroup::from_elements(self.degree, &members).expect("table elements share the degree")
    }

    /// One generator (the least index) per cyclic subgroup.
    pub fn cyclic_generators(&self) -> Vec<u32> {
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut out = Vec::new();
        for a in 0..self.len() as u32 {
            let c = self.closure(&[a]);
            if seen.insert(c) {
                out.push(a);
            }
        }
        out
    }

    /// Conjugacy classes, each sorted, in order of least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.len() as u32;
        let mut assigned = vec![false; n as usize];
        let mut out = Vec::new();
        for a in 0..n {
            if assigned[a as usize] {
                continue;
            }
            let mut class: Vec<u32> = (0..n)
                .map(|g| self.mul(self.mul(self.inv(g), a), g))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c as usize] = true;
            }
            out.push(class);
        }
        out
    }

    pub fn is_normal(&self, set: &ElementSet) -> bool {
        let n = self.len() as u32;
        set.iter().all(|a| {
            (0..n).all(|g| set.contains(self.mul(self.mul(self.inv(g), a), g)))
        })
    }

    /// Enumerates subgroups of the given kind, deduplicated, sorted by
    /// increasing order and then by element set.
    pub fn subgroups(&self, kind: SubgroupKind) -> Result<Vec<TableSubgroup>> {
        let blocks: Vec<(Vec<u32>, ElementSet)> = match kind {
            SubgroupKind::All | SubgroupKind::Abelian => self
                .cyclic_generators()
                .into_iter()
                .filter(|&a| a != 0)
                .map(|a| (vec![a], self.closure(&[a])))
                .collect(),
            SubgroupKind::Normal => self
                .conjugacy_classes()
                .into_iter()
                .filter(|c| c != &[0])
                .map(|c| {
                    let set = self.closure(&c);
                    (c, set)
                })
                .collect(),
        };
        let trivial = TableSubgroup {
            elements: self.closure(&[]),
            gens: Vec::new(),
        };
        let mut seen: HashSet<ElementSet> = HashSet::from([trivial.elements.clone()]);
        let mut all = vec![trivial];
        let mut i = 0;
        while i < all.len() {
            for (block_gens, block) in &blocks {
                let current = &all[i];
                if block.is_subset(&current.elements) {
                    continue;
                }
                if kind == SubgroupKind::Abelian {
                    let x = block_gens[0];
                    if !current.elements.iter().all(|h| self.commute(h, x)) {
                        continue;
                    }
                }
                let mut gens = current.gens.clone();
                gens.extend(block_gens.iter().copied());
                let joined = match kind {
                    SubgroupKind::Abelian => self.abelian_join(&current.elements, block_gens[0]),
                    _ => self.closure(&gens),
                };
                if seen.insert(joined.clone()) {
                    if all.len() >= MAX_SUBGROUPS {
                        return Err(Error::Resource {
                            cap_name: "max_subgroups",
                            cap: MAX_SUBGROUPS as u64,
                            what: "subgroup enumeration".into(),
                            needed: all.len() as u64 + 1,
                        });
                    }
                    all.push(TableSubgroup {
                        elements: joined,
                        gens,
                    });
                }
            }
            i += 1;
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(degree: usize, gens: &[&str]) -> ElementTable {
        ElementTable::new(&PermGroup::from_cycles(degree, gens).unwrap()).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        // S3: 1, three C2, C3, S3
        assert_eq!(table(3, &["(1,2,3)", "(1,2)"]).subgroups(SubgroupKind::All).unwrap().len(), 6);
        // D8: 10 subgroups; S4: 30 subgroups; Q8: 6
        let d8 = table(4, &["(1,2,3,4)", "(1,3)"]);
        assert_eq!(d8.subgroups(SubgroupKind::All).unwrap().len(), 10);
        assert_eq!(d8.subgroups(SubgroupKind::Normal).unwrap().len(), 6);
        let s4 = table(4, &["(1,2,3,4)", "(1,2)"]);
        assert_eq!(s4.subgroups(SubgroupKind::All).unwrap().len(), 30);
        assert_eq!(s4.subgroups(SubgroupKind::Normal).unwrap().len(), 4);
    }

    #[test]
    fn abelian_subgroups_of_d8() {
        let d8 = table(4, &["(1,2,3,4)", "(1,3)"]);
        let ab = d8.subgroups(SubgroupKind::Abelian).unwrap();
        // 1, five C2, two V4, one C4
        assert_eq!(ab.len(), 9);
        let all = d8.subgroups(SubgroupKind::All).unwrap();
        let naive = all
            .iter()
            .filter(|h| {
                let e: Vec<u32> = h.elements.iter().collect();
                e.iter().all(|&a| e.iter().all(|&b| d8.commute(a, b)))
            })
            .count();
        assert_eq!(naive, 9);
    }

    #[test]
    fn cap_is_enforced() {
        let s5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(1,2)"]).unwrap();
        assert!(matches!(
            ElementTable::with_cap(&s5, 100),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn table_arithmetic() {
        let t = table(4, &["(1,2,3,4)", "(1,2)"]);
        assert_eq!(t.len(), 24);
        assert!(t.element(0).is_identity());
        for a in 0..24 {
            assert_eq!(t.mul(a, t.inv(a)), 0);
            assert_eq!(t.power(a, t.element_order(a)), 0);
            assert_eq!(t.element_order(a), t.element(a).order());
        }
        assert_eq!(t.conjugacy_classes().len(), 5);
    }
}
