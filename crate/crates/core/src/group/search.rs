//! Backtrack searches over a stabilizer chain: subgroups defined by a
//! property (centralizers, normalizers, intersections) and single-element
//! searches (conjugating elements).
//!
//! A subgroup search builds `P ∩ G⁽ⁱ⁾` from the deepest level upwards. At
//! level `i` the stabilizer `P ∩ G⁽ⁱ⁺¹⁾` is already complete, so it only has
//! to find one element of `P` mapping the base point to each orbit point not
//! yet reached. Candidates `h·u_γ` with `h ∈ G⁽ⁱ⁺¹⁾` are enumerated
//! depth-first, and a prune hook sees the base images fixed so far.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::PermGroup;

/// Prune hook: `(base, images)` where `images[j]` is the image of `base[j]`
/// for the levels decided so far. Returning `true` discards the whole subtree.
pub type Prune<'a> = dyn Fn(&[u32], &[u32]) -> bool + 'a;

pub enum SearchMode<'a> {
    /// `C_G(x)`
    Centralizer(&'a Permutation),
    /// `C_G(H)`
    CentralizerOf(&'a PermGroup),
    /// `N_G(H)`
    Normalizer(&'a PermGroup),
    /// Some `g ∈ G` with `x^g = y`.
    Conjugator(&'a Permutation, &'a Permutation),
}

#[derive(Debug)]
pub enum SearchOutcome {
    Subgroup(PermGroup),
    Element(Option<Permutation>),
}

impl SearchOutcome {
    pub fn into_subgroup(self) -> Option<PermGroup> {
        match self {
            SearchOutcome::Subgroup(g) => Some(g),
            SearchOutcome::Element(_) => None,
        }
    }

    pub fn into_element(self) -> Option<Permutation> {
        match self {
            SearchOutcome::Element(e) => e,
            SearchOutcome::Subgroup(_) => None,
        }
    }
}

pub fn stabilizer_search(g: &PermGroup, mode: SearchMode<'_>) -> Result<SearchOutcome> {
    let check = |d: usize| {
        if d != g.degree() {
            Err(Error::DegreeMismatch {
                expected: g.degree(),
                found: d,
            })
        } else {
            Ok(())
        }
    };
    Ok(match mode {
        SearchMode::Centralizer(x) => {
            check(x.degree())?;
            SearchOutcome::Subgroup(centralizer(g, x))
        }
        SearchMode::CentralizerOf(h) => {
            check(h.degree())?;
            SearchOutcome::Subgroup(centralizer_of(g, h))
        }
        SearchMode::Normalizer(h) => {
            check(h.degree())?;
            SearchOutcome::Subgroup(normalizer(g, h))
        }
        SearchMode::Conjugator(x, y) => {
            check(x.degree())?;
            check(y.degree())?;
            SearchOutcome::Element(conjugator(g, x, y))
        }
    })
}

/// Prune for "g commutes with x": cycle lengths must match, and whenever both
/// `b` and `b^x` are decided base points, `(b^x)^g = (b^g)^x`.
fn commuting_prune<'a>(x: &'a Permutation, y: &'a Permutation) -> impl Fn(&[u32], &[u32]) -> bool + 'a {
    let lx = x.cycle_lengths();
    let ly = y.cycle_lengths();
    move |base: &[u32], images: &[u32]| {
        let j = images.len() - 1;
        if lx[base[j] as usize] != ly[images[j] as usize] {
            return true;
        }
        // x g = g y  ⇔  (b^x)^g = (b^g)^y
        for i in 0..images.len() {
            let bx = x.apply(base[i]);
            if let Some(k) = base[..images.len()].iter().position(|&b| b == bx) {
                if images[k] != y.apply(images[i]) {
                    return true;
                }
            }
        }
        false
    }
}

pub fn centralizer(g: &PermGroup, x: &Permutation) -> PermGroup {
    let prune = commuting_prune(x, x);
    subgroup_search(g, &prune, &|h: &Permutation| h.commutes_with(x))
}

pub fn centralizer_of(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let gens = h.generators();
    let prunes: Vec<_> = gens.iter().map(|x| commuting_prune(x, x)).collect();
    let prune = |base: &[u32], images: &[u32]| prunes.iter().any(|p| p(base, images));
    subgroup_search(g, &prune, &|c: &Permutation| {
        gens.iter().all(|x| c.commutes_with(x))
    })
}

pub fn normalizer(g: &PermGroup, h: &PermGroup) -> PermGroup {
    // g normalizes H ⇒ g maps H-orbits onto H-orbits of the same length
    let lens = h.orbit_lengths();
    let prune = |base: &[u32], images: &[u32]| {
        let j = images.len() - 1;
        lens[base[j] as usize] != lens[images[j] as usize]
    };
    subgroup_search(g, &prune, &|c: &Permutation| {
        h.generators().iter().all(|x| h.contains(&x.conjugate(c)))
    })
}

/// Some `c ∈ G` with `x^c = c⁻¹xc = y`, or `None` when `x` and `y` are not conjugate in `G`.
pub fn conjugator(g: &PermGroup, x: &Permutation, y: &Permutation) -> Option<Permutation> {
    if x.cycle_type() != y.cycle_type() {
        return None;
    }
    let prune = commuting_prune(x, y);
    // x^c = y  ⇔  x c = c y
    find_element(g, &prune, &|c: &Permutation| x.then(c) == c.then(y))
}

pub fn subgroup_intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    subgroup_intersection_with_caps(a, b, Caps::global())
}

/// Exact `A ∩ B`. Below the brute-force cap this filters the elements of `A`;
/// above it runs the chain backtrack.
pub fn subgroup_intersection_with_caps(a: &PermGroup, b: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.order() <= caps.brute_force_order {
        let mut members: Vec<Permutation> = small
            .elements()
            .into_iter()
            .filter(|x| large.contains(x))
            .collect();
        members.sort_unstable();
        return PermGroup::from_elements(small.degree(), &members);
    }
    Ok(subgroup_search(small, &|_, _| false, &|x| large.contains(x)))
}

/// Subgroup `{g ∈ G : accept(g)}`; `accept` must define a subgroup.
pub fn subgroup_by_property(
    g: &PermGroup,
    prune: &Prune<'_>,
    accept: &dyn Fn(&Permutation) -> bool,
) -> PermGroup {
    subgroup_search(g, prune, accept)
}

fn subgroup_search(
    g: &PermGroup,
    prune: &Prune<'_>,
    accept: &dyn Fn(&Permutation) -> bool,
) -> PermGroup {
    let chain = g.chain();
    let degree = g.degree();
    let base = chain.base();
    let transversals = chain.transversals();
    let k = chain.levels.len();

    let mut found = PermGroup::trivial(degree);
    for level in (0..k).rev() {
        let orbit = &chain.levels[level].orbit;
        for (idx, &gamma) in orbit.iter().enumerate().skip(1) {
            // points already reached by P ∩ G^(level)
            let reached = found
                .generators()
                .iter()
                .filter(|h| base[..level].iter().all(|&b| h.apply(b) == b))
                .cloned()
                .collect::<Vec<_>>();
            if point_reached(degree, &reached, base[level], gamma) {
                continue;
            }
            let mut images: Vec<u32> = base[..level].to_vec();
            images.push(gamma);
            if prune(&base, &images) {
                continue;
            }
            let start = transversals[level][idx].clone();
            let hit = dfs(level + 1, &start, &base, &mut images, &transversals, prune, accept);
            if let Some(h) = hit {
                found = found
                    .with_generators(&[h])
                    .expect("degree preserved");
            }
        }
    }
    found
}

fn point_reached(degree: usize, gens: &[Permutation], from: u32, to: u32) -> bool {
    if from == to {
        return true;
    }
    let mut seen = vec![false; degree];
    seen[from as usize] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if y == to {
                return true;
            }
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Depth-first over `u_{k-1} ⋯ u_level · partial`, returning the first accepted element.
fn dfs(
    level: usize,
    partial: &Permutation,
    base: &[u32],
    images: &mut Vec<u32>,
    transversals: &[Vec<Permutation>],
    prune: &Prune<'_>,
    accept: &dyn Fn(&Permutation) -> bool,
) -> Option<Permutation> {
    if level == transversals.len() {
        return accept(partial).then(|| partial.clone());
    }
    for u in &transversals[level] {
        let next = u.then(partial);
        images.push(next.apply(base[level]));
        let cut = prune(base, images);
        let hit = if cut {
            None
        } else {
            dfs(level + 1, &next, base, images, transversals, prune, accept)
        };
        images.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// First element of `G` (in chain order) satisfying `accept`.
pub fn find_element(
    g: &PermGroup,
    prune: &Prune<'_>,
    accept: &dyn Fn(&Permutation) -> bool,
) -> Option<Permutation> {
    let base = g.base();
    let transversals = g.chain().transversals();
    let mut images = Vec::with_capacity(base.len());
    dfs(0, &g.identity(), &base, &mut images, &transversals, prune, accept)
}
