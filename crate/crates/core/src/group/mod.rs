//! Permutation groups backed by a stabilizer chain.

mod chain;
pub mod quotient;
pub mod search;
pub mod series;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use chain::StabChain;

pub use quotient::{quotient, Quotient};
pub use search::{
    centralizer, centralizer_of, conjugator, normalizer, stabilizer_search, subgroup_by_property,
    subgroup_intersection, SearchMode, SearchOutcome,
};
pub use series::{commutator_subgroup, derived_series, normal_closure, DerivedSeries};

/// A finite permutation group on `{1..degree}`.
///
/// Immutable once built: the generator list, the stabilizer chain and the
/// order never change, so values can be shared freely across threads.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: u64,
}

impl PermGroup {
    /// Builds the group generated by `gens`. All generators must have degree `degree`.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let chain = StabChain::build(degree, &gens);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            gens,
            chain,
            order,
        })
    }

    /// Builds a group from a non-empty generator list, inferring the degree.
    pub fn generate(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::InvalidArgument("empty generator list has no degree".into()))?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: StabChain::build(degree, &[]),
            order: 1,
        }
    }

    /// Parses each generator in cycle notation at `degree`.
    pub fn from_cycles<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Base points (0-based) of the stabilizer chain.
    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// All elements, in chain order (deterministic but not sorted).
    pub fn elements(&self) -> Vec<Permutation> {
        let transversals = self.chain.transversals();
        let mut out = Vec::with_capacity(self.order as usize);
        // g = u_{k-1} ⋯ u_1 u_0, built from the top level down
        fn walk(
            level: usize,
            partial: &Permutation,
            transversals: &[Vec<Permutation>],
            out: &mut Vec<Permutation>,
        ) {
            if level == transversals.len() {
                out.push(partial.clone());
                return;
            }
            for u in &transversals[level] {
                walk(level + 1, &u.then(partial), transversals, out);
            }
        }
        walk(0, &self.identity(), &transversals, &mut out);
        out
    }

    /// All elements in canonical (lexicographic) order.
    pub fn sorted_elements(&self) -> Vec<Permutation> {
        let mut e = self.elements();
        e.sort_unstable();
        e
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// True when every generator of `other` conjugates every generator of `self` back into `self`.
    pub fn is_normalized_by(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && other
                .gens
                .iter()
                .all(|g| self.gens.iter().all(|x| self.contains(&x.conjugate(g))))
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && self.is_normalized_by(other)
    }

    /// Same set of elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order, p)
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens = self.gens.iter().map(|x| x.conjugate(g)).collect();
        PermGroup::new(self.degree, gens).expect("degree preserved")
    }

    /// Group generated by `self` and the extra elements.
    pub fn with_generators(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().filter(|g| !self.contains(g)).cloned());
        PermGroup::new(self.degree, gens)
    }

    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        self.with_generators(&other.gens)
    }

    /// Subgroup generated by a set of elements, choosing a short generating set
    /// greedily in the given order.
    pub fn from_elements(degree: usize, elements: &[Permutation]) -> Result<PermGroup> {
        let mut group = PermGroup::trivial(degree);
        for x in elements {
            if x.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: x.degree(),
                });
            }
            if !group.contains(x) {
                group = group.with_generators(std::slice::from_ref(x))?;
            }
        }
        Ok(group)
    }

    /// Element of the right coset `self·g` that is canonical for that coset.
    pub fn canonical_right_coset_rep(&self, g: &Permutation) -> Permutation {
        self.chain.canonical_right_coset_rep(g)
    }

    /// Orbit of `x` under conjugation by this group, breadth-first from `x`.
    pub fn conjugacy_orbit(&self, x: &Permutation) -> Vec<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut out = vec![x.clone()];
        seen.insert(x.clone());
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for g in &self.gens {
                let z = y.conjugate(g);
                if seen.insert(z.clone()) {
                    out.push(z.clone());
                    queue.push_back(z);
                }
            }
        }
        out
    }

    /// Orbit of a 0-based point.
    pub fn point_orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            for g in &self.gens {
                let y = g.apply(out[i]);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Length of the orbit containing each point.
    pub fn orbit_lengths(&self) -> Vec<u32> {
        let mut lens = vec![0u32; self.degree];
        for x in 0..self.degree as u32 {
            if lens[x as usize] == 0 {
                let orbit = self.point_orbit(x);
                for &y in &orbit {
                    lens[y as usize] = orbit.len() as u32;
                }
            }
        }
        lens
    }

    /// Left transversal of `k` in `self`: `|G:K|` elements, one per left coset
    /// `tK`, starting with the identity. Deterministic for fixed generator lists.
    pub fn left_transversal(&self, k: &PermGroup) -> Result<Vec<Permutation>> {
        if !k.is_subgroup_of(self) {
            return Err(Error::NotSubgroup(
                "transversal: K is not contained in G".into(),
            ));
        }
        // tK ↔ K t⁻¹
        let key = |t: &Permutation| k.canonical_right_coset_rep(&t.inverse());
        let identity = self.identity();
        let mut seen: HashSet<Permutation> = HashSet::from([key(&identity)]);
        let mut reps = vec![identity];
        let mut i = 0;
        while i < reps.len() {
            for g in &self.gens {
                let t = g.then(&reps[i]);
                if seen.insert(key(&t)) {
                    reps.push(t);
                }
            }
            i += 1;
        }
        if reps.len() as u64 * k.order() != self.order {
            return Err(Error::internal(format!(
                "transversal has {} cosets, expected {}",
                reps.len(),
                self.order / k.order()
            )));
        }
        Ok(reps)
    }

    /// Right transversal: one `t` per right coset `Kt`, starting with the identity.
    pub fn right_transversal(&self, k: &PermGroup) -> Result<Vec<Permutation>> {
        Ok(self
            .left_transversal(k)?
            .into_iter()
            .map(|t| t.inverse())
            .collect())
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.same_elements(other)
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order)
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
