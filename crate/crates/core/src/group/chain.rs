//! Deterministic Schreier–Sims.
//!
//! Each level stores its base point, the strong generators fixing all
//! earlier base points, and a Schreier vector for the basic orbit. Transversal
//! elements are rebuilt from the Schreier vector on demand so memory stays
//! linear in the degree even for regular representations of quotients.

use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    /// Basic orbit in breadth-first order, starting with `base`.
    pub orbit: Vec<u32>,
    /// For each point: the generator index whose image reached it, `ROOT`, or `NOT_IN_ORBIT`.
    schreier: Vec<u32>,
}

impl Level {
    fn new(base: u32, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            base,
            inv_gens: gens.iter().map(Permutation::inverse).collect(),
            gens,
            orbit: Vec::new(),
            schreier: vec![NOT_IN_ORBIT; degree],
        };
        level.rebuild_orbit();
        level
    }

    fn push_gen(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        self.schreier.iter_mut().for_each(|s| *s = NOT_IN_ORBIT);
        self.orbit.clear();
        self.schreier[self.base as usize] = ROOT;
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for (k, g) in self.gens.iter().enumerate() {
                let y = g.apply(x);
                if self.schreier[y as usize] == NOT_IN_ORBIT {
                    self.schreier[y as usize] = k as u32;
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    #[inline]
    pub fn in_orbit(&self, x: u32) -> bool {
        self.schreier[x as usize] != NOT_IN_ORBIT
    }

    /// Element of this level's group mapping `base` to `x` (which must lie in the orbit).
    pub fn transversal(&self, x: u32) -> Permutation {
        let mut path = Vec::new();
        let mut y = x;
        loop {
            match self.schreier[y as usize] {
                ROOT => break,
                NOT_IN_ORBIT => unreachable!("point outside basic orbit"),
                k => {
                    path.push(k as usize);
                    y = self.inv_gens[k as usize].apply(y);
                }
            }
        }
        let degree = self.schreier.len();
        path.iter()
            .rev()
            .fold(Permutation::identity(degree), |acc, &k| acc.then(&self.gens[k]))
    }

    /// Multiplies `g` on the right by the inverse transversal element of `base^g`,
    /// so that the result fixes `base`. Returns false if `base^g` leaves the orbit.
    fn strip_level(&self, g: &mut Permutation) -> bool {
        let mut y = g.apply(self.base);
        if !self.in_orbit(y) {
            return false;
        }
        while y != self.base {
            let k = self.schreier[y as usize] as usize;
            *g = g.then(&self.inv_gens[k]);
            y = self.inv_gens[k].apply(y);
        }
        true
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        if gens.is_empty() {
            return chain;
        }

        // Initial base: every generator must move some base point.
        let mut base: Vec<u32> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.least_moved_point().expect("non-identity"));
            }
        }
        for (i, &b) in base.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(b, level_gens, degree));
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match chain.find_missing_schreier_generator(level) {
                None => i -= 1,
                Some((residue, drop)) => {
                    for l in level + 1..=drop {
                        if l == chain.levels.len() {
                            let b = residue.least_moved_point().expect("non-identity residue");
                            chain.levels.push(Level::new(b, vec![residue.clone()], degree));
                        } else {
                            chain.levels[l].push_gen(residue.clone());
                        }
                    }
                    i = drop as isize;
                }
            }
        }
        chain
    }

    /// Looks for a Schreier generator of `level` that does not sift through the
    /// deeper levels. Returns the residue and the level at which sifting stopped.
    fn find_missing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            let u_beta = lv.transversal(beta);
            for x in &lv.gens {
                let image = x.apply(beta);
                let mut h = u_beta.then(x);
                // h · u_{β^x}⁻¹ fixes the base point
                if !lv.strip_level(&mut h) {
                    unreachable!("orbit closed under generators");
                }
                debug_assert_eq!(h.apply(lv.base), lv.base, "image {image}");
                if h.is_identity() {
                    continue;
                }
                let (residue, drop) = self.strip_from(h, level + 1);
                if drop < self.levels.len() || !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `start..`. Returns the residue and the index of
    /// the first level whose orbit did not contain the base image (or `len`).
    pub fn strip_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            if !level.strip_level(&mut g) {
                return (g, l);
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, drop) = self.strip_from(g.clone(), 0);
        drop == self.levels.len() && residue.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.levels
            .iter()
            .fold(1u64, |acc, l| acc.saturating_mul(l.orbit.len() as u64))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Transversal elements per level, indexed in orbit order.
    pub fn transversals(&self) -> Vec<Vec<Permutation>> {
        self.levels
            .iter()
            .map(|l| l.orbit.iter().map(|&x| l.transversal(x)).collect())
            .collect()
    }

    /// Strong generators (union over levels, deduplicated, first-seen order).
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Element of the right coset `K·g` (with `K` this chain's group) whose
    /// sequence of base images is lexicographically least. Two elements lie in
    /// the same right coset iff their canonical representatives agree.
    pub fn canonical_right_coset_rep(&self, g: &Permutation) -> Permutation {
        let mut cur = g.clone();
        for level in &self.levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&x| cur.apply(x))
                .expect("orbit contains the base point");
            if best != level.base {
                cur = level.transversal(best).then(&cur);
            }
        }
        cur
    }
}
