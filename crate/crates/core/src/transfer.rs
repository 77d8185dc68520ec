//! The transfer on fixed points `tr_K^H : C_M(K) → C_M(H)`,
//! `m ↦ ∏_{t ∈ [H/K]} ᵗm`, and the splitting `Z(S) = W × ker(tr)` it yields.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::{quotient, subgroup_intersection, PermGroup};
use crate::perm::Permutation;
use crate::structure::{center, is_sylow, p_core, radical_series};
use crate::weak_closure::weakly_closed_subgroup;

/// How the acting group moves module elements.
#[derive(Clone, Debug)]
pub enum ModuleAction {
    /// `ᵍm = g m g⁻¹`, with `H` and `M` in the same symmetric group.
    Conjugation,
    /// `H` permutes the listed elements by index; `ᵍm = elements[idx(m)^(g⁻¹)]`.
    /// Used when `H` is an automorphism group given on an element set.
    OnElements(Vec<Permutation>),
}

/// An abelian group `M` with an action of `H`.
#[derive(Clone, Debug)]
pub struct ConjugationModule {
    m: PermGroup,
    h: PermGroup,
    action: ModuleAction,
    index: HashMap<Permutation, u32>,
    m_elements: Vec<Permutation>,
}

impl ConjugationModule {
    /// `M` under conjugation by `H`; `H` must normalize `M`.
    pub fn conjugation(m: PermGroup, h: PermGroup) -> Result<Self> {
        if !m.is_normalized_by(&h) {
            return Err(Error::NotNormal("module: H does not normalize M".into()));
        }
        Self::build(m, h, ModuleAction::Conjugation)
    }

    /// `M` acted on by a permutation group `H` on the indices of `elements`.
    pub fn on_elements(m: PermGroup, h: PermGroup, elements: Vec<Permutation>) -> Result<Self> {
        if h.degree() != elements.len() {
            return Err(Error::DegreeMismatch {
                expected: elements.len(),
                found: h.degree(),
            });
        }
        Self::build(m, h, ModuleAction::OnElements(elements))
    }

    fn build(m: PermGroup, h: PermGroup, action: ModuleAction) -> Result<Self> {
        if !m.is_abelian() {
            return Err(Error::NotAbelian("module M must be abelian".into()));
        }
        let index = match &action {
            ModuleAction::Conjugation => HashMap::new(),
            ModuleAction::OnElements(el) => el.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect(),
        };
        let m_elements = m.sorted_elements();
        let module = ConjugationModule {
            m,
            h,
            action,
            index,
            m_elements,
        };
        if let ModuleAction::OnElements(_) = module.action {
            let members: HashSet<&Permutation> = module.m_elements.iter().collect();
            for x in &module.m_elements {
                if !module.index.contains_key(x) {
                    return Err(Error::NotMember(format!("module element {x} is not in the acted-on set")));
                }
                for g in module.h.generators() {
                    if !members.contains(&module.act(g, x)) {
                        return Err(Error::NotNormal("module: H does not preserve M".into()));
                    }
                }
            }
        }
        Ok(module)
    }

    pub fn module(&self) -> &PermGroup {
        &self.m
    }

    pub fn acting_group(&self) -> &PermGroup {
        &self.h
    }

    /// Left action `ᵍm`.
    pub fn act(&self, g: &Permutation, m: &Permutation) -> Permutation {
        match &self.action {
            ModuleAction::Conjugation => m.left_conjugate(g),
            ModuleAction::OnElements(elements) => {
                let i = self.index[m];
                // the point sent to i by g
                let j = g.images().iter().position(|&y| y == i).expect("bijection");
                elements[j].clone()
            }
        }
    }

    /// `C_M(K)`.
    pub fn fixed_points(&self, k: &PermGroup) -> Result<PermGroup> {
        if !k.is_subgroup_of(&self.h) {
            return Err(Error::NotSubgroup("fixed points: K is not contained in H".into()));
        }
        let fixed: Vec<Permutation> = self
            .m_elements
            .iter()
            .filter(|x| self.is_fixed_by(k, x))
            .cloned()
            .collect();
        PermGroup::from_elements(self.m.degree(), &fixed)
    }

    fn is_fixed_by(&self, k: &PermGroup, x: &Permutation) -> bool {
        k.generators().iter().all(|g| &self.act(g, x) == x)
    }

    fn check_domain(&self, k: &PermGroup, m: &Permutation) -> Result<()> {
        if !k.is_subgroup_of(&self.h) {
            return Err(Error::NotSubgroup("transfer: K is not contained in H".into()));
        }
        if !self.m.contains(m) {
            return Err(Error::NotMember(format!("{m} is not in M")));
        }
        if !self.is_fixed_by(k, m) {
            return Err(Error::InvalidArgument(format!("{m} is not fixed by K")));
        }
        Ok(())
    }

    /// `tr_K^H(m)` over the default left transversal.
    pub fn transfer(&self, k: &PermGroup, m: &Permutation) -> Result<Permutation> {
        self.check_domain(k, m)?;
        let reps = self.h.left_transversal(k)?;
        Ok(self.transfer_over(&reps, m))
    }

    /// `tr_K^H(m)` over caller-supplied left coset representatives, which
    /// are checked to form a left transversal.
    pub fn transfer_with(&self, k: &PermGroup, m: &Permutation, reps: &[Permutation]) -> Result<Permutation> {
        self.check_domain(k, m)?;
        let index = self.h.order() / k.order();
        if reps.len() as u64 != index {
            return Err(Error::InvalidArgument(format!(
                "{} representatives for {index} left cosets",
                reps.len()
            )));
        }
        if let Some(t) = reps.iter().find(|t| !self.h.contains(t)) {
            return Err(Error::NotMember(format!("representative {t} is not in H")));
        }
        // t_i K = t_j K  ⇔  K t_i⁻¹ = K t_j⁻¹
        let keys: HashSet<Permutation> = reps.iter().map(|t| k.canonical_right_coset_rep(&t.inverse())).collect();
        if keys.len() != reps.len() {
            return Err(Error::InvalidArgument("two representatives share a left coset".into()));
        }
        Ok(self.transfer_over(reps, m))
    }

    fn transfer_over(&self, reps: &[Permutation], m: &Permutation) -> Permutation {
        reps.iter()
            .fold(self.m.identity(), |acc, t| acc.then(&self.act(t, m)))
    }

    /// Evaluates `tr_K^H` on all of `C_M(K)`.
    pub fn transfer_map(&self, k: &PermGroup) -> Result<TransferMap> {
        let domain = self.fixed_points(k)?;
        let codomain = self.fixed_points(&self.h)?;
        let reps = self.h.left_transversal(k)?;
        let mut kernel = Vec::new();
        let mut image: Vec<Permutation> = Vec::new();
        let mut values = HashMap::new();
        for m in domain.sorted_elements() {
            let v = self.transfer_over(&reps, &m);
            if !codomain.contains(&v) {
                return Err(Error::internal(format!("transfer of {m} is not H-fixed")));
            }
            if v.is_identity() {
                kernel.push(m.clone());
            }
            image.push(v.clone());
            values.insert(m, v);
        }
        let degree = self.m.degree();
        Ok(TransferMap {
            index: reps.len() as u64,
            kernel: PermGroup::from_elements(degree, &kernel)?,
            image: PermGroup::from_elements(degree, &image)?,
            domain,
            codomain,
            values,
        })
    }
}

/// `tr_K^H` tabulated on its domain.
#[derive(Clone, Debug)]
pub struct TransferMap {
    pub index: u64,
    pub domain: PermGroup,
    pub codomain: PermGroup,
    pub kernel: PermGroup,
    pub image: PermGroup,
    pub values: HashMap<Permutation, Permutation>,
}

/// Certificate for `Z(S) = w × kernel` with `im(tr) = w`.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    pub zs: PermGroup,
    pub w: PermGroup,
    pub kernel: PermGroup,
    pub image: PermGroup,
    pub product_ok: bool,
    pub intersection_trivial: bool,
    pub image_is_w: bool,
}

impl SplitWitness {
    pub fn holds(&self) -> bool {
        self.product_ok && self.intersection_trivial && self.image_is_w
    }

    /// Builds the three checks for given `w`, `kernel` and `image` inside `Z(S)`.
    pub fn certify(zs: PermGroup, w: PermGroup, kernel: PermGroup, image: PermGroup) -> Result<Self> {
        let intersection_trivial = subgroup_intersection(&w, &kernel)?.is_trivial();
        let product_ok = w.is_subgroup_of(&zs)
            && kernel.is_subgroup_of(&zs)
            && w.join(&kernel)?.order() == zs.order();
        let image_is_w = image == w;
        Ok(SplitWitness {
            zs,
            w,
            kernel,
            image,
            product_ok,
            intersection_trivial,
            image_is_w,
        })
    }
}

/// Splits `Z(S)` over `W_H(S)` with the transfer, for `Z(S) ≤ O_{p',p}(H)`.
///
/// Works in `H̄ = H/O_{p'}(H)` with `M = Z(O_p(H̄))` under conjugation, where
/// `C_M(S̄) = Z(S̄)`. The transfer kernel and image are pulled back to
/// `Z(S)` through `z ↦ z̄`, which is injective on `S`.
pub fn split_via_transfer(h: &PermGroup, s: &PermGroup, p: u64) -> Result<SplitWitness> {
    if !is_sylow(s, h, p) {
        return Err(Error::InvalidArgument(format!(
            "S (order {}) is not a Sylow {p}-subgroup of H (order {})",
            s.order(),
            h.order()
        )));
    }
    let zs = center(s);
    let radicals = radical_series(h, p)?;
    if !zs.is_subgroup_of(&radicals.o_p_prime_p) {
        return Err(Error::HypothesisNotSatisfied(format!(
            "Z(S) is not contained in O_{{{p}',{p}}}(H)"
        )));
    }
    let q = quotient(h, &radicals.o_p_prime)?;
    let h_bar = q.image();
    let s_bar = q.map_subgroup(s)?;
    let m = center(&p_core(h_bar, p)?);
    let module = ConjugationModule::conjugation(m, h_bar.clone())?;
    let tr = module.transfer_map(&s_bar)?;

    let preimage: HashMap<Permutation, Permutation> = zs.sorted_elements().into_iter().map(|z| (q.map(&z), z)).collect();
    if preimage.len() as u64 != zs.order() || tr.domain.order() != zs.order() {
        return Err(Error::internal(format!(
            "C_M(S̄) has order {} but Z(S) has order {}",
            tr.domain.order(),
            zs.order()
        )));
    }
    let pull = |g: &PermGroup| -> Result<PermGroup> {
        let elems = g
            .sorted_elements()
            .iter()
            .map(|x| {
                preimage
                    .get(x)
                    .cloned()
                    .ok_or_else(|| Error::internal(format!("{x} in C_M(S̄) has no preimage in Z(S)")))
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::from_elements(h.degree(), &elems)
    };
    let kernel = pull(&tr.kernel)?;
    let image = pull(&tr.image)?;
    let w = weakly_closed_subgroup(h, s)?;
    SplitWitness::certify(zs, w, kernel, image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::sylow;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    fn perm(s: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(s, degree).unwrap()
    }

    #[test]
    fn s3_on_its_rotations() {
        let s3 = grp(3, &["(1,2,3)", "(1,2)"]);
        let c3 = grp(3, &["(1,2,3)"]);
        let module = ConjugationModule::conjugation(c3.clone(), s3.clone()).unwrap();
        let m = perm("(1,2,3)", 3);
        assert!(module.transfer(&c3, &m).unwrap().is_identity());
        // K = H is the identity map
        assert_eq!(module.transfer(&s3, &m.pow(0)).unwrap(), m.pow(0));
        let c2 = grp(3, &["(1,2)"]);
        assert!(module.transfer(&c2, &m).is_err());
    }

    #[test]
    fn power_map_on_h_fixed_points() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let module = ConjugationModule::conjugation(v4.clone(), s4.clone()).unwrap();
        let k = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let fixed = module.fixed_points(&s4).unwrap();
        assert!(fixed.is_trivial());
        let ck = module.fixed_points(&k).unwrap();
        assert_eq!(ck.order(), 2);
        let tr = module.transfer_map(&k).unwrap();
        assert_eq!(tr.index, 3);
        assert_eq!(tr.kernel, ck);
        // C_M(K) in a module where H acts trivially
        let c = grp(4, &["(1,2)(3,4)"]);
        let module = ConjugationModule::conjugation(c.clone(), v4.clone()).unwrap();
        let m = perm("(1,2)(3,4)", 4);
        let one = PermGroup::trivial(4);
        assert_eq!(module.transfer(&one, &m).unwrap(), m.pow(4));
    }

    #[test]
    fn explicit_transversals_agree() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let module = ConjugationModule::conjugation(v4, s4.clone()).unwrap();
        let k = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let m = perm("(1,3)(2,4)", 4);
        let reps = s4.left_transversal(&k).unwrap();
        let other: Vec<Permutation> = reps.iter().map(|t| t.then(&perm("(1,2,3,4)", 4))).collect();
        assert_eq!(
            module.transfer_with(&k, &m, &reps).unwrap(),
            module.transfer_with(&k, &m, &other).unwrap()
        );
        let bad = vec![reps[0].clone(), reps[0].clone(), reps[1].clone()];
        assert!(module.transfer_with(&k, &m, &bad).is_err());
    }

    #[test]
    fn split_cases() {
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let w = split_via_transfer(&d8, &d8, 2).unwrap();
        assert!(w.holds());
        assert_eq!(w.w, center(&d8));
        assert!(w.kernel.is_trivial());

        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let s = sylow(&s4, 2).unwrap();
        let w = split_via_transfer(&s4, &s, 2).unwrap();
        assert!(w.holds());
        assert!(w.w.is_trivial());
        assert_eq!(w.kernel, center(&s));

        let sl23 = grp(8, &["(1,3,2,6)(4,5,8,7)", "(3,4,5)(6,8,7)"]);
        let q8 = sylow(&sl23, 2).unwrap();
        let w = split_via_transfer(&sl23, &q8, 2).unwrap();
        assert!(w.holds());
        assert_eq!(w.w.order(), 2);
        assert!(w.kernel.is_trivial());
    }

    #[test]
    fn split_through_a_nontrivial_p_prime_core() {
        // SL(2,3) at p = 3 has O_{3'} = Q8
        let sl23 = grp(8, &["(1,3,2,6)(4,5,8,7)", "(3,4,5)(6,8,7)"]);
        let s = sylow(&sl23, 3).unwrap();
        let w = split_via_transfer(&sl23, &s, 3).unwrap();
        assert!(w.holds());
        // S3 x C3 at p = 2
        let g = grp(6, &["(1,2,3)", "(1,2)", "(4,5,6)"]);
        let s = sylow(&g, 2).unwrap();
        let w = split_via_transfer(&g, &s, 2).unwrap();
        assert!(w.holds());
        // no other conjugate of (1,2) lies in S
        assert_eq!(w.w, s);
        assert!(w.kernel.is_trivial());
    }

    #[test]
    fn hypothesis_failure_is_distinct() {
        let a5 = grp(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let s = sylow(&a5, 2).unwrap();
        assert!(matches!(
            split_via_transfer(&a5, &s, 2),
            Err(Error::HypothesisNotSatisfied(_))
        ));
    }
}
