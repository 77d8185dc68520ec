//! The fusion system `F_S(G)` of a permutation group on a Sylow subgroup.
//!
//! Morphisms are the maps `x ↦ x^g` between subgroups of `S` induced by
//! elements of `G`, so every question about `F` reduces to conjugation in
//! `G`. On top of that: automizers `Aut_F(Q)`, the center `Z(F)` from its
//! definition, the largest normal subgroup `O_p(F)`, and the splitting of
//! `Z(S)` over `Z(F)` by the transfer on `Aut_F(Q)`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{centralizer, centralizer_of, normalizer, subgroup_intersection, PermGroup};
use crate::perm::Permutation;
use crate::structure::{center, class_representatives, is_sylow, p_core, sylow, thompson};
use crate::table::{ElementTable, SubgroupKind};
use crate::theorem::{CaseTag, ChosenH, SplitReport};
use crate::transfer::{ConjugationModule, SplitWitness};
use crate::weak_closure::weakly_closed_subgroup;

/// `G` with a Sylow `p`-subgroup `S`; stands for `F_S(G)`.
#[derive(Clone, Debug)]
pub struct FusionContext {
    g: PermGroup,
    s: PermGroup,
    p: u64,
    zs: PermGroup,
}

impl FusionContext {
    pub fn new(g: PermGroup, p: u64) -> Result<Self> {
        let s = sylow(&g, p)?;
        Self::with_sylow(g, s, p)
    }

    pub fn with_sylow(g: PermGroup, s: PermGroup, p: u64) -> Result<Self> {
        if !is_sylow(&s, &g, p) {
            return Err(Error::InvalidArgument(format!(
                "subgroup of order {} is not a Sylow {p}-subgroup of a group of order {}",
                s.order(),
                g.order()
            )));
        }
        let caps = Caps::global();
        Caps::check("fusion_sylow_order", caps.fusion_sylow_order, "fusion system on S", s.order())?;
        Caps::check("fusion_group_order", caps.fusion_group_order, "fusion system of G", g.order())?;
        let zs = center(&s);
        Ok(FusionContext { g, s, p, zs })
    }

    pub fn group(&self) -> &PermGroup {
        &self.g
    }

    pub fn sylow(&self) -> &PermGroup {
        &self.s
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `Z(S)`.
    pub fn sylow_center(&self) -> &PermGroup {
        &self.zs
    }

    fn check_in_s(&self, q: &PermGroup) -> Result<()> {
        if !q.is_subgroup_of(&self.s) {
            return Err(Error::NotSubgroup("the object is not contained in S".into()));
        }
        Ok(())
    }
}

/// `Aut_F(Q) = N_G(Q)/C_G(Q)` and `Aut_S(Q) = N_S(Q)/C_S(Q)`, both acting
/// faithfully on the indices of `elements` (the sorted elements of `Q`).
#[derive(Clone, Debug)]
pub struct AutGroups {
    pub q: PermGroup,
    pub elements: Vec<Permutation>,
    pub aut_f: PermGroup,
    pub aut_s: PermGroup,
}

impl AutGroups {
    /// `|Aut_F(Q) : Aut_S(Q)|`.
    pub fn index(&self) -> u64 {
        self.aut_f.order() / self.aut_s.order()
    }
}

/// The permutation of element indices induced by `x ↦ x^n`.
fn induced(n: &Permutation, elements: &[Permutation], index: &HashMap<Permutation, u32>) -> Result<Permutation> {
    let images = elements
        .iter()
        .map(|x| {
            index
                .get(&x.conjugate(n))
                .copied()
                .ok_or_else(|| Error::internal("conjugation does not preserve Q"))
        })
        .collect::<Result<Vec<u32>>>()?;
    Permutation::from_images(images)
}

fn induced_group(
    over: &PermGroup,
    elements: &[Permutation],
    index: &HashMap<Permutation, u32>,
) -> Result<PermGroup> {
    let gens = over
        .generators()
        .iter()
        .map(|n| induced(n, elements, index))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(elements.len(), gens)
}

pub fn aut_fusion(ctx: &FusionContext, q: &PermGroup) -> Result<AutGroups> {
    ctx.check_in_s(q)?;
    let elements = q.sorted_elements();
    let index: HashMap<Permutation, u32> = elements.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect();
    let aut_f = induced_group(&normalizer(&ctx.g, q), &elements, &index)?;
    let aut_s = induced_group(&normalizer(&ctx.s, q), &elements, &index)?;
    if !aut_s.is_subgroup_of(&aut_f) {
        return Err(Error::internal("Aut_S(Q) is not contained in Aut_F(Q)"));
    }
    Ok(AutGroups {
        q: q.clone(),
        elements,
        aut_f,
        aut_s,
    })
}

/// The `F`-conjugates of `P`: its `G`-conjugates that lie in `S`.
pub fn f_conjugates(ctx: &FusionContext, p: &PermGroup) -> Result<Vec<PermGroup>> {
    ctx.check_in_s(p)?;
    let n = normalizer(&ctx.g, p);
    // P^(n t) = P^t, so one conjugate per right coset of N_G(P)
    let conjugates: Vec<PermGroup> = ctx
        .g
        .right_transversal(&n)?
        .par_iter()
        .map(|t| p.conjugate(t))
        .filter(|c| c.is_subgroup_of(&ctx.s))
        .collect();
    Ok(conjugates)
}

/// `|N_S(P)| ≥ |N_S(P')|` for every `F`-conjugate `P'`.
pub fn is_fully_normalized(ctx: &FusionContext, p: &PermGroup) -> Result<bool> {
    let own = normalizer(&ctx.s, p).order();
    Ok(f_conjugates(ctx, p)?
        .iter()
        .all(|c| normalizer(&ctx.s, c).order() <= own))
}

/// `C_S(P') = Z(P')` for every `F`-conjugate `P'`.
pub fn is_centric(ctx: &FusionContext, p: &PermGroup) -> Result<bool> {
    Ok(f_conjugates(ctx, p)?
        .iter()
        .all(|c| centralizer_of(&ctx.s, c).is_subgroup_of(c)))
}

/// `Aut_S(P)` is a Sylow `p`-subgroup of `Aut_F(P)`.
pub fn is_fully_automized(ctx: &FusionContext, p: &PermGroup) -> Result<bool> {
    Ok(aut_fusion(ctx, p)?.index() % ctx.p != 0)
}

/// `z ∈ Z(S) \ Z(F)` together with a morphism that no extension fixing `z`
/// realizes: `y = x^g ∈ S` but no `g'` with `x^g' = y` centralizes `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZRefutation {
    pub z: Permutation,
    pub x: Permutation,
    pub y: Permutation,
}

#[derive(Clone, Debug)]
pub struct ZFusion {
    /// `Z(F)`.
    pub center: PermGroup,
    /// One refutation for every element of `Z(S)` outside `Z(F)`.
    pub refutations: Vec<ZRefutation>,
}

/// `Z(F)`: the `z ∈ Z(S)` such that every morphism `⟨x⟩ → S` extends to one
/// fixing `z`. For `F = F_S(G)` that says `x^G ∩ S ⊆ x^{C_G(z)}` for all
/// `x ∈ S`, and it is enough to take `x` up to `S`-conjugacy since `S`
/// centralizes `z`. The answer is checked against `W_G(S)`.
pub fn z_fusion(ctx: &FusionContext) -> Result<ZFusion> {
    let reps = class_representatives(&ctx.s, |_| true)?;
    let fused: Vec<HashSet<Permutation>> = reps
        .par_iter()
        .map(|x| orbit_in_s(&ctx.g, &ctx.s, x))
        .collect();
    let verdicts: Vec<(Permutation, Option<ZRefutation>)> = ctx
        .zs
        .sorted_elements()
        .into_par_iter()
        .map(|z| {
            let c = centralizer(&ctx.g, &z);
            let refutation = reps.iter().zip(&fused).find_map(|(x, targets)| {
                let reached = orbit_in_s(&c, &ctx.s, x);
                let mut missing: Vec<&Permutation> = targets.difference(&reached).collect();
                missing.sort_unstable();
                missing.first().map(|y| ZRefutation {
                    z: z.clone(),
                    x: x.clone(),
                    y: (*y).clone(),
                })
            });
            (z, refutation)
        })
        .collect();
    let members: Vec<Permutation> = verdicts
        .iter()
        .filter(|(_, r)| r.is_none())
        .map(|(z, _)| z.clone())
        .collect();
    let refutations: Vec<ZRefutation> = verdicts.into_iter().filter_map(|(_, r)| r).collect();
    let w = weakly_closed_subgroup(&ctx.g, &ctx.s)?;
    if members.len() as u64 != w.order() || !members.iter().all(|z| w.contains(z)) {
        return Err(Error::internal(format!(
            "Z(F) from extensions has {} elements but W_G(S) has order {}",
            members.len(),
            w.order()
        )));
    }
    Ok(ZFusion { center: w, refutations })
}

/// `x^X ∩ S` for a group `X`.
fn orbit_in_s(x_group: &PermGroup, s: &PermGroup, x: &Permutation) -> HashSet<Permutation> {
    x_group
        .conjugacy_orbit(x)
        .into_iter()
        .filter(|y| s.contains(y))
        .collect()
}

/// Representatives of the double cosets `S g S`, starting with the identity.
pub fn double_coset_reps(g: &PermGroup, s: &PermGroup) -> Result<Vec<Permutation>> {
    let transversal = g.right_transversal(s)?;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for t in transversal {
        let key = s.canonical_right_coset_rep(&t);
        if seen.contains(&key) {
            continue;
        }
        // orbit of the right coset St under right multiplication by S
        let mut queue = vec![key.clone()];
        seen.insert(key);
        let mut i = 0;
        while i < queue.len() {
            for x in s.generators() {
                let next = s.canonical_right_coset_rep(&queue[i].then(x));
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
            i += 1;
        }
        reps.push(t);
    }
    Ok(reps)
}

/// `g ∈ C·N`, by walking the left cosets of `N` reachable from `N` under
/// left multiplication by `C`.
fn in_product(c: &PermGroup, n: &PermGroup, g: &Permutation) -> bool {
    // xN = yN ⇔ N x⁻¹ = N y⁻¹
    let key = |x: &Permutation| n.canonical_right_coset_rep(&x.inverse());
    let target = key(g);
    let start = c.identity();
    let mut seen: HashSet<Permutation> = HashSet::from([key(&start)]);
    if seen.contains(&target) {
        return true;
    }
    let mut queue = vec![start];
    let mut i = 0;
    while i < queue.len() {
        for y in c.generators() {
            let next = y.then(&queue[i]);
            let k = key(&next);
            if k == target {
                return true;
            }
            if seen.insert(k) {
                queue.push(next);
            }
        }
        i += 1;
    }
    false
}

/// The data `op_fusion` reuses across candidates: per double coset rep `g`,
/// `C_G(S ∩ S^{g⁻¹})`, the largest subgroup on which conjugation by `g`
/// lands in `S`.
struct MorphismData {
    reps: Vec<(Permutation, PermGroup)>,
}

impl MorphismData {
    fn new(ctx: &FusionContext) -> Result<Self> {
        let reps = double_coset_reps(&ctx.g, &ctx.s)?
            .into_par_iter()
            .map(|g| {
                let q = subgroup_intersection(&ctx.s, &ctx.s.conjugate(&g.inverse()))?;
                Ok((g, centralizer_of(&ctx.g, &q)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MorphismData { reps })
    }

    /// For `P ⊴ S`: every morphism `c_g : Q → S` extends to `PQ` leaving `P`
    /// invariant iff `g ∈ C_G(Q)·N_G(P)`. Shrinking `Q` only helps, so the
    /// largest `Q = S ∩ S^{g⁻¹}` decides, and `g` may be taken up to `S g S`.
    fn is_normal(&self, ctx: &FusionContext, p: &PermGroup) -> bool {
        let n = normalizer(&ctx.g, p);
        self.reps.par_iter().all(|(g, c)| in_product(c, &n, g))
    }
}

/// `P ⊴ F`: `P ⊴ S` and every morphism extends to one leaving `P` invariant.
pub fn is_normal_in_fusion(ctx: &FusionContext, p: &PermGroup) -> Result<bool> {
    ctx.check_in_s(p)?;
    if !p.is_normal_in(&ctx.s) {
        return Ok(false);
    }
    Ok(MorphismData::new(ctx)?.is_normal(ctx, p))
}

/// `O_p(F)`, the largest subgroup normal in `F`.
///
/// Tries the normal subgroups of `S` in decreasing order. Every candidate
/// not inside the first one found is still tested and must fail, so the
/// answer is certified to contain every normal subgroup of `F`. It must
/// also contain `O_p(G)`.
pub fn op_fusion(ctx: &FusionContext) -> Result<PermGroup> {
    let caps = Caps::global();
    let table = ElementTable::with_cap(&ctx.s, caps.fusion_sylow_order)?;
    let mut candidates = table.subgroups(SubgroupKind::Normal)?;
    candidates.reverse();
    let data = MorphismData::new(ctx)?;
    let mut found: Option<crate::table::ElementSet> = None;
    for cand in &candidates {
        if let Some(best) = &found {
            if cand.elements.is_subset(best) {
                continue;
            }
        }
        let group = table.set_to_group(&cand.elements);
        if data.is_normal(ctx, &group) {
            if found.is_some() {
                return Err(Error::internal(format!(
                    "two normal subgroups of F of order {} and {} with neither containing the other",
                    found.as_ref().map_or(0, |f| f.len()),
                    cand.order()
                )));
            }
            found = Some(cand.elements.clone());
        }
    }
    let op = table.set_to_group(found.as_ref().ok_or_else(|| Error::internal("the trivial subgroup is not normal in F"))?);
    if !p_core(&ctx.g, ctx.p)?.is_subgroup_of(&op) {
        return Err(Error::internal("O_p(G) is not contained in O_p(F)"));
    }
    Ok(op)
}

/// Certifies `Z(S) = Z(F) × ker(tr_T^H)`.
///
/// When `Z(S) ≤ Q = O_p(F)`: `H = Aut_F(Q)`, `T = Aut_S(Q)` acting on
/// `M = Z(Q)`, with `|H:T|` prime to `p`, `C_M(T) = Z(S)` and
/// `C_M(H) = Z(F)` asserted first. Otherwise, for odd `p`, the same inside
/// `N_F(J(S))`, realized by `N_G(J(S))`, with `Q = J(S)`. Returns
/// `HypothesisNotSatisfied` for `p = 2` with `Z(S) ⊄ O_p(F)`.
pub fn verify_zf(name: &str, ctx: &FusionContext) -> Result<SplitReport> {
    let zf = z_fusion(ctx)?.center;
    let op = op_fusion(ctx)?;
    if ctx.zs.is_subgroup_of(&op) {
        let aut = aut_fusion(ctx, &op)?;
        let witness = split_on_automizer(ctx, &aut, &zf)?;
        return SplitReport::from_witness(name, ctx.p, CaseTag::ZInO22, ChosenH::FusionCore, witness);
    }
    if ctx.p % 2 == 0 {
        return Err(Error::HypothesisNotSatisfied(format!(
            "{name}, p = 2: Z(S) of order {} is not contained in O_2(F) of order {}",
            ctx.zs.order(),
            op.order()
        )));
    }
    verify_zf_thompson(name, ctx, &zf)
}

/// The odd-`p` route of [`verify_zf`], usable on its own.
pub fn verify_zf_thompson(name: &str, ctx: &FusionContext, zf: &PermGroup) -> Result<SplitReport> {
    let j = thompson(&ctx.s)?.j;
    if !ctx.zs.is_subgroup_of(&center(&j)) {
        return Err(Error::internal(format!("{name}, p = {}: Z(S) is not contained in Z(J(S))", ctx.p)));
    }
    let inner = normalizer_context(ctx, &j)?;
    let aut = aut_fusion(&inner, &j)?;
    let z_inner = z_fusion(&inner)?.center;
    if z_inner != *zf {
        return Err(Error::internal(format!(
            "{name}, p = {}: Z(F) has order {} but Z(N_F(J(S))) has order {}",
            ctx.p,
            zf.order(),
            z_inner.order()
        )));
    }
    let witness = split_on_automizer(&inner, &aut, &z_inner)?;
    SplitReport::from_witness(name, ctx.p, CaseTag::OddP, ChosenH::FusionThompson, witness)
}

/// `N_F(J)` as the fusion system of `N_G(J)` on `S`, after checking that its
/// morphisms leave `J` invariant and that `S` is still Sylow.
fn normalizer_context(ctx: &FusionContext, j: &PermGroup) -> Result<FusionContext> {
    let h = normalizer(&ctx.g, j);
    if !h.generators().iter().all(|x| j.conjugate(x) == *j) {
        return Err(Error::internal("N_G(J) does not leave J invariant"));
    }
    if !ctx.s.is_subgroup_of(&h) {
        return Err(Error::internal("S is not contained in N_G(J)"));
    }
    FusionContext::with_sylow(h, ctx.s.clone(), ctx.p)
}

/// Transfer from `T = Aut_S(Q)` to `H = Aut_F(Q)` on `M = Z(Q)`, for a
/// `Q ⊴ S` containing `Z(S)`.
fn split_on_automizer(ctx: &FusionContext, aut: &AutGroups, zf: &PermGroup) -> Result<SplitWitness> {
    if aut.index() % ctx.p == 0 {
        return Err(Error::internal(format!(
            "|Aut_F(Q) : Aut_S(Q)| = {} is divisible by p",
            aut.index()
        )));
    }
    let m = center(&aut.q);
    let module = ConjugationModule::on_elements(m, aut.aut_f.clone(), aut.elements.clone())?;
    let tr = module.transfer_map(&aut.aut_s)?;
    if tr.domain != ctx.zs {
        return Err(Error::internal(format!(
            "C_M(T) has order {} but Z(S) has order {}",
            tr.domain.order(),
            ctx.zs.order()
        )));
    }
    if tr.codomain != *zf {
        return Err(Error::internal(format!(
            "C_M(H) has order {} but Z(F) has order {}",
            tr.codomain.order(),
            zf.order()
        )));
    }
    SplitWitness::certify(ctx.zs.clone(), zf.clone(), tr.kernel, tr.image)
}

/// [`verify_zf`], falling back to the complement scan when no hypothesis holds.
pub fn analyze_zf(name: &str, ctx: &FusionContext) -> Result<SplitReport> {
    match verify_zf(name, ctx) {
        Err(Error::HypothesisNotSatisfied(_)) => {
            let zf = z_fusion(ctx)?.center;
            SplitReport::diagnostic(name, ctx.p, CaseTag::None, &ctx.zs, &zf)
        }
        other => other,
    }
}
