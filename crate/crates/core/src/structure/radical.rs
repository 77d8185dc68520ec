use crate::error::{Error, Result};
use crate::group::{is_prime, normal_closure, quotient, subgroup_intersection, PermGroup};
use crate::perm::Permutation;

use super::{center, class_representatives, sylow};

/// `O_p`, `O_{p'}`, `O_{p',p}` and `Z_p^*` of one group.
#[derive(Clone, Debug)]
pub struct RadicalSeries {
    pub p: u64,
    pub o_p: PermGroup,
    pub o_p_prime: PermGroup,
    pub o_p_prime_p: PermGroup,
    pub z_p_star: PermGroup,
}

/// Largest normal `p`-subgroup: the core of a Sylow subgroup, found by
/// intersecting with conjugates under the generators until stable.
pub fn p_core(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let mut core = sylow(g, p)?;
    loop {
        let mut next = core.clone();
        for x in g.generators() {
            if !core.conjugate(x).same_elements(&core) {
                next = subgroup_intersection(&next, &core.conjugate(x))?;
            }
        }
        if next.order() == core.order() {
            return Ok(core);
        }
        core = next;
    }
}

/// Largest normal `p'`-subgroup.
///
/// One pass over the classes of `p'`-elements, adjoining a class whenever
/// the normal closure stays a `p'`-group. A class inside `O_{p'}` is always
/// accepted because the running subgroup never leaves `O_{p'}`.
pub fn p_prime_core(g: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if g.order() % p != 0 {
        return Ok(g.clone());
    }
    let reps = class_representatives(g, |x| !x.is_identity() && x.order() % p != 0)?;
    let mut n = PermGroup::trivial(g.degree());
    for x in reps {
        if n.contains(&x) {
            continue;
        }
        let mut seeds: Vec<Permutation> = n.generators().to_vec();
        seeds.push(x);
        let k = normal_closure(&seeds, g)?;
        if k.order() % p != 0 {
            n = k;
        }
    }
    Ok(n)
}

pub fn radical_series(g: &PermGroup, p: u64) -> Result<RadicalSeries> {
    let o_p = p_core(g, p)?;
    let o_p_prime = p_prime_core(g, p)?;
    let q = quotient(g, &o_p_prime)?;
    let o_p_bar = p_core(q.image(), p)?;
    let o_p_prime_p = q.preimage(&o_p_bar)?;
    let z_p_star = q.preimage(&center(q.image()))?;
    Ok(RadicalSeries {
        p,
        o_p,
        o_p_prime,
        o_p_prime_p,
        z_p_star,
    })
}
