use crate::error::{Error, Result};
use crate::group::{is_power_of, is_prime, normalizer, p_part, PermGroup};

/// A Sylow `p`-subgroup by normalizer ascent: starting from the trivial
/// group, repeatedly adjoin the least `p`-element of `N_G(P) \ P`.
///
/// Such an element exists while `P` is not Sylow, because `p` then divides
/// `|N_G(P) : P|`; and `P⟨x⟩` is a `p`-group since `x` normalizes `P`.
/// Returns the trivial group when `p` does not divide `|G|`.
pub fn sylow(g: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let target = p_part(g.order(), p);
    let mut s = PermGroup::trivial(g.degree());
    while s.order() < target {
        let n = if s.is_trivial() { g.clone() } else { normalizer(g, &s) };
        let x = n
            .elements()
            .into_iter()
            .filter(|x| is_power_of(x.order(), p) && !s.contains(x))
            .min()
            .ok_or_else(|| Error::internal("normalizer ascent found no p-element outside P"))?;
        s = s.with_generators(&[x])?;
        if !s.is_p_group(p) {
            return Err(Error::internal("normalizer ascent left the p-groups"));
        }
    }
    if s.order() != target {
        return Err(Error::internal(format!(
            "Sylow ascent overshot: order {} for p-part {target}",
            s.order()
        )));
    }
    Ok(s)
}

/// `S` is a Sylow `p`-subgroup of `G`.
pub fn is_sylow(s: &PermGroup, g: &PermGroup, p: u64) -> bool {
    s.is_subgroup_of(g) && s.is_p_group(p) && s.order() == p_part(g.order(), p)
}
