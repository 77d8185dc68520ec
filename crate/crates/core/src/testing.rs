//! Brute-force oracles shared by unit tests. Deliberately independent of the
//! stabilizer chain: everything here works from generators alone.

use std::collections::HashSet;

use crate::group::PermGroup;
use crate::perm::Permutation;

/// Every element of the group, by closing the generators under products.
pub(crate) fn closure(g: &PermGroup) -> Vec<Permutation> {
    let id = Permutation::identity(g.degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for x in g.generators() {
            let y = out[i].then(x);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}
