use std::collections::{HashMap, HashSet};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{is_power_of, prime_divisors, PermGroup};
use crate::perm::Permutation;

/// Invariant factors `d₁ | d₂ | …` of a finite abelian group, with one
/// independent generator per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDecomp {
    pub invariant_factors: Vec<u64>,
    pub basis: Vec<Permutation>,
}

pub fn abelian_decomp(a: &PermGroup) -> Result<AbelianDecomp> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian(format!("group of order {}", a.order())));
    }
    Caps::check(
        "subgroup_order",
        Caps::global().subgroup_order,
        "abelian decomposition",
        a.order(),
    )?;
    let elements = a.sorted_elements();
    // primary components, each as generators of decreasing order
    let primary: Vec<Vec<Permutation>> = prime_divisors(a.order())
        .into_iter()
        .map(|p| {
            let part: Vec<&Permutation> = elements.iter().filter(|x| is_power_of(x.order(), p)).collect();
            primary_basis(&part, p)
        })
        .collect::<Result<_>>()?;

    let rank = primary.iter().map(Vec::len).max().unwrap_or(0);
    let identity = a.identity();
    let mut factors = Vec::with_capacity(rank);
    let mut basis = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut b = identity.clone();
        for gens in &primary {
            if let Some(x) = gens.get(k) {
                b = b.then(x);
            }
        }
        factors.push(b.order());
        basis.push(b);
    }
    factors.reverse();
    basis.reverse();
    let decomp = AbelianDecomp {
        invariant_factors: factors,
        basis,
    };
    decomp.verify(a)?;
    Ok(decomp)
}

/// Basis of an abelian `p`-group given by its element list, largest order first.
fn primary_basis(part: &[&Permutation], p: u64) -> Result<Vec<Permutation>> {
    let Some(first) = part.first() else {
        return Ok(Vec::new());
    };
    let identity = Permutation::identity(first.degree());
    let mut basis: Vec<Permutation> = Vec::new();
    // element of the span → exponent vector over `basis`
    let mut span: HashMap<Permutation, Vec<u64>> = HashMap::from([(identity.clone(), Vec::new())]);
    while span.len() < part.len() {
        // element of largest order modulo the current span
        let (x, e) = part
            .iter()
            .map(|x| {
                let mut e = 1u64;
                let mut y = (*x).clone();
                while !span.contains_key(&y) {
                    y = y.pow(p as i64);
                    e *= p;
                }
                (*x, e)
            })
            .fold(None::<(&Permutation, u64)>, |best, (x, e)| match best {
                Some((_, be)) if be >= e => best,
                _ => Some((x, e)),
            })
            .expect("non-empty");
        let exps = &span[&x.pow(e as i64)];
        let mut lifted = x.clone();
        for (j, &k) in exps.iter().enumerate() {
            if k % e != 0 {
                return Err(Error::internal("abelian basis: power not divisible by the quotient order"));
            }
            lifted = lifted.then(&basis[j].pow(-((k / e) as i64)));
        }
        if lifted.order() != e {
            return Err(Error::internal("abelian basis: lifted generator has the wrong order"));
        }
        let old: Vec<(Permutation, Vec<u64>)> = span.drain().collect();
        let mut power = identity.clone();
        for i in 0..e {
            for (y, v) in &old {
                let mut w = v.clone();
                w.resize(basis.len(), 0);
                w.push(i);
                span.insert(y.then(&power), w);
            }
            power = power.then(&lifted);
        }
        basis.push(lifted);
    }
    Ok(basis)
}

impl AbelianDecomp {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Checks that the basis generates `a` as an internal direct product of
    /// cyclic groups of the stated orders.
    pub fn verify(&self, a: &PermGroup) -> Result<()> {
        if self.order() != a.order() {
            return Err(Error::internal(format!(
                "invariant factors {:?} do not multiply to {}",
                self.invariant_factors,
                a.order()
            )));
        }
        if self.invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::internal("invariant factors out of divisibility order"));
        }
        for (b, &d) in self.basis.iter().zip(&self.invariant_factors) {
            if b.order() != d || !a.contains(b) {
                return Err(Error::internal(format!("basis element {b} does not have order {d}")));
            }
        }
        let mut products: HashSet<Permutation> = HashSet::from([a.identity()]);
        for b in &self.basis {
            let cyclic: Vec<Permutation> = (0..b.order() as i64).map(|i| b.pow(i)).collect();
            products = products
                .iter()
                .flat_map(|x| cyclic.iter().map(move |c| x.then(c)))
                .collect();
        }
        if products.len() as u64 != a.order() {
            return Err(Error::internal("basis is not independent"));
        }
        Ok(())
    }
}
