//! Permutations on `{1..degree}` and the cycle-notation format.
//!
//! Points are stored 0-based internally; everything user-facing (cycle
//! notation, `Display`) is 1-based. Products act on the right: `a * b`
//! applies `a` first, then `b`, so `x.conjugate(g)` is `g⁻¹ x g` and
//! the conjugation action `x ↦ x^g` is a right action.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection of `{0..degree}` stored as its image array.
///
/// Ordering is lexicographic on the image array, which is the canonical
/// element order used wherever the engine has to make a deterministic choice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "image list is not a bijection (entry {i} = {x})"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from a list of disjoint cycles of 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a as usize > degree || b == 0 || b as usize > degree {
                    return Err(Error::InvalidArgument(format!(
                        "point {a} outside 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut seen[a as usize - 1], true) {
                    return Err(Error::InvalidArgument(format!("point {a} repeated")));
                }
                images[a as usize - 1] = b - 1;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image array.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of the 0-based point `x`.
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    /// `g⁻¹ · self · g`, written `x^g`.
    pub fn conjugate(&self, g: &Permutation) -> Self {
        // x^g maps i^g to (i^x)^g
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.apply(i as u32) as usize] = g.apply(x);
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `g · self · g⁻¹`, written `ᵍx`.
    pub fn left_conjugate(&self, g: &Permutation) -> Self {
        self.conjugate(&g.inverse())
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Self {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| other.apply(x) == self.apply(other.apply(i as u32)))
    }

    /// Cycles of length ≥ 2 as 0-based points, in canonical order: least
    /// point first within a cycle, cycles sorted by their least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Length of the cycle through each point (1 for fixed points).
    pub fn cycle_lengths(&self) -> Vec<u32> {
        let mut lens = vec![1u32; self.images.len()];
        for cycle in self.cycles() {
            for &x in &cycle {
                lens[x as usize] = cycle.len() as u32;
            }
        }
        lens
    }

    /// Sorted multiset of cycle lengths ≥ 2.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn least_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Parses cycle notation at the given degree.
    ///
    /// Grammar: `permutation := "()" | cycle+`, `cycle := "(" int ("," int)+ ")"`,
    /// decimal 1-based points, no whitespace. Cycles must be disjoint.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        if text == "()" {
            return Ok(Permutation::identity(degree));
        }
        let bytes = text.as_bytes();
        let err = |pos: usize, token: &str, message: &str| Error::Parse {
            token: token.to_string(),
            position: pos,
            message: message.to_string(),
        };
        if bytes.is_empty() {
            return Err(err(0, "", "empty input; the identity is written `()`"));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                let token = token_at(text, pos);
                return Err(err(pos, &token, "expected `(`"));
            }
            let cycle_start = pos;
            pos += 1;
            let mut cycle: Vec<u32> = Vec::new();
            loop {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    let token = token_at(text, start);
                    return Err(err(start, &token, "expected a point"));
                }
                let token = &text[start..pos];
                let point: u64 = token
                    .parse()
                    .map_err(|_| err(start, token, "point out of range"))?;
                if point == 0 || point > degree as u64 {
                    return Err(err(
                        start,
                        token,
                        &format!("point must lie in 1..={degree}"),
                    ));
                }
                let p = (point - 1) as usize;
                if seen[p] {
                    return Err(err(start, token, "repeated point"));
                }
                seen[p] = true;
                cycle.push(p as u32);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(_) => {
                        let token = token_at(text, pos);
                        return Err(err(pos, &token, "expected `,` or `)`"));
                    }
                    None => return Err(err(pos, "", "unterminated cycle")),
                }
            }
            if cycle.len() < 2 {
                return Err(err(
                    cycle_start,
                    &text[cycle_start..pos],
                    "a cycle needs at least two points",
                ));
            }
            for (i, &a) in cycle.iter().enumerate() {
                images[a as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }
}

fn token_at(text: &str, pos: usize) -> String {
    text[pos..].chars().take(1).collect()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images.cmp(&other.images)
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
