//! Vertex permutations of `[n]`.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `[n]`, stored 0-based internally. The public API is
/// 1-based: `apply(v)` returns `phi(v)` for `v` in `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= 256);
        Perm {
            image: (0..n).map(|v| v as u8).collect(),
        }
    }

    /// Build from 1-based images: `images[v - 1] = phi(v)`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > 64 {
            return Err(Error::capacity(format!(
                "permutations on more than 64 points (got {n})"
            )));
        }
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::invalid(format!(
                    "{images:?} is not a permutation of [1, {n}]"
                )));
            }
            seen[x - 1] = true;
            image.push((x - 1) as u8);
        }
        Ok(Perm { image })
    }

    /// Build from disjoint cycles in 1-based notation; unmentioned points
    /// are fixed. `from_cycles(4, &[&[1, 2], &[3, 4]])` is `(1 2)(3 4)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n + 1];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::invalid(format!("bad cycle {cyc:?} on [1, {n}]")));
                }
                seen[x] = true;
                images[x - 1] = cyc[(i + 1) % cyc.len()];
            }
        }
        Perm::from_images(&images)
    }

    pub(crate) fn from_raw(image: Vec<u8>) -> Perm {
        Perm { image }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `phi(v)` for 1-based `v`.
    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v - 1] as usize + 1
    }

    /// 0-based image table.
    #[inline]
    pub fn raw(&self) -> &[u8] {
        &self.image
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of a vertex bitmask (bit `v - 1` for vertex `v`).
    #[inline]
    pub fn apply_bits(&self, mut bits: u64) -> u64 {
        let mut out = 0u64;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            out |= 1u64 << self.image[v];
            bits &= bits - 1;
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.n() != other.n() {
            return Err(Error::invalid(format!(
                "cannot compose permutations of degree {} and {}",
                self.n(),
                other.n()
            )));
        }
        Ok(Perm {
            image: other
                .image
                .iter()
                .map(|&x| self.image[x as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (v, &x) in self.image.iter().enumerate() {
            inv[x as usize] = v as u8;
        }
        Perm { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &x)| v == x as usize)
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(v, &x)| self.image[x as usize] as usize == v)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|(v, &x)| *v == x as usize)
            .map(|(v, _)| v + 1)
            .collect()
    }

    /// 2-cycles `(x, y)` with `x < y`, 1-based, in increasing `x`.
    pub fn two_cycles(&self) -> Vec<(usize, usize)> {
        self.image
            .iter()
            .enumerate()
            .filter(|(v, &x)| (x as usize) > *v && self.image[x as usize] as usize == *v)
            .map(|(v, &x)| (v + 1, x as usize + 1))
            .collect()
    }

    /// Cycles of length at least 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cyc.push(v + 1);
                v = self.image[v] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Parse cycle notation such as `(1 2)(3 4)` or `()` for the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Perm> {
        let text = text.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| {
                Error::invalid(format!("expected '(' in cycle notation {text:?}"))
            })?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::invalid(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let cyc = body
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad point {t:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, v) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// All `n!` permutations in lexicographic order of their image arrays.
pub fn all_perms(n: usize) -> AllPerms {
    AllPerms {
        next: Some((0..n as u8).collect()),
    }
}

pub struct AllPerms {
    next: Option<Vec<u8>>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm::from_raw(cur))
    }
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Number of involutions of `[n]`: `I(n) = I(n-1) + (n-1) I(n-2)`.
pub fn involution_count(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128); // I(0), I(1)
    if n == 0 {
        return 1;
    }
    for k in 2..=n {
        let c = b + (k as u128 - 1) * a;
        a = b;
        b = c;
    }
    b
}

/// All involutions of `[n]`, ordered by number of 2-cycles ascending and
/// then lexicographically by image array. The identity comes first.
pub fn involutions(n: usize) -> Vec<Perm> {
    fn rec(v: usize, n: usize, pairs_left: usize, image: &mut Vec<u8>, out: &mut Vec<Perm>) {
        // skip points already matched by an earlier pairing
        let mut v = v;
        while v < n && image[v] != u8::MAX {
            v += 1;
        }
        let unassigned = image[v.min(n)..].iter().filter(|&&x| x == u8::MAX).count();
        if pairs_left * 2 > unassigned {
            return;
        }
        if v == n {
            if pairs_left == 0 {
                out.push(Perm::from_raw(image.clone()));
            }
            return;
        }
        // v fixed
        image[v] = v as u8;
        rec(v + 1, n, pairs_left, image, out);
        image[v] = u8::MAX;
        if pairs_left > 0 {
            for w in v + 1..n {
                if image[w] == u8::MAX {
                    image[v] = w as u8;
                    image[w] = v as u8;
                    rec(v + 1, n, pairs_left - 1, image, out);
                    image[v] = u8::MAX;
                    image[w] = u8::MAX;
                }
            }
        }
    }

    let mut out = Vec::new();
    for k in 0..=n / 2 {
        let mut batch = Vec::new();
        rec(0, n, k, &mut vec![u8::MAX; n], &mut batch);
        batch.sort();
        out.extend(batch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Perm::from_cycles(6, &[&[1, 2], &[3, 4], &[5, 6]]).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)(5 6)");
        assert_eq!(Perm::parse_cycles(6, "(1 2)(3 4)(5 6)").unwrap(), p);
        assert_eq!(Perm::parse_cycles(3, "()").unwrap(), Perm::identity(3));
        assert_eq!(Perm::identity(3).to_string(), "()");
        let c = Perm::from_cycles(5, &[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(c.apply(4), 1);
        assert_eq!(c.to_string(), "(1 2 3 4)");
    }

    #[test]
    fn invalid_permutations() {
        assert!(Perm::from_images(&[1, 1, 3]).is_err());
        assert!(Perm::from_images(&[0, 1]).is_err());
        assert!(Perm::from_images(&[1, 4, 2]).is_err());
        assert!(Perm::from_cycles(4, &[&[1, 2], &[2, 3]]).is_err());
        assert!(Perm::parse_cycles(4, "(1 2").is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let p = Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let q = Perm::from_cycles(4, &[&[3, 4]]).unwrap();
        let pq = p.compose(&q).unwrap();
        for v in 1..=4 {
            assert_eq!(pq.apply(v), p.apply(q.apply(v)));
        }
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn all_perms_counts_and_order() {
        let ps: Vec<Perm> = all_perms(4).collect();
        assert_eq!(ps.len(), 24);
        assert!(ps.windows(2).all(|w| w[0].raw() < w[1].raw()));
        assert_eq!(all_perms(0).count(), 1);
        assert_eq!(all_perms(1).count(), 1);
    }

    #[test]
    fn involution_enumeration_matches_filter_of_all_perms() {
        for n in 0..=7 {
            let inv = involutions(n);
            assert_eq!(inv.len() as u128, involution_count(n), "n={n}");
            let mut brute: Vec<Perm> = all_perms(n).filter(|p| p.is_involution()).collect();
            let mut sorted = inv.clone();
            sorted.sort();
            brute.sort();
            assert_eq!(sorted, brute);
            // order: by 2-cycle count, then lexicographic
            assert!(inv.windows(2).all(|w| {
                let (a, b) = (w[0].two_cycles().len(), w[1].two_cycles().len());
                a < b || (a == b && w[0] < w[1])
            }));
            assert!(inv[0].is_identity());
        }
    }

    #[test]
    fn known_involution_counts() {
        assert_eq!(involution_count(4), 10);
        assert_eq!(involution_count(5), 26);
        assert_eq!(involution_count(6), 76);
        assert_eq!(involution_count(8), 764);
        assert_eq!(involution_count(12), 140_152);
    }

    #[test]
    fn two_cycles_and_fixed_points() {
        let p = Perm::from_cycles(5, &[&[1, 2], &[3, 5]]).unwrap();
        assert_eq!(p.two_cycles(), vec![(1, 2), (3, 5)]);
        assert_eq!(p.fixed_points(), vec![4]);
        assert!(p.is_involution());
        assert!(!Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap().is_involution());
    }
}
