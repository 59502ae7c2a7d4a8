//! Brute-force oracle shared by the integration tests: filter all `n!` words,
//! no pruning and no memoization.

#![allow(dead_code)]

use itertools::Itertools;
use succ_lab::{Arrangement, Family};

pub fn all_words(n: usize) -> Vec<Arrangement> {
    (1..=n as u8)
        .permutations(n)
        .map(|d| Arrangement::new(d).unwrap())
        .collect()
}

fn has_succession(d: &[u8]) -> bool {
    d.windows(2).any(|w| w[1] == w[0] + 1)
}

fn has_wrap(d: &[u8]) -> bool {
    let n = d.len() as u8;
    d.windows(2).any(|w| w[0] == n && w[1] == 1)
}

fn fixed(d: &[u8]) -> usize {
    d.iter().enumerate().filter(|(i, &v)| v as usize == i + 1).count()
}

/// Membership written out independently of `Arrangement::in_family`.
pub fn member(w: &Arrangement, family: Family) -> bool {
    let d = w.digits();
    match family {
        Family::All => true,
        Family::SmallD => !has_succession(d),
        // {D_0} is empty by convention
        Family::BigD => !d.is_empty() && !has_succession(d) && !has_wrap(d),
        Family::Dn1 => !has_succession(d) && has_wrap(d),
        Family::Derangement => fixed(d) == 0,
        Family::ExactFixed(k) => fixed(d) == k,
    }
}

pub fn naive_list(n: usize, family: Family) -> Vec<Arrangement> {
    all_words(n).into_iter().filter(|w| member(w, family)).collect()
}

pub fn naive_count(n: usize, family: Family) -> usize {
    naive_list(n, family).len()
}

pub fn inverse(w: &Arrangement) -> Arrangement {
    let mut r = vec![0u8; w.len()];
    for (p, &v) in w.digits().iter().enumerate() {
        r[v as usize - 1] = p as u8 + 1;
    }
    Arrangement::new(r).unwrap()
}
