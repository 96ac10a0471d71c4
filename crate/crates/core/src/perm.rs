//! Permutations of `0..n` as image vectors.

pub fn is_bijection(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &v in perm {
        if v >= perm.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Cycle lengths in order of first appearance.
pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

pub fn sign(perm: &[usize]) -> i32 {
    let cycles = cycle_lengths(perm).len();
    if (perm.len() - cycles).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn fixed_points(perm: &[usize]) -> usize {
    perm.iter().enumerate().filter(|(i, &v)| *i == v).count()
}

/// Cycle type packed as 5-bit counters per cycle length (degree <= 25).
/// Stack-only; used as a lookup key in the enumeration loops.
#[inline]
pub fn packed_cycle_type(perm: &[usize]) -> u128 {
    debug_assert!(perm.len() <= 25);
    let mut seen: u32 = 0;
    let mut key: u128 = 0;
    for start in 0..perm.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while seen & (1 << i) == 0 {
            seen |= 1 << i;
            i = perm[i];
            len += 1;
        }
        key += 1u128 << (5 * (len - 1));
    }
    key
}

pub fn pack_lengths(lengths: &[usize]) -> u128 {
    lengths.iter().map(|&l| 1u128 << (5 * (l - 1))).sum()
}

/// Advances to the next permutation in lexicographic order; returns
/// `false` (leaving the slice sorted ascending) after the last one.
pub fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
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

/// Lexicographic rank of a permutation (Lehmer code).
pub fn rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut r = 0;
    let mut used: u32 = 0;
    for (pos, &v) in perm.iter().enumerate() {
        let smaller_unused = (v as u32 - (used & ((1 << v) - 1)).count_ones()) as usize;
        r = r * (n - pos) + smaller_unused;
        used |= 1 << v;
    }
    r
}
