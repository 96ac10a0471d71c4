//! Irreducible characters of the symmetric group.
//!
//! General values come from the Murnaghan-Nakayama rule on beta-sets; the
//! near-hook and three-box shapes also have closed forms in the cycle
//! counts `c1, c2, c3`, which the engine uses directly.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::partition::{CycleType, Partition};

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static RwLock<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `chi^lambda` on the class `mu`.
pub fn mn_character(lambda: &Partition, mu: &CycleType) -> Result<i64> {
    if lambda.weight() != mu.degree() {
        return Err(Error::WeightMismatch {
            partition: lambda.weight(),
            degree: mu.degree(),
        });
    }
    Ok(mn_rec(lambda.parts(), &mu.lengths()))
}

fn mn_rec(lambda: &[usize], lengths: &[usize]) -> i64 {
    let Some((&k, rest)) = lengths.split_first() else {
        return 1;
    };
    let key = (lambda.to_vec(), lengths.to_vec());
    if let Some(&v) = memo().read().expect("character memo poisoned").get(&key) {
        return v;
    }
    // beta-set: distinct first-column hook lengths
    let l = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i))
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (l - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&shape, rest);
    }
    // identical values from concurrent writers are harmless
    memo()
        .write()
        .expect("character memo poisoned")
        .insert(key, total);
    total
}

/// `chi^lambda(id)`, the number of standard tableaux of shape `lambda`.
pub fn dimension(lambda: &Partition) -> i64 {
    mn_rec(lambda.parts(), &vec![1; lambda.weight()])
}

/// `chi^(n-1,1) = Fix - 1`.
pub fn hook_char_n11(mu: &CycleType) -> i64 {
    assert!(mu.degree() >= 2, "(n-1,1) needs n >= 2");
    mu.c(1) as i64 - 1
}

/// `chi^(2,1^(n-2)) = sgn (Fix - 1)`.
pub fn cohook_char(mu: &CycleType) -> i64 {
    mu.sign() * hook_char_n11(mu)
}

/// `chi^(n-3,1,1,1) = C(c1-1, 3) - (c1-1) c2 + c3`.
pub fn char_n3_111(mu: &CycleType) -> i64 {
    assert!(mu.degree() >= 6, "three-box shapes need n >= 6");
    let (c1, c2, c3) = counts(mu);
    binomial(c1 - 1, 3) - (c1 - 1) * c2 + c3
}

/// `chi^(n-3,3) = C(c1, 3) - C(c1, 2) + (c1-1) c2 + c3`.
pub fn char_n3_3(mu: &CycleType) -> i64 {
    assert!(mu.degree() >= 6, "three-box shapes need n >= 6");
    let (c1, c2, c3) = counts(mu);
    binomial(c1, 3) - binomial(c1, 2) + (c1 - 1) * c2 + c3
}

/// `chi^(4,1^(n-4)) - chi^(2,2,2,1^(n-6)) = sgn (c1 - 1)(1 - 2 c2)`.
pub fn twin_diff_char(mu: &CycleType) -> i64 {
    assert!(mu.degree() >= 6, "(2,2,2,1^(n-6)) needs n >= 6");
    let (c1, c2, _) = counts(mu);
    mu.sign() * (c1 - 1) * (1 - 2 * c2)
}

fn counts(mu: &CycleType) -> (i64, i64, i64) {
    (mu.c(1) as i64, mu.c(2) as i64, mu.c(3) as i64)
}

/// `(2,2,2,1^(n-6))`.
pub fn twin_partner(n: usize) -> Partition {
    assert!(n >= 6);
    let mut parts = vec![2, 2, 2];
    parts.extend(std::iter::repeat_n(1, n - 6));
    Partition::new(parts).expect("valid shape")
}
