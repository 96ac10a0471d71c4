//! Supports and coefficients of `per`, `det` and the near-hook immanants
//! without enumerating all of `S_n`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::factorial;
use crate::engine::{perm_class_stats, PermClassStats};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, GroupTable};
use crate::poly::Monomial;
use crate::zerosum::LabelledCoefficients;

/// Exponent vectors of degree `n` whose weighted element sum is zero.
/// These are exactly the monomials of the permanent.
pub fn hall_support(spec: &GroupSpec) -> BTreeSet<Monomial> {
    let table = GroupTable::new(spec);
    let n = spec.order();
    let mut out = BTreeSet::new();
    let mut exps = vec![0u32; n];
    hall_rec(&table, 0, n as u32, 0, &mut exps, &mut out);
    out
}

fn hall_rec(
    table: &GroupTable,
    g: usize,
    left: u32,
    sum: usize,
    exps: &mut [u32],
    out: &mut BTreeSet<Monomial>,
) {
    let n = exps.len();
    if g == n - 1 {
        exps[g] = left;
        let mut s = sum;
        for _ in 0..left {
            s = table.add(s, g);
        }
        if s == 0 {
            out.insert(Monomial::new(exps.to_vec()));
        }
        exps[g] = 0;
        return;
    }
    let mut s = sum;
    for e in 0..=left {
        exps[g] = e;
        hall_rec(table, g + 1, left - e, s, exps, out);
        s = table.add(s, g);
    }
    exps[g] = 0;
}

pub fn is_zero_sum(table: &GroupTable, m: &Monomial) -> bool {
    let mut s = 0;
    for (g, &e) in m.exponents.iter().enumerate() {
        for _ in 0..e {
            s = table.add(s, g);
        }
    }
    s == 0
}

fn check_degree(spec: &GroupSpec, m: &Monomial) -> Result<()> {
    let n = spec.order();
    if m.exponents.len() != n || m.degree() as usize != n {
        return Err(Error::Precondition(format!(
            "monomial {m} is not of degree {n} over {spec}"
        )));
    }
    Ok(())
}

/// Coefficient of `m` in `det(M_G)`, from the labelled coefficient of the
/// lexicographically smallest labelling of `m`.
pub fn det_coeff(spec: &GroupSpec, m: &Monomial) -> Result<BigInt> {
    let table = GroupTable::new(spec);
    det_coeff_with(
        &mut LabelledCoefficients::new(&table),
        spec,
        spec.negation_parity(),
        m,
    )
}

fn det_coeff_with(
    cache: &mut LabelledCoefficients<'_>,
    spec: &GroupSpec,
    parity: i32,
    m: &Monomial,
) -> Result<BigInt> {
    check_degree(spec, m)?;
    let labelled = cache.coeff(&m.sequence())?;
    let denom = m
        .exponents
        .iter()
        .fold(BigInt::from(1), |acc, &e| acc * factorial(e as usize));
    let (q, r) = labelled.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            numerator: labelled.to_string(),
            denominator: denom.to_string(),
            context: "labelled determinant coefficient",
        });
    }
    Ok(q * parity)
}

/// `P(G)`.
pub fn count_p(spec: &GroupSpec) -> usize {
    hall_support(spec).len()
}

/// `D(G)`, evaluating the determinant coefficient on the permanent support.
pub fn count_d(spec: &GroupSpec) -> Result<usize> {
    let table = GroupTable::new(spec);
    let parity = spec.negation_parity();
    let support: Vec<Monomial> = hall_support(spec).into_iter().collect();
    let flags = chunked(&table, &support, |cache, m| {
        det_coeff_with(cache, spec, parity, m).map(|c| !c.is_zero())
    })?;
    Ok(flags.into_iter().filter(|&b| b).count())
}

/// Maps `f` over the support in one contiguous chunk per worker, each with
/// its own coefficient memo (neighbouring monomials share most sub-multisets).
fn chunked<T, F>(table: &GroupTable, support: &[Monomial], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut LabelledCoefficients<'_>, &Monomial) -> Result<T> + Sync,
{
    let size = support.len().div_ceil(rayon::current_num_threads()).max(1);
    let parts = support
        .par_chunks(size)
        .map(|chunk| {
            let mut cache = LabelledCoefficients::new(table);
            chunk
                .iter()
                .map(|m| f(&mut cache, m))
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// `sum_a r(a) lambda_a - n`; the near-hook scalar is this over `n`.
pub fn near_hook_scalar_numerator(table: &GroupTable, m: &Monomial) -> i64 {
    let r = table.doubling_counts();
    let weighted: i64 = r
        .iter()
        .zip(&m.exponents)
        .map(|(&ra, &la)| ra as i64 * la as i64)
        .sum();
    weighted - table.order() as i64
}

/// `([m] imm_(n-1,1), [m] imm_(2,1^(n-2))) = (s p_m, s d_m)`.
pub fn near_hook_coeff(
    spec: &GroupSpec,
    m: &Monomial,
    stats: &PermClassStats,
) -> Result<(BigInt, BigInt)> {
    check_degree(spec, m)?;
    let table = GroupTable::new(spec);
    let num = BigInt::from(near_hook_scalar_numerator(&table, m));
    let n = BigInt::from(spec.order());
    let divide = |x: BigInt, context| {
        let (q, r) = x.div_rem(&n);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision {
                numerator: x.to_string(),
                denominator: n.to_string(),
                context,
            })
        }
    };
    let hook = divide(&num * BigInt::from(stats.p_m), "near-hook coefficient")?;
    let cohook = divide(
        &num * BigInt::from(stats.d_m),
        "conjugate near-hook coefficient",
    )?;
    Ok((hook, cohook))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NearHookRoute {
    /// `p_m`, `d_m` by per-monomial backtracking.
    #[default]
    Backtrack,
    /// `p_m > 0` iff `m` is zero-sum, `d_m` from the partition formula.
    Formula,
}

/// `(I_(n-1,1)(G), I_(2,1^(n-2))(G))`.
pub fn count_i_nearhook(spec: &GroupSpec, route: NearHookRoute) -> Result<(usize, usize)> {
    let table = GroupTable::new(spec);
    let parity = spec.negation_parity();
    let support: Vec<Monomial> = hall_support(spec).into_iter().collect();
    let flags = chunked(&table, &support, |cache, m| -> Result<(bool, bool)> {
        match route {
            NearHookRoute::Backtrack => {
                let stats = perm_class_stats(spec, m)?;
                let (h, c) = near_hook_coeff(spec, m, &stats)?;
                Ok((!h.is_zero(), !c.is_zero()))
            }
            NearHookRoute::Formula => {
                if near_hook_scalar_numerator(&table, m) == 0 {
                    return Ok((false, false));
                }
                let d = det_coeff_with(cache, spec, parity, m)?;
                Ok((true, !d.is_zero()))
            }
        }
    })?;
    let hook = flags.iter().filter(|f| f.0).count();
    let cohook = flags.iter().filter(|f| f.1).count();
    Ok((hook, cohook))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportCounts {
    #[serde(rename = "P")]
    pub p: usize,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "I_hook")]
    pub i_hook: usize,
    #[serde(rename = "I_cohook")]
    pub i_cohook: usize,
}

/// All four counts by formula paths (no `S_n` sweep).
pub fn support_counts(spec: &GroupSpec) -> Result<SupportCounts> {
    let (i_hook, i_cohook) = count_i_nearhook(spec, NearHookRoute::Formula)?;
    Ok(SupportCounts {
        p: count_p(spec),
        d: count_d(spec)?,
        i_hook,
        i_cohook,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{determinant, immanant, permanent, Mode};
    use crate::partition::Partition;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn m(v: &[u32]) -> Monomial {
        Monomial::new(v.to_vec())
    }

    #[test]
    fn c3_support() {
        let hs = hall_support(&g("c3"));
        let expected: BTreeSet<Monomial> =
            [m(&[3, 0, 0]), m(&[0, 3, 0]), m(&[0, 0, 3]), m(&[1, 1, 1])]
                .into_iter()
                .collect();
        assert_eq!(hs, expected);
        assert_eq!(count_p(&g("c3")), 4);
        assert_eq!(count_d(&g("c3")).unwrap(), 4);
        assert_eq!(
            hall_support(&g("c2")),
            [m(&[2, 0]), m(&[0, 2])].into_iter().collect()
        );
    }

    #[test]
    fn identity_power_in_support() {
        for s in ["c4", "c2xc2", "c5", "c3xc3"] {
            let spec = g(s);
            let n = spec.order();
            assert!(hall_support(&spec).contains(&Monomial::power(n, 0, n as u32)));
        }
    }

    #[test]
    fn c3_det_coefficients() {
        assert_eq!(
            det_coeff(&g("c3"), &m(&[1, 1, 1])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            det_coeff(&g("c3"), &m(&[3, 0, 0])).unwrap(),
            BigInt::from(-1)
        );
        assert!(det_coeff(&g("c3"), &m(&[1, 1, 0])).is_err());
    }

    #[test]
    fn det_coeff_matches_bruteforce() {
        for s in ["c2", "c4", "c2xc2", "c5", "c6"] {
            let spec = g(s);
            let det = determinant(&spec).unwrap();
            for mono in hall_support(&spec) {
                assert_eq!(
                    det_coeff(&spec, &mono).unwrap(),
                    det.coefficient(&mono),
                    "{s} {mono}"
                );
            }
            for mono in det.support() {
                assert!(is_zero_sum(&GroupTable::new(&spec), mono));
            }
        }
    }

    #[test]
    fn permanent_support_is_hall_support() {
        for s in ["c4", "c2xc2", "c5", "c6"] {
            let spec = g(s);
            let per: BTreeSet<Monomial> = permanent(&spec).unwrap().support().cloned().collect();
            assert_eq!(per, hall_support(&spec));
        }
    }

    #[test]
    fn near_hook_examples() {
        let c2 = g("c2");
        let mono = m(&[2, 0]);
        let stats = perm_class_stats(&c2, &mono).unwrap();
        assert_eq!((stats.p_m, stats.d_m), (1, 1));
        let (h, c) = near_hook_coeff(&c2, &mono, &stats).unwrap();
        assert_eq!((h, c), (BigInt::from(1), BigInt::from(1)));

        let c6 = g("c6");
        let x06 = Monomial::power(6, 0, 6);
        let t = GroupTable::new(&c6);
        assert_eq!(near_hook_scalar_numerator(&t, &x06), 6);
        let stats = perm_class_stats(&c6, &x06).unwrap();
        let (h, c) = near_hook_coeff(&c6, &x06, &stats).unwrap();
        assert_eq!(h, BigInt::from(stats.p_m));
        assert_eq!(c, BigInt::from(stats.d_m));

        let bad = PermClassStats {
            p_m: 1,
            d_m: 1,
            ..Default::default()
        };
        assert!(matches!(
            near_hook_coeff(&c6, &m(&[5, 1, 0, 0, 0, 0]), &bad),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn near_hook_matches_bruteforce() {
        for s in ["c4", "c5", "c6", "c2xc2"] {
            let spec = g(s);
            let n = spec.order();
            let hook = immanant(&spec, &Partition::hook(n, n - 1), Mode::BruteForce).unwrap();
            let cohook = immanant(&spec, &Partition::hook(n, 2), Mode::BruteForce).unwrap();
            for mono in hall_support(&spec) {
                let stats = perm_class_stats(&spec, &mono).unwrap();
                let (h, c) = near_hook_coeff(&spec, &mono, &stats).unwrap();
                assert_eq!(h, hook.coefficient(&mono));
                assert_eq!(c, cohook.coefficient(&mono));
            }
        }
    }

    #[test]
    fn near_hook_counts() {
        assert_eq!(
            count_i_nearhook(&g("c5"), NearHookRoute::Backtrack).unwrap(),
            (0, 0)
        );
        assert_eq!(
            count_i_nearhook(&g("c5"), NearHookRoute::Formula).unwrap(),
            (0, 0)
        );
        let c6 = g("c6");
        let expected = (count_p(&c6), count_d(&c6).unwrap());
        assert_eq!(
            count_i_nearhook(&c6, NearHookRoute::Backtrack).unwrap(),
            expected
        );
        assert_eq!(
            count_i_nearhook(&c6, NearHookRoute::Formula).unwrap(),
            expected
        );
    }

    #[test]
    fn counts_are_invariant_under_factor_order() {
        let a = support_counts(&g("c2xc4")).unwrap();
        let b = support_counts(&g("c4xc2")).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            support_counts(&g("c3xc2")).unwrap(),
            support_counts(&g("c6")).unwrap()
        );
    }
}
