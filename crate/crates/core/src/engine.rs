//! Immanants of the Cayley table `M_G = (x_{a+b})`.
//!
//! Full polynomials come from a sweep over all permutations of G, weighted
//! by a class function. The orbit mode builds one monomial per orbit of the
//! translation action `(g * s)(u) = s(u - g) - g`, which preserves the sign
//! and the produced monomial (but not the cycle type). Per-monomial data is
//! gathered by capacity-constrained backtracking instead.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::character::{mn_character, twin_diff_char};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, GroupTable};
use crate::partition::{CycleType, Partition};
use crate::perm::{pack_lengths, packed_cycle_type};
use crate::poly::{GroupPolynomial, Monomial};

/// Largest order for which full immanants are enumerated.
pub const ENVELOPE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    BruteForce,
    Orbit,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruteforce" | "brute" => Ok(Mode::BruteForce),
            "orbit" => Ok(Mode::Orbit),
            other => Err(Error::Precondition(format!("unknown mode {other:?}"))),
        }
    }
}

fn check_envelope(spec: &GroupSpec) -> Result<()> {
    if spec.order() > ENVELOPE {
        return Err(Error::EnvelopeExceeded {
            order: spec.order(),
            limit: ENVELOPE,
        });
    }
    Ok(())
}

/// Class-function weights keyed by packed cycle type.
fn weight_table<F>(n: usize, weight: F) -> Result<HashMap<u128, i64>>
where
    F: Fn(&CycleType) -> Result<i64>,
{
    CycleType::all(n)
        .into_iter()
        .map(|mu| Ok((pack_lengths(&mu.lengths()), weight(&mu)?)))
        .collect()
}

/// `sum_sigma w(type sigma) prod_a x_{a + sigma(a)}` for a class function `w`.
pub fn class_sum<F>(spec: &GroupSpec, mode: Mode, weight: F) -> Result<GroupPolynomial>
where
    F: Fn(&CycleType) -> Result<i64>,
{
    check_envelope(spec)?;
    let table = GroupTable::new(spec);
    let weights = weight_table(spec.order(), weight)?;
    let acc = match mode {
        Mode::BruteForce => sweep_all(&table, &weights),
        Mode::Orbit => sweep_orbits(&table, &weights),
    };
    let n = spec.order();
    GroupPolynomial::from_terms(
        spec,
        acc.into_iter()
            .map(|(key, c)| (Monomial::unpack(key, n), BigInt::from(c))),
    )
}

pub fn immanant(spec: &GroupSpec, lambda: &Partition, mode: Mode) -> Result<GroupPolynomial> {
    if lambda.weight() != spec.order() {
        return Err(Error::WeightMismatch {
            partition: lambda.weight(),
            degree: spec.order(),
        });
    }
    class_sum(spec, mode, |mu| mn_character(lambda, mu))
}

pub fn determinant(spec: &GroupSpec) -> Result<GroupPolynomial> {
    class_sum(spec, Mode::BruteForce, |mu| Ok(mu.sign()))
}

pub fn permanent(spec: &GroupSpec) -> Result<GroupPolynomial> {
    class_sum(spec, Mode::BruteForce, |_| Ok(1))
}

/// `sum_sigma sgn(sigma) chi^lambda(sigma) prod x`; equals the immanant of
/// the conjugate shape.
pub fn sign_twisted_immanant(spec: &GroupSpec, lambda: &Partition) -> Result<GroupPolynomial> {
    if lambda.weight() != spec.order() {
        return Err(Error::WeightMismatch {
            partition: lambda.weight(),
            degree: spec.order(),
        });
    }
    class_sum(spec, Mode::BruteForce, |mu| {
        Ok(mu.sign() * mn_character(lambda, mu)?)
    })
}

/// `imm_(4,1^(n-4)) - imm_(2,2,2,1^(n-6))` in one sweep.
pub fn twin_difference(spec: &GroupSpec) -> Result<GroupPolynomial> {
    if spec.order() < 6 {
        return Err(Error::Precondition(format!(
            "twin shapes need order >= 6, got {}",
            spec.order()
        )));
    }
    class_sum(spec, Mode::BruteForce, |mu| Ok(twin_diff_char(mu)))
}

type Accumulator = HashMap<u64, i64>;

fn merge(mut a: Accumulator, b: Accumulator) -> Accumulator {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Parallel over the image of the identity element; each branch walks its
/// permutations in lexicographic order of image vectors.
fn sweep_all(table: &GroupTable, weights: &HashMap<u128, i64>) -> Accumulator {
    let n = table.order();
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut acc = Accumulator::new();
            let mut perm = vec![0usize; n];
            perm[0] = first;
            let key = 1u64 << (4 * table.add(0, first));
            walk(table, &mut perm, 1, 1u32 << first, key, &mut |p, k| {
                let w = weights[&packed_cycle_type(p)];
                if w != 0 {
                    *acc.entry(k).or_insert(0) += w;
                }
            });
            acc
        })
        .reduce(Accumulator::new, merge)
}

fn walk<F>(table: &GroupTable, perm: &mut [usize], pos: usize, used: u32, key: u64, leaf: &mut F)
where
    F: FnMut(&[usize], u64),
{
    let n = perm.len();
    if pos == n {
        leaf(perm, key);
        return;
    }
    for b in 0..n {
        if used & (1 << b) != 0 {
            continue;
        }
        perm[pos] = b;
        let k = key + (1u64 << (4 * table.add(pos, b)));
        walk(table, perm, pos + 1, used | (1 << b), k, leaf);
    }
}

/// `(gamma * sigma)(u) = sigma(u - gamma) - gamma`.
pub fn translate_conjugate(table: &GroupTable, gamma: usize, sigma: &[usize]) -> Vec<usize> {
    (0..table.order())
        .map(|u| table.sub(sigma[table.sub(u, gamma)], gamma))
        .collect()
}

fn sweep_orbits(table: &GroupTable, weights: &HashMap<u128, i64>) -> Accumulator {
    let n = table.order();
    let total: usize = (1..=n).product();
    let mut visited = vec![0u64; total.div_ceil(64)];
    let mut acc = Accumulator::new();
    let mut perm = vec![0usize; n];
    let mut rank = 0usize;
    let mut orbit = Vec::with_capacity(n);
    walk(table, &mut perm, 0, 0, 0, &mut |p, key| {
        let r = rank;
        rank += 1;
        if visited[r / 64] & (1 << (r % 64)) != 0 {
            return;
        }
        // the action keeps sign and monomial but not cycle type, so the
        // class weight is summed over the members rather than scaled
        orbit.clear();
        let mut w = 0i64;
        for gamma in 0..n {
            let member = translate_conjugate(table, gamma, p);
            let image = crate::perm::rank(&member);
            if !orbit.contains(&image) {
                orbit.push(image);
                visited[image / 64] |= 1 << (image % 64);
                w += weights[&packed_cycle_type(&member)];
            }
        }
        if w != 0 {
            *acc.entry(key).or_insert(0) += w;
        }
    });
    debug_assert_eq!(rank, total);
    acc
}

/// Statistics of `P(m)`, the permutations producing the monomial `m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PermClassStats {
    /// `|P(m)|`
    pub p_m: u64,
    /// `sum sgn` over `P(m)`
    pub d_m: i64,
    pub fix_sum: i64,
    pub signed_fix_sum: i64,
    /// `|P_a(m)|`, permutations with `sigma(0) = a`
    pub per_a_counts: Vec<u64>,
    /// `sum sgn` over `P_a(m)`
    pub per_a_signed: Vec<i64>,
}

fn check_class_monomial(spec: &GroupSpec, m: &Monomial, limit: usize) -> Result<()> {
    let n = spec.order();
    if m.exponents.len() != n || m.degree() as usize != n {
        return Err(Error::Precondition(format!(
            "monomial {m} is not of degree {n} over {spec}"
        )));
    }
    if n > limit {
        return Err(Error::EnvelopeExceeded { order: n, limit });
    }
    Ok(())
}

pub fn perm_class_stats(spec: &GroupSpec, m: &Monomial) -> Result<PermClassStats> {
    check_class_monomial(spec, m, 64)?;
    let n = spec.order();
    let mut stats = PermClassStats {
        per_a_counts: vec![0; n],
        per_a_signed: vec![0; n],
        ..Default::default()
    };
    for_each_perm_of(&GroupTable::new(spec), m, |perm| {
        let sign = crate::perm::sign(perm) as i64;
        let fix = crate::perm::fixed_points(perm) as i64;
        stats.p_m += 1;
        stats.d_m += sign;
        stats.fix_sum += fix;
        stats.signed_fix_sum += sign * fix;
        stats.per_a_counts[perm[0]] += 1;
        stats.per_a_signed[perm[0]] += sign;
    });
    Ok(stats)
}

/// `[m] sum_sigma w(type sigma) prod_a x_{a + sigma(a)}`, summing only over
/// the permutations that produce `m`.
pub fn class_coefficient<F>(spec: &GroupSpec, m: &Monomial, weight: F) -> Result<BigInt>
where
    F: Fn(&CycleType) -> Result<i64>,
{
    // packed cycle types hold up to 25 points
    check_class_monomial(spec, m, 25)?;
    let weights = weight_table(spec.order(), weight)?;
    let mut total = BigInt::from(0);
    for_each_perm_of(&GroupTable::new(spec), m, |perm| {
        total += weights[&packed_cycle_type(perm)];
    });
    Ok(total)
}

/// Calls `visit` on every permutation with `prod_a x_{a + sigma(a)} = m`,
/// in lexicographic order.
fn for_each_perm_of<F: FnMut(&[usize])>(table: &GroupTable, m: &Monomial, mut visit: F) {
    let mut capacity = m.exponents.clone();
    let mut perm = vec![0usize; table.order()];
    backtrack(table, &mut capacity, &mut perm, 0, 0, &mut visit);
}

fn backtrack<F: FnMut(&[usize])>(
    table: &GroupTable,
    capacity: &mut [u32],
    perm: &mut [usize],
    pos: usize,
    used: u64,
    visit: &mut F,
) {
    let n = perm.len();
    if pos == n {
        visit(perm);
        return;
    }
    for b in 0..n {
        if used & (1 << b) != 0 {
            continue;
        }
        let slot = table.add(pos, b);
        if capacity[slot] == 0 {
            continue;
        }
        capacity[slot] -= 1;
        perm[pos] = b;
        backtrack(table, capacity, perm, pos + 1, used | (1 << b), visit);
        capacity[slot] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{next_permutation, sign};
    use crate::poly::monomial_of_perm;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn m(v: &[u32]) -> Monomial {
        Monomial::new(v.to_vec())
    }

    fn poly(spec: &GroupSpec, terms: &[(&[u32], i64)]) -> GroupPolynomial {
        GroupPolynomial::from_terms(spec, terms.iter().map(|(e, c)| (m(e), BigInt::from(*c))))
            .unwrap()
    }

    #[test]
    fn c3_determinant_and_permanent() {
        let c3 = g("c3");
        let det = poly(
            &c3,
            &[
                (&[3, 0, 0], -1),
                (&[0, 3, 0], -1),
                (&[0, 0, 3], -1),
                (&[1, 1, 1], 3),
            ],
        );
        let per = poly(
            &c3,
            &[
                (&[3, 0, 0], 1),
                (&[0, 3, 0], 1),
                (&[0, 0, 3], 1),
                (&[1, 1, 1], 3),
            ],
        );
        assert_eq!(determinant(&c3).unwrap(), det);
        assert_eq!(
            immanant(&c3, &Partition::column(3), Mode::Orbit).unwrap(),
            det
        );
        assert_eq!(permanent(&c3).unwrap(), per);
        assert_eq!(
            immanant(&c3, &Partition::row(3), Mode::BruteForce).unwrap(),
            per
        );
    }

    #[test]
    fn c2_determinant_and_permanent() {
        let c2 = g("c2");
        assert_eq!(
            determinant(&c2).unwrap(),
            poly(&c2, &[(&[2, 0], 1), (&[0, 2], -1)])
        );
        assert_eq!(
            permanent(&c2).unwrap(),
            poly(&c2, &[(&[2, 0], 1), (&[0, 2], 1)])
        );
    }

    #[test]
    fn standard_immanant_vanishes_on_c5() {
        let c5 = g("c5");
        assert!(immanant(&c5, &Partition::hook(5, 4), Mode::BruteForce)
            .unwrap()
            .is_zero());
        assert!(immanant(&c5, &Partition::hook(5, 2), Mode::Orbit)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            immanant(&g("c3"), &Partition::row(4), Mode::BruteForce),
            Err(Error::WeightMismatch { .. })
        ));
        assert!(matches!(
            permanent(&g("c11")),
            Err(Error::EnvelopeExceeded {
                order: 11,
                limit: 10
            })
        ));
        assert!(twin_difference(&g("c5")).is_err());
        assert!(perm_class_stats(&g("c3"), &m(&[1, 1])).is_err());
        assert!(perm_class_stats(&g("c3"), &m(&[1, 1, 0])).is_err());
    }

    #[test]
    fn orbit_and_bruteforce_agree() {
        for s in ["c2", "c3", "c4", "c2xc2", "c5", "c6", "c7"] {
            let spec = g(s);
            for lambda in Partition::all(spec.order()) {
                assert_eq!(
                    immanant(&spec, &lambda, Mode::BruteForce).unwrap(),
                    immanant(&spec, &lambda, Mode::Orbit).unwrap(),
                    "{s} {lambda}"
                );
            }
        }
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        let mut p: Vec<usize> = (0..n).collect();
        let mut out = vec![p.clone()];
        while next_permutation(&mut p) {
            out.push(p.clone());
        }
        out
    }

    #[test]
    fn translation_action_preserves_sign_and_monomial() {
        for s in ["c2", "c3", "c4", "c2xc2", "c5", "c6"] {
            let spec = g(s);
            let t = GroupTable::new(&spec);
            for sigma in all_perms(spec.order()) {
                let mono = monomial_of_perm(&t, &sigma).unwrap();
                for gamma in 0..spec.order() {
                    let tau = translate_conjugate(&t, gamma, &sigma);
                    assert_eq!(sign(&tau), sign(&sigma));
                    assert_eq!(monomial_of_perm(&t, &tau).unwrap(), mono);
                }
            }
        }
    }

    #[test]
    fn translation_action_randomized_on_larger_groups() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for s in ["c7", "c8", "c2xc4"] {
            let spec = g(s);
            let t = GroupTable::new(&spec);
            for _ in 0..200 {
                let mut sigma: Vec<usize> = (0..spec.order()).collect();
                sigma.shuffle(&mut rng);
                let mono = monomial_of_perm(&t, &sigma).unwrap();
                for gamma in 0..spec.order() {
                    let tau = translate_conjugate(&t, gamma, &sigma);
                    assert_eq!(sign(&tau), sign(&sigma));
                    assert_eq!(monomial_of_perm(&t, &tau).unwrap(), mono);
                }
            }
        }
    }

    #[test]
    fn class_coefficient_matches_full_sweep() {
        for name in ["c4", "c6", "c2xc2"] {
            let spec = g(name);
            let n = spec.order();
            let twin_or_hook = twin_difference(&spec)
                .or_else(|_| immanant(&spec, &Partition::hook(n, 2), Mode::BruteForce));
            let full = twin_or_hook.unwrap();
            for m in crate::support::hall_support(&spec) {
                let c = if n >= 6 {
                    class_coefficient(&spec, &m, |mu| Ok(twin_diff_char(mu))).unwrap()
                } else {
                    class_coefficient(&spec, &m, |mu| mn_character(&Partition::hook(n, 2), mu))
                        .unwrap()
                };
                assert_eq!(c, full.coefficient(&m), "{name} {m}");
            }
        }
        let c12 = g("c12");
        let x0 = Monomial::power(12, 0, 12);
        let c = class_coefficient(&c12, &x0, |mu| Ok(twin_diff_char(mu))).unwrap();
        assert_eq!(c, BigInt::from(9));
    }

    #[test]
    fn class_stats_examples() {
        let s = perm_class_stats(&g("c3"), &m(&[1, 1, 1])).unwrap();
        assert_eq!((s.p_m, s.d_m), (3, 3));
        for spec in [g("c4"), g("c5"), g("c2xc2")] {
            let n = spec.order();
            let s = perm_class_stats(&spec, &Monomial::power(n, 0, n as u32)).unwrap();
            assert!(s.p_m >= 1);
        }
        // x1^4 on C4: every a + sigma(a) = 1 forces sigma(a) = 1 - a, a bijection
        let s = perm_class_stats(&g("c4"), &m(&[0, 4, 0, 0])).unwrap();
        let brute = all_perms(4)
            .iter()
            .filter(|p| p.iter().enumerate().all(|(a, &b)| (a + b) % 4 == 1))
            .count() as u64;
        assert_eq!(s.p_m, brute);
        assert_eq!(s.p_m, 1);
        let s = perm_class_stats(&g("c4"), &m(&[0, 0, 0, 0]));
        assert!(s.is_err());
        let s = perm_class_stats(&g("c4"), &m(&[0, 3, 1, 0])).unwrap();
        assert_eq!(
            s,
            PermClassStats {
                per_a_counts: vec![0; 4],
                per_a_signed: vec![0; 4],
                ..Default::default()
            }
        );
    }

    #[test]
    fn class_stats_match_filtering_all_permutations() {
        for s in ["c4", "c2xc2", "c5", "c6"] {
            let spec = g(s);
            let t = GroupTable::new(&spec);
            let mut expected: HashMap<Monomial, (u64, i64, i64)> = HashMap::new();
            for sigma in all_perms(spec.order()) {
                let e = expected
                    .entry(monomial_of_perm(&t, &sigma).unwrap())
                    .or_default();
                e.0 += 1;
                e.1 += sign(&sigma) as i64;
                e.2 += crate::perm::fixed_points(&sigma) as i64;
            }
            for (mono, (p, d, fix)) in expected {
                let st = perm_class_stats(&spec, &mono).unwrap();
                assert_eq!((st.p_m, st.d_m, st.fix_sum), (p, d, fix), "{s} {mono}");
            }
        }
    }
}
