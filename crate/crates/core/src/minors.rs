//! Exact checks of the principal-minor identities for group matrices at
//! rational specializations.
//!
//! For an invertible `M = (x_{a+b})` the inverse is again of the form
//! `(y_{a+b})`, with `sum_r x_r y_{r+s} = [s = 0]`. Jacobi's complementary
//! minor theorem then expresses the principal minors of size `n-1`, `n-2`,
//! `n-3` through `Delta = det M` and the `y_g`. On odd-order groups these
//! collapse the sums `F1`, `T2`, `T12` enough to make the twin immanants
//! coincide; the reduction `imm_(4,1^(n-4)) - imm_(2,2,2,1^(n-6)) =
//! F1 - det + 2 (T12 - T2)` holds for every square matrix.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupSpec, GroupTable};
use crate::linalg::{self, group_matrix, principal_minor, Matrix};
use crate::poly::GroupPolynomial;
use crate::specialization::RationalSpecialization;

fn check_rho(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<()> {
    if rho.values().len() != spec.order() {
        return Err(Error::LengthMismatch {
            expected: spec.order(),
            got: rho.values().len(),
        });
    }
    Ok(())
}

pub fn specialized_matrix(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<Matrix> {
    check_rho(spec, rho)?;
    Ok(group_matrix(&GroupTable::new(spec), rho.values()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseProfile {
    /// `y_g`, indexed by element order.
    pub y: Vec<BigRational>,
    /// `det M_G` at the specialization.
    pub delta: BigRational,
}

/// Solves the convolution system for `y` and checks that `(y_{a+b})` is the
/// inverse obtained by direct inversion.
pub fn inverse_profile(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<InverseProfile> {
    let table = GroupTable::new(spec);
    let m = specialized_matrix(spec, rho)?;
    let delta = linalg::determinant(&m);
    if delta.is_zero() {
        return Err(Error::Singular { retries: 0 });
    }
    let n = spec.order();
    let x = rho.values();
    // row s: sum_g x_{g - s} y_g = [s = 0]
    let system: Matrix = (0..n)
        .map(|s| (0..n).map(|g| x[table.sub(g, s)].clone()).collect())
        .collect();
    let rhs: Vec<BigRational> = (0..n)
        .map(|s| {
            if s == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let y = linalg::solve(&system, &rhs).ok_or(Error::Singular { retries: 0 })?;
    let profile = InverseProfile { y, delta };
    let inv = linalg::inverse(&m).ok_or(Error::Singular { retries: 0 })?;
    for (a, row) in inv.iter().enumerate() {
        for (b, entry) in row.iter().enumerate() {
            let expected = &profile.y[table.add(a, b)];
            if entry != expected {
                return Err(Error::IdentityFailed {
                    equation: "inverse is group-Hankel",
                    left: entry.to_string(),
                    right: expected.to_string(),
                });
            }
        }
    }
    Ok(profile)
}

/// `sum_r x_r y_{r+s} - [s = 0]` for every `s`.
pub fn conv_residuals(
    spec: &GroupSpec,
    rho: &RationalSpecialization,
    profile: &InverseProfile,
) -> Vec<BigRational> {
    let table = GroupTable::new(spec);
    let n = spec.order();
    let x = rho.values();
    (0..n)
        .map(|s| {
            let sum = (0..n).fold(BigRational::zero(), |acc, r| {
                acc + &x[r] * &profile.y[table.add(r, s)]
            });
            if s == 0 {
                sum - BigRational::one()
            } else {
                sum
            }
        })
        .collect()
}

/// Largest `|inv[a][b] - inv[a'][b']|` over pairs with `a + b = a' + b'`,
/// taken on the directly inverted matrix.
pub fn hankel_defect(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<BigRational> {
    let table = GroupTable::new(spec);
    let m = specialized_matrix(spec, rho)?;
    let inv = linalg::inverse(&m).ok_or(Error::Singular { retries: 0 })?;
    let n = spec.order();
    let mut first: Vec<Option<&BigRational>> = vec![None; n];
    let mut worst = BigRational::zero();
    for (a, row) in inv.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            let slot = &mut first[table.add(a, b)];
            match slot {
                None => *slot = Some(v),
                Some(reference) => {
                    let d = (v - *reference).abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// `F1(A) = sum_i a_ii det A(i|i)`.
pub fn f1(m: &Matrix) -> BigRational {
    (0..m.len()).fold(BigRational::zero(), |acc, i| {
        acc + &m[i][i] * principal_minor(m, &[i])
    })
}

/// `T2(A) = sum_{i<j} a_ij a_ji det A(i,j|i,j)`.
pub fn t2(m: &Matrix) -> BigRational {
    let n = m.len();
    let mut total = BigRational::zero();
    for i in 0..n {
        for j in i + 1..n {
            let w = &m[i][j] * &m[j][i];
            if !w.is_zero() {
                total += w * principal_minor(m, &[i, j]);
            }
        }
    }
    total
}

/// `T12(A) = sum_{i not in {j,k}, j<k} a_ii a_jk a_kj det A(i,j,k|i,j,k)`.
pub fn t12(m: &Matrix) -> BigRational {
    let n = m.len();
    let mut total = BigRational::zero();
    for j in 0..n {
        for k in j + 1..n {
            let pair = &m[j][k] * &m[k][j];
            if pair.is_zero() {
                continue;
            }
            for i in (0..n).filter(|&i| i != j && i != k) {
                let w = &m[i][i] * &pair;
                if !w.is_zero() {
                    total += w * principal_minor(m, &[i, j, k]);
                }
            }
        }
    }
    total
}

pub fn f1_at(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<BigRational> {
    Ok(f1(&specialized_matrix(spec, rho)?))
}

pub fn t2_at(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<BigRational> {
    Ok(t2(&specialized_matrix(spec, rho)?))
}

pub fn t12_at(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<BigRational> {
    let m = specialized_matrix(spec, rho)?;
    if m.len() < 3 {
        return Err(Error::Precondition("T12 needs n >= 3".into()));
    }
    Ok(t12(&m))
}

/// `Gamma(i,j,k)`, the 3x3 minor of `(y_{a+b})` on rows/cols `i, j, k`,
/// taken verbatim for every index triple.
pub fn gamma(table: &GroupTable, y: &[BigRational], i: usize, j: usize, k: usize) -> BigRational {
    let yy = |a: usize, b: usize| &y[table.add(a, b)];
    yy(i, i) * yy(j, j) * yy(k, k)
        + BigRational::from_integer(2.into()) * yy(i, j) * yy(i, k) * yy(j, k)
        - yy(i, i) * yy(j, k) * yy(j, k)
        - yy(j, j) * yy(i, k) * yy(i, k)
        - yy(k, k) * yy(i, j) * yy(i, j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub equation: String,
    pub indices: Vec<usize>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Principal minors of size `n-1`, `n-2`, `n-3` against `Delta y_{2i}`,
/// `Delta (y_{2i} y_{2j} - y_{i+j}^2)` and `Delta Gamma(i,j,k)`.
pub fn jacobi_check(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<JacobiReport> {
    let table = GroupTable::new(spec);
    let m = specialized_matrix(spec, rho)?;
    let prof = inverse_profile(spec, rho)?;
    let (delta, y) = (&prof.delta, &prof.y);
    let n = spec.order();
    let mut report = JacobiReport {
        checked: 0,
        violations: Vec::new(),
    };
    let mut record =
        |equation: &str, indices: Vec<usize>, left: BigRational, right: BigRational| {
            report.checked += 1;
            if left != right {
                report.violations.push(Violation {
                    equation: equation.into(),
                    indices,
                    left: left.to_string(),
                    right: right.to_string(),
                });
            }
        };
    for i in 0..n {
        record(
            "jacobi1",
            vec![i],
            principal_minor(&m, &[i]),
            delta * &y[table.double(i)],
        );
        for j in i + 1..n {
            let yij = &y[table.add(i, j)];
            let rhs = delta * (&y[table.double(i)] * &y[table.double(j)] - yij * yij);
            record("jacobi2", vec![i, j], principal_minor(&m, &[i, j]), rhs);
            for k in j + 1..n {
                let rhs = delta * gamma(&table, y, i, j, k);
                record(
                    "jacobi3",
                    vec![i, j, k],
                    principal_minor(&m, &[i, j, k]),
                    rhs,
                );
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSumScalars {
    pub c: BigRational,
    pub s: BigRational,
    pub b1: BigRational,
    pub b2: BigRational,
    pub b3: BigRational,
    pub b4: BigRational,
    pub b5: BigRational,
    pub two_t2_over_delta: BigRational,
    pub two_t12_over_delta: BigRational,
}

/// Computes `C`, `S`, `B1..B5` from their defining sums and checks the
/// chain `2 T2 / Delta = C - n S`, `B1 = C`, `B2 = S`, `B3 = n S`,
/// `B4 = B5 = S`, `2 T12 / Delta = B1 + 2 B2 - B3 - B4 - B5 = C - n S`.
/// Odd order only.
pub fn minor_sum_scalars(
    spec: &GroupSpec,
    rho: &RationalSpecialization,
) -> Result<MinorSumScalars> {
    let n = spec.order();
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "the minor-sum scalars are only defined here for odd order, got {n}"
        )));
    }
    let table = GroupTable::new(spec);
    let prof = inverse_profile(spec, rho)?;
    let x = rho.values();
    let y = &prof.y;
    let m = specialized_matrix(spec, rho)?;
    let zero = BigRational::zero;

    let mut c = zero();
    let mut s = zero();
    for sg in 0..n {
        let x2 = &x[sg] * &x[sg];
        let inner = (0..n).fold(zero(), |acc, t| {
            acc + &y[t] * &y[table.sub(table.double(sg), t)]
        });
        c += &x2 * inner;
        s += &x2 * &y[sg] * &y[sg];
    }

    let (mut b1, mut b2, mut b3, mut b4, mut b5) = (zero(), zero(), zero(), zero(), zero());
    for i in 0..n {
        let y2i = &y[table.double(i)];
        for j in 0..n {
            let y2j = &y[table.double(j)];
            let yij = &y[table.add(i, j)];
            for k in 0..n {
                let jk = table.add(j, k);
                let w = &x[table.double(i)] * &x[jk] * &x[jk];
                let y2k = &y[table.double(k)];
                let yik = &y[table.add(i, k)];
                let yjk = &y[jk];
                b1 += &w * y2i * y2j * y2k;
                b2 += &w * yij * yik * yjk;
                b3 += &w * y2i * yjk * yjk;
                b4 += &w * y2j * yik * yik;
                b5 += &w * y2k * yij * yij;
            }
        }
    }

    let two = BigRational::from_integer(2.into());
    let nq = BigRational::from_integer(n.into());
    let two_t2_over_delta = &two * t2(&m) / &prof.delta;
    let two_t12_over_delta = &two * t12(&m) / &prof.delta;
    let c_minus_ns = &c - &nq * &s;

    let checks: [(&'static str, &BigRational, BigRational); 8] = [
        (
            "2 T2 / Delta = C - n S",
            &two_t2_over_delta,
            c_minus_ns.clone(),
        ),
        ("B1 = C", &b1, c.clone()),
        ("B2 = S", &b2, s.clone()),
        ("B3 = n S", &b3, &nq * &s),
        ("B4 = S", &b4, s.clone()),
        ("B5 = S", &b5, s.clone()),
        (
            "2 T12 / Delta = B1 + 2 B2 - B3 - B4 - B5",
            &two_t12_over_delta,
            &b1 + &two * &b2 - &b3 - &b4 - &b5,
        ),
        ("2 T12 / Delta = C - n S", &two_t12_over_delta, c_minus_ns),
    ];
    for (equation, left, right) in checks {
        if *left != right {
            return Err(Error::IdentityFailed {
                equation,
                left: left.to_string(),
                right: right.to_string(),
            });
        }
    }
    Ok(MinorSumScalars {
        c,
        s,
        b1,
        b2,
        b3,
        b4,
        b5,
        two_t2_over_delta,
        two_t12_over_delta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// Twin-difference polynomial evaluated at the specialization.
    pub immanant_side: BigRational,
    /// `F1 - det + 2 (T12 - T2)` at the specialization.
    pub minor_side: BigRational,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.immanant_side == self.minor_side
    }
}

/// Compares a precomputed twin-difference polynomial with the minor sums.
pub fn reduction_check_with(
    twin: &GroupPolynomial,
    rho: &RationalSpecialization,
) -> Result<ReductionReport> {
    let spec = twin.spec();
    if spec.order() < 6 {
        return Err(Error::Precondition("twin shapes need order >= 6".into()));
    }
    let m = specialized_matrix(spec, rho)?;
    let two = BigRational::from_integer(2.into());
    let minor_side = f1(&m) - linalg::determinant(&m) + two * (t12(&m) - t2(&m));
    let report = ReductionReport {
        immanant_side: twin.evaluate(rho)?,
        minor_side,
    };
    if !report.holds() {
        return Err(Error::IdentityFailed {
            equation: "twin difference = F1 - det + 2 (T12 - T2)",
            left: report.immanant_side.to_string(),
            right: report.minor_side.to_string(),
        });
    }
    Ok(report)
}

pub fn reduction_check(spec: &GroupSpec, rho: &RationalSpecialization) -> Result<ReductionReport> {
    let twin = crate::engine::twin_difference(spec)?;
    reduction_check_with(&twin, rho)
}
