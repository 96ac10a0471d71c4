//! Sparse polynomials in the variables `x_g`, `g` in G, with big-integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupSpec, GroupTable};
use crate::specialization::RationalSpecialization;

/// Exponent vector indexed by the group's element order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    /// `x_{index}^n`.
    pub fn power(len: usize, index: usize, n: u32) -> Self {
        let mut exponents = vec![0; len];
        exponents[index] = n;
        Self { exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// The sequence that lists every `g` with its multiplicity, element
    /// indices ascending.
    pub fn sequence(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize))
            .collect()
    }

    pub fn from_sequence(len: usize, seq: &[usize]) -> Self {
        let mut exponents = vec![0; len];
        for &g in seq {
            exponents[g] += 1;
        }
        Self { exponents }
    }

    /// Pack into 4-bit slots; needs at most 16 variables and exponents <= 15.
    #[cfg(test)]
    pub(crate) fn pack(&self) -> u64 {
        debug_assert!(self.exponents.len() <= 16);
        self.exponents
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &e)| acc | (u64::from(e) << (4 * i)))
    }

    pub(crate) fn unpack(key: u64, len: usize) -> Self {
        let exponents = (0..len).map(|i| ((key >> (4 * i)) & 0xf) as u32).collect();
        Self { exponents }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `prod_a x_{a + sigma(a)}` for a permutation of element indices.
pub fn monomial_of_perm(table: &GroupTable, sigma: &[usize]) -> Result<Monomial> {
    let n = table.order();
    if sigma.len() != n || !crate::perm::is_bijection(sigma) {
        return Err(Error::Precondition(format!(
            "{sigma:?} is not a permutation of the {n} elements of {}",
            table.spec()
        )));
    }
    let mut exponents = vec![0u32; n];
    for (a, &b) in sigma.iter().enumerate() {
        exponents[table.add(a, b)] += 1;
    }
    Ok(Monomial { exponents })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPolynomial {
    spec: GroupSpec,
    terms: BTreeMap<Monomial, BigInt>,
}

impl GroupPolynomial {
    pub fn zero(spec: &GroupSpec) -> Self {
        Self {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial, dropping zero coefficients and merging repeats.
    pub fn from_terms<I>(spec: &GroupSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let n = spec.order();
        let mut p = Self::zero(spec);
        for (m, c) in terms {
            if m.exponents.len() != n {
                return Err(Error::Precondition(format!(
                    "exponent vector of length {} for a group of order {n}",
                    m.exponents.len()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &GroupPolynomial, c: &BigInt) -> Result<GroupPolynomial> {
        if self.spec != other.spec {
            return Err(Error::MixedSpec {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        let mut out = self.clone();
        if c.is_zero() {
            return Ok(out);
        }
        for (m, coeff) in &other.terms {
            out.add_term(m.clone(), coeff * c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GroupPolynomial) -> Result<GroupPolynomial> {
        self.add_scaled(other, &BigInt::from(-1))
    }

    pub fn evaluate(&self, rho: &RationalSpecialization) -> Result<BigRational> {
        let values = rho.values();
        if values.len() != self.spec.order() {
            return Err(Error::LengthMismatch {
                expected: self.spec.order(),
                got: values.len(),
            });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (v, &e) in values.iter().zip(&m.exponents) {
                if e > 0 {
                    term *= num_traits::pow(v.clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            group: self.spec.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exp: m.exponents.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let spec: GroupSpec = json.group.parse()?;
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let c: BigInt = t.coeff.parse().map_err(|_| {
                    Error::Precondition(format!("coefficient {:?} is not an integer", t.coeff))
                })?;
                Ok((Monomial::new(t.exp.clone()), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(&spec, terms)
    }
}

impl fmt::Display for GroupPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Wire form: `{"group": "c3", "terms": [{"exp": [..], "coeff": "3"}, ..]}`
/// with terms in lexicographic exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub group: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl Serialize for GroupPolynomial {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let json = PolynomialJson::deserialize(deserializer)?;
        GroupPolynomial::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> GroupSpec {
        GroupSpec::cyclic(3)
    }

    fn m(v: &[u32]) -> Monomial {
        Monomial::new(v.to_vec())
    }

    fn det_c3() -> GroupPolynomial {
        GroupPolynomial::from_terms(
            &c3(),
            [
                (m(&[3, 0, 0]), BigInt::from(-1)),
                (m(&[0, 3, 0]), BigInt::from(-1)),
                (m(&[0, 0, 3]), BigInt::from(-1)),
                (m(&[1, 1, 1]), BigInt::from(3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn monomials_of_permutations() {
        let t = GroupTable::new(&c3());
        assert_eq!(monomial_of_perm(&t, &[0, 1, 2]).unwrap(), m(&[1, 1, 1]));
        assert_eq!(monomial_of_perm(&t, &[0, 2, 1]).unwrap(), m(&[3, 0, 0]));
        let t2 = GroupTable::new(&GroupSpec::cyclic(2));
        assert_eq!(monomial_of_perm(&t2, &[1, 0]).unwrap(), m(&[0, 2]));
        assert!(monomial_of_perm(&t, &[0, 0, 1]).is_err());
        assert!(monomial_of_perm(&t, &[0, 1]).is_err());
    }

    #[test]
    fn scaled_addition() {
        let p = det_c3();
        assert_eq!(p.support_size(), 4);
        let zero = p.add_scaled(&p, &BigInt::from(-1)).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.support_size(), 0);
        assert_eq!(p.coefficient(&m(&[1, 1, 1])), BigInt::from(3));
        assert_eq!(p.coefficient(&m(&[2, 1, 0])), BigInt::zero());
        let other = GroupPolynomial::zero(&GroupSpec::cyclic(4));
        assert!(matches!(
            p.add_scaled(&other, &BigInt::one()),
            Err(Error::MixedSpec { .. })
        ));
    }

    #[test]
    fn evaluation() {
        let rho = RationalSpecialization::from_integers(&[1, 0, 0]);
        assert_eq!(
            det_c3().evaluate(&rho).unwrap(),
            BigRational::from_integer((-1).into())
        );
        assert!(GroupPolynomial::zero(&c3())
            .evaluate(&rho)
            .unwrap()
            .is_zero());
        let per_c2 = GroupPolynomial::from_terms(
            &GroupSpec::cyclic(2),
            [(m(&[2, 0]), BigInt::one()), (m(&[0, 2]), BigInt::one())],
        )
        .unwrap();
        let rho = RationalSpecialization::from_integers(&[2, 3]);
        assert_eq!(
            per_c2.evaluate(&rho).unwrap(),
            BigRational::from_integer(13.into())
        );
    }

    #[test]
    fn json_form() {
        let json = serde_json::to_string(&det_c3()).unwrap();
        assert_eq!(
            json,
            r#"{"group":"c3","terms":[{"exp":[0,0,3],"coeff":"-1"},{"exp":[0,3,0],"coeff":"-1"},{"exp":[1,1,1],"coeff":"3"},{"exp":[3,0,0],"coeff":"-1"}]}"#
        );
        let back: GroupPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, det_c3());
        assert_eq!(det_c3().to_string(), "-x2^3 - x1^3 + 3*x0*x1*x2 - x0^3");
    }

    #[test]
    fn packing() {
        let mono = m(&[3, 0, 15, 1]);
        assert_eq!(Monomial::unpack(mono.pack(), 4), mono);
        assert_eq!(
            mono.sequence(),
            vec![0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3]
        );
    }
}
