//! Finite abelian groups given as products of cyclic factors.
//!
//! Elements are residue vectors, enumerated in mixed-radix lexicographic
//! order (last factor varies fastest) with the identity first. That order
//! fixes the row/column indexing of the Cayley table and the exponent
//! indexing of every monomial.

use std::fmt;
use std::str::FromStr;

use crate::arith::factorize;
use crate::error::{Error, Result};

/// Largest order for which exhaustive operations are supported.
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    factors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub residues: Vec<usize>,
}

impl GroupElement {
    pub fn new(residues: Vec<usize>) -> Self {
        Self { residues }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl GroupSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::GroupParse {
                input: String::new(),
                reason: "at least one cyclic factor is required".into(),
            });
        }
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::GroupParse {
                input: format!("{factors:?}"),
                reason: format!("cyclic order {d} must be at least 2"),
            });
        }
        Ok(Self { factors })
    }

    /// Cyclic group of order `n >= 2`.
    pub fn cyclic(n: usize) -> Self {
        Self::new(vec![n]).expect("cyclic order must be at least 2")
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    /// Invariant factors `d1 | d2 | ... | dk`, each at least 2.
    pub fn canonical(&self) -> GroupSpec {
        // elementary divisors per prime, largest first
        let mut by_prime: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &d in &self.factors {
            for (p, e) in factorize(d) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut invariant = vec![1usize; len];
        for powers in by_prime.values() {
            for (slot, q) in invariant.iter_mut().zip(powers) {
                *slot *= q;
            }
        }
        invariant.reverse();
        if invariant.is_empty() {
            return self.clone();
        }
        GroupSpec { factors: invariant }
    }

    pub fn is_valid(&self, a: &GroupElement) -> bool {
        a.residues.len() == self.factors.len()
            && a.residues.iter().zip(&self.factors).all(|(r, d)| r < d)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.is_valid(a) {
            Ok(())
        } else {
            Err(Error::MalformedElement {
                group: self.to_string(),
                residues: a.residues.iter().map(|&r| r as u64).collect(),
            })
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.factors.len()])
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    /// Mixed-radix decoding; `i` must be below the group order.
    pub fn element_at(&self, mut i: usize) -> GroupElement {
        debug_assert!(i < self.order());
        let mut residues = vec![0; self.factors.len()];
        for (slot, &d) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = i % d;
            i /= d;
        }
        GroupElement::new(residues)
    }

    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(a.residues
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&r, &d)| acc * d + r))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect();
        Ok(GroupElement::new(residues))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.factors)
            .map(|(x, d)| (d - x) % d)
            .collect();
        Ok(GroupElement::new(residues))
    }

    pub fn double(&self, a: &GroupElement) -> Result<GroupElement> {
        self.add(a, a)
    }

    /// `r(a) = |{g : 2g = a}|`.
    pub fn doubling_preimage_count(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        let mut count = 0;
        for g in self.elements() {
            if self.double(&g)? == *a {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn in_2g(&self, a: &GroupElement) -> Result<bool> {
        Ok(self.doubling_preimage_count(a)? > 0)
    }

    /// Sign of the permutation `a -> -a` of the elements.
    pub fn negation_parity(&self) -> i32 {
        let table = GroupTable::new(self);
        let perm: Vec<usize> = (0..table.order()).map(|i| table.neg(i)).collect();
        crate::perm::sign(&perm)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| format!("c{d}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Grammar: `c<d1>xc<d2>x...`, lowercase, each `d >= 2`.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::GroupParse {
            input: s.to_string(),
            reason,
        };
        if s.is_empty() {
            return Err(fail("empty group spec".into()));
        }
        let mut factors = Vec::new();
        for token in s.split('x') {
            let digits = token
                .strip_prefix('c')
                .ok_or_else(|| fail(format!("factor {token:?} must look like c<d>")))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail(format!("factor {token:?} has no cyclic order")));
            }
            let d: usize = digits
                .parse()
                .map_err(|_| fail(format!("cyclic order {digits:?} is out of range")))?;
            if d < 2 {
                return Err(fail(format!("cyclic order {d} must be at least 2")));
            }
            factors.push(d);
        }
        Ok(Self { factors })
    }
}

impl serde::Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All abelian groups of order `n`, one per isomorphism class, in invariant
/// factor form. Empty for `n < 2`.
pub fn abelian_groups_of_order(n: usize) -> Vec<GroupSpec> {
    if n < 2 {
        return Vec::new();
    }
    // one partition of each exponent per prime; combine elementary divisors
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for part in crate::partition::Partition::all(e as usize) {
            for prefix in &choices {
                let mut f = prefix.clone();
                f.extend(part.parts().iter().map(|&k| p.pow(k as u32)));
                next.push(f);
            }
        }
        choices = next;
    }
    let mut out: Vec<GroupSpec> = choices
        .into_iter()
        .map(|f| GroupSpec { factors: f }.canonical())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Index-level arithmetic tables for a group, used by the hot loops.
#[derive(Debug, Clone)]
pub struct GroupTable {
    spec: GroupSpec,
    n: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    double: Vec<usize>,
}

impl GroupTable {
    pub fn new(spec: &GroupSpec) -> Self {
        let elements = spec.elements();
        let n = elements.len();
        let index = |e: &GroupElement| spec.index_of(e).expect("element in range");
        let mut add = vec![0; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                add[i * n + j] = index(&spec.add(a, b).expect("valid"));
            }
        }
        let neg = elements
            .iter()
            .map(|a| index(&spec.neg(a).expect("valid")))
            .collect();
        let double = (0..n).map(|i| add[i * n + i]).collect();
        Self {
            spec: spec.clone(),
            n,
            add,
            neg,
            double,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    #[inline]
    pub fn double(&self, a: usize) -> usize {
        self.double[a]
    }

    /// Sum of a sequence of element indices.
    pub fn sum<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// `r(a)` for every element index.
    pub fn doubling_counts(&self) -> Vec<usize> {
        let mut r = vec![0; self.n];
        for g in 0..self.n {
            r[self.double[g]] += 1;
        }
        r
    }
}
