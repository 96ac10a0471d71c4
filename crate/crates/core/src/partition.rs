//! Integer partitions and permutation cycle types.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::arith::factorial;
use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::PartitionParse {
                input: format!("{parts:?}"),
                reason: "parts must be positive".into(),
            });
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::PartitionParse {
                input: format!("{parts:?}"),
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Self { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// `(first, 1^(n - first))`; `first >= 1`, `first <= n`.
    pub fn hook(n: usize, first: usize) -> Self {
        assert!(first >= 1 && first <= n, "hook arm out of range");
        let mut parts = vec![first];
        parts.extend(std::iter::repeat_n(1, n - first));
        Self { parts }
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let rows = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=rows)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Self { parts }
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (conj.parts[j] - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn hook_dimension(&self) -> BigInt {
        let hooks: BigInt = self
            .hook_lengths()
            .iter()
            .flatten()
            .fold(BigInt::from(1), |acc, &h| acc * h);
        factorial(self.weight()) / hooks
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,1,1,1` or `[4,1,1,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Err(Error::PartitionParse {
                input: s.into(),
                reason: "no parts".into(),
            });
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::PartitionParse {
                        input: s.into(),
                        reason: format!("{t:?} is not a positive integer"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| match e {
            Error::PartitionParse { reason, .. } => Error::PartitionParse {
                input: s.into(),
                reason,
            },
            other => other,
        })
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Conjugacy class of a permutation: `counts[i]` is the number of `i`-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    /// From cycle lengths in any order.
    pub fn from_lengths(lengths: &[usize]) -> Self {
        let degree: usize = lengths.iter().sum();
        let mut counts = vec![0; degree + 1];
        for &l in lengths {
            assert!(l > 0, "zero-length cycle");
            counts[l] += 1;
        }
        Self { counts }
    }

    pub fn from_partition(p: &Partition) -> Self {
        Self::from_lengths(p.parts())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_lengths(&vec![1; n])
    }

    /// Cycle type of a permutation given as an image vector on `0..n`.
    pub fn of_permutation(perm: &[usize]) -> Self {
        Self::from_lengths(&crate::perm::cycle_lengths(perm))
    }

    /// Every cycle type of `S_n`.
    pub fn all(n: usize) -> Vec<CycleType> {
        Partition::all(n).iter().map(Self::from_partition).collect()
    }

    pub fn degree(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, c)| i * c).sum()
    }

    /// Number of `i`-cycles.
    pub fn c(&self, i: usize) -> usize {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub fn fixed_points(&self) -> usize {
        self.c(1)
    }

    pub fn sign(&self) -> i64 {
        let odd: usize = self
            .counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i - 1) * c)
            .sum();
        if odd.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Cycle lengths, weakly decreasing.
    pub fn lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &c) in self.counts.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i, c));
        }
        out
    }

    pub fn as_partition(&self) -> Partition {
        Partition {
            parts: self.lengths(),
        }
    }

    /// Order of the centralizer: `prod i^c_i c_i!`.
    pub fn centralizer_order(&self) -> BigInt {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigInt::from(1), |acc, (i, &c)| {
                acc * BigInt::from(i).pow(c as u32) * factorial(c)
            })
    }
}
