//! Ordered factorizations of the full twist with per-factor metadata.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord};
use crate::error::{Error, Result};

/// Exponent class of a factor: `H^ν` for a half-twist `H`, or a full twist of
/// more than two strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nu {
    One,
    Two,
    Three,
    Twist,
}

impl Nu {
    pub fn from_int(nu: i64) -> Result<Self> {
        match nu {
            1 => Ok(Nu::One),
            2 => Ok(Nu::Two),
            3 => Ok(Nu::Three),
            other => Err(Error::InvalidNu(other)),
        }
    }

    /// The exponent for half-twist powers, `None` for [`Nu::Twist`].
    pub fn exponent(self) -> Option<i32> {
        match self {
            Nu::One => Some(1),
            Nu::Two => Some(2),
            Nu::Three => Some(3),
            Nu::Twist => None,
        }
    }
}

impl Serialize for Nu {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.exponent() {
            Some(e) => s.serialize_i32(e),
            None => s.serialize_str("twist"),
        }
    }
}

impl<'de> Deserialize<'de> for Nu {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "twist" => Ok(Nu::Twist),
            serde_json::Value::Number(n) => {
                n.as_i64().and_then(|v| Nu::from_int(v).ok()).ok_or_else(|| D::Error::custom(format!("invalid nu {n}")))
            }
            other => Err(D::Error::custom(format!("invalid nu {other}"))),
        }
    }
}

/// Where a factor comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// A numbered vertex `a_i` of a degeneration complex.
    Vertex(usize),
    /// A pair of disjoint lines `(L_i, L_j)`, `i < j`.
    Pair(usize, usize),
    /// A multiple point of a line arrangement, given by its (1-based) lines.
    Crossing(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorMeta {
    pub source: Source,
    pub nu: Nu,
    pub claimed_degree: i64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    /// `None` for degree-only placeholders.
    pub word: Option<BraidWord>,
    pub meta: FactorMeta,
    /// Fiber positions (1-based) the factor is supported on.
    #[serde(default)]
    pub support: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub six_point_type: Option<u8>,
    /// For type 1 six-points: the local line numbering after a quarter turn.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_renumbering: Option<Vec<usize>>,
}

impl Factor {
    pub fn word(word: BraidWord, source: Source, nu: Nu, label: impl Into<String>) -> Self {
        let claimed_degree = word.exponent_sum();
        let support = word.support();
        Factor {
            word: Some(word),
            meta: FactorMeta { source, nu, claimed_degree, label: label.into() },
            support,
            six_point_type: None,
            local_renumbering: None,
        }
    }

    pub fn placeholder(source: Source, claimed_degree: i64, support: Vec<usize>, label: impl Into<String>) -> Self {
        Factor {
            word: None,
            meta: FactorMeta { source, nu: Nu::Twist, claimed_degree, label: label.into() },
            support,
            six_point_type: None,
            local_renumbering: None,
        }
    }

    pub fn is_placeholder(&self) -> bool {
        self.word.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub strand_count: usize,
    pub factors: Vec<Factor>,
    /// Set when every factor is word-level and the list is meant to multiply
    /// to the full twist.
    pub complete: bool,
}

impl Factorization {
    pub fn new(strand_count: usize, factors: Vec<Factor>) -> Self {
        let complete = factors.iter().all(|f| f.word.is_some());
        Factorization { strand_count, factors, complete }
    }

    pub fn expected_degree(&self) -> i64 {
        let p = self.strand_count as i64;
        p * (p - 1)
    }

    pub fn total_claimed_degree(&self) -> i64 {
        self.factors.iter().map(|f| f.meta.claimed_degree).sum()
    }

    /// Checks strand counts and that each word's exponent sum matches its claim.
    pub fn validate(&self) -> Result<()> {
        for (index, f) in self.factors.iter().enumerate() {
            if let Some(w) = &f.word {
                if w.strand_count() != self.strand_count {
                    return Err(Error::StrandMismatch { left: self.strand_count, right: w.strand_count() });
                }
                let actual = w.exponent_sum();
                if actual != f.meta.claimed_degree {
                    return Err(Error::DegreeMismatch { index, actual, claimed: f.meta.claimed_degree });
                }
            }
        }
        Ok(())
    }

    /// Ordered product of the factor words, or `None` if a placeholder is present.
    pub fn product(&self) -> Option<BraidWord> {
        let words: Option<Vec<&BraidWord>> = self.factors.iter().map(|f| f.word.as_ref()).collect();
        braid::product(self.strand_count, words?).ok()
    }

    /// True iff the factorization is complete and its ordered product equals
    /// `Δ²_p`.
    pub fn verify_product_is_full_twist(&self) -> bool {
        if !self.complete || self.strand_count == 0 || self.validate().is_err() {
            return false;
        }
        let Some(prod) = self.product() else { return false };
        if prod.exponent_sum() != self.expected_degree() {
            return false;
        }
        braid::are_equal(&prod, &braid::full_twist(self.strand_count)).unwrap_or(false)
    }

    pub fn audit(&self) -> AuditReport {
        AuditReport::of(self)
    }
}

/// Degree bookkeeping for a (possibly partial) factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub strand_count: usize,
    pub expected: i64,
    pub total: i64,
    /// `p(p-1) - total`.
    pub residual: i64,
    pub vertex_subtotals: BTreeMap<usize, i64>,
    pub pair_subtotals: Vec<PairSubtotal>,
    pub crossing_subtotals: Vec<CrossingSubtotal>,
    pub placeholders: usize,
    /// Indices of word factors whose exponent sum disagrees with the claim.
    pub mismatched_factors: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSubtotal {
    pub pair: (usize, usize),
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSubtotal {
    pub lines: Vec<usize>,
    pub degree: i64,
}

impl AuditReport {
    pub fn of(f: &Factorization) -> Self {
        let mut vertex_subtotals = BTreeMap::new();
        let mut pairs: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        let mut crossings: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        let mut mismatched_factors = Vec::new();
        let mut placeholders = 0;
        for (i, factor) in f.factors.iter().enumerate() {
            let d = factor.meta.claimed_degree;
            match &factor.meta.source {
                Source::Vertex(v) => *vertex_subtotals.entry(*v).or_insert(0) += d,
                Source::Pair(a, b) => *pairs.entry((*a, *b)).or_insert(0) += d,
                Source::Crossing(lines) => *crossings.entry(lines.clone()).or_insert(0) += d,
            }
            match &factor.word {
                Some(w) if w.exponent_sum() != d => mismatched_factors.push(i),
                Some(_) => {}
                None => placeholders += 1,
            }
        }
        let total = f.total_claimed_degree();
        let expected = f.expected_degree();
        let residual = expected - total;
        AuditReport {
            strand_count: f.strand_count,
            expected,
            total,
            residual,
            vertex_subtotals,
            pair_subtotals: pairs.into_iter().map(|(pair, degree)| PairSubtotal { pair, degree }).collect(),
            crossing_subtotals: crossings
                .into_iter()
                .map(|(lines, degree)| CrossingSubtotal { lines, degree })
                .collect(),
            placeholders,
            passed: residual == 0 && mismatched_factors.is_empty(),
            mismatched_factors,
        }
    }
}
