//! Braid words in the Artin generators and their action on free groups.
//!
//! Conventions used throughout the crate:
//!
//! * A letter `+i` is the positive generator `σᵢ` (counterclockwise exchange of
//!   the punctures in positions `i` and `i+1`), `-i` is `σᵢ⁻¹`.
//! * Words compose left to right, and act on the free group `F_n = ⟨x₁..xₙ⟩`
//!   from the right: `w·(uv) = (w·u)·v`.
//! * `σᵢ` sends `xᵢ ↦ xᵢxᵢ₊₁xᵢ⁻¹`, `xᵢ₊₁ ↦ xᵢ` and fixes the other generators.
//! * The boundary loop is `d = x₁x₂⋯xₙ`; the full twist `Δ²ₙ = (σ₁⋯σₙ₋₁)ⁿ`
//!   then acts as `xᵢ ↦ d xᵢ d⁻¹`.
//!
//! Two words are equal in `Bₙ` iff they induce the same automorphism of `F_n`
//! (the Artin representation is faithful), which gives the word problem
//! decision procedure [`are_equal`].
//!
//! # Half-twist paths
//!
//! A [`PuncturePath`] from `s` to `t` (`s < t`) carries one flag per
//! intermediate puncture `r` (`s < r < t`). Its half-twist is the band word
//!
//! ```text
//! H = c_{t-1} ⋯ c_{s+1} · σ_s · c_{s+1}⁻¹ ⋯ c_{t-1}⁻¹
//! ```
//!
//! where `c_r = σ_r` when the flag at `r` is `Below` and `c_r = σ_r⁻¹` when it
//! is `Above`. The all-below path from 1 to 3 gives `σ₂σ₁σ₂⁻¹`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the Artin generators of `Bₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraidWord", into = "RawBraidWord")]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraidWord {
    strand_count: usize,
    letters: Vec<i32>,
}

impl TryFrom<RawBraidWord> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawBraidWord) -> Result<Self> {
        BraidWord::new(raw.strand_count, raw.letters)
    }
}

impl From<BraidWord> for RawBraidWord {
    fn from(w: BraidWord) -> Self {
        RawBraidWord { strand_count: w.strand_count, letters: w.letters }
    }
}

fn check_strands(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::StrandMismatch { left, right });
    }
    Ok(())
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<i32>) -> Result<Self> {
        if strand_count == 0 {
            return Err(Error::InvalidParams("braid group needs at least one strand".into()));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strand_count {
                return Err(Error::GeneratorOutOfRange { index: l as i64, strands: strand_count });
            }
        }
        Ok(BraidWord { strand_count, letters })
    }

    pub fn identity(strand_count: usize) -> Self {
        assert!(strand_count > 0, "braid group needs at least one strand");
        BraidWord { strand_count, letters: Vec::new() }
    }

    /// `σᵢ^{±1}` in `Bₙ`; `letter` is the signed generator index.
    pub fn generator(strand_count: usize, letter: i32) -> Result<Self> {
        Self::new(strand_count, vec![letter])
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strand_count: self.strand_count, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Concatenation `self · other` (first `self`, then `other`).
    pub fn compose(&self, other: &BraidWord) -> Result<Self> {
        check_strands(self.strand_count, other.strand_count)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strand_count: self.strand_count, letters })
    }

    pub fn pow(&self, exponent: i32) -> Self {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strand_count: self.strand_count, letters }
    }

    /// Removes adjacent `σᵢσᵢ⁻¹` pairs. Does not change the braid.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strand_count: self.strand_count, letters: out }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    pub fn permutation(&self) -> Permutation {
        let n = self.strand_count;
        // pos_of[strand] = current position, strands labelled by starting position
        let mut at: Vec<usize> = (0..n).collect(); // at[position] = strand
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut images = vec![0; n];
        for (pos, &strand) in at.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation { images }
    }

    /// Images `x₁·β, …, xₙ·β` of the free generators.
    pub fn action_images(&self) -> Vec<FreeWord> {
        let n = self.strand_count;
        let mut table: Vec<Vec<i32>> = (1..=n as i32).map(|j| vec![j]).collect();
        // Φ_{σ·rest} = Φ_rest ∘ φ_σ, so fold the letters from the right.
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            let (ti, tj) = (table[i].clone(), table[i + 1].clone());
            if l > 0 {
                table[i] = reduce_concat(&[&ti, &tj, &invert(&ti)]);
                table[i + 1] = ti;
            } else {
                table[i + 1] = reduce_concat(&[&invert(&tj), &ti, &tj]);
                table[i] = tj;
            }
        }
        table.into_iter().map(|letters| FreeWord { rank: n, letters }).collect()
    }

    /// Number of distinct strand indices actually touched by the word.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .letters
            .iter()
            .flat_map(|l| {
                let i = l.unsigned_abs() as usize;
                [i, i + 1]
            })
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Concatenation of braid words with a strand check.
pub fn compose(u: &BraidWord, v: &BraidWord) -> Result<BraidWord> {
    u.compose(v)
}

/// Product of a non-empty sequence of words on the same strand count.
pub fn product<'a, I>(strand_count: usize, words: I) -> Result<BraidWord>
where
    I: IntoIterator<Item = &'a BraidWord>,
{
    let mut letters = Vec::new();
    for w in words {
        check_strands(strand_count, w.strand_count)?;
        letters.extend_from_slice(&w.letters);
    }
    Ok(BraidWord { strand_count, letters })
}

/// `b⁻¹ · a · b`.
pub fn conjugate(a: &BraidWord, b: &BraidWord) -> Result<BraidWord> {
    check_strands(a.strand_count, b.strand_count)?;
    b.inverse().compose(a)?.compose(b)
}

pub fn exponent_sum(u: &BraidWord) -> i64 {
    u.exponent_sum()
}

pub fn permutation(u: &BraidWord) -> Permutation {
    u.permutation()
}

/// Right action of `beta` on the free word `w`.
pub fn artin_action(beta: &BraidWord, w: &FreeWord) -> Result<FreeWord> {
    if beta.strand_count != w.rank {
        return Err(Error::StrandMismatch { left: beta.strand_count, right: w.rank });
    }
    let images = beta.action_images();
    Ok(w.substitute(&images))
}

/// Word problem: `u = v` in `Bₙ` iff both act identically on `x₁..xₙ`.
pub fn are_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    check_strands(u.strand_count, v.strand_count)?;
    if u.letters == v.letters {
        return Ok(true);
    }
    // Cheap necessary conditions first.
    if u.exponent_sum() != v.exponent_sum() || u.permutation() != v.permutation() {
        return Ok(false);
    }
    Ok(u.action_images() == v.action_images())
}

/// `Δ²ₙ = (σ₁σ₂⋯σₙ₋₁)ⁿ`.
pub fn full_twist(n: usize) -> BraidWord {
    assert!(n >= 1, "full_twist needs n >= 1");
    full_twist_on(n, 1, n).expect("valid range")
}

/// Full twist of the `k` consecutive positions `start..start+k` inside `Bₙ`.
pub fn full_twist_on(n: usize, start: usize, k: usize) -> Result<BraidWord> {
    let block = positive_chain(n, start, k)?;
    Ok(block.pow(k as i32))
}

/// Garside half twist `Δ` of the `k` consecutive positions starting at
/// `start`: the counterclockwise rotation of those punctures by `π`.
pub fn half_rotation_on(n: usize, start: usize, k: usize) -> Result<BraidWord> {
    check_block(n, start, k)?;
    let mut letters = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for len in (1..k).rev() {
        letters.extend((0..len).map(|o| (start + o) as i32));
    }
    BraidWord::new(n, letters)
}

fn positive_chain(n: usize, start: usize, k: usize) -> Result<BraidWord> {
    check_block(n, start, k)?;
    BraidWord::new(n, (start..start + k.saturating_sub(1)).map(|i| i as i32).collect())
}

fn check_block(n: usize, start: usize, k: usize) -> Result<()> {
    if n == 0 || start == 0 || k == 0 || start + k - 1 > n {
        return Err(Error::InvalidParams(format!("block of {k} positions at {start} does not fit in {n} strands")));
    }
    Ok(())
}

/// Positive half-twist along `path` in `Bₙ`.
pub fn half_twist(path: &PuncturePath, n: usize) -> Result<BraidWord> {
    if path.t > n {
        return Err(Error::PunctureOutOfRange { index: path.t as i64, rank: n });
    }
    let mut prefix = Vec::with_capacity(path.t - path.s - 1);
    for r in (path.s + 1..path.t).rev() {
        let sign = match path.detours[r - path.s - 1] {
            Detour::Below => 1,
            Detour::Above => -1,
        };
        prefix.push(sign * r as i32);
    }
    let mut letters = prefix.clone();
    letters.push(path.s as i32);
    letters.extend(prefix.iter().rev().map(|l| -l));
    BraidWord::new(n, letters)
}

/// Side on which a half-twist path passes an intermediate puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Detour {
    #[serde(rename = "a")]
    Above,
    #[serde(rename = "b")]
    Below,
}

/// Path between punctures `s < t` with one detour flag per puncture strictly
/// between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPath", into = "RawPath")]
pub struct PuncturePath {
    s: usize,
    t: usize,
    detours: Vec<Detour>,
}

#[derive(Serialize, Deserialize)]
struct RawPath {
    s: usize,
    t: usize,
    detours: Vec<Detour>,
}

impl TryFrom<RawPath> for PuncturePath {
    type Error = Error;

    fn try_from(raw: RawPath) -> Result<Self> {
        PuncturePath::new(raw.s, raw.t, raw.detours)
    }
}

impl From<PuncturePath> for RawPath {
    fn from(p: PuncturePath) -> Self {
        RawPath { s: p.s, t: p.t, detours: p.detours }
    }
}

impl PuncturePath {
    pub fn new(s: usize, t: usize, detours: Vec<Detour>) -> Result<Self> {
        if s == 0 || s >= t {
            return Err(Error::InvalidPath(format!("endpoints must satisfy 1 <= s < t, got ({s}, {t})")));
        }
        if detours.len() != t - s - 1 {
            return Err(Error::InvalidPath(format!(
                "expected {} detour flags between {s} and {t}, got {}",
                t - s - 1,
                detours.len()
            )));
        }
        Ok(PuncturePath { s, t, detours })
    }

    /// The straight path below every intermediate puncture. Endpoints may be
    /// given in either order.
    pub fn below(a: usize, b: usize) -> Result<Self> {
        let (s, t) = (a.min(b), a.max(b));
        Self::new(s, t, vec![Detour::Below; t.saturating_sub(s + 1)])
    }

    /// Path that passes above exactly the punctures for which `above(r)` holds.
    pub fn with_detours(a: usize, b: usize, above: impl Fn(usize) -> bool) -> Result<Self> {
        let (s, t) = (a.min(b), a.max(b));
        if s == t || s == 0 {
            return Err(Error::InvalidPath(format!("endpoints must be distinct and positive, got ({a}, {b})")));
        }
        let detours = (s + 1..t).map(|r| if above(r) { Detour::Above } else { Detour::Below }).collect();
        Self::new(s, t, detours)
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn detours(&self) -> &[Detour] {
        &self.detours
    }
}

/// A permutation of `{1..n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..{n}")));
            }
            seen[i - 1] = true;
            out.push(i - 1);
        }
        Ok(Permutation { images: out })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::InvalidPermutation(format!("({i} {j}) in S_{n}")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// Left-to-right product: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The two moved points (1-based) if this is a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = self.images.iter().enumerate().filter(|(i, j)| i != *j).map(|(i, _)| i + 1).collect();
        match moved.as_slice() {
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }
}

/// A freely reduced word in `F_rank = ⟨x₁..x_rank⟩`; letters are signed
/// generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn new(rank: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::PunctureOutOfRange { index: l as i64, rank });
            }
        }
        Ok(FreeWord { rank, letters: reduce_concat(&[&letters]) })
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        Self::new(rank, vec![i as i32])
    }

    /// The boundary loop `x₁x₂⋯x_rank`.
    pub fn boundary(rank: usize) -> Self {
        FreeWord { rank, letters: (1..=rank as i32).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, letters: invert(&self.letters) }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::StrandMismatch { left: self.rank, right: other.rank });
        }
        Ok(FreeWord { rank: self.rank, letters: reduce_concat(&[&self.letters, &other.letters]) })
    }

    /// Apply the endomorphism `x_j ↦ images[j-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out: Vec<i32> = Vec::new();
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1].letters;
            if l > 0 {
                push_reduced(&mut out, img.iter().copied());
            } else {
                push_reduced(&mut out, img.iter().rev().map(|x| -x));
            }
        }
        FreeWord { rank: self.rank, letters: out }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn invert(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|l| -l).collect()
}

fn push_reduced(out: &mut Vec<i32>, letters: impl Iterator<Item = i32>) {
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

fn reduce_concat(parts: &[&[i32]]) -> Vec<i32> {
    let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        push_reduced(&mut out, p.iter().copied());
    }
    out
}
