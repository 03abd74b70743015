//! Regenerated factorization skeleton on doubled strands.
//!
//! Regeneration doubles every line: the fiber point `q_j` of `L_j` becomes
//! the pair `q_j, q_j'` at positions `2j−1, 2j`, so `p = 2p₀`. `Z_{st}` is
//! the positive half-twist along the path from position `s` to position `t`
//! running below the real axis.
//!
//! The factorization is assembled vertex by vertex, `∏ C̃ᵢ P̃ᵢ`:
//!
//! * `C̃ᵢ` holds, for every pair `i < j` of disjoint lines whose `L_j` has its
//!   higher endpoint at `aᵢ`, the four full twists `Z̃²_{ij}, Z̃²_{ij'},
//!   Z̃²_{i'j}, Z̃²_{i'j'}`. `Z̃` paths pass above both copies of every line `m`
//!   with `max(j₀, i+1) ≤ m < j`, where `j₀` is the smallest index of a line
//!   meeting `L_j` at its higher endpoint.
//! * `P̃ᵢ` is the local factorization at `aᵢ`: `Z_{jj'}` on the single line of
//!   an on-curve nonsingular vertex, nothing off the curve, the 3-point
//!   formula, or a degree-only 6-point placeholder (unless a table of local
//!   words is supplied).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord, PuncturePath};
use crate::degeneration::{DegenerationComplex, Direction, VertexClass, VertexKind};
use crate::error::{Error, Result};
use crate::factorization::{AuditReport, Factor, Factorization, Nu, Source};

/// Claimed degree of a 6-point local factorization (`12 · 11`).
pub const SIX_POINT_DEGREE: i64 = 132;

/// Doubling of the degenerate fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegeneratedIndexing {
    pub p0: usize,
}

impl RegeneratedIndexing {
    pub fn new(p0: usize) -> Self {
        RegeneratedIndexing { p0 }
    }

    pub fn strand_count(&self) -> usize {
        2 * self.p0
    }

    /// Position of `q_j`.
    pub fn first(&self, j: usize) -> usize {
        2 * j - 1
    }

    /// Position of `q_j'`.
    pub fn second(&self, j: usize) -> usize {
        2 * j
    }

    /// Line owning a regenerated position.
    pub fn line_of(&self, position: usize) -> usize {
        position.div_ceil(2)
    }
}

/// How the three half-twists of `Z⁽³⁾_{k,jj'}` enter a 3-point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreePointMode {
    /// Each half-twist once.
    Literal,
    /// Each half-twist cubed, as a cusp.
    Cubed,
}

impl ThreePointMode {
    pub fn other(self) -> Self {
        match self {
            ThreePointMode::Literal => ThreePointMode::Cubed,
            ThreePointMode::Cubed => ThreePointMode::Literal,
        }
    }

    fn nu(self) -> Nu {
        match self {
            ThreePointMode::Literal => Nu::One,
            ThreePointMode::Cubed => Nu::Three,
        }
    }
}

impl fmt::Display for ThreePointMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreePointMode::Literal => "literal",
            ThreePointMode::Cubed => "cubed",
        })
    }
}

fn z(n: usize, s: usize, t: usize) -> Result<BraidWord> {
    braid::half_twist(&PuncturePath::below(s, t)?, n)
}

/// The four full twists replacing `Z̃²_{ij}` for disjoint lines `i < j`.
pub fn regenerate_pair_block(c: &DegenerationComplex, i: usize, j: usize) -> Result<Vec<Factor>> {
    if i >= j || j > c.p0() || i == 0 {
        return Err(Error::InvalidParams(format!("need 1 <= i < j <= {}, got ({i}, {j})", c.p0())));
    }
    if c.lines_meet(i, j) {
        return Err(Error::LinesIntersect(i, j));
    }
    let idx = RegeneratedIndexing::new(c.p0());
    let n = idx.strand_count();
    let j0 = first_line_at_higher_end(c, j);
    let lo = j0.max(i + 1);
    let above = |r: usize| {
        let m = idx.line_of(r);
        m >= lo && m < j
    };
    let mut out = Vec::with_capacity(4);
    for (s, sl) in [(idx.first(i), ""), (idx.second(i), "'")] {
        for (t, tl) in [(idx.first(j), ""), (idx.second(j), "'")] {
            let path = PuncturePath::with_detours(s, t, above)?;
            let word = braid::half_twist(&path, n)?.pow(2);
            out.push(Factor::word(word, Source::Pair(i, j), Nu::Two, format!("Z~^2_{{{i}{sl},{j}{tl}}}")));
        }
    }
    Ok(out)
}

/// Smallest index of a line through the higher endpoint of `L_j`.
fn first_line_at_higher_end(c: &DegenerationComplex, j: usize) -> usize {
    let v = c.line(j).endpoints.1;
    c.lines_at(v).iter().copied().filter(|&m| m != j).min().unwrap_or(j)
}

/// The line of a 3-point that carries the cusp: the diagonal one, else the
/// vertical one, lower index first on ties.
pub fn designated_line(c: &DegenerationComplex, lines: &[usize]) -> usize {
    let rank = |d: Direction| match d {
        Direction::Diagonal => 0,
        Direction::Vertical => 1,
        Direction::Horizontal => 2,
    };
    *lines.iter().min_by_key(|&&l| (rank(c.line(l).direction), l)).expect("vertex has lines")
}

/// `P̃ = Z⁽³⁾_{k,jj'} · Z̃_{kk'}` at a 3-point `L_j ∩ L_k`.
pub fn three_point_local(
    c: &DegenerationComplex,
    class: &VertexClass,
    vertex: usize,
    mode: ThreePointMode,
) -> Result<Vec<Factor>> {
    if !class.is_three_point() {
        return Err(Error::WrongVertexKind { vertex, expected: "3-point" });
    }
    let k = designated_line(c, &class.incident_lines);
    let j = *class.incident_lines.iter().find(|&&l| l != k).expect("two lines");
    let idx = RegeneratedIndexing::new(c.p0());
    let n = idx.strand_count();
    let (kk, kp, jj, jp) = (idx.first(k), idx.second(k), idx.first(j), idx.second(j));

    let e = mode.nu().exponent().expect("finite");
    let z_kj = z(n, kk, jj)?;
    let z_kjp = z(n, kk, jp)?;
    let z_jjp = z(n, jj, jp)?;
    let z_kjp_conj = braid::conjugate(&z_kjp, &z_jjp)?;

    let conj = if k < j {
        braid::product(n, [&z(n, kp, jj)?, &z_jjp.inverse(), &z(n, jp, kk)?])?
    } else {
        braid::product(n, [&z(n, kk, jj)?, &z_jjp.inverse(), &z(n, jj, kp)?])?
    };
    let z_kkp = braid::conjugate(&z(n, kk, kp)?, &conj)?.freely_reduced();

    let src = Source::Vertex(vertex);
    let nu = mode.nu();
    Ok(vec![
        Factor::word(z_kj.pow(e).freely_reduced(), src.clone(), nu, format!("Z_{{{k},{j}}}^{e}")),
        Factor::word(z_kjp.pow(e).freely_reduced(), src.clone(), nu, format!("Z_{{{k},{j}'}}^{e}")),
        Factor::word(
            z_kjp_conj.pow(e).freely_reduced(),
            src.clone(),
            nu,
            format!("(Z_{{{k},{j}'}})_{{Z_{{{j},{j}'}}}}^{e}"),
        ),
        Factor::word(z_kkp, src, Nu::One, format!("Z~_{{{k},{k}'}}")),
    ])
}

/// Local words for 6-points, in the braid group on the twelve local strands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixPointTable {
    pub entries: Vec<SixPointEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixPointEntry {
    pub six_type: u8,
    /// How local line numbers `1..6` map to the six lines.
    #[serde(default)]
    pub numeration: LocalNumeration,
    /// Local words in `B₁₂`, one factor each.
    pub factors: Vec<BraidWord>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalNumeration {
    /// Local line `r` is the `r`-th smallest global line.
    #[default]
    Global,
    /// Local line `r` is the line renumbered `r` by the quarter turn.
    QuarterTurn,
}

impl SixPointTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let table: SixPointTable = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for e in &table.entries {
            if !(1..=3).contains(&e.six_type) {
                return Err(Error::Parse(format!("six_type {} not in 1..=3", e.six_type)));
            }
            if e.factors.iter().any(|w| w.strand_count() != 12) {
                return Err(Error::Parse("local 6-point words must have 12 strands".into()));
            }
        }
        Ok(table)
    }

    fn entry(&self, six_type: u8) -> Option<&SixPointEntry> {
        self.entries.iter().find(|e| e.six_type == six_type)
    }
}

/// Replaces each local `σ_i^{±1}` by the below-path half-twist between the
/// `i`-th and `(i+1)`-th support positions.
fn embed_local(local: &BraidWord, support: &[usize], n: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for &l in local.letters() {
        let i = l.unsigned_abs() as usize;
        let h = z(n, support[i - 1], support[i])?;
        let h = if l > 0 { h } else { h.inverse() };
        letters.extend_from_slice(h.letters());
    }
    Ok(BraidWord::new(n, letters)?.freely_reduced())
}

fn nu_of(word: &BraidWord) -> Nu {
    let perm = word.permutation();
    match word.exponent_sum() {
        1 if perm.as_transposition().is_some() => Nu::One,
        2 => Nu::Two,
        3 if perm.as_transposition().is_some() => Nu::Three,
        _ => Nu::Twist,
    }
}

/// Local factorization at a 6-point: the table words when available,
/// otherwise one placeholder of degree 132 on the twelve local strands.
pub fn six_point_local(
    c: &DegenerationComplex,
    class: &VertexClass,
    vertex: usize,
    table: Option<&SixPointTable>,
) -> Result<Vec<Factor>> {
    let VertexKind::SixPoint { six_type, renumbering } = &class.kind else {
        return Err(Error::WrongVertexKind { vertex, expected: "6-point" });
    };
    let idx = RegeneratedIndexing::new(c.p0());
    let n = idx.strand_count();
    let support: Vec<usize> = class.incident_lines.iter().flat_map(|&l| [idx.first(l), idx.second(l)]).collect();

    if let Some(entry) = table.and_then(|t| t.entry(*six_type)) {
        let local_lines: Vec<usize> = match (entry.numeration, renumbering) {
            (LocalNumeration::QuarterTurn, Some(r)) => {
                let mut lines = vec![0; 6];
                for (old, &new) in r.iter().enumerate() {
                    lines[new - 1] = class.incident_lines[old];
                }
                lines
            }
            _ => class.incident_lines.clone(),
        };
        let local_support: Vec<usize> = local_lines.iter().flat_map(|&l| [idx.first(l), idx.second(l)]).collect();
        let mut out = Vec::with_capacity(entry.factors.len());
        for (i, w) in entry.factors.iter().enumerate() {
            let word = embed_local(w, &local_support, n)?;
            let nu = nu_of(&word);
            let mut f = Factor::word(word, Source::Vertex(vertex), nu, format!("6pt{six_type}[{}]", i + 1));
            f.six_point_type = Some(*six_type);
            out.push(f);
        }
        return Ok(out);
    }

    let mut f =
        Factor::placeholder(Source::Vertex(vertex), SIX_POINT_DEGREE, support, format!("6-point type {six_type}"));
    f.six_point_type = Some(*six_type);
    f.local_renumbering = renumbering.clone();
    Ok(vec![f])
}

/// `Z_{jj'}` on the line of an on-curve nonsingular vertex; nothing off the
/// curve.
pub fn special_vertex_local(c: &DegenerationComplex, class: &VertexClass, vertex: usize) -> Result<Vec<Factor>> {
    match class.kind {
        VertexKind::NonsingularOffS => Ok(Vec::new()),
        VertexKind::NonsingularOnS => {
            let j = class.incident_lines[0];
            let idx = RegeneratedIndexing::new(c.p0());
            let w = z(idx.strand_count(), idx.first(j), idx.second(j))?;
            Ok(vec![Factor::word(w, Source::Vertex(vertex), Nu::One, format!("Z_{{{j},{j}'}}"))])
        }
        _ => Err(Error::WrongVertexKind { vertex, expected: "nonsingular vertex" }),
    }
}

/// Disjoint pairs grouped by the vertex they are attached to (the higher
/// endpoint of the larger line), each group in increasing pair order.
pub fn pair_assignment(c: &DegenerationComplex) -> BTreeMap<usize, Vec<(usize, usize)>> {
    let mut out: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, j) in c.disjoint_pairs() {
        out.entry(c.line(j).endpoints.1).or_default().push((i, j));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeChoice {
    Literal,
    Cubed,
    /// Pick the mode whose degree audit balances.
    Auto,
}

#[derive(Clone, Debug, Default)]
pub struct RegenerationOptions<'a> {
    pub mode: Option<ThreePointMode>,
    pub six_point_table: Option<&'a SixPointTable>,
}

/// `∏ C̃ᵢ P̃ᵢ` over all vertices for a fixed 3-point mode.
pub fn regenerated_factorization(
    c: &DegenerationComplex,
    mode: ThreePointMode,
    table: Option<&SixPointTable>,
) -> Result<Factorization> {
    let classes = c.classify_vertices();
    let pairs = pair_assignment(c);
    let idx = RegeneratedIndexing::new(c.p0());
    let mut factors = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        let v = i + 1;
        for &(a, b) in pairs.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            factors.extend(regenerate_pair_block(c, a, b)?);
        }
        let local = match &class.kind {
            VertexKind::NonsingularOffS | VertexKind::NonsingularOnS => special_vertex_local(c, class, v)?,
            VertexKind::ThreePoint { .. } => three_point_local(c, class, v, mode)?,
            VertexKind::SixPoint { .. } => six_point_local(c, class, v, table)?,
            VertexKind::Other { .. } => {
                return Err(Error::WrongVertexKind { vertex: v, expected: "3-point, 6-point or nonsingular vertex" })
            }
        };
        factors.extend(local);
    }
    Ok(Factorization::new(idx.strand_count(), factors))
}

/// Degree audit of a regenerated factorization against `p(p−1)`.
pub fn degree_audit(f: &Factorization, p: usize) -> AuditReport {
    let mut g = f.clone();
    g.strand_count = p;
    AuditReport::of(&g)
}

/// Audit of the regenerated factorization under both 3-point modes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegenerationAudit {
    pub selected_mode: ThreePointMode,
    pub report: AuditReport,
    /// Residual of the mode that was not selected.
    pub other_mode: ThreePointMode,
    pub other_residual: i64,
    pub three_points: usize,
    pub six_points: usize,
    /// Every disjoint pair of lines contributes exactly one block.
    pub pairs_covered_once: bool,
}

/// Mode whose audit balances, else the smaller absolute residual (cubed on
/// ties).
pub fn select_mode(literal_residual: i64, cubed_residual: i64) -> ThreePointMode {
    match (literal_residual == 0, cubed_residual == 0) {
        (true, false) => ThreePointMode::Literal,
        (false, true) | (true, true) => ThreePointMode::Cubed,
        (false, false) if literal_residual.abs() < cubed_residual.abs() => ThreePointMode::Literal,
        _ => ThreePointMode::Cubed,
    }
}

/// Builds the factorization, choosing the 3-point mode by audit unless one
/// is forced.
pub fn regenerate(
    c: &DegenerationComplex,
    opts: &RegenerationOptions<'_>,
) -> Result<(Factorization, RegenerationAudit)> {
    let literal = regenerated_factorization(c, ThreePointMode::Literal, opts.six_point_table)?;
    let cubed = regenerated_factorization(c, ThreePointMode::Cubed, opts.six_point_table)?;
    let p = literal.strand_count;
    let (lr, cr) = (degree_audit(&literal, p).residual, degree_audit(&cubed, p).residual);
    let selected = opts.mode.unwrap_or_else(|| select_mode(lr, cr));
    let (f, other_residual) = match selected {
        ThreePointMode::Literal => (literal, cr),
        ThreePointMode::Cubed => (cubed, lr),
    };
    let classes = c.classify_vertices();
    let covered = pair_coverage(c, &f);
    let audit = RegenerationAudit {
        selected_mode: selected,
        report: degree_audit(&f, p),
        other_mode: selected.other(),
        other_residual,
        three_points: classes.iter().filter(|c| c.is_three_point()).count(),
        six_points: classes.iter().filter(|c| c.is_six_point()).count(),
        pairs_covered_once: covered,
    };
    Ok((f, audit))
}

fn pair_coverage(c: &DegenerationComplex, f: &Factorization) -> bool {
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for factor in &f.factors {
        if let Source::Pair(i, j) = factor.meta.source {
            *seen.entry((i, j)).or_insert(0) += 1;
        }
    }
    let pairs = c.disjoint_pairs();
    seen.len() == pairs.len() && pairs.iter().all(|p| seen.get(p) == Some(&4))
}

/// Rewrites every factor as `Q⁻¹ σ₁^ν Q`, checked by the word problem.
pub fn cuspidal_normal_form(f: &Factorization) -> Result<Vec<(BraidWord, i64)>> {
    let n = f.strand_count;
    let mut out = Vec::with_capacity(f.factors.len());
    for (index, factor) in f.factors.iter().enumerate() {
        let word = factor.word.as_ref().ok_or(Error::NotHalfTwistPower { index })?;
        let (conj, s, nu) = split_power(word).ok_or(Error::NotHalfTwistPower { index })?;
        if factor.meta.nu.exponent().is_some_and(|e| e as i64 != nu) {
            return Err(Error::NotHalfTwistPower { index });
        }
        // σ_s = R⁻¹ σ₁ R with R = ∏_{i<s} σ_{i+1}⁻¹ σ_i⁻¹.
        let mut r = Vec::with_capacity(2 * s);
        for i in 1..s as i32 {
            r.extend([-(i + 1), -i]);
        }
        let q = BraidWord::new(n, r)?.compose(&conj.inverse())?.freely_reduced();
        let h = BraidWord::new(n, vec![1])?.pow(nu as i32);
        if !braid::are_equal(&braid::conjugate(&h, &q)?, word)? {
            return Err(Error::IdentityViolation(format!("normal form of factor {index}")));
        }
        out.push((q, nu));
    }
    Ok(out)
}

/// Splits a word freely equal to `C σ_s^ν C⁻¹` with `ν ∈ {1,2,3}`.
fn split_power(word: &BraidWord) -> Option<(BraidWord, usize, i64)> {
    let w = word.freely_reduced();
    let l = w.letters();
    for nu in 1..=3usize {
        if l.len() < nu || !(l.len() - nu).is_multiple_of(2) {
            continue;
        }
        let h = (l.len() - nu) / 2;
        let core = &l[h..h + nu];
        if core[0] <= 0 || core.iter().any(|&x| x != core[0]) {
            continue;
        }
        if (0..h).all(|i| l[i] == -l[l.len() - 1 - i]) {
            let c = BraidWord::new(w.strand_count(), l[..h].to_vec()).ok()?;
            return Some((c, core[0] as usize, nu as i64));
        }
    }
    None
}
