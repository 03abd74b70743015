//! Braid monodromy of real line arrangements.
//!
//! Lines are `y = m·x + c` with exact rational `m`, `c`, projected to the
//! `x`-axis. Fiber positions `1..p` are the lines ordered by increasing `y`
//! (at complex `x`, by increasing real part).
//!
//! The loop around a critical value `x₀` starts at the basepoint `u`, runs
//! left just below the real axis, circles `x₀` counterclockwise and returns
//! the same way. Passing below an intermediate multiple point of `k` lines
//! turns that cluster clockwise by `π` (the inverse Garside word on its
//! positions); circling `x₀` turns its cluster by `2π`. So the lift is
//! `L · Δ²_k · L⁻¹`, computed exactly from the real order of the lines on each
//! interval between critical values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::braid::{self, BraidWord};
use crate::error::{Error, Result};
use crate::factorization::{Factor, Factorization, Nu, Source};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub slope: BigRational,
    pub intercept: BigRational,
}

impl Line {
    pub fn new(slope: BigRational, intercept: BigRational) -> Self {
        Line { slope, intercept }
    }

    pub fn from_ints(slope: i64, intercept: i64) -> Self {
        Line { slope: BigRational::from_integer(slope.into()), intercept: BigRational::from_integer(intercept.into()) }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        &self.slope * x + &self.intercept
    }

    /// The line through two points with distinct `x`.
    pub fn through(p: (&BigRational, &BigRational), q: (&BigRational, &BigRational)) -> Result<Self> {
        let dx = q.0 - p.0;
        if dx.is_zero() {
            return Err(Error::NonGeneric("vertical line".into()));
        }
        let slope = (q.1 - p.1) / dx;
        let intercept = p.1 - &slope * p.0;
        Ok(Line { slope, intercept })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<Line>,
}

/// A multiple point of the arrangement; `lines` are 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub x: BigRational,
    pub y: BigRational,
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalData {
    /// Sorted increasing.
    pub critical_xs: Vec<BigRational>,
    pub u: BigRational,
    /// Fiber values over `u`, increasing.
    pub fiber_order: Vec<BigRational>,
    /// Line index at each fiber position over `u`.
    pub fiber_lines: Vec<usize>,
    /// One entry per critical value, in the order of `critical_xs`.
    pub points: Vec<CriticalPoint>,
}

/// Loops of the geometric base, nearest to the basepoint first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBase {
    pub loops: Vec<CriticalPoint>,
}

impl LineArrangement {
    /// Rejects coincident or parallel lines. Vertex genericity is checked by
    /// [`critical_data`].
    pub fn new(lines: Vec<Line>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::InvalidParams("arrangement needs at least one line".into()));
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i].slope == lines[j].slope {
                    return Err(Error::NonGeneric(format!("lines {} and {} have equal slopes", i + 1, j + 1)));
                }
            }
        }
        Ok(LineArrangement { lines })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Parses `[[slope_num, slope_den, intercept_num, intercept_den], ...]`;
    /// entries may be JSON integers or decimal strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = value.as_array().ok_or_else(|| Error::Parse("expected a JSON array of lines".into()))?;
        let mut lines = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let cells = row
                .as_array()
                .filter(|c| c.len() == 4)
                .ok_or_else(|| Error::Parse(format!("line {}: expected four integers", i + 1)))?;
            let ints: Vec<BigInt> = cells.iter().map(parse_int).collect::<Result<_>>()?;
            if ints[1].is_zero() || ints[3].is_zero() {
                return Err(Error::Parse(format!("line {}: zero denominator", i + 1)));
            }
            lines.push(Line::new(
                BigRational::new(ints[0].clone(), ints[1].clone()),
                BigRational::new(ints[2].clone(), ints[3].clone()),
            ));
        }
        Self::new(lines)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let int = |i: &BigInt| match i64::try_from(i) {
            Ok(v) => serde_json::Value::from(v),
            Err(_) => serde_json::Value::from(i.to_string()),
        };
        serde_json::Value::Array(
            self.lines
                .iter()
                .map(|l| {
                    serde_json::Value::Array(vec![
                        int(l.slope.numer()),
                        int(l.slope.denom()),
                        int(l.intercept.numer()),
                        int(l.intercept.denom()),
                    ])
                })
                .collect(),
        )
    }

    /// Line indices ordered by increasing value at `x`. Ties are broken by
    /// slope, which gives the order just to the right of `x`.
    pub fn order_at(&self, x: &BigRational) -> Vec<usize> {
        let vals: Vec<BigRational> = self.lines.iter().map(|l| l.eval(x)).collect();
        let mut idx: Vec<usize> = (0..self.lines.len()).collect();
        idx.sort_by(|&i, &j| vals[i].cmp(&vals[j]).then_with(|| self.lines[i].slope.cmp(&self.lines[j].slope)));
        idx
    }
}

fn parse_int(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => {
            n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("{n} is not an integer")))
        }
        serde_json::Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("{s:?} is not an integer"))),
        other => Err(Error::Parse(format!("{other} is not an integer"))),
    }
}

/// Critical values of the projection, the basepoint and its fiber.
pub fn critical_data(arr: &LineArrangement) -> Result<CriticalData> {
    let lines = arr.lines();
    let mut by_x: BTreeMap<BigRational, CriticalPoint> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let dm = &lines[i].slope - &lines[j].slope;
            if dm.is_zero() {
                return Err(Error::NonGeneric(format!("lines {} and {} have equal slopes", i + 1, j + 1)));
            }
            let x = (&lines[j].intercept - &lines[i].intercept) / dm;
            let y = lines[i].eval(&x);
            match by_x.get_mut(&x) {
                Some(p) if p.y != y => {
                    return Err(Error::NonGeneric(format!("two distinct vertices over x = {x}")));
                }
                Some(p) => {
                    for l in [i, j] {
                        if !p.lines.contains(&l) {
                            p.lines.push(l);
                        }
                    }
                }
                None => {
                    by_x.insert(x.clone(), CriticalPoint { x, y, lines: vec![i, j] });
                }
            }
        }
    }
    let mut points: Vec<CriticalPoint> = by_x.into_values().collect();
    for p in &mut points {
        p.lines.sort_unstable();
    }
    let u = match points.last() {
        Some(p) => &p.x + BigRational::one(),
        None => BigRational::one(),
    };
    let fiber_lines = arr.order_at(&u);
    let fiber_order = fiber_lines.iter().map(|&l| lines[l].eval(&u)).collect();
    Ok(CriticalData { critical_xs: points.iter().map(|p| p.x.clone()).collect(), u, fiber_order, fiber_lines, points })
}

pub fn g_base(data: &CriticalData) -> GBase {
    GBase { loops: data.points.iter().rev().cloned().collect() }
}

/// Consecutive fiber positions (1-based start, length) of `cluster` in `order`.
fn cluster_block(order: &[usize], cluster: &[usize]) -> Result<(usize, usize)> {
    let mut pos: Vec<usize> =
        cluster.iter().map(|l| order.iter().position(|o| o == l).expect("line present in order")).collect();
    pos.sort_unstable();
    let start = pos[0];
    if pos.iter().enumerate().any(|(o, &p)| p != start + o) {
        return Err(Error::NonGeneric("cluster not consecutive in the fiber".into()));
    }
    Ok((start + 1, pos.len()))
}

/// Fiber block `(start, len)` of every critical point, taken just to its
/// right. Sweeping leftward, each multiple point reverses its cluster.
fn sweep_blocks(arr: &LineArrangement, data: &CriticalData) -> Result<Vec<(usize, usize)>> {
    let mut order = data.fiber_lines.clone();
    let mut blocks = vec![(0, 0); data.points.len()];
    for idx in (0..data.points.len()).rev() {
        let (s, k) = cluster_block(&order, &data.points[idx].lines)?;
        order[s - 1..s - 1 + k].reverse();
        blocks[idx] = (s, k);
    }
    debug_assert!(
        data.points.is_empty() || {
            let left = &data.points[0].x - BigRational::one();
            order == arr.order_at(&left)
        }
    );
    Ok(blocks)
}

fn loop_word(n: usize, blocks: &[(usize, usize)], target: usize) -> Result<BraidWord> {
    let mut corridor: Vec<i32> = Vec::new();
    for &(s, k) in blocks[target + 1..].iter().rev() {
        corridor.extend(braid::half_rotation_on(n, s, k)?.inverse().letters());
    }
    let (s, k) = blocks[target];
    let l = BraidWord::new(n, corridor)?;
    let twist = braid::full_twist_on(n, s, k)?;
    Ok(l.compose(&twist)?.compose(&l.inverse())?.freely_reduced())
}

/// Lift of the `loop_index`-th loop of the geometric base (0-based, nearest
/// to the basepoint first).
pub fn monodromy_oracle(arr: &LineArrangement, loop_index: usize) -> Result<BraidWord> {
    let data = critical_data(arr)?;
    let count = data.points.len();
    if loop_index >= count {
        return Err(Error::LoopOutOfRange { index: loop_index, count });
    }
    let blocks = sweep_blocks(arr, &data)?;
    loop_word(arr.len(), &blocks, count - 1 - loop_index)
}

/// Lift of the standard loop around an arbitrary real `x`; empty when `x` is
/// not critical.
pub fn monodromy_around(arr: &LineArrangement, x: &BigRational) -> Result<BraidWord> {
    let data = critical_data(arr)?;
    match data.points.iter().position(|p| &p.x == x) {
        Some(idx) => loop_word(arr.len(), &sweep_blocks(arr, &data)?, idx),
        None => Ok(BraidWord::identity(arr.len())),
    }
}

/// One factor per multiple point, in geometric-base order.
pub fn arrangement_monodromy_factorization(arr: &LineArrangement) -> Result<Factorization> {
    let data = critical_data(arr)?;
    let blocks = sweep_blocks(arr, &data)?;
    let mut factors = Vec::with_capacity(data.points.len());
    for idx in (0..data.points.len()).rev() {
        let p = &data.points[idx];
        let word = loop_word(arr.len(), &blocks, idx)?;
        let nu = if p.lines.len() == 2 { Nu::Two } else { Nu::Twist };
        let lines1: Vec<usize> = p.lines.iter().map(|l| l + 1).collect();
        let mut f = Factor::word(word, Source::Crossing(lines1), nu, format!("x = {}", p.x));
        let (s, k) = blocks[idx];
        f.support = (s..s + k).collect();
        factors.push(f);
    }
    Ok(Factorization::new(arr.len(), factors))
}

/// `σ₁^ν` in `B₂`: the local monodromy of `y² = x^ν`.
pub fn local_model(nu: i64) -> Result<BraidWord> {
    let e = Nu::from_int(nu)?.exponent().expect("finite exponent");
    Ok(BraidWord::new(2, vec![1])?.pow(e))
}

/// Rational `p/q` as a compact string.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
