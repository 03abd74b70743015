//! The degenerated surface `F⁰_k(a,b)` as a triangulated lattice polygon.
//!
//! The polygon is the trapezoid `{0 ≤ y ≤ b, 0 ≤ x ≤ a + k(b − y)}`:
//!
//! * the `a × b` rectangle on the left, each unit square cut along its
//!   anti-diagonal into a lower-left and an upper-right triangle;
//! * `k` Veronese blocks fanned around the apex `(a, b)`. Block `j` is the
//!   image of the standard triangle `{u, v ≥ 0, u + v ≤ b}` under the
//!   unimodular map `(u, v) ↦ (a + (j−1)u + jv, b − u − v)`, triangulated by
//!   the `b²` unit triangles of the standard grid.
//!
//! Each triangle is a plane, each edge shared by two triangles is an
//! intersection line. Vertices are numbered right to left, then bottom to top
//! (sort by `(−x, y)`); lines are numbered by their endpoint ids,
//! lexicographically from the bigger index to the smaller one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{self, Line, LineArrangement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub k: u32,
    pub a: u32,
    pub b: u32,
}

impl Params {
    pub fn new(k: u32, a: u32, b: u32) -> Result<Self> {
        if b == 0 || (a == 0 && k == 0) {
            return Err(Error::InvalidParams(format!("need b >= 1 and (a >= 1 or k >= 1), got ({k}, {a}, {b})")));
        }
        Ok(Params { k, a, b })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Rectangle,
    /// Veronese block `j` (1-based).
    Veronese(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    /// Vertex ids.
    pub vertices: [usize; 3],
    pub region: Region,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCell {
    pub id: usize,
    /// `(lower id, higher id)`.
    pub endpoints: (usize, usize),
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub coord: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationComplex {
    params: Params,
    triangles: Vec<Triangle>,
    vertices: Vec<Vertex>,
    lines: Vec<LineCell>,
    vertex_triangles: Vec<Vec<usize>>,
    vertex_lines: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub planes: usize,
    pub lines: usize,
    pub vertices: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Meet {
    /// The vertex is the higher-indexed endpoint of both lines.
    BothHigher,
    BothLower,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePointSubtype {
    pub lower_line: Direction,
    pub meet: Meet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexKind {
    NonsingularOffS,
    NonsingularOnS,
    ThreePoint {
        subtype: ThreePointSubtype,
    },
    SixPoint {
        six_type: u8,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        renumbering: Option<Vec<usize>>,
    },
    /// Any other incidence pattern (the apex of three or more blocks).
    Other {
        planes: usize,
        lines: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    #[serde(flatten)]
    pub kind: VertexKind,
    pub incident_lines: Vec<usize>,
    pub planes: usize,
}

impl VertexClass {
    pub fn is_three_point(&self) -> bool {
        matches!(self.kind, VertexKind::ThreePoint { .. })
    }

    pub fn is_six_point(&self) -> bool {
        matches!(self.kind, VertexKind::SixPoint { .. })
    }

    pub fn is_special(&self) -> bool {
        matches!(self.kind, VertexKind::NonsingularOffS | VertexKind::NonsingularOnS)
    }
}

fn sort_key(c: (i64, i64)) -> (i64, i64) {
    (-c.0, c.1)
}

fn direction(p: (i64, i64), q: (i64, i64)) -> Direction {
    match (q.0 - p.0, q.1 - p.1) {
        (_, 0) => Direction::Horizontal,
        (0, _) => Direction::Vertical,
        _ => Direction::Diagonal,
    }
}

fn raw_triangles(p: Params) -> Vec<([(i64, i64); 3], Region)> {
    let (a, b, k) = (p.a as i64, p.b as i64, p.k as i64);
    let mut out = Vec::new();
    for x in 0..a {
        for y in 0..b {
            out.push(([(x, y), (x + 1, y), (x, y + 1)], Region::Rectangle));
            out.push(([(x + 1, y), (x + 1, y + 1), (x, y + 1)], Region::Rectangle));
        }
    }
    for j in 1..=k {
        let phi = |u: i64, v: i64| (a + (j - 1) * u + j * v, b - u - v);
        for u in 0..b {
            for v in 0..b - u {
                out.push(([phi(u, v), phi(u + 1, v), phi(u, v + 1)], Region::Veronese(j as u32)));
                if u + v <= b - 2 {
                    out.push(([phi(u + 1, v), phi(u, v + 1), phi(u + 1, v + 1)], Region::Veronese(j as u32)));
                }
            }
        }
    }
    out
}

pub fn build_complex(k: u32, a: u32, b: u32) -> Result<DegenerationComplex> {
    let params = Params::new(k, a, b)?;
    let raw = raw_triangles(params);

    let coords: BTreeSet<((i64, i64), (i64, i64))> =
        raw.iter().flat_map(|(t, _)| t.iter().map(|&c| (sort_key(c), c))).collect();
    let vertices: Vec<Vertex> = coords.iter().enumerate().map(|(i, &(_, coord))| Vertex { id: i + 1, coord }).collect();
    let id_of: BTreeMap<(i64, i64), usize> = vertices.iter().map(|v| (v.coord, v.id)).collect();

    let mut triangles = Vec::with_capacity(raw.len());
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (t, region) in &raw {
        let ids = [id_of[&t[0]], id_of[&t[1]], id_of[&t[2]]];
        for (x, y) in [(0, 1), (1, 2), (0, 2)] {
            let e = (ids[x].min(ids[y]), ids[x].max(ids[y]));
            *edges.entry(e).or_insert(0) += 1;
        }
        let mut sorted = ids;
        sorted.sort_unstable();
        triangles.push(Triangle { vertices: sorted, region: *region });
    }

    let mut inner: Vec<(usize, usize)> = edges.into_iter().filter(|&(_, n)| n == 2).map(|(e, _)| e).collect();
    inner.sort_by_key(|&(lo, hi)| (hi, lo));
    let lines: Vec<LineCell> = inner
        .iter()
        .enumerate()
        .map(|(i, &(lo, hi))| LineCell {
            id: i + 1,
            endpoints: (lo, hi),
            direction: direction(vertices[lo - 1].coord, vertices[hi - 1].coord),
        })
        .collect();

    let mut vertex_triangles = vec![Vec::new(); vertices.len()];
    for (i, t) in triangles.iter().enumerate() {
        for &v in &t.vertices {
            vertex_triangles[v - 1].push(i);
        }
    }
    let mut vertex_lines = vec![Vec::new(); vertices.len()];
    for l in &lines {
        vertex_lines[l.endpoints.0 - 1].push(l.id);
        vertex_lines[l.endpoints.1 - 1].push(l.id);
    }

    Ok(DegenerationComplex { params, triangles, vertices, lines, vertex_triangles, vertex_lines })
}

impl DegenerationComplex {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn lines(&self) -> &[LineCell] {
        &self.lines
    }

    pub fn line(&self, id: usize) -> &LineCell {
        &self.lines[id - 1]
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id - 1]
    }

    /// Sorted ids of the lines through vertex `v`.
    pub fn lines_at(&self, v: usize) -> &[usize] {
        &self.vertex_lines[v - 1]
    }

    pub fn planes_at(&self, v: usize) -> usize {
        self.vertex_triangles[v - 1].len()
    }

    pub fn counts(&self) -> Counts {
        Counts { planes: self.triangles.len(), lines: self.lines.len(), vertices: self.vertices.len() }
    }

    /// `m₀ = b(b+1)/2 + 1`; meaningful for `k = 1`.
    pub fn m0(&self) -> usize {
        let b = self.params.b as usize;
        b * (b + 1) / 2 + 1
    }

    /// `ν₀ = m₀ + a(b+1) + b`; meaningful for `k = 1`.
    pub fn nu0(&self) -> usize {
        let (a, b) = (self.params.a as usize, self.params.b as usize);
        self.m0() + a * (b + 1) + b
    }

    pub fn p0(&self) -> usize {
        self.lines.len()
    }

    /// Whether two lines share an endpoint.
    pub fn lines_meet(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.line(i).endpoints, self.line(j).endpoints);
        a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
    }

    /// All pairs `i < j` of lines without a common vertex.
    pub fn disjoint_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.lines.len();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if !self.lines_meet(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn vertex_regions(&self, v: usize) -> BTreeSet<Region> {
        self.vertex_triangles[v - 1].iter().map(|&t| self.triangles[t].region).collect()
    }

    fn classify_vertex(&self, v: usize) -> VertexClass {
        let lines = self.vertex_lines[v - 1].clone();
        let planes = self.planes_at(v);
        let kind = match (lines.len(), planes) {
            (0, _) => VertexKind::NonsingularOffS,
            (1, _) => VertexKind::NonsingularOnS,
            (2, 3) => {
                let (l1, l2) = (self.line(lines[0]), self.line(lines[1]));
                let meet = match (l1.endpoints.1 == v, l2.endpoints.1 == v) {
                    (true, true) => Meet::BothHigher,
                    (false, false) => Meet::BothLower,
                    _ => Meet::Mixed,
                };
                VertexKind::ThreePoint { subtype: ThreePointSubtype { lower_line: l1.direction, meet } }
            }
            (6, 6) => {
                let regions = self.vertex_regions(v);
                let six_type = if regions.len() > 1 {
                    2
                } else if regions.contains(&Region::Rectangle) {
                    1
                } else {
                    3
                };
                let renumbering = (six_type == 1).then(|| self.quarter_turn_renumbering(v));
                VertexKind::SixPoint { six_type, renumbering }
            }
            (l, p) => VertexKind::Other { planes: p, lines: l },
        };
        VertexClass { kind, incident_lines: lines, planes }
    }

    /// Local numbering of the six lines at `v` after turning the star of `v`
    /// by 90° clockwise: entry `i` is the new local index of the line with
    /// old local index `i + 1` (both 1-based).
    fn quarter_turn_renumbering(&self, v: usize) -> Vec<usize> {
        let c = self.vertex(v).coord;
        let vkey = sort_key(c);
        let keyed: Vec<((i64, i64), (i64, i64))> = self.vertex_lines[v - 1]
            .iter()
            .map(|&l| {
                let e = self.line(l).endpoints;
                let other = self.vertex(if e.0 == v { e.1 } else { e.0 }).coord;
                let (dx, dy) = (other.0 - c.0, other.1 - c.1);
                let turned = sort_key((c.0 + dy, c.1 - dx));
                // Same ordering as line ids: higher endpoint first, then lower.
                if turned > vkey {
                    (turned, vkey)
                } else {
                    (vkey, turned)
                }
            })
            .collect();
        let mut order: Vec<usize> = (0..keyed.len()).collect();
        order.sort_by(|&i, &j| keyed[i].cmp(&keyed[j]));
        let mut renumbering = vec![0; keyed.len()];
        for (new, &old) in order.iter().enumerate() {
            renumbering[old] = new + 1;
        }
        renumbering
    }

    /// Class of every vertex, indexed by `id − 1`.
    pub fn classify_vertices(&self) -> Vec<VertexClass> {
        (1..=self.vertices.len()).map(|v| self.classify_vertex(v)).collect()
    }

    /// Ids of the vertices on at most one line.
    pub fn special_vertices(&self) -> Vec<usize> {
        (1..=self.vertices.len()).filter(|&v| self.vertex_lines[v - 1].len() <= 1).collect()
    }

    /// Plain-text picture of the triangulation with vertex ids.
    pub fn render_ascii(&self) -> String {
        const SX: i64 = 6;
        const SY: i64 = 3;
        let max_x = self.vertices.iter().map(|v| v.coord.0).max().unwrap_or(0);
        let max_y = self.params.b as i64;
        let w = (max_x * SX + 4) as usize;
        let h = (max_y * SY + 1) as usize;
        let mut grid = vec![vec![' '; w]; h];
        let plot = |x: i64, y: i64, ch: char, grid: &mut Vec<Vec<char>>| {
            let row = (max_y * SY - y) as usize;
            if let Some(cell) = grid.get_mut(row).and_then(|r| r.get_mut(x as usize)) {
                *cell = ch;
            }
        };
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for t in &self.triangles {
            let [p, q, r] = t.vertices;
            edges.extend([(p, q), (q, r), (p, r)]);
        }
        for (p, q) in edges {
            let (a, b) = (self.vertex(p).coord, self.vertex(q).coord);
            let (x0, y0, x1, y1) = (a.0 * SX, a.1 * SY, b.0 * SX, b.1 * SY);
            // One mark per text row, so shallow edges stay readable.
            let steps = if y0 == y1 { (x1 - x0).abs() } else { (y1 - y0).abs() };
            let ch = if y0 == y1 {
                '-'
            } else if x0 == x1 {
                '|'
            } else if (x1 - x0).signum() == (y1 - y0).signum() {
                '/'
            } else {
                '\\'
            };
            for s in 1..steps {
                let x = x0 + (x1 - x0) * s / steps;
                let y = y0 + (y1 - y0) * s / steps;
                plot(x, y, ch, &mut grid);
            }
        }
        for v in &self.vertices {
            let label = v.id.to_string();
            for (o, ch) in label.chars().enumerate() {
                plot(v.coord.0 * SX + o as i64, v.coord.1 * SY, ch, &mut grid);
            }
        }
        let mut out = String::new();
        for row in grid {
            let line: String = row.into_iter().collect();
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes = self.classify_vertices();
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .zip(&classes)
            .map(|(v, c)| serde_json::json!({ "id": v.id, "coord": [v.coord.0, v.coord.1], "class": c }))
            .collect();
        let mut counts = serde_json::to_value(self.counts()).expect("counts serialize");
        if self.params.k == 1 {
            counts["m0"] = self.m0().into();
            counts["nu0"] = self.nu0().into();
        }
        serde_json::json!({
            "params": self.params,
            "counts": counts,
            "vertices": vertices,
            "lines": self.lines,
            "triangles": self.triangles,
        })
    }
}

pub fn counts(c: &DegenerationComplex) -> Counts {
    c.counts()
}

pub fn classify_vertices(c: &DegenerationComplex) -> Vec<VertexClass> {
    c.classify_vertices()
}

/// Two lines of the complex without a common vertex whose images cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraCrossing {
    pub lines: (usize, usize),
    pub x: BigRational,
    pub y: BigRational,
}

/// A planar line arrangement realizing the incidences of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedArrangement {
    /// Line `i` of the arrangement is the image of line `L_{i+1}`.
    pub arrangement: LineArrangement,
    /// Image `b_v` of each vertex lying on some line, indexed by `v − 1`.
    pub vertex_points: Vec<Option<(BigRational, BigRational)>>,
    pub extra_crossings: Vec<ExtraCrossing>,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 0x5eed;

const MAX_ATTEMPTS: u64 = 64;

/// Realizes the complex by rational points `b_v` (with `x` decreasing in `v`)
/// and the lines through them. Attempts that produce extra coincidences are
/// retried with the next seed.
pub fn induced_arrangement(c: &DegenerationComplex, seed: u64) -> Result<InducedArrangement> {
    let mut last_err = None;
    for attempt in 0..MAX_ATTEMPTS {
        match try_induce(c, seed.wrapping_add(attempt)) {
            Ok(ind) => return Ok(ind),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::NonGeneric("no generic realization found".into())))
}

fn try_induce(c: &DegenerationComplex, seed: u64) -> Result<InducedArrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = c.vertices.len() as i64;
    let spread = 1_000_000i64;
    let vertex_points: Vec<Option<(BigRational, BigRational)>> = (1..=c.vertices.len())
        .map(|v| {
            if c.lines_at(v).is_empty() {
                return None;
            }
            let x = (nv - v as i64) * spread + rng.gen_range(0..spread / 2);
            let y = rng.gen_range(-spread * nv..spread * nv);
            Some((BigRational::from_integer(x.into()), BigRational::from_integer(y.into())))
        })
        .collect();

    let mut lines = Vec::with_capacity(c.lines.len());
    for l in &c.lines {
        let p = vertex_points[l.endpoints.0 - 1].as_ref().expect("endpoint on a line");
        let q = vertex_points[l.endpoints.1 - 1].as_ref().expect("endpoint on a line");
        lines.push(Line::through((&p.0, &p.1), (&q.0, &q.1))?);
    }
    let arr = LineArrangement::new(lines)?;
    let data = arrangement::critical_data(&arr)?;

    let at_point: BTreeMap<(&BigRational, &BigRational), usize> =
        vertex_points.iter().enumerate().filter_map(|(i, p)| p.as_ref().map(|(x, y)| ((x, y), i + 1))).collect();
    let mut extra_crossings = Vec::new();
    for p in &data.points {
        let ids: Vec<usize> = p.lines.iter().map(|l| l + 1).collect();
        match at_point.get(&(&p.x, &p.y)) {
            Some(&v) => {
                if ids != c.lines_at(v) {
                    return Err(Error::NonGeneric(format!("extra line through the image of a{v}")));
                }
            }
            None => {
                if ids.len() != 2 || c.lines_meet(ids[0], ids[1]) {
                    return Err(Error::NonGeneric("unexpected concurrency".into()));
                }
                extra_crossings.push(ExtraCrossing { lines: (ids[0], ids[1]), x: p.x.clone(), y: p.y.clone() });
            }
        }
    }
    extra_crossings.sort_by_key(|c| c.lines);
    Ok(InducedArrangement { arrangement: arr, vertex_points, extra_crossings, seed })
}
