//! Samplers for the disk model, its Poissonized version, the finite box
//! model, and the neighborhood of a typical point of the infinite model.
//!
//! Coordinates of vertex i come from their own random stream, so a graph is
//! fully determined by (params, seed) whatever the thread count. Edges are
//! found by a banded sweep: vertices are bucketed by radius (or height) into
//! unit-width bands, each band is sorted by angle (or x), and a vertex only
//! tests the candidates of a band that fall inside the widest window any
//! member of that band could connect through. The per-pair test is the same
//! floating-point expression as the naive O(n²) scan, so both constructions
//! agree exactly.

use crate::geom::{angle_distance, sample_radius, torus_distance, PlanePoint, PolarPoint};
use crate::params::{xi_of, ModelParams, ParamError};
use crate::rng::{stream, Domain};
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};

/// Default cap on the number of sampled vertices.
pub const DEFAULT_MAX_VERTICES: u64 = 50_000_000;

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("{requested} vertices exceed the budget of {budget}")]
    Budget { requested: u64, budget: u64 },
    #[error("y0 must be finite and non-negative, got {0}")]
    Height(f64),
    #[error("the {0} model has no finite-graph sampler")]
    Model(ModelTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelTag {
    Kpkvb,
    Poissonized,
    Box,
    /// A typical point (vertex 0) plus its neighbors in the infinite model.
    Typical,
}

impl ModelTag {
    pub fn name(&self) -> &'static str {
        match self {
            ModelTag::Kpkvb => "kpkvb",
            ModelTag::Poissonized => "poissonized",
            ModelTag::Box => "box",
            ModelTag::Typical => "typical",
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "kpkvb" => Ok(ModelTag::Kpkvb),
            "poissonized" => Ok(ModelTag::Poissonized),
            "box" => Ok(ModelTag::Box),
            "typical" => Ok(ModelTag::Typical),
            _ => Err(format!("unknown model '{s}' (expected kpkvb, poissonized or box)")),
        }
    }
}

/// Symmetric, loop-free adjacency with strictly increasing neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Adjacency {
    lists: Vec<Vec<u32>>,
}

impl Adjacency {
    /// Builds from an undirected edge list; duplicates are merged, loops and
    /// out-of-range endpoints rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, String> {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(format!("loop at vertex {u}"));
            }
            if u as usize >= n || v as usize >= n {
                return Err(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Adjacency { lists })
    }

    /// Wraps lists that are already symmetric and sorted.
    fn from_sorted_lists(lists: Vec<Vec<u32>>) -> Self {
        debug_assert!(lists.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Adjacency { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.lists[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.lists.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges (u, v) with u < v in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.lists
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v as usize > u).map(move |&v| (u as u32, v)))
    }

    /// The same graph after renaming vertex v to perm[v].
    pub fn relabel(&self, perm: &[u32]) -> Self {
        let edges: Vec<(u32, u32)> = self.edges().map(|(u, v)| (perm[u as usize], perm[v as usize])).collect();
        Adjacency::from_edges(self.len(), &edges).expect("permutation keeps edges valid")
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coords {
    Polar(Vec<PolarPoint>),
    Plane(Vec<PlanePoint>),
}

impl Coords {
    pub fn len(&self) -> usize {
        match self {
            Coords::Polar(p) => p.len(),
            Coords::Plane(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    pub coords: Coords,
    pub adjacency: Adjacency,
    pub model: ModelTag,
    pub seed: u64,
    pub params: ModelParams,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn mean_degree(&self) -> f64 {
        if self.adjacency.is_empty() {
            return 0.0;
        }
        2.0 * self.adjacency.edge_count() as f64 / self.adjacency.len() as f64
    }

    /// Header `# model=.. alpha=.. nu=.. n=.. R=.. seed=..`, then one `u v`
    /// line per edge with u < v in lexicographic order.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> io::Result<()> {
        let p = &self.params;
        writeln!(
            w,
            "# model={} alpha={} nu={} n={} R={} seed={}",
            self.model, p.alpha, p.nu, p.n, p.r_disk, self.seed
        )?;
        for (u, v) in self.adjacency.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    /// CSV `vertex,r_or_x,theta_or_y`.
    pub fn write_coords<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "vertex,r_or_x,theta_or_y")?;
        match &self.coords {
            Coords::Polar(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    writeln!(w, "{i},{},{}", p.r, p.theta)?;
                }
            }
            Coords::Plane(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    writeln!(w, "{i},{},{}", p.x, p.y)?;
                }
            }
        }
        Ok(())
    }

    /// Re-derives every edge with the naive all-pairs scan and compares.
    pub fn audit(&self) -> bool {
        let rebuilt = match (&self.coords, self.model) {
            (Coords::Polar(ps), _) => naive_polar(ps, self.params.r_disk),
            (Coords::Plane(ps), ModelTag::Typical) => naive_typical(ps),
            (Coords::Plane(ps), _) => naive_plane(ps, box_circumference(self.params.r_disk)),
        };
        rebuilt == self.adjacency
    }
}

/// How edges are constructed; both give identical graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeMethod {
    #[default]
    Banded,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenOptions {
    pub max_vertices: u64,
    pub method: EdgeMethod,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
            method: EdgeMethod::Banded,
        }
    }
}

pub fn generate_kpkvb(params: &ModelParams, seed: u64) -> Result<Graph, GenError> {
    generate(params, seed, ModelTag::Kpkvb, &GenOptions::default())
}

pub fn generate_poissonized(params: &ModelParams, seed: u64) -> Result<Graph, GenError> {
    generate(params, seed, ModelTag::Poissonized, &GenOptions::default())
}

pub fn generate_box(params: &ModelParams, seed: u64) -> Result<Graph, GenError> {
    generate(params, seed, ModelTag::Box, &GenOptions::default())
}

/// Circumference π e^{R/2} of the box's identified x-axis.
pub fn box_circumference(r_disk: f64) -> f64 {
    PI * (0.5 * r_disk).exp()
}

/// Expected vertex count n(1 - e^{-αR}) of the box model.
pub fn box_mass(params: &ModelParams) -> f64 {
    if params.r_disk <= 0.0 {
        return 0.0;
    }
    -(params.n as f64) * (-params.alpha * params.r_disk).exp_m1()
}

pub fn generate(params: &ModelParams, seed: u64, model: ModelTag, opts: &GenOptions) -> Result<Graph, GenError> {
    let count = match model {
        ModelTag::Kpkvb => params.n,
        ModelTag::Poissonized => poisson_count(params.n as f64, seed),
        ModelTag::Box => poisson_count(box_mass(params), seed),
        ModelTag::Typical => {
            return Err(GenError::Model(model));
        }
    };
    if count > opts.max_vertices {
        return Err(GenError::Budget {
            requested: count,
            budget: opts.max_vertices,
        });
    }
    let n = count as usize;
    let r_disk = params.r_disk.max(0.0);
    let (coords, adjacency) = match model {
        ModelTag::Box => {
            let c = box_circumference(r_disk);
            let height_mass = -(-params.alpha * r_disk).exp_m1();
            let pts: Vec<PlanePoint> = map_vertices(n, |i| {
                let mut rng = stream(seed, Domain::Coordinates, i as u64);
                let ux: f64 = rng.random();
                let uy: f64 = rng.random();
                PlanePoint {
                    x: 0.5 * c - c * ux,
                    y: (-(-uy * height_mass).ln_1p() / params.alpha).min(r_disk),
                }
            });
            let adj = match opts.method {
                EdgeMethod::Banded => banded_plane(&pts, r_disk, c),
                EdgeMethod::Naive => naive_plane(&pts, c),
            };
            (Coords::Plane(pts), adj)
        }
        _ => {
            let pts: Vec<PolarPoint> = map_vertices(n, |i| {
                let mut rng = stream(seed, Domain::Coordinates, i as u64);
                let ut: f64 = rng.random();
                let ur: f64 = rng.random();
                PolarPoint {
                    r: sample_radius(params.alpha, r_disk, ur).expect("u in [0,1)"),
                    theta: PI - 2.0 * PI * ut,
                }
            });
            let adj = match opts.method {
                EdgeMethod::Banded => banded_polar(&pts, r_disk),
                EdgeMethod::Naive => naive_polar(&pts, r_disk),
            };
            (Coords::Polar(pts), adj)
        }
    };
    Ok(Graph {
        coords,
        adjacency,
        model,
        seed,
        params: *params,
    })
}

fn poisson_count(mean: f64, seed: u64) -> u64 {
    if !(mean > 0.0) {
        return 0;
    }
    let mut rng = stream(seed, Domain::Count, 0);
    Poisson::new(mean).expect("positive finite mean").sample(&mut rng) as u64
}

#[cfg(feature = "parallel")]
fn map_vertices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_vertices<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// The disk edge test cosh r cosh r' - sinh r sinh r' cos Δθ <= cosh R with
/// cached hyperbolic functions; bit-identical to `geom::is_connected_polar`.
struct PolarCache {
    ch: Vec<f64>,
    sh: Vec<f64>,
    theta: Vec<f64>,
    cosh_r: f64,
}

impl PolarCache {
    fn new(pts: &[PolarPoint], r_disk: f64) -> Self {
        PolarCache {
            ch: pts.iter().map(|p| p.r.cosh()).collect(),
            sh: pts.iter().map(|p| p.r.sinh()).collect(),
            theta: pts.iter().map(|p| p.theta).collect(),
            cosh_r: r_disk.cosh(),
        }
    }

    #[inline]
    fn connected(&self, i: usize, j: usize) -> bool {
        let dth = angle_distance(self.theta[i], self.theta[j]);
        self.ch[i] * self.ch[j] - self.sh[i] * self.sh[j] * dth.cos() <= self.cosh_r
    }
}

fn naive_polar(pts: &[PolarPoint], r_disk: f64) -> Adjacency {
    let cache = PolarCache::new(pts, r_disk);
    naive(pts.len(), |i, j| cache.connected(i, j))
}

fn naive_plane(pts: &[PlanePoint], circumference: f64) -> Adjacency {
    naive(pts.len(), |i, j| plane_connected(pts[i], pts[j], circumference))
}

fn naive_typical(pts: &[PlanePoint]) -> Adjacency {
    naive(pts.len(), |i, j| (pts[i].x - pts[j].x).abs() <= (0.5 * (pts[i].y + pts[j].y)).exp())
}

#[inline]
fn plane_connected(p: PlanePoint, q: PlanePoint, circumference: f64) -> bool {
    torus_distance(p.x, q.x, circumference) <= (0.5 * (p.y + q.y)).exp()
}

fn naive(n: usize, connected: impl Fn(usize, usize) -> bool + Sync + Send) -> Adjacency {
    let lists = map_vertices(n, |i| {
        (0..n).filter(|&j| j != i && connected(i, j)).map(|j| j as u32).collect::<Vec<u32>>()
    });
    Adjacency::from_sorted_lists(lists)
}

/// Points of one band sorted by their circular coordinate; `lo` and `hi`
/// are the smallest and largest key among the members.
struct Band {
    lo: f64,
    hi: f64,
    pos: Vec<f64>,
    idx: Vec<u32>,
}

/// Buckets vertices into unit-width bands of `key` over [0, top] and sorts
/// each band by `pos` (which lies in (-c/2, c/2]).
fn make_bands(key: &[f64], pos: &[f64], top: f64) -> Vec<Band> {
    let nb = (top.ceil() as usize).max(1);
    let width = top.max(f64::MIN_POSITIVE) / nb as f64;
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); nb];
    for (i, &k) in key.iter().enumerate() {
        let b = ((k / width) as usize).min(nb - 1);
        members[b].push(i as u32);
    }
    members
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|mut m| {
            m.sort_by(|&a, &c| pos[a as usize].total_cmp(&pos[c as usize]).then(a.cmp(&c)));
            Band {
                lo: m.iter().map(|&i| key[i as usize]).fold(f64::INFINITY, f64::min),
                hi: m.iter().map(|&i| key[i as usize]).fold(f64::NEG_INFINITY, f64::max),
                pos: m.iter().map(|&i| pos[i as usize]).collect(),
                idx: m,
            }
        })
        .collect()
}

/// Visits the band members whose position lies within `half` of `center`
/// on a circle of circumference `c`.
fn for_window(band: &Band, center: f64, half: f64, c: f64, mut visit: impl FnMut(u32)) {
    if half >= 0.5 * c {
        band.idx.iter().for_each(|&j| visit(j));
        return;
    }
    let mut range = |lo: f64, hi: f64| {
        let a = band.pos.partition_point(|&p| p < lo);
        let b = band.pos.partition_point(|&p| p <= hi);
        band.idx[a..b.max(a)].iter().for_each(|&j| visit(j));
    };
    let (lo, hi) = (center - half, center + half);
    if lo < -0.5 * c {
        range(lo + c, f64::INFINITY);
        range(f64::NEG_INFINITY, hi);
    } else if hi > 0.5 * c {
        range(f64::NEG_INFINITY, hi - c);
        range(lo, f64::INFINITY);
    } else {
        range(lo, hi);
    }
}

/// Slack added to every window so rounding never drops a pair the exact
/// test would accept. For the disk it is applied to the cosine, where acos
/// would otherwise amplify rounding near zero angles.
const WINDOW_SLACK: f64 = 1e-9;

fn banded_polar(pts: &[PolarPoint], r_disk: f64) -> Adjacency {
    let cache = PolarCache::new(pts, r_disk);
    let radii: Vec<f64> = pts.iter().map(|p| p.r).collect();
    let bands = make_bands(&radii, &cache.theta, r_disk);
    let lists = map_vertices(pts.len(), |i| {
        let mut out = Vec::new();
        for band in &bands {
            // The threshold angle shrinks as r' grows, so the band's lower
            // radius bounds every member's window.
            let b = band.lo;
            // cosh(r + b) <= cosh R: even antipodal members connect.
            let half = if cache.ch[i] * b.cosh() + cache.sh[i] * b.sinh() <= cache.cosh_r {
                PI
            } else {
                let q = (cache.ch[i] * b.cosh() - cache.cosh_r) / (cache.sh[i] * b.sinh());
                (q - WINDOW_SLACK).clamp(-1.0, 1.0).acos() + WINDOW_SLACK
            };
            for_window(band, cache.theta[i], half, 2.0 * PI, |j| {
                if j as usize != i && cache.connected(i, j as usize) {
                    out.push(j);
                }
            });
        }
        out.sort_unstable();
        out
    });
    Adjacency::from_sorted_lists(lists)
}

fn banded_plane(pts: &[PlanePoint], r_disk: f64, c: f64) -> Adjacency {
    let ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let bands = make_bands(&ys, &xs, r_disk);
    let lists = map_vertices(pts.len(), |i| {
        let mut out = Vec::new();
        for band in &bands {
            // Reach e^{(y+y')/2} grows with y', so the band's upper height bounds it.
            let half = (0.5 * (ys[i] + band.hi)).exp() * (1.0 + WINDOW_SLACK);
            for_window(band, xs[i], half, c, |j| {
                if j as usize != i && plane_connected(pts[i], pts[j as usize], c) {
                    out.push(j);
                }
            });
        }
        out.sort_unstable();
        out
    });
    Adjacency::from_sorted_lists(lists)
}

/// The typical point at height y0 and its neighbors in box coordinates
/// (the typical point itself sits at x = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct TypicalNeighborhood {
    pub y0: f64,
    pub neighbors: Vec<PlanePoint>,
}

impl TypicalNeighborhood {
    /// Whether neighbors i and j are adjacent in the infinite model.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (p, q) = (self.neighbors[i], self.neighbors[j]);
        (p.x - q.x).abs() <= (0.5 * (p.y + q.y)).exp()
    }

    /// Number of adjacent neighbor pairs.
    pub fn linked_pairs(&self) -> u64 {
        let k = self.neighbors.len();
        let mut count = 0;
        for i in 0..k {
            for j in i + 1..k {
                count += u64::from(self.adjacent(i, j));
            }
        }
        count
    }

    /// The star plus links as a graph; vertex 0 is the typical point.
    pub fn to_graph(&self, params: &ModelParams, seed: u64) -> Graph {
        let mut pts = vec![PlanePoint { x: 0.0, y: self.y0 }];
        pts.extend_from_slice(&self.neighbors);
        Graph {
            adjacency: naive_typical(&pts),
            coords: Coords::Plane(pts),
            model: ModelTag::Typical,
            seed,
            params: *params,
        }
    }
}

pub fn sample_typical_neighborhood(alpha: f64, nu: f64, y0: f64, seed: u64) -> Result<TypicalNeighborhood, GenError> {
    crate::params::check_alpha_nu(alpha, nu)?;
    if !(y0 >= 0.0 && y0.is_finite()) {
        return Err(GenError::Height(y0));
    }
    let mut rng = stream(seed, Domain::Typical, 0);
    let mean = xi_of(alpha, nu) * (0.5 * y0).exp();
    let k = Poisson::new(mean).expect("positive finite mean").sample(&mut rng) as usize;
    let rate = alpha - 0.5;
    let neighbors = (0..k)
        .map(|_| {
            let uy: f64 = rng.random();
            let ux: f64 = rng.random();
            let y = -(-uy).ln_1p() / rate;
            let reach = (0.5 * (y0 + y)).exp();
            PlanePoint {
                x: reach * (2.0 * ux - 1.0),
                y,
            }
        })
        .collect();
    Ok(TypicalNeighborhood { y0, neighbors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::is_connected_polar;
    use crate::params::derive_params;

    fn naive_opts() -> GenOptions {
        GenOptions {
            method: EdgeMethod::Naive,
            ..GenOptions::default()
        }
    }

    #[test]
    fn single_vertex_has_no_edges() {
        let p = derive_params(0.8, 0.5, 1).unwrap();
        let g = generate_kpkvb(&p, 3).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.adjacency.edge_count(), 0);
    }

    #[test]
    fn two_vertices_follow_the_rule() {
        let p = derive_params(0.8, 1.0, 2).unwrap();
        for seed in 0..50 {
            let g = generate_kpkvb(&p, seed).unwrap();
            let Coords::Polar(ps) = &g.coords else { panic!() };
            assert_eq!(g.adjacency.edge_count() == 1, is_connected_polar(ps[0], ps[1], p.r_disk));
        }
    }

    #[test]
    fn banded_equals_naive() {
        for &(a, nu, n) in &[(0.6, 2.0, 800), (0.8, 1.0, 1500), (1.5, 0.5, 1000), (5.0, 1.0, 600)] {
            let p = derive_params(a, nu, n).unwrap();
            for model in [ModelTag::Kpkvb, ModelTag::Poissonized, ModelTag::Box] {
                let fast = generate(&p, 11, model, &GenOptions::default()).unwrap();
                let slow = generate(&p, 11, model, &naive_opts()).unwrap();
                assert_eq!(fast, slow, "{model} a={a} nu={nu}");
                assert!(fast.audit());
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let p = derive_params(0.9, 1.0, 300).unwrap();
        assert_eq!(generate_kpkvb(&p, 5).unwrap(), generate_kpkvb(&p, 5).unwrap());
        assert_ne!(generate_kpkvb(&p, 5).unwrap().coords, generate_kpkvb(&p, 6).unwrap().coords);
    }

    #[test]
    fn coordinates_in_range() {
        let p = derive_params(0.7, 1.0, 500).unwrap();
        let Coords::Polar(ps) = generate_kpkvb(&p, 1).unwrap().coords else { panic!() };
        assert!(ps.iter().all(|q| q.theta > -PI && q.theta <= PI && (0.0..=p.r_disk).contains(&q.r)));
        let half = 0.5 * box_circumference(p.r_disk);
        let Coords::Plane(ps) = generate_box(&p, 1).unwrap().coords else { panic!() };
        assert!(ps.iter().all(|q| q.x > -half && q.x <= half && (0.0..=p.r_disk).contains(&q.y)));
    }

    #[test]
    fn empty_poisson_draw_gives_empty_graph() {
        let p = derive_params(0.8, 0.5, 1).unwrap();
        let seed = (0..100).find(|&s| poisson_count(1.0, s) == 0).expect("P(N=0) = 1/e");
        let g = generate_poissonized(&p, seed).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.mean_degree(), 0.0);
    }

    #[test]
    fn budget_is_enforced() {
        let p = derive_params(0.8, 1.0, 1000).unwrap();
        let opts = GenOptions {
            max_vertices: 999,
            ..GenOptions::default()
        };
        assert!(matches!(generate(&p, 0, ModelTag::Kpkvb, &opts), Err(GenError::Budget { .. })));
    }

    #[test]
    fn zero_distance_box_points_connect() {
        let a = PlanePoint { x: 1.0, y: 0.0 };
        assert!(plane_connected(a, a, 10.0));
        let b = PlanePoint { x: -4.9, y: 0.0 };
        let c = PlanePoint { x: 4.9, y: 0.0 };
        assert!(plane_connected(b, c, 10.0));
    }

    #[test]
    fn edge_list_format() {
        let p = derive_params(0.8, 1.0, 40).unwrap();
        let g = generate_box(&p, 9).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# model=box alpha=0.8 nu=1 n=40 R="));
        let pairs: Vec<(u32, u32)> = lines
            .map(|l| {
                let mut it = l.split(' ').map(|t| t.parse().unwrap());
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        assert!(pairs.iter().all(|&(u, v)| u < v));
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(pairs.len(), g.adjacency.edge_count());
    }

    #[test]
    fn typical_neighbors_lie_in_the_ball() {
        for seed in 0..200 {
            let t = sample_typical_neighborhood(0.8, 1.0, 0.0, seed).unwrap();
            assert!(t.neighbors.iter().all(|p| p.x.abs() <= (0.5 * p.y).exp()));
        }
        let t = sample_typical_neighborhood(0.8, 1.0, 3.0, 1).unwrap();
        let g = t.to_graph(&derive_params(0.8, 1.0, 10).unwrap(), 1);
        assert_eq!(g.adjacency.degree(0), t.neighbors.len());
        assert_eq!(g.adjacency.edge_count() as u64, t.neighbors.len() as u64 + t.linked_pairs());
        assert!(sample_typical_neighborhood(0.8, 1.0, -1.0, 1).is_err());
    }
}
