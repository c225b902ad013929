//! Degree counts, local clustering c(v), the clustering coefficient c(G)
//! (mean of c(v) over all vertices) and the clustering function c(k; G)
//! (mean of c(v) over vertices of degree k, zero when there are none).

use crate::gengraph::Adjacency;
use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("vertex {v} out of range for a graph with {n} vertices")]
pub struct VertexError {
    pub v: usize,
    pub n: usize,
}

/// Compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = KahanSum::default();
        iter.into_iter().for_each(|x| k.add(x));
        k
    }
}

/// Size of the intersection of two strictly increasing lists.
pub fn intersection_size(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

fn coefficient(links: u64, deg: usize) -> f64 {
    if deg < 2 {
        return 0.0;
    }
    let pairs = deg as f64 * (deg as f64 - 1.0) / 2.0;
    links as f64 / pairs
}

/// c(v): edges among the neighbors of v over deg(v) choose 2; 0 if deg(v) < 2.
pub fn local_clustering(g: &Adjacency, v: usize) -> Result<f64, VertexError> {
    if v >= g.len() {
        return Err(VertexError { v, n: g.len() });
    }
    let nv = g.neighbors(v);
    let twice: u64 = nv.iter().map(|&u| intersection_size(nv, g.neighbors(u as usize))).sum();
    Ok(coefficient(twice / 2, nv.len()))
}

/// Triangles through each vertex. Each triangle is found once by orienting
/// every edge from lower to higher (degree, index) and intersecting the
/// out-lists of its endpoints, which bounds every list by sqrt(2m).
pub fn triangles_per_vertex(g: &Adjacency) -> Vec<u64> {
    let n = g.len();
    let higher = |u: usize, w: u32| {
        let w = w as usize;
        (g.degree(w), w) > (g.degree(u), u)
    };
    let out: Vec<Vec<u32>> = (0..n)
        .map(|u| g.neighbors(u).iter().copied().filter(|&w| higher(u, w)).collect())
        .collect();
    let mut tri = vec![0u64; n];
    for u in 0..n {
        for &v in &out[u] {
            let (a, b) = (&out[u], &out[v as usize]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        tri[u] += 1;
                        tri[v as usize] += 1;
                        tri[a[i] as usize] += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    tri
}

/// Triple-loop recount of the triangles at each vertex, for tests.
pub fn brute_force_triangles(g: &Adjacency) -> Vec<u64> {
    let n = g.len();
    let mut m = vec![false; n * n];
    for (u, v) in g.edges() {
        m[u as usize * n + v as usize] = true;
        m[v as usize * n + u as usize] = true;
    }
    let mut tri = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            if !m[a * n + b] {
                continue;
            }
            for c in b + 1..n {
                if m[a * n + c] && m[b * n + c] {
                    tri[a] += 1;
                    tri[b] += 1;
                    tri[c] += 1;
                }
            }
        }
    }
    tri
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClusteringReport {
    /// N(k) for k = 0..=max degree.
    pub degree_counts: Vec<u64>,
    /// c(G); 0 for the empty graph.
    pub c_global: f64,
    /// c(k; G) for k = 0..=max degree.
    pub c_of_k: Vec<f64>,
    pub triangles_per_vertex: Vec<u64>,
}

impl ClusteringReport {
    pub fn vertex_count(&self) -> u64 {
        self.degree_counts.iter().sum()
    }

    pub fn n_k(&self, k: usize) -> u64 {
        self.degree_counts.get(k).copied().unwrap_or(0)
    }

    pub fn c_k(&self, k: usize) -> f64 {
        self.c_of_k.get(k).copied().unwrap_or(0.0)
    }

    /// CSV `k,N_k,c_k_mean` for k = 0..=max degree, then `# c_global=<value>`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,N_k,c_k_mean")?;
        for (k, (&nk, &ck)) in self.degree_counts.iter().zip(&self.c_of_k).enumerate() {
            writeln!(w, "{k},{nk},{ck}")?;
        }
        writeln!(w, "# c_global={}", self.c_global)
    }
}

pub fn clustering_report(g: &Adjacency) -> ClusteringReport {
    let n = g.len();
    if n == 0 {
        return ClusteringReport::default();
    }
    let tri = triangles_per_vertex(g);
    let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut counts = vec![0u64; max_deg + 1];
    let mut sums = vec![KahanSum::default(); max_deg + 1];
    let mut total = KahanSum::default();
    for (v, &t) in tri.iter().enumerate() {
        let d = g.degree(v);
        let c = coefficient(t, d);
        counts[d] += 1;
        sums[d].add(c);
        total.add(c);
    }
    let c_of_k = counts
        .iter()
        .zip(&sums)
        .enumerate()
        .map(|(k, (&nk, s))| if k < 2 || nk == 0 { 0.0 } else { s.value() / nk as f64 })
        .collect();
    ClusteringReport {
        degree_counts: counts,
        c_global: total.value() / n as f64,
        c_of_k,
        triangles_per_vertex: tri,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Adjacency {
        Adjacency::from_edges(n, edges).unwrap()
    }

    fn k4_minus_edge() -> Adjacency {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    }

    #[test]
    fn small_graphs() {
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        for v in 0..3 {
            assert_eq!(local_clustering(&tri, v).unwrap(), 1.0);
        }
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(local_clustering(&star, 0).unwrap(), 0.0);
        let g = k4_minus_edge();
        assert!((local_clustering(&g, 0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(local_clustering(&g, 4).is_err());
    }

    #[test]
    fn k4_minus_edge_report() {
        let r = clustering_report(&k4_minus_edge());
        assert!((r.c_global - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(r.n_k(2), 2);
        assert_eq!(r.n_k(3), 2);
        assert_eq!(r.c_k(2), 1.0);
        assert!((r.c_k(3) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn tree_has_no_clustering() {
        let g = graph(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
        let r = clustering_report(&g);
        assert_eq!(r.c_global, 0.0);
        assert!(r.c_of_k.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn empty_graph_gives_empty_report() {
        let r = clustering_report(&Adjacency::default());
        assert_eq!(r.vertex_count(), 0);
        assert_eq!(r.c_global, 0.0);
    }

    #[test]
    fn erdos_renyi_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let mut edges = Vec::new();
        for u in 0..50u32 {
            for v in u + 1..50 {
                if rng.random::<f64>() < 0.5 {
                    edges.push((u, v));
                }
            }
        }
        let g = graph(50, &edges);
        let r = clustering_report(&g);
        let brute = brute_force_triangles(&g);
        assert_eq!(r.triangles_per_vertex, brute);
        for (v, &b) in brute.iter().enumerate() {
            let d = g.degree(v) as f64;
            let expect = if d < 2.0 { 0.0 } else { b as f64 / (d * (d - 1.0) / 2.0) };
            assert!((local_clustering(&g, v).unwrap() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn csv_footer() {
        let mut buf = Vec::new();
        clustering_report(&k4_minus_edge()).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,N_k,c_k_mean\n0,0,0\n1,0,0\n2,2,1\n"));
        let footer = text.lines().last().unwrap();
        let c: f64 = footer.strip_prefix("# c_global=").unwrap().parse().unwrap();
        assert!((c - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn kahan_beats_naive_sum() {
        let k: KahanSum = std::iter::once(1.0).chain(std::iter::repeat_n(1e-16, 10_000)).collect();
        assert!((k.value() - (1.0 + 1e-12)).abs() < 1e-15);
    }

    fn arb_graph() -> impl Strategy<Value = Adjacency> {
        (1usize..60).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Adjacency::from_edges(n, &edges).unwrap()
        })
    }

    proptest! {
        #[test]
        fn intersection_counts_match_brute_force(g in arb_graph()) {
            prop_assert_eq!(triangles_per_vertex(&g), brute_force_triangles(&g));
        }

        #[test]
        fn relabeling_preserves_statistics(g in arb_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut perm: Vec<u32> = (0..g.len() as u32).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = clustering_report(&g);
            let b = clustering_report(&g.relabel(&perm));
            prop_assert_eq!(&a.degree_counts, &b.degree_counts);
            prop_assert!((a.c_global - b.c_global).abs() < 1e-12);
            for (x, y) in a.c_of_k.iter().zip(&b.c_of_k) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        #[test]
        fn report_invariants(g in arb_graph()) {
            let r = clustering_report(&g);
            prop_assert_eq!(r.vertex_count() as usize, g.len());
            prop_assert!((0.0..=1.0).contains(&r.c_global));
            prop_assert!(r.c_of_k.iter().all(|c| (0.0..=1.0).contains(c)));
            let mix: f64 = r.c_of_k.iter().zip(&r.degree_counts).map(|(c, &nk)| c * nk as f64).sum::<f64>() / g.len() as f64;
            prop_assert!((mix - r.c_global).abs() < 1e-12);
        }
    }
}
