//! Gruenberg–Kegel prime graphs: construction from spectra, degree patterns,
//! D_m sets, connected components, exact independence numbers, and the
//! degree-sequence lemmas (Erdős–Gallai graphic test, reduced-sequence
//! nonadjacency, Δ+δ connectivity, pigeonhole α ≥ 3, and the
//! d_1 + d_{d_1+2} ≤ n−3 criterion). Also DOT export in full and compact
//! forms.
//!
//! Graphs here never exceed a dozen vertices, so adjacency lives in one u64
//! bitmask per vertex and the independence number is computed exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::unitary::Spectrum;
use crate::FactoredInteger;

/// Sufficiency-only criteria return `Certified` or `Inconclusive`, never
/// "refuted": a failed premise says nothing about the conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criterion {
    Certified,
    Inconclusive,
}

impl Criterion {
    pub fn is_certified(self) -> bool {
        self == Criterion::Certified
    }
}

/// Prime graph GK(G): vertices are the primes dividing |G| in ascending
/// order; p ~ q iff G has an element of order pq. No self-loops, symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGraph {
    vertices: Vec<u64>,
    adj: Vec<u64>, // bitmask over vertex indices
}

/// Degree sequence of GK(G) indexed by ascending primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreePattern(pub Vec<u32>);

impl DegreePattern {
    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    /// Degrees sorted ascending (the d_1 ≤ d_2 ≤ … form).
    pub fn ascending(&self) -> Vec<u32> {
        let mut d = self.0.clone();
        d.sort_unstable();
        d
    }
}

impl PrimeGraph {
    /// Build a graph on the given ascending primes with no edges.
    pub fn new(mut vertices: Vec<u64>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() > 64 {
            return Err(Error::InvalidParams("more than 64 vertices".into()));
        }
        let n = vertices.len();
        Ok(PrimeGraph {
            vertices,
            adj: vec![0; n],
        })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn index_of(&self, p: u64) -> Result<usize> {
        self.vertices
            .binary_search(&p)
            .map_err(|_| Error::OutOfRange(format!("{} is not a vertex", p)))
    }

    /// Add the undirected edge p ~ q (both must be vertices, p ≠ q).
    pub fn add_edge(&mut self, p: u64, q: u64) -> Result<()> {
        if p == q {
            return Err(Error::InvalidParams("self-loop".into()));
        }
        let i = self.index_of(p)?;
        let j = self.index_of(q)?;
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn has_edge(&self, p: u64, q: u64) -> Result<bool> {
        let i = self.index_of(p)?;
        let j = self.index_of(q)?;
        Ok(self.adj[i] >> j & 1 == 1)
    }

    pub fn degree(&self, p: u64) -> Result<u32> {
        let i = self.index_of(p)?;
        Ok(self.adj[i].count_ones())
    }

    /// Degrees in ascending-prime order.
    pub fn degree_pattern(&self) -> DegreePattern {
        DegreePattern(self.adj.iter().map(|m| m.count_ones()).collect())
    }

    /// D_m(G) = { p : d(p) = m }; m must be at most |V| − 1.
    pub fn d_m_set(&self, m: u32) -> Result<Vec<u64>> {
        if self.vertices.is_empty() || m as usize > self.vertices.len() - 1 {
            return Err(Error::OutOfRange(format!(
                "degree {} out of range for {} vertices",
                m,
                self.vertices.len()
            )));
        }
        Ok(self
            .vertices
            .iter()
            .zip(&self.adj)
            .filter(|(_, a)| a.count_ones() == m)
            .map(|(v, _)| *v)
            .collect())
    }

    /// Connected components as vertex sets. The component containing 2 is
    /// listed first when 2 is a vertex; the rest ascend by smallest prime.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut seen = 0u64;
        let mut comps: Vec<Vec<u64>> = Vec::new();
        for start in 0..n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut mask = 1u64 << start;
            loop {
                let mut next = mask;
                let mut bits = mask;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    next |= self.adj[i];
                }
                if next == mask {
                    break;
                }
                mask = next;
            }
            seen |= mask;
            let mut comp = Vec::new();
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                comp.push(self.vertices[i]);
            }
            comps.push(comp);
        }
        comps.sort_by_key(|c| (!c.contains(&2), c[0]));
        comps
    }

    fn mis_size(&self, candidates: u64) -> u32 {
        if candidates == 0 {
            return 0;
        }
        // branch on a vertex of maximum degree within the candidate set
        let mut best_v = candidates.trailing_zeros() as usize;
        let mut best_deg = 0;
        let mut bits = candidates;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let deg = (self.adj[i] & candidates).count_ones();
            if deg >= best_deg {
                best_deg = deg;
                best_v = i;
            }
        }
        if best_deg == 0 {
            return candidates.count_ones();
        }
        let v_bit = 1u64 << best_v;
        // include v: drop v and its neighbours; exclude v: drop v only
        let with_v = 1 + self.mis_size(candidates & !(v_bit | self.adj[best_v]));
        let without_v = self.mis_size(candidates & !v_bit);
        with_v.max(without_v)
    }

    /// Exact independence number α(Γ) by branch and bound.
    pub fn independence_number(&self) -> u32 {
        let n = self.vertices.len();
        let all = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
        self.mis_size(all)
    }

    /// t(r, G): the maximal number of pairwise-nonadjacent primes containing
    /// r, i.e. 1 + α of the subgraph induced on the non-neighbours of r.
    pub fn t_r(&self, r: u64) -> Result<u32> {
        let i = self.index_of(r)?;
        let n = self.vertices.len();
        let all = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
        let candidates = all & !(self.adj[i] | (1 << i));
        Ok(1 + self.mis_size(candidates))
    }

    /// Verify the structural observations that hold for prime graphs of
    /// groups: p has degree 0 iff {p} is a component; if |D_m| ≤ m for all m
    /// then the graph is connected; every component other than the first is a
    /// clique whose members have degree |component| − 1. Returns the list of
    /// violations (empty = clean).
    pub fn component_shape_violations(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let comps = self.components();
        for (v, a) in self.vertices.iter().zip(&self.adj) {
            let isolated_comp = comps.iter().any(|c| c.len() == 1 && c[0] == *v);
            if (a.count_ones() == 0) != isolated_comp {
                violations.push(format!(
                    "vertex {} degree-0/component mismatch",
                    v
                ));
            }
        }
        let n = self.vertices.len();
        if n > 0 {
            let pattern = self.degree_pattern();
            let all_small = (0..n as u32).all(|m| {
                let count = pattern.0.iter().filter(|&&d| d == m).count();
                count <= m as usize
            });
            if all_small && comps.len() > 1 {
                violations.push("|D_m| <= m for all m but graph disconnected".into());
            }
        }
        for comp in comps.iter().skip(1) {
            for &v in comp {
                let expected = comp.len() as u32 - 1;
                let actual = self.degree(v).expect("vertex");
                if actual != expected {
                    violations.push(format!(
                        "non-first component {:?}: vertex {} has degree {} != {}",
                        comp, v, actual, expected
                    ));
                }
            }
        }
        violations
    }

    /// Plain DOT text: vertices ascending, edges lexicographic. Bit-stable
    /// across runs.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph GK {\n  node [shape=circle];\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{}\";\n", v));
        }
        for (i, &v) in self.vertices.iter().enumerate() {
            for (j, &w) in self.vertices.iter().enumerate() {
                if i < j && self.adj[i] >> j & 1 == 1 {
                    out.push_str(&format!("  \"{}\" -- \"{}\";\n", v, w));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Partition vertices into classes of identical closed neighbourhoods
    /// (members of a class are mutually adjacent and interchangeable).
    pub fn closed_neighborhood_classes(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut assigned = vec![false; n];
        let mut classes: Vec<Vec<u64>> = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let ni = self.adj[i] | (1 << i);
            let mut class = vec![self.vertices[i]];
            assigned[i] = true;
            for j in i + 1..n {
                if !assigned[j] && self.adj[j] | (1 << j) == ni {
                    class.push(self.vertices[j]);
                    assigned[j] = true;
                }
            }
            classes.push(class);
        }
        classes
    }

    /// Compact DOT: one node per closed-neighbourhood class.
    pub fn to_dot_compact(&self) -> String {
        let classes = self.closed_neighborhood_classes();
        let named: Vec<(String, Vec<u64>)> = classes
            .into_iter()
            .map(|c| {
                let label = if c.len() == 1 {
                    c[0].to_string()
                } else {
                    format!(
                        "{{{}}}",
                        c.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                };
                (label, c)
            })
            .collect();
        self.to_dot_grouped(&named)
    }

    /// Compact DOT with caller-provided vertex classes (figure-style
    /// grouping). Every vertex must appear in exactly one group; group
    /// adjacency must be homogeneous (all-or-none between groups).
    pub fn to_dot_grouped(&self, groups: &[(String, Vec<u64>)]) -> String {
        let mut out = String::from("graph GK {\n  node [shape=circle];\n");
        for (label, members) in groups {
            let id = members[0];
            if members.len() == 1 && *label == members[0].to_string() {
                out.push_str(&format!("  \"{}\";\n", id));
            } else {
                let set = format!(
                    "{{{}}}",
                    members
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                out.push_str(&format!("  \"{}\" [label=\"{} = {}\"];\n", id, label, set));
            }
        }
        for (i, (_, a)) in groups.iter().enumerate() {
            for (_, b) in groups.iter().skip(i + 1) {
                let adjacent = self.has_edge(a[0], b[0]).unwrap_or(false);
                debug_assert!(
                    a.iter().all(|&x| b
                        .iter()
                        .all(|&y| self.has_edge(x, y).unwrap_or(false) == adjacent)),
                    "inhomogeneous group adjacency between {:?} and {:?}",
                    a,
                    b
                );
                if adjacent {
                    out.push_str(&format!("  \"{}\" -- \"{}\";\n", a[0], b[0]));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Build GK(G) from a spectrum and the factored group order: vertices are
/// π(|G|); p ~ q iff pq divides some μ element. Every μ element must divide
/// the order.
pub fn build_gk(spectrum: &Spectrum, order: &FactoredInteger) -> Result<PrimeGraph> {
    for m in spectrum.mu() {
        if !m.divides(order) {
            return Err(Error::SpectrumOrderMismatch {
                element: m.to_string(),
                order: order.to_string(),
            });
        }
    }
    let vertices = order.prime_set_u64()?;
    let mut g = PrimeGraph::new(vertices)?;
    for m in spectrum.mu() {
        let primes = m.prime_set_u64()?;
        for (a, &p) in primes.iter().enumerate() {
            for &q in primes.iter().skip(a + 1) {
                g.add_edge(p, q)?;
            }
        }
    }
    Ok(g)
}

/// Erdős–Gallai test: true iff some simple graph realizes the degree
/// sequence (entries in any order).
pub fn is_graphic(seq: &[u32]) -> bool {
    let n = seq.len();
    if n == 0 {
        return true;
    }
    let mut d: Vec<u64> = seq.iter().map(|&x| x as u64).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    if d[0] as usize >= n && d[0] > 0 {
        return false;
    }
    let total: u64 = d.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let mut prefix = 0u64;
    for k in 1..=n {
        prefix += d[k - 1];
        let mut tail = 0u64;
        for &di in &d[k..] {
            tail += di.min(k as u64);
        }
        if prefix > (k as u64) * (k as u64 - 1) + tail {
            return false;
        }
    }
    true
}

/// Reduced-sequence nonadjacency certificate: for a graphic sequence, if
/// decrementing positions i and j leaves a non-graphic sequence, then v_i
/// and v_j are nonadjacent in every realization. A zero entry at i or j is
/// an immediate certificate. Errors if the input is not graphic or the
/// indices are bad.
pub fn forced_nonadjacent(seq: &[u32], i: usize, j: usize) -> Result<bool> {
    if i >= j || j >= seq.len() {
        return Err(Error::OutOfRange(format!(
            "positions ({}, {}) in a sequence of length {}",
            i,
            j,
            seq.len()
        )));
    }
    if !is_graphic(seq) {
        return Err(Error::NotGraphic(seq.to_vec()));
    }
    if seq[i] == 0 || seq[j] == 0 {
        return Ok(true);
    }
    let mut reduced = seq.to_vec();
    reduced[i] -= 1;
    reduced[j] -= 1;
    Ok(!is_graphic(&reduced))
}

/// Connectivity by degree bound: Δ + δ ≥ |V| − 1 certifies connectedness.
pub fn connected_by_degrees(seq: &[u32]) -> Criterion {
    if seq.is_empty() {
        return Criterion::Certified;
    }
    let max = *seq.iter().max().expect("nonempty") as u64;
    let min = *seq.iter().min().expect("nonempty") as u64;
    if max + min >= seq.len() as u64 - 1 {
        Criterion::Certified
    } else {
        Criterion::Inconclusive
    }
}

/// Pigeonhole independence bound: for nonadjacent u, v with
/// deg(u) + deg(v) ≤ |V| − 3, the graph has α ≥ 3. Errors if u ~ v.
pub fn alpha_ge3_by_pair(g: &PrimeGraph, u: u64, v: u64) -> Result<Criterion> {
    if g.has_edge(u, v)? {
        return Err(Error::AdjacentPair(u, v));
    }
    let total = g.degree(u)? as u64 + g.degree(v)? as u64;
    let n = g.len() as u64;
    Ok(if n >= 3 && total <= n - 3 {
        Criterion::Certified
    } else {
        Criterion::Inconclusive
    })
}

/// Independence-number bound from the ascending degree sequence: if
/// d_1 + d_{d_1+2} ≤ n − 3 (1-based indexing), then t(G) ≥ 3. Errors when
/// the sequence is not ascending or the index d_1 + 2 exceeds n.
pub fn t_ge3_by_sequence(ascending: &[u32]) -> Result<Criterion> {
    let n = ascending.len();
    if ascending.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParams("sequence not ascending".into()));
    }
    if n == 0 {
        return Err(Error::OutOfRange("empty sequence".into()));
    }
    let d1 = ascending[0] as usize;
    if d1 + 2 > n {
        return Err(Error::OutOfRange(format!(
            "d_1 + 2 = {} exceeds sequence length {}",
            d1 + 2,
            n
        )));
    }
    let d_d1p2 = ascending[d1 + 1] as u64; // 1-based position d_1 + 2
    Ok(if n >= 3 && ascending[0] as u64 + d_d1p2 <= n as u64 - 3 {
        Criterion::Certified
    } else {
        Criterion::Inconclusive
    })
}

/// Convenience: π of a factored integer as u64s.
pub fn prime_set_u64(n: &FactoredInteger) -> Result<Vec<u64>> {
    n.prime_set_u64()
}

/// Is there a triangle-free simple graph realizing the degree vector?
/// Exhaustive backtracking; intended for ≤ 10 vertices.
pub fn exists_triangle_free_realization(degrees: &[u32]) -> bool {
    let n = degrees.len();
    assert!(n <= 10, "oracle bound");
    if degrees.iter().any(|&d| d as usize >= n.max(1)) {
        return degrees.iter().all(|&d| d == 0);
    }
    if degrees.iter().map(|&d| d as u64).sum::<u64>() % 2 != 0 {
        return false;
    }
    let mut residual: Vec<u32> = degrees.to_vec();
    let mut adj: Vec<u16> = vec![0; n];

    fn assign(residual: &mut Vec<u32>, adj: &mut Vec<u16>) -> bool {
        // finish the vertex with the largest remaining degree first
        let v = match (0..residual.len()).filter(|&i| residual[i] > 0).max_by_key(|&i| residual[i]) {
            Some(v) => v,
            None => return true,
        };
        let need = residual[v] as usize;
        let candidates: Vec<usize> = (0..residual.len())
            .filter(|&w| {
                w != v
                    && residual[w] > 0
                    && adj[v] >> w & 1 == 0
                    && adj[v] & adj[w] == 0 // a common neighbour would close a triangle
            })
            .collect();
        if candidates.len() < need {
            return false;
        }
        // choose `need` pairwise-nonadjacent candidates
        fn choose(
            chosen: &mut Vec<usize>,
            start: usize,
            need: usize,
            v: usize,
            candidates: &[usize],
            residual: &mut Vec<u32>,
            adj: &mut Vec<u16>,
        ) -> bool {
            if need == 0 {
                return assign(residual, adj);
            }
            for idx in start..candidates.len() {
                if candidates.len() - idx < need {
                    break;
                }
                let w = candidates[idx];
                // joint neighbours of v must stay pairwise nonadjacent
                if chosen.iter().any(|&u| adj[u] >> w & 1 == 1) {
                    continue;
                }
                // adding the edge now; adj[w] may have grown since the
                // candidate list was built, so recheck the triangle condition
                if adj[v] & adj[w] != 0 {
                    continue;
                }
                adj[v] |= 1 << w;
                adj[w] |= 1 << v;
                residual[v] -= 1;
                residual[w] -= 1;
                chosen.push(w);
                if choose(chosen, idx + 1, need - 1, v, candidates, residual, adj) {
                    return true;
                }
                chosen.pop();
                adj[v] &= !(1 << w);
                adj[w] &= !(1 << v);
                residual[v] += 1;
                residual[w] += 1;
            }
            false
        }
        choose(&mut Vec::new(), 0, need, v, &candidates, residual, adj)
    }
    assign(&mut residual, &mut adj)
}

/// Does every realization of the degree sequence have independence number
/// at least 3? Equivalent to: no triangle-free graph realizes the
/// complement degree sequence. Errors if the input is not graphic.
pub fn alpha_ge3_in_every_realization(degrees: &[u32]) -> Result<bool> {
    if !is_graphic(degrees) {
        return Err(Error::NotGraphic(degrees.to_vec()));
    }
    let n = degrees.len() as u32;
    if n < 3 {
        return Ok(false);
    }
    let complement: Vec<u32> = degrees.iter().map(|&d| n - 1 - d).collect();
    Ok(!exists_triangle_free_realization(&complement))
}

/// Visit every graph on n labelled vertices as (degree vector, adjacency
/// masks). Test oracle for the graphic test and nonadjacency certificates;
/// n ≤ 7 keeps this at 2^21 graphs.
pub fn for_each_labelled_graph(n: usize, mut visit: impl FnMut(&[u32], &[u64])) {
    assert!(n <= 7, "oracle bound");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let m = pairs.len();
    let mut adj = vec![0u64; n];
    let mut degs = vec![0u32; n];
    for code in 0u32..(1 << m) {
        adj.iter_mut().for_each(|a| *a = 0);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if code >> b & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        for (d, a) in degs.iter_mut().zip(&adj) {
            *d = a.count_ones();
        }
        visit(&degs, &adj);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::{self, UnitaryParams};

    fn gk_u3(p: u64, k: u32) -> PrimeGraph {
        let params = UnitaryParams::u3(p, k).unwrap();
        let order = unitary::order_u(&params).unwrap();
        let mu = unitary::mu_u3(&params).unwrap();
        build_gk(&mu, &order).unwrap()
    }

    fn gk_u4(p: u64, k: u32) -> PrimeGraph {
        let params = UnitaryParams::u4(p, k).unwrap();
        let order = unitary::order_u(&params).unwrap();
        let mu = unitary::mu_u4(&params).unwrap();
        build_gk(&mu, &order).unwrap()
    }

    #[test]
    fn gk_u3_31_degree_pattern() {
        let g = gk_u3(31, 1);
        assert_eq!(g.vertices(), &[2, 3, 5, 7, 19, 31]);
        assert_eq!(g.degree_pattern().0, vec![3, 2, 2, 1, 1, 1]);
    }

    #[test]
    fn gk_u4_2_components() {
        let g = gk_u4(2, 1);
        assert_eq!(g.components(), vec![vec![2, 3], vec![5]]);
    }

    #[test]
    fn gk_u4_49_degree_pattern() {
        let g = gk_u4(7, 2);
        assert_eq!(g.degree_pattern().0, vec![4, 4, 5, 3, 2, 2, 2]);
    }

    #[test]
    fn gk_u3_97_degree_pattern() {
        let g = gk_u3(97, 1);
        assert_eq!(g.degree_pattern().0, vec![3, 2, 3, 1, 2, 1]);
    }

    #[test]
    fn single_prime_graph_is_isolated_vertex() {
        let g = PrimeGraph::new(vec![5]).unwrap();
        assert_eq!(g.degree_pattern().0, vec![0]);
        assert_eq!(g.components(), vec![vec![5]]);
    }

    #[test]
    fn d_m_set_examples() {
        let g = gk_u4(2, 4); // U_4(16): D = (3,4,4,4,1,2)
        assert_eq!(g.degree_pattern().0, vec![3, 4, 4, 4, 1, 2]);
        assert_eq!(g.d_m_set(1).unwrap().len(), 1);
        let d1d2 = g.d_m_set(1).unwrap().len() + g.d_m_set(2).unwrap().len();
        assert_eq!(d1d2, 2);

        let g31 = gk_u3(31, 1);
        assert!(g31.d_m_set(0).unwrap().is_empty());
        assert!(g31.d_m_set(9).is_err());
    }

    #[test]
    fn components_of_u3_61() {
        let g = gk_u3(61, 1);
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1], vec![7, 523]);
    }

    #[test]
    fn gk_u4_3_has_three_components() {
        let g = gk_u4(3, 1);
        assert_eq!(
            g.components(),
            vec![vec![2, 3], vec![5], vec![7]]
        );
    }

    #[test]
    fn independence_bounds() {
        // complete graph: α = 1; edgeless: α = k
        let mut complete = PrimeGraph::new(vec![2, 3, 5, 7]).unwrap();
        for &a in &[2u64, 3, 5, 7] {
            for &b in &[2u64, 3, 5, 7] {
                if a < b {
                    complete.add_edge(a, b).unwrap();
                }
            }
        }
        assert_eq!(complete.independence_number(), 1);
        let edgeless = PrimeGraph::new(vec![2, 3, 5, 7, 11]).unwrap();
        assert_eq!(edgeless.independence_number(), 5);
    }

    #[test]
    fn t_2_of_u4_9() {
        let g = gk_u4(3, 2);
        // d(2) = 3 < |π| − 1 = 4, so t(2, G) ≥ 2
        assert!(g.degree(2).unwrap() < g.len() as u32 - 1);
        assert!(g.t_r(2).unwrap() >= 2);
        assert!(g.t_r(9999).is_err());
    }

    #[test]
    fn graphic_test_basics() {
        assert!(is_graphic(&[3, 2, 2, 1, 1, 1])); // D(U_3(31))
        assert!(!is_graphic(&[3, 3, 3, 1]));
        assert!(is_graphic(&[0, 0, 0]));
        assert!(is_graphic(&[]));
        assert!(!is_graphic(&[1])); // odd sum
        assert!(is_graphic(&[5, 1, 1, 1, 1, 1])); // the star on six vertices
        assert!(!is_graphic(&[5, 5, 1, 1, 1, 1])); // two centers, too few leaves
    }

    #[test]
    fn graphic_matches_brute_force_on_length_5() {
        let mut realizable: std::collections::HashSet<Vec<u32>> = Default::default();
        for_each_labelled_graph(5, |degs, _| {
            let mut d = degs.to_vec();
            d.sort_unstable();
            realizable.insert(d);
        });
        // all sequences of length 5 with entries <= 4
        for code in 0..5u32.pow(5) {
            let mut c = code;
            let mut seq = Vec::with_capacity(5);
            for _ in 0..5 {
                seq.push(c % 5);
                c /= 5;
            }
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            assert_eq!(
                is_graphic(&seq),
                realizable.contains(&sorted),
                "sequence {:?}",
                seq
            );
        }
    }

    #[test]
    fn forced_nonadjacent_examples() {
        // D(U_4(25)) = (4,4,3,4,2,1): the degree-2 and degree-1 vertices
        let seq = [4, 4, 3, 4, 2, 1];
        assert!(forced_nonadjacent(&seq, 4, 5).unwrap());
        // complete-graph sequence: every pair stays adjacent in K_k
        let complete = [4u32, 4, 4, 4, 4];
        assert!(!forced_nonadjacent(&complete, 0, 1).unwrap());
        // zero degree is an immediate certificate
        assert!(forced_nonadjacent(&[2, 2, 2, 0], 0, 3).unwrap());
        assert!(forced_nonadjacent(&[3, 3, 3, 1], 0, 1).is_err());
        assert!(forced_nonadjacent(&[1, 1], 1, 1).is_err());
    }

    #[test]
    fn forced_nonadjacent_never_contradicted_for_u4_71_pattern() {
        // D(U_4(71)) = (5,5,5,5,4,2,2): check the two degree-2 positions
        let seq = vec![5u32, 5, 5, 5, 4, 2, 2];
        let claim = forced_nonadjacent(&seq, 5, 6).unwrap();
        assert!(claim);
        for_each_labelled_graph(7, |degs, adj| {
            if degs == seq.as_slice() {
                assert_eq!(adj[5] >> 6 & 1, 0, "realization joins positions 5,6");
            }
        });
    }

    #[test]
    fn connectivity_criterion() {
        // D(U_4(11)) = (3,4,4,3,1,1): Δ + δ = 5 = |π| − 1
        assert_eq!(
            connected_by_degrees(&[3, 4, 4, 3, 1, 1]),
            Criterion::Certified
        );
        // D(U_3(31)): 3 + 1 = 4 < 5 — inconclusive (and in fact disconnected)
        assert_eq!(
            connected_by_degrees(&[3, 2, 2, 1, 1, 1]),
            Criterion::Inconclusive
        );
        assert_eq!(connected_by_degrees(&[0]), Criterion::Certified);
    }

    #[test]
    fn alpha_ge3_examples() {
        // U_4(19): the two degree-1 vertices (7 and 181) are nonadjacent
        let g = gk_u4(19, 1);
        assert_eq!(g.degree_pattern().0, vec![3, 4, 4, 1, 3, 1]);
        assert_eq!(
            alpha_ge3_by_pair(&g, 7, 181).unwrap(),
            Criterion::Certified
        );
        assert!(g.independence_number() >= 3);

        // path on 3 vertices: endpoints nonadjacent but 1 + 1 > 0
        let mut path = PrimeGraph::new(vec![2, 3, 5]).unwrap();
        path.add_edge(2, 3).unwrap();
        path.add_edge(3, 5).unwrap();
        assert_eq!(
            alpha_ge3_by_pair(&path, 2, 5).unwrap(),
            Criterion::Inconclusive
        );
        assert!(alpha_ge3_by_pair(&path, 2, 3).is_err());
    }

    #[test]
    fn t_ge3_sequence_examples() {
        // U_3(89): (1,1,3,3,4,4,4): 1 + 3 = 4 ≤ 7 − 3
        assert_eq!(
            t_ge3_by_sequence(&[1, 1, 3, 3, 4, 4, 4]).unwrap(),
            Criterion::Certified
        );
        // U_3(47): (1,1,1,1,1,3): 1 + 1 ≤ 3
        assert_eq!(
            t_ge3_by_sequence(&[1, 1, 1, 1, 1, 3]).unwrap(),
            Criterion::Certified
        );
        // (2,2,2,2): d_1 + d_4 = 4 > 1
        assert_eq!(
            t_ge3_by_sequence(&[2, 2, 2, 2]).unwrap(),
            Criterion::Inconclusive
        );
        assert!(t_ge3_by_sequence(&[3, 3, 3]).is_err());
        assert!(t_ge3_by_sequence(&[2, 1, 3]).is_err());
    }

    #[test]
    fn component_shape_of_unitary_graphs() {
        for &(p, k) in &[(31u64, 1u32), (61, 1), (2, 6), (89, 1)] {
            let g = gk_u3(p, k);
            assert!(
                g.component_shape_violations().is_empty(),
                "U_3({}) violations",
                p.pow(k)
            );
        }
        let g = gk_u4(2, 1);
        assert!(g.component_shape_violations().is_empty());
    }

    #[test]
    fn dot_output_is_stable_and_complete() {
        let g = gk_u3(61, 1);
        let dot = g.to_dot();
        assert_eq!(dot, g.to_dot());
        assert!(dot.contains("\"7\" -- \"523\";"));
        // edgeless graph: nodes only
        let lonely = PrimeGraph::new(vec![2, 3]).unwrap();
        let dot = lonely.to_dot();
        assert!(dot.contains("\"2\";"));
        assert!(!dot.contains("--"));
    }

    #[test]
    fn compact_dot_groups_u3_61_like_the_figure() {
        let params = UnitaryParams::u3(61, 1).unwrap();
        let order = unitary::order_u(&params).unwrap();
        let mu = unitary::mu_u3(&params).unwrap();
        let g = build_gk(&mu, &order).unwrap();
        let classes = unitary::compact_classes(&params, &g).unwrap();
        // six nodes: 2, 3, 61, U1 = {5}, U2 = {31}, U3 = {7, 523}
        assert_eq!(classes.len(), 6);
        let u3_class = classes
            .iter()
            .find(|(name, _)| name == "U3")
            .expect("U3 class");
        assert_eq!(u3_class.1, vec![7, 523]);
        let dot = g.to_dot_grouped(&classes);
        assert!(dot.contains("U3 = {7,523}"));

        // the general closed-neighbourhood compaction merges more ({2,31},
        // {3,5}), which is the documented generic behaviour
        let nb_classes = g.closed_neighborhood_classes();
        assert_eq!(nb_classes.len(), 4);
    }

    #[test]
    fn compact_classes_u4_49_by_r_class() {
        let params = UnitaryParams::u4(7, 2).unwrap();
        let order = unitary::order_u(&params).unwrap();
        let mu = unitary::mu_u4(&params).unwrap();
        let g = build_gk(&mu, &order).unwrap();
        let classes = unitary::compact_classes(&params, &g).unwrap();
        let names: Vec<&str> = classes.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["R1", "R2", "7", "R6", "R4"]);
        let r6 = classes.iter().find(|(n, _)| n == "R6").unwrap();
        assert_eq!(r6.1, vec![13, 181]);
        let r1 = classes.iter().find(|(n, _)| n == "R1").unwrap();
        assert_eq!(r1.1, vec![2, 3]);
    }

    #[test]
    fn build_gk_rejects_non_dividing_mu() {
        let order = FactoredInteger::factorize_u64(60).unwrap();
        let bogus = Spectrum::from_generators(vec![FactoredInteger::factorize_u64(7).unwrap()]);
        assert!(matches!(
            build_gk(&bogus, &order),
            Err(Error::SpectrumOrderMismatch { .. })
        ));
    }

    #[test]
    fn triangle_free_realization_search() {
        // (2,2,2) is realized only by the triangle
        assert!(!exists_triangle_free_realization(&[2, 2, 2]));
        // C_4 realizes (2,2,2,2) without triangles
        assert!(exists_triangle_free_realization(&[2, 2, 2, 2]));
        // a 5-cycle
        assert!(exists_triangle_free_realization(&[2, 2, 2, 2, 2]));
        assert!(exists_triangle_free_realization(&[0, 0]));
        assert!(!exists_triangle_free_realization(&[1, 1, 1]));
    }

    #[test]
    fn alpha_ge3_realization_certificates() {
        // a perfect matching on 4 vertices has α = 2
        assert!(!alpha_ge3_in_every_realization(&[1, 1, 1, 1]).unwrap());
        // the corrected degree pattern of GK(U_4(61)): every realization has
        // an independent triple even though no pair criterion certifies it
        assert!(alpha_ge3_in_every_realization(&[5, 5, 5, 2, 6, 4, 2, 3]).unwrap());
        // edgeless on 3 vertices: every realization is itself, α = 3
        assert!(alpha_ge3_in_every_realization(&[0, 0, 0]).unwrap());
        assert!(alpha_ge3_in_every_realization(&[3, 3, 3, 1]).is_err());
    }

    #[test]
    fn alpha_ge3_checker_matches_brute_force_on_length_6() {
        // oracle: min α over all realizations, by full enumeration
        let mut min_alpha: std::collections::HashMap<Vec<u32>, u32> = Default::default();
        for_each_labelled_graph(6, |degs, adj| {
            let mut g = PrimeGraph::new(vec![2, 3, 5, 7, 11, 13]).unwrap();
            for (i, a) in adj.iter().enumerate() {
                for j in i + 1..6 {
                    if a >> j & 1 == 1 {
                        g.add_edge(g.vertices()[i], g.vertices()[j]).unwrap();
                    }
                }
            }
            let alpha = g.independence_number();
            min_alpha
                .entry(degs.to_vec())
                .and_modify(|m| *m = (*m).min(alpha))
                .or_insert(alpha);
        });
        for (degs, alpha) in &min_alpha {
            assert_eq!(
                alpha_ge3_in_every_realization(degs).unwrap(),
                *alpha >= 3,
                "degree vector {:?} (min α = {})",
                degs,
                alpha
            );
        }
    }

    #[test]
    fn prime_set_u64_roundtrip() {
        let f = FactoredInteger::factorize(&num_bigint::BigUint::from(931u32)).unwrap();
        assert_eq!(prime_set_u64(&f).unwrap(), vec![7, 19]);
    }
}
