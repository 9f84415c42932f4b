//! Generators for the standard families of configurations.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;

fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Result<IntMatrix> {
    let data: Vec<Vec<i64>> = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    IntMatrix::from_rows(&data)
}

/// Columns `e_{i1} + ... + e_{ik}` (one unit vector per factor), with the index
/// tuples in lexicographic order, last index fastest.
pub fn segre(dims: &[usize]) -> Result<IntMatrix> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidInput("segre needs positive dimensions".into()));
    }
    let rows: usize = dims.iter().sum();
    let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| { let o = *acc; *acc += d; Some(o) }).collect();
    let cols: Vec<Vec<i64>> = dims
        .iter()
        .map(|&d| 0..d)
        .multi_cartesian_product()
        .map(|idx| {
            let mut c = vec![0; rows];
            for (k, &i) in idx.iter().enumerate() {
                c[offsets[k] + i] = 1;
            }
            c
        })
        .collect();
    from_columns(rows, &cols)
}

/// The second hypersimplex: columns `e_i + e_j` for `i < j`.
pub fn hypersimplex2(d: usize) -> Result<IntMatrix> {
    if d < 2 {
        return Err(Error::InvalidInput("hypersimplex2 needs d >= 2".into()));
    }
    let cols: Vec<Vec<i64>> = (0..d)
        .combinations(2)
        .map(|p| {
            let mut c = vec![0; d];
            c[p[0]] = 1;
            c[p[1]] = 1;
            c
        })
        .collect();
    from_columns(d, &cols)
}

/// The `1 x n` matrix of the given exponents.
pub fn monomial_curve(exponents: &[i64]) -> Result<IntMatrix> {
    if exponents.is_empty() {
        return Err(Error::InvalidInput("monomial curve needs at least one exponent".into()));
    }
    IntMatrix::from_rows(&[exponents])
}

/// Vertex-edge incidence matrix of a graph given by its edge list.
pub fn incidence_matrix(vertices: usize, edges: &[(usize, usize)]) -> Result<IntMatrix> {
    let cols: Vec<Vec<i64>> = edges
        .iter()
        .map(|&(u, v)| {
            let mut c = vec![0; vertices];
            c[u] += 1;
            c[v] += 1;
            c
        })
        .collect();
    from_columns(vertices, &cols)
}

/// Edges of a cycle of length `s` with an odd cycle of length `l` attached at
/// each of its vertices. Vertices `0..s` form the central cycle.
pub fn tt_graph_edges(s: usize, l: usize) -> Result<(usize, Vec<(usize, usize)>)> {
    if s < 3 {
        return Err(Error::InvalidInput(format!("tt-graph needs s >= 3, got {s}")));
    }
    if l < 3 || l % 2 == 0 {
        return Err(Error::InvalidInput(format!("tt-graph needs an odd l >= 3, got {l}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..s).map(|i| (i, (i + 1) % s)).collect();
    let mut next = s;
    for c in 0..s {
        let path: Vec<usize> = (0..l - 1).map(|k| next + k).collect();
        next += l - 1;
        edges.push((c, path[0]));
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
        }
        edges.push((path[l - 2], c));
    }
    Ok((next, edges))
}

pub fn tt_graph(s: usize, l: usize) -> Result<IntMatrix> {
    let (v, edges) = tt_graph_edges(s, l)?;
    incidence_matrix(v, &edges)
}

/// Incidence matrix of the complete bipartite graph `K_{r,c}` (the
/// constraint matrix of `r x c` transportation problems).
pub fn transport(r: usize, c: usize) -> Result<IntMatrix> {
    segre(&[r, c])
}
