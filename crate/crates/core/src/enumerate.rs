//! Small-graph enumeration up to isomorphism by brute-force canonical forms.
//!
//! A labelled graph on `n` vertices is encoded by its upper-triangle bit
//! string in graph6 order, first pair `(0,1)` most significant. A graph is
//! canonical when no relabelling yields a smaller string.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Number of isomorphism classes of graphs on `n` vertices, `n = 0..=7`.
pub const CLASS_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn adjacency_from_code(n: usize, code: u64) -> [u8; MAX_ENUMERATION_ORDER] {
    let len = pair_count(n);
    let mut rows = [0u8; MAX_ENUMERATION_ORDER];
    let mut pos = 0;
    for v in 1..n {
        for u in 0..v {
            if code >> (len - 1 - pos) & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            pos += 1;
        }
    }
    rows
}

/// Column `j` of the upper triangle under relabelling `perm`, with row 0
/// as the most significant bit.
#[inline]
fn column(rows: &[u8], perm: &[usize], j: usize, w: usize) -> u32 {
    let mut col = 0u32;
    for &p in &perm[..j] {
        col = (col << 1) | (rows[p] >> w & 1) as u32;
    }
    col
}

/// True when no relabelling gives a lexicographically smaller code.
fn is_canonical(n: usize, rows: &[u8]) -> bool {
    let identity: Vec<usize> = (0..n).collect();
    let original: Vec<u32> = (0..n).map(|j| column(rows, &identity, j, j)).collect();
    let mut perm = vec![0usize; n];

    // Err(()) signals that a smaller relabelling exists.
    fn search(n: usize, rows: &[u8], original: &[u32], perm: &mut [usize], depth: usize, used: u32) -> Result<(), ()> {
        if depth == n {
            return Ok(());
        }
        for w in 0..n {
            if used >> w & 1 == 1 {
                continue;
            }
            let col = column(rows, perm, depth, w);
            match col.cmp(&original[depth]) {
                std::cmp::Ordering::Less => return Err(()),
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => {
                    perm[depth] = w;
                    search(n, rows, original, perm, depth + 1, used | 1 << w)?;
                }
            }
        }
        Ok(())
    }

    search(n, rows, &original, &mut perm, 0, 0).is_ok()
}

/// Pull-based stream of one representative per isomorphism class.
#[derive(Debug, Clone)]
pub struct NonIsomorphicGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for NonIsomorphicGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let code = self.next;
            self.next += 1;
            let rows = adjacency_from_code(self.n, code);
            if is_canonical(self.n, &rows[..self.n]) {
                return Some(Graph::from_fn(self.n, |u, v| rows[u] >> v & 1 == 1));
            }
        }
        None
    }
}

/// All graphs on `n` vertices up to isomorphism, `1 <= n <= 7`, in
/// increasing order of canonical code.
pub fn enumerate_nonisomorphic(n: usize) -> Result<NonIsomorphicGraphs> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(Error::ParameterOutOfRange(format!(
            "built-in enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    Ok(NonIsomorphicGraphs { n, next: 0, end: 1 << pair_count(n) })
}

/// Backtracking isomorphism test with degree and adjacency pruning.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.n();
    if n != h.n() || g.m() != h.m() {
        return false;
    }
    let dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let (mut sg, mut sh) = (dg.clone(), dh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }

    fn extend(g: &Graph, h: &Graph, dg: &[usize], dh: &[usize], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == g.n() {
            return true;
        }
        for w in 0..h.n() {
            if used[w] || dg[v] != dh[w] {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                used[w] = true;
                map.push(w);
                if extend(g, h, dg, dh, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }

    extend(g, h, &dg, &dh, &mut Vec::with_capacity(n), &mut vec![false; n])
}
