//! Graph families and a catalog of named graphs.
//!
//! A generator only sets `vertex_transitive` or `distance_regular` when the
//! property is a known theorem about the family, never by inspection.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMetadata};

/// A generator name with integer parameters, e.g. `johnson(5,2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub name: String,
    pub params: Vec<usize>,
}

impl GraphSpec {
    pub fn new(name: &str, params: &[usize]) -> Self {
        GraphSpec { name: normalize(name), params: params.to_vec() }
    }

    pub fn build(&self) -> Result<Graph> {
        generate(self)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            write!(f, "{}", self.name)
        } else {
            let p: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "{}({})", self.name, p.join(","))
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// Accepts `name`, `name(a,b,..)` and `name:a,b,..`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::ParameterOutOfRange(format!("unbalanced parentheses in `{s}`")))?;
            (&s[..open], inner)
        } else if let Some((name, args)) = s.split_once(':') {
            (name, args)
        } else {
            (s, "")
        };
        let params = args
            .split(',')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| Error::ParameterOutOfRange(format!("`{a}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if name.trim().is_empty() {
            return Err(Error::UnknownGenerator(s.to_string()));
        }
        Ok(GraphSpec { name: normalize(name), params })
    }
}

fn normalize(name: &str) -> String {
    name.trim()
        .to_lowercase()
        .replace('á', "a")
        .replace('ü', "u")
        .replace(['-', ' ', '\''], "_")
}

/// Named graphs available without parameters.
pub const NAMED_GRAPHS: &[&str] = &[
    "petersen",
    "tetrahedron",
    "octahedron",
    "hexahedron",
    "thomsen",
    "chvatal",
    "heawood",
    "desargues",
    "dodecahedron",
    "moebius_kantor",
    "nauru",
    "durer",
    "franklin",
    "pappus",
    "tutte_coxeter",
    "mcgee",
    "dyck",
    "f26a",
    "frucht",
    "truncated_tetrahedron",
    "wagner",
    "icosahedron",
    "shrikhande",
    "clebsch",
    "hoffman_singleton",
    "krackhardt_kite",
];

/// Parameterised families accepted by [`generate`].
pub const FAMILIES: &[&str] = &[
    "complete(n)",
    "empty(n)",
    "cycle(n)",
    "path(n)",
    "complete_multipartite(p1,p2,..)",
    "complete_bipartite(a,b)",
    "johnson(r,k)",
    "kneser(r,k)",
    "cartesian_product_k2(n)",
    "hypercube(d)",
    "circulant(n,j1,j2,..)",
    "generalized_petersen(n,k)",
];

fn arity(spec: &GraphSpec, expected: usize) -> Result<()> {
    if spec.params.len() == expected {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!(
            "{} takes {expected} parameter(s), got {}",
            spec.name,
            spec.params.len()
        )))
    }
}

fn range_err(msg: impl Into<String>) -> Error {
    Error::ParameterOutOfRange(msg.into())
}

fn meta(name: String, g: &Graph, vertex_transitive: bool, distance_regular: bool) -> GraphMetadata {
    GraphMetadata {
        name,
        regular_degree: g.regular_degree(),
        vertex_transitive,
        distance_regular,
    }
}

fn finish(g: Graph, name: impl Into<String>, vt: bool, dr: bool) -> Graph {
    let m = meta(name.into(), &g, vt, dr);
    g.with_meta(m)
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GraphSpec) -> Result<Graph> {
    let p = &spec.params;
    let label = spec.to_string();
    match spec.name.as_str() {
        "complete" | "k" => {
            arity(spec, 1)?;
            let n = positive(p[0])?;
            Ok(finish(complete(n), label, true, n > 1))
        }
        "empty" => {
            arity(spec, 1)?;
            let n = positive(p[0])?;
            Ok(finish(Graph::empty(n), label, true, false))
        }
        "cycle" => {
            arity(spec, 1)?;
            if p[0] < 3 {
                return Err(range_err("cycle needs n >= 3"));
            }
            Ok(finish(circulant_graph(p[0], &[1]), label, true, true))
        }
        "path" => {
            arity(spec, 1)?;
            let n = positive(p[0])?;
            let g = Graph::from_fn(n, |u, v| v == u + 1);
            Ok(finish(g, label, n <= 2, n <= 2))
        }
        "complete_multipartite" => {
            if p.is_empty() || p.contains(&0) {
                return Err(range_err("complete_multipartite needs positive part sizes"));
            }
            let g = complete_multipartite(p);
            let balanced = p.iter().all(|&s| s == p[0]);
            Ok(finish(g, label, balanced, balanced && p.len() > 1))
        }
        "complete_bipartite" => {
            arity(spec, 2)?;
            if p[0] == 0 || p[1] == 0 {
                return Err(range_err("complete_bipartite needs positive part sizes"));
            }
            let balanced = p[0] == p[1];
            Ok(finish(complete_multipartite(p), label, balanced, balanced))
        }
        "johnson" => {
            arity(spec, 2)?;
            let (r, k) = (p[0], p[1]);
            if k < 1 || k >= r {
                return Err(range_err("johnson(r,k) needs 1 <= k < r"));
            }
            Ok(finish(johnson(r, k), label, true, true))
        }
        "kneser" => {
            arity(spec, 2)?;
            let (r, k) = (p[0], p[1]);
            if k < 1 || k >= r {
                return Err(range_err("kneser(r,k) needs 1 <= k < r"));
            }
            let is_petersen = r == 5 && k == 2;
            Ok(finish(kneser(r, k), label, true, is_petersen || k == 1))
        }
        "cartesian_product_k2" | "prism_complete" => {
            arity(spec, 1)?;
            let n = positive(p[0])?;
            Ok(finish(complete_times_k2(n), label, true, false))
        }
        "hypercube" => {
            arity(spec, 1)?;
            if p[0] == 0 || p[0] > 16 {
                return Err(range_err("hypercube(d) needs 1 <= d <= 16"));
            }
            Ok(finish(hypercube(p[0]), label, true, true))
        }
        "circulant" => {
            if p.len() < 2 {
                return Err(range_err("circulant(n, jumps..) needs at least one jump"));
            }
            let n = positive(p[0])?;
            if p[1..].iter().any(|&j| j == 0 || j >= n) {
                return Err(range_err("circulant jumps must lie in 1..n"));
            }
            Ok(finish(circulant_graph(n, &p[1..]), label, true, false))
        }
        "generalized_petersen" => {
            arity(spec, 2)?;
            let (n, k) = (p[0], p[1]);
            if n < 3 || k < 1 || 2 * k >= n {
                return Err(range_err("generalized_petersen(n,k) needs n >= 3 and 1 <= k < n/2"));
            }
            // vertex transitive exactly when k^2 = +-1 mod n (Frucht-Graver-Watkins)
            let vt = (k * k) % n == 1 || (k * k) % n == n - 1;
            Ok(finish(generalized_petersen(n, k), label, vt, false))
        }
        name if spec.params.is_empty() => named(name),
        name if NAMED_GRAPHS.contains(&name) => Err(range_err(format!("{name} takes no parameters"))),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

fn positive(n: usize) -> Result<usize> {
    if n == 0 {
        Err(range_err("vertex count must be >= 1"))
    } else {
        Ok(n)
    }
}

fn named(name: &str) -> Result<Graph> {
    let g = match name {
        "petersen" => finish(kneser(5, 2), "Petersen", true, true),
        "tetrahedron" => finish(complete(4), "Tetrahedron", true, true),
        "octahedron" => finish(complete_multipartite(&[2, 2, 2]), "Octahedron", true, true),
        "hexahedron" | "cube" => finish(hypercube(3), "Hexahedron", true, true),
        "thomsen" | "utility" => finish(complete_multipartite(&[3, 3]), "Thomsen", true, true),
        "chvatal" => finish(edges(12, CHVATAL), "Chvatal", false, false),
        "heawood" => finish(lcf(14, &[5, -5], 7), "Heawood", true, true),
        "desargues" => finish(generalized_petersen(10, 3), "Desargues", true, true),
        "dodecahedron" => finish(generalized_petersen(10, 2), "Dodecahedron", true, true),
        "moebius_kantor" | "mobius_kantor" => finish(generalized_petersen(8, 3), "Moebius-Kantor", true, false),
        "nauru" => finish(generalized_petersen(12, 5), "Nauru", true, false),
        "durer" => finish(generalized_petersen(6, 2), "Durer", false, false),
        "franklin" => finish(lcf(12, &[5, -5], 6), "Franklin", true, false),
        "pappus" => finish(lcf(18, &[5, 7, -7, 7, -7, -5], 3), "Pappus", true, true),
        "tutte_coxeter" => finish(lcf(30, &[-13, -9, 7, -7, 9, 13], 5), "Tutte-Coxeter", true, true),
        "mcgee" => finish(lcf(24, &[12, 7, -7], 8), "McGee", false, false),
        "dyck" => finish(lcf(32, &[5, -5, 13, -13], 8), "Dyck", true, false),
        "f26a" => finish(lcf(26, &[-7, 7], 13), "F26A", true, false),
        "frucht" => finish(edges(12, FRUCHT), "Frucht", false, false),
        "truncated_tetrahedron" => finish(edges(12, TRUNCATED_TETRAHEDRON), "Truncated Tetrahedron", true, false),
        "wagner" => finish(circulant_graph(8, &[1, 4]), "Wagner", true, false),
        "icosahedron" => finish(edges(12, ICOSAHEDRON), "Icosahedron", true, true),
        "shrikhande" => finish(shrikhande(), "Shrikhande", true, true),
        "clebsch" => finish(clebsch(), "Clebsch", true, true),
        "hoffman_singleton" => finish(hoffman_singleton(), "Hoffman-Singleton", true, true),
        "krackhardt_kite" => finish(edges(10, KRACKHARDT_KITE), "Krackhardt Kite", false, false),
        other => return Err(Error::UnknownGenerator(other.to_string())),
    };
    Ok(g)
}

fn edges(n: usize, list: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, list).expect("static edge list is valid")
}

pub(crate) fn complete(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true)
}

fn complete_multipartite(parts: &[usize]) -> Graph {
    let part: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    Graph::from_fn(part.len(), |u, v| part[u] != part[v])
}

fn circulant_graph(n: usize, jumps: &[usize]) -> Graph {
    Graph::from_fn(n, |u, v| {
        let d = v - u;
        jumps.iter().any(|&j| d == j || d == n - j)
    })
}

fn k_subsets(r: usize, k: usize) -> Vec<u32> {
    (0u32..1 << r).filter(|s| s.count_ones() as usize == k).collect()
}

/// `k`-subsets of `0..r`, adjacent when they share `k - 1` elements.
fn johnson(r: usize, k: usize) -> Graph {
    let sets = k_subsets(r, k);
    Graph::from_fn(sets.len(), |u, v| (sets[u] & sets[v]).count_ones() as usize == k - 1)
}

/// `k`-subsets of `0..r`, adjacent when disjoint.
fn kneser(r: usize, k: usize) -> Graph {
    let sets = k_subsets(r, k);
    Graph::from_fn(sets.len(), |u, v| sets[u] & sets[v] == 0)
}

/// `K_n` with a pendant copy: vertex `(i, s)` is `2i + s`.
fn complete_times_k2(n: usize) -> Graph {
    Graph::from_fn(2 * n, |u, v| {
        let (iu, su) = (u / 2, u % 2);
        let (iv, sv) = (v / 2, v % 2);
        (su == sv && iu != iv) || (iu == iv && su != sv)
    })
}

fn hypercube(d: usize) -> Graph {
    Graph::from_fn(1 << d, |u, v| (u ^ v).count_ones() == 1)
}

/// Outer cycle `0..n`, spokes `i ~ n+i`, inner star polygon `n+i ~ n+i+k`.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut g = Graph::empty(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(i, n + i);
        g.add_edge(n + i, n + (i + k) % n);
    }
    g
}

/// Hamiltonian cycle plus chords from LCF notation `[shifts]^repeats`.
fn lcf(n: usize, shifts: &[isize], repeats: usize) -> Graph {
    debug_assert_eq!(shifts.len() * repeats, n);
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        let s = shifts[i % shifts.len()];
        let j = (i as isize + s).rem_euclid(n as isize) as usize;
        g.add_edge(i, j);
    }
    g
}

/// Cayley graph on `Z4 x Z4` with connection set `+-(1,0), +-(0,1), +-(1,1)`.
fn shrikhande() -> Graph {
    Graph::from_fn(16, |u, v| {
        let da = (v / 4 + 4 - u / 4) % 4;
        let db = (v % 4 + 4 - u % 4) % 4;
        matches!((da, db), (1, 0) | (3, 0) | (0, 1) | (0, 3) | (1, 1) | (3, 3))
    })
}

/// Folded 5-cube: 4-bit words adjacent at Hamming distance 1 or 4.
fn clebsch() -> Graph {
    Graph::from_fn(16, |u, v| matches!((u ^ v).count_ones(), 1 | 4))
}

/// Robertson's construction from five pentagons `P_h` and five pentagrams
/// `Q_j`; vertex `i` of `P_h` is joined to vertex `h*j + i` of `Q_j`.
fn hoffman_singleton() -> Graph {
    let p = |h: usize, i: usize| 5 * h + i % 5;
    let q = |j: usize, i: usize| 25 + 5 * j + i % 5;
    let mut g = Graph::empty(50);
    for h in 0..5 {
        for i in 0..5 {
            g.add_edge(p(h, i), p(h, i + 1));
            g.add_edge(q(h, i), q(h, i + 2));
            for j in 0..5 {
                g.add_edge(p(h, i), q(j, h * j + i));
            }
        }
    }
    g
}

const CHVATAL: &[(usize, usize)] = &[
    (0, 1), (0, 4), (0, 6), (0, 9), (1, 2), (1, 5), (1, 7), (2, 3), (2, 6), (2, 8), (3, 4), (3, 7),
    (3, 9), (4, 5), (4, 8), (5, 10), (5, 11), (6, 10), (6, 11), (7, 8), (7, 11), (8, 10), (9, 10), (9, 11),
];

const ICOSAHEDRON: &[(usize, usize)] = &[
    (0, 1), (0, 5), (0, 6), (0, 7), (0, 10), (1, 2), (1, 5), (1, 7), (1, 11), (2, 3), (2, 7), (2, 8),
    (2, 11), (3, 4), (3, 8), (3, 9), (3, 11), (4, 5), (4, 9), (4, 10), (4, 11), (5, 10), (5, 11), (6, 7),
    (6, 8), (6, 9), (6, 10), (7, 8), (8, 9), (9, 10),
];

const FRUCHT: &[(usize, usize)] = &[
    (0, 1), (0, 6), (0, 7), (1, 2), (1, 7), (2, 3), (2, 8), (3, 4), (3, 9), (4, 5), (4, 9), (5, 6),
    (5, 10), (6, 10), (7, 11), (8, 9), (8, 11), (10, 11),
];

const TRUNCATED_TETRAHEDRON: &[(usize, usize)] = &[
    (0, 1), (0, 2), (0, 9), (1, 2), (1, 6), (2, 3), (3, 4), (3, 11), (4, 5), (4, 11), (5, 6), (5, 7),
    (6, 7), (7, 8), (8, 9), (8, 10), (9, 10), (10, 11),
];

const KRACKHARDT_KITE: &[(usize, usize)] = &[
    (0, 1), (0, 2), (0, 3), (0, 5), (1, 3), (1, 4), (1, 6), (2, 3), (2, 5), (3, 4), (3, 5), (3, 6),
    (4, 6), (5, 6), (5, 7), (6, 7), (7, 8), (8, 9),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::graph_spectrum;

    fn build(s: &str) -> Graph {
        s.parse::<GraphSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("johnson(5,2)".parse::<GraphSpec>().unwrap(), GraphSpec::new("johnson", &[5, 2]));
        assert_eq!("Johnson:5,2".parse::<GraphSpec>().unwrap(), GraphSpec::new("johnson", &[5, 2]));
        assert_eq!("Hoffman-Singleton".parse::<GraphSpec>().unwrap().name, "hoffman_singleton");
        assert!("complete(4".parse::<GraphSpec>().is_err());
        assert!("complete(x)".parse::<GraphSpec>().is_err());
        assert_eq!(GraphSpec::new("johnson", &[5, 2]).to_string(), "johnson(5,2)");
    }

    #[test]
    fn errors() {
        assert_eq!(build_err("nonesuch"), Error::UnknownGenerator("nonesuch".into()));
        assert!(matches!(build_err("johnson(3,3)"), Error::ParameterOutOfRange(_)));
        assert!(matches!(build_err("johnson(3,0)"), Error::ParameterOutOfRange(_)));
        assert!(matches!(build_err("complete(0)"), Error::ParameterOutOfRange(_)));
        assert!(matches!(build_err("complete(3,4)"), Error::ParameterOutOfRange(_)));
        assert!(matches!(build_err("cycle(2)"), Error::ParameterOutOfRange(_)));
        assert!(matches!(build_err("petersen(3)"), Error::ParameterOutOfRange(_)));
    }

    fn build_err(s: &str) -> Error {
        s.parse::<GraphSpec>().and_then(|s| s.build()).unwrap_err()
    }

    /// Johnson graph straight from the definition over explicit pairs.
    #[test]
    fn johnson_5_2_matches_brute_force() {
        let g = build("johnson(5,2)");
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        assert_eq!(g.n(), 10);
        assert_eq!(g.regular_degree(), Some(6));
        let mut count = 0;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[i + 1..] {
                let shared = [a == c, a == d, b == c, b == d].iter().filter(|&&x| x).count();
                if shared == 1 {
                    count += 1;
                }
            }
        }
        assert_eq!(g.m(), count);
        assert!(g.is_vertex_transitive());
    }

    #[test]
    fn small_families() {
        let k4 = build("complete(4)");
        assert_eq!(k4.m(), 6);
        assert_eq!(k4.meta().unwrap().regular_degree, Some(3));
        let oct = build("complete_multipartite(2,2,2)");
        assert_eq!((oct.n(), oct.m()), (6, 12));
        assert_eq!(oct, build("octahedron"));
    }

    #[test]
    fn petersen_structure() {
        let p = build("petersen");
        assert_eq!((p.n(), p.m(), p.regular_degree()), (10, 15, Some(3)));
        let s = graph_spectrum(&p).unwrap();
        let expected = [3.0, 1.0, 1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0];
        for (a, e) in s.values().iter().zip(expected) {
            assert!((a - e).abs() < 1e-9);
        }
        assert!((s.energy() - 16.0).abs() < 1e-9);
        assert!((s.positive_energy() - 8.0).abs() < 1e-9);
    }

    #[test]
    fn named_catalog_is_well_formed() {
        let expected = [
            ("petersen", 10, 15),
            ("chvatal", 12, 24),
            ("heawood", 14, 21),
            ("desargues", 20, 30),
            ("icosahedron", 12, 30),
            ("shrikhande", 16, 48),
            ("clebsch", 16, 40),
            ("hoffman_singleton", 50, 175),
            ("thomsen", 6, 9),
            ("octahedron", 6, 12),
        ];
        for (name, n, m) in expected {
            let g = build(name);
            assert_eq!((g.n(), g.m()), (n, m), "{name}");
        }
        for name in NAMED_GRAPHS {
            let g = build(name);
            assert!(!g.name().is_empty());
        }
    }

    #[test]
    fn strongly_regular_spectra() {
        let cases = [
            ("hoffman_singleton", vec![(7.0, 1), (2.0, 28), (-3.0, 21)]),
            ("shrikhande", vec![(6.0, 1), (2.0, 6), (-2.0, 9)]),
            ("clebsch", vec![(5.0, 1), (1.0, 10), (-3.0, 5)]),
        ];
        for (name, parts) in cases {
            let s = graph_spectrum(&build(name)).unwrap();
            let expected: Vec<f64> = parts.iter().flat_map(|&(v, k)| std::iter::repeat_n(v, k)).collect();
            for (a, e) in s.values().iter().zip(&expected) {
                assert!((a - e).abs() < 1e-8, "{name}: {a} vs {e}");
            }
        }
    }
}
