//! Exact combinatorial parameters: independence number, maximal cliques,
//! fractional and integral clique cover numbers.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{solve_lp, LinearProgram, Relation};

use super::decomposition::FractionalCover;

pub const ALPHA_NODE_BUDGET: u64 = 100_000_000;
pub const COVER_NODE_BUDGET: u64 = 10_000_000;
pub const CLIQUE_LIST_BUDGET: usize = 1_000_000;

type Bits = Vec<u64>;

fn bits_of(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn set(b: &mut Bits, v: usize) {
    b[v / 64] |= 1 << (v % 64);
}

fn clear(b: &mut Bits, v: usize) {
    b[v / 64] &= !(1 << (v % 64));
}

fn is_empty(b: &[u64]) -> bool {
    b.iter().all(|&w| w == 0)
}

fn count(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn members(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

fn full(n: usize) -> Bits {
    let mut b = bits_of(n);
    for v in 0..n {
        set(&mut b, v);
    }
    b
}

/// Colour-bounded branch and bound for a maximum clique.
struct MaxClique<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl MaxClique<'_> {
    /// Greedy sequential colouring of `p`; vertices come back ordered by
    /// non-decreasing colour together with their colour number.
    fn colour_order(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(count(p));
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !is_empty(&uncoloured) {
            colour += 1;
            let mut candidates = uncoloured.clone();
            loop {
                let Some(v) = members(&candidates).next() else { break };
                clear(&mut uncoloured, v);
                clear(&mut candidates, v);
                for (c, a) in candidates.iter_mut().zip(&self.adj[v]) {
                    *c &= !a;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bits) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let order = self.colour_order(&p);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return Ok(());
            }
            self.current.push(v);
            let next = and(&p, &self.adj[v]);
            if is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            clear(&mut p, v);
        }
        Ok(())
    }
}

fn adjacency_bits(g: &Graph) -> Vec<Bits> {
    (0..g.n()).map(|v| g.row(v).to_vec()).collect()
}

fn max_clique_with_budget(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    let adj = adjacency_bits(g);
    let mut search = MaxClique { adj: &adj, best: Vec::new(), current: Vec::new(), nodes: 0, budget };
    search.expand(full(g.n()))?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

/// A maximum independent set, sorted.
pub fn maximum_independent_set(g: &Graph) -> Result<Vec<usize>> {
    max_clique_with_budget(&g.complement(), ALPHA_NODE_BUDGET)
}

/// `alpha(G)`, exact, or `BudgetExceeded` after 10^8 search nodes.
pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

/// Inclusion-maximal cliques (Bron-Kerbosch with Tomita pivoting), each
/// sorted, listed in lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    struct Bk<'a> {
        adj: &'a [Bits],
        out: Vec<Vec<usize>>,
        r: Vec<usize>,
    }
    impl Bk<'_> {
        fn run(&mut self, mut p: Bits, mut x: Bits) -> Result<()> {
            if is_empty(&p) {
                if is_empty(&x) {
                    if self.out.len() >= CLIQUE_LIST_BUDGET {
                        return Err(Error::BudgetExceeded(CLIQUE_LIST_BUDGET as u64));
                    }
                    let mut c = self.r.clone();
                    c.sort_unstable();
                    self.out.push(c);
                }
                return Ok(());
            }
            let pivot = members(&p)
                .chain(members(&x))
                .max_by_key(|&u| (count(&and(&p, &self.adj[u])), std::cmp::Reverse(u)))
                .expect("p is non-empty");
            let candidates: Vec<usize> =
                members(&p).filter(|&v| self.adj[pivot][v / 64] >> (v % 64) & 1 == 0).collect();
            for v in candidates {
                self.r.push(v);
                self.run(and(&p, &self.adj[v]), and(&x, &self.adj[v]))?;
                self.r.pop();
                clear(&mut p, v);
                set(&mut x, v);
            }
            Ok(())
        }
    }
    let adj = adjacency_bits(g);
    let mut bk = Bk { adj: &adj, out: Vec::new(), r: Vec::new() };
    bk.run(full(g.n()), bits_of(g.n()))?;
    bk.out.sort();
    Ok(bk.out)
}

/// The clique cover LP `min 1'y : My >= 1, y >= 0` over the maximal cliques.
pub fn clique_cover_lp(n: usize, cliques: &[Vec<usize>]) -> LinearProgram {
    let mut lp = LinearProgram::minimize(vec![1.0; cliques.len()]);
    for v in 0..n {
        let row = cliques.iter().map(|c| if c.contains(&v) { 1.0 } else { 0.0 }).collect();
        lp.push(row, Relation::Ge, 1.0);
    }
    lp
}

/// Moves weight from cliques through an over-covered vertex to the same
/// clique minus that vertex until every vertex is covered exactly once.
/// The total weight is unchanged.
fn shrink_to_exact(n: usize, mut parts: Vec<(Vec<usize>, f64)>) -> Vec<(Vec<usize>, f64)> {
    for v in 0..n {
        loop {
            let cover: f64 = parts.iter().filter(|(s, _)| s.contains(&v)).map(|(_, y)| y).sum();
            let excess = cover - 1.0;
            if excess <= 1e-12 {
                break;
            }
            let Some(k) = parts.iter().position(|(s, y)| *y > 0.0 && s.contains(&v)) else {
                break;
            };
            let t = excess.min(parts[k].1);
            parts[k].1 -= t;
            let rest: Vec<usize> = parts[k].0.iter().copied().filter(|&u| u != v).collect();
            if !rest.is_empty() {
                match parts.iter_mut().find(|(s, _)| *s == rest) {
                    Some(entry) => entry.1 += t,
                    None => parts.push((rest, t)),
                }
            }
        }
    }
    parts.retain(|(_, y)| *y > 0.0);
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    parts
}

/// `chi_f(complement of G)` with an exact fractional clique cover
/// attaining it.
pub fn fractional_clique_cover(g: &Graph) -> Result<(f64, FractionalCover)> {
    let cliques = maximal_cliques(g)?;
    let sol = solve_lp(&clique_cover_lp(g.n(), &cliques))?.optimal()?;
    let parts: Vec<(Vec<usize>, f64)> =
        cliques.into_iter().zip(sol.primal.iter().copied()).filter(|(_, y)| *y > 1e-12).collect();
    let parts = shrink_to_exact(g.n(), parts);
    let cover = FractionalCover::new(g.n(), parts)?;
    Ok((sol.value, cover))
}

/// `chi(complement of G)`: fewest cliques covering the vertices, by
/// DSATUR branch and bound on the complement. `BudgetExceeded` after
/// 10^7 nodes.
pub fn clique_cover_number(g: &Graph) -> Result<usize> {
    let h = g.complement();
    let n = h.n();
    let lower = max_clique_with_budget(&h, ALPHA_NODE_BUDGET)?.len();
    let adj = adjacency_bits(&h);

    struct Dsatur<'a> {
        adj: &'a [Bits],
        n: usize,
        colour: Vec<usize>,
        best: usize,
        lower: usize,
        nodes: u64,
    }
    impl Dsatur<'_> {
        /// Uncoloured vertex with most distinct neighbour colours, ties by degree.
        fn pick(&self) -> Option<(usize, u64)> {
            let mut choice: Option<(usize, u64, usize, usize)> = None;
            for v in 0..self.n {
                if self.colour[v] != usize::MAX {
                    continue;
                }
                let mut used = 0u64;
                let mut deg = 0;
                for u in members(&self.adj[v]) {
                    if self.colour[u] != usize::MAX {
                        used |= 1 << self.colour[u];
                    } else {
                        deg += 1;
                    }
                }
                let sat = used.count_ones() as usize;
                if choice.is_none_or(|(_, _, s, d)| (sat, deg) > (s, d)) {
                    choice = Some((v, used, sat, deg));
                }
            }
            choice.map(|(v, used, _, _)| (v, used))
        }

        fn search(&mut self, used_colours: usize) -> Result<()> {
            self.nodes += 1;
            if self.nodes > COVER_NODE_BUDGET {
                return Err(Error::BudgetExceeded(COVER_NODE_BUDGET));
            }
            let Some((v, forbidden)) = self.pick() else {
                self.best = self.best.min(used_colours);
                return Ok(());
            };
            for c in 0..=used_colours {
                if self.best <= self.lower {
                    return Ok(());
                }
                let opens = c == used_colours;
                if forbidden >> c & 1 == 1 || (opens && used_colours + 1 >= self.best) {
                    continue;
                }
                self.colour[v] = c;
                self.search(used_colours.max(c + 1))?;
                self.colour[v] = usize::MAX;
            }
            Ok(())
        }
    }

    let mut search = Dsatur { adj: &adj, n, colour: vec![usize::MAX; n], best: n, lower, nodes: 0 };
    if n <= 64 {
        search.search(0)?;
        return Ok(search.best);
    }
    Err(Error::Precondition("exact clique cover supports at most 64 vertices".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GraphSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn named(s: &str) -> Graph {
        generate(&s.parse::<GraphSpec>().unwrap()).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        Graph::from_fn(n, |_, _| rng.gen_bool(p))
    }

    fn is_clique(g: &Graph, s: &[usize]) -> bool {
        s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    fn brute_alpha(g: &Graph) -> usize {
        let h = g.complement();
        (0u32..1 << g.n())
            .filter(|mask| {
                let s: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
                is_clique(&h, &s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn brute_maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut out = Vec::new();
        for mask in 1u32..1 << n {
            let s: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if is_clique(g, &s) && (0..n).all(|w| s.contains(&w) || !s.iter().all(|&u| g.has_edge(u, w))) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    /// Partitions of the vertex set into cliques, minimum block count.
    fn brute_cover(g: &Graph) -> usize {
        fn go(g: &Graph, v: usize, blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
            if blocks.len() >= *best {
                return;
            }
            if v == g.n() {
                *best = blocks.len();
                return;
            }
            for i in 0..blocks.len() {
                if blocks[i].iter().all(|&u| g.has_edge(u, v)) {
                    blocks[i].push(v);
                    go(g, v + 1, blocks, best);
                    blocks[i].pop();
                }
            }
            blocks.push(vec![v]);
            go(g, v + 1, blocks, best);
            blocks.pop();
        }
        let mut best = g.n() + 1;
        go(g, 0, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn small_examples() {
        assert_eq!(independence_number(&named("complete(6)")).unwrap(), 1);
        assert_eq!(independence_number(&named("petersen")).unwrap(), 4);
        assert_eq!(independence_number(&named("cycle(5)")).unwrap(), 2);
        assert_eq!(maximal_cliques(&named("complete(4)")).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(maximal_cliques(&named("cycle(5)")).unwrap().len(), 5);
        assert_eq!(maximal_cliques(&named("petersen")).unwrap().len(), 15);
        assert_eq!(maximal_cliques(&named("empty(3)")).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(clique_cover_number(&named("complete(5)")).unwrap(), 1);
        assert_eq!(clique_cover_number(&named("cycle(5)")).unwrap(), 3);
        assert_eq!(clique_cover_number(&named("petersen")).unwrap(), 5);
    }

    #[test]
    fn fractional_cover_values() {
        for (name, value) in [("complete(5)", 1.0), ("petersen", 5.0), ("cycle(5)", 2.5), ("empty(3)", 3.0)] {
            let (v, cover) = fractional_clique_cover(&named(name)).unwrap();
            assert!((v - value).abs() < 1e-9, "{name}: {v}");
            let total: f64 = cover.parts().iter().map(|(_, y)| y).sum();
            assert!((total - value).abs() < 1e-9);
        }
    }

    #[test]
    fn catalog_independence_numbers() {
        for (name, alpha) in [
            ("heawood", 7),
            ("desargues", 10),
            ("chvatal", 4),
            ("icosahedron", 3),
            ("dodecahedron", 8),
            ("hoffman_singleton", 15),
            ("clebsch", 5),
            ("shrikhande", 4),
            ("tutte_coxeter", 15),
        ] {
            assert_eq!(independence_number(&named(name)).unwrap(), alpha, "{name}");
        }
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let n = rng.gen_range(1..10);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            assert_eq!(independence_number(&g).unwrap(), brute_alpha(&g));
            assert_eq!(maximal_cliques(&g).unwrap(), brute_maximal_cliques(&g));
            assert_eq!(clique_cover_number(&g).unwrap(), brute_cover(&g));
        }
    }

    #[test]
    fn maximal_clique_lp_equals_equality_form_over_all_cliques() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, n, p);
            let all: Vec<Vec<usize>> = (1u32..1 << n)
                .map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect::<Vec<_>>())
                .filter(|s| is_clique(&g, s))
                .collect();
            let mut eq = LinearProgram::minimize(vec![1.0; all.len()]);
            for v in 0..n {
                eq.push(all.iter().map(|c| if c.contains(&v) { 1.0 } else { 0.0 }).collect(), Relation::Eq, 1.0);
            }
            let exact = solve_lp(&eq).unwrap().value;
            let (value, cover) = fractional_clique_cover(&g).unwrap();
            assert!((value - exact).abs() < 1e-9, "{value} vs {exact}");
            for (s, _) in cover.parts() {
                assert!(is_clique(&g, s));
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let g = named("hoffman_singleton");
        let adj = adjacency_bits(&g.complement());
        let mut search = MaxClique { adj: &adj, best: Vec::new(), current: Vec::new(), nodes: 0, budget: 10 };
        assert!(matches!(search.expand(full(g.n())), Err(Error::BudgetExceeded(10))));
    }
}
