//! Independent oracles and property checks shared by the integration tests.
//!
//! Nothing here calls the library's distance, partition or regularity code;
//! the oracles recompute everything from adjacency queries alone.
#![allow(dead_code)]

use arglab::constructions::{im_pipeline, taylor_bd_pipeline, BaseGraph};
use arglab::graph::{
    cartesian_product, equitable_check, graph6_decode, graph6_encode, graph_json_decode, graph_json_encode, read_graph,
    signature_partition, QuotientMatrix, VertexPartition,
};
use arglab::{Error, Field, Graph};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use std::collections::VecDeque;

pub const UNREACHED: u32 = u32::MAX;

/// All-pairs hop distances by breadth-first search over `has_edge`.
pub fn bfs_oracle(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut all = Vec::with_capacity(n);
    for s in 0..n {
        let mut d = vec![UNREACHED; n];
        d[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if g.has_edge(u, v) && d[v] == UNREACHED {
                    d[v] = d[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        all.push(d);
    }
    all
}

pub fn common_oracle(g: &Graph, x: usize, y: usize) -> usize {
    (0..g.order()).filter(|&z| g.has_edge(x, z) && g.has_edge(y, z)).count()
}

/// `(v, k, λ, μ)` by exhaustive pair counting, or `None` if a count is not constant.
pub fn ar_params_oracle(g: &Graph) -> Option<(usize, usize, usize, usize)> {
    let n = g.order();
    let d = bfs_oracle(g);
    let k = (0..n).filter(|&v| g.has_edge(0, v)).count();
    let mut lambda = None;
    let mut mu = None;
    for x in 0..n {
        if (0..n).filter(|&v| g.has_edge(x, v)).count() != k {
            return None;
        }
        for y in x + 1..n {
            let slot = match d[x][y] {
                1 => &mut lambda,
                2 => &mut mu,
                _ => continue,
            };
            let c = common_oracle(g, x, y);
            if *slot.get_or_insert(c) != c {
                return None;
            }
        }
    }
    Some((n, k, lambda.unwrap_or(0), mu.unwrap_or(0)))
}

pub fn diameter_oracle(g: &Graph) -> Option<u32> {
    let d = bfs_oracle(g);
    let mut max = 0;
    for row in &d {
        for &x in row {
            if x == UNREACHED {
                return None;
            }
            max = max.max(x);
        }
    }
    Some(max)
}

/// Two-colouring by BFS parity.
pub fn bipartite_oracle(g: &Graph) -> bool {
    let d = bfs_oracle(g);
    let n = g.order();
    (0..n).all(|u| (0..n).all(|v| !g.has_edge(u, v) || d[0][u] == UNREACHED || d[0][u] % 2 != d[0][v] % 2))
}

/// Per-vertex neighbour counts into each cell; `None` if some cell pair is not constant.
pub fn brute_quotient(g: &Graph, cells: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let mut entries = vec![vec![0; cells.len()]; cells.len()];
    for (i, cell) in cells.iter().enumerate() {
        for (j, target) in cells.iter().enumerate() {
            let counts: Vec<usize> =
                cell.iter().map(|&v| target.iter().filter(|&&w| g.has_edge(v, w)).count()).collect();
            if counts.windows(2).any(|w| w[0] != w[1]) {
                return None;
            }
            entries[i][j] = counts[0];
        }
    }
    Some(entries)
}

/// Cells by signature `(d(x, y), d(x', y))` in the fixed order, from oracle distances.
pub fn signature_cells_oracle(g: &Graph, d: &[Vec<u32>], x: usize) -> Vec<Vec<usize>> {
    const ORDER: [(u32, u32); 6] = [(0, 4), (1, 3), (2, 2), (3, 1), (3, 3), (4, 0)];
    let far: Vec<usize> = (0..g.order()).filter(|&y| d[x][y] == 4).collect();
    assert_eq!(far.len(), 1, "vertex {x} must have a unique antipode");
    let xp = far[0];
    let mut cells = vec![Vec::new(); ORDER.len()];
    for y in 0..g.order() {
        let i = ORDER.iter().position(|&s| s == (d[x][y], d[xp][y])).expect("signature in the fixed list");
        cells[i].push(y);
    }
    cells
}

/// Quotient regenerated at every vertex of `g`; `None` unless all vertices agree.
pub fn regenerate_quotient(g: &Graph) -> Option<QuotientMatrix> {
    let d = bfs_oracle(g);
    let mut result: Option<QuotientMatrix> = None;
    for x in 0..g.order() {
        let cells = signature_cells_oracle(g, &d, x);
        let entries = brute_quotient(g, &cells)?;
        let q = QuotientMatrix { sizes: cells.iter().map(Vec::len).collect(), entries };
        match &result {
            None => result = Some(q),
            Some(prev) if *prev != q => return None,
            Some(_) => {}
        }
    }
    result
}

/// The instance behind the frozen table for valency `k`.
pub fn frozen_instance(k: u64) -> Graph {
    match k {
        5 => taylor_bd_pipeline(BaseGraph::Paley, 5).unwrap(),
        7 => im_pipeline(7).unwrap(),
        _ => panic!("no frozen table for k = {k}"),
    }
}

// Property suites. Each returns the number of trials it ran.

const FIELD_ORDERS: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 29, 49];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn field_axioms(cases: u32) -> Result<u32, String> {
    let strategy = prop::sample::select(FIELD_ORDERS.to_vec()).prop_flat_map(|q| (Just(q), 0..q, 0..q, 0..q));
    runner(cases)
        .run(&strategy, |(q, a, b, c)| {
            let f = Field::with_order(q).unwrap();
            let (a, b, c) = (f.element(a), f.element(b), f.element(c));
            check(f.add(&a, &b) == f.add(&b, &a), || "addition commutes".into())?;
            check(f.mul(&a, &b) == f.mul(&b, &a), || "multiplication commutes".into())?;
            check(f.add(&f.add(&a, &b), &c) == f.add(&a, &f.add(&b, &c)), || "addition associates".into())?;
            check(f.mul(&f.mul(&a, &b), &c) == f.mul(&a, &f.mul(&b, &c)), || "multiplication associates".into())?;
            check(f.mul(&a, &f.add(&b, &c)) == f.add(&f.mul(&a, &b), &f.mul(&a, &c)), || "distributive".into())?;
            check(f.add(&a, &f.neg(&a)) == f.zero(), || "additive inverse".into())?;
            check(f.add(&f.sub(&a, &b), &b) == a, || "subtraction".into())?;
            check(f.pow(&a, q) == a, || "a^q = a".into())?;
            if a.is_zero() {
                check(f.inv(&a) == Err(Error::DivisionByZero), || "inverse of zero".into())?;
                return Ok(());
            }
            check(f.mul(&a, &f.inv(&a).unwrap()) == f.one(), || "multiplicative inverse".into())?;
            if b.is_zero() || q % 2 == 0 {
                return Ok(());
            }
            let ab = f.mul(&a, &b);
            let (sa, sb, sab) = (f.is_square(&a).unwrap(), f.is_square(&b).unwrap(), f.is_square(&ab).unwrap());
            check(sab == (sa == sb), || format!("square class multiplicative in GF({q})"))?;
            if q % 4 == 1 {
                let (ca, cb, cab) =
                    (f.quartic_class(&a).unwrap(), f.quartic_class(&b).unwrap(), f.quartic_class(&ab).unwrap());
                check(cab == (ca + cb) % 4, || format!("quartic class additive in GF({q})"))?;
                check(sa == (ca % 2 == 0), || "squares are the even quartic classes".into())?;
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

/// `(n, adjacency bits)` for a graph on `1..=max_n` vertices.
pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut it = bits.into_iter();
            Graph::from_fn(n, |_, _| it.next().unwrap())
        })
}

pub fn product_distance_additivity(cases: u32) -> Result<u32, String> {
    runner(cases)
        .run(&(graph_strategy(6), graph_strategy(6)), |(g, h)| {
            let p = cartesian_product(&g, &h);
            let (dg, dh) = (bfs_oracle(&g), bfs_oracle(&h));
            let dist = p.distances();
            let m = h.order();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    for u in 0..m {
                        for v in 0..m {
                            let want = if dg[a][b] == UNREACHED || dh[u][v] == UNREACHED {
                                None
                            } else {
                                Some(dg[a][b] + dh[u][v])
                            };
                            let got = dist.get(a * m + u, b * m + v);
                            check(got == want, || format!("d(({a},{u}),({b},{v})) = {got:?}, want {want:?}"))?;
                        }
                    }
                }
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

pub fn codec_round_trips(cases: u32) -> Result<u32, String> {
    runner(cases)
        .run(&graph_strategy(70), |g| {
            let text = graph6_encode(&g);
            let n = g.order();
            let header = if n <= 62 { 1 } else { 4 };
            check(text.len() == header + (n * (n - 1) / 2).div_ceil(6), || "graph6 length".into())?;
            check(graph6_decode(text.as_bytes()).as_ref() == Ok(&g), || "graph6 round trip".into())?;
            let json = graph_json_encode(&g);
            check(graph_json_decode(json.as_bytes()).as_ref() == Ok(&g), || "JSON round trip".into())?;
            check(read_graph(json.as_bytes()).as_ref() == Ok(&g), || "autodetect JSON".into())?;
            check(read_graph(format!("{text}\n").as_bytes()).as_ref() == Ok(&g), || "autodetect graph6".into())?;
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

fn partition_from_labels(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); labels.iter().max().map_or(0, |m| m + 1)];
    for (v, &l) in labels.iter().enumerate() {
        cells[l].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

fn agree_with_oracle(g: &Graph, cells: Vec<Vec<usize>>) -> Result<Option<QuotientMatrix>, TestCaseError> {
    let oracle = brute_quotient(g, &cells);
    let part = VertexPartition::new(g.order(), cells.clone()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    match equitable_check(g, &part) {
        Ok(q) => {
            check(oracle.as_ref() == Some(&q.entries), || "equitable_check accepted a partition the oracle rejects".into())?;
            check(q.sizes == cells.iter().map(Vec::len).collect::<Vec<_>>(), || "cell sizes".into())?;
            check(q.double_count_holds(), || "double counting".into())?;
            Ok(Some(q))
        }
        Err(Error::NotEquitable { vertex, cell, found, expected }) => {
            check(oracle.is_none(), || "equitable_check rejected an equitable partition".into())?;
            let real = cells[cell].iter().filter(|&&w| g.has_edge(vertex, w)).count();
            check(real == found && found != expected, || "witness count is wrong".into())?;
            Ok(None)
        }
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    }
}

pub fn quotient_random_partitions(cases: u32) -> Result<u32, String> {
    let strategy = graph_strategy(9)
        .prop_flat_map(|g| {
            let n = g.order();
            (Just(g), prop::collection::vec(0..3usize, n))
        });
    runner(cases)
        .run(&strategy, |(g, labels)| agree_with_oracle(&g, partition_from_labels(&labels)).map(|_| ()))
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

/// Residue classes mod `d` are equitable in any circulant on `Z_n` with `d | n`.
pub fn quotient_circulant_cosets(cases: u32) -> Result<u32, String> {
    let strategy = (4usize..=16).prop_flat_map(|n| {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        (Just(n), prop::collection::vec(any::<bool>(), n / 2), prop::sample::select(divisors))
    });
    runner(cases)
        .run(&strategy, |(n, conn, d)| {
            let in_s = |s: usize| s != 0 && conn[s.min(n - s) - 1];
            let g = Graph::from_fn(n, |u, v| in_s((v + n - u) % n));
            let labels: Vec<usize> = (0..n).map(|v| v % d).collect();
            let q = agree_with_oracle(&g, partition_from_labels(&labels))?;
            check(q.is_some(), || format!("cosets mod {d} must be equitable"))
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

/// Exhaustive over all 24 base vertices of the `q = 5` Taylor pipeline instance.
pub fn signature_partitions_q5() -> Result<u32, String> {
    let g = frozen_instance(5);
    let d = bfs_oracle(&g);
    for x in 0..g.order() {
        let cells = signature_cells_oracle(&g, &d, x);
        let part = signature_partition(&g, x).map_err(|e| e.to_string())?;
        if part.cells() != cells.as_slice() {
            return Err(format!("signature cells differ at vertex {x}"));
        }
        let q = equitable_check(&g, &part).map_err(|e| format!("vertex {x}: {e}"))?;
        if brute_quotient(&g, &cells).as_ref() != Some(&q.entries) {
            return Err(format!("quotient differs from the oracle at vertex {x}"));
        }
    }
    Ok(g.order() as u32)
}

/// Every suite with its trial count, sized to exceed 1000 trials in total.
pub fn all_suites() -> Vec<(&'static str, Result<u32, String>)> {
    vec![
        ("field axioms and class multiplicativity", field_axioms(400)),
        ("Cartesian product distance additivity", product_distance_additivity(150)),
        ("codec round trips", codec_round_trips(250)),
        ("equitable_check vs oracle on random partitions", quotient_random_partitions(300)),
        ("equitable_check on circulant coset partitions", quotient_circulant_cosets(150)),
        ("signature partitions of the q = 5 instance", signature_partitions_q5()),
    ]
}
