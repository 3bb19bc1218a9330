use std::collections::{HashMap, VecDeque};

use geodesy::laakso::{LaaksoGraph, LaaksoPoint, MAX_LEVEL};
use geodesy::{verify_geodesic, GeodesyError, MetricSpace, ParamGrid, Scalar, Tolerance};
use num_bigint::BigUint;
use num_rational::BigRational;

/// Breadth-first search over the exported edge list: hop distances and
/// shortest-path counts from `source`. Every edge has the same length, so
/// hops times the edge length is the graph distance.
fn bfs(g: &LaaksoGraph, source: usize) -> (Vec<Option<usize>>, Vec<BigUint>) {
    let n = g.vertices().len();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    let mut hops = vec![None; n];
    let mut ways = vec![BigUint::from(0u32); n];
    hops[source] = Some(0);
    ways[source] = BigUint::from(1u32);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let hx = hops[x].unwrap();
        for &y in &adj[x] {
            match hops[y] {
                None => {
                    hops[y] = Some(hx + 1);
                    ways[y] = ways[x].clone();
                    queue.push_back(y);
                }
                Some(hy) if hy == hx + 1 => ways[y] = &ways[y] + &ways[x],
                _ => {}
            }
        }
    }
    (hops, ways)
}

/// Counts endpoint geodesics by exhaustive depth-first search over simple
/// paths of the minimal hop length.
fn exhaustive_paths(g: &LaaksoGraph) -> usize {
    let n = g.vertices().len();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    let target_hops = 4usize.pow(g.level());
    fn go(adj: &[Vec<usize>], x: usize, goal: usize, left: usize, seen: &mut Vec<bool>) -> usize {
        if x == goal {
            return (left == 0) as usize;
        }
        if left == 0 {
            return 0;
        }
        let mut total = 0;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                total += go(adj, y, goal, left - 1, seen);
                seen[y] = false;
            }
        }
        total
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    go(&adj, 0, 1, target_hops, &mut seen)
}

#[test]
fn endpoint_counts_follow_the_self_similar_recurrence() {
    // a level-n geodesic crosses four level-1 pieces, each a copy of level n−1,
    // and picks one of two middle branches: c(n) = 2·c(n−1)^4
    let mut expected = BigUint::from(1u32);
    for level in 1..=4 {
        expected = BigUint::from(2u32) * expected.pow(4);
        let g = LaaksoGraph::build(level).unwrap();
        let (a, b) = g.endpoints();
        assert_eq!(g.count_geodesics(&a, &b).unwrap(), expected, "level {level}");
    }
    assert_eq!(expected, BigUint::from(2u32).pow(85));
}

#[test]
fn counts_match_breadth_first_search_between_vertices() {
    let g = LaaksoGraph::build(2).unwrap();
    let len = g.edge_length().clone();
    for source in [0usize, 2, 3, 7, 11] {
        let (hops, ways) = bfs(&g, source);
        for target in 0..g.vertices().len() {
            let (a, b) = (LaaksoPoint::vertex(source), LaaksoPoint::vertex(target));
            let d = g.laakso_distance(&a, &b).unwrap();
            assert_eq!(d, &len * BigRational::from_integer(hops[target].unwrap().into()));
            if source != target {
                assert_eq!(g.count_geodesics(&a, &b).unwrap(), ways[target], "{source} -> {target}");
            }
        }
    }
}

#[test]
fn enumeration_matches_exhaustive_search() {
    for level in 1..=2 {
        let g = LaaksoGraph::build(level).unwrap();
        let (a, b) = g.endpoints();
        let found = g.enumerate_geodesics(&a, &b, 1000).unwrap();
        assert!(!found.truncated);
        assert_eq!(found.curves.len(), exhaustive_paths(&g));
        assert_eq!(BigUint::from(found.curves.len()), found.total);
        for (i, c) in found.curves.iter().enumerate() {
            for other in &found.curves[..i] {
                assert_ne!(c, other);
            }
            assert!(
                verify_geodesic(&g, c, &ParamGrid::new(4, &[c]).unwrap(), Tolerance::default())
                    .unwrap()
                    .passed()
            );
        }
    }
}

#[test]
fn lower_levels_embed_isometrically() {
    // vertices keep their ids across levels, and distances between old
    // vertices do not change
    let coarse = LaaksoGraph::build(1).unwrap();
    let fine = LaaksoGraph::build(3).unwrap();
    for a in 0..coarse.vertices().len() {
        for b in 0..coarse.vertices().len() {
            let (p, q) = (LaaksoPoint::vertex(a), LaaksoPoint::vertex(b));
            assert_eq!(
                coarse.laakso_distance(&p, &q).unwrap(),
                fine.laakso_distance(&p, &q).unwrap()
            );
        }
    }
    let (a, b) = fine.endpoints();
    assert_eq!(fine.distance(&a, &b).unwrap(), Scalar::one());
}

#[test]
fn interior_points_and_caps() {
    let g = LaaksoGraph::build(1).unwrap();
    let half = g.edge_length() / BigRational::from_integer(2.into());
    // midpoints of the two parallel middle edges next to p
    let mids: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| e.address == "1" || e.address == "3")
        .map(|e| g.at_offset(e.id, half.clone()))
        .collect();
    assert_eq!(g.laakso_distance(&mids[0], &mids[1]).unwrap(), g.edge_length().clone());
    assert_eq!(g.count_geodesics(&mids[0], &mids[1]).unwrap(), BigUint::from(1u32));
    assert_eq!(
        LaaksoGraph::build(MAX_LEVEL + 1).unwrap_err(),
        GeodesyError::LevelCap(MAX_LEVEL + 1, MAX_LEVEL)
    );
    assert_eq!(LaaksoGraph::build(1).unwrap().edges().len(), 6);
    let level2 = LaaksoGraph::build(2).unwrap();
    let mut per_digit: HashMap<char, usize> = HashMap::new();
    for e in level2.edges() {
        *per_digit.entry(e.address.chars().last().unwrap()).or_default() += 1;
    }
    assert!(per_digit.values().all(|&c| c == 6));
}
