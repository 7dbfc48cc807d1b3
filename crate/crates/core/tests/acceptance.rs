//! End to end acceptance suite. One test per agreed criterion, named in
//! order; each prints a PASS line with its elapsed time, so a full run reads
//! as a checklist. Time budgets are asserted where the criterion fixes one.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use blockerlab::blocker_families::{
    class_b_from_broken, classify, enumerate_descriptors, from_alt_description, generate,
    to_alt_description,
};
use blockerlab::cyclic_geometry::{boundary_consecutive_window, crosses, direction, is_boundary};
use blockerlab::exhaustive_search::{
    check_characterization, enumerate_blockers_bruteforce, enumerate_blockers_pruned,
    min_blocking_size,
};
use blockerlab::ham_paths::{blocks, enumerate_shps, is_shp, shp_count};
use blockerlab::proof_witnesses::{
    build_p_nu, build_test_path_f, fi_incidence, find_structured_witness, BackboneHoles,
    TestPathContext,
};
use blockerlab::{
    BlockerDescriptor, ClassAParams, ClassBParams, ClassificationResult, Edge, EdgeSet, Path,
};
use itertools::Itertools;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn set(n: usize, pairs: &[(usize, usize)]) -> EdgeSet {
    EdgeSet::from_edges(n, pairs.iter().map(|&(a, b)| Edge::new(a, b).unwrap())).unwrap()
}

fn edge_mod(a: i64, b: i64, n: usize) -> Edge {
    let n = n as i64;
    Edge::new(a.rem_euclid(n) as usize, b.rem_euclid(n) as usize).unwrap()
}

/// Class A fixture: caterpillar with one upper and three lower beams.
fn caterpillar_fixture() -> (BlockerDescriptor, EdgeSet) {
    let d = BlockerDescriptor::A(ClassAParams {
        m: 8,
        k: 0,
        alpha: 1,
        delta: 3,
        eps: vec![1],
        xi: vec![4, 2, 1],
    });
    let s = set(15, &[(1, 2), (2, 3), (3, 4), (4, 5), (14, 2), (3, 12), (4, 9), (4, 7)]);
    (d, s)
}

/// Class B fixture: broken backbone with a width one bridge.
fn broken_backbone_fixture() -> (BlockerDescriptor, EdgeSet) {
    let d = BlockerDescriptor::B(ClassBParams {
        m: 8,
        k: 0,
        alpha: 1,
        delta: 2,
        beta: 2,
        gamma: 2,
        eta: 1,
        eps: vec![1],
        xi: vec![2, 1],
    });
    let s = set(15, &[(1, 2), (2, 3), (4, 5), (5, 6), (2, 5), (14, 2), (5, 10), (5, 8)]);
    (d, s)
}

/// Class B fixture whose wide bridge crosses an upper beam.
fn crossing_bridge_fixture() -> (BlockerDescriptor, EdgeSet) {
    let d = BlockerDescriptor::B(ClassBParams {
        m: 10,
        k: 0,
        alpha: 1,
        delta: 1,
        beta: 3,
        gamma: 4,
        eta: 2,
        eps: vec![2],
        xi: vec![2],
    });
    let s = set(
        19,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (2, 7),
            (17, 3),
            (7, 12),
        ],
    );
    (d, s)
}

#[test]
fn acceptance_01_minimum_blocker_size() {
    let start = Instant::now();
    for n in [3usize, 5, 7, 9] {
        let report = min_blocking_size(n).unwrap();
        assert_eq!(report.size, (n + 1) / 2, "minimum blocker size at n = {n}");
        assert_eq!(report.example.len(), report.size);
        assert!(blocks(&report.example), "reported example must block at n = {n}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "time budget exceeded: {elapsed:?}");
    println!("PASS 01 minimum blocker size is (n+1)/2 for n in {{3,5,7,9}} ({elapsed:?})");
}

#[test]
fn acceptance_02_characterization_bijection() {
    let start = Instant::now();
    let expected = [(5usize, 15usize), (7, 56), (9, 189)];
    for (n, count) in expected {
        // Pruning premise: the windowed scan loses no blocker where the full
        // scan is feasible.
        assert_eq!(
            enumerate_blockers_pruned(n).unwrap(),
            enumerate_blockers_bruteforce(n).unwrap(),
            "pruned scan must equal the full scan at n = {n}"
        );
        let report = check_characterization(n).unwrap();
        assert!(report.missing_from_parametric.is_empty(), "missing at n = {n}");
        assert!(report.extra_in_parametric.is_empty(), "extra at n = {n}");
        assert_eq!(report.count_bruteforce, count);
        assert_eq!(report.count_parametric, count);
        assert_eq!(report.agreement_count, count);
    }
    let large = Instant::now();
    let report = check_characterization(11).unwrap();
    let large_elapsed = large.elapsed();
    assert!(report.missing_from_parametric.is_empty(), "missing at n = 11");
    assert!(report.extra_in_parametric.is_empty(), "extra at n = 11");
    assert_eq!(report.count_bruteforce, 572);
    assert_eq!(report.count_parametric, 572);
    assert_eq!(report.agreement_count, 572);
    assert_eq!((report.class_a_count, report.class_b_count), (528, 44));
    assert!(large_elapsed < Duration::from_secs(600), "time budget exceeded: {large_elapsed:?}");
    println!(
        "PASS 02 characterization is a bijection for n in {{5,7,9,11}} (n=11 in {large_elapsed:?}, total {:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_03_family_fixtures_block() {
    let start = Instant::now();
    let fixtures =
        [caterpillar_fixture(), broken_backbone_fixture(), crossing_bridge_fixture()];
    for (d, expected) in &fixtures {
        assert_eq!(&generate(d).unwrap(), expected, "generated edges for {d:?}");
        let t = Instant::now();
        assert!(blocks(expected), "fixture must block: {d:?}");
        let dt = t.elapsed();
        assert!(dt < Duration::from_secs(5), "blocking check budget exceeded: {dt:?}");
    }
    // The wide bridge fixture contains a crossing pair, so blockers need not
    // be plane graphs.
    let (_, s) = crossing_bridge_fixture();
    assert!(crosses(&Edge::new(17, 3).unwrap(), &Edge::new(2, 7).unwrap(), 19));
    assert!(s.edges().iter().tuple_combinations().any(|(e1, e2)| crosses(e1, e2, 19)));
    println!("PASS 03 family fixtures generate exactly and block ({:?})", start.elapsed());
}

#[test]
fn acceptance_04_blocker_support_shape() {
    let start = Instant::now();
    for n in [5usize, 7, 9] {
        let m = (n + 1) / 2;
        for s in enumerate_blockers_bruteforce(n).unwrap() {
            let c = boundary_consecutive_window(&s)
                .unwrap()
                .unwrap_or_else(|| panic!("blocker without direction window: {s:?}"));
            let derotated = s.rotated((n - c) % n);
            let mut boundary_slots = Vec::new();
            let mut all_slots = Vec::new();
            for e in derotated.iter() {
                let d = direction(e, n);
                let slot = if d == 0 { m } else { (d + 1) / 2 };
                all_slots.push(slot);
                if is_boundary(e, n) {
                    boundary_slots.push(slot);
                }
            }
            assert!(boundary_slots.len() >= 2, "fewer than two boundary edges: {s:?}");
            let first = *boundary_slots.iter().min().unwrap();
            let last = *boundary_slots.iter().max().unwrap();
            let holes = all_slots
                .iter()
                .filter(|&&slot| slot > first && slot < last && !boundary_slots.contains(&slot))
                .count();
            assert!(holes <= 1, "more than one backbone hole: {s:?}");
            // The two families realize exactly zero or one hole.
            match classify(&s).unwrap() {
                ClassificationResult::Matched(BlockerDescriptor::A(_)) => assert_eq!(holes, 0),
                ClassificationResult::Matched(BlockerDescriptor::B(_)) => assert_eq!(holes, 1),
                ClassificationResult::NotBlocker { .. } => {
                    panic!("exhaustive blocker rejected by classification: {s:?}")
                }
            }
        }
    }
    println!(
        "PASS 04 every blocker at n in {{5,7,9}} is windowed with >=2 boundary edges and <=1 hole ({:?})",
        start.elapsed()
    );
}

fn check_two_hole_family(h: &BackboneHoles) {
    let n = h.n();
    let h1 = Edge::new(h.beta_p, h.beta_p + 1).unwrap();
    let h2 = Edge::new(h.gamma_p, h.gamma_p + 1).unwrap();
    let members: Vec<(i64, Path, HashSet<Edge>)> = (-(h.delta as i64)..=h.alpha as i64)
        .map(|nu| {
            let p = build_p_nu(h, nu);
            let edges: HashSet<Edge> = p.edges().collect();
            (nu, p, edges)
        })
        .collect();
    for (nu, p, edges) in &members {
        assert!(is_shp(p), "member {nu} of {h:?} must be an SHP");
        let allowed: HashSet<usize> = (2 * nu - 1..=2 * nu + 2)
            .map(|d| d.rem_euclid(n as i64) as usize)
            .collect();
        for e in edges {
            if *e == h1 || *e == h2 {
                continue;
            }
            assert!(
                allowed.contains(&direction(e, n)),
                "member {nu} of {h:?} leaves its direction window at {e:?}"
            );
        }
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let common: HashSet<Edge> =
                members[i].2.intersection(&members[j].2).copied().collect();
            assert_eq!(
                common,
                HashSet::from([h1, h2]),
                "members {} and {} of {h:?} must share exactly the hole edges",
                members[i].0,
                members[j].0
            );
        }
    }
}

#[test]
fn acceptance_05_two_hole_family_suite() {
    let start = Instant::now();
    check_two_hole_family(&BackboneHoles { m: 8, alpha: 2, delta: 1, beta_p: 3, gamma_p: 5 });
    let mut rng = ChaCha8Rng::seed_from_u64(0x2401);
    for _ in 0..100 {
        let m = rng.gen_range(4..=10usize);
        let alpha = rng.gen_range(0..=m - 4);
        let delta = rng.gen_range(0..=m - 4 - alpha);
        // Holes live strictly between the seams; alpha+delta+4 <= m leaves
        // room for two.
        let lo = alpha + 1;
        let hi = m - delta - 2;
        let beta_p = rng.gen_range(lo..hi);
        let gamma_p = rng.gen_range(beta_p + 1..=hi);
        check_two_hole_family(&BackboneHoles { m, alpha, delta, beta_p, gamma_p });
    }
    println!(
        "PASS 05 two hole family: SHP, direction discipline, shared hole edges ({:?})",
        start.elapsed()
    );
}

fn check_test_path_incidence(p: &ClassBParams) {
    p.validate().unwrap();
    assert_eq!(p.k, 0, "incidence is checked in the unrotated frame");
    let ctx = TestPathContext { m: p.m, alpha: p.alpha, beta: p.beta, delta: p.delta };
    let n = ctx.n();
    for i in 1 - 2 * (ctx.delta as i64)..=2 * ctx.alpha as i64 {
        assert!(is_shp(&build_test_path_f(&ctx, i)), "F_{i} for {p:?} must be an SHP");
    }
    let s = generate(&BlockerDescriptor::B(p.clone())).unwrap();
    let (m, a, d, b) = (p.m, p.alpha, p.delta, p.beta);
    let mut expected: HashMap<Edge, Vec<i64>> = HashMap::new();
    for t in a..a + b {
        expected.insert(edge_mod(t as i64, t as i64 + 1, n), vec![]);
    }
    for t in a + b + 1..m - d {
        expected.insert(edge_mod(t as i64, t as i64 + 1, n), vec![]);
    }
    expected.insert(edge_mod((a + b - p.eta) as i64, (a + b + 1 + p.eta) as i64, n), vec![]);
    for i in 1..=a {
        let e = p.eps[i - 1] as i64;
        let i64i = i as i64;
        expected.insert(edge_mod(i64i - 1 - e, i64i + e, n), vec![2 * i64i - 1, 2 * i64i]);
    }
    for j in 1..=d {
        let x = p.xi[j - 1] as i64;
        let (mj, j64) = ((m - j) as i64, j as i64);
        expected.insert(edge_mod(mj - x, mj + 1 + x, n), vec![1 - 2 * j64, 2 - 2 * j64]);
    }
    assert_eq!(expected.len(), m, "incidence table must cover all edges of {p:?}");
    for (edge, hits) in fi_incidence(&ctx, &s) {
        assert_eq!(
            Some(&hits),
            expected.get(&edge),
            "test path incidence at {edge:?} for {p:?}"
        );
    }
}

fn sample_decreasing(rng: &mut ChaCha8Rng, len: usize, max: usize) -> Vec<usize> {
    let mut vals: Vec<usize> =
        rand::seq::index::sample(rng, max, len).iter().map(|v| v + 1).collect();
    vals.sort_unstable_by(|x, y| y.cmp(x));
    vals
}

#[test]
fn acceptance_06_test_path_family_suite() {
    let start = Instant::now();
    // Fixed context: every Class B descriptor sharing it meets the six test
    // paths only in its beams, two per beam.
    let ctx = TestPathContext { m: 8, alpha: 2, beta: 2, delta: 1 };
    let mut fixed = 0;
    for d in enumerate_descriptors(ctx.n()).unwrap() {
        if let BlockerDescriptor::B(p) = d {
            if p.k == 0 && p.alpha == ctx.alpha && p.beta == ctx.beta && p.delta == ctx.delta {
                check_test_path_incidence(&p);
                fixed += 1;
            }
        }
    }
    assert!(fixed > 0, "fixed context must match some descriptor");
    let mut rng = ChaCha8Rng::seed_from_u64(0x2402);
    for _ in 0..100 {
        let m = rng.gen_range(5..=12usize);
        let alpha = rng.gen_range(0..=m - 5);
        let delta = rng.gen_range(0..=m - 5 - alpha);
        let run_total = m - alpha - delta - 1;
        let beta = rng.gen_range(2..=run_total - 2);
        let gamma = run_total - beta;
        let eta = rng.gen_range(1..=beta.min(gamma) - 1);
        let eps = sample_decreasing(&mut rng, alpha, alpha + beta - 2);
        let xi = sample_decreasing(&mut rng, delta, gamma + delta - 2);
        let p = ClassBParams { m, k: 0, alpha, delta, beta, gamma, eta, eps, xi };
        check_test_path_incidence(&p);
    }
    println!(
        "PASS 06 test paths are SHPs and meet Class B members exactly in beams ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_07_witness_search_agreement() {
    let start = Instant::now();
    // A structured witness exists exactly when the candidate fails to block,
    // and every witness is a valid avoiding SHP.
    let check = |s: &EdgeSet| match find_structured_witness(s) {
        Some((w, method)) => {
            assert!(is_shp(&w), "invalid witness via {method:?} for {s:?}");
            assert!(w.avoids(s), "witness meets candidate via {method:?} for {s:?}");
        }
        None => assert!(blocks(s), "no witness for a non blocking candidate {s:?}"),
    };
    let n7 = 7usize;
    let edges7: Vec<Edge> =
        (0..n7).tuple_combinations().map(|(a, b)| Edge::new(a, b).unwrap()).collect();
    let mut total = 0usize;
    for combo in edges7.iter().combinations(4) {
        let s = EdgeSet::from_edges(n7, combo.into_iter().copied()).unwrap();
        check(&s);
        total += 1;
    }
    assert_eq!(total, 5985, "all size four candidates at n = 7");
    let n9 = 9usize;
    let edges9: Vec<Edge> =
        (0..n9).tuple_combinations().map(|(a, b)| Edge::new(a, b).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2403);
    for _ in 0..10_000 {
        let picks = rand::seq::index::sample(&mut rng, edges9.len(), 5);
        let s = EdgeSet::from_edges(n9, picks.iter().map(|i| edges9[i])).unwrap();
        check(&s);
    }
    println!(
        "PASS 07 structured witnesses agree with exhaustive blocking ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_08_alternative_description_round_trip() {
    let start = Instant::now();
    let mut round_trips = 0usize;
    for n in (3..=15usize).step_by(2) {
        for d in enumerate_descriptors(n).unwrap() {
            if let BlockerDescriptor::A(p) = d {
                let alt = to_alt_description(&p).unwrap();
                alt.validate().unwrap();
                assert_eq!(from_alt_description(&alt, p.k).unwrap(), p, "round trip at n = {n}");
                round_trips += 1;
            }
        }
    }
    assert!(round_trips > 0);
    // Breaking the ancestor backbone after two edges with a width one bridge
    // reproduces the broken backbone fixture.
    let ancestor =
        ClassAParams { m: 8, k: 0, alpha: 1, delta: 2, eps: vec![1], xi: vec![2, 1] };
    let derived = class_b_from_broken(&ancestor, 2, 1).unwrap();
    let (fixture, expected_set) = broken_backbone_fixture();
    assert_eq!(BlockerDescriptor::B(derived.clone()), fixture);
    assert_eq!(generate(&BlockerDescriptor::B(derived)).unwrap(), expected_set);
    println!(
        "PASS 08 alternative description round trips ({round_trips} descriptors) and breaking reconstructs the fixture ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_09_shp_enumeration_counts() {
    let start = Instant::now();
    for n in 3..=8usize {
        let oracle = (0..n)
            .permutations(n)
            .filter(|p| p[0] < p[n - 1])
            .filter(|p| is_shp(&Path::new(n, p.clone()).unwrap()))
            .count();
        assert_eq!(enumerate_shps(n).len(), oracle, "permutation oracle at n = {n}");
    }
    let recorded: [u128; 12] =
        [3, 8, 20, 48, 112, 256, 576, 1280, 2816, 6144, 13312, 28672];
    for (i, count) in recorded.into_iter().enumerate() {
        let n = i + 3;
        assert_eq!(enumerate_shps(n).len() as u128, count, "recorded count at n = {n}");
        assert_eq!(shp_count(n), count, "closed form at n = {n}");
    }
    println!("PASS 09 SHP counts match the permutation oracle and records ({:?})", start.elapsed());
}

#[test]
fn acceptance_10_recorded_witness_paths() {
    let start = Instant::now();
    // Bad beam refutation: zig away from the beam, then close along the far
    // boundary arc.
    let bad_beam = set(15, &[(13, 3), (14, 4), (2, 3), (3, 4), (1, 8), (5, 6), (6, 7), (12, 3)]);
    let w = Path::new(15, vec![4, 5, 3, 6, 2, 7, 1, 0, 14, 13, 12, 11, 10, 9, 8]).unwrap();
    assert!(is_shp(&w));
    assert!(w.avoids(&bad_beam));
    // Meeting beam pair: reflections around both roots composed at the seam.
    let meeting = set(15, &[(2, 13), (3, 13), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (14, 4)]);
    let w = Path::new(15, vec![7, 8, 6, 9, 5, 10, 4, 11, 3, 12, 13, 14, 2, 0, 1]).unwrap();
    assert!(is_shp(&w));
    assert!(w.avoids(&meeting));
    // Crossing beam pair: same composition with the opposite parity.
    let crossing = set(15, &[(2, 11), (3, 12), (2, 3), (3, 4), (4, 5), (5, 6), (3, 13), (14, 4)]);
    let w = Path::new(15, vec![7, 6, 8, 5, 9, 4, 10, 3, 11, 12, 2, 13, 1, 14, 0]).unwrap();
    assert!(is_shp(&w));
    assert!(w.avoids(&crossing));
    println!("PASS 10 recorded refutation paths are avoiding SHPs ({:?})", start.elapsed());
}
