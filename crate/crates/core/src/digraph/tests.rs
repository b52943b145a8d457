use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{MultiPoly, Rational};
use crate::words::{colored_dyck_words, parse_word, Word};

fn flat(s: &str) -> FlatWord {
    match parse_word(s).unwrap() {
        Word::Flat(w) => w,
        Word::Power(_) => unreachable!(),
    }
}

fn loop1(w: u32) -> WeightedDigraph {
    WeightedDigraph::new(vec![w], &[(0, 0)]).unwrap()
}

fn k2() -> WeightedDigraph {
    WeightedDigraph::unweighted(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_w: u32) -> WeightedDigraph {
    let n = rng.gen_range(1..=max_n);
    let density: f64 = rng.gen_range(0.2..0.7);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    let weights = (0..n).map(|_| rng.gen_range(1..=max_w)).collect();
    WeightedDigraph::new(weights, &edges).unwrap()
}

#[test]
fn word_digraph_examples() {
    assert_eq!(word_digraph(&flat("a1 a1 c1 c1"), false).unwrap(), k2());
    assert_eq!(word_digraph(&flat("a1 c1"), false).unwrap(), loop1(1));
    assert_eq!(word_digraph(&flat("a1(1) c1(0)"), true).unwrap(), loop1(2));
    let g = word_digraph(&flat("a1 a2 c1 c2"), false).unwrap();
    assert_eq!(g.edges(), vec![(0, 1), (1, 0)]);
    assert!(word_digraph(&flat("c1 a1"), false).is_err());
}

#[test]
fn io_round_trips() {
    let g = WeightedDigraph::parse_text("1->1 1->2 2->1 2->2").unwrap();
    assert_eq!(g, k2());
    let js = serde_json::to_string(&g).unwrap();
    assert_eq!(js, r#"{"weights":[1,1],"edges":[[1,1],[1,2],[2,1],[2,2]]}"#);
    assert_eq!(serde_json::from_str::<WeightedDigraph>(&js).unwrap(), g);
    let h = WeightedDigraph::parse_text("1->2\nw: 2 3").unwrap();
    assert_eq!(h.weights(), &[2, 3]);
    assert_eq!(WeightedDigraph::parse_text(&h.to_text()).unwrap(), h);
    assert!(WeightedDigraph::parse_text("1-2").is_err());
    assert!(WeightedDigraph::parse_text("1->3\nw: 1 1").is_err());
}

#[test]
fn cycle_cover_examples() {
    assert_eq!(cycle_covers(&loop1(1)).unwrap().len(), 1);
    assert_eq!(cycle_covers(&k2()).unwrap().len(), 2);
    let g = WeightedDigraph::unweighted(2, &[(0, 1)]).unwrap();
    assert!(cycle_covers(&g).unwrap().is_empty());
    assert!(cycle_covers(&WeightedDigraph::unweighted(11, &[]).unwrap()).is_err());
}

#[test]
fn cycle_cover_poly_examples() {
    for m in [Method::BruteForce, Method::CutFuse] {
        assert_eq!(cycle_cover_poly(&loop1(1), m).unwrap().to_string(), "x");
        assert_eq!(cycle_cover_poly(&k2(), m).unwrap().to_string_descending(), "x^2+x");
        let empty = WeightedDigraph::unweighted(0, &[]).unwrap();
        assert_eq!(cycle_cover_poly(&empty, m).unwrap().to_string(), "1");
        let edgeless = WeightedDigraph::unweighted(2, &[]).unwrap();
        assert!(cycle_cover_poly(&edgeless, m).unwrap().is_zero());
    }
}

#[test]
fn cover_poly_examples() {
    let edgeless = WeightedDigraph::unweighted(2, &[]).unwrap();
    for m in [Method::BruteForce, Method::CutFuse] {
        let geo = cover_poly(&edgeless, CoverVariant::Geometric, m).unwrap();
        assert_eq!(geo.to_string_descending(), "y^2");
        let fac = cover_poly(&edgeless, CoverVariant::Factorial, m).unwrap();
        assert_eq!(fac.to_string_descending(), "y^2-y");
        let l = cover_poly(&loop1(1), CoverVariant::Geometric, m).unwrap();
        assert_eq!(l.to_string_descending(), "x+y");
    }
}

#[test]
fn indicator_examples() {
    for m in [Method::BruteForce, Method::CutFuse] {
        assert_eq!(cycle_indicator(&loop1(1), m).unwrap().to_string(), "x_1");
        assert_eq!(cycle_indicator(&loop1(2), m).unwrap().to_string(), "x_2");
        let p = cycle_indicator(&k2(), m).unwrap();
        let vars = indicator_vars(2);
        let x1 = MultiPoly::var(&vars, "x_1").unwrap();
        let x2 = MultiPoly::var(&vars, "x_2").unwrap();
        assert_eq!(p, x1.try_mul(&x1).unwrap().try_add(&x2).unwrap());
    }
}

#[test]
fn realizability_examples() {
    for w in colored_dyck_words(4, 2).iter().chain(colored_dyck_words(3, 2).iter()) {
        assert!(word_digraph(w, false).unwrap().realizability_check(), "{w}");
    }
    let bad = WeightedDigraph::unweighted(3, &[(0, 0), (1, 1), (2, 0), (2, 1)]).unwrap();
    assert!(!bad.realizability_check());
    assert!(WeightedDigraph::unweighted(3, &[]).unwrap().realizability_check());
}

#[test]
fn isomorphism() {
    let a = WeightedDigraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
    let b = WeightedDigraph::unweighted(3, &[(2, 0), (1, 2)]).unwrap();
    let c = WeightedDigraph::unweighted(3, &[(0, 1), (2, 1)]).unwrap();
    assert!(a.is_isomorphic(&b).unwrap());
    assert!(!a.is_isomorphic(&c).unwrap());
    let aw = WeightedDigraph::new(vec![1, 2, 1], &[(0, 1), (1, 2)]).unwrap();
    let bw = WeightedDigraph::new(vec![2, 1, 1], &[(2, 0), (1, 2)]).unwrap();
    let cw = WeightedDigraph::new(vec![1, 1, 2], &[(2, 0), (1, 2)]).unwrap();
    assert!(aw.is_isomorphic(&cw).unwrap());
    assert!(!aw.is_isomorphic(&bw).unwrap());
}

#[test]
fn fuse_follows_deletion_rule() {
    // 1->2 fused; 2->1 becomes a loop, 3->2 and 1->3 are dropped, 3->1 and 2->3 kept
    let g = WeightedDigraph::new(vec![1, 2, 1], &[(0, 1), (1, 0), (2, 1), (0, 2), (2, 0), (1, 2)]).unwrap();
    let f = g.fuse(0, 1);
    assert_eq!(f.weights(), &[3, 1]);
    assert_eq!(f.edges(), vec![(0, 0), (0, 1), (1, 0)]);
}

#[test]
fn cut_fuse_matches_brute_force_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 8, 1);
        assert_eq!(
            cycle_cover_poly(&g, Method::BruteForce).unwrap(),
            cycle_cover_poly(&g, Method::CutFuse).unwrap(),
            "{g}"
        );
    }
    for _ in 0..200 {
        let g = random_graph(&mut rng, 7, 3);
        assert_eq!(
            cycle_indicator(&g, Method::BruteForce).unwrap(),
            cycle_indicator(&g, Method::CutFuse).unwrap(),
            "{g}"
        );
    }
    for _ in 0..60 {
        let g = random_graph(&mut rng, 6, 1);
        for v in [CoverVariant::Geometric, CoverVariant::Factorial] {
            assert_eq!(
                cover_poly(&g, v, Method::BruteForce).unwrap(),
                cover_poly(&g, v, Method::CutFuse).unwrap(),
                "{g}"
            );
        }
    }
}

#[test]
fn specializations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 6, 3);
        let cc = cycle_cover_poly(&g, Method::CutFuse).unwrap();
        let ind = cycle_indicator(&g, Method::CutFuse).unwrap();
        // every x_k := x counts each cycle once
        let mut collapsed = BTreeMap::new();
        for (e, c) in ind.terms() {
            let k: u32 = e.iter().sum();
            *collapsed.entry(vec![k]).or_insert_with(|| Rational::from_integer(0.into())) += c;
        }
        assert_eq!(MultiPoly::from_terms(&["x"], collapsed).unwrap(), cc, "{g}");
        let geo = cover_poly(&g, CoverVariant::Geometric, Method::CutFuse).unwrap();
        let at0 = geo.substitute("y", &Rational::from_integer(0.into())).unwrap();
        let cc_xy = MultiPoly::from_terms(
            &["x", "y"],
            cc.terms().map(|(e, c)| (vec![e[0], 0], c.clone())),
        )
        .unwrap();
        assert_eq!(at0, cc_xy, "{g}");
    }
}

#[test]
fn cut_fuse_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..50 {
        let g = random_graph(&mut rng, 6, 2);
        let orders = [EdgeOrder::First, EdgeOrder::Last, EdgeOrder::Random(i), EdgeOrder::Random(1000 + i)];
        let base = cycle_indicator_with(&g, EdgeOrder::Heuristic).unwrap();
        let cbase = cycle_cover_poly_with(&g, EdgeOrder::Heuristic).unwrap();
        for o in orders {
            assert_eq!(cycle_indicator_with(&g, o).unwrap(), base, "{g} {o:?}");
            assert_eq!(cycle_cover_poly_with(&g, o).unwrap(), cbase, "{g} {o:?}");
        }
    }
}
