//! Shared inputs for the criterion benches in `benches/`.
use fockcum::{FlatWord, OpToken, WeightedDigraph};

/// `a1^n c1^n`, the word behind the deformed factorial `b_{n+1}`.
pub fn nested_word(n: usize) -> FlatWord {
    let mut toks = vec![OpToken::annihilate(1); n];
    toks.extend(vec![OpToken::create(1); n]);
    FlatWord::new(toks).expect("valid tokens")
}

/// `(a1 c1)^n` with colors cycling through `1..=colors`.
pub fn alternating_word(n: usize, colors: usize) -> FlatWord {
    let toks = (0..n)
        .flat_map(|i| {
            let c = i % colors + 1;
            [OpToken::annihilate(c), OpToken::create(c)]
        })
        .collect();
    FlatWord::new(toks).expect("valid tokens")
}

/// Complete digraph with loops on `n` vertices.
pub fn complete_digraph(n: usize) -> WeightedDigraph {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    WeightedDigraph::unweighted(n, &edges).expect("valid digraph")
}

/// Directed cycle `1 -> 2 -> … -> n -> 1` plus every loop, weights cycling 1, 2.
pub fn weighted_ring(n: usize) -> WeightedDigraph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|a| (a, (a + 1) % n)).collect();
    edges.extend((0..n).map(|a| (a, a)));
    let weights = (0..n).map(|i| i as u32 % 2 + 1).collect();
    WeightedDigraph::new(weights, &edges).expect("valid digraph")
}
