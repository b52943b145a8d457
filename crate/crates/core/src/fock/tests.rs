use super::*;
use crate::partitions::Permutation;
use crate::words::{lattice_words, parse_word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn q() -> MultiPoly {
    MultiPoly::var(&["q"], "q").unwrap()
}

fn word(s: &str) -> Word {
    parse_word(s).unwrap()
}

fn poly(s: &str, vars: &[&str]) -> MultiPoly {
    // small helper: sums of monomials c*v^k separated by '+'
    let mut acc = MultiPoly::zero_in(vars);
    for part in s.split('+') {
        let m = if let Some((v, k)) = part.split_once('^') {
            MultiPoly::var(vars, v).unwrap().pow(k.parse().unwrap())
        } else if let Ok(c) = part.parse::<i64>() {
            MultiPoly::constant(Rational::from_integer(c.into()))
        } else {
            MultiPoly::var(vars, part).unwrap()
        };
        acc = acc.plus(&m);
    }
    acc
}

#[test]
fn q_model_examples() {
    let m = FockModel::q_symbolic(2).unwrap();
    assert_eq!(m.vacuum_expectation(&word("a1 a1 c1 c1")).unwrap(), poly("1+q", &["q"]));
    let free: FockModel<Rational> = FockModel::free(2).unwrap();
    assert_eq!(free.vacuum_expectation(&word("a1 a1 c1 c1")).unwrap(), r(1, 1));
    // L* e^{⊗3} = [3]_q e^{⊗2}
    let v = FockVector::from_ket(Ket::Tensor(vec![1, 1, 1]));
    let out = m.apply_token(&OpToken::annihilate(1), &v).unwrap();
    assert_eq!(out.coeff(&Ket::Tensor(vec![1, 1])), poly("1+q+q^2", &["q"]));
    assert_eq!(out.num_terms(), 1);
    assert!(m.apply_token(&OpToken::annihilate(1), &m.vacuum()).unwrap().is_zero());
}

#[test]
fn inner_product_examples() {
    let m = FockModel::q_symbolic(2).unwrap();
    let ee = FockVector::from_ket(Ket::Tensor(vec![1, 1]));
    assert_eq!(m.inner_product(&m.vacuum(), &m.vacuum()).unwrap(), MultiPoly::one());
    assert_eq!(m.inner_product(&ee, &ee).unwrap(), poly("1+q", &["q"]));
    let n = FockModel::n_symbolic(2).unwrap();
    assert_eq!(n.inner_product(&ee, &ee).unwrap(), poly("1+t", &["t"]));
    assert!(m.inner_product(&ee, &m.vacuum()).unwrap().is_zero());
}

#[test]
fn n_model_examples() {
    let n = FockModel::n_symbolic(2).unwrap();
    let ee = FockVector::from_ket(Ket::Tensor(vec![1, 1]));
    let out = n.apply_token(&OpToken::annihilate(1), &ee).unwrap();
    assert_eq!(out.coeff(&Ket::Tensor(vec![1])), poly("1+t", &["t"]));
    assert_eq!(n.deformed_factorial(3).unwrap(), poly("1+t", &["t"]));
}

#[test]
fn vk_examples() {
    let vk: FockModel<Rational> = FockModel::vk(vec![r(1, 2), r(1, 2)], 2).unwrap();
    let w = word("a1 a1 a1 c1 c1 c1");
    assert_eq!(vk.vacuum_expectation(&w).unwrap(), r(3, 1));
    let out = vk.apply_word(&parse_word("a1 c1").unwrap().to_flat(), &vk.vacuum()).unwrap();
    assert_eq!(out, vk.vacuum());
}

#[test]
fn truncation_is_an_error() {
    let m = FockModel::<Rational>::free(1).unwrap().with_truncation(2);
    let err = m.vacuum_expectation(&word("a1 a1 a1 c1 c1 c1")).unwrap_err();
    assert!(matches!(err, Error::Truncation { needed: 3, cap: 2 }));
    assert!(m.vacuum_expectation(&word("a1 a1 c1 c1")).is_ok());
    assert!(m.vacuum_expectation(&word("c3")).is_err());
}

#[test]
fn oracle_examples() {
    let w = parse_word("a1 a1 c1 c1").unwrap().to_flat();
    assert_eq!(pair_partition_expectation(&w, &TSpec::Q).unwrap(), poly("1+q", &["q"]));
    assert_eq!(pair_partition_expectation(&w, &TSpec::N).unwrap(), poly("1+t", &["t"]));
    let bad = parse_word("c1 a1").unwrap().to_flat();
    assert!(pair_partition_expectation(&bad, &TSpec::Q).unwrap().is_zero());
}

#[test]
fn oracle_equivalence_small() {
    let qm = FockModel::q_symbolic(2).unwrap();
    let nm = FockModel::n_symbolic(2).unwrap();
    for len in [2, 4, 6] {
        for w in lattice_words(len, 2) {
            let ww = Word::Flat(w.clone());
            assert_eq!(qm.vacuum_expectation(&ww).unwrap(), pair_partition_expectation(&w, &TSpec::Q).unwrap(), "{w:?}");
            assert_eq!(nm.vacuum_expectation(&ww).unwrap(), pair_partition_expectation(&w, &TSpec::N).unwrap(), "{w:?}");
        }
    }
}

#[test]
fn vk_matches_n_model_and_thoma() {
    for n in 1..=3usize {
        let vk = FockModel::vk(vec![r(1, n as i64); n], 2).unwrap();
        let nm = FockModel::n(r(1, n as i64), 2).unwrap();
        for len in [2, 4] {
            for w in lattice_words(len, 2) {
                let ww = Word::Flat(w.clone());
                let a = vk.vacuum_expectation(&ww).unwrap();
                assert_eq!(a, nm.vacuum_expectation(&ww).unwrap());
                let th = pair_partition_expectation(&w, &TSpec::Thoma(ThomaParams::uniform(n))).unwrap();
                assert_eq!(MultiPoly::constant(a), th);
            }
        }
    }
}

#[test]
fn weighted_vk_matches_thoma() {
    let alpha = vec![r(1, 2), r(1, 3), r(1, 6)];
    let vk = FockModel::vk(alpha.clone(), 2).unwrap();
    let params = ThomaParams::new(alpha, vec![]).unwrap();
    for w in ["a1(1) c1", "a1 a1(2) c1(1) c1", "a1(1) a2 c1 c2(1)", "a1 a1 c1(1) a1 c1 c1(2)"] {
        let f = parse_word(w).unwrap().to_flat();
        let sim = vk.vacuum_expectation(&Word::Flat(f.clone())).unwrap();
        let th = pair_partition_expectation(&f, &TSpec::Thoma(params.clone())).unwrap();
        assert_eq!(MultiPoly::constant(sim), th, "{w}");
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, d: usize) -> FockVector<Rational> {
    let mut v = FockVector::zero();
    for _ in 0..4 {
        let w: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=d as u8)).collect();
        v.add_term(Ket::Tensor(w), r(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
    }
    v
}

#[test]
fn adjointness_q_and_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let models = [
        FockModel::q(r(1, 3), 2).unwrap(),
        FockModel::q(r(-1, 2), 2).unwrap(),
        FockModel::n(r(1, 2), 2).unwrap(),
    ];
    for m in &models {
        for _ in 0..20 {
            let n = rng.gen_range(0..4);
            let u = random_vector(&mut rng, n, 2);
            let v = random_vector(&mut rng, n + 1, 2);
            for c in 1..=2 {
                let lhs = m.inner_product(&m.apply_token(&OpToken::create(c), &u).unwrap(), &v).unwrap();
                let rhs = m.inner_product(&u, &m.apply_token(&OpToken::annihilate(c), &v).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn vk_adjointness() {
    let vk = FockModel::vk(vec![r(1, 2), r(1, 3), r(1, 6)], 2).unwrap();
    let words = ["c1", "c2 c1", "c1(1) c2", "c2 c2(2) c1"];
    let states: Vec<FockVector<Rational>> = words
        .iter()
        .map(|w| vk.apply_word(&parse_word(w).unwrap().to_flat(), &vk.vacuum()).unwrap())
        .collect();
    for u in &states {
        for v in &states {
            for c in 1..=2 {
                for k in 0..2 {
                    let lhs = vk
                        .inner_product(&vk.apply_token(&OpToken::create(c).with_weight(k), u).unwrap(), v)
                        .unwrap();
                    let rhs = vk
                        .inner_product(u, &vk.apply_token(&OpToken::annihilate(c).with_weight(k), v).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn symmetrizer_examples() {
    let v = q_symmetrizer_apply(&[1, 2]).unwrap();
    assert_eq!(v.coeff(&Ket::Tensor(vec![1, 2])), MultiPoly::one());
    assert_eq!(v.coeff(&Ket::Tensor(vec![2, 1])), q());
    let v = q_symmetrizer_apply(&[1, 1]).unwrap();
    assert_eq!(v.coeff(&Ket::Tensor(vec![1, 1])), poly("1+q", &["q"]));
    for n in 1..=5 {
        assert!(symmetrizer_factorization_check(n).unwrap());
    }
}

#[test]
fn vk_character_examples() {
    let u = vec![r(1, 2), r(1, 2)];
    assert_eq!(vk_character(&Permutation::identity(3), &u).unwrap(), r(1, 1));
    assert_eq!(vk_character(&Permutation::transposition(2, 1, 2), &u).unwrap(), r(1, 2));
    let c3 = Permutation::from_images(vec![1, 2, 0]).unwrap();
    assert_eq!(vk_character(&c3, &u).unwrap(), r(1, 4));
}

#[test]
fn deformed_factorials() {
    let qm = FockModel::q_symbolic(1).unwrap();
    let nm = FockModel::n_symbolic(1).unwrap();
    let vk: FockModel<Rational> = FockModel::vk(vec![r(1, 3); 3], 1).unwrap();
    for n in 1..=6 {
        assert_eq!(qm.deformed_factorial(n).unwrap(), deformed_factorial_closed_form(&qm, n).unwrap());
        assert_eq!(nm.deformed_factorial(n).unwrap(), deformed_factorial_closed_form(&nm, n).unwrap());
        assert_eq!(vk.deformed_factorial(n).unwrap(), deformed_factorial_closed_form(&vk, n).unwrap());
    }
    assert_eq!(qm.deformed_factorial(2).unwrap(), MultiPoly::one());
    assert_eq!(qm.deformed_factorial(3).unwrap(), poly("1+q", &["q"]));
}

#[test]
fn commutation_relations() {
    let qm = FockModel::q_symbolic(2).unwrap();
    let nm = FockModel::n_symbolic(2).unwrap();
    let tensor_samples = |_: &FockModel<MultiPoly>| -> Vec<FockVector<MultiPoly>> {
        (0..=3).flat_map(|n| tensor_basis(n, 2)).map(FockVector::from_ket).collect()
    };
    for i in 1..=2 {
        for j in 1..=2 {
            assert!(commutation_check(&qm, Relation::Qcr { i, j }, &tensor_samples(&qm)).unwrap().holds());
            assert!(commutation_check(&nm, Relation::Ncr { i, j }, &tensor_samples(&nm)).unwrap().holds());
            for l in 1..=2 {
                let rel = Relation::Deriv { j, i, k: 0, l, m: 0 };
                assert!(commutation_check(&nm, rel, &tensor_samples(&nm)).unwrap().holds());
            }
        }
    }
    let vk = FockModel::vk(vec![r(1, 2), r(1, 2)], 2).unwrap();
    let vk3 = FockModel::vk(vec![r(1, 2), r(1, 3), r(1, 6)], 2).unwrap();
    for m in [&vk, &vk3] {
        let samples: Vec<FockVector<Rational>> = ["", "c1", "c2 c1", "c1(1) c1", "c2 c1 c2"]
            .iter()
            .map(|w| {
                if w.is_empty() {
                    m.vacuum()
                } else {
                    m.apply_word(&parse_word(w).unwrap().to_flat(), &m.vacuum()).unwrap()
                }
            })
            .collect();
        for i in 1..=2 {
            for j in 1..=2 {
                assert!(commutation_check(m, Relation::Vkcr { i, j }, &samples).unwrap().holds());
                for (k, mm) in [(0, 0), (0, 1), (2, 1)] {
                    let rel = Relation::Vkgen { i, j, k, m: mm };
                    assert!(commutation_check(m, rel, &samples).unwrap().holds());
                }
                for l in 1..=2 {
                    let rel = Relation::Deriv { j, i, k: 1, l, m: 2 };
                    assert!(commutation_check(m, rel, &samples).unwrap().holds());
                }
            }
        }
    }
    assert!(commutation_check(&qm, Relation::Ncr { i: 1, j: 1 }, &[]).is_err());
}

#[test]
fn gauge_scalar_counts_particles() {
    // γ(λ I) with λ = 1 on color 1 acts as [n]_q on e^{⊗n}
    let m = FockModel::q_symbolic(1).unwrap().with_gauge(0, GaugeMatrix::scalar(r(1, 1))).unwrap();
    let v = FockVector::from_ket(Ket::Tensor(vec![1, 1, 1]));
    let out = m.apply_token(&OpToken::gauge(0, 1), &v).unwrap();
    assert_eq!(out.coeff(&Ket::Tensor(vec![1, 1, 1])), poly("1+q+q^2", &["q"]));
    assert!(FockModel::n_symbolic(1).unwrap().with_gauge(0, GaugeMatrix::scalar(r(1, 1))).is_err());
    let g: GaugeMatrix = serde_json::from_str(r#"[["1","1/2"],["0","2"]]"#).unwrap();
    assert_eq!(g.size(), 2);
}
