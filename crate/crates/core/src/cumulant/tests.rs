use super::*;
use crate::algebra::MultiPoly;
use crate::fock::GaugeMatrix;
use crate::partitions::enumerate_partitions;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn sp(s: &str) -> SetPartition {
    SetPartition::parse_compact(s).unwrap()
}

fn var<C: Scalar>(s: &str) -> Variable<C> {
    s.parse::<VariableTemplate>().unwrap().realize()
}

#[test]
fn template_parsing() {
    let t: VariableTemplate = "a1+c1".parse().unwrap();
    assert_eq!(t.terms().len(), 2);
    let t: VariableTemplate = "2*c1 a1 + 1/2 + c1^2".parse().unwrap();
    assert_eq!(t.terms()[0].0, r(2, 1));
    assert_eq!(t.terms()[1].0, r(1, 2));
    assert!(t.terms()[1].1.to_flat().is_empty());
    assert_eq!(t.terms()[2].1.to_flat().len(), 2);
    assert_eq!(t.to_string(), "2*c1 a1+1/2+c1 c1");
    assert!("a1+".parse::<VariableTemplate>().is_err());
}

#[test]
fn phi_examples() {
    let m = FockModel::q_symbolic(2).unwrap();
    let x = var::<MultiPoly>("a1+c1");
    let xs = vec![x.clone(), x.clone()];
    assert!(phi_pi(&m, &xs, &sp("1|2")).unwrap().is_zero());
    assert_eq!(phi_pi(&m, &xs, &sp("12")).unwrap(), MultiPoly::one());
    assert_eq!(cumulant(&m, &xs, &sp("12")).unwrap(), MultiPoly::one());
    assert_eq!(cumulant(&m, &[x.clone()], &sp("1")).unwrap(), MultiPoly::zero());
    let m3 = FockModel::q_symbolic(3).unwrap();
    let k = cumulant(&m3, &[var("a1"), var("a1"), var("c1^2")], &sp("123")).unwrap();
    let q = MultiPoly::var(&["q"], "q").unwrap();
    assert_eq!(k, MultiPoly::one().plus(&q));
    let small = FockModel::q_symbolic(1).unwrap();
    assert!(phi_pi(&small, &xs, &sp("1|2")).is_err());
}

#[test]
fn mobius_zeta_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=5 {
        let all = enumerate_partitions(n).unwrap();
        let table: MomentTable<Rational> =
            all.iter().map(|p| (p.clone(), r(rng.gen_range(-5..=5), rng.gen_range(1..=4)))).collect();
        let cumulants: MomentTable<Rational> =
            all.iter().map(|p| (p.clone(), cumulants_from_moments(&table, p).unwrap())).collect();
        for p in &all {
            assert_eq!(moments_from_cumulants(&cumulants, p).unwrap(), table[p]);
        }
    }
    let empty: MomentTable<Rational> = MomentTable::new();
    assert!(moments_from_cumulants(&empty, &sp("12")).is_err());
}

#[test]
fn good_formula_matches_exact() {
    let half = r(1, 2);
    let exact = FockModel::q(half.clone(), 3).unwrap().with_gauge(1, GaugeMatrix::scalar(r(1, 3))).unwrap();
    let float = FockModel::q(Complex64::new(0.5, 0.0), 3)
        .unwrap()
        .with_gauge(1, GaugeMatrix::scalar(r(1, 3)))
        .unwrap();
    for text in ["a1+c1", "a1+c1+g1@1+1/2"] {
        for n in 1..=3 {
            for pi in enumerate_partitions(n).unwrap() {
                let xs: Vec<Variable<Rational>> = vec![var(text); n];
                let xc: Vec<Variable<Complex64>> = vec![var(text); n];
                let k = cumulant(&exact, &xs, &pi).unwrap();
                let g = good_cumulant(&float, &xc, &pi).unwrap();
                let kf = k.to_f64().unwrap();
                assert!((g.re - kf).abs() < 1e-9 && g.im.abs() < 1e-9, "{text} {pi}: {g} vs {k}");
            }
        }
    }
}

#[test]
fn product_formula_examples() {
    let m = FockModel::q_symbolic(4).unwrap();
    let groups = vec![vec![var::<MultiPoly>("a1"), var("c1")]];
    assert_eq!(product_formula_rhs(&m, &groups, &sp("1")).unwrap(), MultiPoly::one());
    assert_eq!(product_formula_lhs(&m, &groups, &sp("1")).unwrap(), MultiPoly::one());
    let free: FockModel<Rational> = FockModel::free(4).unwrap();
    let g2 = vec![vec![var("a1"), var("c1")], vec![var("a1"), var("c1")]];
    assert_eq!(
        product_formula_rhs(&free, &g2, &sp("12")).unwrap(),
        product_formula_lhs(&free, &g2, &sp("12")).unwrap()
    );
}

#[test]
fn mixed_cumulants_vanish() {
    // X in copy set of color 1, Y in color 2
    let m = FockModel::q_symbolic(8).unwrap();
    let x = var::<MultiPoly>("a1+c1");
    let y = var::<MultiPoly>("a2+c2+a2 c2");
    for n in 2..=4 {
        for mask in 0..(1u32 << n) {
            let vars: Vec<_> = (0..n).map(|i| if mask >> i & 1 == 1 { y.clone() } else { x.clone() }).collect();
            let table = cumulant_table(&m, &vars, &SetPartition::coarsest(n)).unwrap();
            for (pi, k) in table {
                let mixed = pi.blocks().iter().any(|b| {
                    let first = mask >> (b[0] - 1) & 1;
                    b.iter().any(|&j| mask >> (j - 1) & 1 != first)
                });
                if mixed {
                    assert!(k.is_zero(), "{pi} {mask}");
                }
            }
        }
    }
}

#[test]
fn toeplitz_small() {
    for kind in [ToeplitzKind::Free, ToeplitzKind::Q, ToeplitzKind::N] {
        for n in 1..=3 {
            let rep = toeplitz_cumulant(kind, &SetPartition::coarsest(n)).unwrap();
            assert!(rep.agrees(), "{kind:?} {n}: {} vs {:?}", rep.computed, rep.predicted);
        }
    }
    let rep = toeplitz_cumulant(ToeplitzKind::Q, &sp("13|24")).unwrap();
    assert!(rep.agrees(), "{} vs {:?}", rep.computed, rep.predicted);
}

#[test]
fn vanishing_small() {
    for c in vanishing_suite(4, 3).unwrap() {
        assert!(c.holds(), "{}: {:?}", c.name, &c.violations[..c.violations.len().min(3)]);
        assert!(c.checked > 0);
    }
}
