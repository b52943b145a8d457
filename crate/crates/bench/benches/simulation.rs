use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fockcum::cumulant::{cumulant, VariableTemplate};
use fockcum::fock::{pair_partition_expectation, TSpec};
use fockcum::{FockModel, MultiPoly, Rational, SetPartition, Word};
use fockcum_bench::{alternating_word, nested_word};

fn expectations(c: &mut Criterion) {
    let mut g = c.benchmark_group("vacuum_expectation");
    let q = FockModel::<MultiPoly>::q_symbolic(2).unwrap();
    let n = FockModel::<MultiPoly>::n_symbolic(2).unwrap();
    let half = Rational::new(1.into(), 2.into());
    let vk = FockModel::<Rational>::vk(vec![half.clone(), half], 2).unwrap();
    for k in [3, 5] {
        let w = Word::Flat(nested_word(k));
        g.bench_with_input(BenchmarkId::new("q_nested", k), &w, |b, w| b.iter(|| q.vacuum_expectation(w).unwrap()));
        g.bench_with_input(BenchmarkId::new("n_nested", k), &w, |b, w| b.iter(|| n.vacuum_expectation(w).unwrap()));
        g.bench_with_input(BenchmarkId::new("vk_nested", k), &w, |b, w| b.iter(|| vk.vacuum_expectation(w).unwrap()));
    }
    g.finish();
    let w = alternating_word(4, 2);
    c.bench_function("pair_partition_oracle_len8", |b| b.iter(|| pair_partition_expectation(&w, &TSpec::Q).unwrap()));
}

fn cumulants(c: &mut Criterion) {
    let x = "a1+c1".parse::<VariableTemplate>().unwrap().realize::<MultiPoly>();
    let model = FockModel::<MultiPoly>::q_symbolic(4).unwrap();
    let xs = vec![x; 4];
    let top = SetPartition::coarsest(4);
    c.bench_function("cumulant_k4_q", |b| b.iter(|| cumulant(&model, &xs, &top).unwrap()));
}

criterion_group!(benches, expectations, cumulants);
criterion_main!(benches);
