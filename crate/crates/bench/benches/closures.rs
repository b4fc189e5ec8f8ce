//! Relation-algebra throughput: the bitwise closures dominate the exhaustive
//! theorem checks, so track them at the largest supported carrier.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use disjoint_kit::causal::{causal_relation, diamond_basis};
use disjoint_kit::lattice::LatticePatch;
use disjoint_kit::relcore::{reflexive_transitive_closure, topological_closure, Relation};
use rand::{Rng, SeedableRng};

fn random_relation(n: usize, density: f64, seed: u64) -> Relation {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut r = Relation::empty_of_size(n);
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(density) {
                r.insert(x, y).unwrap();
            }
        }
    }
    r
}

fn bench_closures(c: &mut Criterion) {
    let sparse = random_relation(512, 0.004, 1);
    c.bench_function("warshall closure 512", |b| {
        b.iter(|| reflexive_transitive_closure(black_box(&sparse)))
    });

    let patch = LatticePatch::rect(0, 15, 0, 15);
    let cs = causal_relation(&patch);
    let basis = diamond_basis(&patch);
    c.bench_function("topological closure 16x16 block", |b| {
        b.iter(|| topological_closure(black_box(&cs.sym_reach), black_box(&basis)).unwrap())
    });

    c.bench_function("causal structure of punctured 6x6", |b| {
        let patch = LatticePatch::punctured_rect(0, 5, 0, 5, &[(2, 2), (3, 4)]);
        b.iter(|| causal_relation(black_box(&patch)))
    });
}

criterion_group!(benches, bench_closures);
criterion_main!(benches);
