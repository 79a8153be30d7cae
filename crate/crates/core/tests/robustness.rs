use higherar::complete::{build_m, verify_catalogue, DEFAULT_SLICE_CAP};
use higherar::exactla::{Field, PrimeField};
use higherar::quivalg::named::{a2, a3_bipartite, a3_linear, d4_subspace};
use higherar::quivalg::{tensor_algebra, Alg};

type Summary = (bool, bool, Option<usize>, Vec<usize>, Vec<usize>, Vec<String>);

fn summary<F: Field>(a: &Alg<F>, b: &Alg<F>, seed: u64) -> Summary {
    let t = tensor_algebra(a, b).unwrap();
    let cat = build_m(&t, 2, DEFAULT_SLICE_CAP, seed).unwrap();
    let v = verify_catalogue(&cat).unwrap();
    let mut labels = cat.labels();
    labels.sort();
    (v.d_complete, v.d_rep_finite, v.homogeneous, v.orbit_lengths, cat.slice_sizes(), labels)
}

#[test]
fn seed_and_prime_do_not_change_results() {
    let (p, q) = (PrimeField::new(32003), PrimeField::new(10007));
    type Ctor = fn(&PrimeField) -> Alg<PrimeField>;
    let pairs: [(Ctor, Ctor); 3] = [(a2, a2), (d4_subspace, a3_linear), (a3_bipartite, a3_bipartite)];
    for (a, b) in pairs {
        let base = summary(&a(&p), &b(&p), 1);
        assert_eq!(base, summary(&a(&p), &b(&p), 99));
        assert_eq!(base, summary(&a(&q), &b(&q), 1234));
    }
}
