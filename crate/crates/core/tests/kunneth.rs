use higherar::exactla::PrimeField;
use higherar::homolog::global_dimension;
use higherar::quivalg::named::{a2, a3_bipartite, a3_linear};
use higherar::quivalg::tensor_algebra;
use higherar::repmod::random_presented;
use higherar::tensorops::kunneth_ext_check;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ext_convolution_on_random_pairs() {
    let f = PrimeField::new(32003);
    let algs = [a2(&f), a3_linear(&f), a3_bipartite(&f)];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    let mut higher = 0;
    for a in &algs {
        for b in &algs {
            let t = tensor_algebra(a, b).unwrap();
            let upto = global_dimension(&t).unwrap() + 1;
            for _ in 0..8 {
                let xa = random_presented(a, 3, &mut rng).unwrap();
                let ya = random_presented(a, 3, &mut rng).unwrap();
                let xb = random_presented(b, 3, &mut rng).unwrap();
                let yb = random_presented(b, 3, &mut rng).unwrap();
                let r = kunneth_ext_check(&xa, &ya, &xb, &yb, upto, &t).unwrap();
                assert!(r.holds(), "{r:?}");
                checked += 1;
                higher += r.degrees.iter().filter(|d| d.0 > 0 && d.1 > 0).count();
            }
        }
    }
    assert!(checked >= 50);
    assert!(higher >= 10, "too few nonzero higher Ext groups: {higher}");
}
