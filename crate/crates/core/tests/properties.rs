use std::sync::OnceLock;

use proptest::prelude::*;

use matargs::partitions::{conjugate, dominates, enumerate, kappa_star, Partition};
use matargs::verify::Accumulator;
use matargs::zonal::{build_table, eval_eigs, ZonalTable};

fn table() -> &'static ZonalTable {
    static TABLE: OnceLock<ZonalTable> = OnceLock::new();
    TABLE.get_or_init(|| build_table(5).unwrap())
}

fn partition(max_weight: usize) -> impl Strategy<Value = Partition> {
    (0..=max_weight).prop_flat_map(|k| {
        let all = enumerate(k, k);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn conjugation_is_an_order_reversing_involution(
        lam in partition(8),
        mu in partition(8),
    ) {
        prop_assert_eq!(conjugate(&conjugate(&lam)), lam.clone());
        if lam.weight() == mu.weight() {
            let forward = dominates(&mu, &lam).unwrap();
            let reversed = dominates(&conjugate(&lam), &conjugate(&mu)).unwrap();
            prop_assert_eq!(forward, reversed);
        }
    }

    #[test]
    fn dual_partition_is_an_involution(kappa in partition(6), extra in 0usize..3, m in 1usize..5) {
        prop_assume!(kappa.len() <= m);
        let n = kappa.part(0) + extra;
        let star = kappa_star(&kappa, n, m).unwrap();
        prop_assert_eq!(star.weight(), n * m - kappa.weight());
        prop_assert_eq!(kappa_star(&star, n, m).unwrap(), kappa);
    }

    #[test]
    fn zonal_polynomials_are_symmetric_and_homogeneous(
        kappa in partition(5),
        x in prop::collection::vec(0.1f64..3.0, 1..5),
        c in 0.2f64..2.0,
        rot in 0usize..4,
    ) {
        let t = table();
        let v = eval_eigs(t, &kappa, &x).unwrap();
        let mut y = x.clone();
        y.rotate_left(rot % x.len());
        prop_assert!(close(v, eval_eigs(t, &kappa, &y).unwrap(), 1e-12));
        let scaled: Vec<f64> = x.iter().map(|xi| c * xi).collect();
        let expected = c.powi(kappa.weight() as i32) * v;
        prop_assert!(close(eval_eigs(t, &kappa, &scaled).unwrap(), expected, 1e-12));
    }

    #[test]
    fn zonal_polynomials_sum_to_trace_power(
        k in 0usize..=5,
        x in prop::collection::vec(-2.0f64..2.0, 1..5),
    ) {
        let t = table();
        let total: f64 = t
            .partitions_of(k)
            .iter()
            .map(|kappa| eval_eigs(t, kappa, &x).unwrap())
            .sum();
        let tr: f64 = x.iter().sum();
        prop_assert!(close(total, tr.powi(k as i32), 1e-11));
    }

    #[test]
    fn accumulator_ignores_chunk_boundaries(
        xs in prop::collection::vec(-1e3f64..1e3, 2..200),
        cut in 0usize..200,
    ) {
        let cut = cut % xs.len();
        let mut whole = Accumulator::new();
        xs.iter().for_each(|&x| whole.push(x));
        let (mut a, mut b) = (Accumulator::new(), Accumulator::new());
        xs[..cut].iter().for_each(|&x| a.push(x));
        xs[cut..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(&b);
        prop_assert_eq!(merged.count(), whole.count());
        prop_assert!(close(merged.mean(), whole.mean(), 1e-12));
        prop_assert!(close(merged.stderr().unwrap(), whole.stderr().unwrap(), 1e-9));
    }
}
