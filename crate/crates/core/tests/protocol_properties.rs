mod common;

use common::*;
use latnp::protocol::{
    build_ratio_table, empirical_conditional_entropy, empirical_conditional_entropy_with,
    empirical_entropy, fusion_decode, interactive_rate, node_encode, run_centralized,
    run_interactive, EntropyEstimator, SourceModel,
};
use latnp::{nearest_plane, round_nearest, GeneratorMatrix};
use rand::Rng;

fn check_decode(v: &GeneratorMatrix, trials: usize, seed: u64) {
    let table = build_ratio_table(v).unwrap();
    let mut rng = rng(seed);
    let n = v.n();
    for _ in 0..trials {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-25.0..25.0)).collect();
        let msgs: Vec<_> = (0..n)
            .map(|m| node_encode(m + 1, x[m], v.entry(m, m), table.q()[m]).unwrap())
            .collect();
        let b = fusion_decode(&msgs, &table).unwrap();
        assert_eq!(b, nearest_plane(v, &x).unwrap().coeffs, "x = {x:?}");
    }
}

#[test]
fn fusion_center_recovers_nearest_plane() {
    check_decode(&hex_exact(), 20_000, 41);
    check_decode(&fine_ratio(), 20_000, 42);
    let mut rng = rng(43);
    for i in 0..5 {
        check_decode(&random_rational_upper(&mut rng, 3), 20_000, 44 + i);
    }
}

#[test]
fn rounding_steps_down_once_as_s_grows() {
    let mut rng = rng(45);
    for _ in 0..200 {
        let z: f64 = rng.random_range(-100.0..100.0);
        let q: u64 = rng.random_range(1..=10_000);
        let base = round_nearest(z).unwrap();
        let mut prev = base;
        for s in 0..q {
            let r = round_nearest(z - s as f64 / q as f64).unwrap();
            assert!(r == base || r == base - 1);
            assert!(r <= prev);
            prev = r;
        }
    }
}

#[test]
fn interactive_agrees_with_centralized_on_scaled_basis() {
    let mut rng = rng(46);
    let bases: Vec<GeneratorMatrix> = [hex_exact(), fine_ratio()]
        .into_iter()
        .chain((0..3).map(|_| random_rational_upper(&mut rng, 3)))
        .collect();
    for v in &bases {
        for alpha in [1.0, 0.25, 2f64.powi(-8)] {
            let scaled = v.scaled(alpha).unwrap();
            for _ in 0..500 {
                let x: Vec<f64> = (0..v.n()).map(|_| rng.random_range(0.0..1.0)).collect();
                let (bi, ti) = run_interactive(v, &x, alpha).unwrap();
                let (bc, _) = run_centralized(&scaled, &x).unwrap();
                assert_eq!(bi, bc);
                assert!(ti.sites_agree());
            }
        }
    }
}

#[test]
fn side_information_within_bound() {
    let mut rng = rng(47);
    for v in [
        hex_exact(),
        fine_ratio(),
        random_rational_upper(&mut rng, 3),
    ] {
        let table = build_ratio_table(&v).unwrap();
        let (_, t) = run_centralized(&v, &vec![0.3; v.n()]).unwrap();
        let ceil_sum: u64 = table.q()[..v.n() - 1]
            .iter()
            .map(|&q| latnp::protocol::ceil_log2(q))
            .sum();
        assert!(t.side_info_bits <= ceil_sum);
        assert!(table.side_info_bound() <= t.side_info_bits as f64 + 1e-12);
        assert_eq!(t.total_bits, t.messages.iter().map(|m| m.bits).sum::<u64>());
    }
}

// With K occupied cells the plug-in estimate sits about K / (2 N ln 2) low, which at
// alpha = 2^-8 would swamp the discretization gap being measured; the
// Miller-Madow correction removes that first-order term.
#[test]
fn broadcast_entropies_converge_to_rate_terms() {
    let v = exact(r#"{"n":2,"columns":[[1,0],["1/2",1]]}"#);
    let u01 = SourceModel::Uniform { lo: 0.0, hi: 1.0 };
    let mut rng = rng(48);
    let mut gaps = Vec::new();
    for k in [4, 6, 8] {
        let alpha = 2f64.powi(-k);
        let samples: Vec<Vec<i64>> = (0..1_000_000)
            .map(|_| {
                let x = [u01.sample(&mut rng), u01.sample(&mut rng)];
                run_interactive(&v, &x, alpha).unwrap().0
            })
            .collect();
        let gap: f64 = (0..2)
            .map(|i| {
                let target = u01.differential_entropy() - (alpha * v.entry(i, i)).log2();
                (empirical_conditional_entropy_with(&samples, i, EntropyEstimator::MillerMadow)
                    .unwrap()
                    - target)
                    .abs()
            })
            .fold(0.0, f64::max);
        gaps.push(gap);
        let rate: f64 = (0..2)
            .map(|i| empirical_conditional_entropy(&samples, i).unwrap())
            .sum();
        let formula = interactive_rate(&[u01, u01], &v, alpha).unwrap();
        assert!(
            (rate - formula).abs() < 0.3,
            "alpha = 2^-{k}: {rate} vs {formula}"
        );
    }
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    assert!(gaps[2] < 0.1, "{gaps:?}");

    // The last coordinate has nothing to condition on: marginal and conditional coincide.
    let last: Vec<i64> = (0..1000).map(|t| t % 7).collect();
    let rows: Vec<Vec<i64>> = last.iter().map(|&u| vec![0, u]).collect();
    assert_eq!(
        empirical_entropy(&last).unwrap(),
        empirical_conditional_entropy(&rows, 1).unwrap()
    );
}
