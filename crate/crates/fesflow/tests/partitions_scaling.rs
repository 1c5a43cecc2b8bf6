//! Counting routes against an independent brute-force oracle, and the
//! large-`N` asymptotics the capacity formulas rest on.

use approx::assert_relative_eq;
use fesflow::partitions::{
    asymptotic_distinct_count_ln, capacity_boson_asym, capacity_bound, capacity_coefficient,
    capacity_fermion_asym, capacity_ratio_curve, count_partitions, count_partitions_dp,
    exact_capacity, multiplicity_for, Multiplicity, PartitionTable,
};
use fesflow::stat::StatParam;
use fesflow::units::PLANCK_H;
use num_traits::ToPrimitive;

/// Brute-force count by direct recursion over the largest part; written
/// independently of every library routine so it can serve as the oracle.
fn brute_force_count(n: u32, cap: Option<u32>) -> u64 {
    fn rec(remaining: u32, max_part: u32, cap: Option<u32>) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        for part in (1..=max_part.min(remaining)).rev() {
            let most = cap.map_or(remaining / part, |c| c.min(remaining / part));
            for copies in 1..=most {
                if part * copies > remaining {
                    break;
                }
                total += rec(remaining - part * copies, part - 1, cap);
            }
        }
        total
    }
    rec(n, n, cap)
}

#[test]
fn all_routes_agree_with_brute_force_up_to_thirty() {
    for n in 0..=30u32 {
        for (mult, cap) in [
            (Multiplicity::AtMost(1), Some(1)),
            (Multiplicity::AtMost(2), Some(2)),
            (Multiplicity::AtMost(3), Some(3)),
            (Multiplicity::Unlimited, None),
        ] {
            let expected = brute_force_count(n, cap);
            let fast = count_partitions(n as u64, mult).unwrap();
            let dp = count_partitions_dp(n as u64, mult).unwrap();
            assert_eq!(
                fast.value().to_u64(),
                Some(expected),
                "fast route at n={n} cap={cap:?}"
            );
            assert_eq!(
                dp.value().to_u64(),
                Some(expected),
                "dp route at n={n} cap={cap:?}"
            );
        }
    }
}

#[test]
fn routes_agree_at_moderate_n() {
    let table = PartitionTable::up_to(600).unwrap();
    for n in [100u64, 317, 600] {
        for mult in [
            Multiplicity::AtMost(1),
            Multiplicity::AtMost(4),
            Multiplicity::Unlimited,
        ] {
            assert_eq!(
                table.count(n, mult).unwrap(),
                count_partitions_dp(n, mult).unwrap(),
                "n={n}"
            );
        }
    }
}

#[test]
fn distinct_asymptotics_converge_in_the_log() {
    // relative error of the log shrinks monotonically over the decades
    let mut prev = f64::INFINITY;
    for n in [100u64, 1_000, 10_000] {
        let exact = count_partitions(n, Multiplicity::AtMost(1)).unwrap();
        let exact_ln = exact.log2() * std::f64::consts::LN_2;
        let rel = (asymptotic_distinct_count_ln(n) - exact_ln).abs() / exact_ln;
        assert!(rel < prev, "log error grew at n={n}: {rel} after {prev}");
        prev = rel;
    }
    // 0.5% at n = 1e4
    assert!(prev < 0.005, "asymptotic log error {prev} at n=1e4");
}

#[test]
fn entropy_route_matches_partition_route_for_fermions() {
    // c_1 from the currents equals log2 q(N)/sqrt(N) extrapolated over
    // N = 1e3, 1e4, 1e5. The subleading terms are log2(c N^(3/4))/sqrt(N),
    // so fit log2 q(N)/sqrt(N) = c - a ln(N)/sqrt(N) - b/sqrt(N) through
    // the three points and read off c.
    let table = PartitionTable::up_to(100_000).unwrap();
    let ns = [1_000u64, 10_000, 100_000];
    let mut rows = Vec::new();
    for &n in &ns {
        let q = table.count(n, Multiplicity::AtMost(1)).unwrap();
        let r = q.log2() / (n as f64).sqrt();
        rows.push((n as f64, r));
    }
    // solve the 3x3 linear system for (c, a, b)
    let m: Vec<[f64; 3]> = rows
        .iter()
        .map(|&(n, _)| [1.0, -n.ln() / n.sqrt(), -1.0 / n.sqrt()])
        .collect();
    let rhs: Vec<f64> = rows.iter().map(|&(_, r)| r).collect();
    let det = |a: &[[f64; 3]]| -> f64 {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let base = det(&m);
    let mut m_c = m.clone();
    for (row, &r) in m_c.iter_mut().zip(rhs.iter()) {
        row[0] = r;
    }
    let c_extrapolated = det(&m_c) / base;

    let c1 = capacity_coefficient(StatParam::FERMI).unwrap();
    let rel = (c_extrapolated - c1).abs() / c1;
    assert!(
        rel < 0.02,
        "entropy route {c1} vs partition route {c_extrapolated} ({rel:.4} rel)"
    );

    // the raw (unextrapolated) value at N = 1e5 is itself within 2%
    let raw = rows[2].1;
    assert!(
        (raw - c1).abs() / c1 < 0.02,
        "raw bridge value {raw} vs {c1}"
    );
}

#[test]
fn capacity_formulas_match_exact_counts_at_ten_thousand() {
    let n = 10_000u64;
    let time = 1.0;
    let p = n as f64 * PLANCK_H / (time * time);

    let exact_boson = exact_capacity(n, Multiplicity::Unlimited, time)
        .unwrap()
        .bits_per_time;
    let asym_boson = capacity_boson_asym(p, time).unwrap().bits_per_time;
    assert_relative_eq!(asym_boson, exact_boson, max_relative = 0.01);

    let exact_fermion = exact_capacity(n, Multiplicity::AtMost(1), time)
        .unwrap()
        .bits_per_time;
    let asym_fermion = capacity_fermion_asym(p, time).unwrap().bits_per_time;
    assert_relative_eq!(asym_fermion, exact_fermion, max_relative = 0.01);

    // both asymptotics sit strictly below the universal ceiling
    let ceiling = capacity_bound(p);
    assert!(asym_boson < ceiling);
    assert!(asym_fermion < ceiling);
    // and the ceiling is the boson leading term: the finite-time
    // correction is what keeps the boson capacity below it
    assert!(ceiling - asym_boson > 0.0);
}

#[test]
fn coefficient_curve_is_monotone_with_pinned_endpoints() {
    let gs = StatParam::farey_sequence(8);
    let rows = capacity_ratio_curve(&gs).unwrap();
    assert_eq!(rows.len(), gs.len());
    assert_eq!(rows.first().unwrap().1, 1.0);
    assert_relative_eq!(
        rows.last().unwrap().1,
        std::f64::consts::FRAC_1_SQRT_2,
        max_relative = 1e-6
    );
    // strictly decreasing in g
    for pair in rows.windows(2) {
        assert!(
            pair[1].1 < pair[0].1,
            "capacity ratio not decreasing: {} at g={} vs {} at g={}",
            pair[1].1,
            pair[1].0,
            pair[0].1,
            pair[0].0
        );
    }
    // semion ratio from the independent closed form sqrt(3/5)
    let semion = rows.iter().find(|(g, _)| g.is_semion()).unwrap();
    assert_relative_eq!(semion.1, (3.0f64 / 5.0).sqrt(), max_relative = 1e-6);
}

#[test]
fn statistics_to_multiplicity_mapping() {
    assert_eq!(
        multiplicity_for(StatParam::BOSE),
        Some(Multiplicity::Unlimited)
    );
    assert_eq!(
        multiplicity_for(StatParam::FERMI),
        Some(Multiplicity::AtMost(1))
    );
    assert_eq!(
        multiplicity_for(StatParam::SEMION),
        Some(Multiplicity::AtMost(2))
    );
    assert_eq!(multiplicity_for(StatParam::new(2, 3).unwrap()), None);
}
