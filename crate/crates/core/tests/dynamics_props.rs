//! Dynamics invariants: exact reality of real orbits, lift soundness,
//! censuses of finite-order rotations, and the convergence ladder of the
//! family toward its limiting rotation.

use num_traits::Zero;

use biratio_core::dynamics::{
    fixed_point_census, orbit, rotation_vector, sup_distance, TorusPoint,
};
use biratio_core::exact::gauss::gauss;
use biratio_core::exact::rational::rat;
use biratio_core::family::builders::{build_family_map, build_rotation, FamilyParams};
use biratio_core::maps::compose;

#[test]
fn real_orbits_stay_exactly_real() {
    // evaluate the map over Gaussian rationals at real seeds: imaginary
    // parts must remain identically zero through five exact steps
    let f = build_family_map(&FamilyParams::new(2, 1, rat(1, 3), rat(2, 5)), Some(512)).unwrap();
    let seeds = [
        (rat(1, 2), rat(-3, 4)),
        (rat(7, 3), rat(2, 9)),
        (rat(-5, 8), rat(11, 6)),
        (rat(0, 1), rat(4, 7)),
        (rat(13, 5), rat(-1, 10)),
        (rat(2, 11), rat(9, 4)),
        (rat(-7, 2), rat(5, 12)),
        (rat(3, 13), rat(-8, 3)),
        (rat(19, 7), rat(1, 5)),
        (rat(-2, 9), rat(6, 13)),
    ];
    for (sx, sy) in seeds {
        let mut x = gauss(sx, rat(0, 1));
        let mut y = gauss(sy, rat(0, 1));
        for _ in 0..5 {
            match f.eval_exact(&x, &y) {
                Some((nx, ny)) => {
                    assert!(nx.im.is_zero() && ny.im.is_zero());
                    x = nx;
                    y = ny;
                }
                // a seed may land on a pole of the affine chart; that is a
                // chart artifact, not a reality violation
                None => break,
            }
        }
    }
}

#[test]
fn lift_increments_are_unambiguous() {
    // family orbits move by far less than π per step, so the principal
    // branch can never mis-wrap a lift increment
    let f = build_family_map(&FamilyParams::new(10, 1, rat(1, 3), rat(2, 5)), Some(512)).unwrap();
    let record = orbit(&f, TorusPoint::new(0.4, 1.7), 500).unwrap();
    for k in 1..record.lifts.len() {
        let d1 = (record.lifts[k][0] - record.lifts[k - 1][0]).abs();
        let d2 = (record.lifts[k][1] - record.lifts[k - 1][1]).abs();
        assert!(d1 < std::f64::consts::PI - 0.5, "step {k} ambiguous: {d1}");
        assert!(d2 < std::f64::consts::PI - 0.5, "step {k} ambiguous: {d2}");
    }
}

#[test]
fn finite_order_rotation_census() {
    // t = (1, 1) is the quarter turn in both factors; its fourth power is
    // the identity. The census must flag the identity degeneracy on the
    // iterate and report no isolated fixed points for the rotation itself.
    let r = build_rotation(&rat(1, 1), &rat(1, 1));
    let r2 = compose(&r, &r).unwrap();
    let r4 = compose(&r2, &r2).unwrap();
    assert!(r4.is_identity());
    let census4 = fixed_point_census(&r4, 8, 1e-6).unwrap();
    assert!(census4.identity_factor_suspected);
    assert_eq!(census4.isolated_count, 0);
    assert!(census4.euler_characteristic_match);
    let census1 = fixed_point_census(&r, 8, 1e-6).unwrap();
    assert_eq!(census1.isolated_count, 0);
}

#[test]
fn family_orbit_tracks_the_rotation() {
    // at n = 1000 the family map deviates from the rotation by O(1/n);
    // over a thousand steps the orbits stay within 0.02 of each other
    let t1 = rat(1, 3);
    let t2 = rat(2, 5);
    let f = build_family_map(&FamilyParams::new(1000, 1, t1.clone(), t2.clone()), Some(512)).unwrap();
    let r = build_rotation(&t1, &t2);
    let seed = TorusPoint::new(0.9, 2.2);
    let of = orbit(&f, seed, 1000).unwrap();
    let or = orbit(&r, seed, 1000).unwrap();
    let worst = (0..=1000)
        .map(|k| of.point_at(k).dist(&or.point_at(k)))
        .fold(0.0f64, f64::max);
    assert!(worst < 0.02, "drift {worst}");
}

#[test]
fn rotation_vector_converges_along_n() {
    // the estimated rotation vector approaches the rotation angles as n
    // grows; no closed form is claimed, only consistency
    let t1 = rat(1, 3);
    let t2 = rat(2, 5);
    let alpha1 = 2.0 * (1.0f64 / 3.0).atan();
    let alpha2 = 2.0 * (2.0f64 / 5.0).atan();
    let seed = TorusPoint::new(1.2, 0.3);
    let mut last_gap = f64::INFINITY;
    for n in [100u64, 1000, 10000] {
        let f = build_family_map(&FamilyParams::new(n, 1, t1.clone(), t2.clone()), Some(512)).unwrap();
        let record = orbit(&f, seed, 2000).unwrap();
        let ((r1, r2), _) = rotation_vector(&record);
        let gap = (r1 - alpha1).abs().max((r2 - alpha2).abs());
        assert!(gap < last_gap, "gap {gap} did not shrink at n = {n}");
        last_gap = gap;
    }
    assert!(last_gap < 1e-3);
}

#[test]
fn sup_distance_ladder_is_monotone() {
    let t1 = rat(1, 3);
    let t2 = rat(2, 5);
    let r = build_rotation(&t1, &t2);
    let mut last = f64::INFINITY;
    for n in [10u64, 100, 1000, 10000] {
        let f = build_family_map(&FamilyParams::new(n, 1, t1.clone(), t2.clone()), Some(512)).unwrap();
        let d = sup_distance(&f, &r, 128).unwrap();
        assert!(d < last, "sup distance failed to decrease at n = {n}");
        last = d;
    }
}
