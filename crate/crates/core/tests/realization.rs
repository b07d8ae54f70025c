use std::sync::Arc;

use crystal_realize::crystal::LatticeCrystal;
use crystal_realize::realization::{
    enumerate_blambda, enumerate_crystal, lr_coefficient, EnumerateOptions, EpsilonStar, SystemConfig,
};
use crystal_realize::special::{an_epsilon_star, ChebCoeffs};
use crystal_realize::{inequality_system, CartanData, ClosureBounds, Family, IotaSequence, Weight};

fn standard(f: Family) -> IotaSequence {
    IotaSequence::standard(Arc::new(CartanData::build(f).unwrap())).unwrap()
}

fn opts(depth_cap: usize) -> EnumerateOptions {
    EnumerateOptions {
        depth_cap,
        cross_validate: true,
    }
}

#[test]
fn phi_minus_epsilon_is_the_weight_pairing() {
    let cases = [
        (Family::Rank2 { c1: 1, c2: 3 }, vec![1, 1]),
        (Family::TypeA(3), vec![1, 0, 2]),
        (Family::Rank2 { c1: 2, c2: 2 }, vec![1, 1]),
        (Family::AffineA(3), vec![1, 0, 1]),
    ];
    for (family, lam) in cases {
        let s = standard(family);
        let fs = inequality_system(&s, &SystemConfig::default()).unwrap();
        let r = enumerate_blambda(&s, &Weight::new(lam), &fs, opts(5)).unwrap();
        for x in &r.elements {
            let wt = r.crystal.weight(x).pairings(s.cartan());
            for i in 1..=s.rank() {
                assert_eq!(r.crystal.phi(x, i) - r.crystal.epsilon(x, i), wt[i - 1], "{family} {x} i={i}");
            }
        }
    }
}

#[test]
fn epsilon_star_matches_closed_forms_on_sigma() {
    let s = standard(Family::TypeA(3));
    let es = EpsilonStar::new(&s, ClosureBounds::default()).unwrap();
    assert!(es.exact());
    let binf = enumerate_crystal(LatticeCrystal::b_infinity(s.clone()), None, opts(5)).unwrap();
    assert!(binf.len() > 100);
    for x in &binf.elements {
        for i in 1..=3 {
            let v = es.value(x, i).unwrap();
            assert!(v >= 0);
            assert_eq!(v, an_epsilon_star(3, x, i).unwrap(), "{x} i={i}");
        }
    }
    for (c1, c2) in [(1, 1), (2, 1), (1, 3), (3, 1)] {
        let s = standard(Family::Rank2 { c1, c2 });
        let es = EpsilonStar::new(&s, ClosureBounds::default()).unwrap();
        let cc = ChebCoeffs::new(c1, c2).unwrap();
        let binf = enumerate_crystal(LatticeCrystal::b_infinity(s.clone()), None, opts(6)).unwrap();
        for x in &binf.elements {
            assert_eq!(es.value(x, 1).unwrap(), x.get(1));
            assert_eq!(es.value(x, 2).unwrap(), cc.epsilon_star_2(x, 8).unwrap(), "({c1},{c2}) {x}");
        }
    }
}

#[test]
fn lr_examples() {
    let s = standard(Family::Rank2 { c1: 1, c2: 1 });
    let fs = inequality_system(&s, &SystemConfig::default()).unwrap();
    let w = |v: &[i64]| Weight::new(v.to_vec());
    let b_l1 = enumerate_blambda(&s, &w(&[1, 0]), &fs, opts(32)).unwrap();
    let b_l2 = enumerate_blambda(&s, &w(&[0, 1]), &fs, opts(32)).unwrap();
    let b_0 = enumerate_blambda(&s, &w(&[0, 0]), &fs, opts(32)).unwrap();
    assert_eq!(lr_coefficient(&b_l2, &w(&[1, 0]), &w(&[1, 1])).unwrap(), 1);
    assert_eq!(lr_coefficient(&b_l2, &w(&[1, 0]), &w(&[0, 0])).unwrap(), 1);
    assert_eq!(lr_coefficient(&b_l1, &w(&[1, 0]), &w(&[2, 0])).unwrap(), 1);
    assert_eq!(lr_coefficient(&b_l1, &w(&[1, 0]), &w(&[0, 1])).unwrap(), 1);
    for nu in Weight::dominant_up_to(2, 4) {
        let want = u64::from(nu == w(&[2, 1]));
        assert_eq!(lr_coefficient(&b_0, &w(&[2, 1]), &nu).unwrap(), want);
    }
}

#[test]
fn enumeration_is_schedule_independent() {
    let s = standard(Family::TypeA(3));
    let fs = inequality_system(&s, &SystemConfig::default()).unwrap();
    let lam = Weight::new(vec![1, 1, 1]);
    let base = enumerate_blambda(&s, &lam, &fs, opts(64)).unwrap().to_json();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let json = pool.install(|| enumerate_blambda(&s, &lam, &fs, opts(64)).unwrap().to_json());
        assert_eq!(json, base);
    }
}
