mod common;

use num_bigint::BigInt;

use lim1::abelian::FgAbGroup;
use lim1::ordinal::OrdinalCNF;
use lim1::random;
use lim1::scenario::{paper_examples, run_scenarios};
use lim1::tower::{
    analyze, decompose, is_local, length, null_extension, shift, Lim1Status, MlStatus, Tower, Verdict, DEFAULT_HORIZON,
};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn s_of_a(g: &str, m: i64) -> Tower {
    Tower::s_of_a(&g.parse().unwrap(), &BigInt::from(m))
}

fn data_tower(name: &str) -> Tower {
    Tower::from_json(&std::fs::read_to_string(format!("{DATA}/{name}")).unwrap()).unwrap()
}

#[test]
fn bundled_examples_pass() {
    let report = run_scenarios(&paper_examples()).unwrap();
    for s in &report.scenarios {
        assert!(
            s.passed,
            "{}: {:?}",
            s.name,
            s.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
        );
    }
    assert_eq!(report.checks_failed, 0);
}

#[test]
fn z6_times_two_against_threads() {
    let s = s_of_a("Z/6", 2);
    let r = analyze(&s, DEFAULT_HORIZON);
    assert_eq!(r.ml, MlStatus::Stabilized { stage: 1 });
    assert_eq!(r.length.exact(), Some(&OrdinalCNF::one()));
    let lim = r.lim.group().unwrap();
    assert_eq!(lim, &FgAbGroup::cyclic(3));
    assert_eq!(common::thread_signature(&s, 2, 4), common::signature(lim));
    assert_eq!(r.local, Verdict::False);
}

#[test]
fn integers_have_nonzero_lim1() {
    for m in [2, 3, 5] {
        let r = analyze(&s_of_a("Z", m), DEFAULT_HORIZON);
        assert!(r.lim.group().unwrap().is_trivial());
        assert!(matches!(r.lim1, Lim1Status::NonZero { .. }));
        assert_eq!(r.length.exact(), Some(&OrdinalCNF::omega()));
    }
    // multiplication by a unit is an isomorphism: the limit is Z, lim1 vanishes
    let r = analyze(&s_of_a("Z", -1), DEFAULT_HORIZON);
    assert_eq!(r.lim.group(), Some(&FgAbGroup::free(1)));
    assert_eq!(r.lim1, Lim1Status::Zero);
}

#[test]
fn json_round_trip_of_data_and_random_towers() {
    let mut towers: Vec<Tower> = ["s_z6_x2.json", "s_z_x2.json", "prefixed.json"]
        .iter()
        .map(|f| data_tower(f))
        .collect();
    let mut rng = random::rng(31);
    towers.extend((0..40).map(|_| random::finite_tower(&mut rng, 64, 5)));
    towers.extend((0..20).map(|_| random::mixed_tower(&mut rng)));
    towers.push(Tower::zero());
    for t in towers {
        assert_eq!(Tower::from_json(&t.to_json()).unwrap(), t, "{t}");
    }
}

#[test]
fn json_rejects_malformed_towers() {
    // the map Z/2 -> Z/4 sending 1 to 1 does not respect relations
    let bad = r#"{"prefix": [{"group": "Z/4"}], "tail": {"kind": "constant_endo", "group": "Z/2", "endo": [[1]], "map_to_previous": [[1]]}}"#;
    assert!(Tower::from_json(bad).is_err());
    assert!(Tower::from_json(r#"{"prefix": [], "tail": {"kind": "spiral"}}"#).is_err());
    assert!(Tower::from_json(r#"{"kind": "S_of_A", "group": "Z/4", "multiplier": 2, "extra": 1}"#).is_err());
    let s = Tower::from_json(r#"{"kind": "S_of_A", "group": "Z/4", "multiplier": 2}"#).unwrap();
    assert_eq!(s, s_of_a("Z/4", 2));
}

#[test]
fn prefixed_tower_matches_its_tail() {
    let t = data_tower("prefixed.json");
    assert_eq!(t.window(), 2);
    let tail = s_of_a("Z + Z/4", 2);
    let (a, b) = (analyze(&t, DEFAULT_HORIZON), analyze(&tail, DEFAULT_HORIZON));
    assert!(a.same_invariants(&b));
}

#[test]
fn shift_keeps_the_limit() {
    let mut rng = random::rng(32);
    for _ in 0..60 {
        let s = random::finite_tower(&mut rng, 64, 5);
        let (t, m) = shift(&s);
        assert_eq!(m.source(), &t);
        assert_eq!(m.target(), &s);
        for i in 0..=s.window() + 1 {
            assert_eq!(t.level(i), s.level(i + 1));
        }
        let (a, b) = (analyze(&s, DEFAULT_HORIZON), analyze(&t, DEFAULT_HORIZON));
        assert!(a.same_invariants(&b), "{s}");
        let k = s.window() + 1;
        assert_eq!(
            common::thread_signature(&s, k, k + 4),
            common::thread_signature(&t, k, k + 4)
        );
    }
}

#[test]
fn null_extensions_do_not_change_limits() {
    let mut rng = random::rng(33);
    for _ in 0..60 {
        let s = random::finite_tower(&mut rng, 32, 3);
        let ext = random::null_extension_of(&mut rng, &s, 8, 3);
        assert!(ext.inclusion.is_levelwise_injective());
        assert!(ext.projection.is_levelwise_surjective());
        let (a, b) = (analyze(&s, DEFAULT_HORIZON), analyze(&ext.tower, DEFAULT_HORIZON));
        assert_eq!(a.lim, b.lim, "{s} vs {}", ext.tower);
        assert_eq!(a.lim1, b.lim1);
        assert_eq!(a.local, b.local);
    }
    let n = random::null_tower(&mut rng, 16, 3);
    assert!(null_extension(&s_of_a("Z/4", 2), &n, &[]).is_err());
    assert!(null_extension(&s_of_a("Z/4", 2), &s_of_a("Z/4", 1), &[]).is_err());
}

#[test]
fn decomposition_factors_orders() {
    let mut rng = random::rng(34);
    for _ in 0..60 {
        let s = random::finite_tower(&mut rng, 64, 4);
        let d = decompose(&s, DEFAULT_HORIZON).unwrap();
        assert!(d.epimorphic.is_epimorphic());
        assert!(d.inclusion.is_levelwise_injective());
        assert!(d.projection.is_levelwise_surjective());
        assert_eq!(is_local(&d.local_part, DEFAULT_HORIZON), Verdict::True, "{s}");
        let len = length(&s, DEFAULT_HORIZON)
            .exact()
            .and_then(OrdinalCNF::as_finite)
            .unwrap() as usize;
        for i in 0..=s.window() + 1 {
            let (so, eo, lo) = (
                common::order(s.level(i)),
                common::order(d.epimorphic.level(i)),
                common::order(d.local_part.level(i)),
            );
            assert_eq!(so, eo * lo);
            assert_eq!(eo, common::image_order(&s, i, len));
        }
    }
}

#[test]
fn local_and_null_towers() {
    let mut rng = random::rng(35);
    for _ in 0..40 {
        let n = random::null_tower(&mut rng, 32, 4);
        assert!(n.is_null());
        assert_eq!(is_local(&n, DEFAULT_HORIZON), Verdict::True);
        let l = random::local_tower(&mut rng, 32, 4);
        assert_eq!(is_local(&l, DEFAULT_HORIZON), Verdict::True, "{l}");
        assert_eq!(common::threads(&l, 0, l.window() + 8).len(), 1);
    }
    assert_eq!(is_local(&s_of_a("Z/4", 1), DEFAULT_HORIZON), Verdict::False);
}
