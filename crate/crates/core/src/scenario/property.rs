//! The seeded `property-suite`: small randomized versions of the structural
//! checks, cross-checked against element enumeration where groups are finite.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{smith_normal_form, FgAbGroup, DEFAULT_ENUMERATION_CAP};
use crate::ordinal::OrdinalCNF;
use crate::random;
use crate::tower::oracle::{group_signature, image_set, threads};
use crate::tower::{
    adjunction_check, analyze, decompose, image_tower, iterate_image, limit_of_towers, shift, Lim1Status, MlStatus,
    Tower, Verdict, DEFAULT_HORIZON,
};
use crate::walker::{ulm_probe, WalkerContext};

use super::{Check, Report, ScenarioReport};

const CAP: u64 = DEFAULT_ENUMERATION_CAP;

/// Counts failures over `cases` trials and turns them into one check.
fn tally(name: &str, cases: usize, mut trial: impl FnMut(usize) -> Option<String>) -> Check {
    let failures: Vec<String> = (0..cases).filter_map(&mut trial).collect();
    let detail = match failures.first() {
        None => format!("{cases} cases"),
        Some(first) => format!("{} of {cases} failed; first: {first}", failures.len()),
    };
    Check::new(name, failures.is_empty(), detail)
}

fn snf(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let check = tally("certificate", 100, |_| {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = random::matrix(rng, r, c, 20);
        let f = smith_normal_form(&m);
        let d = f.diagonal();
        let ok = f.u.mul(&m).mul(&f.v) == f.d
            && f.v.mul(&f.v_inv) == crate::abelian::IntMatrix::identity(c)
            && d.iter().all(|x| !x.is_negative())
            && d.windows(2)
                .all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        (!ok).then(|| format!("{m:?}"))
    });
    ScenarioReport::from_checks("snf", vec![check])
}

fn finite_ml(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let check = tally("stabilized_and_threads", 40, |_| {
        let s = random::finite_tower(rng, 64, 5);
        let r = analyze(&s, DEFAULT_HORIZON);
        let MlStatus::Stabilized { stage } = r.ml else {
            return Some(format!("{s}: {:?}", r.ml));
        };
        if r.lim1 != Lim1Status::Zero {
            return Some(format!("{s}: lim1 {:?}", r.lim1));
        }
        let Some(lim) = r.lim.group() else {
            return Some(format!("{s}: lim unknown"));
        };
        let (t, sig) = match (threads(&s, s.window(), stage + 3, CAP), group_signature(lim, CAP)) {
            (Ok(t), Ok(sig)) => (t, sig),
            (Err(e), _) | (_, Err(e)) => return Some(format!("{s}: {e}")),
        };
        (t.signature() != sig).then(|| format!("{s}: lim {lim} but {} threads", t.len()))
    });
    ScenarioReport::from_checks("finite towers are ML", vec![check])
}

fn shift_invariance(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let check = tally("same_invariants", 30, |i| {
        let s = if i % 3 == 0 {
            random::mixed_tower(rng)
        } else {
            random::finite_tower(rng, 64, 5)
        };
        let a = analyze(&s, DEFAULT_HORIZON);
        let b = analyze(&shift(&s).0, DEFAULT_HORIZON);
        (!a.same_invariants(&b)).then(|| format!("{s}"))
    });
    ScenarioReport::from_checks("shift invariance", vec![check])
}

fn quotients(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let mut lim_zero = Vec::new();
    let mut orders = Vec::new();
    let towers: Vec<Tower> = (0..10).map(|_| random::finite_tower(rng, 32, 4)).collect();
    for s in &towers {
        for n in 0..=4usize {
            let stage = iterate_image(s, n);
            let sn = s.quotient(&stage.subs).expect("stage fits").0;
            let k = sn.window();
            lim_zero.push(threads(&sn, k, n + 3, CAP).is_ok_and(|t| t.len() == 1));
            let next = s.quotient(&iterate_image(s, n + 1).subs).expect("stage fits").0;
            let layer = image_tower(&stage.tower(s).expect("stage fits"))
                .expect("image")
                .cokernel;
            for i in 0..=k + 1 {
                let lhs = next.level(i).order();
                let rhs = layer.level(i).order().zip(sn.level(i).order()).map(|(a, b)| a * b);
                let counted = image_set(s, i, n, CAP).ok().map(|x| BigInt::from(x.len()));
                let direct = s.level(i).order().zip(counted).map(|(a, b)| a / b);
                orders.push(lhs == rhs && sn.level(i).order() == direct);
            }
        }
    }
    let count = |v: &[bool]| v.iter().filter(|ok| !**ok).count();
    ScenarioReport::from_checks(
        "quotients S^n",
        vec![
            Check::new("lim_zero", count(&lim_zero) == 0, format!("{} cases", lim_zero.len())),
            Check::new(
                "order_equation",
                count(&orders) == 0,
                format!("{} levels", orders.len()),
            ),
        ],
    )
}

fn decompositions(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let check = tally("signature", 30, |_| {
        let s = random::finite_tower(rng, 64, 5);
        let d = match decompose(&s, DEFAULT_HORIZON) {
            Ok(d) => d,
            Err(e) => return Some(format!("{s}: {e}")),
        };
        let local = analyze(&d.local_part, DEFAULT_HORIZON).local == Verdict::True;
        let factor = (0..=s.window() + 1).all(|i| {
            s.level(i).order()
                == d.epimorphic
                    .level(i)
                    .order()
                    .zip(d.local_part.level(i).order())
                    .map(|(a, b)| a * b)
        });
        (!(d.epimorphic.is_epimorphic() && local && factor)).then(|| format!("{s}"))
    });
    ScenarioReport::from_checks("decomposition", vec![check])
}

fn locality(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let ext = tally("null_extension", 30, |_| {
        let s = random::local_tower(rng, 16, 3);
        let e = random::null_extension_of(rng, &s, 8, 3);
        (analyze(&e.tower, DEFAULT_HORIZON).local != Verdict::True).then(|| format!("{}", e.tower))
    });
    let prod = tally("product", 20, |_| {
        let family: Vec<Tower> = (0..rng.gen_range(0..=3))
            .map(|_| random::local_tower(rng, 16, 3))
            .collect();
        let p = limit_of_towers(&family);
        (analyze(&p, DEFAULT_HORIZON).local != Verdict::True).then(|| format!("{p}"))
    });
    ScenarioReport::from_checks("locality closure", vec![ext, prod])
}

fn walker(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let alphas: [OrdinalCNF; 2] = [OrdinalCNF::omega(), OrdinalCNF::omega_times_plus(2, 3)];
    let check = tally("normal_form", 300, |i| {
        let p = [2u64, 3, 5][i % 3];
        let ctx = WalkerContext::new(p, alphas[i % 2].clone()).expect("prime");
        let x = random::raw_element(rng, &ctx, 6, 3, 40);
        let n = x.normalize();
        let sigma = random::index_below(rng, ctx.alpha(), 3);
        let r = ctx
            .relation(&sigma)
            .expect("in range")
            .scalar_mul_raw(&BigInt::from(rng.gen_range(-3..=3)));
        let shifted = x.add_raw(&r).expect("same context").normalize();
        let ok = n.normalize() == n
            && shifted == n
            && x.normalize_random_order(rng) == n
            && match (n.leading_index(), x.leading_index()) {
                (Some(a), Some(b)) => a <= b,
                (None, _) => true,
                (Some(_), None) => false,
            };
        (!ok).then(|| x.to_string())
    });
    ScenarioReport::from_checks("walker normal forms", vec![check])
}

fn ulm(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let check = tally("heights_exact", 6, |i| {
        let alpha: OrdinalCNF = ["1", "5", "w", "w+3", "w*2", "w*2+3"][i].parse().expect("ordinal");
        let ctx = WalkerContext::new(2, alpha.clone()).expect("prime");
        let sample: Vec<OrdinalCNF> = (0..5).map(|_| random::ordinal_below(rng, &alpha)).collect();
        let exact = ulm_probe(&ctx, &sample).is_ok_and(|probe| probe.heights_exact());
        (!exact).then(|| format!("alpha = {alpha}"))
    });
    ScenarioReport::from_checks("ulm probe", vec![check])
}

fn adjunction(rng: &mut ChaCha8Rng) -> ScenarioReport {
    let check = tally("bijection", 6, |i| {
        let a = FgAbGroup::cyclic(2);
        let s = random::finite_tower(rng, 8, 3);
        let holds = adjunction_check(&a, i % 3, &s, CAP).is_ok_and(|r| r.holds());
        (!holds).then(|| format!("{s}"))
    });
    ScenarioReport::from_checks("A(n) adjunction", vec![check])
}

/// Every property over towers and walker elements drawn from `seed`.
pub fn run_property_suite(seed: u64) -> Report {
    let mut rng = random::rng(seed);
    let parts: [fn(&mut ChaCha8Rng) -> ScenarioReport; 9] = [
        snf,
        finite_ml,
        shift_invariance,
        quotients,
        decompositions,
        locality,
        walker,
        ulm,
        adjunction,
    ];
    Report::new(parts.iter().map(|f| f(&mut rng)).collect())
}
