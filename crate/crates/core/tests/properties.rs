mod common;

use common::naive_reduce;
use pregroup::axioms::{check_all, replay_witness};
use pregroup::cayley::hyperbolicity::gromov_product;
use pregroup::cayley::{Ball, BallOptions, GenSet};
use pregroup::construct::{amalgam_cyclic, free, group, random_pregroup};
use pregroup::length::chiswell_length;
use pregroup::word::{self, is_reduced};
use pregroup::{parse_pregroup, serialize_pregroup, AxiomTag, Elem, FiniteGroup, Pregroup, RandomMode, Strategy, UniversalGroup};
use proptest::prelude::*;

/// Pregroups satisfying P1–P6.
fn p6_examples() -> Vec<Pregroup> {
    vec![
        free(2),
        group(&FiniteGroup::s3(), "s3").unwrap(),
        amalgam_cyclic(4, 4, 2).unwrap(),
        amalgam_cyclic(2, 2, 1).unwrap(),
        amalgam_cyclic(6, 4, 2).unwrap(),
    ]
}

fn word_of(p: &Pregroup, raw: &[usize]) -> Vec<Elem> {
    raw.iter().map(|&i| Elem::new(i % p.len())).collect()
}

fn raw_word(max: usize) -> impl proptest::strategy::Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 0..=max)
}

fn mode(raw: bool) -> RandomMode {
    if raw {
        RandomMode::Raw
    } else {
        RandomMode::Perturbed
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn format_roundtrip(seed in any::<u64>(), size in 2usize..12, raw in any::<bool>()) {
        let Ok(p) = random_pregroup(seed, size, mode(raw)) else { return Ok(()) };
        let v = check_all(&p, &[AxiomTag::P1, AxiomTag::P2], None).unwrap();
        prop_assume!(v.iter().all(|v| v.holds));
        let q = parse_pregroup(&serialize_pregroup(&p)).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(serialize_pregroup(&q), serialize_pregroup(&p));
    }

    #[test]
    fn witnesses_replay(seed in any::<u64>(), size in 2usize..10, raw in any::<bool>()) {
        let Ok(p) = random_pregroup(seed, size, mode(raw)) else { return Ok(()) };
        for v in check_all(&p, &AxiomTag::ALL, Some(Default::default())).unwrap() {
            if let Some(w) = &v.witness {
                prop_assert!(replay_witness(&p, v.axiom, w, Some(Default::default())).unwrap(), "{} {:?}", v.axiom, w);
            }
        }
    }

    #[test]
    fn reduction_strategies_agree(which in 0usize..5, raw in raw_word(10), seed in any::<u64>()) {
        let p = &p6_examples()[which];
        let ug = UniversalGroup::new(p);
        let w = word_of(p, &raw);
        let forms = [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(seed)].map(|s| word::reduce(p, &w, s));
        let naive = naive_reduce(p, &w);
        for f in &forms {
            prop_assert!(is_reduced(p, f.factors()));
            prop_assert_eq!(f.len(), naive.len());
            prop_assert!(ug.equivalent(&forms[0], f).is_some());
        }
    }

    #[test]
    fn group_laws(which in 0usize..5, a in raw_word(5), b in raw_word(5), c in raw_word(5)) {
        let p = &p6_examples()[which];
        let ug = UniversalGroup::new(p);
        let [u, v, w] = [a, b, c].map(|r| ug.reduce(&word_of(p, &r)));
        let left = ug.multiply(&ug.multiply(&u, &v), &w);
        let right = ug.multiply(&u, &ug.multiply(&v, &w));
        prop_assert_eq!(ug.canonical(&left), ug.canonical(&right));
        prop_assert!(ug.multiply(&u, &ug.invert(&u)).is_identity(p));
        prop_assert!(ug.multiply(&ug.invert(&u), &u).is_identity(p));
        prop_assert_eq!(ug.canonical(&ug.multiply(&u, &ug.identity())), ug.canonical(&u));
    }

    #[test]
    fn canonical_is_a_class_invariant(which in 0usize..5, raw in raw_word(6)) {
        let p = &p6_examples()[which];
        let ug = UniversalGroup::new(p);
        let u = ug.reduce(&word_of(p, &raw));
        let c = ug.canonical(&u);
        prop_assert_eq!(ug.canonical(&c), c.clone());
        for m in ug.class_members(&u) {
            prop_assert_eq!(ug.canonical(&m), c.clone());
            prop_assert!(ug.equal_in_group(m.factors(), u.factors()));
        }
    }

    #[test]
    fn length_is_symmetric_and_subadditive(which in 0usize..5, a in raw_word(5), b in raw_word(5)) {
        let p = &p6_examples()[which];
        let ug = UniversalGroup::new(p);
        let u = ug.reduce(&word_of(p, &a));
        let v = ug.reduce(&word_of(p, &b));
        let l = |x: &pregroup::Reduced| chiswell_length(&ug, x);
        let (inv, uv) = (ug.invert(&u), ug.multiply(&u, &v));
        prop_assert_eq!(l(&u), l(&inv));
        prop_assert!(l(&uv) <= l(&u) + l(&v));
        prop_assert_eq!(l(&ug.identity()), 0);
    }

    #[test]
    fn ball_metric_and_gromov_product(x in 0u32..1000, y in 0u32..1000, z in 0u32..1000) {
        let p = amalgam_cyclic(4, 4, 2).unwrap();
        let ug = UniversalGroup::new(&p);
        let s = GenSet::from_elements(&ug, &["a", "b"]).unwrap();
        let ball = Ball::build(&ug, &s, 4, BallOptions::default()).unwrap();
        let m = ball.metric().unwrap();
        let n = ball.len() as u32;
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(m.d(x, y), m.d(y, x));
        prop_assert_eq!(m.d(x, x), 0);
        if m.exact(x, y) && m.exact(y, z) && m.exact(x, z) {
            prop_assert!(m.d(x, z) <= m.d(x, y) + m.d(y, z));
            let g = gromov_product(m, x, y, z).unwrap();
            prop_assert_eq!(g, gromov_product(m, y, x, z).unwrap());
            prop_assert!(g.x2() >= 0);
            prop_assert!(g.x2() <= 2 * i64::from(m.d(x, z).min(m.d(y, z))));
        } else {
            prop_assert!(gromov_product(m, x, y, z).is_err());
        }
    }
}
