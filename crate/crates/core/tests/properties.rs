//! Property tests for the ring, the class calculus, the local engine and
//! the scenario pipeline.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use foliares::classes::{chern_of_split, dual_class, inverse, segre_of_split, SplitBundle};
use foliares::local::{brunella_index, colength_of, milnor_number};
use foliares::report::{parse_structured, render_structured, render_text};
use foliares::residue::{izawa_lhs, lhs_proof_form, lhs_theorem_main, run_check, Check};
use foliares::run::{run_source, RunConfig};
use foliares::scenario::{parse_scenario, Sweep};
use foliares::{ChowElement, Error, LocalPoly, MultiDegree, MultiProjectiveSpace, VectorFieldGerm};

fn space() -> impl Strategy<Value = MultiProjectiveSpace> {
    prop::collection::vec(1u32..=3, 1..=3)
        .prop_filter("dimension at most 6", |d| d.iter().sum::<u32>() <= 6)
        .prop_map(|d| MultiProjectiveSpace::new(d).unwrap())
}

fn element(y: MultiProjectiveSpace) -> impl Strategy<Value = ChowElement> {
    let dims = y.factor_dims().to_vec();
    let exps = dims.iter().map(|&n| 0..=n).collect::<Vec<_>>();
    prop::collection::vec((exps, -5i64..=5), 0..6)
        .prop_map(move |terms| ChowElement::from_terms(&y, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn space_and_elements(n: usize) -> impl Strategy<Value = (MultiProjectiveSpace, Vec<ChowElement>)> {
    space().prop_flat_map(move |y| (Just(y.clone()), prop::collection::vec(element(y), n)))
}

fn bundle(y: MultiProjectiveSpace, max_rank: usize) -> impl Strategy<Value = SplitBundle> {
    let s = y.num_factors();
    prop::collection::vec(prop::collection::vec(-3i64..=3, s), 0..=max_rank)
        .prop_map(move |ds| SplitBundle::new(&y, ds.into_iter().map(MultiDegree::new).collect()).unwrap())
}

fn space_and_bundles() -> impl Strategy<Value = (SplitBundle, SplitBundle)> {
    space().prop_flat_map(|y| (bundle(y.clone(), 3), bundle(y, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((_y, v) in space_and_elements(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a * &ChowElement::one(a.space()), a.clone());
        prop_assert!((a - a).is_zero());
    }

    #[test]
    fn grade_parts_sum_back((y, v) in space_and_elements(1)) {
        let a = &v[0];
        let mut sum = ChowElement::zero(&y);
        for d in 0..=y.dim() {
            let part = a.grade_part(d);
            prop_assert!(part.is_zero() || part.is_homogeneous());
            sum = &sum + &part;
        }
        prop_assert_eq!(&sum, a);
        prop_assert_eq!(a.grade_part(y.dim() + 1), ChowElement::zero(&y));
    }

    #[test]
    fn whitney_sum((e, f) in space_and_bundles()) {
        let sum = e.direct_sum(&f).unwrap();
        let lhs = chern_of_split(&sum);
        let rhs = chern_of_split(&e).mul(&chern_of_split(&f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn segre_is_inverse((e, _f) in space_and_bundles()) {
        let y = e.space().clone();
        let prod = chern_of_split(&e).mul(&segre_of_split(&e)).unwrap();
        prop_assert_eq!(prod.value(), &ChowElement::one(&y));
        let c = chern_of_split(&e);
        prop_assert_eq!(inverse(&inverse(&c, y.dim()), y.dim()), c);
    }

    #[test]
    fn dual_is_an_involution((e, _f) in space_and_bundles()) {
        let c = chern_of_split(&e);
        prop_assert_eq!(dual_class(&dual_class(&c)), c.clone());
        prop_assert_eq!(dual_class(&c), chern_of_split(&e.dual()));
    }

    #[test]
    fn theorem_and_proof_forms_agree(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sc = common::random_scenario(&mut rng, 6, None);
        prop_assert_eq!(lhs_theorem_main(&sc).unwrap(), lhs_proof_form(&sc).unwrap());
    }

    #[test]
    fn codimension_one_forms_agree(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sc = common::random_scenario(&mut rng, 6, Some(1));
        prop_assert_eq!(izawa_lhs(&sc).unwrap(), lhs_theorem_main(&sc).unwrap().integrate());
    }

    #[test]
    fn report_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sc = common::random_scenario(&mut rng, 5, None);
        let mut r = run_check(&sc, Check::Theorem).unwrap();
        r.parameter = Some((seed % 7) as i64);
        let text = render_structured(&r);
        prop_assert_eq!(parse_structured(&text).unwrap(), r.clone());
        prop_assert_eq!(render_structured(&r), text);
        prop_assert_eq!(render_text(&r), render_text(&r.clone()));
    }
}

fn poly(nvars: usize) -> impl Strategy<Value = LocalPoly> {
    let exps = (0..nvars).map(|_| 0u32..=3).collect::<Vec<_>>();
    prop::collection::vec((exps, -3i64..=3), 1..5).prop_map(move |terms| {
        LocalPoly::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))))
    })
}

fn swap(p: &LocalPoly) -> LocalPoly {
    LocalPoly::from_terms(2, p.terms().map(|(e, c)| (vec![e[1], e[0]], c.clone())))
}

fn same_outcome(a: Result<u64, Error>, b: Result<u64, Error>) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x == y,
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The colength depends on the ideal, not on how it is generated.
    #[test]
    fn colength_invariance(gens in prop::collection::vec(poly(2), 2..=3), k in -2i64..=2) {
        let d = 12;
        let base = colength_of(2, &gens, d);
        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert!(same_outcome(base.clone(), colength_of(2, &reversed, d)));
        // add a multiple of one generator to another
        let mut combined = gens.clone();
        let factor = LocalPoly::from_terms(2, [(vec![1, 0], BigRational::from_integer(k.into()))]);
        combined[0] = &combined[0] + &(&factor * &gens[1]);
        prop_assert!(same_outcome(base.clone(), colength_of(2, &combined, d)));
        // swap the two coordinates
        let swapped: Vec<LocalPoly> = gens.iter().map(swap).collect();
        prop_assert!(same_outcome(base, colength_of(2, &swapped, d)));
    }

    /// Multiplying a generator by a unit leaves the colength unchanged.
    #[test]
    fn colength_unit_invariance(gens in prop::collection::vec(poly(2), 2..=2)) {
        let d = 12;
        let unit = LocalPoly::parse("1 + x1 - 2*x2", 2).unwrap();
        let mut scaled = gens.clone();
        scaled[1] = &unit * &gens[1];
        prop_assert!(same_outcome(colength_of(2, &gens, d), colength_of(2, &scaled, d)));
    }

    /// Milnor numbers of Brieskorn–Pham polynomials are products.
    #[test]
    fn brieskorn_pham(a in 2u32..=6, b in 2u32..=6, c in 2u32..=3) {
        let f = LocalPoly::parse(&format!("x1^{a} + x2^{b}"), 2).unwrap();
        prop_assert_eq!(milnor_number(&f, 24).unwrap(), u64::from((a - 1) * (b - 1)));
        let g = LocalPoly::parse(&format!("x1^{a} + x2^{b} + x3^{c}"), 3).unwrap();
        prop_assert_eq!(milnor_number(&g, 24).unwrap(), u64::from((a - 1) * (b - 1) * (c - 1)));
    }

    /// Tangency indices do not depend on the names of the coordinates.
    #[test]
    fn brunella_symmetry(f in poly(2), a in poly(2), b in poly(2)) {
        prop_assume!(f.vanishes_at_origin() && !f.is_zero());
        let v = VectorFieldGerm::new(vec![a.clone(), b.clone()]).unwrap();
        let w = VectorFieldGerm::new(vec![swap(&b), swap(&a)]).unwrap();
        prop_assert!(same_outcome(brunella_index(&f, &v, 10), brunella_index(&swap(&f), &w, 10)));
    }

    /// Parsing never panics.
    #[test]
    fn parser_is_total(src in "[\\[\\]a-z_0-9 =(),.^*+L#\\n-]{0,120}") {
        let _ = parse_scenario(&src);
        let _ = LocalPoly::parse(&src, 2);
    }
}

const SEC4: &str = include_str!("../scenarios/izawa_sec4.scn");

#[test]
fn runs_are_deterministic() {
    for format in [foliares::report::Format::Text, foliares::report::Format::Structured] {
        let mut cfg = RunConfig::new("izawa_sec4.scn");
        cfg.format = format;
        let a = run_source(SEC4, "izawa_sec4.scn", &cfg);
        let b = run_source(SEC4, "izawa_sec4.scn", &cfg);
        assert_eq!(a, b);
    }
}

/// Per-parameter blocks of a swept run are exactly those of single runs.
#[test]
fn sweep_is_the_union_of_single_runs() {
    let blocks = |out: &str| -> Vec<String> {
        out.split("\n\n").filter(|b| b.starts_with("== theorem")).map(str::to_string).collect()
    };
    let mut cfg = RunConfig::new("izawa_sec4.scn");
    cfg.sweep = Some(Sweep::new(2, 6).unwrap());
    let swept = run_source(SEC4, "izawa_sec4.scn", &cfg);
    let mut singles = Vec::new();
    for l in 2..=6 {
        cfg.sweep = Some(Sweep::new(l, l).unwrap());
        let out = run_source(SEC4, "izawa_sec4.scn", &cfg);
        assert_eq!(out.exit_code, 0);
        singles.extend(blocks(&out.output));
    }
    assert_eq!(swept.exit_code, 0);
    assert_eq!(blocks(&swept.output), singles);
}
