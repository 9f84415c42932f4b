mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric::buchberger::buchberger;
use toric::exactmath::strict_feasible;
use toric::fan::*;
use toric::orders::{TermOrder, TieBreak};
use toric::toric::{toric_generators, universal_gb, ConfigMatrix};
use toric_oracle::{assoc_primes_via_decomposition, cone_facets_bruteforce};

fn cone_at(a: &ConfigMatrix, w: &[i64]) -> Cone {
    let pos = a.positive_weight(&rat(w)).unwrap();
    let ord = TermOrder::from_integer_weight(pos, TieBreak::DegRevLex, (0..a.n()).collect()).unwrap();
    groebner_cone(&buchberger(&toric_generators(a).unwrap(), &ord).unwrap()).unwrap()
}

fn all_normals(a: &ConfigMatrix, w: &[i64]) -> Vec<Vec<i64>> {
    let pos = a.positive_weight(&rat(w)).unwrap();
    let ord = TermOrder::from_integer_weight(pos, TieBreak::DegRevLex, (0..a.n()).collect()).unwrap();
    buchberger(&toric_generators(a).unwrap(), &ord).unwrap().vectors()
}

#[test]
fn single_row_cone_has_five_facets() {
    let a = cm(&[&[15, 247, 248, 345]]);
    let c = cone_at(&a, &[111, 0, 341, 1]);
    assert_eq!(c.num_facets(), 5);
    assert_eq!(c.lineality_dim, 1);
    assert_eq!(cone_facets_bruteforce(&all_normals(&a, &[111, 0, 341, 1])), 5);
}

#[test]
fn twisted_cubic_cone_matches_double_description() {
    let a = twisted_cubic();
    let c = cone_at(&a, &[0, 1, 1, 0]);
    assert_eq!(c.num_facets(), cone_facets_bruteforce(&all_normals(&a, &[0, 1, 1, 0])));
    assert_eq!(c.lineality_dim, 2);
    let u = universal_gb(&a).unwrap();
    for gb in &u.bases {
        let c = groebner_cone(gb).unwrap();
        assert_eq!(c.num_facets(), cone_facets_bruteforce(&gb.vectors()));
    }
}

#[test]
fn segment_cone() {
    let a = cm(&[&[1, 1]]);
    let c = cone_at(&a, &[1, 0]);
    assert_eq!(c.inequalities, vec![vec![1, -1]]);
    assert_eq!(c.num_facets(), 1);
}

fn check_fan(a: &ConfigMatrix) {
    let u = universal_gb(a).unwrap();
    let cones: Vec<Cone> = u.bases.iter().map(|g| groebner_cone(g).unwrap()).collect();
    for (c, w) in cones.iter().zip(&u.witnesses) {
        assert!(c.contains_strictly(w));
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let both: Vec<Vec<i64>> = cones[i].inequalities.iter().chain(&cones[j].inequalities).cloned().collect();
            assert!(strict_feasible(&both).unwrap().is_none(), "cones {i} and {j} overlap");
        }
    }
}

#[test]
fn fan_properties() {
    check_fan(&twisted_cubic());
    check_fan(&cm(&[&[1, 1, 1], &[0, 1, 2]]));
    check_fan(&cm(&[&[1, 2, 3]]));
    check_fan(&cm(&[&[1, 1, 1, 1], &[0, 1, 3, 4]]));
}

#[test]
fn triangulation_examples() {
    let a = cm(&[&[1, 1, 1], &[0, 1, 2]]);
    assert_eq!(regular_triangulation(&a, &rat(&[0, 0, 1])).unwrap().facets, vec![vec![0, 1], vec![1, 2]]);
    assert_eq!(regular_triangulation(&a, &rat(&[0, 1, 0])).unwrap().facets, vec![vec![0, 2]]);
    assert!(matches!(regular_triangulation(&a, &rat(&[0, 0, 0])), Err(toric::Error::NonGenericOmega(_))));
    let id = cm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(regular_triangulation(&id, &rat(&[4, -1, 7])).unwrap().facets, vec![vec![0, 1, 2]]);
}

#[test]
fn radical_triangulation_and_squarefree_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut seen = 0;
    while seen < 30 {
        let a = random_config(&mut rng);
        let (w, _) = generic_weight(&a, &mut rng, 1000);
        let omega = rat(&w);
        let Ok(delta) = regular_triangulation(&a, &omega) else { continue };
        assert!(check_radical_triangulation(&a, &omega).unwrap(), "{:?} {w:?}", a.rows_i64());
        let (ini, _) = initial_ideal(&a, &omega).unwrap();
        assert_eq!(is_squarefree(&ini), is_unimodular_triangulation(&a, &delta).unwrap());
        assert!(check_chain_property(&ini).unwrap());
        seen += 1;
    }
}

#[test]
fn chain_property_negative_control() {
    let i = MonomialIdeal::new(3, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
    assert_eq!(assoc_primes_monomial(&i).unwrap(), vec![vec![0], vec![0, 1, 2]]);
    assert!(!check_chain_property(&i).unwrap());
}

fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0i64..=3, n), 1..=4)
            .prop_map(move |gens| MonomialIdeal::new(n, gens).unwrap())
            .prop_filter("proper", |i| !i.generators().iter().any(|g| g.iter().all(|&e| e == 0)))
    })
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=n), 1..=4)
            .prop_map(move |fs| SimplicialComplex::new(n, fs.into_iter().map(|f| f.into_iter().collect()).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn assoc_primes_match_decomposition(i in small_ideal()) {
        prop_assert_eq!(assoc_primes_monomial(&i).unwrap(), assoc_primes_via_decomposition(&i).unwrap());
    }

    #[test]
    fn stanley_reisner_constructions_agree(d in complex()) {
        prop_assert_eq!(stanley_reisner(&d), stanley_reisner_nonfaces(&d));
    }

    #[test]
    fn triangulation_facets_cover_every_column(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_config(&mut rng);
        let w: Vec<i64> = (0..a.n()).map(|_| rng.gen_range(0..=1000)).collect();
        if let Ok(t) = regular_triangulation(&a, &rat(&w)) {
            prop_assert!(!t.facets.is_empty());
            prop_assert!(t.facets.iter().all(|f| f.len() == a.d()));
        }
    }
}
