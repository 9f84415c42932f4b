mod common;

use std::collections::BTreeSet;

use common::*;
use itertools::Itertools;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric::buchberger::{buchberger, GroebnerBasis};
use toric::exactmath::{hnf, kernel_lattice_basis, IntMatrix};
use toric::fan::MonomialIdeal;
use toric::instances::{segre, transport};
use toric::orders::TermOrder;
use toric::toric::*;
use toric_oracle::{graver_bruteforce, kernel_vectors_up_to, weight_grid_initial_ideals};

fn split(v: &[i64]) -> (Vec<i64>, Vec<i64>) {
    (v.iter().map(|&x| x.max(0)).collect(), v.iter().map(|&x| (-x).max(0)).collect())
}

fn in_ideal(gb: &GroebnerBasis, v: &[i64]) -> bool {
    let (p, m) = split(v);
    gb.normal_form(&p).unwrap() == gb.normal_form(&m).unwrap()
}

fn set(vs: impl IntoIterator<Item = Vec<i64>>) -> BTreeSet<Vec<i64>> {
    vs.into_iter().map(sign_normal).collect()
}

#[test]
fn twisted_cubic_generators() {
    let a = twisted_cubic();
    let gens = toric_generators(&a).unwrap();
    assert_eq!(set(gens.clone()), set(kernel_vectors_up_to(&a, 2).unwrap()));
    let gb = buchberger(&gens, &TermOrder::degrevlex(4)).unwrap();
    for v in kernel_vectors_up_to(&a, 5).unwrap() {
        assert!(in_ideal(&gb, &v), "{v:?}");
    }
}

#[test]
fn lattice_basis_ideal_is_not_saturated() {
    let a = twisted_cubic();
    let basis = vec![vec![1, -2, 1, 0], vec![0, 1, -2, 1]];
    let deg = a.column_degrees().unwrap().to_vec();
    let gb = buchberger(&basis, &TermOrder::degrevlex(4)).unwrap();
    assert!(!in_ideal(&gb, &[1, -1, -1, 1]));
    let mut gens = basis.clone();
    for i in 0..4 {
        gens = saturate_variable(&gens, i, &deg).unwrap();
    }
    assert_eq!(set(gens.clone()), set(toric_generators(&a).unwrap()));
    // already saturated: a fixpoint up to the generated ideal
    let again = saturate_variable(&gens, 0, &deg).unwrap();
    let g1 = buchberger(&gens, &TermOrder::degrevlex(4)).unwrap();
    let g2 = buchberger(&again, &TermOrder::degrevlex(4)).unwrap();
    assert!(again.iter().all(|v| in_ideal(&g1, v)));
    assert!(gens.iter().all(|v| in_ideal(&g2, v)));
}

#[test]
fn random_generators_generate() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let a = random_config(&mut rng);
        let gens = toric_generators(&a).unwrap();
        let gb = buchberger(&gens, &TermOrder::degrevlex(a.n())).unwrap();
        let maxdeg = gens.iter().map(|v| a.degree(v).unwrap()).max().unwrap_or(0);
        let Ok(ks) = kernel_vectors_up_to(&a, (maxdeg + 2).min(14)) else { continue };
        for v in ks {
            assert!(in_ideal(&gb, &v), "{:?} {v:?}", a.rows_i64());
        }
    }
}

#[test]
fn kernel_basis_of_b_matches_bruteforce_span() {
    let b = IntMatrix::from_rows(&B).unwrap();
    let basis = kernel_lattice_basis(&b).unwrap();
    assert_eq!(basis.len(), 3);
    let r = -10i64..=10;
    let brute: Vec<Vec<i64>> = (0..5)
        .map(|_| r.clone())
        .multi_cartesian_product()
        .filter(|v| B.iter().all(|row| row.iter().zip(v).map(|(x, y)| x * y).sum::<i64>() == 0))
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let (h1, _) = hnf(&IntMatrix::from_rows(&basis).unwrap());
    let (h2, _) = hnf(&IntMatrix::from_rows(&brute).unwrap());
    let nonzero: Vec<Vec<BigInt>> = h2.to_rows().into_iter().filter(|r| r.iter().any(|x| *x != BigInt::from(0))).collect();
    assert_eq!(h1.to_rows(), nonzero);
}

#[test]
fn graver_matches_oracle_on_small_configurations() {
    for rows in [
        vec![vec![1, 2, 3]],
        vec![vec![2, 3, 5]],
        vec![vec![1, 1, 1], vec![0, 1, 2]],
        vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]],
        vec![vec![1, 1, 1, 1], vec![0, 1, 3, 4]],
    ] {
        let a = ConfigMatrix::from_rows(&rows).unwrap();
        let g = graver(&a).unwrap();
        let maxdeg = g.iter().map(|v| a.degree(v).unwrap()).max().unwrap();
        assert_eq!(g, graver_bruteforce(&a, maxdeg + 2).unwrap(), "{rows:?}");
    }
}

#[test]
fn graver_of_lawrence_b() {
    let a = lawrence_b();
    let g = graver(&a).unwrap();
    let expected: BTreeSet<Vec<i64>> = LAMBDA_B.iter().map(|u| lifted(u)).collect();
    assert_eq!(set(g.clone()), expected);
    assert!(g.iter().all(|v| is_graver_element(v, &a).unwrap()));
    assert!(!is_graver_element(&lifted(&[-6, 2, 0, 0, 0]), &a).unwrap());
}

fn oracle_circuits(a: &ConfigMatrix, bound: i64) -> BTreeSet<Vec<i64>> {
    let ks = kernel_vectors_up_to(a, bound).unwrap();
    let supp = |v: &[i64]| -> Vec<usize> { (0..v.len()).filter(|&i| v[i] != 0).collect() };
    ks.iter()
        .filter(|v| v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1)
        .filter(|v| {
            let s = supp(v);
            !ks.iter().any(|u| {
                let t = supp(u);
                t.len() < s.len() && t.iter().all(|i| s.contains(i))
            })
        })
        .cloned()
        .collect()
}

#[test]
fn circuits_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 25 {
        let a = random_config(&mut rng);
        let cs = circuits(&a).unwrap();
        let maxdeg = cs.iter().map(|c| a.degree(&c.vector).unwrap()).max().unwrap_or(0);
        if maxdeg > 12 {
            continue;
        }
        let Ok(_) = kernel_vectors_up_to(&a, maxdeg) else { continue };
        assert_eq!(set(cs.iter().map(|c| c.vector.clone())), oracle_circuits(&a, maxdeg), "{:?}", a.rows_i64());
        for c in &cs {
            assert_eq!(true_degree(&c.vector, &a).unwrap(), c.true_degree);
            assert_eq!(c.true_degree, c.multiplier * a.degree(&c.vector).unwrap());
        }
        checked += 1;
    }
}

#[test]
fn circuit_examples() {
    let a = cm(&[&[1, 1, 1]]);
    let cs = circuits(&a).unwrap();
    assert_eq!(
        cs.iter().map(|c| c.vector.clone()).collect::<Vec<_>>(),
        vec![vec![0, 1, -1], vec![1, -1, 0], vec![1, 0, -1]]
    );
    assert!(cs.iter().all(|c| c.true_degree == 1 && c.multiplier == 1));
    let a = lawrence_b();
    let cs = circuits(&a).unwrap();
    let expected: BTreeSet<Vec<i64>> = LAMBDA_B[..6].iter().map(|u| lifted(u)).collect();
    assert_eq!(set(cs.iter().map(|c| c.vector.clone())), expected);
    let under = lifted(&LAMBDA_B[5]);
    assert_eq!(a.degree(&under).unwrap(), 15);
    assert_eq!(true_degree(&under, &a).unwrap(), 30);
    assert!(matches!(true_degree(&lifted(&LAMBDA_B[15]), &a), Err(toric::Error::NotACircuit)));
}

#[test]
fn unimodular_configurations() {
    for a in [ConfigMatrix::new(transport(2, 2).unwrap()).unwrap(), ConfigMatrix::new(transport(2, 3).unwrap()).unwrap()] {
        assert!(is_unimodular(&a).unwrap());
        let cs: BTreeSet<Vec<i64>> = circuits(&a).unwrap().into_iter().map(|c| c.vector).collect();
        assert!(cs.iter().flatten().all(|x| x.abs() <= 1));
        let u = universal_gb(&a).unwrap();
        assert_eq!(set(u.ugb), cs);
    }
    assert!(!is_unimodular(&cm(&[&[1, 2]])).unwrap());
    assert!(is_unimodular(&ConfigMatrix::new(segre(&[3, 3]).unwrap()).unwrap()).unwrap());
}

#[test]
fn degree_bounds() {
    assert_eq!(degree_bound(&cm(&[&[1, 1]])).unwrap(), BigInt::from(2));
    assert_eq!(degree_bound(&cm(&[&[15, 247, 248, 345]])).unwrap(), BigInt::from(2070));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = 0;
    while seen < 60 {
        let rows: Vec<Vec<i64>> = (0..2).map(|_| (0..5).map(|_| rand::Rng::gen_range(&mut rng, 0..=5)).collect()).collect();
        let Ok(a) = ConfigMatrix::from_rows(&rows) else { continue };
        if a.d() != 2 || !a.is_pointed() {
            continue;
        }
        let (_, gb) = generic_weight(&a, &mut rng, 100);
        let bound = degree_bound(&a).unwrap();
        for b in gb.elements() {
            assert!(BigInt::from(b.degree()) <= bound);
        }
        seen += 1;
    }
}

fn ideals(u: &UniversalGb) -> BTreeSet<MonomialIdeal> {
    u.initial_ideals.iter().cloned().collect()
}

#[test]
fn universal_against_weight_grid() {
    let a = cm(&[&[1, 1, 1], &[0, 1, 2]]);
    let u = universal_gb(&a).unwrap();
    let grid: BTreeSet<MonomialIdeal> = weight_grid_initial_ideals(&a, 3, 4).unwrap().into_iter().collect();
    assert_eq!(grid, ideals(&u));
    let a = twisted_cubic();
    let u = universal_gb(&a).unwrap();
    let maxdeg = u.bases.iter().map(GroebnerBasis::max_degree).max().unwrap();
    let grid: BTreeSet<MonomialIdeal> = weight_grid_initial_ideals(&a, 3, maxdeg + 1).unwrap().into_iter().collect();
    assert!(grid.is_subset(&ideals(&u)));
    assert_eq!(grid.len(), u.initial_ideals.len());
    assert_eq!(u.initial_ideals.len(), 8);
}

#[test]
fn universal_segment() {
    let u = universal_gb(&cm(&[&[1, 1]])).unwrap();
    assert_eq!(u.ugb, vec![vec![1, -1]]);
    assert_eq!(u.initial_ideals.len(), 2);
}

#[test]
fn graver_guard() {
    let a = ConfigMatrix::new(segre(&[2, 2, 2]).unwrap()).unwrap();
    let opts = UniversalOptions { max_graver: 3, parallel: false };
    assert!(matches!(universal_gb_with(&a, &opts), Err(toric::Error::LimitExceeded(_))));
}
