mod common;

use common::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric::instances::transport;
use toric::ip::*;
use toric::orders::TieBreak;
use toric::toric::ConfigMatrix;
use toric_oracle::fiber_bruteforce;

fn kept(a: &ConfigMatrix, b: &[i64]) -> Vec<i64> {
    a.kept_rows().iter().map(|&i| b[i]).collect()
}

fn cost(w: &[i64], x: &[i64]) -> i64 {
    w.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Cost-minimal points of the fiber, by brute force.
fn brute_optima(a: &ConfigMatrix, w: &[i64], b: &[i64]) -> Vec<Vec<i64>> {
    let pts = fiber_bruteforce(a, &kept(a, b)).unwrap();
    let Some(best) = pts.iter().map(|x| cost(w, x)).min() else { return Vec::new() };
    pts.into_iter().filter(|x| cost(w, x) == best).collect()
}

fn transport_instance(rng: &mut ChaCha8Rng, r: usize, c: usize) -> (ConfigMatrix, Vec<i64>) {
    let a = ConfigMatrix::new(transport(r, c).unwrap()).unwrap();
    let table: Vec<i64> = (0..r * c).map(|_| rng.gen_range(0..=3)).collect();
    (a.clone(), a.apply(&table).unwrap())
}

#[test]
fn transport_sweep_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let (a, b) = transport_instance(&mut rng, 3, 3);
        let w: Vec<i64> = (0..9).map(|_| rng.gen_range(0..=9)).collect();
        let inst = IPInstance::from_i64(a.clone(), &w, b.clone()).unwrap();
        let x = solve_ip(&inst).unwrap().unwrap();
        let optima = brute_optima(&a, &w, &b);
        assert!(optima.contains(&x), "{w:?} {b:?}");
        // lex refinement: the lexicographically largest exponent among optima is the most expensive
        let lex_min = optima.iter().min_by(|p, q| inst.order().unwrap().compare(p, q).unwrap()).unwrap();
        assert_eq!(&x, lex_min);
        assert_eq!(solve_ip_elimination(&inst).unwrap().unwrap(), x);
    }
}

#[test]
fn knapsack_sweep_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut done = 0;
    while done < 40 {
        let n = rng.gen_range(2..=5);
        let row: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=7)).collect();
        let a = ConfigMatrix::from_rows(&[row.as_slice()]).unwrap();
        let b = vec![rng.gen_range(0..=25)];
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=9)).collect();
        let inst = IPInstance::from_i64(a.clone(), &w, b.clone()).unwrap();
        let optima = brute_optima(&a, &w, &b);
        match solve_ip(&inst).unwrap() {
            None => assert!(optima.is_empty()),
            Some(x) => {
                assert!(optima.contains(&x), "{row:?} {w:?} {b:?}");
                // every feasible start reaches the same point
                let solver = IpSolver::for_instance(&inst).unwrap();
                for p in fiber_bruteforce(&a, &b).unwrap() {
                    assert_eq!(solver.solve_from(&p).unwrap(), x);
                }
            }
        }
        assert_eq!(solve_ip_elimination(&inst).unwrap(), solve_ip(&inst).unwrap());
        done += 1;
    }
}

#[test]
fn skeleton_graphs_have_a_unique_sink() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let (a, b) = transport_instance(&mut rng, 2, 3);
        let w: Vec<i64> = (0..6).map(|_| rng.gen_range(0..=9)).collect();
        let inst = IPInstance::from_i64(a, &w, b).unwrap();
        let solver = IpSolver::for_instance(&inst).unwrap();
        let g = skeleton_graph(&inst, solver.groebner_basis()).unwrap();
        assert!(g.is_connected() && g.is_acyclic());
        assert_eq!(g.unique_sink().map(<[i64]>::to_vec), solve_ip(&inst).unwrap());
    }
    let inst = IPInstance::from_i64(cm(&[&[1, 1]]), &[1, 0], vec![0]).unwrap();
    let g = skeleton_graph(&inst, IpSolver::for_instance(&inst).unwrap().groebner_basis()).unwrap();
    assert_eq!(g.vertices, vec![vec![0, 0]]);
    assert!(g.is_connected() && g.is_acyclic() && g.unique_sink().is_some());
}

#[test]
fn fibers_and_feasibility() {
    let a = ConfigMatrix::new(transport(3, 3).unwrap()).unwrap();
    let f = fiber(&a, &[1, 1, 1, 1, 1, 1]).unwrap();
    assert_eq!(f.len(), 6);
    assert_eq!(f, fiber_bruteforce(&a, &kept(&a, &[1, 1, 1, 1, 1, 1])).unwrap());
    assert_eq!(fiber(&cm(&[&[1, 2]]), &[4]).unwrap(), vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
    assert_eq!(feasible_point(&cm(&[&[2, 3]]), &[7]).unwrap(), Some(vec![2, 1]));
    assert_eq!(feasible_point(&cm(&[&[2, 4]]), &[5]).unwrap(), None);
    let p = feasible_point(&cm(&[&[1, 1]]), &[4]).unwrap().unwrap();
    assert_eq!(p[0] + p[1], 4);
    // inconsistent margins
    assert!(fiber(&a, &[1, 1, 1, 1, 1, 2]).unwrap().is_empty());
    assert!(matches!(fiber_with_limit(&a, &[9, 9, 9, 9, 9, 9], 10), Err(toric::Error::LimitExceeded(_))));
    assert!(matches!(fiber(&cm(&[&[1, -1]]), &[0]), Err(toric::Error::GuardViolated(_))));
}

#[test]
fn twisted_cubic_methods_agree() {
    let a = twisted_cubic();
    let b = a.apply(&[1, 1, 1, 1]).unwrap();
    let inst = IPInstance::from_i64(a, &[1, 1, 1, 1], b).unwrap();
    assert_eq!(solve_ip(&inst).unwrap(), solve_ip_elimination(&inst).unwrap());
}

#[test]
fn test_set_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let (a, _) = transport_instance(&mut rng, 2, 3);
        let w: Vec<i64> = (0..6).map(|_| rng.gen_range(0..=9)).collect();
        let omega: Vec<BigRational> = rat(&w);
        let solver = IpSolver::new(&a, &omega, TieBreak::Lex).unwrap();
        let t = solver.groebner_basis().vectors();
        let bs: Vec<Vec<i64>> = (0..4).map(|_| transport_instance(&mut rng, 2, 3).1).collect();
        assert!(is_test_set(&t, &a, &omega, TieBreak::Lex, &bs).unwrap());
        let multi: Vec<Vec<i64>> = bs.into_iter().filter(|b| fiber(&a, b).unwrap().len() > 1).collect();
        for b in &multi {
            assert!(!is_test_set(&[], &a, &omega, TieBreak::Lex, std::slice::from_ref(b)).unwrap());
        }
    }
}

#[test]
fn dropping_a_basis_element_breaks_the_test_set() {
    let a = twisted_cubic();
    let omega = rat(&[1, 1, 1, 1]);
    let solver = IpSolver::new(&a, &omega, TieBreak::DegRevLex).unwrap();
    let t = solver.groebner_basis().vectors();
    for skip in 0..t.len() {
        let smaller: Vec<Vec<i64>> = t.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.clone()).collect();
        // the leading monomial of the dropped element is a non-optimal point nothing else improves
        let lead: Vec<i64> = t[skip].iter().map(|&x| x.max(0)).collect();
        let b = a.apply(&lead).unwrap();
        assert!(!is_test_set(&smaller, &a, &omega, TieBreak::DegRevLex, &[b]).unwrap());
    }
}
