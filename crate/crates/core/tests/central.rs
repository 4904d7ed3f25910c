use num_rational::BigRational;

use superschur::algebra::{FormalSum, SpaceSpec};
use superschur::central::{a_rho, i_rho, q_rho, DualityKind, IntegerPartition};
use superschur::duality::{verify_duality, verify_duality_with, CommutantKind};
use superschur::groups::{permutation_algebra_matrix, sergeev_algebra_matrix};
use superschur::tensor::{matrix_of_words, ExactMatrix, TensorSpace};
use superschur::symmetrization::sigma;

fn rho(s: &str) -> IntegerPartition {
    s.parse().unwrap()
}

fn scalar(dim: usize, k: i64) -> ExactMatrix {
    ExactMatrix::identity(dim).scaled(&BigRational::from_integer(k.into()))
}

#[test]
fn pair_of_fixed_points_acts_by_falling_factorial() {
    let s = SpaceSpec::new(1, 1).unwrap();
    for n in 2..=4 {
        let space = TensorSpace::new(s, n);
        let k = (n * (n - 1)) as i64;
        let a = permutation_algebra_matrix(&space, &a_rho(&rho("1,1"), n).unwrap());
        assert_eq!(a, scalar(space.dim(), k));
        let u = sigma(&s, &i_rho(&s, &rho("1,1")));
        assert_eq!(matrix_of_words(&space, &u), scalar(space.dim(), k));
    }
}

#[test]
fn single_fixed_point_counts() {
    let s = SpaceSpec::queer(1).unwrap();
    for n in 1..=3 {
        let space = TensorSpace::new(s, n);
        let a = permutation_algebra_matrix(&space, &a_rho(&rho("1"), n).unwrap());
        assert_eq!(a, scalar(space.dim(), n as i64));
        // each index contributes a_∅ and a_i · a_i^{-1}
        let q = sergeev_algebra_matrix(&space, &q_rho(&rho("1"), n).unwrap()).unwrap();
        assert_eq!(q, scalar(space.dim(), 2 * n as i64));
    }
}

#[test]
fn class_sums_have_class_size_many_terms() {
    // |class of cycle type (2,1)| in S_3 is 3, and (3) has 2 elements; a_ρ
    // counts each element once per labelling of its cycles
    assert_eq!(a_rho(&rho("2,1"), 3).unwrap().len(), 3);
    assert!(a_rho(&rho("3"), 3).unwrap().iter().all(|(_, c)| *c == 3.into()));
    assert_eq!(a_rho(&rho(""), 3).unwrap(), FormalSum::basis(superschur::Permutation::identity(3)));
}

#[test]
fn sergeev_duality_needs_graded_commutant() {
    let s = SpaceSpec::queer(1).unwrap();
    let graded = verify_duality(&s, 2, DualityKind::Sergeev).unwrap();
    assert!(graded.pass);
    let plain = verify_duality_with(&s, 2, DualityKind::Sergeev, CommutantKind::Plain).unwrap();
    assert!(!plain.pass);
}

#[test]
fn symmetric_duality_holds_beyond_gl11() {
    for (m, n, big) in [(2, 1, 2), (1, 2, 2)] {
        let r = verify_duality(&SpaceSpec::new(m, n).unwrap(), big, DualityKind::Symmetric).unwrap();
        assert!(r.pass, "({m},{n},{big})");
    }
}
