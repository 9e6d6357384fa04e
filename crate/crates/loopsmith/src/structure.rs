//! Nuclei, commutant, center, and the upper central series of a loop.
//!
//! The center is computed twice by genuinely different routes — once as the
//! common fixed points of every inner mapping generator (driving the actual
//! permutations), once as the intersection of the commutant with all three
//! nuclei — and the two answers are required to agree. A mismatch indicates
//! a bug in one of the pipelines and is reported as `InternalDisagreement`
//! rather than silently trusting either side.
//!
//! The upper central series starts at the trivial subloop and repeatedly
//! takes the preimage of the center of the quotient; it stops at the first
//! repeated term. A loop is centrally nilpotent of class `c` when the series
//! reaches the whole loop in `c` steps.

use crate::inner::inner_generators;
use crate::loops::{ElementSet, FiniteLoop, LoopError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("two independent computations disagree: {0}")]
    InternalDisagreement(String),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// `{a : a(xy) = (ax)y for all x, y}`.
pub fn left_nucleus(q: &FiniteLoop) -> ElementSet {
    let n = q.order();
    ElementSet::new(
        (0..n)
            .filter(|&a| {
                (0..n).all(|x| {
                    let ax = q.mul(a, x);
                    (0..n).all(|y| q.mul(a, q.mul(x, y)) == q.mul(ax, y))
                })
            })
            .collect(),
    )
}

/// `{a : (xa)y = x(ay) for all x, y}`.
pub fn middle_nucleus(q: &FiniteLoop) -> ElementSet {
    let n = q.order();
    ElementSet::new(
        (0..n)
            .filter(|&a| {
                (0..n).all(|x| {
                    let xa = q.mul(x, a);
                    (0..n).all(|y| q.mul(xa, y) == q.mul(x, q.mul(a, y)))
                })
            })
            .collect(),
    )
}

/// `{a : (xy)a = x(ya) for all x, y}`.
pub fn right_nucleus(q: &FiniteLoop) -> ElementSet {
    let n = q.order();
    ElementSet::new(
        (0..n)
            .filter(|&a| {
                (0..n).all(|y| {
                    let ya = q.mul(y, a);
                    (0..n).all(|x| q.mul(q.mul(x, y), a) == q.mul(x, ya))
                })
            })
            .collect(),
    )
}

/// Intersection of the left, middle, and right nuclei.
pub fn nucleus(q: &FiniteLoop) -> ElementSet {
    left_nucleus(q)
        .intersection(&middle_nucleus(q))
        .intersection(&right_nucleus(q))
}

/// `{a : ax = xa for all x}`. Not necessarily a subloop.
pub fn commutant(q: &FiniteLoop) -> ElementSet {
    let n = q.order();
    ElementSet::new(
        (0..n)
            .filter(|&a| (0..n).all(|x| q.mul(a, x) == q.mul(x, a)))
            .collect(),
    )
}

/// Elements fixed by every inner mapping generator, evaluated through the
/// actual permutations.
fn inner_fixed_points(q: &FiniteLoop) -> ElementSet {
    let mut fixed = vec![true; q.order()];
    for (_, p) in inner_generators(q) {
        for x in 0..q.order() {
            if fixed[x] && p.apply(x) != x {
                fixed[x] = false;
            }
        }
    }
    ElementSet::new((0..q.order()).filter(|&x| fixed[x]).collect())
}

/// The center: elements that commute and associate with everything. Computed
/// as the fixed points of the inner mapping generators and, independently, as
/// commutant intersected with the full nucleus; the two must agree.
pub fn center(q: &FiniteLoop) -> Result<ElementSet, StructureError> {
    let by_fix = inner_fixed_points(q);
    let by_intersection = commutant(q).intersection(&nucleus(q));
    if by_fix != by_intersection {
        return Err(StructureError::InternalDisagreement(format!(
            "center as inner-mapping fixed points {:?} vs commutant-nucleus intersection {:?}",
            by_fix.as_slice(),
            by_intersection.as_slice()
        )));
    }
    Ok(by_fix)
}

/// Terms of the upper central series from the trivial subloop up to and
/// including its stabilisation point, without repetition. Each term is the
/// preimage of the center of the quotient by the previous term.
pub fn upper_central_series(q: &FiniteLoop) -> Result<Vec<ElementSet>, StructureError> {
    let n = q.order();
    let mut series = vec![ElementSet::trivial()];
    loop {
        let current = series.last().unwrap();
        if current.len() == n {
            break;
        }
        let quo = q.quotient(current)?;
        let zq = center(&quo.quotient)?;
        let next =
            ElementSet::new((0..n).filter(|&x| zq.contains(quo.class_of[x])).collect());
        if &next == current {
            break;
        }
        series.push(next);
    }
    Ok(series)
}

/// Central nilpotency: `Class(c)` when the upper central series reaches the
/// whole loop after `c` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilpotencyClass {
    Class(usize),
    NotNilpotent,
}

pub fn nilpotency_class(q: &FiniteLoop) -> Result<NilpotencyClass, StructureError> {
    let series = upper_central_series(q)?;
    if series.last().unwrap().len() == q.order() {
        Ok(NilpotencyClass::Class(series.len() - 1))
    } else {
        Ok(NilpotencyClass::NotNilpotent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{cyclic_group, direct_product, permutation_group_loop, FiniteLoop};
    use crate::perm::Perm;

    fn s3() -> FiniteLoop {
        permutation_group_loop(&[
            Perm::from_images(vec![1, 2, 0]).unwrap(),
            Perm::from_images(vec![1, 0, 2]).unwrap(),
        ])
        .unwrap()
    }

    fn d4() -> FiniteLoop {
        permutation_group_loop(&[
            Perm::from_images(vec![1, 2, 3, 0]).unwrap(),
            Perm::from_images(vec![1, 0, 3, 2]).unwrap(),
        ])
        .unwrap()
    }

    fn order5_fixture() -> FiniteLoop {
        let rows: Vec<Vec<usize>> = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        FiniteLoop::from_table(&rows).unwrap().0
    }

    #[test]
    fn abelian_group_is_its_own_center() {
        let z6 = cyclic_group(6);
        let full = ElementSet::full(6);
        assert_eq!(left_nucleus(&z6), full);
        assert_eq!(middle_nucleus(&z6), full);
        assert_eq!(right_nucleus(&z6), full);
        assert_eq!(nucleus(&z6), full);
        assert_eq!(commutant(&z6), full);
        assert_eq!(center(&z6).unwrap(), full);
        assert_eq!(
            upper_central_series(&z6).unwrap(),
            vec![ElementSet::trivial(), full]
        );
        assert_eq!(nilpotency_class(&z6).unwrap(), NilpotencyClass::Class(1));
    }

    #[test]
    fn centerless_group_is_not_nilpotent() {
        let q = s3();
        assert_eq!(nucleus(&q), ElementSet::full(6)); // groups are associative
        assert_eq!(commutant(&q), ElementSet::trivial());
        assert_eq!(center(&q).unwrap(), ElementSet::trivial());
        assert_eq!(upper_central_series(&q).unwrap(), vec![ElementSet::trivial()]);
        assert_eq!(nilpotency_class(&q).unwrap(), NilpotencyClass::NotNilpotent);
    }

    #[test]
    fn dihedral_group_has_class_two() {
        let q = d4();
        assert_eq!(q.order(), 8);
        let z = center(&q).unwrap();
        assert_eq!(z.len(), 2);
        assert!(q.is_normal(&z).unwrap());
        let series = upper_central_series(&q).unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(series[0], ElementSet::trivial());
        assert_eq!(series[1], z);
        assert_eq!(series[2], ElementSet::full(8));
        // Strictly increasing.
        for w in series.windows(2) {
            assert!(w[0].len() < w[1].len());
            assert!(w[0].is_subset_of(&w[1]));
        }
        assert_eq!(nilpotency_class(&q).unwrap(), NilpotencyClass::Class(2));
    }

    #[test]
    fn series_can_stabilise_strictly_between_bottom_and_top() {
        // S3 x Z2: the center is the Z2 factor and the quotient is the
        // centerless S3, so the series stops at size 2.
        let q = direct_product(&s3(), &cyclic_group(2)).unwrap();
        let series = upper_central_series(&q).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[1].len(), 2);
        assert_eq!(nilpotency_class(&q).unwrap(), NilpotencyClass::NotNilpotent);
    }

    #[test]
    fn nonassociative_fixture_has_trivial_structure() {
        let q = order5_fixture();
        assert_eq!(center(&q).unwrap(), ElementSet::trivial());
        assert_eq!(nilpotency_class(&q).unwrap(), NilpotencyClass::NotNilpotent);
        // Nuclei of the fixture are subloops.
        for s in [left_nucleus(&q), middle_nucleus(&q), right_nucleus(&q)] {
            assert!(q.is_subloop(&s));
        }
    }

    #[test]
    fn center_is_contained_in_commutant_and_nuclei() {
        for q in [cyclic_group(8), d4(), s3(), order5_fixture()] {
            let z = center(&q).unwrap();
            assert!(z.is_subset_of(&commutant(&q)));
            assert!(z.is_subset_of(&left_nucleus(&q)));
            assert!(z.is_subset_of(&middle_nucleus(&q)));
            assert!(z.is_subset_of(&right_nucleus(&q)));
            assert!(q.is_normal(&z).unwrap());
        }
    }

    #[test]
    fn trivial_loop_has_class_zero() {
        let one = cyclic_group(1);
        assert_eq!(nilpotency_class(&one).unwrap(), NilpotencyClass::Class(0));
        assert_eq!(upper_central_series(&one).unwrap(), vec![ElementSet::trivial()]);
    }
}
