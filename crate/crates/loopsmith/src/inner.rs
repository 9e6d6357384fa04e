//! Translations, inner mappings, and multiplication groups of a loop.
//!
//! Permutations act on the right throughout, so a product of mappings applies
//! left factor first. The three standard families of inner mapping
//! generators are
//!
//! * `T(x) = R_x L_x^-1`, measuring deviation from commuting with `x`,
//! * `L(x, y) = L_x L_y L_{yx}^-1`, the left-translation defect,
//! * `R(x, y) = R_x R_y R_{xy}^-1`, the right-translation defect,
//!
//! which together generate the stabiliser of the identity inside the
//! multiplication group. A loop is automorphic when every one of these
//! generators is an automorphism of the table.

use crate::loops::FiniteLoop;
use crate::perm::{group_order, Perm, PermError};
use num_bigint::BigUint;
use std::collections::HashSet;

/// Which of the three generator families an inner mapping came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerTag {
    /// `T(x)`: conjugation-like defect at `x`.
    T(usize),
    /// `L(x, y)`: left-translation defect at the pair.
    L(usize, usize),
    /// `R(x, y)`: right-translation defect at the pair.
    R(usize, usize),
}

/// The permutation `y -> x * y`.
pub fn left_translation(q: &FiniteLoop, x: usize) -> Perm {
    Perm::from_images((0..q.order()).map(|y| q.mul(x, y)).collect())
        .expect("rows of a Latin square are bijections")
}

/// The permutation `y -> y * x`.
pub fn right_translation(q: &FiniteLoop, x: usize) -> Perm {
    Perm::from_images((0..q.order()).map(|y| q.mul(y, x)).collect())
        .expect("columns of a Latin square are bijections")
}

/// `T(x)` as a permutation: `y -> x \ (y * x)`.
pub fn t_map(q: &FiniteLoop, x: usize) -> Perm {
    Perm::from_images((0..q.order()).map(|y| q.ldiv(x, q.mul(y, x))).collect())
        .expect("composition of bijections")
}

/// `L(x, y)` as a permutation: `z -> (yx) \ (y (x z))`.
pub fn l_map(q: &FiniteLoop, x: usize, y: usize) -> Perm {
    let yx = q.mul(y, x);
    Perm::from_images(
        (0..q.order())
            .map(|z| q.ldiv(yx, q.mul(y, q.mul(x, z))))
            .collect(),
    )
    .expect("composition of bijections")
}

/// `R(x, y)` as a permutation: `z -> ((z x) y) / (xy)`.
pub fn r_map(q: &FiniteLoop, x: usize, y: usize) -> Perm {
    let xy = q.mul(x, y);
    Perm::from_images(
        (0..q.order())
            .map(|z| q.rdiv(q.mul(q.mul(z, x), y), xy))
            .collect(),
    )
    .expect("composition of bijections")
}

/// All standard inner mapping generators, tagged by family and parameters.
/// Includes the trivial parameter choices, so the list always starts with
/// identity permutations; callers wanting distinct permutations can dedup.
pub fn inner_generators(q: &FiniteLoop) -> Vec<(InnerTag, Perm)> {
    let n = q.order();
    let mut out = Vec::with_capacity(n + 2 * n * n);
    for x in 0..n {
        out.push((InnerTag::T(x), t_map(q, x)));
    }
    for x in 0..n {
        for y in 0..n {
            out.push((InnerTag::L(x, y), l_map(q, x, y)));
        }
    }
    for x in 0..n {
        for y in 0..n {
            out.push((InnerTag::R(x, y), r_map(q, x, y)));
        }
    }
    out
}

/// The distinct permutations among the inner mapping generators.
pub fn distinct_inner_generators(q: &FiniteLoop) -> Vec<Perm> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for (_, p) in inner_generators(q) {
        if seen.insert(p.images().to_vec()) {
            out.push(p);
        }
    }
    out
}

/// Whether `p` is an automorphism of the loop: a bijection with
/// `p(x y) = p(x) p(y)` for all pairs.
pub fn is_automorphism(q: &FiniteLoop, p: &Perm) -> bool {
    let n = q.order();
    if p.degree() != n {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if p.apply(q.mul(x, y)) != q.mul(p.apply(x), p.apply(y)) {
                return false;
            }
        }
    }
    true
}

/// Whether every inner mapping generator is an automorphism.
pub fn is_automorphic(q: &FiniteLoop) -> bool {
    first_non_automorphism(q).is_none()
}

/// The first tagged inner generator that fails to be an automorphism, if any.
pub fn first_non_automorphism(q: &FiniteLoop) -> Option<InnerTag> {
    for (tag, p) in inner_generators(q) {
        if !is_automorphism(q, &p) {
            return Some(tag);
        }
    }
    None
}

/// Order of the multiplication group, generated by all translations.
pub fn multiplication_group_order(q: &FiniteLoop) -> Result<BigUint, PermError> {
    let n = q.order();
    let mut gens = Vec::with_capacity(2 * n);
    for x in 0..n {
        gens.push(left_translation(q, x));
        gens.push(right_translation(q, x));
    }
    group_order(&gens)
}

/// Order of the inner mapping group, generated by the tagged generators.
pub fn inner_mapping_group_order(q: &FiniteLoop) -> Result<BigUint, PermError> {
    group_order(&distinct_inner_generators(q))
}
