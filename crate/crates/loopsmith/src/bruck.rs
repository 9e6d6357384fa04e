//! The Bruck loop associated to a uniquely 2-divisible commutative
//! automorphic loop, and the identity suites surrounding it.
//!
//! For such a loop `(Q, .)` the derived operation
//!
//! ```text
//! x o y = sqrt((y^2) P_x)          where P_x = L_x L_{x^-1}^-1
//! ```
//!
//! yields a Bruck loop `(Q, o)`: a left Bol loop with the automorphic
//! inverse property, sharing all powers with `(Q, .)`. The central theorem
//! verified here is that the upper central series of the two loops coincide
//! term by term; the center of `(Q, o)` is further characterised in two
//! independent ways (commutant intersected with the right nucleus, and
//! commutation of the `P` maps).
//!
//! Two executable identity suites accompany the construction. The base suite
//! checks the defining equational consequences of commutativity plus the
//! automorphic property (no 2-divisibility needed). The central-element
//! suite checks, for every `a` in the center of `(Q, o)`, the identity chain
//! leading from the `P`-map calculus to `Z(Q, o) = Z(Q, .)`. Failures
//! report the name of the identity and the first violating tuple.

use crate::inner::{l_map, left_translation};
use crate::loops::{ElementSet, FiniteLoop, LoopError};
use crate::perm::Perm;
use crate::structure::{
    center, commutant, left_nucleus, middle_nucleus, right_nucleus, upper_central_series,
    StructureError,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruckError {
    #[error("squaring is not a bijection: {x} and {y} share a square")]
    NotDivisible { x: usize, y: usize },
    #[error("the two factorizations of P({x}) disagree")]
    FactorizationMismatch { x: usize },
    #[error("left Bol identity fails at ({x}, {y}, {z})")]
    BolFailure { x: usize, y: usize, z: usize },
    #[error("automorphic inverse property fails at ({x}, {y})")]
    AipFailure { x: usize, y: usize },
    #[error("powers of {x} diverge between the two operations at exponent {k}")]
    PowerMismatch { x: usize, k: usize },
    #[error("identity {name:?} fails at {tuple:?}")]
    IdentityFailure { name: &'static str, tuple: Vec<usize> },
    #[error("derived operation is not a loop: {0}")]
    NotALoop(String),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Square-root lookup for a loop whose squaring map is a bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtTable {
    sqrt: Vec<usize>,
}

impl SqrtTable {
    /// The unique `y` with `y * y == x`.
    pub fn sqrt(&self, x: usize) -> usize {
        self.sqrt[x]
    }

    pub fn len(&self) -> usize {
        self.sqrt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sqrt.is_empty()
    }
}

/// Checks that squaring is a bijection and returns its inverse table;
/// reports a colliding pair otherwise.
pub fn unique_2_divisible(q: &FiniteLoop) -> Result<SqrtTable, BruckError> {
    let n = q.order();
    let mut sqrt = vec![usize::MAX; n];
    for x in 0..n {
        let s = q.mul(x, x);
        if sqrt[s] != usize::MAX {
            return Err(BruckError::NotDivisible { x: sqrt[s], y: x });
        }
        sqrt[s] = x;
    }
    Ok(SqrtTable { sqrt })
}

/// The permutation `P_x`, computed as `L_x L_{x^-1}^-1` and independently as
/// `L_{x^-1}^-1 L_x`; the two must agree.
pub fn p_map(q: &FiniteLoop, x: usize) -> Result<Perm, BruckError> {
    let l = left_translation(q, x);
    let li = left_translation(q, q.inverse(x)).invert();
    let a = l.compose(&li);
    let b = li.compose(&l);
    if a != b {
        return Err(BruckError::FactorizationMismatch { x });
    }
    Ok(a)
}

fn all_p_maps(q: &FiniteLoop) -> Result<Vec<Perm>, BruckError> {
    (0..q.order()).map(|x| p_map(q, x)).collect()
}

/// Builds `(Q, o)` with `x o y = sqrt((y^2) P_x)` and validates it: the
/// table must be a loop with the same identity, satisfy the left Bol
/// identity and the automorphic inverse property exhaustively, be left power
/// alternative, and share all powers with `(Q, .)`.
pub fn bruck_associate(q: &FiniteLoop, s: &SqrtTable) -> Result<FiniteLoop, BruckError> {
    let n = q.order();
    let pmaps = all_p_maps(q)?;
    let mut rows = vec![vec![0usize; n]; n];
    for (x, row) in rows.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = s.sqrt(pmaps[x].apply(q.mul(y, y)));
        }
    }
    let (circ, relabel) =
        FiniteLoop::from_table(&rows).map_err(|e| BruckError::NotALoop(e.to_string()))?;
    if relabel.is_some() {
        return Err(BruckError::NotALoop("identity element moved".into()));
    }

    // Left Bol identity: (x o (y o x)) o z = x o (y o (x o z)).
    for x in 0..n {
        for y in 0..n {
            let left_base = circ.mul(x, circ.mul(y, x));
            for z in 0..n {
                let lhs = circ.mul(left_base, z);
                let rhs = circ.mul(x, circ.mul(y, circ.mul(x, z)));
                if lhs != rhs {
                    return Err(BruckError::BolFailure { x, y, z });
                }
            }
        }
    }
    // Automorphic inverse property: (x o y)^-1 = x^-1 o y^-1.
    for x in 0..n {
        for y in 0..n {
            if circ.inverse(circ.mul(x, y)) != circ.mul(circ.inverse(x), circ.inverse(y)) {
                return Err(BruckError::AipFailure { x, y });
            }
        }
    }
    // Powers coincide with the base loop up to the exponent.
    let e = q.exponent()?;
    for x in 0..n {
        for k in 0..=e {
            if q.power(x, k as i64) != circ.power(x, k as i64) {
                return Err(BruckError::PowerMismatch { x, k });
            }
        }
    }
    // Left power alternative: the n-th power of a left translation is the
    // left translation of the n-th power.
    for x in 0..n {
        let lx = left_translation(&circ, x);
        for k in 0..=e {
            if lx.pow(k as i64) != left_translation(&circ, circ.power(x, k as i64)) {
                return Err(BruckError::IdentityFailure {
                    name: "Lo(x)^k = Lo(x^k)",
                    tuple: vec![x, k],
                });
            }
        }
    }
    Ok(circ)
}

fn fail(name: &'static str, tuple: Vec<usize>) -> BruckError {
    BruckError::IdentityFailure { name, tuple }
}

/// Exhaustively checks the equational consequences of being a commutative
/// automorphic loop (no 2-divisibility required): commutativity itself, the
/// homomorphism property of the inner generators `L(x, y)`, the fixed-point
/// and image identities of `L(y, x)`, inversion compatibilities, the
/// division-permutation square identity, and the `P`-map identities.
/// Returns the first violated identity with its witness tuple.
pub fn verify_base_identities(q: &FiniteLoop) -> Result<(), BruckError> {
    let n = q.order();
    for x in 0..n {
        for y in 0..n {
            if q.mul(x, y) != q.mul(y, x) {
                return Err(fail("xy = yx", vec![x, y]));
            }
        }
    }
    let pmaps = all_p_maps(q)?;
    let inv: Vec<usize> = (0..n).map(|x| q.inverse(x)).collect();
    for x in 0..n {
        // D(x^2) = D(x) J D(x): y \ x^2 = ((y \ x)^-1) \ x for all y.
        let x2 = q.mul(x, x);
        for y in 0..n {
            if q.ldiv(y, x2) != q.ldiv(inv[q.ldiv(y, x)], x) {
                return Err(fail("D(x^2) = D(x)JD(x)", vec![x, y]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = q.mul(x, y);
            // xL(y,x) = x.
            if q.ldiv(xy, q.mul(x, q.mul(y, x))) != x {
                return Err(fail("xL(y,x) = x", vec![x, y]));
            }
            // yL(y,x) = ((xy)\x)^-1.
            if q.ldiv(xy, q.mul(x, q.mul(y, y))) != inv[q.ldiv(xy, x)] {
                return Err(fail("yL(y,x) = ((xy)\\x)^-1", vec![x, y]));
            }
            // (xy)^-1 = x^-1 y^-1 and (x\y)^-1 = x^-1 \ y^-1.
            if inv[xy] != q.mul(inv[x], inv[y]) {
                return Err(fail("(xy)^-1 = x^-1 y^-1", vec![x, y]));
            }
            if inv[q.ldiv(x, y)] != q.ldiv(inv[x], inv[y]) {
                return Err(fail("(x\\y)^-1 = x^-1\\y^-1", vec![x, y]));
            }
            // (x^-1)P(xy) = xy^2.
            if pmaps[xy].apply(inv[x]) != q.mul(x, q.mul(y, y)) {
                return Err(fail("(x^-1)P(xy) = xy^2", vec![x, y]));
            }
            // x(xP(y)) = (xy)^2.
            if q.mul(x, pmaps[y].apply(x)) != q.mul(xy, xy) {
                return Err(fail("x(xP(y)) = (xy)^2", vec![x, y]));
            }
        }
    }
    for x in 0..n {
        let lxi = left_translation(q, inv[x]);
        for y in 0..n {
            let m = l_map(q, y, x);
            // L(y,x) L(x^-1) = L(x^-1) L(y,x).
            let ab = m.compose(&lxi);
            let ba = lxi.compose(&m);
            if ab != ba {
                let z = (0..n).find(|&z| ab.apply(z) != ba.apply(z)).unwrap();
                return Err(fail("L(y,x)L(x^-1) = L(x^-1)L(y,x)", vec![x, y, z]));
            }
            // L(x^-1, y^-1) = L(x, y).
            let direct = l_map(q, x, y);
            let inverted = l_map(q, inv[x], inv[y]);
            if direct != inverted {
                let z = (0..n)
                    .find(|&z| direct.apply(z) != inverted.apply(z))
                    .unwrap();
                return Err(fail("L(x^-1,y^-1) = L(x,y)", vec![x, y, z]));
            }
            // (uv)L(x,y) = uL(x,y) * vL(x,y).
            for u in 0..n {
                let mu = direct.apply(u);
                for v in 0..n {
                    if direct.apply(q.mul(u, v)) != q.mul(mu, direct.apply(v)) {
                        return Err(fail("(uv)L(x,y) = uL(x,y) vL(x,y)", vec![x, y, u, v]));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Outcome of `verify_centers_theorem`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentersReport {
    pub series_dot: Vec<ElementSet>,
    pub series_circ: Vec<ElementSet>,
    /// The two upper central series agree term by term.
    pub series_equal: bool,
    /// `Z(Q, o)` equals the set of `a` whose `P_a` commutes with every `P_x`.
    pub center_by_p_commutation: bool,
    /// `Z(Q, o)` equals the commutant of `(Q, o)` intersected with its right
    /// nucleus.
    pub center_decomposition: bool,
    /// Left and middle nuclei of `(Q, o)` coincide and equal its center.
    pub bol_nuclei_coincide: bool,
    /// Every element of `Z(Q, .)` has a `P` map commuting with all `P_x`
    /// (one inclusion, independently of the series computation).
    pub dot_center_p_commutes: bool,
    /// `Z(Q, o)` is contained in `Z(Q, .)` (the other inclusion).
    pub circ_center_within_dot: bool,
}

impl CentersReport {
    pub fn all_ok(&self) -> bool {
        self.series_equal
            && self.center_by_p_commutation
            && self.center_decomposition
            && self.bol_nuclei_coincide
            && self.dot_center_p_commutes
            && self.circ_center_within_dot
    }
}

/// Verifies that the upper central series of `(Q, .)` and `(Q, o)` coincide,
/// along with the independent characterisations of `Z(Q, o)`.
pub fn verify_centers_theorem(q: &FiniteLoop) -> Result<CentersReport, BruckError> {
    let sqrt = unique_2_divisible(q)?;
    let circ = bruck_associate(q, &sqrt)?;
    let series_dot = upper_central_series(q)?;
    let series_circ = upper_central_series(&circ)?;
    let series_equal = series_dot == series_circ;

    let z_dot = center(q)?;
    let z_circ = center(&circ)?;
    let pmaps = all_p_maps(q)?;
    let n = q.order();
    let p_commuting = ElementSet::new(
        (0..n)
            .filter(|&a| (0..n).all(|x| pmaps[a].compose(&pmaps[x]) == pmaps[x].compose(&pmaps[a])))
            .collect(),
    );
    let center_by_p_commutation = p_commuting == z_circ;
    let center_decomposition = z_circ == commutant(&circ).intersection(&right_nucleus(&circ));
    let ln = left_nucleus(&circ);
    let bol_nuclei_coincide = ln == middle_nucleus(&circ) && ln == z_circ;
    let dot_center_p_commutes = z_dot.is_subset_of(&p_commuting);
    let circ_center_within_dot = z_circ.is_subset_of(&z_dot);

    Ok(CentersReport {
        series_dot,
        series_circ,
        series_equal,
        center_by_p_commutation,
        center_decomposition,
        bol_nuclei_coincide,
        dot_center_p_commutes,
        circ_center_within_dot,
    })
}

/// Outcome of `verify_center_identity_suite`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterSuiteReport {
    /// Size of `Z(Q, o)`, the set the suite quantifies over.
    pub center_size: usize,
    /// True when that center is trivial, so the suite only exercised the
    /// identity element.
    pub vacuous: bool,
    /// Number of individual identity instances checked.
    pub checks_run: usize,
}

/// For every `a` in `Z(Q, o)` and every `x`, exhaustively checks the
/// identity chain relating the two operations: the two `L(a\x, a)`-type
/// images agree, division into the inverse matches, `x^-1 (x P_a) = a^2`,
/// the translations of `a` coincide in both loops and are power alternative,
/// `P` is multiplicative at `a`, `a^2` is central in `(Q, .)`, and `a`
/// itself is central in `(Q, .)`.
pub fn verify_center_identity_suite(q: &FiniteLoop) -> Result<CenterSuiteReport, BruckError> {
    let n = q.order();
    let sqrt = unique_2_divisible(q)?;
    let circ = bruck_associate(q, &sqrt)?;
    let z_circ = center(&circ)?;
    let z_dot = center(q)?;
    let pmaps = all_p_maps(q)?;
    let e = q.exponent()?;
    let inv: Vec<usize> = (0..n).map(|x| q.inverse(x)).collect();
    // Pointwise L(u, v) application: z -> (vu) \ (v (u z)).
    let l_apply = |u: usize, v: usize, z: usize| q.ldiv(q.mul(v, u), q.mul(v, q.mul(u, z)));
    let mut checks_run = 0usize;

    for a in z_circ.iter() {
        let a2 = q.mul(a, a);
        if !z_dot.contains(a2) {
            return Err(fail("a^2 is central in the base loop", vec![a]));
        }
        if !z_dot.contains(a) {
            return Err(fail("circle center lies in the base center", vec![a]));
        }
        let la_dot = left_translation(q, a);
        let la_circ = left_translation(&circ, a);
        if la_dot != la_circ {
            let x = (0..n).find(|&x| la_dot.apply(x) != la_circ.apply(x)).unwrap();
            return Err(fail("L(a) = Lo(a)", vec![a, x]));
        }
        for k in 0..=e {
            if la_dot.pow(k as i64) != left_translation(q, q.power(a, k as i64)) {
                return Err(fail("L(a)^k = L(a^k)", vec![a, k]));
            }
        }
        checks_run += 3 + e;
        for x in 0..n {
            // x L(a\x, a) = x L(a\x^-1, a).
            if l_apply(q.ldiv(a, x), a, x) != l_apply(q.ldiv(a, inv[x]), a, x) {
                return Err(fail("xL(a\\x,a) = xL(a\\x^-1,a)", vec![a, x]));
            }
            // (a\x) L(a\x^-1, a) = (x\a)^-1.
            if l_apply(q.ldiv(a, inv[x]), a, q.ldiv(a, x)) != inv[q.ldiv(x, a)] {
                return Err(fail("(a\\x)L(a\\x^-1,a) = (x\\a)^-1", vec![a, x]));
            }
            // x^-1 (x P(a)) = a^2.
            if q.mul(inv[x], pmaps[a].apply(x)) != a2 {
                return Err(fail("x^-1(xP(a)) = a^2", vec![a, x]));
            }
            // P(xa) = P(x) P(a).
            if pmaps[q.mul(x, a)] != pmaps[x].compose(&pmaps[a]) {
                return Err(fail("P(xa) = P(x)P(a)", vec![a, x]));
            }
            checks_run += 4;
        }
    }
    Ok(CenterSuiteReport {
        center_size: z_circ.len(),
        vacuous: z_circ.len() == 1,
        checks_run,
    })
}
