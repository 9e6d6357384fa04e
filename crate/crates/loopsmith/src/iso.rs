//! Loop isomorphism testing and classification of the plane-based families.
//!
//! `are_isomorphic` is exact: it prunes with isomorphism-invariant
//! fingerprints and per-element local invariants, then backtracks over the
//! images of a small greedily-chosen generating set, propagating the partial
//! map through products; any witness found is re-verified exhaustively, so
//! there are no false positives and the search is complete, so there are no
//! false negatives.
//!
//! Classification of the order-`p^3` plane loops leans on two explicit
//! isomorphism families instead of blind search: scaling the plane matrix
//! (`A -> cA`, with `(a, x) -> (c^-1 a, x)`) and conjugating it
//! (`A -> D^-1 A D`, with `(a, x) -> (a, x D)`). Both are constructed as
//! permutations and re-verified exhaustively per member, so every matrix is
//! *provably* isomorphic to its class representative; distinctness of the
//! representatives is then settled by the exact search. Matrices are grouped
//! by the orbit of their characteristic polynomial `(trace, det)` under
//! `(t, d) -> (ct, c^2 d)`, which is exactly the reach of those two families
//! (matrices sharing an irreducible characteristic polynomial are conjugate).

use crate::gf::{Fp, GfError, Mat2, PlaneType};
use crate::loops::{FiniteLoop, LoopError};
use crate::perm::Perm;
use crate::qa::{QaError, QaParams};
use crate::structure::{
    center, commutant, left_nucleus, middle_nucleus, right_nucleus, StructureError,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("classification at p = {p} exceeds the configured ceiling {ceiling}")]
    CeilingExceeded { p: u32, ceiling: u32 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Qa(#[from] QaError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Isomorphism-invariant summary of a loop. Equal fingerprints are necessary
/// (not sufficient) for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub commutative: bool,
    pub power_associative: bool,
    /// None when some element has no well-defined order.
    pub exponent: Option<usize>,
    /// Sorted (order, multiplicity); order 0 collects elements with no
    /// well-defined order.
    pub element_orders: Vec<(usize, usize)>,
    pub left_nucleus_size: usize,
    pub middle_nucleus_size: usize,
    pub right_nucleus_size: usize,
    pub commutant_size: usize,
    pub center_size: usize,
    /// Sorted fixed-point counts of the conjugation-defect generators `T(x)`.
    pub t_fixed_points: Vec<usize>,
    /// Sorted per-element counts of associating pairs
    /// `|{(y, z) : (xy)z = x(yz)}|`.
    pub associativity_profile: Vec<usize>,
}

/// Per-element invariants used to filter candidate images during the
/// backtracking search. Isomorphisms preserve each component.
fn local_invariants(q: &FiniteLoop) -> Vec<(usize, usize, usize, usize, usize)> {
    let n = q.order();
    (0..n)
        .map(|x| {
            let order = q.element_order(x).unwrap_or(0);
            let t_fixed = (0..n).filter(|&y| q.ldiv(x, q.mul(y, x)) == y).count();
            let assoc = (0..n)
                .map(|y| {
                    let xy = q.mul(x, y);
                    (0..n).filter(|&z| q.mul(xy, z) == q.mul(x, q.mul(y, z))).count()
                })
                .sum();
            let commutes = (0..n).filter(|&y| q.mul(x, y) == q.mul(y, x)).count();
            let square_roots = (0..n).filter(|&y| q.mul(y, y) == x).count();
            (order, t_fixed, assoc, commutes, square_roots)
        })
        .collect()
}

pub fn fingerprint(q: &FiniteLoop) -> Fingerprint {
    let n = q.order();
    let orders: Vec<usize> = (0..n).map(|x| q.element_order(x).unwrap_or(0)).collect();
    let power_associative = orders.iter().all(|&o| o != 0);
    let exponent = if power_associative { q.exponent().ok() } else { None };
    let mut element_orders: Vec<(usize, usize)> = Vec::new();
    {
        let mut sorted = orders.clone();
        sorted.sort_unstable();
        for o in sorted {
            match element_orders.last_mut() {
                Some((v, c)) if *v == o => *c += 1,
                _ => element_orders.push((o, 1)),
            }
        }
    }
    let mut t_fixed_points: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| q.ldiv(x, q.mul(y, x)) == y).count())
        .collect();
    t_fixed_points.sort_unstable();
    let mut associativity_profile: Vec<usize> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let xy = q.mul(x, y);
                    (0..n).filter(|&z| q.mul(xy, z) == q.mul(x, q.mul(y, z))).count()
                })
                .sum()
        })
        .collect();
    associativity_profile.sort_unstable();
    Fingerprint {
        order: n,
        commutative: q.is_commutative(),
        power_associative,
        exponent,
        element_orders,
        left_nucleus_size: left_nucleus(q).len(),
        middle_nucleus_size: middle_nucleus(q).len(),
        right_nucleus_size: right_nucleus(q).len(),
        commutant_size: commutant(q).len(),
        center_size: center(q).map(|z| z.len()).unwrap_or(0),
        t_fixed_points,
        associativity_profile,
    }
}

/// Greedy small generating sequence: repeatedly add the element whose
/// addition grows the generated subloop the most (smallest index on ties).
fn generating_sequence(q: &FiniteLoop) -> Vec<usize> {
    let n = q.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = q.subloop_generated(&gens);
    while closure.len() < n {
        let mut best: Option<(usize, usize)> = None; // (gain, element)
        for x in 0..n {
            if closure.contains(x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = q.subloop_generated(&trial).len();
            if best.map_or(true, |(g, _)| size > g) {
                best = Some((size, x));
            }
        }
        let (_, x) = best.expect("closure below n leaves candidates");
        gens.push(x);
        closure = q.subloop_generated(&gens);
    }
    gens
}

struct MapState {
    map: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
}

impl MapState {
    fn checkpoint(&self) -> usize {
        self.mapped.len()
    }

    fn rollback(&mut self, checkpoint: usize) {
        while self.mapped.len() > checkpoint {
            let x = self.mapped.pop().unwrap();
            let img = self.map[x];
            self.map[x] = usize::MAX;
            self.used[img] = false;
        }
    }
}

/// Assigns `g -> img` and closes the partial map under products. Returns
/// false (leaving a partial trail for the caller to roll back) on any
/// inconsistency.
fn try_extend(
    q1: &FiniteLoop,
    q2: &FiniteLoop,
    inv1: &[(usize, usize, usize, usize, usize)],
    inv2: &[(usize, usize, usize, usize, usize)],
    st: &mut MapState,
    g: usize,
    img: usize,
) -> bool {
    if st.used[img] || inv1[g] != inv2[img] {
        return false;
    }
    st.map[g] = img;
    st.used[img] = true;
    st.mapped.push(g);
    let mut head = st.mapped.len() - 1;
    while head < st.mapped.len() {
        let a = st.mapped[head];
        head += 1;
        let mut idx = 0;
        while idx < st.mapped.len() {
            let b = st.mapped[idx];
            idx += 1;
            for (c, c_img) in [
                (q1.mul(a, b), q2.mul(st.map[a], st.map[b])),
                (q1.mul(b, a), q2.mul(st.map[b], st.map[a])),
            ] {
                if st.map[c] == usize::MAX {
                    if st.used[c_img] || inv1[c] != inv2[c_img] {
                        return false;
                    }
                    st.map[c] = c_img;
                    st.used[c_img] = true;
                    st.mapped.push(c);
                } else if st.map[c] != c_img {
                    return false;
                }
            }
        }
    }
    true
}

fn search_images(
    q1: &FiniteLoop,
    q2: &FiniteLoop,
    inv1: &[(usize, usize, usize, usize, usize)],
    inv2: &[(usize, usize, usize, usize, usize)],
    gens: &[usize],
    gi: usize,
    st: &mut MapState,
) -> bool {
    if gi == gens.len() {
        return st.mapped.len() == q1.order();
    }
    let g = gens[gi];
    if st.map[g] != usize::MAX {
        return search_images(q1, q2, inv1, inv2, gens, gi + 1, st);
    }
    for img in 0..q2.order() {
        let cp = st.checkpoint();
        if try_extend(q1, q2, inv1, inv2, st, g, img)
            && search_images(q1, q2, inv1, inv2, gens, gi + 1, st)
        {
            return true;
        }
        st.rollback(cp);
    }
    false
}

/// Verifies that `map` is a loop isomorphism from `q1` to `q2`.
pub fn is_isomorphism(q1: &FiniteLoop, q2: &FiniteLoop, map: &Perm) -> bool {
    let n = q1.order();
    if q2.order() != n || map.degree() != n {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if map.apply(q1.mul(x, y)) != q2.mul(map.apply(x), map.apply(y)) {
                return false;
            }
        }
    }
    true
}

/// Exact isomorphism test; returns an exhaustively verified witness when the
/// loops are isomorphic and `None` otherwise.
pub fn are_isomorphic(q1: &FiniteLoop, q2: &FiniteLoop) -> Option<Perm> {
    let n = q1.order();
    if q2.order() != n {
        return None;
    }
    if n == 1 {
        return Some(Perm::identity(1));
    }
    if fingerprint(q1) != fingerprint(q2) {
        return None;
    }
    let inv1 = local_invariants(q1);
    let inv2 = local_invariants(q2);
    {
        let mut s1 = inv1.clone();
        let mut s2 = inv2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
    }
    let gens = generating_sequence(q1);
    let mut st = MapState {
        map: vec![usize::MAX; n],
        used: vec![false; n],
        mapped: Vec::with_capacity(n),
    };
    // The identity must map to the identity.
    st.map[0] = 0;
    st.used[0] = true;
    st.mapped.push(0);
    if !search_images(q1, q2, &inv1, &inv2, &gens, 0, &mut st) {
        return None;
    }
    let witness = Perm::from_images(st.map).expect("search produces bijections");
    assert!(is_isomorphism(q1, q2, &witness), "search produced an invalid witness");
    Some(witness)
}

/// How thoroughly a classification result was validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    /// Every matrix was explicitly proven isomorphic to its class
    /// representative and the representatives proven pairwise distinct.
    Verified,
    /// Same construction, but beyond the range for which the engine promises
    /// exhaustive validation; treat as evidence.
    Evidence,
}

/// One isomorphism class of plane loops at a fixed prime.
#[derive(Debug, Clone)]
pub struct QaClass {
    pub plane_type: PlaneType,
    /// Orbit of characteristic polynomials `(trace, det)` covered by the
    /// class, sorted.
    pub char_poly_orbit: Vec<(u32, u32)>,
    /// Companion matrix of the smallest `(trace, det)` in the orbit.
    pub representative: Mat2,
    /// Number of anisotropic matrices whose loop lands in this class.
    pub member_count: usize,
    /// Lexicographically smallest member table.
    pub table: FiniteLoop,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub p: u32,
    pub classes: Vec<QaClass>,
    pub confidence: Confidence,
    pub anisotropic_matrix_count: usize,
}

pub const DEFAULT_CLASSIFY_CEILING: u32 = 5;

/// Whether `lambda^2 - t lambda + d` has no root in GF(p).
fn pair_is_irreducible(p: u32, t: u32, d: u32) -> bool {
    for lam in 0..p as u64 {
        let val = (lam * lam + (d as u64) + (p as u64 * p as u64) - (t as u64) * lam) % p as u64;
        if val == 0 {
            return false;
        }
    }
    true
}

fn companion(p: u32, t: u32, d: u32) -> Result<Mat2, GfError> {
    Mat2::new([0, 1, -(d as i64), t as i64], p)
}

fn pair_type(p: u32, t: u32, d: u32) -> PlaneType {
    if t == 0 {
        PlaneType::One
    } else {
        let table = crate::gf::residue_table(p);
        if table[d as usize] {
            PlaneType::Two
        } else {
            PlaneType::Three
        }
    }
}

/// The explicit isomorphism from the loop of `a` to the loop of the
/// companion matrix of `(t0, d0) = (c tr(a), c^2 det(a))`: scale by `c`,
/// then rebase onto the cyclic basis `(v, v(cA))` with `v = (1, 0)`.
fn explicit_member_iso(
    a: &Mat2,
    c: Fp,
    rep_params: &QaParams,
    member_params: &QaParams,
) -> Result<Perm, IsoError> {
    let p = a.modulus();
    let scaled = a.scale(c);
    // D has rows (1, 0) and (1, 0) * scaled; anisotropy keeps it invertible.
    let d = Mat2::new(
        [
            1,
            0,
            scaled.entry(0, 0).value() as i64,
            scaled.entry(0, 1).value() as i64,
        ],
        p,
    )?;
    let d_inv = d.inverse()?;
    let c_inv = c.inverse()?;
    let n = member_params.order() as usize;
    let images: Vec<usize> = (0..n)
        .map(|i| {
            let e = member_params.element(i);
            let new_scalar = c_inv.mul(Fp::new(e.scalar as i64, p).unwrap());
            let v = d_inv.apply_row([
                Fp::new(e.vector[0] as i64, p).unwrap(),
                Fp::new(e.vector[1] as i64, p).unwrap(),
            ]);
            rep_params.index(crate::qa::QaElement {
                scalar: new_scalar.value(),
                vector: [v[0].value(), v[1].value()],
            })
        })
        .collect();
    Perm::from_images(images).map_err(|e| IsoError::Internal(e.to_string()))
}

/// Classifies all loops built from anisotropic matrices over GF(p) up to
/// isomorphism. Uses the default ceiling of `p <= 5`.
pub fn classify_qa(p: u32) -> Result<Classification, IsoError> {
    classify_qa_with_ceiling(p, DEFAULT_CLASSIFY_CEILING)
}

pub fn classify_qa_with_ceiling(p: u32, ceiling: u32) -> Result<Classification, IsoError> {
    if p > ceiling {
        return Err(IsoError::CeilingExceeded { p, ceiling });
    }
    // Validates primality as a side effect.
    let _ = Fp::new(0, p)?;
    let verified = p <= 5;

    // 1. Scaling orbits of irreducible characteristic polynomials.
    let mut orbit_of = vec![vec![usize::MAX; p as usize]; p as usize];
    let mut orbits: Vec<Vec<(u32, u32)>> = Vec::new();
    for t in 0..p {
        for d in 0..p {
            if !pair_is_irreducible(p, t, d) || orbit_of[t as usize][d as usize] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = Vec::new();
            for c in 1..p {
                let cf = Fp::new(c as i64, p)?;
                let ct = cf.mul(Fp::new(t as i64, p)?).value();
                let c2d = cf.mul(cf).mul(Fp::new(d as i64, p)?).value();
                if orbit_of[ct as usize][c2d as usize] == usize::MAX {
                    orbit_of[ct as usize][c2d as usize] = id;
                    members.push((ct, c2d));
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
    }
    // Deterministic class order: by smallest (trace, det) pair.
    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by_key(|&i| orbits[i][0]);
    let orbit_rank: Vec<usize> = {
        let mut rank = vec![0; orbits.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        rank
    };
    let orbits: Vec<Vec<(u32, u32)>> = order.iter().map(|&i| orbits[i].clone()).collect();

    // 2. Representatives: companion matrices of the smallest pairs.
    let mut rep_params = Vec::with_capacity(orbits.len());
    let mut rep_loops = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let (t, d) = orbit[0];
        let m = companion(p, t, d)?;
        let params = QaParams::new(m)?;
        rep_loops.push(params.build_loop()?);
        rep_params.push(params);
    }

    // 3. Sweep every matrix; prove membership in its class.
    let mut member_count = vec![0usize; orbits.len()];
    let mut min_table: Vec<Option<FiniteLoop>> = vec![None; orbits.len()];
    let mut anisotropic_matrix_count = 0usize;
    for e0 in 0..p {
        for e1 in 0..p {
            for e2 in 0..p {
                for e3 in 0..p {
                    let m = Mat2::new([e0 as i64, e1 as i64, e2 as i64, e3 as i64], p)?;
                    if !crate::gf::is_anisotropic(&m) {
                        continue;
                    }
                    anisotropic_matrix_count += 1;
                    let (t, d) = (m.trace().value(), m.det().value());
                    let orbit_id = orbit_rank[orbit_of[t as usize][d as usize]];
                    member_count[orbit_id] += 1;
                    // Plane type must be constant across the class.
                    let (t0, d0) = orbits[orbit_id][0];
                    if crate::gf::plane_type(&m)? != pair_type(p, t0, d0) {
                        return Err(IsoError::Internal(format!(
                            "plane type varies within the class of ({t0}, {d0})"
                        )));
                    }
                    if !verified {
                        continue;
                    }
                    // Explicit isomorphism onto the representative, verified
                    // exhaustively.
                    let member_params = QaParams::new(m.clone())?;
                    let member_loop = member_params.build_loop()?;
                    let c = (1..p)
                        .map(|c| Fp::new(c as i64, p).unwrap())
                        .find(|c| {
                            let ct = c.mul(Fp::new(t as i64, p).unwrap()).value();
                            let c2d = c.mul(*c).mul(Fp::new(d as i64, p).unwrap()).value();
                            (ct, c2d) == (t0, d0)
                        })
                        .ok_or_else(|| {
                            IsoError::Internal("no scaling reaches the orbit representative".into())
                        })?;
                    let phi = explicit_member_iso(&m, c, &rep_params[orbit_id], &member_params)?;
                    if !is_isomorphism(&member_loop, &rep_loops[orbit_id], &phi) {
                        return Err(IsoError::Internal(format!(
                            "explicit isomorphism failed for matrix {:?}",
                            m.values()
                        )));
                    }
                    let better = match &min_table[orbit_id] {
                        None => true,
                        Some(best) => member_loop.rows() < best.rows(),
                    };
                    if better {
                        min_table[orbit_id] = Some(member_loop);
                    }
                }
            }
        }
    }

    // 4. Representatives are pairwise non-isomorphic.
    for i in 0..rep_loops.len() {
        for j in (i + 1)..rep_loops.len() {
            if are_isomorphic(&rep_loops[i], &rep_loops[j]).is_some() {
                return Err(IsoError::Internal(format!(
                    "distinct classes {i} and {j} are isomorphic"
                )));
            }
        }
    }

    let classes: Vec<QaClass> = orbits
        .iter()
        .enumerate()
        .map(|(i, orbit)| {
            let (t0, d0) = orbit[0];
            QaClass {
                plane_type: pair_type(p, t0, d0),
                char_poly_orbit: orbit.clone(),
                representative: rep_params[i].matrix().clone(),
                member_count: member_count[i],
                table: min_table[i].take().unwrap_or_else(|| rep_loops[i].clone()),
            }
        })
        .collect();
    Ok(Classification {
        p,
        classes,
        confidence: if verified { Confidence::Verified } else { Confidence::Evidence },
        anisotropic_matrix_count,
    })
}
