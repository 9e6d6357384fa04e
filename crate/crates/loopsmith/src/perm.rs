//! Permutations of `{0, .., n-1}` acting on the right, and exact permutation
//! group orders via a deterministic Schreier–Sims stabilizer chain.
//!
//! Right action means `compose(f, g)` applies `f` first and `g` second, so
//! mapping diagrams read left to right. Group orders are returned as big
//! integers: a stabilizer chain multiplies one orbit length per base point,
//! and the product can exceed any fixed-width integer even at moderate
//! degrees.

use num_bigint::BigUint;
use std::collections::HashSet;
use thiserror::Error;

/// Errors from permutation construction and group computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image list is not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A permutation stored as its image list: `i` maps to `images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    /// Validates that `images` hits every point exactly once.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(PermError::NotABijection(n));
            }
            seen[img] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// `self` first, then `g`.
    ///
    /// # Panics
    /// Panics if the degrees differ.
    pub fn compose(&self, g: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            g.degree(),
            "compose: degree mismatch {} vs {}",
            self.degree(),
            g.degree()
        );
        Perm {
            images: self.images.iter().map(|&i| g.images[i]).collect(),
        }
    }

    pub fn invert(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Perm { images }
    }

    /// Composes `self` with itself `k` times; `k = 0` gives the identity and
    /// negative `k` powers the inverse.
    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i == img)
            .map(|(i, _)| i)
            .collect()
    }
}

/// One level of a stabilizer chain: a base point plus the orbit of that point
/// and a transversal of coset representatives (`transversal[q]` maps the base
/// point to `q`). The generators live in a shared pool on the chain; level
/// `i`'s orbit is always computed under every pool generator inserted at
/// level `i` *or deeper*, since those all fix the earlier base points.
struct ChainLevel {
    base: usize,
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

struct StabChain {
    degree: usize,
    /// All generators ever inserted, tagged with their insertion level.
    pool: Vec<(usize, Perm)>,
    levels: Vec<ChainLevel>,
}

impl StabChain {
    fn build(gens: &[Perm], degree: usize) -> StabChain {
        let mut chain = StabChain { degree, pool: Vec::new(), levels: Vec::new() };
        for g in gens {
            if let Some((level, residue)) = chain.sift_residue(0, g.clone()) {
                chain.add_generator(level, residue);
                chain.close();
            }
        }
        chain
    }

    /// Sifts `g` through levels `from..`, returning the level index at which
    /// a nonidentity residue got stuck, if any. A `None` result is a proof of
    /// membership in the group generated below `from`, independent of whether
    /// orbits are currently up to date.
    fn sift_residue(&self, from: usize, mut g: Perm) -> Option<(usize, Perm)> {
        for i in from..self.levels.len() {
            if g.is_identity() {
                return None;
            }
            let level = &self.levels[i];
            let img = g.apply(level.base);
            match &level.transversal[img] {
                None => return Some((i, g)),
                Some(rep) => g = g.compose(&rep.invert()),
            }
        }
        if g.is_identity() {
            None
        } else {
            Some((self.levels.len(), g))
        }
    }

    /// Adds `g` (known to fix the bases of all levels before `level`) to the
    /// pool and refreshes that level's orbit. Monotone: stored orbits only
    /// ever grow, which bounds the total number of insertions.
    fn add_generator(&mut self, level: usize, g: Perm) {
        debug_assert!(!g.is_identity());
        if level == self.levels.len() {
            let base = (0..self.degree)
                .find(|&pt| g.apply(pt) != pt)
                .expect("nonidentity permutation moves a point");
            let mut transversal = vec![None; self.degree];
            transversal[base] = Some(Perm::identity(self.degree));
            self.levels.push(ChainLevel { base, transversal, orbit: vec![base] });
        }
        self.pool.push((level, g));
        self.recompute_orbit(level);
    }

    /// Breadth-first orbit of level `i`'s base under all generators inserted
    /// at level `i` or deeper.
    fn recompute_orbit(&mut self, i: usize) {
        let base = self.levels[i].base;
        let gens: Vec<Perm> = self
            .pool
            .iter()
            .filter(|(lvl, _)| *lvl >= i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[base] = Some(Perm::identity(self.degree));
        let mut orbit = vec![base];
        let mut head = 0;
        while head < orbit.len() {
            let point = orbit[head];
            head += 1;
            let rep = transversal[point].clone().unwrap();
            for g in &gens {
                let img = g.apply(point);
                if transversal[img].is_none() {
                    transversal[img] = Some(rep.compose(g));
                    orbit.push(img);
                }
            }
        }
        self.levels[i].transversal = transversal;
        self.levels[i].orbit = orbit;
    }

    /// Fixpoint pass establishing the strong generating property: every
    /// Schreier generator of every level must sift to the identity through
    /// the deeper levels. Any stuck residue is inserted where it stuck and
    /// the scan restarts; the final scan is clean, with every orbit current,
    /// and certifies the chain.
    fn close(&mut self) {
        'scan: loop {
            for i in 0..self.levels.len() {
                self.recompute_orbit(i);
                let gens: Vec<Perm> = self
                    .pool
                    .iter()
                    .filter(|(lvl, _)| *lvl >= i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let orbit = self.levels[i].orbit.clone();
                for &point in &orbit {
                    let rep = self.levels[i].transversal[point].clone().unwrap();
                    for s in &gens {
                        let img = s.apply(point);
                        let rep_img = self.levels[i].transversal[img]
                            .clone()
                            .expect("orbit is closed under its own generators");
                        let schreier = rep.compose(s).compose(&rep_img.invert());
                        if let Some((j, residue)) = self.sift_residue(i + 1, schreier) {
                            self.add_generator(j, residue);
                            continue 'scan;
                        }
                    }
                }
            }
            return;
        }
    }

    fn order(&self) -> BigUint {
        let mut total = BigUint::from(1u32);
        for level in &self.levels {
            total *= BigUint::from(level.orbit.len() as u64);
        }
        total
    }
}

/// Exact order of the permutation group generated by `gens`.
///
/// The empty generating set yields the trivial group. All generators must
/// share one degree.
pub fn group_order(gens: &[Perm]) -> Result<BigUint, PermError> {
    let degree = match gens.first() {
        None => return Ok(BigUint::from(1u32)),
        Some(g) => g.degree(),
    };
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    Ok(StabChain::build(gens, degree).order())
}

/// Reference group order by breadth-first closure, for cross-checking the
/// stabilizer chain on small groups. Gives up (returns `None`) once more than
/// `cap` elements have been found.
pub fn group_order_by_closure(gens: &[Perm], cap: usize) -> Option<usize> {
    let degree = match gens.first() {
        None => return Some(1),
        Some(g) => g.degree(),
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(Perm::identity(degree).images.clone());
    let mut frontier = vec![Perm::identity(degree)];
    while let Some(f) = frontier.pop() {
        for g in gens {
            let h = f.compose(g);
            if seen.insert(h.images.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(h);
            }
        }
    }
    Some(seen.len())
}
