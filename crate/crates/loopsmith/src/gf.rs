//! Arithmetic over the prime field GF(p) and 2x2 matrices over it.
//!
//! Scalars are `Fp` values with the modulus carried alongside, so mixed-modulus
//! arithmetic is caught at runtime. Moduli are restricted to primes below
//! 2^16, which keeps every intermediate product inside `u64`.
//!
//! On top of the raw arithmetic this module classifies quadratic residues,
//! counts residues in shifted residue sets (Perron counts), and recognises
//! *anisotropic* matrices: `A` is anisotropic when every nonzero matrix in the
//! plane spanned by `I` and `A` is invertible, equivalently when the
//! characteristic polynomial of `A` has no root in GF(p). Anisotropic matrices
//! split into three types by trace and determinant, and `type_witness`
//! produces a canonical representative of each type when one exists.

use thiserror::Error;

/// Largest allowed modulus (exclusive): keeps products of two scalars in `u64`.
pub const MAX_MODULUS: u32 = 1 << 16;

/// Errors from field and matrix construction and the plane classifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} exceeds the supported bound {MAX_MODULUS}")]
    ModulusTooLarge(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not anisotropic")]
    NotAnisotropic,
    #[error("shift must be nonzero")]
    ZeroShift,
    #[error("prime {0} is too small; need p >= {1}")]
    PrimeTooSmall(u32, u32),
}

/// Trial-division primality test, adequate for the supported modulus range.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_modulus(p: u32) -> Result<(), GfError> {
    if p >= MAX_MODULUS {
        return Err(GfError::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    Ok(())
}

/// An element of GF(p), stored as the canonical representative in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    /// Reduces `value` modulo `p`. Fails if `p` is not a prime below 2^16.
    pub fn new(value: i64, p: u32) -> Result<Fp, GfError> {
        check_modulus(p)?;
        Ok(Fp::reduced(value, p))
    }

    /// Reduction without the modulus check, for arithmetic on validated moduli.
    fn reduced(value: i64, p: u32) -> Fp {
        let m = p as i64;
        let mut v = value % m;
        if v < 0 {
            v += m;
        }
        Fp { value: v as u32, p }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn assert_same_modulus(&self, rhs: &Fp) {
        assert_eq!(
            self.p, rhs.p,
            "mixed moduli: {} vs {}",
            self.p, rhs.p
        );
    }

    pub fn add(&self, rhs: Fp) -> Fp {
        self.assert_same_modulus(&rhs);
        Fp::reduced(self.value as i64 + rhs.value as i64, self.p)
    }

    pub fn sub(&self, rhs: Fp) -> Fp {
        self.assert_same_modulus(&rhs);
        Fp::reduced(self.value as i64 - rhs.value as i64, self.p)
    }

    pub fn mul(&self, rhs: Fp) -> Fp {
        self.assert_same_modulus(&rhs);
        Fp::reduced(self.value as i64 * rhs.value as i64, self.p)
    }

    pub fn neg(&self) -> Fp {
        Fp::reduced(-(self.value as i64), self.p)
    }

    /// Modular exponentiation by squaring.
    pub fn pow(&self, mut k: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp { value: 1 % self.p, p: self.p };
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inverse(&self) -> Result<Fp, GfError> {
        if self.value == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(self.p as u64 - 2))
    }
}

/// Quadratic character of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueClass {
    Zero,
    Residue,
    Nonresidue,
}

/// Marks which nonzero values of GF(p) are squares, by squaring every element.
pub fn residue_table(p: u32) -> Vec<bool> {
    let mut is_square = vec![false; p as usize];
    for x in 0..p as u64 {
        is_square[((x * x) % p as u64) as usize] = true;
    }
    is_square
}

/// Quadratic character computed by exhaustive squaring.
pub fn legendre_class(a: Fp) -> ResidueClass {
    if a.is_zero() {
        return ResidueClass::Zero;
    }
    if residue_table(a.modulus())[a.value() as usize] {
        ResidueClass::Residue
    } else {
        ResidueClass::Nonresidue
    }
}

/// Quadratic character via Euler's criterion: a^((p-1)/2) is 1 for squares.
pub fn legendre_class_euler(a: Fp) -> ResidueClass {
    let p = a.modulus();
    if a.is_zero() {
        return ResidueClass::Zero;
    }
    if p == 2 {
        return ResidueClass::Residue;
    }
    if a.pow((p as u64 - 1) / 2).value() == 1 {
        ResidueClass::Residue
    } else {
        ResidueClass::Nonresidue
    }
}

/// Sizes of `(R+a) ∩ R` and `(R+a) ∩ N`, where `R` is the set of squares of
/// GF(p) *including zero* and `N` the nonsquares. Counted exhaustively.
pub fn perron_counts(p: u32, a: u32) -> Result<(usize, usize), GfError> {
    check_modulus(p)?;
    if a % p == 0 {
        return Err(GfError::ZeroShift);
    }
    let squares = residue_table(p);
    let mut in_r = 0usize;
    let mut in_n = 0usize;
    for x in 0..p {
        if squares[x as usize] || x == 0 {
            let shifted = ((x + a) % p) as usize;
            if squares[shifted] || shifted == 0 {
                in_r += 1;
            } else {
                in_n += 1;
            }
        }
    }
    Ok((in_r, in_n))
}

/// The counts `perron_counts` must produce, as a closed form: for p = 4k-1
/// both counts are k regardless of the shift; for p = 4k+1 they are
/// (k+1, k) when the shift is a square and (k, k+1) otherwise.
pub fn perron_closed_form(p: u32, a: u32) -> Result<(usize, usize), GfError> {
    check_modulus(p)?;
    if a % p == 0 {
        return Err(GfError::ZeroShift);
    }
    if p == 2 {
        // GF(2) is squares-and-zero in its entirety, so shifts stay inside.
        return Ok((2, 0));
    }
    if p % 4 == 3 {
        let k = (p as usize + 1) / 4;
        Ok((k, k))
    } else {
        let k = (p as usize - 1) / 4;
        match legendre_class(Fp::new(a as i64, p)?) {
            ResidueClass::Nonresidue => Ok((k, k + 1)),
            _ => Ok((k + 1, k)),
        }
    }
}

/// Smallest triple `(a, b, c)` with `a` a nonsquare, `b`, `c` squares,
/// `b - a` a square and `c - a` a nonsquare, in lexicographic order.
/// Such a triple exists for every prime p >= 5.
pub fn additive_witness(p: u32) -> Result<(u32, u32, u32), GfError> {
    check_modulus(p)?;
    if p < 5 {
        return Err(GfError::PrimeTooSmall(p, 5));
    }
    let squares = residue_table(p);
    let nonzero_square = |x: u32| x != 0 && squares[x as usize];
    let nonsquare = |x: u32| x != 0 && !squares[x as usize];
    for a in 1..p {
        if !nonsquare(a) {
            continue;
        }
        for b in 1..p {
            if !(nonzero_square(b) && nonzero_square((b + p - a) % p)) {
                continue;
            }
            for c in 1..p {
                if nonzero_square(c) && nonsquare((c + p - a) % p) {
                    return Ok((a, b, c));
                }
            }
        }
    }
    unreachable!("every prime p >= 5 admits a witness triple");
}

/// A 2x2 matrix over GF(p), row-major entries `[m00, m01, m10, m11]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    entries: [Fp; 4],
}

impl Mat2 {
    /// Builds a matrix from integer entries, reduced modulo `p`.
    pub fn new(entries: [i64; 4], p: u32) -> Result<Mat2, GfError> {
        check_modulus(p)?;
        Ok(Mat2 {
            entries: [
                Fp::reduced(entries[0], p),
                Fp::reduced(entries[1], p),
                Fp::reduced(entries[2], p),
                Fp::reduced(entries[3], p),
            ],
        })
    }

    pub fn identity(p: u32) -> Result<Mat2, GfError> {
        Mat2::new([1, 0, 0, 1], p)
    }

    pub fn zero(p: u32) -> Result<Mat2, GfError> {
        Mat2::new([0, 0, 0, 0], p)
    }

    pub fn modulus(&self) -> u32 {
        self.entries[0].modulus()
    }

    pub fn entry(&self, row: usize, col: usize) -> Fp {
        self.entries[2 * row + col]
    }

    /// Entries as canonical representatives, row-major.
    pub fn values(&self) -> [u32; 4] {
        [
            self.entries[0].value(),
            self.entries[1].value(),
            self.entries[2].value(),
            self.entries[3].value(),
        ]
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            entries: [
                self.entries[0].add(rhs.entries[0]),
                self.entries[1].add(rhs.entries[1]),
                self.entries[2].add(rhs.entries[2]),
                self.entries[3].add(rhs.entries[3]),
            ],
        }
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            entries: [
                self.entries[0].sub(rhs.entries[0]),
                self.entries[1].sub(rhs.entries[1]),
                self.entries[2].sub(rhs.entries[2]),
                self.entries[3].sub(rhs.entries[3]),
            ],
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            entries: [
                self.entries[0].neg(),
                self.entries[1].neg(),
                self.entries[2].neg(),
                self.entries[3].neg(),
            ],
        }
    }

    pub fn scale(&self, c: Fp) -> Mat2 {
        Mat2 {
            entries: [
                self.entries[0].mul(c),
                self.entries[1].mul(c),
                self.entries[2].mul(c),
                self.entries[3].mul(c),
            ],
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.entries;
        let b = &rhs.entries;
        Mat2 {
            entries: [
                a[0].mul(b[0]).add(a[1].mul(b[2])),
                a[0].mul(b[1]).add(a[1].mul(b[3])),
                a[2].mul(b[0]).add(a[3].mul(b[2])),
                a[2].mul(b[1]).add(a[3].mul(b[3])),
            ],
        }
    }

    /// Row vector times matrix: `v * M`.
    pub fn apply_row(&self, v: [Fp; 2]) -> [Fp; 2] {
        [
            v[0].mul(self.entries[0]).add(v[1].mul(self.entries[2])),
            v[0].mul(self.entries[1]).add(v[1].mul(self.entries[3])),
        ]
    }

    pub fn trace(&self) -> Fp {
        self.entries[0].add(self.entries[3])
    }

    pub fn det(&self) -> Fp {
        self.entries[0]
            .mul(self.entries[3])
            .sub(self.entries[1].mul(self.entries[2]))
    }

    /// Inverse via the adjugate; fails on singular matrices.
    pub fn inverse(&self) -> Result<Mat2, GfError> {
        let d = self.det();
        if d.is_zero() {
            return Err(GfError::Singular);
        }
        let inv = d.inverse()?;
        Ok(Mat2 {
            entries: [
                self.entries[3].mul(inv),
                self.entries[1].neg().mul(inv),
                self.entries[2].neg().mul(inv),
                self.entries[0].mul(inv),
            ],
        })
    }
}

/// Tests whether every nonzero combination `xI + yA` is invertible, by
/// checking that the characteristic polynomial of `A` has no root in GF(p).
pub fn is_anisotropic(a: &Mat2) -> bool {
    let p = a.modulus();
    let t = a.trace();
    let d = a.det();
    for lam in 0..p {
        let x = Fp::reduced(lam as i64, p);
        // x^2 - t*x + d
        if x.mul(x).sub(t.mul(x)).add(d).is_zero() {
            return false;
        }
    }
    true
}

/// The three types of anisotropic matrix: 1 = trace zero; 2 = nonzero trace
/// with square determinant; 3 = nonzero trace with nonsquare determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneType {
    One,
    Two,
    Three,
}

impl PlaneType {
    pub fn as_u8(&self) -> u8 {
        match self {
            PlaneType::One => 1,
            PlaneType::Two => 2,
            PlaneType::Three => 3,
        }
    }

    pub fn from_u8(t: u8) -> Option<PlaneType> {
        match t {
            1 => Some(PlaneType::One),
            2 => Some(PlaneType::Two),
            3 => Some(PlaneType::Three),
            _ => None,
        }
    }
}

impl std::fmt::Display for PlaneType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Classifies an anisotropic matrix into its type; rejects other input.
pub fn plane_type(a: &Mat2) -> Result<PlaneType, GfError> {
    if !is_anisotropic(a) {
        return Err(GfError::NotAnisotropic);
    }
    if a.trace().is_zero() {
        return Ok(PlaneType::One);
    }
    match legendre_class(a.det()) {
        ResidueClass::Residue => Ok(PlaneType::Two),
        _ => Ok(PlaneType::Three),
    }
}

/// Deterministic anisotropic witness of the requested type, or `None` when no
/// such matrix exists over GF(p) (type 1 and 3 fail only at p = 2, type 2
/// only at p = 3).
///
/// The search first walks the two-parameter family `[[-b, 1], [a, -b]]` with
/// `a` a nonsquare, smallest `(a, b)` first, then falls back to a full scan
/// of all 2x2 matrices in entry order.
pub fn type_witness(p: u32, t: PlaneType) -> Result<Option<Mat2>, GfError> {
    check_modulus(p)?;
    let squares = residue_table(p);
    for a in 1..p {
        if squares[a as usize] {
            continue;
        }
        for b in 0..p {
            let m = Mat2::new([-(b as i64), 1, a as i64, -(b as i64)], p)?;
            if is_anisotropic(&m) && plane_type(&m)? == t {
                return Ok(Some(m));
            }
        }
    }
    for e0 in 0..p as i64 {
        for e1 in 0..p as i64 {
            for e2 in 0..p as i64 {
                for e3 in 0..p as i64 {
                    let m = Mat2::new([e0, e1, e2, e3], p)?;
                    if is_anisotropic(&m) && plane_type(&m)? == t {
                        return Ok(Some(m));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Primes below `bound`, ascending.
pub fn primes_below(bound: u32) -> Vec<u32> {
    (2..bound).filter(|&n| is_prime(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: i64, p: u32) -> Fp {
        Fp::new(v, p).unwrap()
    }

    #[test]
    fn primality_basics() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(65521));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(65535));
    }

    #[test]
    fn construction_validates_modulus() {
        assert_eq!(Fp::new(1, 4), Err(GfError::NotPrime(4)));
        // 65537 is prime but past the supported range.
        assert_eq!(Fp::new(1, 65537), Err(GfError::ModulusTooLarge(65537)));
        assert_eq!(fp(-1, 7).value(), 6);
        assert_eq!(fp(23, 7).value(), 2);
    }

    #[test]
    fn field_ops() {
        let p = 7;
        assert_eq!(fp(3, p).add(fp(5, p)).value(), 1);
        assert_eq!(fp(3, p).sub(fp(5, p)).value(), 5);
        assert_eq!(fp(3, p).mul(fp(5, p)).value(), 1);
        assert_eq!(fp(3, p).neg().value(), 4);
        assert_eq!(fp(2, p).pow(10).value(), 2); // 1024 = 146*7 + 2
    }

    #[test]
    fn inverses_across_field() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            for v in 1..p {
                let x = fp(v as i64, p);
                assert_eq!(x.mul(x.inverse().unwrap()).value(), 1);
            }
            assert_eq!(fp(0, p).inverse(), Err(GfError::ZeroInverse));
        }
    }

    #[test]
    fn residue_classes_mod_7() {
        // Squares mod 7 are {1, 2, 4}.
        assert_eq!(legendre_class(fp(0, 7)), ResidueClass::Zero);
        assert_eq!(legendre_class(fp(2, 7)), ResidueClass::Residue);
        assert_eq!(legendre_class(fp(3, 7)), ResidueClass::Nonresidue);
        for v in [1, 2, 4] {
            assert_eq!(legendre_class(fp(v, 7)), ResidueClass::Residue);
        }
        for v in [3, 5, 6] {
            assert_eq!(legendre_class(fp(v, 7)), ResidueClass::Nonresidue);
        }
    }

    #[test]
    fn squaring_and_euler_routes_agree() {
        for p in primes_below(100) {
            for v in 0..p {
                let x = fp(v as i64, p);
                assert_eq!(legendre_class(x), legendre_class_euler(x), "p={p} v={v}");
            }
        }
    }

    #[test]
    fn shifted_residue_count_examples() {
        // p = 7 = 4*2-1: R = {0,1,2,4}; R+1 = {1,2,3,5} meets R in {1,2}.
        assert_eq!(perron_counts(7, 1).unwrap(), (2, 2));
        // p = 13 = 4*3+1 with square shift 3.
        assert_eq!(perron_counts(13, 3).unwrap(), (4, 3));
        // p = 5 with nonsquare shift 2: R = {0,1,4}; R+2 = {1,2,3} meets R in {1}.
        assert_eq!(perron_counts(5, 2).unwrap(), (1, 2));
        assert_eq!(perron_counts(5, 1).unwrap(), (2, 1));
        assert_eq!(perron_counts(7, 0), Err(GfError::ZeroShift));
    }

    #[test]
    fn shifted_residue_counts_match_closed_form() {
        for p in primes_below(100) {
            for a in 1..p {
                assert_eq!(
                    perron_counts(p, a).unwrap(),
                    perron_closed_form(p, a).unwrap(),
                    "p={p} a={a}"
                );
            }
        }
    }

    #[test]
    fn additive_witness_examples() {
        assert_eq!(additive_witness(7).unwrap(), (3, 4, 1));
        assert_eq!(additive_witness(5).unwrap(), (2, 1, 4));
        assert_eq!(additive_witness(3), Err(GfError::PrimeTooSmall(3, 5)));
    }

    #[test]
    fn additive_witness_valid_for_small_primes() {
        for p in primes_below(50) {
            if p < 5 {
                continue;
            }
            let (a, b, c) = additive_witness(p).unwrap();
            let squares = residue_table(p);
            assert!(a != 0 && !squares[a as usize]);
            assert!(b != 0 && squares[b as usize]);
            assert!(c != 0 && squares[c as usize]);
            let bma = ((b + p - a) % p) as usize;
            let cma = ((c + p - a) % p) as usize;
            assert!(bma != 0 && squares[bma]);
            assert!(cma != 0 && !squares[cma]);
        }
    }

    #[test]
    fn additive_witness_is_lexicographically_minimal() {
        // Independent scan for p = 11 and p = 13.
        for p in [11u32, 13] {
            let squares = residue_table(p);
            let good = |a: u32, b: u32, c: u32| {
                let nsq = |x: u32| x != 0 && !squares[x as usize];
                let sq = |x: u32| x != 0 && squares[x as usize];
                nsq(a) && sq(b) && sq(c) && sq((b + p - a) % p) && nsq((c + p - a) % p)
            };
            let mut first = None;
            'scan: for a in 1..p {
                for b in 1..p {
                    for c in 1..p {
                        if good(a, b, c) {
                            first = Some((a, b, c));
                            break 'scan;
                        }
                    }
                }
            }
            assert_eq!(additive_witness(p).unwrap(), first.unwrap());
        }
    }

    #[test]
    fn matrix_ops() {
        let p = 7;
        let a = Mat2::new([1, 2, 3, 4], p).unwrap();
        let b = Mat2::new([0, 1, 1, 0], p).unwrap();
        assert_eq!(a.mul(&b).values(), [2, 1, 4, 3]);
        assert_eq!(a.add(&b).values(), [1, 3, 4, 4]);
        assert_eq!(a.trace().value(), 5);
        assert_eq!(a.det().value(), 5); // 4 - 6 = -2
        assert_eq!(a.apply_row([fp(1, p), fp(0, p)]), [fp(1, p), fp(2, p)]);
        assert_eq!(a.apply_row([fp(0, p), fp(1, p)]), [fp(3, p), fp(4, p)]);
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let p = 7;
        let id = Mat2::identity(p).unwrap();
        let mut checked = 0;
        for e0 in 0..p as i64 {
            for e1 in 0..p as i64 {
                let m = Mat2::new([e0, e1, 1, 3], p).unwrap();
                if m.det().is_zero() {
                    assert_eq!(m.inverse(), Err(GfError::Singular));
                } else {
                    assert_eq!(m.mul(&m.inverse().unwrap()), id);
                    assert_eq!(m.inverse().unwrap().mul(&m), id);
                    checked += 1;
                }
            }
        }
        assert!(checked > 30);
    }

    #[test]
    fn anisotropy_examples() {
        assert!(is_anisotropic(&Mat2::new([0, 1, 2, 0], 3).unwrap()));
        assert!(is_anisotropic(&Mat2::new([0, 1, 1, 1], 2).unwrap()));
        assert!(!is_anisotropic(&Mat2::zero(5).unwrap()));
        assert!(!is_anisotropic(&Mat2::new([0, 1, 0, 0], 5).unwrap()));
    }

    #[test]
    fn anisotropy_matches_plane_invertibility() {
        // A is anisotropic exactly when xI + yA is invertible for (x,y) != 0.
        for p in [2u32, 3, 5, 7, 11, 13] {
            let id = Mat2::identity(p).unwrap();
            for e0 in 0..p as i64 {
                for e1 in 0..p as i64 {
                    for e2 in 0..p as i64 {
                        for e3 in 0..p as i64 {
                            let m = Mat2::new([e0, e1, e2, e3], p).unwrap();
                            let mut plane_invertible = true;
                            'pairs: for x in 0..p as i64 {
                                for y in 0..p as i64 {
                                    if x == 0 && y == 0 {
                                        continue;
                                    }
                                    let c = id
                                        .scale(fp(x, p))
                                        .add(&m.scale(fp(y, p)));
                                    if c.det().is_zero() {
                                        plane_invertible = false;
                                        break 'pairs;
                                    }
                                }
                            }
                            assert_eq!(is_anisotropic(&m), plane_invertible);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plane_type_examples() {
        let t = |e: [i64; 4], p: u32| plane_type(&Mat2::new(e, p).unwrap());
        assert_eq!(t([0, 1, 1, 1], 2).unwrap(), PlaneType::Two);
        assert_eq!(t([0, 1, 2, 0], 3).unwrap(), PlaneType::One);
        assert_eq!(t([1, 1, 2, 1], 3).unwrap(), PlaneType::Three);
        assert_eq!(t([0, 0, 0, 0], 5), Err(GfError::NotAnisotropic));
    }

    #[test]
    fn witness_family_is_anisotropic() {
        // [[-b, 1], [a, -b]] with a nonsquare is anisotropic for every b.
        for p in primes_below(50) {
            if p == 2 {
                continue;
            }
            let squares = residue_table(p);
            for a in 1..p {
                if squares[a as usize] {
                    continue;
                }
                for b in 0..p as i64 {
                    let m = Mat2::new([-b, 1, a as i64, -b], p).unwrap();
                    assert!(is_anisotropic(&m), "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn type_witness_examples() {
        assert_eq!(
            type_witness(2, PlaneType::Two).unwrap().unwrap().values(),
            [0, 1, 1, 1]
        );
        assert_eq!(type_witness(2, PlaneType::One).unwrap(), None);
        assert_eq!(type_witness(2, PlaneType::Three).unwrap(), None);
        assert_eq!(type_witness(3, PlaneType::Two).unwrap(), None);
        assert_eq!(
            type_witness(3, PlaneType::One).unwrap().unwrap().values(),
            [0, 1, 2, 0]
        );
        for t in [PlaneType::One, PlaneType::Two, PlaneType::Three] {
            let w = type_witness(5, t).unwrap().unwrap();
            assert_eq!(plane_type(&w).unwrap(), t);
        }
    }

    #[test]
    fn type_witness_existence_table() {
        // Types 1 and 3 exist except at p = 2; type 2 exists except at p = 3.
        for p in primes_below(50) {
            for t in [PlaneType::One, PlaneType::Two, PlaneType::Three] {
                let exists = type_witness(p, t).unwrap();
                let expected = match t {
                    PlaneType::One | PlaneType::Three => p != 2,
                    PlaneType::Two => p != 3,
                };
                assert_eq!(exists.is_some(), expected, "p={p} type={t:?}");
                if let Some(w) = exists {
                    assert_eq!(plane_type(&w).unwrap(), t);
                }
            }
        }
    }
}
