//! Finite loops as validated Cayley tables.
//!
//! A loop is a quasigroup with a two-sided identity: its multiplication table
//! is a Latin square, and one element acts as identity on both sides. Tables
//! are stored row-major with the row as the left factor, and the identity is
//! normalised to index 0 (construction renumbers and reports the relabeling
//! when the input has its identity elsewhere). Both division tables are
//! precomputed so `x \ y` and `y / x` are constant-time.
//!
//! Powers are left-iterated (`x^(k+1) = x * x^k`), which only defines a
//! sensible order for elements whose generated subloop is associative;
//! `element_order` checks exactly that and fails with `OrderUndefined`
//! otherwise.
//!
//! The module also owns the canonical table file format: an optional sprinkle
//! of `#` comment lines, then the order `n` on its own line, then `n` rows of
//! `n` space-separated 0-based indices, with the identity required to be
//! element 0 and a trailing newline required.

use crate::perm::Perm;
use std::collections::HashSet;
use thiserror::Error;

/// Errors from table validation and loop-theoretic constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("table is not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("entry {value} at row {row}, column {col} is out of range")]
    ValueOutOfRange { row: usize, col: usize, value: usize },
    #[error("not a Latin square: row {index} repeats a value")]
    RowRepeats { index: usize },
    #[error("not a Latin square: column {index} repeats a value")]
    ColumnRepeats { index: usize },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no well-defined order (its generated subloop is not associative)")]
    OrderUndefined(usize),
    #[error("the given set is not a subloop")]
    NotASubloop,
    #[error("the given subloop is not normal")]
    NotNormal,
    #[error("quotient multiplication is not well-defined on cosets of the given set")]
    IllDefinedQuotient,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("loop order {0} exceeds the supported bound {MAX_ORDER}")]
    OrderTooLarge(usize),
}

/// Largest supported loop order.
pub const MAX_ORDER: usize = 512;

/// A sorted, duplicate-free set of element indices of some loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    indices: Vec<usize>,
}

impl ElementSet {
    pub fn new(mut indices: Vec<usize>) -> ElementSet {
        indices.sort_unstable();
        indices.dedup();
        ElementSet { indices }
    }

    /// The singleton `{0}`.
    pub fn trivial() -> ElementSet {
        ElementSet { indices: vec![0] }
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> ElementSet {
        ElementSet { indices: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.indices.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.indices.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            indices: self.indices.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }
}

/// A finite loop: a Latin-square Cayley table with identity element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLoop {
    n: usize,
    table: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
}

impl FiniteLoop {
    /// Validates `rows` as a loop table. If the two-sided identity sits at
    /// some index `e != 0`, elements 0 and `e` are swapped and the relabeling
    /// (old index to new index) is returned alongside the loop.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<(FiniteLoop, Option<Vec<usize>>), LoopError> {
        let n = rows.len();
        if n == 0 {
            return Err(LoopError::NoIdentity);
        }
        if n > MAX_ORDER {
            return Err(LoopError::OrderTooLarge(n));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LoopError::NotSquare { rows: n, row, cols: r.len() });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(LoopError::ValueOutOfRange { row, col, value });
                }
            }
        }
        for (index, r) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in r {
                if seen[v] {
                    return Err(LoopError::RowRepeats { index });
                }
                seen[v] = true;
            }
        }
        for index in 0..n {
            let mut seen = vec![false; n];
            for r in rows {
                let v = r[index];
                if seen[v] {
                    return Err(LoopError::ColumnRepeats { index });
                }
                seen[v] = true;
            }
        }
        let identity = (0..n).find(|&e| {
            (0..n).all(|j| rows[e][j] == j) && (0..n).all(|i| rows[i][e] == i)
        });
        let e = identity.ok_or(LoopError::NoIdentity)?;
        let relabel = if e == 0 {
            None
        } else {
            // Transpose 0 and e; all other elements keep their index.
            let mut map: Vec<usize> = (0..n).collect();
            map.swap(0, e);
            Some(map)
        };
        let table = match &relabel {
            None => {
                let mut t = Vec::with_capacity(n * n);
                for r in rows {
                    t.extend_from_slice(r);
                }
                t
            }
            Some(map) => {
                let mut t = vec![0usize; n * n];
                for i in 0..n {
                    for j in 0..n {
                        t[map[i] * n + map[j]] = map[rows[i][j]];
                    }
                }
                t
            }
        };
        Ok((FiniteLoop::from_validated(n, table), relabel))
    }

    /// Builds division tables for an already-validated normalized table.
    fn from_validated(n: usize, table: Vec<usize>) -> FiniteLoop {
        let mut ldiv = vec![0usize; n * n];
        let mut rdiv = vec![0usize; n * n];
        for x in 0..n {
            for z in 0..n {
                let y = table[x * n + z];
                ldiv[x * n + y] = z; // x * z = y  =>  x \ y = z
                let y2 = table[z * n + x];
                rdiv[x * n + y2] = z; // z * x = y2  =>  y2 / x = z
            }
        }
        FiniteLoop { n, table, ldiv, rdiv }
    }

    /// Order of the loop.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// Left division: the unique `z` with `x * z == y`.
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y]
    }

    /// Right division: the unique `z` with `z * x == y`.
    pub fn rdiv(&self, y: usize, x: usize) -> usize {
        self.rdiv[x * self.n + y]
    }

    /// The right inverse `x \ 0`; for power-associative loops this is the
    /// two-sided inverse.
    pub fn inverse(&self, x: usize) -> usize {
        self.ldiv(x, 0)
    }

    /// Rows of the Cayley table.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.table[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                if self.mul(x, y) != self.mul(y, x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_associative(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.mul(x, y);
                for z in 0..self.n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Left-iterated power: `x^0 = 0`, `x^(k+1) = x * x^k`, and negative
    /// exponents power the right inverse `x \ 0`.
    pub fn power(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(x) } else { x };
        let mut acc = 0usize;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(base, acc);
        }
        acc
    }

    /// Order of `x` as the least `k > 0` with `x^k = 0`, defined only when
    /// the subloop generated by `x` is associative (hence a cyclic group).
    pub fn element_order(&self, x: usize) -> Result<usize, LoopError> {
        let sub = self.subloop_generated(&[x]);
        for a in sub.iter() {
            for b in sub.iter() {
                let ab = self.mul(a, b);
                for c in sub.iter() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(LoopError::OrderUndefined(x));
                    }
                }
            }
        }
        let mut powers = HashSet::new();
        let mut acc = 0usize;
        let mut k = 0usize;
        loop {
            acc = self.mul(x, acc);
            k += 1;
            if acc == 0 {
                break;
            }
            if !powers.insert(acc) || k > self.n {
                return Err(LoopError::OrderUndefined(x));
            }
        }
        // The generated subloop must consist exactly of the powers of x.
        if powers.len() + 1 != sub.len() {
            return Err(LoopError::OrderUndefined(x));
        }
        Ok(k)
    }

    /// Whether every element has a well-defined order.
    pub fn is_power_associative(&self) -> bool {
        (0..self.n).all(|x| self.element_order(x).is_ok())
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> Result<usize, LoopError> {
        let mut e = 1usize;
        for x in 0..self.n {
            e = lcm(e, self.element_order(x)?);
        }
        Ok(e)
    }

    /// Closure of `gens` (plus the identity) under multiplication and both
    /// divisions.
    pub fn subloop_generated(&self, gens: &[usize]) -> ElementSet {
        let mut in_set = vec![false; self.n];
        in_set[0] = true;
        let mut members = vec![0usize];
        for &g in gens {
            if !in_set[g] {
                in_set[g] = true;
                members.push(g);
            }
        }
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            // Pair x against all current members in both orders and ops.
            let add = |v: usize, in_set: &mut Vec<bool>, members: &mut Vec<usize>| {
                if !in_set[v] {
                    in_set[v] = true;
                    members.push(v);
                }
            };
            for i in 0..members.len() {
                let y = members[i];
                add(self.mul(x, y), &mut in_set, &mut members);
                add(self.mul(y, x), &mut in_set, &mut members);
                add(self.ldiv(x, y), &mut in_set, &mut members);
                add(self.ldiv(y, x), &mut in_set, &mut members);
                add(self.rdiv(x, y), &mut in_set, &mut members);
                add(self.rdiv(y, x), &mut in_set, &mut members);
            }
        }
        ElementSet::new(members)
    }

    /// Whether `s` contains the identity and is closed under multiplication
    /// and both divisions.
    pub fn is_subloop(&self, s: &ElementSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        for x in s.iter() {
            for y in s.iter() {
                if !s.contains(self.mul(x, y))
                    || !s.contains(self.ldiv(x, y))
                    || !s.contains(self.rdiv(x, y))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the subloop `s` is fixed setwise by every standard inner
    /// mapping generator.
    pub fn is_normal(&self, s: &ElementSet) -> Result<bool, LoopError> {
        if !self.is_subloop(s) {
            return Err(LoopError::NotASubloop);
        }
        for m in s.iter() {
            for x in 0..self.n {
                // m T_x = x \ (m x)
                if !s.contains(self.ldiv(x, self.mul(m, x))) {
                    return Ok(false);
                }
                for y in 0..self.n {
                    // m L_{x,y} = (yx) \ (y (x m))
                    let lm = self.ldiv(self.mul(y, x), self.mul(y, self.mul(x, m)));
                    if !s.contains(lm) {
                        return Ok(false);
                    }
                    // m R_{x,y} = ((m x) y) / (xy)
                    let rm = self.rdiv(self.mul(self.mul(m, x), y), self.mul(x, y));
                    if !s.contains(rm) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Quotient by a normal subloop: cosets indexed by their smallest member
    /// in increasing order (so the identity coset is element 0), with the
    /// projection map returned alongside. Multiplication is verified to be
    /// independent of coset representatives.
    pub fn quotient(&self, s: &ElementSet) -> Result<Quotient, LoopError> {
        if !self.is_normal(s)? {
            return Err(LoopError::NotNormal);
        }
        // Coset of x is x*S; group elements by coset and index by min member.
        let mut coset_min = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let members: Vec<usize> = s.iter().map(|m| self.mul(x, m)).collect();
            let min = *members.iter().min().unwrap();
            for &y in &members {
                if coset_min[y] != usize::MAX && coset_min[y] != min {
                    return Err(LoopError::IllDefinedQuotient);
                }
                coset_min[y] = min;
            }
        }
        let mut reps: Vec<usize> = coset_min.clone();
        reps.sort_unstable();
        reps.dedup();
        let class_of: Vec<usize> = (0..self.n)
            .map(|x| reps.binary_search(&coset_min[x]).unwrap())
            .collect();
        let m = reps.len();
        let mut rows = vec![vec![usize::MAX; m]; m];
        for x in 0..self.n {
            for y in 0..self.n {
                let (a, b) = (class_of[x], class_of[y]);
                let c = class_of[self.mul(x, y)];
                if rows[a][b] == usize::MAX {
                    rows[a][b] = c;
                } else if rows[a][b] != c {
                    return Err(LoopError::IllDefinedQuotient);
                }
            }
        }
        let (quotient, relabel) = FiniteLoop::from_table(&rows)?;
        debug_assert!(relabel.is_none(), "identity coset is indexed 0 by construction");
        Ok(Quotient { quotient, class_of })
    }

    /// The smallest Latin-preserving perturbation of the table that leaves
    /// the identity row and column alone: flip a 2x2 intercalate if one
    /// exists, otherwise cycle the rows of a 3x3 Latin subsquare. Returns
    /// `None` when the table admits neither.
    pub fn perturbed(&self) -> Option<FiniteLoop> {
        let n = self.n;
        let mut rows = self.rows();
        for r1 in 1..n {
            for r2 in (r1 + 1)..n {
                for c1 in 1..n {
                    for c2 in (c1 + 1)..n {
                        if rows[r1][c1] == rows[r2][c2] && rows[r1][c2] == rows[r2][c1] {
                            // Swap the two symbols within the four cells.
                            let (a, b) = (rows[r1][c1], rows[r1][c2]);
                            rows[r1][c1] = b;
                            rows[r1][c2] = a;
                            rows[r2][c1] = a;
                            rows[r2][c2] = b;
                            let (flipped, relabel) =
                                FiniteLoop::from_table(&rows).expect("intercalate flip stays Latin");
                            if relabel.is_none() {
                                return Some(flipped);
                            }
                            // The flip accidentally moved the identity; undo and keep looking.
                            rows = self.rows();
                        }
                    }
                }
            }
        }
        // 3x3 Latin subsquare: three rows and three columns whose submatrix
        // uses exactly three symbols, every row and column of it distinct.
        let distinct3 = |a: usize, b: usize, c: usize| a != b && a != c && b != c;
        for r1 in 1..n {
            for r2 in (r1 + 1)..n {
                for r3 in (r2 + 1)..n {
                    for c1 in 1..n {
                        for c2 in (c1 + 1)..n {
                            for c3 in (c2 + 1)..n {
                                let rs = [r1, r2, r3];
                                let cs = [c1, c2, c3];
                                let mut symbols: Vec<usize> = Vec::with_capacity(9);
                                for &r in &rs {
                                    for &c in &cs {
                                        symbols.push(rows[r][c]);
                                    }
                                }
                                let mut set = symbols.clone();
                                set.sort_unstable();
                                set.dedup();
                                if set.len() != 3 {
                                    continue;
                                }
                                let ok_rows = (0..3).all(|i| {
                                    distinct3(symbols[3 * i], symbols[3 * i + 1], symbols[3 * i + 2])
                                });
                                let ok_cols = (0..3).all(|j| {
                                    distinct3(symbols[j], symbols[3 + j], symbols[6 + j])
                                });
                                if !(ok_rows && ok_cols) {
                                    continue;
                                }
                                let mut out = self.rows();
                                for j in 0..3 {
                                    out[r1][cs[j]] = rows[r2][cs[j]];
                                    out[r2][cs[j]] = rows[r3][cs[j]];
                                    out[r3][cs[j]] = rows[r1][cs[j]];
                                }
                                let (cycled, relabel) =
                                    FiniteLoop::from_table(&out).expect("row cycle stays Latin");
                                if relabel.is_none() {
                                    return Some(cycled);
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Serialises to the canonical table format.
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for i in 0..self.n {
            let row: Vec<String> =
                (0..self.n).map(|j| self.mul(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the canonical table format: `#`-prefixed comment lines anywhere,
    /// the order on the first significant line, then one line per table row.
    /// The identity must already be element 0 and the file must end with a
    /// newline.
    pub fn parse_table(text: &str) -> Result<FiniteLoop, LoopError> {
        if !text.is_empty() && !text.ends_with('\n') {
            let lines = text.lines().count();
            return Err(LoopError::Parse {
                line: lines,
                message: "missing trailing newline".into(),
            });
        }
        let mut significant: Vec<(usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            significant.push((i + 1, line));
        }
        let (first_line, first) = *significant.first().ok_or(LoopError::Parse {
            line: 1,
            message: "empty table file".into(),
        })?;
        let n: usize = first.parse().map_err(|_| LoopError::Parse {
            line: first_line,
            message: format!("expected the loop order, found {first:?}"),
        })?;
        if n == 0 || n > MAX_ORDER {
            return Err(LoopError::Parse {
                line: first_line,
                message: format!("unsupported loop order {n}"),
            });
        }
        if significant.len() != n + 1 {
            let (line, _) = *significant.last().unwrap();
            return Err(LoopError::Parse {
                line,
                message: format!(
                    "expected {n} table rows, found {}",
                    significant.len() - 1
                ),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for &(line, text) in &significant[1..] {
            let mut row = Vec::with_capacity(n);
            for tok in text.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| LoopError::Parse {
                    line,
                    message: format!("bad table entry {tok:?}"),
                })?;
                row.push(v);
            }
            if row.len() != n {
                return Err(LoopError::Parse {
                    line,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        let (parsed, relabel) = FiniteLoop::from_table(&rows).map_err(|e| LoopError::Parse {
            line: significant[1].0,
            message: e.to_string(),
        })?;
        if relabel.is_some() {
            return Err(LoopError::Parse {
                line: significant[1].0,
                message: "identity must be element 0 in table files".into(),
            });
        }
        Ok(parsed)
    }
}

/// A quotient loop together with the projection from parent elements to
/// quotient elements.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub quotient: FiniteLoop,
    pub class_of: Vec<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

/// The cyclic group of order `n` as a loop table.
pub fn cyclic_group(n: usize) -> FiniteLoop {
    assert!(n >= 1 && n <= MAX_ORDER);
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteLoop::from_table(&rows).expect("cyclic table is a loop").0
}

/// Direct product of two loops, elements encoded as `a * |B| + b`.
pub fn direct_product(a: &FiniteLoop, b: &FiniteLoop) -> Result<FiniteLoop, LoopError> {
    let (na, nb) = (a.order(), b.order());
    let n = na.checked_mul(nb).filter(|&n| n <= MAX_ORDER).ok_or(LoopError::OrderTooLarge(na * nb))?;
    let mut rows = vec![vec![0usize; n]; n];
    for xa in 0..na {
        for xb in 0..nb {
            for ya in 0..na {
                for yb in 0..nb {
                    rows[xa * nb + xb][ya * nb + yb] = a.mul(xa, ya) * nb + b.mul(xb, yb);
                }
            }
        }
    }
    Ok(FiniteLoop::from_table(&rows)?.0)
}

/// The group generated by a set of permutations, as a loop table. Elements
/// are the group members sorted by image list (the identity sorts first).
pub fn permutation_group_loop(gens: &[Perm]) -> Result<FiniteLoop, LoopError> {
    let degree = gens.first().map(|g| g.degree()).unwrap_or(1);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let identity = Perm::identity(degree);
    seen.insert(identity.images().to_vec());
    let mut frontier = vec![identity];
    let mut members = frontier.clone();
    while let Some(f) = frontier.pop() {
        for g in gens {
            let h = f.compose(g);
            if seen.insert(h.images().to_vec()) {
                if seen.len() > MAX_ORDER {
                    return Err(LoopError::OrderTooLarge(seen.len()));
                }
                members.push(h.clone());
                frontier.push(h);
            }
        }
    }
    members.sort_by(|a, b| a.images().cmp(b.images()));
    let index_of = |p: &Perm| members.binary_search_by(|m| m.images().cmp(p.images())).unwrap();
    let n = members.len();
    let mut rows = vec![vec![0usize; n]; n];
    for (i, f) in members.iter().enumerate() {
        for (j, g) in members.iter().enumerate() {
            rows[i][j] = index_of(&f.compose(g));
        }
    }
    Ok(FiniteLoop::from_table(&rows)?.0)
}
