//! Hadamard matrices: generators, verification, normalization, and the
//! bridge to `(1,1;d)`-cover-free families.
//!
//! A Hadamard matrix of order `n` is an `n x n` matrix over `{+1, -1}`
//! whose distinct rows are pairwise orthogonal. Orders other than 1 and 2
//! are multiples of 4; that classification is used here only as input
//! validation. Every matrix of order `4d` yields a `(1,1;d)`-family on
//! `4d - 1` points and blocks, and the bridge back is attempted by the
//! bordered map and then verified rather than assumed.

use crate::cff::CffInstance;
use crate::error::{Error, Result};
use crate::subset::IndexSubset;

/// Practical order ceiling for the generators. Large enough for every order
/// this crate works with; keeps a mistyped CLI argument from allocating
/// gigabytes.
pub const MAX_ORDER: usize = 4096;

/// A verified Hadamard matrix. Construction always checks orthogonality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    rows: Vec<Vec<i8>>,
}

/// Result of an orthogonality check on a candidate matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HadamardVerdict {
    Pass,
    /// First row pair (in row-major scan order) with nonzero dot product.
    Fail { row_a: usize, row_b: usize, dot: i64 },
}

impl HadamardVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, HadamardVerdict::Pass)
    }
}

/// Outcome of the bordered-map attempt in [`cff_to_hadamard_attempt`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HadamardAttempt {
    Matrix(HadamardMatrix),
    Failure { row_a: usize, row_b: usize, dot: i64 },
}

/// Checks a candidate: square, entries in `{+1, -1}`, all distinct row pairs
/// orthogonal. Shape or entry violations are domain errors; a failed dot
/// product is a [`HadamardVerdict::Fail`], not an error.
pub fn verify_hadamard(rows: &[Vec<i8>]) -> Result<HadamardVerdict> {
    let order = rows.len();
    if order == 0 {
        return Err(Error::domain("empty matrix"));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != order {
            return Err(Error::domain(format!(
                "row {i} has {} entries, expected {order}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|&e| e != 1 && e != -1) {
            return Err(Error::domain(format!(
                "entry ({i},{j}) is {}, expected +1 or -1",
                row[j]
            )));
        }
    }
    for a in 0..order {
        for b in a + 1..order {
            let dot: i64 = rows[a]
                .iter()
                .zip(&rows[b])
                .map(|(&x, &y)| x as i64 * y as i64)
                .sum();
            if dot != 0 {
                return Ok(HadamardVerdict::Fail {
                    row_a: a,
                    row_b: b,
                    dot,
                });
            }
        }
    }
    Ok(HadamardVerdict::Pass)
}

impl HadamardMatrix {
    /// Wraps candidate rows after a full orthogonality check.
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        match verify_hadamard(&rows)? {
            HadamardVerdict::Pass => Ok(HadamardMatrix {
                order: rows.len(),
                rows,
            }),
            HadamardVerdict::Fail { row_a, row_b, dot } => Err(Error::domain(format!(
                "rows {row_a} and {row_b} have dot product {dot}, matrix is not Hadamard"
            ))),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.rows[i][j]
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::overflow(format!(
            "order {order} outside the supported range 1..={MAX_ORDER}"
        )));
    }
    Ok(())
}

/// The order-`2^k` matrix from the doubling construction.
pub fn sylvester(k: u32) -> Result<HadamardMatrix> {
    let order = 1usize
        .checked_shl(k)
        .ok_or_else(|| Error::overflow(format!("2^{k}")))?;
    check_order(order)?;
    let mut rows = vec![vec![1i8]];
    let mut size = 1;
    while size < order {
        let mut next = Vec::with_capacity(size * 2);
        for row in &rows {
            let mut top: Vec<i8> = row.clone();
            top.extend_from_slice(row);
            next.push(top);
        }
        for row in &rows {
            let mut bottom: Vec<i8> = row.clone();
            bottom.extend(row.iter().map(|&e| -e));
            next.push(bottom);
        }
        rows = next;
        size *= 2;
    }
    debug_assert!(verify_hadamard(&rows).unwrap().passed());
    Ok(HadamardMatrix { order, rows })
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= q {
        if q.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// The order-`q+1` quadratic-residue construction, for primes
/// `q ≡ 3 (mod 4)`.
pub fn paley_type1(q: u64) -> Result<HadamardMatrix> {
    if !is_prime(q) {
        return Err(Error::domain(format!("q = {q} is not prime")));
    }
    if q % 4 != 3 {
        return Err(Error::domain(format!("q = {q} is not 3 mod 4")));
    }
    let order = q as usize + 1;
    check_order(order)?;

    // chi(a) = +1 for nonzero squares mod q, -1 for non-squares.
    let mut is_square = vec![false; q as usize];
    for a in 1..q {
        is_square[((a * a) % q) as usize] = true;
    }
    let chi = |a: u64| -> i8 {
        if is_square[(a % q) as usize] {
            1
        } else {
            -1
        }
    };

    // Bordered skew matrix S: zero diagonal, first row +1, first column -1,
    // interior the Jacobsthal entries chi(j - i). H = S + I.
    let mut rows = vec![vec![0i8; order]; order];
    rows[0][1..].fill(1);
    for row in rows[1..].iter_mut() {
        row[0] = -1;
    }
    for i in 0..q as usize {
        for j in 0..q as usize {
            if i != j {
                let diff = (j as u64 + q - i as u64) % q;
                rows[i + 1][j + 1] = chi(diff);
            }
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] += 1;
    }
    debug_assert!(verify_hadamard(&rows).unwrap().passed());
    Ok(HadamardMatrix { order, rows })
}

/// Kronecker product of two Hadamard matrices; the result has order
/// `a.order * b.order`.
pub fn kronecker(a: &HadamardMatrix, b: &HadamardMatrix) -> Result<HadamardMatrix> {
    let order = a
        .order
        .checked_mul(b.order)
        .ok_or_else(|| Error::overflow("product order".to_string()))?;
    check_order(order)?;
    let bn = b.order;
    let mut rows = vec![vec![0i8; order]; order];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = a.rows[i / bn][j / bn] * b.rows[i % bn][j % bn];
        }
    }
    Ok(HadamardMatrix { order, rows })
}

/// Negates whole rows and columns until the first row and first column are
/// all `+1`. Idempotent; orthogonality is preserved by sign flips.
pub fn normalize(h: &HadamardMatrix) -> HadamardMatrix {
    let mut rows = h.rows.clone();
    let order = h.order;
    for j in 0..order {
        if rows[0][j] == -1 {
            for row in rows.iter_mut() {
                row[j] = -row[j];
            }
        }
    }
    for row in rows.iter_mut() {
        if row[0] == -1 {
            for e in row.iter_mut() {
                *e = -*e;
            }
        }
    }
    HadamardMatrix { order, rows }
}

/// Extracts the `(1,1;d)`-family of an order-`4d` matrix: normalize, drop the
/// first row and column, and read each remaining row as a block over the
/// remaining columns (`+1` means membership).
///
/// The output has `t = n = 4d - 1` and every block has `2d - 1` points; all
/// residuals are exactly `d`.
pub fn hadamard_to_cff(h: &HadamardMatrix) -> Result<(CffInstance, u64)> {
    if !h.order.is_multiple_of(4) {
        return Err(Error::domain(format!(
            "order {} is not divisible by 4",
            h.order
        )));
    }
    let d = (h.order / 4) as u64;
    let m = h.order - 1;
    let normalized = normalize(h);
    let mut blocks = Vec::with_capacity(m);
    for i in 1..=m {
        let block = IndexSubset::from_elements(
            m,
            (1..=m).filter(|&j| normalized.rows[i][j] == 1).map(|j| j - 1),
        )
        .expect("column indices shift into 0..order-1");
        blocks.push(block);
    }
    Ok((CffInstance::new(m, blocks)?, d))
}

/// Attempts the reverse bridge: borders the incidence structure of a
/// `t = n = 4d - 1` instance with a `+1` row and column, maps membership to
/// `+1`, and verifies orthogonality.
///
/// There is no completeness claim: the natural bordered map is tried and the
/// result is checked, with the first offending row pair reported on failure.
pub fn cff_to_hadamard_attempt(f: &CffInstance, d: u64) -> Result<HadamardAttempt> {
    let m = 4usize
        .checked_mul(usize::try_from(d).map_err(|_| Error::overflow("4d"))?)
        .ok_or_else(|| Error::overflow("4d".to_string()))?
        .checked_sub(1)
        .ok_or_else(|| Error::domain("d must be >= 1"))?;
    if f.t() != m || f.n() != m {
        return Err(Error::domain(format!(
            "expected t = n = {m} for d = {d}, got t = {}, n = {}",
            f.t(),
            f.n()
        )));
    }
    let order = m + 1;
    check_order(order)?;
    let mut rows = vec![vec![1i8; order]; order];
    for i in 0..m {
        for j in 0..m {
            rows[i + 1][j + 1] = if f.block(i).contains(j) { 1 } else { -1 };
        }
    }
    match verify_hadamard(&rows)? {
        HadamardVerdict::Pass => Ok(HadamardAttempt::Matrix(HadamardMatrix { order, rows })),
        HadamardVerdict::Fail { row_a, row_b, dot } => {
            Ok(HadamardAttempt::Failure { row_a, row_b, dot })
        }
    }
}
