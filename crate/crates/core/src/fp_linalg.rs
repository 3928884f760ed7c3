//! Exact linear algebra over prime fields `F_p`.
//!
//! Matrices hold residues in `[0, p)`. Subspaces are always kept in reduced
//! row echelon form with zero rows removed, so two [`Subspace`] values compare
//! equal exactly when they span the same set of vectors.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    // Fermat: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Checked `p^e`.
pub fn checked_pow(p: u64, e: u32) -> Option<u128> {
    (p as u128).checked_pow(e)
}

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{}) [", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{:?}", self.row(r))?;
            if r + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    /// Builds a matrix from row-major entries, reducing each entry mod `p`.
    pub fn new(p: u32, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        check_prime(p)?;
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            p,
            rows,
            cols,
            data: entries.iter().map(|&x| reduce(x, p)).collect(),
        })
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        Self::new(p, rows.len(), cols, &entries)
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    /// Rows are already reduced and `p` already validated.
    pub(crate) fn from_reduced_rows(p: u32, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Self {
            p,
            rows: n,
            cols,
            data,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = reduce(value, self.p);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Self {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} (p={}) by {}x{} (p={})",
                self.rows, self.cols, self.p, other.rows, other.cols, other.p
            )));
        }
        let p = self.p as u64;
        let mut data = vec![0u32; self.rows * other.cols];
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + self.get(r, k) as u64 * other.get(k, c) as u64) % p;
                }
                data[r * other.cols + c] = acc as u32;
            }
        }
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.p as u64;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p)
                    as u32
            })
            .collect())
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> FpMatrix {
        let (rows, _) = rref_rows(self.p, self.cols, self.row_vecs());
        Self::from_reduced_rows(self.p, self.cols, rows)
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.p, self.cols, self.row_vecs()).0.len()
    }

    /// `{v : M v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let (rows, pivots) = rref_rows(self.p, self.cols, self.row_vecs());
        nullspace_from_rref(self.p, self.cols, &rows, &pivots)
    }
}

/// Row-reduces `rows` in place to strict RREF and drops zero rows.
/// Returns the rows and their pivot columns.
pub(crate) fn rref_rows(
    p: u32,
    cols: usize,
    mut rows: Vec<Vec<u32>>,
) -> (Vec<Vec<u32>>, Vec<usize>) {
    if p == 2 && cols <= 64 {
        let mut packed: Vec<u64> = rows.iter().map(|r| pack_gf2(r)).collect();
        let pivots = rref_gf2(&mut packed, cols);
        let out = packed.iter().map(|&w| unpack_gf2(w, cols)).collect();
        return (out, pivots);
    }
    let mut pivots = Vec::new();
    let mut lead = 0usize;
    for col in 0..cols {
        let Some(found) = (lead..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(lead, found);
        let inv = inv_mod(rows[lead][col], p);
        if inv != 1 {
            for x in rows[lead].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[col] == 0 {
                continue;
            }
            let factor = neg_mod(row[col], p);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = add_mod(*x, mul_mod(factor, y, p), p);
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    (rows, pivots)
}

/// Column `c` is bit `c`.
pub(crate) fn pack_gf2(v: &[u32]) -> u64 {
    v.iter().enumerate().fold(
        0u64,
        |acc, (i, &x)| if x & 1 == 1 { acc | (1 << i) } else { acc },
    )
}

pub(crate) fn unpack_gf2(w: u64, cols: usize) -> Vec<u32> {
    (0..cols).map(|i| ((w >> i) & 1) as u32).collect()
}

/// XOR elimination on packed rows; truncates to the rank and returns pivots.
pub(crate) fn rref_gf2(rows: &mut Vec<u64>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut lead = 0usize;
    for col in 0..cols {
        let bit = 1u64 << col;
        let Some(found) = (lead..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(lead, found);
        let pivot = rows[lead];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != lead && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    pivots
}

/// Rank of packed GF(2) rows; destroys the input.
pub(crate) fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for row in rows[i + 1..].iter_mut() {
            if *row & low != 0 {
                *row ^= pivot;
            }
        }
    }
    rank
}

fn nullspace_from_rref(p: u32, cols: usize, rows: &[Vec<u32>], pivots: &[usize]) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(pivots) {
            v[pc] = neg_mod(row[free], p);
        }
        basis.push(v);
    }
    Subspace::from_vectors_unchecked(p, cols, basis)
}

/// A subspace of `F_p^n`, stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(p={}, dim {}/{}, basis {:?})",
            self.p(),
            self.dim(),
            self.ambient_dim(),
            self.basis.row_vecs()
        )
    }
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Result<Self> {
        Ok(Self {
            basis: FpMatrix::zeros(p, 0, n)?,
            pivots: Vec::new(),
        })
    }

    pub fn full(p: u32, n: usize) -> Result<Self> {
        Ok(Self {
            basis: FpMatrix::identity(p, n)?,
            pivots: (0..n).collect(),
        })
    }

    /// Span of the given vectors.
    pub fn span(p: u32, n: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != n {
                return Err(Error::Dimension(format!(
                    "vector of length {} in F_{p}^{n}",
                    v.len()
                )));
            }
            rows.push(v.iter().map(|&x| reduce(x, p)).collect());
        }
        Ok(Self::from_vectors_unchecked(p, n, rows))
    }

    pub fn row_space(m: &FpMatrix) -> Self {
        Self::from_vectors_unchecked(m.p(), m.cols(), m.row_vecs())
    }

    /// Vectors already reduced mod a validated prime.
    pub(crate) fn from_vectors_unchecked(p: u32, n: usize, vectors: Vec<Vec<u32>>) -> Self {
        let (rows, pivots) = rref_rows(p, n, vectors);
        Self {
            basis: FpMatrix::from_reduced_rows(p, n, rows),
            pivots,
        }
    }

    /// Packed GF(2) rows already in RREF.
    pub(crate) fn from_gf2_rref(n: usize, rows: &[u64]) -> Self {
        let mut packed = rows.to_vec();
        let pivots = rref_gf2(&mut packed, n);
        let rows = packed.iter().map(|&w| unpack_gf2(w, n)).collect();
        Self {
            basis: FpMatrix::from_reduced_rows(2, n, rows),
            pivots,
        }
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.dim()).map(move |r| self.basis.row(r))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p() != other.p() || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::Dimension(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.p(),
                self.ambient_dim(),
                other.p(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dim() {
            return false;
        }
        let p = self.p();
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            if w[pc] == 0 {
                continue;
            }
            let factor = neg_mod(w[pc], p);
            for (x, &y) in w.iter_mut().zip(self.basis.row(r)) {
                *x = add_mod(*x, mul_mod(factor, y, p), p);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.p() == other.p()
            && self.ambient_dim() == other.ambient_dim()
            && self.dim() <= other.dim()
            && self.basis_vectors().all(|v| other.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Ok(Self::from_vectors_unchecked(
            self.p(),
            self.ambient_dim(),
            rows,
        ))
    }

    /// Intersection as the common solution set of both constraint systems.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut constraints = self.dot_perp().basis.row_vecs();
        constraints.extend(other.dot_perp().basis.row_vecs());
        let m = FpMatrix::from_reduced_rows(self.p(), self.ambient_dim(), constraints);
        Ok(m.nullspace())
    }

    /// Orthogonal complement under the standard dot product.
    pub fn dot_perp(&self) -> Subspace {
        nullspace_from_rref(
            self.p(),
            self.ambient_dim(),
            &self.basis.row_vecs(),
            &self.pivots,
        )
    }

    /// Every vector of the subspace, ordered by coefficient tuple.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.p();
        let n = self.ambient_dim();
        let d = self.dim();
        let count = (p as usize).pow(d as u32);
        let mut out = Vec::with_capacity(count);
        let mut coeffs = vec![0u32; d];
        for _ in 0..count {
            let mut v = vec![0u32; n];
            for (r, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(self.basis.row(r)) {
                        *x = add_mod(*x, mul_mod(c, y, p), p);
                    }
                }
            }
            out.push(v);
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
        }
        out
    }
}

/// Number of `k`-dimensional subspaces of `F_p^n`. Fails on overflow.
pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> Result<u128> {
    if k > n {
        return Err(Error::Dimension(format!("k={k} exceeds n={n}")));
    }
    let overflow = || Error::Overflow(format!("gaussian binomial [{n} choose {k}]_{p}"));
    // [n, i+1] = [n, i] * (p^(n-i) - 1) / (p^(i+1) - 1); exact at every step
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = checked_pow(p, (n - i) as u32).ok_or_else(overflow)? - 1;
        let den = checked_pow(p, (i + 1) as u32).ok_or_else(overflow)? - 1;
        acc = acc.checked_mul(num).ok_or_else(overflow)? / den;
    }
    Ok(acc)
}

/// Total number of subspaces of `F_p^n`.
pub fn subspace_count(n: usize, p: u64) -> Result<u128> {
    (0..=n).try_fold(0u128, |acc, k| {
        acc.checked_add(gaussian_binomial(n, k, p)?)
            .ok_or_else(|| Error::Overflow(format!("subspace count of F_{p}^{n}")))
    })
}

/// One RREF shape: the pivot columns and the free positions a basis in that
/// shape may fill with arbitrary residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotPattern {
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

impl PivotPattern {
    pub fn new(n: usize, pivots: Vec<usize>) -> Self {
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !is_pivot[c] {
                    free.push((r, c));
                }
            }
        }
        Self { n, pivots, free }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    /// Calls `f` with the RREF rows of every subspace in this pattern.
    pub fn for_each_basis<F: FnMut(&[Vec<u32>])>(&self, p: u32, mut f: F) {
        let mut rows: Vec<Vec<u32>> = self
            .pivots
            .iter()
            .map(|&pc| {
                let mut r = vec![0u32; self.n];
                r[pc] = 1;
                r
            })
            .collect();
        loop {
            f(&rows);
            // odometer over free positions
            let mut i = 0;
            loop {
                if i == self.free.len() {
                    return;
                }
                let (r, c) = self.free[i];
                rows[r][c] += 1;
                if rows[r][c] < p {
                    break;
                }
                rows[r][c] = 0;
                i += 1;
            }
        }
    }

    /// GF(2) variant over packed rows (bit `c` is column `c`); `n <= 64`.
    pub fn for_each_basis_gf2<F: FnMut(&[u64])>(&self, mut f: F) {
        assert!(self.n <= 64 && self.free.len() < 64);
        let base: Vec<u64> = self.pivots.iter().map(|&pc| 1u64 << pc).collect();
        let mut rows = base.clone();
        let total = 1u64 << self.free.len();
        for mask in 0..total {
            rows.copy_from_slice(&base);
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                let (r, c) = self.free[i];
                rows[r] |= 1u64 << c;
                m &= m - 1;
            }
            f(&rows);
        }
    }
}

/// All pivot patterns of `k`-dimensional subspaces of `F_p^n`, in
/// lexicographic order of pivot columns.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<PivotPattern> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(PivotPattern::new(n, combo.clone()));
        let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
    out
}

/// Pivot patterns for every dimension `0..=n`, or just dimension `k`.
pub fn all_pivot_patterns(n: usize, k: Option<usize>) -> Vec<PivotPattern> {
    match k {
        Some(k) => pivot_patterns(n, k),
        None => (0..=n).flat_map(|k| pivot_patterns(n, k)).collect(),
    }
}

/// Streams the subspaces of `F_p^n` of dimension `k` (all dimensions when
/// `k` is `None`), each exactly once.
pub fn enumerate_subspaces(
    p: u32,
    n: usize,
    k: Option<usize>,
) -> Result<impl Iterator<Item = Subspace>> {
    check_prime(p)?;
    if let Some(k) = k {
        if k > n {
            return Err(Error::Dimension(format!("k={k} exceeds n={n}")));
        }
    }
    Ok(all_pivot_patterns(n, k)
        .into_iter()
        .flat_map(move |pattern| {
            let mut batch = Vec::new();
            pattern.for_each_basis(p, |rows| {
                batch.push(Subspace {
                    basis: FpMatrix::from_reduced_rows(p, n, rows.to_vec()),
                    pivots: pattern.pivots.clone(),
                })
            });
            batch
        }))
}

/// Solution space of `A Z = Z B` over all elementary anti-symmetric
/// `Z = E_ij - E_ji`, in the `2n^2` unknowns `(A, B)` (row-major `A`, then
/// row-major `B`).
pub fn scalar_pair_solutions(n: usize, p: u32) -> Result<Subspace> {
    check_prime(p)?;
    if n < 2 {
        return Err(Error::Dimension(format!("n={n}, need n >= 2")));
    }
    let unknowns = 2 * n * n;
    let a = |r: usize, c: usize| r * n + c;
    let b = |r: usize, c: usize| n * n + r * n + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let minus_one = p - 1;
    for i in 0..n {
        for j in i + 1..n {
            // (AZ)[r][c] = A[r][i][c==j] - A[r][j][c==i]
            // (ZB)[r][c] = [r==i] B[j][c] - [r==j] B[i][c]
            for r in 0..n {
                for c in 0..n {
                    let mut row = vec![0u32; unknowns];
                    let mut bump = |idx: usize, v: u32| row[idx] = add_mod(row[idx], v, p);
                    if c == j {
                        bump(a(r, i), 1);
                    }
                    if c == i {
                        bump(a(r, j), minus_one);
                    }
                    if r == i {
                        bump(b(j, c), minus_one);
                    }
                    if r == j {
                        bump(b(i, c), 1);
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let m = FpMatrix::from_reduced_rows(p, unknowns, rows);
    Ok(m.nullspace())
}

pub fn scalar_pair_solution_dim(n: usize, p: u32) -> Result<usize> {
    Ok(scalar_pair_solutions(n, p)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(2, 3).unwrap();
        assert_eq!(id.rref(), id);

        let dup = FpMatrix::from_rows(2, 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            dup.rref(),
            FpMatrix::from_rows(2, 2, &[vec![1, 1]]).unwrap()
        );

        let swap = FpMatrix::from_rows(3, 2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.rref(), FpMatrix::identity(3, 2).unwrap());
    }

    #[test]
    fn rref_general_p_scales_pivots() {
        let m = FpMatrix::from_rows(5, 3, &[vec![2, 4, 1], vec![3, 1, 0]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.get(0, 0), 1);
        assert_eq!(r.get(1, 0), 0);
        assert_eq!(Subspace::row_space(&m), Subspace::row_space(&r));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(FpMatrix::zeros(4, 1, 1), Err(Error::NotPrime(4))));
        assert!(Subspace::zero(1, 2).is_err());
    }

    #[test]
    fn nullspace_examples() {
        let z = FpMatrix::zeros(3, 2, 2).unwrap();
        assert_eq!(z.nullspace(), Subspace::full(3, 2).unwrap());

        for p in [2, 3, 5] {
            let id = FpMatrix::identity(p, 3).unwrap();
            assert_eq!(id.nullspace().dim(), 0);
        }

        let m = FpMatrix::from_rows(2, 3, &[vec![1, 1, 0]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 2);
        assert_eq!(
            ns,
            Subspace::span(2, 3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap()
        );
        for v in ns.elements() {
            assert!(m.apply(&v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(7, 0, 3).unwrap(), 1);
        assert_eq!(gaussian_binomial(2, 1, 3).unwrap(), 4);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert!(matches!(
            gaussian_binomial(200, 100, 7),
            Err(Error::Overflow(_))
        ));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_subspaces(2, 2, Some(1)).unwrap().count(), 3);
        let zero: Vec<_> = enumerate_subspaces(5, 3, Some(0)).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(5, 3).unwrap()]);
        assert_eq!(enumerate_subspaces(2, 4, Some(2)).unwrap().count(), 35);
    }

    /// Brute force: distinct row spaces of every rank-2 2x4 matrix over F_2.
    #[test]
    fn two_planes_in_f2_4_by_brute_force() {
        use std::collections::HashSet;
        let mut seen = HashSet::new();
        for a in 0u32..16 {
            for b in 0u32..16 {
                let rows: Vec<Vec<u32>> = [a, b]
                    .iter()
                    .map(|&x| (0..4).map(|i| (x >> i) & 1).collect())
                    .collect();
                let s = Subspace::from_vectors_unchecked(2, 4, rows);
                if s.dim() == 2 {
                    let mut elems = s.elements();
                    elems.sort();
                    seen.insert(elems);
                }
            }
        }
        assert_eq!(seen.len(), 35);
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(3, 3, &[vec![1, 2, 0]]).unwrap();
        let zero = Subspace::zero(3, 3).unwrap();
        let full = Subspace::full(3, 3).unwrap();
        assert_eq!(a.sum(&zero).unwrap(), a);
        assert_eq!(a.intersect(&full).unwrap(), a);

        let l1 = Subspace::span(2, 2, &[vec![1, 0]]).unwrap();
        let l2 = Subspace::span(2, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(l1.sum(&l2).unwrap(), Subspace::full(2, 2).unwrap());
        assert_eq!(l1.intersect(&l2).unwrap().dim(), 0);

        let other = Subspace::zero(3, 4).unwrap();
        assert!(a.sum(&other).is_err());
        assert!(a.intersect(&Subspace::zero(2, 3).unwrap()).is_err());
    }

    #[test]
    fn gf2_pattern_walk_matches_generic_walk() {
        for k in 0..=5 {
            for pattern in pivot_patterns(5, k) {
                let mut generic = Vec::new();
                pattern.for_each_basis(2, |rows| {
                    generic.push(rows.iter().map(|r| pack_gf2(r)).collect::<Vec<_>>())
                });
                let mut packed = Vec::new();
                pattern.for_each_basis_gf2(|rows| packed.push(rows.to_vec()));
                generic.sort();
                packed.sort();
                assert_eq!(generic, packed);
            }
        }
    }

    #[test]
    fn scalar_pair_dimensions() {
        assert_eq!(scalar_pair_solution_dim(3, 2).unwrap(), 1);
        assert_eq!(scalar_pair_solution_dim(4, 5).unwrap(), 1);
        assert_eq!(scalar_pair_solution_dim(2, 3).unwrap(), 4);
    }
}
