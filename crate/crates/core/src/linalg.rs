//! Exact linear algebra over ℚ.
//!
//! Kernels of tall sparse systems are found in three passes: rows that are
//! independent modulo a large prime are selected incrementally, the kernel of
//! the selected rows is computed exactly by fraction-free elimination, and
//! every original row is then checked exactly against that kernel. A row that
//! fails the check is added to the selection and the exact pass repeats, so
//! the result never depends on the modular image being faithful.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp::{self, P};
use crate::rational::{BigRational, Rational};

pub type SparseRow = Vec<(usize, Rational)>;

/// A subspace of ℚ^k with labeled coordinates, stored in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    labels: Vec<String>,
    rows: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(labels: Vec<String>) -> Self {
        Subspace { labels, rows: Vec::new() }
    }

    pub fn full(labels: Vec<String>) -> Self {
        let k = labels.len();
        let rows = (0..k)
            .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Subspace { labels, rows }
    }

    pub fn from_spanning(labels: Vec<String>, vectors: Vec<Vec<Rational>>) -> Self {
        let k = labels.len();
        assert!(vectors.iter().all(|v| v.len() == k), "vector length mismatch");
        let (rows, _) = rref(vectors, k);
        Subspace { labels, rows }
    }

    /// Solutions x of `row · x = 0` for every row.
    pub fn kernel(labels: Vec<String>, rows: &[SparseRow]) -> Self {
        let k = labels.len();
        let basis = kernel_basis(k, rows);
        Subspace::from_spanning(labels, basis)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn pivot_of(row: &[Rational]) -> usize {
        row.iter().position(|c| !c.is_zero()).expect("RREF rows are nonzero")
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        let mut r = v.to_vec();
        for row in &self.rows {
            let p = Self::pivot_of(row);
            let c = r[p].clone();
            if !c.is_zero() {
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&c * y);
                    }
                }
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::from_spanning(self.labels.clone(), v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let k = self.ambient_dim();
        // Equations of `other`: its orthogonal complement.
        let comp = kernel_basis(k, &other.rows.iter().map(|r| to_sparse(r)).collect::<Vec<_>>());
        let eqs: Vec<SparseRow> = comp
            .iter()
            .map(|c| {
                self.rows
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (i, dot_dense(a, c)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        let alphas = kernel_basis(self.dim(), &eqs);
        let vecs = alphas
            .iter()
            .map(|al| {
                let mut v = vec![Rational::zero(); k];
                for (a, row) in al.iter().zip(&self.rows) {
                    if !a.is_zero() {
                        for (x, y) in v.iter_mut().zip(row) {
                            *x += &(a * y);
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.labels.clone(), vecs)
    }

    /// Recomputes the canonical form; the result equals `self`.
    pub fn canonicalize(&self) -> Subspace {
        Subspace::from_spanning(self.labels.clone(), self.rows.clone())
    }
}

pub fn to_sparse(v: &[Rational]) -> SparseRow {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn dot_sparse(row: &SparseRow, v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, c) in row {
        if !v[*i].is_zero() {
            acc += &(c * &v[*i]);
        }
    }
    acc
}

fn dot_dense(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

fn primitive_int_row(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().filter(|c| !c.is_zero()).fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|c| if c.is_zero() { BigInt::zero() } else { c.numer() * (&lcm / c.denom()) })
        .collect();
    normalize_content(&mut out);
    out
}

fn normalize_content(v: &mut [BigInt]) {
    let g = v.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Reduced row-echelon form by fraction-free elimination.
///
/// Rows are scaled to primitive integer vectors; the pivot in each column is
/// the first remaining row with a nonzero entry there, and eliminations use
/// cross-multiplication followed by removal of the row content. Returns the
/// nonzero RREF rows and their pivot columns.
pub fn rref(rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_int_row(r)).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, sel);
        let prow = m[rank].clone();
        let pv = prow[col].clone();
        let eliminate = |row: &mut Vec<BigInt>| {
            let a = row[col].clone();
            if a.is_zero() {
                return;
            }
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                *x = &*x * &pv - &a * y;
            }
            normalize_content(row);
        };
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank {
                eliminate(row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);
    let out = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter()
                .map(|x| if x.is_zero() { Rational::zero() } else { Rational::from_big(BigRational::new(x, lead.clone())) })
                .collect()
        })
        .collect();
    (out, pivots)
}

/// Basis of {x : row·x = 0 for all rows} for dense rows, one vector per free column.
pub fn kernel_dense(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect()
}

/// Incremental reduced echelon form modulo [`P`].
struct ModEchelon {
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl ModEchelon {
    fn new(ncols: usize) -> Self {
        ModEchelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds the row if it is independent; returns whether it was.
    fn insert(&mut self, row: &[(usize, u64)]) -> bool {
        let mut v = vec![0u64; self.ncols];
        for &(c, x) in row {
            v[c] = modp::add(v[c], x, P);
        }
        // The stored rows are fully reduced, so each pivot entry of `row` is
        // cleared by exactly one subtraction that touches no other pivot.
        for &(c, _) in row {
            if let Some(ri) = self.pivot_row[c] {
                let f = v[c];
                if f != 0 {
                    for (x, y) in v.iter_mut().zip(&self.rows[ri]) {
                        if *y != 0 {
                            *x = modp::sub(*x, modp::mul(f, *y, P), P);
                        }
                    }
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else { return false };
        let inv = modp::inv(v[pc], P);
        for x in v.iter_mut() {
            *x = modp::mul(*x, inv, P);
        }
        for r in self.rows.iter_mut() {
            let f = r[pc];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    if *y != 0 {
                        *x = modp::sub(*x, modp::mul(f, *y, P), P);
                    }
                }
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(v);
        true
    }
}

/// Indices of a maximal set of rows independent modulo [`P`], plus every row
/// whose reduction modulo [`P`] is undefined.
fn modular_selection(ncols: usize, rows: &[SparseRow]) -> Vec<usize> {
    let mut ech = ModEchelon::new(ncols);
    let mut selected = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if ech.rank() == ncols {
            break;
        }
        let reduced: Option<Vec<(usize, u64)>> =
            row.iter().map(|(c, x)| x.mod_prime(P).map(|m| (*c, m))).collect();
        match reduced {
            Some(r) => {
                if ech.insert(&r) {
                    selected.push(i);
                }
            }
            None => selected.push(i),
        }
    }
    selected
}

fn densify(row: &SparseRow, ncols: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); ncols];
    for (c, x) in row {
        v[*c] += x;
    }
    v
}

/// Exact kernel basis of a sparse system (see the module documentation).
pub fn kernel_basis(ncols: usize, rows: &[SparseRow]) -> Vec<Vec<Rational>> {
    let mut selected = modular_selection(ncols, rows);
    loop {
        let dense: Vec<Vec<Rational>> = selected.iter().map(|&i| densify(&rows[i], ncols)).collect();
        let k = kernel_dense(&dense, ncols);
        if k.is_empty() {
            return k;
        }
        match rows.iter().position(|r| k.iter().any(|v| !dot_sparse(r, v).is_zero())) {
            None => return k,
            Some(i) => selected.push(i),
        }
    }
}

/// Rank of a dense rational matrix.
pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Whether every entry is an integer of absolute value at most `bound`.
pub fn entries_bounded(rows: &[Vec<Rational>], bound: i64) -> bool {
    let b = BigInt::from(bound);
    rows.iter().flatten().all(|x| x.is_integer() && x.numer().abs() <= b)
}
