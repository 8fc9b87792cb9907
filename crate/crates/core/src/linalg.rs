//! Exact integer and rational linear algebra: dense matrices over the
//! rationals, column-style Hermite normal form with transformation matrix,
//! exact inverses, integer lattices, and deterministic orthogonal extensions.
//!
//! All sizes here are desk scale; the algorithms are the plain classical ones
//! with no modular or floating-point shortcuts.

use crate::error::{Error, Result};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix with arbitrary-precision rational entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| crate::rat_int(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> RatMatrix {
        RatMatrix {
            rows: hi - lo,
            cols: self.cols,
            data: self.data[lo * self.cols..hi * self.cols].to_vec(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Exact inverse via Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let s = &factor * &a[(col, j)];
                    a[(r, j)] -= s;
                    let s = &factor * &inv[(col, j)];
                    inv[(r, j)] -= s;
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a[(r, col)].is_zero()) {
                Some(p) => p,
                None => return Ok(Rat::zero()),
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &p;
                for j in col..n {
                    let s = &factor * &a[(col, j)];
                    a[(r, j)] -= s;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.independent_columns().len()
    }

    /// Greedy set of linearly independent column indices (leftmost first).
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut a = self.clone();
        let mut rank = 0;
        let mut picked = Vec::new();
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(pivot, rank);
            let p = a[(rank, col)].clone();
            for r in rank + 1..self.rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &p;
                for j in col..self.cols {
                    let s = &factor * &a[(rank, j)];
                    a[(r, j)] -= s;
                }
            }
            picked.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        picked
    }

    /// Stack columns of `self` and `other` side by side.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = RatMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rat>]) -> RatMatrix {
        let mut out = RatMatrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                out[(i, j)] = c[i].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense row-major matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ambient: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zero(ambient, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), ambient, "column length mismatch");
            for i in 0..ambient {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from(x.clone())).collect(),
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// col_dst -= q * col_src
    fn submul_col(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = q * &self[(i, src)];
            self[(i, dst)] -= s;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Column-style Hermite normal form.
///
/// Returns `(H, U)` with `M * U = H` and `U` unimodular.  `H` is in column
/// echelon form: pivots walk down and to the right, each pivot is positive,
/// entries to the left of a pivot in its row are reduced into `[0, pivot)`,
/// and zero columns are collected at the right.  Plain integer column
/// reduction, processing rows top to bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut next_col = 0;
    for row in 0..h.rows() {
        if next_col == h.cols() {
            break;
        }
        loop {
            // Pick the nonzero entry of smallest magnitude in this row at or
            // after next_col (ties broken by column index).
            let mut best: Option<usize> = None;
            for j in next_col..h.cols() {
                if h[(row, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if h[(row, j)].abs() < h[(row, b)].abs() {
                            best = Some(j);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(next_col, b);
            u.swap_cols(next_col, b);
            let mut done = true;
            for j in next_col + 1..h.cols() {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let q = h[(row, j)].div_floor(&h[(row, next_col)]);
                h.submul_col(j, next_col, &q);
                u.submul_col(j, next_col, &q);
                if !h[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, next_col)].is_zero() {
            continue;
        }
        if h[(row, next_col)].is_negative() {
            h.negate_col(next_col);
            u.negate_col(next_col);
        }
        let pivot = h[(row, next_col)].clone();
        for j in 0..next_col {
            let q = h[(row, j)].div_floor(&pivot);
            h.submul_col(j, next_col, &q);
            u.submul_col(j, next_col, &q);
        }
        next_col += 1;
    }
    (h, u)
}

/// Integer (or denominator-cleared rational) lattice with an HNF basis.
///
/// The lattice is the set `{ B * x / scale : x integral }` where `B` holds the
/// basis as columns.  The basis is canonical, so two lattices are equal as
/// sets if and only if their `(basis, scale)` pairs agree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
    scale: Int,
}

impl Lattice {
    /// Lattice spanned by the given rational vectors.
    ///
    /// An empty input (or all-zero input) yields the rank-0 lattice in the
    /// given ambient dimension.
    pub fn from_generators(ambient_dim: usize, generators: &[Vec<Rat>]) -> Result<Self> {
        for g in generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: g.len(),
                    context: "lattice generator",
                });
            }
        }
        let mut scale = Int::one();
        for g in generators {
            for x in g {
                scale = scale.lcm(x.denom());
            }
        }
        let cols: Vec<Vec<Int>> = generators
            .iter()
            .map(|g| g.iter().map(|x| (x * Rat::from(scale.clone())).to_integer()).collect())
            .collect();
        let m = IntMatrix::from_columns(ambient_dim, &cols);
        let (h, _) = hnf(&m);
        let rank = (0..h.cols()).take_while(|&j| !(0..ambient_dim).all(|i| h[(i, j)].is_zero())).count();
        let basis = IntMatrix::from_columns(ambient_dim, &(0..rank).map(|j| h.col(j)).collect::<Vec<_>>());
        Ok(Lattice { ambient_dim, basis, scale })
    }

    pub fn from_int_generators(ambient_dim: usize, generators: &[Vec<Int>]) -> Result<Self> {
        let gens: Vec<Vec<Rat>> = generators
            .iter()
            .map(|g| g.iter().map(|x| Rat::from(x.clone())).collect())
            .collect();
        Self::from_generators(ambient_dim, &gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as exact rational vectors (columns of `basis / scale`).
    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        (0..self.rank())
            .map(|j| {
                self.basis
                    .col(j)
                    .into_iter()
                    .map(|x| Rat::new(x, self.scale.clone()))
                    .collect()
            })
            .collect()
    }

    /// Basis vectors when the lattice is integral (scale 1).
    pub fn int_basis_vectors(&self) -> Option<Vec<Vec<Int>>> {
        if self.scale.is_one() {
            Some((0..self.rank()).map(|j| self.basis.col(j)).collect())
        } else {
            None
        }
    }

    /// Exact membership test against the echelon basis.
    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut w: Vec<Rat> = v.iter().map(|x| x * Rat::from(self.scale.clone())).collect();
        if w.iter().any(|x| !x.is_integer()) {
            return false;
        }
        // Forward-substitute along pivot rows of the echelon basis.
        for j in 0..self.rank() {
            let pivot_row = (0..self.ambient_dim)
                .find(|&i| !self.basis[(i, j)].is_zero())
                .expect("basis column is nonzero");
            let coeff = &w[pivot_row] / Rat::from(self.basis[(pivot_row, j)].clone());
            if !coeff.is_integer() {
                return false;
            }
            if coeff.is_zero() {
                continue;
            }
            for i in 0..self.ambient_dim {
                let s = &coeff * Rat::from(self.basis[(i, j)].clone());
                w[i] -= s;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Set equality via two-way basis membership.
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis_vectors().iter().all(|v| other.contains(v))
            && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Absolute determinant of the basis when the lattice has full rank equal
    /// to its ambient dimension (covolume of a fundamental domain).
    pub fn covolume(&self) -> Result<Rat> {
        if self.rank() != self.ambient_dim {
            return Err(Error::Invalid(format!(
                "covolume requires full rank (rank {}, ambient {})",
                self.rank(),
                self.ambient_dim
            )));
        }
        let det = self.basis.to_rational().det()?;
        let scale_pow = num_traits::pow::pow(Rat::from(self.scale.clone()), self.ambient_dim);
        Ok((det / scale_pow).abs())
    }
}

/// Deterministically extend `k_basis ∪ {d}` to a rational basis of the whole
/// space, with every added vector orthogonal to `d`.
///
/// Returns primitive integer vectors, sorted; the count is always
/// `ambient − rank(k_basis) − 1`.  Errors if `d` is zero or fails to be
/// orthogonal to the lattice basis.
pub fn orthogonal_extension(k_basis: &Lattice, d: &[Int]) -> Result<Vec<Vec<Int>>> {
    let m = k_basis.ambient_dim();
    if d.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: d.len(), context: "degree vector" });
    }
    if d.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector("orthogonal extension"));
    }
    let d_rat: Vec<Rat> = d.iter().map(|x| Rat::from(x.clone())).collect();
    for b in k_basis.basis_vectors() {
        let dot: Rat = b.iter().zip(&d_rat).map(|(a, c)| a * c).sum();
        if !dot.is_zero() {
            let witness = b
                .iter()
                .map(|x| (x * Rat::from(k_basis.scale.clone())).to_integer())
                .collect();
            return Err(Error::NotOrthogonal { vector: witness });
        }
    }

    // Integer kernel basis of d: with pivot j0, the vectors d_{j0} e_i − d_i e_{j0}.
    let j0 = d.iter().position(|x| !x.is_zero()).expect("d nonzero");
    let mut candidates: Vec<Vec<Int>> = Vec::new();
    for i in 0..m {
        if i == j0 {
            continue;
        }
        let mut v = vec![Int::zero(); m];
        v[i] = d[j0].clone();
        v[j0] = -d[i].clone();
        candidates.push(primitive(&v));
    }

    // Greedily keep candidates that grow the rank beyond span(k_basis).
    let mut span_rows: Vec<Vec<Rat>> = k_basis.basis_vectors();
    let base_rank = RatMatrix::from_rows(span_rows.clone()).rank();
    let mut rank = base_rank;
    let mut chosen: Vec<Vec<Int>> = Vec::new();
    for cand in candidates {
        if rank == m - 1 {
            break;
        }
        let cand_rat: Vec<Rat> = cand.iter().map(|x| Rat::from(x.clone())).collect();
        span_rows.push(cand_rat);
        let new_rank = RatMatrix::from_rows(span_rows.clone()).rank();
        if new_rank > rank {
            rank = new_rank;
            chosen.push(cand);
        } else {
            span_rows.pop();
        }
    }
    chosen.sort();
    Ok(chosen)
}

/// Divide an integer vector by the gcd of its entries and make the first
/// nonzero entry positive.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<Int> = v.iter().map(|x| x / &g).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out
}

/// Clear denominators of a rational vector to a primitive integer vector.
pub fn primitive_from_rational(v: &[Rat]) -> Vec<Int> {
    let mut scale = Int::one();
    for x in v {
        scale = scale.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from(scale.clone())).to_integer()).collect();
    primitive(&ints)
}
