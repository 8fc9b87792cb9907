//! Monomial orders: lex, graded lex, graded reverse lex, block/elimination
//! orders, weight-matrix orders, and orders induced by a valuation table.
//!
//! All orders are total and multiplicative.  Weight and valuation-induced
//! comparisons are performed with integer-normalized weight rows, so a
//! comparison never allocates rationals.

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::poly::{Exponent, Polynomial};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Scale a rational row to integers by a positive factor.  Sign-preserving,
/// so the induced lexicographic comparisons are unchanged.
fn integer_row(v: &[Rat]) -> Vec<Int> {
    let mut scale = Int::one();
    for x in v {
        scale = scale.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from(scale.clone())).to_integer()).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Total order on a rational value space, realized by a nonsingular matrix:
/// `a` precedes `b` iff `O*a` is lexicographically smaller than `O*b`.
#[derive(Clone, PartialEq, Debug)]
pub struct ValueOrder {
    matrix: RatMatrix,
}

impl ValueOrder {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if matrix.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ValueOrder { matrix })
    }

    /// Standard lexicographic order on the value space.
    pub fn lex(rank: usize) -> Self {
        ValueOrder { matrix: RatMatrix::identity(rank) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// `Less` means `a` precedes `b` in the value order.
    pub fn compare(&self, a: &[Rat], b: &[Rat]) -> Ordering {
        let oa = self.matrix.mul_vec(a);
        let ob = self.matrix.mul_vec(b);
        for (x, y) in oa.iter().zip(&ob) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

/// Valuation data for the generators of a presented algebra: column `i` of
/// the matrix is the value of the `i`-th generator, so the value of a
/// monomial class is the matrix applied to its exponent vector.
#[derive(Clone, PartialEq, Debug)]
pub struct ValuationTable {
    matrix: RatMatrix,
    value_order: ValueOrder,
    degrees: Option<Vec<u32>>,
}

impl ValuationTable {
    pub fn new(matrix: RatMatrix, value_order: ValueOrder, degrees: Option<Vec<u32>>) -> Result<Self> {
        if value_order.rank() != matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: value_order.rank(),
                context: "value order rank",
            });
        }
        if let Some(d) = &degrees {
            if d.len() != matrix.cols() {
                return Err(Error::DimensionMismatch {
                    expected: matrix.cols(),
                    found: d.len(),
                    context: "degree vector",
                });
            }
            if let Some(idx) = d.iter().position(|&x| x == 0) {
                return Err(Error::NonpositiveDegree { index: idx });
            }
        }
        Ok(ValuationTable { matrix, value_order, degrees })
    }

    /// Number of value-space coordinates.
    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of generators / presentation-ring variables.
    pub fn num_generators(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn value_order(&self) -> &ValueOrder {
        &self.value_order
    }

    pub fn degrees(&self) -> Option<&[u32]> {
        self.degrees.as_deref()
    }

    pub fn generator_value(&self, i: usize) -> Vec<Rat> {
        self.matrix.col(i)
    }

    /// Value of the monomial class `x^e`: the matrix applied to `e`.
    pub fn monomial_value(&self, e: &Exponent) -> Vec<Rat> {
        assert_eq!(e.len(), self.num_generators(), "exponent length mismatch");
        (0..self.rank())
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .zip(e.entries())
                    .map(|(a, &k)| a * Rat::from(Int::from(k)))
                    .sum()
            })
            .collect()
    }
}

/// Total, multiplicative order on exponent vectors.
#[derive(Clone, PartialEq, Debug)]
pub enum MonomialOrder {
    /// Lexicographic, first variable strongest.
    Lex,
    /// Total degree, ties by lex.
    GrLex,
    /// Total degree, ties by reverse lex: the last nonzero entry of the
    /// difference being negative wins.
    GrevLex,
    /// Block order eliminating the first `split` variables: total degree on
    /// the first block, then `inner` on the first block, then `outer` on the
    /// remaining variables.
    Elimination { split: usize, inner: Box<MonomialOrder>, outer: Box<MonomialOrder> },
    /// Weight-matrix order: compares weight vectors lexicographically, ties
    /// broken by `tiebreak`.  The rows are integer-normalized at build time.
    Weight { rows: Vec<Vec<Int>>, tiebreak: Box<MonomialOrder> },
    /// Order induced by a valuation: a monomial is larger when its value
    /// precedes in the value order, ties broken by `tiebreak`.  Comparison is
    /// through cached integer weight rows equivalent to the definition.
    ValuationInduced { table: Box<ValuationTable>, rows: Vec<Vec<Int>>, tiebreak: Box<MonomialOrder> },
}

impl MonomialOrder {
    /// Weight-matrix order from rational rows; each row is scaled to a
    /// primitive integer vector (positive scaling preserves comparisons).
    pub fn weight_matrix(weights: &RatMatrix, tiebreak: MonomialOrder) -> Self {
        let rows = (0..weights.rows()).map(|i| integer_row(weights.row(i))).collect();
        MonomialOrder::Weight { rows, tiebreak: Box::new(tiebreak) }
    }

    pub fn weight_rows_i64(rows: &[&[i64]], tiebreak: MonomialOrder) -> Self {
        MonomialOrder::weight_matrix(&RatMatrix::from_i64_rows(rows), tiebreak)
    }

    /// Order induced by a valuation table: `x^a > x^b` iff the value of
    /// `x^a` precedes the value of `x^b`, ties resolved by `tiebreak`.
    ///
    /// With value order `O` and table matrix `N`, this is the weight order
    /// with rows `-(O*N)`; the rows are cached in integer-normalized form.
    pub fn valuation_induced(table: ValuationTable, tiebreak: MonomialOrder) -> Self {
        let combined = table.value_order().matrix().mul(table.matrix());
        let rows = (0..combined.rows())
            .map(|i| {
                let negated: Vec<Rat> = combined.row(i).iter().map(|x| -x.clone()).collect();
                integer_row(&negated)
            })
            .collect();
        MonomialOrder::ValuationInduced { table: Box::new(table), rows, tiebreak: Box::new(tiebreak) }
    }

    /// Order that puts one variable above everything else, then falls back.
    /// Used to test whether a generator is expressible in the others.
    pub fn single_variable_first(var: usize, nvars: usize, tiebreak: MonomialOrder) -> Self {
        let mut row = vec![Int::zero(); nvars];
        row[var] = Int::from(1);
        MonomialOrder::Weight { rows: vec![row], tiebreak: Box::new(tiebreak) }
    }

    /// Check the order can compare exponents of the given length.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Lex | MonomialOrder::GrLex | MonomialOrder::GrevLex => Ok(()),
            MonomialOrder::Elimination { split, inner, outer } => {
                if *split > nvars {
                    return Err(Error::DimensionMismatch {
                        expected: nvars,
                        found: *split,
                        context: "elimination block size",
                    });
                }
                inner.validate(*split)?;
                outer.validate(nvars - *split)
            }
            MonomialOrder::Weight { rows, tiebreak } => {
                for r in rows {
                    if r.len() != nvars {
                        return Err(Error::DimensionMismatch {
                            expected: nvars,
                            found: r.len(),
                            context: "weight row",
                        });
                    }
                }
                tiebreak.validate(nvars)
            }
            MonomialOrder::ValuationInduced { table, rows, tiebreak } => {
                if table.num_generators() != nvars {
                    return Err(Error::DimensionMismatch {
                        expected: nvars,
                        found: table.num_generators(),
                        context: "valuation table width",
                    });
                }
                for r in rows {
                    if r.len() != nvars {
                        return Err(Error::DimensionMismatch {
                            expected: nvars,
                            found: r.len(),
                            context: "valuation weight row",
                        });
                    }
                }
                tiebreak.validate(nvars)
            }
        }
    }

    /// Checked comparison; `Greater` means `a` is the larger monomial.
    pub fn try_compare(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
                context: "monomial comparison",
            });
        }
        self.validate(a.len())?;
        Ok(self.cmp_exp(a, b))
    }

    /// Comparison on validated input; `Greater` means `a` is larger.
    pub fn cmp_exp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        self.cmp_slice(a.entries(), b.entries())
    }

    fn cmp_slice(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::GrLex => cmp_degree(a, b).then_with(|| cmp_lex(a, b)),
            MonomialOrder::GrevLex => cmp_degree(a, b).then_with(|| cmp_revlex(a, b)),
            MonomialOrder::Elimination { split, inner, outer } => {
                cmp_degree(&a[..*split], &b[..*split])
                    .then_with(|| inner.cmp_slice(&a[..*split], &b[..*split]))
                    .then_with(|| outer.cmp_slice(&a[*split..], &b[*split..]))
            }
            MonomialOrder::Weight { rows, tiebreak }
            | MonomialOrder::ValuationInduced { rows, tiebreak, .. } => {
                for row in rows {
                    match weight_diff_sign(row, a, b) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                tiebreak.cmp_slice(a, b)
            }
        }
    }

    /// The valuation table behind a valuation-induced order, if any.
    pub fn valuation_table(&self) -> Option<&ValuationTable> {
        match self {
            MonomialOrder::ValuationInduced { table, .. } => Some(table),
            _ => None,
        }
    }

    pub fn tiebreak(&self) -> Option<&MonomialOrder> {
        match self {
            MonomialOrder::Weight { tiebreak, .. }
            | MonomialOrder::ValuationInduced { tiebreak, .. } => Some(tiebreak),
            _ => None,
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrLex => write!(f, "grlex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Elimination { split, inner, outer } => {
                write!(f, "elim({split}; {inner}; {outer})")
            }
            MonomialOrder::Weight { rows, tiebreak } => {
                write!(f, "weight({} rows; tiebreak {tiebreak})", rows.len())
            }
            MonomialOrder::ValuationInduced { rows, tiebreak, .. } => {
                write!(f, "valuation({} rows; tiebreak {tiebreak})", rows.len())
            }
        }
    }
}

fn cmp_degree(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db)
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn cmp_revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // Smaller last differing entry wins.
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

/// Sign of `row . (a - b)` computed in exact integers.
fn weight_diff_sign(row: &[Int], a: &[u32], b: &[u32]) -> Ordering {
    let mut acc = Int::zero();
    for ((w, &x), &y) in row.iter().zip(a).zip(b) {
        if x == y {
            continue;
        }
        acc += w * Int::from(x as i64 - y as i64);
    }
    acc.cmp(&Int::zero())
}

/// Leading exponent and coefficient of a nonzero polynomial.
pub fn leading_term(f: &Polynomial, order: &MonomialOrder) -> Result<(Exponent, Rat)> {
    order.validate(f.nvars())?;
    let lead = f
        .max_exponent_by(|a, b| order.cmp_exp(a, b))
        .ok_or(Error::ZeroPolynomial("leading term"))?
        .clone();
    let c = f.coefficient(&lead);
    Ok((lead, c))
}

/// Leading monomial only.
pub fn leading_monomial(f: &Polynomial, order: &MonomialOrder) -> Result<Exponent> {
    leading_term(f, order).map(|(e, _)| e)
}

/// The two largest monomials of `f`, largest first.
///
/// Errors when `f` has fewer than two terms.
pub fn two_leading_monomials(f: &Polynomial, order: &MonomialOrder) -> Result<(Exponent, Exponent)> {
    order.validate(f.nvars())?;
    if f.num_terms() < 2 {
        return Err(Error::TooFewTerms("two leading monomials"));
    }
    let mut top: Option<&Exponent> = None;
    let mut second: Option<&Exponent> = None;
    for (e, _) in f.terms() {
        match top {
            None => top = Some(e),
            Some(t) => {
                if order.cmp_exp(e, t) == Ordering::Greater {
                    second = top;
                    top = Some(e);
                } else {
                    match second {
                        None => second = Some(e),
                        Some(s) => {
                            if order.cmp_exp(e, s) == Ordering::Greater {
                                second = Some(e);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((top.unwrap().clone(), second.unwrap().clone()))
}
