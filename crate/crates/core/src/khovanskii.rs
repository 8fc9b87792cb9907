//! Toric exponents, the relation lattice of an ideal, the induced quotient
//! valuation with its coordinate context, validity certificates, and the
//! linear equivalence between the quotient valuation and a generator
//! valuation.

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{orthogonal_extension, Lattice, RatMatrix};
use crate::order::{leading_monomial, two_leading_monomials, MonomialOrder, ValuationTable};
use crate::poly::{Exponent, Polynomial};
use crate::sagbi::QuotientElement;
use crate::{rat_int, Int, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Difference of the two largest exponents of `f` under the order.
///
/// Rejects zero polynomials and monomials, which have no second monomial.
pub fn toric_exponent(f: &Polynomial, order: &MonomialOrder) -> Result<Vec<Int>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("toric exponent"));
    }
    if f.is_monomial() {
        return Err(Error::TooFewTerms("toric exponent"));
    }
    let (first, second) = two_leading_monomials(f, order)?;
    Ok(first.signed_diff(&second))
}

/// Lattice spanned by the toric exponents of the basis elements.
///
/// Errors when an element is a monomial: the construction requires a prime,
/// monomial-free ideal.
pub fn lattice_k(gb: &GroebnerBasis) -> Result<Lattice> {
    let mut gens = Vec::with_capacity(gb.elements().len());
    for g in gb.elements() {
        if g.is_monomial() {
            return Err(Error::MonomialInBasis { element: g.to_string() });
        }
        gens.push(toric_exponent(g, gb.order())?);
    }
    Lattice::from_int_generators(gb.nvars(), &gens)
}

/// Lattice spanned by all exponent differences with equal valuation among
/// monomials of total degree at most `bound`.
///
/// This is a cross-validation oracle for [`lattice_k`]: the untruncated
/// lattices agree, so at a degree bound covering the basis the two must
/// contain each other's generators.
pub fn lattice_k_from_valuation(table: &ValuationTable, bound: u32) -> Result<Lattice> {
    let m = table.num_generators();
    let mut groups: BTreeMap<Vec<Rat>, Vec<Exponent>> = BTreeMap::new();
    let mut cur = vec![0u32; m];
    collect_bounded(&mut cur, 0, bound, &mut |e: &[u32]| {
        let exp = Exponent::new(e.to_vec());
        let value = table.monomial_value(&exp);
        groups.entry(value).or_default().push(exp);
    });
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for exps in groups.values() {
        for other in &exps[1..] {
            gens.push(other.signed_diff(&exps[0]));
        }
    }
    Lattice::from_int_generators(m, &gens)
}

fn collect_bounded(cur: &mut Vec<u32>, var: usize, remaining: u32, visit: &mut impl FnMut(&[u32])) {
    if var == cur.len() {
        visit(cur);
        return;
    }
    for k in 0..=remaining {
        cur[var] = k;
        collect_bounded(cur, var + 1, remaining - k, visit);
    }
    cur[var] = 0;
}

/// Optional overrides for assembling the coordinate matrix.
#[derive(Clone, Debug, Default)]
pub struct MuContextOptions {
    /// Use this full basis matrix instead of assembling one.  Columns must be
    /// a lattice basis, then the degree vector, then vectors orthogonal to it.
    pub w_override: Option<RatMatrix>,
    /// Replace the deterministic orthogonal extension with these vectors.
    pub extension_override: Option<Vec<Vec<Int>>>,
}

/// Coordinate context for the quotient valuation.
///
/// Columns `1..ell` of `w` are a basis of the relation lattice, column
/// `ell+1` is the degree vector when degrees are present, and the remaining
/// columns extend to a full basis orthogonally to the degrees.  The valuation
/// of a class reads off the last `m - ell` rows of the inverse applied to the
/// leading exponent of its normal form.
#[derive(Clone, Debug)]
pub struct MuContext {
    gb: Option<Arc<GroebnerBasis>>,
    k: Lattice,
    w: RatMatrix,
    winv: RatMatrix,
    ell: usize,
    nvars: usize,
    degrees: Option<Vec<u32>>,
}

impl MuContext {
    pub fn gb(&self) -> Option<&Arc<GroebnerBasis>> {
        self.gb.as_ref()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.k
    }

    pub fn w(&self) -> &RatMatrix {
        &self.w
    }

    pub fn winv(&self) -> &RatMatrix {
        &self.winv
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degrees(&self) -> Option<&[u32]> {
        self.degrees.as_deref()
    }

    /// Rows of the inverse that carry valuation coordinates, as a matrix
    /// whose column `i` is the value of the `i`-th variable class.
    pub fn mu_matrix(&self) -> RatMatrix {
        self.winv.row_slice(self.ell, self.nvars)
    }

    /// Value of a standard-monomial exponent.
    pub fn mu_of_exponent(&self, e: &Exponent) -> MuValue {
        let v: Vec<Rat> = e.entries().iter().map(|&k| rat_int(k as i64)).collect();
        let coords = self.mu_matrix().mul_vec(&v);
        MuValue { coords }
    }

    /// Compare two values in the image order: a value precedes another when
    /// its minimal standard representative is the larger monomial.
    ///
    /// Representatives are searched only up to the degree bound; a value with
    /// no representative in range is an explicit error rather than a guess.
    pub fn compare_mu(&self, a: &MuValue, b: &MuValue, bound: u32) -> Result<std::cmp::Ordering> {
        if a == b {
            return Ok(std::cmp::Ordering::Equal);
        }
        let gb = self
            .gb()
            .ok_or(Error::Invalid("image-order comparison requires a basis-backed context".into()))?;
        let order = gb.order();
        let mut reps: BTreeMap<Vec<Rat>, Exponent> = BTreeMap::new();
        for e in gb.standard_monomials_up_to(bound) {
            let coords = self.mu_of_exponent(&e).coords;
            match reps.entry(coords) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(e);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    if order.cmp_exp(&e, o.get()) == std::cmp::Ordering::Less {
                        o.insert(e);
                    }
                }
            }
        }
        let rep_a = reps.get(&a.coords).ok_or(Error::DegreeBoundExceeded { bound })?;
        let rep_b = reps.get(&b.coords).ok_or(Error::DegreeBoundExceeded { bound })?;
        // Larger representative monomial means the value comes earlier.
        Ok(order.cmp_exp(rep_a, rep_b).reverse())
    }
}

/// Value of the quotient valuation: coordinates of the leading exponent with
/// respect to the non-lattice basis columns.  The stored coordinates use the
/// positive exponent convention; the min-valuation value is the negation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MuValue {
    pub coords: Vec<Rat>,
}

impl MuValue {
    pub fn add(&self, other: &MuValue) -> MuValue {
        MuValue {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Assemble the coordinate context from a basis of the ideal.
pub fn build_mu_context(
    gb: &Arc<GroebnerBasis>,
    degrees: Option<&[u32]>,
    opts: &MuContextOptions,
) -> Result<MuContext> {
    let k = lattice_k(gb)?;
    build_context_inner(Some(gb.clone()), k, degrees, opts)
}

/// Assemble the coordinate context from a precomputed relation lattice.
pub fn build_mu_context_from_lattice(
    k: Lattice,
    degrees: Option<&[u32]>,
    opts: &MuContextOptions,
) -> Result<MuContext> {
    build_context_inner(None, k, degrees, opts)
}

fn build_context_inner(
    gb: Option<Arc<GroebnerBasis>>,
    k: Lattice,
    degrees: Option<&[u32]>,
    opts: &MuContextOptions,
) -> Result<MuContext> {
    let m = k.ambient_dim();
    let ell = k.rank();
    if let Some(d) = degrees {
        if d.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: d.len(),
                context: "degree vector",
            });
        }
        if let Some(idx) = d.iter().position(|&x| x == 0) {
            return Err(Error::NonpositiveDegree { index: idx });
        }
        // Degrees must annihilate the lattice.
        let d_rat: Vec<Rat> = d.iter().map(|&x| rat_int(x as i64)).collect();
        for b in k.basis_vectors() {
            let dot: Rat = b.iter().zip(&d_rat).map(|(a, c)| a * c).sum();
            if !dot.is_zero() {
                return Err(Error::NotOrthogonal {
                    vector: crate::linalg::primitive_from_rational(&b),
                });
            }
        }
    }

    let w = match &opts.w_override {
        Some(w) => {
            validate_w_override(w, &k, degrees)?;
            w.clone()
        }
        None => {
            let mut cols: Vec<Vec<Rat>> = k.basis_vectors();
            match degrees {
                Some(d) => {
                    let d_int: Vec<Int> = d.iter().map(|&x| Int::from(x)).collect();
                    cols.push(d_int.iter().map(|x| Rat::from(x.clone())).collect());
                    let ext = match &opts.extension_override {
                        Some(vectors) => {
                            validate_extension(vectors, &k, &d_int)?;
                            vectors.clone()
                        }
                        None => orthogonal_extension(&k, &d_int)?,
                    };
                    for v in ext {
                        cols.push(v.iter().map(|x| Rat::from(x.clone())).collect());
                    }
                }
                None => {
                    // Ungraded: extend by standard basis vectors, greedily.
                    let mut mat = RatMatrix::from_columns(m, &cols);
                    for i in 0..m {
                        if mat.cols() == m {
                            break;
                        }
                        let mut e = vec![Rat::zero(); m];
                        e[i] = rat_int(1);
                        let cand = mat.hstack(&RatMatrix::from_columns(m, &[e.clone()]));
                        if cand.rank() > mat.cols() {
                            mat = cand;
                            cols.push(e);
                        }
                    }
                }
            }
            RatMatrix::from_columns(m, &cols)
        }
    };
    if w.rows() != m || w.cols() != m {
        return Err(Error::NotSquare { rows: w.rows(), cols: w.cols() });
    }
    let winv = w.invert()?;
    Ok(MuContext { gb, k, w, winv, ell, nvars: m, degrees: degrees.map(<[u32]>::to_vec) })
}

fn validate_w_override(w: &RatMatrix, k: &Lattice, degrees: Option<&[u32]>) -> Result<()> {
    let m = k.ambient_dim();
    let ell = k.rank();
    if w.rows() != m || w.cols() != m {
        return Err(Error::NotSquare { rows: w.rows(), cols: w.cols() });
    }
    // Leading columns must generate the same lattice.
    let lead_cols: Vec<Vec<Rat>> = (0..ell).map(|j| w.col(j)).collect();
    let lead_lattice = Lattice::from_generators(m, &lead_cols)?;
    if !lead_lattice.same_lattice(k) {
        return Err(Error::Invalid(
            "override basis columns do not generate the relation lattice".into(),
        ));
    }
    if let Some(d) = degrees {
        let d_col = w.col(ell);
        for (j, &dj) in d.iter().enumerate() {
            if d_col[j] != rat_int(dj as i64) {
                return Err(Error::Invalid(
                    "override column after the lattice basis must be the degree vector".into(),
                ));
            }
        }
        for j in ell + 1..m {
            let dot: Rat = w
                .col(j)
                .iter()
                .zip(d)
                .map(|(a, &dj)| a * rat_int(dj as i64))
                .sum();
            if !dot.is_zero() {
                return Err(Error::Invalid(format!(
                    "override column {} is not orthogonal to the degrees",
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn validate_extension(vectors: &[Vec<Int>], k: &Lattice, d: &[Int]) -> Result<()> {
    let m = k.ambient_dim();
    let expected = m - k.rank() - 1;
    if vectors.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: vectors.len(),
            context: "extension override",
        });
    }
    let mut rows: Vec<Vec<Rat>> = k.basis_vectors();
    rows.push(d.iter().map(|x| Rat::from(x.clone())).collect());
    for v in vectors {
        let dot: Int = v.iter().zip(d).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return Err(Error::NotOrthogonal { vector: v.clone() });
        }
        rows.push(v.iter().map(|x| Rat::from(x.clone())).collect());
    }
    if RatMatrix::from_rows(rows).rank() != m {
        return Err(Error::Invalid("extension override is not full rank".into()));
    }
    Ok(())
}

/// Quotient valuation of a nonzero class: coordinates of the leading
/// exponent of its normal form.
pub fn mu(e: &QuotientElement, ctx: &MuContext) -> Result<MuValue> {
    if e.is_zero() {
        return Err(Error::ZeroPolynomial("valuation of a zero class"));
    }
    if e.gb().nvars() != ctx.nvars {
        return Err(Error::DimensionMismatch {
            expected: ctx.nvars,
            found: e.gb().nvars(),
            context: "quotient valuation",
        });
    }
    let lead = leading_monomial(e.representative(), e.gb().order())?;
    Ok(ctx.mu_of_exponent(&lead))
}

/// Outcome of the equal-value check on the two largest monomials.
#[derive(Clone, PartialEq, Debug)]
pub enum AttainedTwice {
    Pass,
    /// The element whose two largest monomials carry distinct values (or
    /// which is a monomial and has no second one).
    Fail(Polynomial),
}

/// For every basis element, the two largest monomials must carry the same
/// valuation; a violation refutes the compatibility of order and table.
pub fn attained_twice_check(gb: &GroebnerBasis, table: &ValuationTable) -> AttainedTwice {
    for g in gb.elements() {
        if g.is_monomial() {
            return AttainedTwice::Fail(g.clone());
        }
        let (first, second) = two_leading_monomials(g, gb.order()).expect("two terms present");
        if table.monomial_value(&first) != table.monomial_value(&second) {
            return AttainedTwice::Fail(g.clone());
        }
    }
    AttainedTwice::Pass
}

/// Outcome of the unique-standard-monomial check.
#[derive(Clone, PartialEq, Debug)]
pub enum LeavesOutcome {
    /// Every value class among standard monomials of degree `<= bound` has a
    /// single representative.
    Pass(u32),
    /// Two distinct standard monomials share one value class.
    Fail(Exponent, Exponent),
}

/// Group standard monomials up to the degree bound by their valuation
/// coordinates and demand singleton classes.
pub fn leaves_check(ctx: &MuContext, bound: u32) -> Result<LeavesOutcome> {
    let gb = ctx
        .gb()
        .ok_or(Error::Invalid("leaves check requires a basis-backed context".into()))?;
    let mut seen: BTreeMap<Vec<Rat>, Exponent> = BTreeMap::new();
    for e in gb.standard_monomials_up_to(bound) {
        let value = ctx.mu_of_exponent(&e).coords;
        if let Some(prev) = seen.get(&value) {
            return Ok(LeavesOutcome::Fail(prev.clone(), e));
        }
        seen.insert(value, e);
    }
    Ok(LeavesOutcome::Pass(bound))
}

/// Default degree bound for certification: twice the maximal total degree of
/// the basis, at least 2.
pub fn default_leaves_bound(gb: &GroebnerBasis) -> u32 {
    let d = gb.max_total_degree() as u32;
    (2 * d).max(2)
}

/// Witness of a refuted certificate.
#[derive(Clone, PartialEq, Debug)]
pub enum RefutationWitness {
    /// Basis element whose two largest monomials have distinct values.
    UnequalValues(Polynomial),
    /// Two standard monomials in one value class.
    LeafCollision(Exponent, Exponent),
}

impl std::fmt::Display for RefutationWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RefutationWitness::UnequalValues(p) => {
                write!(f, "two largest monomials of {p} have distinct values")
            }
            RefutationWitness::LeafCollision(a, b) => {
                write!(f, "standard monomials {a:?} and {b:?} share a value class")
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Verdict {
    /// All checks pass up to the bound and every variable is standard.
    CertifiedUpToBound(u32),
    Refuted(RefutationWitness),
    /// Checks pass but some variable is not standard, so the variable
    /// classes alone are not known to generate.
    Inconclusive,
}

/// Finite certificate for the generators forming a valid basis of the
/// quotient with respect to the induced valuation.  Never claims more than
/// the checked degree bound.
#[derive(Clone, PartialEq, Debug)]
pub struct KhovanskiiCertificate {
    pub attained_twice_ok: bool,
    pub standard_vars_complete: bool,
    pub leaves_bound: u32,
    pub verdict: Verdict,
}

pub fn khovanskii_certificate(
    gb: &GroebnerBasis,
    table: &ValuationTable,
    ctx: &MuContext,
    bound: u32,
) -> Result<KhovanskiiCertificate> {
    let standard_vars_complete =
        crate::sagbi::standard_variable_set(gb).len() == gb.nvars();
    if let AttainedTwice::Fail(witness) = attained_twice_check(gb, table) {
        return Ok(KhovanskiiCertificate {
            attained_twice_ok: false,
            standard_vars_complete,
            leaves_bound: bound,
            verdict: Verdict::Refuted(RefutationWitness::UnequalValues(witness)),
        });
    }
    if let LeavesOutcome::Fail(a, b) = leaves_check(ctx, bound)? {
        return Ok(KhovanskiiCertificate {
            attained_twice_ok: true,
            standard_vars_complete,
            leaves_bound: bound,
            verdict: Verdict::Refuted(RefutationWitness::LeafCollision(a, b)),
        });
    }
    let verdict = if standard_vars_complete {
        Verdict::CertifiedUpToBound(bound)
    } else {
        Verdict::Inconclusive
    };
    Ok(KhovanskiiCertificate {
        attained_twice_ok: true,
        standard_vars_complete,
        leaves_bound: bound,
        verdict,
    })
}

/// Consistency report of the linear equivalence.
#[derive(Clone, PartialEq, Debug)]
pub struct PhiReport {
    pub consistent: bool,
    /// Generators whose table value disagrees with the mapped valuation.
    pub mismatched_generators: Vec<usize>,
}

/// Linear map sending the quotient valuation of each variable class to the
/// table value of the corresponding generator.
///
/// Solved on a maximal independent set of variable valuations, extended by
/// zero on a complement, then verified on every generator; mismatches refute
/// the inputs and are listed in the report.
pub fn phi_transformation(
    table: &ValuationTable,
    ctx: &MuContext,
) -> Result<(RatMatrix, PhiReport)> {
    let m = ctx.nvars();
    if table.num_generators() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: table.num_generators(),
            context: "valuation table width",
        });
    }
    let mu_mat = ctx.mu_matrix(); // (m - ell) x m
    let nu_mat = table.matrix(); // r x m
    let dim = mu_mat.rows();
    let pivots = mu_mat.independent_columns();
    if pivots.is_empty() {
        return Err(Error::Underdetermined("valuation equivalence"));
    }

    // Square up [mu_B | complement] with standard basis vectors.
    let mut cols: Vec<Vec<Rat>> = pivots.iter().map(|&j| mu_mat.col(j)).collect();
    let mut x = RatMatrix::from_columns(dim, &cols);
    for i in 0..dim {
        if x.cols() == dim {
            break;
        }
        let mut e = vec![Rat::zero(); dim];
        e[i] = rat_int(1);
        let cand = x.hstack(&RatMatrix::from_columns(dim, &[e.clone()]));
        if cand.rank() > x.cols() {
            x = cand;
            cols.push(e);
        }
    }
    let mut rhs_cols: Vec<Vec<Rat>> = pivots.iter().map(|&j| nu_mat.col(j)).collect();
    while rhs_cols.len() < dim {
        rhs_cols.push(vec![Rat::zero(); nu_mat.rows()]);
    }
    let rhs = RatMatrix::from_columns(nu_mat.rows(), &rhs_cols);
    let phi = rhs.mul(&x.invert()?);

    let mapped = phi.mul(&mu_mat);
    let mut mismatched = Vec::new();
    for j in 0..m {
        if mapped.col(j) != nu_mat.col(j) {
            mismatched.push(j);
        }
    }
    let report = PhiReport { consistent: mismatched.is_empty(), mismatched_generators: mismatched };
    Ok((phi, report))
}
