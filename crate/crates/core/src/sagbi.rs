//! Subalgebra-basis machinery on polynomial rings and their quotients:
//! residue classes with eagerly normalized representatives, leading terms of
//! classes, subduction in both the ambient and the quotient form, the
//! standard-variable subalgebra basis, and minimality reduction.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Ideal};
use crate::order::{leading_term, MonomialOrder, ValuationTable};
use crate::poly::{Exponent, Polynomial};
use crate::Rat;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Residue class in a quotient ring, stored as its normal form.
///
/// Keeping representatives eagerly normalized makes class equality syntactic:
/// two classes are equal iff their representatives are equal polynomials.
#[derive(Clone, Debug)]
pub struct QuotientElement {
    gb: Arc<GroebnerBasis>,
    representative: Polynomial,
}

impl PartialEq for QuotientElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.gb, &other.gb) || *self.gb == *other.gb)
            && self.representative == other.representative
    }
}

impl QuotientElement {
    pub fn new(gb: Arc<GroebnerBasis>, f: &Polynomial) -> Self {
        let representative = gb.normal_form(f);
        QuotientElement { gb, representative }
    }

    /// The class of the variable `x_i`.
    pub fn variable(gb: Arc<GroebnerBasis>, i: usize) -> Self {
        let v = Polynomial::variable(i, gb.nvars());
        Self::new(gb, &v)
    }

    pub fn gb(&self) -> &Arc<GroebnerBasis> {
        &self.gb
    }

    pub fn representative(&self) -> &Polynomial {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn add(&self, other: &QuotientElement) -> QuotientElement {
        debug_assert!(self.same_quotient(other));
        QuotientElement::new(self.gb.clone(), &self.representative.add(&other.representative))
    }

    pub fn mul(&self, other: &QuotientElement) -> QuotientElement {
        debug_assert!(self.same_quotient(other));
        QuotientElement::new(self.gb.clone(), &self.representative.mul(&other.representative))
    }

    pub fn pow(&self, k: u32) -> QuotientElement {
        QuotientElement::new(self.gb.clone(), &self.representative.pow(k))
    }

    pub fn same_quotient(&self, other: &QuotientElement) -> bool {
        Arc::ptr_eq(&self.gb, &other.gb) || *self.gb == *other.gb
    }
}

/// Leading term of a nonzero residue class: the leading term of the normal
/// form, which is a standard monomial by construction and therefore nonzero
/// in the quotient by the leading-term ideal.
pub fn lead_term_quotient(e: &QuotientElement) -> Result<(Exponent, Rat)> {
    if e.is_zero() {
        return Err(Error::ZeroPolynomial("leading term of a zero class"));
    }
    leading_term(e.representative(), e.gb().order())
}

/// Result of subduction: `f = sum c_alpha * g^alpha + r (+ h)`.
///
/// The expansion maps multi-indices over the basis to coefficients.  In the
/// quotient form the identity holds for normal-form representatives and `h`
/// collects the ideal part; in the ambient form `h` is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct SubductionResult {
    pub expansion: BTreeMap<Exponent, Rat>,
    pub remainder: Polynomial,
    pub ideal_part: Polynomial,
}

impl SubductionResult {
    /// Evaluate `sum c_alpha * g^alpha` against the given basis polynomials.
    pub fn expansion_polynomial(&self, basis: &[Polynomial], nvars: usize) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (alpha, c) in &self.expansion {
            let mut term = Polynomial::constant(nvars, c.clone());
            for (j, &k) in alpha.entries().iter().enumerate() {
                if k > 0 {
                    term = term.mul(&basis[j].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// Find multiplicities `e >= 0` with `sum e_j * leads[j] = target`.
///
/// The search walks the basis in order-descending lead order (ties by index)
/// and tries the largest feasible power first, backtracking on failure, so it
/// is complete: it fails only when the target is genuinely outside the
/// semigroup generated by the leads.
fn factor_over_leads(
    target: &Exponent,
    leads: &[Exponent],
    order: &MonomialOrder,
) -> Option<Vec<u32>> {
    let mut idx: Vec<usize> = (0..leads.len()).filter(|&j| !leads[j].is_zero()).collect();
    idx.sort_by(|&a, &b| match order.cmp_exp(&leads[a], &leads[b]) {
        Ordering::Equal => a.cmp(&b),
        other => other.reverse(),
    });
    let mut mult = vec![0u32; leads.len()];

    fn dfs(
        remaining: &Exponent,
        pos: usize,
        idx: &[usize],
        leads: &[Exponent],
        mult: &mut Vec<u32>,
    ) -> bool {
        if remaining.is_zero() {
            return true;
        }
        if pos == idx.len() {
            return false;
        }
        let j = idx[pos];
        let lead = &leads[j];
        let mut max_pow = u32::MAX;
        for (l, r) in lead.entries().iter().zip(remaining.entries()) {
            if *l > 0 {
                max_pow = max_pow.min(r / l);
            }
        }
        for k in (0..=max_pow).rev() {
            let used = lead.scale(k);
            let rest = remaining.checked_sub(&used).expect("bounded power");
            mult[j] = k;
            if dfs(&rest, pos + 1, idx, leads, mult) {
                return true;
            }
        }
        mult[j] = 0;
        false
    }

    if dfs(target, 0, &idx, leads, &mut mult) {
        Some(mult)
    } else {
        None
    }
}

/// Rewrite `f` against a subalgebra basis in the ambient polynomial ring.
///
/// Returns `f = sum c_alpha g^alpha + r` where no nonzero term of `r` lies in
/// the semigroup algebra generated by the basis leading terms, every used
/// `g^alpha` has leading monomial at most that of `f`, and the leading
/// monomials of the used `g^alpha` are pairwise distinct.
pub fn subduction(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Result<SubductionResult> {
    order.validate(f.nvars())?;
    for g in basis {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial("subduction basis element"));
        }
        if g.nvars() != f.nvars() {
            return Err(Error::DimensionMismatch {
                expected: f.nvars(),
                found: g.nvars(),
                context: "subduction basis",
            });
        }
    }
    let leads: Vec<(Exponent, Rat)> =
        basis.iter().map(|g| leading_term(g, order)).collect::<Result<_>>()?;
    let lead_exps: Vec<Exponent> = leads.iter().map(|(e, _)| e.clone()).collect();

    let mut work = f.clone();
    let mut expansion: BTreeMap<Exponent, Rat> = BTreeMap::new();
    let mut remainder = Polynomial::zero(f.nvars());
    while !work.is_zero() {
        let (lt_e, lt_c) = leading_term(&work, order)?;
        if lt_e.is_zero() {
            // Constants are absorbed into the expansion at multi-index 0.
            *expansion.entry(Exponent::zero(basis.len())).or_insert_with(Rat::zero) += &lt_c;
            work.add_term(lt_e, -lt_c);
            continue;
        }
        match factor_over_leads(&lt_e, &lead_exps, order) {
            Some(mult) => {
                let mut denom = Rat::one();
                for (j, &k) in mult.iter().enumerate() {
                    for _ in 0..k {
                        denom *= &leads[j].1;
                    }
                }
                let coef = &lt_c / denom;
                let mut prod = Polynomial::one(f.nvars());
                for (j, &k) in mult.iter().enumerate() {
                    if k > 0 {
                        prod = prod.mul(&basis[j].pow(k));
                    }
                }
                work = work.sub(&prod.scale(&coef));
                let key = Exponent::new(mult);
                *expansion.entry(key).or_insert_with(Rat::zero) += coef;
            }
            None => {
                remainder.add_term(lt_e.clone(), lt_c.clone());
                work.add_term(lt_e, -lt_c);
            }
        }
    }
    expansion.retain(|_, c| !c.is_zero());
    Ok(SubductionResult { expansion, remainder, ideal_part: Polynomial::zero(f.nvars()) })
}

/// Quotient-ring subduction: rewrite a residue class against classes of
/// basis elements.
///
/// Produces `f~ = sum c_alpha g~^alpha + r + h` on representatives, where `r`
/// is supported on standard monomials outside the semigroup of the quotient
/// leading terms, and `h` lies in the ideal (checked before returning).
pub fn subduction_quotient(
    e: &QuotientElement,
    basis: &[QuotientElement],
) -> Result<SubductionResult> {
    let gb = e.gb().clone();
    for b in basis {
        if !e.same_quotient(b) {
            return Err(Error::Invalid("subduction basis must share the quotient ring".into()));
        }
        if b.is_zero() {
            return Err(Error::ZeroPolynomial("subduction basis class"));
        }
    }
    let order = gb.order().clone();
    let nvars = gb.nvars();
    let reps: Vec<Polynomial> = basis.iter().map(|b| b.representative().clone()).collect();
    let leads: Vec<(Exponent, Rat)> =
        reps.iter().map(|g| leading_term(g, &order)).collect::<Result<_>>()?;
    let lead_exps: Vec<Exponent> = leads.iter().map(|(e, _)| e.clone()).collect();

    let mut work = e.representative().clone();
    let mut expansion: BTreeMap<Exponent, Rat> = BTreeMap::new();
    let mut remainder = Polynomial::zero(nvars);
    let mut ideal_part = Polynomial::zero(nvars);
    while !work.is_zero() {
        let (lt_e, lt_c) = leading_term(&work, &order)?;
        if lt_e.is_zero() {
            *expansion.entry(Exponent::zero(basis.len())).or_insert_with(Rat::zero) += &lt_c;
            work.add_term(lt_e, -lt_c);
            continue;
        }
        match factor_over_leads(&lt_e, &lead_exps, &order) {
            Some(mult) => {
                let mut denom = Rat::one();
                for (j, &k) in mult.iter().enumerate() {
                    for _ in 0..k {
                        denom *= &leads[j].1;
                    }
                }
                let coef = &lt_c / denom;
                let mut prod = Polynomial::one(nvars);
                for (j, &k) in mult.iter().enumerate() {
                    if k > 0 {
                        prod = prod.mul(&reps[j].pow(k));
                    }
                }
                let raw = work.sub(&prod.scale(&coef));
                let reduced = gb.normal_form(&raw);
                ideal_part = ideal_part.add(&raw.sub(&reduced));
                work = reduced;
                let key = Exponent::new(mult);
                *expansion.entry(key).or_insert_with(Rat::zero) += coef;
            }
            None => {
                remainder.add_term(lt_e.clone(), lt_c.clone());
                work.add_term(lt_e, -lt_c);
            }
        }
    }
    expansion.retain(|_, c| !c.is_zero());
    if !gb.normal_form(&ideal_part).is_zero() {
        return Err(Error::Invalid("ideal part failed to reduce to zero".into()));
    }
    Ok(SubductionResult { expansion, remainder, ideal_part })
}

/// Indices of the variables that are standard monomials; their classes form
/// a subalgebra basis of the quotient.
pub fn standard_variable_set(gb: &GroebnerBasis) -> BTreeSet<usize> {
    (0..gb.nvars())
        .filter(|&i| gb.is_standard_monomial(&Exponent::var(i, gb.nvars())))
        .collect()
}

/// Outcome of [`minimality_reduce`].
#[derive(Clone, Debug)]
pub struct MinimalBasis {
    pub kept: Vec<QuotientElement>,
    pub dropped: Vec<usize>,
}

/// Shrink a standard-variable basis to a minimal one.
///
/// For each variable class, the ideal's basis is recomputed under the
/// valuation-induced order whose tiebreak puts that variable above everything
/// else; the class is dropped when it subducts to remainder zero against the
/// remaining classes.  Dropping is iterative, in increasing variable order.
pub fn minimality_reduce(
    basis: &[QuotientElement],
    table: &ValuationTable,
) -> Result<MinimalBasis> {
    if basis.is_empty() {
        return Ok(MinimalBasis { kept: Vec::new(), dropped: Vec::new() });
    }
    let gb = basis[0].gb().clone();
    let nvars = gb.nvars();
    let mut vars: Vec<usize> = Vec::with_capacity(basis.len());
    for b in basis {
        if !b.same_quotient(&basis[0]) {
            return Err(Error::Invalid("minimality basis must share the quotient ring".into()));
        }
        let rep = b.representative();
        let var = rep
            .terms()
            .next()
            .filter(|_| rep.is_monomial())
            .and_then(|(e, c)| {
                let idx = (0..nvars).find(|&i| *e == Exponent::var(i, nvars))?;
                c.is_one().then_some(idx)
            })
            .ok_or_else(|| {
                Error::Invalid("minimality reduction expects standard-variable classes".into())
            })?;
        vars.push(var);
    }
    let ideal = Ideal::new(nvars, gb.elements().to_vec())?;
    let base_tiebreak = gb.order().tiebreak().cloned().unwrap_or(MonomialOrder::GrevLex);

    let mut active = vars.clone();
    let mut dropped = Vec::new();
    for &i in &vars {
        if active.len() == 1 {
            break;
        }
        let order_i = MonomialOrder::valuation_induced(
            table.clone(),
            MonomialOrder::single_variable_first(i, nvars, base_tiebreak.clone()),
        );
        let gb_i = Arc::new(buchberger(&ideal, &order_i)?);
        let candidate = QuotientElement::variable(gb_i.clone(), i);
        if candidate.is_zero() {
            // The variable lies in the ideal; trivially redundant.
            active.retain(|&j| j != i);
            dropped.push(i);
            continue;
        }
        let others: Vec<QuotientElement> = active
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| QuotientElement::variable(gb_i.clone(), j))
            .collect();
        let res = subduction_quotient(&candidate, &others)?;
        if res.remainder.is_zero() {
            active.retain(|&j| j != i);
            dropped.push(i);
        }
    }
    let kept = active.iter().map(|&j| QuotientElement::variable(gb.clone(), j)).collect();
    Ok(MinimalBasis { kept, dropped })
}
