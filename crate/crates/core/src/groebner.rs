//! Buchberger engine: reduced Groebner bases, normal forms, standard-monomial
//! queries, and kernels of polynomial maps via elimination.
//!
//! The engine is deterministic: S-pairs are selected by minimal lcm total
//! degree and then by lexicographic pair index, and the returned basis is
//! monic, auto-reduced and sorted by leading monomial.  Arithmetic is exact
//! rational end to end.  Termination relies on the order being a well-order,
//! which holds for all built-in orders and for valuation-induced orders whose
//! table satisfies the max-well-ordering hypothesis (graded tables always do).

use crate::error::{Error, Result};
use crate::order::{leading_monomial, MonomialOrder};
use crate::poly::{Exponent, Polynomial};
use crate::Rat;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

/// Ideal given by a list of nonzero generators.
#[derive(Clone, PartialEq, Debug)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.is_zero() {
                return Err(Error::ZeroPolynomial("ideal generator"));
            }
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                    context: "ideal generator",
                });
            }
        }
        Ok(Ideal { nvars, generators })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, generators: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

/// Reduced Groebner basis under a fixed order.
///
/// Elements are monic, no term of any element is divisible by the leading
/// monomial of another, and the list is sorted ascending by leading monomial.
#[derive(Clone, PartialEq, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    nvars: usize,
    elements: Vec<Polynomial>,
    lms: Vec<Exponent>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Exponent] {
        &self.lms
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_total_degree(&self) -> u64 {
        self.elements.iter().map(Polynomial::total_degree).max().unwrap_or(0)
    }

    /// Fully reduced normal form: no monomial of the result is divisible by
    /// any leading monomial of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.nvars(), self.nvars, "ring mismatch");
        let sorted: Vec<SortedPoly> =
            self.elements.iter().map(|g| SortedPoly::from_polynomial(g, &self.order)).collect();
        let work = SortedPoly::from_polynomial(f, &self.order);
        reduce_full(work, &sorted, &self.lms, &self.order).to_polynomial(self.nvars)
    }

    /// True iff `x^e` is not divisible by any basis leading monomial.
    pub fn is_standard_monomial(&self, e: &Exponent) -> bool {
        !self.lms.iter().any(|lm| lm.divides(e))
    }

    /// All standard monomials of total degree at most `bound`, sorted by
    /// total degree and then lexicographically.
    pub fn standard_monomials_up_to(&self, bound: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars];
        enumerate_bounded(&mut cur, 0, bound, &mut |e: &[u32]| {
            let exp = Exponent::new(e.to_vec());
            if self.is_standard_monomial(&exp) {
                out.push(exp);
            }
        });
        out.sort_by(|a, b| {
            a.total_degree().cmp(&b.total_degree()).then_with(|| a.entries().cmp(b.entries()))
        });
        out
    }
}

fn enumerate_bounded(cur: &mut Vec<u32>, var: usize, remaining: u32, visit: &mut impl FnMut(&[u32])) {
    if var == cur.len() {
        visit(cur);
        return;
    }
    for k in 0..=remaining {
        cur[var] = k;
        enumerate_bounded(cur, var + 1, remaining - k, visit);
    }
    cur[var] = 0;
}

/// Polynomial as a list of terms sorted descending under the active order.
#[derive(Clone, Debug)]
struct SortedPoly {
    terms: Vec<(Exponent, Rat)>,
}

impl SortedPoly {
    fn from_polynomial(f: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Exponent, Rat)> =
            f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp_exp(&b.0, &a.0));
        SortedPoly { terms }
    }

    fn to_polynomial(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Exponent {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rat {
        &self.terms[0].1
    }

    fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().recip();
        for (_, c) in &mut self.terms {
            *c *= &inv;
        }
    }

    /// `self - factor * x^shift * g`, merging the sorted term lists.
    fn sub_mul(&self, g: &SortedPoly, shift: &Exponent, factor: &Rat, order: &MonomialOrder) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < g.terms.len() {
            let ge = g.terms[j].0.add(shift);
            match order.cmp_exp(&self.terms[i].0, &ge) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((ge, -(factor * &g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 - factor * &g.terms[j].1;
                    if !c.is_zero() {
                        out.push((ge, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (e, c) in &g.terms[j..] {
            out.push((e.add(shift), -(factor * c)));
        }
        SortedPoly { terms: out }
    }

    /// Multiply all terms by `x^shift`.
    fn shifted(&self, shift: &Exponent) -> SortedPoly {
        SortedPoly { terms: self.terms.iter().map(|(e, c)| (e.add(shift), c.clone())).collect() }
    }
}

/// Reduce every term of `work` against the basis until no term is divisible
/// by any basis leading monomial.
fn reduce_full(
    mut work: SortedPoly,
    basis: &[SortedPoly],
    lms: &[Exponent],
    order: &MonomialOrder,
) -> SortedPoly {
    let mut done: Vec<(Exponent, Rat)> = Vec::new();
    'outer: while !work.is_zero() {
        let (head_exp, head_coef) = work.terms[0].clone();
        for (g, lm) in basis.iter().zip(lms) {
            if lm.divides(&head_exp) {
                let shift = head_exp.checked_sub(lm).unwrap();
                let factor = &head_coef / g.lc();
                work = work.sub_mul(g, &shift, &factor, order);
                continue 'outer;
            }
        }
        done.push((head_exp, head_coef));
        work.terms.remove(0);
    }
    SortedPoly { terms: done }
}

/// Reduced Groebner basis of an ideal by Buchberger's algorithm.
///
/// Pair selection: minimal lcm total degree first, then lexicographic pair
/// index.  The product and chain criteria are applied.  Output is fully
/// deterministic for fixed input.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    order.validate(ideal.nvars())?;
    let nvars = ideal.nvars();
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut lms: Vec<Exponent> = Vec::new();
    for g in ideal.generators() {
        let mut s = SortedPoly::from_polynomial(g, order);
        if s.is_zero() {
            continue;
        }
        s.make_monic();
        lms.push(s.lm().clone());
        basis.push(s);
    }

    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut considered: HashSet<(usize, usize)> = HashSet::new();
    let add_pairs = |pairs: &mut BTreeSet<(u64, usize, usize)>, lms: &[Exponent], k: usize| {
        for i in 0..k {
            let deg = lms[i].lcm(&lms[k]).total_degree();
            pairs.insert((deg, i, k));
        }
    };
    for k in 0..basis.len() {
        add_pairs(&mut pairs, &lms, k);
    }

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        considered.insert((i, j));
        let lcm = lms[i].lcm(&lms[j]);
        // Product criterion: coprime leading monomials.
        if lcm.total_degree() == lms[i].total_degree() + lms[j].total_degree() {
            continue;
        }
        // Chain criterion.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(&lcm)
                && considered.contains(&(i.min(k), i.max(k)))
                && considered.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        // S-polynomial of two monic elements.
        let shift_i = lcm.checked_sub(&lms[i]).unwrap();
        let shift_j = lcm.checked_sub(&lms[j]).unwrap();
        let s = basis[i].shifted(&shift_i).sub_mul(&basis[j], &shift_j, &Rat::one(), order);
        let mut r = reduce_full(s, &basis, &lms, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        lms.push(r.lm().clone());
        basis.push(r);
        add_pairs(&mut pairs, &lms, basis.len() - 1);
    }

    // Minimalize: drop elements whose leading monomial is divisible by the
    // leading monomial of another survivor.
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            if lms[b].divides(&lms[a]) && (!lms[a].divides(&lms[b]) || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<SortedPoly> = Vec::new();
    let mut minimal_lms: Vec<Exponent> = Vec::new();
    for (k, s) in basis.into_iter().enumerate() {
        if keep[k] {
            minimal_lms.push(lms[k].clone());
            minimal.push(s);
        }
    }

    // Inter-reduce tails.
    loop {
        let mut changed = false;
        for k in 0..minimal.len() {
            let others: Vec<SortedPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, s)| s.clone())
                .collect();
            let other_lms: Vec<Exponent> = minimal_lms
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, e)| e.clone())
                .collect();
            let reduced = reduce_full(minimal[k].clone(), &others, &other_lms, order);
            if reduced.terms != minimal[k].terms {
                minimal[k] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Handle the unit ideal: a constant swallows everything.
    if minimal.iter().any(|s| !s.is_zero() && s.lm().is_zero()) {
        let one = Polynomial::one(nvars);
        return Ok(GroebnerBasis {
            order: order.clone(),
            nvars,
            lms: vec![Exponent::zero(nvars)],
            elements: vec![one],
        });
    }

    let mut elements: Vec<Polynomial> = minimal.iter().map(|s| s.to_polynomial(nvars)).collect();
    elements.sort_by(|a, b| {
        let la = leading_monomial(a, order).expect("nonzero basis element");
        let lb = leading_monomial(b, order).expect("nonzero basis element");
        order.cmp_exp(&la, &lb)
    });
    let lms = elements
        .iter()
        .map(|g| leading_monomial(g, order).expect("nonzero basis element"))
        .collect();
    Ok(GroebnerBasis { order: order.clone(), nvars, elements, lms })
}

/// Generators of the kernel of the map sending the `i`-th variable of an
/// `m`-variable ring to `targets[i]`.
///
/// Computed by eliminating the target-ring variables from the graph ideal in
/// a combined ring: generators `x_i - g_i` under a block order with the
/// target variables in the eliminated block, keeping the basis elements free
/// of target variables.  Every returned generator vanishes under
/// substitution of the targets.
pub fn kernel_of_map(targets: &[Polynomial]) -> Result<Ideal> {
    if targets.is_empty() {
        return Err(Error::Invalid("kernel of map needs at least one target".into()));
    }
    let svars = targets[0].nvars();
    for t in targets {
        if t.is_zero() {
            return Err(Error::ZeroPolynomial("kernel target"));
        }
        if t.nvars() != svars {
            return Err(Error::DimensionMismatch {
                expected: svars,
                found: t.nvars(),
                context: "kernel target",
            });
        }
    }
    let m = targets.len();
    let total = svars + m;

    // Graph ideal in the combined ring, target variables first.
    let mut gens = Vec::with_capacity(m);
    for (j, t) in targets.iter().enumerate() {
        let mut g = Polynomial::variable(svars + j, total);
        for (e, c) in t.terms() {
            let mut combined = e.entries().to_vec();
            combined.extend(std::iter::repeat_n(0, m));
            g.add_term(Exponent::new(combined), -c.clone());
        }
        gens.push(g);
    }
    let elim_order = MonomialOrder::Elimination {
        split: svars,
        inner: Box::new(MonomialOrder::GrevLex),
        outer: Box::new(MonomialOrder::GrevLex),
    };
    let gb = buchberger(&Ideal::new(total, gens)?, &elim_order)?;

    let mut kernel_gens = Vec::new();
    for g in gb.elements() {
        let uses_target_vars =
            g.terms().any(|(e, _)| e.entries()[..svars].iter().any(|&k| k > 0));
        if uses_target_vars {
            continue;
        }
        let projected = Polynomial::from_terms(
            m,
            g.terms().map(|(e, c)| (Exponent::new(e.entries()[svars..].to_vec()), c.clone())),
        );
        kernel_gens.push(projected);
    }
    Ideal::new(m, kernel_gens)
}
