//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are stored in a map keyed by exponent vector; the key order of the
//! map is a fixed structural order (plain lexicographic on the entries) used
//! only for storage and equality.  Everything order-sensitive (leading terms,
//! reduction, subduction) takes a [`crate::order::MonomialOrder`] explicitly.

use crate::error::{Error, Result};
use crate::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a monomial; entries are per-variable exponents.
///
/// The derived `Ord` is the structural storage order, not a monomial order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    /// Exponent of the single variable `i` in an `nvars`-variable ring.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Exponent(out))
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Signed difference as arbitrary-precision integers.
    pub fn signed_diff(&self, other: &Exponent) -> Vec<crate::Int> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| crate::Int::from(*a as i64 - *b as i64))
            .collect()
    }

    pub fn scale(&self, k: u32) -> Exponent {
        Exponent(self.0.iter().map(|&x| x * k).collect())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored; equality is term-map equality.  The
/// variable count doubles as the ring identity at this level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponent::zero(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::from(crate::Int::from(1)))
    }

    /// The monomial `c * x^e`.
    pub fn monomial(nvars: usize, e: Exponent, c: Rat) -> Self {
        assert_eq!(e.len(), nvars, "exponent length mismatch");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn variable(i: usize, nvars: usize) -> Self {
        Self::monomial(nvars, Exponent::var(i, nvars), Rat::from(crate::Int::from(1)))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs with
    /// small integer data.
    pub fn from_i64_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(c, e)| {
                assert_eq!(e.len(), nvars);
                (Exponent::new(e.to_vec()), crate::rat_int(*c))
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Exponent::total_degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rat) {
        assert_eq!(e.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the single term `c * x^e`.
    pub fn mul_term(&self, e: &Exponent, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.add(e), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term(e.add(f), c * d);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact evaluation of `self` at the image polynomials, one per variable.
    ///
    /// The images must all live in one target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
                context: "substitution images",
            });
        }
        let target_vars = match images.first() {
            Some(p) => p.nvars,
            None => return Ok(Polynomial::constant(0, self.coefficient(&Exponent::zero(0)))),
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target_vars) {
            return Err(Error::DimensionMismatch {
                expected: target_vars,
                found: bad.nvars,
                context: "substitution images",
            });
        }
        // Cache powers of each image up to the largest exponent used.
        let mut power_cache: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(target_vars), p.clone()]).collect();
        let mut out = Polynomial::zero(target_vars);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target_vars, c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap().mul(&images[i]);
                    cache.push(next);
                }
                term = term.mul(&cache[k as usize]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Largest exponent under the given comparison closure.
    pub(crate) fn max_exponent_by(
        &self,
        mut cmp: impl FnMut(&Exponent, &Exponent) -> std::cmp::Ordering,
    ) -> Option<&Exponent> {
        let mut best: Option<&Exponent> = None;
        for e in self.terms.keys() {
            best = match best {
                None => Some(e),
                Some(b) => {
                    if cmp(e, b) == std::cmp::Ordering::Greater {
                        Some(e)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }
}

impl fmt::Display for Polynomial {
    /// Renders with generic variable names `x1..xn`, largest structural
    /// exponent first.  The CLI layer renders with declared variable names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c < &Rat::zero() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let is_one = mag == Rat::from(crate::Int::from(1));
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                let mut wrote = false;
                if !is_one {
                    write!(f, "{mag}*")?;
                }
                for (i, &k) in e.entries().iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    wrote = true;
                    if k == 1 {
                        write!(f, "x{}", i + 1)?;
                    } else {
                        write!(f, "x{}^{}", i + 1, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_terms: usize, max_deg: u32) -> Polynomial {
        let nterms = rng.gen_range(0..=max_terms);
        Polynomial::from_terms(
            nvars,
            (0..nterms).map(|_| {
                let e = Exponent::new((0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect());
                (e, crate::rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3)))
            }),
        )
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let mut p = Polynomial::zero(2);
        p.add_term(Exponent::new(vec![1, 0]), rat_int(3));
        p.add_term(Exponent::new(vec![1, 0]), rat_int(-3));
        assert!(p.is_zero());
    }

    #[test]
    fn ring_axioms_hold_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let n = rng.gen_range(1..4);
            let a = random_poly(&mut rng, n, 4, 3);
            let b = random_poly(&mut rng, n, 4, 3);
            let c = random_poly(&mut rng, n, 4, 3);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.sub(&a), Polynomial::zero(n));
        }
    }

    #[test]
    fn substitute_identity_and_kernel_element() {
        // substitute(x1, (g)) = g
        let x1 = Polynomial::variable(0, 1);
        let g = Polynomial::from_i64_terms(2, &[(1, &[3, 0]), (-1, &[0, 2])]);
        assert_eq!(x1.substitute(&[g.clone()]).unwrap(), g);

        // x^3 - y^2 vanishes on (t^2, t^3)
        let f = Polynomial::from_i64_terms(2, &[(1, &[3, 0]), (-1, &[0, 2])]);
        let t2 = Polynomial::from_i64_terms(1, &[(1, &[2])]);
        let t3 = Polynomial::from_i64_terms(1, &[(1, &[3])]);
        assert!(f.substitute(&[t2, t3]).unwrap().is_zero());
    }

    #[test]
    fn substitute_ring_mismatch_is_error() {
        let f = Polynomial::variable(0, 2);
        let g = Polynomial::variable(0, 1);
        assert!(matches!(f.substitute(&[g]).unwrap_err(), Error::DimensionMismatch { .. }));
    }

    #[test]
    fn display_round_readable() {
        let f = Polynomial::from_i64_terms(2, &[(1, &[3, 0]), (-1, &[0, 2])]);
        assert_eq!(f.to_string(), "x1^3 - x2^2");
    }
}
