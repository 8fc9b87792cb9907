//! Worked example data used by the test suites and the shipped demo sessions.
//!
//! Two fixtures recur throughout:
//!
//! * the invariant ring of the alternating group on three letters, presented
//!   by the elementary symmetric polynomials and the Vandermonde product,
//!   whose single relation is the discriminant of a monic cubic; and
//! * a linear system of plane cubics through four points, entering through
//!   its generator valuations, degree vector and a precomputed basis matrix.

use crate::linalg::RatMatrix;
use crate::order::{MonomialOrder, ValuationTable, ValueOrder};
use crate::poly::Polynomial;
use crate::rat_int;

/// The discriminant relation
/// `x1^2 x2^2 - 4 x2^3 - 4 x1^3 x3 + 18 x1 x2 x3 - 27 x3^2 - x4^2`
/// in the 4-variable presentation ring.
pub fn discriminant() -> Polynomial {
    Polynomial::from_i64_terms(
        4,
        &[
            (1, &[2, 2, 0, 0]),
            (-4, &[0, 3, 0, 0]),
            (-4, &[3, 0, 1, 0]),
            (18, &[1, 1, 1, 0]),
            (-27, &[0, 0, 2, 0]),
            (-1, &[0, 0, 0, 2]),
        ],
    )
}

/// Elementary symmetric polynomials `e1, e2, e3` in three variables.
pub fn elementary_symmetric() -> Vec<Polynomial> {
    vec![
        Polynomial::from_i64_terms(3, &[(1, &[1, 0, 0]), (1, &[0, 1, 0]), (1, &[0, 0, 1])]),
        Polynomial::from_i64_terms(3, &[(1, &[1, 1, 0]), (1, &[1, 0, 1]), (1, &[0, 1, 1])]),
        Polynomial::from_i64_terms(3, &[(1, &[1, 1, 1])]),
    ]
}

/// The Vandermonde product `(z1 - z2)(z1 - z3)(z2 - z3)`.
pub fn vandermonde_product() -> Polynomial {
    let z = |i: usize| Polynomial::variable(i, 3);
    z(0).sub(&z(1)).mul(&z(0).sub(&z(2))).mul(&z(1).sub(&z(2)))
}

/// Presentation targets for the alternating invariant ring: `e1, e2, e3`
/// and the Vandermonde product, of degrees 1, 2, 3, 3.
pub fn invariant_targets() -> Vec<Polynomial> {
    let mut t = elementary_symmetric();
    t.push(vandermonde_product());
    t
}

/// Degrees of the invariant-ring generators.
pub fn invariant_degrees() -> Vec<u32> {
    vec![1, 2, 3, 3]
}

/// Weight-matrix order `((0,2,2,3),(1,4,1,6))` with grevlex tiebreak on the
/// 4-variable presentation ring.
pub fn invariant_weight_order() -> MonomialOrder {
    MonomialOrder::weight_rows_i64(&[&[0, 2, 2, 3], &[1, 4, 1, 6]], MonomialOrder::GrevLex)
}

/// Ray valuation table for the invariant-ring presentation: generator values
/// are the columns of `((-3,-6,14,-9),(22,-2,-3,-3))`, value space ordered
/// lexicographically, generator degrees `(1,2,3,3)`.
pub fn invariant_ray_table() -> ValuationTable {
    ValuationTable::new(
        RatMatrix::from_i64_rows(&[&[-3, -6, 14, -9], &[22, -2, -3, -3]]),
        ValueOrder::lex(2),
        Some(invariant_degrees()),
    )
    .unwrap()
}

/// Graded extension of the ray table: a degree row on top, with the value
/// order comparing degrees first (lower degree precedes) and then the base
/// values.
pub fn invariant_graded_table() -> ValuationTable {
    crate::okounkov::extend_graded(&invariant_ray_table(), &invariant_degrees()).unwrap()
}

/// Base valuation table for the plane-cubics system: two value rows per
/// generator, graded-reverse-lex style value order, degrees
/// `(1,1,1,1,1,1,2,3)`.
pub fn plane_cubics_table() -> ValuationTable {
    ValuationTable::new(
        RatMatrix::from_i64_rows(&[&[1, 2, 0, 1, 2, 3, 1, 4], &[1, 0, 3, 2, 1, 0, 3, 1]]),
        ValueOrder::new(RatMatrix::from_i64_rows(&[&[-1, -1], &[0, 1]])).unwrap(),
        Some(plane_cubics_degrees()),
    )
    .unwrap()
}

pub fn plane_cubics_degrees() -> Vec<u32> {
    vec![1, 1, 1, 1, 1, 1, 2, 3]
}

/// Precomputed full basis matrix for the plane-cubics fixture: columns 1-5
/// span the relation lattice, column 6 is the degree vector, columns 7-8 an
/// orthogonal extension.
pub fn plane_cubics_w() -> RatMatrix {
    RatMatrix::from_i64_rows(&[
        &[1, 2, 3, -3, -4, 1, 0, 0],
        &[-1, -2, -3, 1, 0, 1, 0, 0],
        &[-1, -1, -1, 0, 1, 1, 0, 0],
        &[1, 0, 0, 0, 0, 1, 0, 0],
        &[0, 1, 0, 0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0, 1, 2, 3],
        &[0, 0, 0, 1, 0, 2, -1, 0],
        &[0, 0, 0, 0, 1, 3, 0, -1],
    ])
}

/// The lattice columns (1-5 of [`plane_cubics_w`]) as rational vectors.
pub fn plane_cubics_k_generators() -> Vec<Vec<crate::Rat>> {
    let w = plane_cubics_w();
    (0..5).map(|j| w.col(j)).collect()
}

/// Expected vertex set of the degree-normalized generator-value hull for the
/// plane-cubics fixture.
pub fn plane_cubics_direct_vertices() -> Vec<Vec<crate::Rat>> {
    vec![
        vec![rat_int(0), rat_int(3)],
        vec![rat_int(3), rat_int(0)],
        vec![rat_int(2), rat_int(0)],
        vec![crate::rat(4, 3), crate::rat(1, 3)],
        vec![crate::rat(1, 2), crate::rat(3, 2)],
    ]
}

/// Expected value-coordinate matrix of the plane-cubics fixture under the
/// basis [`plane_cubics_w`]: last two rows of the inverse, column `i` scaled
/// by the reciprocal degree.
pub fn plane_cubics_printed_v() -> RatMatrix {
    let r = crate::rat;
    RatMatrix::from_rows(vec![
        vec![
            r(-11, 190),
            r(13, 38),
            r(-91, 95),
            r(-53, 95),
            r(-3, 19),
            r(23, 95),
            r(-49, 190),
            r(23, 95),
        ],
        vec![
            r(3, 190),
            r(-7, 38),
            r(68, 95),
            r(49, 95),
            r(6, 19),
            r(11, 95),
            r(11, 95),
            r(-62, 285),
        ],
    ])
}

/// Expected generator matrix of the coordinate lattice for the plane-cubics
/// fixture (columns generate; determinant 1/190 in absolute value).
pub fn plane_cubics_printed_lprime() -> RatMatrix {
    let r = crate::rat;
    RatMatrix::from_rows(vec![
        vec![rat_int(1), rat_int(0), r(-6, 19)],
        vec![rat_int(0), rat_int(1), r(-67, 190)],
        vec![rat_int(0), rat_int(0), r(1, 190)],
    ])
}
