//! Newton-Okounkov bodies: graded valuation extension, exact convex hulls and
//! volumes in low dimension, the degree-normalized generator-value body, the
//! full normalized-volume pipeline, and the affine-equivalence check between
//! the two body constructions.

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::khovanskii::{
    build_mu_context, build_mu_context_from_lattice, default_leaves_bound, khovanskii_certificate,
    KhovanskiiCertificate, MuContext, MuContextOptions, Verdict,
};
use crate::linalg::{primitive_from_rational, Lattice, RatMatrix};
use crate::order::{ValuationTable, ValueOrder};
use crate::{rat_int, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Maximum supported ambient dimension for exact hulls.
pub const MAX_HULL_DIM: usize = 6;

/// Extend a valuation table by a positive grading: the new table gains a
/// degree row on top, and the value order compares degrees first (lower
/// degree precedes), then the base values.
pub fn extend_graded(table: &ValuationTable, degrees: &[u32]) -> Result<ValuationTable> {
    if degrees.len() != table.num_generators() {
        return Err(Error::DimensionMismatch {
            expected: table.num_generators(),
            found: degrees.len(),
            context: "grading degrees",
        });
    }
    if let Some(idx) = degrees.iter().position(|&d| d == 0) {
        return Err(Error::NonpositiveDegree { index: idx });
    }
    let r = table.rank();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(r + 1);
    rows.push(degrees.iter().map(|&d| rat_int(d as i64)).collect());
    for i in 0..r {
        rows.push(table.matrix().row(i).to_vec());
    }
    let mut order = RatMatrix::zero(r + 1, r + 1);
    order[(0, 0)] = rat_int(-1);
    for i in 0..r {
        for j in 0..r {
            let v = table.value_order().matrix()[(i, j)].clone();
            if !v.is_zero() {
                order[(i + 1, j + 1)] = v;
            }
        }
    }
    ValuationTable::new(RatMatrix::from_rows(rows), ValueOrder::new(order)?, Some(degrees.to_vec()))
}

/// Closed half-space `normal . x <= offset` with a primitive integer normal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

impl Facet {
    fn eval(&self, p: &[Rat]) -> Rat {
        self.normal.iter().zip(p).map(|(n, x)| Rat::from(n.clone()) * x).sum()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.eval(p) == self.offset
    }

    pub fn satisfied_by(&self, p: &[Rat]) -> bool {
        self.eval(p) <= self.offset
    }
}

/// Convex hull of finitely many rational points.
///
/// Vertices are exactly the extreme points.  For full-dimensional hulls the
/// facet half-spaces are listed; lower-dimensional hulls carry their affine
/// dimension and an empty facet list.  Vertex order is deterministic: a
/// counterclockwise cycle from the lexicographic minimum in the planar
/// full-dimensional case, lexicographic otherwise.
#[derive(Clone, PartialEq, Debug)]
pub struct Polytope {
    ambient_dim: usize,
    affine_dim: usize,
    vertices: Vec<Vec<Rat>>,
    facets: Vec<Facet>,
}

impl Polytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_set(&self) -> BTreeSet<Vec<Rat>> {
        self.vertices.iter().cloned().collect()
    }

    /// Containment test; exact, but only available for full-dimensional
    /// hulls (which carry facets).
    pub fn contains(&self, p: &[Rat]) -> bool {
        if self.affine_dim == 0 {
            return self.vertices[0] == p;
        }
        assert!(self.is_full_dimensional(), "containment needs facets");
        self.facets.iter().all(|f| f.satisfied_by(p))
    }
}

/// Build the convex hull of the given points.
pub fn convex_hull(points: &[Vec<Rat>]) -> Result<Polytope> {
    let Some(first) = points.first() else {
        return Err(Error::Invalid("convex hull of an empty point set".into()));
    };
    let dim = first.len();
    if dim > MAX_HULL_DIM {
        return Err(Error::UnsupportedDimension { dim, max: MAX_HULL_DIM });
    }
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
                context: "hull point",
            });
        }
    }
    let mut pts: Vec<Vec<Rat>> = points.to_vec();
    pts.sort();
    pts.dedup();

    if dim == 0 || pts.len() == 1 {
        return Ok(Polytope {
            ambient_dim: dim,
            affine_dim: 0,
            vertices: vec![pts[0].clone()],
            facets: Vec::new(),
        });
    }

    // Affine dimension and, if degenerate, coordinates inside the span.
    let base = pts[0].clone();
    let diffs: Vec<Vec<Rat>> =
        pts[1..].iter().map(|p| sub_vec(p, &base)).collect();
    let diff_mat = RatMatrix::from_columns(dim, &diffs);
    let q = diff_mat.rank();
    if q == dim {
        let (vertices, facets) = hull_full_dim(&pts, dim);
        let vertices = order_vertices(vertices, dim, q);
        return Ok(Polytope { ambient_dim: dim, affine_dim: q, vertices, facets });
    }

    // Project onto q independent directions, take the hull there, and map
    // the vertex set back.
    let basis_cols = diff_mat.independent_columns();
    let basis: Vec<Vec<Rat>> = basis_cols.iter().map(|&j| diffs[j].clone()).collect();
    let basis_mat = RatMatrix::from_columns(dim, &basis);
    let row_idx = basis_mat.transpose().independent_columns();
    let mut square = RatMatrix::zero(q, q);
    for (a, &i) in row_idx.iter().enumerate() {
        for b in 0..q {
            square[(a, b)] = basis_mat[(i, b)].clone();
        }
    }
    let square_inv = square.invert()?;
    let project = |p: &Vec<Rat>| -> Vec<Rat> {
        let d = sub_vec(p, &base);
        let restricted: Vec<Rat> = row_idx.iter().map(|&i| d[i].clone()).collect();
        square_inv.mul_vec(&restricted)
    };
    let projected: Vec<Vec<Rat>> = pts.iter().map(project).collect();
    let (proj_vertices, _) = hull_full_dim(&projected, q);
    let proj_set: BTreeSet<Vec<Rat>> = proj_vertices.into_iter().collect();
    let mut vertices: Vec<Vec<Rat>> = pts
        .iter()
        .zip(&projected)
        .filter(|(_, pr)| proj_set.contains(*pr))
        .map(|(p, _)| p.clone())
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(Polytope { ambient_dim: dim, affine_dim: q, vertices, facets: Vec::new() })
}

fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Incremental hull of a full-dimensional point set: points are inserted in
/// sorted order, interior points are discarded using the current facets, and
/// supporting hyperplanes are recomputed exactly on each growth step.
fn hull_full_dim(pts: &[Vec<Rat>], q: usize) -> (Vec<Vec<Rat>>, Vec<Facet>) {
    debug_assert!(q >= 1);
    // Seed with q+1 affinely independent points.
    let mut seed: Vec<usize> = vec![0];
    let mut seed_diffs: Vec<Vec<Rat>> = Vec::new();
    for (i, p) in pts.iter().enumerate().skip(1) {
        if seed.len() == q + 1 {
            break;
        }
        let mut cand = seed_diffs.clone();
        cand.push(sub_vec(p, &pts[0]));
        if RatMatrix::from_columns(q, &cand).rank() > seed_diffs.len() {
            seed_diffs = cand;
            seed.push(i);
        }
    }
    let mut hull_pts: Vec<Vec<Rat>> = seed.iter().map(|&i| pts[i].clone()).collect();
    let mut facets = enumerate_facets(&hull_pts, q);
    let seed_set: BTreeSet<usize> = seed.into_iter().collect();
    for (i, p) in pts.iter().enumerate() {
        if seed_set.contains(&i) {
            continue;
        }
        if facets.iter().all(|f| f.satisfied_by(p)) {
            continue;
        }
        hull_pts.push(p.clone());
        facets = enumerate_facets(&hull_pts, q);
        hull_pts = extreme_points(&hull_pts, &facets, q);
    }
    let vertices = extreme_points(&hull_pts, &facets, q);
    (vertices, facets)
}

/// All supporting hyperplanes spanned by q-subsets of the points.
fn enumerate_facets(pts: &[Vec<Rat>], q: usize) -> Vec<Facet> {
    let mut out: BTreeSet<Facet> = BTreeSet::new();
    if q == 1 {
        let min = pts.iter().map(|p| p[0].clone()).min().unwrap();
        let max = pts.iter().map(|p| p[0].clone()).max().unwrap();
        out.insert(Facet { normal: vec![Int::one()], offset: max });
        out.insert(Facet { normal: vec![-Int::one()], offset: -min });
        return out.into_iter().collect();
    }
    let mut subset = vec![0usize; q];
    combinations(pts.len(), q, &mut subset, 0, 0, &mut |idx: &[usize]| {
        let rows: Vec<Vec<Rat>> =
            idx[1..].iter().map(|&i| sub_vec(&pts[i], &pts[idx[0]])).collect();
        let Some(normal) = kernel_vector(&rows, q) else {
            return;
        };
        let normal = primitive_from_rational(&normal);
        let normal_rat: Vec<Rat> = normal.iter().map(|x| Rat::from(x.clone())).collect();
        let offset: Rat = normal_rat.iter().zip(&pts[idx[0]]).map(|(n, x)| n * x).sum();
        let mut has_above = false;
        let mut has_below = false;
        for p in pts {
            let val: Rat = normal_rat.iter().zip(p).map(|(n, x)| n * x).sum();
            if val > offset {
                has_above = true;
            } else if val < offset {
                has_below = true;
            }
            if has_above && has_below {
                return;
            }
        }
        if !has_above {
            out.insert(Facet { normal, offset });
        } else {
            out.insert(Facet {
                normal: normal.iter().map(|x| -x.clone()).collect(),
                offset: -offset,
            });
        }
    });
    out.into_iter().collect()
}

fn combinations(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    pos: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if pos == k {
        visit(buf);
        return;
    }
    for i in start..n {
        buf[pos] = i;
        combinations(n, k, buf, pos + 1, i + 1, visit);
    }
}

/// One kernel vector of the row set when the nullity is exactly one.
fn kernel_vector(rows: &[Vec<Rat>], q: usize) -> Option<Vec<Rat>> {
    let mut mat = RatMatrix::from_rows(rows.to_vec());
    if mat.rows() == 0 || mat.rank() != q - 1 {
        return None;
    }
    // Row-reduce and read a kernel vector off the free column.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..q {
        let Some(pr) = (rank..rows.len()).find(|&r| !mat[(r, col)].is_zero()) else {
            continue;
        };
        for j in 0..q {
            let tmp = mat[(pr, j)].clone();
            mat[(pr, j)] = mat[(rank, j)].clone();
            mat[(rank, j)] = tmp;
        }
        let p = mat[(rank, col)].clone();
        for r in 0..rows.len() {
            if r == rank || mat[(r, col)].is_zero() {
                continue;
            }
            let factor = &mat[(r, col)] / &p;
            for j in 0..q {
                let s = &factor * &mat[(rank, j)];
                mat[(r, j)] -= s;
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..q).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![Rat::zero(); q];
    x[free] = Rat::one();
    for &(r, c) in pivots.iter().rev() {
        x[c] = -(&mat[(r, free)] / &mat[(r, c)]);
    }
    Some(x)
}

/// Points whose active facet normals span the whole space.
fn extreme_points(pts: &[Vec<Rat>], facets: &[Facet], q: usize) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for p in pts {
        let active: Vec<Vec<Rat>> = facets
            .iter()
            .filter(|f| f.contains(p))
            .map(|f| f.normal.iter().map(|x| Rat::from(x.clone())).collect())
            .collect();
        if active.len() >= q && RatMatrix::from_rows(active).rank() == q {
            out.push(p.clone());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Deterministic vertex presentation: counterclockwise from the
/// lexicographic minimum for planar bodies, sorted otherwise.
fn order_vertices(mut vertices: Vec<Vec<Rat>>, ambient: usize, affine: usize) -> Vec<Vec<Rat>> {
    vertices.sort();
    vertices.dedup();
    if ambient != 2 || affine != 2 || vertices.len() < 3 {
        return vertices;
    }
    let n = rat_int(vertices.len() as i64);
    let cx: Rat = vertices.iter().map(|v| v[0].clone()).sum::<Rat>() / n.clone();
    let cy: Rat = vertices.iter().map(|v| v[1].clone()).sum::<Rat>() / n;
    let half = |v: &Vec<Rat>| -> u8 {
        // Upper half-plane first (angle in [0, pi)), then lower.
        if v[1] > cy || (v[1] == cy && v[0] > cx) {
            0
        } else {
            1
        }
    };
    let mut rest = vertices;
    rest.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            // Within a half-plane, counterclockwise means decreasing cross.
            let cross = (&a[0] - &cx) * (&b[1] - &cy) - (&b[0] - &cx) * (&a[1] - &cy);
            if cross > Rat::zero() {
                std::cmp::Ordering::Less
            } else if cross < Rat::zero() {
                std::cmp::Ordering::Greater
            } else {
                a.cmp(b)
            }
        })
    });
    // Rotate so the lexicographic minimum leads; orientation stays CCW.
    let min_idx = rest
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.cmp(b))
        .map(|(i, _)| i)
        .unwrap();
    rest.rotate_left(min_idx);
    rest
}

/// Exact volume data of a hull.
#[derive(Clone, PartialEq, Debug)]
pub struct VolumeInfo {
    /// Euclidean volume in the ambient dimension; zero when the hull is not
    /// full-dimensional.  A point in the zero-dimensional space has volume 1.
    pub volume: Rat,
    pub affine_dim: usize,
    pub full_dimensional: bool,
}

/// Exact Euclidean volume via a fan triangulation from the first vertex.
pub fn volume(p: &Polytope) -> VolumeInfo {
    volume_from_seed(p, 0)
}

/// Same volume, fanning from another vertex; used to cross-check that the
/// triangulation choice does not matter.
pub fn volume_from_seed(p: &Polytope, seed: usize) -> VolumeInfo {
    let full = p.is_full_dimensional();
    if p.ambient_dim == 0 {
        return VolumeInfo { volume: rat_int(1), affine_dim: 0, full_dimensional: true };
    }
    if !full {
        return VolumeInfo {
            volume: Rat::zero(),
            affine_dim: p.affine_dim,
            full_dimensional: false,
        };
    }
    let q = p.ambient_dim;
    let simplices = triangulate(&p.vertices, q, seed);
    let mut total = Rat::zero();
    let mut factorial = Rat::one();
    for k in 1..=q as i64 {
        factorial *= rat_int(k);
    }
    for s in &simplices {
        let rows: Vec<Vec<Rat>> = s[1..].iter().map(|v| sub_vec(v, &s[0])).collect();
        let det = RatMatrix::from_rows(rows).det().expect("square simplex matrix");
        total += det.abs();
    }
    VolumeInfo { volume: total / factorial, affine_dim: q, full_dimensional: true }
}

/// Fan triangulation of a full-dimensional hull: simplices as point tuples.
fn triangulate(points: &[Vec<Rat>], q: usize, seed: usize) -> Vec<Vec<Vec<Rat>>> {
    if q == 1 {
        let min = points.iter().min().unwrap().clone();
        let max = points.iter().max().unwrap().clone();
        if min == max {
            return Vec::new();
        }
        return vec![vec![min, max]];
    }
    let hull = convex_hull(points).expect("triangulation input within supported dims");
    if !hull.is_full_dimensional() {
        return Vec::new();
    }
    let verts = hull.vertices();
    let apex = verts[seed % verts.len()].clone();
    let mut out = Vec::new();
    for facet in hull.facets() {
        if facet.contains(&apex) {
            continue;
        }
        let on_facet: Vec<Vec<Rat>> =
            verts.iter().filter(|v| facet.contains(v)).cloned().collect();
        let drop_coord = facet
            .normal
            .iter()
            .position(|x| !x.is_zero())
            .expect("facet normal is nonzero");
        let projected: Vec<Vec<Rat>> = on_facet
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop_coord)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        for sub in triangulate(&projected, q - 1, 0) {
            let mut simplex = vec![apex.clone()];
            for sp in sub {
                let idx = projected.iter().position(|p| *p == sp).expect("projected point");
                simplex.push(on_facet[idx].clone());
            }
            out.push(simplex);
        }
    }
    out
}

/// Degree-normalized generator-value body: the hull of column `i` of the
/// table divided by the `i`-th degree.
pub fn nobody_direct(table: &ValuationTable) -> Result<Polytope> {
    let degrees = table.degrees().ok_or(Error::MissingDegrees)?;
    let points: Vec<Vec<Rat>> = (0..table.num_generators())
        .map(|i| {
            let d = rat_int(degrees[i] as i64);
            table.generator_value(i).into_iter().map(|x| x / d.clone()).collect()
        })
        .collect();
    convex_hull(&points)
}

/// Direct-body report: the hull together with its exact normalized volume.
#[derive(Clone, Debug)]
pub struct DirectBodyReport {
    pub body: Polytope,
    pub euclidean_volume: Rat,
    pub degree_gcd: u64,
    /// Covolume of the lattice of values reachable in degree zero.
    pub value_lattice_det: Rat,
    pub normalized_volume: Rat,
}

/// Normalized volume of the direct body: `q! * gcd(d) * vol / covol` where
/// the covolume is taken over the degree-zero slice of the lattice generated
/// by the graded generator values `(d_i, value_i)`.
pub fn nobody_direct_report(table: &ValuationTable) -> Result<DirectBodyReport> {
    let degrees = table.degrees().ok_or(Error::MissingDegrees)?;
    let body = nobody_direct(table)?;
    if !body.is_full_dimensional() {
        return Err(Error::Invalid(
            "direct body is not full-dimensional; normalized volume undefined".into(),
        ));
    }
    let q = body.ambient_dim();
    let vol = volume(&body).volume;
    let r = table.rank();
    let graded_gens: Vec<Vec<Rat>> = (0..table.num_generators())
        .map(|i| {
            let mut v = vec![rat_int(degrees[i] as i64)];
            v.extend(table.generator_value(i));
            v
        })
        .collect();
    let graded_lattice = Lattice::from_generators(r + 1, &graded_gens)?;
    let slice: Vec<Vec<Rat>> = graded_lattice
        .basis_vectors()
        .into_iter()
        .filter(|v| v[0].is_zero())
        .map(|v| v[1..].to_vec())
        .collect();
    let slice_lattice = Lattice::from_generators(r, &slice)?;
    let covol = slice_lattice.covolume()?;
    let gcd = degrees.iter().fold(0u64, |acc, &d| acc.gcd(&(d as u64)));
    let mut factorial = Rat::one();
    for k in 1..=q as i64 {
        factorial *= rat_int(k);
    }
    let normalized = factorial * rat_int(gcd as i64) * &vol / &covol;
    Ok(DirectBodyReport {
        body,
        euclidean_volume: vol,
        degree_gcd: gcd,
        value_lattice_det: covol,
        normalized_volume: normalized,
    })
}

/// Full output of the normalized-volume pipeline.
#[derive(Clone, Debug)]
pub struct NoBodyReport {
    pub body: Polytope,
    pub ell: usize,
    pub m: usize,
    pub euclidean_volume: Rat,
    /// Covolume of the lattice generated by the value-coordinate rows.
    pub lattice_det: Rat,
    pub degree_gcd: u64,
    pub degree_norm_sq: u64,
    pub normalized_volume: Rat,
    pub w: RatMatrix,
    /// Value coordinates of the generators, degree-normalized per column.
    pub v: RatMatrix,
    pub lprime: Lattice,
    /// Set when the body is a single point (empty-product conventions used).
    pub degenerate_point: bool,
    pub certificate: Option<KhovanskiiCertificate>,
}

/// Options for the volume pipeline.
#[derive(Clone, Debug, Default)]
pub struct Algorithm1Options {
    pub mu: MuContextOptions,
    /// Degree bound for the certificate; defaults to twice the maximal basis
    /// degree.
    pub certificate_bound: Option<u32>,
}

/// Run the volume pipeline from a basis of the relation ideal.
///
/// The validity certificate runs first; a refuted certificate aborts with an
/// error carrying the witness.
pub fn algorithm1_volume(
    gb: &Arc<GroebnerBasis>,
    table: &ValuationTable,
    degrees: &[u32],
    opts: &Algorithm1Options,
) -> Result<NoBodyReport> {
    if degrees.is_empty() {
        return Err(Error::MissingDegrees);
    }
    let ctx = build_mu_context(gb, Some(degrees), &opts.mu)?;
    let bound = opts.certificate_bound.unwrap_or_else(|| default_leaves_bound(gb));
    let certificate = khovanskii_certificate(gb, table, &ctx, bound)?;
    if let Verdict::Refuted(witness) = &certificate.verdict {
        return Err(Error::Refuted(witness.to_string()));
    }
    algorithm1_from_context(&ctx, Some(certificate))
}

/// Run the volume pipeline from a precomputed relation lattice.  No
/// certificate can be checked without a basis; the caller vouches for the
/// inputs.
pub fn algorithm1_from_lattice(
    k: Lattice,
    degrees: &[u32],
    opts: &Algorithm1Options,
) -> Result<NoBodyReport> {
    let ctx = build_mu_context_from_lattice(k, Some(degrees), &opts.mu)?;
    algorithm1_from_context(&ctx, None)
}

/// Steps shared by both entry points: assemble the value coordinates, hull
/// them, and normalize the volume by the coordinate lattice.
pub fn algorithm1_from_context(
    ctx: &MuContext,
    certificate: Option<KhovanskiiCertificate>,
) -> Result<NoBodyReport> {
    let degrees = ctx.degrees().ok_or(Error::MissingDegrees)?;
    let m = ctx.nvars();
    let ell = ctx.ell();
    let q = m - ell - 1;
    let winv = ctx.winv();

    // Value coordinates without the degree row, column i scaled by 1/d_i.
    let coord_rows = winv.row_slice(ell + 1, m);
    let mut v = RatMatrix::zero(q, m);
    for j in 0..m {
        let d = rat_int(degrees[j] as i64);
        for i in 0..q {
            v[(i, j)] = &coord_rows[(i, j)] / &d;
        }
    }

    let (body, vol) = if q == 0 {
        let body = Polytope {
            ambient_dim: 0,
            affine_dim: 0,
            vertices: vec![Vec::new()],
            facets: Vec::new(),
        };
        (body, rat_int(1))
    } else {
        let points: Vec<Vec<Rat>> = (0..m).map(|j| v.col(j)).collect();
        let body = convex_hull(&points)?;
        let vol = volume(&body).volume;
        (body, vol)
    };

    // Lattice generated by the value-coordinate columns (degree row kept).
    let full_rows = winv.row_slice(ell, m);
    let cols: Vec<Vec<Rat>> = (0..m).map(|j| full_rows.col(j)).collect();
    let lprime = Lattice::from_generators(m - ell, &cols)?;
    let lattice_det = lprime.covolume()?;

    let gcd = degrees.iter().fold(0u64, |acc, &d| acc.gcd(&(d as u64)));
    let norm_sq: u64 = degrees.iter().map(|&d| (d as u64) * (d as u64)).sum();
    let mut factorial = Rat::one();
    for k in 1..=q as i64 {
        factorial *= rat_int(k);
    }
    let normalized = factorial * rat_int(gcd as i64) * &vol
        / (rat_int(norm_sq as i64) * &lattice_det);

    Ok(NoBodyReport {
        body,
        ell,
        m,
        euclidean_volume: vol,
        lattice_det,
        degree_gcd: gcd,
        degree_norm_sq: norm_sq,
        normalized_volume: normalized,
        w: ctx.w().clone(),
        v,
        lprime,
        degenerate_point: q == 0,
        certificate,
    })
}

/// Outcome of the affine-equivalence check between the two bodies.
#[derive(Clone, Debug)]
pub enum AffineEquivalence {
    /// The map `x -> M x + b` carries the vertex set of the first body
    /// bijectively onto that of the second.
    Pass { matrix: RatMatrix, offset: Vec<Rat> },
    Fail(String),
}

impl AffineEquivalence {
    pub fn passed(&self) -> bool {
        matches!(self, AffineEquivalence::Pass { .. })
    }
}

/// Build the affine map between the coordinate body and the direct body from
/// the valuation-equivalence matrix and verify it on the vertex sets.
///
/// `phi` may include the degree row (graded table) or not (base table); in
/// the graded case its first row must ignore the non-degree coordinates.
pub fn affine_equivalence(
    body_mu: &Polytope,
    body_nu: &Polytope,
    phi: &RatMatrix,
    degrees: &[u32],
) -> AffineEquivalence {
    let r = body_nu.ambient_dim();
    let norm_sq: u64 = degrees.iter().map(|&d| (d as u64) * (d as u64)).sum();
    let norm_sq = rat_int(norm_sq as i64);
    let (matrix, offset): (RatMatrix, Vec<Rat>) = if phi.rows() == r + 1 {
        // Graded form: the degree-output row may depend only on the degree
        // coordinate.
        for j in 1..phi.cols() {
            if !phi[(0, j)].is_zero() {
                return AffineEquivalence::Fail(
                    "degree row of the map mixes non-degree coordinates".into(),
                );
            }
        }
        let mut m = RatMatrix::zero(r, phi.cols() - 1);
        let mut b = Vec::with_capacity(r);
        for i in 0..r {
            for j in 1..phi.cols() {
                m[(i, j - 1)] = phi[(i + 1, j)].clone();
            }
            b.push(&phi[(i + 1, 0)] / &norm_sq);
        }
        (m, b)
    } else if phi.rows() == r {
        let mut m = RatMatrix::zero(r, phi.cols() - 1);
        let mut b = Vec::with_capacity(r);
        for i in 0..r {
            for j in 1..phi.cols() {
                m[(i, j - 1)] = phi[(i, j)].clone();
            }
            b.push(&phi[(i, 0)] / &norm_sq);
        }
        (m, b)
    } else {
        return AffineEquivalence::Fail(format!(
            "map has {} rows, body lives in dimension {}",
            phi.rows(),
            r
        ));
    };
    if matrix.cols() != body_mu.ambient_dim() {
        return AffineEquivalence::Fail(format!(
            "map consumes {} coordinates, body has {}",
            matrix.cols(),
            body_mu.ambient_dim()
        ));
    }
    let mut mapped: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for vtx in body_mu.vertices() {
        let mut image = matrix.mul_vec(vtx);
        for (x, o) in image.iter_mut().zip(&offset) {
            *x += o;
        }
        mapped.insert(image);
    }
    let target = body_nu.vertex_set();
    if mapped == target && body_mu.vertices().len() == body_nu.vertices().len() {
        AffineEquivalence::Pass { matrix, offset }
    } else {
        AffineEquivalence::Fail("vertex sets do not correspond under the map".into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groebner::{buchberger, Ideal};
    use crate::khovanskii::phi_transformation;
    use crate::order::MonomialOrder;
    
    use crate::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn graded_extension_of_plane_cubics() {
        let base = fixtures::plane_cubics_table();
        let graded = extend_graded(&base, &fixtures::plane_cubics_degrees()).unwrap();
        assert_eq!(graded.rank(), 3);
        // First row is the degree row.
        let expected: Vec<Rat> = fixtures::plane_cubics_degrees()
            .iter()
            .map(|&d| rat_int(d as i64))
            .collect();
        assert_eq!(graded.matrix().row(0), &expected[..]);
        // A degree-2 value precedes a degree-1 value regardless of tails.
        let v2 = vec![rat_int(2), rat_int(-100), rat_int(50)];
        let v1 = vec![rat_int(1), rat_int(100), rat_int(-50)];
        assert_eq!(graded.value_order().compare(&v2, &v1), std::cmp::Ordering::Less);

        assert!(matches!(
            extend_graded(&base, &[1, 1, 0, 1, 1, 1, 2, 3]).unwrap_err(),
            Error::NonpositiveDegree { index: 2 }
        ));
    }

    #[test]
    fn hull_triangle() {
        let hull = convex_hull(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(hull.vertices().len(), 3);
        assert!(hull.is_full_dimensional());
        assert_eq!(hull.facets().len(), 3);
    }

    #[test]
    fn hull_collinear_points_form_segment() {
        let hull = convex_hull(&[pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]).unwrap();
        assert_eq!(hull.affine_dim(), 1);
        assert_eq!(hull.vertices(), &[pt(&[0, 0]), pt(&[2, 2])]);
    }

    #[test]
    fn hull_of_value_coordinates_matches_figure() {
        // Frozen vertex cycle of the plane-cubics value body.
        let v = fixtures::plane_cubics_printed_v();
        let points: Vec<Vec<Rat>> = (0..8).map(|j| v.col(j)).collect();
        let hull = convex_hull(&points).unwrap();
        let expected = vec![
            vec![rat(-91, 95), rat(68, 95)],
            vec![rat(-49, 190), rat(11, 95)],
            vec![rat(23, 95), rat(-62, 285)],
            vec![rat(13, 38), rat(-7, 38)],
            vec![rat(23, 95), rat(11, 95)],
        ];
        assert_eq!(hull.vertices(), &expected[..]);
        assert_eq!(volume(&hull).volume, rat(1, 4));
    }

    #[test]
    fn volume_unit_square_and_pentagon() {
        let square =
            convex_hull(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])]).unwrap();
        assert_eq!(volume(&square).volume, rat_int(1));

        let pentagon = convex_hull(&fixtures::plane_cubics_direct_vertices()).unwrap();
        assert_eq!(volume(&pentagon).volume, rat(5, 2));
    }

    #[test]
    fn volume_triangulation_seed_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..60 {
            let dim = rng.gen_range(1..=3);
            let n = rng.gen_range(dim + 1..=10);
            let points: Vec<Vec<Rat>> = (0..n)
                .map(|_| (0..dim).map(|_| rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=2))).collect())
                .collect();
            let hull = convex_hull(&points).unwrap();
            let base = volume(&hull);
            for seed in 1..hull.vertices().len().min(4) {
                assert_eq!(volume_from_seed(&hull, seed).volume, base.volume);
            }
            // Every input point satisfies the facet description.
            if hull.is_full_dimensional() {
                for p in &points {
                    assert!(hull.contains(p));
                }
            }
        }
    }

    #[test]
    fn hull_vertices_are_minimal() {
        // No vertex is a convex combination of the others: removing it
        // shrinks the hull.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=3);
            let n = rng.gen_range(dim + 1..=12);
            let points: Vec<Vec<Rat>> = (0..n)
                .map(|_| (0..dim).map(|_| rat(rng.gen_range(-5i64..=5), 1)).collect())
                .collect();
            let hull = convex_hull(&points).unwrap();
            if !hull.is_full_dimensional() {
                continue;
            }
            for (i, v) in hull.vertices().iter().enumerate() {
                let others: Vec<Vec<Rat>> = hull
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                let sub = convex_hull(&others).unwrap();
                let outside = !sub.is_full_dimensional() || !sub.contains(v);
                assert!(outside, "vertex {v:?} not extreme");
            }
        }
    }

    /// Independent membership oracle: enumerate simplex subsets of the
    /// candidate vertices and solve for an exact nonnegative convex
    /// combination.
    fn oracle_in_convex_hull(p: &[Rat], vertices: &[Vec<Rat>]) -> bool {
        let q = p.len();
        let n = vertices.len();
        let mut subset: Vec<usize> = Vec::new();
        fn visit(
            start: usize,
            left: usize,
            n: usize,
            subset: &mut Vec<usize>,
            found: &mut bool,
            check: &mut impl FnMut(&[usize]) -> bool,
        ) {
            if *found {
                return;
            }
            if left == 0 {
                if check(subset) {
                    *found = true;
                }
                return;
            }
            for i in start..n {
                subset.push(i);
                visit(i + 1, left - 1, n, subset, found, check);
                subset.pop();
                if *found {
                    return;
                }
            }
        }
        for size in 1..=(q + 1).min(n) {
            let mut found = false;
            let mut check = |idx: &[usize]| -> bool {
                // Solve sum(l_i v_i) = p, sum(l_i) = 1 exactly.
                let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(q + 1);
                for coord in 0..q {
                    rows.push(idx.iter().map(|&i| vertices[i][coord].clone()).collect());
                }
                rows.push(vec![Rat::one(); idx.len()]);
                let mut rhs: Vec<Rat> = p.to_vec();
                rhs.push(Rat::one());
                solve_nonnegative(&rows, &rhs)
            };
            visit(0, size, n, &mut subset, &mut found, &mut check);
            if found {
                return true;
            }
        }
        false
    }

    /// Exact Gaussian elimination: does `A x = b` admit a solution with all
    /// coordinates nonnegative?  Only unique-solution subsets matter for the
    /// oracle; rank-deficient systems are declined (a smaller subset covers
    /// that case).
    fn solve_nonnegative(rows: &[Vec<Rat>], rhs: &[Rat]) -> bool {
        let m = rows.len();
        let k = rows[0].len();
        let mut a: Vec<Vec<Rat>> = rows.iter().cloned().collect();
        let mut b: Vec<Rat> = rhs.to_vec();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
        let mut rank = 0;
        for col in 0..k {
            let Some(pr) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                return false;
            };
            a.swap(rank, pr);
            b.swap(rank, pr);
            let p = a[rank][col].clone();
            for r in 0..m {
                if r == rank || a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for c in 0..k {
                    let s = &f * &a[rank][c];
                    a[r][c] -= s;
                }
                let s = &f * &b[rank];
                b[r] -= s;
            }
            pivot_of_col[col] = Some(rank);
            rank += 1;
        }
        // Consistency of the remaining equations.
        for r in rank..m {
            if !b[r].is_zero() {
                return false;
            }
        }
        for col in 0..k {
            let r = pivot_of_col[col].expect("full column rank");
            let x = &b[r] / &a[r][col];
            if x < Rat::zero() {
                return false;
            }
        }
        true
    }

    #[test]
    fn hull_agrees_with_convex_combination_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..60 {
            let dim = rng.gen_range(1..=3);
            let n = rng.gen_range(dim + 1..=8);
            let points: Vec<Vec<Rat>> = (0..n)
                .map(|_| {
                    (0..dim).map(|_| rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=2))).collect()
                })
                .collect();
            let hull = convex_hull(&points).unwrap();
            // Every input point is a rational convex combination of the
            // returned vertices.
            for p in &points {
                assert!(
                    oracle_in_convex_hull(p, hull.vertices()),
                    "input point {p:?} is not a combination of the vertices"
                );
            }
            // No vertex is a combination of the other vertices.
            for (i, v) in hull.vertices().iter().enumerate() {
                let others: Vec<Vec<Rat>> = hull
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                assert!(
                    !oracle_in_convex_hull(v, &others),
                    "vertex {v:?} is a combination of the others"
                );
            }
        }
    }

    #[test]
    fn affine_equivalence_plane_cubics_bodies() {
        let k = Lattice::from_generators(8, &fixtures::plane_cubics_k_generators()).unwrap();
        let degrees = fixtures::plane_cubics_degrees();
        let ctx = build_mu_context_from_lattice(
            k,
            Some(&degrees),
            &MuContextOptions::default(),
        )
        .unwrap();
        let report = algorithm1_from_context(&ctx, None).unwrap();
        let table = fixtures::plane_cubics_table();
        let direct = nobody_direct(&table).unwrap();
        let (phi, rep) = phi_transformation(&table, &ctx).unwrap();
        assert!(rep.consistent);
        let res = affine_equivalence(&report.body, &direct, &phi, &degrees);
        assert!(res.passed(), "{res:?}");
    }

    #[test]
    fn direct_body_single_generator_is_point() {
        let table = ValuationTable::new(
            RatMatrix::from_i64_rows(&[&[5]]),
            ValueOrder::lex(1),
            Some(vec![2]),
        )
        .unwrap();
        let body = nobody_direct(&table).unwrap();
        assert_eq!(body.vertices(), &[vec![rat(5, 2)]]);
        assert_eq!(body.affine_dim(), 0);
    }

    #[test]
    fn direct_body_plane_cubics_pentagon() {
        let report = nobody_direct_report(&fixtures::plane_cubics_table()).unwrap();
        let expected: BTreeSet<Vec<Rat>> =
            fixtures::plane_cubics_direct_vertices().into_iter().collect();
        assert_eq!(report.body.vertex_set(), expected);
        assert_eq!(report.euclidean_volume, rat(5, 2));
        assert_eq!(report.value_lattice_det, rat_int(1));
        assert_eq!(report.normalized_volume, rat_int(5));
    }

    #[test]
    fn direct_body_invariant_triangle() {
        let report = nobody_direct_report(&fixtures::invariant_ray_table()).unwrap();
        let expected: BTreeSet<Vec<Rat>> = vec![
            vec![rat_int(-3), rat_int(22)],
            vec![rat_int(-3), rat_int(-1)],
            vec![rat(14, 3), rat_int(-1)],
        ]
        .into_iter()
        .collect();
        assert_eq!(report.body.vertex_set(), expected);
        assert_eq!(report.euclidean_volume, rat(529, 6));
        // Degree-zero slice of the graded value lattice has covolume 529.
        assert_eq!(report.value_lattice_det, rat_int(529));
        assert_eq!(report.normalized_volume, rat(1, 3));
    }

    #[test]
    fn pipeline_plane_cubics_fixture() {
        let k = Lattice::from_generators(8, &fixtures::plane_cubics_k_generators()).unwrap();
        let degrees = fixtures::plane_cubics_degrees();

        // Default deterministic extension.
        let report =
            algorithm1_from_lattice(k.clone(), &degrees, &Algorithm1Options::default()).unwrap();
        assert_eq!(report.ell, 5);
        assert_eq!(report.m, 8);
        assert_eq!(report.degree_norm_sq, 19);
        assert_eq!(report.normalized_volume, rat_int(5));

        // Printed full basis matrix as override: intermediates are frozen.
        let mut opts = Algorithm1Options::default();
        opts.mu.w_override = Some(fixtures::plane_cubics_w());
        let report = algorithm1_from_lattice(k, &degrees, &opts).unwrap();
        assert_eq!(report.euclidean_volume, rat(1, 4));
        assert_eq!(report.lattice_det, rat(1, 190));
        assert_eq!(report.degree_gcd, 1);
        assert_eq!(report.normalized_volume, rat_int(5));
        assert_eq!(report.v, fixtures::plane_cubics_printed_v());
        // The coordinate lattice agrees with the printed generator matrix.
        let printed = fixtures::plane_cubics_printed_lprime();
        let printed_lattice =
            Lattice::from_generators(3, &(0..3).map(|j| printed.col(j)).collect::<Vec<_>>())
                .unwrap();
        assert!(report.lprime.same_lattice(&printed_lattice));
    }

    #[test]
    fn pipeline_invariant_ring_end_to_end() {
        let ideal = Ideal::new(4, vec![fixtures::discriminant()]).unwrap();
        let table = fixtures::invariant_graded_table();
        let order = MonomialOrder::valuation_induced(table.clone(), MonomialOrder::GrevLex);
        let gb = Arc::new(buchberger(&ideal, &order).unwrap());
        let degrees = fixtures::invariant_degrees();
        let report =
            algorithm1_volume(&gb, &table, &degrees, &Algorithm1Options::default()).unwrap();
        assert_eq!(report.ell, 1);
        assert_eq!(report.degree_norm_sq, 23);
        // Frozen intermediates for the default extension (2,-1,0,0), (3,0,-1,0).
        assert_eq!(report.euclidean_volume, rat(1, 12));
        assert_eq!(report.lattice_det, rat(1, 46));
        assert_eq!(report.normalized_volume, rat(1, 3));

        // Direct construction agrees.
        let direct = nobody_direct_report(&fixtures::invariant_ray_table()).unwrap();
        assert_eq!(direct.normalized_volume, report.normalized_volume);
    }

    #[test]
    fn pipeline_single_variable_point_body() {
        let gb = Arc::new(buchberger(&Ideal::zero(1), &MonomialOrder::Lex).unwrap());
        let table = ValuationTable::new(
            RatMatrix::from_i64_rows(&[&[1]]),
            ValueOrder::new(RatMatrix::from_i64_rows(&[&[-1]])).unwrap(),
            Some(vec![1]),
        )
        .unwrap();
        let report = algorithm1_volume(&gb, &table, &[1], &Algorithm1Options::default()).unwrap();
        assert!(report.degenerate_point);
        assert_eq!(report.normalized_volume, rat_int(1));
    }

    #[test]
    fn affine_equivalence_identity() {
        let body = convex_hull(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        // Base-table-shaped map: first column is the degree column (zero
        // offset), the rest the identity.
        let phi = RatMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1]]);
        let res = affine_equivalence(&body, &body, &phi, &[1]);
        assert!(res.passed());
    }

    #[test]
    fn affine_equivalence_invariant_bodies() {
        let ideal = Ideal::new(4, vec![fixtures::discriminant()]).unwrap();
        let table = fixtures::invariant_graded_table();
        let order = MonomialOrder::valuation_induced(table.clone(), MonomialOrder::GrevLex);
        let gb = Arc::new(buchberger(&ideal, &order).unwrap());
        let degrees = fixtures::invariant_degrees();
        let ctx = build_mu_context(&gb, Some(&degrees), &MuContextOptions::default()).unwrap();
        let report =
            algorithm1_volume(&gb, &table, &degrees, &Algorithm1Options::default()).unwrap();
        let direct = nobody_direct(&fixtures::invariant_ray_table()).unwrap();
        let (phi, phi_report) =
            phi_transformation(&fixtures::invariant_ray_table(), &ctx).unwrap();
        assert!(phi_report.consistent);
        let res = affine_equivalence(&report.body, &direct, &phi, &degrees);
        assert!(res.passed(), "affine equivalence failed: {res:?}");
        // Graded map passes through the degree-row decomposition.
        let (phi_graded, rep) = phi_transformation(&table, &ctx).unwrap();
        assert!(rep.consistent);
        let res = affine_equivalence(&report.body, &direct, &phi_graded, &degrees);
        assert!(res.passed(), "graded affine equivalence failed: {res:?}");
    }

    #[test]
    fn normalized_volume_invariant_under_extension_and_tiebreak() {
        // Plane cubics: three extensions.
        let k = Lattice::from_generators(8, &fixtures::plane_cubics_k_generators()).unwrap();
        let degrees = fixtures::plane_cubics_degrees();
        let mut volumes = Vec::new();
        let default_ext =
            crate::linalg::orthogonal_extension(&k, &degrees.iter().map(|&d| Int::from(d)).collect::<Vec<_>>())
                .unwrap();
        let variants = extension_variants(&default_ext, &k);
        for ext in variants {
            let mut opts = Algorithm1Options::default();
            opts.mu.extension_override = Some(ext);
            let report = algorithm1_from_lattice(k.clone(), &degrees, &opts).unwrap();
            volumes.push(report.normalized_volume);
        }
        assert!(volumes.len() >= 3);
        assert!(volumes.iter().all(|v| *v == volumes[0]));

        // Invariant ring: extensions x tiebreaks.
        let ideal = Ideal::new(4, vec![fixtures::discriminant()]).unwrap();
        let table = fixtures::invariant_graded_table();
        let degrees = fixtures::invariant_degrees();
        let mut volumes = Vec::new();
        for tiebreak in [MonomialOrder::GrevLex, MonomialOrder::GrLex] {
            let order = MonomialOrder::valuation_induced(table.clone(), tiebreak);
            let gb = Arc::new(buchberger(&ideal, &order).unwrap());
            let k = crate::khovanskii::lattice_k(&gb).unwrap();
            let default_ext = crate::linalg::orthogonal_extension(
                &k,
                &degrees.iter().map(|&d| Int::from(d)).collect::<Vec<_>>(),
            )
            .unwrap();
            for ext in extension_variants(&default_ext, &k) {
                let mut opts = Algorithm1Options::default();
                opts.mu.extension_override = Some(ext);
                let report = algorithm1_volume(&gb, &table, &degrees, &opts).unwrap();
                volumes.push(report.normalized_volume);
            }
        }
        assert!(volumes.len() >= 6);
        assert!(volumes.iter().all(|v| *v == volumes[0]), "volumes: {volumes:?}");
    }

    /// Three valid extensions: the default and two unimodular reshuffles
    /// (adding lattice vectors keeps orthogonality to the degrees).
    fn extension_variants(default_ext: &[Vec<Int>], k: &Lattice) -> Vec<Vec<Vec<Int>>> {
        let mut variants = vec![default_ext.to_vec()];
        if default_ext.len() >= 2 {
            let mut v1 = default_ext.to_vec();
            let sum: Vec<Int> =
                v1[0].iter().zip(&v1[1]).map(|(a, b)| a + b).collect();
            v1[0] = sum;
            variants.push(v1);
            let mut v2 = default_ext.to_vec();
            let mixed: Vec<Int> = v2[1]
                .iter()
                .zip(&v2[0])
                .map(|(a, b)| a + b + b)
                .collect();
            v2[1] = mixed;
            variants.push(v2);
        } else {
            // Rank m-2 lattice: perturb the single extension vector by a
            // lattice vector (still orthogonal to the degrees).
            if let Some(b) = k.int_basis_vectors().and_then(|v| v.first().cloned()) {
                let mut v1 = default_ext.to_vec();
                v1[0] = v1[0].iter().zip(&b).map(|(a, c)| a + c).collect();
                variants.push(v1);
                let mut v2 = default_ext.to_vec();
                v2[0] = v2[0].iter().zip(&b).map(|(a, c)| a - c).collect();
                variants.push(v2);
            }
        }
        variants
    }

    #[test]
    fn hull_rejects_unsupported_dimension() {
        let p = vec![vec![Rat::zero(); 7]];
        assert!(matches!(
            convex_hull(&p).unwrap_err(),
            Error::UnsupportedDimension { dim: 7, max: 6 }
        ));
    }
}
