//! Image-space sets and exact planar geometry.
//!
//! A `VSet` is either a finite point list (possibly non-convex) or a
//! convex polyhedron `conv(vertices) + cone(rays)`. Families keep their
//! decomposition into labeled members: which pieces a union is built from
//! is meaningful here, so unions are never flattened.
//!
//! The 2-d utilities (hull, clip, area, union equality) are exact over
//! rationals. Union equality is decided by the area criterion for
//! full-dimensional members, interval merging for segments, and plain
//! membership for points, which together are sound and complete for
//! closed convex pieces.

use thiserror::Error;

use num_traits::{One, Signed, Zero};

use crate::cones::PolyhedralCone;
use crate::lp::{self, Bound, LPResult, LinearProgram};
use crate::numeric::{Rat, Vector};

/// Inclusion-exclusion over member subsets grows as `2^n`; unions are
/// capped well before that matters.
pub const MAX_UNION_MEMBERS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("a set needs at least one point")]
    EmptySet,
    #[error("operation requires bounded sets, got one with rays")]
    UnboundedInput,
    #[error("union comparison is exact only in dimension 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("union comparison is capped at {MAX_UNION_MEMBERS} members, got {0}")]
    FamilyTooLarge(usize),
    #[error("duplicate member label {0:?}")]
    DuplicateLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VSetData {
    /// Finite, possibly non-convex point set.
    FinitePoints(Vec<Vector>),
    /// `conv(vertices) + cone(rays)`; closed and convex.
    Polyhedron { vertices: Vec<Vector>, rays: Vec<Vector> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSet {
    dim: usize,
    data: VSetData,
}

impl VSet {
    pub fn points(pts: Vec<Vector>) -> Result<Self, SetError> {
        let Some(first) = pts.first() else {
            return Err(SetError::EmptySet);
        };
        let dim = first.dim();
        for p in &pts {
            if p.dim() != dim {
                return Err(SetError::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(VSet {
            dim,
            data: VSetData::FinitePoints(pts),
        })
    }

    pub fn singleton(p: Vector) -> Self {
        let dim = p.dim();
        VSet {
            dim,
            data: VSetData::FinitePoints(vec![p]),
        }
    }

    pub fn polyhedron(vertices: Vec<Vector>, rays: Vec<Vector>) -> Result<Self, SetError> {
        let Some(first) = vertices.first() else {
            return Err(SetError::EmptySet);
        };
        let dim = first.dim();
        for v in vertices.iter().chain(&rays) {
            if v.dim() != dim {
                return Err(SetError::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        Ok(VSet {
            dim,
            data: VSetData::Polyhedron { vertices, rays },
        })
    }

    /// Bounded polyhedron, i.e. a polytope given by vertices.
    pub fn polytope(vertices: Vec<Vector>) -> Result<Self, SetError> {
        VSet::polyhedron(vertices, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &VSetData {
        &self.data
    }

    pub fn is_finite_points(&self) -> bool {
        matches!(self.data, VSetData::FinitePoints(_))
    }

    pub fn is_bounded(&self) -> bool {
        match &self.data {
            VSetData::FinitePoints(_) => true,
            VSetData::Polyhedron { rays, .. } => rays.iter().all(Vector::is_zero),
        }
    }

    /// The points (finite case) or vertices (polyhedral case).
    pub fn base_points(&self) -> &[Vector] {
        match &self.data {
            VSetData::FinitePoints(p) => p,
            VSetData::Polyhedron { vertices, .. } => vertices,
        }
    }

    pub fn rays(&self) -> &[Vector] {
        match &self.data {
            VSetData::FinitePoints(_) => &[],
            VSetData::Polyhedron { rays, .. } => rays,
        }
    }

    /// Exact membership. Finite sets compare pointwise; polyhedra solve
    /// the convex-combination feasibility program.
    pub fn contains_point(&self, p: &Vector) -> bool {
        assert_eq!(p.dim(), self.dim, "membership dimension");
        match &self.data {
            VSetData::FinitePoints(pts) => pts.contains(p),
            VSetData::Polyhedron { vertices, rays } => {
                let nv = vertices.len();
                let nr = rays.len();
                let mut prog = LinearProgram::new(
                    Vector(vec![Rat::zero(); nv + nr]),
                    vec![Bound::NonNeg; nv + nr],
                );
                for i in 0..self.dim {
                    let mut coeffs: Vec<Rat> =
                        vertices.iter().map(|v| v.0[i].clone()).collect();
                    coeffs.extend(rays.iter().map(|r| r.0[i].clone()));
                    prog.eq(Vector(coeffs), p.0[i].clone());
                }
                let mut ones = vec![Rat::one(); nv];
                ones.extend(vec![Rat::zero(); nr]);
                prog.eq(Vector(ones), Rat::one());
                lp::solve(&prog).is_optimal()
            }
        }
    }

    /// Pointwise mirror image `-P`.
    pub fn negate(&self) -> VSet {
        let flip = |v: &Vec<Vector>| v.iter().map(Vector::neg).collect();
        VSet {
            dim: self.dim,
            data: match &self.data {
                VSetData::FinitePoints(p) => VSetData::FinitePoints(flip(p)),
                VSetData::Polyhedron { vertices, rays } => VSetData::Polyhedron {
                    vertices: flip(vertices),
                    rays: flip(rays),
                },
            },
        }
    }

    /// Translate by `d`.
    pub fn translate(&self, d: &Vector) -> VSet {
        assert_eq!(d.dim(), self.dim);
        let shift = |v: &Vec<Vector>| v.iter().map(|p| p.add(d)).collect();
        VSet {
            dim: self.dim,
            data: match &self.data {
                VSetData::FinitePoints(p) => VSetData::FinitePoints(shift(p)),
                VSetData::Polyhedron { vertices, rays } => VSetData::Polyhedron {
                    vertices: shift(vertices),
                    rays: rays.clone(),
                },
            },
        }
    }
}

/// Ordered, labeled members of a union; the decomposition itself is part
/// of the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    dim: usize,
    members: Vec<(String, VSet)>,
}

impl SetFamily {
    pub fn new(members: Vec<(String, VSet)>) -> Result<Self, SetError> {
        let Some((_, first)) = members.first() else {
            return Err(SetError::EmptySet);
        };
        let dim = first.dim();
        for (label, s) in &members {
            if s.dim() != dim {
                return Err(SetError::DimensionMismatch {
                    expected: dim,
                    got: s.dim(),
                });
            }
            if members.iter().filter(|(l, _)| l == label).count() > 1 {
                return Err(SetError::DuplicateLabel(label.clone()));
            }
        }
        Ok(SetFamily { dim, members })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[(String, VSet)] {
        &self.members
    }

    pub fn sets(&self) -> impl Iterator<Item = &VSet> {
        self.members.iter().map(|(_, s)| s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&VSet> {
        self.members
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, s)| s)
    }

    /// Wrap a single set as a one-member family.
    pub fn solo(label: &str, set: VSet) -> Self {
        SetFamily {
            dim: set.dim(),
            members: vec![(label.to_string(), set)],
        }
    }
}

fn cross(o: &Vector, a: &Vector, b: &Vector) -> Rat {
    let ax = &a.0[0] - &o.0[0];
    let ay = &a.0[1] - &o.0[1];
    let bx = &b.0[0] - &o.0[0];
    let by = &b.0[1] - &o.0[1];
    &ax * &by - &ay * &bx
}

/// Convex hull in the plane, counterclockwise, collinear points dropped.
/// Degenerate inputs yield two points (a segment) or one.
pub fn convex_hull_2d(points: &[Vector]) -> Vec<Vector> {
    assert!(points.iter().all(|p| p.dim() == 2), "hull needs dim 2");
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 1 {
        return pts;
    }
    let mut build = |iter: &mut dyn Iterator<Item = &Vector>| {
        let mut h: Vec<Vector> = Vec::new();
        for p in iter {
            while h.len() >= 2 && !cross(&h[h.len() - 2], &h[h.len() - 1], p).is_positive() {
                h.pop();
            }
            h.push(p.clone());
        }
        h
    };
    let lower = build(&mut pts.iter());
    let upper = build(&mut pts.iter().rev());
    let mut hull = lower;
    hull.pop();
    hull.extend(upper);
    hull.pop();
    if hull.is_empty() {
        // fully collinear: keep the extremes
        hull = vec![pts[0].clone(), pts[pts.len() - 1].clone()];
    }
    hull
}

/// Half-plane description `{x : <n, x> >= c}` of a hull, exact, covering
/// the degenerate point and segment cases.
fn halfplanes_of_hull(hull: &[Vector]) -> Vec<(Vector, Rat)> {
    match hull.len() {
        0 => vec![(Vector::from_ints(&[0, 0]), Rat::one())], // unsatisfiable
        1 => {
            let p = &hull[0];
            vec![
                (Vector::from_ints(&[1, 0]), p.0[0].clone()),
                (Vector::from_ints(&[-1, 0]), -&p.0[0]),
                (Vector::from_ints(&[0, 1]), p.0[1].clone()),
                (Vector::from_ints(&[0, -1]), -&p.0[1]),
            ]
        }
        2 => {
            let (a, b) = (&hull[0], &hull[1]);
            let d = b.sub(a);
            let n = Vector(vec![-&d.0[1], d.0[0].clone()]);
            vec![
                (n.clone(), n.dot(a)),
                (n.neg(), -n.dot(a)),
                (d.clone(), d.dot(a)),
                (d.neg(), -d.dot(b)),
            ]
        }
        k => (0..k)
            .map(|i| {
                let a = &hull[i];
                let b = &hull[(i + 1) % k];
                let d = b.sub(a);
                let n = Vector(vec![-&d.0[1], d.0[0].clone()]);
                let c = n.dot(a);
                (n, c)
            })
            .collect(),
    }
}

/// Clip a polygon (vertex cycle) against one half-plane `<n, x> >= c`,
/// keeping crossing points exactly.
fn clip_by_halfplane(poly: &[Vector], n: &Vector, c: &Rat) -> Vec<Vector> {
    if poly.is_empty() {
        return Vec::new();
    }
    if poly.len() == 1 {
        return if &n.dot(&poly[0]) >= c {
            poly.to_vec()
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let k = poly.len();
    for i in 0..k {
        let u = &poly[i];
        let v = &poly[(i + 1) % k];
        let du = n.dot(u) - c;
        let dv = n.dot(v) - c;
        if !du.is_negative() {
            out.push(u.clone());
        }
        if (du.is_positive() && dv.is_negative()) || (du.is_negative() && dv.is_positive()) {
            let t = &du / &(&du - &dv);
            let m = Vector(
                u.0.iter()
                    .zip(&v.0)
                    .map(|(a, b)| a + &(&t * &(b - a)))
                    .collect(),
            );
            out.push(m);
        }
    }
    out
}

fn hull_area(hull: &[Vector]) -> Rat {
    if hull.len() < 3 {
        return Rat::zero();
    }
    let mut twice = Rat::zero();
    for i in 0..hull.len() {
        let a = &hull[i];
        let b = &hull[(i + 1) % hull.len()];
        twice += &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
    }
    twice / Rat::from_integer(2.into())
}

fn clip_hulls(p: &[Vector], q: &[Vector]) -> Vec<Vector> {
    let mut cur = p.to_vec();
    for (n, c) in halfplanes_of_hull(q) {
        if n.is_zero() && c.is_positive() {
            return Vec::new();
        }
        cur = clip_by_halfplane(&cur, &n, &c);
        if cur.is_empty() {
            return Vec::new();
        }
    }
    convex_hull_2d(&cur)
}

fn require_bounded_2d(s: &VSet) -> Result<(), SetError> {
    if s.dim() != 2 {
        return Err(SetError::DimensionMismatch {
            expected: 2,
            got: s.dim(),
        });
    }
    if !s.is_bounded() {
        return Err(SetError::UnboundedInput);
    }
    Ok(())
}

/// Intersection of two bounded convex polygons; `None` when empty. The
/// result may be a degenerate polygon (segment or point).
pub fn polygon_clip_2d(p: &VSet, q: &VSet) -> Result<Option<VSet>, SetError> {
    require_bounded_2d(p)?;
    require_bounded_2d(q)?;
    let hp = convex_hull_2d(p.base_points());
    let hq = convex_hull_2d(q.base_points());
    let clipped = clip_hulls(&hp, &hq);
    if clipped.is_empty() {
        Ok(None)
    } else {
        Ok(Some(VSet::polytope(clipped).expect("nonempty clip")))
    }
}

/// Exact area of the convex hull of a bounded set's points.
pub fn polygon_area_2d(p: &VSet) -> Result<Rat, SetError> {
    require_bounded_2d(p)?;
    Ok(hull_area(&convex_hull_2d(p.base_points())))
}

// Parameter interval of `segment(a, b) ∩ member`, as [lo, hi] in [0, 1].
fn segment_member_interval(a: &Vector, b: &Vector, member: &VSet) -> Vec<(Rat, Rat)> {
    match member.data() {
        VSetData::FinitePoints(pts) => {
            let d = b.sub(a);
            let dd = d.dot(&d);
            pts.iter()
                .filter_map(|q| {
                    if !cross(a, b, q).is_zero() {
                        return None;
                    }
                    let t = q.sub(a).dot(&d) / &dd;
                    if t.is_negative() || t > Rat::one() {
                        None
                    } else {
                        Some((t.clone(), t))
                    }
                })
                .collect()
        }
        VSetData::Polyhedron { vertices, .. } => {
            // min and max of t with a + t (b - a) in the member
            let nv = vertices.len();
            let extremal = |sign: i64| -> Option<Rat> {
                let mut obj = vec![Rat::zero(); 1 + nv];
                obj[0] = Rat::from_integer(sign.into());
                let mut prog =
                    LinearProgram::new(Vector(obj), vec![Bound::NonNeg; 1 + nv]);
                for i in 0..2 {
                    let mut coeffs = vec![&b.0[i] - &a.0[i]];
                    coeffs.extend(vertices.iter().map(|v| -&v.0[i]));
                    prog.eq(Vector(coeffs), -&a.0[i]);
                }
                let mut ones = vec![Rat::zero()];
                ones.extend(vec![Rat::one(); nv]);
                prog.eq(Vector(ones), Rat::one());
                let mut tcap = vec![-Rat::one()];
                tcap.extend(vec![Rat::zero(); nv]);
                prog.ge(Vector(tcap), -Rat::one());
                match lp::solve(&prog) {
                    LPResult::Optimal { point, .. } => Some(point.0[0].clone()),
                    LPResult::Infeasible { .. } => None,
                    LPResult::Unbounded { .. } => unreachable!("t is boxed in [0,1]"),
                }
            };
            match (extremal(1), extremal(-1)) {
                (Some(lo), Some(hi)) => vec![(lo, hi)],
                _ => Vec::new(),
            }
        }
    }
}

// Is the member covered by the union of the others? Dispatches on the
// dimension of the member: membership for points, interval merging for
// segments, the inclusion-exclusion area criterion for full polygons.
fn union_covers(cover: &[&VSet], m: &VSet) -> bool {
    if let VSetData::FinitePoints(pts) = m.data() {
        return pts
            .iter()
            .all(|p| cover.iter().any(|s| s.contains_point(p)));
    }
    let hull = convex_hull_2d(m.base_points());
    match hull.len() {
        0 => true,
        1 => cover.iter().any(|s| s.contains_point(&hull[0])),
        2 => {
            let (a, b) = (&hull[0], &hull[1]);
            let mut ivals: Vec<(Rat, Rat)> = cover
                .iter()
                .flat_map(|s| segment_member_interval(a, b, s))
                .collect();
            ivals.sort();
            let mut reach = Rat::zero();
            for (lo, hi) in ivals {
                if lo > reach {
                    return false;
                }
                if hi > reach {
                    reach = hi;
                }
            }
            reach >= Rat::one()
        }
        _ => {
            let polys: Vec<Vec<Vector>> = cover
                .iter()
                .filter(|s| !s.is_finite_points())
                .map(|s| convex_hull_2d(s.base_points()))
                .collect();
            let k = polys.len();
            let mut cache: Vec<Option<Vec<Vector>>> = vec![None; 1 << k];
            cache[0] = Some(hull.clone());
            let mut covered = Rat::zero();
            for mask in 1usize..(1 << k) {
                let j = mask.trailing_zeros() as usize;
                let parent = mask & (mask - 1);
                let clipped = match &cache[parent] {
                    Some(poly) => clip_hulls(poly, &polys[j]),
                    None => Vec::new(),
                };
                let area = hull_area(&clipped);
                if mask.count_ones() % 2 == 1 {
                    covered += area;
                } else {
                    covered -= area;
                }
                cache[mask] = if clipped.is_empty() {
                    None
                } else {
                    Some(clipped)
                };
            }
            covered == hull_area(&hull)
        }
    }
}

/// Do two families describe the same union of points? Exact for bounded
/// planar members; the decomposition into members may differ freely.
pub fn union_equals_2d(f: &SetFamily, g: &SetFamily) -> Result<bool, SetError> {
    for fam in [f, g] {
        if fam.dim() != 2 {
            return Err(SetError::UnsupportedDimension(fam.dim()));
        }
        if fam.len() > MAX_UNION_MEMBERS {
            return Err(SetError::FamilyTooLarge(fam.len()));
        }
        for s in fam.sets() {
            if !s.is_bounded() {
                return Err(SetError::UnboundedInput);
            }
        }
    }
    let fs: Vec<&VSet> = f.sets().collect();
    let gs: Vec<&VSet> = g.sets().collect();
    Ok(fs.iter().all(|m| union_covers(&gs, m)) && gs.iter().all(|m| union_covers(&fs, m)))
}

/// Membership `q ∈ P + K`, exact in any dimension.
pub fn minkowski_member(q: &Vector, p: &VSet, k: &PolyhedralCone) -> bool {
    assert_eq!(q.dim(), p.dim(), "minkowski dimension");
    assert_eq!(q.dim(), k.dim(), "minkowski cone dimension");
    match p.data() {
        VSetData::FinitePoints(pts) => pts.iter().any(|pt| k.contains(&q.sub(pt))),
        VSetData::Polyhedron { vertices, rays } => {
            let nv = vertices.len();
            let nr = rays.len();
            let mut prog = LinearProgram::new(
                Vector(vec![Rat::zero(); nv + nr]),
                vec![Bound::NonNeg; nv + nr],
            );
            // <a, q - (sum lam v + sum mu r)> >= 0 for each facet a
            for a in k.facets() {
                let mut coeffs: Vec<Rat> = vertices.iter().map(|v| -a.dot(v)).collect();
                coeffs.extend(rays.iter().map(|r| -a.dot(r)));
                prog.ge(Vector(coeffs), -a.dot(q));
            }
            let mut ones = vec![Rat::one(); nv];
            ones.extend(vec![Rat::zero(); nr]);
            prog.eq(Vector(ones), Rat::one());
            lp::solve(&prog).is_optimal()
        }
    }
}

/// Is `P + K` a proper subset of the space? Equivalent to the recession
/// cone `cone(rays of P) + K` not being everything, which is checked by
/// testing each signed unit vector for membership. On the proper branch
/// the failing test's Farkas multipliers yield a separating functional,
/// which is replayed in debug builds.
pub fn is_k_proper(p: &VSet, k: &PolyhedralCone) -> bool {
    assert_eq!(p.dim(), k.dim(), "properness dimension");
    let dim = p.dim();
    let rays = p.rays();
    for i in 0..dim {
        for sign in [1i64, -1] {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::from_integer(sign.into());
            let e = Vector(e);
            // mu >= 0 with e - sum mu r in K
            let nr = rays.len();
            let mut prog =
                LinearProgram::new(Vector(vec![Rat::zero(); nr]), vec![Bound::NonNeg; nr]);
            for a in k.facets() {
                let coeffs: Vec<Rat> = rays.iter().map(|r| -a.dot(r)).collect();
                prog.ge(Vector(coeffs), -a.dot(&e));
            }
            if let LPResult::Infeasible { farkas } = lp::solve(&prog) {
                // w = sum y_f a_f separates: it is nonnegative on the
                // recession cone and strictly negative at e
                #[cfg(debug_assertions)]
                {
                    let mut w = vec![Rat::zero(); dim];
                    for (y, a) in farkas.iter().zip(k.facets()) {
                        for (wi, ai) in w.iter_mut().zip(&a.0) {
                            *wi += y * ai;
                        }
                    }
                    let w = Vector(w);
                    debug_assert!(w.dot(&e).is_negative());
                    for r in rays {
                        debug_assert!(!w.dot(r).is_negative());
                    }
                }
                let _ = farkas;
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_i};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v2(x: i64, y: i64) -> Vector {
        Vector::from_ints(&[x, y])
    }

    fn vr(x: Rat, y: Rat) -> Vector {
        Vector(vec![x, y])
    }

    // the two decompositions of the lower triangle of the unit square
    fn lower_families() -> (SetFamily, SetFamily) {
        let a1 = VSet::polytope(vec![v2(0, 0), v2(-1, 0), vr(rat(-1, 2), rat(-1, 2))]).unwrap();
        let a2 = VSet::polytope(vec![v2(0, 0), vr(rat(-1, 2), rat(-1, 2)), v2(0, -1)]).unwrap();
        let b1 = VSet::polytope(vec![v2(0, 0), vr(rat(-3, 4), rat_i(0)), vr(rat_i(0), rat(-3, 4))])
            .unwrap();
        let b2 = VSet::polytope(vec![
            v2(-1, 0),
            vr(rat(-3, 4), rat_i(0)),
            vr(rat_i(0), rat(-3, 4)),
            v2(0, -1),
        ])
        .unwrap();
        (
            SetFamily::new(vec![("A1".into(), a1), ("A2".into(), a2)]).unwrap(),
            SetFamily::new(vec![("B1".into(), b1), ("B2".into(), b2)]).unwrap(),
        )
    }

    #[test]
    fn clip_of_shifted_squares() {
        let sq = VSet::polytope(vec![v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)]).unwrap();
        let shifted = sq.translate(&vr(rat(1, 2), rat_i(0)));
        let clip = polygon_clip_2d(&sq, &shifted).unwrap().unwrap();
        assert_eq!(polygon_area_2d(&clip).unwrap(), rat(1, 2));
        let mut got = clip.base_points().to_vec();
        got.sort();
        let mut want = vec![
            vr(rat(1, 2), rat_i(0)),
            v2(1, 0),
            v2(1, 1),
            vr(rat(1, 2), rat_i(1)),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn adjacent_triangles_share_an_edge() {
        let (a, _) = lower_families();
        let clip = polygon_clip_2d(a.get("A1").unwrap(), a.get("A2").unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(polygon_area_2d(&clip).unwrap(), rat_i(0));
        let mut got = clip.base_points().to_vec();
        got.sort();
        let mut want = vec![v2(0, 0), vr(rat(-1, 2), rat(-1, 2))];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn disjoint_clip_is_empty() {
        let t1 = VSet::polytope(vec![v2(0, 0), v2(1, 0), v2(0, 1)]).unwrap();
        let t2 = VSet::polytope(vec![v2(5, 5), v2(6, 5), v2(5, 6)]).unwrap();
        assert_eq!(polygon_clip_2d(&t1, &t2).unwrap(), None);
    }

    #[test]
    fn areas_of_the_triangle_partitions() {
        let (a, b) = lower_families();
        let area = |s: &VSet| polygon_area_2d(s).unwrap();
        assert_eq!(area(a.get("A1").unwrap()), rat(1, 4));
        assert_eq!(area(a.get("A2").unwrap()), rat(1, 4));
        assert_eq!(area(b.get("B1").unwrap()), rat(9, 32));
        assert_eq!(area(b.get("B2").unwrap()), rat(7, 32));
        let whole = VSet::polytope(vec![v2(0, 0), v2(-1, 0), v2(0, -1)]).unwrap();
        assert_eq!(area(&whole), rat(1, 2));
        let degenerate = VSet::polytope(vec![v2(0, 0), v2(3, 3)]).unwrap();
        assert_eq!(area(&degenerate), rat_i(0));
    }

    #[test]
    fn union_equality_of_the_two_decompositions() {
        let (a, b) = lower_families();
        assert!(union_equals_2d(&a, &b).unwrap());
        assert!(union_equals_2d(&a, &a).unwrap());
        let just_a1 = SetFamily::new(vec![("A1".into(), a.get("A1").unwrap().clone())]).unwrap();
        assert!(!union_equals_2d(&a, &just_a1).unwrap());
    }

    #[test]
    fn union_equality_of_the_upper_decompositions() {
        let a1 = VSet::polytope(vec![v2(0, 0), vr(rat(3, 4), rat_i(0)), vr(rat_i(0), rat(3, 4))])
            .unwrap();
        let a2 = VSet::polytope(vec![
            v2(1, 0),
            vr(rat(3, 4), rat_i(0)),
            vr(rat_i(0), rat(3, 4)),
            v2(0, 1),
        ])
        .unwrap();
        let b1 = VSet::polytope(vec![v2(0, 0), v2(1, 0), vr(rat(1, 2), rat(1, 2))]).unwrap();
        let b2 = VSet::polytope(vec![v2(0, 0), vr(rat(1, 2), rat(1, 2)), v2(0, 1)]).unwrap();
        let f = SetFamily::new(vec![("A1".into(), a1), ("A2".into(), a2)]).unwrap();
        let g = SetFamily::new(vec![("B1".into(), b1), ("B2".into(), b2)]).unwrap();
        assert!(union_equals_2d(&f, &g).unwrap());
    }

    #[test]
    fn clip_is_symmetric_on_random_polygons() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..60 {
            let draw = |rng: &mut ChaCha8Rng| {
                let n = rng.random_range(3..=7);
                VSet::polytope(
                    (0..n)
                        .map(|_| {
                            vr(
                                rat(rng.random_range(-3..=3), rng.random_range(1..=2)),
                                rat(rng.random_range(-3..=3), rng.random_range(1..=2)),
                            )
                        })
                        .collect(),
                )
                .unwrap()
            };
            let p = draw(&mut rng);
            let q = draw(&mut rng);
            let pq = polygon_clip_2d(&p, &q).unwrap();
            let qp = polygon_clip_2d(&q, &p).unwrap();
            match (pq, qp) {
                (None, None) => {}
                (Some(x), Some(y)) => {
                    assert_eq!(
                        polygon_area_2d(&x).unwrap(),
                        polygon_area_2d(&y).unwrap()
                    );
                    let mut xs = x.base_points().to_vec();
                    let mut ys = y.base_points().to_vec();
                    xs.sort();
                    ys.sort();
                    assert_eq!(xs, ys);
                }
                other => panic!("asymmetric emptiness {other:?}"),
            }
        }
    }

    #[test]
    fn segments_cover_by_interval_merge() {
        let whole = VSet::polytope(vec![v2(0, 0), v2(2, 0)]).unwrap();
        let left = VSet::polytope(vec![v2(0, 0), v2(1, 0)]).unwrap();
        let right = VSet::polytope(vec![v2(1, 0), v2(2, 0)]).unwrap();
        let f = SetFamily::solo("all", whole.clone());
        let g = SetFamily::new(vec![("l".into(), left.clone()), ("r".into(), right)]).unwrap();
        assert!(union_equals_2d(&f, &g).unwrap());
        let gap = VSet::polytope(vec![vr(rat(5, 4), rat_i(0)), v2(2, 0)]).unwrap();
        let g = SetFamily::new(vec![("l".into(), left), ("r".into(), gap)]).unwrap();
        assert!(!union_equals_2d(&f, &g).unwrap());
    }

    #[test]
    fn finite_point_members_compare_pointwise() {
        let both = VSet::points(vec![v2(0, 0), v2(1, 1)]).unwrap();
        let f = SetFamily::solo("pts", both);
        let g = SetFamily::new(vec![
            ("p".into(), VSet::singleton(v2(0, 0))),
            ("q".into(), VSet::singleton(v2(1, 1))),
        ])
        .unwrap();
        assert!(union_equals_2d(&f, &g).unwrap());
        let g = SetFamily::solo("p", VSet::singleton(v2(0, 0)));
        assert!(!union_equals_2d(&f, &g).unwrap());
    }

    #[test]
    fn union_input_validation() {
        let seg = VSet::polytope(vec![v2(0, 0), v2(1, 0)]).unwrap();
        let many = SetFamily::new(
            (0..7)
                .map(|i| (format!("m{i}"), seg.clone()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let solo = SetFamily::solo("s", seg.clone());
        assert_eq!(
            union_equals_2d(&many, &solo).unwrap_err(),
            SetError::FamilyTooLarge(7)
        );
        let threed = SetFamily::solo("t", VSet::singleton(Vector::from_ints(&[0, 0, 0])));
        assert_eq!(
            union_equals_2d(&threed, &threed).unwrap_err(),
            SetError::UnsupportedDimension(3)
        );
        let ray = VSet::polyhedron(vec![v2(0, 0)], vec![v2(1, 0)]).unwrap();
        let rayfam = SetFamily::solo("r", ray);
        assert_eq!(
            union_equals_2d(&rayfam, &solo).unwrap_err(),
            SetError::UnboundedInput
        );
        assert_eq!(
            SetFamily::new(vec![
                ("x".into(), seg.clone()),
                ("x".into(), seg.clone())
            ])
            .unwrap_err(),
            SetError::DuplicateLabel("x".into())
        );
    }

    #[test]
    fn minkowski_membership_basics() {
        let k = PolyhedralCone::orthant(2);
        let origin = VSet::points(vec![v2(0, 0)]).unwrap();
        assert!(minkowski_member(&v2(1, 1), &origin, &k));
        assert!(!minkowski_member(&v2(-1, -1), &origin, &k));
        // the B2 vertex (0, -3/4) lies below everything in A1 + orthant
        let (a, _) = lower_families();
        assert!(!minkowski_member(
            &vr(rat_i(0), rat(-3, 4)),
            a.get("A1").unwrap(),
            &k
        ));
        assert!(minkowski_member(
            &vr(rat_i(0), rat(-1, 4)),
            a.get("A1").unwrap(),
            &k
        ));
    }

    #[test]
    fn minkowski_matches_constructed_ground_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for case in 0..500 {
            let dim = rng.random_range(2..=3);
            let k = if rng.random_bool(0.5) {
                PolyhedralCone::orthant(dim)
            } else if dim == 2 {
                PolyhedralCone::from_generators(&[v2(1, 1), v2(1, -1)]).unwrap()
            } else {
                PolyhedralCone::orthant(3)
            };
            let nv = rng.random_range(1..=4);
            let verts: Vec<Vector> = (0..nv)
                .map(|_| {
                    Vector(
                        (0..dim)
                            .map(|_| rat(rng.random_range(-4..=4), rng.random_range(1..=2)))
                            .collect(),
                    )
                })
                .collect();
            let p = VSet::polytope(verts.clone()).unwrap();
            if case % 2 == 0 {
                // build a member: rational convex combination plus a cone
                // element assembled from the facet-orthogonal generators
                let mut weights: Vec<Rat> =
                    (0..nv).map(|_| rat_i(rng.random_range(0..=3))).collect();
                if weights.iter().all(Rat::is_zero) {
                    weights[0] = Rat::one();
                }
                let total: Rat = weights.iter().sum();
                let mut q = vec![Rat::zero(); dim];
                for (w, v) in weights.iter().zip(&verts) {
                    for (qi, vi) in q.iter_mut().zip(&v.0) {
                        *qi += &(w / &total) * vi;
                    }
                }
                let gens = k.generators().unwrap();
                for g in &gens {
                    let c = rat_i(rng.random_range(0..=2));
                    for (qi, gi) in q.iter_mut().zip(&g.0) {
                        *qi += &c * gi;
                    }
                }
                assert!(minkowski_member(&Vector(q), &p, &k), "case {case}");
            } else {
                // push strictly below a facet's minimum over P
                let a = &k.facets()[rng.random_range(0..k.facets().len())];
                let min = verts.iter().map(|v| a.dot(v)).min().unwrap();
                let aa = a.dot(a);
                let drop = &(&min - &rat_i(1)) - &aa;
                // q = t*a with t chosen so <a,q> < min: use q = v + s*a, s < 0 enough
                let base = &verts[0];
                let s = &(&drop - &a.dot(base)) / &aa;
                let q = Vector(
                    base.0
                        .iter()
                        .zip(&a.0)
                        .map(|(b, ai)| b + &(&s * ai))
                        .collect(),
                );
                assert!(a.dot(&q) < min);
                assert!(!minkowski_member(&q, &p, &k), "case {case}");
            }
        }
    }

    #[test]
    fn properness_of_sums_with_cones() {
        let k = PolyhedralCone::orthant(2);
        let bounded = VSet::polytope(vec![v2(0, 0), v2(1, 0), v2(0, 1)]).unwrap();
        assert!(is_k_proper(&bounded, &k));
        // the x-axis line plus the orthant is the upper half-plane
        let line = VSet::polyhedron(vec![v2(0, 0)], vec![v2(1, 0), v2(-1, 0)]).unwrap();
        assert!(is_k_proper(&line, &k));
        // rays spanning the plane swallow everything
        let all = VSet::polyhedron(
            vec![v2(0, 0)],
            vec![v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)],
        )
        .unwrap();
        assert!(!is_k_proper(&all, &k));
        let fin = VSet::points(vec![v2(3, 3)]).unwrap();
        assert!(is_k_proper(&fin, &k));
    }
}
