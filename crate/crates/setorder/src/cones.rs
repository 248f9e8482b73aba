//! Polyhedral ordering cones in facet representation.
//!
//! A cone is stored as `K = {x : <a_i, x> >= 0 for all i}`. That is the
//! single source of truth: membership, interiority, pointedness, and dual
//! generators all read off the facet normals directly. Ray input is
//! converted to facets once, by subset enumeration, and capped at
//! dimension 6; the ordering cones that actually occur here are tiny.

use thiserror::Error;

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::numeric::{Rat, Vector};

/// Hard limit for ray-to-facet conversion; subset enumeration is
/// exponential in the dimension.
pub const MAX_ENUM_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("a half-space cone needs a nonzero normal")]
    ZeroFunctional,
    #[error("no generators given")]
    NoGenerators,
    #[error("facet enumeration is capped at dimension {MAX_ENUM_DIM}, got {0}")]
    DimensionCapExceeded(usize),
    #[error("the cone would be the whole space")]
    DegenerateCone,
    #[error("direction must lie in the cone and be nonzero")]
    DirectionNotInCone,
}

/// Closed convex polyhedral cone `{x : <a_i, x> >= 0}`, never the whole
/// space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralCone {
    dim: usize,
    facets: Vec<Vector>,
    pub label: Option<String>,
}

impl PolyhedralCone {
    /// Nonnegative orthant of the given dimension.
    pub fn orthant(dim: usize) -> Self {
        assert!(dim >= 1, "orthant needs a positive dimension");
        let facets = (0..dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i] = Rat::from_integer(1.into());
                Vector(v)
            })
            .collect();
        PolyhedralCone {
            dim,
            facets,
            label: None,
        }
    }

    /// `{x : <w, x> >= 0}` for a nonzero functional `w`.
    pub fn halfspace(w: Vector) -> Result<Self, ConeError> {
        if w.is_zero() {
            return Err(ConeError::ZeroFunctional);
        }
        Ok(PolyhedralCone {
            dim: w.dim(),
            facets: vec![w],
            label: None,
        })
    }

    /// Build from explicit facet normals. Zero rows are dropped; if none
    /// survive the cone would be the whole space, which is refused.
    pub fn from_facets(dim: usize, facets: Vec<Vector>) -> Result<Self, ConeError> {
        assert!(dim >= 1);
        for f in &facets {
            if f.dim() != dim {
                return Err(ConeError::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
        }
        let facets: Vec<Vector> = facets.into_iter().filter(|f| !f.is_zero()).collect();
        if facets.is_empty() {
            return Err(ConeError::DegenerateCone);
        }
        Ok(PolyhedralCone {
            dim,
            facets,
            label: None,
        })
    }

    /// Conic hull of the given rays, converted to facet form. The rays
    /// are checked back against the computed facets afterwards.
    pub fn from_generators(rays: &[Vector]) -> Result<Self, ConeError> {
        let Some(first) = rays.first() else {
            return Err(ConeError::NoGenerators);
        };
        let dim = first.dim();
        for r in rays {
            if r.dim() != dim {
                return Err(ConeError::DimensionMismatch {
                    expected: dim,
                    got: r.dim(),
                });
            }
        }
        let facets = facet_enum(rays, dim)?;
        for r in rays {
            for f in &facets {
                assert!(
                    !f.dot(r).is_negative(),
                    "facet enumeration dropped an input ray"
                );
            }
        }
        Ok(PolyhedralCone {
            dim,
            facets,
            label: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    /// A cone is pointed exactly when its lineality space is trivial,
    /// i.e. the facet normals have full rank.
    pub fn is_pointed(&self) -> bool {
        linalg::rank(&self.facets) == self.dim
    }

    pub fn contains(&self, y: &Vector) -> bool {
        assert_eq!(y.dim(), self.dim, "cone membership dimension");
        self.facets.iter().all(|a| !a.dot(y).is_negative())
    }

    /// Strict inequality on every facet. For cones that are not
    /// full-dimensional this is never true, matching the topological
    /// interior being empty.
    pub fn is_interior(&self, y: &Vector) -> bool {
        assert_eq!(y.dim(), self.dim, "cone interior dimension");
        self.facets.iter().all(|a| a.dot(y).is_positive())
    }

    /// Generators of the dual cone `K* = {w : <w, k> >= 0 on K}`. With
    /// `K = {x : Ax >= 0}` the dual is the conic hull of the rows of `A`,
    /// so the facet normals themselves generate it.
    pub fn dual_generators(&self) -> Vec<Vector> {
        self.facets.iter().map(Vector::primitive).collect()
    }

    /// `-K`, the cone with all facet normals negated.
    pub fn negate(&self) -> Self {
        PolyhedralCone {
            dim: self.dim,
            facets: self.facets.iter().map(Vector::neg).collect(),
            label: None,
        }
    }

    /// Ray generators of the cone itself: facet-enumerating the dual
    /// generators yields the facets of `K*`, and those are exactly the
    /// rays of `K = (K*)*`. The zero cone comes back as an empty list.
    pub fn generators(&self) -> Result<Vec<Vector>, ConeError> {
        match facet_enum(&self.facets, self.dim) {
            Ok(rays) => Ok(rays),
            // the dual spans everything exactly when K = {0}
            Err(ConeError::DegenerateCone) => Ok(Vec::new()),
            Err(e) => Err(e),
        }
    }

    /// `K = {0}`: permitted, but useless as an ordering cone, so callers
    /// may want to warn.
    pub fn is_trivial(&self) -> Result<bool, ConeError> {
        Ok(self.generators()?.is_empty())
    }
}

/// Direction `e` in `K \ {0}` used for scalarization, bundled with its
/// cone and an interiority flag.
#[derive(Debug, Clone)]
pub struct Direction {
    cone: PolyhedralCone,
    e: Vector,
    interior_flag: bool,
}

impl Direction {
    pub fn new(cone: PolyhedralCone, e: Vector) -> Result<Self, ConeError> {
        if e.dim() != cone.dim() {
            return Err(ConeError::DimensionMismatch {
                expected: cone.dim(),
                got: e.dim(),
            });
        }
        if e.is_zero() || !cone.contains(&e) {
            return Err(ConeError::DirectionNotInCone);
        }
        let interior_flag = cone.is_interior(&e);
        Ok(Direction {
            cone,
            e,
            interior_flag,
        })
    }

    pub fn cone(&self) -> &PolyhedralCone {
        &self.cone
    }

    pub fn e(&self) -> &Vector {
        &self.e
    }

    pub fn is_interior(&self) -> bool {
        self.interior_flag
    }
}

/// Facets of the conic hull of `rays`, by subset enumeration.
///
/// Let `s` be the rank of the rays. The span contributes `+-b` facets for
/// each nullspace basis vector `b`. Inside the span, every facet is a
/// hyperplane through `s - 1` linearly independent rays with all rays on
/// one side, so enumerating `(s-1)`-subsets and orienting their normals
/// finds them all. Rays are first deduplicated to primitive form; the
/// whole-space case surfaces as an empty facet list and is refused.
pub(crate) fn facet_enum(rays: &[Vector], dim: usize) -> Result<Vec<Vector>, ConeError> {
    if dim > MAX_ENUM_DIM {
        return Err(ConeError::DimensionCapExceeded(dim));
    }
    let mut prim: Vec<Vector> = Vec::new();
    for r in rays {
        if r.is_zero() {
            continue;
        }
        let p = r.primitive();
        if !prim.contains(&p) {
            prim.push(p);
        }
    }
    let unit = |i: usize| {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::from_integer(1.into());
        Vector(v)
    };
    if prim.is_empty() {
        // conic hull of nothing is {0}
        let mut facets = Vec::new();
        for i in 0..dim {
            facets.push(unit(i));
            facets.push(unit(i).neg());
        }
        return Ok(facets);
    }

    let s = linalg::rank(&prim);
    let mut facets: Vec<Vector> = Vec::new();
    // pin the cone into its span
    for b in linalg::nullspace(&prim, dim) {
        let b = b.primitive();
        facets.push(b.neg());
        facets.push(b);
    }

    // independent basis among the rays, for span coordinates
    let mut basis: Vec<Vector> = Vec::new();
    for r in &prim {
        if basis.len() == s {
            break;
        }
        let mut cand = basis.clone();
        cand.push(r.clone());
        if linalg::rank(&cand) > basis.len() {
            basis.push(r.clone());
        }
    }
    assert_eq!(basis.len(), s);

    // coordinates of each ray in that basis: solve B c = r columnwise
    let bmat: Vec<Vec<Rat>> = (0..dim)
        .map(|i| basis.iter().map(|b| b.0[i].clone()).collect())
        .collect();
    let coords: Vec<Vector> = prim
        .iter()
        .map(|r| Vector(linalg::solve(&bmat, &r.0).expect("ray lies in span")))
        .collect();

    // Gram matrix for mapping span-coordinate normals back to ambient
    let gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|bi| basis.iter().map(|bj| bi.dot(bj)).collect())
        .collect();

    let k = coords.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    fn rec(start: usize, left: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, left - 1, k, cur, out);
            cur.pop();
        }
    }
    rec(0, s - 1, k, &mut Vec::new(), &mut subsets);

    for sub in subsets {
        let chosen: Vec<Vector> = sub.iter().map(|&i| coords[i].clone()).collect();
        if linalg::rank(&chosen) + 1 != s {
            continue;
        }
        let ns = linalg::nullspace(&chosen, s);
        debug_assert_eq!(ns.len(), 1);
        let g = &ns[0];
        let mut pos = false;
        let mut neg = false;
        for c in &coords {
            let d = g.dot(c);
            if d.is_positive() {
                pos = true;
            } else if d.is_negative() {
                neg = true;
            }
        }
        if pos && neg {
            continue; // hyperplane cuts the cone, not a facet
        }
        let g = if neg { g.neg() } else { g.clone() };
        let h = linalg::solve(&gram, &g.0).expect("Gram matrix of a basis is invertible");
        let mut a = vec![Rat::zero(); dim];
        for (hj, b) in h.iter().zip(&basis) {
            for (ai, bi) in a.iter_mut().zip(&b.0) {
                *ai += hj * bi;
            }
        }
        let a = Vector(a).primitive();
        if !facets.contains(&a) {
            facets.push(a);
        }
    }

    if facets.is_empty() {
        return Err(ConeError::DegenerateCone);
    }
    Ok(facets)
}
