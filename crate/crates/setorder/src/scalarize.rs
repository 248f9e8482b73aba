//! Directional scalarization of points, sets, and set pairs.
//!
//! The base functional is `z(y) = inf{t : y in t e - K}` for a direction
//! `e` in `K \ {0}`. On facet-represented cones it has a closed form:
//! facets with `<a, e> > 0` contribute `<a, y> / <a, e>` to a maximum,
//! facets with `<a, e> = 0` act as hard feasibility cuts, and if no facet
//! sees `e` positively the value collapses to `-inf` or `+inf`.
//!
//! Pair functionals take an infimum of `z` over an inner set followed by
//! a supremum over an outer set. The inner step is an exact LP when the
//! inner set is a polyhedron, which also makes the inner value a convex
//! piecewise-linear function of the outer point; the outer supremum over
//! a polyhedron is then a vertex maximum guarded by one homogenized
//! recession LP per outer ray. A genuinely non-convex inner set (two or
//! more isolated points) under a non-degenerate polyhedral outer set has
//! no exact vertex rule, and is refused rather than approximated.

use thiserror::Error;

use num_traits::{One, Signed, Zero};

use crate::cones::{ConeError, Direction, PolyhedralCone};
use crate::lp::{self, Bound, LPResult, LinearProgram};
use crate::numeric::{ExtReal, Rat, Vector};
use crate::sets::{minkowski_member, SetError, VSet, VSetData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarizeError {
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("improperness demo needs a non-pointed cone")]
    ConePointed,
    #[error("direction must lie in the lineality space of the cone")]
    DirectionNotInLineality,
    #[error("direction must lie in the negative interior of the cone")]
    DirectionNotNegativeInterior,
    #[error(
        "inner set with several isolated points under a polyhedral outer set \
         has no exact evaluation path"
    )]
    NonConvexInner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    SampledLowerBound,
}

/// Value of a pair functional together with attaining points, when the
/// supremum and infimum are attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarizationReport {
    pub value: ExtReal,
    pub attained_outer: Option<Vector>,
    pub attained_inner: Option<Vector>,
    pub exactness: Exactness,
}

/// `z(y) = inf{t : y in t e - K}`, exact.
pub fn z_value(d: &Direction, y: &Vector) -> ExtReal {
    let k = d.cone();
    let e = d.e();
    assert_eq!(y.dim(), k.dim(), "z_value dimension");
    let mut best: Option<Rat> = None;
    let mut saw_positive = false;
    for a in k.facets() {
        let ae = a.dot(e);
        if ae.is_positive() {
            saw_positive = true;
            let v = a.dot(y) / ae;
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        } else {
            // e in K forces <a, e> >= 0, so this facet is a hard cut
            debug_assert!(ae.is_zero());
            if a.dot(y).is_positive() {
                return ExtReal::PosInf;
            }
        }
    }
    if !saw_positive {
        ExtReal::NegInf
    } else {
        ExtReal::Fin(best.expect("nonempty maximum"))
    }
}

/// For a direction inside the lineality space the scalarization takes
/// only the values `-inf` (on `-K`) and `+inf` (elsewhere); this
/// evaluates the samples and returns the partition.
pub fn improperness_demo(
    k: &PolyhedralCone,
    e: &Vector,
    samples: &[Vector],
) -> Result<Vec<(Vector, ExtReal)>, ScalarizeError> {
    if k.is_pointed() {
        return Err(ScalarizeError::ConePointed);
    }
    if e.is_zero() || !k.contains(e) || !k.contains(&e.neg()) {
        return Err(ScalarizeError::DirectionNotInLineality);
    }
    let d = Direction::new(k.clone(), e.clone())?;
    let mut out = Vec::with_capacity(samples.len());
    for y in samples {
        let v = z_value(&d, y);
        debug_assert!(!v.is_finite());
        let in_neg_k = k.facets().iter().all(|a| !a.dot(y).is_positive());
        debug_assert_eq!(v == ExtReal::NegInf, in_neg_k);
        out.push((y.clone(), v));
    }
    Ok(out)
}

// Inner infimum orientation: Lower is inf over s of z(s - fixed) (the
// first slot of the pair moves), Upper is inf over s of z(fixed - s).
#[derive(Clone, Copy, PartialEq, Eq)]
enum Orient {
    Lower,
    Upper,
}

fn inner_value(d: &Direction, set: &VSet, fixed: &Vector, o: Orient) -> (ExtReal, Option<Vector>) {
    let k = d.cone();
    let e = d.e();
    assert_eq!(set.dim(), k.dim());
    assert_eq!(fixed.dim(), k.dim());
    match set.data() {
        VSetData::FinitePoints(pts) => {
            let mut best: Option<(ExtReal, Vector)> = None;
            for p in pts {
                let diff = match o {
                    Orient::Lower => p.sub(fixed),
                    Orient::Upper => fixed.sub(p),
                };
                let v = z_value(d, &diff);
                if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                    best = Some((v, p.clone()));
                }
            }
            let (v, w) = best.expect("sets are nonempty");
            let witness = v.is_finite().then_some(w);
            (v, witness)
        }
        VSetData::Polyhedron { vertices, rays } => {
            // minimize t subject to  t<a,e> -/+ <a, s> >= -/+ <a, fixed>
            // over s = sum lambda v + sum mu r, lambda on a simplex
            let nv = vertices.len();
            let nr = rays.len();
            let sign = match o {
                Orient::Lower => -Rat::one(),
                Orient::Upper => Rat::one(),
            };
            let mut obj = vec![Rat::zero(); 1 + nv + nr];
            obj[0] = Rat::one();
            let mut bounds = vec![Bound::Free];
            bounds.extend(vec![Bound::NonNeg; nv + nr]);
            let mut prog = LinearProgram::new(Vector(obj), bounds);
            for a in k.facets() {
                let mut coeffs = vec![a.dot(e)];
                coeffs.extend(vertices.iter().map(|v| &sign * &a.dot(v)));
                coeffs.extend(rays.iter().map(|r| &sign * &a.dot(r)));
                prog.ge(Vector(coeffs), &sign * &a.dot(fixed));
            }
            let mut ones = vec![Rat::zero()];
            ones.extend(vec![Rat::one(); nv]);
            ones.extend(vec![Rat::zero(); nr]);
            prog.eq(Vector(ones), Rat::one());
            match lp::solve(&prog) {
                LPResult::Optimal { point, .. } => {
                    let mut s = vec![Rat::zero(); k.dim()];
                    for (j, v) in vertices.iter().enumerate() {
                        for (si, vi) in s.iter_mut().zip(&v.0) {
                            *si += &point.0[1 + j] * vi;
                        }
                    }
                    for (j, r) in rays.iter().enumerate() {
                        for (si, ri) in s.iter_mut().zip(&r.0) {
                            *si += &point.0[1 + nv + j] * ri;
                        }
                    }
                    let t = point.0[0].clone();
                    let s = Vector(s);
                    debug_assert_eq!(
                        {
                            let diff = match o {
                                Orient::Lower => s.sub(fixed),
                                Orient::Upper => fixed.sub(&s),
                            };
                            z_value(d, &diff)
                        },
                        ExtReal::Fin(t.clone())
                    );
                    (ExtReal::Fin(t), Some(s))
                }
                LPResult::Unbounded { .. } => (ExtReal::NegInf, None),
                LPResult::Infeasible { .. } => (ExtReal::PosInf, None),
            }
        }
    }
}

/// `inf over x in P of z(x - q)`, with minimizer when attained.
pub fn inner_inf(d: &Direction, p: &VSet, q: &Vector) -> (ExtReal, Option<Vector>) {
    inner_value(d, p, q, Orient::Lower)
}

/// `inf over y in Q of z(x - y)`, with minimizer when attained.
pub fn inner_inf_upper(d: &Direction, x: &Vector, q: &VSet) -> (ExtReal, Option<Vector>) {
    inner_value(d, q, x, Orient::Upper)
}

// Deduplicated vertices and nonzero rays of the outer set, or the plain
// point list for a finite outer set.
fn outer_parts(set: &VSet) -> (Vec<Vector>, Vec<Vector>, bool) {
    match set.data() {
        VSetData::FinitePoints(pts) => {
            let mut uniq: Vec<Vector> = Vec::new();
            for p in pts {
                if !uniq.contains(p) {
                    uniq.push(p.clone());
                }
            }
            (uniq, Vec::new(), true)
        }
        VSetData::Polyhedron { vertices, rays } => {
            let mut uniq: Vec<Vector> = Vec::new();
            for v in vertices {
                if !uniq.contains(v) {
                    uniq.push(v.clone());
                }
            }
            let rays: Vec<Vector> = rays.iter().filter(|r| !r.is_zero()).cloned().collect();
            (uniq, rays, false)
        }
    }
}

fn pair_value(
    d: &Direction,
    inner: &VSet,
    outer: &VSet,
    o: Orient,
) -> Result<ScalarizationReport, ScalarizeError> {
    let dim = d.cone().dim();
    for s in [inner, outer] {
        if s.dim() != dim {
            return Err(ScalarizeError::DimensionMismatch {
                expected: dim,
                got: s.dim(),
            });
        }
    }
    let (overts, orays, outer_finite) = outer_parts(outer);

    // A finite outer set needs no convexity anywhere: enumerate. A
    // polyhedral outer set that is really a single point is enumerated
    // the same way.
    if outer_finite || (overts.len() == 1 && orays.is_empty()) {
        let mut best: Option<(ExtReal, Vector, Option<Vector>)> = None;
        for q in &overts {
            let (v, w) = inner_value(d, inner, q, o);
            if best.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
                best = Some((v, q.clone(), w));
            }
        }
        let (value, q, w) = best.expect("sets are nonempty");
        return Ok(ScalarizationReport {
            attained_outer: Some(q),
            attained_inner: w,
            value,
            exactness: Exactness::Exact,
        });
    }

    // Polyhedral outer set: the inner value must be convex in the outer
    // point, which the LP path guarantees. Collapse a singleton finite
    // inner set to a trivial polytope; refuse a genuinely non-convex one.
    let inner_eff: VSet = match inner.data() {
        VSetData::Polyhedron { .. } => inner.clone(),
        VSetData::FinitePoints(pts) => {
            let mut uniq: Vec<Vector> = Vec::new();
            for p in pts {
                if !uniq.contains(p) {
                    uniq.push(p.clone());
                }
            }
            if uniq.len() > 1 {
                return Err(ScalarizeError::NonConvexInner);
            }
            VSet::polytope(uniq).expect("nonempty")
        }
    };

    let mut vertex_vals: Vec<(ExtReal, Vector, Option<Vector>)> = Vec::new();
    for v in &overts {
        let (val, w) = inner_value(d, &inner_eff, v, o);
        if val == ExtReal::PosInf {
            // the supremum is attained (as +inf) right here
            return Ok(ScalarizationReport {
                value: ExtReal::PosInf,
                attained_outer: Some(v.clone()),
                attained_inner: None,
                exactness: Exactness::Exact,
            });
        }
        vertex_vals.push((val, v.clone(), w));
    }

    // One homogenized LP per outer ray: the inner set degrades to its
    // recession cone and the fixed point to the ray. A positive recession
    // value certifies +inf; an infeasible one means the ray leaves the
    // domain of finiteness, which also certifies +inf.
    let zero = Vector(vec![Rat::zero(); dim]);
    let inner_rec = VSet::polyhedron(vec![zero], inner_eff.rays().to_vec()).expect("nonempty");
    for r in &orays {
        let (rec, _) = inner_value(d, &inner_rec, r, o);
        if rec > ExtReal::fin_i(0) {
            return Ok(ScalarizationReport {
                value: ExtReal::PosInf,
                attained_outer: None,
                attained_inner: None,
                exactness: Exactness::Exact,
            });
        }
    }

    if vertex_vals.iter().all(|(v, _, _)| *v == ExtReal::NegInf) {
        return Ok(ScalarizationReport {
            value: ExtReal::NegInf,
            attained_outer: None,
            attained_inner: None,
            exactness: Exactness::Exact,
        });
    }
    // unboundedness of the inner LP depends only on its matrix, so a mix
    // of -inf and finite vertex values cannot occur
    debug_assert!(vertex_vals.iter().all(|(v, _, _)| v.is_finite()));
    let (value, q, w) = vertex_vals
        .into_iter()
        .max_by(|(a, _, _), (b, _, _)| a.cmp(b))
        .expect("nonempty");
    Ok(ScalarizationReport {
        value,
        attained_outer: Some(q),
        attained_inner: w,
        exactness: Exactness::Exact,
    })
}

/// `Z1(P, Q) = sup over y in Q of inf over x in P of z(x - y)`.
pub fn z1_pair(d: &Direction, p: &VSet, q: &VSet) -> Result<ScalarizationReport, ScalarizeError> {
    let report = pair_value(d, p, q, Orient::Lower)?;
    debug_assert!(witnesses_replay(d, &report, Orient::Lower));
    Ok(report)
}

/// `Z2(P, Q) = sup over x in P of inf over y in Q of z(x - y)`.
pub fn z2_pair(d: &Direction, p: &VSet, q: &VSet) -> Result<ScalarizationReport, ScalarizeError> {
    let report = pair_value(d, q, p, Orient::Upper)?;
    debug_assert!(witnesses_replay(d, &report, Orient::Upper));
    Ok(report)
}

fn witnesses_replay(d: &Direction, report: &ScalarizationReport, o: Orient) -> bool {
    let (Some(outer), Some(inner)) = (&report.attained_outer, &report.attained_inner) else {
        return true;
    };
    let diff = match o {
        Orient::Lower => inner.sub(outer),
        Orient::Upper => outer.sub(inner),
    };
    z_value(d, &diff) == report.value
}

/// `inf over x in P of z(x)`; the pair functional against `{0}`.
pub fn script_z1(d: &Direction, p: &VSet) -> Result<ScalarizationReport, ScalarizeError> {
    let zero = VSet::singleton(Vector(vec![Rat::zero(); d.cone().dim()]));
    let report = z1_pair(d, p, &zero)?;
    debug_assert_eq!(
        report.value,
        inner_value(d, p, &Vector(vec![Rat::zero(); d.cone().dim()]), Orient::Lower).0
    );
    Ok(report)
}

/// `sup over x in P of z(x)`; the pair functional against `{0}`.
pub fn script_z2(d: &Direction, p: &VSet) -> Result<ScalarizationReport, ScalarizeError> {
    let report = z2_pair(d, p, &zero_set(d.cone().dim()))?;
    #[cfg(debug_assertions)]
    {
        // direct route: z is positively homogeneous, so rays contribute
        // their own z values as recession slopes
        let mut direct = ExtReal::NegInf;
        for v in p.base_points() {
            let zv = z_value(d, v);
            if zv > direct {
                direct = zv;
            }
        }
        for r in p.rays() {
            if !r.is_zero() && z_value(d, r) > ExtReal::fin_i(0) {
                direct = ExtReal::PosInf;
            }
        }
        debug_assert_eq!(report.value, direct);
    }
    Ok(report)
}

fn zero_set(dim: usize) -> VSet {
    VSet::singleton(Vector(vec![Rat::zero(); dim]))
}

/// `G(A, B) = sup over b in B of inf{t : b in t e + A + K}` for
/// `e in -int(K)`. Computed as the pair functional along `-e` over `K`,
/// with an independent second route along `e` over `-K`; the two must
/// agree exactly.
pub fn g_e(
    e_neg: &Vector,
    k: &PolyhedralCone,
    a: &VSet,
    b: &VSet,
) -> Result<ExtReal, ScalarizeError> {
    if e_neg.dim() != k.dim() {
        return Err(ScalarizeError::DimensionMismatch {
            expected: k.dim(),
            got: e_neg.dim(),
        });
    }
    if !k.is_interior(&e_neg.neg()) {
        return Err(ScalarizeError::DirectionNotNegativeInterior);
    }
    let d1 = Direction::new(k.clone(), e_neg.neg())?;
    let r1 = z1_pair(&d1, a, b)?;
    let d2 = Direction::new(k.negate(), e_neg.clone())?;
    let r2 = z2_pair(&d2, b, a)?;
    assert_eq!(
        r1.value, r2.value,
        "the two evaluation routes disagree"
    );
    Ok(r1.value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub probe: Vector,
    pub in_sum: bool,
    /// For an outside probe: a shrunken step at which exclusion from the
    /// shifted sum is certified.
    pub excluded_at: Option<Rat>,
    /// Exclusion search gave up after 60 halvings (reported, never
    /// silently dropped).
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLemmaReport {
    pub outcomes: Vec<ProbeOutcome>,
}

/// `P + K` equals the intersection over positive `alpha` of
/// `P + K - alpha e`. Probes inside the sum are asserted to stay inside
/// every listed shift; probes outside are separated from some shifted
/// sum by halving `alpha` until exclusion.
pub fn check_intersection_lemma(
    p: &VSet,
    d: &Direction,
    alphas: &[Rat],
    probes: &[Vector],
) -> IntersectionLemmaReport {
    assert!(alphas.iter().all(Rat::is_positive), "alphas must be positive");
    let k = d.cone();
    let e = d.e();
    let mut outcomes = Vec::with_capacity(probes.len());
    for y in probes {
        let in_sum = minkowski_member(y, p, k);
        let mut excluded_at = None;
        let mut exhausted = false;
        if in_sum {
            // membership in P + K - alpha e is membership of y + alpha e
            for alpha in alphas {
                let shifted = y.add(&e.scale(alpha));
                assert!(
                    minkowski_member(&shifted, p, k),
                    "inclusion direction of the intersection identity failed"
                );
            }
        } else {
            let mut alpha = Rat::one();
            for _ in 0..60 {
                let shifted = y.add(&e.scale(&alpha));
                if !minkowski_member(&shifted, p, k) {
                    excluded_at = Some(alpha.clone());
                    break;
                }
                alpha /= Rat::from_integer(2.into());
            }
            exhausted = excluded_at.is_none();
        }
        outcomes.push(ProbeOutcome {
            probe: y.clone(),
            in_sum,
            excluded_at,
            exhausted,
        });
    }
    IntersectionLemmaReport { outcomes }
}
