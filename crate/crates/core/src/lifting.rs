//! Lifting problems, generating inclusions, pushout-products, and bounded
//! cell-attachment factorizations.
//!
//! A lifting problem is a commuting square `p ∘ f = g ∘ i`; a solution is a
//! diagonal through the square. Solutions are found by constrained search:
//! the left leg prescribes values on the image of `i`, the right leg
//! filters candidate values through `p`. A slow enumerate-and-check oracle
//! cross-validates the search in tests.
//!
//! The factorization routine attaches generating cells one unfilled square
//! at a time, bounded by an attachment budget, and reports the residual
//! honestly instead of pretending completeness.

use std::sync::Arc;

use crate::colimit::{pushout, pushout_induced};
use crate::error::{EngineError, Result};
use crate::fincat::FinCat;
use crate::presheaf::{CellRef, Presheaf, PresheafMap};
use crate::search::{hom_set, naive_hom_set, HomSearch};

/// Solves the lifting problem for the square `p ∘ f = g ∘ i`, returning a
/// diagonal `h: cod(i) → dom(p)` with `h ∘ i = f` and `p ∘ h = g`, or
/// `None` when no diagonal exists.
pub fn has_lift(
    i: &PresheafMap,
    p: &PresheafMap,
    f: &PresheafMap,
    g: &PresheafMap,
) -> Result<Option<PresheafMap>> {
    if !f.source.same_presheaf(&i.source)
        || !g.source.same_presheaf(&i.target)
        || !f.target.same_presheaf(&p.source)
        || !g.target.same_presheaf(&p.target)
    {
        return Err(EngineError::InvalidInput(
            "lifting square endpoints do not match".into(),
        ));
    }
    if f.then(p)? != i.then(g)? {
        return Err(EngineError::Precondition {
            op: "lifting problem",
            detail: "the square does not commute".into(),
        });
    }
    let mut search =
        HomSearch::new(&i.target, &p.source)?.with_filter(|cell: CellRef, v: u32| {
            p.at(cell.obj, v) == g.at(cell.obj, cell.idx)
        });
    for o in i.source.base().objects() {
        for a in 0..i.source.cells(o) {
            search = search.prescribe(
                CellRef {
                    obj: o,
                    idx: i.at(o, a),
                },
                f.at(o, a),
            );
        }
    }
    search.find_first()
}

/// Slow oracle for `has_lift`: enumerate every map and check the two
/// triangles directly.
pub fn naive_has_lift(
    i: &PresheafMap,
    p: &PresheafMap,
    f: &PresheafMap,
    g: &PresheafMap,
    budget: u64,
) -> Result<Option<PresheafMap>> {
    for h in naive_hom_set(&i.target, &p.source, budget)? {
        if &i.then(&h)? == f && &h.then(p)? == g {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Extends `h` along the inclusion-like map `i` (a lifting problem against
/// the terminal map of `h.target`).
pub fn extends_along(i: &PresheafMap, h: &PresheafMap) -> Result<Option<PresheafMap>> {
    if !h.source.same_presheaf(&i.source) {
        return Err(EngineError::InvalidInput(
            "extension problem endpoints do not match".into(),
        ));
    }
    let mut search = HomSearch::new(&i.target, &h.target)?;
    for o in i.source.base().objects() {
        for a in 0..i.source.cells(o) {
            search = search.prescribe(
                CellRef {
                    obj: o,
                    idx: i.at(o, a),
                },
                h.at(o, a),
            );
        }
    }
    search.find_first()
}

/// Whether `i` has the left lifting property against `p`: every commuting
/// square admits a diagonal. Exhaustive over all squares.
pub fn rlp(i: &PresheafMap, p: &PresheafMap) -> Result<bool> {
    let base = i.source.base().clone();
    for f in hom_set(&i.source, &p.source)? {
        let pf = f.then(p)?;
        // Enumerate bottom legs compatible with this top leg.
        let mut search = HomSearch::new(&i.target, &p.target)?;
        for o in base.objects() {
            for a in 0..i.source.cells(o) {
                search = search.prescribe(
                    CellRef {
                        obj: o,
                        idx: i.at(o, a),
                    },
                    pf.at(o, a),
                );
            }
        }
        for g in search.enumerate()? {
            if has_lift(i, p, &f, &g)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The `n`-th representable with its canonical chain object, erroring when
/// the base is truncated below `n`.
pub fn chain_representable(base: &Arc<FinCat>, n: usize) -> Result<Arc<Presheaf>> {
    let name = format!("[{n}]");
    let o = base
        .object_named(&name)
        .ok_or_else(|| EngineError::Precondition {
            op: "generating inclusions",
            detail: format!("base `{}` has no object {name}", base.name()),
        })?;
    Ok(Presheaf::yoneda(base.clone(), o))
}

/// Boundary inclusions `∂Δ[n] ↪ Δ[n]` for `0 ≤ n ≤ n_max`.
pub fn gen_boundaries(base: &Arc<FinCat>, n_max: usize) -> Result<Vec<PresheafMap>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let y = chain_representable(base, n)?;
        let seeds: Vec<CellRef> = if n == 0 {
            Vec::new()
        } else {
            let face_obj = base.object_named(&format!("[{}]", n - 1)).unwrap();
            (0..y.cells(face_obj))
                .map(|idx| CellRef { obj: face_obj, idx })
                .collect()
        };
        let (_bd, incl) = y.sub_generated(format!("∂Δ[{n}]"), &seeds)?;
        out.push(incl);
    }
    Ok(out)
}

/// Which horns to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HornKind {
    /// All horns `Λ^k[n]`, `0 ≤ k ≤ n`.
    All,
    /// Inner horns only, `0 < k < n`.
    Inner,
}

/// A horn inclusion `Λ^k[n] ↪ Δ[n]` with its indices.
#[derive(Clone, Debug)]
pub struct HornInclusion {
    pub n: usize,
    pub k: usize,
    pub map: PresheafMap,
}

/// Horn inclusions for `1 ≤ n ≤ n_max`, filtered by `kind`.
pub fn gen_horns(base: &Arc<FinCat>, n_max: usize, kind: HornKind) -> Result<Vec<HornInclusion>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let y = chain_representable(base, n)?;
        let face_name = format!("[{}]", n - 1);
        let face_obj = base.object_named(&face_name).unwrap();
        let top_obj = base.object_named(&format!("[{n}]")).unwrap();
        for k in 0..=n {
            if kind == HornKind::Inner && (k == 0 || k == n) {
                continue;
            }
            // Seeds: every coface except the k-th.
            let mut seeds = Vec::new();
            for i in 0..=n {
                if i == k {
                    continue;
                }
                let table: Vec<u32> = (0..n as u32)
                    .map(|x| if (x as usize) < i { x } else { x + 1 })
                    .collect();
                let m = base
                    .morphism_by_table(face_obj, top_obj, &table)
                    .expect("cofaces exist in a simplex base");
                seeds.push(CellRef {
                    obj: face_obj,
                    idx: base.hom_position(m) as u32,
                });
            }
            let (_h, incl) = y.sub_generated(format!("Λ^{k}[{n}]"), &seeds)?;
            out.push(HornInclusion { n, k, map: incl });
        }
    }
    Ok(out)
}

/// One extension problem that failed to fill.
#[derive(Clone, Debug)]
pub struct FillFailure {
    pub n: usize,
    pub k: usize,
    pub problem_index: usize,
}

/// Outcome of testing every horn-extension problem against an object.
#[derive(Clone, Debug)]
pub struct FibrancyReport {
    pub total_problems: usize,
    pub unfilled: Vec<FillFailure>,
}

impl FibrancyReport {
    pub fn is_fibrant(&self) -> bool {
        self.unfilled.is_empty()
    }
}

/// Tests whether every map from a horn into `x` extends over the full
/// representable, for each supplied horn inclusion.
pub fn detect_fibrancy(x: &Arc<Presheaf>, horns: &[HornInclusion]) -> Result<FibrancyReport> {
    let mut total = 0usize;
    let mut unfilled = Vec::new();
    for horn in horns {
        for (idx, problem) in hom_set(&horn.map.source, x)?.into_iter().enumerate() {
            total += 1;
            if extends_along(&horn.map, &problem)?.is_none() {
                unfilled.push(FillFailure {
                    n: horn.n,
                    k: horn.k,
                    problem_index: idx,
                });
            }
        }
    }
    Ok(FibrancyReport {
        total_problems: total,
        unfilled,
    })
}

/// The product of two maps, `f × g : A×C → B×D`.
pub fn product_map(f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
    let (_ac, pa, pc) = Presheaf::product(&f.source, &g.source)?;
    let (bd, _, _) = Presheaf::product(&f.target, &g.target)?;
    Presheaf::pair_into_product(&bd, &g.target, &pa.then(f)?, &pc.then(g)?)
}

/// The pushout-product `f □ g : A×D ∪_{A×C} B×C → B×D`.
pub fn pushout_product(f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
    let (_ac, pa, pc) = Presheaf::product(&f.source, &g.source)?;
    let (ad, _, _) = Presheaf::product(&f.source, &g.target)?;
    let (bc, qb, qc) = Presheaf::product(&f.target, &g.source)?;
    let (bd, _, _) = Presheaf::product(&f.target, &g.target)?;
    // A×C → A×D and A×C → B×C.
    let left = Presheaf::pair_into_product(&ad, &g.target, &pa, &pc.then(g)?)?;
    let right = Presheaf::pair_into_product(&bc, &g.source, &pa.then(f)?, &pc)?;
    let po = pushout(
        &left,
        &right,
        format!("({}) □ ({}) corner", f.source.name(), g.source.name()),
    )?;
    // A×D → B×D and B×C → B×D.
    let (_, ra, rd) = Presheaf::product(&f.source, &g.target)?;
    let u = Presheaf::pair_into_product(&bd, &g.target, &ra.then(f)?, &rd)?;
    let v = Presheaf::pair_into_product(&bd, &g.target, &qb, &qc.then(g)?)?;
    pushout_induced(&po, &u, &v)
}

/// Factorization of the fold map through the cylinder: a monic first half
/// and a projection second half with an explicit, verified contraction.
pub struct FoldFactorization {
    /// `X ⊔ X → X`.
    pub fold: PresheafMap,
    /// `X ⊔ X → X × Δ[1]` (both ends).
    pub mono_part: PresheafMap,
    /// `X × Δ[1] → X` (projection).
    pub weq_part: PresheafMap,
    /// Section of the projection (end 0).
    pub section: PresheafMap,
    /// Homotopy `(X×Δ[1])×Δ[1] → X×Δ[1]` from `section ∘ projection` to the
    /// identity, taking fiberwise minima in the interval coordinate.
    pub homotopy: PresheafMap,
}

/// Builds and verifies the cylinder factorization of the fold map of `x`.
pub fn fold_cylinder(x: &Arc<Presheaf>) -> Result<FoldFactorization> {
    let base = x.base().clone();
    let cyl = crate::weqoracle::cylinder(x)?;
    let (xx, _, _) = Presheaf::coproduct(x, x)?;
    let id = PresheafMap::identity(x);
    let fold = Presheaf::copair_from_coproduct(&xx, &id, &id)?;
    let mono_part = Presheaf::copair_from_coproduct(&xx, &cyl.end0, &cyl.end1)?;
    let weq_part = cyl.projection.clone();
    let section = cyl.end0.clone();

    // H((x, t), u) = (x, min(t, u)), with the minimum computed on interval
    // cells as pointwise minima of the classifying tables.
    let iv = cyl.interval.clone();
    let cyl2 = crate::weqoracle::cylinder(&cyl.object)?;
    let o1 = base
        .object_named("[1]")
        .expect("cylinder exists only over a simplex base");
    let components: Vec<Vec<u32>> = base
        .objects()
        .map(|o| {
            let ic = iv.cells(o);
            let min_of = |t: u32, u: u32| -> u32 {
                let ht = base.hom(o, o1)[t as usize];
                let hu = base.hom(o, o1)[u as usize];
                let tt = &base.morphism(ht).table;
                let tu = &base.morphism(hu).table;
                let m: Vec<u32> = tt.iter().zip(tu).map(|(&a, &b)| a.min(b)).collect();
                let mm = base
                    .morphism_by_table(o, o1, &m)
                    .expect("pointwise minima of monotone maps are monotone");
                base.hom_position(mm) as u32
            };
            (0..cyl2.object.cells(o))
                .map(|c| {
                    let q = c / ic; // cell of X×Δ[1]
                    let u = c % ic;
                    let xc = q / ic;
                    let t = q % ic;
                    xc * ic + min_of(t, u)
                })
                .collect()
        })
        .collect();
    let homotopy = PresheafMap::new(cyl2.object.clone(), cyl.object.clone(), components)?;

    // Verify every claim before handing the factorization out.
    if mono_part.then(&weq_part)? != fold {
        return Err(EngineError::Internal(
            "cylinder factorization does not compose to the fold map".into(),
        ));
    }
    if !mono_part.is_mono() {
        return Err(EngineError::Internal(
            "cylinder factorization first half is not monic".into(),
        ));
    }
    if section.then(&weq_part)? != PresheafMap::identity(x) {
        return Err(EngineError::Internal(
            "cylinder section does not split the projection".into(),
        ));
    }
    let retract = weq_part.then(&section)?;
    let id_cyl = PresheafMap::identity(&cyl.object);
    if !crate::weqoracle::verify_homotopy(&homotopy, &retract, &id_cyl)? {
        return Err(EngineError::Internal(
            "cylinder contraction endpoints do not match".into(),
        ));
    }
    Ok(FoldFactorization {
        fold,
        mono_part,
        weq_part,
        section,
        homotopy,
    })
}

/// A bounded cell-attachment factorization `f = right ∘ left`.
pub struct SoaFactorization {
    /// `X → Z`, a composite of generator pushouts.
    pub left: PresheafMap,
    /// `Z → Y`.
    pub right: PresheafMap,
    /// Cells attached before the process stopped.
    pub attachments: usize,
    /// Squares still unfilled when the budget ran out (0 means `right`
    /// lifts against every generator square).
    pub residual: usize,
}

/// Finds the first generator square `(u, v)` with no diagonal through
/// `right`, if any.
fn first_unfilled(
    generators: &[PresheafMap],
    right: &PresheafMap,
) -> Result<Option<(usize, PresheafMap, PresheafMap)>> {
    for (gi, i) in generators.iter().enumerate() {
        for u in hom_set(&i.source, &right.source)? {
            let ru = u.then(right)?;
            let mut search = HomSearch::new(&i.target, &right.target)?;
            for o in i.source.base().objects() {
                for a in 0..i.source.cells(o) {
                    search = search.prescribe(
                        CellRef {
                            obj: o,
                            idx: i.at(o, a),
                        },
                        ru.at(o, a),
                    );
                }
            }
            for v in search.enumerate()? {
                if has_lift(i, right, &u, &v)?.is_none() {
                    return Ok(Some((gi, u, v)));
                }
            }
        }
    }
    Ok(None)
}

/// Counts generator squares with no diagonal through `right`.
fn count_unfilled(generators: &[PresheafMap], right: &PresheafMap) -> Result<usize> {
    let mut n = 0usize;
    for i in generators {
        for u in hom_set(&i.source, &right.source)? {
            let ru = u.then(right)?;
            let mut search = HomSearch::new(&i.target, &right.target)?;
            for o in i.source.base().objects() {
                for a in 0..i.source.cells(o) {
                    search = search.prescribe(
                        CellRef {
                            obj: o,
                            idx: i.at(o, a),
                        },
                        ru.at(o, a),
                    );
                }
            }
            for v in search.enumerate()? {
                if has_lift(i, right, &u, &v)?.is_none() {
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Factors `f` by repeatedly attaching a generator cell along the first
/// unfilled square, up to `max_attachments`. The residual count reports how
/// far from a genuine factorization the bounded run stopped.
pub fn soa_factor(
    f: &PresheafMap,
    generators: &[PresheafMap],
    max_attachments: usize,
) -> Result<SoaFactorization> {
    let mut left = PresheafMap::identity(&f.source);
    let mut right = f.clone();
    let mut attachments = 0usize;
    loop {
        match first_unfilled(generators, &right)? {
            None => {
                return Ok(SoaFactorization {
                    left,
                    right,
                    attachments,
                    residual: 0,
                })
            }
            Some((gi, u, v)) => {
                if attachments == max_attachments {
                    let residual = count_unfilled(generators, &right)?;
                    return Ok(SoaFactorization {
                        left,
                        right,
                        attachments,
                        residual,
                    });
                }
                let i = &generators[gi];
                let po = pushout(i, &u, format!("{} +cell", right.source.name()))?;
                right = pushout_induced(&po, &v, &right)?;
                left = left.then(&po.from_right)?;
                attachments += 1;
            }
        }
    }
}
