//! Adjoint strings and the audits that certify them.
//!
//! An [`AdjointString`] packages a middle functor `F : N → M` with up to
//! two flanking adjunctions `L ⊣ F` and `F ⊣ R`. Everything a string
//! claims is checked computationally on finite corpora: triangle
//! identities as exact composite equalities, adjunction bijections by
//! enumerating hom-sets and round-tripping explicit transposes, full
//! faithfulness against unit/counit invertibility (each side must agree
//! with the other, and the two sides with each other), the idempotency
//! square's four maps, and — in the all-cofibrant case with an identity
//! replacement — homotopy idempotency against a weak-equivalence oracle.
//!
//! Strings whose left adjoint has no finite construction ship with that
//! half absent; audits that need it report `SKIPPED-UNIMPLEMENTABLE`
//! rather than a hollow pass.

use std::sync::Arc;
use std::time::Instant;

use crate::bases::{
    bisimplex, cube_conn, cube_conn_inclusion, dedekind_cubes, row_embedding, simplex,
};
use crate::error::{EngineError, Result};
use crate::fincat::FinFunctor;
use crate::functor::{cat_hom_set, CatDesc, CatMap, CatObject, Functor, NatTrans};
use crate::lifting::{gen_boundaries, rlp};
use crate::report::CheckReport;
use crate::weqoracle::{WeqOracle, WeqVerdict};

/// One adjunction `left ⊣ right` with computable unit and counit.
#[derive(Clone)]
pub struct Adjunction {
    pub name: String,
    pub left: Arc<Functor>,
    pub right: Arc<Functor>,
    /// `Id → right ∘ left` on the left adjoint's source.
    pub unit: NatTrans,
    /// `left ∘ right → Id` on the left adjoint's target.
    pub counit: NatTrans,
}

impl Adjunction {
    pub fn new(
        name: impl Into<String>,
        left: Arc<Functor>,
        right: Arc<Functor>,
        unit: NatTrans,
        counit: NatTrans,
    ) -> Result<Adjunction> {
        if !left.source().same(&right.target()) || !left.target().same(&right.source()) {
            return Err(EngineError::InvalidInput(format!(
                "adjunction endpoints do not match: {} vs {}",
                left.describe(),
                right.describe()
            )));
        }
        Ok(Adjunction {
            name: name.into(),
            left,
            right,
            unit,
            counit,
        })
    }

    /// The category the left adjoint starts from.
    pub fn dom(&self) -> CatDesc {
        self.left.source()
    }

    /// The category the left adjoint lands in.
    pub fn cod(&self) -> CatDesc {
        self.left.target()
    }

    /// Transpose `g : L(x) → a` to `x → R(a)` via the unit.
    pub fn transpose_to_right(&self, x: &CatObject, g: &CatMap) -> Result<CatMap> {
        self.unit.component_at(x)?.then(&self.right.on_map(g)?)
    }

    /// Transpose `h : x → R(a)` to `L(x) → a` via the counit.
    pub fn transpose_to_left(&self, a: &CatObject, h: &CatMap) -> Result<CatMap> {
        self.left.on_map(h)?.then(&self.counit.component_at(a)?)
    }

    /// Negative control: same data with a deliberately damaged unit.
    pub fn with_corrupted_unit(&self) -> Adjunction {
        Adjunction {
            name: format!("{} [corrupted unit]", self.name),
            left: self.left.clone(),
            right: self.right.clone(),
            unit: self.unit.clone().corrupted(),
            counit: self.counit.clone(),
        }
    }
}

/// A middle functor with up to two flanking adjunctions.
#[derive(Clone)]
pub struct AdjointString {
    pub name: String,
    /// `F : N → M`.
    pub f: Arc<Functor>,
    /// `L ⊣ F`, when the left adjoint has a finite construction.
    pub left: Option<Adjunction>,
    /// `F ⊣ R`, when the right adjoint has a finite construction.
    pub right: Option<Adjunction>,
}

impl AdjointString {
    /// The category `N` the middle functor starts from.
    pub fn inner_desc(&self) -> CatDesc {
        self.f.source()
    }

    /// The category `M` the middle functor lands in.
    pub fn outer_desc(&self) -> CatDesc {
        self.f.target()
    }
}

/// The string `Id ⊣ Id ⊣ Id` on one category; the audits' base case.
pub fn identity_string(desc: CatDesc) -> AdjointString {
    let id = Arc::new(Functor::Identity(desc));
    let adj = |n: &str| {
        Adjunction::new(
            n,
            id.clone(),
            id.clone(),
            NatTrans::underlying_identity("unit(id ⊣ id)", id.clone(), id.clone()),
            NatTrans::underlying_identity("counit(id ⊣ id)", id.clone(), id.clone()),
        )
        .expect("identity endpoints always match")
    };
    AdjointString {
        name: "identity".into(),
        f: id.clone(),
        left: Some(adj("id ⊣ id (left)")),
        right: Some(adj("id ⊣ id (right)")),
    }
}

/// The string `lan(f) ⊣ restrict(f) ⊣ ran(f)` along a base functor.
pub fn kan_string(name: impl Into<String>, f: Arc<FinFunctor>) -> Result<AdjointString> {
    let restrict = Arc::new(Functor::Restrict(f.clone()));
    let lan = Arc::new(Functor::Lan(f.clone()));
    let ran = Arc::new(Functor::Ran(f.clone()));
    let left = Adjunction::new(
        format!("lan({0}) ⊣ restrict({0})", f.name()),
        lan,
        restrict.clone(),
        NatTrans::lan_unit(f.clone())?,
        NatTrans::lan_counit(f.clone())?,
    )?;
    let right = Adjunction::new(
        format!("restrict({0}) ⊣ ran({0})", f.name()),
        restrict.clone(),
        ran,
        NatTrans::ran_unit(f.clone())?,
        NatTrans::ran_counit(f)?,
    )?;
    Ok(AdjointString {
        name: name.into(),
        f: restrict,
        left: Some(left),
        right: Some(right),
    })
}

/// The row-degree-zero string: Kan extensions along the embedding of the
/// chain base into the first factor of its square.
pub fn bisimplicial_string(n: usize) -> Result<AdjointString> {
    let s = simplex(n);
    let prod = bisimplex(n);
    let f = Arc::new(row_embedding(&s, &prod)?);
    kan_string("row-degree-zero", f)
}

/// Kan extensions along the inclusion of the connection-generated cube
/// base into the full cube base.
pub fn cube_inclusion_string(k: usize) -> Result<AdjointString> {
    let conn = cube_conn(k);
    let cubes = dedekind_cubes(k);
    let f = Arc::new(cube_conn_inclusion(&conn, &cubes)?);
    kan_string("cube-inclusion", f)
}

/// The marking string `flat ⊣ forget ⊣ sharp`; all four structure maps
/// are identities on underlying cells.
pub fn marked_string(n: usize) -> Result<AdjointString> {
    let simp = simplex(n);
    let forget = Arc::new(Functor::Forget { simp: simp.clone() });
    let flat = Arc::new(Functor::Flat { simp: simp.clone() });
    let sharp = Arc::new(Functor::Sharp { simp });
    let left = Adjunction::new(
        "flat ⊣ forget",
        flat.clone(),
        forget.clone(),
        NatTrans::underlying_identity(
            "unit(flat ⊣ forget)",
            Arc::new(Functor::Identity(forget.target())),
            Functor::compose(flat.clone(), forget.clone())?,
        ),
        NatTrans::underlying_identity(
            "counit(flat ⊣ forget)",
            Functor::compose(forget.clone(), flat.clone())?,
            Arc::new(Functor::Identity(forget.source())),
        ),
    )?;
    let right = Adjunction::new(
        "forget ⊣ sharp",
        forget.clone(),
        sharp.clone(),
        NatTrans::underlying_identity(
            "unit(forget ⊣ sharp)",
            Arc::new(Functor::Identity(forget.source())),
            Functor::compose(forget.clone(), sharp.clone())?,
        ),
        NatTrans::underlying_identity(
            "counit(forget ⊣ sharp)",
            Functor::compose(sharp, forget.clone())?,
            Arc::new(Functor::Identity(forget.target())),
        ),
    )?;
    Ok(AdjointString {
        name: "marked".into(),
        f: forget,
        left: Some(left),
        right: Some(right),
    })
}

/// The triangulation string. Triangulation is itself the middle functor;
/// its right adjoint is cubification, and its would-be left adjoint has
/// no finite construction at truncation, so that half is absent and the
/// audits that need it are reported as skipped.
pub fn triangulation_string(k: usize, n: usize) -> Result<AdjointString> {
    let cube = dedekind_cubes(k);
    let simp = simplex(n);
    let tri = Arc::new(Functor::Triangulate {
        cube: cube.clone(),
        simp: simp.clone(),
    });
    let cub = Arc::new(Functor::Cubify {
        simp: simp.clone(),
        cube: cube.clone(),
    });
    let right = Adjunction::new(
        "triangulate ⊣ cubify",
        tri.clone(),
        cub,
        NatTrans::tc_unit(cube.clone(), simp.clone())?,
        NatTrans::tc_counit(cube, simp)?,
    )?;
    Ok(AdjointString {
        name: "triangulation".into(),
        f: tri,
        left: None,
        right: Some(right),
    })
}

/// Both triangle identities for one adjunction, as exact composite
/// equalities over the given corpora, preceded by naturality checks of
/// the unit and counit on the given maps. Naturality failures are
/// reported distinctly from identity failures.
pub fn verify_triangle_identities(
    adj: &Adjunction,
    dom_corpus: &[CatObject],
    cod_corpus: &[CatObject],
    dom_maps: &[CatMap],
    cod_maps: &[CatMap],
) -> CheckReport {
    let start = Instant::now();
    let name = format!("triangle-identities({})", adj.name);
    let run = || -> Result<Option<(String, String)>> {
        for f in dom_maps {
            if let Some(w) = adj.unit.check_naturality(f)? {
                return Ok(Some(("naturality".into(), w)));
            }
        }
        for f in cod_maps {
            if let Some(w) = adj.counit.check_naturality(f)? {
                return Ok(Some(("naturality".into(), w)));
            }
        }
        for x in dom_corpus {
            let lx = adj.left.on_object(x)?;
            let unit_x = adj.unit.component_at(x)?;
            let composite = adj
                .left
                .on_map(&unit_x)?
                .then(&adj.counit.component_at(&lx)?)?;
            if !composite.same_map(&CatMap::identity(&lx)) {
                return Ok(Some((
                    "identity".into(),
                    format!("counit∘L(unit) ≠ id at object `{}`", x.name()),
                )));
            }
        }
        for a in cod_corpus {
            let ra = adj.right.on_object(a)?;
            let counit_a = adj.counit.component_at(a)?;
            let composite = adj
                .unit
                .component_at(&ra)?
                .then(&adj.right.on_map(&counit_a)?)?;
            if !composite.same_map(&CatMap::identity(&ra)) {
                return Ok(Some((
                    "identity".into(),
                    format!("R(counit)∘unit ≠ id at object `{}`", a.name()),
                )));
            }
        }
        Ok(None)
    };
    let report = match run() {
        Ok(None) => CheckReport::pass(
            name,
            format!(
                "both identities exact on {}+{} objects; unit/counit natural on {}+{} maps",
                dom_corpus.len(),
                cod_corpus.len(),
                dom_maps.len(),
                cod_maps.len()
            ),
        ),
        Ok(Some((kind, witness))) => CheckReport::fail(
            name,
            format!("{kind} check falsified for {}", adj.name),
            witness,
        ),
        Err(e) => CheckReport::fail(name, "audit aborted by engine error", e.to_string()),
    };
    report.timed(start)
}

/// Exact adjunction bijections on explicit object pairs: hom-set
/// cardinalities match and both transpositions round-trip every map to
/// itself.
pub fn check_adjunction_exactness(
    adj: &Adjunction,
    pairs: &[(CatObject, CatObject)],
) -> CheckReport {
    let start = Instant::now();
    let name = format!("adjunction-exactness({})", adj.name);
    let mut transposed = 0usize;
    let mut run = || -> Result<Option<String>> {
        for (x, a) in pairs {
            let lx = adj.left.on_object(x)?;
            let ra = adj.right.on_object(a)?;
            let outer = cat_hom_set(&lx, a)?;
            let inner = cat_hom_set(x, &ra)?;
            if outer.len() != inner.len() {
                return Ok(Some(format!(
                    "hom(L{0}, {1}) has {2} maps but hom({0}, R{1}) has {3}",
                    x.name(),
                    a.name(),
                    outer.len(),
                    inner.len()
                )));
            }
            // The same unit/counit composites as `transpose_to_right` and
            // `transpose_to_left`, with the per-object constructions shared
            // across the whole hom-set.
            let unit_x = adj.unit.component_at(x)?;
            let counit_a = adj.counit.component_at(a)?;
            let to_right = |maps: &[CatMap]| -> Result<Vec<CatMap>> {
                adj.right
                    .on_maps(maps)?
                    .iter()
                    .map(|rg| unit_x.then(rg))
                    .collect()
            };
            let to_left = |maps: &[CatMap]| -> Result<Vec<CatMap>> {
                adj.left
                    .on_maps(maps)?
                    .iter()
                    .map(|lh| lh.then(&counit_a))
                    .collect()
            };
            let t = to_right(&outer)?;
            let back = to_left(&t)?;
            transposed += outer.len();
            for (g, b) in outer.iter().zip(&back) {
                if !b.same_map(g) {
                    return Ok(Some(format!(
                        "transpose round-trip fails for a map L{} → {}",
                        x.name(),
                        a.name()
                    )));
                }
            }
            let t = to_left(&inner)?;
            let back = to_right(&t)?;
            transposed += inner.len();
            for (h, b) in inner.iter().zip(&back) {
                if !b.same_map(h) {
                    return Ok(Some(format!(
                        "transpose round-trip fails for a map {} → R{}",
                        x.name(),
                        a.name()
                    )));
                }
            }
        }
        Ok(None)
    };
    let report = match run() {
        Ok(None) => CheckReport::pass(
            name,
            format!(
                "hom cardinalities equal and {transposed} transposes round-trip on {} pairs",
                pairs.len()
            ),
        ),
        Ok(Some(w)) => CheckReport::fail(name, "adjunction bijection falsified", w),
        Err(e) => CheckReport::fail(name, "audit aborted by engine error", e.to_string()),
    };
    report.timed(start)
}

/// Outcome of the full-faithfulness audit: the verdicts themselves plus
/// the report asserting that unit/counit invertibility agrees with
/// hom-set bijectivity, and that the two flanks agree with each other.
pub struct FfOutcome {
    pub left_fully_faithful: Option<bool>,
    pub right_fully_faithful: Option<bool>,
    pub report: CheckReport,
}

fn functor_hom_bijective(
    f: &Arc<Functor>,
    pairs: &[(CatObject, CatObject)],
) -> Result<(bool, Option<String>)> {
    for (x, y) in pairs {
        let fx = f.on_object(x)?;
        let fy = f.on_object(y)?;
        let homs = cat_hom_set(x, y)?;
        let f_homs = cat_hom_set(&fx, &fy)?;
        let images = f.on_maps(&homs)?;
        let mut distinct = true;
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                if images[i].same_map(&images[j]) {
                    distinct = false;
                }
            }
        }
        if homs.len() != f_homs.len() || !distinct {
            return Ok((
                false,
                Some(format!(
                    "hom({}, {}): {} maps vs {} images ({})",
                    x.name(),
                    y.name(),
                    homs.len(),
                    f_homs.len(),
                    if distinct { "all distinct" } else { "collisions" }
                )),
            ));
        }
    }
    Ok((true, None))
}

/// Full-faithfulness audit of a string on a corpus of `M`-objects.
///
/// For the left flank: the unit is invertible at every corpus object iff
/// the left adjoint is bijective on every sampled hom-set. Dually for the
/// right flank with the counit. When both flanks exist their verdicts
/// must also agree with each other. Disagreement is a failure of the
/// audit; the verdicts themselves are recorded, not presumed.
pub fn check_fully_faithful_string(s: &AdjointString, m_corpus: &[CatObject]) -> FfOutcome {
    let start = Instant::now();
    let name = format!("fully-faithful({})", s.name);
    let mut pairs: Vec<(CatObject, CatObject)> = Vec::new();
    for x in m_corpus {
        for y in m_corpus {
            pairs.push((x.clone(), y.clone()));
        }
    }
    let mut left_ff = None;
    let mut right_ff = None;
    let run = || -> Result<(Option<bool>, Option<bool>, Option<String>)> {
        let mut left = None;
        let mut right = None;
        if let Some(adj) = &s.left {
            let mut unit_iso = true;
            let mut unit_witness = None;
            for x in m_corpus {
                if !adj.unit.component_at(x)?.is_iso() {
                    unit_iso = false;
                    unit_witness = Some(x.name());
                    break;
                }
            }
            let (bij, bij_witness) = functor_hom_bijective(&adj.left, &pairs)?;
            if unit_iso != bij {
                return Ok((
                    Some(unit_iso),
                    None,
                    Some(format!(
                        "left flank disagrees: unit iso everywhere = {unit_iso} ({}), hom-bijective = {bij} ({})",
                        unit_witness.unwrap_or_else(|| "—".into()),
                        bij_witness.unwrap_or_else(|| "—".into())
                    )),
                ));
            }
            left = Some(unit_iso);
        }
        if let Some(adj) = &s.right {
            let mut counit_iso = true;
            let mut counit_witness = None;
            for x in m_corpus {
                if !adj.counit.component_at(x)?.is_iso() {
                    counit_iso = false;
                    counit_witness = Some(x.name());
                    break;
                }
            }
            let (bij, bij_witness) = functor_hom_bijective(&adj.right, &pairs)?;
            if counit_iso != bij {
                return Ok((
                    left,
                    Some(counit_iso),
                    Some(format!(
                        "right flank disagrees: counit iso everywhere = {counit_iso} ({}), hom-bijective = {bij} ({})",
                        counit_witness.unwrap_or_else(|| "—".into()),
                        bij_witness.unwrap_or_else(|| "—".into())
                    )),
                ));
            }
            right = Some(counit_iso);
        }
        if let (Some(l), Some(r)) = (left, right) {
            if l != r {
                return Ok((
                    left,
                    right,
                    Some(format!(
                        "flanks disagree: left fully faithful = {l}, right fully faithful = {r}"
                    )),
                ));
            }
        }
        Ok((left, right, None))
    };
    let report = match run() {
        Ok((l, r, None)) => {
            left_ff = l;
            right_ff = r;
            let verdict = match (l, r) {
                (Some(v), _) | (None, Some(v)) => format!("fully faithful: {v}"),
                (None, None) => "no flank to audit".into(),
            };
            CheckReport::pass(
                name,
                format!(
                    "{verdict}; unit/counit invertibility agrees with hom bijectivity on {} objects, {} pairs",
                    m_corpus.len(),
                    pairs.len()
                ),
            )
        }
        Ok((l, r, Some(w))) => {
            left_ff = l;
            right_ff = r;
            CheckReport::fail(name, "full-faithfulness cross-checks disagree", w)
        }
        Err(e) => CheckReport::fail(name, "audit aborted by engine error", e.to_string()),
    };
    FfOutcome {
        left_fully_faithful: left_ff,
        right_fully_faithful: right_ff,
        report: report.timed(start),
    }
}

/// Outcome of the idempotency audit.
pub struct IdempotentOutcome {
    /// Whether every available square map was invertible at every corpus
    /// object; `None` when the string has no flank to audit.
    pub idempotent: Option<bool>,
    pub report: CheckReport,
}

/// Idempotency audit on a corpus of `N`-objects.
///
/// At each object `X` the audit builds the available maps among `F(X)`,
/// `F(L(F(X)))` and `F(R(F(X)))` — the unit at `F(X)`, `F` of the counit
/// at `X`, `F` of the opposite unit at `X`, and the opposite counit at
/// `F(X)` — checks the triangle-composite retractions exactly, and
/// requires all available invertibility verdicts at one object to agree
/// ("one map invertible iff all are"). The aggregated verdict is
/// recorded either way; a per-object disagreement is a failure.
pub fn check_idempotent(s: &AdjointString, n_corpus: &[CatObject]) -> IdempotentOutcome {
    let start = Instant::now();
    let name = format!("idempotent({})", s.name);
    let mut all_iso = true;
    let mut run = || -> Result<Option<String>> {
        for x in n_corpus {
            let fx = s.f.on_object(x)?;
            let mut verdicts: Vec<(&'static str, bool)> = Vec::new();
            if let Some(adj) = &s.left {
                let a = adj.unit.component_at(&fx)?;
                let b = s.f.on_map(&adj.counit.component_at(x)?)?;
                if !a.then(&b)?.same_map(&CatMap::identity(&fx)) {
                    return Ok(Some(format!(
                        "F(counit)∘unit ≠ id at `{}` — adjunction data inconsistent",
                        x.name()
                    )));
                }
                verdicts.push(("unit at F(X)", a.is_iso()));
                verdicts.push(("F(counit at X)", b.is_iso()));
            }
            if let Some(adj) = &s.right {
                let c = s.f.on_map(&adj.unit.component_at(x)?)?;
                let d = adj.counit.component_at(&fx)?;
                if !c.then(&d)?.same_map(&CatMap::identity(&fx)) {
                    return Ok(Some(format!(
                        "counit∘F(unit) ≠ id at `{}` — adjunction data inconsistent",
                        x.name()
                    )));
                }
                verdicts.push(("F(opposite unit at X)", c.is_iso()));
                verdicts.push(("opposite counit at F(X)", d.is_iso()));
            }
            if verdicts.is_empty() {
                continue;
            }
            let first = verdicts[0].1;
            if let Some((label, v)) = verdicts.iter().find(|(_, v)| *v != first) {
                return Ok(Some(format!(
                    "square maps disagree at `{}`: {} is {} while {} is {}",
                    x.name(),
                    verdicts[0].0,
                    if first { "invertible" } else { "not invertible" },
                    label,
                    if *v { "invertible" } else { "not invertible" }
                )));
            }
            if !first {
                all_iso = false;
            }
        }
        Ok(None)
    };
    let has_flank = s.left.is_some() || s.right.is_some();
    let (idempotent, report) = match run() {
        Ok(None) => {
            let idem = has_flank.then_some(all_iso);
            let detail = match idem {
                Some(v) => format!(
                    "idempotent: {v}; all square maps agree objectwise on {} objects",
                    n_corpus.len()
                ),
                None => "no flank to audit".into(),
            };
            (idem, CheckReport::pass(name, detail))
        }
        Ok(Some(w)) => (
            None,
            CheckReport::fail(name, "idempotency square inconsistent", w),
        ),
        Err(e) => (
            None,
            CheckReport::fail(name, "audit aborted by engine error", e.to_string()),
        ),
    };
    IdempotentOutcome {
        idempotent,
        report: report.timed(start),
    }
}

/// The composite adjunction `F∘L ⊣ F∘R` of a string with both flanks:
/// unit `(F unit′ L) ∘ unit` and counit `counit′ ∘ (F counit R)`.
pub fn compose_adjunction(s: &AdjointString) -> Result<Adjunction> {
    let (Some(la), Some(ra)) = (&s.left, &s.right) else {
        return Err(EngineError::Precondition {
            op: "adjunction composition",
            detail: format!("string `{}` is missing a flank", s.name),
        });
    };
    let l = la.left.clone();
    let f = la.right.clone();
    let f_right = ra.left.clone();
    let r = ra.right.clone();
    let big_left = Functor::compose(l.clone(), f_right.clone())?;
    let big_right = Functor::compose(r.clone(), f.clone())?;
    let unit = NatTrans::vcomp(
        la.unit.clone(),
        NatTrans::whisker(l, ra.unit.clone(), f)?,
    );
    let counit = NatTrans::vcomp(
        NatTrans::whisker(r, la.counit.clone(), f_right)?,
        ra.counit.clone(),
    );
    Adjunction::new(
        format!("composite({})", s.name),
        big_left,
        big_right,
        unit,
        counit,
    )
}

/// A cofibrant-replacement policy for objects of `M`. The shipped policy
/// is the identity, valid whenever every object of `M` is cofibrant —
/// which holds for the monomorphism cofibration classes all shipped
/// strings use.
#[derive(Clone, Copy, Debug)]
pub enum CofibrantReplacement {
    Identity,
}

impl CofibrantReplacement {
    pub fn identity() -> CofibrantReplacement {
        CofibrantReplacement::Identity
    }

    /// The replacement map `x^c → x`.
    pub fn at(&self, x: &CatObject) -> Result<CatMap> {
        match self {
            CofibrantReplacement::Identity => Ok(CatMap::identity(x)),
        }
    }

    /// Validity of one component: the replacement map must be a weak
    /// equivalence with the lifting property against the boundary
    /// inclusions up to the base's truncation. Invertible components
    /// satisfy both outright.
    pub fn check_component(&self, x: &CatObject, oracle: &WeqOracle) -> Result<Option<String>> {
        let r = self.at(x)?;
        if r.is_iso() {
            return Ok(None);
        }
        let map = r.underlying();
        if !oracle.verdict(map).is_weq() {
            return Ok(Some(format!(
                "replacement at `{}` is not certified a weak equivalence",
                x.name()
            )));
        }
        let base = map.source.base().clone();
        let n_max = base.object_count().saturating_sub(1);
        for b in gen_boundaries(&base, n_max)? {
            if !rlp(&b, map)? {
                return Ok(Some(format!(
                    "replacement at `{}` fails lifting against `{}`",
                    x.name(),
                    b.target.name()
                )));
            }
        }
        Ok(None)
    }
}

/// The derived counit `ε^h_X = counit_X ∘ L(replacement at F(X))`.
pub fn epsilon_h(
    s: &AdjointString,
    repl: &CofibrantReplacement,
    x: &CatObject,
) -> Result<CatMap> {
    let adj = s.left.as_ref().ok_or_else(|| EngineError::Precondition {
        op: "derived counit",
        detail: format!("string `{}` has no left flank", s.name),
    })?;
    let fx = s.f.on_object(x)?;
    let r = repl.at(&fx)?;
    adj.left.on_map(&r)?.then(&adj.counit.component_at(x)?)
}

/// Homotopy idempotency in the all-cofibrant case.
///
/// For each corpus object `X` of `N`, builds the derived counit
/// `ε^h_X : L((FX)^c) → X`, applies the oracle to both `F(ε^h_X)` and the
/// unit at `(FX)^c`, verifies the exact factorization
/// `F(ε^h_X) ∘ unit = replacement`, and requires the two verdicts to
/// agree unless one is unknown. Unknown verdicts make the audit
/// inconclusive, never a pass; strings without a left flank are skipped.
pub fn check_homotopy_idempotent(
    s: &AdjointString,
    repl: &CofibrantReplacement,
    oracle: &WeqOracle,
    n_corpus: &[CatObject],
) -> CheckReport {
    let start = Instant::now();
    let name = format!("homotopy-idempotent({})", s.name);
    let Some(adj) = &s.left else {
        return CheckReport::skipped(
            name,
            "the left adjoint of this string has no finite construction at truncation, so the \
             derived counit cannot be built",
        )
        .timed(start);
    };
    let mut unknowns: Vec<String> = Vec::new();
    let mut run = || -> Result<Option<String>> {
        for x in n_corpus {
            let fx = s.f.on_object(x)?;
            if let Some(w) = repl.check_component(&fx, oracle)? {
                return Ok(Some(w));
            }
            let r = repl.at(&fx)?;
            let eh = epsilon_h(s, repl, x)?;
            let f_eh = s.f.on_map(&eh)?;
            let unit_c = adj.unit.component_at(&r.source())?;
            if !unit_c.then(&f_eh)?.same_map(&r) {
                return Ok(Some(format!(
                    "F(derived counit)∘unit ≠ replacement at `{}`",
                    x.name()
                )));
            }
            let verdict_of = |m: &CatMap| -> WeqVerdict {
                match m {
                    CatMap::Space(p) => oracle.verdict(p),
                    CatMap::Marked(_) => {
                        WeqVerdict::Unknown("oracle does not evaluate marked maps".into())
                    }
                }
            };
            let v1 = verdict_of(&f_eh);
            let v2 = verdict_of(&unit_c);
            if !v1.compatible(&v2) {
                return Ok(Some(format!(
                    "verdicts disagree at `{}`: F(derived counit) is {} but the unit is {}",
                    x.name(),
                    v1.tag(),
                    v2.tag()
                )));
            }
            if v1.is_not_weq() || v2.is_not_weq() {
                return Ok(Some(format!(
                    "derived-unit map refuted as a weak equivalence at `{}`",
                    x.name()
                )));
            }
            if let WeqVerdict::Unknown(reason) = &v1 {
                unknowns.push(format!("F(derived counit) at `{}`: {reason}", x.name()));
            }
            if let WeqVerdict::Unknown(reason) = &v2 {
                unknowns.push(format!("unit at `{}`: {reason}", x.name()));
            }
        }
        Ok(None)
    };
    let report = match run() {
        Ok(None) if unknowns.is_empty() => CheckReport::pass(
            name,
            format!(
                "derived counit and unit certified weak equivalences with exact factorization on {} objects",
                n_corpus.len()
            ),
        ),
        Ok(None) => CheckReport::inconclusive(
            name,
            format!(
                "factorizations exact, no refutations, but {} verdicts were unknown",
                unknowns.len()
            ),
            unknowns.join("; "),
        ),
        Ok(Some(w)) => CheckReport::fail(name, "homotopy idempotency falsified", w),
        Err(e) => CheckReport::fail(name, "audit aborted by engine error", e.to_string()),
    };
    report.timed(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::chain_representable;
    use crate::presheaf::{CellRef, Presheaf};
    use crate::report::AuditStatus;

    fn simplicial_corpus(n: usize) -> Vec<CatObject> {
        let s = simplex(n);
        let mut out = vec![
            CatObject::Space(Presheaf::terminal(s.clone())),
            CatObject::Space(Presheaf::empty(s.clone())),
        ];
        for k in 0..=n.min(2) {
            out.push(CatObject::Space(
                chain_representable(&s, k).unwrap(),
            ));
        }
        out
    }

    fn simplicial_maps(corpus: &[CatObject]) -> Vec<CatMap> {
        let mut maps = Vec::new();
        for x in corpus {
            for y in corpus {
                let homs = cat_hom_set(x, y).unwrap();
                maps.extend(homs.into_iter().take(2));
            }
        }
        maps
    }

    fn bisimplicial_corpus(n: usize) -> Vec<CatObject> {
        let prod = bisimplex(n);
        let mut out = vec![CatObject::Space(Presheaf::terminal(prod.clone()))];
        for o in prod.objects().take(4) {
            out.push(CatObject::Space(Presheaf::yoneda(prod.clone(), o)));
        }
        out
    }

    fn cubical_corpus(k: usize) -> Vec<CatObject> {
        let cube = dedekind_cubes(k);
        let mut out = vec![CatObject::Space(Presheaf::terminal(cube.clone()))];
        for o in cube.objects() {
            out.push(CatObject::Space(Presheaf::yoneda(cube.clone(), o)));
        }
        out
    }

    fn marked_corpus(n: usize) -> Vec<CatObject> {
        use crate::marked::MarkedSet;
        let mut out = Vec::new();
        for x in simplicial_corpus(n) {
            let CatObject::Space(p) = &x else { unreachable!() };
            out.push(CatObject::Marked(MarkedSet::flat(p).unwrap()));
            out.push(CatObject::Marked(MarkedSet::sharp(p).unwrap()));
        }
        out
    }

    fn some_pairs(dom: &[CatObject], cod: &[CatObject]) -> Vec<(CatObject, CatObject)> {
        let mut pairs = Vec::new();
        for (i, x) in dom.iter().enumerate() {
            pairs.push((x.clone(), cod[i % cod.len()].clone()));
            pairs.push((x.clone(), cod[(i + 1) % cod.len()].clone()));
        }
        pairs
    }

    #[test]
    fn identity_string_passes_every_audit() {
        let s = identity_string(CatDesc::Spaces(simplex(2)));
        let corpus = simplicial_corpus(2);
        let maps = simplicial_maps(&corpus);
        let adj = s.left.as_ref().unwrap();
        let tri = verify_triangle_identities(adj, &corpus, &corpus, &maps, &maps);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());
        let ex = check_adjunction_exactness(adj, &some_pairs(&corpus, &corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());
        let ff = check_fully_faithful_string(&s, &corpus);
        assert_eq!(ff.report.status, AuditStatus::Pass, "{}", ff.report.line());
        assert_eq!(ff.left_fully_faithful, Some(true));
        assert_eq!(ff.right_fully_faithful, Some(true));
        let idem = check_idempotent(&s, &corpus);
        assert_eq!(idem.idempotent, Some(true), "{}", idem.report.line());
        let hi = check_homotopy_idempotent(
            &s,
            &CofibrantReplacement::identity(),
            &WeqOracle::default(),
            &corpus,
        );
        assert_eq!(hi.status, AuditStatus::Pass, "{}", hi.line());
        let comp = compose_adjunction(&s).unwrap();
        let tri2 = verify_triangle_identities(&comp, &corpus, &corpus, &[], &[]);
        assert_eq!(tri2.status, AuditStatus::Pass, "{}", tri2.line());
    }

    #[test]
    fn row_zero_string_is_fully_faithful_and_idempotent() {
        let s = bisimplicial_string(2).unwrap();
        let m_corpus = simplicial_corpus(2);
        let n_corpus = bisimplicial_corpus(2);
        let m_maps = simplicial_maps(&m_corpus);

        let left = s.left.as_ref().unwrap();
        let tri = verify_triangle_identities(left, &m_corpus, &n_corpus, &m_maps, &[]);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());
        let right = s.right.as_ref().unwrap();
        let tri = verify_triangle_identities(right, &n_corpus, &m_corpus, &[], &m_maps);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());

        let ff = check_fully_faithful_string(&s, &m_corpus);
        assert_eq!(ff.report.status, AuditStatus::Pass, "{}", ff.report.line());
        assert_eq!(ff.left_fully_faithful, Some(true));
        assert_eq!(ff.right_fully_faithful, Some(true));

        let idem = check_idempotent(&s, &n_corpus);
        assert_eq!(idem.report.status, AuditStatus::Pass, "{}", idem.report.line());
        assert_eq!(idem.idempotent, Some(true));

        let hi = check_homotopy_idempotent(
            &s,
            &CofibrantReplacement::identity(),
            &WeqOracle::default(),
            &n_corpus,
        );
        assert_eq!(hi.status, AuditStatus::Pass, "{}", hi.line());
    }

    #[test]
    fn corrupted_unit_fails_with_a_witness() {
        let s = bisimplicial_string(1).unwrap();
        let m_corpus = simplicial_corpus(1);
        let n_corpus = bisimplicial_corpus(1);
        let m_maps = simplicial_maps(&m_corpus);
        let bad = s.left.as_ref().unwrap().with_corrupted_unit();
        let report = verify_triangle_identities(&bad, &m_corpus, &n_corpus, &m_maps, &[]);
        assert_eq!(report.status, AuditStatus::Fail, "{}", report.line());
        assert!(report.witness.is_some());
    }

    #[test]
    fn exactness_holds_for_row_zero_kan_extensions() {
        let s = bisimplicial_string(2).unwrap();
        let m_corpus = simplicial_corpus(2);
        let n_corpus = bisimplicial_corpus(2);
        let left = s.left.as_ref().unwrap();
        let ex = check_adjunction_exactness(left, &some_pairs(&m_corpus, &n_corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());
        let right = s.right.as_ref().unwrap();
        let ex = check_adjunction_exactness(right, &some_pairs(&n_corpus, &m_corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());
    }

    #[test]
    fn composite_adjunction_passes_triangle_identities() {
        for s in [bisimplicial_string(1).unwrap(), marked_string(1).unwrap()] {
            let comp = compose_adjunction(&s).unwrap();
            let corpus = simplicial_corpus(1);
            let maps = simplicial_maps(&corpus);
            let tri = verify_triangle_identities(&comp, &corpus, &corpus, &maps, &maps);
            assert_eq!(tri.status, AuditStatus::Pass, "{} / {}", s.name, tri.line());
        }
    }

    #[test]
    fn marked_string_audits_all_pass() {
        let s = marked_string(2).unwrap();
        let m_corpus = simplicial_corpus(2);
        let n_corpus = marked_corpus(2);
        let m_maps = simplicial_maps(&m_corpus);

        let left = s.left.as_ref().unwrap();
        let tri = verify_triangle_identities(left, &m_corpus, &n_corpus, &m_maps, &[]);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());
        let right = s.right.as_ref().unwrap();
        let tri = verify_triangle_identities(right, &n_corpus, &m_corpus, &[], &m_maps);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());

        let ff = check_fully_faithful_string(&s, &m_corpus);
        assert_eq!(ff.report.status, AuditStatus::Pass, "{}", ff.report.line());
        assert_eq!(ff.left_fully_faithful, Some(true));
        assert_eq!(ff.right_fully_faithful, Some(true));

        let idem = check_idempotent(&s, &n_corpus);
        assert_eq!(idem.idempotent, Some(true), "{}", idem.report.line());

        let ex = check_adjunction_exactness(left, &some_pairs(&m_corpus, &n_corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());
        let ex = check_adjunction_exactness(right, &some_pairs(&n_corpus, &m_corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());

        let hi = check_homotopy_idempotent(
            &s,
            &CofibrantReplacement::identity(),
            &WeqOracle::default(),
            &n_corpus,
        );
        assert_eq!(hi.status, AuditStatus::Pass, "{}", hi.line());
    }

    #[test]
    fn cube_inclusion_string_verdicts_are_consistent() {
        let s = cube_inclusion_string(2).unwrap();
        let conn = cube_conn(2);
        let mut m_corpus = vec![CatObject::Space(Presheaf::terminal(conn.clone()))];
        for o in conn.objects() {
            m_corpus.push(CatObject::Space(Presheaf::yoneda(conn.clone(), o)));
        }
        let n_corpus = cubical_corpus(2);

        let left = s.left.as_ref().unwrap();
        let tri = verify_triangle_identities(left, &m_corpus, &n_corpus, &[], &[]);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());
        let right = s.right.as_ref().unwrap();
        let tri = verify_triangle_identities(right, &n_corpus, &m_corpus, &[], &[]);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());

        // Hom-set bijections cross-validate both extensions independently
        // of the unit/counit components.
        let ex = check_adjunction_exactness(left, &some_pairs(&m_corpus, &n_corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());
        let ex = check_adjunction_exactness(right, &some_pairs(&n_corpus, &m_corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());

        // The inclusion is not full (the coordinatewise min/max sorting map
        // on the square is not generated by faces, degeneracies and
        // connections), so neither extension is fully faithful — but the
        // two flanks must agree about it.
        let ff = check_fully_faithful_string(&s, &m_corpus);
        assert_eq!(ff.report.status, AuditStatus::Pass, "{}", ff.report.line());
        assert_eq!(ff.left_fully_faithful, Some(false));
        assert_eq!(ff.right_fully_faithful, Some(false));

        // Pointwise idempotency genuinely fails here, and the audit must
        // keep detecting it: at the square's representable the right-hand
        // square map is invertible while the left-hand one is not. The
        // "all four or none" dichotomy is a statement about natural
        // isomorphisms, and this string shows it is not objectwise.
        let idem = check_idempotent(&s, &n_corpus);
        assert_eq!(idem.report.status, AuditStatus::Fail, "{}", idem.report.line());
        let witness = idem.report.witness.as_deref().unwrap_or("");
        assert!(witness.contains("y([1]^2)"), "unexpected witness: {witness}");
    }

    #[test]
    fn triangulation_string_has_a_fully_faithful_right_flank() {
        let s = triangulation_string(2, 2).unwrap();
        let n_corpus = cubical_corpus(2);
        let m_corpus = simplicial_corpus(2);

        let right = s.right.as_ref().unwrap();
        let tri = verify_triangle_identities(right, &n_corpus, &m_corpus, &[], &[]);
        assert_eq!(tri.status, AuditStatus::Pass, "{}", tri.line());

        let ex = check_adjunction_exactness(right, &some_pairs(&n_corpus, &m_corpus));
        assert_eq!(ex.status, AuditStatus::Pass, "{}", ex.line());

        let ff = check_fully_faithful_string(&s, &m_corpus);
        assert_eq!(ff.report.status, AuditStatus::Pass, "{}", ff.report.line());
        assert_eq!(ff.left_fully_faithful, None);
        assert_eq!(ff.right_fully_faithful, Some(true));

        let idem = check_idempotent(&s, &n_corpus);
        assert_eq!(idem.idempotent, Some(true), "{}", idem.report.line());

        let hi = check_homotopy_idempotent(
            &s,
            &CofibrantReplacement::identity(),
            &WeqOracle::default(),
            &n_corpus,
        );
        assert_eq!(hi.status, AuditStatus::SkippedUnimplementable, "{}", hi.line());
    }

    #[test]
    fn sub_boundary_objects_also_satisfy_counit_invertibility() {
        // The right-flank counit of the triangulation string at a
        // non-representable object.
        let s = triangulation_string(2, 2).unwrap();
        let simp = simplex(2);
        let d2 = chain_representable(&simp, 2).unwrap();
        let o1 = simp.object_named("[1]").unwrap();
        let seeds: Vec<CellRef> = (0..d2.cells(o1))
            .map(|idx| CellRef { obj: o1, idx })
            .collect();
        let (bd, _) = d2.sub_generated("∂Δ[2]", &seeds).unwrap();
        let right = s.right.as_ref().unwrap();
        let c = right.counit.component_at(&CatObject::Space(bd)).unwrap();
        assert!(c.is_iso());
    }

    #[test]
    fn idempotency_verdict_is_stable_under_identity_rewrapping() {
        // Wrapping the middle functor in identity composites produces an
        // isomorphic string; verdicts must not change.
        let s = bisimplicial_string(1).unwrap();
        let n_corpus = bisimplicial_corpus(1);
        let base = check_idempotent(&s, &n_corpus);
        let id_m: Arc<Functor> = Arc::new(Functor::Identity(s.outer_desc()));
        let wrapped = AdjointString {
            name: format!("{} (rewrapped)", s.name),
            f: Functor::compose(s.f.clone(), id_m).unwrap(),
            left: s.left.clone(),
            right: s.right.clone(),
        };
        let rewrapped = check_idempotent(&wrapped, &n_corpus);
        assert_eq!(base.idempotent, rewrapped.idempotent);
        assert_eq!(base.report.status, rewrapped.report.status);
    }
}
