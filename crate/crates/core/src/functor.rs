//! An object language for audited functors and natural transformations.
//!
//! The audits in this crate quantify over functors — restriction and both
//! Kan extensions along a base functor, triangulation and cubification,
//! the marking forget/flat/sharp triple, identities, and composites — and
//! over the units and counits that tie them into adjunctions. This module
//! gives those a common runtime representation: [`CatObject`]/[`CatMap`]
//! for the things functors act on, [`Functor`] for the functors
//! themselves, and [`NatTrans`] for transformations whose components can
//! be *computed* at any object and then checked (endpoints, naturality)
//! rather than trusted.
//!
//! Everything here is deliberately concrete: applying a functor really
//! runs the underlying construction, and every component of a natural
//! transformation is re-verified against the functors it claims to
//! connect. A deliberately corrupted transformation is provided as a
//! negative control for the audit layer.

use std::sync::Arc;

use crate::cubes;
use crate::error::{EngineError, Result};
use crate::fincat::{FinCat, FinFunctor};
use crate::kan;
use crate::marked::{marked_hom_set, MarkedMap, MarkedSet};
use crate::presheaf::{Presheaf, PresheafMap};
use crate::search::hom_set;

/// A category in which audited objects live.
#[derive(Clone)]
pub enum CatDesc {
    /// Presheaves over a finite base.
    Spaces(Arc<FinCat>),
    /// Marked objects (presheaf plus marked edges) over a chain base.
    Marked(Arc<FinCat>),
}

impl CatDesc {
    pub fn same(&self, other: &CatDesc) -> bool {
        match (self, other) {
            (CatDesc::Spaces(a), CatDesc::Spaces(b)) => a == b,
            (CatDesc::Marked(a), CatDesc::Marked(b)) => a == b,
            _ => false,
        }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        match self {
            CatDesc::Spaces(b) | CatDesc::Marked(b) => b,
        }
    }

    pub fn contains(&self, x: &CatObject) -> bool {
        match (self, x) {
            (CatDesc::Spaces(b), CatObject::Space(p)) => **b == **p.base(),
            (CatDesc::Marked(b), CatObject::Marked(m)) => **b == **m.space.base(),
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CatDesc::Spaces(b) => format!("presheaves({})", b.name()),
            CatDesc::Marked(b) => format!("marked({})", b.name()),
        }
    }
}

/// An object of one of the audited categories.
#[derive(Clone)]
pub enum CatObject {
    Space(Arc<Presheaf>),
    Marked(MarkedSet),
}

impl CatObject {
    pub fn name(&self) -> String {
        match self {
            CatObject::Space(p) => p.name().to_string(),
            CatObject::Marked(m) => m.name(),
        }
    }

    pub fn same_object(&self, other: &CatObject) -> bool {
        match (self, other) {
            (CatObject::Space(a), CatObject::Space(b)) => a.same_presheaf(b),
            (CatObject::Marked(a), CatObject::Marked(b)) => a.same_marked_set(b),
            _ => false,
        }
    }

    pub fn total_cells(&self) -> usize {
        match self {
            CatObject::Space(p) => p.total_cells(),
            CatObject::Marked(m) => m.space.total_cells(),
        }
    }

    pub fn space(&self) -> Result<&Arc<Presheaf>> {
        match self {
            CatObject::Space(p) => Ok(p),
            CatObject::Marked(m) => Err(EngineError::InvalidInput(format!(
                "expected a plain presheaf, got the marked object `{}`",
                m.name()
            ))),
        }
    }

    pub fn marked(&self) -> Result<&MarkedSet> {
        match self {
            CatObject::Marked(m) => Ok(m),
            CatObject::Space(p) => Err(EngineError::InvalidInput(format!(
                "expected a marked object, got the plain presheaf `{}`",
                p.name()
            ))),
        }
    }
}

/// A map in one of the audited categories.
#[derive(Clone)]
pub enum CatMap {
    Space(PresheafMap),
    Marked(MarkedMap),
}

impl CatMap {
    pub fn identity(x: &CatObject) -> CatMap {
        match x {
            CatObject::Space(p) => CatMap::Space(PresheafMap::identity(p)),
            CatObject::Marked(m) => CatMap::Marked(MarkedMap::identity(m)),
        }
    }

    pub fn source(&self) -> CatObject {
        match self {
            CatMap::Space(f) => CatObject::Space(f.source.clone()),
            CatMap::Marked(f) => CatObject::Marked(f.source.clone()),
        }
    }

    pub fn target(&self) -> CatObject {
        match self {
            CatMap::Space(f) => CatObject::Space(f.target.clone()),
            CatMap::Marked(f) => CatObject::Marked(f.target.clone()),
        }
    }

    pub fn then(&self, g: &CatMap) -> Result<CatMap> {
        match (self, g) {
            (CatMap::Space(a), CatMap::Space(b)) => Ok(CatMap::Space(a.then(b)?)),
            (CatMap::Marked(a), CatMap::Marked(b)) => Ok(CatMap::Marked(a.then(b)?)),
            _ => Err(EngineError::InvalidInput(
                "cannot compose a plain map with a marked map".into(),
            )),
        }
    }

    pub fn is_iso(&self) -> bool {
        match self {
            CatMap::Space(f) => f.is_iso(),
            CatMap::Marked(f) => f.is_iso(),
        }
    }

    pub fn is_mono(&self) -> bool {
        match self {
            CatMap::Space(f) => f.is_mono(),
            CatMap::Marked(f) => f.is_mono(),
        }
    }

    /// Cell-level equality of maps (endpoints must match semantically).
    pub fn same_map(&self, other: &CatMap) -> bool {
        match (self, other) {
            (CatMap::Space(a), CatMap::Space(b)) => a == b,
            (CatMap::Marked(a), CatMap::Marked(b)) => {
                a.map == b.map
                    && a.source.same_marked_set(&b.source)
                    && a.target.same_marked_set(&b.target)
            }
            _ => false,
        }
    }

    pub fn space(&self) -> Result<&PresheafMap> {
        match self {
            CatMap::Space(f) => Ok(f),
            CatMap::Marked(_) => Err(EngineError::InvalidInput(
                "expected a plain presheaf map, got a marked map".into(),
            )),
        }
    }

    /// The underlying presheaf map, dropping any marking data.
    pub fn underlying(&self) -> &PresheafMap {
        match self {
            CatMap::Space(f) => f,
            CatMap::Marked(f) => &f.map,
        }
    }

    pub fn describe(&self) -> String {
        format!("{} → {}", self.source().name(), self.target().name())
    }
}

/// All maps `x → y`, enumerated in a stable order.
pub fn cat_hom_set(x: &CatObject, y: &CatObject) -> Result<Vec<CatMap>> {
    match (x, y) {
        (CatObject::Space(a), CatObject::Space(b)) => {
            Ok(hom_set(a, b)?.into_iter().map(CatMap::Space).collect())
        }
        (CatObject::Marked(a), CatObject::Marked(b)) => {
            Ok(marked_hom_set(a, b)?.into_iter().map(CatMap::Marked).collect())
        }
        _ => Err(EngineError::InvalidInput(
            "hom-set endpoints live in different kinds of category".into(),
        )),
    }
}

/// A computable functor between audited categories. Applying it really
/// runs the underlying construction.
#[derive(Clone)]
pub enum Functor {
    Identity(CatDesc),
    /// Precomposition with a base functor: presheaves over its target to
    /// presheaves over its source.
    Restrict(Arc<FinFunctor>),
    /// Left Kan extension along a base functor.
    Lan(Arc<FinFunctor>),
    /// Right Kan extension along a base functor.
    Ran(Arc<FinFunctor>),
    /// Cube-shaped presheaves to chain-shaped ones.
    Triangulate {
        cube: Arc<FinCat>,
        simp: Arc<FinCat>,
    },
    /// Chain-shaped presheaves to cube-shaped ones.
    Cubify {
        simp: Arc<FinCat>,
        cube: Arc<FinCat>,
    },
    /// Marked objects to their underlying presheaves.
    Forget { simp: Arc<FinCat> },
    /// Minimal marking.
    Flat { simp: Arc<FinCat> },
    /// Maximal marking.
    Sharp { simp: Arc<FinCat> },
    /// Apply `first`, then `second`.
    Compose {
        first: Arc<Functor>,
        second: Arc<Functor>,
    },
}

impl Functor {
    pub fn compose(first: Arc<Functor>, second: Arc<Functor>) -> Result<Arc<Functor>> {
        if !first.target().same(&second.source()) {
            return Err(EngineError::InvalidInput(format!(
                "cannot compose {} : … → {} with {} : {} → …",
                first.describe(),
                first.target().describe(),
                second.describe(),
                second.source().describe()
            )));
        }
        Ok(Arc::new(Functor::Compose { first, second }))
    }

    pub fn source(&self) -> CatDesc {
        match self {
            Functor::Identity(d) => d.clone(),
            Functor::Restrict(f) => CatDesc::Spaces(f.target().clone()),
            Functor::Lan(f) | Functor::Ran(f) => CatDesc::Spaces(f.source().clone()),
            Functor::Triangulate { cube, .. } => CatDesc::Spaces(cube.clone()),
            Functor::Cubify { simp, .. } => CatDesc::Spaces(simp.clone()),
            Functor::Forget { simp } => CatDesc::Marked(simp.clone()),
            Functor::Flat { simp } | Functor::Sharp { simp } => CatDesc::Spaces(simp.clone()),
            Functor::Compose { first, .. } => first.source(),
        }
    }

    pub fn target(&self) -> CatDesc {
        match self {
            Functor::Identity(d) => d.clone(),
            Functor::Restrict(f) => CatDesc::Spaces(f.source().clone()),
            Functor::Lan(f) | Functor::Ran(f) => CatDesc::Spaces(f.target().clone()),
            Functor::Triangulate { simp, .. } => CatDesc::Spaces(simp.clone()),
            Functor::Cubify { cube, .. } => CatDesc::Spaces(cube.clone()),
            Functor::Forget { simp } => CatDesc::Spaces(simp.clone()),
            Functor::Flat { simp } | Functor::Sharp { simp } => CatDesc::Marked(simp.clone()),
            Functor::Compose { second, .. } => second.target(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Functor::Identity(_) => "id".into(),
            Functor::Restrict(f) => format!("restrict({})", f.name()),
            Functor::Lan(f) => format!("lan({})", f.name()),
            Functor::Ran(f) => format!("ran({})", f.name()),
            Functor::Triangulate { .. } => "triangulate".into(),
            Functor::Cubify { .. } => "cubify".into(),
            Functor::Forget { .. } => "forget-marking".into(),
            Functor::Flat { .. } => "flat".into(),
            Functor::Sharp { .. } => "sharp".into(),
            Functor::Compose { first, second } => {
                format!("{} ∘ {}", second.describe(), first.describe())
            }
        }
    }

    fn check_source(&self, x: &CatObject) -> Result<()> {
        if self.source().contains(x) {
            Ok(())
        } else {
            Err(EngineError::InvalidInput(format!(
                "`{}` is not an object of {}, the source of {}",
                x.name(),
                self.source().describe(),
                self.describe()
            )))
        }
    }

    pub fn on_object(&self, x: &CatObject) -> Result<CatObject> {
        self.check_source(x)?;
        match (self, x) {
            (Functor::Identity(_), x) => Ok(x.clone()),
            (Functor::Restrict(f), CatObject::Space(p)) => {
                Ok(CatObject::Space(kan::restrict(f, p)?))
            }
            (Functor::Lan(f), CatObject::Space(p)) => {
                Ok(CatObject::Space(kan::lan(f, p)?.object))
            }
            (Functor::Ran(f), CatObject::Space(p)) => {
                Ok(CatObject::Space(kan::ran(f, p)?.object))
            }
            (Functor::Triangulate { simp, .. }, CatObject::Space(p)) => {
                Ok(CatObject::Space(cubes::triangulate(p, simp)?.object))
            }
            (Functor::Cubify { cube, .. }, CatObject::Space(p)) => {
                Ok(CatObject::Space(cubes::cubify(p, cube)?.object))
            }
            (Functor::Forget { .. }, CatObject::Marked(m)) => Ok(CatObject::Space(m.forget())),
            (Functor::Flat { .. }, CatObject::Space(p)) => {
                Ok(CatObject::Marked(MarkedSet::flat(p)?))
            }
            (Functor::Sharp { .. }, CatObject::Space(p)) => {
                Ok(CatObject::Marked(MarkedSet::sharp(p)?))
            }
            (Functor::Compose { first, second }, x) => second.on_object(&first.on_object(x)?),
            _ => Err(EngineError::Internal(
                "object kind does not match functor source after the source check".into(),
            )),
        }
    }

    pub fn on_map(&self, f: &CatMap) -> Result<CatMap> {
        self.check_source(&f.source())?;
        match (self, f) {
            (Functor::Identity(_), f) => Ok(f.clone()),
            (Functor::Restrict(g), CatMap::Space(m)) => {
                Ok(CatMap::Space(kan::restrict_map(g, m)?))
            }
            (Functor::Lan(g), CatMap::Space(m)) => {
                let lx = kan::lan(g, &m.source)?;
                let ly = kan::lan(g, &m.target)?;
                Ok(CatMap::Space(lx.apply_map(&ly, m)?))
            }
            (Functor::Ran(g), CatMap::Space(m)) => {
                let rx = kan::ran(g, &m.source)?;
                let ry = kan::ran(g, &m.target)?;
                Ok(CatMap::Space(rx.apply_map(&ry, m)?))
            }
            (Functor::Triangulate { simp, .. }, CatMap::Space(m)) => {
                let tx = cubes::triangulate(&m.source, simp)?;
                let ty = cubes::triangulate(&m.target, simp)?;
                Ok(CatMap::Space(cubes::triangulate_map(&tx, &ty, m)?))
            }
            (Functor::Cubify { cube, .. }, CatMap::Space(m)) => {
                let cx = cubes::cubify(&m.source, cube)?;
                let cy = cubes::cubify(&m.target, cube)?;
                Ok(CatMap::Space(cubes::cubify_map(&cx, &cy, m)?))
            }
            (Functor::Forget { .. }, CatMap::Marked(m)) => Ok(CatMap::Space(m.map.clone())),
            (Functor::Flat { .. }, CatMap::Space(m)) => {
                let s = MarkedSet::flat(&m.source)?;
                let t = MarkedSet::flat(&m.target)?;
                Ok(CatMap::Marked(MarkedMap::new(s, t, m.clone())?))
            }
            (Functor::Sharp { .. }, CatMap::Space(m)) => {
                let s = MarkedSet::sharp(&m.source)?;
                let t = MarkedSet::sharp(&m.target)?;
                Ok(CatMap::Marked(MarkedMap::new(s, t, m.clone())?))
            }
            (Functor::Compose { first, second }, f) => second.on_map(&first.on_map(f)?),
            _ => Err(EngineError::Internal(
                "map kind does not match functor source after the source check".into(),
            )),
        }
    }

    /// Batched [`Functor::on_map`]: identical results, but per-object
    /// constructions (extensions, triangulations, cubifications) are
    /// computed once per distinct endpoint instead of once per map.
    pub fn on_maps(&self, maps: &[CatMap]) -> Result<Vec<CatMap>> {
        fn cached<T>(
            cache: &mut Vec<(Arc<Presheaf>, T)>,
            x: &Arc<Presheaf>,
            build: impl FnOnce(&Arc<Presheaf>) -> Result<T>,
        ) -> Result<usize> {
            if let Some(i) = cache.iter().position(|(p, _)| p.same_presheaf(x)) {
                return Ok(i);
            }
            cache.push((x.clone(), build(x)?));
            Ok(cache.len() - 1)
        }
        fn spaces<'a>(this: &Functor, maps: &'a [CatMap]) -> Result<Vec<&'a PresheafMap>> {
            maps.iter()
                .map(|f| {
                    this.check_source(&f.source())?;
                    match f {
                        CatMap::Space(m) => Ok(m),
                        CatMap::Marked(_) => Err(EngineError::Internal(
                            "map kind does not match functor source after the source check"
                                .into(),
                        )),
                    }
                })
                .collect()
        }
        match self {
            Functor::Lan(g) => {
                let ms = spaces(self, maps)?;
                let mut cache: Vec<(Arc<Presheaf>, kan::LeftExtension)> = Vec::new();
                let mut out = Vec::with_capacity(ms.len());
                for m in ms {
                    let si = cached(&mut cache, &m.source, |x| kan::lan(g, x))?;
                    let ti = cached(&mut cache, &m.target, |x| kan::lan(g, x))?;
                    out.push(CatMap::Space(cache[si].1.apply_map(&cache[ti].1, m)?));
                }
                Ok(out)
            }
            Functor::Ran(g) => {
                let ms = spaces(self, maps)?;
                let mut cache: Vec<(Arc<Presheaf>, kan::RightExtension)> = Vec::new();
                let mut out = Vec::with_capacity(ms.len());
                for m in ms {
                    let si = cached(&mut cache, &m.source, |x| kan::ran(g, x))?;
                    let ti = cached(&mut cache, &m.target, |x| kan::ran(g, x))?;
                    out.push(CatMap::Space(cache[si].1.apply_map(&cache[ti].1, m)?));
                }
                Ok(out)
            }
            Functor::Triangulate { simp, .. } => {
                let ms = spaces(self, maps)?;
                let mut cache: Vec<(Arc<Presheaf>, cubes::Triangulation)> = Vec::new();
                let mut out = Vec::with_capacity(ms.len());
                for m in ms {
                    let si = cached(&mut cache, &m.source, |x| cubes::triangulate(x, simp))?;
                    let ti = cached(&mut cache, &m.target, |x| cubes::triangulate(x, simp))?;
                    out.push(CatMap::Space(cubes::triangulate_map(
                        &cache[si].1,
                        &cache[ti].1,
                        m,
                    )?));
                }
                Ok(out)
            }
            Functor::Cubify { cube, .. } => {
                let ms = spaces(self, maps)?;
                let mut cache: Vec<(Arc<Presheaf>, cubes::Cubification)> = Vec::new();
                let mut out = Vec::with_capacity(ms.len());
                for m in ms {
                    let si = cached(&mut cache, &m.source, |x| cubes::cubify(x, cube))?;
                    let ti = cached(&mut cache, &m.target, |x| cubes::cubify(x, cube))?;
                    out.push(CatMap::Space(cubes::cubify_map(
                        &cache[si].1,
                        &cache[ti].1,
                        m,
                    )?));
                }
                Ok(out)
            }
            Functor::Compose { first, second } => second.on_maps(&first.on_maps(maps)?),
            _ => maps.iter().map(|f| self.on_map(f)).collect(),
        }
    }

    /// Functoriality spot-check: `F(g ∘ f) = F(g) ∘ F(f)` for each
    /// composable pair, plus preservation of identities at each pair's
    /// endpoints.
    pub fn check_functorial(&self, pairs: &[(CatMap, CatMap)]) -> Result<Option<String>> {
        for (i, (f, g)) in pairs.iter().enumerate() {
            let gf = f.then(g)?;
            let lhs = self.on_map(&gf)?;
            let rhs = self.on_map(f)?.then(&self.on_map(g)?)?;
            if !lhs.same_map(&rhs) {
                return Ok(Some(format!(
                    "{} breaks composition on pair #{i} ({}; then {})",
                    self.describe(),
                    f.describe(),
                    g.describe()
                )));
            }
            let x = f.source();
            let idx = self.on_map(&CatMap::identity(&x))?;
            if !idx.same_map(&CatMap::identity(&self.on_object(&x)?)) {
                return Ok(Some(format!(
                    "{} breaks identity at `{}`",
                    self.describe(),
                    x.name()
                )));
            }
        }
        Ok(None)
    }
}

/// How a natural transformation computes its components.
#[derive(Clone)]
enum NatKind {
    /// The component at `X` is the identity table from `S(X)` to `T(X)`;
    /// valid when both sides have the same underlying presheaf (markings
    /// may grow along the component).
    UnderlyingIdentity,
    /// `X → f^*(f_!(X))`.
    LanUnit(Arc<FinFunctor>),
    /// `f_!(f^*(Y)) → Y`.
    LanCounit(Arc<FinFunctor>),
    /// `Y → f_*(f^*(Y))`.
    RanUnit(Arc<FinFunctor>),
    /// `f^*(f_*(X)) → X`.
    RanCounit(Arc<FinFunctor>),
    /// `Y → cubify(triangulate(Y))` for cube-shaped `Y`.
    TcUnit {
        cube: Arc<FinCat>,
        simp: Arc<FinCat>,
    },
    /// `triangulate(cubify(X)) → X` for chain-shaped `X`.
    TcCounit {
        cube: Arc<FinCat>,
        simp: Arc<FinCat>,
    },
    /// `post(inner at pre(X))`.
    Whiskered {
        pre: Arc<Functor>,
        inner: Box<NatTrans>,
        post: Arc<Functor>,
    },
    /// Component of `first`, then component of `second`.
    VComposite(Box<NatTrans>, Box<NatTrans>),
    /// Negative control: the inner component precomposed with the first
    /// non-identity endomorphism that changes it, when one exists.
    Corrupted(Box<NatTrans>),
}

/// A natural transformation with computable, re-checked components.
#[derive(Clone)]
pub struct NatTrans {
    pub name: String,
    pub source: Arc<Functor>,
    pub target: Arc<Functor>,
    kind: NatKind,
}

impl NatTrans {
    fn new(name: String, source: Arc<Functor>, target: Arc<Functor>, kind: NatKind) -> NatTrans {
        NatTrans {
            name,
            source,
            target,
            kind,
        }
    }

    /// A transformation whose every component is the identity on
    /// underlying cells. Used where a unit or counit is an identity by
    /// construction (forgetting a marking put there by flat/sharp).
    pub fn underlying_identity(
        name: impl Into<String>,
        source: Arc<Functor>,
        target: Arc<Functor>,
    ) -> NatTrans {
        NatTrans::new(name.into(), source, target, NatKind::UnderlyingIdentity)
    }

    pub fn lan_unit(f: Arc<FinFunctor>) -> Result<NatTrans> {
        let id = Arc::new(Functor::Identity(CatDesc::Spaces(f.source().clone())));
        let lan = Arc::new(Functor::Lan(f.clone()));
        let restrict = Arc::new(Functor::Restrict(f.clone()));
        Ok(NatTrans::new(
            format!("unit(lan({0}) ⊣ restrict({0}))", f.name()),
            id,
            Functor::compose(lan, restrict)?,
            NatKind::LanUnit(f),
        ))
    }

    pub fn lan_counit(f: Arc<FinFunctor>) -> Result<NatTrans> {
        let id = Arc::new(Functor::Identity(CatDesc::Spaces(f.target().clone())));
        let lan = Arc::new(Functor::Lan(f.clone()));
        let restrict = Arc::new(Functor::Restrict(f.clone()));
        Ok(NatTrans::new(
            format!("counit(lan({0}) ⊣ restrict({0}))", f.name()),
            Functor::compose(restrict, lan)?,
            id,
            NatKind::LanCounit(f),
        ))
    }

    pub fn ran_unit(f: Arc<FinFunctor>) -> Result<NatTrans> {
        let id = Arc::new(Functor::Identity(CatDesc::Spaces(f.target().clone())));
        let ran = Arc::new(Functor::Ran(f.clone()));
        let restrict = Arc::new(Functor::Restrict(f.clone()));
        Ok(NatTrans::new(
            format!("unit(restrict({0}) ⊣ ran({0}))", f.name()),
            id,
            Functor::compose(restrict, ran)?,
            NatKind::RanUnit(f),
        ))
    }

    pub fn ran_counit(f: Arc<FinFunctor>) -> Result<NatTrans> {
        let id = Arc::new(Functor::Identity(CatDesc::Spaces(f.source().clone())));
        let ran = Arc::new(Functor::Ran(f.clone()));
        let restrict = Arc::new(Functor::Restrict(f.clone()));
        Ok(NatTrans::new(
            format!("counit(restrict({0}) ⊣ ran({0}))", f.name()),
            Functor::compose(ran, restrict)?,
            id,
            NatKind::RanCounit(f),
        ))
    }

    pub fn tc_unit(cube: Arc<FinCat>, simp: Arc<FinCat>) -> Result<NatTrans> {
        let id = Arc::new(Functor::Identity(CatDesc::Spaces(cube.clone())));
        let tri = Arc::new(Functor::Triangulate {
            cube: cube.clone(),
            simp: simp.clone(),
        });
        let cub = Arc::new(Functor::Cubify {
            simp: simp.clone(),
            cube: cube.clone(),
        });
        Ok(NatTrans::new(
            "unit(triangulate ⊣ cubify)".into(),
            id,
            Functor::compose(tri, cub)?,
            NatKind::TcUnit { cube, simp },
        ))
    }

    pub fn tc_counit(cube: Arc<FinCat>, simp: Arc<FinCat>) -> Result<NatTrans> {
        let id = Arc::new(Functor::Identity(CatDesc::Spaces(simp.clone())));
        let tri = Arc::new(Functor::Triangulate {
            cube: cube.clone(),
            simp: simp.clone(),
        });
        let cub = Arc::new(Functor::Cubify {
            simp: simp.clone(),
            cube: cube.clone(),
        });
        Ok(NatTrans::new(
            "counit(triangulate ⊣ cubify)".into(),
            Functor::compose(cub, tri)?,
            id,
            NatKind::TcCounit { cube, simp },
        ))
    }

    /// Whiskering on both sides: the component at `X` is
    /// `post(inner at pre(X))`.
    pub fn whisker(pre: Arc<Functor>, inner: NatTrans, post: Arc<Functor>) -> Result<NatTrans> {
        if !pre.target().same(&inner.source.source()) {
            return Err(EngineError::InvalidInput(format!(
                "whisker: {} does not land in the source of {}",
                pre.describe(),
                inner.name
            )));
        }
        if !inner.source.target().same(&post.source()) {
            return Err(EngineError::InvalidInput(format!(
                "whisker: {} does not leave the target of {}",
                post.describe(),
                inner.name
            )));
        }
        let source = Functor::compose(
            pre.clone(),
            Functor::compose(inner.source.clone(), post.clone())?,
        )?;
        let target = Functor::compose(
            pre.clone(),
            Functor::compose(inner.target.clone(), post.clone())?,
        )?;
        Ok(NatTrans::new(
            format!("{} ▹ {} ◃ {}", post.describe(), inner.name, pre.describe()),
            source,
            target,
            NatKind::Whiskered {
                pre,
                inner: Box::new(inner),
                post,
            },
        ))
    }

    /// Vertical composite: `first` then `second`.
    pub fn vcomp(first: NatTrans, second: NatTrans) -> NatTrans {
        NatTrans::new(
            format!("{} · {}", second.name, first.name),
            first.source.clone(),
            second.target.clone(),
            NatKind::VComposite(Box::new(first), Box::new(second)),
        )
    }

    /// Negative control: wherever the source object has a non-identity
    /// endomorphism that changes the component, the component is silently
    /// replaced by the damaged composite.
    pub fn corrupted(self) -> NatTrans {
        NatTrans::new(
            format!("corrupted({})", self.name),
            self.source.clone(),
            self.target.clone(),
            NatKind::Corrupted(Box::new(self)),
        )
    }

    fn raw_component(&self, x: &CatObject) -> Result<CatMap> {
        match &self.kind {
            NatKind::UnderlyingIdentity => {
                let s = self.source.on_object(x)?;
                let t = self.target.on_object(x)?;
                match (s, t) {
                    (CatObject::Space(a), CatObject::Space(b)) => {
                        if !a.same_presheaf(&b) {
                            return Err(EngineError::Precondition {
                                op: "identity-component transformation",
                                detail: format!(
                                    "`{}` and `{}` differ at object `{}`",
                                    a.name(),
                                    b.name(),
                                    x.name()
                                ),
                            });
                        }
                        let components = a
                            .base()
                            .objects()
                            .map(|o| (0..a.cells(o)).collect())
                            .collect();
                        Ok(CatMap::Space(PresheafMap::new(a, b, components)?))
                    }
                    (CatObject::Marked(a), CatObject::Marked(b)) => {
                        if !a.space.same_presheaf(&b.space) {
                            return Err(EngineError::Precondition {
                                op: "identity-component transformation",
                                detail: format!(
                                    "`{}` and `{}` have different underlying objects",
                                    a.name(),
                                    b.name()
                                ),
                            });
                        }
                        let map = PresheafMap::identity(&a.space);
                        Ok(CatMap::Marked(MarkedMap::new(a, b, map)?))
                    }
                    _ => Err(EngineError::Precondition {
                        op: "identity-component transformation",
                        detail: "source and target values live in different kinds of category"
                            .into(),
                    }),
                }
            }
            NatKind::LanUnit(f) => Ok(CatMap::Space(kan::lan(f, x.space()?)?.unit()?)),
            NatKind::LanCounit(f) => Ok(CatMap::Space(kan::lan_counit(f, x.space()?)?.1)),
            NatKind::RanUnit(f) => Ok(CatMap::Space(kan::ran_unit(f, x.space()?)?.1)),
            NatKind::RanCounit(f) => Ok(CatMap::Space(kan::ran(f, x.space()?)?.counit()?)),
            NatKind::TcUnit { cube, simp } => {
                let t = cubes::triangulate(x.space()?, simp)?;
                let c = cubes::cubify(&t.object, cube)?;
                Ok(CatMap::Space(cubes::tc_unit(&t, &c)?))
            }
            NatKind::TcCounit { cube, simp } => {
                let c = cubes::cubify(x.space()?, cube)?;
                let t = cubes::triangulate(&c.object, simp)?;
                Ok(CatMap::Space(cubes::tc_counit(&c, &t)?))
            }
            NatKind::Whiskered { pre, inner, post } => {
                post.on_map(&inner.component_at(&pre.on_object(x)?)?)
            }
            NatKind::VComposite(first, second) => {
                first.component_at(x)?.then(&second.component_at(x)?)
            }
            NatKind::Corrupted(inner) => {
                let honest = inner.component_at(x)?;
                let src = honest.source();
                for e in cat_hom_set(&src, &src)? {
                    if e.same_map(&CatMap::identity(&src)) {
                        continue;
                    }
                    let damaged = e.then(&honest)?;
                    if !damaged.same_map(&honest) {
                        return Ok(damaged);
                    }
                }
                Ok(honest)
            }
        }
    }

    /// The component at `x`, with its endpoints re-verified against the
    /// source and target functors.
    pub fn component_at(&self, x: &CatObject) -> Result<CatMap> {
        let raw = self.raw_component(x)?;
        let want_src = self.source.on_object(x)?;
        let want_tgt = self.target.on_object(x)?;
        if !raw.source().same_object(&want_src) || !raw.target().same_object(&want_tgt) {
            return Err(EngineError::Internal(format!(
                "component of {} at `{}` has endpoints {} instead of {} → {}",
                self.name,
                x.name(),
                raw.describe(),
                want_src.name(),
                want_tgt.name()
            )));
        }
        Ok(raw)
    }

    /// Checks one naturality square; `None` means it commutes.
    pub fn check_naturality(&self, f: &CatMap) -> Result<Option<String>> {
        let ax = self.component_at(&f.source())?;
        let ay = self.component_at(&f.target())?;
        let lhs = self.source.on_map(f)?.then(&ay)?;
        let rhs = ax.then(&self.target.on_map(f)?)?;
        Ok(if lhs.same_map(&rhs) {
            None
        } else {
            Some(format!(
                "naturality of {} fails at {}",
                self.name,
                f.describe()
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{bisimplex, dedekind_cubes, row_embedding, simplex};

    fn row_functor(n: usize) -> Arc<FinFunctor> {
        let s = simplex(n);
        let prod = bisimplex(n);
        Arc::new(row_embedding(&s, &prod).unwrap())
    }

    fn interval(n: usize) -> CatObject {
        let s = simplex(n);
        let o = s.object_named("[1]").unwrap();
        CatObject::Space(Presheaf::yoneda(s, o))
    }

    #[test]
    fn restriction_and_extensions_are_functorial_on_samples() {
        let f = row_functor(2);
        let prod = f.target().clone();
        let d = prod.objects().nth(2).unwrap();
        let y = Presheaf::yoneda(prod.clone(), d);
        let t = Presheaf::terminal(prod.clone());
        let to_terminal = crate::search::hom_set(&y, &t).unwrap().remove(0);
        let id = PresheafMap::identity(&y);
        let pairs = vec![
            (
                CatMap::Space(id.clone()),
                CatMap::Space(to_terminal.clone()),
            ),
            (
                CatMap::Space(to_terminal),
                CatMap::Space(PresheafMap::identity(&t)),
            ),
        ];
        for fun in [
            Functor::Restrict(f.clone()),
            Functor::Identity(CatDesc::Spaces(prod.clone())),
        ] {
            assert_eq!(fun.check_functorial(&pairs).unwrap(), None);
        }

        // Lan and Ran act on maps between chain-shaped presheaves.
        let x = interval(2);
        let xt = CatObject::Space(Presheaf::terminal(simplex(2)));
        let g = cat_hom_set(&x, &xt).unwrap().remove(0);
        let pairs = vec![(CatMap::identity(&x), g)];
        for fun in [Functor::Lan(f.clone()), Functor::Ran(f.clone())] {
            assert_eq!(fun.check_functorial(&pairs).unwrap(), None);
        }
    }

    #[test]
    fn composition_rejects_mismatched_interfaces() {
        let f = row_functor(1);
        let lan = Arc::new(Functor::Lan(f.clone()));
        let forget = Arc::new(Functor::Forget { simp: simplex(1) });
        assert!(Functor::compose(lan.clone(), forget).is_err());
        let restrict = Arc::new(Functor::Restrict(f));
        let both = Functor::compose(lan, restrict).unwrap();
        assert!(both.source().same(&both.target()));
    }

    #[test]
    fn marking_functors_round_trip_objects() {
        let simp = simplex(2);
        let x = interval(2);
        let flat = Functor::Flat { simp: simp.clone() };
        let sharp = Functor::Sharp { simp: simp.clone() };
        let forget = Functor::Forget { simp: simp.clone() };
        for wrap in [&flat, &sharp] {
            let m = wrap.on_object(&x).unwrap();
            let back = forget.on_object(&m).unwrap();
            assert!(back.same_object(&x));
        }
        // Flat marks exactly the degenerate edges; sharp marks all.
        let CatObject::Marked(mf) = flat.on_object(&x).unwrap() else {
            panic!("flat must produce a marked object")
        };
        let CatObject::Marked(ms) = sharp.on_object(&x).unwrap() else {
            panic!("sharp must produce a marked object")
        };
        assert_eq!(mf.marked.len(), 2);
        assert_eq!(ms.marked.len(), 3);
    }

    #[test]
    fn lan_unit_components_check_out_and_are_natural() {
        let f = row_functor(2);
        let unit = NatTrans::lan_unit(f).unwrap();
        let x = interval(2);
        let c = unit.component_at(&x).unwrap();
        // The row embedding is fully faithful, so the unit is already an
        // isomorphism here.
        assert!(c.is_iso());
        let xt = CatObject::Space(Presheaf::terminal(simplex(2)));
        for g in cat_hom_set(&x, &xt).unwrap() {
            assert_eq!(unit.check_naturality(&g).unwrap(), None);
        }
    }

    #[test]
    fn tc_units_and_counits_have_the_advertised_endpoints() {
        let cube = dedekind_cubes(2);
        let simp = simplex(2);
        let unit = NatTrans::tc_unit(cube.clone(), simp.clone()).unwrap();
        let c1 = cube.object_named("[1]^1").unwrap();
        let y = CatObject::Space(Presheaf::yoneda(cube.clone(), c1));
        unit.component_at(&y).unwrap();

        let counit = NatTrans::tc_counit(cube, simp.clone()).unwrap();
        let x = interval(2);
        let c = counit.component_at(&x).unwrap();
        assert!(c.target().same_object(&x));
    }

    #[test]
    fn corrupted_components_really_differ() {
        let f = row_functor(1);
        let unit = NatTrans::lan_unit(f).unwrap();
        let x = interval(1);
        let honest = unit.component_at(&x).unwrap();
        let bad = unit.clone().corrupted();
        let damaged = bad.component_at(&x).unwrap();
        assert!(!damaged.same_map(&honest));
    }
}
