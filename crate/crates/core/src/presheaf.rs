//! Finite presheaves and their maps.
//!
//! A [`Presheaf`] over a [`FinCat`] stores an explicit finite cell set for
//! every object — *including* degenerate cells — and a contravariant action:
//! for `m: a → b` the action `act(m): X(b) → X(a)`. Degeneracy is a derived
//! notion (a cell is degenerate when it lies in the image of the action of a
//! non-invertible split epimorphism), never a storage convention. The cube
//! category is not Eilenberg–Zilber, so storing only nondegenerate cells
//! would be unsound there; storing everything is uniformly safe.
//!
//! Representable presheaves use a lazy action backend: their cells are
//! hom-sets of the base and the action is composition, looked up on demand.
//! That keeps large representables (e.g. over the dimension-3 cube category,
//! where the top hom-set alone has 8000 elements) usable without
//! materializing millions of table entries. Everything else stores dense
//! tables and serializes directly.

use std::fmt;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::fincat::{FinCat, MorId, ObjId};

/// A cell addressed by its object and index within that object's cell set.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellRef {
    pub obj: ObjId,
    pub idx: u32,
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.obj, self.idx)
    }
}

#[derive(Clone, Debug)]
enum ActionStore {
    /// `tables[m][x]` is the image of cell `x` under the action of morphism `m`.
    Dense(Vec<Vec<u32>>),
    /// The representable at this object: cells at `a` are `hom(a, target)` in
    /// hom-list order, and the action of `m: a → b` precomposes with `m`.
    Representable(ObjId),
}

/// A finite presheaf with explicitly enumerated cells.
#[derive(Clone, Debug)]
pub struct Presheaf {
    base: Arc<FinCat>,
    name: String,
    levels: Vec<u32>,
    action: ActionStore,
}

impl Presheaf {
    /// Builds a dense presheaf from cell counts and action tables and checks
    /// shape: one table per morphism, correct lengths, in-range values.
    /// Functoriality of the action is *not* checked here (it is quadratic);
    /// call [`Presheaf::validate`] for the full audit.
    pub fn from_tables(
        base: Arc<FinCat>,
        name: impl Into<String>,
        levels: Vec<u32>,
        tables: Vec<Vec<u32>>,
    ) -> Result<Arc<Presheaf>> {
        let name = name.into();
        if levels.len() != base.object_count() || tables.len() != base.morphism_count() {
            return Err(EngineError::InvalidInput(format!(
                "presheaf `{name}`: level or table count does not match the base"
            )));
        }
        for m in base.morphisms() {
            let t = &tables[m.0 as usize];
            let (a, b) = (base.dom(m), base.cod(m));
            if t.len() != levels[b.0 as usize] as usize {
                return Err(EngineError::InvalidInput(format!(
                    "presheaf `{name}`: table of `{}` has wrong length",
                    base.morphism(m).name
                )));
            }
            if t.iter().any(|&v| v >= levels[a.0 as usize]) {
                return Err(EngineError::InvalidInput(format!(
                    "presheaf `{name}`: table of `{}` maps out of range",
                    base.morphism(m).name
                )));
            }
        }
        Ok(Arc::new(Presheaf {
            base,
            name,
            levels,
            action: ActionStore::Dense(tables),
        }))
    }

    /// The representable presheaf `hom(−, target)`.
    pub fn yoneda(base: Arc<FinCat>, target: ObjId) -> Arc<Presheaf> {
        let levels = base
            .objects()
            .map(|a| base.hom(a, target).len() as u32)
            .collect();
        let name = format!("y({})", base.object(target).name);
        Arc::new(Presheaf {
            base,
            name,
            levels,
            action: ActionStore::Representable(target),
        })
    }

    /// The empty presheaf.
    pub fn empty(base: Arc<FinCat>) -> Arc<Presheaf> {
        let levels = vec![0; base.object_count()];
        let tables = base.morphisms().map(|_| Vec::new()).collect();
        Arc::new(Presheaf {
            base,
            name: "∅".into(),
            levels,
            action: ActionStore::Dense(tables),
        })
    }

    /// The terminal presheaf (one cell everywhere).
    pub fn terminal(base: Arc<FinCat>) -> Arc<Presheaf> {
        let levels = vec![1; base.object_count()];
        let tables = base.morphisms().map(|_| vec![0]).collect();
        Arc::new(Presheaf {
            base,
            name: "1".into(),
            levels,
            action: ActionStore::Dense(tables),
        })
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(self: &Arc<Self>, name: impl Into<String>) -> Arc<Presheaf> {
        let mut p = (**self).clone();
        p.name = name.into();
        Arc::new(p)
    }

    /// Number of cells at object `o`.
    pub fn cells(&self, o: ObjId) -> u32 {
        self.levels[o.0 as usize]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn total_cells(&self) -> usize {
        self.levels.iter().map(|&c| c as usize).sum()
    }

    /// Whether this presheaf is stored as a lazy representable.
    pub fn representable_target(&self) -> Option<ObjId> {
        match self.action {
            ActionStore::Representable(t) => Some(t),
            ActionStore::Dense(_) => None,
        }
    }

    /// Action of `m: a → b` on a cell at `b`, yielding a cell at `a`.
    pub fn act(&self, m: MorId, cell: u32) -> u32 {
        match &self.action {
            ActionStore::Dense(tables) => tables[m.0 as usize][cell as usize],
            ActionStore::Representable(t) => {
                let b = self.base.cod(m);
                let phi = self.base.hom(b, *t)[cell as usize];
                self.base.hom_position(self.base.compose(phi, m)) as u32
            }
        }
    }

    /// Materializes the action table of one morphism.
    pub fn act_table(&self, m: MorId) -> Vec<u32> {
        let b = self.base.cod(m);
        (0..self.cells(b)).map(|x| self.act(m, x)).collect()
    }

    /// Full functoriality audit: identities act as identities and the action
    /// reverses composition. Quadratic in morphisms; for tests and loaded data.
    pub fn validate(&self) -> Result<()> {
        for o in self.base.objects() {
            let id = self.base.identity(o);
            for x in 0..self.cells(o) {
                if self.act(id, x) != x {
                    return Err(EngineError::InvalidInput(format!(
                        "presheaf `{}`: identity of `{}` does not act trivially",
                        self.name,
                        self.base.object(o).name
                    )));
                }
            }
        }
        for f in self.base.morphisms() {
            for g in self.base.morphisms() {
                if self.base.dom(g) != self.base.cod(f) {
                    continue;
                }
                // g∘f: dom f → cod g acts as act(f) ∘ act(g).
                let gf = self.base.compose(g, f);
                for x in 0..self.cells(self.base.cod(g)) {
                    if self.act(gf, x) != self.act(f, self.act(g, x)) {
                        return Err(EngineError::InvalidInput(format!(
                            "presheaf `{}`: action not functorial on ({}, {})",
                            self.name,
                            self.base.morphism(g).name,
                            self.base.morphism(f).name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Semantic equality of cell counts and actions (bases must agree
    /// structurally). Materializes lazy actions — corpus-scale use only.
    pub fn same_presheaf(&self, other: &Presheaf) -> bool {
        if self.base != other.base || self.levels != other.levels {
            return false;
        }
        self.base.morphisms().all(|m| {
            (0..self.cells(self.base.cod(m))).all(|x| self.act(m, x) == other.act(m, x))
        })
    }

    /// Indices of the nondegenerate cells at `o`: cells not in the image of
    /// the action of any non-invertible split epimorphism out of `o`.
    pub fn nondegenerate_cells(&self, o: ObjId) -> Vec<u32> {
        let mut degenerate = vec![false; self.cells(o) as usize];
        for b in self.base.objects() {
            for &m in self.base.hom(o, b) {
                if !self.base.is_split_epi(m) || self.base.is_iso(m) {
                    continue;
                }
                for x in 0..self.cells(b) {
                    degenerate[self.act(m, x) as usize] = true;
                }
            }
        }
        (0..self.cells(o)).filter(|&x| !degenerate[x as usize]).collect()
    }

    /// Per-object nondegenerate cell counts.
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.base
            .objects()
            .map(|o| self.nondegenerate_cells(o).len())
            .collect()
    }

    /// The subpresheaf generated by `seeds`, together with its inclusion.
    /// Closure: from a kept cell at `b`, every action image at every other
    /// object is kept.
    pub fn sub_generated(
        self: &Arc<Self>,
        name: impl Into<String>,
        seeds: &[CellRef],
    ) -> Result<(Arc<Presheaf>, PresheafMap)> {
        let mut keep: Vec<Vec<bool>> = self
            .levels
            .iter()
            .map(|&c| vec![false; c as usize])
            .collect();
        let mut stack: Vec<CellRef> = Vec::new();
        for s in seeds {
            if s.idx >= self.cells(s.obj) {
                return Err(EngineError::InvalidReference(format!(
                    "seed cell {s} out of range in `{}`",
                    self.name
                )));
            }
            if !std::mem::replace(&mut keep[s.obj.0 as usize][s.idx as usize], true) {
                stack.push(*s);
            }
        }
        while let Some(c) = stack.pop() {
            for a in self.base.objects() {
                for &m in self.base.hom(a, c.obj) {
                    let y = self.act(m, c.idx);
                    if !std::mem::replace(&mut keep[a.0 as usize][y as usize], true) {
                        stack.push(CellRef { obj: a, idx: y });
                    }
                }
            }
        }

        // Reindex kept cells in increasing order.
        let mut new_index: Vec<Vec<Option<u32>>> = keep
            .iter()
            .map(|ks| vec![None; ks.len()])
            .collect();
        let mut levels = vec![0u32; self.levels.len()];
        let mut included: Vec<Vec<u32>> = vec![Vec::new(); self.levels.len()];
        for (oi, ks) in keep.iter().enumerate() {
            for (xi, &k) in ks.iter().enumerate() {
                if k {
                    new_index[oi][xi] = Some(levels[oi]);
                    included[oi].push(xi as u32);
                    levels[oi] += 1;
                }
            }
        }
        let tables: Vec<Vec<u32>> = self
            .base
            .morphisms()
            .map(|m| {
                let b = self.base.cod(m);
                let a = self.base.dom(m);
                included[b.0 as usize]
                    .iter()
                    .map(|&x| new_index[a.0 as usize][self.act(m, x) as usize].unwrap())
                    .collect()
            })
            .collect();
        let sub = Presheaf::from_tables(self.base.clone(), name, levels, tables)?;
        let components = included;
        let incl = PresheafMap::new(sub.clone(), self.clone(), components)?;
        Ok((sub, incl))
    }

    /// The map `y(g): y(a) → y(b)` induced on representables by `g: a → b`
    /// (post-composition).
    pub fn yoneda_map(base: &Arc<FinCat>, g: MorId) -> PresheafMap {
        let (a, b) = (base.dom(g), base.cod(g));
        let ya = Presheaf::yoneda(base.clone(), a);
        let yb = Presheaf::yoneda(base.clone(), b);
        let components: Vec<Vec<u32>> = base
            .objects()
            .map(|e| {
                base.hom(e, a)
                    .iter()
                    .map(|&alpha| base.hom_position(base.compose(g, alpha)) as u32)
                    .collect()
            })
            .collect();
        PresheafMap::new_unchecked(ya, yb, components)
    }

    /// The map `y(c) → X` classifying a cell at `c` (one direction of the
    /// Yoneda bijection): a morphism `φ: e → c` goes to `X(φ)(cell)`.
    pub fn classifying_map(x: &Arc<Presheaf>, cell: CellRef) -> PresheafMap {
        let base = x.base();
        let yc = Presheaf::yoneda(base.clone(), cell.obj);
        let components: Vec<Vec<u32>> = base
            .objects()
            .map(|e| {
                base.hom(e, cell.obj)
                    .iter()
                    .map(|&phi| x.act(phi, cell.idx))
                    .collect()
            })
            .collect();
        PresheafMap::new_unchecked(yc, x.clone(), components)
    }

    /// Position of the identity in `hom(c, c)`: the cell of `y(c)` at `c`
    /// whose image recovers a map's classifying cell (the other direction of
    /// the Yoneda bijection).
    pub fn identity_cell(base: &FinCat, c: ObjId) -> u32 {
        base.hom_position(base.identity(c)) as u32
    }

    /// Binary product, with projections.
    pub fn product(
        x: &Arc<Presheaf>,
        y: &Arc<Presheaf>,
    ) -> Result<(Arc<Presheaf>, PresheafMap, PresheafMap)> {
        let base = same_base(x, y, "product")?;
        let levels: Vec<u32> = x
            .levels
            .iter()
            .zip(&y.levels)
            .map(|(&a, &b)| a.checked_mul(b).expect("product size fits in u32"))
            .collect();
        // Cell (xc, yc) at index xc * y.cells + yc.
        let tables: Vec<Vec<u32>> = base
            .morphisms()
            .map(|m| {
                let b = base.cod(m);
                let a = base.dom(m);
                let ya = y.cells(a);
                let mut t = Vec::with_capacity((x.cells(b) * y.cells(b)) as usize);
                for xc in 0..x.cells(b) {
                    for yc in 0..y.cells(b) {
                        t.push(x.act(m, xc) * ya + y.act(m, yc));
                    }
                }
                t
            })
            .collect();
        let p = Presheaf::from_tables(
            base.clone(),
            format!("({}×{})", x.name, y.name),
            levels,
            tables,
        )?;
        let proj1: Vec<Vec<u32>> = base
            .objects()
            .map(|o| {
                (0..p.cells(o))
                    .map(|c| c / y.cells(o).max(1))
                    .collect()
            })
            .collect();
        let proj2: Vec<Vec<u32>> = base
            .objects()
            .map(|o| {
                (0..p.cells(o))
                    .map(|c| c % y.cells(o).max(1))
                    .collect()
            })
            .collect();
        let p1 = PresheafMap::new(p.clone(), x.clone(), proj1)?;
        let p2 = PresheafMap::new(p.clone(), y.clone(), proj2)?;
        Ok((p, p1, p2))
    }

    /// Pairing `⟨f, g⟩: W → X × Y` into a product built by [`Presheaf::product`].
    pub fn pair_into_product(
        product: &Arc<Presheaf>,
        y_cells: &Arc<Presheaf>,
        f: &PresheafMap,
        g: &PresheafMap,
    ) -> Result<PresheafMap> {
        let base = product.base.clone();
        let components: Vec<Vec<u32>> = base
            .objects()
            .map(|o| {
                (0..f.source.cells(o))
                    .map(|c| f.at(o, c) * y_cells.cells(o) + g.at(o, c))
                    .collect()
            })
            .collect();
        PresheafMap::new(f.source.clone(), product.clone(), components)
    }

    /// Binary coproduct, with injections.
    pub fn coproduct(
        x: &Arc<Presheaf>,
        y: &Arc<Presheaf>,
    ) -> Result<(Arc<Presheaf>, PresheafMap, PresheafMap)> {
        let base = same_base(x, y, "coproduct")?;
        let levels: Vec<u32> = x
            .levels
            .iter()
            .zip(&y.levels)
            .map(|(&a, &b)| a + b)
            .collect();
        let tables: Vec<Vec<u32>> = base
            .morphisms()
            .map(|m| {
                let b = base.cod(m);
                let xb = x.cells(b);
                let xa = x.cells(base.dom(m));
                (0..xb + y.cells(b))
                    .map(|c| {
                        if c < xb {
                            x.act(m, c)
                        } else {
                            xa + y.act(m, c - xb)
                        }
                    })
                    .collect()
            })
            .collect();
        let p = Presheaf::from_tables(
            base.clone(),
            format!("({}⊔{})", x.name, y.name),
            levels,
            tables,
        )?;
        let inj1: Vec<Vec<u32>> = base.objects().map(|o| (0..x.cells(o)).collect()).collect();
        let inj2: Vec<Vec<u32>> = base
            .objects()
            .map(|o| (0..y.cells(o)).map(|c| x.cells(o) + c).collect())
            .collect();
        let i1 = PresheafMap::new(x.clone(), p.clone(), inj1)?;
        let i2 = PresheafMap::new(y.clone(), p.clone(), inj2)?;
        Ok((p, i1, i2))
    }

    /// Copairing `[f, g]: X ⊔ Y → W` out of a coproduct built by
    /// [`Presheaf::coproduct`].
    pub fn copair_from_coproduct(
        coproduct: &Arc<Presheaf>,
        f: &PresheafMap,
        g: &PresheafMap,
    ) -> Result<PresheafMap> {
        let base = coproduct.base.clone();
        let components: Vec<Vec<u32>> = base
            .objects()
            .map(|o| {
                let xb = f.source.cells(o);
                (0..coproduct.cells(o))
                    .map(|c| if c < xb { f.at(o, c) } else { g.at(o, c - xb) })
                    .collect()
            })
            .collect();
        PresheafMap::new(coproduct.clone(), f.target.clone(), components)
    }
}

pub(crate) fn same_base(
    x: &Arc<Presheaf>,
    y: &Arc<Presheaf>,
    context: &str,
) -> Result<Arc<FinCat>> {
    if Arc::ptr_eq(x.base(), y.base()) || x.base() == y.base() {
        Ok(x.base().clone())
    } else {
        Err(EngineError::BaseMismatch {
            context: context.to_string(),
            expected: x.base().name().to_string(),
            got: y.base().name().to_string(),
        })
    }
}

/// A natural map of presheaves, validated on construction: components are
/// in-range and commute with every base morphism's action.
#[derive(Clone, Debug)]
pub struct PresheafMap {
    pub source: Arc<Presheaf>,
    pub target: Arc<Presheaf>,
    components: Vec<Vec<u32>>,
}

impl PartialEq for PresheafMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.levels() == other.source.levels()
            && self.target.levels() == other.target.levels()
            && self.components == other.components
    }
}

impl Eq for PresheafMap {}

impl PresheafMap {
    pub fn new(
        source: Arc<Presheaf>,
        target: Arc<Presheaf>,
        components: Vec<Vec<u32>>,
    ) -> Result<PresheafMap> {
        let m = PresheafMap::new_unchecked(source, target, components);
        m.check_shape()?;
        m.check_naturality()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<Presheaf>,
        target: Arc<Presheaf>,
        components: Vec<Vec<u32>>,
    ) -> PresheafMap {
        PresheafMap {
            source,
            target,
            components,
        }
    }

    fn check_shape(&self) -> Result<()> {
        let base = same_base(&self.source, &self.target, "presheaf map")?;
        if self.components.len() != base.object_count() {
            return Err(EngineError::InvalidInput(format!(
                "map {} → {}: wrong number of components",
                self.source.name(),
                self.target.name()
            )));
        }
        for o in base.objects() {
            let comp = &self.components[o.0 as usize];
            if comp.len() != self.source.cells(o) as usize
                || comp.iter().any(|&v| v >= self.target.cells(o))
            {
                return Err(EngineError::InvalidInput(format!(
                    "map {} → {}: component at `{}` malformed",
                    self.source.name(),
                    self.target.name(),
                    base.object(o).name
                )));
            }
        }
        Ok(())
    }

    /// Naturality: `h(X(m)(x)) = Y(m)(h(x))` for every morphism and cell.
    pub fn check_naturality(&self) -> Result<()> {
        let base = self.source.base();
        for m in base.morphisms() {
            let (a, b) = (base.dom(m), base.cod(m));
            for x in 0..self.source.cells(b) {
                let lhs = self.components[a.0 as usize][self.source.act(m, x) as usize];
                let rhs = self.target.act(m, self.components[b.0 as usize][x as usize]);
                if lhs != rhs {
                    return Err(EngineError::InvalidInput(format!(
                        "map {} → {}: not natural at `{}` on cell {}",
                        self.source.name(),
                        self.target.name(),
                        base.morphism(m).name,
                        x
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &Arc<Presheaf>) -> PresheafMap {
        let components = x
            .base()
            .objects()
            .map(|o| (0..x.cells(o)).collect())
            .collect();
        PresheafMap::new_unchecked(x.clone(), x.clone(), components)
    }

    /// Value of the component at `o` on cell `c`.
    pub fn at(&self, o: ObjId, c: u32) -> u32 {
        self.components[o.0 as usize][c as usize]
    }

    pub fn component(&self, o: ObjId) -> &[u32] {
        &self.components[o.0 as usize]
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// Composite `g ∘ f` (`self` is `f`, applied first).
    pub fn then(&self, g: &PresheafMap) -> Result<PresheafMap> {
        if self.target.levels() != g.source.levels()
            || !self.target.same_presheaf(&g.source)
        {
            return Err(EngineError::BaseMismatch {
                context: "map composition".into(),
                expected: self.target.name().to_string(),
                got: g.source.name().to_string(),
            });
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(oi, comp)| comp.iter().map(|&c| g.components[oi][c as usize]).collect())
            .collect();
        Ok(PresheafMap::new_unchecked(
            self.source.clone(),
            g.target.clone(),
            components,
        ))
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().enumerate().all(|(oi, comp)| {
            let mut seen = vec![false; self.target.levels()[oi] as usize];
            comp.iter()
                .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().enumerate().all(|(oi, comp)| {
            let mut seen = vec![false; self.target.levels()[oi] as usize];
            for &v in comp {
                seen[v as usize] = true;
            }
            seen.iter().all(|&s| s)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.source.levels() == self.target.levels() && self.is_mono() && self.is_epi()
    }

    /// Inverse of an isomorphism.
    pub fn invert(&self) -> Result<PresheafMap> {
        if !self.is_iso() {
            return Err(EngineError::Precondition {
                op: "invert",
                detail: format!("{} → {} is not an isomorphism", self.source.name(), self.target.name()),
            });
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(oi, comp)| {
                let mut inv = vec![0u32; self.target.levels()[oi] as usize];
                for (x, &v) in comp.iter().enumerate() {
                    inv[v as usize] = x as u32;
                }
                inv
            })
            .collect();
        Ok(PresheafMap::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            components,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::simplex;

    #[test]
    fn yoneda_levels_and_validation() {
        let s = simplex(2);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        // Frozen: the standard 1-simplex over the 2-truncation has cell
        // counts (2, 3, 4) — vertices, edges (one degenerate pair collapsed
        // later), and 2-cells including degeneracies.
        assert_eq!(y1.levels(), &[2, 3, 4]);
        y1.validate().unwrap();
    }

    #[test]
    fn representable_matches_dense_materialization() {
        let s = simplex(2);
        let o2 = s.object_named("[2]").unwrap();
        let y2 = Presheaf::yoneda(s.clone(), o2);
        let tables: Vec<Vec<u32>> = s.morphisms().map(|m| y2.act_table(m)).collect();
        let dense =
            Presheaf::from_tables(s.clone(), "dense", y2.levels().to_vec(), tables).unwrap();
        dense.validate().unwrap();
        assert!(y2.same_presheaf(&dense));
    }

    #[test]
    fn nondegenerate_counts_of_standard_simplices() {
        let s = simplex(2);
        let o2 = s.object_named("[2]").unwrap();
        let y2 = Presheaf::yoneda(s.clone(), o2);
        assert_eq!(y2.nondegenerate_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn product_of_intervals() {
        let s = simplex(2);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let (p, p1, p2) = Presheaf::product(&y1, &y1).unwrap();
        p.validate().unwrap();
        assert_eq!(p.levels(), &[4, 9, 16]);
        // Frozen: the square has 4 vertices, 5 nondegenerate edges
        // (4 sides + 1 diagonal), and 2 nondegenerate triangles.
        assert_eq!(p.nondegenerate_counts(), vec![4, 5, 2]);
        assert!(p1.check_naturality().is_ok() && p2.check_naturality().is_ok());
    }

    #[test]
    fn coproduct_and_copairing_fold() {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let (c, i1, i2) = Presheaf::coproduct(&y1, &y1).unwrap();
        c.validate().unwrap();
        assert_eq!(c.levels(), &[4, 6]);
        assert!(i1.is_mono() && i2.is_mono());
        let fold = Presheaf::copair_from_coproduct(
            &c,
            &PresheafMap::identity(&y1),
            &PresheafMap::identity(&y1),
        )
        .unwrap();
        fold.check_naturality().unwrap();
        assert!(fold.is_epi() && !fold.is_mono());
    }

    #[test]
    fn boundary_subpresheaf_of_interval() {
        let s = simplex(1);
        let o0 = s.object_named("[0]").unwrap();
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let seeds = [
            CellRef { obj: o0, idx: 0 },
            CellRef { obj: o0, idx: 1 },
        ];
        let (sub, incl) = y1.sub_generated("∂Δ[1]", &seeds).unwrap();
        // Two vertices plus their two degenerate edges.
        assert_eq!(sub.levels(), &[2, 2]);
        assert!(incl.is_mono());
        sub.validate().unwrap();
    }

    #[test]
    fn map_validation_rejects_unnatural_assignments() {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        // Swap the vertices but fix the edges: breaks naturality.
        let bad = PresheafMap::new(y1.clone(), y1.clone(), vec![vec![1, 0], vec![0, 1, 2]]);
        assert!(bad.is_err());
    }

    #[test]
    fn iso_detection_and_inverse() {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let id = PresheafMap::identity(&y1);
        assert!(id.is_iso());
        let inv = id.invert().unwrap();
        assert_eq!(inv, id);
    }

    #[test]
    fn empty_and_terminal() {
        let s = simplex(1);
        let e = Presheaf::empty(s.clone());
        let t = Presheaf::terminal(s.clone());
        e.validate().unwrap();
        t.validate().unwrap();
        assert_eq!(e.total_cells(), 0);
        assert_eq!(t.total_cells(), 2);
    }
}
