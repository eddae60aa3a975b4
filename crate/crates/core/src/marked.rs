//! Simplicial sets with marked edges.
//!
//! A [`MarkedSet`] is a presheaf over a truncated simplex base together with
//! a set of marked 1-cells that always contains the degenerate edges. Maps
//! must send marked edges to marked edges. The three change-of-marking
//! functors — mark nothing extra (`flat`), forget the marking (`forget`),
//! mark everything (`sharp`) — form the adjoint triple flat ⊣ forget ⊣
//! sharp, and both outer adjunctions have *identity* underlying components,
//! which the audits downstream exploit as the degenerate-case baseline.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::colimit::pushout;
use crate::error::{EngineError, Result};
use crate::fincat::ObjId;
use crate::presheaf::{CellRef, Presheaf, PresheafMap};
use crate::search::HomSearch;

/// A simplicial set with marked edges (degenerate edges always marked).
#[derive(Clone, Debug)]
pub struct MarkedSet {
    pub space: Arc<Presheaf>,
    pub marked: BTreeSet<u32>,
}

/// The object of edges in a simplex base.
pub fn edge_object(base: &crate::fincat::FinCat) -> Result<ObjId> {
    base.object_named("[1]").ok_or_else(|| EngineError::Precondition {
        op: "marked set",
        detail: format!("base `{}` has no object [1]", base.name()),
    })
}

/// The degenerate 1-cells of a simplicial presheaf.
pub fn degenerate_edges(x: &Presheaf) -> Result<BTreeSet<u32>> {
    let o1 = edge_object(x.base())?;
    let nondeg: BTreeSet<u32> = x.nondegenerate_cells(o1).into_iter().collect();
    Ok((0..x.cells(o1)).filter(|e| !nondeg.contains(e)).collect())
}

impl MarkedSet {
    /// Builds a marked set, checking ranges and that degenerate edges are
    /// marked.
    pub fn new(space: Arc<Presheaf>, marked: BTreeSet<u32>) -> Result<MarkedSet> {
        let o1 = edge_object(space.base())?;
        if marked.iter().any(|&e| e >= space.cells(o1)) {
            return Err(EngineError::InvalidInput(format!(
                "marked set on `{}`: marked edge out of range",
                space.name()
            )));
        }
        let deg = degenerate_edges(&space)?;
        if !deg.is_subset(&marked) {
            return Err(EngineError::InvalidInput(format!(
                "marked set on `{}`: degenerate edges must be marked",
                space.name()
            )));
        }
        Ok(MarkedSet { space, marked })
    }

    /// Minimal marking: only the degenerate edges.
    pub fn flat(space: &Arc<Presheaf>) -> Result<MarkedSet> {
        let marked = degenerate_edges(space)?;
        Ok(MarkedSet {
            space: space.clone(),
            marked,
        })
    }

    /// Maximal marking: every edge.
    pub fn sharp(space: &Arc<Presheaf>) -> Result<MarkedSet> {
        let o1 = edge_object(space.base())?;
        Ok(MarkedSet {
            space: space.clone(),
            marked: (0..space.cells(o1)).collect(),
        })
    }

    /// The underlying simplicial set.
    pub fn forget(&self) -> Arc<Presheaf> {
        self.space.clone()
    }

    pub fn name(&self) -> String {
        let o1 = edge_object(self.space.base()).expect("validated base");
        if self.marked.len() as u32 == self.space.cells(o1) {
            format!("{}♯", self.space.name())
        } else {
            format!("{}({} marked)", self.space.name(), self.marked.len())
        }
    }

    pub fn is_marked(&self, edge: u32) -> bool {
        self.marked.contains(&edge)
    }

    /// Equality of underlying presheaf (semantically) and marking.
    pub fn same_marked_set(&self, other: &MarkedSet) -> bool {
        self.space.same_presheaf(&other.space) && self.marked == other.marked
    }

    /// Marked product: an edge of the product is marked iff both factors
    /// are.
    pub fn product(x: &MarkedSet, y: &MarkedSet) -> Result<(MarkedSet, MarkedMap, MarkedMap)> {
        let (p, p1, p2) = Presheaf::product(&x.space, &y.space)?;
        let o1 = edge_object(p.base())?;
        let marked = (0..p.cells(o1))
            .filter(|&e| x.is_marked(p1.at(o1, e)) && y.is_marked(p2.at(o1, e)))
            .collect();
        let m = MarkedSet::new(p, marked)?;
        let m1 = MarkedMap::new(m.clone(), x.clone(), p1)?;
        let m2 = MarkedMap::new(m.clone(), y.clone(), p2)?;
        Ok((m, m1, m2))
    }

    /// Marked pushout: marking is generated by the images of the leg
    /// markings (plus degeneracies, automatically present).
    pub fn pushout(
        f: &MarkedMap,
        g: &MarkedMap,
        name: impl Into<String>,
    ) -> Result<(MarkedSet, MarkedMap, MarkedMap)> {
        if !f.source.same_marked_set(&g.source) {
            return Err(EngineError::InvalidInput(
                "marked pushout legs must share a source".into(),
            ));
        }
        let po = pushout(&f.map, &g.map, name)?;
        let o1 = edge_object(po.object.base())?;
        let mut marked = degenerate_edges(&po.object)?;
        for &e in &f.target.marked {
            marked.insert(po.from_left.at(o1, e));
        }
        for &e in &g.target.marked {
            marked.insert(po.from_right.at(o1, e));
        }
        let m = MarkedSet::new(po.object, marked)?;
        let l = MarkedMap::new(f.target.clone(), m.clone(), po.from_left)?;
        let r = MarkedMap::new(g.target.clone(), m.clone(), po.from_right)?;
        Ok((m, l, r))
    }
}

/// A marking-preserving map of marked sets.
#[derive(Clone, Debug)]
pub struct MarkedMap {
    pub source: MarkedSet,
    pub target: MarkedSet,
    pub map: PresheafMap,
}

impl MarkedMap {
    pub fn new(source: MarkedSet, target: MarkedSet, map: PresheafMap) -> Result<MarkedMap> {
        let o1 = edge_object(source.space.base())?;
        for &e in &source.marked {
            if !target.is_marked(map.at(o1, e)) {
                return Err(EngineError::InvalidInput(format!(
                    "map {} → {} does not preserve the marking at edge {e}",
                    source.name(),
                    target.name()
                )));
            }
        }
        Ok(MarkedMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(m: &MarkedSet) -> MarkedMap {
        MarkedMap {
            source: m.clone(),
            target: m.clone(),
            map: PresheafMap::identity(&m.space),
        }
    }

    pub fn then(&self, g: &MarkedMap) -> Result<MarkedMap> {
        MarkedMap::new(
            self.source.clone(),
            g.target.clone(),
            self.map.then(&g.map)?,
        )
    }

    /// Isomorphism of marked sets: underlying iso matching markings exactly.
    pub fn is_iso(&self) -> bool {
        if !self.map.is_iso() {
            return false;
        }
        let o1 = edge_object(self.source.space.base()).expect("validated base");
        let image: BTreeSet<u32> = self.source.marked.iter().map(|&e| self.map.at(o1, e)).collect();
        image == self.target.marked
    }

    pub fn is_mono(&self) -> bool {
        self.map.is_mono()
    }
}

/// All marked maps `m → n`, via the constrained search engine with a
/// marking-preservation filter on edges.
pub fn marked_hom_set(m: &MarkedSet, n: &MarkedSet) -> Result<Vec<MarkedMap>> {
    let o1 = edge_object(m.space.base())?;
    let maps = HomSearch::new(&m.space, &n.space)?
        .with_filter(|cell: CellRef, v: u32| {
            cell.obj != o1 || !m.is_marked(cell.idx) || n.is_marked(v)
        })
        .enumerate()?;
    maps.into_iter()
        .map(|map| MarkedMap::new(m.clone(), n.clone(), map))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::simplex;

    fn interval() -> Arc<Presheaf> {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        Presheaf::yoneda(s, o1)
    }

    #[test]
    fn flat_and_sharp_markings() {
        let y1 = interval();
        let flat = MarkedSet::flat(&y1).unwrap();
        let sharp = MarkedSet::sharp(&y1).unwrap();
        // Edges of Δ[1]: two degenerate constants and the identity.
        assert_eq!(flat.marked.len(), 2);
        assert_eq!(sharp.marked.len(), 3);
    }

    #[test]
    fn degenerate_edges_must_stay_marked() {
        let y1 = interval();
        let bad = MarkedSet::new(y1, BTreeSet::new());
        assert!(bad.is_err());
    }

    #[test]
    fn marked_hom_counts_between_flat_and_sharp_intervals() {
        let y1 = interval();
        let flat = MarkedSet::flat(&y1).unwrap();
        let sharp = MarkedSet::sharp(&y1).unwrap();
        // Frozen: every simplicial map lands marked in the sharp interval…
        assert_eq!(marked_hom_set(&flat, &sharp).unwrap().len(), 3);
        // …but only the two constants keep the marked identity edge
        // degenerate in the flat one.
        assert_eq!(marked_hom_set(&sharp, &flat).unwrap().len(), 2);
        // Forgetting recovers the full simplicial hom-set.
        assert_eq!(
            crate::search::hom_set(&flat.forget(), &sharp.forget())
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn flat_forget_adjunction_has_identity_unit() {
        // hom_marked(flat X, M) ≅ hom(X, forget M), and the unit
        // X → forget(flat X) is the identity on the nose.
        let y1 = interval();
        let flat = MarkedSet::flat(&y1).unwrap();
        assert!(flat.forget().same_presheaf(&y1));
        // Any marked set M on the interval: marked homs from flat agree
        // with unmarked homs into the underlying space.
        let mut marked = degenerate_edges(&y1).unwrap();
        marked.insert(2);
        let m = MarkedSet::new(y1.clone(), marked).unwrap();
        assert_eq!(
            marked_hom_set(&flat, &m).unwrap().len(),
            crate::search::hom_set(&y1, &m.forget()).unwrap().len()
        );
    }

    #[test]
    fn forget_sharp_adjunction_has_identity_counit() {
        let y1 = interval();
        let sharp = MarkedSet::sharp(&y1).unwrap();
        assert!(sharp.forget().same_presheaf(&y1));
        let mut marked = degenerate_edges(&y1).unwrap();
        marked.insert(2);
        let m = MarkedSet::new(y1.clone(), marked).unwrap();
        assert_eq!(
            marked_hom_set(&m, &sharp).unwrap().len(),
            crate::search::hom_set(&m.forget(), &y1).unwrap().len()
        );
    }

    #[test]
    fn marked_product_markings() {
        let y1 = interval();
        let flat = MarkedSet::flat(&y1).unwrap();
        let sharp = MarkedSet::sharp(&y1).unwrap();
        let (p, p1, p2) = MarkedSet::product(&sharp, &flat).unwrap();
        // Marked edges of the product: both coordinates marked. With one
        // factor flat, only pairs (any, degenerate) qualify.
        let o1 = edge_object(p.space.base()).unwrap();
        for e in 0..p.space.cells(o1) {
            let expect = sharp.is_marked(p1.map.at(o1, e)) && flat.is_marked(p2.map.at(o1, e));
            assert_eq!(p.is_marked(e), expect);
        }
        // Sanity: strictly between flat and sharp.
        let deg = degenerate_edges(&p.space).unwrap();
        assert!(p.marked.len() > deg.len());
        assert!((p.marked.len() as u32) < p.space.cells(o1));
    }

    #[test]
    fn marked_pushout_marks_leg_images() {
        let y1 = interval();
        let s = y1.base().clone();
        let o0 = s.object_named("[0]").unwrap();
        let pt = Presheaf::terminal(s.clone());
        let o1 = s.object_named("[1]").unwrap();
        let sigma = s.hom(o1, o0)[0];
        let vertex = |v: u32| {
            PresheafMap::new(pt.clone(), y1.clone(), vec![vec![v], vec![y1.act(sigma, v)]])
                .unwrap()
        };
        let pt_m = MarkedSet::sharp(&pt).unwrap();
        let sharp = MarkedSet::sharp(&y1).unwrap();
        let flat = MarkedSet::flat(&y1).unwrap();
        let f = MarkedMap::new(pt_m.clone(), sharp.clone(), vertex(1)).unwrap();
        let g = MarkedMap::new(pt_m.clone(), flat.clone(), vertex(0)).unwrap();
        let (po, l, r) = MarkedSet::pushout(&f, &g, "wedge").unwrap();
        // The sharp interval's identity edge stays marked in the pushout;
        // the flat one contributes no extra marking.
        let o1 = edge_object(po.space.base()).unwrap();
        assert!(po.is_marked(l.map.at(o1, 2)));
        let deg = degenerate_edges(&po.space).unwrap();
        assert_eq!(po.marked.len(), deg.len() + 1);
        let _ = r;
    }
}
