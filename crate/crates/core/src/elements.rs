//! Categories of elements and the comma categories used by Kan extensions,
//! materialized as honest [`FinCat`]s.
//!
//! The category of elements of a presheaf realizes the object `(c, x)` on
//! the same concrete elements as `c`, so each element morphism can reuse the
//! table of its base label and faithfulness is inherited.
//!
//! Comma categories for presheaf Kan extensions run *contravariantly* to the
//! index category: a comma morphism `(c, φ) → (c', φ')` is labeled by an
//! index morphism `h: c' → c`. They are realized concretely by sending each
//! comma object to the set of index morphisms *out of* `c`, with `h` acting
//! by precomposition — a faithful realization (evaluate at the identity)
//! that keeps every comma category a first-class, validatable [`FinCat`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::fincat::{FinCat, FinFunctor, MorId, MorInfo, ObjId, ObjectInfo};
use crate::presheaf::{CellRef, Presheaf};

/// Cap on materialized element/comma morphisms; larger instances should use
/// streaming constructions instead of materializing the category.
const MAX_MATERIALIZED_MORPHISMS: usize = 2_000_000;

/// The category of elements of a presheaf, with its projection label data.
#[derive(Clone, Debug)]
pub struct ElementsCat {
    pub cat: Arc<FinCat>,
    /// Element object index → the cell it stands for.
    pub objects: Vec<CellRef>,
    pub obj_index: HashMap<CellRef, ObjId>,
    /// Element morphism index → its base label.
    pub labels: Vec<MorId>,
}

impl ElementsCat {
    /// The projection functor to the base, sending `(c, x) ↦ c`.
    pub fn projection(&self, base: &Arc<FinCat>) -> Result<FinFunctor> {
        FinFunctor::new(
            format!("π[{}]", self.cat.name()),
            self.cat.clone(),
            base.clone(),
            self.objects.iter().map(|c| c.obj).collect(),
            self.labels.clone(),
        )
    }
}

/// Builds the category of elements of `x`: objects are cells `(c, x)`, and a
/// morphism `(a, X(g)(x')) → (b, x')` for every `g: a → b` and cell `x'` at
/// `b`, labeled by `g`.
pub fn category_of_elements(x: &Arc<Presheaf>) -> Result<ElementsCat> {
    let base = x.base();
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    let mut infos = Vec::new();
    for c in base.objects() {
        for idx in 0..x.cells(c) {
            let cell = CellRef { obj: c, idx };
            obj_index.insert(cell, ObjId(objects.len() as u32));
            infos.push(ObjectInfo {
                name: format!("({}|{})", base.object(c).name, idx),
                elems: base.object(c).elems,
            });
            objects.push(cell);
        }
    }

    let mor_budget: usize = base
        .morphisms()
        .map(|g| x.cells(base.cod(g)) as usize)
        .sum();
    if mor_budget > MAX_MATERIALIZED_MORPHISMS {
        return Err(EngineError::BudgetExceeded {
            op: "category of elements",
            detail: format!("{mor_budget} element morphisms would be materialized"),
        });
    }

    let mut mors = Vec::with_capacity(mor_budget);
    let mut labels = Vec::with_capacity(mor_budget);
    let mut generators = Vec::new();
    let gen_set: std::collections::BTreeSet<MorId> = base.generators().iter().copied().collect();
    for g in base.morphisms() {
        let (a, b) = (base.dom(g), base.cod(g));
        for x2 in 0..x.cells(b) {
            let x1 = x.act(g, x2);
            let dom = obj_index[&CellRef { obj: a, idx: x1 }];
            let cod = obj_index[&CellRef { obj: b, idx: x2 }];
            if gen_set.contains(&g) {
                generators.push(MorId(mors.len() as u32));
            }
            mors.push(MorInfo {
                name: format!("{}@{}", base.morphism(g).name, x2),
                dom,
                cod,
                table: base.morphism(g).table.clone(),
            });
            labels.push(g);
        }
    }
    let cat = FinCat::new(
        format!("el({})", x.name()),
        infos,
        mors,
        Some(generators),
    )?;
    Ok(ElementsCat {
        cat,
        objects,
        obj_index,
        labels,
    })
}

/// Which Kan-extension comma category to build.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CommaFlavor {
    /// Objects `(c, φ: d → f(c))`; colimits over this compute left
    /// extensions.
    Left,
    /// Objects `(c, ψ: f(c) → d)`; limits over this compute right
    /// extensions.
    Right,
}

/// A materialized comma category for a Kan extension along `f` at an object
/// `d` of the target.
#[derive(Clone, Debug)]
pub struct CommaCat {
    pub cat: Arc<FinCat>,
    /// Comma object index → `(c, φ)` with `φ` a target-category morphism.
    pub objects: Vec<(ObjId, MorId)>,
    pub obj_index: HashMap<(ObjId, MorId), ObjId>,
    /// Comma morphism index → its index-category label `h: c' → c`
    /// (contravariant: it labels a comma morphism `(c, φ) → (c', φ')`).
    pub labels: Vec<MorId>,
    pub flavor: CommaFlavor,
}

/// Builds the comma category of `flavor` for `f: I → J` at `d ∈ J`.
///
/// Comma object `(c, φ)` is realized on the set of `I`-morphisms out of
/// `c`; the comma morphism labeled `h` acts by precomposition with `h`.
pub fn comma_category(f: &FinFunctor, d: ObjId, flavor: CommaFlavor) -> Result<CommaCat> {
    let i_cat = f.source();
    let j_cat = f.target();

    // Out-degree realization: enumerate morphisms out of each index object.
    let out_mors: Vec<Vec<MorId>> = i_cat
        .objects()
        .map(|c| {
            i_cat
                .objects()
                .flat_map(|b| i_cat.hom(c, b).iter().copied())
                .collect()
        })
        .collect();
    let out_pos: Vec<HashMap<MorId, u32>> = out_mors
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect())
        .collect();

    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    let mut infos = Vec::new();
    for c in i_cat.objects() {
        let fc = f.apply_obj(c);
        let phis: &[MorId] = match flavor {
            CommaFlavor::Left => j_cat.hom(d, fc),
            CommaFlavor::Right => j_cat.hom(fc, d),
        };
        for &phi in phis {
            obj_index.insert((c, phi), ObjId(objects.len() as u32));
            infos.push(ObjectInfo {
                name: format!("({}|{})", i_cat.object(c).name, j_cat.morphism(phi).name),
                elems: out_mors[c.0 as usize].len() as u32,
            });
            objects.push((c, phi));
        }
    }

    // One comma morphism per (label h: c' → c, anchor morphism at the free
    // end); the other end is determined by composition with f(h).
    let mut mors = Vec::new();
    let mut labels = Vec::new();
    let mut generators = Vec::new();
    let gen_set: std::collections::BTreeSet<MorId> = i_cat.generators().iter().copied().collect();
    for h in i_cat.morphisms() {
        let (c_prime, c) = (i_cat.dom(h), i_cat.cod(h));
        let fh = f.apply_mor(h);
        // Precomposition table out(c) → out(c').
        let table: Vec<u32> = out_mors[c.0 as usize]
            .iter()
            .map(|&xi| out_pos[c_prime.0 as usize][&i_cat.compose(xi, h)])
            .collect();
        let anchors: Vec<(MorId, MorId)> = match flavor {
            // (c, f(h)∘φ') → (c', φ') for every φ': d → f(c').
            CommaFlavor::Left => j_cat
                .hom(d, f.apply_obj(c_prime))
                .iter()
                .map(|&phi_p| (j_cat.compose(fh, phi_p), phi_p))
                .collect(),
            // (c, ψ) → (c', ψ∘f(h)) for every ψ: f(c) → d.
            CommaFlavor::Right => j_cat
                .hom(f.apply_obj(c), d)
                .iter()
                .map(|&psi| (psi, j_cat.compose(psi, fh)))
                .collect(),
        };
        for (src_phi, dst_phi) in anchors {
            let dom = obj_index[&(c, src_phi)];
            let cod = obj_index[&(c_prime, dst_phi)];
            if gen_set.contains(&h) {
                generators.push(MorId(mors.len() as u32));
            }
            mors.push(MorInfo {
                name: format!(
                    "{}@{}",
                    i_cat.morphism(h).name,
                    j_cat.morphism(dst_phi).name
                ),
                dom,
                cod,
                table: table.clone(),
            });
            labels.push(h);
        }
    }
    if mors.len() > MAX_MATERIALIZED_MORPHISMS {
        return Err(EngineError::BudgetExceeded {
            op: "comma category",
            detail: format!("{} comma morphisms would be materialized", mors.len()),
        });
    }
    let flavor_tag = match flavor {
        CommaFlavor::Left => "←",
        CommaFlavor::Right => "→",
    };
    let cat = FinCat::new(
        format!(
            "({}{}{})",
            f.name(),
            flavor_tag,
            j_cat.object(d).name
        ),
        infos,
        mors,
        Some(generators),
    )?;
    Ok(CommaCat {
        cat,
        objects,
        obj_index,
        labels,
        flavor,
    })
}

/// Objects admitting exactly one morphism from every object (terminal).
pub fn terminal_objects(cat: &FinCat) -> Vec<ObjId> {
    cat.objects()
        .filter(|&t| cat.objects().all(|a| cat.hom(a, t).len() == 1))
        .collect()
}

/// Objects admitting exactly one morphism to every object (initial).
pub fn initial_objects(cat: &FinCat) -> Vec<ObjId> {
    cat.objects()
        .filter(|&i| cat.objects().all(|b| cat.hom(i, b).len() == 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{bisimplex, row_embedding, simplex};
    use crate::colimit::{induced_from_colimit, Diagram, DiagramEdge};
    use crate::presheaf::PresheafMap;

    #[test]
    fn elements_of_the_interval() {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let el = category_of_elements(&y1).unwrap();
        // Cells: 2 vertices + 3 edges.
        assert_eq!(el.cat.object_count(), 5);
        el.cat.validate().unwrap();
        let proj = el.projection(&s).unwrap();
        assert_eq!(proj.source().object_count(), 5);
    }

    #[test]
    fn elements_projection_is_faithful_discrete_fibration() {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let el = category_of_elements(&y1).unwrap();
        // Discrete fibration: for every element object E over b and every
        // g: a → b there is exactly one lift into E.
        for (ei, cell) in el.objects.iter().enumerate() {
            for g in s.morphisms() {
                if s.cod(g) != cell.obj {
                    continue;
                }
                let lifts = el
                    .labels
                    .iter()
                    .enumerate()
                    .filter(|&(mi, &label)| {
                        label == g && el.cat.cod(MorId(mi as u32)) == ObjId(ei as u32)
                    })
                    .count();
                assert_eq!(lifts, 1);
            }
        }
    }

    #[test]
    fn density_colimit_recovers_the_presheaf() {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let (sq, _, _) = Presheaf::product(&y1, &y1).unwrap();
        let el = category_of_elements(&sq).unwrap();
        let nodes: Vec<Arc<Presheaf>> = el
            .objects
            .iter()
            .map(|c| Presheaf::yoneda(s.clone(), c.obj))
            .collect();
        let mut edges = Vec::new();
        for &gmi in el.cat.generators() {
            let (src, dst) = (el.cat.dom(gmi), el.cat.cod(gmi));
            let g = el.labels[gmi.0 as usize];
            edges.push(DiagramEdge {
                src: src.0 as usize,
                dst: dst.0 as usize,
                map: Presheaf::yoneda_map(&s, g),
            });
        }
        let d = Diagram::new(nodes, edges).unwrap();
        let col = d.colimit("density").unwrap();
        let cocone: Vec<PresheafMap> = el
            .objects
            .iter()
            .map(|&cell| Presheaf::classifying_map(&sq, cell))
            .collect();
        let cmp = induced_from_colimit(&col, &cocone).unwrap();
        assert!(cmp.is_iso(), "density comparison must be an isomorphism");
    }

    #[test]
    fn left_comma_for_the_row_embedding_has_a_terminal_object() {
        let s = simplex(1);
        let prod = bisimplex(1);
        let f = row_embedding(&s, &prod).unwrap();
        // d in the image: ([1],[0]) = f([1]).
        let d = prod.object_named("([1],[0])").unwrap();
        let comma = comma_category(&f, d, CommaFlavor::Left).unwrap();
        comma.cat.validate().unwrap();
        let terms = terminal_objects(&comma.cat);
        assert_eq!(terms.len(), 1);
        let (c, phi) = comma.objects[terms[0].0 as usize];
        assert_eq!(s.object(c).name, "[1]");
        assert!(prod.is_identity(phi));
    }

    #[test]
    fn comma_categories_validate_off_image() {
        let s = simplex(1);
        let prod = bisimplex(1);
        let f = row_embedding(&s, &prod).unwrap();
        // d = ([1],[1]) is not in the image of the row embedding.
        let d = prod.object_named("([1],[1])").unwrap();
        let left = comma_category(&f, d, CommaFlavor::Left).unwrap();
        let right = comma_category(&f, d, CommaFlavor::Right).unwrap();
        left.cat.validate().unwrap();
        right.cat.validate().unwrap();
        // Left comma objects: Σ_n |hom(([1],[1]), ([n],[0]))| = 1·1 + 3·1.
        assert_eq!(left.cat.object_count(), 4);
        // Right comma objects: Σ_n |hom(([n],[0]), ([1],[1]))| = 2·2 + 3·2.
        assert_eq!(right.cat.object_count(), 10);
        // The row embedding is retracted by the first-coordinate projection,
        // so even off the image the left comma has a terminal object:
        // ([1], (id,!)). Left extensions along it are therefore computed by
        // evaluation — constant in the second coordinate.
        let terms = terminal_objects(&left.cat);
        assert_eq!(terms.len(), 1);
        let (c, phi) = left.objects[terms[0].0 as usize];
        assert_eq!(s.object(c).name, "[1]");
        assert_eq!(prod.object(prod.cod(phi)).name, "([1],[0])");
    }

    #[test]
    fn terminal_and_initial_detection_on_chains() {
        let s = simplex(2);
        // [0] is terminal among chains (a unique collapse map from each);
        // nothing is initial because hom([1], [0]) has one element but
        // hom([0], [1]) has two.
        let o0 = s.object_named("[0]").unwrap();
        assert_eq!(terminal_objects(&s), vec![o0]);
        assert!(initial_objects(&s).is_empty());
        let o2 = s.object_named("[2]").unwrap();
        let y2 = Presheaf::yoneda(s.clone(), o2);
        let el = category_of_elements(&y2).unwrap();
        let terms = terminal_objects(&el.cat);
        assert_eq!(terms.len(), 1);
        let cell = el.objects[terms[0].0 as usize];
        assert_eq!(cell.obj, o2);
        assert_eq!(cell.idx, Presheaf::identity_cell(&s, o2));
    }
}
