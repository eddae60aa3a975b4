//! Seeded random corpora of finite presheaves.
//!
//! Objects are grown by repeatedly attaching a representable along a
//! random subobject (a pushout of a monomorphism, so every growth leg is
//! again a monomorphism), all randomness flowing from one seed through a
//! [`ChaCha8Rng`]. The same [`CorpusSpec`] always reproduces the same
//! corpus; when a step would exceed the cell budget the step is skipped
//! deterministically, and infeasible specs error out rather than being
//! silently truncated.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bases::{base_by_name, object_level};
use crate::colimit::pushout;
use crate::error::{EngineError, Result};
use crate::fincat::{FinCat, ObjId};
use crate::marked::{degenerate_edges, MarkedSet};
use crate::presheaf::{CellRef, Presheaf, PresheafMap};
use crate::search::HomSearch;

/// Everything that determines a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// Base category name, e.g. `simplex:2` (see [`base_by_name`]).
    pub base: String,
    pub object_count: usize,
    /// Cell budget per level; growth steps that would exceed it are
    /// skipped.
    pub max_cells: u32,
    /// Representables above this level are never attached.
    pub max_level: usize,
    pub seed: u64,
}

/// A generated corpus: objects plus the monomorphisms produced while
/// growing them (stage inclusions and random subobject inclusions).
pub struct Corpus {
    pub spec: CorpusSpec,
    pub base: Arc<FinCat>,
    pub objects: Vec<Arc<Presheaf>>,
    pub monos: Vec<PresheafMap>,
}

fn all_cells(x: &Presheaf) -> Vec<CellRef> {
    let mut out = Vec::new();
    for o in x.base().objects() {
        for idx in 0..x.cells(o) {
            out.push(CellRef { obj: o, idx });
        }
    }
    out
}

fn within_budget(x: &Presheaf, max_cells: u32) -> bool {
    x.base().objects().all(|o| x.cells(o) <= max_cells)
}

/// Enumerated hom-set with a budget; `None` when enumeration would be too
/// large, so callers can skip the pair deterministically.
fn bounded_homs(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<Option<Vec<PresheafMap>>> {
    match HomSearch::new(x, y)?.with_budget(200_000).enumerate() {
        Ok(maps) => Ok(Some(maps)),
        Err(EngineError::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn grow_object(
    base: &Arc<FinCat>,
    allowed: &[ObjId],
    spec: &CorpusSpec,
    label: usize,
    rng: &mut ChaCha8Rng,
    monos: &mut Vec<PresheafMap>,
) -> Result<Arc<Presheaf>> {
    let start = rng.gen_range(0..10u32);
    let mut x = match start {
        0 => Presheaf::empty(base.clone()),
        1 => Presheaf::terminal(base.clone()),
        _ => {
            let c = allowed[rng.gen_range(0..allowed.len())];
            let y = Presheaf::yoneda(base.clone(), c);
            if within_budget(&y, spec.max_cells) {
                y
            } else {
                Presheaf::terminal(base.clone())
            }
        }
    };
    if !within_budget(&x, spec.max_cells) {
        return Err(EngineError::BudgetExceeded {
            op: "corpus generation",
            detail: format!(
                "no starting object of `{}` fits within {} cells per level",
                base.name(),
                spec.max_cells
            ),
        });
    }
    let rounds = rng.gen_range(0..4u32);
    let mut stage = 0usize;
    for _ in 0..rounds {
        for _attempt in 0..4 {
            let c = allowed[rng.gen_range(0..allowed.len())];
            let y = Presheaf::yoneda(base.clone(), c);
            let cells = all_cells(&y);
            if cells.is_empty() {
                continue;
            }
            let take = rng.gen_range(1..=cells.len().min(3));
            let seeds: Vec<CellRef> = cells
                .choose_multiple(rng, take)
                .cloned()
                .collect();
            let (_, incl) = y.sub_generated(format!("S{label}.{stage}"), &seeds)?;
            let Some(attachments) = bounded_homs(&incl.source, &x)? else {
                continue;
            };
            if attachments.is_empty() {
                continue;
            }
            let g = attachments[rng.gen_range(0..attachments.len())].clone();
            let po = pushout(&incl, &g, format!("X{label}.{stage}"))?;
            if !within_budget(&po.object, spec.max_cells) {
                continue;
            }
            monos.push(po.from_right.clone());
            x = po.object;
            stage += 1;
            break;
        }
    }
    // One random subobject inclusion per object, when there is anything to
    // include.
    let cells = all_cells(&x);
    if !cells.is_empty() {
        let take = rng.gen_range(1..=cells.len().min(3));
        let seeds: Vec<CellRef> = cells.choose_multiple(rng, take).cloned().collect();
        let (_, incl) = x.sub_generated(format!("sub(X{label})"), &seeds)?;
        monos.push(incl);
    }
    Ok(x)
}

/// Deterministically generate the corpus described by `spec`.
pub fn gen_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let base = base_by_name(&spec.base)?;
    if spec.max_cells == 0 {
        return Err(EngineError::InvalidInput(
            "corpus cell budget must be positive".into(),
        ));
    }
    let allowed: Vec<ObjId> = base
        .objects()
        .filter(|&o| object_level(&base, o) <= spec.max_level)
        .collect();
    if allowed.is_empty() {
        return Err(EngineError::InvalidInput(format!(
            "no object of `{}` has level ≤ {}",
            base.name(),
            spec.max_level
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut objects = Vec::with_capacity(spec.object_count);
    let mut monos = Vec::new();
    for label in 0..spec.object_count {
        objects.push(grow_object(
            &base, &allowed, spec, label, &mut rng, &mut monos,
        )?);
    }
    Ok(Corpus {
        spec: spec.clone(),
        base,
        objects,
        monos,
    })
}

/// Random marked variants of simplicial corpus objects: every degenerate
/// edge marked (as required), plus a random subset of the remaining edges.
pub fn marked_variants(corpus: &Corpus, seed: u64) -> Result<Vec<MarkedSet>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(corpus.objects.len());
    for x in &corpus.objects {
        let mut marked = degenerate_edges(x)?;
        let o1 = x
            .base()
            .object_named("[1]")
            .ok_or_else(|| EngineError::InvalidInput("marking needs an edge level".into()))?;
        let extra: BTreeSet<u32> = (0..x.cells(o1))
            .filter(|e| !marked.contains(e) && rng.gen_bool(0.5))
            .collect();
        marked.extend(extra);
        out.push(MarkedSet::new(x.clone(), marked)?);
    }
    Ok(out)
}

/// Sample up to `count` maps between random corpus objects. Pairs whose
/// hom-set enumeration exceeds the internal budget are skipped, so the
/// result can be shorter than requested; the selection is deterministic
/// in `seed`.
pub fn sample_maps(objects: &[Arc<Presheaf>], count: usize, seed: u64) -> Result<Vec<PresheafMap>> {
    if objects.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count.saturating_mul(8) {
        if out.len() >= count {
            break;
        }
        let i = rng.gen_range(0..objects.len());
        let j = rng.gen_range(0..objects.len());
        let Some(homs) = bounded_homs(&objects[i], &objects[j])? else {
            continue;
        };
        if homs.is_empty() {
            continue;
        }
        out.push(homs[rng.gen_range(0..homs.len())].clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(base: &str, count: usize, seed: u64) -> CorpusSpec {
        CorpusSpec {
            base: base.into(),
            object_count: count,
            max_cells: 25,
            max_level: 2,
            seed,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let s = spec("simplex:2", 12, 7);
        let a = gen_corpus(&s).unwrap();
        let b = gen_corpus(&s).unwrap();
        assert_eq!(a.objects.len(), 12);
        assert_eq!(a.monos.len(), b.monos.len());
        for (x, y) in a.objects.iter().zip(&b.objects) {
            assert!(x.same_presheaf(y));
        }
        for (f, g) in a.monos.iter().zip(&b.monos) {
            assert_eq!(f, g);
        }
    }

    #[test]
    fn different_seeds_differ() {
        let a = gen_corpus(&spec("simplex:2", 12, 7)).unwrap();
        let b = gen_corpus(&spec("simplex:2", 12, 8)).unwrap();
        let all_same = a
            .objects
            .iter()
            .zip(&b.objects)
            .all(|(x, y)| x.same_presheaf(y));
        assert!(!all_same);
    }

    #[test]
    fn empty_count_gives_empty_corpus() {
        let c = gen_corpus(&spec("simplex:2", 0, 1)).unwrap();
        assert!(c.objects.is_empty());
        assert!(c.monos.is_empty());
    }

    #[test]
    fn budgets_and_levels_are_respected() {
        let s = CorpusSpec {
            base: "simplex:2".into(),
            object_count: 15,
            max_cells: 12,
            max_level: 1,
            seed: 3,
        };
        let c = gen_corpus(&s).unwrap();
        let top = c.base.object_named("[2]").unwrap();
        for x in &c.objects {
            for o in c.base.objects() {
                assert!(x.cells(o) <= 12, "{} exceeds the budget", x.name());
            }
            assert!(
                x.nondegenerate_cells(top).is_empty(),
                "{} has a nondegenerate top cell despite max_level 1",
                x.name()
            );
        }
    }

    #[test]
    fn collected_maps_are_monomorphisms() {
        let c = gen_corpus(&spec("cube:2", 10, 11)).unwrap();
        assert!(!c.monos.is_empty());
        for m in &c.monos {
            assert!(m.is_mono(), "map into {} is not mono", m.target.name());
        }
    }

    #[test]
    fn marked_variants_mark_all_degenerates() {
        let c = gen_corpus(&spec("simplex:2", 6, 5)).unwrap();
        let marked = marked_variants(&c, 99).unwrap();
        assert_eq!(marked.len(), 6);
        for (m, x) in marked.iter().zip(&c.objects) {
            let deg = degenerate_edges(x).unwrap();
            assert!(deg.is_subset(&m.marked));
        }
    }

    #[test]
    fn sampled_maps_are_composable_with_corpus_objects() {
        let c = gen_corpus(&spec("simplex:2", 8, 21)).unwrap();
        let maps = sample_maps(&c.objects, 10, 4).unwrap();
        assert!(!maps.is_empty());
        for f in &maps {
            assert!(c.objects.iter().any(|x| x.same_presheaf(&f.source)));
            assert!(c.objects.iter().any(|x| x.same_presheaf(&f.target)));
        }
    }

    #[test]
    fn unknown_bases_are_rejected() {
        assert!(gen_corpus(&spec("dodecahedron:2", 3, 1)).is_err());
    }
}
