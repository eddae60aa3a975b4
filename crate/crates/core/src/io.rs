//! Versioned JSON documents for everything the engine reads or writes:
//! base categories, presheaves, maps, marked objects, corpora, and audit
//! reports. Every document carries a top-level `format` tag and parsers
//! reject tags they do not recognize, so schema changes are explicit
//! rather than silent.
//!
//! Base categories are referenced by name (`simplex:2`, `cube:1`, …) when
//! the named builder reproduces them exactly, and inlined as full
//! category documents otherwise, so presheaf files over ad-hoc bases stay
//! self-contained.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bases::base_by_name;
use crate::corpus::{Corpus, CorpusSpec};
use crate::error::{EngineError, Result};
use crate::fincat::{FinCat, MorId, MorInfo, ObjectInfo};
use crate::marked::MarkedSet;
use crate::presheaf::{Presheaf, PresheafMap};
use crate::report::SuiteReport;

pub const CAT_FORMAT: &str = "fincat/1";
pub const SPACE_FORMAT: &str = "presheaf/1";
pub const MAP_FORMAT: &str = "presheaf-map/1";
pub const MARKED_FORMAT: &str = "marked/1";
pub const CORPUS_FORMAT: &str = "corpus/1";

fn expect_format(kind: &str, got: &str, want: &str) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(EngineError::InvalidInput(format!(
            "{kind} document has format `{got}`, expected `{want}`"
        )))
    }
}

fn json_error(kind: &str, e: serde_json::Error) -> EngineError {
    EngineError::InvalidInput(format!("{kind} document is not valid JSON: {e}"))
}

/// Serializes any document with stable key order (struct declaration
/// order; map keys sorted), which is what makes corpus serialization
/// byte-reproducible.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| EngineError::InvalidInput(format!("serialization failed: {e}")))
}

// ---------------------------------------------------------------------
// Base categories
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatObjectDoc {
    pub name: String,
    pub elems: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatMorphismDoc {
    pub id: u32,
    pub name: String,
    pub dom: u32,
    pub cod: u32,
    pub table: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatDoc {
    pub format: String,
    pub name: String,
    pub objects: Vec<CatObjectDoc>,
    pub morphisms: Vec<CatMorphismDoc>,
    pub generators: Vec<u32>,
}

pub fn cat_to_doc(base: &FinCat) -> CatDoc {
    CatDoc {
        format: CAT_FORMAT.into(),
        name: base.name().to_string(),
        objects: base
            .objects()
            .map(|o| {
                let info = base.object(o);
                CatObjectDoc {
                    name: info.name.clone(),
                    elems: info.elems,
                }
            })
            .collect(),
        morphisms: base
            .morphisms()
            .map(|m| {
                let info = base.morphism(m);
                CatMorphismDoc {
                    id: m.0,
                    name: info.name.clone(),
                    dom: info.dom.0,
                    cod: info.cod.0,
                    table: info.table.clone(),
                }
            })
            .collect(),
        generators: base.generators().iter().map(|g| g.0).collect(),
    }
}

pub fn cat_from_doc(doc: &CatDoc) -> Result<Arc<FinCat>> {
    expect_format("category", &doc.format, CAT_FORMAT)?;
    for (i, m) in doc.morphisms.iter().enumerate() {
        if m.id as usize != i {
            return Err(EngineError::InvalidInput(format!(
                "category `{}`: morphism ids must be consecutive, found id {} at position {i}",
                doc.name, m.id
            )));
        }
    }
    let objects: Vec<ObjectInfo> = doc
        .objects
        .iter()
        .map(|o| ObjectInfo {
            name: o.name.clone(),
            elems: o.elems,
        })
        .collect();
    let morphisms: Vec<MorInfo> = doc
        .morphisms
        .iter()
        .map(|m| MorInfo {
            name: m.name.clone(),
            dom: crate::fincat::ObjId(m.dom),
            cod: crate::fincat::ObjId(m.cod),
            table: m.table.clone(),
        })
        .collect();
    FinCat::new(
        doc.name.clone(),
        objects,
        morphisms,
        Some(doc.generators.iter().map(|&g| MorId(g)).collect()),
    )
}

/// A base category inside another document: by resolvable name when the
/// named builder reproduces it exactly, inline otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Named(String),
    Inline(Box<CatDoc>),
}

/// The squared chain base is named `product(simplex:N,simplex:N)` by its
/// builder but resolves under the ref `bisimplex:N`.
fn bisimplex_level(name: &str) -> Option<usize> {
    let inner = name.strip_prefix("product(simplex:")?;
    let (n, rest) = inner.split_once(",simplex:")?;
    let n: usize = n.parse().ok()?;
    let m: usize = rest.strip_suffix(')')?.parse().ok()?;
    (n == m).then_some(n)
}

pub fn base_to_ref(base: &Arc<FinCat>) -> BaseRef {
    let mut candidates = vec![base.name().to_string()];
    if let Some(n) = bisimplex_level(base.name()) {
        candidates.push(format!("bisimplex:{n}"));
    }
    for cand in candidates {
        if let Ok(named) = base_by_name(&cand) {
            if *named == **base {
                return BaseRef::Named(cand);
            }
        }
    }
    BaseRef::Inline(Box::new(cat_to_doc(base)))
}

pub fn base_from_ref(r: &BaseRef) -> Result<Arc<FinCat>> {
    match r {
        BaseRef::Named(s) => base_by_name(s),
        BaseRef::Inline(doc) => cat_from_doc(doc),
    }
}

// ---------------------------------------------------------------------
// Presheaves and maps
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub format: String,
    pub base: BaseRef,
    pub name: String,
    /// Cell ids per object, keyed by object name. Ids are consecutive
    /// from zero; listing them keeps files self-describing.
    pub cells: BTreeMap<String, Vec<u32>>,
    /// Action tables keyed by morphism id (stringified: JSON object keys
    /// are strings). For `m: a → b`, `action[m][x]` is the image in
    /// `X(a)` of cell `x ∈ X(b)`.
    pub action: BTreeMap<String, Vec<u32>>,
}

pub fn space_to_doc(x: &Presheaf) -> SpaceDoc {
    let base = x.base();
    let cells = base
        .objects()
        .map(|o| (base.object(o).name.clone(), (0..x.cells(o)).collect()))
        .collect();
    let action = base
        .morphisms()
        .map(|m| {
            let table: Vec<u32> = (0..x.cells(base.cod(m))).map(|c| x.act(m, c)).collect();
            (m.0.to_string(), table)
        })
        .collect();
    SpaceDoc {
        format: SPACE_FORMAT.into(),
        base: base_to_ref(base),
        name: x.name().to_string(),
        cells,
        action,
    }
}

pub fn space_from_doc(doc: &SpaceDoc) -> Result<Arc<Presheaf>> {
    expect_format("presheaf", &doc.format, SPACE_FORMAT)?;
    let base = base_from_ref(&doc.base)?;
    let mut levels = vec![0u32; base.object_count()];
    for (name, ids) in &doc.cells {
        let o = base.object_named(name).ok_or_else(|| {
            EngineError::UnknownName(format!(
                "object `{name}` in presheaf `{}` is not in base `{}`",
                doc.name,
                base.name()
            ))
        })?;
        for (i, &id) in ids.iter().enumerate() {
            if id != i as u32 {
                return Err(EngineError::InvalidInput(format!(
                    "presheaf `{}`: cell ids at `{name}` must be consecutive from 0",
                    doc.name
                )));
            }
        }
        levels[o.0 as usize] = ids.len() as u32;
    }
    let mut tables = vec![Vec::new(); base.morphism_count()];
    for (key, table) in &doc.action {
        let id: usize = key.parse().map_err(|_| {
            EngineError::InvalidInput(format!(
                "presheaf `{}`: action key `{key}` is not a morphism id",
                doc.name
            ))
        })?;
        if id >= base.morphism_count() {
            return Err(EngineError::InvalidReference(format!(
                "presheaf `{}`: morphism id {id} out of range for base `{}`",
                doc.name,
                base.name()
            )));
        }
        tables[id] = table.clone();
    }
    Presheaf::from_tables(base, doc.name.clone(), levels, tables)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDoc {
    pub format: String,
    pub source: SpaceDoc,
    pub target: SpaceDoc,
    /// Component tables keyed by object name: `components[o][x]` is the
    /// image of source cell `x` at `o`.
    pub components: BTreeMap<String, Vec<u32>>,
}

pub fn map_to_doc(f: &PresheafMap) -> MapDoc {
    let base = f.source.base();
    MapDoc {
        format: MAP_FORMAT.into(),
        source: space_to_doc(&f.source),
        target: space_to_doc(&f.target),
        components: base
            .objects()
            .map(|o| (base.object(o).name.clone(), f.component(o).to_vec()))
            .collect(),
    }
}

pub fn map_from_doc(doc: &MapDoc) -> Result<PresheafMap> {
    expect_format("presheaf map", &doc.format, MAP_FORMAT)?;
    let source = space_from_doc(&doc.source)?;
    let target = space_from_doc(&doc.target)?;
    let base = source.base().clone();
    let mut components = vec![Vec::new(); base.object_count()];
    for (name, table) in &doc.components {
        let o = base.object_named(name).ok_or_else(|| {
            EngineError::UnknownName(format!(
                "object `{name}` in a map component is not in base `{}`",
                base.name()
            ))
        })?;
        components[o.0 as usize] = table.clone();
    }
    PresheafMap::new(source, target, components)
}

// ---------------------------------------------------------------------
// Marked objects
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MarkedDoc {
    pub format: String,
    pub simplicial: SpaceDoc,
    pub marked: Vec<u32>,
}

pub fn marked_to_doc(m: &MarkedSet) -> MarkedDoc {
    MarkedDoc {
        format: MARKED_FORMAT.into(),
        simplicial: space_to_doc(&m.space),
        marked: m.marked.iter().copied().collect(),
    }
}

pub fn marked_from_doc(doc: &MarkedDoc) -> Result<MarkedSet> {
    expect_format("marked object", &doc.format, MARKED_FORMAT)?;
    let space = space_from_doc(&doc.simplicial)?;
    MarkedSet::new(space, doc.marked.iter().copied().collect())
}

// ---------------------------------------------------------------------
// Corpora
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusDoc {
    pub format: String,
    pub spec: CorpusSpec,
    pub objects: Vec<SpaceDoc>,
    /// Monomorphisms collected during growth; self-contained because
    /// their endpoints include intermediate stages, not only the final
    /// corpus objects.
    pub monos: Vec<MapDoc>,
}

pub fn corpus_to_doc(c: &Corpus) -> CorpusDoc {
    CorpusDoc {
        format: CORPUS_FORMAT.into(),
        spec: c.spec.clone(),
        objects: c.objects.iter().map(|x| space_to_doc(x)).collect(),
        monos: c.monos.iter().map(map_to_doc).collect(),
    }
}

pub fn corpus_from_doc(doc: &CorpusDoc) -> Result<Corpus> {
    expect_format("corpus", &doc.format, CORPUS_FORMAT)?;
    let base = base_by_name(&doc.spec.base)?;
    let objects = doc
        .objects
        .iter()
        .map(space_from_doc)
        .collect::<Result<Vec<_>>>()?;
    let monos = doc
        .monos
        .iter()
        .map(map_from_doc)
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus {
        spec: doc.spec.clone(),
        base,
        objects,
        monos,
    })
}

// ---------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------

pub fn report_from_json(s: &str) -> Result<SuiteReport> {
    let r: SuiteReport = serde_json::from_str(s).map_err(|e| json_error("report", e))?;
    expect_format("report", &r.format, SuiteReport::FORMAT)?;
    Ok(r)
}

pub fn space_from_json(s: &str) -> Result<Arc<Presheaf>> {
    let doc: SpaceDoc = serde_json::from_str(s).map_err(|e| json_error("presheaf", e))?;
    space_from_doc(&doc)
}

pub fn map_from_json(s: &str) -> Result<PresheafMap> {
    let doc: MapDoc = serde_json::from_str(s).map_err(|e| json_error("presheaf map", e))?;
    map_from_doc(&doc)
}

pub fn marked_from_json(s: &str) -> Result<MarkedSet> {
    let doc: MarkedDoc = serde_json::from_str(s).map_err(|e| json_error("marked object", e))?;
    marked_from_doc(&doc)
}

pub fn corpus_from_json(s: &str) -> Result<Corpus> {
    let doc: CorpusDoc = serde_json::from_str(s).map_err(|e| json_error("corpus", e))?;
    corpus_from_doc(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{bisimplex, cube_conn, dedekind_cubes, product, simplex};
    use crate::corpus::{gen_corpus, marked_variants, CorpusSpec};
    use crate::report::{CheckReport, SuiteReport};

    fn small_spec(base: &str, seed: u64) -> CorpusSpec {
        CorpusSpec {
            base: base.into(),
            object_count: 4,
            max_cells: 12,
            max_level: 2,
            seed,
        }
    }

    #[test]
    fn category_documents_round_trip() {
        for base in [simplex(2), dedekind_cubes(1), cube_conn(1)] {
            let doc = cat_to_doc(&base);
            let json = to_json(&doc).unwrap();
            let parsed: CatDoc = serde_json::from_str(&json).unwrap();
            let rebuilt = cat_from_doc(&parsed).unwrap();
            assert_eq!(*rebuilt, *base);
        }
    }

    #[test]
    fn shipped_bases_are_referenced_by_name() {
        for (base, want) in [
            (simplex(2), "simplex:2"),
            (dedekind_cubes(1), "cube:1"),
            (cube_conn(2), "cube-conn:2"),
            (bisimplex(1), "bisimplex:1"),
        ] {
            match base_to_ref(&base) {
                BaseRef::Named(n) => assert_eq!(n, want),
                BaseRef::Inline(_) => panic!("{want} should resolve by name"),
            }
        }
    }

    #[test]
    fn unrecognized_bases_are_inlined_and_round_trip() {
        let odd = product(&simplex(1), &simplex(2));
        let r = base_to_ref(&odd);
        assert!(matches!(r, BaseRef::Inline(_)));
        let x = Presheaf::terminal(odd.clone());
        let doc = space_to_doc(&x);
        let json = to_json(&doc).unwrap();
        let back = space_from_json(&json).unwrap();
        assert!(back.same_presheaf(&x));
    }

    #[test]
    fn presheaf_documents_round_trip() {
        let corpus = gen_corpus(&small_spec("simplex:2", 41)).unwrap();
        for x in &corpus.objects {
            let json = to_json(&space_to_doc(x)).unwrap();
            let back = space_from_json(&json).unwrap();
            assert!(back.same_presheaf(x), "object `{}`", x.name());
        }
        // Representables store their action lazily; serialization
        // materializes it.
        let cube = dedekind_cubes(2);
        let y = Presheaf::yoneda(cube.clone(), cube.object_named("[1]^2").unwrap());
        let back = space_from_json(&to_json(&space_to_doc(&y)).unwrap()).unwrap();
        assert!(back.same_presheaf(&y));
    }

    #[test]
    fn map_documents_round_trip() {
        let corpus = gen_corpus(&small_spec("cube:2", 42)).unwrap();
        assert!(!corpus.monos.is_empty());
        for m in &corpus.monos {
            let json = to_json(&map_to_doc(m)).unwrap();
            let back = map_from_json(&json).unwrap();
            assert_eq!(back, *m);
        }
    }

    #[test]
    fn marked_documents_round_trip() {
        let corpus = gen_corpus(&small_spec("simplex:2", 43)).unwrap();
        for v in marked_variants(&corpus, 44).unwrap() {
            let json = to_json(&marked_to_doc(&v)).unwrap();
            let back = marked_from_json(&json).unwrap();
            assert!(back.same_marked_set(&v));
        }
    }

    #[test]
    fn corpus_serialization_is_byte_identical_across_regeneration() {
        let spec = small_spec("simplex:2", 45);
        let a = to_json(&corpus_to_doc(&gen_corpus(&spec).unwrap())).unwrap();
        let b = to_json(&corpus_to_doc(&gen_corpus(&spec).unwrap())).unwrap();
        assert_eq!(a, b);
        let back = corpus_from_json(&a).unwrap();
        assert_eq!(to_json(&corpus_to_doc(&back)).unwrap(), a);
    }

    #[test]
    fn report_serialization_round_trips() {
        let mut suite = SuiteReport::new();
        suite.push(CheckReport::pass("alpha", "fine").with_param("level", 2));
        suite.push(CheckReport::fail("beta", "broke", "the witness"));
        suite.push(CheckReport::skipped("gamma", "no finite construction"));
        let json = to_json(&suite).unwrap();
        let back = report_from_json(&json).unwrap();
        assert_eq!(to_json(&back).unwrap(), json);
        assert_eq!(back.checks.len(), 3);
        assert_eq!(back.exit_code(), 1);
    }

    #[test]
    fn unknown_formats_are_rejected() {
        let x = Presheaf::terminal(simplex(1));
        let mut doc = space_to_doc(&x);
        doc.format = "presheaf/9".into();
        assert!(space_from_doc(&doc).is_err());

        let mut suite = SuiteReport::new();
        suite.format = "audit-report/9".into();
        let json = to_json(&suite).unwrap();
        assert!(report_from_json(&json).is_err());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let x = Presheaf::terminal(simplex(1));
        let mut doc = space_to_doc(&x);
        doc.cells.insert("[7]".into(), vec![0]);
        assert!(space_from_doc(&doc).is_err());

        let mut doc = space_to_doc(&x);
        doc.action.insert("99".into(), vec![0]);
        assert!(space_from_doc(&doc).is_err());

        // A tampered action table that breaks shape is caught on parse.
        let mut doc = space_to_doc(&x);
        let key = doc.action.keys().next().unwrap().clone();
        doc.action.get_mut(&key).unwrap().push(7);
        assert!(space_from_doc(&doc).is_err());
    }
}
