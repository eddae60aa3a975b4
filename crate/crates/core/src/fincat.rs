//! Finite categories with explicit, concrete morphisms.
//!
//! Every object of a [`FinCat`] carries a finite *element set* (the underlying
//! set of a poset, chain, or product thereof), and every morphism is stored as
//! an explicit function table on those elements. Composition is function
//! composition followed by a table lookup, so associativity and identity laws
//! hold by construction and can additionally be audited exhaustively with
//! [`FinCat::validate`].
//!
//! All the index categories this crate ships (truncated simplex categories,
//! cube categories, their wide subcategories, products, comma and element
//! categories) embed faithfully into finite sets this way, which keeps the
//! whole engine free of symbolic normal forms. That choice is deliberate: the
//! full cube category is not a (generalized) Reedy category, so normal-form
//! reasoning is unsafe there, while function tables are always comparable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

/// Index of an object within its [`FinCat`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ObjId(pub u32);

/// Index of a morphism within its [`FinCat`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct MorId(pub u32);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// An object together with its concrete element count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectInfo {
    pub name: String,
    /// Number of elements of the underlying finite set. Always ≥ 1 for the
    /// categories built here, which keeps the table representation faithful.
    pub elems: u32,
}

/// A morphism stored as a total function table `dom elements → cod elements`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorInfo {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
    /// `table[x]` is the image of element `x` of the domain.
    pub table: Vec<u32>,
}

/// A finite category with tabled morphisms.
///
/// Construction goes through [`FinCat::new`], which checks the structural
/// invariants that are cheap (well-formed tables, one identity per object,
/// faithfulness of the table representation). The global laws — closure of
/// composition and associativity — hold for every shipped builder by
/// construction and are audited exhaustively by [`FinCat::validate`] in tests.
pub struct FinCat {
    name: String,
    objects: Vec<ObjectInfo>,
    morphisms: Vec<MorInfo>,
    identities: Vec<MorId>,
    hom: BTreeMap<(ObjId, ObjId), Vec<MorId>>,
    table_index: HashMap<(ObjId, ObjId, Vec<u32>), MorId>,
    /// Position of each morphism inside its hom-set list.
    hom_pos: Vec<u32>,
    /// A generating set of non-identity morphisms: every non-identity morphism
    /// is a finite composite of these, with all intermediate objects inside
    /// the category. Builders that know a small generating set supply it; the
    /// safe default is all non-identity morphisms.
    generators: Vec<MorId>,
    split_epi_cache: OnceLock<Vec<bool>>,
    iso_cache: OnceLock<Vec<Option<MorId>>>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("name", &self.name)
            .field("objects", &self.objects.len())
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.objects == other.objects
            && self.morphisms == other.morphisms
    }
}

impl Eq for FinCat {}

impl FinCat {
    /// Builds a category from object and morphism data.
    ///
    /// `generators`, when given, must list non-identity morphisms whose
    /// compositional closure is the whole category; `None` defaults to all
    /// non-identity morphisms.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<ObjectInfo>,
        morphisms: Vec<MorInfo>,
        generators: Option<Vec<MorId>>,
    ) -> Result<Arc<FinCat>> {
        let name = name.into();
        if objects.is_empty() {
            return Err(EngineError::InvalidInput(format!(
                "category `{name}` has no objects"
            )));
        }
        for o in &objects {
            if o.elems == 0 {
                return Err(EngineError::InvalidInput(format!(
                    "object `{}` of `{name}` has an empty element set",
                    o.name
                )));
            }
        }

        let mut hom: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        let mut table_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            let id = MorId(i as u32);
            let de = objects
                .get(m.dom.0 as usize)
                .ok_or_else(|| EngineError::InvalidReference(format!("dom of `{}`", m.name)))?;
            let ce = objects
                .get(m.cod.0 as usize)
                .ok_or_else(|| EngineError::InvalidReference(format!("cod of `{}`", m.name)))?;
            if m.table.len() != de.elems as usize {
                return Err(EngineError::InvalidInput(format!(
                    "table of `{}` has {} entries, domain has {} elements",
                    m.name,
                    m.table.len(),
                    de.elems
                )));
            }
            if m.table.iter().any(|&v| v >= ce.elems) {
                return Err(EngineError::InvalidInput(format!(
                    "table of `{}` maps outside the codomain",
                    m.name
                )));
            }
            let key = (m.dom, m.cod, m.table.clone());
            if table_index.insert(key, id).is_some() {
                return Err(EngineError::InvalidInput(format!(
                    "duplicate morphism table for `{}`: representation is not faithful",
                    m.name
                )));
            }
            hom.entry((m.dom, m.cod)).or_default().push(id);
        }

        let mut identities = Vec::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            let oid = ObjId(i as u32);
            let id_table: Vec<u32> = (0..o.elems).collect();
            let m = table_index
                .get(&(oid, oid, id_table))
                .copied()
                .ok_or_else(|| {
                    EngineError::InvalidInput(format!(
                        "object `{}` of `{name}` has no identity morphism",
                        o.name
                    ))
                })?;
            identities.push(m);
        }

        let mut hom_pos = vec![0u32; morphisms.len()];
        for ms in hom.values() {
            for (pos, &m) in ms.iter().enumerate() {
                hom_pos[m.0 as usize] = pos as u32;
            }
        }

        let generators = match generators {
            Some(g) => {
                for &m in &g {
                    if m.0 as usize >= morphisms.len() {
                        return Err(EngineError::InvalidReference(format!(
                            "generator {m} out of range"
                        )));
                    }
                }
                g
            }
            None => (0..morphisms.len() as u32)
                .map(MorId)
                .filter(|m| !identities.contains(m))
                .collect(),
        };

        Ok(Arc::new(FinCat {
            name,
            objects,
            morphisms,
            identities,
            hom,
            table_index,
            hom_pos,
            generators,
            split_epi_cache: OnceLock::new(),
            iso_cache: OnceLock::new(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn object(&self, o: ObjId) -> &ObjectInfo {
        &self.objects[o.0 as usize]
    }

    pub fn morphism(&self, m: MorId) -> &MorInfo {
        &self.morphisms[m.0 as usize]
    }

    pub fn object_named(&self, name: &str) -> Option<ObjId> {
        self.objects
            .iter()
            .position(|o| o.name == name)
            .map(|i| ObjId(i as u32))
    }

    pub fn morphism_named(&self, name: &str) -> Option<MorId> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .map(|i| MorId(i as u32))
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.0 as usize].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.0 as usize].cod
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.0 as usize]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.dom(m).0 as usize] == m && self.dom(m) == self.cod(m)
    }

    /// The hom-set `a → b` in a fixed deterministic order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of `m` within `hom(dom m, cod m)`.
    pub fn hom_position(&self, m: MorId) -> usize {
        self.hom_pos[m.0 as usize] as usize
    }

    /// Looks up a morphism by its function table.
    pub fn morphism_by_table(&self, dom: ObjId, cod: ObjId, table: &[u32]) -> Option<MorId> {
        self.table_index
            .get(&(dom, cod, table.to_vec()))
            .copied()
    }

    /// Composite `g ∘ f` (first `f`, then `g`).
    ///
    /// Panics if `cod f ≠ dom g` or if the composite table is not a morphism
    /// of the category; both indicate an engine bug, since every shipped
    /// builder is closed under composition.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        let fi = &self.morphisms[f.0 as usize];
        let gi = &self.morphisms[g.0 as usize];
        assert_eq!(
            fi.cod, gi.dom,
            "compose: `{}` then `{}` are not composable in `{}`",
            fi.name, gi.name, self.name
        );
        // Fast paths: identities are common in audit loops.
        if self.identities[fi.dom.0 as usize] == f && fi.dom == fi.cod {
            return g;
        }
        if self.identities[gi.dom.0 as usize] == g && gi.dom == gi.cod {
            return f;
        }
        let table: Vec<u32> = fi.table.iter().map(|&x| gi.table[x as usize]).collect();
        match self.table_index.get(&(fi.dom, gi.cod, table)) {
            Some(&m) => m,
            None => panic!(
                "compose: `{}` ∘ `{}` is missing from `{}` — category not closed",
                gi.name, fi.name, self.name
            ),
        }
    }

    /// Generating set of non-identity morphisms (closure = all morphisms).
    pub fn generators(&self) -> &[MorId] {
        &self.generators
    }

    /// Two-sided inverse of `m`, if `m` is an isomorphism.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let cache = self.iso_cache.get_or_init(|| {
            let mut v = vec![None; self.morphisms.len()];
            for mid in 0..self.morphisms.len() as u32 {
                let m = MorId(mid);
                let (a, b) = (self.dom(m), self.cod(m));
                // A tabled morphism can only be iso if its table is a bijection.
                let mi = &self.morphisms[mid as usize];
                let ce = self.objects[b.0 as usize].elems as usize;
                if mi.table.len() != ce {
                    continue;
                }
                let mut seen = vec![false; ce];
                if mi.table.iter().any(|&x| std::mem::replace(&mut seen[x as usize], true)) {
                    continue;
                }
                for &h in self.hom(b, a) {
                    if self.compose(h, m) == self.identity(a) && self.compose(m, h) == self.identity(b)
                    {
                        v[mid as usize] = Some(h);
                        break;
                    }
                }
            }
            v
        });
        cache[m.0 as usize]
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse(m).is_some()
    }

    /// Whether `m` admits a section (`m ∘ s = id`), i.e. is a split epimorphism.
    ///
    /// Split epis out of an object are what make cells of a presheaf
    /// degenerate; see [`crate::presheaf::Presheaf::nondegenerate_cells`].
    pub fn is_split_epi(&self, m: MorId) -> bool {
        let cache = self.split_epi_cache.get_or_init(|| {
            (0..self.morphisms.len() as u32)
                .map(|mid| {
                    let m = MorId(mid);
                    let (a, b) = (self.dom(m), self.cod(m));
                    self.hom(b, a)
                        .iter()
                        .any(|&s| self.compose(m, s) == self.identity(b))
                })
                .collect()
        });
        cache[m.0 as usize]
    }

    /// Exhaustively audits the category laws: identity unit laws, closure of
    /// composition, and associativity over all composable triples. Quadratic
    /// to cubic in the number of morphisms — meant for tests and loaded data,
    /// not for hot paths.
    pub fn validate(&self) -> Result<()> {
        for m in self.morphisms() {
            let (a, b) = (self.dom(m), self.cod(m));
            if self.compose(m, self.identity(a)) != m || self.compose(self.identity(b), m) != m {
                return Err(EngineError::InvalidInput(format!(
                    "identity law fails at `{}`",
                    self.morphism(m).name
                )));
            }
        }
        // Closure: re-derive each composite table and look it up, rather than
        // relying on compose()'s panic.
        let mut composable: Vec<(MorId, MorId)> = Vec::new();
        for f in self.morphisms() {
            for g in self.morphisms() {
                if self.dom(g) != self.cod(f) {
                    continue;
                }
                let fi = &self.morphisms[f.0 as usize];
                let gi = &self.morphisms[g.0 as usize];
                let table: Vec<u32> = fi.table.iter().map(|&x| gi.table[x as usize]).collect();
                if self.table_index.get(&(fi.dom, gi.cod, table)).is_none() {
                    return Err(EngineError::InvalidInput(format!(
                        "composition not closed: `{}` ∘ `{}`",
                        gi.name, fi.name
                    )));
                }
                composable.push((g, f));
            }
        }
        // Associativity over all composable triples.
        for &(g, f) in &composable {
            for h in self.morphisms() {
                if self.dom(h) != self.cod(g) {
                    continue;
                }
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f) {
                    return Err(EngineError::InvalidInput(format!(
                        "associativity fails on ({}, {}, {})",
                        self.morphism(h).name,
                        self.morphism(g).name,
                        self.morphism(f).name
                    )));
                }
            }
        }
        // The generating set must actually generate.
        let closure = self.generator_closure();
        if closure.len() != self.morphisms.len() {
            return Err(EngineError::InvalidInput(format!(
                "generators of `{}` reach {} of {} morphisms",
                self.name,
                closure.len(),
                self.morphisms.len()
            )));
        }
        Ok(())
    }

    /// Closure of the generator set (plus identities) under composition.
    pub fn generator_closure(&self) -> Vec<MorId> {
        let mut reached = vec![false; self.morphisms.len()];
        let mut known = Vec::new();
        let seeds: Vec<MorId> = self
            .identities
            .iter()
            .chain(&self.generators)
            .copied()
            .collect();
        self.extend_closure(&mut reached, &mut known, &seeds);
        (0..self.morphisms.len() as u32)
            .map(MorId)
            .filter(|m| reached[m.0 as usize])
            .collect()
    }

    /// Grows `reached`/`known` by `seeds` and everything they compose to
    /// with what is already reached. Resumable: repeated calls share state.
    fn extend_closure(&self, reached: &mut [bool], known: &mut Vec<MorId>, seeds: &[MorId]) {
        let mut frontier = Vec::new();
        for &m in seeds {
            if !reached[m.0 as usize] {
                reached[m.0 as usize] = true;
                known.push(m);
                frontier.push(m);
            }
        }
        while let Some(f) = frontier.pop() {
            // Compose with every known morphism on both sides. Anything
            // reached after this pop pairs with `f` when it pops itself.
            let mut newly = Vec::new();
            for &g in known.iter() {
                if self.cod(f) == self.dom(g) {
                    let gf = self.compose(g, f);
                    if !reached[gf.0 as usize] {
                        reached[gf.0 as usize] = true;
                        newly.push(gf);
                    }
                }
                if self.cod(g) == self.dom(f) {
                    let fg = self.compose(f, g);
                    if !reached[fg.0 as usize] {
                        reached[fg.0 as usize] = true;
                        newly.push(fg);
                    }
                }
            }
            for m in newly {
                known.push(m);
                frontier.push(m);
            }
        }
    }

    /// A small generating set: every morphism that admits no factorization
    /// into two non-identity morphisms distinct from itself, patched with
    /// further morphisms (isomorphism cycles can hide behind each other)
    /// until the set provably composes to the whole category.
    pub fn small_generating_set(&self) -> Vec<MorId> {
        let n = self.morphisms.len();
        let mut by_dom: Vec<Vec<MorId>> = vec![Vec::new(); self.objects.len()];
        let mut non_id = Vec::new();
        for i in 0..n as u32 {
            let m = MorId(i);
            if !self.is_identity(m) {
                by_dom[self.dom(m).0 as usize].push(m);
                non_id.push(m);
            }
        }
        let mut reducible = vec![false; n];
        for &f in &non_id {
            for &g in &by_dom[self.cod(f).0 as usize] {
                let h = self.compose(g, f);
                if h != f && h != g && !self.is_identity(h) {
                    reducible[h.0 as usize] = true;
                }
            }
        }
        let mut gens: Vec<MorId> = non_id
            .iter()
            .copied()
            .filter(|m| !reducible[m.0 as usize])
            .collect();
        let mut reached = vec![false; n];
        let mut known = Vec::new();
        let seeds: Vec<MorId> = self.identities.iter().chain(&gens).copied().collect();
        self.extend_closure(&mut reached, &mut known, &seeds);
        loop {
            match reached.iter().position(|r| !r) {
                None => return gens,
                Some(i) => {
                    let m = MorId(i as u32);
                    gens.push(m);
                    self.extend_closure(&mut reached, &mut known, &[m]);
                }
            }
        }
    }

    /// The same category with a different stored generating set. The set is
    /// not re-verified here; `validate` checks that it generates.
    pub fn with_generators(self: &Arc<Self>, generators: Vec<MorId>) -> Result<Arc<FinCat>> {
        for &m in &generators {
            if m.0 as usize >= self.morphisms.len() {
                return Err(EngineError::InvalidReference(format!(
                    "generator {m} out of range"
                )));
            }
        }
        Ok(Arc::new(FinCat {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            hom: self.hom.clone(),
            table_index: self.table_index.clone(),
            hom_pos: self.hom_pos.clone(),
            generators,
            split_epi_cache: OnceLock::new(),
            iso_cache: OnceLock::new(),
        }))
    }
}

/// A functor between two [`FinCat`]s, stored as explicit object and morphism
/// maps and validated on construction.
#[derive(Clone)]
pub struct FinFunctor {
    name: String,
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinFunctor")
            .field("name", &self.name)
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .finish()
    }
}

/// Outcome of the hom-set-by-hom-set fully-faithfulness audit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FullyFaithfulReport {
    pub functor: String,
    pub faithful: bool,
    pub full: bool,
    /// Per hom-set: (source pair, source size, image size, target size).
    pub hom_sets: Vec<HomSetComparison>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomSetComparison {
    pub source_pair: (String, String),
    pub source_size: usize,
    pub image_size: usize,
    pub target_size: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl FinFunctor {
    /// Builds and fully validates a functor: domain/codomain compatibility,
    /// identity preservation, and preservation of all binary composites.
    pub fn new(
        name: impl Into<String>,
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<FinFunctor> {
        let name = name.into();
        if object_map.len() != source.object_count() || morphism_map.len() != source.morphism_count()
        {
            return Err(EngineError::InvalidInput(format!(
                "functor `{name}`: map lengths do not match the source category"
            )));
        }
        for o in source.objects() {
            if object_map[o.0 as usize].0 as usize >= target.object_count() {
                return Err(EngineError::InvalidReference(format!(
                    "functor `{name}`: image object out of range"
                )));
            }
        }
        for m in source.morphisms() {
            let fm = morphism_map[m.0 as usize];
            if fm.0 as usize >= target.morphism_count() {
                return Err(EngineError::InvalidReference(format!(
                    "functor `{name}`: image morphism out of range"
                )));
            }
            if target.dom(fm) != object_map[source.dom(m).0 as usize]
                || target.cod(fm) != object_map[source.cod(m).0 as usize]
            {
                return Err(EngineError::InvalidInput(format!(
                    "functor `{name}`: `{}` is not sent to a morphism with matching endpoints",
                    source.morphism(m).name
                )));
            }
        }
        for o in source.objects() {
            if morphism_map[source.identity(o).0 as usize]
                != target.identity(object_map[o.0 as usize])
            {
                return Err(EngineError::InvalidInput(format!(
                    "functor `{name}`: identity of `{}` not preserved",
                    source.object(o).name
                )));
            }
        }
        for f in source.morphisms() {
            for b in source.objects() {
                if b != source.cod(f) {
                    continue;
                }
                for c in source.objects() {
                    for &g in source.hom(b, c) {
                        let lhs = morphism_map[source.compose(g, f).0 as usize];
                        let rhs = target.compose(
                            morphism_map[g.0 as usize],
                            morphism_map[f.0 as usize],
                        );
                        if lhs != rhs {
                            return Err(EngineError::InvalidInput(format!(
                                "functor `{name}`: composition not preserved on ({}, {})",
                                source.morphism(g).name,
                                source.morphism(f).name
                            )));
                        }
                    }
                }
            }
        }
        Ok(FinFunctor {
            name,
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn apply_obj(&self, o: ObjId) -> ObjId {
        self.object_map[o.0 as usize]
    }

    pub fn apply_mor(&self, m: MorId) -> MorId {
        self.morphism_map[m.0 as usize]
    }

    /// Audits faithfulness and fullness hom-set by hom-set.
    pub fn fully_faithful_report(&self) -> FullyFaithfulReport {
        let mut hom_sets = Vec::new();
        let mut faithful = true;
        let mut full = true;
        for a in self.source.objects() {
            for b in self.source.objects() {
                let src = self.source.hom(a, b);
                let tgt = self
                    .target
                    .hom(self.apply_obj(a), self.apply_obj(b));
                let mut image: Vec<MorId> = src.iter().map(|&m| self.apply_mor(m)).collect();
                image.sort();
                image.dedup();
                let injective = image.len() == src.len();
                let surjective = image.len() == tgt.len();
                faithful &= injective;
                full &= surjective;
                hom_sets.push(HomSetComparison {
                    source_pair: (
                        self.source.object(a).name.clone(),
                        self.source.object(b).name.clone(),
                    ),
                    source_size: src.len(),
                    image_size: image.len(),
                    target_size: tgt.len(),
                    injective,
                    surjective,
                });
            }
        }
        FullyFaithfulReport {
            functor: self.name.clone(),
            faithful,
            full,
            hom_sets,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The walking arrow `a → b` with one-element realizations.
    fn walking_arrow() -> Arc<FinCat> {
        FinCat::new(
            "arrow",
            vec![
                ObjectInfo { name: "a".into(), elems: 1 },
                ObjectInfo { name: "b".into(), elems: 2 },
            ],
            vec![
                MorInfo { name: "id_a".into(), dom: ObjId(0), cod: ObjId(0), table: vec![0] },
                MorInfo { name: "id_b".into(), dom: ObjId(1), cod: ObjId(1), table: vec![0, 1] },
                MorInfo { name: "f".into(), dom: ObjId(0), cod: ObjId(1), table: vec![0] },
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn identities_and_composition() {
        let c = walking_arrow();
        let f = c.morphism_named("f").unwrap();
        let ia = c.identity(ObjId(0));
        let ib = c.identity(ObjId(1));
        assert_eq!(c.compose(f, ia), f);
        assert_eq!(c.compose(ib, f), f);
        assert!(c.is_identity(ia));
        assert!(!c.is_identity(f));
        c.validate().unwrap();
    }

    #[test]
    fn missing_identity_rejected() {
        let err = FinCat::new(
            "bad",
            vec![ObjectInfo { name: "a".into(), elems: 1 }],
            vec![],
            None,
        );
        assert!(err.is_err());
    }

    #[test]
    fn duplicate_tables_rejected() {
        let err = FinCat::new(
            "bad",
            vec![ObjectInfo { name: "a".into(), elems: 1 }],
            vec![
                MorInfo { name: "id".into(), dom: ObjId(0), cod: ObjId(0), table: vec![0] },
                MorInfo { name: "id2".into(), dom: ObjId(0), cod: ObjId(0), table: vec![0] },
            ],
            None,
        );
        assert!(err.is_err());
    }

    #[test]
    fn iso_and_split_epi_detection() {
        let c = walking_arrow();
        let f = c.morphism_named("f").unwrap();
        assert!(!c.is_iso(f));
        assert!(c.is_iso(c.identity(ObjId(0))));
        assert!(!c.is_split_epi(f));
        assert!(c.is_split_epi(c.identity(ObjId(1))));
    }

    #[test]
    fn identity_functor_validates() {
        let c = walking_arrow();
        let f = FinFunctor::new(
            "id",
            c.clone(),
            c.clone(),
            c.objects().collect(),
            c.morphisms().collect(),
        )
        .unwrap();
        let rep = f.fully_faithful_report();
        assert!(rep.faithful && rep.full);
    }
}
