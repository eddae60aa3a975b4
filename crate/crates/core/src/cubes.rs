//! Triangulation of cubical sets and its right adjoint.
//!
//! The bridge between cube-shaped and chain-shaped presheaves runs through
//! the nerve of each Boolean poset: `N_m` has the monotone chains of
//! `2^m` as cells — `(k+2)^m` of them in degree `k`. Triangulation is the
//! coend `T(X)_k = (⊔_m X_m × N_{m,k}) / ~`, computed as a union-find over
//! relation instances; cubification is `C(X)_m = hom(N_m, X)`, computed by
//! enumerating natural maps. Unit, counit, and both transposes are
//! constructed explicitly so adjunction claims can be audited rather than
//! assumed.
//!
//! Relation schedule: for a general cubical set, one relation instance per
//! base generator and pair of cells; for a representable `y(c)`, the single
//! instance `(x, s) ~ (id_c, N(x)(s))` per pair (the relation at `θ = x`)
//! already collapses everything onto the terminal normal form, which keeps
//! degree-3 triangulations tractable. Both schedules generate the same
//! partition, and tests compare them cell for cell at low degree.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::colimit::UnionFind;
use crate::error::{EngineError, Result};
use crate::fincat::{FinCat, ObjId};
use crate::homology::simplex_truncation;
use crate::presheaf::{Presheaf, PresheafMap};
use crate::search::hom_set;

/// Dimension of a cube object, read off its element count (`2^n`).
pub fn cube_dim(base: &FinCat, o: ObjId) -> usize {
    let e = base.object(o).elems;
    debug_assert!(e.is_power_of_two(), "cube object has 2^n elements");
    e.trailing_zeros() as usize
}

/// The nerve of the Boolean poset `2^dim` as a chain-shaped presheaf,
/// together with chain lookup tables.
pub struct CubeNerve {
    pub dim: usize,
    pub object: Arc<Presheaf>,
    /// Per chain object: the monotone mask chains, sorted.
    chains: Vec<Vec<Vec<u32>>>,
    index: Vec<BTreeMap<Vec<u32>, u32>>,
}

impl CubeNerve {
    /// Builds the nerve over a chain base.
    pub fn new(simp: &Arc<FinCat>, dim: usize) -> Result<CubeNerve> {
        simplex_truncation(&Presheaf::terminal(simp.clone()))?;
        let masks = 1u32 << dim;
        let subset = |a: u32, b: u32| a & !b == 0;
        let mut chains: Vec<Vec<Vec<u32>>> = Vec::new();
        for o in simp.objects() {
            let len = simp.object(o).elems as usize;
            let mut level: Vec<Vec<u32>> = vec![Vec::new()];
            for _ in 0..len {
                let mut next = Vec::new();
                for c in &level {
                    let lo = c.last().copied().unwrap_or(0);
                    for m in 0..masks {
                        if c.is_empty() || subset(lo, m) {
                            let mut e = c.clone();
                            e.push(m);
                            next.push(e);
                        }
                    }
                }
                level = next;
            }
            level.sort();
            chains.push(level);
        }
        let index: Vec<BTreeMap<Vec<u32>, u32>> = chains
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.clone(), i as u32))
                    .collect()
            })
            .collect();
        let levels: Vec<u32> = chains.iter().map(|l| l.len() as u32).collect();
        let tables: Vec<Vec<u32>> = simp
            .morphisms()
            .map(|g| {
                let gi = simp.morphism(g);
                let (a, b) = (gi.dom, gi.cod);
                chains[b.0 as usize]
                    .iter()
                    .map(|chain| {
                        let pulled: Vec<u32> =
                            gi.table.iter().map(|&i| chain[i as usize]).collect();
                        index[a.0 as usize][&pulled]
                    })
                    .collect()
            })
            .collect();
        let object = Presheaf::from_tables(
            simp.clone(),
            format!("N([1]^{dim})"),
            levels,
            tables,
        )?;
        Ok(CubeNerve {
            dim,
            object,
            chains,
            index,
        })
    }

    pub fn chain(&self, o: ObjId, c: u32) -> &[u32] {
        &self.chains[o.0 as usize][c as usize]
    }

    pub fn chain_index(&self, o: ObjId, chain: &[u32]) -> Option<u32> {
        self.index[o.0 as usize].get(chain).copied()
    }

    /// The simplicial map `N_a → N_b` induced by a monotone mask table.
    pub fn induced_map(&self, target: &CubeNerve, table: &[u32]) -> Result<PresheafMap> {
        let simp = self.object.base().clone();
        let components: Vec<Vec<u32>> = simp
            .objects()
            .map(|o| {
                self.chains[o.0 as usize]
                    .iter()
                    .map(|chain| {
                        let image: Vec<u32> =
                            chain.iter().map(|&m| table[m as usize]).collect();
                        target.index[o.0 as usize][&image]
                    })
                    .collect()
            })
            .collect();
        PresheafMap::new(self.object.clone(), target.object.clone(), components)
    }
}

/// A triangulated cubical set with its class structure.
pub struct Triangulation {
    /// The cubical input.
    pub source: Arc<Presheaf>,
    /// The chain-shaped output.
    pub object: Arc<Presheaf>,
    nerves: Vec<CubeNerve>,
    /// Per chain object: node offset of each cube object's block.
    offsets: Vec<Vec<u64>>,
    /// Per chain object: node → class.
    class: Vec<Vec<u32>>,
    /// Per chain object: class → least (cube object, cell, chain) node.
    reps: Vec<Vec<(ObjId, u32, u32)>>,
}

impl Triangulation {
    /// The class of the pair `(cube cell x at m, nerve chain s)` in degree
    /// object `so`.
    pub fn class(&self, so: ObjId, m: ObjId, x: u32, s: u32) -> u32 {
        let nk = self.nerves[m.0 as usize].object.cells(so) as u64;
        let node = self.offsets[so.0 as usize][m.0 as usize] + x as u64 * nk + s as u64;
        self.class[so.0 as usize][node as usize]
    }

    pub fn reps(&self, so: ObjId) -> &[(ObjId, u32, u32)] {
        &self.reps[so.0 as usize]
    }

    pub fn nerve(&self, m: ObjId) -> &CubeNerve {
        &self.nerves[m.0 as usize]
    }
}

/// Triangulates `x` over the chain base `simp`, picking the relation
/// schedule by shape: terminal-normalization for representables, generator
/// relations otherwise.
pub fn triangulate(x: &Arc<Presheaf>, simp: &Arc<FinCat>) -> Result<Triangulation> {
    build_triangulation(x, simp, x.representable_target())
}

/// Triangulates with generator relations regardless of shape; used to
/// cross-check the representable shortcut.
pub fn triangulate_via_generators(
    x: &Arc<Presheaf>,
    simp: &Arc<FinCat>,
) -> Result<Triangulation> {
    build_triangulation(x, simp, None)
}

fn build_triangulation(
    x: &Arc<Presheaf>,
    simp: &Arc<FinCat>,
    shortcut: Option<ObjId>,
) -> Result<Triangulation> {
    let cube = x.base().clone();
    let nerves: Vec<CubeNerve> = cube
        .objects()
        .map(|o| CubeNerve::new(simp, cube_dim(&cube, o)))
        .collect::<Result<Vec<_>>>()?;

    let mut offsets: Vec<Vec<u64>> = Vec::new();
    let mut class: Vec<Vec<u32>> = Vec::new();
    let mut reps: Vec<Vec<(ObjId, u32, u32)>> = Vec::new();
    let mut levels: Vec<u32> = Vec::new();

    for so in simp.objects() {
        let mut offs = Vec::with_capacity(cube.object_count());
        let mut total: u64 = 0;
        for m in cube.objects() {
            offs.push(total);
            total += x.cells(m) as u64 * nerves[m.0 as usize].object.cells(so) as u64;
        }
        if total > u32::MAX as u64 {
            return Err(EngineError::BudgetExceeded {
                op: "triangulation",
                detail: format!("{total} relation nodes in one degree"),
            });
        }
        let mut uf = UnionFind::new(total as usize);
        match shortcut {
            Some(c) => {
                // (x, s) ~ (id_c, N(x)(s)) — one instance per node.
                let idc = Presheaf::identity_cell(&cube, c);
                let nc = &nerves[c.0 as usize];
                let nck = nc.object.cells(so) as u64;
                for m in cube.objects() {
                    let nm = &nerves[m.0 as usize];
                    let nmk = nm.object.cells(so) as u64;
                    for xc in 0..x.cells(m) {
                        let mor = cube.hom(m, c)[xc as usize];
                        let table = &cube.morphism(mor).table;
                        for s in 0..nmk as u32 {
                            let image: Vec<u32> = nm
                                .chain(so, s)
                                .iter()
                                .map(|&mask| table[mask as usize])
                                .collect();
                            let t = nc.chain_index(so, &image).expect("monotone image chain");
                            uf.union(
                                (offs[m.0 as usize] + xc as u64 * nmk + s as u64) as u32,
                                (offs[c.0 as usize] + idc as u64 * nck + t as u64) as u32,
                            );
                        }
                    }
                }
            }
            None => {
                // (X(θ)x, s) at dom θ ~ (x, N(θ)s) at cod θ, per generator.
                for &theta in cube.generators() {
                    let (a, b) = (cube.dom(theta), cube.cod(theta));
                    let na = &nerves[a.0 as usize];
                    let nb = &nerves[b.0 as usize];
                    let nak = na.object.cells(so) as u64;
                    let nbk = nb.object.cells(so) as u64;
                    let table = &cube.morphism(theta).table;
                    // Nerve image of each chain under θ, computed once.
                    let fwd: Vec<u32> = (0..nak as u32)
                        .map(|s| {
                            let image: Vec<u32> = na
                                .chain(so, s)
                                .iter()
                                .map(|&mask| table[mask as usize])
                                .collect();
                            nb.chain_index(so, &image).expect("monotone image chain")
                        })
                        .collect();
                    for xb in 0..x.cells(b) {
                        let xa = x.act(theta, xb);
                        for s in 0..nak as u32 {
                            uf.union(
                                (offs[a.0 as usize] + xa as u64 * nak + s as u64) as u32,
                                (offs[b.0 as usize] + xb as u64 * nbk + fwd[s as usize] as u64)
                                    as u32,
                            );
                        }
                    }
                }
            }
        }
        let (idx, count) = uf.classes();
        let mut rep: Vec<Option<(ObjId, u32, u32)>> = vec![None; count as usize];
        for m in cube.objects() {
            let nmk = nerves[m.0 as usize].object.cells(so) as u64;
            for xc in 0..x.cells(m) {
                for s in 0..nmk as u32 {
                    let node = offs[m.0 as usize] + xc as u64 * nmk + s as u64;
                    let c = idx[node as usize] as usize;
                    if rep[c].is_none() {
                        rep[c] = Some((m, xc, s));
                    }
                }
            }
        }
        offsets.push(offs);
        class.push(idx);
        reps.push(rep.into_iter().map(|r| r.expect("class has a member")).collect());
        levels.push(count);
    }

    // Action tables on class representatives.
    let tables: Vec<Vec<u32>> = simp
        .morphisms()
        .map(|g| {
            let gi = simp.morphism(g);
            let (a, b) = (gi.dom, gi.cod);
            reps[b.0 as usize]
                .iter()
                .map(|&(m, xc, s)| {
                    let nm = &nerves[m.0 as usize];
                    let pulled = nm.object.act(g, s);
                    let nk = nm.object.cells(a) as u64;
                    let node = offsets[a.0 as usize][m.0 as usize]
                        + xc as u64 * nk
                        + pulled as u64;
                    class[a.0 as usize][node as usize]
                })
                .collect()
        })
        .collect();
    let object = Presheaf::from_tables(simp.clone(), format!("T({})", x.name()), levels, tables)?;
    object.validate()?;
    Ok(Triangulation {
        source: x.clone(),
        object,
        nerves,
        offsets,
        class,
        reps,
    })
}

/// The triangulation of a map, `T(f): [x, s] ↦ [f(x), s]`.
pub fn triangulate_map(
    tx: &Triangulation,
    ty: &Triangulation,
    f: &PresheafMap,
) -> Result<PresheafMap> {
    if !f.source.same_presheaf(&tx.source) || !f.target.same_presheaf(&ty.source) {
        return Err(EngineError::InvalidInput(
            "triangulated map endpoints do not match the given triangulations".into(),
        ));
    }
    let simp = tx.object.base().clone();
    let components: Vec<Vec<u32>> = simp
        .objects()
        .map(|so| {
            tx.reps(so)
                .iter()
                .map(|&(m, xc, s)| ty.class(so, m, f.at(m, xc), s))
                .collect()
        })
        .collect();
    PresheafMap::new(tx.object.clone(), ty.object.clone(), components)
}

/// The canonical comparison `T(y(c)) → N_c`, `[x, s] ↦ N(x)(s)`; an
/// isomorphism exactly when the coend collapsed correctly.
pub fn nerve_comparison(t: &Triangulation) -> Result<PresheafMap> {
    let cube = t.source.base().clone();
    let c = t
        .source
        .representable_target()
        .ok_or_else(|| EngineError::Precondition {
            op: "nerve comparison",
            detail: "the triangulated presheaf is not representable".into(),
        })?;
    let simp = t.object.base().clone();
    let nc = CubeNerve::new(&simp, cube_dim(&cube, c))?;
    let components: Vec<Vec<u32>> = simp
        .objects()
        .map(|so| {
            t.reps(so)
                .iter()
                .map(|&(m, xc, s)| {
                    let mor = cube.hom(m, c)[xc as usize];
                    let table = &cube.morphism(mor).table;
                    let image: Vec<u32> = t
                        .nerve(m)
                        .chain(so, s)
                        .iter()
                        .map(|&mask| table[mask as usize])
                        .collect();
                    nc.chain_index(so, &image).expect("monotone image chain")
                })
                .collect()
        })
        .collect();
    PresheafMap::new(t.object.clone(), nc.object.clone(), components)
}

/// A cubified chain-shaped presheaf: cells at `[1]^m` are the natural maps
/// `N_m → X`, enumerated in sorted order.
pub struct Cubification {
    /// The chain-shaped input.
    pub source: Arc<Presheaf>,
    /// The cube-shaped output.
    pub object: Arc<Presheaf>,
    nerves: Vec<CubeNerve>,
    maps: Vec<Vec<PresheafMap>>,
}

impl Cubification {
    /// The natural map that a cube cell stands for.
    pub fn cell_map(&self, m: ObjId, c: u32) -> &PresheafMap {
        &self.maps[m.0 as usize][c as usize]
    }

    /// Index of a natural map among the cells at `m`.
    pub fn map_index(&self, m: ObjId, f: &PresheafMap) -> Option<u32> {
        self.maps[m.0 as usize]
            .binary_search_by(|probe| probe.components().cmp(f.components()))
            .ok()
            .map(|i| i as u32)
    }

    pub fn nerve(&self, m: ObjId) -> &CubeNerve {
        &self.nerves[m.0 as usize]
    }
}

/// Cubifies `x` over the cube base. Requires the chain truncation to reach
/// the cube truncation, so that no nerve is cut below its own dimension.
pub fn cubify(x: &Arc<Presheaf>, cube: &Arc<FinCat>) -> Result<Cubification> {
    let n = simplex_truncation(x)?;
    let k = cube.object_count() - 1;
    if n < k {
        return Err(EngineError::TruncationTooSmall {
            op: "cubification",
            needed: k,
            have: n,
        });
    }
    let simp = x.base().clone();
    let nerves: Vec<CubeNerve> = cube
        .objects()
        .map(|o| CubeNerve::new(&simp, cube_dim(cube, o)))
        .collect::<Result<Vec<_>>>()?;
    let maps: Vec<Vec<PresheafMap>> = nerves
        .iter()
        .map(|nm| hom_set(&nm.object, x))
        .collect::<Result<Vec<_>>>()?;
    let levels: Vec<u32> = maps.iter().map(|h| h.len() as u32).collect();
    let tables: Vec<Vec<u32>> = cube
        .morphisms()
        .map(|theta| -> Result<Vec<u32>> {
            let ti = cube.morphism(theta);
            let (a, b) = (ti.dom, ti.cod);
            let induced = nerves[a.0 as usize]
                .induced_map(&nerves[b.0 as usize], &ti.table)?;
            maps[b.0 as usize]
                .iter()
                .map(|h| {
                    let pre = induced.then(h)?;
                    maps[a.0 as usize]
                        .binary_search_by(|probe| probe.components().cmp(pre.components()))
                        .map(|i| i as u32)
                        .map_err(|_| {
                            EngineError::Internal(
                                "precomposed map missing from enumerated hom-set".into(),
                            )
                        })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let object = Presheaf::from_tables(cube.clone(), format!("C({})", x.name()), levels, tables)?;
    object.validate()?;
    Ok(Cubification {
        source: x.clone(),
        object,
        nerves,
        maps,
    })
}

/// The cubification of a map, `C(f): h ↦ f ∘ h`.
pub fn cubify_map(cx: &Cubification, cy: &Cubification, f: &PresheafMap) -> Result<PresheafMap> {
    if !f.source.same_presheaf(&cx.source) || !f.target.same_presheaf(&cy.source) {
        return Err(EngineError::InvalidInput(
            "cubified map endpoints do not match the given cubifications".into(),
        ));
    }
    let cube = cx.object.base().clone();
    let components: Vec<Vec<u32>> = cube
        .objects()
        .map(|m| -> Result<Vec<u32>> {
            cx.maps[m.0 as usize]
                .iter()
                .map(|h| {
                    let post = h.then(f)?;
                    cy.map_index(m, &post).ok_or_else(|| {
                        EngineError::Internal(
                            "postcomposed map missing from enumerated hom-set".into(),
                        )
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(cx.object.clone(), cy.object.clone(), components)
}

/// Unit of triangulation ⊣ cubification at the cubical set of `t`:
/// `Y → C(T(Y))`, sending a cube cell to its pairing map.
pub fn tc_unit(t: &Triangulation, c: &Cubification) -> Result<PresheafMap> {
    if !c.source.same_presheaf(&t.object) {
        return Err(EngineError::InvalidInput(
            "unit needs the cubification of the triangulated object".into(),
        ));
    }
    let cube = t.source.base().clone();
    let simp = t.object.base().clone();
    let components: Vec<Vec<u32>> = cube
        .objects()
        .map(|m| -> Result<Vec<u32>> {
            (0..t.source.cells(m))
                .map(|y| {
                    let comps: Vec<Vec<u32>> = simp
                        .objects()
                        .map(|so| {
                            (0..t.nerve(m).object.cells(so))
                                .map(|s| t.class(so, m, y, s))
                                .collect()
                        })
                        .collect();
                    let pairing =
                        PresheafMap::new(t.nerve(m).object.clone(), t.object.clone(), comps)?;
                    c.map_index(m, &pairing).ok_or_else(|| {
                        EngineError::Internal(
                            "pairing map missing from enumerated hom-set".into(),
                        )
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(t.source.clone(), c.object.clone(), components)
}

/// Counit of triangulation ⊣ cubification at the chain-shaped set of `c`:
/// `T(C(X)) → X`, evaluating each natural map at its chain.
pub fn tc_counit(c: &Cubification, t: &Triangulation) -> Result<PresheafMap> {
    if !t.source.same_presheaf(&c.object) {
        return Err(EngineError::InvalidInput(
            "counit needs the triangulation of the cubified object".into(),
        ));
    }
    let simp = c.source.base().clone();
    let components: Vec<Vec<u32>> = simp
        .objects()
        .map(|so| {
            t.reps(so)
                .iter()
                .map(|&(m, h, s)| c.cell_map(m, h).at(so, s))
                .collect()
        })
        .collect();
    PresheafMap::new(t.object.clone(), c.source.clone(), components)
}

/// Transpose of `g: T(Y) → X` across the adjunction: `Y → C(X)`.
pub fn tc_transpose_to_cube(
    t: &Triangulation,
    cx: &Cubification,
    g: &PresheafMap,
) -> Result<PresheafMap> {
    if !g.source.same_presheaf(&t.object) || !g.target.same_presheaf(&cx.source) {
        return Err(EngineError::InvalidInput(
            "transpose endpoints do not match the adjunction data".into(),
        ));
    }
    let cube = t.source.base().clone();
    let simp = cx.source.base().clone();
    let components: Vec<Vec<u32>> = cube
        .objects()
        .map(|m| -> Result<Vec<u32>> {
            (0..t.source.cells(m))
                .map(|y| {
                    let comps: Vec<Vec<u32>> = simp
                        .objects()
                        .map(|so| {
                            (0..t.nerve(m).object.cells(so))
                                .map(|s| g.at(so, t.class(so, m, y, s)))
                                .collect()
                        })
                        .collect();
                    let composite =
                        PresheafMap::new(t.nerve(m).object.clone(), cx.source.clone(), comps)?;
                    cx.map_index(m, &composite).ok_or_else(|| {
                        EngineError::Internal(
                            "transposed map missing from enumerated hom-set".into(),
                        )
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(t.source.clone(), cx.object.clone(), components)
}

/// Transpose of `h: Y → C(X)` across the adjunction: `T(Y) → X`.
pub fn tc_transpose_to_simp(
    t: &Triangulation,
    cx: &Cubification,
    h: &PresheafMap,
) -> Result<PresheafMap> {
    if !h.source.same_presheaf(&t.source) || !h.target.same_presheaf(&cx.object) {
        return Err(EngineError::InvalidInput(
            "transpose endpoints do not match the adjunction data".into(),
        ));
    }
    let simp = cx.source.base().clone();
    let components: Vec<Vec<u32>> = simp
        .objects()
        .map(|so| {
            t.reps(so)
                .iter()
                .map(|&(m, y, s)| cx.cell_map(m, h.at(m, y)).at(so, s))
                .collect()
        })
        .collect();
    PresheafMap::new(t.object.clone(), cx.source.clone(), components)
}
