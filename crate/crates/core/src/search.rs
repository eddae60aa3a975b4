//! Natural-map search: a constrained backtracking engine and a deliberately
//! naive oracle.
//!
//! The engine assigns values only to *generating cells* — a greedy set of
//! cells whose action orbits cover the whole presheaf — and propagates each
//! assignment along every base morphism into the generator's object. A
//! conflict-free complete assignment is natural by construction: for any
//! cell `x = X(μ)(g)` and morphism `m`, the propagation entries for `μ` and
//! `μ∘m` enforce exactly the naturality square at `(m, x)`. Results are
//! still re-validated on construction as a belt-and-braces invariant.
//!
//! Search order is most-constrained-first with deterministic tie-breaking,
//! and enumeration output is sorted by component tables, so results never
//! depend on heuristic details. The naive oracle enumerates *all* functions
//! level by level and filters by naturality between already-assigned levels;
//! it shares no traversal code with the engine and is meant for small
//! instances (budget-guarded) as an independent check.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::fincat::MorId;
use crate::presheaf::{same_base, CellRef, Presheaf, PresheafMap};

/// A greedy generating system: cells whose orbits cover the presheaf, plus
/// for every generator the full list of propagation entries
/// `(cell, m)` meaning `cell = X(m)(generator)`.
#[derive(Clone, Debug)]
pub struct GenSystem {
    pub generators: Vec<CellRef>,
    /// `orbits[i]` lists every `(cell, m)` with `cod m = generators[i].obj`
    /// and `cell = X(m)(generators[i])` — including the identity entry.
    pub orbits: Vec<Vec<(CellRef, MorId)>>,
}

/// Computes a generating system for `x`. Objects are scanned from the last
/// index down (higher-dimensional objects first in the shipped bases), cells
/// in increasing order; a cell already covered by an earlier orbit is never
/// made a generator.
pub fn generating_cells(x: &Presheaf) -> GenSystem {
    let base = x.base();
    let mut covered: Vec<Vec<bool>> = x.levels().iter().map(|&c| vec![false; c as usize]).collect();
    let mut generators = Vec::new();
    let mut orbits = Vec::new();
    for o in (0..base.object_count() as u32).rev().map(crate::fincat::ObjId) {
        for cell in 0..x.cells(o) {
            if covered[o.0 as usize][cell as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            for a in base.objects() {
                for &m in base.hom(a, o) {
                    let y = x.act(m, cell);
                    covered[a.0 as usize][y as usize] = true;
                    orbit.push((CellRef { obj: a, idx: y }, m));
                }
            }
            generators.push(CellRef { obj: o, idx: cell });
            orbits.push(orbit);
        }
    }
    GenSystem { generators, orbits }
}

/// Per-cell admissibility constraint on candidate target values.
pub type CellFilter<'a> = dyn Fn(CellRef, u32) -> bool + 'a;

/// A constrained search for natural maps `source → target`.
pub struct HomSearch<'a> {
    source: Arc<Presheaf>,
    target: Arc<Presheaf>,
    prescribed: Vec<(CellRef, u32)>,
    filter: Option<Box<CellFilter<'a>>>,
    budget: u64,
}

const DEFAULT_BUDGET: u64 = 50_000_000;

impl<'a> HomSearch<'a> {
    pub fn new(source: &Arc<Presheaf>, target: &Arc<Presheaf>) -> Result<HomSearch<'a>> {
        same_base(source, target, "hom search")?;
        Ok(HomSearch {
            source: source.clone(),
            target: target.clone(),
            prescribed: Vec::new(),
            filter: None,
            budget: DEFAULT_BUDGET,
        })
    }

    /// Forces the map to send `cell` to `value`.
    pub fn prescribe(mut self, cell: CellRef, value: u32) -> HomSearch<'a> {
        self.prescribed.push((cell, value));
        self
    }

    /// Restricts admissible values per cell (e.g. post-composition or
    /// marking-preservation constraints).
    pub fn with_filter(mut self, f: impl Fn(CellRef, u32) -> bool + 'a) -> HomSearch<'a> {
        self.filter = Some(Box::new(f));
        self
    }

    /// Caps the number of candidate propagations before the search gives up
    /// with [`EngineError::BudgetExceeded`].
    pub fn with_budget(mut self, budget: u64) -> HomSearch<'a> {
        self.budget = budget;
        self
    }

    /// First solution in deterministic search order, if any.
    pub fn find_first(&self) -> Result<Option<PresheafMap>> {
        let mut found = None;
        self.run(|comps| {
            found = Some(comps.to_vec());
            ControlFlow::Break(())
        })?;
        found.map(|c| self.build(c)).transpose()
    }

    /// All solutions, sorted by their component tables.
    pub fn enumerate(&self) -> Result<Vec<PresheafMap>> {
        let mut all = Vec::new();
        self.run(|comps| {
            all.push(comps.to_vec());
            ControlFlow::Continue(())
        })?;
        all.sort();
        all.into_iter().map(|c| self.build(c)).collect()
    }

    /// Number of solutions, without materializing maps.
    pub fn count(&self) -> Result<u64> {
        let mut n = 0u64;
        self.run(|_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }

    fn build(&self, components: Vec<Vec<u32>>) -> Result<PresheafMap> {
        // Conflict-free propagation guarantees naturality; `new` re-checks.
        PresheafMap::new(self.source.clone(), self.target.clone(), components)
    }

    fn admissible(&self, cell: CellRef, value: u32) -> bool {
        match &self.filter {
            Some(f) => f(cell, value),
            None => true,
        }
    }

    fn run(&self, mut visit: impl FnMut(&[Vec<u32>]) -> ControlFlow<()>) -> Result<()> {
        let sys = generating_cells(&self.source);
        let mut assigned: Vec<Vec<Option<u32>>> = self
            .source
            .levels()
            .iter()
            .map(|&c| vec![None; c as usize])
            .collect();

        for &(cell, v) in &self.prescribed {
            if cell.idx >= self.source.cells(cell.obj) || v >= self.target.cells(cell.obj) {
                return Err(EngineError::InvalidReference(format!(
                    "prescription {cell} ↦ {v} out of range"
                )));
            }
            if !self.admissible(cell, v) {
                return Ok(()); // prescription contradicts the filter: no maps
            }
            let slot = &mut assigned[cell.obj.0 as usize][cell.idx as usize];
            match slot {
                Some(w) if *w != v => return Ok(()),
                _ => *slot = Some(v),
            }
        }

        let mut nodes = 0u64;
        let mut st = State {
            search: self,
            sys: &sys,
            assigned: &mut assigned,
            nodes: &mut nodes,
            gen_assigned: vec![false; sys.generators.len()],
        };
        let _ = st.dfs(&mut visit)?;
        Ok(())
    }
}

struct State<'s, 'a> {
    search: &'s HomSearch<'a>,
    sys: &'s GenSystem,
    assigned: &'s mut Vec<Vec<Option<u32>>>,
    nodes: &'s mut u64,
    gen_assigned: Vec<bool>,
}

impl State<'_, '_> {
    /// Counts values of generator `gi` consistent with current assignments
    /// and filters. Cheap one-step lookahead used for variable ordering and
    /// immediate dead-end detection.
    fn candidate_count(&self, gi: usize) -> u32 {
        let g = self.sys.generators[gi];
        (0..self.search.target.cells(g.obj))
            .filter(|&v| self.value_consistent(gi, v))
            .count() as u32
    }

    fn value_consistent(&self, gi: usize, v: u32) -> bool {
        let g = self.sys.generators[gi];
        if !self.search.admissible(g, v) {
            return false;
        }
        for &(cell, m) in &self.sys.orbits[gi] {
            let forced = self.search.target.act(m, v);
            if !self.search.admissible(cell, forced) {
                return false;
            }
            if let Some(w) = self.assigned[cell.obj.0 as usize][cell.idx as usize] {
                if w != forced {
                    return false;
                }
            }
        }
        true
    }

    /// Writes the orbit of generator `gi` for value `v`, recording every
    /// newly-written cell for undo. Returns `None` on conflict (after
    /// undoing its own writes).
    fn propagate(&mut self, gi: usize, v: u32) -> Option<Vec<CellRef>> {
        let mut trail = Vec::new();
        for oi in 0..self.sys.orbits[gi].len() {
            let (cell, m) = self.sys.orbits[gi][oi];
            let forced = self.search.target.act(m, v);
            if !self.search.admissible(cell, forced) {
                self.undo(&trail);
                return None;
            }
            let slot = &mut self.assigned[cell.obj.0 as usize][cell.idx as usize];
            match *slot {
                Some(w) if w != forced => {
                    self.undo(&trail);
                    return None;
                }
                Some(_) => {}
                None => {
                    *slot = Some(forced);
                    trail.push(cell);
                }
            }
        }
        Some(trail)
    }

    fn undo(&mut self, trail: &[CellRef]) {
        for c in trail {
            self.assigned[c.obj.0 as usize][c.idx as usize] = None;
        }
    }

    fn dfs(&mut self, visit: &mut impl FnMut(&[Vec<u32>]) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        // Most-constrained-first with smallest-index tie-break.
        let mut pick: Option<(u32, usize)> = None;
        for gi in 0..self.sys.generators.len() {
            if self.gen_assigned[gi] {
                continue;
            }
            let c = self.candidate_count(gi);
            if pick.map_or(true, |(best, _)| c < best) {
                pick = Some((c, gi));
                if c == 0 {
                    break;
                }
            }
        }
        let Some((count, gi)) = pick else {
            // Complete: orbits cover every cell, so all slots are Some.
            let comps: Vec<Vec<u32>> = self
                .assigned
                .iter()
                .map(|level| level.iter().map(|s| s.expect("covered cell")).collect())
                .collect();
            return Ok(visit(&comps));
        };
        if count == 0 {
            return Ok(ControlFlow::Continue(()));
        }
        let g = self.sys.generators[gi];
        for v in 0..self.search.target.cells(g.obj) {
            *self.nodes += 1;
            if *self.nodes > self.search.budget {
                return Err(EngineError::BudgetExceeded {
                    op: "hom search",
                    detail: format!(
                        "{} → {}: more than {} candidate propagations",
                        self.search.source.name(),
                        self.search.target.name(),
                        self.search.budget
                    ),
                });
            }
            let Some(trail) = self.propagate(gi, v) else {
                continue;
            };
            self.gen_assigned[gi] = true;
            let flow = self.dfs(visit)?;
            self.gen_assigned[gi] = false;
            self.undo(&trail);
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// The full hom-set, sorted by component tables.
pub fn hom_set(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<Vec<PresheafMap>> {
    HomSearch::new(x, y)?.enumerate()
}

/// Naive hom-set oracle: enumerates every function object by object and
/// keeps naturality between assigned objects. Independent of the engine;
/// refuses instances whose raw product of function counts exceeds `budget`.
pub fn naive_hom_set(
    x: &Arc<Presheaf>,
    y: &Arc<Presheaf>,
    budget: u64,
) -> Result<Vec<PresheafMap>> {
    let base = same_base(x, y, "naive hom oracle")?;
    let mut total: u64 = 1;
    for o in base.objects() {
        let per = (y.cells(o) as u64)
            .checked_pow(x.cells(o))
            .and_then(|p| total.checked_mul(p));
        match per {
            Some(p) if p <= budget => total = p.max(1),
            _ => {
                return Err(EngineError::BudgetExceeded {
                    op: "naive hom oracle",
                    detail: format!("{} → {}: raw search space too large", x.name(), y.name()),
                })
            }
        }
    }

    let nobj = base.object_count();
    let mut components: Vec<Vec<u32>> = Vec::with_capacity(nobj);
    let mut out = Vec::new();
    fn consistent(
        base: &crate::fincat::FinCat,
        x: &Presheaf,
        y: &Presheaf,
        components: &[Vec<u32>],
    ) -> bool {
        let k = components.len();
        base.morphisms().all(|m| {
            let (a, b) = (base.dom(m), base.cod(m));
            if a.0 as usize >= k || b.0 as usize >= k {
                return true;
            }
            (0..x.cells(b)).all(|c| {
                components[a.0 as usize][x.act(m, c) as usize]
                    == y.act(m, components[b.0 as usize][c as usize])
            })
        })
    }
    fn rec(
        base: &crate::fincat::FinCat,
        x: &Presheaf,
        y: &Presheaf,
        components: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if components.len() == base.object_count() {
            out.push(components.clone());
            return;
        }
        let o = crate::fincat::ObjId(components.len() as u32);
        let (nx, ny) = (x.cells(o), y.cells(o));
        if ny == 0 && nx > 0 {
            return; // no functions at this level
        }
        // Odometer over all functions X(o) → Y(o), in lexicographic order.
        let mut f = vec![0u32; nx as usize];
        loop {
            components.push(f.clone());
            if consistent(base, x, y, components) {
                rec(base, x, y, components, out);
            }
            components.pop();
            // Advance the odometer; wrap-around means the level is done.
            let mut i = nx as usize;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                f[i] += 1;
                if f[i] < ny {
                    break;
                }
                f[i] = 0;
            }
        }
    }
    let mut raw = Vec::new();
    rec(&base, x, y, &mut components, &mut raw);
    raw.sort();
    for comps in raw {
        out.push(PresheafMap::new(x.clone(), y.clone(), comps)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{cube_conn, simplex};
    use crate::presheaf::CellRef;

    fn interval(n: usize) -> (Arc<crate::fincat::FinCat>, Arc<Presheaf>) {
        let s = simplex(n);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        (s, y1)
    }

    #[test]
    fn yoneda_lemma_cardinalities() {
        let s = simplex(2);
        let o1 = s.object_named("[1]").unwrap();
        let x = Presheaf::yoneda(s.clone(), o1);
        for c in s.objects() {
            let yc = Presheaf::yoneda(s.clone(), c);
            let homs = hom_set(&yc, &x).unwrap();
            assert_eq!(homs.len() as u32, x.cells(c), "at {}", s.object(c).name);
        }
    }

    #[test]
    fn endomorphisms_of_the_interval() {
        let (_s, y1) = interval(1);
        let homs = hom_set(&y1, &y1).unwrap();
        // Frozen: two constants plus the identity.
        assert_eq!(homs.len(), 3);
        assert_eq!(homs.iter().filter(|h| h.is_iso()).count(), 1);
    }

    #[test]
    fn empty_source_and_terminal_target() {
        let (s, y1) = interval(1);
        let e = Presheaf::empty(s.clone());
        let t = Presheaf::terminal(s.clone());
        assert_eq!(hom_set(&e, &y1).unwrap().len(), 1);
        assert_eq!(hom_set(&y1, &t).unwrap().len(), 1);
        assert_eq!(hom_set(&y1, &e).unwrap().len(), 0);
    }

    #[test]
    fn boundary_inclusion_hom_count() {
        let (s, y1) = interval(1);
        let o0 = s.object_named("[0]").unwrap();
        let (bd, _) = y1
            .sub_generated(
                "∂Δ[1]",
                &[CellRef { obj: o0, idx: 0 }, CellRef { obj: o0, idx: 1 }],
            )
            .unwrap();
        // Frozen: each boundary vertex maps to either vertex independently.
        assert_eq!(hom_set(&bd, &y1).unwrap().len(), 4);
    }

    #[test]
    fn engine_agrees_with_naive_oracle() {
        let (s, y1) = interval(1);
        let o0 = s.object_named("[0]").unwrap();
        let (bd, _) = y1
            .sub_generated(
                "∂Δ[1]",
                &[CellRef { obj: o0, idx: 0 }, CellRef { obj: o0, idx: 1 }],
            )
            .unwrap();
        let (co, _, _) = Presheaf::coproduct(&y1, &y1).unwrap();
        let cases: Vec<(Arc<Presheaf>, Arc<Presheaf>)> = vec![
            (y1.clone(), y1.clone()),
            (bd.clone(), y1.clone()),
            (co.clone(), y1.clone()),
            (y1.clone(), co.clone()),
        ];
        for (a, b) in cases {
            let smart = hom_set(&a, &b).unwrap();
            let naive = naive_hom_set(&a, &b, 2_000_000).unwrap();
            let sc: Vec<_> = smart.iter().map(|m| m.components().to_vec()).collect();
            let nc: Vec<_> = naive.iter().map(|m| m.components().to_vec()).collect();
            assert_eq!(sc, nc, "{} → {}", a.name(), b.name());
        }
    }

    #[test]
    fn engine_agrees_with_naive_oracle_on_cubes() {
        let c = cube_conn(1);
        let o1 = c.object_named("[1]^1").unwrap();
        let y = Presheaf::yoneda(c.clone(), o1);
        let smart = hom_set(&y, &y).unwrap();
        let naive = naive_hom_set(&y, &y, 1_000_000).unwrap();
        assert_eq!(smart.len(), 3);
        assert_eq!(smart.len(), naive.len());
    }

    #[test]
    fn square_to_interval_count() {
        let (_, y1) = interval(2);
        let (sq, _, _) = Presheaf::product(&y1, &y1).unwrap();
        // Frozen: monotone lattice maps [1]² → [1]; six of them.
        assert_eq!(hom_set(&sq, &y1).unwrap().len(), 6);
    }

    #[test]
    fn prescriptions_and_filters_constrain_search() {
        let (s, y1) = interval(1);
        let o0 = s.object_named("[0]").unwrap();
        // Pin vertex 0 ↦ 0: the constants-at-1 map is excluded.
        let n = HomSearch::new(&y1, &y1)
            .unwrap()
            .prescribe(CellRef { obj: o0, idx: 0 }, 0)
            .count()
            .unwrap();
        assert_eq!(n, 2);
        // Filter vertices to vertex 1 only: exactly the constant at 1.
        let n = HomSearch::new(&y1, &y1)
            .unwrap()
            .with_filter(|cell, v| cell.obj != o0 || v == 1)
            .count()
            .unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let (_, y1) = interval(2);
        let (sq, _, _) = Presheaf::product(&y1, &y1).unwrap();
        let r = HomSearch::new(&sq, &sq).unwrap().with_budget(3).count();
        assert!(matches!(r, Err(EngineError::BudgetExceeded { .. })));
    }

    #[test]
    fn generating_cells_cover_everything() {
        let (_, y1) = interval(2);
        let (sq, _, _) = Presheaf::product(&y1, &y1).unwrap();
        let sys = generating_cells(&sq);
        let mut covered: Vec<Vec<bool>> =
            sq.levels().iter().map(|&c| vec![false; c as usize]).collect();
        for orbit in &sys.orbits {
            for (cell, _) in orbit {
                covered[cell.obj.0 as usize][cell.idx as usize] = true;
            }
        }
        assert!(covered.iter().all(|l| l.iter().all(|&c| c)));
        // The square is generated by far fewer cells than it has.
        assert!(sys.generators.len() < sq.total_cells());
    }
}
