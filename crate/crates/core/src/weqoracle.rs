//! A sound, incomplete weak-equivalence oracle with three-valued verdicts.
//!
//! The decision chain is: exact isomorphism, then a searched homotopy
//! equivalence (certificate re-verified by composition), then a homology
//! falsifier via mapping-cone acyclicity in reliable degrees, then
//! `Unknown`. Positive homology evidence is never used — equal homology
//! does not certify an equivalence — and every `NotWeq` carries the degree
//! that witnessed it. Homotopy and homology steps require a simplicial
//! base; on other bases the oracle degrades to iso-or-unknown.
//!
//! Budgets make the searched step total: exceeding a budget downgrades the
//! step to "no certificate found", never to a wrong verdict.

use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::fincat::{FinCat, ObjId};
use crate::homology::{cone_homology, simplex_truncation};
use crate::presheaf::{CellRef, Presheaf, PresheafMap};
use crate::search::{hom_set, HomSearch};

/// Evidence for a positive verdict.
#[derive(Clone, Debug)]
pub enum WeqEvidence {
    /// The map is an isomorphism.
    Iso,
    /// A homotopy inverse with verified homotopies on both composites.
    HomotopyEquivalence {
        inverse: Box<PresheafMap>,
        source_homotopy: Box<PresheafMap>,
        target_homotopy: Box<PresheafMap>,
    },
}

/// Evidence for a negative verdict: nonzero reliable cone homology.
#[derive(Clone, Debug)]
pub struct NotWeqEvidence {
    pub degree: usize,
    pub betti: i64,
    pub torsion_count: usize,
}

/// Three-valued oracle verdict.
#[derive(Clone, Debug)]
pub enum WeqVerdict {
    Weq(WeqEvidence),
    NotWeq(NotWeqEvidence),
    Unknown(String),
}

impl WeqVerdict {
    pub fn is_weq(&self) -> bool {
        matches!(self, WeqVerdict::Weq(_))
    }

    pub fn is_not_weq(&self) -> bool {
        matches!(self, WeqVerdict::NotWeq(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, WeqVerdict::Unknown(_))
    }

    /// Short human-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            WeqVerdict::Weq(_) => "weq",
            WeqVerdict::NotWeq(_) => "not-weq",
            WeqVerdict::Unknown(_) => "unknown",
        }
    }

    /// Two verdicts agree unless one is unknown.
    pub fn compatible(&self, other: &WeqVerdict) -> bool {
        self.is_unknown() || other.is_unknown() || self.is_weq() == other.is_weq()
    }
}

/// Which verdict providers the oracle consults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Isomorphism check only — the cheapest sound underapproximation.
    Iso,
    /// Isomorphism check, then the homology falsifier.
    Homology,
    /// The full chain: isomorphism, homotopy-witness search, homology
    /// falsifier. The default.
    Full,
}

impl OracleMode {
    /// Parses the user-facing mode names.
    pub fn parse(s: &str) -> Result<OracleMode> {
        match s {
            "iso" => Ok(OracleMode::Iso),
            "homology" => Ok(OracleMode::Homology),
            "homotopy-search" => Ok(OracleMode::Full),
            other => Err(EngineError::UnknownName(format!(
                "oracle mode `{other}` (expected `iso`, `homology`, or `homotopy-search`)"
            ))),
        }
    }
}

/// `Weq` exactly when the map is an isomorphism; `Unknown` otherwise.
/// Sound for any base category.
pub fn iso_oracle(f: &PresheafMap) -> WeqVerdict {
    if f.is_iso() {
        WeqVerdict::Weq(WeqEvidence::Iso)
    } else {
        WeqVerdict::Unknown("not an isomorphism; this oracle certifies nothing else".into())
    }
}

/// The interval representable `y([1])` over a simplicial base.
pub fn interval(base: &Arc<FinCat>) -> Result<Arc<Presheaf>> {
    let o1 = base.object_named("[1]").ok_or_else(|| EngineError::Precondition {
        op: "interval",
        detail: format!("base `{}` has no object [1]", base.name()),
    })?;
    Ok(Presheaf::yoneda(base.clone(), o1))
}

/// The constant cell of the interval at value `v` and object `o` (the cell
/// classified by the constant map `o → [1]`).
pub fn constant_interval_cell(base: &FinCat, o: ObjId, v: u32) -> u32 {
    let o1 = base.object_named("[1]").expect("simplicial base");
    let table = vec![v; base.object(o).elems as usize];
    let m = base
        .morphism_by_table(o, o1, &table)
        .expect("constant maps exist in a simplex base");
    base.hom_position(m) as u32
}

/// Cylinder data for `x`: the product `x × Δ[1]`, the two end inclusions,
/// and the projection.
pub struct Cylinder {
    pub object: Arc<Presheaf>,
    pub end0: PresheafMap,
    pub end1: PresheafMap,
    pub projection: PresheafMap,
    pub interval: Arc<Presheaf>,
}

/// Builds the cylinder on a simplicial presheaf.
pub fn cylinder(x: &Arc<Presheaf>) -> Result<Cylinder> {
    let base = x.base().clone();
    let iv = interval(&base)?;
    let (object, projection, _pi) = Presheaf::product(x, &iv)?;
    let end = |v: u32| -> Result<PresheafMap> {
        let components: Vec<Vec<u32>> = base
            .objects()
            .map(|o| {
                let c = constant_interval_cell(&base, o, v);
                (0..x.cells(o)).map(|xc| xc * iv.cells(o) + c).collect()
            })
            .collect();
        PresheafMap::new(x.clone(), object.clone(), components)
    };
    Ok(Cylinder {
        end0: end(0)?,
        end1: end(1)?,
        projection,
        object,
        interval: iv,
    })
}

/// Searches for a one-step simplicial homotopy `H: x × Δ[1] → y` from `u`
/// to `v`; `None` when no homotopy exists (or the budget ran out).
pub fn homotopy_between(
    u: &PresheafMap,
    v: &PresheafMap,
    budget: u64,
) -> Result<Option<PresheafMap>> {
    let cyl = cylinder(&u.source)?;
    let base = u.source.base().clone();
    let mut search = HomSearch::new(&cyl.object, &u.target)?.with_budget(budget);
    for o in base.objects() {
        for xc in 0..u.source.cells(o) {
            let c0 = cyl.end0.at(o, xc);
            let c1 = cyl.end1.at(o, xc);
            search = search
                .prescribe(CellRef { obj: o, idx: c0 }, u.at(o, xc))
                .prescribe(CellRef { obj: o, idx: c1 }, v.at(o, xc));
        }
    }
    match search.find_first() {
        Ok(h) => Ok(h),
        Err(EngineError::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Re-verifies a claimed homotopy by composing with the cylinder ends.
pub fn verify_homotopy(h: &PresheafMap, u: &PresheafMap, v: &PresheafMap) -> Result<bool> {
    let cyl = cylinder(&u.source)?;
    let h0 = cyl.end0.then(h)?;
    let h1 = cyl.end1.then(h)?;
    Ok(&h0 == u && &h1 == v)
}

/// Whether `u` and `v` are connected by a one-step homotopy in either
/// direction.
pub fn homotopic_either_way(
    u: &PresheafMap,
    v: &PresheafMap,
    budget: u64,
) -> Result<Option<PresheafMap>> {
    if let Some(h) = homotopy_between(u, v, budget)? {
        return Ok(Some(h));
    }
    homotopy_between(v, u, budget)
}

/// The weak-equivalence oracle.
#[derive(Clone, Debug)]
pub struct WeqOracle {
    /// Budget per homotopy search.
    pub homotopy_budget: u64,
    /// Cap on candidate homotopy inverses examined.
    pub max_inverses: usize,
    /// Which providers to consult.
    pub mode: OracleMode,
}

impl Default for WeqOracle {
    fn default() -> Self {
        WeqOracle {
            homotopy_budget: 2_000_000,
            max_inverses: 64,
            mode: OracleMode::Full,
        }
    }
}

impl WeqOracle {
    pub fn with_mode(mode: OracleMode) -> WeqOracle {
        WeqOracle {
            mode,
            ..WeqOracle::default()
        }
    }

    /// Decides `f` as far as the evidence the configured mode allows.
    pub fn verdict(&self, f: &PresheafMap) -> WeqVerdict {
        match self.mode {
            OracleMode::Iso => iso_oracle(f),
            OracleMode::Homology => self.homology_falsifier(f),
            OracleMode::Full => self.full_verdict(f),
        }
    }

    fn full_verdict(&self, f: &PresheafMap) -> WeqVerdict {
        if f.is_iso() {
            return WeqVerdict::Weq(WeqEvidence::Iso);
        }
        if simplex_truncation(&f.source).is_err() {
            return WeqVerdict::Unknown("non-simplicial base: only isomorphisms decided".into());
        }
        match self.homotopy_equivalence(f) {
            Ok(Some(ev)) => return WeqVerdict::Weq(ev),
            Ok(None) => {}
            Err(e) => return WeqVerdict::Unknown(format!("homotopy search failed: {e}")),
        }
        match self.falsify(f) {
            Ok(Some(ev)) => WeqVerdict::NotWeq(ev),
            Ok(None) => WeqVerdict::Unknown(
                "no homotopy certificate found and reliable cone homology vanishes".into(),
            ),
            Err(e) => WeqVerdict::Unknown(format!("homology falsifier failed: {e}")),
        }
    }

    /// The homology falsifier as a standalone provider: isomorphisms are
    /// confirmed first (the cheap certain case), nonvanishing reliable
    /// cone homology refutes, and everything else stays undecided —
    /// agreeing homology never certifies an equivalence.
    pub fn homology_falsifier(&self, f: &PresheafMap) -> WeqVerdict {
        if f.is_iso() {
            return WeqVerdict::Weq(WeqEvidence::Iso);
        }
        if simplex_truncation(&f.source).is_err() {
            return WeqVerdict::Unknown("non-simplicial base: only isomorphisms decided".into());
        }
        match self.falsify(f) {
            Ok(Some(ev)) => WeqVerdict::NotWeq(ev),
            Ok(None) => WeqVerdict::Unknown(
                "cone homology vanishes in every reliable degree; the falsifier cannot conclude"
                    .into(),
            ),
            Err(e) => WeqVerdict::Unknown(format!("homology falsifier failed: {e}")),
        }
    }

    /// The homotopy-witness search as a standalone provider: `Weq` with a
    /// re-verified two-sided homotopy certificate when one is found within
    /// budget, `Unknown` otherwise.
    pub fn homotopy_witness(&self, f: &PresheafMap) -> WeqVerdict {
        if f.is_iso() {
            return WeqVerdict::Weq(WeqEvidence::Iso);
        }
        if simplex_truncation(&f.source).is_err() {
            return WeqVerdict::Unknown("non-simplicial base: only isomorphisms decided".into());
        }
        match self.homotopy_equivalence(f) {
            Ok(Some(ev)) => WeqVerdict::Weq(ev),
            Ok(None) => WeqVerdict::Unknown("no homotopy certificate found within budget".into()),
            Err(e) => WeqVerdict::Unknown(format!("homotopy search failed: {e}")),
        }
    }

    /// Searches for a homotopy inverse with verified two-sided homotopies.
    fn homotopy_equivalence(&self, f: &PresheafMap) -> Result<Option<WeqEvidence>> {
        let candidates = match hom_set(&f.target, &f.source) {
            Ok(c) => c,
            Err(EngineError::BudgetExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        for g in candidates.into_iter().take(self.max_inverses) {
            let gf = f.then(&g)?;
            let fg = g.then(f)?;
            let id_x = PresheafMap::identity(&f.source);
            let id_y = PresheafMap::identity(&f.target);
            let Some(hx) = homotopic_either_way(&gf, &id_x, self.homotopy_budget)? else {
                continue;
            };
            let Some(hy) = homotopic_either_way(&fg, &id_y, self.homotopy_budget)? else {
                continue;
            };
            // Certificates are re-verified against one orientation or the
            // other; reject anything that fails both.
            let hx_ok = verify_homotopy(&hx, &gf, &id_x)? || verify_homotopy(&hx, &id_x, &gf)?;
            let hy_ok = verify_homotopy(&hy, &fg, &id_y)? || verify_homotopy(&hy, &id_y, &fg)?;
            if hx_ok && hy_ok {
                return Ok(Some(WeqEvidence::HomotopyEquivalence {
                    inverse: Box::new(g),
                    source_homotopy: Box::new(hx),
                    target_homotopy: Box::new(hy),
                }));
            }
        }
        Ok(None)
    }

    /// Nonzero reliable cone homology refutes the equivalence.
    fn falsify(&self, f: &PresheafMap) -> Result<Option<NotWeqEvidence>> {
        let h = cone_homology(f)?;
        for k in 0..h.reliable_degrees {
            let betti = h.betti[k];
            let torsion_count = h.torsion[k].len();
            if betti != 0 || torsion_count > 0 {
                return Ok(Some(NotWeqEvidence {
                    degree: k,
                    betti,
                    torsion_count,
                }));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::simplex;

    fn boundary_and_triangle(n: usize) -> (Arc<Presheaf>, Arc<Presheaf>, PresheafMap) {
        let s = simplex(n);
        let o0 = s.object_named("[0]").unwrap();
        let o1 = s.object_named("[1]").unwrap();
        let o2 = s.object_named("[2]").unwrap();
        let y2 = Presheaf::yoneda(s.clone(), o2);
        let mut seeds: Vec<CellRef> = (0..3).map(|i| CellRef { obj: o0, idx: i }).collect();
        seeds.extend(
            y2.nondegenerate_cells(o1)
                .into_iter()
                .map(|idx| CellRef { obj: o1, idx }),
        );
        let (bd, incl) = y2.sub_generated("∂Δ[2]", &seeds).unwrap();
        (bd, y2, incl)
    }

    fn collapse_to_point(x: &Arc<Presheaf>) -> PresheafMap {
        let t = Presheaf::terminal(x.base().clone());
        hom_set(x, &t).unwrap().remove(0)
    }

    #[test]
    fn isomorphisms_are_decided_immediately() {
        let s = simplex(1);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s, o1);
        let v = WeqOracle::default().verdict(&PresheafMap::identity(&y1));
        assert!(matches!(v, WeqVerdict::Weq(WeqEvidence::Iso)));
    }

    #[test]
    fn interval_collapse_has_a_homotopy_certificate() {
        // Homology cannot certify this positively; the witness must.
        let s = simplex(2);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        let f = collapse_to_point(&y1);
        let oracle = WeqOracle::default();
        assert!(oracle.falsify(&f).unwrap().is_none());
        let v = oracle.verdict(&f);
        assert!(
            matches!(v, WeqVerdict::Weq(WeqEvidence::HomotopyEquivalence { .. })),
            "got {v:?}"
        );
    }

    #[test]
    fn boundary_inclusion_is_refuted_by_cone_homology() {
        let (_bd, _y2, incl) = boundary_and_triangle(3);
        let v = WeqOracle::default().verdict(&incl);
        match v {
            WeqVerdict::NotWeq(ev) => assert_eq!(ev.degree, 2),
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn refutation_power_grows_with_truncation() {
        // At truncation 2, the cone's H_2 is outside the reliable range and
        // no homotopy certificate exists: the oracle must stay honest.
        let (bd, _y2, _) = boundary_and_triangle(2);
        let f = collapse_to_point(&bd);
        let v2 = WeqOracle::default().verdict(&f);
        assert!(v2.is_unknown(), "got {v2:?}");
        // At truncation 3 the same map is refuted.
        let (bd3, _y23, _) = boundary_and_triangle(3);
        let f3 = collapse_to_point(&bd3);
        let v3 = WeqOracle::default().verdict(&f3);
        assert!(v3.is_not_weq(), "got {v3:?}");
    }

    #[test]
    fn homotopy_search_finds_the_min_contraction() {
        let s = simplex(2);
        let o1 = s.object_named("[1]").unwrap();
        let y1 = Presheaf::yoneda(s.clone(), o1);
        // Contract the interval to its 0 end: u = const0, v = id.
        let t = Presheaf::terminal(s.clone());
        let bang = collapse_to_point(&y1);
        let zero = {
            let comps: Vec<Vec<u32>> = s
                .objects()
                .map(|o| vec![constant_interval_cell(&s, o, 0); t.cells(o) as usize])
                .collect();
            PresheafMap::new(t.clone(), y1.clone(), comps).unwrap()
        };
        let const0 = bang.then(&zero).unwrap();
        let id = PresheafMap::identity(&y1);
        let h = homotopy_between(&const0, &id, 1_000_000).unwrap();
        let h = h.expect("the min homotopy exists");
        assert!(verify_homotopy(&h, &const0, &id).unwrap());
    }

    #[test]
    fn verdicts_are_compatible_across_truncations() {
        let (_, _, incl2) = boundary_and_triangle(2);
        let (_, _, incl3) = boundary_and_triangle(3);
        let v2 = WeqOracle::default().verdict(&incl2);
        let v3 = WeqOracle::default().verdict(&incl3);
        assert!(v2.compatible(&v3));
    }

    #[test]
    fn iso_oracle_certifies_only_isomorphisms() {
        let s = simplex(1);
        let o0 = s.object_named("[0]").unwrap();
        let o1 = s.object_named("[1]").unwrap();
        let y0 = Presheaf::yoneda(s.clone(), o0);
        let y1 = Presheaf::yoneda(s.clone(), o1);
        assert!(iso_oracle(&PresheafMap::identity(&y1)).is_weq());
        let endpoint = hom_set(&y0, &y1).unwrap().remove(0);
        assert!(iso_oracle(&endpoint).is_unknown());
        let (two, _, _) = Presheaf::coproduct(&y0, &y0).unwrap();
        let id = PresheafMap::identity(&y0);
        let fold = Presheaf::copair_from_coproduct(&two, &id, &id).unwrap();
        assert!(iso_oracle(&fold).is_unknown());
    }

    #[test]
    fn homology_falsifier_refutes_the_boundary_collapse() {
        let oracle = WeqOracle::default();
        let (bd, _, _) = boundary_and_triangle(3);
        // Collapsing the triangle boundary kills its degree-1 homology.
        assert!(oracle.homology_falsifier(&collapse_to_point(&bd)).is_not_weq());
        // The interval collapse has agreeing homology everywhere; the
        // falsifier alone cannot conclude.
        let s = simplex(2);
        let y1 = Presheaf::yoneda(s.clone(), s.object_named("[1]").unwrap());
        assert!(oracle.homology_falsifier(&collapse_to_point(&y1)).is_unknown());
        // Isomorphisms are confirmed by the iso pre-check.
        assert!(oracle
            .homology_falsifier(&PresheafMap::identity(&y1))
            .is_weq());
    }

    #[test]
    fn homotopy_witness_certifies_contractions() {
        let oracle = WeqOracle::default();
        let s = simplex(2);
        let y0 = Presheaf::yoneda(s.clone(), s.object_named("[0]").unwrap());
        let y1 = Presheaf::yoneda(s.clone(), s.object_named("[1]").unwrap());
        assert!(oracle.homotopy_witness(&collapse_to_point(&y1)).is_weq());
        let endpoint = hom_set(&y0, &y1).unwrap().remove(0);
        assert!(oracle.homotopy_witness(&endpoint).is_weq());
        assert!(oracle.homotopy_witness(&PresheafMap::identity(&y1)).is_weq());
    }

    #[test]
    fn oracle_modes_restrict_the_verdict_chain() {
        let s = simplex(2);
        let y1 = Presheaf::yoneda(s.clone(), s.object_named("[1]").unwrap());
        let collapse = collapse_to_point(&y1);
        // Only the full chain can certify this positively: it is not an
        // isomorphism and its homology agrees with the point's.
        assert!(WeqOracle::with_mode(OracleMode::Iso)
            .verdict(&collapse)
            .is_unknown());
        assert!(WeqOracle::with_mode(OracleMode::Homology)
            .verdict(&collapse)
            .is_unknown());
        assert!(WeqOracle::with_mode(OracleMode::Full)
            .verdict(&collapse)
            .is_weq());
        assert!(OracleMode::parse("homotopy-search").unwrap() == OracleMode::Full);
        assert!(OracleMode::parse("nonsense").is_err());
    }
}
