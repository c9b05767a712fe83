//! Structure catalogs and the named law suites.
//!
//! Each suite instantiates the quantifier structure of one law over a
//! reproducible catalog of small structures: every relation subspace of the
//! wedge ambient at the exhaustive parameter points, plus seeded random
//! relation subspaces at the sampled points. Results are deterministic for
//! a fixed config and identical for any worker count; a failing suite
//! always carries a replayable counterexample.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{self, Guardrail};
use crate::error::{Error, Result};
use crate::free;
use crate::lattice::{relation_dims, AmbientLattice, StructureTable};
use crate::structure::BilinearStructure;
use crate::subspace::Subspace;
use crate::vector::FpVector;
use crate::wedge;

/// Identifier of one checkable law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// Submodularity of δ and its two comparison corollaries.
    L3_1,
    /// Intersections of selfsufficient subspaces are selfsufficient.
    L3_2,
    /// cl_k is a closure operator: extensive, monotone, transitive.
    L3_3,
    /// w_m lies in no Λ²E with dim E < m, plus the rank-orbit separation.
    L4_1,
    /// A minimal extension is contained in, or meets trivially, every
    /// selfsufficient extension.
    L5_1,
    /// N(L + K) = N(L) + N(K) for closure-confined complements.
    L5_2,
    /// The closure chain terminates on the closure set with constant δ.
    T6_1Chain,
    /// The defining minimum of δ_k(K/H) equals its closed form.
    DeltaRel,
    /// Search-based css equals the literal intersection of selfsufficient
    /// superspaces, with a unique minimum-dimension minimizer.
    CssOracle,
}

/// All suite ids in reporting order.
pub const ALL_LEMMAS: [LemmaId; 9] = [
    LemmaId::L3_1,
    LemmaId::L3_2,
    LemmaId::L3_3,
    LemmaId::L4_1,
    LemmaId::L5_1,
    LemmaId::L5_2,
    LemmaId::T6_1Chain,
    LemmaId::DeltaRel,
    LemmaId::CssOracle,
];

impl LemmaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::L3_1 => "L3.1",
            LemmaId::L3_2 => "L3.2",
            LemmaId::L3_3 => "L3.3",
            LemmaId::L4_1 => "L4.1",
            LemmaId::L5_1 => "L5.1",
            LemmaId::L5_2 => "L5.2",
            LemmaId::T6_1Chain => "T6.1-chain",
            LemmaId::DeltaRel => "DREL",
            LemmaId::CssOracle => "CSS-oracle",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_LEMMAS
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// Catalog parameters: which ambients are enumerated exhaustively, which
/// are sampled, and with which few-relations constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogConfig {
    /// (p, n) points whose relation subspaces are enumerated completely.
    pub exhaustive: Vec<(u64, usize)>,
    /// (p, n) points drawing seeded random relation subspaces.
    pub sampled: Vec<(u64, usize)>,
    pub ks: Vec<u64>,
    pub seed: u64,
    pub samples_per_point: usize,
    pub guardrail: Guardrail,
    /// Primes for the free-case suite.
    pub free_ps: Vec<u64>,
    /// Largest m tested by the free-case suite.
    pub max_m: usize,
}

impl CatalogConfig {
    fn base() -> Self {
        Self {
            exhaustive: Vec::new(),
            sampled: Vec::new(),
            ks: vec![1, 2, 3],
            seed: 42,
            samples_per_point: 8,
            guardrail: Guardrail::default(),
            free_ps: vec![2, 3],
            max_m: 5,
        }
    }

    /// The per-suite default catalog used by `verify`.
    pub fn acceptance_default(id: LemmaId) -> Self {
        let base = Self::base();
        match id {
            LemmaId::L3_1 | LemmaId::L3_2 => Self {
                exhaustive: vec![(2, 2), (2, 3)],
                sampled: vec![(2, 4), (3, 4)],
                ..base
            },
            LemmaId::L3_3 | LemmaId::CssOracle | LemmaId::DeltaRel | LemmaId::T6_1Chain => Self {
                exhaustive: vec![(2, 2), (2, 3)],
                ..base
            },
            LemmaId::L5_1 | LemmaId::L5_2 => Self {
                exhaustive: vec![(2, 2), (2, 3), (2, 4)],
                ..base
            },
            LemmaId::L4_1 => base,
        }
    }
}

/// One catalog structure with its few-relations tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub structure: BilinearStructure,
    /// Whether dim N(H) ≤ k·dim(H) holds on every subspace. Failing
    /// structures stay in the catalog; suites whose hypotheses need the
    /// tag skip them.
    pub few_relations: bool,
    pub sampled: bool,
}

/// Materializes the catalog: exhaustive points first (relation subspaces in
/// canonical order, each with every k), then sampled points in seed order.
pub fn generate_catalog(cfg: &CatalogConfig) -> Result<Vec<CatalogEntry>> {
    let mut lats = HashMap::new();
    generate_catalog_with(cfg, &mut lats)
}

type LatticeMap = HashMap<(u64, usize), Arc<AmbientLattice>>;

fn lattice_for(lats: &mut LatticeMap, p: u64, n: usize, guard: &Guardrail) -> Result<Arc<AmbientLattice>> {
    if let Some(l) = lats.get(&(p, n)) {
        return Ok(Arc::clone(l));
    }
    let lat = Arc::new(AmbientLattice::build(p, n, guard)?);
    lats.insert((p, n), Arc::clone(&lat));
    Ok(lat)
}

fn few_relations_tag(lat: &AmbientLattice, k: u64, n_dims: &[u8]) -> bool {
    n_dims
        .iter()
        .zip(&lat.dims)
        .all(|(&nd, &d)| nd as u64 <= k * d as u64)
}

fn generate_catalog_with(cfg: &CatalogConfig, lats: &mut LatticeMap) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for &(p, n) in &cfg.exhaustive {
        let wd = wedge::dim(n);
        let lat = lattice_for(lats, p, n, &cfg.guardrail)?;
        for rel in enumerate::subspaces(p, wd, &cfg.guardrail)? {
            let n_dims = relation_dims(&lat, &rel)?;
            for &k in &cfg.ks {
                entries.push(CatalogEntry {
                    structure: BilinearStructure::new(p, n, k, rel.clone())?,
                    few_relations: few_relations_tag(&lat, k, &n_dims),
                    sampled: false,
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for &(p, n) in &cfg.sampled {
        let wd = wedge::dim(n);
        let lat = lattice_for(lats, p, n, &cfg.guardrail)?;
        for _ in 0..cfg.samples_per_point {
            let gen_count = rng.gen_range(0..=wd);
            let gens: Vec<FpVector> = (0..gen_count)
                .map(|_| {
                    let coords: Vec<u64> = (0..wd).map(|_| rng.gen_range(0..p)).collect();
                    FpVector::new(p, coords)
                })
                .collect::<Result<_>>()?;
            let rel = Subspace::span(p, wd, &gens)?;
            let n_dims = relation_dims(&lat, &rel)?;
            for &k in &cfg.ks {
                entries.push(CatalogEntry {
                    structure: BilinearStructure::new(p, n, k, rel.clone())?,
                    few_relations: few_relations_tag(&lat, k, &n_dims),
                    sampled: true,
                });
            }
        }
    }
    Ok(entries)
}

/// A replayable witness of a suite failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Canonical structure file text.
    pub structure: String,
    pub subspaces: Vec<Subspace>,
    pub detail: String,
}

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub lemma: LemmaId,
    pub pass: bool,
    pub instances: u64,
    pub seed: u64,
    pub time_ms: u128,
    pub counterexample: Option<Counterexample>,
    /// Which mode covered which parameter point.
    pub coverage: Vec<String>,
}

impl SuiteResult {
    /// The one-line machine form. Timing is reported only on request so
    /// that outputs stay byte-identical across runs and worker counts.
    pub fn machine_line(&self, with_time: bool) -> String {
        format!(
            "SUITE {} {} instances={} seed={} time_ms={}",
            self.lemma,
            if self.pass { "pass" } else { "fail" },
            self.instances,
            self.seed,
            if with_time { self.time_ms } else { 0 }
        )
    }

    pub fn render_text(&self, with_time: bool) -> String {
        let mut out = self.machine_line(with_time);
        out.push('\n');
        for line in &self.coverage {
            out.push_str(&format!("  {line}\n"));
        }
        if let Some(ce) = &self.counterexample {
            out.push_str("counterexample:\n");
            for line in ce.structure.lines() {
                out.push_str(&format!("  | {line}\n"));
            }
            for (i, s) in ce.subspaces.iter().enumerate() {
                out.push_str(&format!("  subspace {i}: {s}\n"));
            }
            out.push_str(&format!("  {}\n", ce.detail));
        }
        out
    }
}

type CheckOutcome = (u64, Option<Counterexample>);
type Checker = fn(&AmbientLattice, &StructureTable, &BilinearStructure) -> CheckOutcome;

fn ce(
    lat: &AmbientLattice,
    s: &BilinearStructure,
    idxs: &[usize],
    detail: String,
) -> Counterexample {
    Counterexample {
        structure: s.serialize(),
        subspaces: idxs.iter().map(|&i| lat.subspaces[i].clone()).collect(),
        detail,
    }
}

/// δ(H+K) ≤ δ(H) + δ(K) - δ(H∩K), plus the two comparison clauses.
fn check_l31(lat: &AmbientLattice, t: &StructureTable, s: &BilinearStructure) -> CheckOutcome {
    let count = lat.len();
    let mut inst = 0;
    for i in 0..count {
        for j in 0..count {
            inst += 1;
            let su = lat.sum[i][j] as usize;
            let it = lat.inter[i][j] as usize;
            let (dh, dk, ds, di) = (t.delta[i], t.delta[j], t.delta[su], t.delta[it]);
            if ds > dh + dk - di {
                return (
                    inst,
                    Some(ce(
                        lat,
                        s,
                        &[i, j],
                        format!("submodularity fails: δ(H+K)={ds} > {dh}+{dk}-{di}"),
                    )),
                );
            }
            if ds > dk && di >= dh {
                return (
                    inst,
                    Some(ce(
                        lat,
                        s,
                        &[i, j],
                        format!("clause ii fails: δ(H+K)={ds} > δ(K)={dk} but δ(H∩K)={di} ≥ δ(H)={dh}"),
                    )),
                );
            }
            if ds >= dk && di > dh {
                return (
                    inst,
                    Some(ce(
                        lat,
                        s,
                        &[i, j],
                        format!("clause iii fails: δ(H+K)={ds} ≥ δ(K)={dk} but δ(H∩K)={di} > δ(H)={dh}"),
                    )),
                );
            }
        }
    }
    (inst, None)
}

/// Intersections of selfsufficient subspaces stay selfsufficient.
fn check_l32(lat: &AmbientLattice, t: &StructureTable, s: &BilinearStructure) -> CheckOutcome {
    let count = lat.len();
    let mut inst = 0;
    for i in 0..count {
        if !t.ss[i] {
            continue;
        }
        for j in 0..count {
            if !t.ss[j] {
                continue;
            }
            inst += 1;
            let it = lat.inter[i][j] as usize;
            if !t.ss[it] {
                return (
                    inst,
                    Some(ce(
                        lat,
                        s,
                        &[i, j, it],
                        "intersection of selfsufficient subspaces is not selfsufficient".into(),
                    )),
                );
            }
        }
    }
    (inst, None)
}

/// Extensivity, monotonicity, and transitivity of the combinatorial closure.
fn check_l33(lat: &AmbientLattice, t: &StructureTable, s: &BilinearStructure) -> CheckOutcome {
    let count = lat.len();
    let masks: Vec<_> = (0..count).map(|i| t.closure_mask(lat, i)).collect();
    let mut inst = 0;
    for (i, mask) in masks.iter().enumerate() {
        inst += 1;
        if !lat.vec_mask[i].is_subset(mask) {
            return (
                inst,
                Some(ce(lat, s, &[i], "closure is not extensive".into())),
            );
        }
    }
    for i in 0..count {
        for j in 0..count {
            if lat.up[i].get(j) {
                inst += 1;
                if !masks[i].is_subset(&masks[j]) {
                    return (
                        inst,
                        Some(ce(lat, s, &[i, j], "closure is not monotone".into())),
                    );
                }
            }
        }
    }
    for i in 0..count {
        for j in 0..count {
            if lat.vec_mask[j].is_subset(&masks[i]) {
                inst += 1;
                if !masks[j].is_subset(&masks[i]) {
                    return (
                        inst,
                        Some(ce(
                            lat,
                            s,
                            &[i, j],
                            "closure is not transitive: cl(B) ⊄ cl(A) though B ⊆ cl(A)".into(),
                        )),
                    );
                }
            }
        }
    }
    (inst, None)
}

/// The defining minimum of δ(K/H) equals δ(K+H) - δ(H).
fn check_drel(lat: &AmbientLattice, t: &StructureTable, s: &BilinearStructure) -> CheckOutcome {
    let count = lat.len();
    let mut inst = 0;
    for h in 0..count {
        if !t.ss[h] {
            continue;
        }
        for ksp in 0..count {
            inst += 1;
            let target = lat.sum[ksp][h] as usize;
            let closed = t.delta[target] - t.delta[h];
            let mut min: Option<i64> = None;
            for k1 in 0..count {
                if lat.sum[k1][h] as usize != target {
                    continue;
                }
                let it = lat.inter[k1][h] as usize;
                if !t.ss[it] {
                    continue;
                }
                let v = t.delta[k1] - t.delta[it];
                min = Some(min.map_or(v, |m| m.min(v)));
            }
            if min != Some(closed) {
                return (
                    inst,
                    Some(ce(
                        lat,
                        s,
                        &[ksp, h],
                        format!("relative predimension mismatch: min {min:?} vs closed {closed}"),
                    )),
                );
            }
        }
    }
    (inst, None)
}

/// Minimal extensions are contained in, or meet trivially, every
/// selfsufficient extension.
fn check_l51(lat: &AmbientLattice, t: &StructureTable, s: &BilinearStructure) -> CheckOutcome {
    let count = lat.len();
    let mut inst = 0;
    for h in 0..count {
        if !t.ss[h] {
            continue;
        }
        let exts = t.minimal_extensions(lat, h);
        for &k in &exts {
            let k = k as usize;
            for l in lat.up[h].iter_ones() {
                if !t.ss[l] {
                    continue;
                }
                inst += 1;
                let contained = lat.up[k].get(l);
                if !contained && lat.inter[k][l] as usize != h {
                    return (
                        inst,
                        Some(ce(
                            lat,
                            s,
                            &[h, k, l],
                            "minimal extension neither contained in nor independent of L over H"
                                .into(),
                        )),
                    );
                }
            }
        }
    }
    (inst, None)
}

/// N(L+K) = N(L) + N(K) for selfsufficient K, L inside the closure of H
/// with K ∩ L = H.
fn check_l52(lat: &AmbientLattice, t: &StructureTable, s: &BilinearStructure) -> CheckOutcome {
    let count = lat.len();
    let mut inst = 0;
    for h in 0..count {
        if !t.ss[h] {
            continue;
        }
        let cm = t.closure_mask(lat, h);
        let candidates: Vec<usize> = lat.up[h]
            .iter_ones()
            .filter(|&j| t.ss[j] && lat.vec_mask[j].is_subset(&cm))
            .collect();
        for &k in &candidates {
            for &l in &candidates {
                if lat.inter[k][l] as usize != h {
                    continue;
                }
                inst += 1;
                let join = lat.sum[k][l] as usize;
                let n_join = match s.n_of(&lat.subspaces[join]) {
                    Ok(v) => v,
                    Err(e) => return (inst, Some(ce(lat, s, &[h], format!("error: {e}")))),
                };
                let n_sum = s
                    .n_of(&lat.subspaces[k])
                    .and_then(|nk| nk.sum(&s.n_of(&lat.subspaces[l])?));
                let n_sum = match n_sum {
                    Ok(v) => v,
                    Err(e) => return (inst, Some(ce(lat, s, &[h], format!("error: {e}")))),
                };
                if n_join != n_sum {
                    return (
                        inst,
                        Some(ce(
                            lat,
                            s,
                            &[h, k, l],
                            format!("N(L+K) = {n_join} differs from N(L)+N(K) = {n_sum}"),
                        )),
                    );
                }
            }
        }
    }
    (inst, None)
}

/// The closure chain from every selfsufficient subspace terminates on the
/// closure set through selfsufficient members of constant δ, and a strict
/// closure always yields a minimal extension.
fn check_t61(lat: &AmbientLattice, t: &StructureTable, s: &BilinearStructure) -> CheckOutcome {
    let count = lat.len();
    let mut inst = 0;
    for h in 0..count {
        if !t.ss[h] {
            continue;
        }
        inst += 1;
        let cm = t.closure_mask(lat, h);
        let dh = t.delta[h];
        let mut cur = h;
        loop {
            let exts: Vec<usize> = t
                .minimal_extensions(lat, cur)
                .into_iter()
                .map(|j| j as usize)
                .filter(|&j| lat.vec_mask[j].is_subset(&cm))
                .collect();
            let strict = lat.vec_mask[cur] != cm;
            if strict && exts.is_empty() {
                return (
                    inst,
                    Some(ce(
                        lat,
                        s,
                        &[h, cur],
                        "strict closure but no minimal extension inside it".into(),
                    )),
                );
            }
            if exts.is_empty() {
                break;
            }
            let mut next = cur;
            for &j in &exts {
                next = lat.sum[next][j] as usize;
            }
            if next == cur || !t.ss[next] || t.delta[next] != dh
                || !lat.vec_mask[next].is_subset(&cm)
            {
                return (
                    inst,
                    Some(ce(
                        lat,
                        s,
                        &[h, cur, next],
                        "chain step broke selfsufficiency, δ, or closure confinement".into(),
                    )),
                );
            }
            cur = next;
        }
        if lat.vec_mask[cur] != cm {
            return (
                inst,
                Some(ce(
                    lat,
                    s,
                    &[h, cur],
                    "final chain member does not carry the closure set".into(),
                )),
            );
        }
    }
    (inst, None)
}

/// Search-based css equals the literal intersection of all selfsufficient
/// superspaces; its δ is the brute-force minimum; the minimum-dimension
/// minimizer is unique.
fn check_css_oracle(
    lat: &AmbientLattice,
    t: &StructureTable,
    s: &BilinearStructure,
) -> CheckOutcome {
    let count = lat.len();
    let mut inst = 0;
    for i in 0..count {
        inst += 1;
        let css = t.css_of[i] as usize;
        let mut literal: Option<usize> = None;
        let mut min_delta = i64::MAX;
        for j in lat.up[i].iter_ones() {
            min_delta = min_delta.min(t.delta[j]);
            if t.ss[j] {
                literal = Some(match literal {
                    None => j,
                    Some(a) => lat.inter[a][j] as usize,
                });
            }
        }
        let literal = literal.expect("the full space is selfsufficient");
        if literal != css {
            return (
                inst,
                Some(ce(
                    lat,
                    s,
                    &[i, css, literal],
                    "search-based css differs from the literal intersection".into(),
                )),
            );
        }
        if t.delta[css] != min_delta {
            return (
                inst,
                Some(ce(
                    lat,
                    s,
                    &[i, css],
                    format!(
                        "δ(css) = {} is not the minimum {min_delta} over superspaces",
                        t.delta[css]
                    ),
                )),
            );
        }
        let css_dim = lat.dims[css];
        let minimizer_count = lat.up[i]
            .iter_ones()
            .filter(|&j| t.delta[j] == min_delta && lat.dims[j] == css_dim)
            .count();
        if minimizer_count != 1 {
            return (
                inst,
                Some(ce(
                    lat,
                    s,
                    &[i],
                    format!("{minimizer_count} minimum-dimension δ-minimizers"),
                )),
            );
        }
    }
    (inst, None)
}

fn checker_for(id: LemmaId) -> Checker {
    match id {
        LemmaId::L3_1 => check_l31,
        LemmaId::L3_2 => check_l32,
        LemmaId::L3_3 => check_l33,
        LemmaId::L5_1 => check_l51,
        LemmaId::L5_2 => check_l52,
        LemmaId::T6_1Chain => check_t61,
        LemmaId::DeltaRel => check_drel,
        LemmaId::CssOracle => check_css_oracle,
        LemmaId::L4_1 => unreachable!("free-case suite has its own runner"),
    }
}

/// Whether a suite's hypotheses require the few-relations tag.
fn tagged_only(id: LemmaId) -> bool {
    matches!(id, LemmaId::L5_1 | LemmaId::L5_2 | LemmaId::T6_1Chain)
}

/// Runs one suite over its catalog. The catalog entries are split into
/// contiguous index ranges across `workers` threads; the merged result is
/// identical for every worker count, including the counterexample (the
/// first in catalog order) and the instance count (everything up to it).
pub fn run_suite(id: LemmaId, cfg: &CatalogConfig, workers: usize) -> Result<SuiteResult> {
    let start = Instant::now();
    let result = if id == LemmaId::L4_1 {
        run_free_suite(cfg)?
    } else {
        run_catalog_suite(id, cfg, workers.max(1))?
    };
    Ok(SuiteResult {
        time_ms: start.elapsed().as_millis(),
        ..result
    })
}

fn run_catalog_suite(id: LemmaId, cfg: &CatalogConfig, workers: usize) -> Result<SuiteResult> {
    let mut lats: LatticeMap = HashMap::new();
    let entries = generate_catalog_with(cfg, &mut lats)?;
    let checker = checker_for(id);
    let skip_untagged = tagged_only(id);

    let chunk_size = entries.len().div_ceil(workers).max(1);
    let ranges: Vec<(usize, usize)> = (0..workers)
        .map(|w| {
            let lo = (w * chunk_size).min(entries.len());
            let hi = ((w + 1) * chunk_size).min(entries.len());
            (lo, hi)
        })
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let mut outputs: Vec<Result<RangeOutcome>> = Vec::with_capacity(ranges.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let slice = &entries[lo..hi];
                let lats = &lats;
                scope.spawn(move || process_entries(slice, lo, lats, checker, skip_untagged))
            })
            .collect();
        for h in handles {
            outputs.push(h.join().expect("suite worker panicked"));
        }
    });

    // Merge: earliest counterexample wins; instances cover the catalog
    // prefix up to and including the failing entry.
    let mut per_entry_counts: Vec<(usize, u64)> = Vec::new();
    let mut first_ce: Option<(usize, Counterexample)> = None;
    for (out, &(lo, _)) in outputs.into_iter().zip(&ranges) {
        let (counts, ce) = out?;
        for (offset, c) in counts.into_iter().enumerate() {
            per_entry_counts.push((lo + offset, c));
        }
        if let Some((idx, c)) = ce {
            if first_ce.as_ref().is_none_or(|(best, _)| idx < *best) {
                first_ce = Some((idx, c));
            }
        }
    }
    let instances = match &first_ce {
        Some((fail_idx, _)) => per_entry_counts
            .iter()
            .filter(|(idx, _)| idx <= fail_idx)
            .map(|(_, c)| c)
            .sum(),
        None => per_entry_counts.iter().map(|(_, c)| c).sum(),
    };

    Ok(SuiteResult {
        lemma: id,
        pass: first_ce.is_none(),
        instances,
        seed: cfg.seed,
        time_ms: 0,
        counterexample: first_ce.map(|(_, c)| c),
        coverage: catalog_coverage(cfg, &entries),
    })
}

/// Per-entry instance counts plus the first counterexample in the range.
type RangeOutcome = (Vec<u64>, Option<(usize, Counterexample)>);

fn process_entries(
    entries: &[CatalogEntry],
    offset: usize,
    lats: &LatticeMap,
    checker: Checker,
    skip_untagged: bool,
) -> Result<RangeOutcome> {
    let mut counts = Vec::with_capacity(entries.len());
    let mut found = None;
    let mut last_dims: Option<(Subspace, Vec<u8>)> = None;
    for (i, entry) in entries.iter().enumerate() {
        if skip_untagged && !entry.few_relations {
            counts.push(0);
            continue;
        }
        let s = &entry.structure;
        let lat = &lats[&(s.p(), s.n())];
        let n_dims = match &last_dims {
            Some((rel, dims)) if rel == s.relations() => dims.clone(),
            _ => {
                let dims = relation_dims(lat, s.relations())?;
                last_dims = Some((s.relations().clone(), dims.clone()));
                dims
            }
        };
        let table = StructureTable::build(lat, s.k(), &n_dims);
        let (inst, ce) = checker(lat, &table, s);
        counts.push(inst);
        if let Some(c) = ce {
            found = Some((offset + i, c));
            break;
        }
    }
    Ok((counts, found))
}

fn catalog_coverage(cfg: &CatalogConfig, entries: &[CatalogEntry]) -> Vec<String> {
    let mut out = Vec::new();
    let ks = cfg
        .ks
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    for &(p, n) in &cfg.exhaustive {
        let count = entries
            .iter()
            .filter(|e| !e.sampled && e.structure.p() == p && e.structure.n() == n)
            .count();
        out.push(format!("exhaustive p={p} n={n} k={ks} structures={count}"));
    }
    for &(p, n) in &cfg.sampled {
        let count = entries
            .iter()
            .filter(|e| e.sampled && e.structure.p() == p && e.structure.n() == n)
            .count();
        out.push(format!(
            "sampled p={p} n={n} k={ks} structures={count} seed={}",
            cfg.seed
        ));
    }
    out
}

/// The free-case suite: membership bound and observed threshold for w_m,
/// rank values 2m, oracle agreement where exhaustive, the g-sequence, and
/// the rank-separated orbit witnesses.
fn run_free_suite(cfg: &CatalogConfig) -> Result<SuiteResult> {
    let mut instances = 0u64;
    let mut coverage = Vec::new();
    let mut counterexample = None;

    'outer: for &p in &cfg.free_ps {
        for m in 1..=cfg.max_m {
            let report = free::verify_lemma_4_1(m, p, cfg.seed, &cfg.guardrail)?;
            instances += report.subspaces_checked + 1;
            coverage.push(format!(
                "{} p={p} m={m} threshold={} subspaces={}",
                if report.exhaustive { "exhaustive" } else { "sampled" },
                report.sharp_threshold,
                report.subspaces_checked
            ));
            let n = 2 * m;
            let basis: Vec<FpVector> = (0..n)
                .map(|i| FpVector::unit(p, n, i))
                .collect::<Result<_>>()?;
            let rank = wedge::build_w(m, &basis)?.rank();
            let fail = |detail: String| Counterexample {
                structure: free::free_structure(n, p, 1)
                    .map(|s| s.serialize())
                    .unwrap_or_default(),
                subspaces: Vec::new(),
                detail,
            };
            if !report.bound_holds {
                counterexample = Some(fail(format!(
                    "membership below dim m found for w_{m} at p={p}"
                )));
                break 'outer;
            }
            if rank != 2 * m {
                counterexample = Some(fail(format!(
                    "rank(w_{m}) = {rank}, expected {}",
                    2 * m
                )));
                break 'outer;
            }
            if report.exhaustive && report.sharp_threshold != rank {
                counterexample = Some(fail(format!(
                    "exhaustive min-support {} disagrees with rank {rank}",
                    report.sharp_threshold
                )));
                break 'outer;
            }
        }
    }

    if counterexample.is_none() {
        instances += 1;
        if free::g_sequence(3) != vec![1, 3, 7] {
            counterexample = Some(Counterexample {
                structure: String::new(),
                subspaces: Vec::new(),
                detail: "g-sequence recurrence broken".into(),
            });
        }
    }
    if counterexample.is_none() {
        for &p in &cfg.free_ps {
            instances += 1;
            let ws = free::orbit_separation_witnesses(2, p, &cfg.guardrail)?;
            let ranks: Vec<usize> = ws.iter().map(|w| w.rank).collect();
            if ranks != vec![2, 6] {
                counterexample = Some(Counterexample {
                    structure: String::new(),
                    subspaces: Vec::new(),
                    detail: format!("orbit witness ranks {ranks:?} at p={p}, expected [2, 6]"),
                });
                break;
            }
        }
    }

    Ok(SuiteResult {
        lemma: LemmaId::L4_1,
        pass: counterexample.is_none(),
        instances,
        seed: cfg.seed,
        time_ms: 0,
        counterexample,
        coverage,
    })
}
