//! Exhaustive desk-scale sweeps. Each returns a serializable report whose
//! content does not depend on the number of worker threads.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{erc_search, ErcReport};
use crate::category::{embedding_maps, enumerate_colorings, Coloring, HomSet};
use crate::diagram::{check_cocone, PosTransfer};
use crate::error::{CoreError, Result};
use crate::generate;
use crate::preadjunction::{cpa2_check, is_tight, tight_extension, CpaInstance, MetPos, TightSet};
use crate::rational::Rational;
use crate::structures::OrderedStructure;
use crate::transfers::{
    dagger, enumerate_total_quasiorders, graph_digraph_iso, graph_tournament_iso, is_irreducible, mat, star, tp, tup,
    DigraphDirection, EncodedHypergraph, EncodingSignature, TournamentDirection, DEFAULT_QUASIORDER_CAP,
};

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CoreError::Malformed(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn doc(s: &OrderedStructure) -> String {
    serde_json::to_string(s).expect("structures serialize")
}

fn upto<F: Fn(usize) -> Vec<OrderedStructure>>(n_max: usize, f: F) -> Vec<OrderedStructure> {
    (0..=n_max).flat_map(f).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorReport {
    pub graphs: usize,
    pub digraphs: usize,
    pub tournaments: usize,
    pub round_trips_checked: usize,
    pub hom_pairs_checked: usize,
    pub failures: Vec<String>,
}

/// Round trips of both graph functor pairs and hom-set preservation over all
/// pairs of structures with at most `n_max` vertices.
pub fn functor_sweep(n_max: usize) -> Result<FunctorReport> {
    let graphs = upto(n_max, generate::graphs);
    let digraphs = upto(n_max, generate::digraphs);
    let tournaments = upto(n_max, generate::tournaments);
    let mut failures = Vec::new();
    let mut round_trips = 0;
    for g in &graphs {
        let d = graph_digraph_iso(DigraphDirection::ToDigraph, g)?;
        let t = graph_tournament_iso(TournamentDirection::ToTournament, g)?;
        if !d.is_valid() || graph_digraph_iso(DigraphDirection::ToGraph, &d)? != *g {
            failures.push(format!("digraph round trip of {}", doc(g)));
        }
        if !t.is_valid() || graph_tournament_iso(TournamentDirection::ToGraph, &t)? != *g {
            failures.push(format!("tournament round trip of {}", doc(g)));
        }
        round_trips += 2;
    }
    for d in &digraphs {
        let g = graph_digraph_iso(DigraphDirection::ToGraph, d)?;
        if !g.is_valid() || graph_digraph_iso(DigraphDirection::ToDigraph, &g)? != *d {
            failures.push(format!("graph round trip of {}", doc(d)));
        }
        round_trips += 1;
    }
    for t in &tournaments {
        let g = graph_tournament_iso(TournamentDirection::ToGraph, t)?;
        if !g.is_valid() || graph_tournament_iso(TournamentDirection::ToTournament, &g)? != *t {
            failures.push(format!("graph round trip of {}", doc(t)));
        }
        round_trips += 1;
    }
    let images: Vec<(OrderedStructure, OrderedStructure)> = graphs
        .iter()
        .map(|g| {
            Ok((
                graph_digraph_iso(DigraphDirection::ToDigraph, g)?,
                graph_tournament_iso(TournamentDirection::ToTournament, g)?,
            ))
        })
        .collect::<Result<_>>()?;
    let per_source: Vec<Result<Vec<String>>> = (0..graphs.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for j in 0..graphs.len() {
                let base = embedding_maps(&graphs[i], &graphs[j])?;
                if embedding_maps(&images[i].0, &images[j].0)? != base {
                    bad.push(format!("digraph hom-set {} -> {}", doc(&graphs[i]), doc(&graphs[j])));
                }
                if embedding_maps(&images[i].1, &images[j].1)? != base {
                    bad.push(format!("tournament hom-set {} -> {}", doc(&graphs[i]), doc(&graphs[j])));
                }
            }
            Ok(bad)
        })
        .collect();
    for bad in per_source {
        failures.extend(bad?);
    }
    Ok(FunctorReport {
        graphs: graphs.len(),
        digraphs: digraphs.len(),
        tournaments: tournaments.len(),
        round_trips_checked: round_trips,
        hom_pairs_checked: graphs.len() * graphs.len(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingReport {
    pub tuples_checked: usize,
    pub type_pairs_checked: usize,
    pub star_dagger_checked: usize,
    pub dagger_star_checked: usize,
    pub embedding_pairs_checked: usize,
    pub irreducible_checked: usize,
    pub failures: Vec<String>,
}

fn tuples_over(size: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..size).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Type/matrix round trips for tuples up to length `r_max` over chains up
/// to `chain_max`, and the relational encoding for one binary relation.
pub fn encoding_sweep(r_max: usize, chain_max: usize, rel_n_max: usize, hyper_n_max: usize) -> Result<EncodingReport> {
    let mut failures = Vec::new();
    let mut tuples_checked = 0;
    for size in 1..=chain_max {
        for len in 1..=r_max {
            for t in tuples_over(size, len) {
                tuples_checked += 1;
                if tup(&tp(&t)?, &mat(&t)?)? != t {
                    failures.push(format!("tup(tp, mat) of {t:?}"));
                }
            }
        }
    }
    let mut type_pairs = 0;
    for r in 1..=r_max {
        for sigma in enumerate_total_quasiorders(r, r_max.max(DEFAULT_QUASIORDER_CAP))? {
            for size in 1..=chain_max {
                crate::category::for_each_subset(size, sigma.classes(), &mut |mu| {
                    type_pairs += 1;
                    let ok = tup(&sigma, mu)
                        .and_then(|t| Ok(tp(&t)? == sigma && mat(&t)? == mu))
                        .unwrap_or(false);
                    if !ok {
                        failures.push(format!("tp/mat of tup({}, {mu:?})", sigma.code()));
                    }
                });
            }
        }
    }
    let structures = upto(rel_n_max, generate::binary_structures);
    let encoded: Vec<EncodedHypergraph> =
        structures.par_iter().map(|a| dagger(a, DEFAULT_QUASIORDER_CAP)).collect::<Result<_>>()?;
    let mut irreducible_checked = 0;
    for (a, h) in structures.iter().zip(&encoded) {
        if star(h)? != *a {
            failures.push(format!("star(dagger) of {}", doc(a)));
        }
        if is_irreducible(a) {
            irreducible_checked += 1;
            if !is_irreducible(&h.hypergraph) {
                failures.push(format!("dagger loses irreducibility of {}", doc(a)));
            }
        }
    }
    let signature = EncodingSignature::for_arities(&[2], DEFAULT_QUASIORDER_CAP)?;
    let mut dagger_star = 0;
    for n in 0..=hyper_n_max {
        for hypergraph in generate::hypergraphs(n, &signature.arities()) {
            dagger_star += 1;
            let b = EncodedHypergraph { signature: signature.clone(), hypergraph };
            if dagger(&star(&b)?, DEFAULT_QUASIORDER_CAP)? != b {
                failures.push(format!("dagger(star) of {}", doc(&b.hypergraph)));
            }
        }
    }
    let per_source: Vec<Result<Vec<String>>> = (0..structures.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for j in 0..structures.len() {
                let plain = embedding_maps(&structures[i], &structures[j])?;
                let coded = embedding_maps(&encoded[i].hypergraph, &encoded[j].hypergraph)?;
                if plain != coded {
                    bad.push(format!("embeddings {} -> {}", doc(&structures[i]), doc(&structures[j])));
                }
            }
            Ok(bad)
        })
        .collect();
    for bad in per_source {
        failures.extend(bad?);
    }
    Ok(EncodingReport {
        tuples_checked,
        type_pairs_checked: type_pairs,
        star_dagger_checked: structures.len(),
        dagger_star_checked: dagger_star,
        embedding_pairs_checked: structures.len() * structures.len(),
        irreducible_checked,
        failures,
    })
}

/// Erdős–Rado canonization numbers for each `m`.
pub fn erc_sweep(k: usize, ms: &[usize], n_max: usize, budget: u64) -> Result<Vec<ErcReport>> {
    ms.iter().map(|&m| erc_search(k, m, n_max, budget)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpaScaleReport {
    pub scale: Vec<Rational>,
    pub spaces: usize,
    pub f_obj_invalid: usize,
    pub posets: usize,
    pub g_obj_invalid: usize,
    pub cpa1_checked: usize,
    pub cpa1_failures: usize,
    pub phi_failures: usize,
    pub cpa2_checked: usize,
    pub cpa2_failures: usize,
    pub transfer_instances: usize,
    pub transfer_colorings: usize,
    pub transfer_witnesses: usize,
    pub transfer_invalid: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpaReport {
    pub scales: Vec<CpaScaleReport>,
}

/// Limits of the pre-adjunction sweep.
#[derive(Clone, Copy, Debug)]
pub struct CpaLimits {
    pub max_space: usize,
    pub max_poset: usize,
    /// Transfer instances are kept when hom(E, G(C)) has at most this many
    /// elements.
    pub max_transfer_hom: usize,
}

impl Default for CpaLimits {
    fn default() -> Self {
        CpaLimits { max_space: 2, max_poset: 6, max_transfer_hom: 7 }
    }
}

#[derive(Default)]
struct Tally {
    cpa1_checked: usize,
    cpa1_failures: usize,
    phi_failures: usize,
    transfer_instances: usize,
    transfer_colorings: usize,
    transfer_witnesses: usize,
    transfer_invalid: usize,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.cpa1_checked += other.cpa1_checked;
        self.cpa1_failures += other.cpa1_failures;
        self.phi_failures += other.phi_failures;
        self.transfer_instances += other.transfer_instances;
        self.transfer_colorings += other.transfer_colorings;
        self.transfer_witnesses += other.transfer_witnesses;
        self.transfer_invalid += other.transfer_invalid;
        self.failures.extend(other.failures);
    }
}

fn cpa_scale(met: &MetPos, limits: CpaLimits) -> Result<CpaScaleReport> {
    let scale = met.scale.values().to_vec();
    let spaces: Vec<Arc<OrderedStructure>> =
        upto(limits.max_space, |n| generate::metric_spaces(n, &scale)).into_iter().map(Arc::new).collect();
    let mut report = CpaScaleReport { scale: scale.clone(), spaces: spaces.len(), ..Default::default() };
    let mut f_objs = Vec::new();
    for m in &spaces {
        let p = met.f_obj(m)?;
        if !p.is_valid() {
            report.f_obj_invalid += 1;
            report.failures.push(format!("f_obj of {} is not a poset", doc(m)));
        }
        f_objs.push(Arc::new(p));
    }
    let max_poset = limits.max_poset.max(f_objs.iter().map(|p| p.n()).max().unwrap_or(0));
    let posets: Vec<Arc<OrderedStructure>> =
        upto(max_poset.min(limits.max_poset), generate::posets).into_iter().map(Arc::new).collect();
    report.posets = posets.len();
    let g_objs: Vec<Option<Arc<OrderedStructure>>> = posets
        .par_iter()
        .map(|p| match met.g_obj(p) {
            Ok(g) => Ok(Some(Arc::new(g))),
            Err(CoreError::Inconsistency(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    for (p, g) in posets.iter().zip(&g_objs) {
        if g.is_none() {
            report.g_obj_invalid += 1;
            report.failures.push(format!("g_obj of {} is not a metric space", doc(p)));
        }
    }

    // CPA1: for f: M' -> M and u: F(M) -> P
    let tallies: Vec<Result<Tally>> = (0..spaces.len())
        .into_par_iter()
        .map(|mi| {
            let mut t = Tally::default();
            let (m, fm) = (&spaces[mi], &f_objs[mi]);
            for (p, g) in posets.iter().zip(&g_objs) {
                let Some(g) = g else { continue };
                let hom_u = HomSet::new(fm.clone(), p.clone())?;
                if hom_u.is_empty() {
                    continue;
                }
                for u in hom_u.embeddings() {
                    if met.phi(m, &u, g).is_err() {
                        t.phi_failures += 1;
                        t.failures.push(format!("Φ(u) for u = {:?}: {} -> {}", u.map(), doc(fm), doc(p)));
                        continue;
                    }
                    for (msi, ms) in spaces.iter().enumerate() {
                        let hom_f = HomSet::new(ms.clone(), m.clone())?;
                        for f in hom_f.maps() {
                            t.cpa1_checked += 1;
                            let lhs = crate::category::compose_maps(f, &met.phi_map(m.n(), p.n(), u.map()));
                            let ff = met.f_mor_map(ms.n(), m.n(), f);
                            let uff = crate::category::compose_maps(&ff, u.map());
                            let rhs = met.phi_map(ms.n(), p.n(), &uff);
                            let ff_ok = crate::category::is_embedding(&f_objs[msi], fm, &ff);
                            if lhs != rhs || !ff_ok {
                                t.cpa1_failures += 1;
                                t.failures.push(format!("CPA1 at f = {f:?}, u = {:?}", u.map()));
                            }
                        }
                    }
                }
            }
            Ok(t)
        })
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total.add(t?);
    }

    // CPA2: for positions P of F(M') and f, g: M' -> M
    for (msi, ms) in spaces.iter().enumerate() {
        for m in &spaces {
            let hom = HomSet::new(ms.clone(), m.clone())?;
            let size = f_objs[msi].n();
            for mask in 0u64..1 << size {
                let positions: Vec<usize> = (0..size).filter(|b| mask >> b & 1 == 1).collect();
                report.cpa2_checked += 1;
                if !cpa2_check(met, &hom, &positions) {
                    report.cpa2_failures += 1;
                    report.failures.push(format!("CPA2 at positions {positions:?}, {} -> {}", doc(ms), doc(m)));
                }
            }
        }
    }

    // witness transfer from posets to metric spaces
    let mut jobs = Vec::new();
    for (ei, e) in spaces.iter().enumerate() {
        for (di, d) in spaces.iter().enumerate() {
            if embedding_maps(e, d)?.is_empty() {
                continue;
            }
            for (ci, c) in posets.iter().enumerate() {
                if g_objs[ci].is_some() && c.n() >= f_objs[di].n() {
                    jobs.push((ei, di, ci));
                }
            }
        }
    }
    let tallies: Vec<Result<Tally>> = jobs
        .par_iter()
        .map(|&(ei, di, ci)| {
            let mut t = Tally::default();
            let g = g_objs[ci].as_ref().unwrap();
            if HomSet::new(spaces[ei].clone(), g.clone())?.len() > limits.max_transfer_hom {
                return Ok(t);
            }
            let inst = match CpaInstance::new(
                met.clone(),
                spaces[ei].as_ref().clone(),
                spaces[di].as_ref().clone(),
                posets[ci].as_ref().clone(),
            ) {
                Ok(inst) => inst,
                Err(CoreError::Inconsistency(msg)) => {
                    t.phi_failures += 1;
                    t.failures.push(msg);
                    return Ok(t);
                }
                Err(CoreError::EmptyHomSet(_)) => return Ok(t),
                Err(e) => return Err(e),
            };
            t.transfer_instances += 1;
            for chi in enumerate_colorings(inst.hom_e_gc.len(), u64::MAX) {
                let chi = chi?;
                t.transfer_colorings += 1;
                match inst.transfer_witness(&chi) {
                    Ok(Some(tr)) => {
                        t.transfer_witnesses += 1;
                        if !tr.valid {
                            t.transfer_invalid += 1;
                            t.failures.push(format!("transferred witness invalid for {:?}", chi.colors()));
                        }
                    }
                    Ok(None) => {}
                    Err(CoreError::Inconsistency(msg)) => {
                        t.phi_failures += 1;
                        t.failures.push(msg);
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(t)
        })
        .collect();
    for t in tallies {
        total.add(t?);
    }
    report.cpa1_checked = total.cpa1_checked;
    report.cpa1_failures = total.cpa1_failures;
    report.phi_failures = total.phi_failures;
    report.transfer_instances = total.transfer_instances;
    report.transfer_colorings = total.transfer_colorings;
    report.transfer_witnesses = total.transfer_witnesses;
    report.transfer_invalid = total.transfer_invalid;
    report.failures.extend(total.failures);
    Ok(report)
}

/// CPA1, CPA2, the object constructions and witness transfer for each scale.
pub fn cpa_sweep(scales: &[TightSet], limits: CpaLimits) -> Result<CpaReport> {
    let scales = scales.iter().map(|s| cpa_scale(&MetPos::new(s.clone()), limits)).collect::<Result<_>>()?;
    Ok(CpaReport { scales })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureFailure {
    pub a: OrderedStructure,
    pub b: OrderedStructure,
    pub c: OrderedStructure,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureTransferReport {
    pub instances: usize,
    pub closures_ok: usize,
    pub closure_failures: usize,
    pub first_closure_failure: Option<ClosureFailure>,
    pub non_commuting: usize,
    pub colorings: usize,
    pub overlaps: usize,
    pub witnesses_found: usize,
    pub transfers_valid: usize,
    pub transfers_invalid: usize,
    pub failures: Vec<String>,
}

struct InstanceResult {
    closure: std::result::Result<(), String>,
    non_commuting: usize,
    colorings: usize,
    overlaps: usize,
    witnesses_found: usize,
    transfers_valid: usize,
    transfers_invalid: usize,
    failures: Vec<String>,
}

fn closure_transfer_instance(a: &OrderedStructure, b: &OrderedStructure, c: &OrderedStructure) -> Result<InstanceResult> {
    let mut r = InstanceResult {
        closure: Ok(()),
        non_commuting: 0,
        colorings: 0,
        overlaps: 0,
        witnesses_found: 0,
        transfers_valid: 0,
        transfers_invalid: 0,
        failures: Vec::new(),
    };
    let t = match PosTransfer::new(a.clone(), b.clone(), c.clone()) {
        Ok(t) => t,
        Err(e @ (CoreError::NotAnEmbedding(_) | CoreError::Inconsistency(_))) => {
            r.closure = Err(e.to_string());
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    if !check_cocone(&t.diagram, &t.pos)? {
        r.non_commuting += 1;
        r.failures.push(format!("closed cocone does not commute: {} {} {}", doc(a), doc(b), doc(c)));
    }
    for chi in enumerate_colorings(t.hom_ad.len(), u64::MAX) {
        let chi: Coloring = chi?;
        r.colorings += 1;
        match t.run(&chi) {
            Ok(out) => {
                if let Some((_, _, ok)) = out.witnesses {
                    r.witnesses_found += 1;
                    if ok {
                        r.transfers_valid += 1;
                    } else {
                        r.transfers_invalid += 1;
                        r.failures.push(format!("transferred witness invalid for {:?}", chi.colors()));
                    }
                }
            }
            Err(CoreError::Inconsistency(msg)) => {
                r.overlaps += 1;
                r.failures.push(msg);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(r)
}

/// Closure of digraph cocones to poset cocones and the transfer of colorings
/// and witnesses, over all posets A, B and digraphs C in range.
pub fn closure_transfer_sweep(a_max: usize, b_max: usize, c_max: usize) -> Result<ClosureTransferReport> {
    let a_list = upto(a_max, generate::posets);
    let b_list = upto(b_max, generate::posets);
    let c_list = upto(c_max, generate::digraphs);
    let mut jobs = Vec::new();
    for a in &a_list {
        for b in &b_list {
            if embedding_maps(a, b)?.is_empty() {
                continue;
            }
            for c in &c_list {
                jobs.push((a, b, c));
            }
        }
    }
    let results: Vec<Result<InstanceResult>> =
        jobs.par_iter().map(|&(a, b, c)| closure_transfer_instance(a, b, c)).collect();
    let mut report = ClosureTransferReport { instances: jobs.len(), ..Default::default() };
    for (&(a, b, c), r) in jobs.iter().zip(results) {
        let r = r?;
        match r.closure {
            Ok(()) => report.closures_ok += 1,
            Err(reason) => {
                report.closure_failures += 1;
                if report.first_closure_failure.is_none() {
                    report.first_closure_failure =
                        Some(ClosureFailure { a: a.clone(), b: b.clone(), c: c.clone(), reason });
                }
            }
        }
        report.non_commuting += r.non_commuting;
        report.colorings += r.colorings;
        report.overlaps += r.overlaps;
        report.witnesses_found += r.witnesses_found;
        report.transfers_valid += r.transfers_valid;
        report.transfers_invalid += r.transfers_invalid;
        report.failures.extend(r.failures);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightRow {
    pub values: Vec<Rational>,
    /// `None` when the values are not a valid scale (no 0).
    pub tight: Option<bool>,
    pub extension: Option<Vec<Rational>>,
    pub extension_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub rows: Vec<TightRow>,
}

/// `is_tight` and `tight_extension` on every subset of `pool` with at most
/// `max_size` elements.
pub fn tightness_sweep(pool: &[Rational], max_size: usize, cap: u64) -> Result<TightnessReport> {
    let pool: Vec<Rational> = pool.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut subsets = Vec::new();
    for size in 0..=max_size.min(pool.len()) {
        crate::category::for_each_subset(pool.len(), size, &mut |ix| {
            subsets.push(ix.iter().map(|&i| pool[i]).collect::<Vec<_>>())
        });
    }
    let rows = subsets
        .into_par_iter()
        .map(|values| {
            let tight = is_tight(&values).ok();
            let (extension, extension_error) = if values.first() == Some(&Rational::ZERO) && values.len() >= 2 {
                match tight_extension(&values, cap) {
                    Ok(t) => (t.map(|t| t.values().to_vec()), None),
                    Err(e) => (None, Some(e.to_string())),
                }
            } else {
                (None, None)
            };
            TightRow { values, tight, extension, extension_error }
        })
        .collect();
    Ok(TightnessReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_functor_sweep() {
        let r = functor_sweep(3).unwrap();
        assert_eq!(r.graphs, 1 + 1 + 2 + 8);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
    }

    #[test]
    fn small_encoding_sweep() {
        let r = encoding_sweep(3, 3, 2, 1).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert_eq!(r.star_dagger_checked, 1 + 2 + 16);
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let one = with_workers(1, || closure_transfer_sweep(1, 2, 3)).unwrap().unwrap();
        let four = with_workers(4, || closure_transfer_sweep(1, 2, 3)).unwrap().unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn small_tightness_sweep() {
        let pool: Vec<Rational> = (0..4).map(Rational::int).collect();
        let r = tightness_sweep(&pool, 3, 10_000).unwrap();
        assert_eq!(r.rows.len(), 1 + 4 + 6 + 4);
        let row = r.rows.iter().find(|row| row.values == [0, 1, 3].map(Rational::int)).unwrap();
        assert_eq!(row.tight, Some(false));
        assert_eq!(row.extension.as_deref(), Some(&[0, 1, 2, 3].map(Rational::int)[..]));
    }
}
