//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use canram::canonical::{erc_search, verify_can_arrow, CanVerdict, Outcome};
use canram::generate;
use canram::preadjunction::{MetPos, TightSet};
use canram::sweeps::{
    cpa_sweep, encoding_sweep, functor_sweep, closure_transfer_sweep, tightness_sweep, with_workers, CpaLimits,
};
use canram::{OrderedStructure, Rational};
use serde::Serialize;
use serde_json::Value;

const BUDGET: u64 = 1_000_000;

type Check = Result<(bool, String), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// One-worker reports kept for the determinism rerun.
#[derive(Default)]
struct Recorded(Vec<(&'static str, Value)>);

impl Recorded {
    fn keep<T: Serialize>(&mut self, name: &'static str, report: &T) -> Result<(), String> {
        self.0.push((name, serde_json::to_value(report).map_err(err)?));
        Ok(())
    }
}

fn increasing_maps(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(k, n, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Naive witness test for chains: colors of w∘f agree exactly when the
/// restrictions f|P agree, checked over every pair (f, g).
struct ChainOracle {
    hom_ab: Vec<Vec<usize>>,
    hom_bc: Vec<Vec<usize>>,
    index_ac: HashMap<Vec<usize>, usize>,
    a: usize,
}

impl ChainOracle {
    fn new(a: usize, b: usize, c: usize) -> Self {
        let index_ac = increasing_maps(a, c).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        ChainOracle { hom_ab: increasing_maps(a, b), hom_bc: increasing_maps(b, c), index_ac, a }
    }

    fn holds(&self, colors: &[usize], w: &[usize], p: &[usize]) -> bool {
        let color = |f: &[usize]| colors[self.index_ac[&f.iter().map(|&x| w[x]).collect::<Vec<_>>()]];
        let restrict = |f: &[usize]| p.iter().map(|&i| f[i]).collect::<Vec<_>>();
        for f in &self.hom_ab {
            for g in &self.hom_ab {
                if (color(f) == color(g)) != (restrict(f) == restrict(g)) {
                    return false;
                }
            }
        }
        true
    }

    fn any_witness(&self, colors: &[usize]) -> bool {
        let subsets: Vec<Vec<usize>> = (0..=self.a).flat_map(|s| increasing_maps(s, self.a)).collect();
        self.hom_bc.iter().any(|w| subsets.iter().any(|p| self.holds(colors, w, p)))
    }
}

fn chains(a: usize, b: usize, c: usize) -> [Arc<OrderedStructure>; 3] {
    [a, b, c].map(|n| Arc::new(OrderedStructure::chain(n)))
}

fn verify_chains(a: usize, b: usize, c: usize, collect: bool) -> Result<CanVerdict, String> {
    let [a, b, c] = chains(a, b, c);
    verify_can_arrow(&a, &b, &c, BUDGET, collect).map_err(err)
}

fn half_pool() -> Vec<Rational> {
    (0..=6).map(|i| Rational::new(i, 2)).collect()
}

fn cpa_scales() -> Result<Vec<TightSet>, String> {
    Ok(vec![TightSet::from_ints(&[0, 1]).map_err(err)?, TightSet::from_ints(&[0, 1, 2]).map_err(err)?])
}

fn criterion_1(rec: &mut Recorded) -> Check {
    let r = functor_sweep(4).map_err(err)?;
    rec.keep("functor", &r)?;
    let expected: usize = (0..=4).map(|n| 1usize << (n * (n.max(1) - 1) / 2)).sum();
    let on_four = generate::graphs(4).len();
    let ok = r.failures.is_empty()
        && on_four == 64
        && r.graphs == expected
        && r.digraphs == expected
        && r.tournaments == expected
        && r.round_trips_checked > 0
        && r.hom_pairs_checked == expected * expected;
    Ok((
        ok,
        format!(
            "{} graphs ({} on 4 vertices), {} round trips, {} hom pairs, {} failures",
            r.graphs,
            on_four,
            r.round_trips_checked,
            r.hom_pairs_checked,
            r.failures.len()
        ),
    ))
}

fn criterion_2(rec: &mut Recorded) -> Check {
    let r = encoding_sweep(4, 4, 3, 2).map_err(err)?;
    rec.keep("encoding", &r)?;
    let single_binary: usize = (0..=3u32).map(|n| 1usize << (n * n)).sum();
    let ok = r.failures.is_empty()
        && r.tuples_checked > 0
        && r.type_pairs_checked > 0
        && r.star_dagger_checked >= single_binary
        && r.dagger_star_checked > 0
        && r.embedding_pairs_checked > 0;
    Ok((
        ok,
        format!(
            "{} tuples, {} type pairs, {} star∘dagger, {} dagger∘star, {} embedding pairs, {} failures",
            r.tuples_checked,
            r.type_pairs_checked,
            r.star_dagger_checked,
            r.dagger_star_checked,
            r.embedding_pairs_checked,
            r.failures.len()
        ),
    ))
}

fn criterion_3(rec: &mut Recorded) -> Check {
    let expected = [(2, 2), (3, 5), (4, 10)];
    let mut found = Vec::new();
    let mut ok = true;
    let mut rechecked = 0usize;
    for (m, want) in expected {
        let report = erc_search(1, m, 10, BUDGET).map_err(err)?;
        rec.keep("erc", &report)?;
        found.push(report.n);
        if report.n != Some(want) {
            ok = false;
            continue;
        }
        let oracle = ChainOracle::new(1, m, want);
        let verdict = verify_chains(1, m, want, true)?;
        rec.keep("erc_witnesses", &verdict)?;
        let entries = verdict.witnesses.as_deref().unwrap_or_default();
        let bell = canram::bell(want) as usize;
        if verdict.outcome != Outcome::Holds || entries.len() != bell {
            ok = false;
        }
        for e in entries {
            rechecked += 1;
            if !oracle.holds(e.coloring.colors(), &e.witness.w.map, &e.witness.positions) {
                ok = false;
            }
        }
        if want > m {
            let below = verify_chains(1, m, want - 1, false)?;
            let Some(chi) = below.counterexample.as_ref() else {
                ok = false;
                continue;
            };
            if ChainOracle::new(1, m, want - 1).any_witness(chi.colors()) {
                ok = false;
            }
        }
    }
    let shown: Vec<String> = found.iter().map(|n| n.map_or("none".into(), |n| n.to_string())).collect();
    Ok((ok, format!("n = [{}], {} witnesses re-tested by the naive oracle", shown.join(", "), rechecked)))
}

fn criterion_4(rec: &mut Recorded) -> Check {
    let four = verify_chains(1, 3, 4, false)?;
    let five = verify_chains(1, 3, 5, false)?;
    rec.keep("can_1_3_4", &four)?;
    rec.keep("can_1_3_5", &five)?;
    let mut sizes: Vec<usize> = four
        .counterexample
        .as_ref()
        .map(|c| c.classes().iter().map(Vec::len).collect())
        .unwrap_or_default();
    sizes.sort_unstable();
    let oracle_none = four.counterexample.as_ref().is_some_and(|c| !ChainOracle::new(1, 3, 4).any_witness(c.colors()));
    let ok = four.outcome == Outcome::Fails && sizes == [2, 2] && oracle_none && five.outcome == Outcome::Holds;
    Ok((
        ok,
        format!(
            "(1,3,4) {:?} with classes {:?}; (1,3,5) {:?} after {} colorings",
            four.outcome,
            four.counterexample.as_ref().map(|c| c.classes()),
            five.outcome,
            five.stats.colorings_examined
        ),
    ))
}

fn is_poset_le(s: &OrderedStructure) -> bool {
    let n = s.n();
    let Some(leq) = s.binary_relation() else { return false };
    (0..n).all(|x| leq.contains(&(x, x)))
        && leq.iter().all(|&(x, y)| x <= y && (x == y || !leq.contains(&(y, x))))
        && leq.iter().all(|&(x, y)| leq.iter().filter(|&&(z, _)| z == y).all(|&(_, w)| leq.contains(&(x, w))))
}

fn is_metric(s: &OrderedStructure) -> bool {
    let n = s.n();
    let d = |x, y| s.distance(x, y);
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (Some(dxy), Some(dyx)) = (d(x, y), d(y, x)) else { return false };
            let base = dxy == dyx && (dxy == Rational::ZERO) == (x == y) && dxy >= Rational::ZERO;
            base && (0..n).all(|z| match (d(x, z), d(z, y)) {
                (Some(a), Some(b)) => dxy <= a + b,
                _ => false,
            })
        })
    })
}

fn criterion_5(rec: &mut Recorded) -> Check {
    let scales = cpa_scales()?;
    let r = cpa_sweep(&scales, CpaLimits::default()).map_err(err)?;
    rec.keep("cpa", &r)?;
    let mut ok = r.scales.len() == scales.len();
    let mut oracle_checked = 0usize;
    let mut lines = Vec::new();
    for (s, row) in scales.iter().zip(&r.scales) {
        ok &= row.f_obj_invalid == 0
            && row.g_obj_invalid == 0
            && row.cpa1_failures == 0
            && row.phi_failures == 0
            && row.cpa2_failures == 0
            && row.transfer_invalid == 0
            && row.failures.is_empty()
            && row.cpa1_checked > 0
            && row.cpa2_checked > 0;
        let met = MetPos::new(s.clone());
        for n in 0..=2 {
            for m in generate::metric_spaces(n, s.values()) {
                let p = met.f_obj(&m).map_err(err)?;
                oracle_checked += 1;
                ok &= is_poset_le(&p) && p.n() == n * (s.k() + 1);
            }
        }
        for n in 0..=3 {
            for p in generate::posets(n) {
                let g = met.g_obj(&p).map_err(err)?;
                oracle_checked += 1;
                ok &= is_metric(&g);
            }
        }
        lines.push(format!(
            "S={:?}: cpa1 {} cpa2 {} transfers {}",
            s.values(),
            row.cpa1_checked,
            row.cpa2_checked,
            row.transfer_witnesses
        ));
    }
    Ok((ok, format!("{}; {} object images re-validated", lines.join("; "), oracle_checked)))
}

/// Confirms a closure failure without the library: legs are all digraph
/// embeddings of B into C, the relation of C is closed on the union of their
/// images, and some leg gains or loses a comparability.
fn closure_breaks(b: &OrderedStructure, c: &OrderedStructure) -> Option<Vec<usize>> {
    let leq_b = b.binary_relation()?;
    let rho = c.binary_relation()?;
    let rel_b = |i: usize, j: usize| leq_b.contains(&(i, j));
    let legs: Vec<Vec<usize>> = increasing_maps(b.n(), c.n())
        .into_iter()
        .filter(|m| (0..b.n()).all(|i| (0..b.n()).all(|j| rel_b(i, j) == rho.contains(&(m[i], m[j])))))
        .collect();
    let image: BTreeSet<usize> = legs.iter().flatten().copied().collect();
    let mut closed: BTreeSet<(usize, usize)> =
        rho.iter().copied().filter(|(x, y)| image.contains(x) && image.contains(y)).collect();
    loop {
        let extra: Vec<(usize, usize)> = closed
            .iter()
            .flat_map(|&(x, y)| closed.iter().filter(move |&&(z, _)| z == y).map(move |&(_, w)| (x, w)))
            .filter(|p| !closed.contains(p))
            .collect();
        if extra.is_empty() {
            break;
        }
        closed.extend(extra);
    }
    legs.into_iter()
        .find(|m| (0..b.n()).any(|i| (0..b.n()).any(|j| rel_b(i, j) != closed.contains(&(m[i], m[j])))))
}

fn criterion_6(rec: &mut Recorded) -> Check {
    let r = closure_transfer_sweep(2, 3, 4).map_err(err)?;
    rec.keep("closure_transfer", &r)?;
    let ok = r.closure_failures == 0
        && r.non_commuting == 0
        && r.overlaps == 0
        && r.transfers_invalid == 0
        && r.failures.is_empty()
        && r.closures_ok == r.instances;
    let mut detail = format!(
        "{} instances, {} closures ok, {} closure failures, {} non-commuting, {} overlaps, {}/{} transferred witnesses valid",
        r.instances,
        r.closures_ok,
        r.closure_failures,
        r.non_commuting,
        r.overlaps,
        r.transfers_valid,
        r.witnesses_found
    );
    if let Some(f) = &r.first_closure_failure {
        let confirmed = closure_breaks(&f.b, &f.c);
        detail.push_str(&format!(
            "; first failure A={} B={} C={} ({}); independent closure confirms broken leg {:?}",
            serde_json::to_string(&f.a).map_err(err)?,
            serde_json::to_string(&f.b).map_err(err)?,
            serde_json::to_string(&f.c).map_err(err)?,
            f.reason,
            confirmed
        ));
    }
    Ok((ok, detail))
}

fn oracle_tight(values: &[Rational]) -> Option<bool> {
    if values.first() != Some(&Rational::ZERO) || values.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    let l = values.len() - 1;
    let mut tight = true;
    for i in 0..=l {
        for j in 0..=l {
            if i + j <= l && values[i + j] > values[i] + values[j] {
                tight = false;
            }
        }
    }
    Some(tight)
}

fn criterion_7(rec: &mut Recorded) -> Check {
    let r = tightness_sweep(&half_pool(), 5, 100_000).map_err(err)?;
    rec.keep("tightness", &r)?;
    let mut ok = true;
    let (mut agreed, mut extended, mut absent, mut errors) = (0, 0, 0, 0);
    for row in &r.rows {
        if row.tight == oracle_tight(&row.values) {
            agreed += 1;
        } else {
            ok = false;
        }
        if row.extension_error.is_some() {
            errors += 1;
        }
        let Some(t) = &row.extension else {
            if row.values.first() == Some(&Rational::ZERO) && row.values.len() >= 2 && row.extension_error.is_none() {
                absent += 1;
            }
            continue;
        };
        extended += 1;
        let s = &row.values;
        let min_nonzero = |v: &[Rational]| v.iter().copied().filter(Rational::is_positive).min();
        let superset = s.iter().all(|x| t.contains(x));
        let post = superset
            && oracle_tight(t) == Some(true)
            && min_nonzero(t) == min_nonzero(s)
            && t.iter().max() == s.iter().max();
        ok &= post;
    }
    Ok((
        ok,
        format!(
            "{} subsets, {} agree with the oracle, {} extensions checked, {} absent, {} cap errors",
            r.rows.len(),
            agreed,
            extended,
            absent,
            errors
        ),
    ))
}

fn rerun_at(workers: usize) -> Result<Vec<(&'static str, Value)>, String> {
    let out = with_workers(workers, || -> Result<Recorded, String> {
        let mut rec = Recorded::default();
        rec.keep("functor", &functor_sweep(4).map_err(err)?)?;
        rec.keep("encoding", &encoding_sweep(4, 4, 3, 2).map_err(err)?)?;
        for (m, n) in [(2, 2), (3, 5), (4, 10)] {
            rec.keep("erc", &erc_search(1, m, 10, BUDGET).map_err(err)?)?;
            rec.keep("erc_witnesses", &verify_chains(1, m, n, true)?)?;
        }
        rec.keep("can_1_3_4", &verify_chains(1, 3, 4, false)?)?;
        rec.keep("can_1_3_5", &verify_chains(1, 3, 5, false)?)?;
        rec.keep("cpa", &cpa_sweep(&cpa_scales()?, CpaLimits::default()).map_err(err)?)?;
        rec.keep("closure_transfer", &closure_transfer_sweep(2, 3, 4).map_err(err)?)?;
        rec.keep("tightness", &tightness_sweep(&half_pool(), 5, 100_000).map_err(err)?)?;
        Ok(rec)
    })
    .map_err(err)??;
    Ok(out.0)
}

fn sorted(mut v: Vec<(&'static str, Value)>) -> Vec<(&'static str, Value)> {
    v.sort_by(|a, b| a.0.cmp(b.0).then_with(|| a.1.to_string().cmp(&b.1.to_string())));
    v
}

fn criterion_8(one: &Recorded) -> Check {
    let eight = sorted(rerun_at(8)?);
    let one = sorted(one.0.clone());
    let differing: Vec<&str> =
        one.iter().zip(&eight).filter(|(a, b)| a != b).map(|(a, _)| a.0).collect();
    let ok = one.len() == eight.len() && differing.is_empty();
    Ok((ok, format!("{} reports compared at 1 and 8 workers, differing: {:?}", one.len(), differing)))
}

fn print_line(id: usize, start: Instant, outcome: Check) -> bool {
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {id}: {detail} [{:.2}s]", start.elapsed().as_secs_f64());
    ok
}

fn main() -> ExitCode {
    let criteria: [fn(&mut Recorded) -> Check; 7] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7];
    let mut rec = Recorded::default();
    let mut all_ok = true;
    for (i, c) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = with_workers(1, || c(&mut rec)).map_err(err).and_then(|r| r);
        all_ok &= print_line(i + 1, start, outcome);
    }
    let start = Instant::now();
    all_ok &= print_line(8, start, criterion_8(&rec));
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
