//! A pre-adjunction between metric spaces with distances in a tight scale S
//! and posets with a linear extension.
//!
//! With S = {0 = s_0 < … < s_k}, a metric space M becomes the poset on
//! M × {0, …, k} where (x, i) ⊑ (y, j) iff i ≤ j and d(x, y) ≤ s_j − s_i.
//! Point (x, i) has index i·|M| + x. A poset P becomes the metric space on
//! k-tuples over P, indexed in base |P| with the first coordinate most
//! significant.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::canonical::{is_canonical_witness, CanProblem, CanonicalWitness};
use crate::category::{compose, Coloring, Embedding, HomSet};
use crate::error::{CoreError, Result};
use crate::rational::Rational;
use crate::structures::{Kind, OrderedStructure};

/// Default cap on the number of points of a metric built from a poset.
pub const DEFAULT_MAX_POINTS: usize = 4096;

fn check_scale(values: &[Rational]) -> Result<()> {
    if values.first() != Some(&Rational::ZERO) {
        return Err(CoreError::Malformed(format!("scale must start at 0: {values:?}")));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::Malformed(format!("scale must be strictly increasing: {values:?}")));
    }
    Ok(())
}

/// `t_{i+j} <= t_i + t_j` for all `0 <= i <= j` with `i + j <= ℓ`.
pub fn is_tight(values: &[Rational]) -> Result<bool> {
    check_scale(values)?;
    let l = values.len() - 1;
    Ok((0..=l).all(|i| (i..=l - i).all(|j| values[i + j] <= values[i] + values[j])))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TightSet(Vec<Rational>);

impl TightSet {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if !is_tight(&values)? {
            return Err(CoreError::Invalid(format!("scale {values:?} is not tight")));
        }
        Ok(TightSet(values))
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Rational::int(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// k, the largest level index.
    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, r: Rational) -> bool {
        self.0.binary_search(&r).is_ok()
    }
}

impl<'de> Deserialize<'de> for TightSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<Rational>::deserialize(deserializer)?;
        TightSet::new(values).map_err(serde::de::Error::custom)
    }
}

/// Advances `c` to the next `c.len()`-combination of `0..n`.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A tight superset of `s` with the same smallest nonzero and largest
/// element, drawn from sums of elements of `s` not above `max(s)`. Supersets
/// are tried by increasing size; `cap` bounds the number tried.
pub fn tight_extension(s: &[Rational], cap: u64) -> Result<Option<TightSet>> {
    let s: BTreeSet<Rational> = s.iter().copied().collect();
    if !s.contains(&Rational::ZERO) || s.len() < 2 {
        return Err(CoreError::Malformed("need 0 and at least one positive value".into()));
    }
    if s.iter().any(|r| *r < Rational::ZERO) {
        return Err(CoreError::Malformed("values must be nonnegative".into()));
    }
    let max = *s.iter().next_back().unwrap();
    let mut closure: BTreeSet<Rational> = s.iter().copied().filter(Rational::is_positive).collect();
    loop {
        let sums: Vec<Rational> = closure
            .iter()
            .flat_map(|&a| closure.iter().map(move |&b| a + b))
            .filter(|&x| x <= max && !closure.contains(&x))
            .collect();
        if sums.is_empty() {
            break;
        }
        closure.extend(sums);
        if closure.len() as u64 > cap {
            return Err(CoreError::BudgetExceeded { budget: cap, reached: closure.len() as u64 });
        }
    }
    let extra: Vec<Rational> = closure.difference(&s).copied().collect();
    let mut tried = 0u64;
    for size in 0..=extra.len() {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            if tried > cap {
                return Err(CoreError::BudgetExceeded { budget: cap, reached: cap });
            }
            let mut t: Vec<Rational> = s.iter().copied().chain(c.iter().map(|&i| extra[i])).collect();
            t.sort_unstable();
            if is_tight(&t)? {
                return Ok(Some(TightSet(t)));
            }
            if !next_combination(&mut c, extra.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// The object and morphism maps of the pre-adjunction for one scale.
#[derive(Clone, Debug)]
pub struct MetPos {
    pub scale: TightSet,
    pub max_points: usize,
}

impl MetPos {
    pub fn new(scale: TightSet) -> Self {
        MetPos { scale, max_points: DEFAULT_MAX_POINTS }
    }

    pub fn k(&self) -> usize {
        self.scale.k()
    }

    fn s(&self, i: usize) -> Rational {
        self.scale.values()[i]
    }

    /// Index of point (x, i) in the poset built from an `m`-point space.
    pub fn level_index(m: usize, x: usize, i: usize) -> usize {
        i * m + x
    }

    pub fn f_obj(&self, m: &OrderedStructure) -> Result<OrderedStructure> {
        m.expect_kind(Kind::OrderedMetric)?;
        let spec = m.spectre()?;
        if let Some(r) = spec.iter().find(|&&r| !self.scale.contains(r)) {
            return Err(CoreError::Invalid(format!("distance {r} is not in the scale")));
        }
        let n = m.n();
        let k = self.k();
        let mut leq = Vec::new();
        for i in 0..=k {
            for j in i..=k {
                let gap = self.s(j) - self.s(i);
                for x in 0..n {
                    for y in 0..n {
                        if m.distance(x, y).unwrap() <= gap {
                            leq.push((Self::level_index(n, x, i), Self::level_index(n, y, j)));
                        }
                    }
                }
            }
        }
        Ok(OrderedStructure::poset(n * (k + 1), leq))
    }

    fn point_count(&self, p: usize) -> Result<usize> {
        let size = (p as u128).checked_pow(self.k() as u32).unwrap_or(u128::MAX);
        if size > self.max_points as u128 {
            return Err(CoreError::SizeCap { size, cap: self.max_points });
        }
        Ok(size as usize)
    }

    /// Coordinates of point `idx` of the metric built from a `p`-element poset.
    pub fn tuple_of(&self, p: usize, mut idx: usize) -> Vec<usize> {
        let k = self.k();
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        out
    }

    pub fn index_of(p: usize, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &a| acc * p + a)
    }

    /// The distance between two k-tuples over the poset `leq`.
    pub fn tuple_distance(&self, leq: &BTreeSet<(usize, usize)>, a: &[usize], b: &[usize]) -> Rational {
        let k = self.k();
        let shift = (0..k).find(|&p| {
            (0..k - p).all(|i| leq.contains(&(a[i], b[i + p])) && leq.contains(&(b[i], a[i + p])))
        });
        self.s(shift.unwrap_or(k))
    }

    /// Builds the metric space on k-tuples and checks the metric axioms.
    pub fn g_obj(&self, p: &OrderedStructure) -> Result<OrderedStructure> {
        p.expect_kind(Kind::PosetLe)?;
        let size = self.point_count(p.n())?;
        let leq = p.binary_relation().unwrap();
        let tuples: Vec<Vec<usize>> = (0..size).map(|i| self.tuple_of(p.n(), i)).collect();
        let d = tuples
            .iter()
            .map(|a| tuples.iter().map(|b| self.tuple_distance(leq, a, b)).collect())
            .collect();
        let g = OrderedStructure::metric(d);
        if let Some(v) = g.validate().violations.first() {
            return Err(CoreError::Inconsistency(format!("tuple metric fails {}: {}", v.axiom, v.detail)));
        }
        Ok(g)
    }

    /// The map x ↦ (u(x,0), …, u(x,k−1)) as indices into the tuple metric.
    pub fn phi_map(&self, m: usize, p: usize, u: &[usize]) -> Vec<usize> {
        let k = self.k();
        (0..m)
            .map(|x| (0..k).fold(0, |acc, i| acc * p + u[Self::level_index(m, x, i)]))
            .collect()
    }

    /// Φ(u) for `u: f_obj(m) -> P`, checked as an embedding into `g_p`.
    pub fn phi(&self, m: &Arc<OrderedStructure>, u: &Embedding, g_p: &Arc<OrderedStructure>) -> Result<Embedding> {
        if u.source().n() != m.n() * (self.k() + 1) {
            return Err(CoreError::EndpointMismatch);
        }
        let map = self.phi_map(m.n(), u.target().n(), u.map());
        Embedding::new(m.clone(), g_p.clone(), map.clone())
            .map_err(|_| CoreError::Inconsistency(format!("Φ(u) = {map:?} is not an embedding")))
    }

    /// (x, i) ↦ (f(x), i) for `f: M' -> M`.
    pub fn f_mor_map(&self, m_src: usize, m_dst: usize, f: &[usize]) -> Vec<usize> {
        (0..=self.k())
            .flat_map(|i| (0..m_src).map(move |x| Self::level_index(m_dst, f[x], i)))
            .collect()
    }

    pub fn f_mor(
        &self,
        f: &Embedding,
        f_src: &Arc<OrderedStructure>,
        f_dst: &Arc<OrderedStructure>,
    ) -> Result<Embedding> {
        let map = self.f_mor_map(f.source().n(), f.target().n(), f.map());
        Embedding::new(f_src.clone(), f_dst.clone(), map)
    }

    /// Φ(u)∘f = Φ(u∘F(f)) for `u: F(M) -> P` and `f: M' -> M`.
    pub fn cpa1_check(&self, u: &Embedding, f: &Embedding) -> Result<bool> {
        let fm = Arc::new(self.f_obj(f.target())?);
        let fm_src = Arc::new(self.f_obj(f.source())?);
        if u.source().as_ref() != fm.as_ref() {
            return Err(CoreError::EndpointMismatch);
        }
        let g_p = Arc::new(self.g_obj(u.target())?);
        let lhs = compose(f, &self.phi(f.target(), u, &g_p)?)?;
        let ff = self.f_mor(f, &fm_src, u.source())?;
        let rhs = self.phi(f.source(), &compose(&ff, u)?, &g_p)?;
        Ok(lhs == rhs)
    }
}

/// First coordinates of the points at `positions` in the poset built from an
/// `m`-point space.
pub fn cpa2_project(positions: &[usize], m: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = positions.iter().map(|&i| i % m.max(1)).collect();
    set.into_iter().collect()
}

/// Metric spaces E ⊆ D over a scale and a poset C, with the hom-sets needed
/// to transfer canonical witnesses from posets to metric spaces.
pub struct CpaInstance {
    pub met: MetPos,
    pub e: Arc<OrderedStructure>,
    pub d: Arc<OrderedStructure>,
    pub c: Arc<OrderedStructure>,
    pub g_c: Arc<OrderedStructure>,
    pub hom_ed: HomSet,
    pub hom_e_gc: HomSet,
    // position in hom_e_gc of Φ(u) for each u in hom(F(E), C)
    phi_index: Vec<usize>,
    pos: CanProblem,
}

#[derive(Clone, Debug)]
pub struct CpaTransfer {
    pub pos_witness: CanonicalWitness,
    pub witness: CanonicalWitness,
    pub valid: bool,
}

impl CpaInstance {
    pub fn new(met: MetPos, e: OrderedStructure, d: OrderedStructure, c: OrderedStructure) -> Result<Self> {
        let fe = Arc::new(met.f_obj(&e)?);
        let fd = Arc::new(met.f_obj(&d)?);
        let (e, d, c) = (Arc::new(e), Arc::new(d), Arc::new(c));
        let g_c = Arc::new(met.g_obj(&c)?);
        let hom_ed = HomSet::new(e.clone(), d.clone())?;
        let hom_e_gc = HomSet::new(e.clone(), g_c.clone())?;
        let pos = CanProblem::new(fe, fd, c.clone())?;
        let phi_index = pos
            .hom_ac
            .maps()
            .iter()
            .map(|u| {
                let map = met.phi_map(e.n(), c.n(), u);
                hom_e_gc
                    .position(&map)
                    .ok_or_else(|| CoreError::Inconsistency(format!("Φ(u) = {map:?} is not an embedding")))
            })
            .collect::<Result<_>>()?;
        Ok(CpaInstance { met, e, d, c, g_c, hom_ed, hom_e_gc, phi_index, pos })
    }

    /// χ′(u) = χ(Φ(u)) on hom(F(E), C).
    pub fn pull_back(&self, chi: &Coloring) -> Result<Coloring> {
        chi.check_len(self.hom_e_gc.len())?;
        Ok(Coloring::from_labels(&self.phi_index.iter().map(|&i| chi.color(i)).collect::<Vec<_>>()))
    }

    /// Searches a poset witness for χ′ and moves it to the metric side;
    /// `None` when χ′ has no witness.
    pub fn transfer_witness(&self, chi: &Coloring) -> Result<Option<CpaTransfer>> {
        let chi_prime = self.pull_back(chi)?;
        let Some(pos_witness) = self.pos.find_witness(&chi_prime)? else {
            return Ok(None);
        };
        let w = self.met.phi(&self.d, &pos_witness.w, &self.g_c)?;
        let positions = cpa2_project(&pos_witness.positions, self.e.n());
        let witness = CanonicalWitness { w, positions };
        let valid = is_canonical_witness(&self.hom_e_gc, chi, &witness, &self.hom_ed)?;
        Ok(Some(CpaTransfer { pos_witness, witness, valid }))
    }
}

/// Whether F(f) and F(g) agree on `positions` exactly when f and g agree on
/// the projection, for all f, g in hom(M', M).
pub fn cpa2_check(met: &MetPos, hom: &HomSet, positions: &[usize]) -> bool {
    let (m_src, m_dst) = (hom.source().n(), hom.target().n());
    let proj = cpa2_project(positions, m_src);
    let lifted: Vec<Vec<usize>> = hom.maps().iter().map(|f| met.f_mor_map(m_src, m_dst, f)).collect();
    hom.maps().iter().zip(&lifted).all(|(f, ff)| {
        hom.maps().iter().zip(&lifted).all(|(g, fg)| {
            let up = positions.iter().all(|&p| ff[p] == fg[p]);
            let down = proj.iter().all(|&x| f[x] == g[x]);
            up == down
        })
    })
}
