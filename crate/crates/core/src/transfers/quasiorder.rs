use std::collections::BTreeSet;
use std::fmt;

use crate::category::RgsIter;
use crate::error::{CoreError, Result};

/// Arity cap for quasiorder enumeration (Fubini numbers grow fast).
pub const DEFAULT_QUASIORDER_CAP: usize = 4;

/// A total quasiorder on the positions `1..=r`, stored as the rank of each
/// position's equivalence class in the induced linear order on classes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalQuasiorder {
    // rank[p] for 0-based position p; ranks are exactly 0..classes
    rank: Vec<usize>,
}

impl TotalQuasiorder {
    /// `rank` must be a surjection onto `0..k` for some `k`.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        if rank.is_empty() {
            return Err(CoreError::EmptyTuple);
        }
        let used: BTreeSet<usize> = rank.iter().copied().collect();
        if used.iter().copied().ne(0..used.len()) {
            return Err(CoreError::Malformed(format!("ranks {rank:?} skip a class")));
        }
        Ok(TotalQuasiorder { rank })
    }

    /// Builds from 1-indexed pairs, checking reflexivity, transitivity and
    /// totality.
    pub fn from_pairs(r: usize, pairs: &BTreeSet<(usize, usize)>) -> Result<Self> {
        if r == 0 {
            return Err(CoreError::EmptyTuple);
        }
        let has = |i: usize, j: usize| pairs.contains(&(i, j));
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i == 0 || j == 0 || i > r || j > r) {
            return Err(CoreError::Malformed(format!("pair ({i},{j}) outside 1..={r}")));
        }
        for i in 1..=r {
            if !has(i, i) {
                return Err(CoreError::Malformed(format!("not reflexive at {i}")));
            }
            for j in 1..=r {
                if !has(i, j) && !has(j, i) {
                    return Err(CoreError::Malformed(format!("{i} and {j} are incomparable")));
                }
                for k in 1..=r {
                    if has(i, j) && has(j, k) && !has(i, k) {
                        return Err(CoreError::Malformed(format!("not transitive at ({i},{j},{k})")));
                    }
                }
            }
        }
        // the number of positions weakly below p determines p's class
        let below: Vec<usize> = (1..=r).map(|p| (1..=r).filter(|&q| has(q, p)).count()).collect();
        let levels: BTreeSet<usize> = below.iter().copied().collect();
        let levels: Vec<usize> = levels.into_iter().collect();
        let rank = below.iter().map(|b| levels.binary_search(b).unwrap()).collect();
        Ok(TotalQuasiorder { rank })
    }

    pub fn arity(&self) -> usize {
        self.rank.len()
    }

    /// Number of equivalence classes.
    pub fn classes(&self) -> usize {
        self.rank.iter().max().map_or(0, |&m| m + 1)
    }

    /// 0-based rank of each position's class.
    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Classes of 1-indexed positions, listed from the lowest class up.
    pub fn class_list(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes()];
        for (p, &c) in self.rank.iter().enumerate() {
            out[c].push(p + 1);
        }
        out
    }

    /// The relation as 1-indexed pairs `(i, j)` with `i` weakly below `j`.
    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        let r = self.arity();
        let mut out = BTreeSet::new();
        for i in 0..r {
            for j in 0..r {
                if self.rank[i] <= self.rank[j] {
                    out.insert((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (1..=self.arity()).contains(&i) && (1..=self.arity()).contains(&j) && self.rank[i - 1] <= self.rank[j - 1]
    }

    /// Restricted growth string of the class partition, then the class ids
    /// from the lowest class up, e.g. `"010/10"`.
    pub fn code(&self) -> String {
        let mut class_id = vec![usize::MAX; self.classes()];
        let mut next = 0;
        let mut rgs = String::new();
        for &c in &self.rank {
            if class_id[c] == usize::MAX {
                class_id[c] = next;
                next += 1;
            }
            rgs.push(digit(class_id[c]));
        }
        let order: String = class_id.iter().map(|&id| digit(id)).collect();
        format!("{rgs}/{order}")
    }

    pub fn from_code(code: &str) -> Result<Self> {
        let bad = || CoreError::Malformed(format!("bad quasiorder code {code:?}"));
        let (rgs, order) = code.split_once('/').ok_or_else(bad)?;
        let rgs: Vec<usize> = rgs.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
        let order: Vec<usize> =
            order.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
        if crate::category::normalize_labels(&rgs) != rgs {
            return Err(bad());
        }
        let classes = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted.into_iter().ne(0..classes) {
            return Err(bad());
        }
        let mut rank_of_class = vec![0; classes];
        for (rank, &id) in order.iter().enumerate() {
            rank_of_class[id] = rank;
        }
        Self::from_ranks(rgs.iter().map(|&id| rank_of_class[id]).collect())
    }

    /// Sort key matching the enumeration order.
    fn key(&self) -> (Vec<usize>, Vec<usize>) {
        let code = self.code();
        let (rgs, order) = code.split_once('/').unwrap();
        let d = |s: &str| s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        (d(rgs), d(order))
    }
}

fn digit(d: usize) -> char {
    char::from_digit(d as u32, 10).expect("quasiorder arity above 9")
}

impl fmt::Debug for TotalQuasiorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TotalQuasiorder({})", self.code())
    }
}

impl fmt::Display for TotalQuasiorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self
            .class_list()
            .into_iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join("≡"))
            .collect();
        f.write_str(&classes.join(" ⊏ "))
    }
}

/// The type of a tuple: `(i, j)` is in it iff `a_i <= a_j`.
pub fn tp(tuple: &[usize]) -> Result<TotalQuasiorder> {
    if tuple.is_empty() {
        return Err(CoreError::EmptyTuple);
    }
    let values = mat(tuple)?;
    let rank = tuple.iter().map(|v| values.binary_search(v).unwrap()).collect();
    Ok(TotalQuasiorder { rank })
}

/// The distinct entries of a tuple, increasing.
pub fn mat(tuple: &[usize]) -> Result<Vec<usize>> {
    if tuple.is_empty() {
        return Err(CoreError::EmptyTuple);
    }
    let set: BTreeSet<usize> = tuple.iter().copied().collect();
    Ok(set.into_iter().collect())
}

/// Rebuilds the tuple with type `sigma` whose entries are `mu`.
pub fn tup(sigma: &TotalQuasiorder, mu: &[usize]) -> Result<Vec<usize>> {
    if mu.len() != sigma.classes() {
        return Err(CoreError::SizeMismatch { expected: sigma.classes(), found: mu.len() });
    }
    if mu.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::NotIncreasing(mu.to_vec()));
    }
    Ok(sigma.rank.iter().map(|&c| mu[c]).collect())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// All total quasiorders on `1..=r`, ordered by class partition (as a
/// restricted growth string) and then by class order.
pub fn enumerate_total_quasiorders(r: usize, cap: usize) -> Result<Vec<TotalQuasiorder>> {
    if r > cap || r > 9 {
        return Err(CoreError::ArityCap { arity: r, cap: cap.min(9) });
    }
    if r == 0 {
        return Err(CoreError::EmptyTuple);
    }
    let mut out = Vec::new();
    for rgs in RgsIter::new(r) {
        let classes = rgs.iter().max().map_or(0, |&m| m + 1);
        for order in permutations(classes) {
            let mut rank_of_class = vec![0; classes];
            for (rank, &id) in order.iter().enumerate() {
                rank_of_class[id] = rank;
            }
            out.push(TotalQuasiorder { rank: rgs.iter().map(|&id| rank_of_class[id]).collect() });
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0].key() < w[1].key()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn type_of_5_3_5() {
        let sigma = tp(&[5, 3, 5]).unwrap();
        let expected: BTreeSet<(usize, usize)> =
            [(1, 1), (2, 2), (3, 3), (1, 3), (3, 1), (2, 1), (2, 3)].into();
        assert_eq!(sigma.pairs(), expected);
        assert_eq!(sigma.class_list(), vec![vec![2], vec![1, 3]]);
        assert_eq!(sigma.code(), "010/10");
        assert_eq!(mat(&[5, 3, 5]).unwrap(), vec![3, 5]);
        assert_eq!(tup(&sigma, &[3, 5]).unwrap(), vec![5, 3, 5]);
    }

    #[test]
    fn small_types() {
        assert_eq!(tp(&[4, 4]).unwrap().pairs(), [(1, 1), (1, 2), (2, 1), (2, 2)].into());
        assert_eq!(tp(&[1, 2]).unwrap().pairs(), [(1, 1), (2, 2), (1, 2)].into());
        assert_eq!(mat(&[7]).unwrap(), vec![7]);
        assert_eq!(mat(&[7, 7, 7]).unwrap(), vec![7]);
        assert_eq!(tup(&tp(&[0]).unwrap(), &[9]).unwrap(), vec![9]);
        assert_eq!(tup(&tp(&[0, 0]).unwrap(), &[9]).unwrap(), vec![9, 9]);
    }

    #[test]
    fn errors() {
        assert_eq!(tp(&[]), Err(CoreError::EmptyTuple));
        assert_eq!(mat(&[]), Err(CoreError::EmptyTuple));
        let sigma = tp(&[1, 2]).unwrap();
        assert!(matches!(tup(&sigma, &[1]), Err(CoreError::SizeMismatch { .. })));
        assert!(matches!(enumerate_total_quasiorders(5, 4), Err(CoreError::ArityCap { .. })));
    }

    /// Brute force: every binary relation on `1..=r`, filtered by the axioms.
    fn brute_force_count(r: usize) -> usize {
        let cells: Vec<(usize, usize)> = (1..=r).flat_map(|i| (1..=r).map(move |j| (i, j))).collect();
        (0u32..1 << cells.len())
            .filter(|mask| {
                let rel: BTreeSet<(usize, usize)> =
                    cells.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &c)| c).collect();
                TotalQuasiorder::from_pairs(r, &rel).is_ok()
            })
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        assert_eq!(brute_force_count(1), 1);
        assert_eq!(brute_force_count(2), 3);
        assert_eq!(brute_force_count(3), 13);
        for (r, expected) in [(1, 1), (2, 3), (3, 13), (4, 75)] {
            let all = enumerate_total_quasiorders(r, DEFAULT_QUASIORDER_CAP).unwrap();
            assert_eq!(all.len(), expected);
            let distinct: BTreeSet<_> = all.iter().map(TotalQuasiorder::pairs).collect();
            assert_eq!(distinct.len(), expected);
        }
    }

    #[test]
    fn code_round_trip() {
        for sigma in enumerate_total_quasiorders(4, 4).unwrap() {
            assert_eq!(TotalQuasiorder::from_code(&sigma.code()).unwrap(), sigma);
            assert_eq!(TotalQuasiorder::from_pairs(4, &sigma.pairs()).unwrap(), sigma);
        }
        assert!(TotalQuasiorder::from_code("10/0").is_err());
        assert!(TotalQuasiorder::from_code("01/00").is_err());
    }

    proptest! {
        #[test]
        fn tup_inverts_tp_and_mat(tuple in prop::collection::vec(0usize..6, 1..6)) {
            let sigma = tp(&tuple).unwrap();
            let mu = mat(&tuple).unwrap();
            prop_assert_eq!(mu.len(), sigma.classes());
            prop_assert_eq!(tup(&sigma, &mu).unwrap(), tuple);
        }
    }
}
