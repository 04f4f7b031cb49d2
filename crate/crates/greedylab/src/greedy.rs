//! Greedy orderings, greedy and weak-greedy index sets, projections, and
//! weighted indicator vectors.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::SpaceSpec;
use crate::vector::{Coord, FiniteVector};
use crate::weights::WeightFunction;

/// Default cap on enumerated candidate sets.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// What qualifies the indices of a [`GreedySelection`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SelectionKind {
    /// The canonical decreasing ordering with ties broken by smaller index.
    Natural,
    /// Inside magnitudes dominate all outside magnitudes.
    Greedy,
    /// Inside magnitudes dominate `t` times the largest outside magnitude.
    TWeak { t: f64 },
    /// The `a`-th smallest inside dominates `t` times the `b`-th largest
    /// outside.
    AbtWeak { a: usize, b: usize, t: f64 },
}

/// An ordered greedy index set with the magnitudes that qualified it.
#[derive(Clone, Debug, Serialize)]
pub struct GreedySelection {
    pub ordered_indices: Vec<Coord>,
    pub values: Vec<f64>,
    pub order: usize,
    pub kind: SelectionKind,
}

impl GreedySelection {
    pub fn index_set(&self) -> BTreeSet<Coord> {
        self.ordered_indices.iter().copied().collect()
    }

    /// Packages a qualifying index set as a selection, ordered by decreasing
    /// magnitude with ties toward the smaller coordinate. The set must
    /// actually qualify for the claimed kind.
    pub fn from_qualifying_set(
        x: &FiniteVector,
        set: &BTreeSet<Coord>,
        kind: SelectionKind,
    ) -> Result<Self> {
        let qualifies = match kind {
            SelectionKind::Natural => set == &natural_greedy_set(x, set.len()),
            SelectionKind::Greedy => {
                enumerate_greedy_sets(x, set.len(), DEFAULT_ENUMERATION_CAP)?.contains(set)
            }
            SelectionKind::TWeak { t } => is_abt_weak_greedy(x, set, 1, 1, t)?,
            SelectionKind::AbtWeak { a, b, t } => is_abt_weak_greedy(x, set, a, b, t)?,
        };
        if !qualifies {
            return Err(Error::InvalidParam(format!(
                "index set does not qualify as {kind:?}"
            )));
        }
        let mut items: Vec<(Coord, f64)> = set.iter().map(|&c| (c, x.coeff(c).abs())).collect();
        items.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        Ok(GreedySelection {
            order: items.len(),
            ordered_indices: items.iter().map(|&(c, _)| c).collect(),
            values: items.iter().map(|&(_, v)| v).collect(),
            kind,
        })
    }
}

/// The natural greedy ordering of the support: magnitudes decreasing, ties
/// broken by the smaller coordinate.
pub fn greedy_ordering(x: &FiniteVector) -> GreedySelection {
    let mut items: Vec<(Coord, f64)> = x.entries().iter().map(|(&c, &v)| (c, v.abs())).collect();
    items.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    GreedySelection {
        order: items.len(),
        ordered_indices: items.iter().map(|&(c, _)| c).collect(),
        values: items.iter().map(|&(_, v)| v).collect(),
        kind: SelectionKind::Natural,
    }
}

/// The natural greedy set of order `m`. Past the support the ordering
/// continues over the ambient zeros, ties broken by the smaller coordinate,
/// so large orders pad with the smallest unused indices.
pub fn natural_greedy_set(x: &FiniteVector, m: usize) -> BTreeSet<Coord> {
    let mut ordered = greedy_ordering(x).ordered_indices;
    if ordered.len() < m {
        let used: BTreeSet<Coord> = ordered.iter().copied().collect();
        for c in x.universe() {
            if ordered.len() == m {
                break;
            }
            if !used.contains(&c) {
                ordered.push(c);
            }
        }
    }
    ordered.into_iter().take(m).collect()
}

/// The greedy sum of order `m`: the projection onto the natural greedy set.
pub fn greedy_sum(x: &FiniteVector, m: usize) -> FiniteVector {
    project(x, &natural_greedy_set(x, m))
}

/// Coordinate projection `P_A(x)`.
pub fn project(x: &FiniteVector, set: &BTreeSet<Coord>) -> FiniteVector {
    let entries = x.entries().iter().filter(|(c, _)| set.contains(c)).map(|(&c, &v)| (c, v));
    FiniteVector::from_entries(entries, x.ambient_dim()).expect("projection of a valid vector")
}

/// Partial sum projection `S_N(x)` onto the first `N` basis elements. Block
/// vectors need the space's layout to rank coordinates; see
/// [`partial_sum_in`].
pub fn partial_sum(x: &FiniteVector, n: u64) -> Result<FiniteVector> {
    if x.is_block_indexed() {
        return Err(Error::InvalidParam(
            "partial sums of block-addressed vectors need a space layout".into(),
        ));
    }
    let entries = x
        .entries()
        .iter()
        .filter(|(c, _)| c.flat_index().is_some_and(|i| i <= n))
        .map(|(&c, &v)| (c, v));
    FiniteVector::from_entries(entries, x.ambient_dim())
}

/// Partial sum projection aware of the space's block layout.
pub fn partial_sum_in(space: &SpaceSpec, x: &FiniteVector, n: u64) -> Result<FiniteVector> {
    if !x.is_block_indexed() {
        return partial_sum(x, n);
    }
    let SpaceSpec::Section4Block { blocks, .. } = space else {
        return Err(Error::InvalidParam("block-addressed vector in a flat space".into()));
    };
    // Rank a (block, offset) pair as the cumulative exact sizes before it
    // plus the offset; beyond the exact range the rank is not representable.
    let mut cumulative = Vec::new();
    let mut acc: u64 = 0;
    for b in blocks {
        cumulative.push(acc);
        match b.size.and_then(|s| acc.checked_add(s)) {
            Some(next) => acc = next,
            None => break,
        }
    }
    let mut keep = BTreeSet::new();
    for &c in x.entries().keys() {
        let k = c.block() as usize - 1;
        if k >= cumulative.len() {
            return Err(Error::BlockOverflow { block: c.block() });
        }
        let rank = cumulative[k]
            .checked_add(c.offset())
            .ok_or(Error::BlockOverflow { block: c.block() })?;
        if rank <= n {
            keep.insert(c);
        }
    }
    Ok(project(x, &keep))
}

/// The weighted, signed indicator over a sorted index set: entry
/// `eps_j * f(j)` at the `j`-th smallest element. `eps` defaults to all ones
/// and `f` to the constant 1, so the plain `1_A` is `indicator(A, None, None)`.
pub fn indicator(
    set: &BTreeSet<Coord>,
    eps: Option<&[f64]>,
    f: Option<&WeightFunction>,
) -> Result<FiniteVector> {
    if let Some(signs) = eps {
        if signs.len() != set.len() {
            return Err(Error::InvalidParam(format!(
                "sign sequence has {} entries for a set of size {}",
                signs.len(),
                set.len()
            )));
        }
        if signs.iter().any(|s| s.abs() != 1.0) {
            return Err(Error::InvalidParam("signs must be +1 or -1".into()));
        }
    }
    let mut ambient = 1u64;
    let mut entries = Vec::with_capacity(set.len());
    for (j, &c) in set.iter().enumerate() {
        let weight = f.map(|f| f.eval(j as u64 + 1)).unwrap_or(1.0);
        let sign = eps.map(|e| e[j]).unwrap_or(1.0);
        entries.push((c, sign * weight));
        if let Some(i) = c.flat_index() {
            ambient = ambient.max(i);
        }
    }
    FiniteVector::from_entries(entries, ambient)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    result
}

fn check_cap(n: usize, k: usize, cap: u128) -> Result<()> {
    let required = binomial(n, k);
    if required > cap {
        return Err(Error::EnumerationCap { cap, required });
    }
    Ok(())
}

/// All greedy sets of order `m`: sets whose inside magnitudes dominate every
/// outside magnitude over the ambient universe. There are several exactly
/// when the threshold magnitude is tied.
pub fn enumerate_greedy_sets(x: &FiniteVector, m: usize, cap: u128) -> Result<Vec<BTreeSet<Coord>>> {
    let universe = x.universe();
    if m == 0 {
        return Ok(vec![BTreeSet::new()]);
    }
    if m > universe.len() {
        return Err(Error::InvalidParam(format!(
            "order {m} exceeds the ambient universe of {} coordinates",
            universe.len()
        )));
    }
    let mut items: Vec<(Coord, f64)> = universe.iter().map(|&c| (c, x.coeff(c).abs())).collect();
    items.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let threshold = items[m - 1].1;
    let mandatory: Vec<Coord> = items.iter().filter(|&&(_, v)| v > threshold).map(|&(c, _)| c).collect();
    let ties: Vec<Coord> = items.iter().filter(|&&(_, v)| v == threshold).map(|&(c, _)| c).collect();
    let need = m - mandatory.len();
    check_cap(ties.len(), need, cap)?;
    let mut out = Vec::new();
    for extra in ties.iter().combinations(need) {
        let mut set: BTreeSet<Coord> = mandatory.iter().copied().collect();
        set.extend(extra.into_iter().copied());
        out.push(set);
    }
    Ok(out)
}

/// All `t`-weak greedy sets of order `m`: inside magnitudes dominate
/// `t * max(outside)`.
pub fn enumerate_weak_greedy_sets(
    x: &FiniteVector,
    m: usize,
    t: f64,
    cap: u128,
) -> Result<Vec<BTreeSet<Coord>>> {
    validate_t(t)?;
    let universe = x.universe();
    if m == 0 {
        return Ok(vec![BTreeSet::new()]);
    }
    if m > universe.len() {
        return Err(Error::InvalidParam(format!(
            "order {m} exceeds the ambient universe of {} coordinates",
            universe.len()
        )));
    }
    check_cap(universe.len(), m, cap)?;
    let mut out = Vec::new();
    for set in universe.iter().combinations(m) {
        let inside: BTreeSet<Coord> = set.into_iter().copied().collect();
        let min_inside = inside.iter().map(|&c| x.coeff(c).abs()).fold(f64::INFINITY, f64::min);
        let max_outside = universe
            .iter()
            .filter(|c| !inside.contains(c))
            .map(|&c| x.coeff(c).abs())
            .fold(0.0f64, f64::max);
        if min_inside >= t * max_outside {
            out.push(inside);
        }
    }
    Ok(out)
}

/// Whether `gamma` is an `(a, b, t)`-weak greedy set of `x`: the `a`-th
/// smallest inside magnitude dominates `t` times the `b`-th largest outside
/// magnitude, outside coordinates ranging over the ambient universe with
/// absent entries equal to 0.
pub fn is_abt_weak_greedy(
    x: &FiniteVector,
    gamma: &BTreeSet<Coord>,
    a: usize,
    b: usize,
    t: f64,
) -> Result<bool> {
    validate_t(t)?;
    if a == 0 || b == 0 {
        return Err(Error::InvalidParam("ranks a and b are 1-based".into()));
    }
    let m = gamma.len();
    if m < a {
        return Err(Error::OrderBelowInsideRank { m, a });
    }
    let mut inside: Vec<f64> = gamma.iter().map(|&c| x.coeff(c).abs()).collect();
    inside.sort_unstable_by(|p, q| p.partial_cmp(q).unwrap());
    let inside_a = inside[a - 1];

    let mut outside: Vec<f64> = x
        .universe()
        .iter()
        .filter(|c| !gamma.contains(c))
        .map(|&c| x.coeff(c).abs())
        .collect();
    outside.sort_unstable_by(|p, q| q.partial_cmp(p).unwrap());
    // Beyond the truncation the coefficients vanish, so a missing b-th
    // largest is 0.
    let outside_b = outside.get(b - 1).copied().unwrap_or(0.0);
    Ok(inside_a >= t * outside_b)
}

/// All `(a, b, t)`-weak greedy sets of order `m` over the ambient universe.
pub fn enumerate_abt_weak_greedy_sets(
    x: &FiniteVector,
    m: usize,
    a: usize,
    b: usize,
    t: f64,
    cap: u128,
) -> Result<Vec<BTreeSet<Coord>>> {
    validate_t(t)?;
    if m < a {
        return Err(Error::OrderBelowInsideRank { m, a });
    }
    let universe = x.universe();
    if m > universe.len() {
        return Err(Error::InvalidParam(format!(
            "order {m} exceeds the ambient universe of {} coordinates",
            universe.len()
        )));
    }
    check_cap(universe.len(), m, cap)?;
    let mut out = Vec::new();
    for set in universe.iter().combinations(m) {
        let gamma: BTreeSet<Coord> = set.into_iter().copied().collect();
        if is_abt_weak_greedy(x, &gamma, a, b, t)? {
            out.push(gamma);
        }
    }
    Ok(out)
}

fn validate_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParam(format!("weakness parameter t = {t} outside [0, 1]")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(pairs: &[(u64, f64)], dim: u64) -> FiniteVector {
        FiniteVector::flat(pairs, dim).unwrap()
    }

    fn set(indices: &[u64]) -> BTreeSet<Coord> {
        indices.iter().map(|&i| Coord::flat(i)).collect()
    }

    #[test]
    fn ordering_breaks_ties_by_smaller_index() {
        let x = fv(&[(2, 3.0), (1, 3.0), (5, 1.0)], 5);
        let rho = greedy_ordering(&x);
        assert_eq!(rho.ordered_indices, vec![Coord::flat(1), Coord::flat(2), Coord::flat(5)]);
    }

    #[test]
    fn ordering_of_zero_vector_is_empty() {
        assert_eq!(greedy_ordering(&FiniteVector::zero(4)).order, 0);
    }

    #[test]
    fn greedy_sum_examples() {
        let x = fv(&[(3, 5.0), (1, 2.0)], 4);
        assert_eq!(greedy_sum(&x, 1), fv(&[(3, 5.0)], 4));
        assert_eq!(greedy_sum(&x, 7), x);
        let tie = fv(&[(1, 1.0), (2, 1.0)], 2);
        assert_eq!(greedy_sum(&tie, 1), fv(&[(1, 1.0)], 2));
    }

    #[test]
    fn greedy_sets_enumerate_tie_choices() {
        let x = fv(&[(1, 1.0), (2, 1.0), (3, 1.0)], 3);
        let sets = enumerate_greedy_sets(&x, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(sets, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);

        let x = fv(&[(1, 2.0), (2, 1.0), (3, 1.0)], 3);
        let sets = enumerate_greedy_sets(&x, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(sets, vec![set(&[1, 2]), set(&[1, 3])]);

        let x = fv(&[(1, 3.0), (2, 2.0), (3, 1.0)], 3);
        let sets = enumerate_greedy_sets(&x, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(sets, vec![set(&[1, 2])]);
    }

    #[test]
    fn natural_set_is_among_greedy_sets_and_nested() {
        let x = fv(&[(1, 1.0), (2, 1.0), (4, 0.5)], 5);
        for m in 0..=3 {
            let natural = natural_greedy_set(&x, m);
            let all = enumerate_greedy_sets(&x, m, DEFAULT_ENUMERATION_CAP).unwrap();
            assert!(all.contains(&natural), "m = {m}");
            if m > 0 {
                let prev = natural_greedy_set(&x, m - 1);
                assert!(prev.is_subset(&natural));
            }
        }
    }

    #[test]
    fn weak_sets_contain_greedy_sets_and_match_at_t_one() {
        let x = fv(&[(1, 3.0), (2, 2.0), (3, 1.0), (4, 0.5)], 4);
        for m in 1..=3 {
            let greedy = enumerate_greedy_sets(&x, m, DEFAULT_ENUMERATION_CAP).unwrap();
            for t in [0.0, 0.4, 1.0] {
                let weak = enumerate_weak_greedy_sets(&x, m, t, DEFAULT_ENUMERATION_CAP).unwrap();
                for g in &greedy {
                    assert!(weak.contains(g));
                }
                if t == 1.0 {
                    assert_eq!(weak, greedy, "distinct magnitudes at t = 1");
                }
            }
        }
    }

    #[test]
    fn abt_with_unit_ranks_equals_t_weak() {
        let x = fv(&[(1, 3.0), (2, 1.0), (3, 0.25)], 4);
        for m in 1..=3 {
            for t in [0.2, 0.7, 1.0] {
                let weak = enumerate_weak_greedy_sets(&x, m, t, DEFAULT_ENUMERATION_CAP).unwrap();
                let abt = enumerate_abt_weak_greedy_sets(&x, m, 1, 1, t, DEFAULT_ENUMERATION_CAP).unwrap();
                assert_eq!(weak, abt, "m = {m}, t = {t}");
            }
        }
    }

    #[test]
    fn abt_support_avoiding_configuration_qualifies() {
        // x = e_1, gamma = {2, ..., m+1}: qualifies for b = 2, any a <= m, t.
        let m = 4;
        let x = FiniteVector::unit(1, m as u64 + 2);
        let gamma: BTreeSet<Coord> = (2..=m as u64 + 1).map(Coord::flat).collect();
        for a in 1..=m {
            assert!(is_abt_weak_greedy(&x, &gamma, a, 2, 0.9).unwrap());
        }
        assert!(!is_abt_weak_greedy(&x, &gamma, 1, 1, 0.9).unwrap());
    }

    #[test]
    fn abt_rejects_order_below_a() {
        let x = FiniteVector::unit(1, 4);
        let gamma = set(&[2]);
        assert!(matches!(
            is_abt_weak_greedy(&x, &gamma, 2, 1, 0.5),
            Err(Error::OrderBelowInsideRank { .. })
        ));
    }

    #[test]
    fn zero_threshold_accepts_every_set() {
        let x = fv(&[(1, 1.0)], 3);
        let sets = enumerate_weak_greedy_sets(&x, 2, 0.0, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(sets.len(), 3);
    }

    #[test]
    fn enumeration_cap_is_a_structured_error() {
        let pairs: Vec<(u64, f64)> = (1..=30).map(|i| (i, 1.0)).collect();
        let x = fv(&pairs, 30);
        let err = enumerate_weak_greedy_sets(&x, 15, 0.5, 1000).unwrap_err();
        assert!(matches!(err, Error::EnumerationCap { cap: 1000, .. }));
    }

    #[test]
    fn projection_identities() {
        let x = fv(&[(1, 1.0), (3, -2.0), (5, 0.5)], 6);
        let a = set(&[1, 5]);
        let pa = project(&x, &a);
        assert_eq!(project(&pa, &a), pa);
        let complement: BTreeSet<Coord> =
            x.universe().into_iter().filter(|c| !a.contains(c)).collect();
        assert_eq!(pa.add(&project(&x, &complement)).unwrap(), x);
        assert_eq!(project(&x, &x.support().collect()), x);
    }

    #[test]
    fn partial_sum_keeps_prefix() {
        let x = fv(&[(1, 1.0), (3, -2.0), (5, 0.5)], 6);
        assert_eq!(partial_sum(&x, 3).unwrap(), fv(&[(1, 1.0), (3, -2.0)], 6));
    }

    #[test]
    fn indicator_applies_weight_by_rank() {
        let f = WeightFunction::Alternating;
        let v = indicator(&set(&[4, 7]), None, Some(&f)).unwrap();
        assert_eq!(v, fv(&[(4, -1.0), (7, 1.0)], 7));

        let plain = indicator(&set(&[2, 5]), None, None).unwrap();
        assert_eq!(plain, fv(&[(2, 1.0), (5, 1.0)], 5));

        let signed = indicator(&set(&[1, 2]), Some(&[-1.0, 1.0]), None).unwrap();
        assert_eq!(signed, fv(&[(1, -1.0), (2, 1.0)], 2));
    }

    #[test]
    fn greedy_sum_exhausts_finite_support() {
        let x = fv(&[(2, 0.5), (9, -1.0)], 9);
        for m in 2..6 {
            assert_eq!(greedy_sum(&x, m), x);
        }
    }

    #[test]
    fn qualifying_set_constructor_validates_and_orders() {
        let x = fv(&[(1, 1.0), (3, 3.0), (4, 0.5)], 5);
        let weak = set(&[1, 3]);
        let sel =
            GreedySelection::from_qualifying_set(&x, &weak, SelectionKind::TWeak { t: 0.5 }).unwrap();
        assert_eq!(sel.ordered_indices, vec![Coord::flat(3), Coord::flat(1)]);
        assert_eq!(sel.values, vec![3.0, 1.0]);
        // {1, 4} is not even 0.9-weak greedy: its smallest inside magnitude
        // is 0.5 against an outside maximum of 3.
        let bad = set(&[1, 4]);
        assert!(
            GreedySelection::from_qualifying_set(&x, &bad, SelectionKind::TWeak { t: 0.9 }).is_err()
        );
        assert!(
            GreedySelection::from_qualifying_set(&x, &bad, SelectionKind::AbtWeak { a: 1, b: 2, t: 0.9 })
                .is_ok()
        );
    }

    #[test]
    fn core_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FiniteVector>();
        assert_send_sync::<Coord>();
        assert_send_sync::<GreedySelection>();
        assert_send_sync::<SpaceSpec>();
        assert_send_sync::<WeightFunction>();
    }
}
