//! Subset families over `{1,…,n}`: the grouped construction, its closed-form
//! size, and the three combinatorial conditions that make `conv(V ⊔ −V)`
//! antipodally separated.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{arg, Error, Result};
use crate::report::{ConditionReport, Violation};
use crate::subset::{Canonical, Subset, MAX_N};

/// Ground sets up to this size use a dense membership table of `2^n` bits.
const DENSE_MEMBERSHIP_MAX_N: usize = 24;

/// A partition of `{1,…,n}` into blocks of almost equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPartition {
    n: usize,
    groups: Vec<Subset>,
}

impl GroupPartition {
    /// Validates an explicit partition: blocks nonempty, pairwise disjoint,
    /// covering `{1,…,n}`, with sizes differing by at most one.
    pub fn new(n: usize, groups: Vec<Subset>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return arg(format!("ground set size {n} outside 1..={MAX_N}"));
        }
        let mut seen = Subset::EMPTY;
        for g in &groups {
            if g.is_empty() {
                return arg("empty group");
            }
            if !g.is_subset(Subset::full(n)) {
                return arg(format!("group {g} not contained in 1..={n}"));
            }
            if !g.is_disjoint(seen) {
                return arg(format!("group {g} overlaps an earlier group"));
            }
            seen = seen.union(*g);
        }
        if seen != Subset::full(n) {
            return arg(format!("groups do not cover 1..={n}"));
        }
        let (lo, hi) = groups
            .iter()
            .fold((usize::MAX, 0), |(lo, hi), g| (lo.min(g.len()), hi.max(g.len())));
        if hi - lo > 1 {
            return arg(format!("group sizes range over {lo}..={hi}; must differ by at most 1"));
        }
        Ok(GroupPartition { n, groups })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of groups.
    pub fn k(&self) -> usize {
        self.groups.len()
    }

    /// Largest group size.
    pub fn s(&self) -> usize {
        self.groups.iter().map(|g| g.len()).max().unwrap_or(0)
    }

    pub fn groups(&self) -> &[Subset] {
        &self.groups
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.len()).collect()
    }

    /// Whether `a` is nonempty and meets at most one group in more than one
    /// element.
    pub fn admits(&self, a: Subset) -> bool {
        !a.is_empty()
            && a.is_subset(Subset::full(self.n))
            && self.groups.iter().filter(|g| g.intersection(a).len() > 1).count() <= 1
    }
}

impl Serialize for GroupPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.groups)
    }
}

/// `k` consecutive blocks; the first `n mod k` have `⌈n/k⌉` elements, the
/// rest `⌊n/k⌋`.
pub fn make_partition(n: usize, k: usize) -> Result<GroupPartition> {
    if n == 0 || n > MAX_N {
        return arg(format!("ground set size {n} outside 1..={MAX_N}"));
    }
    if k == 0 || k > n {
        return arg(format!("group count {k} outside 1..={n}"));
    }
    let (q, r) = (n / k, n % k);
    let mut next = 1;
    let groups = (0..k)
        .map(|j| {
            let size = q + usize::from(j < r);
            let g = Subset::from_elements(next..next + size).expect("within range");
            next += size;
            g
        })
        .collect();
    GroupPartition::new(n, groups)
}

/// `⌈√n⌉`.
pub fn default_k(n: usize) -> usize {
    let r = n.sqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

enum Membership {
    Dense(FixedBitSet),
    Sparse(HashSet<u64>),
}

/// A set of nonempty subsets of `{1,…,n}`, kept in canonical order.
pub struct SubsetFamily {
    n: usize,
    members: Vec<Subset>,
    index: Membership,
}

impl SubsetFamily {
    pub fn new(n: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return arg(format!("ground set size {n} outside 1..={MAX_N}"));
        }
        let full = Subset::full(n);
        let mut members: Vec<Subset> = members.into_iter().collect();
        for a in &members {
            if a.is_empty() {
                return arg("empty member");
            }
            if !a.is_subset(full) {
                return arg(format!("member {a} not contained in 1..={n}"));
            }
        }
        members.sort_unstable_by_key(|a| a.canonical_key());
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return arg(format!("duplicate member {}", w[0]));
        }
        let index = if n <= DENSE_MEMBERSHIP_MAX_N {
            let mut table = FixedBitSet::with_capacity(1 << n);
            for a in &members {
                table.insert(a.bits() as usize);
            }
            Membership::Dense(table)
        } else {
            Membership::Sparse(members.iter().map(|a| a.bits()).collect())
        };
        Ok(SubsetFamily { n, members, index })
    }

    /// Every nonempty subset of `{1,…,n}`.
    pub fn power_set(n: usize) -> Result<Self> {
        if n == 0 || n > DENSE_MEMBERSHIP_MAX_N {
            return arg(format!("power set only supported for 1..={DENSE_MEMBERSHIP_MAX_N}"));
        }
        Self::new(n, (1..1u64 << n).map(Subset::from_bits))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order (size, then lexicographic).
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn contains(&self, a: Subset) -> bool {
        match &self.index {
            Membership::Dense(table) => (a.bits() as usize) < table.len() && table.contains(a.bits() as usize),
            Membership::Sparse(set) => set.contains(&a.bits()),
        }
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubsetFamily")
            .field("n", &self.n)
            .field("members", &self.members)
            .finish()
    }
}

impl PartialEq for SubsetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.members == other.members
    }
}

/// All nonempty subsets meeting at most one group of `p` in more than one
/// element.
///
/// Generated directly as the disjoint union of the subsets meeting every
/// group in at most one element and, for each group `g`, those meeting `g` in
/// at least two elements and every other group in at most one.
pub fn build_grouped_family(p: &GroupPartition) -> SubsetFamily {
    // Per group: the empty choice and the singletons.
    let small: Vec<Vec<Subset>> = p
        .groups()
        .iter()
        .map(|g| {
            std::iter::once(Subset::EMPTY)
                .chain(g.elements().map(Subset::singleton))
                .collect()
        })
        .collect();
    let large: Vec<Vec<Subset>> = p
        .groups()
        .iter()
        .map(|g| submasks(*g).filter(|a| a.len() >= 2).collect())
        .collect();

    let mut members = Vec::new();
    let mut product = |choices: &[&[Subset]]| {
        let mut acc = vec![Subset::EMPTY];
        for options in choices {
            acc = acc
                .iter()
                .flat_map(|a| options.iter().map(move |o| a.union(*o)))
                .collect();
        }
        members.extend(acc.into_iter().filter(|a| !a.is_empty()));
    };
    let all_small: Vec<&[Subset]> = small.iter().map(Vec::as_slice).collect();
    product(&all_small);
    for g in 0..p.k() {
        let mut choices = all_small.clone();
        choices[g] = &large[g];
        product(&choices);
    }
    SubsetFamily::new(p.n(), members).expect("grouped construction yields distinct nonempty members")
}

/// Nonempty submasks of `a` (including `a`), in decreasing bit order.
fn submasks(a: Subset) -> impl Iterator<Item = Subset> {
    let full = a.bits();
    let mut next = (full != 0).then_some(full);
    std::iter::from_fn(move || {
        let cur = next?;
        let after = (cur - 1) & full;
        next = (after != 0).then_some(after);
        Some(Subset::from_bits(cur))
    })
}

/// Exact `|V|` for the grouped family of `p`, by inclusion–exclusion over
/// which group (if any) is met in two or more elements.
pub fn grouped_family_count(p: &GroupPartition) -> BigUint {
    grouped_count_for_sizes(&p.group_sizes())
}

/// [`grouped_family_count`] from the block sizes alone; works for ground sets
/// far beyond the packed-subset limit.
pub fn grouped_count_for_sizes(sizes: &[usize]) -> BigUint {
    let at_most_one = |s: usize| BigUint::from(s + 1);
    let at_least_two = |s: usize| (BigUint::one() << s) - BigUint::from(s + 1);
    // prefix[g] · suffix[g + 1] is the product over all groups except g.
    let mut prefix = vec![BigUint::one()];
    for &s in sizes {
        let next = prefix.last().expect("seeded") * at_most_one(s);
        prefix.push(next);
    }
    let mut suffix = vec![BigUint::one(); sizes.len() + 1];
    for g in (0..sizes.len()).rev() {
        suffix[g] = &suffix[g + 1] * at_most_one(sizes[g]);
    }
    let mut total = prefix[sizes.len()].clone();
    for (g, &sg) in sizes.iter().enumerate() {
        total += at_least_two(sg) * &prefix[g] * &suffix[g + 1];
    }
    total - BigUint::one()
}

/// Block sizes of [`make_partition`]`(n, k)` without materializing subsets.
pub fn partition_sizes(n: usize, k: usize) -> Vec<usize> {
    let (q, r) = (n / k, n % k);
    (0..k).map(|j| q + usize::from(j < r)).collect()
}

/// `2^s · (s+1)^(k−1) · k`.
pub fn size_bound(k: usize, s: usize) -> BigUint {
    assert!(k >= 1 && s >= 1, "size_bound needs k, s >= 1");
    (BigUint::one() << s) * BigUint::from(s + 1).pow((k - 1) as u32) * BigUint::from(k)
}

/// Index of a group meeting `a` in the most elements; ties go to the
/// smallest index.
pub fn maximal_group(a: Subset, p: &GroupPartition) -> Result<usize> {
    if a.is_empty() {
        return arg("maximal group of the empty set");
    }
    let mut best = 0;
    let mut best_size = 0;
    for (g, group) in p.groups().iter().enumerate() {
        let size = group.intersection(a).len();
        if size > best_size {
            best = g;
            best_size = size;
        }
    }
    Ok(best)
}

/// `{i} ∈ V` for every `i ∈ {1,…,n}`.
pub fn check_singletons(v: &SubsetFamily) -> ConditionReport {
    let violations = (1..=v.n())
        .filter(|&i| !v.contains(Subset::singleton(i)))
        .map(|element| Violation::MissingSingleton { element })
        .collect();
    ConditionReport::from_violations("singletons", v.n() as u64, violations)
}

/// `A ∖ {i} ∈ V` for every `A ∈ V` with `|A| > 1` and every `i ∈ A`.
pub fn check_downward_closed(v: &SubsetFamily) -> ConditionReport {
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for &a in v.members() {
        if a.len() <= 1 {
            continue;
        }
        for i in a.elements() {
            checked += 1;
            if !v.contains(a.without(i)) {
                violations.push(Violation::NotDownwardClosed { set: a, element: i });
            }
        }
    }
    ConditionReport::from_violations("downward_closed", checked, violations)
}

/// Which of the two exchange cases a witness `(i, j)` satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExchangeCase {
    /// `B ⊔ i ∈ V` and `A ⊔ j ∖ i ∈ V`.
    #[serde(rename = "3a")]
    A,
    /// `A ⊔ j ∈ V` and `B ⊔ i ∖ j ∈ V`.
    #[serde(rename = "3b")]
    B,
    #[serde(rename = "both")]
    Both,
}

impl ExchangeCase {
    /// The case seen from the swapped pair `(B, A)`.
    pub fn swapped(self) -> Self {
        match self {
            ExchangeCase::A => ExchangeCase::B,
            ExchangeCase::B => ExchangeCase::A,
            ExchangeCase::Both => ExchangeCase::Both,
        }
    }
}

/// `i ∈ A`, `j ∈ B` and the exchange case they satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeWitness {
    pub i: usize,
    pub j: usize,
    pub case: ExchangeCase,
}

/// Which exchange cases `(i, j)` satisfies for the pair `(a, b)` under the
/// membership predicate `member`.
pub fn exchange_cases(
    a: Subset,
    b: Subset,
    i: usize,
    j: usize,
    member: impl Fn(Subset) -> bool,
) -> Option<ExchangeCase> {
    let case_a = member(b.with(i)) && member(a.with(j).without(i));
    let case_b = member(a.with(j)) && member(b.with(i).without(j));
    match (case_a, case_b) {
        (true, true) => Some(ExchangeCase::Both),
        (true, false) => Some(ExchangeCase::A),
        (false, true) => Some(ExchangeCase::B),
        (false, false) => None,
    }
}

/// First `(i, j) ∈ A × B` in lexicographic order satisfying an exchange case.
pub fn exchange_witness(v: &SubsetFamily, a: Subset, b: Subset) -> Option<ExchangeWitness> {
    for i in a.elements() {
        for j in b.elements() {
            if let Some(case) = exchange_cases(a, b, i, j, |c| v.contains(c)) {
                return Some(ExchangeWitness { i, j, case });
            }
        }
    }
    None
}

/// Calls `f(b)` for each member `b` of `v` disjoint from `a`.
fn for_each_disjoint_member(v: &SubsetFamily, a: Subset, mut f: impl FnMut(Subset)) {
    let complement = Subset::full(v.n()).difference(a);
    let submask_count = 1u128 << complement.len();
    if (v.len() as u128) < submask_count {
        for &b in v.members() {
            if b.is_disjoint(a) {
                f(b);
            }
        }
    } else {
        for b in submasks(complement) {
            if v.contains(b) {
                f(b);
            }
        }
    }
}

/// Exchange condition over every ordered pair of disjoint members.
///
/// Pairs are processed in parallel per first member; violations are reported
/// in canonical `(A, B)` order.
pub fn check_exchange(v: &SubsetFamily) -> ConditionReport {
    let per_member: Vec<(u64, Vec<Violation>)> = v
        .members()
        .par_iter()
        .map(|&a| {
            let mut checked = 0u64;
            let mut bad = Vec::new();
            for_each_disjoint_member(v, a, |b| {
                checked += 1;
                if exchange_witness(v, a, b).is_none() {
                    bad.push(b);
                }
            });
            bad.sort_by_key(|b| Canonical(*b));
            (
                checked,
                bad.into_iter().map(|b| Violation::NoExchange { a, b }).collect(),
            )
        })
        .collect();
    let checked = per_member.iter().map(|(c, _)| c).sum();
    let violations = per_member.into_iter().flat_map(|(_, v)| v).collect();
    ConditionReport::from_violations("exchange", checked, violations)
}

/// Every ordered disjoint pair with its first witness, in canonical order.
/// Meant for small families; the output has one entry per pair.
pub fn exchange_witness_table(v: &SubsetFamily) -> Vec<(Subset, Subset, Option<ExchangeWitness>)> {
    let mut out = Vec::new();
    for &a in v.members() {
        let mut bs = Vec::new();
        for_each_disjoint_member(v, a, |b| bs.push(b));
        bs.sort_by_key(|b| Canonical(*b));
        out.extend(bs.into_iter().map(|b| (a, b, exchange_witness(v, a, b))));
    }
    out
}

/// Number of ordered pairs of disjoint members.
pub fn disjoint_pair_count(v: &SubsetFamily) -> u64 {
    v.members()
        .par_iter()
        .map(|&a| {
            let mut c = 0u64;
            for_each_disjoint_member(v, a, |_| c += 1);
            c
        })
        .sum()
}

/// The witness the grouped construction prescribes for a disjoint pair:
///
/// - `A ∩ M(B) ≠ ∅`: `i ∈ A ∩ M(B)`, `j ∈ B ∩ M(B)`, case 3a;
/// - else `B ∩ M(A) ≠ ∅`: `i ∈ A ∩ M(A)`, `j ∈ B ∩ M(A)`, case 3b;
/// - else `i ∈ A ∩ M(A)`, `j ∈ B ∩ M(B)`, both cases.
///
/// Elements are the smallest available. The claimed membership conditions
/// are validated against the grouped family of `p`.
pub fn exchange_witness_grouped(a: Subset, b: Subset, p: &GroupPartition) -> Result<ExchangeWitness> {
    if !a.is_disjoint(b) {
        return arg(format!("{a} and {b} are not disjoint"));
    }
    if !p.admits(a) || !p.admits(b) {
        return arg(format!("{a} or {b} is not a member of the grouped family"));
    }
    let groups = p.groups();
    let ma = groups[maximal_group(a, p)?];
    let mb = groups[maximal_group(b, p)?];
    let smallest = |s: Subset| s.min_element().expect("nonempty by case analysis");
    let witness = if !a.intersection(mb).is_empty() {
        ExchangeWitness {
            i: smallest(a.intersection(mb)),
            j: smallest(b.intersection(mb)),
            case: ExchangeCase::A,
        }
    } else if !b.intersection(ma).is_empty() {
        ExchangeWitness {
            i: smallest(a.intersection(ma)),
            j: smallest(b.intersection(ma)),
            case: ExchangeCase::B,
        }
    } else {
        ExchangeWitness {
            i: smallest(a.intersection(ma)),
            j: smallest(b.intersection(mb)),
            case: ExchangeCase::Both,
        }
    };
    let holds = exchange_cases(a, b, witness.i, witness.j, |c| p.admits(c));
    let valid = matches!(
        (witness.case, holds),
        (_, Some(ExchangeCase::Both))
            | (ExchangeCase::A, Some(ExchangeCase::A))
            | (ExchangeCase::B, Some(ExchangeCase::B))
    );
    if !valid {
        return Err(Error::Internal(format!(
            "grouped witness {witness:?} for ({a}, {b}) fails its membership conditions (holds: {holds:?})"
        )));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Subset {
        Subset::from_elements(v.iter().copied()).unwrap()
    }

    fn fam(n: usize, v: &[&[usize]]) -> SubsetFamily {
        SubsetFamily::new(n, v.iter().map(|m| s(m))).unwrap()
    }

    /// Brute-force filter over all `2^n − 1` nonempty subsets.
    fn grouped_by_filter(p: &GroupPartition) -> Vec<Subset> {
        let mut v: Vec<Subset> = (1..1u64 << p.n())
            .map(Subset::from_bits)
            .filter(|a| p.groups().iter().filter(|g| g.intersection(*a).len() > 1).count() <= 1)
            .collect();
        v.sort_by_key(|a| Canonical(*a));
        v
    }

    #[test]
    fn partition_examples() {
        assert_eq!(make_partition(3, 1).unwrap().groups(), &[s(&[1, 2, 3])]);
        assert_eq!(make_partition(4, 2).unwrap().groups(), &[s(&[1, 2]), s(&[3, 4])]);
        assert_eq!(make_partition(5, 2).unwrap().groups(), &[s(&[1, 2, 3]), s(&[4, 5])]);
        assert!(matches!(make_partition(3, 0), Err(Error::Argument(_))));
        assert!(matches!(make_partition(3, 4), Err(Error::Argument(_))));
    }

    #[test]
    fn partition_invariants_hold_for_all_k() {
        for n in 1..=20 {
            for k in 1..=n {
                let p = make_partition(n, k).unwrap();
                assert_eq!(p.k(), k);
                let s_max = n.div_ceil(k);
                assert!(p.groups().iter().all(|g| g.len() == s_max || g.len() == n / k));
                assert_eq!(p.s(), s_max);
            }
        }
    }

    #[test]
    fn explicit_partition_validation() {
        assert!(GroupPartition::new(4, vec![s(&[1, 2]), s(&[2, 3, 4])]).is_err());
        assert!(GroupPartition::new(4, vec![s(&[1, 2])]).is_err());
        assert!(GroupPartition::new(4, vec![s(&[1]), s(&[2, 3, 4])]).is_err());
        assert!(GroupPartition::new(4, vec![s(&[1, 3]), s(&[2, 4])]).is_ok());
    }

    #[test]
    fn default_k_examples() {
        assert_eq!(default_k(1), 1);
        assert_eq!(default_k(4), 2);
        assert_eq!(default_k(10), 4);
        assert_eq!(default_k(100), 10);
        assert_eq!(default_k(101), 11);
    }

    #[test]
    fn grouped_family_examples() {
        let single = build_grouped_family(&make_partition(3, 1).unwrap());
        assert_eq!(single.len(), 7);

        let p = make_partition(4, 2).unwrap();
        let v = build_grouped_family(&p);
        assert_eq!(v.len(), 14);
        assert!(!v.contains(s(&[1, 2, 3, 4])));
        assert_eq!(v.members(), grouped_by_filter(&p).as_slice());

        let v = build_grouped_family(&make_partition(2, 2).unwrap());
        assert_eq!(v.members(), &[s(&[1]), s(&[2]), s(&[1, 2])]);
    }

    #[test]
    fn grouped_family_matches_filter_and_closed_form() {
        for n in 1..=12 {
            for k in 1..=n {
                let p = make_partition(n, k).unwrap();
                let v = build_grouped_family(&p);
                assert_eq!(v.members(), grouped_by_filter(&p).as_slice(), "n={n} k={k}");
                assert_eq!(BigUint::from(v.len()), grouped_family_count(&p), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn maximal_group_examples() {
        let p = make_partition(4, 2).unwrap();
        assert_eq!(maximal_group(s(&[1, 2, 3]), &p).unwrap(), 0);
        assert_eq!(maximal_group(s(&[3]), &p).unwrap(), 1);
        assert_eq!(maximal_group(s(&[1, 3]), &p).unwrap(), 0);
        assert!(matches!(maximal_group(Subset::EMPTY, &p), Err(Error::Argument(_))));
    }

    #[test]
    fn singleton_check_examples() {
        assert!(check_singletons(&SubsetFamily::power_set(3).unwrap()).passed());
        assert!(check_singletons(&fam(2, &[&[1], &[2], &[1, 2]])).passed());
        let r = check_singletons(&fam(2, &[&[1], &[1, 2]]));
        assert!(!r.passed());
        assert_eq!(r.violations(), &[Violation::MissingSingleton { element: 2 }]);
    }

    #[test]
    fn downward_closure_examples() {
        assert!(check_downward_closed(&SubsetFamily::power_set(3).unwrap()).passed());
        let r = check_downward_closed(&fam(3, &[&[1], &[2], &[3], &[1, 2, 3]]));
        assert!(!r.passed());
        assert!(r.violations().contains(&Violation::NotDownwardClosed {
            set: s(&[1, 2, 3]),
            element: 3
        }));
        let grouped = build_grouped_family(&make_partition(4, 2).unwrap());
        assert!(check_downward_closed(&grouped).passed());
    }

    #[test]
    fn exchange_examples() {
        assert!(check_exchange(&SubsetFamily::power_set(3).unwrap()).passed());

        let v = build_grouped_family(&make_partition(4, 2).unwrap());
        assert!(check_exchange(&v).passed());
        // (i, j) = (1, 3): B ⊔ 1 = {1,3,4} and A ⊔ 3 ∖ 1 = {2,3} are both members.
        assert!(v.contains(s(&[1, 3, 4])) && v.contains(s(&[2, 3])));
        let w = exchange_witness(&v, s(&[1, 2]), s(&[3, 4])).unwrap();
        assert_eq!((w.i, w.j), (1, 3));

        let pairs = fam(3, &[&[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]);
        let w = exchange_witness(&pairs, s(&[1]), s(&[2, 3])).unwrap();
        assert_eq!(
            w,
            ExchangeWitness {
                i: 1,
                j: 2,
                case: ExchangeCase::B
            }
        );
        assert!(check_exchange(&pairs).passed());
    }

    #[test]
    fn exchange_failure_is_reported() {
        // Two singletons with no union: neither {1,2} nor a swap is available.
        let v = fam(2, &[&[1], &[2]]);
        let r = check_exchange(&v);
        assert!(!r.passed());
        assert_eq!(r.checked(), 2);
        assert_eq!(
            r.violations(),
            &[
                Violation::NoExchange { a: s(&[1]), b: s(&[2]) },
                Violation::NoExchange { a: s(&[2]), b: s(&[1]) },
            ]
        );
    }

    #[test]
    fn exchange_is_symmetric_under_swap() {
        let v = fam(4, &[&[1], &[2], &[3], &[4], &[1, 2], &[3, 4], &[1, 3], &[2, 4]]);
        for &a in v.members() {
            for &b in v.members() {
                if a.is_disjoint(b) {
                    let ab = exchange_witness(&v, a, b);
                    let ba = exchange_witness(&v, b, a);
                    assert_eq!(ab.is_some(), ba.is_some(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn grouped_witness_examples() {
        let p = make_partition(4, 2).unwrap();
        assert_eq!(
            exchange_witness_grouped(s(&[1, 3]), s(&[2]), &p).unwrap(),
            ExchangeWitness {
                i: 1,
                j: 2,
                case: ExchangeCase::A
            }
        );
        assert_eq!(
            exchange_witness_grouped(s(&[1, 2]), s(&[3, 4]), &p).unwrap(),
            ExchangeWitness {
                i: 1,
                j: 3,
                case: ExchangeCase::Both
            }
        );
        let single = make_partition(3, 1).unwrap();
        assert_eq!(
            exchange_witness_grouped(s(&[1]), s(&[2]), &single).unwrap(),
            ExchangeWitness {
                i: 1,
                j: 2,
                case: ExchangeCase::A
            }
        );
        assert!(matches!(
            exchange_witness_grouped(s(&[1, 2]), s(&[2]), &p),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn grouped_witness_always_validates() {
        for n in 1..=9 {
            for k in 1..=n {
                let p = make_partition(n, k).unwrap();
                let v = build_grouped_family(&p);
                for &a in v.members() {
                    for &b in v.members() {
                        if !a.is_disjoint(b) {
                            continue;
                        }
                        let w = exchange_witness_grouped(a, b, &p).unwrap();
                        let holds = exchange_cases(a, b, w.i, w.j, |c| v.contains(c)).unwrap();
                        assert!(holds == w.case || holds == ExchangeCase::Both);
                    }
                }
            }
        }
    }

    #[test]
    fn size_bound_examples() {
        assert_eq!(size_bound(2, 2), BigUint::from(24u32));
        assert_eq!(size_bound(1, 3), BigUint::from(8u32));
        assert_eq!(size_bound(3, 3), BigUint::from(384u32));
    }

    #[test]
    fn family_rejects_bad_members() {
        assert!(SubsetFamily::new(2, [Subset::EMPTY]).is_err());
        assert!(SubsetFamily::new(2, [s(&[3])]).is_err());
        assert!(SubsetFamily::new(2, [s(&[1]), s(&[1])]).is_err());
    }

    #[test]
    fn sparse_membership_for_large_n() {
        let p = make_partition(26, 2).unwrap();
        let v = build_grouped_family(&p);
        assert_eq!(BigUint::from(v.len()), grouped_family_count(&p));
        assert!(v.contains(s(&[1, 2, 3, 14])));
        assert!(!v.contains(s(&[1, 2, 14, 15])));
        assert!(check_singletons(&v).passed());
        assert!(check_downward_closed(&v).passed());
    }
}
