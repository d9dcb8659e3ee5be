//! Which sums `S(m, n)` with `m` a unit mod `n` coincide.
//!
//! Exact equality is decided on the integer `n * S(m, n)`, so grouping never
//! touches a decimal approximation.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, gcd_u128, mul_mod, reduce, Rational};
use crate::dedekind::{canonical, scaled_kernel, I128_LIMIT};
use crate::error::{Error, Result};

/// `n | (m1 - m2)(m1 m2 - 1)`.
pub fn necessary_condition(m1: i128, m2: i128, n: u64) -> Result<bool> {
    let a = canonical(m1, n)?;
    let b = canonical(m2, n)?;
    Ok(condition_holds(a, b, n))
}

fn condition_holds(a: u64, b: u64, n: u64) -> bool {
    let diff = reduce(a as i128 - b as i128, n);
    let prod = reduce(mul_mod(a, b, n) as i128 - 1, n);
    mul_mod(diff, prod, n) == 0
}

/// `S(m1, n) - S(m2, n)` is an integer.
pub fn integer_difference(m1: i128, m2: i128, n: u64) -> Result<bool> {
    let (a, b) = (scaled(m1, n)?, scaled(m2, n)?);
    Ok((a - b) % n as i128 == 0)
}

fn scaled(m: i128, n: u64) -> Result<i128> {
    if n > I128_LIMIT {
        return Err(Error::Overflow(format!("modulus {n} exceeds 2^40")));
    }
    Ok(scaled_kernel(canonical(m, n)?, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `m1 ≡ m2 (mod n)`.
    Identical,
    /// `m1 m2 ≡ 1 (mod n)`, `m1 ≢ m2`.
    ObviousInverse,
    NonObviousEqual,
    /// The difference is a nonzero integer.
    IntegerDifferenceOnly,
    Unequal,
}

impl Relation {
    pub fn is_equal(self) -> bool {
        matches!(
            self,
            Relation::Identical | Relation::ObviousInverse | Relation::NonObviousEqual
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Identical => "identical",
            Relation::ObviousInverse => "obvious-inverse",
            Relation::NonObviousEqual => "non-obvious-equal",
            Relation::IntegerDifferenceOnly => "integer-difference-only",
            Relation::Unequal => "unequal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub m1: u64,
    pub m2: u64,
    pub n: u64,
    pub relation: Relation,
}

pub fn classify_pair(m1: i128, m2: i128, n: u64) -> Result<PairVerdict> {
    let a = canonical(m1, n)?;
    let b = canonical(m2, n)?;
    let relation = if a == b {
        Relation::Identical
    } else if mul_mod(a, b, n) == 1 % n {
        Relation::ObviousInverse
    } else {
        let (sa, sb) = (scaled(m1, n)?, scaled(m2, n)?);
        if sa == sb {
            Relation::NonObviousEqual
        } else if (sa - sb) % n as i128 == 0 {
            Relation::IntegerDifferenceOnly
        } else {
            Relation::Unequal
        }
    };
    Ok(PairVerdict {
        m1: a,
        m2: b,
        n,
        relation,
    })
}

/// Units mod `n` with their scaled sums `n * S(m, n)`, ascending in `m`.
#[derive(Debug, Clone)]
pub struct UnitTable {
    n: u64,
    units: Vec<u64>,
    scaled: Vec<i128>,
}

impl UnitTable {
    /// Evaluates every unit, in parallel over contiguous chunks of `[0, n)`.
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if n > I128_LIMIT {
            return Err(Error::Overflow(format!("modulus {n} exceeds 2^40")));
        }
        let pairs: Vec<(u64, i128)> = (0..n)
            .into_par_iter()
            .filter(|&m| gcd_u128(m as u128, n as u128) == 1)
            .map(|m| (m, scaled_kernel(m, n)))
            .collect();
        let (units, scaled) = pairs.into_iter().unzip();
        Ok(UnitTable { n, units, scaled })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// `n * S(m, n)` for a unit `m` (any representative).
    pub fn scaled(&self, m: i128) -> Option<i128> {
        let r = reduce(m, self.n);
        self.units.binary_search(&r).ok().map(|i| self.scaled[i])
    }

    pub fn value(&self, m: i128) -> Option<Rational> {
        self.scaled(m).map(|s| Rational::new(s, self.n))
    }

    /// Partition of the units into exact equality classes, ordered by
    /// smallest member.
    pub fn classes(&self) -> Vec<EqualityClass> {
        let mut order: Vec<usize> = (0..self.units.len()).collect();
        order.par_sort_unstable_by_key(|&i| (self.scaled[i], self.units[i]));
        let mut classes: Vec<EqualityClass> = order
            .chunk_by(|&a, &b| self.scaled[a] == self.scaled[b])
            .map(|group| EqualityClass {
                modulus: self.n,
                value: Rational::new(self.scaled[group[0]], self.n),
                members: group.iter().map(|&i| self.units[i]).collect(),
            })
            .collect();
        classes.sort_unstable_by_key(|c| c.members[0]);
        classes
    }

    /// Units `m2` with `n | (m1 - m2)(m1 m2 - 1)`.
    pub fn partners(&self, m1: i128) -> Result<Vec<u64>> {
        let a = canonical(m1, self.n)?;
        Ok(self
            .units
            .iter()
            .copied()
            .filter(|&b| condition_holds(a, b, self.n))
            .collect())
    }

    /// Statistics on the partners of one pivot `m1`.
    pub fn pivot_report(&self, m1: i128) -> Result<PivotReport> {
        let a = canonical(m1, self.n)?;
        let partners = self.partners(m1)?;
        let n = self.n as i128;
        let own = self.scaled(a as i128).expect("unit");
        let integer_difference_partners = self
            .units
            .iter()
            .zip(&self.scaled)
            .filter(|&(_, &s)| (s - own) % n == 0)
            .count();
        let class_size = self.scaled.iter().filter(|&&s| s == own).count();
        let mut groups: HashMap<i128, Vec<u64>> = HashMap::new();
        for &b in &partners {
            groups
                .entry(self.scaled(b as i128).expect("unit"))
                .or_default()
                .push(b);
        }
        let largest_equal_group = groups.values().map(Vec::len).max().unwrap_or(0);
        let non_obvious_among_partners = groups.values().any(|g| {
            let class = EqualityClass {
                modulus: self.n,
                value: Rational::zero(),
                members: g.clone(),
            };
            !class.non_obvious_pairs().is_empty()
        });
        Ok(PivotReport {
            m1: a,
            partners: partners.len(),
            integer_difference_partners,
            class_size,
            largest_equal_group,
            non_obvious_among_partners,
        })
    }

    pub fn bounds_report(&self) -> Result<BoundsReport> {
        let n = self.n;
        let factors = factorize(n);
        if factors.iter().any(|&(_, e)| e > 1) {
            return Err(Error::NotSquareFree(n));
        }
        let r = factors.len() as u32;
        let mut residue_counts: HashMap<i128, usize> = HashMap::new();
        let mut value_counts: HashMap<i128, usize> = HashMap::new();
        for &s in &self.scaled {
            *residue_counts.entry(s.rem_euclid(n as i128)).or_default() += 1;
            *value_counts.entry(s).or_default() += 1;
        }
        let max_class_size = residue_counts.values().copied().max().unwrap_or(0) as u64;
        let max_equal_class_size = value_counts.values().copied().max().unwrap_or(0) as u64;
        let distinct_values = value_counts.len() as u64;
        let bound_2r = 1u64 << r;
        let units: u64 = factors.iter().map(|&(p, _)| p - 1).product();
        let lower_bound = units.div_ceil(bound_2r);
        Ok(BoundsReport {
            n,
            r,
            max_class_size,
            max_equal_class_size,
            distinct_values,
            bound_2r,
            lower_bound,
            max_within_bound: max_class_size <= bound_2r,
            distinct_at_least_lower: distinct_values >= lower_bound,
        })
    }
}

/// Units mod `n` sharing one exact value of `S(·, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityClass {
    pub modulus: u64,
    pub value: Rational,
    /// Ascending, duplicate-free.
    pub members: Vec<u64>,
}

impl EqualityClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    fn inverse_rep(&self, m: u64) -> u64 {
        let inv = crate::arith::mod_inverse(m as i128, self.modulus).expect("unit");
        m.min(inv)
    }

    /// One representative (the smaller of `m`, `m*`) per inverse pair.
    pub fn orbit_representatives(&self) -> Vec<u64> {
        let mut reps: Vec<u64> = self.members.iter().map(|&m| self.inverse_rep(m)).collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    /// Pairs of distinct inverse-pair representatives; each is a non-obvious
    /// equality.
    pub fn non_obvious_pairs(&self) -> Vec<(u64, u64)> {
        let reps = self.orbit_representatives();
        let mut out = Vec::new();
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                out.push((a, b));
            }
        }
        out
    }

    pub fn has_non_obvious(&self) -> bool {
        self.orbit_representatives().len() > 1
    }

    /// The class restricted to members satisfying `keep`.
    pub fn restricted(&self, keep: impl Fn(u64) -> bool) -> EqualityClass {
        EqualityClass {
            modulus: self.modulus,
            value: self.value.clone(),
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }
}

/// All exact equality classes of `S(·, n)`, singletons included.
pub fn equality_classes(n: u64) -> Result<Vec<EqualityClass>> {
    Ok(UnitTable::new(n)?.classes())
}

/// Size checks for a square-free modulus with `r` prime factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    pub r: u32,
    /// Largest set of units whose sums pairwise differ by integers.
    pub max_class_size: u64,
    /// Largest set of units with one common sum.
    pub max_equal_class_size: u64,
    pub distinct_values: u64,
    pub bound_2r: u64,
    /// Ceiling of the product of `(p - 1) / 2` over the prime factors.
    pub lower_bound: u64,
    pub max_within_bound: bool,
    pub distinct_at_least_lower: bool,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.max_within_bound && self.distinct_at_least_lower
    }
}

pub fn bounds_report(n: u64) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if factorize(n).iter().any(|&(_, e)| e > 1) {
        return Err(Error::NotSquareFree(n));
    }
    UnitTable::new(n)?.bounds_report()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PivotReport {
    pub m1: u64,
    /// Units `m2` satisfying `n | (m1 - m2)(m1 m2 - 1)`.
    pub partners: usize,
    pub integer_difference_partners: usize,
    /// Size of the equality class of `m1` itself.
    pub class_size: usize,
    /// Largest number of partners sharing one common value.
    pub largest_equal_group: usize,
    pub non_obvious_among_partners: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, is_prime, mod_inverse};
    use crate::dedekind::dedekind_oracle;
    use std::collections::BTreeMap;

    fn oracle_classes(n: u64) -> Vec<Vec<u64>> {
        let mut by_value: BTreeMap<Rational, Vec<u64>> = BTreeMap::new();
        for m in 0..n {
            if gcd(m as i64, n as i64) == 1 {
                by_value
                    .entry(dedekind_oracle(m as i128, n).unwrap())
                    .or_default()
                    .push(m);
            }
        }
        let mut v: Vec<Vec<u64>> = by_value.into_values().collect();
        v.sort();
        v
    }

    #[test]
    fn necessary_condition_examples() {
        for n in [7u64, 200, 243] {
            for m in 1..n {
                if gcd(m as i64, n as i64) != 1 {
                    continue;
                }
                assert!(necessary_condition(m as i128, m as i128, n).unwrap());
                let inv = mod_inverse(m as i128, n).unwrap();
                assert!(necessary_condition(m as i128, inv as i128, n).unwrap());
                assert!(integer_difference(m as i128, m as i128, n).unwrap());
            }
        }
        assert!(necessary_condition(41, 81, 200).unwrap());
        assert!(matches!(
            necessary_condition(2, 3, 6),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn integer_difference_small_example() {
        assert_eq!(
            integer_difference(2, 3, 5).unwrap(),
            necessary_condition(2, 3, 5).unwrap()
        );
        // S(2,5) = S(3,5) = 0
        assert!(integer_difference(2, 3, 5).unwrap());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_pair(41, 161, 200).unwrap().relation,
            Relation::ObviousInverse
        );
        assert_eq!(
            classify_pair(41, 81, 200).unwrap().relation,
            Relation::NonObviousEqual
        );
        assert_eq!(classify_pair(1, 2, 5).unwrap().relation, Relation::Unequal);
        assert_eq!(
            classify_pair(7, -1, 8).unwrap().relation,
            Relation::Identical
        );
        // 2*3 ≡ 1 mod 5
        assert_eq!(
            classify_pair(2, 3, 5).unwrap().relation,
            Relation::ObviousInverse
        );
        // self-inverse m compared with itself stays identical
        assert_eq!(
            classify_pair(4, 4, 5).unwrap().relation,
            Relation::Identical
        );
    }

    #[test]
    fn integer_difference_only_occurs() {
        // S(1,3) = 2/3, S(2,3) = -2/3: not an integer difference
        assert_eq!(classify_pair(1, 2, 3).unwrap().relation, Relation::Unequal);
        // In the 1 mod 9 family mod 243 all values share a fractional part.
        let v = classify_pair(10, 19, 243).unwrap();
        assert_eq!(v.relation, Relation::IntegerDifferenceOnly);
    }

    #[test]
    fn prime_classes_are_inverse_pairs() {
        for p in [7u64, 11, 13] {
            let classes = equality_classes(p).unwrap();
            let got: Vec<Vec<u64>> = classes.iter().map(|c| c.members.clone()).collect();
            let mut sorted = got.clone();
            sorted.sort();
            assert_eq!(sorted, oracle_classes(p));
            for c in &classes {
                assert_eq!(c.orbit_representatives().len(), 1, "{c:?}");
            }
        }
    }

    #[test]
    fn classes_match_oracle_grouping() {
        for n in [1u64, 2, 12, 25, 60, 81, 100, 105] {
            let mut got: Vec<Vec<u64>> = equality_classes(n)
                .unwrap()
                .into_iter()
                .map(|c| c.members)
                .collect();
            got.sort();
            assert_eq!(got, oracle_classes(n), "n = {n}");
        }
    }

    #[test]
    fn class_of_six_mod_25() {
        let classes = equality_classes(25).unwrap();
        let c = classes.iter().find(|c| c.contains(6)).unwrap();
        assert_eq!(c.members, vec![6, 11, 16, 21]);
        assert_eq!(c.value, Rational::new(2, 25) - Rational::from(2i64));
    }

    #[test]
    fn one_mod_nine_family_mod_243() {
        let classes = equality_classes(243).unwrap();
        let mut pairs = Vec::new();
        for c in &classes {
            // 1 + 9j with 3 ∤ j
            let r = c.restricted(|m| m % 9 == 1 && (m / 9) % 3 != 0);
            pairs.extend(r.non_obvious_pairs());
        }
        assert_eq!(pairs, vec![(37, 127), (100, 145)]);
        // (1 + 9*4, 1 + 9*14) and (1 + 9*11, 1 + 9*16)
        assert_eq!(
            pairs,
            vec![(1 + 9 * 4, 1 + 9 * 14), (1 + 9 * 11, 1 + 9 * 16)]
        );
    }

    #[test]
    fn classes_sorted_and_partition_units() {
        for n in [1u64, 30, 97, 243, 1000] {
            let classes = equality_classes(n).unwrap();
            assert!(classes
                .windows(2)
                .all(|w| w[0].members[0] < w[1].members[0]));
            let mut all: Vec<u64> = classes.iter().flat_map(|c| c.members.clone()).collect();
            assert!(classes
                .iter()
                .all(|c| c.members.windows(2).all(|w| w[0] < w[1])));
            all.sort();
            let units: Vec<u64> = (0..n).filter(|&m| gcd(m as i64, n as i64) == 1).collect();
            assert_eq!(all, units);
            for c in &classes {
                for &m in &c.members {
                    assert!(c.contains(mod_inverse(m as i128, n).unwrap()));
                }
            }
        }
    }

    #[test]
    fn prime_power_only_obvious_away_from_pm_one() {
        for pk in 2..=3000u64 {
            let f = factorize(pk);
            if f.len() != 1 {
                continue;
            }
            let p = f[0].0;
            let table = UnitTable::new(pk).unwrap();
            for c in table.classes() {
                let m1 = c.members[0];
                if m1 % p == 1 % p || m1 % p == p - 1 {
                    continue;
                }
                let inv = mod_inverse(m1 as i128, pk).unwrap();
                let mut want = vec![m1, inv];
                want.sort();
                want.dedup();
                assert_eq!(c.members, want, "p^k = {pk}");
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let b = bounds_report(15).unwrap();
        assert_eq!(b.bound_2r, 4);
        assert_eq!(b.lower_bound, 2);
        assert!(b.max_class_size <= 4);
        assert!(b.distinct_values >= 2);
        assert!(b.holds());
        for p in [3u64, 5, 101, 997] {
            let b = bounds_report(p).unwrap();
            assert!(is_prime(p));
            assert!(b.max_class_size <= 2);
            assert!(b.distinct_values >= (p - 1) / 2);
        }
        assert_eq!(bounds_report(12), Err(Error::NotSquareFree(12)));
        let b = bounds_report(2).unwrap();
        assert_eq!(b.lower_bound, 1);
        assert!(b.holds());
    }

    #[test]
    fn pivot_report_17017() {
        let table = UnitTable::new(17017).unwrap();
        let reports: Vec<PivotReport> = (2..=6).map(|m| table.pivot_report(m).unwrap()).collect();
        let partners: Vec<usize> = reports.iter().map(|r| r.partners).collect();
        assert_eq!(partners, vec![16, 16, 16, 16, 8]);
        assert_eq!(reports[2].largest_equal_group, 8);
        assert_eq!(reports[3].largest_equal_group, 10);
        for r in &reports {
            assert_eq!(r.partners, r.integer_difference_partners);
            assert!(r.non_obvious_among_partners);
        }
    }
}
