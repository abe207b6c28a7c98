//! The isomorphism test for two inductive systems via supernatural numbers:
//! the per-prime limits of `deg_p(N_k)`, the mutual-divisibility condition,
//! and membership in the divisor sets. For eventually-periodic base
//! sequences all three are decidable and equivalent.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::embedding::BaseSequence;
use crate::error::{Error, Result};

/// A prime exponent that is either finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// A supernatural number `∏ p^{e_p}` with `e_p ∈ ℕ ∪ {∞}`: the per-prime
/// limit of the exponents in `N_k`. Zero exponents are not stored.
///
/// Serializes as a JSON object mapping primes to `"inf"` or a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, String>", into = "BTreeMap<String, String>")]
pub struct SupernaturalNumber {
    exponents: BTreeMap<u64, Exponent>,
}

impl TryFrom<BTreeMap<String, String>> for SupernaturalNumber {
    type Error = Error;
    fn try_from(raw: BTreeMap<String, String>) -> Result<Self> {
        let mut exponents = BTreeMap::new();
        for (prime, exp) in raw {
            let p: u64 = prime
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime {prime}")))?;
            let e = if exp == "inf" {
                Exponent::Infinite
            } else {
                Exponent::Finite(
                    exp.parse()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent {exp}")))?,
                )
            };
            if !matches!(e, Exponent::Finite(0)) {
                exponents.insert(p, e);
            }
        }
        Ok(SupernaturalNumber { exponents })
    }
}

impl From<SupernaturalNumber> for BTreeMap<String, String> {
    fn from(s: SupernaturalNumber) -> Self {
        s.exponents
            .into_iter()
            .map(|(p, e)| (p.to_string(), e.to_string()))
            .collect()
    }
}

impl SupernaturalNumber {
    pub fn exponent(&self, prime: u64) -> Exponent {
        self.exponents
            .get(&prime)
            .copied()
            .unwrap_or(Exponent::Finite(0))
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Exponent> {
        &self.exponents
    }
}

fn prime_factorization(mut n: u64) -> BTreeMap<u64, u32> {
    let mut factors = BTreeMap::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            *factors.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *factors.entry(n).or_insert(0) += 1;
    }
    factors
}

/// The supernatural number of a base sequence: primes dividing any tail entry
/// get exponent `∞`; primes dividing only prefix entries get their total
/// prefix exponent.
pub fn supernatural(seq: &BaseSequence) -> SupernaturalNumber {
    let mut exponents: BTreeMap<u64, Exponent> = BTreeMap::new();
    for &entry in seq.prefix() {
        for (p, e) in prime_factorization(entry) {
            match exponents.entry(p).or_insert(Exponent::Finite(0)) {
                Exponent::Finite(total) => *total += e,
                Exponent::Infinite => {}
            }
        }
    }
    for &entry in seq.tail() {
        for (p, _) in prime_factorization(entry) {
            exponents.insert(p, Exponent::Infinite);
        }
    }
    SupernaturalNumber { exponents }
}

/// Theorem-level isomorphism condition: the two systems are isomorphic iff
/// their supernatural numbers coincide as maps.
pub fn isomorphic(seq1: &BaseSequence, seq2: &BaseSequence) -> bool {
    supernatural(seq1) == supernatural(seq2)
}

/// The mutual-divisibility condition: every `N_i'` divides some `N_j''` and
/// vice versa, with `i` running to `k_max`.
///
/// The partner search is bounded. If `N_i' | N_j''` for any `j` at all, then
/// it divides `N_{j*}''` where `j* = prefix''.len() + tail''.len() · D` and
/// `D = max_p deg_p(N_i') ≤ log2(N_i')`: exponents of `N_j''` never decrease
/// in `j`; a prime dividing some tail entry gains at least one exponent per
/// tail period, so `D` periods past the prefix reach any required finite
/// exponent; a prime dividing no tail entry has reached its final exponent by
/// the end of the prefix. Searching `j ≤ j*` is therefore exhaustive.
pub fn condition_b_check(seq1: &BaseSequence, seq2: &BaseSequence, k_max: usize) -> bool {
    mutual_divisibility_one_sided(seq1, seq2, k_max)
        && mutual_divisibility_one_sided(seq2, seq1, k_max)
}

fn mutual_divisibility_one_sided(
    from: &BaseSequence,
    into: &BaseSequence,
    k_max: usize,
) -> bool {
    for i in 1..=k_max {
        let n_i = from.level_order(i).expect("level >= 1");
        let max_exponent = n_i.bits() as usize; // deg_p(N_i) <= log2(N_i)
        let search_bound = into.prefix().len() + into.tail().len() * max_exponent + 1;
        let mut found = false;
        let mut n_j = BigUint::from(1u32);
        for j in 1..=search_bound {
            n_j *= into.entry(j).expect("level >= 1");
            if n_j.is_multiple_of(&n_i) {
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

/// Whether `N` divides some `N_k` of the sequence, decided through the
/// supernatural exponents.
pub fn div_member(n: u64, seq: &BaseSequence) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".to_string()));
    }
    let sn = supernatural(seq);
    for (p, e) in prime_factorization(n) {
        match sn.exponent(p) {
            Exponent::Infinite => {}
            Exponent::Finite(available) => {
                if e > available {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Divisor-set membership by direct search, the independent route used to
/// cross-check [`div_member`]: scan `N_k` up to the bound sufficient for the
/// largest prime exponent of `n` (same argument as in
/// [`condition_b_check`]).
pub fn div_member_by_search(n: u64, seq: &BaseSequence) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".to_string()));
    }
    let target = BigUint::from(n);
    let max_exponent = target.bits() as usize;
    let bound = seq.prefix().len() + seq.tail().len() * max_exponent + 1;
    let mut n_k = BigUint::from(1u32);
    for k in 1..=bound {
        n_k *= seq.entry(k)?;
        if n_k.is_multiple_of(&target) {
            return Ok(true);
        }
    }
    Ok(false)
}

impl std::fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

impl SupernaturalNumber {
    /// True when no prime carries a nonzero exponent.
    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }
}
