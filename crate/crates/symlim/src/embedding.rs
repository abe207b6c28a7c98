//! The inductive system `S_{N_1} ⊂ S_{N_2} ⊂ …` determined by a base
//! sequence, with group elements kept in canonical (minimal-level) form, the
//! natural character and the stabilized sign.
//!
//! The embedding sends `σ ∈ S_{N_k}` to the permutation of `X_{N_j}` acting
//! as `σ` on the first mixed-radix coordinate: with `x = x₁ + N_k·x₂` it maps
//! `x` to `σ(x₁) + N_k·x₂`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{CycleType, Permutation};
use crate::DEFAULT_POINT_CAP;

/// An eventually-periodic sequence `n_1, n_2, …` of integers greater than 1:
/// a finite prefix followed by a repeating tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBaseSequence", into = "RawBaseSequence")]
pub struct BaseSequence {
    prefix: Vec<u64>,
    tail: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawBaseSequence {
    prefix: Vec<u64>,
    tail: Vec<u64>,
}

impl TryFrom<RawBaseSequence> for BaseSequence {
    type Error = Error;
    fn try_from(raw: RawBaseSequence) -> Result<Self> {
        BaseSequence::new(raw.prefix, raw.tail)
    }
}

impl From<BaseSequence> for RawBaseSequence {
    fn from(seq: BaseSequence) -> Self {
        RawBaseSequence {
            prefix: seq.prefix,
            tail: seq.tail,
        }
    }
}

impl BaseSequence {
    pub fn new(prefix: Vec<u64>, tail: Vec<u64>) -> Result<Self> {
        if tail.is_empty() || prefix.iter().chain(&tail).any(|&n| n < 2) {
            return Err(Error::InvalidBaseSequence);
        }
        Ok(BaseSequence { prefix, tail })
    }

    /// The constant sequence `n, n, n, …`.
    pub fn constant(n: u64) -> Result<Self> {
        BaseSequence::new(vec![], vec![n])
    }

    /// The purely periodic sequence repeating `pattern`.
    pub fn repeating(pattern: &[u64]) -> Result<Self> {
        BaseSequence::new(vec![], pattern.to_vec())
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> &[u64] {
        &self.tail
    }

    /// The entry `n_k`, 1-indexed.
    pub fn entry(&self, k: usize) -> Result<u64> {
        if k == 0 {
            return Err(Error::InvalidLevel);
        }
        Ok(if k <= self.prefix.len() {
            self.prefix[k - 1]
        } else {
            self.tail[(k - self.prefix.len() - 1) % self.tail.len()]
        })
    }

    /// The exact group order `N_k = n_1 n_2 ⋯ n_k` at level `k ≥ 1`.
    pub fn level_order(&self, k: usize) -> Result<BigUint> {
        if k == 0 {
            return Err(Error::InvalidLevel);
        }
        let mut acc = BigUint::one();
        for i in 1..=k {
            acc *= self.entry(i)?;
        }
        Ok(acc)
    }

    /// `N_k` as `u64`, or a cap error when it does not fit `cap`.
    pub fn level_order_capped(&self, k: usize, cap: u64) -> Result<u64> {
        let order = self.level_order(k)?;
        match order.to_u64() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::CapExceeded {
                what: "points",
                needed: order.to_u64().unwrap_or(u64::MAX),
                cap,
            }),
        }
    }

    /// Whether any entry strictly beyond level `k` is even. With a tail of
    /// all-odd entries this is decided by the remaining prefix alone.
    pub fn has_even_entry_beyond(&self, k: usize) -> bool {
        let prefix_rest = self.prefix.iter().skip(k).any(|&n| n % 2 == 0);
        prefix_rest || self.tail.iter().any(|&n| n % 2 == 0)
    }
}

/// An element of the inductive limit group: a permutation at its minimal
/// level. Constructors canonicalize, so two elements are equal iff their
/// sequences, levels and image tables coincide.
///
/// Serializes as `{"level": k, "images": [...]}`; deserialization needs the
/// base sequence as context, so it goes through [`GroupElement::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    seq: BaseSequence,
    level: usize,
    perm: Permutation,
}

impl serde::Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("GroupElement", 2)?;
        s.serialize_field("level", &self.level)?;
        s.serialize_field("images", &self.perm)?;
        s.end()
    }
}

impl GroupElement {
    /// Wraps a permutation of degree `N_k`, reducing it to the minimal level
    /// at which it is the image of the block-diagonal embedding.
    pub fn new(seq: BaseSequence, level: usize, perm: Permutation) -> Result<Self> {
        let order = seq.level_order(level)?;
        if BigUint::from(perm.degree()) != order {
            return Err(Error::DegreeMismatch {
                left: perm.degree(),
                right: order.to_usize().unwrap_or(usize::MAX),
            });
        }
        let (level, perm) = canonical_form(&seq, level, perm)?;
        Ok(GroupElement { seq, level, perm })
    }

    pub fn identity(seq: BaseSequence) -> Result<Self> {
        let n1 = seq.entry(1)? as usize;
        Ok(GroupElement {
            seq,
            level: 1,
            perm: Permutation::identity(n1),
        })
    }

    pub fn sequence(&self) -> &BaseSequence {
        &self.seq
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    /// Materializes the image of the element in `S_{N_j}`, `j ≥ level`, under
    /// the default point cap.
    pub fn embed(&self, j: usize) -> Result<Permutation> {
        self.embed_with_cap(j, DEFAULT_POINT_CAP)
    }

    pub fn embed_with_cap(&self, j: usize, cap: u64) -> Result<Permutation> {
        if j < self.level {
            return Err(Error::LevelBelowCurrent {
                current: self.level,
                requested: j,
            });
        }
        let target = self.seq.level_order_capped(j, cap)? as usize;
        Ok(embed_table(&self.perm, target))
    }

    /// Cycle type of the image in `S_{N_j}`, computed symbolically: every
    /// count scales by `N_j / N_k`.
    pub fn embedded_cycle_type(&self, j: usize) -> Result<CycleType> {
        if j < self.level {
            return Err(Error::LevelBelowCurrent {
                current: self.level,
                requested: j,
            });
        }
        let base = self.perm.cycle_type();
        let mut factor = 1u64;
        for i in self.level + 1..=j {
            factor = factor
                .checked_mul(self.seq.entry(i)?)
                .ok_or(Error::CapExceeded {
                    what: "cycle count scale",
                    needed: u64::MAX,
                    cap: u64::MAX,
                })?;
        }
        Ok(base.scaled(factor))
    }

    /// The natural character `1 - #supp/N`, an exact rational independent of
    /// the level at which the element is represented.
    pub fn chi_nat(&self) -> BigRational {
        let n = BigInt::from(self.perm.degree());
        let supp = BigInt::from(self.perm.support_size());
        BigRational::new(n.clone() - supp, n)
    }

    /// The stabilized sign: the eventually constant value of
    /// `sgn_{N_j} = sgn_{N_k}^{N_j/N_k}`. A negative sign at the element's
    /// level survives only when every later factor is odd.
    pub fn sgn_infinity(&self) -> i32 {
        let sign = self.perm.sign();
        if sign == 1 || self.seq.has_even_entry_beyond(self.level) {
            1
        } else {
            -1
        }
    }

    /// Embeds both operands to their maximal level and multiplies.
    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        self.multiply_with_cap(other, DEFAULT_POINT_CAP)
    }

    pub fn multiply_with_cap(&self, other: &GroupElement, cap: u64) -> Result<GroupElement> {
        if self.seq != other.seq {
            return Err(Error::InvalidInput(
                "elements belong to different inductive systems".to_string(),
            ));
        }
        let level = self.level.max(other.level);
        let a = self.embed_with_cap(level, cap)?;
        let b = other.embed_with_cap(level, cap)?;
        GroupElement::new(self.seq.clone(), level, a.compose(&b)?)
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            seq: self.seq.clone(),
            level: self.level,
            perm: self.perm.inverse(),
        }
    }
}

/// Applies the block-diagonal formula pointwise to extend a permutation of
/// `X_n` to `X_target`, where `n` divides `target`.
fn embed_table(perm: &Permutation, target: usize) -> Permutation {
    let n = perm.degree();
    let images = (0..target)
        .map(|x| perm.apply(x % n) + (x - x % n))
        .collect();
    Permutation::from_images(images).expect("block-diagonal image of a bijection")
}

/// The minimal level `k' ≤ k` at which the permutation is an embedded image,
/// together with the reduced permutation.
fn canonical_form(
    seq: &BaseSequence,
    level: usize,
    perm: Permutation,
) -> Result<(usize, Permutation)> {
    let degree = perm.degree();
    for candidate in 1..level {
        let order = match seq.level_order(candidate)?.to_usize() {
            Some(n) => n,
            None => break,
        };
        // perm must act block-periodically: perm(x) = perm(x mod order) + (x - x mod order).
        let periodic = (0..degree).all(|x| {
            let base = x % order;
            perm.apply(x) == perm.apply(base) + (x - base)
        });
        if periodic {
            let reduced =
                Permutation::from_images(perm.images()[..order].to_vec()).expect("restriction");
            return Ok((candidate, reduced));
        }
    }
    Ok((level, perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn seq_2() -> BaseSequence {
        BaseSequence::constant(2).unwrap()
    }

    fn seq_23() -> BaseSequence {
        BaseSequence::repeating(&[2, 3]).unwrap()
    }

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn level_order_examples() {
        assert_eq!(seq_2().level_order(3).unwrap(), BigUint::from(8u32));
        assert_eq!(seq_23().level_order(4).unwrap(), BigUint::from(36u32));
        let s66 = BaseSequence::constant(6).unwrap();
        assert_eq!(s66.level_order(2).unwrap(), BigUint::from(36u32));
    }

    #[test]
    fn base_sequence_validation() {
        assert!(BaseSequence::new(vec![2], vec![]).is_err());
        assert!(BaseSequence::new(vec![1], vec![2]).is_err());
        assert!(BaseSequence::new(vec![], vec![2, 1]).is_err());
    }

    #[test]
    fn embed_examples() {
        // (0 1) at level 1 of (2,2,...) embeds into S_4 as (0 1)(2 3).
        let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let g = GroupElement::new(seq_2(), 1, t).unwrap();
        assert_eq!(g.embed(2).unwrap().images(), &[1, 0, 3, 2]);

        let id = GroupElement::identity(seq_2()).unwrap();
        assert!(id.embed(3).unwrap().is_identity());

        // 3-cycle (0 1 2) at N=6 embeds into N=12 as (0 1 2)(6 7 8).
        let c = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let g = GroupElement::new(seq_23(), 2, c).unwrap();
        let e = g.embed(3).unwrap();
        let expected =
            Permutation::from_cycles(12, &[vec![0, 1, 2], vec![6, 7, 8]]).unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn embed_rejects_lower_level_and_cap() {
        let c = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let g = GroupElement::new(seq_23(), 2, c).unwrap();
        assert!(matches!(
            g.embed(1),
            Err(Error::LevelBelowCurrent { .. })
        ));
        assert!(matches!(
            g.embed_with_cap(10, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn embedded_cycle_type_examples() {
        let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let g = GroupElement::new(seq_23(), 1, t).unwrap();
        // N_2/N_1 = 3.
        assert_eq!(
            g.embedded_cycle_type(2).unwrap(),
            CycleType::from_counts(vec![0, 3])
        );

        let id = GroupElement::identity(seq_2()).unwrap();
        assert_eq!(
            id.embedded_cycle_type(3).unwrap(),
            CycleType::from_counts(vec![8])
        );

        let c = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let g = GroupElement::new(BaseSequence::repeating(&[6, 3]).unwrap(), 1, c).unwrap();
        assert_eq!(
            g.embedded_cycle_type(2).unwrap(),
            CycleType::from_counts(vec![9, 0, 3])
        );
    }

    #[test]
    fn canonicalize_examples() {
        // (0 1)(2 3) at N=4 over (2,2,...) reduces to (0 1) at level 1.
        let p = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let g = GroupElement::new(seq_2(), 2, p).unwrap();
        assert_eq!(g.level(), 1);
        assert_eq!(g.permutation().images(), &[1, 0]);

        // (0 1) at N=4 is not block-periodic, stays at level 2.
        let p = Permutation::from_cycles(4, &[vec![0, 1]]).unwrap();
        let g = GroupElement::new(seq_2(), 2, p).unwrap();
        assert_eq!(g.level(), 2);

        let g = GroupElement::new(seq_2(), 3, Permutation::identity(8)).unwrap();
        assert_eq!(g.level(), 1);
        assert!(g.is_identity());
    }

    #[test]
    fn canonicalize_inverts_embed() {
        let c = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let g = GroupElement::new(seq_23(), 2, c).unwrap();
        for j in 2..=4 {
            let e = g.embed(j).unwrap();
            let back = GroupElement::new(seq_23(), j, e).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn chi_nat_examples() {
        let id = GroupElement::identity(seq_2()).unwrap();
        assert_eq!(id.chi_nat(), ratio(1, 1));

        let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let g = GroupElement::new(seq_2(), 1, t).unwrap();
        assert!(g.chi_nat().is_zero());

        let c = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let g = GroupElement::new(seq_23(), 2, c).unwrap();
        assert_eq!(g.chi_nat(), ratio(1, 2));
    }

    #[test]
    fn chi_nat_is_level_invariant_exhaustive() {
        // Exhaustive over S_6 at level 2 of (2,3,2,3,...), embedded up to N=36.
        let seq = seq_23();
        let perms = all_permutations(6);
        for images in perms {
            let p = Permutation::from_images(images).unwrap();
            let g = GroupElement::new(seq.clone(), 2, p.clone()).unwrap();
            let chi = g.chi_nat();
            for j in 3..=4 {
                let e = g.embed(j).unwrap();
                let ge = GroupElement::new(seq.clone(), j, e.clone()).unwrap();
                assert_eq!(ge.chi_nat(), chi);
                // Symbolic cycle type agrees with the materialized one.
                assert_eq!(g.embedded_cycle_type(j).unwrap(), e.cycle_type());
                // Sign obeys the power rule.
                let factor = (seq.level_order(j).unwrap()
                    / seq.level_order(g.level()).unwrap())
                .to_u64()
                .unwrap();
                let expected = if factor % 2 == 0 { 1 } else { p.sign() };
                assert_eq!(e.sign(), expected);
            }
        }
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        permute(&mut items, 0, &mut out);
        out.sort();
        out
    }

    fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, out);
            items.swap(k, i);
        }
    }

    #[test]
    fn sgn_infinity_examples() {
        let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        // Next factor 2 squares the sign away.
        let g = GroupElement::new(seq_2(), 1, t.clone()).unwrap();
        assert_eq!(g.sgn_infinity(), 1);

        // All later factors odd: the sign survives.
        let seq = BaseSequence::new(vec![2], vec![3]).unwrap();
        let g = GroupElement::new(seq, 1, t).unwrap();
        assert_eq!(g.sgn_infinity(), -1);

        let id = GroupElement::identity(seq_2()).unwrap();
        assert_eq!(id.sgn_infinity(), 1);
    }

    #[test]
    fn sgn_infinity_is_representation_invariant() {
        let seq = BaseSequence::new(vec![2, 3, 3], vec![3]).unwrap();
        let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let g = GroupElement::new(seq.clone(), 1, t).unwrap();
        let embedded = g.embed(3).unwrap();
        let h = GroupElement::new(seq, 3, embedded).unwrap();
        assert_eq!(g.sgn_infinity(), h.sgn_infinity());
        assert_eq!(g.sgn_infinity(), -1);
    }

    #[test]
    fn sequence_json_roundtrip() {
        let seq = BaseSequence::new(vec![2], vec![3, 5]).unwrap();
        let js = serde_json::to_string(&seq).unwrap();
        assert_eq!(js, r#"{"prefix":[2],"tail":[3,5]}"#);
        let back: BaseSequence = serde_json::from_str(&js).unwrap();
        assert_eq!(back, seq);
        assert!(serde_json::from_str::<BaseSequence>(r#"{"prefix":[],"tail":[]}"#).is_err());
    }
}
