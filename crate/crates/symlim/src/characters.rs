//! The limit characters on the inductive system: powers of the natural
//! character, their sign twists, and the delta character, together with
//! finite-sample checks of the character axioms (centrality and positive
//! semidefiniteness of Gram matrices).

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::embedding::GroupElement;
use crate::error::{Error, Result};
use crate::DEFAULT_POINT_CAP;

/// Symbolic description of a limit character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CharacterSpec {
    /// `χ_nat^p`.
    NatPower { p: u32 },
    /// `sgn_∞ · χ_nat^p`.
    SgnNatPower { p: u32 },
    /// 1 at the identity, 0 elsewhere.
    Delta,
}

impl CharacterSpec {
    /// Exact value of the character on a group element.
    pub fn evaluate(&self, g: &GroupElement) -> BigRational {
        match *self {
            CharacterSpec::NatPower { p } => g.chi_nat().pow(p as i32),
            CharacterSpec::SgnNatPower { p } => {
                let value = g.chi_nat().pow(p as i32);
                if g.sgn_infinity() < 0 {
                    -value
                } else {
                    value
                }
            }
            CharacterSpec::Delta => {
                if g.is_identity() {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
        }
    }
}

/// Gram matrix `[χ(g_i g_j^{-1})]` over the sample, and the smallest
/// eigenvalue of its symmetric part. Passes when that eigenvalue is at least
/// `-tol`. Elements are auto-embedded to their maximal level.
pub fn gram_psd_check(
    spec: CharacterSpec,
    elements: &[GroupElement],
    tol: f64,
) -> Result<(f64, bool)> {
    gram_psd_check_with_cap(spec, elements, tol, DEFAULT_POINT_CAP)
}

pub fn gram_psd_check_with_cap(
    spec: CharacterSpec,
    elements: &[GroupElement],
    tol: f64,
    cap: u64,
) -> Result<(f64, bool)> {
    let k = elements.len();
    if k == 0 {
        return Ok((0.0, true));
    }
    let mut gram = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let product = elements[i].multiply_with_cap(&elements[j].inverse(), cap)?;
            let value = spec
                .evaluate(&product)
                .to_f64()
                .ok_or_else(|| Error::InvalidInput("character value overflows f64".into()))?;
            gram[(i, j)] = value;
            gram[(j, i)] = value;
        }
    }
    let eigenvalues = gram.symmetric_eigenvalues();
    let min_eigenvalue = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((min_eigenvalue, min_eigenvalue >= -tol))
}

/// Exact centrality `χ(gh) = χ(hg)` over the given pairs.
pub fn centrality_check(
    spec: CharacterSpec,
    pairs: &[(GroupElement, GroupElement)],
) -> Result<bool> {
    for (g, h) in pairs {
        let gh = g.multiply(h)?;
        let hg = h.multiply(g)?;
        if spec.evaluate(&gh) != spec.evaluate(&hg) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `max |χ(g)|` over `χ_nat^p` and `sgn_∞·χ_nat^p`, `1 ≤ p ≤ p_max`,
/// equals `χ_nat(g)` exactly. The identity is rejected: there the maximum is
/// attained by every power.
pub fn max_character_identity(g: &GroupElement, p_max: u32) -> Result<bool> {
    if g.is_identity() {
        return Err(Error::IdentityInput(
            "the maximum-character identity concerns non-identity elements",
        ));
    }
    let mut best = BigRational::zero();
    for p in 1..=p_max {
        for spec in [CharacterSpec::NatPower { p }, CharacterSpec::SgnNatPower { p }] {
            let value = spec.evaluate(g).abs();
            if value > best {
                best = value;
            }
        }
    }
    Ok(best == g.chi_nat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::BaseSequence;
    use crate::permgroup::Permutation;
    use num_bigint::BigInt;
    use rand::prelude::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn seq_23() -> BaseSequence {
        BaseSequence::repeating(&[2, 3]).unwrap()
    }

    fn three_cycle_at_level_2() -> GroupElement {
        let p = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        GroupElement::new(seq_23(), 2, p).unwrap()
    }

    fn random_element(
        seq: &BaseSequence,
        level: usize,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> GroupElement {
        let n = seq
            .level_order_capped(level, crate::DEFAULT_POINT_CAP)
            .unwrap() as usize;
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        GroupElement::new(seq.clone(), level, Permutation::from_images(images).unwrap()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let id = GroupElement::identity(seq_23()).unwrap();
        assert_eq!(CharacterSpec::Delta.evaluate(&id), ratio(1, 1));
        let g = three_cycle_at_level_2();
        assert_eq!(CharacterSpec::Delta.evaluate(&g), ratio(0, 1));

        assert_eq!(CharacterSpec::NatPower { p: 0 }.evaluate(&g), ratio(1, 1));
        assert_eq!(CharacterSpec::NatPower { p: 2 }.evaluate(&g), ratio(1, 4));
    }

    #[test]
    fn sign_twist_changes_only_the_sign() {
        // A transposition with all-odd later factors keeps sgn_∞ = -1.
        let seq = BaseSequence::new(vec![2], vec![3]).unwrap();
        let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let g = GroupElement::new(seq.clone(), 1, t).unwrap();
        // χ_nat = 0 here, so use a 3-cycle at level 2 (N=6) instead.
        let c = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let h = GroupElement::new(seq, 2, c).unwrap();
        assert_eq!(h.sgn_infinity(), 1); // even permutation
        assert_eq!(
            CharacterSpec::SgnNatPower { p: 1 }.evaluate(&h),
            CharacterSpec::NatPower { p: 1 }.evaluate(&h)
        );
        let _ = g;
    }

    #[test]
    fn magnitude_at_most_one_and_conjugation_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x11);
        let seq = seq_23();
        for _ in 0..30 {
            let g = random_element(&seq, 2, &mut rng);
            let h = random_element(&seq, 2, &mut rng);
            for spec in [
                CharacterSpec::NatPower { p: 1 },
                CharacterSpec::NatPower { p: 3 },
                CharacterSpec::SgnNatPower { p: 2 },
                CharacterSpec::Delta,
            ] {
                let value = spec.evaluate(&g);
                assert!(value.abs() <= ratio(1, 1));
                let conj = h.multiply(&g).unwrap().multiply(&h.inverse()).unwrap();
                assert_eq!(spec.evaluate(&conj), value);
            }
        }
    }

    #[test]
    fn equality_one_only_at_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x12);
        let seq = seq_23();
        for _ in 0..30 {
            let g = random_element(&seq, 2, &mut rng);
            if g.is_identity() {
                continue;
            }
            assert!(CharacterSpec::NatPower { p: 1 }.evaluate(&g) < ratio(1, 1));
        }
    }

    #[test]
    fn disjoint_supports_add() {
        // supp(στ) = supp(σ) + supp(τ) for disjointly supported factors,
        // hence χ_nat(στ) = χ_nat(σ) + χ_nat(τ) - 1.
        let seq = seq_23();
        let a = Permutation::from_cycles(6, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(6, &[vec![3, 4, 5]]).unwrap();
        let ga = GroupElement::new(seq.clone(), 2, a.clone()).unwrap();
        let gb = GroupElement::new(seq.clone(), 2, b.clone()).unwrap();
        let gab = ga.multiply(&gb).unwrap();
        assert_eq!(
            a.compose(&b).unwrap().support_size(),
            a.support_size() + b.support_size()
        );
        assert_eq!(
            gab.chi_nat(),
            ga.chi_nat() + gb.chi_nat() - ratio(1, 1)
        );
    }

    #[test]
    fn gram_examples() {
        let id = GroupElement::identity(seq_23()).unwrap();
        let (min_eig, pass) =
            gram_psd_check(CharacterSpec::NatPower { p: 1 }, &[id.clone()], 1e-8).unwrap();
        assert!(pass && (min_eig - 1.0).abs() < 1e-12);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x13);
        let elements: Vec<GroupElement> = (0..8)
            .map(|_| random_element(&seq_23(), 2, &mut rng))
            .collect();
        let (_, pass) = gram_psd_check(CharacterSpec::Delta, &elements, 1e-8).unwrap();
        assert!(pass);
        let (min_eig, pass) =
            gram_psd_check(CharacterSpec::NatPower { p: 2 }, &elements, 1e-8).unwrap();
        assert!(pass, "min eigenvalue {min_eig}");
    }

    #[test]
    fn centrality_examples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x14);
        let seq = seq_23();
        let pairs: Vec<_> = (0..50)
            .map(|_| {
                (
                    random_element(&seq, 2, &mut rng),
                    random_element(&seq, 2, &mut rng),
                )
            })
            .collect();
        assert!(centrality_check(CharacterSpec::NatPower { p: 1 }, &pairs).unwrap());
        assert!(centrality_check(CharacterSpec::SgnNatPower { p: 3 }, &pairs).unwrap());
    }

    #[test]
    fn max_character_examples() {
        // Transposition at N=2: χ_nat = 0 and every power vanishes.
        let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let g = GroupElement::new(BaseSequence::constant(2).unwrap(), 1, t).unwrap();
        assert!(max_character_identity(&g, 6).unwrap());

        // 3-cycle at N=6: χ_nat = 1/2, attained at p = 1.
        let g = three_cycle_at_level_2();
        assert!(max_character_identity(&g, 6).unwrap());

        // Two disjoint transpositions at N=6: χ_nat = 1/3.
        let p = Permutation::from_cycles(6, &[vec![0, 1], vec![2, 3]]).unwrap();
        let g = GroupElement::new(seq_23(), 2, p).unwrap();
        assert_eq!(g.chi_nat(), ratio(1, 3));
        assert!(max_character_identity(&g, 6).unwrap());

        let id = GroupElement::identity(seq_23()).unwrap();
        assert!(max_character_identity(&id, 6).is_err());
    }

    #[test]
    fn spec_json_format() {
        assert_eq!(
            serde_json::to_string(&CharacterSpec::NatPower { p: 2 }).unwrap(),
            r#"{"kind":"nat_power","p":2}"#
        );
        assert_eq!(
            serde_json::to_string(&CharacterSpec::Delta).unwrap(),
            r#"{"kind":"delta"}"#
        );
        let spec: CharacterSpec =
            serde_json::from_str(r#"{"kind":"sgn_nat_power","p":1}"#).unwrap();
        assert_eq!(spec, CharacterSpec::SgnNatPower { p: 1 });
    }
}
