//! The odometer model at finite truncation: add-one-with-carry on mixed-radix
//! digit strings, level automorphisms, the degree cocycle, the disagreement
//! metric, the fixed-point trace, and the tower construction approximating a
//! finite symmetric group inside the digits of a deeper level.
//!
//! Digit strings `(x_1, …, x_K)` with `0 ≤ x_i < n_i` are identified with
//! points of `X_{N_K}` through `x = x_1 + n_1·x_2 + n_1n_2·x_3 + …`. Under
//! this encoding the level-K periodic odometer is `x ↦ x+1 (mod N_K)`, and
//! all measures of digit-defined sets are exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::embedding::{BaseSequence, GroupElement};
use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::DEFAULT_POINT_CAP;

/// A point of the digit space truncated at level `K`: digits `x_1..x_K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedPoint {
    digits: Vec<u64>,
}

impl TruncatedPoint {
    pub fn new(seq: &BaseSequence, digits: Vec<u64>) -> Result<Self> {
        for (i, &d) in digits.iter().enumerate() {
            if d >= seq.entry(i + 1)? {
                return Err(Error::InvalidInput(format!(
                    "digit {d} at position {} exceeds radix {}",
                    i + 1,
                    seq.entry(i + 1)?
                )));
            }
        }
        Ok(TruncatedPoint { digits })
    }

    pub fn zero(level: usize) -> Self {
        TruncatedPoint {
            digits: vec![0; level],
        }
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn level(&self) -> usize {
        self.digits.len()
    }

    /// Mixed-radix value `x_1 + n_1 x_2 + n_1 n_2 x_3 + …`.
    pub fn encode(&self, seq: &BaseSequence) -> Result<u64> {
        let mut value = 0u64;
        let mut weight = 1u64;
        for (i, &d) in self.digits.iter().enumerate() {
            value += d * weight;
            weight *= seq.entry(i + 1)?;
        }
        Ok(value)
    }

    pub fn decode(seq: &BaseSequence, level: usize, mut value: u64) -> Result<Self> {
        let mut digits = Vec::with_capacity(level);
        for i in 1..=level {
            let radix = seq.entry(i)?;
            digits.push(value % radix);
            value /= radix;
        }
        if value != 0 {
            return Err(Error::InvalidInput(
                "value exceeds the truncated space".to_string(),
            ));
        }
        Ok(TruncatedPoint { digits })
    }
}

/// Add-one-with-carry; the all-maximal point wraps to all zeros. This is the
/// level-K periodic odometer.
pub fn odometer_step(seq: &BaseSequence, x: &TruncatedPoint) -> Result<TruncatedPoint> {
    let mut digits = x.digits().to_vec();
    for (i, d) in digits.iter_mut().enumerate() {
        let radix = seq.entry(i + 1)?;
        if *d + 1 < radix {
            *d += 1;
            return Ok(TruncatedPoint { digits });
        }
        *d = 0;
    }
    Ok(TruncatedPoint { digits })
}

/// A measure-preserving automorphism of the level-K truncated space, as a
/// permutation of the encoded points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAutomorphism {
    level: usize,
    #[serde(rename = "images")]
    perm: Permutation,
}

impl LevelAutomorphism {
    pub fn new(seq: &BaseSequence, level: usize, perm: Permutation) -> Result<Self> {
        let order = seq.level_order_capped(level, DEFAULT_POINT_CAP)?;
        if perm.degree() as u64 != order {
            return Err(Error::DegreeMismatch {
                left: perm.degree(),
                right: order as usize,
            });
        }
        Ok(LevelAutomorphism { level, perm })
    }

    pub fn identity(seq: &BaseSequence, level: usize) -> Result<Self> {
        let order = seq.level_order_capped(level, DEFAULT_POINT_CAP)? as usize;
        Ok(LevelAutomorphism {
            level,
            perm: Permutation::identity(order),
        })
    }

    /// The embedded image of a group element at the given level.
    pub fn from_group_element(g: &GroupElement, level: usize) -> Result<Self> {
        Ok(LevelAutomorphism {
            level,
            perm: g.embed(level)?,
        })
    }

    /// The level-K periodic odometer `x ↦ x+1 (mod N_K)`.
    pub fn periodic_odometer(seq: &BaseSequence, level: usize) -> Result<Self> {
        let order = seq.level_order_capped(level, DEFAULT_POINT_CAP)? as usize;
        let images = (0..order).map(|x| (x + 1) % order).collect();
        Ok(LevelAutomorphism {
            level,
            perm: Permutation::from_images(images).expect("cyclic shift"),
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn apply(&self, seq: &BaseSequence, x: &TruncatedPoint) -> Result<TruncatedPoint> {
        if x.level() != self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: x.level(),
            });
        }
        let encoded = x.encode(seq)?;
        TruncatedPoint::decode(seq, self.level, self.perm.apply(encoded as usize) as u64)
    }

    pub fn compose(&self, other: &LevelAutomorphism) -> Result<LevelAutomorphism> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(LevelAutomorphism {
            level: self.level,
            perm: self.perm.compose(&other.perm)?,
        })
    }

    pub fn inverse(&self) -> LevelAutomorphism {
        LevelAutomorphism {
            level: self.level,
            perm: self.perm.inverse(),
        }
    }
}

/// The degree of `σ` at `x`: the minimal `d ≥ 0` with `O^d(x) = σ(x)` under
/// the level-K periodic odometer, which is the encoded difference mod `N_K`.
pub fn degree(
    seq: &BaseSequence,
    sigma: &LevelAutomorphism,
    x: &TruncatedPoint,
) -> Result<u64> {
    if x.level() != sigma.level() {
        return Err(Error::LevelMismatch {
            left: sigma.level(),
            right: x.level(),
        });
    }
    let order = sigma.permutation().degree() as u64;
    let from = x.encode(seq)?;
    let to = sigma.permutation().apply(from as usize) as u64;
    Ok((to + order - from) % order)
}

///`(d(γσ, x) - d(γ, σx) - d(σ, x)) mod N_K`; the cocycle identity makes it 0.
pub fn cocycle_residual(
    seq: &BaseSequence,
    gamma: &LevelAutomorphism,
    sigma: &LevelAutomorphism,
    x: &TruncatedPoint,
) -> Result<u64> {
    let product = gamma.compose(sigma)?;
    let sigma_x = sigma.apply(seq, x)?;
    let order = sigma.permutation().degree() as u64;
    let lhs = degree(seq, &product, x)?;
    let rhs = (degree(seq, gamma, &sigma_x)? + degree(seq, sigma, x)?) % order;
    Ok((lhs + order - rhs) % order)
}

/// Exact fraction of points where the two automorphisms disagree.
pub fn rho(alpha: &LevelAutomorphism, beta: &LevelAutomorphism) -> Result<BigRational> {
    if alpha.level() != beta.level() {
        return Err(Error::LevelMismatch {
            left: alpha.level(),
            right: beta.level(),
        });
    }
    let n = alpha.permutation().degree();
    let disagreements = (0..n)
        .filter(|&x| alpha.permutation().apply(x) != beta.permutation().apply(x))
        .count();
    Ok(BigRational::new(
        BigInt::from(disagreements),
        BigInt::from(n),
    ))
}

/// Exact fraction of fixed points; equal to the natural character of the
/// corresponding group element.
pub fn fixed_fraction(sigma: &LevelAutomorphism) -> BigRational {
    let n = sigma.permutation().degree();
    let fixed = n - sigma.permutation().support_size();
    BigRational::new(BigInt::from(fixed), BigInt::from(n))
}

/// The tower construction at levels `1 ≤ p < q < r`: writes `N_r/N_q` as
/// `N_p·m + rem`, builds the involution `Θ` exchanging the first-coordinate
/// value with the tower-block index, and the injective homomorphism `𝔍`
/// realizing `S_{N_p}` on the digits `q+1..r` alone.
#[derive(Debug, Clone)]
pub struct TowerApproximation {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub m: u64,
    pub rem: u64,
    pub theta: LevelAutomorphism,
    /// `(σ, 𝔍(σ))` for every `σ ∈ S_{N_p}`, in lexicographic order of the
    /// image tables.
    pub homomorphism: Vec<(Permutation, LevelAutomorphism)>,
}

/// Blocks here are the cylinders on the digits `q+1..r`: the point `x`
/// belongs to block `v = x div N_q`, `0 ≤ v < N_r/N_q`. Tower block `k`
/// (for `k < N_p`) is the union of blocks `km..(k+1)m`; the last `rem`
/// blocks stay outside every tower block.
pub fn tower_approximation(
    seq: &BaseSequence,
    p: usize,
    q: usize,
    r: usize,
) -> Result<TowerApproximation> {
    tower_approximation_with_cap(seq, p, q, r, DEFAULT_POINT_CAP)
}

pub fn tower_approximation_with_cap(
    seq: &BaseSequence,
    p: usize,
    q: usize,
    r: usize,
    cap: u64,
) -> Result<TowerApproximation> {
    if p < 1 || p >= q || q >= r {
        return Err(Error::InvalidInput(format!(
            "levels must satisfy 1 <= p < q < r, got ({p}, {q}, {r})"
        )));
    }
    let n_p = seq.level_order_capped(p, cap)?;
    let n_q = seq.level_order_capped(q, cap)?;
    let n_r = seq.level_order_capped(r, cap)?;
    let blocks = n_r / n_q;
    if blocks <= n_p {
        return Err(Error::InvalidInput(format!(
            "N_r/N_q = {blocks} must exceed N_p = {n_p}"
        )));
    }
    let m = blocks / n_p;
    let rem = blocks % n_p;

    // Group order N_p! for the homomorphism table.
    let mut group_order = 1u64;
    for k in 1..=n_p {
        group_order = group_order.saturating_mul(k);
    }
    if group_order > cap {
        return Err(Error::CapExceeded {
            what: "group order",
            needed: group_order,
            cap,
        });
    }

    let covered = n_p * m; // blocks inside the tower
    let theta_images: Vec<usize> = (0..n_r)
        .map(|x| {
            let v = x / n_q;
            if v >= covered {
                return x as usize;
            }
            let block = v / m;
            let offset = v % m;
            let u = x % n_p;
            // Swap the first-coordinate value with the tower-block index.
            let new_v = u * m + offset;
            let base = (x % n_q) - (x % n_p) + block;
            (base + n_q * new_v) as usize
        })
        .collect();
    let theta = LevelAutomorphism::new(
        seq,
        r,
        Permutation::from_images(theta_images)?,
    )?;

    let mut homomorphism = Vec::with_capacity(group_order as usize);
    for sigma in all_permutations(n_p as usize) {
        let images: Vec<usize> = (0..n_r)
            .map(|x| {
                let v = x / n_q;
                if v >= covered {
                    return x as usize;
                }
                let block = v / m;
                let offset = v % m;
                let new_v = sigma.apply(block as usize) as u64 * m + offset;
                ((x % n_q) + n_q * new_v) as usize
            })
            .collect();
        let image = LevelAutomorphism::new(seq, r, Permutation::from_images(images)?)?;
        homomorphism.push((sigma, image));
    }

    Ok(TowerApproximation {
        p,
        q,
        r,
        m,
        rem,
        theta,
        homomorphism,
    })
}

impl TowerApproximation {
    /// Exact `ρ(ΘσΘ⁻¹, 𝔍(σ))` for `σ ∈ S_{N_p}`, conjugating the embedded
    /// image of `σ` at level `r` by `Θ`.
    pub fn conjugation_defect(
        &self,
        seq: &BaseSequence,
        sigma: &Permutation,
    ) -> Result<BigRational> {
        let g = GroupElement::new(seq.clone(), self.p, sigma.clone())?;
        let embedded = LevelAutomorphism::from_group_element(&g, self.r)?;
        let conjugated = self
            .theta
            .compose(&embedded)?
            .compose(&self.theta.inverse())?;
        let image = self
            .homomorphism
            .iter()
            .find(|(s, _)| s == sigma)
            .map(|(_, j)| j)
            .ok_or_else(|| Error::InvalidInput("permutation not in S_{N_p}".to_string()))?;
        rho(&conjugated, image)
    }

    /// The guaranteed defect bound `1/m`.
    pub fn bound(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.m))
    }
}

/// All permutations of `{0..n-1}` in lexicographic order of image tables.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation::from_images(images.clone()).expect("permutation"));
        // Next lexicographic permutation.
        let Some(i) = (0..images.len().saturating_sub(1))
            .rev()
            .find(|&i| images[i] < images[i + 1])
        else {
            break;
        };
        let j = (i + 1..images.len())
            .rev()
            .find(|&j| images[j] > images[i])
            .expect("successor exists");
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    out
}
