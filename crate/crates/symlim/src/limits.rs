//! Desk-scale convergence experiments: normalized characters of a fixed
//! group element along families of shapes whose first-row (or first-column)
//! tail is a fixed partition, against the exact limit value, and divergence
//! runs along shapes whose tail grows.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::characters::CharacterSpec;
use crate::embedding::{BaseSequence, GroupElement};
use crate::error::{Error, Result};
use crate::partitions::{near_row_shape, Partition};
use crate::yor::YorSpace;
use crate::{DEFAULT_DIM_CAP, DEFAULT_POINT_CAP};

/// Resource caps for a run.
#[derive(Debug, Clone, Copy)]
pub struct RunCaps {
    pub dim_cap: u64,
    pub point_cap: u64,
}

impl Default for RunCaps {
    fn default() -> Self {
        RunCaps {
            dim_cap: DEFAULT_DIM_CAP,
            point_cap: DEFAULT_POINT_CAP,
        }
    }
}

/// One level of a convergence run.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub level: usize,
    pub n: u64,
    pub lambda: Partition,
    pub chi: f64,
    pub target: BigRational,
    pub deviation: f64,
}

impl Serialize for ConvergenceRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ConvergenceRow", 6)?;
        s.serialize_field("level", &self.level)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("lambda", &self.lambda)?;
        s.serialize_field("chi", &self.chi)?;
        s.serialize_field("target", &self.target.to_string())?;
        s.serialize_field("deviation", &self.deviation)?;
        s.end()
    }
}

/// A character sequence along the class of shapes with fixed tail `μ`
/// (first-row tail; first-column tail when `transposed`), evaluated on the
/// embedded images of one group element.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRun {
    pub mu: Partition,
    pub transposed: bool,
    pub levels: Vec<usize>,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceRun {
    pub fn final_deviation(&self) -> Option<f64> {
        self.rows.last().map(|r| r.deviation)
    }
}

/// Runs the convergence experiment. The target is the exact limit value
/// `χ_nat(σ)^{|μ|}`, twisted by `sgn_∞(σ)` for transposed runs.
pub fn convergence_run(
    seq: &BaseSequence,
    sigma: &GroupElement,
    mu: &Partition,
    transposed: bool,
    levels: &[usize],
    caps: RunCaps,
) -> Result<ConvergenceRun> {
    let power = mu.size() as u32;
    let spec = if transposed {
        CharacterSpec::SgnNatPower { p: power }
    } else {
        CharacterSpec::NatPower { p: power }
    };
    let target = spec.evaluate(sigma);
    let target_f64 = target
        .to_f64()
        .ok_or_else(|| Error::InvalidInput("target does not fit f64".into()))?;

    let mut rows = Vec::with_capacity(levels.len());
    for &level in levels {
        let n = seq.level_order_capped(level, caps.point_cap)?;
        let mut lambda = near_row_shape(mu, n as usize)?;
        if transposed {
            lambda = lambda.transpose();
        }
        let space = YorSpace::with_cap(lambda.clone(), caps.dim_cap)?;
        let embedded = sigma.embed_with_cap(level, caps.point_cap)?;
        let chi = space.normalized_character(&embedded)?;
        rows.push(ConvergenceRow {
            level,
            n,
            lambda,
            chi,
            target: target.clone(),
            deviation: (chi - target_f64).abs(),
        });
    }
    Ok(ConvergenceRun {
        mu: mu.clone(),
        transposed,
        levels: levels.to_vec(),
        rows,
    })
}

/// Rule choosing the second row `r` of the divergence shapes `(N-r, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondRowRule {
    /// A fixed second row.
    Fixed(usize),
    /// `r = ⌊ln N⌋`, keeping the dimension polynomial in `N`.
    LogNatural,
}

impl SecondRowRule {
    fn second_row(&self, n: u64) -> usize {
        match *self {
            SecondRowRule::Fixed(r) => r,
            SecondRowRule::LogNatural => (n as f64).ln().floor() as usize,
        }
    }
}

/// One level of a divergence run.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceRow {
    pub level: usize,
    pub n: u64,
    pub lambda: Partition,
    pub chi_abs: f64,
}

/// Character magnitudes along shapes whose tail grows with the level; for a
/// non-identity element they decay toward zero.
pub fn divergence_run(
    seq: &BaseSequence,
    sigma: &GroupElement,
    rule: SecondRowRule,
    levels: &[usize],
    caps: RunCaps,
) -> Result<Vec<DivergenceRow>> {
    let mut rows = Vec::with_capacity(levels.len());
    for &level in levels {
        let n = seq.level_order_capped(level, caps.point_cap)?;
        let r = rule.second_row(n);
        if r < 1 || n < 2 * r as u64 {
            return Err(Error::InvalidInput(format!(
                "second row {r} does not fit an {n}-cell two-row shape"
            )));
        }
        let lambda = Partition::new(vec![n as usize - r, r])?;
        let space = YorSpace::with_cap(lambda.clone(), caps.dim_cap)?;
        let embedded = sigma.embed_with_cap(level, caps.point_cap)?;
        let chi = space.normalized_character(&embedded)?;
        rows.push(DivergenceRow {
            level,
            n,
            lambda,
            chi_abs: chi.abs(),
        });
    }
    Ok(rows)
}
