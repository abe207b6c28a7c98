//! Young orthogonal representations: generator action on the tableau basis,
//! normalized irreducible characters, the diagonal product formula for
//! minimal class representatives, and the character-magnitude envelope check.
//!
//! Matrix entries involve `√(1-1/d²)` and are kept in `f64`; dimensions and
//! tableau counts stay exact.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition, Tableau};
use crate::permgroup::{CycleType, Permutation};
use crate::DEFAULT_DIM_CAP;

/// A vector in the representation space of a shape, sparse over the tableau
/// basis. Indices refer to the shape's tableaux in row-reading order.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    shape: Partition,
    coefficients: BTreeMap<usize, f64>,
}

impl SparseVector {
    pub fn basis_vector(shape: Partition, index: usize) -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(index, 1.0);
        SparseVector {
            shape,
            coefficients,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn coefficient(&self, index: usize) -> f64 {
        self.coefficients.get(&index).copied().unwrap_or(0.0)
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, f64> {
        &self.coefficients
    }

    pub fn norm_squared(&self) -> f64 {
        self.coefficients.values().map(|c| c * c).sum()
    }
}

/// The representation space of one shape: its standard tableaux in
/// row-reading order plus a reverse index for the adjacent-swap action.
pub struct YorSpace {
    shape: Partition,
    tableaux: Vec<Tableau>,
    index_by_row_word: HashMap<Vec<u8>, usize>,
}

impl YorSpace {
    pub fn new(shape: Partition) -> Result<Self> {
        Self::with_cap(shape, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(shape: Partition, dim_cap: u64) -> Result<Self> {
        let tableaux = shape.standard_tableaux(dim_cap)?;
        let index_by_row_word = tableaux
            .iter()
            .enumerate()
            .map(|(i, t)| (t.row_word(), i))
            .collect();
        Ok(YorSpace {
            shape,
            tableaux,
            index_by_row_word,
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn index_of(&self, tableau: &Tableau) -> Option<usize> {
        self.index_by_row_word.get(&tableau.row_word()).copied()
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        let n = self.shape.size();
        if i == 0 || i + 1 > n || n < 2 {
            return Err(Error::GeneratorOutOfRange {
                index: i,
                max: n.saturating_sub(1),
            });
        }
        Ok(())
    }

    /// The action of the Coxeter generator `s_i` on a single basis vector:
    /// `+v_T` when `i` and `i+1` share a row of `T`, `-v_T` when they share a
    /// column, and otherwise the two-dimensional block with diagonal `1/d`,
    /// `d = a_{i+1} - a_i` the content difference measured in `T`.
    fn apply_generator_to_basis(&self, i: usize, t: usize) -> (f64, Option<(usize, f64)>) {
        let tab = &self.tableaux[t];
        let (r1, c1) = tab.row_col(i);
        let (r2, c2) = tab.row_col(i + 1);
        if r1 == r2 {
            return (1.0, None);
        }
        if c1 == c2 {
            return (-1.0, None);
        }
        let d = (tab.content(i + 1) - tab.content(i)) as f64;
        let diag = 1.0 / d;
        let off = (1.0 - diag * diag).sqrt();
        let partner = tab.swap_adjacent(i).expect("different rows and columns");
        let partner_idx = self
            .index_by_row_word
            .get(&partner.row_word())
            .copied()
            .expect("adjacent swap of a standard tableau is standard");
        (diag, Some((partner_idx, off)))
    }

    /// Applies `s_i` to a sparse vector.
    pub fn apply_generator(&self, i: usize, v: &SparseVector) -> Result<SparseVector> {
        self.check_generator(i)?;
        let mut out: BTreeMap<usize, f64> = BTreeMap::new();
        for (&t, &coeff) in &v.coefficients {
            let (diag, off) = self.apply_generator_to_basis(i, t);
            *out.entry(t).or_insert(0.0) += coeff * diag;
            if let Some((partner, weight)) = off {
                *out.entry(partner).or_insert(0.0) += coeff * weight;
            }
        }
        out.retain(|_, c| *c != 0.0);
        Ok(SparseVector {
            shape: v.shape.clone(),
            coefficients: out,
        })
    }

    /// Applies a Coxeter word (rightmost letter first) to a sparse vector.
    pub fn apply_word(&self, letters: &[usize], v: &SparseVector) -> Result<SparseVector> {
        let mut acc = v.clone();
        for &j in letters.iter().rev() {
            acc = self.apply_generator(j, &acc)?;
        }
        Ok(acc)
    }

    /// The normalized character `Tr ℛ(σ) / dim`, evaluated by decomposing `σ`
    /// into its adjacent-transposition word and applying it to every basis
    /// vector, summing the diagonal coefficients.
    pub fn normalized_character(&self, sigma: &Permutation) -> Result<f64> {
        if sigma.degree() != self.shape.size() {
            return Err(Error::DegreeMismatch {
                left: sigma.degree(),
                right: self.shape.size(),
            });
        }
        let word = sigma.coxeter_word();
        let letters = word.letters();
        let mut trace = 0.0;
        for t in 0..self.dimension() {
            let v = SparseVector::basis_vector(self.shape.clone(), t);
            let image = self.apply_word(letters, &v)?;
            trace += image.coefficient(t);
        }
        Ok(trace / self.dimension() as f64)
    }

    /// Normalized character of a whole conjugacy class through its minimal
    /// representative: that word is strictly increasing, so each diagonal
    /// entry is the plain product of per-letter diagonal factors and the
    /// trace costs one pass over the tableaux per letter.
    pub fn class_character(&self, ct: &CycleType) -> Result<f64> {
        let n = self.shape.size();
        let (_, word) = ct.minimal_element(n)?;
        let mut trace = 0.0;
        for tab in &self.tableaux {
            trace += signed_diagonal_product(tab, word.letters());
        }
        Ok(trace / self.dimension() as f64)
    }
}

/// Signed diagonal entry `(ℛ(σ)v_T, v_T)` for a strictly increasing word:
/// the product over letters of `+1` (same row), `-1` (same column) or `1/d`.
fn signed_diagonal_product(tab: &Tableau, letters: &[usize]) -> f64 {
    let mut product = 1.0;
    for &i in letters {
        let (r1, c1) = tab.row_col(i);
        let (r2, c2) = tab.row_col(i + 1);
        if r1 == r2 {
            // factor +1
        } else if c1 == c2 {
            product = -product;
        } else {
            product /= (tab.content(i + 1) - tab.content(i)) as f64;
        }
    }
    product
}

/// Magnitude of the diagonal matrix element of the minimal class
/// representative on the basis vector of `tableau`: the product of
/// `1/|a_{i+1} - a_i|` over the word letters whose entries sit in different
/// rows and different columns of the tableau.
pub fn minimal_diagonal_entry(tableau: &Tableau, ct: &CycleType) -> Result<f64> {
    let n = tableau.size();
    let (_, word) = ct.minimal_element(n)?;
    let mut product = 1.0;
    for &i in word.letters() {
        let (r1, c1) = tableau.row_col(i);
        let (r2, c2) = tableau.row_col(i + 1);
        if r1 != r2 && c1 != c2 {
            product /= (tableau.content(i + 1) - tableau.content(i)).unsigned_abs() as f64;
        }
    }
    Ok(product)
}

/// Character-magnitude envelope `(max{λ₁/N, λ₁'/N, a})^{b·#supp σ}` and
/// whether `|χ_λ(σ)|` stays below it. Requires at least 4 cells.
pub fn roichman_bound(
    shape: &Partition,
    sigma: &Permutation,
    a: f64,
    b: f64,
) -> Result<(f64, bool)> {
    let n = shape.size();
    if n < 4 {
        return Err(Error::BelowBoundHypothesis { n });
    }
    let space = YorSpace::new(shape.clone())?;
    let chi = space.normalized_character(sigma)?;
    let base = (shape.first_part() as f64 / n as f64)
        .max(shape.transpose().first_part() as f64 / n as f64)
        .max(a);
    let bound = base.powf(b * sigma.support_size() as f64);
    Ok((bound, chi.abs() <= bound))
}

/// One envelope case: a shape, a class, and the data deciding whether the
/// envelope with constants `(a, b)` covers it.
#[derive(Debug, Clone)]
pub struct EnvelopeCase {
    pub shape: Partition,
    pub class: CycleType,
    pub chi_abs: f64,
    pub support: u64,
    pub shape_ratio: f64,
}

/// Exhaustive character magnitudes for all shapes and classes of `S_N`,
/// `n_lo ≤ N ≤ n_hi`, with the per-case shape ratio `max{λ₁/N, λ₁'/N}`.
pub fn envelope_cases(n_lo: usize, n_hi: usize) -> Result<Vec<EnvelopeCase>> {
    let mut cases = Vec::new();
    for n in n_lo..=n_hi {
        for shape in partitions_of(n) {
            let space = YorSpace::new(shape.clone())?;
            let ratio = (shape.first_part() as f64 / n as f64)
                .max(shape.transpose().first_part() as f64 / n as f64);
            for class in crate::permgroup::cycle_types_of_degree(n) {
                let chi = space.class_character(&class)?;
                cases.push(EnvelopeCase {
                    shape: shape.clone(),
                    class: class.clone(),
                    chi_abs: chi.abs(),
                    support: class.support_size(),
                    shape_ratio: ratio,
                });
            }
        }
    }
    Ok(cases)
}

/// For a fixed exponent constant `b`, the smallest `a` making every case
/// satisfy `|χ| ≤ (max{shape ratio, a})^{b·supp}`, with the case forcing it.
/// Zero-support cases (the identity class) need nothing. A returned value
/// `≥ 1` means no admissible `a` exists for this `b`.
pub fn required_base(cases: &[EnvelopeCase], b: f64) -> (f64, Option<&EnvelopeCase>) {
    let mut needed = 0.0f64;
    let mut witness = None;
    for case in cases {
        if case.support == 0 || case.chi_abs == 0.0 {
            continue;
        }
        let r = case.chi_abs.powf(1.0 / (b * case.support as f64));
        if r > case.shape_ratio && r > needed {
            needed = r;
            witness = Some(case);
        }
    }
    (needed, witness)
}
