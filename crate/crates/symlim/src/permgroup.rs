//! Finite symmetric groups: permutations of `{0..N-1}`, cycle types, supports,
//! signs, and the minimal conjugacy-class representative together with its
//! strictly increasing Coxeter word.
//!
//! Points are stored 0-indexed. Coxeter generators keep the classical
//! 1-indexed labels: `s_j` swaps the points `j-1` and `j`, for `j` in
//! `1..=N-1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0..N-1}`, stored as its image table.
///
/// Serializes as a bare JSON array of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image table, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::NotABijection { len: n });
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{0..n-1}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &x) in cycle.iter().enumerate() {
                let y = cycle[(idx + 1) % cycle.len()];
                if x >= n || touched[x] {
                    return Err(Error::InvalidInput(format!(
                        "cycles are not disjoint or out of range at point {x}"
                    )));
                }
                touched[x] = true;
                images[x] = y;
            }
        }
        Permutation::from_images(images)
    }

    /// The transposition `s_j = (j-1, j)` in 0-indexed points, `1 <= j <= n-1`.
    pub fn coxeter_generator(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= n {
            return Err(Error::GeneratorOutOfRange {
                index: j,
                max: n.saturating_sub(1),
            });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(j - 1, j);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Composition acting as `(p∘q)(x) = p(q(x))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(Permutation {
            images: q.images.iter().map(|&y| self.images[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Disjoint cycles in order of their smallest point; fixed points included
    /// as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Counts `m_i` of `i`-cycles in the disjoint-cycle decomposition.
    pub fn cycle_type(&self) -> CycleType {
        let mut counts = vec![0u64; self.degree()];
        for cycle in self.cycles() {
            counts[cycle.len() - 1] += 1;
        }
        CycleType::from_counts(counts)
    }

    /// Number of non-fixed points.
    pub fn support_size(&self) -> usize {
        self.images.iter().enumerate().filter(|&(x, &y)| x != y).count()
    }

    /// `kappa` is the minimal number of transpositions whose product is the
    /// permutation, `N` minus the total cycle count; the sign is `(-1)^kappa`.
    pub fn sign_and_kappa(&self) -> (i32, usize) {
        let kappa = self.degree() - self.cycles().len();
        (if kappa % 2 == 0 { 1 } else { -1 }, kappa)
    }

    pub fn sign(&self) -> i32 {
        self.sign_and_kappa().0
    }

    /// A deterministic Coxeter word for the permutation, found by repeatedly
    /// clearing the leftmost adjacent inversion of the image table. The word
    /// has one letter per inversion. Evaluating it reproduces the permutation.
    pub fn coxeter_word(&self) -> CoxeterWord {
        let mut img = self.images.clone();
        let n = img.len();
        let mut letters_applied_first = Vec::new();
        loop {
            let mut found = None;
            for x in 0..n.saturating_sub(1) {
                if img[x] > img[x + 1] {
                    found = Some(x);
                    break;
                }
            }
            match found {
                None => break,
                Some(x) => {
                    img.swap(x, x + 1);
                    letters_applied_first.push(x + 1);
                }
            }
        }
        // Right-multiplying by s_{x+1} per step gives
        // p ∘ s_{a_1} ∘ … ∘ s_{a_r} = id, hence p = s_{a_r} ∘ … ∘ s_{a_1}.
        letters_applied_first.reverse();
        CoxeterWord {
            degree: n,
            letters: letters_applied_first,
        }
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Cycle type of a permutation of `{0..N-1}`: `counts[i-1]` is the number of
/// `i`-cycles. Stored dense up to the largest nonzero part, so equality
/// ignores trailing zeros.
///
/// Serializes as a bare JSON array of counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct CycleType {
    counts: Vec<u64>,
}

impl From<Vec<u64>> for CycleType {
    fn from(counts: Vec<u64>) -> Self {
        CycleType::from_counts(counts)
    }
}

impl From<CycleType> for Vec<u64> {
    fn from(ct: CycleType) -> Self {
        ct.counts
    }
}

impl CycleType {
    /// Normalizes by trimming trailing zero counts.
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        CycleType { counts }
    }

    /// Count of `i`-cycles (1-indexed length).
    pub fn count(&self, i: usize) -> u64 {
        if i == 0 || i > self.counts.len() {
            0
        } else {
            self.counts[i - 1]
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// The degree `N = Σ i·m_i`.
    pub fn degree(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m)
            .sum()
    }

    /// `Σ_{i≥2} i·m_i`, the number of moved points in the class.
    pub fn support_size(&self) -> u64 {
        self.degree() - self.count(1)
    }

    /// Scales every count by `factor`, the cycle-type evolution under the
    /// block-diagonal embedding.
    pub fn scaled(&self, factor: u64) -> CycleType {
        CycleType::from_counts(self.counts.iter().map(|&m| m * factor).collect())
    }

    /// The minimal element of the conjugacy class: cycles packed consecutively
    /// from the 1-indexed point 1 in increasing length order, fixed points at
    /// the tail. Also returns its strictly increasing Coxeter word, using the
    /// identity `(i i+1 … i+j) = s_i s_{i+1} … s_{i+j-1}`.
    pub fn minimal_element(&self, degree: usize) -> Result<(Permutation, CoxeterWord)> {
        let weighted = self.degree();
        if weighted != degree as u64 {
            return Err(Error::InvalidCycleType {
                degree: degree as u64,
                weighted_sum: weighted,
            });
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut letters = Vec::new();
        let mut next = 0usize; // 0-indexed; 1-indexed point is next+1
        for len in 2..=self.counts.len() {
            for _ in 0..self.count(len) {
                for p in next..next + len - 1 {
                    images[p] = p + 1;
                    letters.push(p + 1); // 1-indexed generator label
                }
                images[next + len - 1] = next;
                next += len;
            }
        }
        let word = CoxeterWord {
            degree,
            letters,
        };
        Ok((Permutation { images }, word))
    }
}

impl CycleType {
    /// Order of the centralizer of the class in `S_N`: `∏ i^{m_i}·m_i!`.
    /// The class size is `N!` divided by this.
    pub fn centralizer_order(&self) -> num_bigint::BigUint {
        use num_bigint::BigUint;
        use num_traits::One;
        let mut z = BigUint::one();
        for (idx, &m) in self.counts.iter().enumerate() {
            let i = idx as u64 + 1;
            for _ in 0..m {
                z *= i;
            }
            for k in 1..=m {
                z *= k;
            }
        }
        z
    }
}

/// All cycle types possible in `S_n`, one per partition of `n` by cycle
/// lengths, in the deterministic order of [`crate::partitions::partitions_of`].
pub fn cycle_types_of_degree(n: usize) -> Vec<CycleType> {
    crate::partitions::partitions_of(n)
        .into_iter()
        .map(|lambda| {
            let mut counts = vec![0u64; n];
            for &part in lambda.parts() {
                counts[part - 1] += 1;
            }
            CycleType::from_counts(counts)
        })
        .collect()
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// A word in the Coxeter generators `s_1..s_{N-1}` (1-indexed labels).
///
/// The word `[j_1, j_2, …, j_r]` denotes the product `s_{j_1}s_{j_2}⋯s_{j_r}`
/// under the composition convention of [`Permutation::compose`], so the
/// rightmost letter acts first on points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterWord {
    degree: usize,
    letters: Vec<usize>,
}

impl CoxeterWord {
    pub fn new(degree: usize, letters: Vec<usize>) -> Result<Self> {
        for &j in &letters {
            if j == 0 || j >= degree {
                return Err(Error::GeneratorOutOfRange {
                    index: j,
                    max: degree.saturating_sub(1),
                });
            }
        }
        Ok(CoxeterWord { degree, letters })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] < w[1])
    }

    /// Multiplies the letters out to a permutation.
    pub fn evaluate(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for &j in &self.letters {
            let s = Permutation::coxeter_generator(self.degree, j).expect("validated letter");
            acc = acc.compose(&s).expect("equal degrees");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        Permutation::from_cycles(n, &[vec![a, b]]).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id3 = Permutation::identity(3);
        let t01 = transposition(3, 0, 1);
        assert_eq!(id3.compose(&t01).unwrap(), t01);

        let t = transposition(2, 0, 1);
        assert_eq!(t.compose(&t).unwrap(), Permutation::identity(2));

        // p = (0 1 2), q = (0 1): (p∘q)(x) = p(q(x)) moves 0->2, 1->1, 2->0.
        let p = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let q = transposition(3, 0, 1);
        let pq = p.compose(&q).unwrap();
        assert_eq!(pq.images(), &[2, 1, 0]);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(
            p.compose(&q),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(
            Permutation::identity(3).cycle_type(),
            CycleType::from_counts(vec![3])
        );
        let p = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(p.cycle_type(), CycleType::from_counts(vec![0, 2]));
        let p = Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(p.cycle_type(), CycleType::from_counts(vec![3, 0, 1]));
    }

    #[test]
    fn cycle_type_equality_ignores_trailing_zeros() {
        assert_eq!(
            CycleType::from_counts(vec![3, 0, 0]),
            CycleType::from_counts(vec![3])
        );
    }

    #[test]
    fn support_size_examples() {
        assert_eq!(Permutation::identity(5).support_size(), 0);
        assert_eq!(transposition(2, 0, 1).support_size(), 2);
        // A level-1 transposition embedded into S_6 moves all six points:
        // three disjoint transpositions.
        let embedded =
            Permutation::from_cycles(6, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(embedded.support_size(), 6);
        let ct = embedded.cycle_type();
        assert_eq!(ct.support_size(), 6);
    }

    #[test]
    fn sign_and_kappa_examples() {
        assert_eq!(Permutation::identity(4).sign_and_kappa(), (1, 0));
        assert_eq!(transposition(2, 0, 1).sign_and_kappa(), (-1, 1));
        let p = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(p.sign_and_kappa(), (1, 2));
    }

    #[test]
    fn minimal_element_examples() {
        // N=4, m_2=2 -> (1 2)(3 4) in 1-indexed points, word [1, 3].
        let ct = CycleType::from_counts(vec![0, 2]);
        let (p, w) = ct.minimal_element(4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(w.letters(), &[1, 3]);

        // N=3, m_1=1, m_2=1 -> (1 2), word [1].
        let ct = CycleType::from_counts(vec![1, 1]);
        let (p, w) = ct.minimal_element(3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
        assert_eq!(w.letters(), &[1]);

        // N=3, m_3=1 -> (1 2 3), word [1, 2].
        let ct = CycleType::from_counts(vec![0, 0, 1]);
        let (p, w) = ct.minimal_element(3).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(w.letters(), &[1, 2]);
    }

    #[test]
    fn minimal_element_rejects_bad_cycle_type() {
        let ct = CycleType::from_counts(vec![1, 1]);
        assert!(ct.minimal_element(4).is_err());
    }

    #[test]
    fn minimal_element_exhaustive_up_to_8() {
        for n in 1..=8 {
            for ct in cycle_types_of_degree(n) {
                let (p, w) = ct.minimal_element(n).unwrap();
                assert_eq!(p.cycle_type(), ct, "cycle type mismatch at n={n} ct={ct}");
                assert!(w.is_strictly_increasing());
                assert_eq!(w.evaluate(), p, "word does not evaluate to element");
                assert_eq!(p.support_size() as u64, ct.degree() - ct.count(1));
                let non_trivial_cycles: u64 = ct
                    .counts()
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(_, &m)| m)
                    .sum();
                assert_eq!(
                    w.len() as u64,
                    ct.degree() - ct.count(1) - non_trivial_cycles
                );
            }
        }
    }

    #[test]
    fn sign_is_multiplicative_on_random_pairs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for n in 2..=8 {
            for _ in 0..50 {
                let mut a: Vec<usize> = (0..n).collect();
                let mut b: Vec<usize> = (0..n).collect();
                a.shuffle(&mut rng);
                b.shuffle(&mut rng);
                let p = Permutation::from_images(a).unwrap();
                let q = Permutation::from_images(b).unwrap();
                let pq = p.compose(&q).unwrap();
                assert_eq!(pq.sign(), p.sign() * q.sign());
            }
        }
    }

    #[test]
    fn coxeter_word_roundtrip_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0de);
        for n in 1..=10 {
            for _ in 0..20 {
                let mut a: Vec<usize> = (0..n).collect();
                a.shuffle(&mut rng);
                let p = Permutation::from_images(a).unwrap();
                assert_eq!(p.coxeter_word().evaluate(), p);
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|images| Permutation::from_images(images).expect("shuffled identity"))
        }

        fn pair() -> impl Strategy<Value = (Permutation, Permutation)> {
            (1usize..=8).prop_flat_map(|n| (permutation(n), permutation(n)))
        }

        proptest! {
            #[test]
            fn group_laws((p, q) in pair()) {
                let id = Permutation::identity(p.degree());
                prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
                prop_assert_eq!(p.inverse().compose(&p).unwrap(), id);
                let pq = p.compose(&q).unwrap();
                prop_assert_eq!(pq.sign(), p.sign() * q.sign());
                // Conjugation preserves the cycle type.
                let conj = q.compose(&p).unwrap().compose(&q.inverse()).unwrap();
                prop_assert_eq!(conj.cycle_type(), p.cycle_type());
            }

            #[test]
            fn word_roundtrip_and_kappa((p, _) in pair()) {
                prop_assert_eq!(p.coxeter_word().evaluate(), p.clone());
                // kappa and the word length have equal parity: both are
                // transposition counts for the same element.
                let (_, kappa) = p.sign_and_kappa();
                prop_assert_eq!(p.coxeter_word().len() % 2, kappa % 2);
            }
        }
    }

    #[test]
    fn permutation_json_is_bare_image_array() {
        let p = transposition(3, 0, 1);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0,2]");
        let q: Permutation = serde_json::from_str("[1,0,2]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Permutation>("[1,1,2]").is_err());

        let ct = CycleType::from_counts(vec![0, 2]);
        assert_eq!(serde_json::to_string(&ct).unwrap(), "[0,2]");
    }
}
