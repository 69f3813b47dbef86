//! Braid words in the Artin generators and their closures.
//!
//! A letter `+i` stands for `σ_i` and `-i` for `σ_i⁻¹`, with strands numbered
//! `1..=n`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Range("strand count must be positive".into()));
        }
        for &e in &letters {
            if e == 0 {
                return Err(Error::Syntax("0 is not a braid generator".into()));
            }
            if e.unsigned_abs() as usize >= strands {
                return Err(Error::Range(format!(
                    "letter {e} needs at least {} strands, have {strands}",
                    e.unsigned_abs() + 1
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generator index `|e|` of the letter at `pos`.
    pub fn generator(&self, pos: usize) -> usize {
        self.letters[pos].unsigned_abs() as usize
    }

    /// Positions of each generator, indexed by generator `1..n` (slot 0 unused).
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.strands];
        for (pos, _) in self.letters.iter().enumerate() {
            occ[self.generator(pos)].push(pos);
        }
        occ
    }

    /// First generator that never occurs, if any. Its absence splits the
    /// closure diagram.
    pub fn missing_generator(&self) -> Option<usize> {
        let occ = self.occurrences();
        (1..self.strands).find(|&i| occ[i].is_empty())
    }

    /// Rotate letters left by `k` (conjugation by a prefix).
    pub fn rotated(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Same word with the letter at `pos` replaced by `letter`.
    pub fn with_letter(&self, pos: usize, letter: i64) -> Result<BraidWord> {
        let mut letters = self.letters.clone();
        letters[pos] = letter;
        BraidWord::new(self.strands, letters)
    }

    /// Same word with the letter at `pos` removed (the oriented smoothing).
    pub fn without_letter(&self, pos: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.remove(pos);
        BraidWord { strands: self.strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.letters.iter().map(|e| e.to_string()).collect();
        write!(f, "{} (strands {})", text.join(" "), self.strands)
    }
}

/// Parse `int (sep int)*` where `sep` is whitespace or a comma.
///
/// Without an override the strand count is `max|e| + 1`, or 1 for empty text.
pub fn parse_braid(text: &str, strands_override: Option<usize>) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ',') {
        if token.is_empty() {
            continue;
        }
        let value: i64 = token
            .parse()
            .map_err(|_| Error::Syntax(format!("not an integer: {token:?}")))?;
        if value == 0 {
            return Err(Error::Syntax("0 is not a braid generator".into()));
        }
        letters.push(value);
    }
    let inferred = letters
        .iter()
        .map(|e| e.unsigned_abs() as usize + 1)
        .max()
        .unwrap_or(1);
    let strands = match strands_override {
        Some(0) => return Err(Error::Range("strand count must be positive".into())),
        Some(n) => n,
        None => inferred,
    };
    BraidWord::new(strands, letters)
}

/// A permutation of `{1..n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// 1-based images, as in the usual cycle notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Cycles as 0-based index lists, each starting from its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Where each starting strand position ends up after running through the word.
pub fn closure_permutation(w: &BraidWord) -> Permutation {
    // pos[s] = current position of the strand that started at s
    let mut pos: Vec<usize> = (0..w.strands).collect();
    let mut at: Vec<usize> = (0..w.strands).collect();
    for &e in &w.letters {
        let i = e.unsigned_abs() as usize - 1;
        let (a, b) = (at[i], at[i + 1]);
        at.swap(i, i + 1);
        pos[a] = i + 1;
        pos[b] = i;
    }
    Permutation { images: pos }
}

/// Number of components `l` of the closed braid.
pub fn closure_components(w: &BraidWord) -> usize {
    closure_permutation(w).cycles().len()
}

pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.letters.iter().map(|e| e.signum()).sum()
}

/// Cancel adjacent `e, -e` pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut stack: Vec<i64> = Vec::with_capacity(w.letters.len());
    for &e in &w.letters {
        if stack.last() == Some(&-e) {
            stack.pop();
        } else {
            stack.push(e);
        }
    }
    BraidWord { strands: w.strands, letters: stack }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(n: usize, letters: &[i64]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn parses_words() {
        assert_eq!(parse_braid("1 1 1", None).unwrap(), word(2, &[1, 1, 1]));
        assert_eq!(parse_braid("-1 2 -1 2", None).unwrap(), word(3, &[-1, 2, -1, 2]));
        assert_eq!(parse_braid("-1,2, -1,2", None).unwrap(), word(3, &[-1, 2, -1, 2]));
        assert_eq!(parse_braid("", None).unwrap(), word(1, &[]));
        assert_eq!(parse_braid("1", Some(4)).unwrap(), word(4, &[1]));
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(matches!(parse_braid("0 1", None), Err(Error::Syntax(_))));
        assert!(matches!(parse_braid("1 x", None), Err(Error::Syntax(_))));
        assert!(matches!(parse_braid("1 3", Some(3)), Err(Error::Range(_))));
        assert!(matches!(parse_braid("1", Some(0)), Err(Error::Range(_))));
    }

    #[test]
    fn closure_permutations() {
        assert_eq!(closure_permutation(&word(2, &[1, 1, 1])).images(), vec![2, 1]);
        assert_eq!(closure_permutation(&word(2, &[1, 1])), Permutation::identity(2));
        let p = closure_permutation(&word(3, &[-1, 2, -1, 2]));
        // (1 2)(2 3)(1 2)(2 3) applied left to right sends 1→3→…; one 3-cycle.
        assert_eq!(p.cycles().len(), 1);
        assert_eq!(p.cycles()[0].len(), 3);
    }

    #[test]
    fn component_counts() {
        assert_eq!(closure_components(&word(2, &[1, 1, 1])), 1);
        assert_eq!(closure_components(&word(5, &[])), 5);
        assert_eq!(closure_components(&word(2, &[1, 1])), 2);
        assert_eq!(closure_components(&word(3, &[-1, 2, -1, 2])), 1);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(exponent_sum(&word(2, &[1, 1, 1])), 3);
        assert_eq!(exponent_sum(&word(3, &[-1, 2, -1, 2])), 0);
        assert_eq!(exponent_sum(&word(2, &[])), 0);
    }

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&word(2, &[1, -1, 1, 1])), word(2, &[1, 1]));
        assert_eq!(free_reduce(&word(2, &[])), word(2, &[]));
        assert_eq!(free_reduce(&word(3, &[2, -2])), word(3, &[]));
        assert_eq!(free_reduce(&word(3, &[1, 2, -2, -1, 2])), word(3, &[2]));
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (1usize..6).prop_flat_map(|n| {
            let letter = if n == 1 {
                Just(0i64).boxed()
            } else {
                (1..n as i64, any::<bool>())
                    .prop_map(|(i, neg)| if neg { -i } else { i })
                    .boxed()
            };
            let len = if n == 1 { 0..1usize } else { 0..12usize };
            (Just(n), prop::collection::vec(letter, len))
                .prop_map(|(n, letters)| BraidWord::new(n, letters).unwrap())
        })
    }

    proptest! {
        #[test]
        fn components_bounded_by_strands(w in arb_word()) {
            prop_assert!(closure_components(&w) <= w.strands());
            prop_assert!(closure_components(&w) >= 1);
        }

        #[test]
        fn components_invariant_under_rotation(w in arb_word(), k in 0usize..12) {
            prop_assert_eq!(closure_components(&w), closure_components(&w.rotated(k)));
        }

        #[test]
        fn permutation_parity_matches_length(w in arb_word()) {
            let expected = if w.len() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(closure_permutation(&w).sign(), expected);
        }

        #[test]
        fn free_reduce_preserves_permutation_and_exponent(w in arb_word()) {
            let r = free_reduce(&w);
            prop_assert_eq!(closure_permutation(&r), closure_permutation(&w));
            prop_assert_eq!(exponent_sum(&r), exponent_sum(&w));
            prop_assert_eq!(r.strands(), w.strands());
        }
    }
}
