use std::fmt;

/// One signed generator symbol: generator index 0 or 1, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub const fn new(generator: u8, inverse: bool) -> Self {
        Letter(generator * 2 + inverse as u8)
    }

    /// Coset-table column: a, A, b, B map to 0, 1, 2, 3.
    pub const fn from_column(column: usize) -> Self {
        Letter(column as u8)
    }

    pub const fn column(self) -> usize {
        self.0 as usize
    }

    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A freely reduced word in the free group on two generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word and freely reduces it.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut out = self.clone();
        out.append(other);
        out
    }

    /// In-place [`Word::concat`], linear in `other`.
    pub fn append(&mut self, other: &Word) {
        for &l in &other.letters {
            if self.letters.last() == Some(&l.inverse()) {
                self.letters.pop();
            } else {
                self.letters.push(l);
            }
        }
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let mut out = Word::identity();
        if self.is_identity() {
            return out;
        }
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        for _ in 0..exponent.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// Removes matching letter pairs from the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// Renders the word with the given generator names, using `*` and `^`.
    pub fn format_with(&self, names: [char; 2]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = names[l.generator()];
            let exp = if l.is_inverse() {
                -(run as i64)
            } else {
                run as i64
            };
            parts.push(if exp == 1 {
                name.to_string()
            } else {
                format!("{name}^{exp}")
            });
            i += run;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(['a', 'b']))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const A: Letter = Letter::new(0, false);
    const AI: Letter = Letter::new(0, true);
    const B: Letter = Letter::new(1, false);
    const BI: Letter = Letter::new(1, true);

    #[test]
    fn reduces_adjacent_inverse_pairs() {
        assert!(Word::new([A, B, BI, AI]).is_identity());
        assert_eq!(Word::new([A, A, AI, B]).letters(), &[A, B]);
    }

    #[test]
    fn commutator_expands() {
        let c = Word::commutator(&Word::letter(A), &Word::letter(B));
        assert_eq!(c.letters(), &[AI, BI, A, B]);
        assert_eq!(c.pow(3).len(), 12);
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::new([B, A, A, BI]);
        assert_eq!(w.cyclically_reduced().letters(), &[A, A]);
    }

    fn letter() -> impl Strategy<Value = Letter> {
        (0u8..2, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i))
    }

    proptest! {
        #[test]
        fn reduction_idempotent_and_shortening(ls in prop::collection::vec(letter(), 0..40)) {
            let w = Word::new(ls.clone());
            prop_assert!(w.len() <= ls.len());
            prop_assert_eq!(Word::new(w.letters().iter().copied()), w.clone());
            prop_assert!(w.concat(&w.inverse()).is_identity());
        }
    }
}
