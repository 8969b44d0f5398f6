use std::collections::VecDeque;

use crate::perm::Permutation;
use crate::textio::{Letter, PermutationInput, Presentation, SubgroupSpec, Word};

pub(crate) const UNDEF: u32 = u32::MAX;
pub(crate) const COLUMNS: usize = 4;

/// A closed coset table: the action of `a, a^-1, b, b^-1` on the cosets of a
/// subgroup, numbered from 0 (the subgroup itself) in breadth-first order,
/// together with the Schreier representative of each coset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetTable {
    /// `rows[c * 4 + column]`.
    rows: Vec<u32>,
    representatives: Vec<Word>,
}

impl CosetTable {
    /// Builds a table from complete rows, renumbering cosets breadth-first
    /// from `base` with columns in the order `a, A, b, B`.
    ///
    /// Cosets unreachable from `base` are dropped.
    pub(crate) fn standardized(rows: &[u32], base: u32) -> CosetTable {
        let n = rows.len() / COLUMNS;
        let mut map = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        let mut reps = Vec::with_capacity(n);
        map[base as usize] = 0;
        order.push(base);
        reps.push(Word::identity());
        let mut queue = VecDeque::from([base]);
        while let Some(c) = queue.pop_front() {
            for x in 0..COLUMNS {
                let d = rows[c as usize * COLUMNS + x];
                debug_assert_ne!(d, UNDEF, "table not closed");
                if map[d as usize] == UNDEF {
                    map[d as usize] = order.len() as u32;
                    let w = reps[map[c as usize] as usize]
                        .concat(&Word::letter(Letter::from_column(x)));
                    order.push(d);
                    reps.push(w);
                    queue.push_back(d);
                }
            }
        }
        let mut out = vec![UNDEF; order.len() * COLUMNS];
        for (new, &old) in order.iter().enumerate() {
            for x in 0..COLUMNS {
                out[new * COLUMNS + x] = map[rows[old as usize * COLUMNS + x] as usize];
            }
        }
        CosetTable {
            rows: out,
            representatives: reps,
        }
    }

    /// The table of the conjugate subgroup fixing `coset`, renumbered and
    /// standardized from there.
    pub fn rebased(&self, coset: u32) -> CosetTable {
        CosetTable::standardized(&self.rows, coset)
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.rows.len() / COLUMNS
    }

    pub fn image(&self, coset: u32, letter: Letter) -> u32 {
        self.rows[coset as usize * COLUMNS + letter.column()]
    }

    pub fn trace(&self, coset: u32, w: &Word) -> u32 {
        w.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    /// Row-major table entries, for ordering and hashing.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// The permutation induced by generator 0 (`a`) or 1 (`b`).
    pub fn generator_permutation(&self, generator: usize) -> Permutation {
        let col = Letter::new(generator as u8, false).column();
        let images = (0..self.index())
            .map(|c| self.rows[c * COLUMNS + col])
            .collect();
        Permutation::from_images(images).expect("closed coset table columns are bijections")
    }

    /// The image of a word in the permutation group of the table.
    pub fn word_permutation(&self, w: &Word) -> Permutation {
        let images = (0..self.index() as u32).map(|c| self.trace(c, w)).collect();
        Permutation::from_images(images).expect("closed coset table")
    }

    /// Schreier generators of the subgroup fixing coset 0.
    pub fn subgroup_generators(&self) -> SubgroupSpec {
        let mut tree = vec![false; self.rows.len()];
        for (c, w) in self.representatives.iter().enumerate().skip(1) {
            let last = *w.letters().last().unwrap();
            let parent = self.trace(0, &Word::new(w.letters()[..w.len() - 1].iter().copied()));
            tree[parent as usize * COLUMNS + last.column()] = true;
            tree[c * COLUMNS + last.inverse().column()] = true;
        }
        let mut gens = Vec::new();
        for c in 0..self.index() {
            for g in 0..2u8 {
                let x = Letter::new(g, false);
                if tree[c * COLUMNS + x.column()] {
                    continue;
                }
                let d = self.image(c as u32, x);
                let w = self.representatives[c]
                    .concat(&Word::letter(x))
                    .concat(&self.representatives[d as usize].inverse());
                if !w.is_identity() {
                    gens.push(w);
                }
            }
        }
        SubgroupSpec { generators: gens }
    }

    /// Checks the structural invariants against a presentation and subgroup.
    pub fn verify(&self, p: &Presentation, h: Option<&SubgroupSpec>) -> Result<(), String> {
        let n = self.index() as u32;
        for c in 0..n {
            for x in 0..COLUMNS {
                let l = Letter::from_column(x);
                let d = self.image(c, l);
                if d >= n {
                    return Err(format!("entry ({c},{x}) undefined"));
                }
                if self.image(d, l.inverse()) != c {
                    return Err(format!("columns {x} and its inverse disagree at coset {c}"));
                }
            }
            for r in &p.relators {
                if self.trace(c, r) != c {
                    return Err(format!(
                        "relator {} does not close at coset {c}",
                        p.format_word(r)
                    ));
                }
            }
        }
        if let Some(h) = h {
            for w in &h.generators {
                if self.trace(0, w) != 0 {
                    return Err(format!(
                        "subgroup generator {} moves coset 0",
                        p.format_word(w)
                    ));
                }
            }
        }
        for (i, w) in self.representatives.iter().enumerate() {
            if self.trace(0, w) != i as u32 {
                return Err(format!("representative of coset {i} is wrong"));
            }
        }
        Ok(())
    }
}

/// The permutation representation on the cosets, generators in presentation
/// order.
pub fn table_to_permutations(t: &CosetTable) -> PermutationInput {
    PermutationInput::new(
        t.index(),
        vec![t.generator_permutation(0), t.generator_permutation(1)],
    )
}
