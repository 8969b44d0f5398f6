use std::rc::Rc;

use super::table::{CosetTable, COLUMNS, UNDEF};
use super::CosetError;
use crate::textio::{Presentation, SubgroupSpec, Word};

/// Default limit on allocated coset slots (live plus dead).
pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

/// Hasselgrove-Leech-Trotter coset enumeration.
///
/// When the slot budget runs out, a lookahead pass scans every live coset
/// without defining new ones, dead cosets are compacted away, and the
/// enumeration resumes. The closed table is returned in standard
/// (breadth-first) numbering.
pub fn todd_coxeter(
    p: &Presentation,
    h: &SubgroupSpec,
    max_cosets: usize,
) -> Result<CosetTable, CosetError> {
    if max_cosets == 0 {
        return Err(CosetError::InvalidBudget);
    }
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(Word::cyclically_reduced)
        .filter(|w| !w.is_identity())
        .map(|w| columns(&w))
        .collect();
    let subgens: Vec<Vec<usize>> = h
        .generators
        .iter()
        .filter(|w| !w.is_identity())
        .map(columns)
        .collect();
    let mut e = Enumerator {
        rows: vec![UNDEF; COLUMNS],
        parent: vec![0],
        max: max_cosets,
        queue: Vec::new(),
        relators: Rc::new(relators),
        subgens: Rc::new(subgens),
        cursor: 0,
        cursor_renumbered: false,
    };
    e.run()?;
    e.compact();
    Ok(CosetTable::standardized(&e.rows, 0))
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

#[derive(Clone, Copy)]
enum Start {
    Base,
    Cursor,
}

struct Enumerator {
    rows: Vec<u32>,
    parent: Vec<u32>,
    max: usize,
    queue: Vec<u32>,
    relators: Rc<Vec<Vec<usize>>>,
    subgens: Rc<Vec<Vec<usize>>>,
    /// Coset currently being processed by the HLT loop.
    cursor: usize,
    /// Set when compaction removed the cursor coset; `cursor` then already
    /// names the next unprocessed coset.
    cursor_renumbered: bool,
}

impl Enumerator {
    fn len(&self) -> usize {
        self.parent.len()
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c as u32
    }

    #[inline]
    fn entry(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * COLUMNS + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.rows[c as usize * COLUMNS + x] = d;
    }

    fn cursor_active(&self) -> bool {
        !self.cursor_renumbered && self.is_live(self.cursor)
    }

    fn run(&mut self) -> Result<(), CosetError> {
        let subgens = Rc::clone(&self.subgens);
        for w in subgens.iter() {
            self.scan_and_fill(Start::Base, w)?;
        }
        let relators = Rc::clone(&self.relators);
        while self.cursor < self.len() {
            for r in relators.iter() {
                if !self.cursor_active() {
                    break;
                }
                self.scan_and_fill(Start::Cursor, r)?;
            }
            for x in 0..COLUMNS {
                if !self.cursor_active() {
                    break;
                }
                if self.entry(self.cursor as u32, x) != UNDEF {
                    continue;
                }
                self.reserve()?;
                if !self.cursor_active() || self.entry(self.cursor as u32, x) != UNDEF {
                    continue;
                }
                let d = self.new_coset();
                self.link(self.cursor as u32, x, d);
            }
            if self.cursor_renumbered {
                self.cursor_renumbered = false;
            } else {
                self.cursor += 1;
            }
        }
        Ok(())
    }

    /// Makes room for one more coset, running lookahead and compaction when
    /// the budget is exhausted.
    fn reserve(&mut self) -> Result<(), CosetError> {
        if self.len() < self.max {
            return Ok(());
        }
        self.lookahead();
        self.compact();
        if self.len() < self.max {
            Ok(())
        } else {
            Err(CosetError::EnumerationOverflow {
                max_cosets: self.max,
            })
        }
    }

    fn new_coset(&mut self) -> u32 {
        let d = self.len() as u32;
        self.parent.push(d);
        self.rows.extend_from_slice(&[UNDEF; COLUMNS]);
        d
    }

    fn link(&mut self, c: u32, x: usize, d: u32) {
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
    }

    /// Scans every live coset under every relator, deducing and collapsing
    /// but never defining.
    fn lookahead(&mut self) {
        let subgens = Rc::clone(&self.subgens);
        for w in subgens.iter() {
            self.scan(0, w);
        }
        let relators = Rc::clone(&self.relators);
        for c in 0..self.len() {
            for r in relators.iter() {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c as u32, r);
            }
        }
    }

    /// Renumbers live cosets consecutively, preserving order.
    fn compact(&mut self) {
        let n = self.len();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        let mut new_cursor = None;
        for (c, slot) in map.iter_mut().enumerate() {
            if c == self.cursor {
                new_cursor = Some(next);
            }
            if self.is_live(c) {
                *slot = next;
                next += 1;
            }
        }
        if self.cursor < n {
            if !self.is_live(self.cursor) {
                self.cursor_renumbered = true;
            }
            self.cursor = new_cursor.unwrap() as usize;
        }
        let mut rows = Vec::with_capacity(next as usize * COLUMNS);
        for c in (0..n).filter(|&c| map[c] != UNDEF) {
            for x in 0..COLUMNS {
                let d = self.entry(c as u32, x);
                rows.push(if d == UNDEF { UNDEF } else { map[d as usize] });
            }
        }
        self.rows = rows;
        self.parent = (0..next).collect();
    }

    fn start(&self, s: Start) -> Option<u32> {
        match s {
            Start::Base => Some(0),
            Start::Cursor if self.cursor_active() => Some(self.cursor as u32),
            Start::Cursor => None,
        }
    }

    /// Scan that defines new cosets to complete the word.
    fn scan_and_fill(&mut self, s: Start, w: &[usize]) -> Result<(), CosetError> {
        loop {
            let Some(c) = self.start(s) else {
                return Ok(());
            };
            let mut f = c;
            let mut i = 0usize;
            let mut b = c;
            let mut j = w.len();
            while i < j && self.entry(f, w[i]) != UNDEF {
                f = self.entry(f, w[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.entry(b, w[j - 1] ^ 1) != UNDEF {
                b = self.entry(b, w[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.link(f, w[i], b);
                return Ok(());
            }
            if self.len() < self.max {
                let d = self.new_coset();
                self.link(f, w[i], d);
            } else {
                // Renumbers cosets, so restart the scan from scratch.
                self.reserve()?;
            }
        }
    }

    /// Scan without definitions.
    fn scan(&mut self, c: u32, w: &[usize]) {
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len();
        while i < j && self.entry(f, w[i]) != UNDEF {
            f = self.entry(f, w[i]);
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j > i && self.entry(b, w[j - 1] ^ 1) != UNDEF {
            b = self.entry(b, w[j - 1] ^ 1);
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.link(f, w[i], b);
        }
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut r = k;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = k;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (phi, psi) = (self.rep(k), self.rep(l));
        if phi != psi {
            let (lo, hi) = if phi < psi { (phi, psi) } else { (psi, phi) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..COLUMNS {
                let d = self.entry(g, x);
                if d == UNDEF {
                    continue;
                }
                if self.entry(d, x ^ 1) == g {
                    self.set(d, x ^ 1, UNDEF);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mux = self.entry(mu, x);
                if mux != UNDEF {
                    self.merge(nu, mux);
                } else {
                    let nuxi = self.entry(nu, x ^ 1);
                    if nuxi != UNDEF {
                        self.merge(mu, nuxi);
                    } else {
                        self.link(mu, x, nu);
                    }
                }
            }
        }
    }
}
