use std::collections::BTreeSet;

use super::table::{CosetTable, COLUMNS, UNDEF};
use super::CosetError;
use crate::textio::Presentation;

/// Default cap on search-tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug)]
pub struct LowIndexOptions {
    pub max_index: usize,
    pub node_budget: u64,
}

impl LowIndexOptions {
    pub fn new(max_index: usize) -> Self {
        LowIndexOptions {
            max_index,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// One table per conjugacy class of subgroups of index at most
/// `max_index`, each the lexicographically least among its conjugates.
/// Sorted by index, then by table.
pub fn low_index_subgroups(
    p: &Presentation,
    max_index: usize,
) -> Result<Vec<CosetTable>, CosetError> {
    low_index_subgroups_with(p, &LowIndexOptions::new(max_index))
}

pub fn low_index_subgroups_with(
    p: &Presentation,
    opts: &LowIndexOptions,
) -> Result<Vec<CosetTable>, CosetError> {
    if opts.max_index == 0 {
        return Err(CosetError::InvalidBudget);
    }
    if opts.max_index > u32::MAX as usize / 8 {
        return Err(CosetError::InvalidBudget);
    }
    let mut s = Search::new(p, opts);
    s.descend(0)?;
    let mut out: Vec<CosetTable> = s.found.into_iter().collect();
    out.sort_by(|x, y| {
        x.index()
            .cmp(&y.index())
            .then_with(|| x.rows().cmp(y.rows()))
    });
    Ok(out)
}

struct Search {
    max_index: usize,
    budget: u64,
    nodes: u64,
    rows: Vec<u32>,
    n: usize,
    trail: Vec<usize>,
    /// Cyclic conjugates of relators and their inverses, grouped by first
    /// column.
    by_column: [Vec<Vec<usize>>; COLUMNS],
    found: BTreeSet<CosetTable>,
    map: Vec<u32>,
    inv: Vec<u32>,
}

impl Search {
    fn new(p: &Presentation, opts: &LowIndexOptions) -> Self {
        let mut conj: BTreeSet<Vec<usize>> = BTreeSet::new();
        for r in &p.relators {
            let r = r.cyclically_reduced();
            if r.is_identity() {
                continue;
            }
            for w in [r.clone(), r.inverse()] {
                let cols: Vec<usize> = w.letters().iter().map(|l| l.column()).collect();
                for k in 0..cols.len() {
                    let mut rot = cols[k..].to_vec();
                    rot.extend_from_slice(&cols[..k]);
                    conj.insert(rot);
                }
            }
        }
        let mut by_column: [Vec<Vec<usize>>; COLUMNS] = Default::default();
        for w in conj {
            by_column[w[0]].push(w);
        }
        Search {
            max_index: opts.max_index,
            budget: opts.node_budget,
            nodes: 0,
            rows: vec![UNDEF; opts.max_index * COLUMNS],
            n: 1,
            trail: Vec::new(),
            by_column,
            found: BTreeSet::new(),
            map: vec![UNDEF; opts.max_index],
            inv: vec![UNDEF; opts.max_index],
        }
    }

    /// `from` is a position at or before the first undefined entry.
    fn descend(&mut self, from: usize) -> Result<(), CosetError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CosetError::SearchBudgetExceeded { nodes: self.budget });
        }
        let Some(pos) = self.rows[from..self.n * COLUMNS]
            .iter()
            .position(|&e| e == UNDEF)
            .map(|p| p + from)
        else {
            let rows = self.rows[..self.n * COLUMNS].to_vec();
            self.found.insert(CosetTable::standardized(&rows, 0));
            return Ok(());
        };
        let (c, x) = ((pos / COLUMNS) as u32, pos % COLUMNS);
        let candidates = self.n + usize::from(self.n < self.max_index);
        for d in 0..candidates as u32 {
            let fresh = d as usize == self.n;
            if fresh {
                self.n += 1;
            } else if self.entry(d, x ^ 1) != UNDEF {
                continue;
            }
            let mark = self.trail.len();
            self.assign(c, x, d);
            if self.propagate(mark) && self.is_canonical() {
                self.descend(pos + 1)?;
            }
            self.undo(mark);
            if fresh {
                self.n -= 1;
            }
        }
        Ok(())
    }

    #[inline]
    fn entry(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * COLUMNS + x]
    }

    fn assign(&mut self, c: u32, x: usize, d: u32) {
        let i = c as usize * COLUMNS + x;
        let k = d as usize * COLUMNS + (x ^ 1);
        self.rows[i] = d;
        self.rows[k] = c;
        self.trail.push(i);
        self.trail.push(k);
    }

    fn undo(&mut self, mark: usize) {
        for i in self.trail.drain(mark..) {
            self.rows[i] = UNDEF;
        }
    }

    /// Processes the entries added since `mark` until no scan yields a new
    /// deduction. Returns false on a contradiction.
    fn propagate(&mut self, mark: usize) -> bool {
        let mut next = mark;
        while next < self.trail.len() {
            let i = self.trail[next];
            next += 1;
            let (c, x) = ((i / COLUMNS) as u32, i % COLUMNS);
            for k in 0..self.by_column[x].len() {
                if !self.scan(c, x, k) {
                    return false;
                }
            }
        }
        true
    }

    fn scan(&mut self, c: u32, first: usize, k: usize) -> bool {
        let w = &self.by_column[first][k];
        let len = w.len();
        let mut f = c;
        let mut i = 0;
        while i < len {
            let e = self.rows[f as usize * COLUMNS + w[i]];
            if e == UNDEF {
                break;
            }
            f = e;
            i += 1;
        }
        if i == len {
            return f == c;
        }
        let mut b = c;
        let mut j = len;
        while j > i {
            let e = self.rows[b as usize * COLUMNS + (w[j - 1] ^ 1)];
            if e == UNDEF {
                break;
            }
            b = e;
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            self.assign(f, w[i], b);
        }
        true
    }

    /// False if relabelling the partial table from some other base coset
    /// gives a lexicographically smaller table.
    fn is_canonical(&mut self) -> bool {
        let (mut map, mut inv) = (std::mem::take(&mut self.map), std::mem::take(&mut self.inv));
        let ok = self.canonical_with(&mut map, &mut inv);
        self.map = map;
        self.inv = inv;
        ok
    }

    fn canonical_with(&self, map: &mut [u32], inv: &mut [u32]) -> bool {
        let n = self.n;
        for base in 1..n as u32 {
            map[base as usize] = 0;
            inv[0] = base;
            let mut next = 1usize;
            let smaller = self.compare_relabelled(map, inv, &mut next);
            for &old in &inv[..next] {
                map[old as usize] = UNDEF;
            }
            if smaller {
                return false;
            }
        }
        true
    }

    /// Walks the table relabelled from `inv[0]`; true if it is smaller than
    /// the current labelling before the first undecidable entry.
    fn compare_relabelled(&self, map: &mut [u32], inv: &mut [u32], next: &mut usize) -> bool {
        for r in 0..self.n {
            if r >= *next {
                return false;
            }
            let old = inv[r];
            for x in 0..COLUMNS {
                let e_old = self.entry(old, x);
                let e_here = self.entry(r as u32, x);
                if e_old == UNDEF || e_here == UNDEF {
                    return false;
                }
                let mut e_new = map[e_old as usize];
                if e_new == UNDEF {
                    e_new = *next as u32;
                    map[e_old as usize] = e_new;
                    inv[*next] = e_old;
                    *next += 1;
                }
                if e_new != e_here {
                    return e_new < e_here;
                }
            }
        }
        false
    }
}
