use std::collections::{BTreeSet, HashSet};

use super::{BitSet, GeometryError, GeometryMode, IncidenceGeometry};
use crate::perm::{
    OrbitalStructure, Permutation, PermutationGroup, StabilizerClass, StabilizerClassification,
};

/// Default cap on Bron-Kerbosch recursion nodes, and on the lines a defined
/// geometry may have.
pub const DEFAULT_CLIQUE_BUDGET: usize = 500_000;

/// Which cliques of the collinearity graph become lines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CliqueSelection {
    /// Cliques of the largest size only.
    #[default]
    Maximum,
    /// Every maximal clique.
    Maximal,
}

#[derive(Clone, Debug)]
pub struct DefinedOptions {
    pub selection: CliqueSelection,
    pub budget: usize,
}

impl Default for DefinedOptions {
    fn default() -> Self {
        DefinedOptions {
            selection: CliqueSelection::Maximum,
            budget: DEFAULT_CLIQUE_BUDGET,
        }
    }
}

fn class_at(cls: &StabilizerClassification, k: usize) -> Result<&StabilizerClass, GeometryError> {
    cls.classes.get(k).ok_or(GeometryError::NoSuchClass(k))
}

/// Lines are the point sets of class pairs that share one literal
/// two-point stabilizer.
///
/// A class pair `{c, d}` has the same stabilizer as `{0, b}` exactly when
/// it lies in the fixed points of that stabilizer (the orders agree), so
/// each line is read off the fixed points of one representative stabilizer
/// per suborbit and then moved around by the group.
pub fn build_stabilized_geometry(
    g: &PermutationGroup,
    orbitals: &OrbitalStructure,
    cls: &StabilizerClassification,
    class_index: usize,
    force: bool,
) -> Result<IncidenceGeometry, GeometryError> {
    let class = class_at(cls, class_index)?;
    if class.order == 1 && !force {
        return Err(GeometryError::TrivialClass(class_index));
    }
    let member = membership(orbitals, class);
    let stab = orbitals.point_stabilizer();
    let mut seeds = Vec::new();
    for &s in &class.suborbits {
        let b = orbitals.suborbits()[s][0];
        let fixed = stab.pointwise_stabilizer(&[b]).fixed_points();
        let mut line = BTreeSet::new();
        for (i, &c) in fixed.iter().enumerate() {
            for &d in &fixed[i + 1..] {
                if member[orbitals.orbital_of(c, d)] {
                    line.insert(c);
                    line.insert(d);
                }
            }
        }
        seeds.push(line.into_iter().collect());
    }
    let lines = orbit_of_sets(g.generators(), seeds, usize::MAX)?;
    Ok(IncidenceGeometry::new(
        g.degree(),
        lines,
        GeometryMode::Stabilized,
        Some(class_index),
    ))
}

/// Lines are cliques of the graph joining the pairs of the class.
pub fn build_defined_geometry(
    g: &PermutationGroup,
    orbitals: &OrbitalStructure,
    cls: &StabilizerClassification,
    class_index: usize,
    opts: &DefinedOptions,
) -> Result<IncidenceGeometry, GeometryError> {
    let class = class_at(cls, class_index)?;
    let n = g.degree();
    let adj = class_graph(orbitals, class, n);
    // The group is transitive on points, so the cliques through point 0
    // meet every orbit of cliques.
    let mut search = CliqueSearch {
        adj: &adj,
        selection: opts.selection,
        budget: opts.budget,
        nodes: 0,
        best: 0,
        found: Vec::new(),
    };
    let mut r = vec![0u32];
    search.expand(&mut r, adj[0].clone(), BitSet::new(n))?;
    let lines = orbit_of_sets(g.generators(), search.found, opts.budget)?;
    Ok(IncidenceGeometry::new(
        n,
        lines,
        GeometryMode::Defined,
        Some(class_index),
    ))
}

/// All maximal cliques of the class graph, split by size: one geometry per
/// clique size, largest first. The first entry is the maximum-clique
/// geometry of [`build_defined_geometry`].
pub fn build_defined_geometries_by_size(
    g: &PermutationGroup,
    orbitals: &OrbitalStructure,
    cls: &StabilizerClassification,
    class_index: usize,
    budget: usize,
) -> Result<Vec<IncidenceGeometry>, GeometryError> {
    let class = class_at(cls, class_index)?;
    let n = g.degree();
    let adj = class_graph(orbitals, class, n);
    let mut search = CliqueSearch {
        adj: &adj,
        selection: CliqueSelection::Maximal,
        budget,
        nodes: 0,
        best: 0,
        found: Vec::new(),
    };
    let mut r = vec![0u32];
    search.expand(&mut r, adj[0].clone(), BitSet::new(n))?;
    let mut sizes: Vec<usize> = search.found.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes.dedup();
    sizes
        .into_iter()
        .map(|k| {
            let seeds = search
                .found
                .iter()
                .filter(|c| c.len() == k)
                .cloned()
                .collect();
            let lines = orbit_of_sets(g.generators(), seeds, budget)?;
            Ok(IncidenceGeometry::new(
                n,
                lines,
                GeometryMode::Defined,
                Some(class_index),
            ))
        })
        .collect()
}

fn class_graph(orbitals: &OrbitalStructure, class: &StabilizerClass, n: usize) -> Vec<BitSet> {
    orbitals
        .adjacency(&class.suborbits)
        .into_iter()
        .map(|row| BitSet::from_indices(n, row.into_iter().map(|v| v as usize)))
        .collect()
}

fn membership(orbitals: &OrbitalStructure, class: &StabilizerClass) -> Vec<bool> {
    let mut member = vec![false; orbitals.rank()];
    for &s in &class.suborbits {
        member[s] = true;
    }
    member
}

/// Orbit of a family of point sets under the group generated by `gens`,
/// refused once it passes `limit` sets.
pub(crate) fn orbit_of_sets(
    gens: &[Permutation],
    seeds: Vec<Vec<u32>>,
    limit: usize,
) -> Result<Vec<Vec<u32>>, GeometryError> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = Vec::new();
    for mut s in seeds {
        s.sort_unstable();
        if seen.insert(s.clone()) {
            queue.push(s);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        for p in gens {
            let mut img: Vec<u32> = queue[i].iter().map(|&x| p.apply(x)).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                queue.push(img);
                if queue.len() > limit {
                    return Err(GeometryError::CliqueBudgetExceeded(limit));
                }
            }
        }
        i += 1;
    }
    queue.sort();
    Ok(queue)
}

struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    selection: CliqueSelection,
    budget: usize,
    nodes: usize,
    best: usize,
    found: Vec<Vec<u32>>,
}

impl CliqueSearch<'_> {
    /// Bron-Kerbosch with Tomita pivoting.
    fn expand(
        &mut self,
        r: &mut Vec<u32>,
        mut p: BitSet,
        mut x: BitSet,
    ) -> Result<(), GeometryError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GeometryError::CliqueBudgetExceeded(self.budget));
        }
        let p_count = p.count();
        if self.selection == CliqueSelection::Maximum && r.len() + p_count < self.best {
            return Ok(());
        }
        if p_count == 0 {
            if x.is_empty() {
                self.report(r);
            }
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (p.intersection_count(&self.adj[u]), std::cmp::Reverse(u)))
            .unwrap();
        let mut candidates = p.clone();
        candidates.difference_with(&self.adj[pivot]);
        for v in candidates.iter().collect::<Vec<_>>() {
            let mut p2 = p.clone();
            p2.intersect_with(&self.adj[v]);
            let mut x2 = x.clone();
            x2.intersect_with(&self.adj[v]);
            r.push(v as u32);
            self.expand(r, p2, x2)?;
            r.pop();
            p.remove(v);
            x.insert(v);
        }
        Ok(())
    }

    fn report(&mut self, r: &[u32]) {
        match self.selection {
            CliqueSelection::Maximal => self.found.push(r.to_vec()),
            CliqueSelection::Maximum => {
                if r.len() > self.best {
                    self.best = r.len();
                    self.found.clear();
                }
                if r.len() == self.best {
                    self.found.push(r.to_vec());
                }
            }
        }
    }
}
