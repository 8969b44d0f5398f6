use std::collections::HashSet;

use super::{PermGroupError, Permutation};
use crate::textio::PermutationInput;

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `transversal[b] = (u, u^-1)` with `base_point^u = b`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    /// Per orbit position, how many generators have had their Schreier
    /// generator sifted.
    checked: Vec<usize>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base_point as usize] = Some((id.clone(), id));
        Level {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            transversal,
            checked: vec![0],
        }
    }

    /// Adds a generator and extends the orbit, keeping existing transversal
    /// elements.
    fn add_generator(&mut self, g: Permutation) {
        self.generators.push(g);
        let mut i = 0;
        // Re-run closure over every orbit point so the new generator is applied
        // to old points too.
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for gen in &self.generators {
                let c = gen.apply(b);
                if self.transversal[c as usize].is_none() {
                    let (u, _) = self.transversal[b as usize].as_ref().unwrap();
                    let v = u.then(gen);
                    let vi = v.inverse();
                    self.transversal[c as usize] = Some((v, vi));
                    self.orbit.push(c);
                    self.checked.push(0);
                }
            }
            i += 1;
        }
    }

    fn orbit_len(&self) -> usize {
        self.orbit.len()
    }
}

/// A permutation group with a base and strong generating set built by the
/// deterministic Schreier-Sims algorithm.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u128,
}

impl PermutationGroup {
    /// Builds the group generated by `generators`; the base starts with
    /// `base_prefix` and is extended by smallest moved points.
    pub fn with_base(degree: usize, generators: &[Permutation], base_prefix: &[u32]) -> Self {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut levels: Vec<Level> = base_prefix.iter().map(|&b| Level::new(b, degree)).collect();
        for g in &gens {
            if levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let p = g.first_moved_point().unwrap();
                levels.push(Level::new(p, degree));
            }
        }
        for g in &gens {
            for level in levels.iter_mut() {
                level.add_generator(g.clone());
                if g.apply(level.base_point) != level.base_point {
                    break;
                }
            }
        }
        let mut group = PermutationGroup {
            degree,
            generators: generators.to_vec(),
            levels,
            order: 1,
        };
        group.schreier_sims();
        group.trim_trivial_levels(base_prefix.len());
        group.order = group
            .levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit_len() as u128));
        group
    }

    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base(degree, generators, &[])
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            match self.next_failing_schreier_generator(li) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let p = residue.first_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(p, self.degree));
                    }
                    for l in li + 1..=j {
                        self.levels[l].add_generator(residue.clone());
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// Sifts unchecked Schreier generators at level `li`; returns the first
    /// non-trivial residue with the level where sifting stopped.
    fn next_failing_schreier_generator(&mut self, li: usize) -> Option<(Permutation, usize)> {
        let mut pos = 0;
        while pos < self.levels[li].orbit.len() {
            while self.levels[li].checked[pos] < self.levels[li].generators.len() {
                let level = &self.levels[li];
                let s = &level.generators[level.checked[pos]];
                let b = level.orbit[pos];
                let (u, _) = level.transversal[b as usize].as_ref().unwrap();
                let c = s.apply(b);
                let (_, v_inv) = level.transversal[c as usize].as_ref().unwrap();
                let h = u.then(s).then(v_inv);
                self.levels[li].checked[pos] += 1;
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip(h, li + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
            pos += 1;
        }
        None
    }

    /// Removes levels with trivial basic orbits beyond the requested prefix.
    fn trim_trivial_levels(&mut self, keep: usize) {
        let mut idx = 0;
        self.levels.retain(|l| {
            let k = idx < keep || l.orbit_len() > 1;
            idx += 1;
            k
        });
    }

    /// Sifts `g` through the chain starting at level `from`.
    fn strip(&self, g: Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g;
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.base_point);
            match &level.transversal[b as usize] {
                None => return (h, l),
                Some((_, u_inv)) => h = h.then(u_inv),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Group order; saturates at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(Level::orbit_len).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.levels {
            for g in &l.generators {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (r, j) = self.strip(p.clone(), 0);
        j == self.levels.len() && r.is_identity()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit_of(self.degree, &self.generators, point)
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Pointwise stabilizer of `points`, with its own BSGS.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermutationGroup {
        let rebuilt = if self.base().starts_with(points) {
            self.clone()
        } else {
            PermutationGroup::with_base(self.degree, &self.strong_generators(), points)
        };
        rebuilt.tail(points.len())
    }

    /// The subgroup described by levels `from..`.
    fn tail(&self, from: usize) -> PermutationGroup {
        let levels: Vec<Level> = self
            .levels
            .iter()
            .skip(from)
            .filter(|l| l.orbit_len() > 1)
            .cloned()
            .collect();
        let generators = levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default();
        let order = levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit_len() as u128));
        PermutationGroup {
            degree: self.degree,
            generators,
            levels,
            order,
        }
    }

    /// Every element, as products of transversal elements. Intended for small
    /// groups only.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit_len());
            for g in &out {
                for b in &level.orbit {
                    let (u, _) = level.transversal[*b as usize].as_ref().unwrap();
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out
    }

    /// Same element set: equal orders and mutual generator membership.
    pub fn same_elements(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && other.generators.iter().all(|g| self.contains(g))
            && self.generators.iter().all(|g| other.contains(g))
    }

    /// Points fixed by every generator.
    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree as u32)
            .filter(|&p| self.generators.iter().all(|g| g.apply(p) == p))
            .collect()
    }
}

/// Builds the group of a parsed permutation representation.
pub fn group_from(input: &PermutationInput) -> PermutationGroup {
    PermutationGroup::new(input.degree, &input.generators)
}

/// Literal equality of two subgroups of the same symmetric group.
pub fn subgroups_equal(
    g1: &PermutationGroup,
    g2: &PermutationGroup,
) -> Result<bool, PermGroupError> {
    if g1.degree() != g2.degree() {
        return Err(PermGroupError::DegreeMismatch(g1.degree(), g2.degree()));
    }
    Ok(g1.same_elements(g2))
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let b = orbit[i];
        for g in gens {
            let c = g.apply(b);
            if !seen[c as usize] {
                seen[c as usize] = true;
                orbit.push(c);
            }
        }
        i += 1;
    }
    orbit
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree as u32 {
        if seen[p as usize] {
            continue;
        }
        let mut o = orbit_of(degree, gens, p);
        for &q in &o {
            seen[q as usize] = true;
        }
        o.sort_unstable();
        out.push(o);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_permutations;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        let cs: Vec<Vec<u32>> = cycles
            .iter()
            .map(|c| c.iter().map(|p| p - 1).collect())
            .collect();
        Permutation::from_cycles(n, &cs).unwrap()
    }

    /// Brute-force closure, independent of the stabilizer chain.
    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set = HashSet::new();
        let id = Permutation::identity(degree);
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s6 = PermutationGroup::new(6, &[cyc(6, &[&[1, 2]]), cyc(6, &[&[1, 2, 3, 4, 5, 6]])]);
        assert_eq!(s6.order(), 720);
        let a5 = PermutationGroup::new(5, &[cyc(5, &[&[1, 2, 3]]), cyc(5, &[&[1, 2, 3, 4, 5]])]);
        assert_eq!(a5.order(), 60);
        assert!(a5.contains(&cyc(5, &[&[1, 2], &[3, 4]])));
        assert!(!a5.contains(&cyc(5, &[&[1, 2]])));
    }

    #[test]
    fn a5_on_ten_points() {
        let input = parse_permutations("degree: 10\n(2,3,4)(5,7,8)(6,9,10)\n(1,2)(3,5)(4,6)(7,10)")
            .unwrap();
        let g = group_from(&input);
        assert_eq!(g.order(), 60);
        assert!(g.is_transitive());
        assert_eq!(g.elements().len(), 60);
    }

    #[test]
    fn trivial_group() {
        let g = PermutationGroup::new(4, &[Permutation::identity(4)]);
        assert_eq!(g.order(), 1);
        assert!(!g.is_transitive());
        assert_eq!(g.elements().len(), 1);
    }

    #[test]
    fn stabilizers() {
        let s4 = PermutationGroup::new(4, &[cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]);
        assert_eq!(s4.pointwise_stabilizer(&[2]).order(), 6);
        assert_eq!(s4.pointwise_stabilizer(&[2, 0]).order(), 2);
        let s3 = PermutationGroup::new(3, &[cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 2, 3]])]);
        assert_eq!(s3.pointwise_stabilizer(&[0, 1]).order(), 1);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bsgs_order_matches_closure(
            (n, gens) in (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..4)))
        ) {
            let g = PermutationGroup::new(n, &gens);
            let brute = closure(n, &gens);
            prop_assert_eq!(g.order(), brute.len() as u128);
            for x in &brute {
                prop_assert!(g.contains(x));
            }
            for s in gens.iter() {
                prop_assert!(g.contains(s));
            }
            let product: u128 = g.basic_orbit_lengths().iter().map(|&l| l as u128).product();
            prop_assert_eq!(product, g.order());
            if g.is_transitive() {
                prop_assert_eq!(g.order(), n as u128 * g.pointwise_stabilizer(&[0]).order());
            }
        }
    }
}
