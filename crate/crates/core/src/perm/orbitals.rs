use std::collections::BTreeMap;

use serde::Serialize;

use super::{PermGroupError, Permutation, PermutationGroup};

/// Groups up to this order are fingerprinted by their element-order
/// statistics; larger ones by order and orbit shape only.
pub const ELEMENT_FINGERPRINT_LIMIT: u128 = 20_000;

/// Isomorphism invariant used in place of an isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fingerprint {
    /// Order plus the multiset of element orders, as `(element order, count)`.
    ElementOrders {
        order: u128,
        counts: Vec<(u128, usize)>,
    },
    /// Order plus the sorted orbit lengths on the permutation domain.
    OrbitShape {
        order: u128,
        orbit_lengths: Vec<usize>,
    },
}

impl Fingerprint {
    pub fn order(&self) -> u128 {
        match self {
            Fingerprint::ElementOrders { order, .. } | Fingerprint::OrbitShape { order, .. } => {
                *order
            }
        }
    }

    pub fn is_approximate(&self) -> bool {
        matches!(self, Fingerprint::OrbitShape { .. })
    }
}

pub fn fingerprint(g: &PermutationGroup) -> Fingerprint {
    let order = g.order();
    if order <= ELEMENT_FINGERPRINT_LIMIT {
        let mut counts: BTreeMap<u128, usize> = BTreeMap::new();
        for e in g.elements() {
            *counts.entry(e.order()).or_default() += 1;
        }
        Fingerprint::ElementOrders {
            order,
            counts: counts.into_iter().collect(),
        }
    } else {
        let mut orbit_lengths: Vec<usize> = g.orbits().iter().map(Vec::len).collect();
        orbit_lengths.sort_unstable();
        Fingerprint::OrbitShape {
            order,
            orbit_lengths,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub rank: usize,
    /// Suborbit lengths in ascending order.
    pub subdegrees: Vec<usize>,
}

/// Suborbits of a transitive group relative to point 0, with the maps needed
/// to locate the orbital of any ordered pair.
#[derive(Clone, Debug)]
pub struct OrbitalStructure {
    degree: usize,
    /// `to_base[a]` maps point `a` to point 0.
    to_base: Vec<Permutation>,
    suborbit_of: Vec<usize>,
    suborbits: Vec<Vec<u32>>,
    paired: Vec<usize>,
    point_stabilizer: PermutationGroup,
}

impl OrbitalStructure {
    pub fn new(g: &PermutationGroup) -> Result<Self, PermGroupError> {
        let n = g.degree();
        if n == 0 || !g.is_transitive() {
            return Err(PermGroupError::NotTransitive);
        }
        let gens = g.generators();
        let mut to_base: Vec<Option<Permutation>> = vec![None; n];
        to_base[0] = Some(Permutation::identity(n));
        let mut queue = vec![0u32];
        let mut i = 0;
        // Builds `u_a` with 0^u_a = a, stored inverted.
        let mut forward: Vec<Option<Permutation>> = vec![None; n];
        forward[0] = Some(Permutation::identity(n));
        while i < queue.len() {
            let b = queue[i];
            for s in gens {
                let c = s.apply(b);
                if forward[c as usize].is_none() {
                    let u = forward[b as usize].as_ref().unwrap().then(s);
                    to_base[c as usize] = Some(u.inverse());
                    forward[c as usize] = Some(u);
                    queue.push(c);
                }
            }
            i += 1;
        }
        drop(forward);
        let to_base: Vec<Permutation> = to_base.into_iter().map(Option::unwrap).collect();

        let point_stabilizer = g.pointwise_stabilizer(&[0]);
        let suborbits = point_stabilizer_orbits(&point_stabilizer, n);
        let mut suborbit_of = vec![0; n];
        for (k, o) in suborbits.iter().enumerate() {
            for &p in o {
                suborbit_of[p as usize] = k;
            }
        }
        let paired = suborbits
            .iter()
            .map(|o| {
                let b = o[0];
                suborbit_of[to_base[b as usize].apply(0) as usize]
            })
            .collect();
        Ok(OrbitalStructure {
            degree: n,
            to_base,
            suborbit_of,
            suborbits,
            paired,
            point_stabilizer,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Suborbits ordered by smallest point; suborbit 0 is `{0}`.
    pub fn suborbits(&self) -> &[Vec<u32>] {
        &self.suborbits
    }

    pub fn rank(&self) -> usize {
        self.suborbits.len()
    }

    /// Index of the suborbit paired with `k` (the transpose orbital).
    pub fn paired(&self, k: usize) -> usize {
        self.paired[k]
    }

    pub fn point_stabilizer(&self) -> &PermutationGroup {
        &self.point_stabilizer
    }

    /// Orbital (as a suborbit index) containing the ordered pair `(a, b)`.
    pub fn orbital_of(&self, a: u32, b: u32) -> usize {
        self.suborbit_of[self.to_base[a as usize].apply(b) as usize]
    }

    /// Neighbourhoods of the graph whose edges are the pairs lying in the
    /// given suborbits.
    pub fn adjacency(&self, suborbits: &[usize]) -> Vec<Vec<u32>> {
        let mut member = vec![false; self.rank()];
        for &k in suborbits {
            member[k] = true;
        }
        (0..self.degree as u32)
            .map(|a| {
                (0..self.degree as u32)
                    .filter(|&b| b != a && member[self.orbital_of(a, b)])
                    .collect()
            })
            .collect()
    }

    pub fn rank_profile(&self) -> RankProfile {
        let mut subdegrees: Vec<usize> = self.suborbits.iter().map(Vec::len).collect();
        subdegrees.sort_unstable();
        RankProfile {
            rank: subdegrees.len(),
            subdegrees,
        }
    }
}

fn point_stabilizer_orbits(stab: &PermutationGroup, n: usize) -> Vec<Vec<u32>> {
    let mut orbits = stab.orbits();
    debug_assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), n);
    orbits.sort_by_key(|o| o[0]);
    orbits
}

pub fn rank_profile(g: &PermutationGroup) -> Result<RankProfile, PermGroupError> {
    Ok(OrbitalStructure::new(g)?.rank_profile())
}

pub fn two_point_stabilizer(
    g: &PermutationGroup,
    a: u32,
    b: u32,
) -> Result<PermutationGroup, PermGroupError> {
    let n = g.degree() as u32;
    for p in [a, b] {
        if p >= n {
            return Err(PermGroupError::PointOutOfRange(p));
        }
    }
    if a == b {
        return Err(PermGroupError::SamePoint(a));
    }
    Ok(g.pointwise_stabilizer(&[a, b]))
}

/// One class of unordered off-diagonal pairs sharing a stabilizer fingerprint.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerClass {
    pub fingerprint: Fingerprint,
    pub order: u128,
    /// Member suborbits, paired suborbits included.
    pub suborbits: Vec<usize>,
    /// A pair `(0, b)` from the first member suborbit.
    pub representative: (u32, u32),
    /// Number of class partners of each point.
    pub valency: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerClassification {
    pub point_stabilizer: Fingerprint,
    /// Off-diagonal classes, largest stabilizer first.
    pub classes: Vec<StabilizerClass>,
    /// Number of distinct fingerprints over all two-point stabilizers,
    /// the diagonal (point stabilizer) included.
    pub m: usize,
    /// True when some fingerprint fell back to order plus orbit shape.
    pub fingerprint_only: bool,
}

pub fn classify_two_point_stabilizers(
    g: &PermutationGroup,
) -> Result<StabilizerClassification, PermGroupError> {
    let orbitals = OrbitalStructure::new(g)?;
    classify_with(&orbitals)
}

pub(crate) fn classify_with(
    orbitals: &OrbitalStructure,
) -> Result<StabilizerClassification, PermGroupError> {
    if orbitals.degree() < 2 {
        return Err(PermGroupError::TooSmall);
    }
    let stab = orbitals.point_stabilizer();
    let point_fp = fingerprint(stab);
    let mut classes: Vec<StabilizerClass> = Vec::new();
    for k in 1..orbitals.rank() {
        let pk = orbitals.paired(k);
        if pk < k {
            continue;
        }
        let sub = &orbitals.suborbits()[k];
        let b = sub[0];
        let two = stab.pointwise_stabilizer(&[b]);
        debug_assert_eq!(
            two.order(),
            stab.pointwise_stabilizer(&[*sub.last().unwrap()]).order(),
            "stabilizer order varies within an orbital"
        );
        let fp = fingerprint(&two);
        let mut members = vec![k];
        if pk != k {
            members.push(pk);
        }
        let valency: usize = members.iter().map(|&j| orbitals.suborbits()[j].len()).sum();
        match classes.iter_mut().find(|c| c.fingerprint == fp) {
            Some(c) => {
                c.suborbits.extend(members);
                c.valency += valency;
            }
            None => classes.push(StabilizerClass {
                order: fp.order(),
                fingerprint: fp,
                suborbits: members,
                representative: (0, b),
                valency,
            }),
        }
    }
    for c in &mut classes {
        c.suborbits.sort_unstable();
    }
    classes.sort_by(|x, y| {
        y.order
            .cmp(&x.order)
            .then(x.suborbits[0].cmp(&y.suborbits[0]))
    });
    let mut distinct: Vec<&Fingerprint> = vec![&point_fp];
    for c in &classes {
        if !distinct.contains(&&c.fingerprint) {
            distinct.push(&c.fingerprint);
        }
    }
    let m = distinct.len();
    let fingerprint_only =
        point_fp.is_approximate() || classes.iter().any(|c| c.fingerprint.is_approximate());
    Ok(StabilizerClassification {
        point_stabilizer: point_fp,
        classes,
        m,
        fingerprint_only,
    })
}
