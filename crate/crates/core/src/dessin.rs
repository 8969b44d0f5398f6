//! Dessins d'enfants of two-generator permutation groups: signature,
//! passport and the invariants of modular-group quotients.
//!
//! The first generator colours the black vertices, the second the white
//! ones, and faces are the cycles of the product (first, then second).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;
use crate::textio::PermutationInput;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DessinError {
    #[error("a dessin needs exactly two generators, got {0}")]
    GeneratorCount(usize),
    #[error("Euler characteristic B+W+F-n = {0} is odd")]
    OddEuler(i64),
    #[error("no generator pair with x^2 = y^3 = 1")]
    NotModularQuotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DessinSignature {
    #[serde(rename = "B")]
    pub black: usize,
    #[serde(rename = "W")]
    pub white: usize,
    #[serde(rename = "F")]
    pub faces: usize,
    #[serde(rename = "g")]
    pub genus: usize,
    #[serde(rename = "n")]
    pub edges: usize,
}

impl fmt::Display for DessinSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.black, self.white, self.faces, self.genus
        )
    }
}

/// Integer partition, parts in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn exponents(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .exponents()
            .iter()
            .map(|(p, k)| format!("{p}^{k}"))
            .collect();
        f.write_str(&terms.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Passport {
    pub black: Partition,
    pub white: Partition,
    pub faces: Partition,
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.black, self.white, self.faces)
    }
}

/// Invariants of a transitive quotient of the modular group
/// `<x, y | x^2, y^3>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModularInvariants {
    pub n: usize,
    pub genus: usize,
    /// Fixed points of the involution.
    pub nu2: usize,
    /// Fixed points of the order-3 generator.
    pub nu3: usize,
    pub cusps: usize,
    pub fractions: usize,
}

impl fmt::Display for ModularInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.n, self.genus, self.nu2, self.nu3, self.cusps, self.fractions
        )
    }
}

fn pair(input: &PermutationInput) -> Result<(&Permutation, &Permutation), DessinError> {
    match input.generators.as_slice() {
        [x, y] => Ok((x, y)),
        g => Err(DessinError::GeneratorCount(g.len())),
    }
}

fn genus(n: usize, b: usize, w: usize, f: usize) -> Result<usize, DessinError> {
    let chi = (b + w + f) as i64 - n as i64;
    if chi % 2 != 0 {
        return Err(DessinError::OddEuler(chi));
    }
    let g = (2 - chi) / 2;
    debug_assert!(g >= 0, "negative genus");
    Ok(g.max(0) as usize)
}

pub fn signature(input: &PermutationInput) -> Result<DessinSignature, DessinError> {
    let (x, y) = pair(input)?;
    let n = input.degree;
    let (b, w, f) = (x.cycle_count(), y.cycle_count(), x.then(y).cycle_count());
    Ok(DessinSignature {
        black: b,
        white: w,
        faces: f,
        genus: genus(n, b, w, f)?,
        edges: n,
    })
}

pub fn passport(input: &PermutationInput) -> Result<Passport, DessinError> {
    let (x, y) = pair(input)?;
    Ok(Passport {
        black: Partition(x.cycle_type()),
        white: Partition(y.cycle_type()),
        faces: Partition(x.then(y).cycle_type()),
    })
}

/// Accepts the involution and the order-3 generator in either order.
pub fn modular_invariants(input: &PermutationInput) -> Result<ModularInvariants, DessinError> {
    let (g0, g1) = pair(input)?;
    let involution = |p: &Permutation| p.then(p).is_identity();
    let order3 = |p: &Permutation| p.pow(3).is_identity();
    let (x, y) = if involution(g0) && order3(g1) {
        (g0, g1)
    } else if involution(g1) && order3(g0) {
        (g1, g0)
    } else {
        return Err(DessinError::NotModularQuotient);
    };
    let n = input.degree;
    let black = y.cycle_count();
    let white = x.cycle_count();
    let cusps = x.then(y).cycle_count();
    let nu2 = x.fixed_points();
    let nu3 = y.fixed_points();
    Ok(ModularInvariants {
        n,
        genus: genus(n, black, white, cusps)?,
        nu2,
        nu3,
        cusps,
        fractions: black + 1 - nu3,
    })
}
