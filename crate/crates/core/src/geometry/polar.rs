use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::GeometryError;

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Closed-form parameters of the symplectic polar space `W(2n-1, p)`, the
/// commutation geometry of `n` qudits of prime dimension `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarPrediction {
    pub p: u64,
    pub n: u32,
    /// `(p^(2n) - 1) / (p - 1)`.
    #[serde(serialize_with = "as_decimal")]
    pub points: BigUint,
    /// Same formula one rank down: `(p^(2n-2) - 1) / (p - 1)`.
    #[serde(serialize_with = "as_decimal")]
    pub b: BigUint,
    /// Number of generators, `(1 + p)(1 + p^2)...(1 + p^n)`.
    #[serde(serialize_with = "as_decimal")]
    pub generators: BigUint,
    /// Points on a generator, `(p^n - 1) / (p - 1)`.
    #[serde(serialize_with = "as_decimal")]
    pub generator_size: BigUint,
    /// Generators in a spread, `p^n + 1`.
    #[serde(serialize_with = "as_decimal")]
    pub spread_size: BigUint,
    /// Generators through a point, `(1 + p)...(1 + p^(n-1))`.
    #[serde(serialize_with = "as_decimal")]
    pub generators_per_point: BigUint,
}

fn sigma(p: &BigUint, e: u32) -> BigUint {
    // 1 + p + ... + p^e
    (p.pow(e + 1) - 1u32) / (p - 1u32)
}

fn big_sigma(p: &BigUint, n: u32) -> BigUint {
    (1..=n).map(|i| p.pow(i) + 1u32).product()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn predict_polar_space(p: u64, n: u32) -> Result<PolarPrediction, GeometryError> {
    if !is_prime(p) {
        return Err(GeometryError::NotPrime(p));
    }
    if n == 0 {
        return Err(GeometryError::ZeroQudits);
    }
    let pb = BigUint::from(p);
    let b = if n >= 2 {
        sigma(&pb, 2 * n - 3)
    } else {
        BigUint::ZERO
    };
    Ok(PolarPrediction {
        p,
        n,
        points: sigma(&pb, 2 * n - 1),
        b,
        generators: big_sigma(&pb, n),
        generator_size: sigma(&pb, n - 1),
        spread_size: pb.pow(n) + 1u32,
        generators_per_point: big_sigma(&pb, n - 1),
    })
}

impl PolarPrediction {
    /// `srg(a, p b, b - 2, b)`; absent for a single qudit.
    pub fn srg(&self) -> Option<[BigUint; 4]> {
        if self.n < 2 {
            return None;
        }
        let b = &self.b;
        Some([self.points.clone(), b * self.p, b - 2u32, b.clone()])
    }

    /// `|spread| * |generator| = p^(2n) - 1`.
    pub fn spread_identity_holds(&self) -> bool {
        let pb = BigUint::from(self.p);
        &self.spread_size * (pb.pow(self.n) - 1u32) == pb.pow(2 * self.n) - 1u32
    }

    pub fn configuration(&self) -> String {
        format!(
            "[{}_{}, {}_{}]",
            self.points, self.generators_per_point, self.generators, self.generator_size
        )
    }
}

impl fmt::Display for PolarPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "W({}, {}): {} qudit(s) of dimension {}",
            2 * self.n - 1,
            self.p,
            self.n,
            self.p
        )?;
        writeln!(f, "points: {}", self.points)?;
        if let Some([a, k, l, m]) = self.srg() {
            writeln!(f, "srg: srg({a},{k},{l},{m})")?;
        }
        writeln!(
            f,
            "generators: {} of {} points",
            self.generators, self.generator_size
        )?;
        writeln!(f, "spread: {} generators", self.spread_size)?;
        write!(f, "configuration: {}", self.configuration())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn srg_string(p: &PolarPrediction) -> String {
        let [a, k, l, m] = p.srg().unwrap();
        format!("srg({a},{k},{l},{m})")
    }

    #[test]
    fn small_cases() {
        let two_qubits = predict_polar_space(2, 2).unwrap();
        assert_eq!(two_qubits.points, BigUint::from(15u32));
        assert_eq!(srg_string(&two_qubits), "srg(15,6,1,3)");
        assert_eq!(two_qubits.configuration(), "[15_3, 15_3]");
        let three_qubits = predict_polar_space(2, 3).unwrap();
        assert_eq!(srg_string(&three_qubits), "srg(63,30,13,15)");
        assert_eq!(three_qubits.configuration(), "[63_15, 135_7]");
        assert_eq!(
            srg_string(&predict_polar_space(3, 2).unwrap()),
            "srg(40,12,2,4)"
        );
        let three_qutrits = predict_polar_space(3, 3).unwrap();
        assert_eq!(srg_string(&three_qutrits), "srg(364,120,38,40)");
        assert_eq!(three_qutrits.configuration(), "[364_40, 1120_13]");
        assert_eq!(
            predict_polar_space(2, 4).unwrap().generators,
            BigUint::from(2295u32)
        );
    }

    #[test]
    fn guards_and_identities() {
        assert_eq!(predict_polar_space(4, 2), Err(GeometryError::NotPrime(4)));
        assert_eq!(predict_polar_space(1, 2), Err(GeometryError::NotPrime(1)));
        assert_eq!(predict_polar_space(2, 0), Err(GeometryError::ZeroQudits));
        for p in [2, 3, 5, 7, 11, 101] {
            for n in 1..8 {
                let pred = predict_polar_space(p, n).unwrap();
                assert!(pred.spread_identity_holds());
                if let Some([a, k, l, m]) = pred.srg() {
                    // k(k - lambda - 1) = (a - k - 1) mu
                    assert_eq!(&k * (&k - &l - 1u32), (&a - &k - 1u32) * &m);
                }
            }
        }
        assert!(predict_polar_space(2, 1).unwrap().srg().is_none());
        // Large inputs stay exact.
        let big = predict_polar_space(1_000_003, 40).unwrap();
        assert!(big.spread_identity_holds());
    }
}
