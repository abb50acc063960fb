//! Euler characteristics, splitting types and Chern-class arithmetic for
//! normalized rank-2 sheaves.
//!
//! The Euler characteristic uses `+c3/2` (e = 0) and `+(c2 + c3)/2` (e = -1)
//! for the third-Chern-class term. This is the sign that agrees with the
//! alternating sum over explicit resolutions (see [`chern_from_resolution`])
//! and with the identities in [`crate::spectrum`].

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sheafcalc::SheafSymbol;

/// Numerical class `(e, c2, c3)` of a normalized rank-2 sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 3]", into = "[i64; 3]")]
pub struct ChernClasses {
    e: i64,
    c2: i64,
    c3: i64,
}

impl ChernClasses {
    pub fn new(e: i64, c2: i64, c3: i64) -> Result<Self> {
        if e != -1 && e != 0 {
            return Err(Error::NotNormalized(e));
        }
        let parity_ok = match e {
            0 => c3.rem_euclid(2) == 0,
            _ => (c2 + c3).rem_euclid(2) == 0,
        };
        if !parity_ok {
            return Err(Error::Parity { e, c2, c3 });
        }
        Ok(Self { e, c2, c3 })
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn c3(&self) -> i64 {
        self.c3
    }

    pub fn splitting_type(&self) -> SplittingType {
        if self.e == -1 {
            SplittingType { a1: -1, a2: 0 }
        } else {
            SplittingType { a1: 0, a2: 0 }
        }
    }
}

impl TryFrom<[i64; 3]> for ChernClasses {
    type Error = Error;

    fn try_from(v: [i64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<ChernClasses> for [i64; 3] {
    fn from(cc: ChernClasses) -> Self {
        [cc.e, cc.c2, cc.c3]
    }
}

impl std::fmt::Display for ChernClasses {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.e, self.c2, self.c3)
    }
}

/// Generic splitting type `(a1, a2)` on a line, `a1 <= a2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingType {
    pub a1: i64,
    pub a2: i64,
}

impl SplittingType {
    pub fn new(a1: i64, a2: i64) -> Result<Self> {
        if a1 > a2 {
            return Err(Error::InvalidSpectrum(format!(
                "splitting type ({a1},{a2}) is not ordered"
            )));
        }
        Ok(Self { a1, a2 })
    }

    /// Splitting type of a normalized semistable sheaf with first Chern class `e`.
    pub fn for_e(e: i64) -> Result<Self> {
        match e {
            -1 => Ok(Self { a1: -1, a2: 0 }),
            0 => Ok(Self { a1: 0, a2: 0 }),
            other => Err(Error::NotNormalized(other)),
        }
    }

    pub fn e(&self) -> i64 {
        self.a1 + self.a2
    }
}

/// Truncated total Chern polynomial `1 + c1 t + c2 t^2 + c3 t^3`.
///
/// Products and quotients run over exact rationals; [`ChernSeries::to_integers`]
/// refuses to round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChernSeries {
    coeffs: [Rational64; 4],
}

impl ChernSeries {
    pub fn one() -> Self {
        Self::from_integers([1, 0, 0, 0])
    }

    pub fn from_integers(c: [i64; 4]) -> Self {
        Self {
            coeffs: c.map(Rational64::from_integer),
        }
    }

    /// `c_t(O(a)) = 1 + a t`.
    pub fn line_bundle(a: i64) -> Self {
        Self::from_integers([1, a, 0, 0])
    }

    pub fn coefficient(&self, degree: usize) -> Rational64 {
        self.coeffs[degree]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = [Rational64::from_integer(0); 4];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate().take(4 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Truncated power-series inverse; the constant term is always 1.
    pub fn inverse(&self) -> Self {
        let mut inv = [Rational64::from_integer(0); 4];
        inv[0] = Rational64::from_integer(1) / self.coeffs[0];
        for n in 1..4 {
            let mut acc = Rational64::from_integer(0);
            for k in 1..=n {
                acc += self.coeffs[k] * inv[n - k];
            }
            inv[n] = -acc / self.coeffs[0];
        }
        Self { coeffs: inv }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    pub fn to_integers(&self) -> Result<[i64; 4]> {
        let mut out = [0i64; 4];
        for (degree, c) in self.coeffs.iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::NonIntegral { degree });
            }
            out[degree] = c.to_integer();
        }
        Ok(out)
    }
}

/// Dimension type of `Q = E^vv / E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityType {
    /// `Q` vanishes.
    Reflexive,
    ZeroDimensional,
    PureOneDimensional,
    Mixed,
}

/// The maximal 0-dimensional subsheaf of `Q` (by length) and its pure
/// 1-dimensional quotient (by symbol).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    pub zero_dim_length: i64,
    pub one_dim_part: Option<SheafSymbol>,
}

impl SingularityProfile {
    pub fn new(zero_dim_length: i64, one_dim_part: Option<SheafSymbol>) -> Result<Self> {
        if zero_dim_length < 0 {
            return Err(Error::InvalidSpectrum(format!(
                "negative singular length {zero_dim_length}"
            )));
        }
        Ok(Self {
            zero_dim_length,
            one_dim_part,
        })
    }

    pub fn classify(&self) -> SingularityType {
        match (self.zero_dim_length > 0, self.one_dim_part.is_some()) {
            (false, false) => SingularityType::Reflexive,
            (true, false) => SingularityType::ZeroDimensional,
            (false, true) => SingularityType::PureOneDimensional,
            (true, true) => SingularityType::Mixed,
        }
    }

    /// The invariant `s`, which is the length of the 0-dimensional part.
    pub fn s(&self) -> i64 {
        self.zero_dim_length
    }
}

/// `chi(E(t))` by Hirzebruch-Riemann-Roch.
pub fn euler_characteristic(cc: &ChernClasses, t: i64) -> i64 {
    let (c2, c3) = (cc.c2, cc.c3);
    // Both cubic numerators are divisible (6 | (t+1)(t+2)(2t+3), 3 | three
    // consecutive integers) and parity makes the c3 term integral.
    if cc.e == -1 {
        (t + 1) * (t + 2) * (2 * t + 3) / 6 - c2 * (t + 2) + (c2 + c3) / 2
    } else {
        (t + 1) * (t + 2) * (t + 3) / 3 - c2 * (t + 2) + c3 / 2
    }
}

/// Checked variant of [`euler_characteristic`] taking raw integers.
pub fn euler_characteristic_raw(e: i64, c2: i64, c3: i64, t: i64) -> Result<i64> {
    Ok(euler_characteristic(&ChernClasses::new(e, c2, c3)?, t))
}

/// `chi(O(a + t)) = binom(a + t + 3, 3)`.
pub fn line_bundle_chi(a: i64, t: i64) -> i64 {
    let n = a + t;
    (n + 1) * (n + 2) * (n + 3) / 6
}

pub fn splitting_type(e: i64) -> Result<SplittingType> {
    SplittingType::for_e(e)
}

/// `chi(E|_H(t)) = chi(E(t)) - chi(E(t-1))` for a generic plane `H`.
pub fn restriction_chi(cc: &ChernClasses, t: i64) -> i64 {
    euler_characteristic(cc, t) - euler_characteristic(cc, t - 1)
}

/// Number of entries of the spectrum, `m = c2`.
pub fn spectrum_length(cc: &ChernClasses) -> Result<usize> {
    if cc.c2 <= 0 {
        return Err(Error::DegenerateClass(cc.c2));
    }
    let a2 = cc.splitting_type().a2;
    debug_assert_eq!(-restriction_chi(cc, -a2 - 1), cc.c2);
    Ok(cc.c2 as usize)
}

/// Total Chern series of the virtual sheaf `sum O(a_i) - sum O(b_j)`.
pub fn resolution_series(positive_terms: &[i64], negative_terms: &[i64]) -> ChernSeries {
    let num = positive_terms
        .iter()
        .fold(ChernSeries::one(), |acc, &a| acc.mul(&ChernSeries::line_bundle(a)));
    let den = negative_terms
        .iter()
        .fold(ChernSeries::one(), |acc, &b| acc.mul(&ChernSeries::line_bundle(b)));
    num.div(&den)
}

/// Chern classes of a rank-2 sheaf given by a resolution or monad by line bundles.
pub fn chern_from_resolution(positive_terms: &[i64], negative_terms: &[i64]) -> Result<ChernClasses> {
    let rank = positive_terms.len() as i64 - negative_terms.len() as i64;
    if rank != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: rank,
        });
    }
    let [_, c1, c2, c3] = resolution_series(positive_terms, negative_terms).to_integers()?;
    ChernClasses::new(c1, c2, c3)
}

/// Invariants of `E = ker(F -> O_S)` for `n_points` general points: the
/// quotient has `c_t = 1 + 2 n t^3`, so only `c3` drops, by `2 n`.
pub fn kernel_invariants(f_chern: &ChernClasses, n_points: u32) -> Result<(ChernClasses, i64)> {
    let n = i64::from(n_points);
    let cc = ChernClasses::new(f_chern.e, f_chern.c2, f_chern.c3 - 2 * n)?;
    Ok((cc, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cc(e: i64, c2: i64, c3: i64) -> ChernClasses {
        ChernClasses::new(e, c2, c3).unwrap()
    }

    // Independent route: alternating sum of binomials over the resolution.
    fn chi_from_terms(pos: &[i64], neg: &[i64], t: i64) -> i64 {
        pos.iter().map(|&a| line_bundle_chi(a, t)).sum::<i64>()
            - neg.iter().map(|&b| line_bundle_chi(b, t)).sum::<i64>()
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&cc(0, 0, 0), 0), 2);
        assert_eq!(euler_characteristic(&cc(-1, 2, 0), -1), -1);
        assert_eq!(euler_characteristic(&cc(-1, 1, 1), 0), 0);
        assert_eq!(euler_characteristic(&cc(0, 3, 0), -1), -3);
    }

    #[test]
    fn parity_violation_rejected() {
        assert!(matches!(ChernClasses::new(0, 3, 1), Err(Error::Parity { .. })));
        assert!(matches!(ChernClasses::new(-1, 2, 1), Err(Error::Parity { .. })));
        assert!(euler_characteristic_raw(-1, 2, 2, 0).is_ok());
    }

    #[test]
    fn line_bundle_chi_examples() {
        assert_eq!(line_bundle_chi(0, 0), 1);
        assert_eq!(line_bundle_chi(-1, 0), 0);
        assert_eq!(line_bundle_chi(-4, 0), -1);
        for n in -3..=-1 {
            assert_eq!(line_bundle_chi(n, 0), 0);
        }
    }

    #[test]
    fn splitting_types() {
        assert_eq!(splitting_type(-1).unwrap(), SplittingType { a1: -1, a2: 0 });
        assert_eq!(splitting_type(0).unwrap(), SplittingType { a1: 0, a2: 0 });
        assert_eq!(splitting_type(-2), Err(Error::NotNormalized(-2)));
    }

    #[test]
    fn restriction_chi_examples() {
        assert_eq!(restriction_chi(&cc(-1, 2, 0), -1), -2);
        assert_eq!(restriction_chi(&cc(0, 3, 0), -1), -3);
        assert_eq!(restriction_chi(&cc(0, 0, 0), 0), 2);
    }

    #[test]
    fn spectrum_length_examples() {
        assert_eq!(spectrum_length(&cc(-1, 2, 0)).unwrap(), 2);
        assert_eq!(spectrum_length(&cc(0, 3, 0)).unwrap(), 3);
        assert_eq!(spectrum_length(&cc(0, 1, 0)).unwrap(), 1);
        assert_eq!(spectrum_length(&cc(0, 0, 0)), Err(Error::DegenerateClass(0)));
    }

    #[test]
    fn chern_from_resolution_examples() {
        assert_eq!(chern_from_resolution(&[-1, -1, -1], &[-2]).unwrap(), cc(-1, 1, 1));
        assert_eq!(chern_from_resolution(&[-1, 0, 0, 1], &[-2, 2]).unwrap(), cc(0, 3, 0));
        assert_eq!(chern_from_resolution(&[0, 0], &[]).unwrap(), cc(0, 0, 0));
        assert_eq!(
            chern_from_resolution(&[0, 0, 0], &[]),
            Err(Error::RankMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn series_quotient_matches_hand_expansion() {
        // (1 - t)^3 / (1 - 2t) = 1 - t + t^2 + t^3
        let s = resolution_series(&[-1, -1, -1], &[-2]);
        assert_eq!(s.to_integers().unwrap(), [1, -1, 1, 1]);
    }

    #[test]
    fn non_integral_series_detected() {
        let half = ChernSeries {
            coeffs: [
                Rational64::from_integer(1),
                Rational64::new(1, 2),
                Rational64::from_integer(0),
                Rational64::from_integer(0),
            ],
        };
        assert_eq!(half.to_integers(), Err(Error::NonIntegral { degree: 1 }));
    }

    #[test]
    fn resolution_oracle_agrees_with_hrr() {
        let cases: [(&[i64], &[i64]); 4] = [
            (&[-1, -1, -1], &[-2]),
            (&[-1, 0, 0, 1], &[-2, 2]),
            (&[0; 8], &[-1, -1, -1, 1, 1, 1]),
            (&[-1, 0], &[]),
        ];
        for (pos, neg) in cases {
            let c = chern_from_resolution(pos, neg).unwrap();
            for t in -10..=10 {
                assert_eq!(euler_characteristic(&c, t), chi_from_terms(pos, neg, t), "{pos:?} {neg:?} t={t}");
            }
        }
    }

    #[test]
    fn kernel_invariants_examples() {
        assert_eq!(kernel_invariants(&cc(0, 3, 12), 6).unwrap(), (cc(0, 3, 0), 6));
        assert_eq!(kernel_invariants(&cc(-1, 2, 4), 2).unwrap(), (cc(-1, 2, 0), 2));
        assert_eq!(kernel_invariants(&cc(0, 1, 0), 0).unwrap(), (cc(0, 1, 0), 0));
    }

    #[test]
    fn singularity_profile_classification() {
        let line = SheafSymbol::RationalCurveModule { degree: 1, shift: 1 };
        assert_eq!(SingularityProfile::new(0, None).unwrap().classify(), SingularityType::Reflexive);
        assert_eq!(SingularityProfile::new(2, None).unwrap().classify(), SingularityType::ZeroDimensional);
        assert_eq!(
            SingularityProfile::new(0, Some(line.clone())).unwrap().classify(),
            SingularityType::PureOneDimensional
        );
        assert_eq!(SingularityProfile::new(1, Some(line)).unwrap().classify(), SingularityType::Mixed);
        assert!(SingularityProfile::new(-1, None).is_err());
    }

    #[test]
    fn chern_classes_json_is_a_triple() {
        let c = cc(-1, 2, 0);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[-1,2,0]");
        assert!(serde_json::from_str::<ChernClasses>("[0,3,1]").is_err());
    }
}
