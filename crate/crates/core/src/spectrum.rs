//! The spectrum of a rank-2 torsion-free sheaf together with the numerical
//! conditions it must satisfy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{euler_characteristic, spectrum_length, ChernClasses, SplittingType};

/// Nondecreasing, nonempty list of integers `k1 <= ... <= km`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Spectrum(Vec<i64>);

impl Spectrum {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpectrum(format!("{values:?} is not nondecreasing")));
        }
        Ok(Self(values))
    }

    pub fn from_unsorted(mut values: Vec<i64>) -> Result<Self> {
        values.sort_unstable();
        Self::new(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> i64 {
        *self.0.last().expect("nonempty")
    }

    pub fn smallest(&self) -> i64 {
        self.0[0]
    }

    fn contains(&self, k: i64) -> bool {
        self.0.binary_search(&k).is_ok()
    }
}

impl TryFrom<Vec<i64>> for Spectrum {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Spectrum> for Vec<i64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Spectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidSpectrum(format!("cannot parse {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

/// A spectrum with its companion invariant `s = h0(Ext2(E, O))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpectrumWithS {
    pub spectrum: Spectrum,
    pub s: i64,
}

impl SpectrumWithS {
    pub fn new(spectrum: Spectrum, s: i64) -> Result<Self> {
        if s < 0 {
            return Err(Error::NegativeS(s));
        }
        Ok(Self { spectrum, s })
    }
}

impl fmt::Display for SpectrumWithS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} s={}", self.spectrum, self.s)
    }
}

/// The parameter `s_{E_H}` of the upward chain condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ChainUpParam {
    Bounded(u32),
    #[default]
    Unbounded,
}

impl FromStr for ChainUpParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("unbounded") {
            return Ok(Self::Unbounded);
        }
        s.parse::<u32>()
            .map(Self::Bounded)
            .map_err(|_| Error::InvalidSpectrum(format!("bad s_eh value {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    General,
    ZeroDimensional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainViolation {
    /// The spectrum entry (or threshold) that triggered the rule.
    pub trigger: i64,
    pub missing: Vec<i64>,
}

pub fn c3_from_spectrum(e: i64, c2: i64, sw: &SpectrumWithS) -> Result<i64> {
    let m = sw.spectrum.len();
    if c2 < 0 || m != c2 as usize {
        return Err(Error::LengthMismatch {
            expected: c2.max(0) as usize,
            found: m,
        });
    }
    let sum = sw.spectrum.sum();
    match e {
        -1 => Ok(-2 * sum - c2 - 2 * sw.s),
        0 => Ok(-2 * sum - 2 * sw.s),
        other => Err(Error::NotNormalized(other)),
    }
}

/// Solves the third-Chern-class identity for `s`.
pub fn s_from_spectrum(cc: &ChernClasses, spectrum: &Spectrum) -> Result<i64> {
    let s = raw_s(cc, spectrum)?;
    if s < 0 {
        return Err(Error::NegativeS(s));
    }
    Ok(s)
}

fn raw_s(cc: &ChernClasses, spectrum: &Spectrum) -> Result<i64> {
    let m = spectrum_length(cc)?;
    if spectrum.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: spectrum.len(),
        });
    }
    let twice_s = -2 * spectrum.sum() - cc.c3() - if cc.e() == -1 { cc.c2() } else { 0 };
    // even by the parity law carried by ChernClasses
    Ok(twice_s / 2)
}

/// `sum k_i = m (a2 - 1) - chi(E(-a2 - 1)) - s` with `m = c2`.
pub fn sum_via_chi(cc: &ChernClasses, s: i64) -> i64 {
    let a2 = cc.splitting_type().a2;
    cc.c2() * (a2 - 1) - euler_characteristic(cc, -a2 - 1) - s
}

/// Downward chain rule: an entry `k <= a1 - 1` forces every integer in `[k, -1]`.
pub fn validate_chain_down(spectrum: &Spectrum, st: &SplittingType) -> Vec<ChainViolation> {
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for &k in spectrum.values() {
        if k > st.a1 - 1 || seen.contains(&k) {
            continue;
        }
        seen.push(k);
        let missing: Vec<i64> = (k..=-1).filter(|&v| !spectrum.contains(v)).collect();
        if !missing.is_empty() {
            out.push(ChainViolation { trigger: k, missing });
        }
    }
    out
}

/// Upward chain rule: for `k > a2 + 1`, if at least `s_eh + 1` entries are
/// `>= k`, every integer in `[a2 + 1, k]` occurs.
pub fn validate_chain_up(spectrum: &Spectrum, st: &SplittingType, p: ChainUpParam) -> Vec<ChainViolation> {
    let ChainUpParam::Bounded(s_eh) = p else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for k in (st.a2 + 2)..=spectrum.largest() {
        let count = spectrum.values().iter().filter(|&&v| v >= k).count();
        if count < s_eh as usize + 1 {
            break;
        }
        let missing: Vec<i64> = ((st.a2 + 1)..=k).filter(|&v| !spectrum.contains(v)).collect();
        if !missing.is_empty() {
            out.push(ChainViolation { trigger: k, missing });
        }
    }
    out
}

/// Symmetry of the spectrum of a reflexive sheaf, for `e = 0` only.
pub fn validate_reflexive_symmetry(spectrum: &Spectrum, e: i64) -> Result<bool> {
    match e {
        0 => {
            let mut neg: Vec<i64> = spectrum.values().iter().map(|k| -k).collect();
            neg.sort_unstable();
            Ok(neg == spectrum.values())
        }
        -1 => Err(Error::Unsupported(
            "reflexive symmetry is only defined here for e = 0".into(),
        )),
        other => Err(Error::NotNormalized(other)),
    }
}

/// Upper bound on `s` for a normalized semistable sheaf.
pub fn s_upper_bound(e: i64, c2: i64, regime: Regime) -> Result<i64> {
    if c2 < 1 {
        return Err(Error::DegenerateClass(c2));
    }
    let sq = c2 * c2;
    match (e, regime) {
        (0, Regime::General) => Ok((sq + c2) / 2),
        (-1, Regime::General) => Ok((sq + 3 * c2) / 2),
        (0, Regime::ZeroDimensional) => Ok((sq - c2 + 2) / 2),
        (-1, Regime::ZeroDimensional) => Ok(if c2 % 2 == 0 { sq / 2 } else { (sq - 1) / 2 }),
        (other, _) => Err(Error::NotNormalized(other)),
    }
}

/// Whether a sheaf with non-trivial `Q` has purely 1-dimensional singularities.
pub fn pure_one_dimensional(s: i64) -> bool {
    s == 0
}

/// All candidate spectra for `cc` passing both chain rules, with
/// `0 <= s <= general bound`, sorted lexicographically.
pub fn enumerate_spectra(cc: &ChernClasses, p: ChainUpParam) -> Result<Vec<SpectrumWithS>> {
    let m = spectrum_length(cc)?;
    let st = cc.splitting_type();
    let s_max = s_upper_bound(cc.e(), cc.c2(), Regime::General)?;
    // sum k_i = base - s
    let base = if cc.e() == -1 {
        (-cc.c3() - cc.c2()) / 2
    } else {
        -cc.c3() / 2
    };
    let sum_hi = base;
    let sum_lo = base - s_max;
    // an entry below a1 - 1 drags every integer up to -1 along
    let lo = st.a1.min(-(m as i64));
    let hi = sum_hi - (m as i64 - 1) * lo;
    if hi < lo {
        return Ok(Vec::new());
    }

    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(m);
    let search = Search {
        m,
        lo,
        hi,
        sum_lo,
        sum_hi,
    };
    search.descend(&mut prefix, 0, &mut |values| {
        let spectrum = Spectrum(values.to_vec());
        if !validate_chain_down(&spectrum, &st).is_empty() || !validate_chain_up(&spectrum, &st, p).is_empty() {
            return;
        }
        let s = base - spectrum.sum();
        out.push(SpectrumWithS { spectrum, s });
    });
    out.sort();
    Ok(out)
}

struct Search {
    m: usize,
    lo: i64,
    hi: i64,
    sum_lo: i64,
    sum_hi: i64,
}

impl Search {
    fn descend(&self, prefix: &mut Vec<i64>, sum: i64, visit: &mut impl FnMut(&[i64])) {
        if prefix.len() == self.m {
            if (self.sum_lo..=self.sum_hi).contains(&sum) {
                visit(prefix);
            }
            return;
        }
        let start = prefix.last().copied().unwrap_or(self.lo);
        let remaining = (self.m - prefix.len()) as i64;
        for v in start..=self.hi {
            // the rest is at least v each
            if sum + remaining * v > self.sum_hi {
                break;
            }
            if sum + v + (remaining - 1) * self.hi < self.sum_lo {
                continue;
            }
            prefix.push(v);
            self.descend(prefix, sum + v, visit);
            prefix.pop();
        }
    }
}
