//! Cohomology tables `h^i(E(t))` and their relation to the spectrum.
//!
//! For a sheaf with splitting type `(a1, a2)` and spectrum `(k_1..k_m)`:
//!
//! ```text
//! h1(E(l)) = s + sum_i h0(O_P1(k_i + l + 1))    for l <= -a2 - 1
//! h2(E(l)) =     sum_i h1(O_P1(k_i + l + 1))    for l >= a1 - 3
//! ```
//!
//! Outside these windows an entry stays [`Entry::Unknown`]; it is never
//! silently replaced by zero.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{euler_characteristic, ChernClasses, SplittingType};
use crate::spectrum::{Spectrum, SpectrumWithS};

/// Closed interval of twists `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistRange {
    pub lo: i64,
    pub hi: i64,
}

impl TwistRange {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::RangeInsufficient(format!("empty twist range [{lo},{hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, t: i64) -> bool {
        (self.lo..=self.hi).contains(&t)
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for TwistRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl std::str::FromStr for TwistRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::RangeInsufficient(format!("cannot parse range {s:?}, expected LO:HI"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi)
    }
}

impl Serialize for TwistRange {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TwistRange {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[i64; 2]>::deserialize(deserializer)?;
        Self::new(lo, hi).map_err(de::Error::custom)
    }
}

/// One cohomology dimension: exact, unknown, or bracketed.
///
/// JSON form: a number, `null`, or `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Entry {
    Known(i64),
    #[default]
    Unknown,
    Bounded { lo: i64, hi: i64 },
}

impl Entry {
    pub fn known(&self) -> Option<i64> {
        match self {
            Entry::Known(v) => Some(*v),
            _ => None,
        }
    }

    /// Lower and upper bound, `None` for an unbounded top.
    pub fn bounds(&self) -> (i64, Option<i64>) {
        match *self {
            Entry::Known(v) => (v, Some(v)),
            Entry::Unknown => (0, None),
            Entry::Bounded { lo, hi } => (lo, Some(hi)),
        }
    }

    pub(crate) fn from_bounds(lo: i64, hi: Option<i64>) -> Self {
        match hi {
            Some(h) if h == lo => Entry::Known(lo),
            Some(h) => Entry::Bounded { lo, hi: h },
            None if lo == 0 => Entry::Unknown,
            None => Entry::Bounded { lo, hi: i64::MAX },
        }
    }

    fn is_valid(&self) -> bool {
        match *self {
            Entry::Known(v) => v >= 0,
            Entry::Unknown => true,
            Entry::Bounded { lo, hi } => 0 <= lo && lo <= hi,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Known(v) => write!(f, "{v}"),
            Entry::Unknown => f.write_str("?"),
            Entry::Bounded { lo, hi } if *hi == i64::MAX => write!(f, "{lo}.."),
            Entry::Bounded { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Known(i64),
    Bounded([i64; 2]),
    Unknown(Option<()>),
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Entry::Known(v) => RawEntry::Known(v),
            Entry::Unknown => RawEntry::Unknown(None),
            Entry::Bounded { lo, hi } => RawEntry::Bounded([lo, hi]),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entry = match RawEntry::deserialize(deserializer)? {
            RawEntry::Known(v) => Entry::Known(v),
            RawEntry::Bounded([lo, hi]) => Entry::Bounded { lo, hi },
            RawEntry::Unknown(_) => Entry::Unknown,
        };
        if !entry.is_valid() {
            return Err(de::Error::custom(format!("invalid cohomology entry {entry}")));
        }
        Ok(entry)
    }
}

/// Dimensions `h0..h3` of `E(t)` for every `t` in a range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct CohomologyTable {
    range: TwistRange,
    rows: BTreeMap<i64, [Entry; 4]>,
}

#[derive(Deserialize)]
struct RawTable {
    range: TwistRange,
    // string keys: buffered deserializers cannot read integer map keys
    #[serde(default)]
    rows: BTreeMap<String, [Entry; 4]>,
}

impl TryFrom<RawTable> for CohomologyTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        let mut table = CohomologyTable::unknown(raw.range);
        for (key, row) in raw.rows {
            let t: i64 = key
                .trim()
                .parse()
                .map_err(|_| Error::InconsistentTable(format!("bad twist key {key:?}")))?;
            if !raw.range.contains(t) {
                return Err(Error::InconsistentTable(format!("row {t} outside range {}", raw.range)));
            }
            table.rows.insert(t, row);
        }
        Ok(table)
    }
}

impl CohomologyTable {
    /// A table with every entry unknown.
    pub fn unknown(range: TwistRange) -> Self {
        let rows = range.iter().map(|t| (t, [Entry::Unknown; 4])).collect();
        Self { range, rows }
    }

    pub fn from_rows(range: TwistRange, rows: impl IntoIterator<Item = (i64, [Entry; 4])>) -> Result<Self> {
        let mut table = Self::unknown(range);
        for (t, row) in rows {
            table.set_row(t, row)?;
        }
        Ok(table)
    }

    /// Builds a table from exact rows `[h0, h1, h2, h3]`.
    pub fn from_known_rows(range: TwistRange, rows: impl IntoIterator<Item = (i64, [i64; 4])>) -> Result<Self> {
        Self::from_rows(range, rows.into_iter().map(|(t, r)| (t, r.map(Entry::Known))))
    }

    pub fn range(&self) -> TwistRange {
        self.range
    }

    pub fn row(&self, t: i64) -> Option<&[Entry; 4]> {
        self.rows.get(&t)
    }

    pub fn rows(&self) -> impl Iterator<Item = (i64, &[Entry; 4])> {
        self.rows.iter().map(|(t, r)| (*t, r))
    }

    pub fn entry(&self, t: i64, degree: usize) -> Entry {
        self.rows.get(&t).map(|r| r[degree]).unwrap_or(Entry::Unknown)
    }

    pub fn known(&self, t: i64, degree: usize) -> Option<i64> {
        self.entry(t, degree).known()
    }

    pub fn set(&mut self, t: i64, degree: usize, entry: Entry) -> Result<()> {
        if !self.range.contains(t) {
            return Err(Error::InconsistentTable(format!("twist {t} outside range {}", self.range)));
        }
        if !entry.is_valid() {
            return Err(Error::InconsistentTable(format!("invalid entry {entry} at twist {t}")));
        }
        self.rows.entry(t).or_insert([Entry::Unknown; 4])[degree] = entry;
        Ok(())
    }

    pub fn set_row(&mut self, t: i64, row: [Entry; 4]) -> Result<()> {
        for (i, e) in row.into_iter().enumerate() {
            self.set(t, i, e)?;
        }
        Ok(())
    }

    /// Restricts (or extends with unknowns) to another range.
    pub fn with_range(&self, range: TwistRange) -> Self {
        let mut out = Self::unknown(range);
        for t in range.iter() {
            if let Some(r) = self.rows.get(&t) {
                out.rows.insert(t, *r);
            }
        }
        out
    }

    /// True if every entry in range is exact.
    pub fn is_total(&self) -> bool {
        self.rows.values().all(|r| r.iter().all(|e| e.known().is_some()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InconsistentTable(e.to_string()))
    }

    /// Markdown with one row per twist (descending) and one column per degree.
    pub fn to_markdown(&self) -> String {
        self.to_markdown_columns(&[0, 1, 2, 3])
    }

    pub fn to_markdown_columns(&self, degrees: &[usize]) -> String {
        let mut out = String::from("| k \\ i |");
        for d in degrees {
            let _ = write!(out, " {d} |");
        }
        out.push_str("\n|---|");
        for _ in degrees {
            out.push_str("---|");
        }
        out.push('\n');
        for t in self.range.iter().rev() {
            let _ = write!(out, "| {t} |");
            for &d in degrees {
                let _ = write!(out, " {} |", self.entry(t, d));
            }
            out.push('\n');
        }
        out
    }
}

/// Twists where the spectrum formulas apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidityWindows {
    /// `h1` formula holds for `l <= h1_max`.
    pub h1_max: i64,
    /// `h2` formula holds for `l >= h2_min`.
    pub h2_min: i64,
}

impl ValidityWindows {
    pub fn new(st: &SplittingType) -> Self {
        Self {
            h1_max: -st.a2 - 1,
            h2_min: st.a1 - 3,
        }
    }

    pub fn h1(&self, l: i64) -> bool {
        l <= self.h1_max
    }

    pub fn h2(&self, l: i64) -> bool {
        l >= self.h2_min
    }
}

/// `(h0, h1)` of `O_P1(d)`.
pub fn p1_cohomology(d: i64) -> (i64, i64) {
    ((d + 1).max(0), (-d - 1).max(0))
}

/// Table determined by a spectrum, filled on the validity windows plus the
/// forced vanishing `h0(E(t)) = 0` for `t <= -1` and `h3(E(t)) = 0` for
/// `t >= -3 - e`.
pub fn table_from_spectrum(sw: &SpectrumWithS, st: &SplittingType, range: TwistRange) -> CohomologyTable {
    let w = ValidityWindows::new(st);
    let e = st.e();
    let mut table = CohomologyTable::unknown(range);
    for t in range.iter() {
        let row = table.rows.get_mut(&t).expect("row in range");
        if t <= -1 {
            row[0] = Entry::Known(0);
        }
        if w.h1(t) {
            let sum: i64 = sw.spectrum.values().iter().map(|k| p1_cohomology(k + t + 1).0).sum();
            row[1] = Entry::Known(sw.s + sum);
        }
        if w.h2(t) {
            let sum: i64 = sw.spectrum.values().iter().map(|k| p1_cohomology(k + t + 1).1).sum();
            row[2] = Entry::Known(sum);
        }
        if t >= -3 - e {
            row[3] = Entry::Known(0);
        }
    }
    table
}

/// Recovers `(spectrum, s)` from the `h1` and `h2` columns.
///
/// The counts `#{k_i <= j}` come from successive differences of `h2`, the
/// counts `#{k_i >= j}` from successive differences of `h1`; the two halves
/// are joined at a twist where both columns are known. `s` is read off the
/// stabilized `h1`. The result is checked against every known in-window entry.
pub fn spectrum_from_table(table: &CohomologyTable, st: &SplittingType) -> Result<SpectrumWithS> {
    let w = ValidityWindows::new(st);
    let h1 = |l: i64| if w.h1(l) { table.known(l, 1) } else { None };
    let h2 = |l: i64| if w.h2(l) { table.known(l, 2) } else { None };
    let inconsistent = |msg: String| Error::InconsistentTable(msg);

    let pivot = (w.h2_min + 1..=w.h1_max)
        .rev()
        .find(|&l| h1(l).is_some() && h1(l - 1).is_some() && h2(l).is_some() && h2(l - 1).is_some())
        .ok_or_else(|| {
            Error::RangeInsufficient("no two consecutive twists with both h1 and h2 known".into())
        })?;

    let mut below = h2(pivot - 1).unwrap() - h2(pivot).unwrap();
    let mut above = h1(pivot).unwrap() - h1(pivot - 1).unwrap();
    if below < 0 || above < 0 {
        return Err(inconsistent(format!("cohomology decreases in the wrong direction at twist {pivot}")));
    }
    let m = below + above;
    if m < 1 {
        return Err(inconsistent("table determines an empty spectrum".into()));
    }

    let mut values = Vec::with_capacity(m as usize);

    // entries <= j, where j = -l - 2 and h2(l) = sum_{k <= j} (j - k)
    let mut l = pivot;
    loop {
        let j = -l - 2;
        let r = h2(l).expect("walked twists are known");
        if r == 0 {
            values.extend(std::iter::repeat_n(j, below as usize));
            break;
        }
        if below == 0 {
            return Err(inconsistent(format!("h2({l}) = {r} but no spectrum entry lies below {j}")));
        }
        match h2(l + 1) {
            Some(next) => {
                let below_next = r - next;
                if below_next < 0 || below_next > below {
                    return Err(inconsistent(format!("h2 differences are not monotone at twist {}", l + 1)));
                }
                values.extend(std::iter::repeat_n(j, (below - below_next) as usize));
                below = below_next;
                l += 1;
            }
            None => {
                // top not witnessed: decode from the residual if it is unique
                if below == 1 {
                    values.push(j - r);
                } else if r == 1 {
                    values.push(j - 1);
                    values.extend(std::iter::repeat_n(j, (below - 1) as usize));
                } else {
                    return Err(Error::RangeInsufficient(format!(
                        "h2 does not reach 0 above twist {l}"
                    )));
                }
                break;
            }
        }
    }

    // entries >= j, where j = -l - 1
    let mut l = pivot;
    let s = loop {
        if above == 0 {
            break h1(l).expect("walked twists are known");
        }
        let j = -l - 1;
        let (Some(a), Some(b)) = (h1(l - 1), h1(l - 2)) else {
            return Err(Error::RangeInsufficient(format!("h1 does not stabilize below twist {l}")));
        };
        let above_next = a - b;
        if above_next < 0 || above_next > above {
            return Err(inconsistent(format!("h1 differences are not monotone at twist {}", l - 1)));
        }
        values.extend(std::iter::repeat_n(j, (above - above_next) as usize));
        above = above_next;
        l -= 1;
    };
    if s < 0 {
        return Err(inconsistent(format!("stabilized h1 is negative ({s})")));
    }

    let sw = SpectrumWithS::new(Spectrum::from_unsorted(values)?, s)?;

    let expected = table_from_spectrum(&sw, st, table.range());
    for t in table.range().iter() {
        for degree in [1, 2] {
            if let (Some(found), Some(want)) = (table.known(t, degree), expected.known(t, degree)) {
                if found != want {
                    return Err(inconsistent(format!(
                        "h{degree}({t}) = {found}, but {sw} predicts {want}"
                    )));
                }
            }
        }
    }
    Ok(sw)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiViolation {
    pub twist: i64,
    pub expected: i64,
    pub found: i64,
}

/// Checks the alternating sums of `table` against `chi(E(t))`.
///
/// Rows with all four entries known are checked in full. In the window
/// `-3 - e <= t <= -1`, where `h0` and `h3` vanish for a semistable sheaf,
/// `h2 - h1` is checked whenever both are known.
pub fn chi_consistency(table: &CohomologyTable, cc: &ChernClasses) -> Vec<ChiViolation> {
    let mut out = Vec::new();
    for (t, row) in table.rows() {
        let expected = euler_characteristic(cc, t);
        let known: Vec<Option<i64>> = row.iter().map(Entry::known).collect();
        let found = match known.as_slice() {
            [Some(h0), Some(h1), Some(h2), Some(h3)] => Some(h0 - h1 + h2 - h3),
            [_, Some(h1), Some(h2), _] if (-3 - cc.e()..=-1).contains(&t) => Some(h2 - h1),
            _ => None,
        };
        if let Some(found) = found {
            if found != expected {
                out.push(ChiViolation { twist: t, expected, found });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EMINUS: SplittingType = SplittingType { a1: -1, a2: 0 };
    const EZERO: SplittingType = SplittingType { a1: 0, a2: 0 };

    fn sws(v: &[i64], s: i64) -> SpectrumWithS {
        SpectrumWithS::new(Spectrum::new(v.to_vec()).unwrap(), s).unwrap()
    }

    fn range(lo: i64, hi: i64) -> TwistRange {
        TwistRange::new(lo, hi).unwrap()
    }

    /// Rows (k, h1, h2) for k = -1..-4 as printed, with h0 and h3 unknown.
    fn printed(rows: [(i64, i64, i64); 4]) -> CohomologyTable {
        CohomologyTable::from_rows(
            range(-4, -1),
            rows.map(|(k, h1, h2)| (k, [Entry::Unknown, Entry::Known(h1), Entry::Known(h2), Entry::Unknown])),
        )
        .unwrap()
    }

    fn table2() -> CohomologyTable {
        printed([(-1, 1, 0), (-2, 0, 1), (-3, 0, 3), (-4, 0, 5)])
    }

    #[test]
    fn p1_examples() {
        assert_eq!(p1_cohomology(3), (4, 0));
        assert_eq!(p1_cohomology(-1), (0, 0));
        assert_eq!(p1_cohomology(-3), (0, 2));
    }

    #[test]
    fn table_from_spectrum_examples() {
        let t = table_from_spectrum(&sws(&[-1, 0], 0), &EMINUS, range(-4, -1));
        assert_eq!(t.known(-3, 2), Some(3));
        let t = table_from_spectrum(&sws(&[-1, -1], 1), &EMINUS, range(-4, -1));
        assert_eq!((t.known(-4, 1), t.known(-4, 2)), (Some(1), Some(6)));
        let t = table_from_spectrum(&sws(&[-2, -1], 2), &EMINUS, range(-4, -1));
        assert_eq!((t.known(-1, 1), t.known(-1, 2)), (Some(2), Some(1)));
        let t = table_from_spectrum(&sws(&[0, 0, 0], 0), &EZERO, range(-4, 2));
        assert_eq!(t.known(-1, 1), Some(3));
    }

    #[test]
    fn entries_outside_windows_stay_unknown() {
        let t = table_from_spectrum(&sws(&[0, 0, 0], 0), &EZERO, range(-8, 2));
        assert_eq!(t.entry(0, 1), Entry::Unknown);
        assert_eq!(t.entry(-4, 2), Entry::Unknown);
        assert_eq!(t.entry(-4, 3), Entry::Unknown);
        assert_eq!(t.entry(0, 0), Entry::Unknown);
        assert_eq!(t.entry(-3, 3), Entry::Known(0));
    }

    #[test]
    fn inversion_of_printed_tables() {
        assert_eq!(spectrum_from_table(&table2(), &EMINUS).unwrap(), sws(&[-1, 0], 0));
        let t5 = printed([(-1, 2, 1), (-2, 2, 3), (-3, 2, 5), (-4, 2, 7)]);
        assert_eq!(spectrum_from_table(&t5, &EMINUS).unwrap(), sws(&[-2, -1], 2));
        let t4 = printed([(-1, 1, 0), (-2, 1, 2), (-3, 1, 4), (-4, 1, 6)]);
        assert_eq!(spectrum_from_table(&t4, &EMINUS).unwrap(), sws(&[-1, -1], 1));
    }

    #[test]
    fn inversion_round_trip_zero() {
        let sw = sws(&[0, 0, 0], 0);
        let t = table_from_spectrum(&sw, &EZERO, range(-8, 2));
        assert_eq!(spectrum_from_table(&t, &EZERO).unwrap(), sw);
    }

    #[test]
    fn inversion_needs_overlap() {
        let t = printed([(-1, 1, 0), (-2, 0, 1), (-3, 0, 3), (-4, 0, 5)]).with_range(range(-1, -1));
        assert!(matches!(spectrum_from_table(&t, &EMINUS), Err(Error::RangeInsufficient(_))));
    }

    #[test]
    fn inversion_detects_non_monotone_h2() {
        let t = printed([(-1, 1, 0), (-2, 0, 1), (-3, 0, 2), (-4, 0, 0)]);
        assert!(matches!(spectrum_from_table(&t, &EMINUS), Err(Error::InconsistentTable(_))));
    }

    #[test]
    fn inversion_reports_ambiguous_top() {
        // two entries with residual 2: (-3,-1) and (-2,-2) fit equally well
        let sw = sws(&[-3, -1], 2);
        let full = table_from_spectrum(&sw, &EMINUS, range(-6, 1));
        let cut = full.with_range(range(-6, -1));
        assert_eq!(spectrum_from_table(&full, &EMINUS).unwrap(), sw);
        assert!(matches!(spectrum_from_table(&cut, &EMINUS), Err(Error::RangeInsufficient(_))));
    }

    #[test]
    fn chi_consistency_examples() {
        let cc = ChernClasses::new(-1, 2, 0).unwrap();
        assert!(chi_consistency(&table2(), &cc).is_empty());
        let t4 = printed([(-1, 1, 0), (-2, 1, 2), (-3, 1, 4), (-4, 1, 6)]);
        assert!(chi_consistency(&t4, &cc).is_empty());
        let wrong = ChernClasses::new(-1, 2, 2).unwrap();
        assert!(!chi_consistency(&table2(), &wrong).is_empty());
    }

    #[test]
    fn json_shape() {
        let t = CohomologyTable::from_rows(
            range(-1, 0),
            [
                (-1, [Entry::Known(0), Entry::Known(3), Entry::Unknown, Entry::Bounded { lo: 1, hi: 2 }]),
                (0, [Entry::Known(1), Entry::Unknown, Entry::Known(0), Entry::Known(0)]),
            ],
        )
        .unwrap();
        let json = t.to_json();
        assert_eq!(json, r#"{"range":[-1,0],"rows":{"-1":[0,3,null,[1,2]],"0":[1,null,0,0]}}"#);
        assert_eq!(CohomologyTable::from_json(&json).unwrap(), t);
        assert!(CohomologyTable::from_json(r#"{"range":[0,0],"rows":{"3":[0,0,0,0]}}"#).is_err());
        assert!(CohomologyTable::from_json(r#"{"range":[0,0],"rows":{"0":[-1,0,0,0]}}"#).is_err());
    }

    #[test]
    fn markdown_layout() {
        let md = table2().to_markdown_columns(&[1, 2]);
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines[0], "| k \\ i | 1 | 2 |");
        assert_eq!(lines[2], "| -1 | 1 | 0 |");
        assert_eq!(lines[5], "| -4 | 0 | 5 |");
    }
}
