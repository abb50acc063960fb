//! Symbolic building-block sheaves with exact cohomology, and the sequence
//! and monad machinery that combines them.

mod splice;

use serde::{Deserialize, Serialize};

use crate::cohomology::{p1_cohomology, CohomologyTable, Entry, TwistRange};
use crate::error::{Error, Result};
use crate::invariants::{chern_from_resolution, line_bundle_chi, ChernClasses};

pub use splice::Policy;

/// A sheaf whose cohomology table can be written down exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SheafSymbol {
    /// `O(degree)`.
    LineBundle { degree: i64 },
    DirectSum { terms: Vec<SheafSymbol> },
    /// Structure sheaf of `count` reduced points.
    PointSheaf { count: u32 },
    /// `O_P1(degree * t + shift)` pushed forward from a rational curve of the
    /// given degree (line: 1, conic: 2).
    RationalCurveModule { degree: i64, shift: i64 },
    /// A line bundle on a curve of the given genus with `chi(t) = slope * t + offset`.
    /// `generic` marks it as avoiding the special bundles, so inside the
    /// range `0 <= deg <= 2g - 2` it has the least possible cohomology.
    CurveModule {
        genus: i64,
        slope: i64,
        offset: i64,
        generic: bool,
    },
    /// Ideal sheaf of a curve, from `0 -> I -> O -> O_curve -> 0`.
    IdealOfCurve { curve: Box<SheafSymbol> },
    Twist { sheaf: Box<SheafSymbol>, by: i64 },
}

impl SheafSymbol {
    pub fn line_bundle(degree: i64) -> Self {
        Self::LineBundle { degree }
    }

    pub fn line_bundles(degrees: &[i64]) -> Self {
        Self::DirectSum {
            terms: degrees.iter().map(|&d| Self::line_bundle(d)).collect(),
        }
    }

    pub fn points(count: u32) -> Self {
        Self::PointSheaf { count }
    }

    /// `O_l(r)` on a line.
    pub fn line_module(r: i64) -> Self {
        Self::RationalCurveModule { degree: 1, shift: r }
    }

    /// Structure sheaf of a smooth conic.
    pub fn conic() -> Self {
        Self::RationalCurveModule { degree: 2, shift: 0 }
    }

    pub fn ideal_of(curve: SheafSymbol) -> Self {
        Self::IdealOfCurve { curve: Box::new(curve) }
    }

    pub fn twist(self, by: i64) -> Self {
        Self::Twist {
            sheaf: Box::new(self),
            by,
        }
    }

    pub fn sum(terms: Vec<SheafSymbol>) -> Self {
        Self::DirectSum { terms }
    }

    pub fn rank(&self) -> i64 {
        match self {
            Self::LineBundle { .. } | Self::IdealOfCurve { .. } => 1,
            Self::DirectSum { terms } => terms.iter().map(Self::rank).sum(),
            Self::PointSheaf { .. } | Self::RationalCurveModule { .. } | Self::CurveModule { .. } => 0,
            Self::Twist { sheaf, .. } => sheaf.rank(),
        }
    }

    /// Hilbert polynomial `chi(S(t))`, computed without cohomology.
    pub fn chi(&self, t: i64) -> i64 {
        match self {
            Self::LineBundle { degree } => line_bundle_chi(*degree, t),
            Self::DirectSum { terms } => terms.iter().map(|s| s.chi(t)).sum(),
            Self::PointSheaf { count } => i64::from(*count),
            Self::RationalCurveModule { degree, shift } => degree * t + shift + 1,
            Self::CurveModule { slope, offset, .. } => slope * t + offset,
            Self::IdealOfCurve { curve } => line_bundle_chi(0, t) - curve.chi(t),
            Self::Twist { sheaf, by } => sheaf.chi(t + by),
        }
    }

    /// Exact `[h0, h1, h2, h3]` of `S(t)`.
    pub fn row(&self, t: i64) -> Result<[i64; 4]> {
        match self {
            Self::LineBundle { degree } => {
                let n = degree + t;
                Ok(if n >= 0 {
                    [line_bundle_chi(n, 0), 0, 0, 0]
                } else if n <= -4 {
                    [0, 0, 0, -line_bundle_chi(n, 0)]
                } else {
                    [0; 4]
                })
            }
            Self::DirectSum { terms } => terms.iter().try_fold([0; 4], |acc, s| {
                let r = s.row(t)?;
                Ok([acc[0] + r[0], acc[1] + r[1], acc[2] + r[2], acc[3] + r[3]])
            }),
            Self::PointSheaf { count } => Ok([i64::from(*count), 0, 0, 0]),
            Self::RationalCurveModule { degree, shift } => {
                let (h0, h1) = p1_cohomology(degree * t + shift);
                Ok([h0, h1, 0, 0])
            }
            Self::CurveModule {
                genus,
                slope,
                offset,
                generic,
            } => {
                let chi = slope * t + offset;
                let deg = chi - 1 + genus;
                let in_strip = (0..=2 * genus - 2).contains(&deg);
                if in_strip && !generic {
                    return Err(Error::AmbiguousCurveModule { twist: t });
                }
                Ok([chi.max(0), (-chi).max(0), 0, 0])
            }
            Self::IdealOfCurve { curve } => {
                let c = curve.row(t)?;
                if c[2] != 0 || c[3] != 0 {
                    return Err(Error::MalformedSequence("ideal of a sheaf that is not a curve".into()));
                }
                let rows = [[Entry::Unknown; 4], known_row(Self::line_bundle(0).row(t)?), known_row(c)];
                let solved =
                    splice::solve_row(rows, 0, Policy::Generic).ok_or(Error::SequenceInfeasible { twist: t })?;
                exact_row(solved).ok_or_else(|| Error::MalformedSequence(format!("ideal sheaf undetermined at twist {t}")))
            }
            Self::Twist { sheaf, by } => sheaf.row(t + by),
        }
    }
}

fn known_row(r: [i64; 4]) -> [Entry; 4] {
    r.map(Entry::Known)
}

fn exact_row(r: [Entry; 4]) -> Option<[i64; 4]> {
    Some([r[0].known()?, r[1].known()?, r[2].known()?, r[3].known()?])
}

/// Total table of a building block.
pub fn block_table(sym: &SheafSymbol, range: TwistRange) -> Result<CohomologyTable> {
    let rows = range.iter().map(|t| sym.row(t).map(|r| (t, r))).collect::<Result<Vec<_>>>()?;
    CohomologyTable::from_known_rows(range, rows)
}

/// A term of a sequence: a symbol, a stored table, or a nested construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Symbol(SheafSymbol),
    Table { table: CohomologyTable },
    Construction { construction: Box<Construction> },
}

impl Term {
    pub fn table(&self, range: TwistRange) -> Result<CohomologyTable> {
        match self {
            Term::Symbol(s) => block_table(s, range),
            Term::Table { table } => Ok(table.with_range(range)),
            Term::Construction { construction } => construction.table(range),
        }
    }

    fn line_bundle_degrees(&self) -> Option<Vec<i64>> {
        fn collect(s: &SheafSymbol, out: &mut Vec<i64>, shift: i64) -> bool {
            match s {
                SheafSymbol::LineBundle { degree } => {
                    out.push(degree + shift);
                    true
                }
                SheafSymbol::DirectSum { terms } => terms.iter().all(|t| collect(t, out, shift)),
                SheafSymbol::Twist { sheaf, by } => collect(sheaf, out, shift + by),
                _ => false,
            }
        }
        let Term::Symbol(s) = self else { return None };
        let mut out = Vec::new();
        collect(s, &mut out, 0).then_some(out)
    }
}

impl From<SheafSymbol> for Term {
    fn from(s: SheafSymbol) -> Self {
        Term::Symbol(s)
    }
}

/// `0 -> left -> middle -> right -> 0` with exactly one slot left open (`None`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortExactSequenceSpec {
    pub left: Option<Term>,
    pub middle: Option<Term>,
    pub right: Option<Term>,
    #[serde(default)]
    pub policy: Policy,
}

impl ShortExactSequenceSpec {
    pub fn new(left: Option<Term>, middle: Option<Term>, right: Option<Term>) -> Self {
        Self {
            left,
            middle,
            right,
            policy: Policy::Generic,
        }
    }

    fn slots(&self) -> [&Option<Term>; 3] {
        [&self.left, &self.middle, &self.right]
    }

    fn unknown_slot(&self) -> Result<usize> {
        let open: Vec<usize> = self
            .slots()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_none())
            .map(|(i, _)| i)
            .collect();
        match open.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::MalformedSequence(format!(
                "expected exactly one unknown slot, found {}",
                open.len()
            ))),
        }
    }
}

/// Result of [`splice_ses`]: the table under the chosen policy, and the
/// feasible intervals without any assumption on the maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceOutcome {
    pub table: CohomologyTable,
    pub bounds: CohomologyTable,
}

impl SpliceOutcome {
    /// Twists where the policy left some entry undetermined.
    pub fn undetermined(&self) -> Vec<i64> {
        self.table
            .rows()
            .filter(|(_, r)| r.iter().any(|e| e.known().is_none()))
            .map(|(t, _)| t)
            .collect()
    }
}

/// Solves the long exact cohomology sequence twist by twist for the open slot.
pub fn splice_ses(spec: &ShortExactSequenceSpec, range: TwistRange) -> Result<SpliceOutcome> {
    let unknown = spec.unknown_slot()?;
    let tables: Vec<Option<CohomologyTable>> = spec
        .slots()
        .iter()
        .map(|t| t.as_ref().map(|t| t.table(range)).transpose())
        .collect::<Result<_>>()?;

    let mut table = CohomologyTable::unknown(range);
    let mut bounds = CohomologyTable::unknown(range);
    for t in range.iter() {
        let mut rows = [[Entry::Unknown; 4]; 3];
        for (slot, tab) in tables.iter().enumerate() {
            if let Some(tab) = tab {
                rows[slot] = tab.row(t).copied().unwrap_or([Entry::Unknown; 4]);
            }
        }
        let infeasible = Error::SequenceInfeasible { twist: t };
        let free = splice::solve_row(rows, unknown, Policy::Unconstrained).ok_or(infeasible.clone())?;
        let chosen = match spec.policy {
            Policy::Generic => splice::solve_row(rows, unknown, Policy::Generic).ok_or(infeasible)?,
            Policy::Unconstrained => free,
        };
        table.set_row(t, chosen)?;
        bounds.set_row(t, free)?;
    }
    Ok(SpliceOutcome { table, bounds })
}

/// Monad `0 -> A -> B -> C -> 0` of sums of line bundles, given by degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMonad")]
pub struct MonadShape {
    a: Vec<i64>,
    b: Vec<i64>,
    c: Vec<i64>,
}

#[derive(Deserialize)]
struct RawMonad {
    #[serde(default)]
    a: Vec<i64>,
    b: Vec<i64>,
    #[serde(default)]
    c: Vec<i64>,
}

impl TryFrom<RawMonad> for MonadShape {
    type Error = Error;

    fn try_from(r: RawMonad) -> Result<Self> {
        Self::new(r.a, r.b, r.c)
    }
}

impl MonadShape {
    pub fn new(a: Vec<i64>, b: Vec<i64>, c: Vec<i64>) -> Result<Self> {
        let rank = b.len() as i64 - a.len() as i64 - c.len() as i64;
        if rank != 2 {
            return Err(Error::RankMismatch { expected: 2, found: rank });
        }
        Ok(Self { a, b, c })
    }

    /// `3 O(-1) -> 8 O -> 3 O(1)`.
    pub fn instanton(c2: usize) -> Self {
        Self {
            a: vec![-1; c2],
            b: vec![0; 2 * c2 + 2],
            c: vec![1; c2],
        }
    }

    /// `O(-2) -> O(-1) + 2 O + O(1) -> O(2)`.
    pub fn ein() -> Self {
        Self {
            a: vec![-2],
            b: vec![-1, 0, 0, 1],
            c: vec![2],
        }
    }

    pub fn chern_classes(&self) -> Result<ChernClasses> {
        let negative: Vec<i64> = self.a.iter().chain(&self.c).copied().collect();
        chern_from_resolution(&self.b, &negative)
    }

    /// Table of the cohomology of the monad, twist by twist.
    ///
    /// Either half of the display can be solved first: the kernel `K` of
    /// `B -> C` followed by `0 -> A -> K -> E -> 0`, or the cokernel `Q` of
    /// `A -> B` followed by `0 -> E -> Q -> C -> 0`. The generic policy is
    /// wrong for one map in each order, because the composite `A -> C`
    /// vanishes: `H0(B) -> H0(C)` in the first, `H3(A) -> H3(B)` in the second.
    /// The first order therefore breaks at high twists and the second at low
    /// ones. Where only one is feasible it is used; where both are and they
    /// disagree the entries become intervals.
    pub fn table(&self, range: TwistRange) -> Result<CohomologyTable> {
        let mut table = CohomologyTable::unknown(range);
        for t in range.iter() {
            table.set_row(t, self.row(t)?)?;
        }
        Ok(table)
    }

    fn row(&self, t: i64) -> Result<[Entry; 4]> {
        let row = |d: &[i64]| SheafSymbol::line_bundles(d).row(t).map(known_row);
        let (a, b, c) = (row(&self.a)?, row(&self.b)?, row(&self.c)?);
        let unk = [Entry::Unknown; 4];
        let solve = |rows, slot| splice::solve_row(rows, slot, Policy::Generic);
        let kernel_first = solve([unk, b, c], 0).and_then(|k| solve([a, k, unk], 2));
        let cokernel_first = solve([a, b, unk], 2).and_then(|q| solve([unk, q, c], 0));
        match (kernel_first, cokernel_first) {
            (Some(x), Some(y)) if x == y => Ok(x),
            (Some(x), None) | (None, Some(x)) => Ok(x),
            (Some(x), Some(y)) => Ok(std::array::from_fn(|i| hull(x[i], y[i]))),
            (None, None) => Err(Error::SequenceInfeasible { twist: t }),
        }
    }
}

fn hull(x: Entry, y: Entry) -> Entry {
    let ((xl, xh), (yl, yh)) = (x.bounds(), y.bounds());
    let hi = match (xh, yh) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    Entry::from_bounds(xl.min(yl), hi)
}

pub fn monad_table(m: &MonadShape, range: TwistRange) -> Result<CohomologyTable> {
    m.table(range)
}

/// `E = ker(ambient -> quotient)` where the quotient is supported on points
/// and at most one rational curve.
pub fn quotient_table(ambient: &Term, quotient: &SheafSymbol, range: TwistRange) -> Result<CohomologyTable> {
    fn curve_count(s: &SheafSymbol) -> Option<usize> {
        match s {
            SheafSymbol::PointSheaf { .. } => Some(0),
            SheafSymbol::RationalCurveModule { .. } => Some(1),
            SheafSymbol::Twist { sheaf, .. } => curve_count(sheaf),
            SheafSymbol::DirectSum { terms } => terms.iter().map(curve_count).sum(),
            _ => None,
        }
    }
    match curve_count(quotient) {
        Some(n) if n <= 1 => {}
        _ => {
            return Err(Error::MalformedSequence(
                "quotient must be points plus at most one rational curve module".into(),
            ))
        }
    }
    let spec = ShortExactSequenceSpec::new(None, Some(ambient.clone()), Some(Term::Symbol(quotient.clone())));
    Ok(splice_ses(&spec, range)?.table)
}

/// A recipe producing the cohomology table of a sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Ses(ShortExactSequenceSpec),
    Monad(MonadShape),
    Quotient { ambient: Term, quotient: SheafSymbol },
}

impl Construction {
    pub fn table(&self, range: TwistRange) -> Result<CohomologyTable> {
        match self {
            Construction::Ses(spec) => Ok(splice_ses(spec, range)?.table),
            Construction::Monad(m) => m.table(range),
            Construction::Quotient { ambient, quotient } => quotient_table(ambient, quotient, range),
        }
    }

    /// Chern classes through the power-series oracle, when the recipe is a
    /// monad or a resolution by sums of line bundles.
    pub fn chern_classes(&self) -> Option<Result<ChernClasses>> {
        match self {
            Construction::Monad(m) => Some(m.chern_classes()),
            Construction::Ses(spec) => {
                let degrees = |t: &Option<Term>| t.as_ref().map(Term::line_bundle_degrees);
                match (degrees(&spec.left), degrees(&spec.middle), degrees(&spec.right)) {
                    (Some(Some(a)), Some(Some(b)), None) => Some(chern_from_resolution(&b, &a)),
                    (None, Some(Some(b)), Some(Some(c))) => Some(chern_from_resolution(&b, &c)),
                    _ => None,
                }
            }
            Construction::Quotient { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::spectrum_from_table;
    use crate::invariants::SplittingType;
    use crate::spectrum::{Spectrum, SpectrumWithS};

    fn range(lo: i64, hi: i64) -> TwistRange {
        TwistRange::new(lo, hi).unwrap()
    }

    fn two_conics() -> SheafSymbol {
        SheafSymbol::sum(vec![SheafSymbol::conic(), SheafSymbol::conic()])
    }

    fn plane_cubic_bundle() -> SheafSymbol {
        SheafSymbol::CurveModule {
            genus: 1,
            slope: 3,
            offset: 0,
            generic: true,
        }
    }

    #[test]
    fn block_examples() {
        assert_eq!(SheafSymbol::line_module(1).row(-1).unwrap()[0], 1);
        let y = SheafSymbol::sum(vec![SheafSymbol::conic(), SheafSymbol::conic()]);
        assert_eq!(y.row(1).unwrap()[0], 6);
        assert_eq!(SheafSymbol::points(2).row(-7).unwrap(), [2, 0, 0, 0]);
        assert_eq!(plane_cubic_bundle().row(0).unwrap(), [0, 0, 0, 0]);
        let special = SheafSymbol::CurveModule {
            genus: 1,
            slope: 3,
            offset: 0,
            generic: false,
        };
        assert_eq!(special.row(0), Err(Error::AmbiguousCurveModule { twist: 0 }));
        assert_eq!(special.row(1).unwrap(), [3, 0, 0, 0]);
    }

    #[test]
    fn line_bundle_rows_follow_bott_vanishing() {
        assert_eq!(SheafSymbol::line_bundle(0).row(0).unwrap(), [1, 0, 0, 0]);
        assert_eq!(SheafSymbol::line_bundle(-4).row(0).unwrap(), [0, 0, 0, 1]);
        assert_eq!(SheafSymbol::line_bundle(-6).row(0).unwrap(), [0, 0, 0, 10]);
        assert_eq!(SheafSymbol::line_bundle(-2).row(0).unwrap(), [0; 4]);
    }

    #[test]
    fn block_tables_match_hilbert_polynomials() {
        let symbols = [
            SheafSymbol::line_bundles(&[-2, 0, 3]),
            SheafSymbol::points(3),
            SheafSymbol::conic().twist(1),
            SheafSymbol::ideal_of(two_conics()).twist(1),
            SheafSymbol::ideal_of(SheafSymbol::conic()),
            plane_cubic_bundle().twist(2),
        ];
        for sym in symbols {
            let table = block_table(&sym, range(-8, 6)).unwrap();
            for (t, r) in table.rows() {
                let r: Vec<i64> = r.iter().map(|e| e.known().unwrap()).collect();
                assert_eq!(r[0] - r[1] + r[2] - r[3], sym.chi(t), "{sym:?} at {t}");
            }
        }
    }

    #[test]
    fn ideal_of_two_conics_low_twists() {
        let i = SheafSymbol::ideal_of(two_conics());
        assert_eq!(i.row(0).unwrap(), [0, 1, 0, 0]);
        assert_eq!(i.row(-1).unwrap(), [0, 0, 2, 0]);
        assert_eq!(i.row(1).unwrap(), [0, 2, 0, 0]);
    }

    #[test]
    fn resolution_of_reflexive_f_has_no_h1() {
        let spec = ShortExactSequenceSpec::new(
            Some(SheafSymbol::line_bundle(-2).into()),
            Some(SheafSymbol::line_bundles(&[-1, -1, -1]).into()),
            None,
        );
        let out = splice_ses(&spec, range(-10, 10)).unwrap();
        for t in -10..=10 {
            assert_eq!(out.table.known(t, 1), Some(0));
        }
        assert!(out.undetermined().is_empty());
    }

    #[test]
    fn chi_is_additive_over_splices() {
        let cc = ChernClasses::new(-1, 2, 0).unwrap();
        let spec = ShortExactSequenceSpec::new(
            Some(SheafSymbol::line_bundle(-2).into()),
            None,
            Some(SheafSymbol::ideal_of(two_conics()).twist(1).into()),
        );
        let out = splice_ses(&spec, range(-8, 4)).unwrap();
        for (t, r) in out.table.rows() {
            let r: Vec<i64> = r.iter().map(|e| e.known().unwrap()).collect();
            assert_eq!(r[0] - r[1] + r[2] - r[3], crate::invariants::euler_characteristic(&cc, t));
        }
    }

    #[test]
    fn malformed_specs_rejected() {
        let o = || Some(Term::from(SheafSymbol::line_bundle(0)));
        assert!(matches!(
            splice_ses(&ShortExactSequenceSpec::new(o(), o(), o()), range(0, 0)),
            Err(Error::MalformedSequence(_))
        ));
        assert!(matches!(
            splice_ses(&ShortExactSequenceSpec::new(None, None, o()), range(0, 0)),
            Err(Error::MalformedSequence(_))
        ));
        // O(1) cannot sit inside O
        let bad = ShortExactSequenceSpec::new(Some(SheafSymbol::line_bundle(1).into()), o(), None);
        assert!(matches!(splice_ses(&bad, range(0, 0)), Err(Error::SequenceInfeasible { twist: 0 })));
    }

    #[test]
    fn monad_spectra() {
        let inst = MonadShape::instanton(3);
        let t = inst.table(range(-8, 2)).unwrap();
        let sw = spectrum_from_table(&t, &SplittingType { a1: 0, a2: 0 }).unwrap();
        assert_eq!(sw, SpectrumWithS::new(Spectrum::new(vec![0, 0, 0]).unwrap(), 0).unwrap());
        assert_eq!(inst.chern_classes().unwrap(), ChernClasses::new(0, 3, 0).unwrap());

        let ein = MonadShape::ein();
        let t = ein.table(range(-8, 2)).unwrap();
        let sw = spectrum_from_table(&t, &SplittingType { a1: 0, a2: 0 }).unwrap();
        assert_eq!(sw.spectrum.values(), &[-1, 0, 1]);
        assert_eq!(sw.s, 0);
        assert_eq!(ein.chern_classes().unwrap(), ChernClasses::new(0, 3, 0).unwrap());
    }

    #[test]
    fn monad_tables_are_exact_and_chi_consistent() {
        let cc = ChernClasses::new(0, 3, 0).unwrap();
        for m in [MonadShape::instanton(3), MonadShape::ein()] {
            let t = m.table(range(-12, 8)).unwrap();
            assert!(t.is_total(), "{m:?}");
            assert!(crate::cohomology::chi_consistency(&t, &cc).is_empty());
        }
    }

    #[test]
    fn degenerate_monad_is_its_middle_term() {
        let m = MonadShape::new(vec![], vec![0, 0], vec![]).unwrap();
        let r = range(-6, 3);
        assert_eq!(m.table(r).unwrap(), block_table(&SheafSymbol::line_bundles(&[0, 0]), r).unwrap());
        assert!(MonadShape::new(vec![0], vec![0, 0], vec![]).is_err());
    }

    #[test]
    fn cubic_component_sequence() {
        let spec = ShortExactSequenceSpec::new(
            None,
            Some(SheafSymbol::line_bundles(&[0, 0]).into()),
            Some(plane_cubic_bundle().twist(2).into()),
        );
        let t = splice_ses(&spec, range(-8, 2)).unwrap().table;
        assert_eq!(t.known(-1, 1), Some(3));
        assert_eq!(t.known(-8, 1), Some(0));
        let sw = spectrum_from_table(&t, &SplittingType { a1: 0, a2: 0 }).unwrap();
        assert_eq!((sw.spectrum.values(), sw.s), (&[0, 0, 0][..], 0));
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let f = Term::Symbol(SheafSymbol::line_bundles(&[-1, 0]));
        let r = range(-5, 2);
        assert_eq!(quotient_table(&f, &SheafSymbol::points(0), r).unwrap(), f.table(r).unwrap());
        let two_lines = SheafSymbol::sum(vec![SheafSymbol::line_module(0), SheafSymbol::line_module(1)]);
        assert!(quotient_table(&f, &two_lines, r).is_err());
    }

    #[test]
    fn construction_json_round_trip() {
        let json = r#"{"kind":"ses","left":{"kind":"line_bundle","degree":-2},"middle":null,
            "right":{"kind":"twist","sheaf":{"kind":"ideal_of_curve","curve":{"kind":"direct_sum","terms":[
            {"kind":"rational_curve_module","degree":2,"shift":0},{"kind":"rational_curve_module","degree":2,"shift":0}]}},"by":1}}"#;
        let c: Construction = serde_json::from_str(json).unwrap();
        let again: Construction = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, again);
        let m: Construction = serde_json::from_str(r#"{"kind":"monad","a":[-2],"b":[-1,0,0,1],"c":[2]}"#).unwrap();
        assert_eq!(m.chern_classes().unwrap().unwrap(), ChernClasses::new(0, 3, 0).unwrap());
    }
}
