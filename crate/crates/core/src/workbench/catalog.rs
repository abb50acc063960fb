use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::ChernClasses;
use crate::sheafcalc::{Construction, Term};
use crate::spectrum::{c3_from_spectrum, Spectrum, SpectrumWithS};

/// How a component of the moduli space is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "reflexive-extension")]
    ReflexiveExtension,
    /// Mixed singularities: `E -> F -> O_S + O_l(r)`.
    X,
    /// Zero-dimensional singularities: `E -> F -> O_S`.
    T,
    #[serde(rename = "monad")]
    Monad,
    #[serde(rename = "quotient-sequence")]
    QuotientSequence,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::ReflexiveExtension => "reflexive-extension",
            Family::X => "X",
            Family::T => "T",
            Family::Monad => "monad",
            Family::QuotientSequence => "quotient-sequence",
        })
    }
}

/// Integer parameters of the X and T families.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
}

impl Params {
    pub fn x(n: i64, m: i64, r: i64, s: i64) -> Self {
        Params {
            n: Some(n),
            m: Some(m),
            r: Some(r),
            s: Some(s),
        }
    }

    pub fn t(n: i64, m: i64, s: i64) -> Self {
        Params {
            n: Some(n),
            m: Some(m),
            r: None,
            s: Some(s),
        }
    }

    fn get(&self, name: &str, value: Option<i64>) -> Result<i64> {
        value.ok_or_else(|| Error::ParamsOutOfRange(format!("missing parameter {name}")))
    }

    fn is_empty(&self) -> bool {
        *self == Params::default()
    }
}

/// Whether a stored spectrum can be recomputed inside the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationLevel {
    /// Recomputed from building blocks.
    Derived,
    /// Rests on tables taken from the literature.
    Data,
}

impl fmt::Display for VerificationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerificationLevel::Derived => "derived",
            VerificationLevel::Data => "data",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDescriptor {
    pub moduli: ChernClasses,
    pub name: String,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Params::is_empty")]
    pub params: Params,
    pub dimension: i64,
    pub spectrum: Spectrum,
    pub s: i64,
    #[serde(default)]
    pub construction: Option<Construction>,
}

impl ComponentDescriptor {
    pub fn spectrum_with_s(&self) -> SpectrumWithS {
        SpectrumWithS {
            spectrum: self.spectrum.clone(),
            s: self.s,
        }
    }

    pub fn verification_level(&self) -> VerificationLevel {
        match &self.construction {
            Some(c) if !uses_stored_table(c) => VerificationLevel::Derived,
            _ => VerificationLevel::Data,
        }
    }

    /// Checks the closed forms of the family and the c3 identity.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::Verification {
            component: self.name.clone(),
            reason,
        };
        if self.s < 0 {
            return Err(fail(format!("negative s = {}", self.s)));
        }
        let c3 = c3_from_spectrum(self.moduli.e(), self.moduli.c2(), &self.spectrum_with_s())
            .map_err(|e| fail(e.to_string()))?;
        if c3 != self.moduli.c3() {
            return Err(fail(format!(
                "spectrum {} with s={} gives c3={c3}, catalog says {}",
                self.spectrum,
                self.s,
                self.moduli.c3()
            )));
        }
        if let Family::X | Family::T = self.family {
            let e = self.moduli.e();
            let dim = component_dimension(self.family, &self.params, e).map_err(|e| fail(e.to_string()))?;
            if dim != self.dimension {
                return Err(fail(format!("dimension {} but closed form gives {dim}", self.dimension)));
            }
            let expected = family_moduli(self.family, &self.params, e).map_err(|e| fail(e.to_string()))?;
            if expected != self.moduli {
                return Err(fail(format!("moduli {} but closed form gives {expected}", self.moduli)));
            }
            if self.params.s != Some(self.s) {
                return Err(fail(format!("length of the singular quotient is {:?}, spectrum s is {}", self.params.s, self.s)));
            }
        }
        Ok(())
    }
}

fn uses_stored_table(c: &Construction) -> bool {
    let term = |t: &Term| match t {
        Term::Table { .. } => true,
        Term::Construction { construction } => uses_stored_table(construction),
        Term::Symbol(_) => false,
    };
    match c {
        Construction::Ses(spec) => [&spec.left, &spec.middle, &spec.right].into_iter().flatten().any(term),
        Construction::Monad(_) => false,
        Construction::Quotient { ambient, .. } => term(ambient),
    }
}

/// Dimension of the X or T component with the given parameters.
pub fn component_dimension(family: Family, params: &Params, e: i64) -> Result<i64> {
    match family {
        Family::X => {
            let (n, _, r, s) = x_params(params, e)?;
            Ok(8 * n + 4 * s + 2 * r + 2 + e)
        }
        Family::T => {
            let (n, _, s) = t_params(params)?;
            Ok(8 * n - 3 + 2 * e + 4 * s)
        }
        other => Err(Error::ParamsOutOfRange(format!("no dimension formula for family {other}"))),
    }
}

/// Chern classes of the generic sheaf of an X or T component.
pub fn family_moduli(family: Family, params: &Params, e: i64) -> Result<ChernClasses> {
    match family {
        Family::X => {
            let (n, m, r, s) = x_params(params, e)?;
            ChernClasses::new(e, n + 1, m + 2 + e - 2 * r - 2 * s)
        }
        Family::T => {
            let (n, m, s) = t_params(params)?;
            ChernClasses::new(e, n, m - 2 * s)
        }
        other => Err(Error::ParamsOutOfRange(format!("no Chern class formula for family {other}"))),
    }
}

fn x_params(p: &Params, e: i64) -> Result<(i64, i64, i64, i64)> {
    let (n, m, r, s) = (p.get("n", p.n)?, p.get("m", p.m)?, p.get("r", p.r)?, p.get("s", p.s)?);
    if n < 1 || m < 0 || r < 1 {
        return Err(Error::ParamsOutOfRange(format!("X needs n >= 1, m >= 0, r >= 1 (got n={n}, m={m}, r={r})")));
    }
    let top = 2 * r + 2 + e - m;
    if !(0..=top).contains(&s) {
        return Err(Error::ParamsOutOfRange(format!("X needs 0 <= s <= 2r+2+e-m = {top}, got s={s}")));
    }
    Ok((n, m, r, s))
}

fn t_params(p: &Params) -> Result<(i64, i64, i64)> {
    if p.r.is_some() {
        return Err(Error::ParamsOutOfRange("T takes no parameter r".into()));
    }
    let (n, m, s) = (p.get("n", p.n)?, p.get("m", p.m)?, p.get("s", p.s)?);
    if n < 1 || m < 0 || s < 0 {
        return Err(Error::ParamsOutOfRange(format!("T needs n >= 1, m >= 0, s >= 0 (got n={n}, m={m}, s={s})")));
    }
    Ok((n, m, s))
}

/// Spectra printed as the complete candidate list for one moduli class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateList {
    pub moduli: ChernClasses,
    pub spectra: Vec<Spectrum>,
}

/// Validated, immutable set of components.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Catalog {
    version: u32,
    components: Vec<ComponentDescriptor>,
    candidate_lists: Vec<CandidateList>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDocument {
    #[serde(default)]
    version: u32,
    components: Vec<ComponentDescriptor>,
    #[serde(default)]
    candidate_lists: Vec<CandidateList>,
}

const BUNDLED: &str = include_str!("../../assets/catalog.json");

impl Catalog {
    pub fn new(components: Vec<ComponentDescriptor>, candidate_lists: Vec<CandidateList>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for c in &components {
            c.validate()?;
            if !names.insert((c.moduli, c.name.as_str())) {
                return Err(Error::Catalog(format!("duplicate component {} in {}", c.name, c.moduli)));
            }
        }
        let mut lists = BTreeMap::new();
        for l in &candidate_lists {
            if lists.insert(l.moduli, ()).is_some() {
                return Err(Error::Catalog(format!("two candidate lists for {}", l.moduli)));
            }
        }
        Ok(Self {
            version: 1,
            components,
            candidate_lists,
        })
    }

    /// The catalog shipped with the crate.
    pub fn bundled() -> Self {
        catalog_load(BUNDLED).expect("bundled catalog is valid")
    }

    pub fn bundled_source() -> &'static str {
        BUNDLED
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn components(&self) -> &[ComponentDescriptor] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn for_moduli(&self, cc: &ChernClasses) -> Vec<&ComponentDescriptor> {
        self.components.iter().filter(|c| c.moduli == *cc).collect()
    }

    pub fn get(&self, cc: &ChernClasses, name: &str) -> Option<&ComponentDescriptor> {
        self.components.iter().find(|c| c.moduli == *cc && c.name == name)
    }

    pub fn printed_candidates(&self, cc: &ChernClasses) -> Option<&[Spectrum]> {
        self.candidate_lists
            .iter()
            .find(|l| l.moduli == *cc)
            .map(|l| l.spectra.as_slice())
    }

    pub fn moduli_classes(&self) -> Vec<ChernClasses> {
        let set: BTreeSet<ChernClasses> = self.components.iter().map(|c| c.moduli).collect();
        set.into_iter().collect()
    }
}

/// Parses and validates a catalog: either a bare array of components or
/// `{"version", "components", "candidate_lists"}`.
pub fn catalog_load(source: &str) -> Result<Catalog> {
    let bad = |e: serde_json::Error| Error::Catalog(e.to_string());
    let value: serde_json::Value = serde_json::from_str(source).map_err(bad)?;
    if value.is_array() {
        let components = serde_json::from_value(value).map_err(bad)?;
        return Catalog::new(components, Vec::new());
    }
    let doc: CatalogDocument = serde_json::from_value(value).map_err(bad)?;
    let mut c = Catalog::new(doc.components, doc.candidate_lists)?;
    c.version = doc.version.max(1);
    Ok(c)
}
