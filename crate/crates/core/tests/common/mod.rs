#![allow(dead_code)]

use proptest::prelude::*;
use sheafspec::cohomology::{chi_consistency, spectrum_from_table, table_from_spectrum};
use sheafspec::invariants::euler_characteristic_raw;
use sheafspec::spectrum::{c3_from_spectrum, s_from_spectrum, sum_via_chi};
use sheafspec::*;

/// A normalized class together with one spectrum of it: (e, spectrum, s).
pub fn spectrum_case() -> impl Strategy<Value = (i64, Vec<i64>, i64)> {
    (prop_oneof![Just(-1i64), Just(0i64)], 1usize..=15, 0i64..=12).prop_flat_map(|(e, c2, s)| {
        let bound = c2 as i64 + 3;
        (
            Just(e),
            prop::collection::vec(-bound..=bound, c2).prop_map(|mut v| {
                v.sort();
                v
            }),
            Just(s),
        )
    })
}

pub fn twist_range_for(values: &[i64]) -> TwistRange {
    let reach = values.iter().map(|k| k.abs()).max().unwrap_or(0);
    TwistRange::new(-reach - 8, reach + 6).unwrap()
}

/// Every identity of the web, checked on one case.
pub fn identity_web(e: i64, values: &[i64], s: i64, twist: i64) -> Result<(), String> {
    let c2 = values.len() as i64;
    let sw = SpectrumWithS::new(Spectrum::new(values.to_vec()).map_err(|e| e.to_string())?, s)
        .map_err(|e| e.to_string())?;

    // c3 formula and sum identity
    let c3 = c3_from_spectrum(e, c2, &sw).map_err(|e| e.to_string())?;
    let cc = ChernClasses::new(e, c2, c3).map_err(|err| format!("parity law broken for ({e},{c2},{c3}): {err}"))?;
    let parity = if e == 0 { c3 } else { c2 + c3 };
    if parity.rem_euclid(2) != 0 {
        return Err(format!("({e},{c2},{c3}) violates the parity law"));
    }
    if s_from_spectrum(&cc, &sw.spectrum).map_err(|e| e.to_string())? != s {
        return Err(format!("s_from_spectrum disagrees for {sw}"));
    }
    if sum_via_chi(&cc, s) != sw.spectrum.sum() {
        return Err(format!("sum via chi {} != sum {} for {sw}", sum_via_chi(&cc, s), sw.spectrum.sum()));
    }

    // chi integrality
    euler_characteristic_raw(e, c2, c3, twist).map_err(|err| format!("chi at {twist}: {err}"))?;

    // round trip
    let st = cc.splitting_type();
    let table = table_from_spectrum(&sw, &st, twist_range_for(values));
    let back = spectrum_from_table(&table, &st).map_err(|err| format!("inversion of {sw}: {err}"))?;
    if back != sw {
        return Err(format!("round trip {sw} -> {back}"));
    }
    if let Some(v) = chi_consistency(&table, &cc).first() {
        return Err(format!("table of {sw} breaks chi at {}: {} vs {}", v.twist, v.found, v.expected));
    }

    // h1 stabilizes to s
    let top = -sw.spectrum.largest() - 2;
    for l in (top - 4..=top).filter(|&l| l < -st.a2) {
        if let Some(h1) = table.known(l, 1) {
            if h1 != s {
                return Err(format!("h1({l}) = {h1} != s = {s} for {sw}"));
            }
        }
    }
    Ok(())
}
