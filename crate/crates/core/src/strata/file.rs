//! Plain-text stratum data file.
//!
//! The file is TOML with one `[[stratum]]` table per stratum:
//!
//! ```toml
//! [[stratum]]
//! index = 4
//! name = "(C_4, chi^2)"
//! order = 8
//! euler = 1
//! spectra = ["1 0 1 0 1", "4 1 4 1 1"]
//! ```
//!
//! Each `spectra` row is `a_order a_exp xi_order xi_exp mult`, standing for
//! (ε_{a_order}^{a_exp}, ε_{xi_order}^{xi_exp}) with multiplicity `mult`.
//! Orders must divide 336. Strata appear in index order 1..=11.

use std::fmt::Write as _;

use serde::Deserialize;

use super::{validate_records, SpectralPair, StrataError, StratumRecord};
use crate::cyclotomic::RootOfUnity;

/// Environment variable overriding the strata data file location.
pub const STRATA_FILE_ENV: &str = "H3EULER_STRATA_FILE";

const BUNDLED: &str = include_str!("../../data/strata.toml");

/// The data file shipped with the crate.
pub fn default_strata_text() -> &'static str {
    BUNDLED
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLayout {
    stratum: Vec<RawRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    index: u32,
    name: String,
    order: u32,
    euler: i64,
    spectra: Vec<String>,
}

fn parse_row(index: u32, row: &str) -> Result<SpectralPair, StrataError> {
    let bad = |why: &str| StrataError::Parse(format!("stratum {index}: row {row:?}: {why}"));
    let fields: Vec<i64> = row
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| bad("non-integer field"))?;
    let [ao, ae, xo, xe, m]: [i64; 5] = fields.try_into().map_err(|_| bad("expected five fields"))?;
    let order = |o: i64| u32::try_from(o).map_err(|_| bad("order out of range"));
    let root = |o, e| RootOfUnity::new(o, e).map_err(|source| StrataError::Root { index, source });
    Ok(SpectralPair {
        a: root(order(ao)?, ae)?,
        xi: root(order(xo)?, xe)?,
        multiplicity: u32::try_from(m).map_err(|_| bad("negative multiplicity"))?,
    })
}

/// Parses the file grammar only; no invariant checks.
pub fn parse_strata_records(text: &str) -> Result<Vec<StratumRecord>, StrataError> {
    let layout: FileLayout = toml::from_str(text).map_err(|e| StrataError::Parse(e.to_string()))?;
    layout
        .stratum
        .into_iter()
        .map(|raw| {
            let spectra = raw
                .spectra
                .iter()
                .map(|row| parse_row(raw.index, row))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(StratumRecord {
                index: raw.index,
                group_name: raw.name,
                group_order: raw.order,
                euler_number: raw.euler,
                spectra,
            })
        })
        .collect()
}

/// Parses and validates a strata file, rejecting any file that violates the
/// stratum invariants.
pub fn parse_strata_file(text: &str) -> Result<Vec<StratumRecord>, StrataError> {
    let records = parse_strata_records(text)?;
    validate_records(&records)?;
    Ok(records)
}

/// Renders records in the file format.
pub fn render_strata_file(records: &[StratumRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, "[[stratum]]");
        let _ = writeln!(out, "index = {}", r.index);
        let _ = writeln!(out, "name = {:?}", r.group_name);
        let _ = writeln!(out, "order = {}", r.group_order);
        let _ = writeln!(out, "euler = {}", r.euler_number);
        let _ = writeln!(out, "spectra = [");
        for p in &r.spectra {
            let _ = writeln!(
                out,
                "  \"{} {} {} {} {}\",",
                p.a.order(),
                p.a.exponent(),
                p.xi.order(),
                p.xi.exponent(),
                p.multiplicity
            );
        }
        let _ = writeln!(out, "]\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::builtin_strata;

    #[test]
    fn bundled_file_matches_compiled_table() {
        let records = parse_strata_file(default_strata_text()).unwrap();
        assert_eq!(records, builtin_strata());
    }

    #[test]
    fn render_round_trip() {
        let text = render_strata_file(builtin_strata());
        assert_eq!(parse_strata_file(&text).unwrap(), builtin_strata());
    }

    #[test]
    fn rejects_bad_files() {
        let base = default_strata_text();
        let euler_two = base.replacen("euler = -1", "euler = 0", 1);
        assert_eq!(parse_strata_file(&euler_two), Err(StrataError::EulerSum { sum: 2 }));

        let bad_order = base.replacen("\"14 1 14 3 1\"", "\"15 1 14 3 1\"", 1);
        assert!(matches!(parse_strata_file(&bad_order), Err(StrataError::Root { index: 11, .. })));

        let short_row = base.replacen("\"14 1 14 3 1\"", "\"14 1 14 3\"", 1);
        assert!(matches!(parse_strata_file(&short_row), Err(StrataError::Parse(_))));

        let extra_key = base.replacen("order = 4\n", "order = 4\ncolour = 1\n", 1);
        assert!(matches!(parse_strata_file(&extra_key), Err(StrataError::Parse(_))));

        let wrong_card = base.replacen("\"4 1 1 0 9\"", "\"4 1 1 0 8\"", 1);
        assert!(matches!(
            parse_strata_file(&wrong_card),
            Err(StrataError::Cardinality { index: 9, .. })
        ));
    }
}
