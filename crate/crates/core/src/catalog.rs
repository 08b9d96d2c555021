//! The fifteen named third-order sequences.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::recurrence::SequenceDef;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub display_name: &'static str,
    pub symbol: &'static str,
    pub def: SequenceDef,
    pub oeis_ids: Vec<&'static str>,
    /// `W_n` equals the primary OEIS sequence at index `n + shift`.
    /// Only filled in where a bundled b-file confirms it.
    pub oeis_offset_shift: Option<i64>,
}

impl CatalogEntry {
    pub fn primary_oeis_id(&self) -> Option<&'static str> {
        self.oeis_ids.first().copied()
    }
}

struct Row {
    key: &'static str,
    display_name: &'static str,
    symbol: &'static str,
    initial: [i64; 3],
    coefficients: [i64; 3],
    oeis_ids: &'static [&'static str],
    shift: Option<i64>,
}

#[rustfmt::skip]
const ROWS: [Row; 15] = [
    Row { key: "tribonacci", display_name: "Tribonacci", symbol: "T",
          initial: [0, 1, 1], coefficients: [1, 1, 1], oeis_ids: &["A000073", "A057597"], shift: Some(1) },
    Row { key: "tribonacci-lucas", display_name: "Tribonacci-Lucas", symbol: "K",
          initial: [3, 1, 3], coefficients: [1, 1, 1], oeis_ids: &["A001644", "A073145"], shift: Some(0) },
    Row { key: "third-order-pell", display_name: "third order Pell", symbol: "P3",
          initial: [0, 1, 2], coefficients: [2, 1, 1], oeis_ids: &["A077939", "A077978"], shift: None },
    Row { key: "third-order-pell-lucas", display_name: "third order Pell-Lucas", symbol: "Q3",
          initial: [3, 2, 6], coefficients: [2, 1, 1], oeis_ids: &["A276225", "A276228"], shift: None },
    Row { key: "third-order-modified-pell", display_name: "third order modified Pell", symbol: "E3",
          initial: [0, 1, 1], coefficients: [2, 1, 1], oeis_ids: &["A077997", "A078049"], shift: None },
    Row { key: "padovan", display_name: "Padovan (Cordonnier)", symbol: "P",
          initial: [1, 1, 1], coefficients: [0, 1, 1], oeis_ids: &["A000931"], shift: Some(5) },
    Row { key: "perrin", display_name: "Perrin (Padovan-Lucas)", symbol: "E",
          initial: [3, 0, 2], coefficients: [0, 1, 1], oeis_ids: &["A001608", "A078712"], shift: Some(0) },
    Row { key: "padovan-perrin", display_name: "Padovan-Perrin", symbol: "S",
          initial: [0, 0, 1], coefficients: [0, 1, 1], oeis_ids: &["A000931", "A176971"], shift: Some(1) },
    Row { key: "pell-padovan", display_name: "Pell-Padovan", symbol: "R",
          initial: [1, 1, 1], coefficients: [0, 2, 1], oeis_ids: &["A066983", "A128587"], shift: None },
    Row { key: "pell-perrin", display_name: "Pell-Perrin", symbol: "C",
          initial: [3, 0, 2], coefficients: [0, 2, 1], oeis_ids: &[], shift: None },
    Row { key: "jacobsthal-padovan", display_name: "Jacobsthal-Padovan", symbol: "Q",
          initial: [1, 1, 1], coefficients: [0, 1, 2], oeis_ids: &["A159284"], shift: None },
    Row { key: "jacobsthal-perrin", display_name: "Jacobsthal-Perrin (-Lucas)", symbol: "D",
          initial: [3, 0, 2], coefficients: [0, 1, 2], oeis_ids: &["A072328"], shift: None },
    Row { key: "narayana", display_name: "Narayana", symbol: "N",
          initial: [0, 1, 1], coefficients: [1, 0, 1], oeis_ids: &["A078012"], shift: Some(2) },
    Row { key: "third-order-jacobsthal", display_name: "third order Jacobsthal", symbol: "J3",
          initial: [0, 1, 1], coefficients: [1, 1, 2], oeis_ids: &["A077947"], shift: None },
    Row { key: "third-order-jacobsthal-lucas", display_name: "third order Jacobsthal-Lucas", symbol: "j3",
          initial: [2, 1, 5], coefficients: [1, 1, 2], oeis_ids: &["A226308"], shift: None },
];

fn entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        ROWS.iter()
            .map(|row| {
                let mut def = SequenceDef::from_ints(row.initial, row.coefficients)
                    .with_name(row.display_name);
                if let Some(id) = row.oeis_ids.first() {
                    def = def.with_oeis_id(*id);
                }
                CatalogEntry {
                    key: row.key,
                    display_name: row.display_name,
                    symbol: row.symbol,
                    def,
                    oeis_ids: row.oeis_ids.to_vec(),
                    oeis_offset_shift: row.shift,
                }
            })
            .collect()
    })
}

/// All entries, in table order.
pub fn list_all() -> &'static [CatalogEntry] {
    entries()
}

/// Looks up an entry by key. Matching ignores ASCII case and treats `_` and
/// spaces as `-`.
pub fn lookup(key: &str) -> Result<&'static CatalogEntry> {
    let normalized: String = key
        .trim()
        .chars()
        .map(|c| match c {
            '_' | ' ' => '-',
            c => c.to_ascii_lowercase(),
        })
        .collect();
    entries()
        .iter()
        .find(|e| e.key == normalized)
        .ok_or_else(|| Error::UnknownSequence(key.to_string()))
}
