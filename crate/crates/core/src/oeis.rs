//! OEIS b-files: parsing, offset alignment and retrieval.
//!
//! A b-file lists one `<index> <value>` pair per line; lines starting with
//! `#` are comments. Retrieval reads `b<digits>.txt` from a fixture
//! directory, or downloads it and stores it there.

use std::fmt::Write as _;
use std::fs;
use std::io::{ErrorKind, Read};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::recurrence::{SequenceDef, Terms};

/// Environment variable that overrides the fixture directory.
pub const FIXTURE_DIR_ENV: &str = "TRIBSUM_OEIS_DIR";

/// Shifts tried by [`align`], in order.
pub const SHIFT_WINDOW: RangeInclusive<i64> = -6..=6;

/// Consecutive matching terms needed before a shift is accepted.
pub const MIN_MATCHED_TERMS: usize = 10;

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub oeis_id: String,
    /// `(index, value)` pairs with indices increasing by exactly one.
    pub entries: Vec<(i64, BigInt)>,
}

impl BFile {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn get(&self, index: i64) -> Option<&BigInt> {
        let first = self.first_index()?;
        let pos = usize::try_from(index.checked_sub(first)?).ok()?;
        self.entries.get(pos).map(|(_, v)| v)
    }

    /// Renders the entries back to b-file text (no comment lines).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, v) in &self.entries {
            let _ = writeln!(out, "{i} {v}");
        }
        out
    }
}

/// Parses b-file text. The returned file has an empty `oeis_id`.
pub fn parse_bfile(content: &str) -> Result<BFile> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (lineno, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::MalformedBFile {
            line: lineno + 1,
            reason,
        };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad(format!("expected `<index> <value>`, got `{line}`")));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| bad(format!("bad index `{index}`")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| bad(format!("bad value `{value}`")))?;
        if let Some((prev, _)) = entries.last() {
            if index != prev + 1 {
                let what = if index <= *prev {
                    "duplicate or decreasing"
                } else {
                    "gap before"
                };
                return Err(bad(format!("{what} index {index} (previous {prev})")));
            }
        }
        entries.push((index, value));
    }
    Ok(BFile {
        oeis_id: String::new(),
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlignmentStatus {
    Aligned,
    NoAlignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlignmentReport {
    pub oeis_id: String,
    pub shift: i64,
    pub matched_terms: usize,
    pub status: AlignmentStatus,
}

/// Length of the run of `W_n == bfile[n + shift]` starting at the first
/// `n >= 0` the b-file covers.
fn matching_run(def: &SequenceDef, bfile: &BFile, shift: i64) -> usize {
    let Some(first) = bfile.first_index() else {
        return 0;
    };
    let start = (first - shift).max(0);
    Terms::forward(def)
        .enumerate()
        .skip(start as usize)
        .map_while(|(n, w)| bfile.get(n as i64 + shift).map(|v| (w, v)))
        .take_while(|(w, v)| *w == Rational::from((*v).clone()))
        .count()
}

/// Finds the smallest shift `s` in [`SHIFT_WINDOW`] with `W_n = a(n + s)`
/// for at least [`MIN_MATCHED_TERMS`] consecutive `n`.
pub fn align(def: &SequenceDef, bfile: &BFile) -> AlignmentReport {
    let mut best = (0, 0);
    if bfile.len() >= MIN_MATCHED_TERMS {
        for shift in SHIFT_WINDOW {
            let run = matching_run(def, bfile, shift);
            if run >= MIN_MATCHED_TERMS {
                return AlignmentReport {
                    oeis_id: bfile.oeis_id.clone(),
                    shift,
                    matched_terms: run,
                    status: AlignmentStatus::Aligned,
                };
            }
            if run > best.1 {
                best = (shift, run);
            }
        }
    }
    AlignmentReport {
        oeis_id: bfile.oeis_id.clone(),
        shift: best.0,
        matched_terms: best.1,
        status: AlignmentStatus::NoAlignment,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub compared: usize,
    pub matched: usize,
    /// First sequence index whose term disagrees with the b-file.
    pub first_mismatch: Option<i64>,
}

/// Compares up to `count` terms from the first overlapping index under `shift`.
pub fn compare(def: &SequenceDef, bfile: &BFile, shift: i64, count: usize) -> Comparison {
    let mut out = Comparison {
        compared: 0,
        matched: 0,
        first_mismatch: None,
    };
    let Some(first) = bfile.first_index() else {
        return out;
    };
    let start = (first - shift).max(0) as usize;
    for (n, w) in Terms::forward(def).enumerate().skip(start).take(count) {
        let Some(v) = bfile.get(n as i64 + shift) else {
            break;
        };
        out.compared += 1;
        if w == Rational::from(v.clone()) {
            out.matched += 1;
        } else if out.first_mismatch.is_none() {
            out.first_mismatch = Some(n as i64);
        }
    }
    out
}

/// Where [`fetch_bfile`] gets its data.
#[derive(Clone, Debug)]
pub enum BFileSource {
    /// Read `b<digits>.txt` from this directory only.
    FixtureDir(PathBuf),
    /// Download `<base_url>/A<digits>/b<digits>.txt` and cache it in `cache_dir`.
    Network {
        base_url: String,
        cache_dir: PathBuf,
    },
}

impl BFileSource {
    pub fn oeis(cache_dir: impl Into<PathBuf>) -> Self {
        BFileSource::Network {
            base_url: DEFAULT_BASE_URL.to_string(),
            cache_dir: cache_dir.into(),
        }
    }
}

/// The six digits of a well-formed id like `A000073`.
fn id_digits(oeis_id: &str) -> Option<&str> {
    let digits = oeis_id.strip_prefix('A')?;
    (digits.len() == 6 && digits.bytes().all(|b| b.is_ascii_digit())).then_some(digits)
}

/// `b000073.txt` for `A000073`.
pub fn fixture_file_name(oeis_id: &str) -> Option<String> {
    id_digits(oeis_id).map(|d| format!("b{d}.txt"))
}

fn read_fixture(oeis_id: &str, dir: &Path) -> Result<BFile> {
    let missing = |path: PathBuf| Error::FixtureMissing {
        oeis_id: oeis_id.to_string(),
        path,
    };
    let Some(name) = fixture_file_name(oeis_id) else {
        return Err(missing(dir.to_path_buf()));
    };
    let path = dir.join(name);
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(e) if e.kind() == ErrorKind::NotFound => return Err(missing(path)),
        Err(e) => {
            return Err(Error::FetchFailed {
                oeis_id: oeis_id.to_string(),
                reason: format!("{}: {e}", path.display()),
            })
        }
    };
    let mut bfile = parse_bfile(&text)?;
    bfile.oeis_id = oeis_id.to_string();
    Ok(bfile)
}

/// Writes through a sibling temp file and renames it into place.
fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let nonce = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or_default();
    let tmp = dir.join(format!(
        ".{}.{}.{nonce}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("bfile"),
        std::process::id()
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn download(oeis_id: &str, base_url: &str, cache_dir: &Path) -> Result<BFile> {
    let digits = id_digits(oeis_id).ok_or_else(|| Error::InvalidOeisId(oeis_id.to_string()))?;
    let failed = |reason: String| Error::FetchFailed {
        oeis_id: oeis_id.to_string(),
        reason,
    };
    let url = format!("{}/A{digits}/b{digits}.txt", base_url.trim_end_matches('/'));
    let response = ureq::get(&url)
        .timeout(Duration::from_secs(30))
        .call()
        .map_err(|e| failed(e.to_string()))?;
    let mut text = String::new();
    response
        .into_reader()
        .take(64 << 20)
        .read_to_string(&mut text)
        .map_err(|e| failed(e.to_string()))?;
    let mut bfile = parse_bfile(&text)?;
    if bfile.is_empty() {
        return Err(failed(format!("{url} returned no terms")));
    }
    bfile.oeis_id = oeis_id.to_string();
    let path = cache_dir.join(format!("b{digits}.txt"));
    write_atomically(&path, &text)
        .map_err(|e| failed(format!("caching to {}: {e}", path.display())))?;
    Ok(bfile)
}

pub fn fetch_bfile(oeis_id: &str, source: &BFileSource) -> Result<BFile> {
    match source {
        BFileSource::FixtureDir(dir) => read_fixture(oeis_id, dir),
        BFileSource::Network {
            base_url,
            cache_dir,
        } => download(oeis_id, base_url, cache_dir),
    }
}

/// Fixtures shipped with the crate.
pub fn bundled_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join("oeis")
}

/// `$TRIBSUM_OEIS_DIR` if set, else the bundled fixtures.
pub fn default_fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(bundled_fixture_dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tribonacci() -> SequenceDef {
        SequenceDef::from_ints([0, 1, 1], [1, 1, 1])
    }

    fn pairs(b: &BFile) -> Vec<(i64, i64)> {
        b.entries
            .iter()
            .map(|(i, v)| (*i, i64::try_from(v.clone()).unwrap()))
            .collect()
    }

    #[test]
    fn parse_examples() {
        let b = parse_bfile("0 0\n1 0\n2 1\n").unwrap();
        assert_eq!(pairs(&b), vec![(0, 0), (1, 0), (2, 1)]);
        let b = parse_bfile("# comment\n5 4\n6 7\n").unwrap();
        assert_eq!(pairs(&b), vec![(5, 4), (6, 7)]);
        assert!(matches!(
            parse_bfile("0 0\n2 1\n"),
            Err(Error::MalformedBFile { line: 2, .. })
        ));
    }

    #[test]
    fn parse_tolerates_crlf_and_blank_lines() {
        let b = parse_bfile("# A1\r\n\r\n3 -12\r\n4   99999999999999999999999\r\n").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.get(4).unwrap().to_string(), "99999999999999999999999");
    }

    #[test]
    fn parse_rejects_bad_lines() {
        for bad in [
            "0 1\n0 1\n",
            "1 1\n0 1\n",
            "0\n",
            "0 1 2\n",
            "x 1\n",
            "0 1.5\n",
        ] {
            assert!(
                matches!(parse_bfile(bad), Err(Error::MalformedBFile { .. })),
                "{bad:?}"
            );
        }
    }

    fn bfile_from(first: i64, values: &[i64]) -> BFile {
        BFile {
            oeis_id: "A000000".into(),
            entries: values
                .iter()
                .enumerate()
                .map(|(i, v)| (first + i as i64, BigInt::from(*v)))
                .collect(),
        }
    }

    #[test]
    fn align_tribonacci_against_offset_zero_listing() {
        let b = bfile_from(0, &[0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504]);
        let report = align(&tribonacci(), &b);
        assert_eq!(report.status, AlignmentStatus::Aligned);
        assert_eq!(report.shift, 1);
        assert_eq!(report.matched_terms, 13);
    }

    #[test]
    fn align_identity_and_failure() {
        let padovan = SequenceDef::from_ints([1, 1, 1], [0, 1, 1]);
        let values: Vec<i64> = Terms::forward(&padovan)
            .take(20)
            .map(|w| i64::try_from(w.to_integer().unwrap()).unwrap())
            .collect();
        let report = align(&padovan, &bfile_from(0, &values));
        assert_eq!(
            (report.status, report.shift, report.matched_terms),
            (AlignmentStatus::Aligned, 0, 20)
        );

        let zeros = bfile_from(0, &[0; 30]);
        assert_eq!(
            align(&tribonacci(), &zeros).status,
            AlignmentStatus::NoAlignment
        );

        let short = bfile_from(1, &[0, 1, 1, 2, 4]);
        assert_eq!(
            align(&tribonacci(), &short).status,
            AlignmentStatus::NoAlignment
        );
    }

    #[test]
    fn compare_counts_mismatches() {
        let mut values = vec![0, 1, 1, 2, 4, 7, 13, 24];
        values[5] = 8;
        let c = compare(&tribonacci(), &bfile_from(0, &values), 0, 50);
        assert_eq!(c.compared, 8);
        assert_eq!(c.matched, 7);
        assert_eq!(c.first_mismatch, Some(5));
    }

    #[test]
    fn fixture_names() {
        assert_eq!(fixture_file_name("A000073").as_deref(), Some("b000073.txt"));
        assert_eq!(fixture_file_name("A999999x"), None);
        assert_eq!(fixture_file_name("000073"), None);
    }

    #[test]
    fn missing_fixture() {
        let dir = tempfile::tempdir().unwrap();
        let source = BFileSource::FixtureDir(dir.path().to_path_buf());
        assert!(matches!(
            fetch_bfile("A999999x", &source),
            Err(Error::FixtureMissing { .. })
        ));
        assert!(matches!(
            fetch_bfile("A000045", &source),
            Err(Error::FixtureMissing { .. })
        ));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("b000001.txt");
        write_atomically(&path, "0 1\n").unwrap();
        write_atomically(&path, "0 2\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "0 2\n");
        let leftovers = fs::read_dir(path.parent().unwrap()).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}
