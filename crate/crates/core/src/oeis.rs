//! Offline OEIS b-file handling and prefix cross-checks.
//!
//! References are looked up in the bundled fixtures first, then in a cache
//! directory. Fetching over the network is left to callers (the CLI does it
//! behind `--online`) and the result can be dropped into the cache.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

/// Environment variable naming the b-file cache directory.
pub const CACHE_ENV: &str = "BECK_OEIS_CACHE";

const BUNDLED: &[(&str, &str)] = &[("A090867", include_str!("../fixtures/oeis/b090867.txt"))];

/// Normalizes an id such as `a90867` or `A090867` to `A090867`.
pub fn normalize_id(id: &str) -> Result<String> {
    let digits = id
        .strip_prefix('A')
        .or_else(|| id.strip_prefix('a'))
        .filter(|d| !d.is_empty() && d.len() <= 6 && d.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| Error::SequenceId(id.to_string()))?;
    let number: u32 = digits.parse().map_err(|_| Error::SequenceId(id.to_string()))?;
    Ok(format!("A{number:06}"))
}

/// `b090867.txt` for `A090867`.
pub fn bfile_name(id: &str) -> Result<String> {
    Ok(format!("b{}.txt", &normalize_id(id)?[1..]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BFile {
    /// index of the first entry
    pub offset: i64,
    pub values: Vec<i128>,
}

impl BFile {
    pub fn value_at(&self, index: i64) -> Option<i128> {
        let i = index.checked_sub(self.offset)?;
        usize::try_from(i).ok().and_then(|i| self.values.get(i).copied())
    }
}

/// Parses `index value` lines; blank lines and `#` comments are skipped.
/// Indices must be consecutive.
pub fn parse_bfile(text: &str) -> Result<BFile> {
    let mut offset = None;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::BFile { line: lineno + 1, reason };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad(format!("expected \"index value\", got {line:?}")));
        };
        let index: i64 = index.parse().map_err(|_| bad(format!("bad index {index:?}")))?;
        let value: i128 = value.parse().map_err(|_| bad(format!("bad value {value:?}")))?;
        let start = *offset.get_or_insert(index);
        let expected = start + values.len() as i64;
        if index != expected {
            return Err(bad(format!("index {index} follows {}", expected - 1)));
        }
        values.push(value);
    }
    Ok(BFile { offset: offset.unwrap_or(0), values })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "path", rename_all = "snake_case")]
pub enum Source {
    Bundled,
    Cache(PathBuf),
    Online(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reference {
    pub id: String,
    pub source: Source,
    pub bfile: BFile,
}

pub fn bundled(id: &str) -> Result<Option<Reference>> {
    let id = normalize_id(id)?;
    BUNDLED
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, text)| Ok(Reference { id: id.clone(), source: Source::Bundled, bfile: parse_bfile(text)? }))
        .transpose()
}

pub fn cached(id: &str, dir: &Path) -> Result<Option<Reference>> {
    let path = dir.join(bfile_name(id)?);
    match fs::read_to_string(&path) {
        Ok(text) => {
            Ok(Some(Reference { id: normalize_id(id)?, source: Source::Cache(path), bfile: parse_bfile(&text)? }))
        }
        Err(_) => Ok(None),
    }
}

/// The cache directory: an explicit choice, else the environment variable.
pub fn cache_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

/// Bundled fixture, then cache. `None` means the reference is unavailable
/// offline.
pub fn lookup_offline(id: &str, cache: Option<&Path>) -> Result<Option<Reference>> {
    if let Some(r) = bundled(id)? {
        return Ok(Some(r));
    }
    match cache {
        Some(dir) => cached(id, dir),
        None => Ok(None),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchStatus {
    /// every overlapping value agrees
    Match,
    Mismatch,
    /// no reference could be found; says nothing about correctness
    ReferenceUnavailable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub n: i64,
    pub computed: i128,
    pub reference: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub sequence_id: String,
    pub status: MatchStatus,
    pub source: Option<Source>,
    /// `n` of the first computed value
    pub first_n: i64,
    pub computed_len: usize,
    /// reference index minus `n` in the best alignment
    pub shift: i64,
    /// number of agreeing values from the start of the overlap
    pub prefix_len: usize,
    pub first_disagreement: Option<Disagreement>,
}

/// Aligns `values` (for `n = first_n, first_n + 1, ...`) against the
/// reference at every shift and keeps the longest agreeing prefix; ties go
/// to the smallest `|shift|`, then the positive one.
pub fn crosscheck(id: &str, values: &[i128], first_n: i64, reference: Option<&Reference>) -> Result<MatchReport> {
    let sequence_id = normalize_id(id)?;
    let mut report = MatchReport {
        sequence_id,
        status: MatchStatus::ReferenceUnavailable,
        source: reference.map(|r| r.source.clone()),
        first_n,
        computed_len: values.len(),
        shift: 0,
        prefix_len: 0,
        first_disagreement: None,
    };
    let Some(reference) = reference else {
        return Ok(report);
    };
    let bf = &reference.bfile;
    if values.is_empty() {
        report.status = MatchStatus::Match;
        return Ok(report);
    }
    let ref_len = bf.values.len() as i64;
    let comp_len = values.len() as i64;
    // reference index = n + shift; shifts with any overlap
    let lo = bf.offset - (first_n + comp_len - 1);
    let hi = bf.offset + ref_len - 1 - first_n;
    let mut best: Option<(usize, i64, bool, Option<Disagreement>)> = None;
    let mut shifts: Vec<i64> = (lo..=hi).collect();
    shifts.sort_by_key(|&s| (s.abs(), s < 0));
    for shift in shifts {
        let mut prefix = 0;
        let mut overlap = 0;
        let mut disagreement = None;
        for (i, &v) in values.iter().enumerate() {
            let n = first_n + i as i64;
            let Some(r) = bf.value_at(n + shift) else { continue };
            overlap += 1;
            if r != v {
                disagreement = Some(Disagreement { n, computed: v, reference: r });
                break;
            }
            prefix += 1;
        }
        let full = disagreement.is_none() && overlap > 0;
        if best.as_ref().is_none_or(|b| prefix > b.0) {
            best = Some((prefix, shift, full, disagreement));
        }
    }
    if let Some((prefix, shift, full, disagreement)) = best {
        report.prefix_len = prefix;
        report.shift = shift;
        report.status = if full { MatchStatus::Match } else { MatchStatus::Mismatch };
        report.first_disagreement = disagreement;
    }
    Ok(report)
}
