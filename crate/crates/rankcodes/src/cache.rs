//! Persistent tables: the sphere-intersection cache `jr-cache.tsv` and the
//! search summary `exact-values.tsv`.
//!
//! Both are tab-separated, carry a version comment on the first line, are
//! sorted on write and written atomically (temporary file plus rename).

use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rankcodes_core::bounds::ExactTable;
use rankcodes_core::counting::{JrKey, JrMemo};
use rankcodes_core::search::Metric;

use crate::error::{CliError, CliResult};

pub const CACHE_ENV: &str = "RANKCODES_CACHE_DIR";
pub const JR_FILE: &str = "jr-cache.tsv";
pub const EXACT_FILE: &str = "exact-values.tsv";
const JR_VERSION: &str = "# rankcodes jr-cache v1\tq m n r s d value";
const EXACT_VERSION: &str = "# rankcodes exact-values v1\tmetric q m n r d value witness_file";

/// Directory named by `RANKCODES_CACHE_DIR`, if set and non-empty.
pub fn cache_dir() -> Option<PathBuf> {
    env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("table");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn parse_fields<const N: usize>(line: &str) -> Option<[&str; N]> {
    let parts: Vec<&str> = line.split('\t').collect();
    parts.try_into().ok()
}

/// Loads `jr-cache.tsv` into a memo with the given cap. A missing file is an
/// empty memo; a file with another version line is ignored.
pub fn load_jr(path: &Path, cap: u64) -> CliResult<JrMemo> {
    let mut memo = JrMemo::new(cap);
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(memo),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines();
    if lines.next() != Some(JR_VERSION) {
        return Ok(memo);
    }
    for (no, line) in lines.enumerate() {
        let bad = || CliError::Format(format!("{}:{}: malformed cache line", path.display(), no + 2));
        let f: [&str; 7] = parse_fields(line).ok_or_else(bad)?;
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let key = JrKey::new(num(f[0])? as u64, num(f[1])?, num(f[2])?, num(f[3])?, num(f[4])?, num(f[5])?);
        let value: BigUint = f[6].parse().map_err(|_| bad())?;
        memo.insert(key, value);
    }
    memo.mark_clean();
    Ok(memo)
}

pub fn save_jr(path: &Path, memo: &JrMemo) -> CliResult<()> {
    let mut out = String::from(JR_VERSION);
    out.push('\n');
    for (k, v) in memo.entries() {
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{}\t{v}\n", k.q, k.m, k.n, k.r, k.s, k.d));
    }
    write_atomic(path, &out)
}

/// Loads the memo from the cache directory if one is configured.
pub fn open_memo(cap: u64) -> CliResult<JrMemo> {
    match cache_dir() {
        Some(dir) => load_jr(&dir.join(JR_FILE), cap),
        None => Ok(JrMemo::new(cap)),
    }
}

/// Writes the memo back when new entries were computed.
pub fn close_memo(memo: &JrMemo) -> CliResult<()> {
    if let (Some(dir), true) = (cache_dir(), memo.is_dirty()) {
        save_jr(&dir.join(JR_FILE), memo)?;
    }
    Ok(())
}

/// Key of a searched value: metric, q, m (0 for subspace codes), n, r, d.
pub type ExactKey = (Metric, u64, usize, usize, usize, usize);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactValuesFile {
    pub rows: BTreeMap<ExactKey, (BigUint, String)>,
}

impl ExactValuesFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let mut out = ExactValuesFile::default();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e.into()),
        };
        for (no, line) in text.lines().enumerate() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let bad = || CliError::Format(format!("{}:{}: malformed row", path.display(), no + 1));
            let f: [&str; 8] = parse_fields(line).ok_or_else(bad)?;
            let metric = match f[0] {
                "R" => Metric::Rank,
                "C" => Metric::Injection,
                _ => return Err(bad()),
            };
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
            let key = (metric, num(f[1])? as u64, num(f[2])?, num(f[3])?, num(f[4])?, num(f[5])?);
            out.rows.insert(key, (f[6].parse().map_err(|_| bad())?, f[7].to_string()));
        }
        Ok(out)
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let mut out = String::from(EXACT_VERSION);
        out.push('\n');
        for ((metric, q, m, n, r, d), (v, w)) in &self.rows {
            out.push_str(&format!("{metric}\t{q}\t{m}\t{n}\t{r}\t{d}\t{v}\t{w}\n"));
        }
        write_atomic(path, &out)
    }

    pub fn to_table(&self) -> ExactTable {
        let mut t = ExactTable::default();
        for (&(metric, q, m, n, r, d), (v, _)) in &self.rows {
            match metric {
                Metric::Rank => t.insert_a_r(q, m, n, d, r, v.clone()),
                Metric::Injection => t.insert_a_c(q, n, r, d, v.clone()),
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jr_round_trip_is_sorted_and_versioned() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(JR_FILE);
        let mut memo = JrMemo::default();
        memo.get(JrKey::new(2, 2, 2, 1, 1, 1)).unwrap();
        assert!(memo.is_dirty());
        save_jr(&path, &memo).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# rankcodes jr-cache v1"));
        let body: Vec<&str> = text.lines().skip(1).collect();
        let mut sorted = body.clone();
        sorted.sort_by_key(|l| l.split('\t').map(|x| x.parse::<u64>().unwrap()).collect::<Vec<_>>());
        assert_eq!(body, sorted);
        let back = load_jr(&path, 1 << 20).unwrap();
        assert_eq!(back.len(), memo.len());
        assert!(!back.is_dirty());
    }

    #[test]
    fn foreign_version_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(JR_FILE);
        fs::write(&path, "# rankcodes jr-cache v0\n2\t2\t2\t1\t1\t1\t999\n").unwrap();
        assert!(load_jr(&path, 1 << 20).unwrap().is_empty());
    }

    #[test]
    fn exact_values_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(EXACT_FILE);
        let mut f = ExactValuesFile::default();
        f.rows.insert((Metric::Injection, 2, 0, 4, 2, 2), (BigUint::from(5u32), "w/C.txt".into()));
        f.rows.insert((Metric::Rank, 2, 3, 2, 2, 2), (BigUint::from(7u32), "w/R.txt".into()));
        f.save(&path).unwrap();
        let back = ExactValuesFile::load(&path).unwrap();
        assert_eq!(back, f);
        let mut t = back.to_table();
        use rankcodes_core::bounds::ExactValues;
        assert_eq!(t.a_c(2, 4, 2, 2), Some(BigUint::from(5u32)));
        assert_eq!(t.a_r(2, 2, 3, 2, 2), Some(BigUint::from(7u32)));
    }
}
