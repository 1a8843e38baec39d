//! Text code files.
//!
//! ```text
//! crc q=2 m=4 n=3 r=2 d=2 count=105 field=gf:p=2,m=4,poly=10011
//! 1 0 0; 0 1 0; 0 0 0; 0 0 0
//! ...
//! ```
//!
//! The tag is `rank` for arbitrary rank-metric codes, `crc` for
//! constant-rank codes and `cdc` for constant-dimension codes (one RREF
//! basis per line, header without `m`). Blank lines and lines starting with
//! `#` are ignored. `d` is the minimum distance (`inf` for one codeword).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rankcodes_core::cdc::ConstantDimensionCode;
use rankcodes_core::gf::FieldSpec;
use rankcodes_core::linalg::{MatrixGF, MinDistance, Subspace};
use rankcodes_core::rankcodes::{ConstantRankCode, RankCode};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Rank,
    ConstantRank,
    ConstantDimension,
}

impl CodeKind {
    pub fn tag(self) -> &'static str {
        match self {
            CodeKind::Rank => "rank",
            CodeKind::ConstantRank => "crc",
            CodeKind::ConstantDimension => "cdc",
        }
    }
}

#[derive(Debug, Clone)]
pub enum CodeBody {
    Rank(RankCode),
    ConstantRank(ConstantRankCode),
    ConstantDimension(ConstantDimensionCode),
}

/// A parsed code file: header claims plus the codewords.
#[derive(Debug, Clone)]
pub struct CodeFile {
    pub q: u32,
    /// Claimed minimum distance.
    pub d: MinDistance,
    /// Claimed number of codewords.
    pub count: usize,
    pub field: Option<FieldSpec>,
    pub body: CodeBody,
}

impl CodeFile {
    pub fn kind(&self) -> CodeKind {
        match self.body {
            CodeBody::Rank(_) => CodeKind::Rank,
            CodeBody::ConstantRank(_) => CodeKind::ConstantRank,
            CodeBody::ConstantDimension(_) => CodeKind::ConstantDimension,
        }
    }

    pub fn len(&self) -> usize {
        match &self.body {
            CodeBody::Rank(c) => c.len(),
            CodeBody::ConstantRank(c) => c.len(),
            CodeBody::ConstantDimension(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn header(&self) -> String {
        let mut h = String::from(self.kind().tag());
        let _ = write!(h, " q={}", self.q);
        match &self.body {
            CodeBody::Rank(c) => {
                let (m, n) = c.shape();
                let _ = write!(h, " m={m} n={n}");
            }
            CodeBody::ConstantRank(c) => {
                let (m, n) = c.shape();
                let _ = write!(h, " m={m} n={n} r={}", c.rank());
            }
            CodeBody::ConstantDimension(c) => {
                let _ = write!(h, " n={} r={}", c.ambient(), c.dim());
            }
        }
        let _ = write!(h, " d={} count={}", self.d, self.count);
        if let Some(f) = &self.field {
            let _ = write!(h, " field={f}");
        }
        h
    }

    pub fn render(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        match &self.body {
            CodeBody::Rank(c) => c.codewords().iter().for_each(|w| line(w.to_string())),
            CodeBody::ConstantRank(c) => c.codewords().iter().for_each(|w| line(w.to_string())),
            CodeBody::ConstantDimension(c) => c.subspaces().iter().for_each(|s| line(s.to_string())),
        }
        out
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.render())?;
        Ok(())
    }

    pub fn read(path: &Path) -> CliResult<CodeFile> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        CodeFile::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<CodeFile> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| CliError::Format("empty code file".into()))?;
        let mut tokens = header.split_whitespace();
        let tag = tokens.next().unwrap_or_default();
        let mut fields = BTreeMap::new();
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| CliError::Format(format!("header token `{tok}` is not key=value")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| -> CliResult<usize> {
            fields
                .get(k)
                .ok_or_else(|| CliError::Format(format!("header lacks `{k}`")))?
                .parse()
                .map_err(|_| CliError::Format(format!("header `{k}` is not a number")))
        };
        let q = get("q")? as u32;
        let count = get("count")?;
        let d: MinDistance = fields
            .get("d")
            .ok_or_else(|| CliError::Format("header lacks `d`".into()))?
            .parse()
            .map_err(|_| CliError::Format("header `d` is not a distance".into()))?;
        let field = match fields.get("field") {
            Some(s) => {
                let f: FieldSpec = s.parse()?;
                if f.p() != q {
                    return Err(CliError::Format(format!("field {f} does not match q={q}")));
                }
                Some(f)
            }
            None => None,
        };
        let body_err = |no: usize, e: rankcodes_core::Error| CliError::Format(format!("line {}: {e}", no + 1));
        let body = match tag {
            "rank" | "crc" => {
                let (m, n) = (get("m")?, get("n")?);
                let mut words = Vec::new();
                for (no, l) in lines {
                    words.push(MatrixGF::parse(q, m, n, l).map_err(|e| body_err(no, e))?);
                }
                if tag == "rank" {
                    CodeBody::Rank(RankCode::new(q, m, n, words)?)
                } else {
                    let r = get("r")?;
                    // ranks are checked by `verify`, so keep the words as given
                    match ConstantRankCode::new(q, m, n, r, words.clone()) {
                        Ok(c) => CodeBody::ConstantRank(c),
                        Err(_) => return Err(CliError::Verify(format!("constant-rank: not every codeword has rank {r}"))),
                    }
                }
            }
            "cdc" => {
                let (n, r) = (get("n")?, get("r")?);
                let mut spaces = Vec::new();
                for (no, l) in lines {
                    let basis = MatrixGF::parse(q, r, n, l).map_err(|e| body_err(no, e))?;
                    spaces.push(
                        Subspace::from_rref(basis)
                            .map_err(|_| CliError::Verify(format!("canonical-basis: line {} is not a reduced basis of rank {r}", no + 1)))?,
                    );
                }
                CodeBody::ConstantDimension(ConstantDimensionCode::new(q, n, r, spaces)?)
            }
            other => return Err(CliError::Format(format!("unknown code tag `{other}`"))),
        };
        Ok(CodeFile {
            q,
            d,
            count,
            field,
            body,
        })
    }

    /// Builds a file whose header claims are recomputed from the code.
    pub fn stamped(body: CodeBody, field: Option<FieldSpec>, pair_cap: u64) -> CliResult<CodeFile> {
        let (q, d, count) = match &body {
            CodeBody::Rank(c) => (c.p(), c.min_rank_distance(pair_cap)?, c.len()),
            CodeBody::ConstantRank(c) => (c.p(), c.min_rank_distance(pair_cap)?, c.len()),
            CodeBody::ConstantDimension(c) => (c.p(), c.min_injection_distance(pair_cap)?, c.len()),
        };
        Ok(CodeFile {
            q,
            d,
            count,
            field,
            body,
        })
    }
}

/// Outcome of rechecking every header claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    /// Names of violated invariants.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify(file: &CodeFile, pair_cap: u64) -> CliResult<VerifyReport> {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let actual_count = file.len();
    lines.push(format!("kind: {}", file.kind().tag()));
    if actual_count == file.count {
        lines.push(format!("count: {actual_count} ok"));
    } else {
        failures.push(format!("count: header says {}, file has {actual_count} distinct codewords", file.count));
    }
    if let Some(f) = &file.field {
        let m = match &file.body {
            CodeBody::Rank(c) => Some(c.shape().0),
            CodeBody::ConstantRank(c) => Some(c.shape().0),
            CodeBody::ConstantDimension(_) => None,
        };
        if m.is_some_and(|m| m != f.m()) {
            failures.push(format!("field: extension degree {} does not match m", f.m()));
        } else {
            lines.push(format!("field: {f} ok"));
        }
    }
    let d = match &file.body {
        CodeBody::Rank(c) => c.min_rank_distance(pair_cap)?,
        CodeBody::ConstantRank(c) => {
            lines.push(format!("constant-rank: all {} codewords have rank {}", c.len(), c.rank()));
            c.min_rank_distance(pair_cap)?
        }
        CodeBody::ConstantDimension(c) => {
            lines.push(format!("constant-dimension: all {} subspaces have dimension {}", c.len(), c.dim()));
            c.min_injection_distance(pair_cap)?
        }
    };
    if d == file.d {
        lines.push(format!("min-distance: {d} ok"));
    } else {
        failures.push(format!("min-distance: header says {}, measured {d}", file.d));
    }
    Ok(VerifyReport { lines, failures })
}
