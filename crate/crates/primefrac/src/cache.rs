//! Line-oriented ASCII cache for generated quotient streams.
//!
//! Format (byte-exact, platform independent):
//!
//! ```text
//! # primefrac-cache v1
//! family: twin
//! bound: 10000
//! count: 410
//! sha256: <hex digest of the quotient lines>
//! 3
//! 5
//! ...
//! ```
//!
//! The checksum covers the quotient section (each quotient's decimal
//! representation followed by a newline). Writes are atomic
//! (write-temp-then-rename); a failed checksum is a hard error, and a
//! version mismatch triggers regeneration rather than silent reuse.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::primes::{PrimeFamily, QuotientStream};

pub const CACHE_VERSION: u32 = 1;
const HEADER: &str = "# primefrac-cache v1";

/// Environment variable overriding the cache directory.
pub const CACHE_ENV_VAR: &str = "PRIMEFRAC_CACHE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheManifest {
    pub version: u32,
    pub family: String,
    pub bound: String,
    pub count: usize,
    pub sha256: String,
}

fn quotient_section(stream: &QuotientStream) -> String {
    let mut body = String::new();
    for q in &stream.quotients {
        body.push_str(&q.to_string());
        body.push('\n');
    }
    body
}

fn digest(body: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(body.as_bytes());
    hex_encode(&hasher.finalize())
}

fn hex_encode(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// File name for a family at its bound (bound string sanitized).
pub fn cache_file_name(family: &PrimeFamily) -> String {
    let bound = family.bound_string().replace([' ', '='], "-");
    format!("{}-{}.cache", family.slug(), bound)
}

/// Writes `stream` under `dir`, returning the manifest.
pub fn write_stream(stream: &QuotientStream, dir: &Path) -> Result<CacheManifest> {
    fs::create_dir_all(dir)?;
    let body = quotient_section(stream);
    let sha = digest(&body);
    let manifest = CacheManifest {
        version: CACHE_VERSION,
        family: stream.family.slug().to_string(),
        bound: stream.family.bound_string(),
        count: stream.quotients.len(),
        sha256: sha.clone(),
    };
    let contents = format!(
        "{HEADER}\nfamily: {}\nbound: {}\ncount: {}\nsha256: {}\n{}",
        manifest.family, manifest.bound, manifest.count, sha, body
    );
    let path = dir.join(cache_file_name(&stream.family));
    let tmp: PathBuf = path.with_extension("cache.tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, &path)?;
    Ok(manifest)
}

/// Loads the cached stream for `family` from `dir`.
///
/// `Ok(None)`: no cache file, or a version mismatch (regenerate).
/// `Err(CorruptCache)`: the file exists at the current version but fails
/// its checksum or structure checks.
pub fn read_stream(family: &PrimeFamily, dir: &Path) -> Result<Option<QuotientStream>> {
    let path = dir.join(cache_file_name(family));
    let contents = match fs::read_to_string(&path) {
        Ok(c) => c,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = contents.split_inclusive('\n');
    let header = lines.next().unwrap_or("").trim_end();
    if header != HEADER {
        // unknown or future version: regenerate
        return Ok(None);
    }
    let mut expect = |prefix: &str| -> Result<String> {
        let line = lines
            .next()
            .ok_or_else(|| Error::CorruptCache(format!("missing {prefix} line")))?
            .trim_end();
        line.strip_prefix(prefix)
            .map(|s| s.trim().to_string())
            .ok_or_else(|| Error::CorruptCache(format!("expected {prefix} line, found {line:?}")))
    };
    let file_family = expect("family:")?;
    let file_bound = expect("bound:")?;
    let count: usize = expect("count:")?
        .parse()
        .map_err(|_| Error::CorruptCache("count is not a number".into()))?;
    let sha = expect("sha256:")?;
    if file_family != family.slug() || file_bound != family.bound_string() {
        return Err(Error::CorruptCache(format!(
            "family/bound mismatch: file has {file_family} at {file_bound}"
        )));
    }
    let body: String = lines.collect();
    if digest(&body) != sha {
        return Err(Error::CorruptCache("checksum mismatch".into()));
    }
    let mut quotients = Vec::with_capacity(count);
    for line in body.lines() {
        let q: BigInt = line
            .parse()
            .map_err(|_| Error::CorruptCache(format!("bad quotient line {line:?}")))?;
        quotients.push(q);
    }
    if quotients.len() != count {
        return Err(Error::CorruptCache(format!(
            "count mismatch: header says {count}, found {}",
            quotients.len()
        )));
    }
    Ok(Some(QuotientStream {
        family: family.clone(),
        quotients,
        provenance: format!("cache file {}", path.display()),
    }))
}

/// Writes then reads back `stream`, verifying elementwise equality.
pub fn cache_roundtrip(stream: &QuotientStream, dir: &Path) -> Result<CacheManifest> {
    let manifest = write_stream(stream, dir)?;
    let reloaded = read_stream(&stream.family, dir)?
        .ok_or_else(|| Error::CorruptCache("file vanished after write".into()))?;
    if reloaded.quotients != stream.quotients {
        return Err(Error::CorruptCache("reloaded stream differs from original".into()));
    }
    Ok(manifest)
}
