//! On-disk memo of Chevalley structure constants under `SECANT_CACHE_DIR`.
//!
//! File `chevalley-v{VERSION}-{type}.bin`, little endian:
//! magic `SECANTCH`, u32 version, u8 name length, type name (e.g. `E8`),
//! u32 entry count, then per entry u16 α, u16 β, u16 α+β (root indices), i8 N_{α,β}.
//! Files with another version or a mismatching root pattern are ignored and
//! rewritten; deleting the directory is always safe.

use crate::chevalley::{build_chevalley, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::rootsys::SimpleType;
use std::path::{Path, PathBuf};

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"SECANTCH";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("SECANT_CACHE_DIR").filter(|s| !s.is_empty()).map(PathBuf::from)
}

pub fn cache_path(dir: &Path, ty: SimpleType) -> PathBuf {
    dir.join(format!("chevalley-v{CACHE_VERSION}-{ty}.bin"))
}

pub fn encode(ty: SimpleType, alg: &ChevalleyAlgebra) -> Vec<u8> {
    let name = ty.to_string();
    let entries = alg.structure_entries();
    let mut out = Vec::with_capacity(17 + name.len() + entries.len() * 7);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.push(name.len() as u8);
    out.extend_from_slice(name.as_bytes());
    out.extend_from_slice(&(entries.len() as u32).to_le_bytes());
    for (a, b, s, n) in entries {
        for x in [a, b, s] {
            out.extend_from_slice(&(x as u16).to_le_bytes());
        }
        out.push(n as i8 as u8);
    }
    out
}

pub fn decode(ty: SimpleType, bytes: &[u8]) -> Result<ChevalleyAlgebra> {
    let bad = |m: &str| Error::Parse(format!("cache file: {m}"));
    let mut pos = 0usize;
    let mut take = |n: usize| -> Result<&[u8]> {
        let s = bytes.get(pos..pos + n).ok_or_else(|| bad("truncated"))?;
        pos += n;
        Ok(s)
    };
    if take(8)? != MAGIC {
        return Err(bad("bad magic"));
    }
    let version = u32::from_le_bytes(take(4)?.try_into().unwrap());
    if version != CACHE_VERSION {
        return Err(bad("version mismatch"));
    }
    let len = take(1)?[0] as usize;
    if take(len)? != ty.to_string().as_bytes() {
        return Err(bad("type mismatch"));
    }
    let count = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let e = take(7)?;
        let u = |i: usize| u16::from_le_bytes([e[i], e[i + 1]]) as usize;
        entries.push((u(0), u(2), u(4), e[6] as i8 as i64));
    }
    ChevalleyAlgebra::from_entries(ty, &entries)
}

/// Builds the algebra, going through the cache directory when one is configured.
pub fn chevalley_cached(ty: SimpleType) -> Result<ChevalleyAlgebra> {
    let Some(dir) = cache_dir() else {
        return build_chevalley(ty);
    };
    let path = cache_path(&dir, ty);
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(alg) = decode(ty, &bytes) {
            return Ok(alg);
        }
    }
    let alg = build_chevalley(ty)?;
    std::fs::create_dir_all(&dir)?;
    // write then rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, encode(ty, &alg))?;
    std::fs::rename(&tmp, &path)?;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_rejects() {
        let ty = SimpleType::f4();
        let alg = build_chevalley(ty).unwrap();
        let bytes = encode(ty, &alg);
        let back = decode(ty, &bytes).unwrap();
        assert_eq!(back.structure_entries(), alg.structure_entries());
        assert!(decode(SimpleType::g2(), &bytes).is_err());
        let mut old = bytes.clone();
        old[8] = 0;
        assert!(decode(ty, &old).is_err());
        assert!(decode(ty, &bytes[..bytes.len() - 3]).is_err());
    }
}
