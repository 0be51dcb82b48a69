//! Persistent cache of reconstruction state.
//!
//! JSON on disk, every number a decimal string (no precision loss), with a
//! version tag and a SHA-256 checksum over the canonical payload encoding.
//! Reloading reproduces bit-identical normal forms: rational functions are
//! stored as integer-coefficient numerator/denominator pairs and re-pass
//! through the same normalization on load.

use crate::gw::GwTable;
use crate::number::{rat_from_str, rat_to_string, Rat};
use crate::poly::Poly;
use crate::qk::{ReconState, SolvedLevels};
use crate::qrat::{KQRat, QRat};
use num::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    Parse(String),
    VersionMismatch { found: u32, expected: u32 },
    ChecksumMismatch,
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache io error: {e}"),
            CacheError::Parse(e) => write!(f, "cache parse error: {e}"),
            CacheError::VersionMismatch { found, expected } => write!(
                f,
                "cache format version {found} but this build reads version {expected}"
            ),
            CacheError::ChecksumMismatch => write!(f, "cache checksum mismatch (corrupt file)"),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

/// A rational function as integer-coefficient numerator/denominator
/// coefficient lists (low to high), decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RatFnJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl RatFnJson {
    /// Scale both sides to integer coefficients and render as decimal
    /// strings.
    pub fn encode(f: &QRat) -> Self {
        use num::Integer;
        // scale both sides by the common coefficient denominator
        let l = f.num().denominator_lcm().lcm(&f.den().denominator_lcm());
        let enc = |p: &Poly| -> Vec<String> {
            p.coeffs()
                .iter()
                .map(|c| {
                    let v = c * Rat::from_integer(l.clone());
                    debug_assert!(crate::number::is_integer(&v));
                    v.numer().to_string()
                })
                .collect()
        };
        RatFnJson {
            num: enc(f.num()),
            den: enc(f.den()),
        }
    }

    fn decode(&self) -> Result<QRat, CacheError> {
        let dec = |v: &[String]| -> Result<Poly, CacheError> {
            let coeffs = v
                .iter()
                .map(|s| {
                    BigInt::from_str(s)
                        .map(Rat::from_integer)
                        .map_err(|e| CacheError::Parse(format!("bad integer {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Poly::from_coeffs(coeffs))
        };
        let den = dec(&self.den)?;
        if den.is_zero() {
            return Err(CacheError::Parse("zero denominator".into()));
        }
        Ok(QRat::new(dec(&self.num)?, den))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CachePayload {
    pub format_version: u32,
    pub max_degree: usize,
    /// gw[d-1], gv[d-1] for d = 1..=max_degree, rational strings
    pub gw: Vec<String>,
    pub gv: Vec<String>,
    /// `epsilon[i][j]`, rational strings, 4 x (max_degree+1)
    pub epsilon: Vec<Vec<String>>,
    /// `rpoly[i][j]`: coefficients of r_ij(q), rational strings
    pub rpoly: Vec<Vec<Vec<String>>>,
    /// per-degree components of (1/(1-q))J(0), 4 per degree
    pub jk: Vec<Vec<RatFnJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub payload: CachePayload,
    pub checksum: String,
}

fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl CacheFile {
    pub fn build(state: &ReconState, table: &GwTable) -> Self {
        assert!(table.max_degree() >= state.max_degree());
        let d = state.max_degree();
        let payload = CachePayload {
            format_version: CACHE_FORMAT_VERSION,
            max_degree: d,
            gw: (1..=d).map(|k| rat_to_string(table.gw(k))).collect(),
            gv: (1..=d).map(|k| rat_to_string(table.gv(k))).collect(),
            epsilon: (0..4)
                .map(|i| {
                    state
                        .epsilon(i)
                        .coeffs()
                        .iter()
                        .map(rat_to_string)
                        .collect()
                })
                .collect(),
            rpoly: (0..4)
                .map(|i| {
                    (0..=d)
                        .map(|j| {
                            state
                                .rpoly(i, j)
                                .coeffs()
                                .iter()
                                .map(rat_to_string)
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            jk: (0..=d)
                .map(|m| {
                    (0..4)
                        .map(|i| RatFnJson::encode(state.jk_coefficient(m).comp(i)))
                        .collect()
                })
                .collect(),
        };
        let checksum = sha256_hex(&serde_json::to_string(&payload).expect("serialize payload"));
        CacheFile { payload, checksum }
    }

    pub fn write(&self, path: &Path) -> Result<(), CacheError> {
        let text = serde_json::to_string_pretty(self).expect("serialize cache");
        std::fs::write(path, text)?;
        Ok(())
    }

    /// Read and fully validate (version tag, checksum, shapes).
    pub fn read(path: &Path) -> Result<Self, CacheError> {
        let text = std::fs::read_to_string(path)?;
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| CacheError::Parse(e.to_string()))?;
        if file.payload.format_version != CACHE_FORMAT_VERSION {
            return Err(CacheError::VersionMismatch {
                found: file.payload.format_version,
                expected: CACHE_FORMAT_VERSION,
            });
        }
        let expect = sha256_hex(&serde_json::to_string(&file.payload).expect("serialize payload"));
        if expect != file.checksum {
            return Err(CacheError::ChecksumMismatch);
        }
        let p = &file.payload;
        let d = p.max_degree;
        if p.epsilon.len() != 4
            || p.rpoly.len() != 4
            || p.gw.len() != d
            || p.gv.len() != d
            || p.jk.len() != d + 1
            || p.epsilon.iter().any(|v| v.len() != d + 1)
            || p.rpoly.iter().any(|v| v.len() != d + 1)
            || p.jk.iter().any(|v| v.len() != 4)
        {
            return Err(CacheError::Parse("inconsistent table shapes".into()));
        }
        Ok(file)
    }

    /// The solved levels recorded in this cache (seed for resuming).
    pub fn solved_levels(&self) -> Result<SolvedLevels, CacheError> {
        let p = &self.payload;
        let parse_rat =
            |s: &String| rat_from_str(s).map_err(CacheError::Parse);
        let epsilon = p
            .epsilon
            .iter()
            .map(|v| v.iter().map(parse_rat).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let rpoly = p
            .rpoly
            .iter()
            .map(|v| {
                v.iter()
                    .map(|coeffs| {
                        Ok(Poly::from_coeffs(
                            coeffs
                                .iter()
                                .map(parse_rat)
                                .collect::<Result<Vec<_>, CacheError>>()?,
                        ))
                    })
                    .collect::<Result<Vec<_>, CacheError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SolvedLevels {
            max_degree: p.max_degree,
            epsilon,
            rpoly,
        })
    }

    /// The GW/GV table recorded in this cache.
    pub fn table(&self) -> Result<GwTable, CacheError> {
        let parse = |v: &Vec<String>| {
            v.iter()
                .map(|s| rat_from_str(s).map_err(CacheError::Parse))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(GwTable::from_parts(
            parse(&self.payload.gw)?,
            parse(&self.payload.gv)?,
        ))
    }

    /// The stored J-function coefficients, re-normalized on load (the
    /// normal form is deterministic, so this reproduces the original
    /// bit for bit).
    pub fn jk_coefficients(&self) -> Result<Vec<KQRat>, CacheError> {
        self.payload
            .jk
            .iter()
            .map(|comps| {
                let mut out = KQRat::zero();
                for (i, c) in comps.iter().enumerate() {
                    out.set_comp(i, c.decode()?);
                }
                Ok(out)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::gw_table;
    use crate::qk::ReconState;

    #[test]
    fn roundtrip_bit_identical() {
        let state = ReconState::reconstruct(2);
        let table = gw_table(2);
        let file = CacheFile::build(&state, &table);
        let dir = std::env::temp_dir().join("quintic-qk-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.json");
        file.write(&path).unwrap();
        let loaded = CacheFile::read(&path).unwrap();
        assert_eq!(loaded.checksum, file.checksum);
        // seeded reconstruction from the cache matches the original exactly
        let seed = loaded.solved_levels().unwrap();
        let resumed = ReconState::reconstruct_seeded(2, Some(&seed));
        assert_eq!(resumed.levels_solved(), 0);
        for m in 0..=2 {
            assert_eq!(resumed.jk_coefficient(m), state.jk_coefficient(m));
        }
        // stored jk coefficients decode to the same normal forms
        let jk = loaded.jk_coefficients().unwrap();
        for m in 0..=2 {
            assert_eq!(&jk[m], state.jk_coefficient(m));
        }
        let t2 = loaded.table().unwrap();
        assert_eq!(t2.gw(2), table.gw(2));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn version_and_checksum_guards() {
        let state = ReconState::reconstruct(1);
        let table = gw_table(1);
        let mut file = CacheFile::build(&state, &table);
        let dir = std::env::temp_dir().join("quintic-qk-cache-test");
        std::fs::create_dir_all(&dir).unwrap();

        // wrong version refuses to load
        let bad_version = dir.join("bad_version.json");
        file.payload.format_version = 99;
        let checksum = sha256_hex(&serde_json::to_string(&file.payload).unwrap());
        file.checksum = checksum;
        file.write(&bad_version).unwrap();
        match CacheFile::read(&bad_version) {
            Err(CacheError::VersionMismatch { found: 99, .. }) => {}
            other => panic!("expected version mismatch, got {other:?}"),
        }

        // corrupt payload fails the checksum
        let state = ReconState::reconstruct(1);
        let good = CacheFile::build(&state, &table);
        let corrupt = dir.join("corrupt.json");
        good.write(&corrupt).unwrap();
        let text = std::fs::read_to_string(&corrupt)
            .unwrap()
            .replace("2875", "2876");
        std::fs::write(&corrupt, text).unwrap();
        match CacheFile::read(&corrupt) {
            Err(CacheError::ChecksumMismatch) => {}
            other => panic!("expected checksum mismatch, got {other:?}"),
        }
        std::fs::remove_file(&bad_version).ok();
        std::fs::remove_file(&corrupt).ok();
    }
}
