//! Precomputed structure constants with an on-disk cache.
//!
//! File layout: the magic `RGORC1`, the group spec as a length-prefixed
//! string, then `(u, v, w, c)` records as LEB128 varints until end of file.
//! Element numbers are indices into [`WeylGroup`], whose order is fixed by
//! construction. Only records with `u <= v` are stored.

use super::ring::Ring;
use super::OracleError;
use crate::root_system::RootSystem;
use crate::weyl::WeylGroup;
use rustc_hash::FxHashMap;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const MAGIC: &[u8; 6] = b"RGORC1";

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "ROOTGAME_CACHE_DIR";

/// Largest group for which the full table is built.
pub const MAX_TABLE_ORDER: usize = 400;

/// `σ_u σ_v = Σ_w c σ_w` for every pair `u <= v`.
#[derive(Debug)]
pub struct StructureTable {
    group: Arc<WeylGroup>,
    products: FxHashMap<(u32, u32), Vec<(u32, u64)>>,
}

fn write_varint(out: &mut impl Write, mut x: u64) -> io::Result<()> {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            return out.write_all(&[byte]);
        }
        out.write_all(&[byte | 0x80])?;
    }
}

/// Reads one varint; `Ok(None)` at a clean end of input.
fn read_varint(input: &[u8], at: &mut usize) -> io::Result<Option<u64>> {
    let mut x = 0u64;
    let mut shift = 0;
    let start = *at;
    loop {
        let Some(&b) = input.get(*at) else {
            if *at == start {
                return Ok(None);
            }
            return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "truncated varint"));
        };
        *at += 1;
        if shift >= 64 {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "varint overflow"));
        }
        x |= ((b & 0x7f) as u64) << shift;
        shift += 7;
        if b & 0x80 == 0 {
            return Ok(Some(x));
        }
    }
}

impl StructureTable {
    /// Computes the full table with the Chevalley ring.
    pub fn build(ring: &Ring) -> Result<StructureTable, OracleError> {
        let group = ring.group().clone();
        if group.order() > MAX_TABLE_ORDER {
            return Err(OracleError::TableTooLarge(group.order()));
        }
        let mut products = FxHashMap::default();
        let levels: Vec<&[usize]> = (0..=group.root_system().len()).map(|l| group.of_length(l)).collect();
        for v in 0..group.order() {
            for (u, x) in ring.multiply_all(&ring.class(v)) {
                if u > v {
                    continue;
                }
                let mut entries = Vec::new();
                if let Some(level) = levels.get(x.degree) {
                    for (r, &c) in x.coeffs.iter().enumerate() {
                        if c < 0 {
                            return Err(OracleError::Negative(c));
                        }
                        if c > 0 {
                            entries.push((level[r] as u32, c as u64));
                        }
                    }
                }
                entries.sort_unstable();
                products.insert((u as u32, v as u32), entries);
            }
        }
        Ok(StructureTable { group, products })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    /// Coefficient of `σ_w` in `σ_u σ_v`.
    pub fn structure_constant(&self, u: usize, v: usize, w: usize) -> u64 {
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.products
            .get(&key)
            .and_then(|e| e.binary_search_by_key(&(w as u32), |x| x.0).ok().map(|i| e[i].1))
            .unwrap_or(0)
    }

    /// `∫ σ_a σ_b σ_c`.
    pub fn triple(&self, a: usize, b: usize, c: usize) -> u64 {
        let g = &self.group;
        if g.length(a) + g.length(b) + g.length(c) != g.root_system().len() {
            return 0;
        }
        self.structure_constant(a, b, g.mul(g.long_element(), c))
    }

    pub fn record_count(&self) -> usize {
        self.products.values().map(|v| v.len()).sum()
    }

    pub fn write_to(&self, out: &mut impl Write) -> io::Result<()> {
        out.write_all(MAGIC)?;
        let spec = self.group.root_system().spec().as_bytes();
        write_varint(out, spec.len() as u64)?;
        out.write_all(spec)?;
        let mut keys: Vec<&(u32, u32)> = self.products.keys().collect();
        keys.sort_unstable();
        for k in keys {
            for &(w, c) in &self.products[k] {
                for x in [k.0 as u64, k.1 as u64, w as u64, c] {
                    write_varint(out, x)?;
                }
            }
        }
        Ok(())
    }

    /// Reads a table for `group`; fails if the file belongs to another group.
    pub fn read_from(group: Arc<WeylGroup>, input: &mut impl Read) -> Result<StructureTable, OracleError> {
        let mut buf = Vec::new();
        input.read_to_end(&mut buf).map_err(OracleError::io)?;
        let bad = |m: &str| OracleError::Cache(m.to_string());
        if buf.len() < MAGIC.len() || &buf[..MAGIC.len()] != MAGIC {
            return Err(bad("missing RGORC1 header"));
        }
        let mut at = MAGIC.len();
        let n = read_varint(&buf, &mut at).map_err(OracleError::io)?.ok_or_else(|| bad("missing spec"))? as usize;
        let spec = buf.get(at..at + n).ok_or_else(|| bad("truncated spec"))?;
        if spec != group.root_system().spec().as_bytes() {
            return Err(bad("cache belongs to a different group"));
        }
        at += n;
        let order = group.order() as u64;
        let mut products: FxHashMap<(u32, u32), Vec<(u32, u64)>> = FxHashMap::default();
        while let Some(u) = read_varint(&buf, &mut at).map_err(OracleError::io)? {
            let mut rest = [0u64; 3];
            for r in rest.iter_mut() {
                *r = read_varint(&buf, &mut at)
                    .map_err(OracleError::io)?
                    .ok_or_else(|| bad("truncated record"))?;
            }
            let [v, w, c] = rest;
            if u >= order || v >= order || w >= order || u > v {
                return Err(bad("record out of range"));
            }
            products.entry((u as u32, v as u32)).or_default().push((w as u32, c));
        }
        for e in products.values_mut() {
            e.sort_unstable();
        }
        Ok(StructureTable { group, products })
    }

    pub fn cache_path(dir: &Path, rs: &RootSystem) -> PathBuf {
        dir.join(format!("{}.rgorc", rs.spec()))
    }

    /// Loads from `dir` when a valid file exists, otherwise builds and saves.
    pub fn load_or_build(ring: &Ring, dir: Option<&Path>) -> Result<StructureTable, OracleError> {
        let Some(dir) = dir else {
            return Self::build(ring);
        };
        let path = Self::cache_path(dir, ring.group().root_system());
        if let Ok(mut f) = std::fs::File::open(&path) {
            if let Ok(t) = Self::read_from(ring.group().clone(), &mut f) {
                return Ok(t);
            }
        }
        let t = Self::build(ring)?;
        std::fs::create_dir_all(dir).map_err(OracleError::io)?;
        let tmp = path.with_extension("tmp");
        let mut f = io::BufWriter::new(std::fs::File::create(&tmp).map_err(OracleError::io)?);
        t.write_to(&mut f).map_err(OracleError::io)?;
        f.flush().map_err(OracleError::io)?;
        drop(f);
        std::fs::rename(&tmp, &path).map_err(OracleError::io)?;
        Ok(t)
    }

    /// Directory from [`CACHE_ENV`], if set.
    pub fn env_dir() -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn varints_round_trip() {
        let mut buf = Vec::new();
        for x in [0u64, 1, 127, 128, 300, u64::MAX] {
            write_varint(&mut buf, x).unwrap();
        }
        let mut at = 0;
        for x in [0u64, 1, 127, 128, 300, u64::MAX] {
            assert_eq!(read_varint(&buf, &mut at).unwrap(), Some(x));
        }
        assert_eq!(read_varint(&buf, &mut at).unwrap(), None);
        assert!(read_varint(&[0x80], &mut 0).is_err());
    }
}
