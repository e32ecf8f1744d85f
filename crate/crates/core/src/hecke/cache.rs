//! Plain-text persistence for KL rows. One record per line:
//! `group-hash \t w \t y \t [[exp,coeff],...] \t checksum`, where the
//! checksum covers the first four fields. Any bad line invalidates the file.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::kl::KlTable;
use crate::coxeter::{ElemId, Word};
use crate::error::Result;
use crate::exactnum::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheLoad {
    Missing,
    Loaded(usize),
    Corrupt(String),
}

fn checksum(body: &str) -> String {
    Sha256::digest(body.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

impl KlTable {
    /// Write every cached row to `path` (atomically via a temp file).
    pub fn save_cache(&self, path: &Path, group_hash: &str) -> Result<usize> {
        let g = self.group();
        let mut text = String::new();
        let rows = self.snapshot();
        for row in &rows {
            for (y, p) in &row.polys {
                let body = format!(
                    "{group_hash}\t{}\t{}\t{}",
                    g.word(row.w),
                    g.word(*y),
                    serde_json::to_string(p).expect("poly serializes")
                );
                text.push_str(&format!("{body}\t{}\n", checksum(&body)));
            }
        }
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(rows.len())
    }

    /// Load rows from `path`. Nothing is inserted unless the whole file checks out.
    pub fn load_cache(&self, path: &Path, group_hash: &str) -> Result<CacheLoad> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(CacheLoad::Missing),
            Err(e) => return Ok(CacheLoad::Corrupt(e.to_string())),
        };
        match self.parse_cache(&text, group_hash) {
            Ok(rows) => {
                let n = rows.len();
                for (w, polys) in rows {
                    self.insert_row(w, polys);
                }
                Ok(CacheLoad::Loaded(n))
            }
            Err(why) => Ok(CacheLoad::Corrupt(why)),
        }
    }

    fn parse_cache(&self, text: &str, group_hash: &str) -> std::result::Result<BTreeMap<ElemId, BTreeMap<ElemId, LaurentPoly>>, String> {
        let g = self.group();
        let mut rows: BTreeMap<ElemId, BTreeMap<ElemId, LaurentPoly>> = BTreeMap::new();
        for (k, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split('\t').collect();
            let [hash, w, y, poly, sum] = fields.as_slice() else {
                return Err(format!("line {}: wrong field count", k + 1));
            };
            let body = format!("{hash}\t{w}\t{y}\t{poly}");
            if checksum(&body) != *sum {
                return Err(format!("line {}: checksum mismatch", k + 1));
            }
            if *hash != group_hash {
                return Err(format!("line {}: cache belongs to another group", k + 1));
            }
            let parse_elem = |s: &str| -> std::result::Result<ElemId, String> {
                let word = Word::parse(s).map_err(|e| e.to_string())?;
                let id = g.id_from_word(word.letters()).map_err(|e| e.to_string())?;
                if g.word(id) != &word {
                    return Err(format!("line {}: {s} is not a normal form", k + 1));
                }
                Ok(id)
            };
            let (w, y) = (parse_elem(w)?, parse_elem(y)?);
            let p: LaurentPoly = serde_json::from_str(poly).map_err(|e| format!("line {}: {e}", k + 1))?;
            rows.entry(w).or_default().insert(y, p);
        }
        for (w, polys) in &rows {
            if polys.get(w) != Some(&LaurentPoly::one()) {
                return Err(format!("row {} lacks its leading term", g.word(*w)));
            }
        }
        Ok(rows)
    }
}
