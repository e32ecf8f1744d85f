//! One Coxeter group with a fixed realization, its KL table, polynomial ring,
//! and an optional on-disk cache.

use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use crate::cells::Cells;
use crate::coxeter::{CoxeterMatrix, FiniteGroup, Realization, RealizationKind, DEFAULT_ELEMENT_BOUND};
use crate::error::{Error, Result};
use crate::hecke::{CacheLoad, KlTable};
use crate::polyring::PolyRing;

#[derive(Debug)]
pub struct Session {
    group: Arc<FiniteGroup>,
    realization: Arc<Realization>,
    kl: Arc<KlTable>,
    ring: PolyRing,
    bound: usize,
    cells: OnceLock<Arc<Cells>>,
}

impl Session {
    /// `kind = None` picks crystallographic when possible, else standard.
    pub fn new(cm: CoxeterMatrix, kind: Option<RealizationKind>, bound: usize) -> Result<Self> {
        let real = match kind {
            None => Realization::default_for(&cm)?,
            Some(RealizationKind::Standard) => Realization::standard(&cm)?,
            Some(RealizationKind::Crystallographic) => Realization::crystallographic(&cm)?,
            Some(RealizationKind::Custom) => {
                return Err(Error::Precondition("custom realizations need explicit Cartan entries".into()))
            }
        };
        Session::with_realization(cm, real, bound)
    }

    pub fn with_realization(cm: CoxeterMatrix, real: Realization, bound: usize) -> Result<Self> {
        real.validate(&cm)?;
        let group = Arc::new(FiniteGroup::from_matrix(cm, bound)?);
        let realization = Arc::new(real);
        Ok(Session {
            kl: Arc::new(KlTable::new(group.clone())),
            ring: PolyRing::new(realization.clone()),
            group,
            realization,
            bound,
            cells: OnceLock::new(),
        })
    }

    pub fn preset(name: &str) -> Result<Self> {
        Session::new(CoxeterMatrix::preset(name)?, None, DEFAULT_ELEMENT_BOUND)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn realization(&self) -> &Arc<Realization> {
        &self.realization
    }

    pub fn kl(&self) -> &Arc<KlTable> {
        &self.kl
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn cells(&self) -> Result<Arc<Cells>> {
        if let Some(c) = self.cells.get() {
            return Ok(c.clone());
        }
        let c = Arc::new(Cells::compute(self.kl.clone(), self.bound)?);
        Ok(self.cells.get_or_init(|| c).clone())
    }

    /// Hash of the Coxeter matrix and realization, namespacing cache files.
    pub fn fingerprint(&self) -> String {
        self.group.fingerprint(&self.realization.fingerprint())
    }

    pub fn cache_file(&self, dir: &Path) -> PathBuf {
        dir.join(format!("{}.kl", self.fingerprint()))
    }

    pub fn load_cache(&self, dir: &Path) -> Result<CacheLoad> {
        self.kl.load_cache(&self.cache_file(dir), &self.fingerprint())
    }

    pub fn save_cache(&self, dir: &Path) -> Result<usize> {
        self.kl.save_cache(&self.cache_file(dir), &self.fingerprint())
    }
}
