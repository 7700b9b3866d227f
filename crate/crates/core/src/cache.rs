//! On-disk census cache.
//!
//! `graphs_n{n}.g6` holds one canonical key per line, sorted.
//! `classes_n{n}_k{k}.tsv` holds `digestHex<TAB>key` lines sorted by digest
//! then key. Files are written to a temporary name and renamed into place.
//! A file that fails validation is ignored and rebuilt.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::canon::CanonicalKey;
use crate::census::{augment, confirm_group, deck_classes, shared_family, ClassReport, GraphFamily};
use crate::deck::{compute_deck, Digest};
use crate::error::{Error, Result};

pub struct CensusCache {
    dir: PathBuf,
}

impl CensusCache {
    pub fn new(dir: impl Into<PathBuf>) -> CensusCache {
        CensusCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn graphs_path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("graphs_n{n}.g6"))
    }

    pub fn classes_path(&self, n: usize, k: usize) -> PathBuf {
        self.dir.join(format!("classes_n{n}_k{k}.tsv"))
    }

    /// The order-`n` family, loaded from disk when a valid file exists.
    pub fn family(&self, n: usize) -> Result<GraphFamily> {
        let path = self.graphs_path(n);
        if let Some(family) = self.load_family(&path, n) {
            return Ok(family);
        }
        // Build on top of a cached smaller family when there is one.
        let family = if n > 1 && self.graphs_path(n - 1).exists() {
            augment(&self.family(n - 1)?)
        } else {
            (*shared_family(n)?).clone()
        };
        let mut text = String::new();
        for key in family.members() {
            text.push_str(key.as_str());
            text.push('\n');
        }
        write_atomic(&path, &text)?;
        Ok(family)
    }

    fn load_family(&self, path: &Path, n: usize) -> Option<GraphFamily> {
        let text = fs::read_to_string(path).ok()?;
        let keys = text
            .lines()
            .map(CanonicalKey::parse)
            .collect::<Result<Vec<_>>>()
            .ok()?;
        GraphFamily::new(n, keys).ok()
    }

    /// Deck classes of `family` at card size `k`, via the cache.
    pub fn classes(&self, family: &GraphFamily, k: usize) -> Result<ClassReport> {
        let path = self.classes_path(family.order(), k);
        if let Some(report) = self.load_classes(&path, family, k)? {
            return Ok(report);
        }
        let report = deck_classes(family, k)?;
        let mut lines: Vec<(Digest, &CanonicalKey)> = report
            .classes
            .iter()
            .flat_map(|c| c.members.iter().map(move |m| (c.digest, m)))
            .collect();
        lines.sort();
        let mut text = String::new();
        for (digest, key) in lines {
            text.push_str(&format!("{digest}\t{key}\n"));
        }
        write_atomic(&path, &text)?;
        Ok(report)
    }

    /// Multi-member digest groups are re-confirmed by full deck comparison,
    /// so a stale or colliding file cannot merge distinct classes.
    fn load_classes(&self, path: &Path, family: &GraphFamily, k: usize) -> Result<Option<ClassReport>> {
        let Ok(text) = fs::read_to_string(path) else {
            return Ok(None);
        };
        let mut groups: BTreeMap<Digest, Vec<CanonicalKey>> = BTreeMap::new();
        let mut seen = Vec::with_capacity(family.len());
        for line in text.lines() {
            let Some((hex, key)) = line.split_once('\t') else {
                return Ok(None);
            };
            let (Some(digest), Ok(key)) = (Digest::from_hex(hex), CanonicalKey::parse(key)) else {
                return Ok(None);
            };
            seen.push(key.clone());
            groups.entry(digest).or_default().push(key);
        }
        seen.sort();
        if seen != family.members() {
            return Ok(None);
        }
        let mut classes = Vec::new();
        for (digest, mut keys) in groups {
            keys.sort();
            let refs: Vec<&CanonicalKey> = keys.iter().collect();
            let confirmed = confirm_group(digest, &refs, k)?;
            if confirmed.len() != 1 {
                return Ok(None);
            }
            if keys.len() > 1 && compute_deck(&keys[0].graph(), k)?.digest() != digest {
                return Ok(None);
            }
            classes.extend(confirmed);
        }
        Ok(Some(ClassReport {
            n: family.order(),
            k,
            classes,
            invariant_checked: None,
            violations: Vec::new(),
        }))
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path
        .parent()
        .ok_or_else(|| Error::Cache(format!("{} has no parent directory", path.display())))?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("cache"),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
