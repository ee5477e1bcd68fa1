//! On-disk cache for polynomials and reports.
//!
//! Each entry is one file: a header naming the key, the body length and an
//! FNV-1a checksum, then the body. Writes go to a temporary file in the same
//! directory and are renamed into place. An entry whose header, length or
//! checksum does not match is deleted and treated as a miss.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::mpoly::MPoly;

use super::{ClusterError, IdentityCase, IdentityReport};

const MAGIC: &str = "jackpoly-cache v1";

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
    counter: AtomicU64,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Cache, ClusterError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir, locks: Mutex::new(HashMap::new()), counter: AtomicU64::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, kind: &str, key: &str) -> PathBuf {
        self.dir.join(format!("{:016x}.{kind}", fnv1a(key.as_bytes())))
    }

    fn lock(&self, key: &str) -> Arc<Mutex<()>> {
        self.locks.lock().unwrap().entry(key.to_string()).or_default().clone()
    }

    fn write_entry(&self, kind: &str, key: &str, body: &str) -> Result<(), ClusterError> {
        let lock = self.lock(key);
        let _guard = lock.lock().unwrap();
        let path = self.path_for(kind, key);
        let tmp = self.dir.join(format!(
            ".{}.tmp.{}.{}",
            path.file_name().unwrap().to_string_lossy(),
            std::process::id(),
            self.counter.fetch_add(1, Ordering::Relaxed)
        ));
        let header = format!("{MAGIC}\nkey {key}\nlen {} fnv {:016x}\n", body.len(), fnv1a(body.as_bytes()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(header.as_bytes())?;
            f.write_all(body.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Body of a valid entry; invalid entries are removed.
    fn read_entry(&self, kind: &str, key: &str) -> Option<String> {
        let path = self.path_for(kind, key);
        let raw = fs::read_to_string(&path).ok()?;
        match parse_entry(&raw, key) {
            Some(body) => Some(body.to_string()),
            None => {
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn put_poly(&self, key: &str, p: &MPoly) -> Result<(), ClusterError> {
        self.write_entry("poly", key, &p.to_text())
    }

    pub fn get_poly(&self, key: &str) -> Option<MPoly> {
        let body = self.read_entry("poly", key)?;
        match MPoly::from_text(&body) {
            Ok(p) => Some(p),
            Err(_) => {
                let _ = fs::remove_file(self.path_for("poly", key));
                None
            }
        }
    }

    /// Cached value, or `compute` stored and returned.
    pub fn poly_or_insert<E>(&self, key: &str, compute: impl FnOnce() -> Result<MPoly, E>) -> Result<MPoly, E>
    where
        E: From<ClusterError>,
    {
        if let Some(p) = self.get_poly(key) {
            return Ok(p);
        }
        let p = compute()?;
        self.put_poly(key, &p)?;
        Ok(p)
    }

    pub fn put_report(&self, report: &IdentityReport) -> Result<(), ClusterError> {
        self.write_entry("report", &report.case.key(), &serde_json::to_string(report)?)
    }

    pub fn get_report(&self, case: &IdentityCase) -> Option<IdentityReport> {
        let key = case.key();
        let body = self.read_entry("report", &key)?;
        match serde_json::from_str::<IdentityReport>(&body) {
            Ok(r) if r.case == *case => Some(r),
            _ => {
                let _ = fs::remove_file(self.path_for("report", &key));
                None
            }
        }
    }

    /// All valid cached reports, in case-key order.
    pub fn reports(&self) -> Result<Vec<IdentityReport>, ClusterError> {
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "report") {
                let Ok(raw) = fs::read_to_string(&path) else { continue };
                let Some(key) = raw.lines().nth(1).and_then(|l| l.strip_prefix("key ")) else {
                    let _ = fs::remove_file(&path);
                    continue;
                };
                let body = parse_entry(&raw, key).and_then(|b| serde_json::from_str::<IdentityReport>(b).ok());
                match body {
                    Some(r) => out.push(r),
                    None => {
                        let _ = fs::remove_file(&path);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.case.key().cmp(&b.case.key()));
        Ok(out)
    }
}

fn parse_entry<'a>(raw: &'a str, key: &str) -> Option<&'a str> {
    let mut rest = raw.strip_prefix(MAGIC)?.strip_prefix('\n')?;
    let (key_line, r) = rest.split_once('\n')?;
    if key_line.strip_prefix("key ")? != key {
        return None;
    }
    rest = r;
    let (len_line, body) = rest.split_once('\n')?;
    let mut it = len_line.split_whitespace();
    if it.next()? != "len" {
        return None;
    }
    let len: usize = it.next()?.parse().ok()?;
    if it.next()? != "fnv" {
        return None;
    }
    let sum = u64::from_str_radix(it.next()?, 16).ok()?;
    (body.len() == len && fnv1a(body.as_bytes()) == sum).then_some(body)
}
