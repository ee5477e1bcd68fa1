//! Enumeration of admissible cases over parameter ranges, run in parallel.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::partlib::{build_kappa, partitions_of};

use super::{verify, Cache, CaseParams, ClusterError, IdentityCase, IdentityId, IdentityReport};

/// Parameter ranges for one identity. Absent lists fall back to defaults
/// chosen per identity; `max_n` bounds the number of variables.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ScanEntry {
    pub id: IdentityId,
    #[serde(default)]
    pub k: Option<Vec<usize>>,
    #[serde(default)]
    pub r: Option<Vec<usize>>,
    #[serde(default)]
    pub s: Option<Vec<usize>>,
    #[serde(default)]
    pub m: Option<Vec<usize>>,
    #[serde(default)]
    pub b: Option<Vec<usize>>,
    #[serde(default)]
    pub n: Option<Vec<usize>>,
    #[serde(default)]
    pub l: Option<Vec<usize>>,
    #[serde(default)]
    pub g: Option<Vec<usize>>,
    /// Every partition with at most this modulus (and at most N parts).
    #[serde(default)]
    pub kappa_max: Option<usize>,
    #[serde(default)]
    pub max_n: Option<usize>,
    #[serde(default)]
    pub perturb: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ScanConfig {
    pub entries: Vec<ScanEntry>,
    /// Upper bound on the number of cases run.
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub cache_dir: Option<String>,
    /// Stop at the first fails/conjecture-violated verdict.
    #[serde(default)]
    pub halt_on_violation: bool,
}

impl ScanEntry {
    pub fn new(id: IdentityId) -> ScanEntry {
        ScanEntry { id, ..ScanEntry::default() }
    }
}

/// Desk-scale bound on N: 8 for Jack-family identities, 5 for (q, t) ones
/// unless the entry says otherwise.
fn default_max_n(id: IdentityId) -> usize {
    use IdentityId::*;
    match id {
        PROP4 | NONSYM22_1 | CONJ23_8 | RECT_QT | QT_RR => 5,
        _ => 8,
    }
}

fn list(v: &Option<Vec<usize>>, default: &[usize]) -> Vec<usize> {
    v.clone().unwrap_or_else(|| default.to_vec())
}

fn kappas(e: &ScanEntry, n: usize) -> Vec<Option<Vec<usize>>> {
    match e.kappa_max {
        None => vec![None],
        Some(max) => (0..=max).flat_map(|m| partitions_of(m, n)).map(|p| Some(p.parts().to_vec())).collect(),
    }
}

/// Admissible cases for one entry, in a fixed order.
fn entry_cases(e: &ScanEntry) -> Vec<IdentityCase> {
    use IdentityId::*;
    let max_n = e.max_n.unwrap_or_else(|| default_max_n(e.id));
    let mut out = Vec::new();
    let mut push = |p: CaseParams| out.push(IdentityCase { id: e.id, params: p, perturb: e.perturb });
    match e.id {
        PROP1 | EQ14_2 | EQ12_1 | PROP4 => {
            for r in list(&e.r, &[2]) {
                if r == 0 || r % 2 == 1 {
                    continue;
                }
                for n in list(&e.n, &[2, 3]).into_iter().filter(|&n| n <= max_n) {
                    let ks = if e.id == EQ14_2 { vec![None] } else { kappas(e, n) };
                    for kappa in ks {
                        push(CaseParams { r: Some(r), n: Some(n), kappa, ..CaseParams::default() });
                    }
                }
            }
        }
        PROP2 | EQ14_1 | NONSYM22_1 => {
            for l in list(&e.l, &[1]) {
                if l % 2 == 0 {
                    continue;
                }
                for n in list(&e.n, &[2, 3]).into_iter().filter(|&n| n <= max_n) {
                    let ks = if e.id == EQ14_1 { vec![None] } else { kappas(e, n) };
                    for kappa in ks {
                        push(CaseParams { l: Some(l), n: Some(n), kappa, ..CaseParams::default() });
                    }
                }
            }
        }
        PROP3_H | PROP3_L => {
            for n in list(&e.n, &[3]).into_iter().filter(|&n| n <= max_n) {
                for l in list(&e.l, &[]).into_iter().filter(|l| l % 2 == 1) {
                    for kappa in kappas(e, n) {
                        push(CaseParams { l: Some(l), n: Some(n), kappa, ..CaseParams::default() });
                    }
                }
                for r in list(&e.r, &[]).into_iter().filter(|&r| r > 0 && r % 2 == 0) {
                    for kappa in kappas(e, n) {
                        push(CaseParams { r: Some(r), n: Some(n), kappa, ..CaseParams::default() });
                    }
                }
            }
        }
        CLUSTER25_1 | NONSYM26_1 | HW_LP | LW_LM | B3B5 | CONJ23_8 if e.g.is_none() => {
            for k in list(&e.k, &[1, 2]) {
                for r in list(&e.r, &[2, 3]) {
                    for s in list(&e.s, &[1, 2]) {
                        let ms: Vec<usize> = match &e.m {
                            Some(v) => v.clone(),
                            None => (1..=k).collect(),
                        };
                        for m in ms {
                            if e.id == LW_LM && (s != 1 || m != k) {
                                continue;
                            }
                            let bs: Vec<usize> = match &e.b {
                                Some(v) => v.clone(),
                                None => (0..=max_n).collect(),
                            };
                            for b in bs {
                                let Ok(kd) = build_kappa(k, r, s, m, b) else { continue };
                                if kd.n > max_n || e.n.as_ref().is_some_and(|ns| !ns.contains(&kd.n)) {
                                    continue;
                                }
                                push(CaseParams {
                                    k: Some(k),
                                    r: Some(r),
                                    s: Some(s),
                                    m: Some(m),
                                    b: Some(b),
                                    n: Some(kd.n),
                                    ..CaseParams::default()
                                });
                            }
                        }
                    }
                }
            }
        }
        RECT26 | RECT_QT | HW_LP | B3B5 => {
            for r in list(&e.r, &[2, 3]) {
                for g in list(&e.g, &[1, 2]) {
                    for n in list(&e.n, &(2..=max_n).collect::<Vec<_>>()).into_iter().filter(|&n| n <= max_n) {
                        if r < 2 || g == 0 || n < 2 * g || num_integer::gcd(n + 1 - g, r - 1) != 1 {
                            continue;
                        }
                        push(CaseParams { r: Some(r), g: Some(g), n: Some(n), ..CaseParams::default() });
                    }
                }
            }
        }
        CLUSTER25_1 | NONSYM26_1 | LW_LM | CONJ23_8 => {}
        RR_J3A | QT_RR => {
            for k in list(&e.k, &[1, 2]) {
                for n in list(&e.n, &[2, 3]) {
                    if k == 0 || n < 2 || k * n > max_n {
                        continue;
                    }
                    push(CaseParams { k: Some(k), n: Some(n), ..CaseParams::default() });
                }
            }
        }
        PFAFF => {
            for r in list(&e.r, &[2]) {
                for n in list(&e.n, &[4, 6]).into_iter().filter(|&n| n <= max_n) {
                    if n < 4 || n % 2 == 1 || r < 2 || r % 2 == 1 || num_integer::gcd(3, r - 1) != 1 {
                        continue;
                    }
                    push(CaseParams { r: Some(r), n: Some(n), ..CaseParams::default() });
                }
            }
        }
    }
    out
}

/// All admissible cases of the configuration, deduplicated, in order.
pub fn enumerate(config: &ScanConfig) -> Vec<IdentityCase> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for e in &config.entries {
        for c in entry_cases(e) {
            if seen.insert(c.key()) {
                out.push(c);
            }
        }
    }
    if let Some(b) = config.budget {
        out.truncate(b);
    }
    out
}

/// Runs every admissible case, reusing cached reports when a cache is given.
/// Reports come back in enumeration order.
pub fn scan(config: &ScanConfig, cache: Option<&Cache>) -> Result<Vec<IdentityReport>, ClusterError> {
    let cases = enumerate(config);
    let run = |c: &IdentityCase| -> Result<IdentityReport, ClusterError> {
        if let Some(hit) = cache.and_then(|ch| ch.get_report(c)) {
            return Ok(hit);
        }
        let rep = verify(c);
        if let Some(ch) = cache {
            ch.put_report(&rep)?;
        }
        Ok(rep)
    };
    if config.halt_on_violation {
        let mut out = Vec::new();
        for c in &cases {
            let rep = run(c)?;
            let stop = rep.verdict.is_failure();
            out.push(rep);
            if stop {
                break;
            }
        }
        return Ok(out);
    }
    cases.par_iter().map(run).collect()
}
