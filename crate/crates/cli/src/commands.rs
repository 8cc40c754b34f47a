use std::fs;
use std::path::{Path, PathBuf};

use ceva_core::classic::{check_ceva, Triangle2D};
use ceva_core::del_pezzo::{lift_h_to_s, on_h, on_s, HPoint, SPoint};
use ceva_core::format::{InstanceFile, Payload};
use ceva_core::rank_search::{
    construct_rank_instance, low_rank_complete, transversal_checks, RankSearchConfig, SearchStatus,
};
use ceva_core::simplex::{
    decide_concurrent, geometric_oracle, oracle_agreement, random_instance, InstanceKind,
};
use ceva_core::{Error, Instance, Rational};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::render;

pub const CONCURRENT: i32 = 0;
pub const NOT_CONCURRENT: i32 = 1;
pub const INPUT_ERROR: i32 = 2;
pub const DISAGREEMENT: i32 = 3;

/// What a command produced, before timing and the argument echo are added.
pub struct Outcome {
    pub code: i32,
    pub digest: Option<String>,
    pub result: Value,
    pub oracle: Option<Value>,
    /// One line for stderr.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(code: i32, result: Value) -> Self {
        Self {
            code,
            digest: None,
            result,
            oracle: None,
            diagnostic: None,
        }
    }

    fn fail(code: i32, name: &str, message: String) -> Self {
        Self {
            code,
            digest: None,
            result: json!({"error": name, "message": message}),
            oracle: None,
            diagnostic: Some(format!("{name}: {message}")),
        }
    }

    pub fn from_error(e: &Error) -> Self {
        let mut out = Self::fail(INPUT_ERROR, e.name(), e.to_string());
        if matches!(e, Error::OffTorus { .. }) {
            out.diagnostic = Some(format!(
                "{}: {e}; the criteria apply only when every face coordinate is nonzero",
                e.name()
            ));
        }
        out
    }

    fn with_digest(mut self, digest: Option<String>) -> Self {
        self.digest = digest;
        self
    }
}

pub struct Loaded {
    pub digest: String,
    pub file: InstanceFile,
}

pub fn load(path: &Path) -> Result<Loaded, Outcome> {
    let bytes = fs::read(path)
        .map_err(|e| Outcome::fail(INPUT_ERROR, "Io", format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| Outcome::fail(INPUT_ERROR, "Parse", "input is not UTF-8".into()))?;
    let file = InstanceFile::from_json(&text)
        .map_err(|e| Outcome::from_error(&e).with_digest(Some(digest.clone())))?;
    Ok(Loaded { digest, file })
}

fn wrong_payload(expected: &str, got: &Payload) -> Outcome {
    Outcome::fail(
        INPUT_ERROR,
        "Parse",
        format!("expected a {expected} payload, got {}", got.kind()),
    )
}

fn face_payload(loaded: Loaded) -> Result<(String, Instance), Outcome> {
    match loaded.file.payload {
        Payload::Face(inst) => Ok((loaded.digest, inst)),
        other => Err(wrong_payload("face", &other).with_digest(Some(loaded.digest))),
    }
}

pub fn check2d(path: &Path) -> Outcome {
    let loaded = match load(path) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let digest = Some(loaded.digest);
    let Payload::Planar { triangle, feet } = loaded.file.payload else {
        return wrong_payload("planar", &loaded.file.payload).with_digest(digest);
    };
    let [a, b, c] = triangle;
    let run = Triangle2D::new(a, b, c).and_then(|t| check_ceva(&t, &feet[0], &feet[1], &feet[2]));
    match run {
        Ok(rep) => {
            let code = if rep.concurrent {
                CONCURRENT
            } else {
                NOT_CONCURRENT
            };
            Outcome::ok(code, render::ceva(&rep)).with_digest(digest)
        }
        Err(e) => Outcome::from_error(&e).with_digest(digest),
    }
}

fn check_instance(inst: &Instance, oracle: bool) -> Outcome {
    let rep = match decide_concurrent(inst) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let mut out = Outcome::ok(
        if rep.verdict {
            CONCURRENT
        } else {
            NOT_CONCURRENT
        },
        render::concurrency(&rep),
    );
    if oracle {
        match geometric_oracle(inst) {
            Ok(outcome) => {
                let agrees = oracle_agreement(&rep, &outcome);
                out.oracle = Some(render::oracle(&outcome, agrees));
                if !agrees {
                    out.code = DISAGREEMENT;
                    out.diagnostic = Some("criterion and oracle disagree".into());
                }
            }
            Err(e) => return Outcome::from_error(&e),
        }
    }
    out
}

pub fn check(path: &Path, oracle: bool) -> Outcome {
    match load(path).and_then(face_payload) {
        Ok((digest, inst)) => check_instance(&inst, oracle).with_digest(Some(digest)),
        Err(o) => o,
    }
}

/// Checks every `*.json` file of a directory in parallel.
///
/// Exit code: 3 if any file disagrees with the oracle, else 2 if any file
/// failed to load or check, else 0.
pub fn check_batch(dir: &Path, oracle: bool) -> Outcome {
    let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => return Outcome::fail(INPUT_ERROR, "Io", format!("{}: {e}", dir.display())),
    };
    files.sort();
    let results: Vec<(PathBuf, Outcome)> = files
        .into_par_iter()
        .map(|p| {
            let out = check(&p, oracle);
            (p, out)
        })
        .collect();

    let count = |code| results.iter().filter(|(_, o)| o.code == code).count();
    let summary = json!({
        "files": results.len(),
        "concurrent": count(CONCURRENT),
        "not_concurrent": count(NOT_CONCURRENT),
        "errors": count(INPUT_ERROR),
        "disagreements": count(DISAGREEMENT),
    });
    let code = if count(DISAGREEMENT) > 0 {
        DISAGREEMENT
    } else if count(INPUT_ERROR) > 0 {
        INPUT_ERROR
    } else {
        CONCURRENT
    };
    let entries: Vec<Value> = results
        .iter()
        .map(|(p, o)| {
            json!({
                "file": p.file_name().map(|f| f.to_string_lossy().into_owned()),
                "input_sha256": o.digest,
                "exit_code": o.code,
                "result": o.result,
                "oracle": o.oracle,
            })
        })
        .collect();
    let mut out = Outcome::ok(code, json!({"summary": summary, "files": entries}));
    if code != CONCURRENT {
        out.diagnostic = Some(format!(
            "{} error(s), {} disagreement(s)",
            count(INPUT_ERROR),
            count(DISAGREEMENT)
        ));
    }
    out
}

pub enum RandomKind {
    Positive,
    Perturbed,
    Rank(usize),
}

pub fn random(n: usize, k: usize, seed: u64, kind: RandomKind, out: Option<&Path>) -> Outcome {
    let (label, inst) = match kind {
        RandomKind::Positive => (
            "concurrent",
            random_instance(n, k, seed, InstanceKind::Positive),
        ),
        RandomKind::Perturbed => (
            "not-concurrent",
            random_instance(n, k, seed, InstanceKind::Perturbed),
        ),
        RandomKind::Rank(r) => (
            "rank-completable",
            construct_rank_instance::<Rational>(n, k, r, seed).and_then(|m| m.to_instance()),
        ),
    };
    let inst = match inst {
        Ok(i) => i,
        Err(e) => return Outcome::from_error(&e),
    };
    let text = InstanceFile::face(inst).to_json();
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let mut result =
        json!({"label": label, "n": n, "k": k, "seed": seed, "instance_sha256": digest});
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return Outcome::fail(INPUT_ERROR, "Io", format!("{}: {e}", path.display()));
            }
            result["out"] = json!(path.display().to_string());
        }
        None => {
            result["instance"] = serde_json::from_str(&text).expect("instance JSON is valid");
        }
    }
    Outcome::ok(CONCURRENT, result)
}

pub fn dp6_check(path: &Path) -> Outcome {
    let loaded = match load(path) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let digest = Some(loaded.digest);
    let Payload::Surface { d, e, f, x } = loaded.file.payload else {
        return wrong_payload("surface", &loaded.file.payload).with_digest(digest);
    };
    let Some(x) = x else {
        return Outcome::fail(INPUT_ERROR, "Parse", "dp6 check needs the point x".into())
            .with_digest(digest);
    };
    let built = HPoint::new(d.clone(), e.clone(), f.clone())
        .and_then(|h| Ok((h, SPoint::new(x, d, e, f)?)));
    match built {
        Ok((h, s)) => {
            let (in_s, in_h) = (on_s(&s), on_h(&h));
            let code = if in_s && in_h {
                CONCURRENT
            } else {
                NOT_CONCURRENT
            };
            Outcome::ok(code, json!({"on_s": in_s, "on_h": in_h})).with_digest(digest)
        }
        Err(e) => Outcome::from_error(&e).with_digest(digest),
    }
}

pub fn dp6_lift(path: &Path) -> Outcome {
    let loaded = match load(path) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let digest = Some(loaded.digest);
    let Payload::Surface { d, e, f, .. } = loaded.file.payload else {
        return wrong_payload("surface", &loaded.file.payload).with_digest(digest);
    };
    let lifted = HPoint::new(d, e, f).and_then(|h| lift_h_to_s(&h));
    match lifted {
        Ok(s) => Outcome::ok(CONCURRENT, json!({"x": render::point(&s.x.normalize())}))
            .with_digest(digest),
        Err(err @ (Error::NotOnH | Error::NotInImage(_))) => {
            let mut out = Outcome::fail(NOT_CONCURRENT, err.name(), err.to_string());
            if let Error::NotInImage(name) = err {
                out.result["point"] = json!(name);
            }
            out.with_digest(digest)
        }
        Err(e) => Outcome::from_error(&e).with_digest(digest),
    }
}

pub fn rank_search(path: &Path, cfg: &RankSearchConfig) -> Outcome {
    let (digest, inst) = match load(path).and_then(face_payload) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let digest = Some(digest);
    let run = low_rank_complete::<_, f64>(&inst.build_matrix(), cfg).and_then(|res| {
        let checks = match &res.subspace {
            Some(basis) => transversal_checks(&inst, basis, cfg.tol)?,
            None => Vec::new(),
        };
        Ok((res, checks))
    });
    match run {
        Ok((res, checks)) => {
            let found = res.status == SearchStatus::Found;
            let mut out = Outcome::ok(
                if found { CONCURRENT } else { NOT_CONCURRENT },
                render::transversal(&res, &checks),
            );
            if !found {
                out.diagnostic = Some(
                    "no completion found within the budget (not a proof of infeasibility)".into(),
                );
            }
            out.with_digest(digest)
        }
        Err(e) => Outcome::from_error(&e).with_digest(digest),
    }
}
