//! The shipped example corpus and the parallel instance runner.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::run::{run_instance, Outcome, EXIT_OK, EXIT_USAGE};
use crate::session::{Built, InstanceDecl, ModuleBody, ModuleDecl, Session};

pub struct CorpusFile {
    pub id: &'static str,
    pub text: &'static str,
}

pub const FILES: &[CorpusFile] = &[
    CorpusFile {
        id: "R1",
        text: include_str!("../corpus/r1_socle.dl"),
    },
    CorpusFile {
        id: "R2",
        text: include_str!("../corpus/r2_hypersurface.dl"),
    },
    CorpusFile {
        id: "R3",
        text: include_str!("../corpus/r3_veronese.dl"),
    },
    CorpusFile {
        id: "R4",
        text: include_str!("../corpus/r4_t345.dl"),
    },
];

pub fn session(id: &str) -> Option<Session> {
    FILES
        .iter()
        .find(|f| f.id.eq_ignore_ascii_case(id))
        .map(|f| Session::parse(f.text).expect("shipped corpus parses"))
}

pub fn built(id: &str) -> Option<Built> {
    session(id).map(|s| s.build().expect("shipped corpus builds"))
}

/// Worker count: available parallelism capped by `DEPTHLAB_THREADS`.
pub fn thread_count() -> usize {
    let avail = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("DEPTHLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => avail.min(cap),
        _ => avail,
    }
}

/// Random cyclic modules over the standard-graded corpus rings, checked for
/// Tor symmetry and the two depth computations.
fn randomized(session: &Session, seed: u64, count: usize) -> Session {
    let mut s = session.clone();
    if s.weights.iter().any(|&w| w != 1) {
        return s;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = s.modulus;
    let form = |rng: &mut ChaCha8Rng| {
        s.vars
            .iter()
            .map(|v| format!("{}*{v}", rng.gen_range(0..p)))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let mut modules = Vec::new();
    let mut instances = Vec::new();
    for i in 0..count {
        let mut elems = vec![form(&mut rng)];
        if rng.gen_bool(0.5) {
            elems.push(form(&mut rng));
        }
        let name = format!("rand{i}");
        modules.push(ModuleDecl {
            name: name.clone(),
            body: ModuleBody::Cyclic(elems),
        });
        instances.push(InstanceDecl {
            name: format!("random-{seed}-ab-{i}"),
            kind: "auslander-buchsbaum".into(),
            args: vec![name.clone()],
            options: Default::default(),
        });
        if i > 0 {
            instances.push(InstanceDecl {
                name: format!("random-{seed}-tor-{i}"),
                kind: "tor-symmetry".into(),
                args: vec![format!("rand{}", i - 1), name],
                options: [("bound".to_string(), "3".to_string())].into_iter().collect(),
            });
        }
    }
    s.modules.extend(modules);
    s.instances = instances;
    s
}

/// Run every corpus instance whose name matches `pattern` (all when `None`).
pub fn run_corpus(pattern: Option<&str>, seed: Option<u64>) -> Outcome {
    let pattern = match pattern.map(glob::Pattern::new).transpose() {
        Ok(p) => p,
        Err(e) => return Outcome::error(EXIT_USAGE, format!("bad pattern: {e}")),
    };
    let mut sessions: Vec<(String, Session)> = FILES
        .iter()
        .map(|f| (f.id.to_string(), Session::parse(f.text).expect("shipped corpus parses")))
        .collect();
    if let Some(seed) = seed {
        let extra: Vec<_> = sessions
            .iter()
            .filter(|(_, s)| s.weights.iter().all(|&w| w == 1))
            .map(|(id, s)| (format!("{id}-random"), randomized(s, seed, 6)))
            .collect();
        sessions.extend(extra);
    }
    let built: Vec<(String, Built)> = sessions
        .into_iter()
        .map(|(id, s)| (id, s.build().expect("corpus sessions build")))
        .collect();
    let mut jobs = Vec::new();
    for (bi, (_, b)) in built.iter().enumerate() {
        for (ii, inst) in b.session.instances.iter().enumerate() {
            if pattern.as_ref().is_none_or(|p| p.matches(&inst.name)) {
                jobs.push((bi, ii));
            }
        }
    }
    if jobs.is_empty() {
        return Outcome::error(EXIT_USAGE, "no instances");
    }
    let results: Mutex<Vec<Option<Outcome>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..thread_count().min(jobs.len()) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(bi, ii)) = jobs.get(k) else { break };
                let b = &built[bi].1;
                let out = run_instance(b, &b.session.instances[ii]);
                results.lock().expect("no poisoned workers")[k] = Some(out);
            });
        }
    });
    let results: Vec<Outcome> = results
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .flatten()
        .collect();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for ((bi, _), out) in jobs.iter().zip(&results) {
        let status = if out.code == EXIT_OK { "pass" } else { "FAIL" };
        if out.code != EXIT_OK {
            failures += 1;
        }
        text.push_str(&format!(
            "{:<10} {status:<5} exit={} {}\n",
            built[*bi].0, out.code, out.text
        ));
        let mut j = out.json.clone();
        if let Value::Object(map) = &mut j {
            map.insert("ring".into(), json!(built[*bi].0));
        }
        rows.push(j);
    }
    text.push_str(&format!("{} instances, {failures} failing", results.len()));
    let code = results.iter().map(|o| o.code).max().unwrap_or(EXIT_OK);
    Outcome::new(code, text, json!({ "instances": rows, "failures": failures }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_files_round_trip() {
        for f in FILES {
            let s = Session::parse(f.text).unwrap();
            assert_eq!(Session::parse(&s.to_text()).unwrap(), s, "{}", f.id);
            s.build().unwrap();
        }
    }

    #[test]
    fn empty_match_is_a_usage_error() {
        let out = run_corpus(Some("no-such-*"), None);
        assert_eq!(out.code, EXIT_USAGE);
    }
}
