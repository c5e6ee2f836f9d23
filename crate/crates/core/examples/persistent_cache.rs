//! Stores intermediate numbers in a JSON-lines cache and reads them back in a
//! second session.
//!
//!     cargo run --example persistent_cache -- /tmp/nodal-cache.jsonl

use std::path::{Path, PathBuf};
use std::sync::Arc;

use nodalcount::cache::{ExactCache, ValueStore};
use nodalcount::format_rational;
use nodalcount::nodal::Calculator;
use nodalcount::problem::ProblemSpec;

fn session(path: &Path, spec: &ProblemSpec) -> nodalcount::Result<()> {
    let cache = Arc::new(ExactCache::open(path)?);
    let store: Arc<dyn ValueStore> = cache.clone();
    let calc = Calculator::with_store(spec.n, store);
    let value = calc.cr1(spec)?.eta;
    let stats = cache.stats();
    println!(
        "CR1 = {}  ({} entries, {} hits, {} misses)",
        format_rational(&value),
        cache.len(),
        stats.hits,
        stats.misses
    );
    Ok(())
}

fn main() -> nodalcount::Result<()> {
    let given = std::env::args_os().nth(1).map(PathBuf::from);
    let path = given.clone().unwrap_or_else(tempdir_path);
    let spec = ProblemSpec::new(4, 3, vec![3, 3, 3, 3, 3, 2, 2, 2, 2])?;
    spec.require_nodal()?;
    println!("cache file {}", path.display());
    session(&path, &spec)?;
    session(&path, &spec)?;
    if given.is_none() {
        std::fs::remove_file(&path)?;
    }
    Ok(())
}

fn tempdir_path() -> PathBuf {
    std::env::temp_dir().join(format!("nodalcount-example-{}.jsonl", std::process::id()))
}
