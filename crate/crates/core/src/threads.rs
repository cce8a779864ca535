//! Worker pool sizing.

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "NCG_FORGE_THREADS";

/// Size the global pool from `NCG_FORGE_THREADS` if set. Later calls are no-ops.
pub fn init_pool() -> crate::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| crate::Error::input(THREADS_ENV, format!("expected a positive integer, got {raw:?}")))?;
    // the pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
