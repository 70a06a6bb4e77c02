//! Order-preserving parallel map with a worker cap from `RMB_THREADS`.
//!
//! Results are identical to the sequential run regardless of the thread
//! count; the cap only bounds wall-clock parallelism.

/// Worker cap: `RMB_THREADS` when set (minimum 1), otherwise the available
/// parallelism.
pub fn thread_cap() -> usize {
    if let Ok(raw) = std::env::var("RMB_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Apply `f` to every index in `0..len`, in parallel, preserving order.
pub fn map_ordered<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync,
{
    let workers = thread_cap().min(len.max(1));
    if workers <= 1 || len <= 1 {
        return (0..len).map(f).collect();
    }
    let chunk = len.div_ceil(workers);
    let mut slots: Vec<Option<U>> = (0..len).map(|_| None).collect();
    std::thread::scope(|scope| {
        for (w, slot_chunk) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                let base = w * chunk;
                for (off, slot) in slot_chunk.iter_mut().enumerate() {
                    *slot = Some(f(base + off));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("filled")).collect()
}
