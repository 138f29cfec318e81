//! IO companion for the J·K product engine: zeros-file ingestion,
//! coefficient-table caching, CSV/JSON emission, configuration merging, and
//! a bounded-thread map for the embarrassingly parallel drivers.

pub mod cache;
pub mod config;
pub mod emit;
pub mod zeros_file;

/// Maps `f` over `items` on up to `threads` OS threads, preserving input
/// order in the output (contiguous chunks, concatenated in order), so the
/// result is identical for every thread count.
pub fn par_map_ordered<T, U, F>(threads: usize, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().map(|t| f(t)).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let mut out: Vec<Vec<U>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for piece in items.chunks(chunk) {
            let f = &f;
            handles.push(scope.spawn(move || piece.iter().map(f).collect::<Vec<U>>()));
        }
        for h in handles {
            out.push(h.join().expect("worker thread panicked"));
        }
    });
    out.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_matches_sequential_for_any_thread_count() {
        let items: Vec<u64> = (0..257).collect();
        let seq = par_map_ordered(1, items.clone(), |x| x * x + 1);
        for threads in [2, 3, 8, 300] {
            let par = par_map_ordered(threads, items.clone(), |x| x * x + 1);
            assert_eq!(seq, par);
        }
    }
}
