//! Deep pasting expressions produce deep evaluator recursion with large
//! frames in unoptimized builds; checkers run on a thread with a generous
//! stack so callers never need to care.

pub(crate) fn with_big_stack<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .name("dk-checker".into())
            .stack_size(256 << 20)
            .spawn_scoped(scope, f)
            .expect("spawn checker thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}
