//! Data-parallel map with a sequential fallback.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

impl Exec {
    /// Run `f` with every `par_map` reached from this thread honouring `self`.
    pub fn install<R>(self, f: impl FnOnce() -> R) -> R {
        let prev = FORCE_SEQUENTIAL.with(|c| c.replace(self == Exec::Sequential));
        let out = f();
        FORCE_SEQUENTIAL.with(|c| c.set(prev));
        out
    }

    pub fn current() -> Exec {
        if cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(Cell::get) {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    match Exec::current() {
        Exec::Parallel => items.par_iter().map(f).collect(),
        Exec::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}
