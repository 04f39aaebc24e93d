use std::sync::Mutex;

/// An append-only memo table indexed by `0..`, grown on demand.
///
/// The lock is held while the table is extended, so concurrent callers either
/// see a complete prefix or wait for it. Entries are never evicted.
pub(crate) struct Table<T> {
    entries: Mutex<Vec<T>>,
}

impl<T: Clone> Table<T> {
    pub(crate) const fn new() -> Self {
        Self {
            entries: Mutex::new(Vec::new()),
        }
    }

    /// Returns entry `n`, first extending the table with `next(prefix)` where
    /// `prefix` holds entries `0..i` when computing entry `i`.
    pub(crate) fn get(&self, n: usize, mut next: impl FnMut(&[T]) -> T) -> T {
        let mut entries = self.entries.lock().unwrap_or_else(|e| e.into_inner());
        while entries.len() <= n {
            let value = next(&entries);
            entries.push(value);
        }
        entries[n].clone()
    }
}
