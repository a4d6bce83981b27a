use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// Process-wide memo table. The value is computed outside the lock, so two
/// threads may race to fill a key; both compute the same deterministic value.
pub(crate) struct Memo<K, V> {
    map: OnceLock<Mutex<HashMap<K, Arc<V>>>>,
}

impl<K: Hash + Eq + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo { map: OnceLock::new() }
    }

    pub(crate) fn get_or(&self, key: K, f: impl FnOnce() -> V) -> Arc<V> {
        let map = self.map.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = map.lock().expect("memo lock").get(&key) {
            return Arc::clone(v);
        }
        let v = Arc::new(f());
        Arc::clone(map.lock().expect("memo lock").entry(key).or_insert(v))
    }
}
