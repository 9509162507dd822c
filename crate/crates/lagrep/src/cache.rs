//! Shared memo tables for objects and elementary relations.
//!
//! Objects depend only on their sign sequence and elementary relations
//! only on (token, bottom signs), so both are safe to share between the
//! workers of a verification run.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use lagrep_core::diskhomology::{build_object, DiskObject, SignSeq};
use lagrep_core::lagrangian::{self, Relation};
use lagrep_core::tanglecat::{self, TangleWord, Token};
use lagrep_core::Result;

#[derive(Default)]
pub struct Cache {
    objects: RwLock<HashMap<SignSeq, Arc<DiskObject>>>,
    elementary: RwLock<HashMap<(Token, SignSeq), Arc<Relation>>>,
}

fn memo<K, V>(table: &RwLock<HashMap<K, Arc<V>>>, key: K, make: impl FnOnce() -> Result<V>) -> Result<Arc<V>>
where
    K: std::hash::Hash + Eq,
{
    if let Some(v) = table.read().expect("cache lock poisoned").get(&key) {
        return Ok(Arc::clone(v));
    }
    let v = Arc::new(make()?);
    Ok(Arc::clone(table.write().expect("cache lock poisoned").entry(key).or_insert(v)))
}

impl Cache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&self, eps: &SignSeq) -> Result<Arc<DiskObject>> {
        memo(&self.objects, eps.clone(), || build_object(eps))
    }

    pub fn elementary(&self, t: Token, eps: &SignSeq) -> Result<Arc<Relation>> {
        memo(&self.elementary, (t, eps.clone()), || tanglecat::elementary_relation(t, eps))
    }

    /// The relation of a word as the left fold of composition over cached
    /// elementary relations.
    pub fn generic_relation(&self, word: &TangleWord) -> Result<Relation> {
        let mut rel = lagrangian::diagonal(self.object(word.bottom())?.module());
        for (k, &t) in word.tokens().iter().enumerate() {
            let step = self.elementary(t, word.level(k))?;
            rel = lagrangian::compose(&rel, &step)?;
        }
        Ok(rel)
    }

    pub fn object_count(&self) -> usize {
        self.objects.read().expect("cache lock poisoned").len()
    }

    pub fn elementary_count(&self) -> usize {
        self.elementary.read().expect("cache lock poisoned").len()
    }
}
