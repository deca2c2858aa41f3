use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Interned symbol name. Ordered by name, so monomial order does not depend
/// on interning order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(&'static str);

fn table() -> &'static Mutex<BTreeSet<&'static str>> {
    static TABLE: OnceLock<Mutex<BTreeSet<&'static str>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(BTreeSet::new()))
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut t = table().lock().expect("symbol table poisoned");
        if let Some(s) = t.get(name) {
            return Symbol(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        t.insert(leaked);
        Symbol(leaked)
    }

    pub fn name(self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// The formal variable X = q^{-s}.
pub fn x_sym() -> Symbol {
    Symbol::new("X")
}
