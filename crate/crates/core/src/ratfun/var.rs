//! Process-wide registry of variable names.
//!
//! A [`Var`] is an index into the registry; ordering between variables is
//! declaration order, which is also the lexicographic order used for
//! canonical term ordering.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// Names declared up front, in registry order.
const PRELUDE: &[&str] = &[
    "a", "b", "g", "f", "h", "c", "q", "x", "alpha", "beta", "gamma",
];

struct Registry {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Registry {
    fn new() -> Self {
        let mut reg = Registry {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in PRELUDE {
            reg.insert(name);
        }
        reg
    }

    fn insert(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(Registry::new()))
}

/// A declared variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Looks up `name`, declaring it if it is new.
    pub fn named(name: &str) -> Var {
        if let Some(&id) = registry().read().unwrap().index.get(name) {
            return Var(id);
        }
        Var(registry().write().unwrap().insert(name))
    }

    /// Looks up an already declared name.
    pub fn lookup(name: &str) -> Option<Var> {
        registry().read().unwrap().index.get(name).copied().map(Var)
    }

    pub fn name(self) -> String {
        registry().read().unwrap().names[self.0 as usize].clone()
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `a`, `b`, `g`: the multiplicative exponents of the homology side.
pub fn abg() -> (Var, Var, Var) {
    (Var::named("a"), Var::named("b"), Var::named("g"))
}

/// `alpha`, `beta`, `gamma`: the additive exponents of the cohomology side.
pub fn alpha_beta_gamma() -> (Var, Var, Var) {
    (Var::named("alpha"), Var::named("beta"), Var::named("gamma"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prelude_order_is_declaration_order() {
        let (a, b, g) = abg();
        assert!(a < b && b < g);
        assert!(Var::named("g") < Var::named("alpha"));
    }

    #[test]
    fn names_are_unique() {
        let v1 = Var::named("zeta_test");
        let v2 = Var::named("zeta_test");
        assert_eq!(v1, v2);
        assert_eq!(v1.name(), "zeta_test");
        assert_eq!(Var::lookup("never_declared_anywhere"), None);
    }
}
