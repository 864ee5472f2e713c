//! Variable registry: the ordered list of ring variables a polynomial case
//! works over.
//!
//! Registry order *is* the monomial-order priority: ansatz unknowns come
//! first (highest), then the eigenvalue, then the potential parameters. The
//! spatial variable `x` is deliberately not a ring variable; it lives one
//! structural level up in [`super::XPoly`].

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Reserved name of the eigenvalue variable.
pub const LAMBDA_NAME: &str = "lambda";
/// Reserved name of the spatial variable (never registered).
pub const SPATIAL_NAME: &str = "x";

/// Which elimination block a variable belongs to. The derived `Ord` gives
/// the block priority: `Ansatz > Eigenvalue > Parameter` in elimination
/// seniority, encoded as `Ansatz < Eigenvalue < Parameter` in registry
/// position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    Ansatz,
    Eigenvalue,
    Parameter,
}

impl Block {
    pub fn label(&self) -> &'static str {
        match self {
            Block::Ansatz => "ansatz",
            Block::Eigenvalue => "eigenvalue",
            Block::Parameter => "parameter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarRegistry {
    vars: Vec<(String, Block)>,
}

impl VarRegistry {
    /// Build a registry from `(name, block)` pairs. Names must be unique and
    /// blocks must appear in order ansatz, eigenvalue, parameter.
    pub fn new(vars: Vec<(String, Block)>) -> Result<Self> {
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                if vars[i].0 == vars[j].0 {
                    return Err(Error::Usage(format!("duplicate variable `{}`", vars[i].0)));
                }
            }
            if vars[i].0 == SPATIAL_NAME {
                return Err(Error::Usage(
                    "`x` is the spatial variable and cannot be registered".to_string(),
                ));
            }
        }
        if vars.windows(2).any(|w| w[0].1 > w[1].1) {
            return Err(Error::Usage(
                "registry blocks must be ordered ansatz, eigenvalue, parameter".to_string(),
            ));
        }
        Ok(VarRegistry { vars })
    }

    /// The base registry for a potential: `lambda` plus its parameters.
    pub fn base(params: &[&str]) -> Result<Arc<Self>> {
        let mut vars = Vec::with_capacity(params.len() + 1);
        vars.push((LAMBDA_NAME.to_string(), Block::Eigenvalue));
        for p in params {
            if *p == LAMBDA_NAME {
                return Err(Error::Usage("`lambda` is reserved".to_string()));
            }
            vars.push((p.to_string(), Block::Parameter));
        }
        Ok(Arc::new(Self::new(vars)?))
    }

    /// Extend with ansatz unknowns `p_{s-1}, ..., p_0` (descending priority).
    /// Fails if a user parameter collides with a reserved `p<k>` name.
    pub fn with_ansatz(self: &Arc<Self>, s: usize) -> Result<Arc<Self>> {
        let mut vars = Vec::with_capacity(self.vars.len() + s);
        for j in (0..s).rev() {
            let name = format!("p{j}");
            if self.index_of(&name).is_some() {
                return Err(Error::Usage(format!(
                    "parameter name `{name}` collides with a reserved ansatz unknown"
                )));
            }
            vars.push((name, Block::Ansatz));
        }
        vars.extend(self.vars.iter().cloned());
        Ok(Arc::new(Self::new(vars)?))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].0
    }

    pub fn block(&self, i: usize) -> Block {
        self.vars[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|(n, _)| n == name)
    }

    pub fn lambda_index(&self) -> Option<usize> {
        self.index_of(LAMBDA_NAME)
    }

    /// Index of ansatz unknown `p_j`.
    pub fn ansatz_index(&self, j: usize) -> Option<usize> {
        self.index_of(&format!("p{j}"))
    }

    pub fn indices_of_block(&self, block: Block) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.block(i) == block)
    }

    /// Fast pointer check first, then structural equality.
    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_order_enforced() {
        let bad = VarRegistry::new(alloc::vec![
            (String::from("lambda"), Block::Eigenvalue),
            (String::from("p0"), Block::Ansatz),
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn ansatz_extension_orders_unknowns_descending() {
        let base = VarRegistry::base(&["mu"]).unwrap();
        let ext = base.with_ansatz(3).unwrap();
        assert_eq!(ext.name(0), "p2");
        assert_eq!(ext.name(1), "p1");
        assert_eq!(ext.name(2), "p0");
        assert_eq!(ext.name(3), "lambda");
        assert_eq!(ext.name(4), "mu");
        assert_eq!(ext.ansatz_index(0), Some(2));
    }

    #[test]
    fn reserved_names_rejected() {
        assert!(VarRegistry::base(&["lambda"]).is_err());
        let base = VarRegistry::base(&["p1"]).unwrap();
        assert!(base.with_ansatz(2).is_err());
    }
}
