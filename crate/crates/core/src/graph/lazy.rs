use std::fmt;
use std::sync::Arc;

use super::{TreeView, VertexLabel};
use crate::term::Letter;

/// A trusted claim about a lazy tree that finite exploration cannot establish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Every two distinct nodes have distinct subtrees.
    AntiregularByConstruction,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::AntiregularByConstruction => f.write_str("antiregular-by-construction"),
        }
    }
}

type Labeler = dyn Fn(&[usize]) -> VertexLabel<Letter> + Send + Sync;

/// A tree given by a labelling function on node addresses.
///
/// The labeller must be pure and consistent with ranks: it is only ever
/// called on addresses whose every step is below the rank of the label at
/// the parent.
#[derive(Clone)]
pub struct LazyTree {
    name: String,
    rank: usize,
    labeler: Arc<Labeler>,
    certificate: Option<Certificate>,
    base: Vec<usize>,
}

impl LazyTree {
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        labeler: impl Fn(&[usize]) -> VertexLabel<Letter> + Send + Sync + 'static,
        certificate: Option<Certificate>,
    ) -> LazyTree {
        LazyTree {
            name: name.into(),
            rank,
            labeler: Arc::new(labeler),
            certificate,
            base: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Declared rank (number of port names).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn certificate(&self) -> Option<Certificate> {
        self.certificate
    }

    pub fn label_at(&self, address: &[usize]) -> VertexLabel<Letter> {
        if self.base.is_empty() {
            (self.labeler)(address)
        } else {
            let mut full = self.base.clone();
            full.extend_from_slice(address);
            (self.labeler)(&full)
        }
    }

    /// The subtree at `address`. Ports keep their names; a certificate is
    /// inherited since subtrees of antiregular trees are antiregular.
    pub fn subtree(&self, address: &[usize]) -> LazyTree {
        let mut base = self.base.clone();
        base.extend_from_slice(address);
        LazyTree {
            name: format!("{}@{}", self.name, crate::antiregular::word_string(&base)),
            base,
            ..self.clone()
        }
    }
}

impl fmt::Debug for LazyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyTree")
            .field("name", &self.name)
            .field("rank", &self.rank)
            .field("certificate", &self.certificate)
            .finish()
    }
}

impl TreeView for LazyTree {
    type Letter = Letter;
    type Cursor = Vec<usize>;

    fn root(&self) -> Vec<usize> {
        Vec::new()
    }

    fn label(&self, at: &Vec<usize>) -> VertexLabel<Letter> {
        self.label_at(at)
    }

    fn child(&self, at: &Vec<usize>, index: usize) -> Vec<usize> {
        let mut c = at.clone();
        c.push(index);
        c
    }
}
