//! Matrix families behind a common trait, registered by name and selected
//! at runtime. A family turns (tree, condition kind, seed) into the
//! symmetric matrix a search trial runs on.

use crate::conditions::{gen_condition_matrix, ConditionKind, GenFamily};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::tree::Tree;

/// A named strategy for producing instance matrices.
pub trait MatrixFamily: Send + Sync {
    /// Registry key; also the CLI value for `--family`.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Builds the matrix for one trial. Implementations must be pure in
    /// (tree, kind, seed).
    fn build(&self, tree: &Tree, kind: ConditionKind, seed: u64) -> Result<SymMatrix>;
}

/// The tree's own distance matrix.
pub struct DistanceFamily;

impl MatrixFamily for DistanceFamily {
    fn name(&self) -> &'static str {
        "distance"
    }

    fn description(&self) -> &'static str {
        "the distance matrix of the tree"
    }

    fn build(&self, tree: &Tree, _kind: ConditionKind, _seed: u64) -> Result<SymMatrix> {
        Ok(tree.distance_matrix())
    }
}

/// The tree's 0/1 adjacency matrix.
pub struct AdjacencyFamily;

impl MatrixFamily for AdjacencyFamily {
    fn name(&self) -> &'static str {
        "adjacency"
    }

    fn description(&self) -> &'static str {
        "the adjacency matrix of the tree"
    }

    fn build(&self, tree: &Tree, _kind: ConditionKind, _seed: u64) -> Result<SymMatrix> {
        Ok(tree.adjacency_matrix())
    }
}

/// Random monotone integer transform of the distance matrix.
pub struct TransformFamily;

impl MatrixFamily for TransformFamily {
    fn name(&self) -> &'static str {
        "transform"
    }

    fn description(&self) -> &'static str {
        "a random monotone integer step function applied to tree distances"
    }

    fn build(&self, tree: &Tree, kind: ConditionKind, seed: u64) -> Result<SymMatrix> {
        let tree_arg = kind.needs_tree().then_some(tree);
        gen_condition_matrix(
            kind,
            false,
            tree_arg,
            tree.n(),
            seed,
            GenFamily::DistanceTransform,
        )
    }
}

/// Random integer matrix repaired until it satisfies the condition.
pub struct RepairedFamily;

impl MatrixFamily for RepairedFamily {
    fn name(&self) -> &'static str {
        "repaired"
    }

    fn description(&self) -> &'static str {
        "a random nonnegative integer matrix repaired to the condition"
    }

    fn build(&self, tree: &Tree, kind: ConditionKind, seed: u64) -> Result<SymMatrix> {
        let tree_arg = kind.needs_tree().then_some(tree);
        gen_condition_matrix(
            kind,
            false,
            tree_arg,
            tree.n(),
            seed,
            GenFamily::RepairedRandom,
        )
    }
}

/// Name-keyed registry of matrix families.
pub struct FamilyRegistry {
    items: Vec<Box<dyn MatrixFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry { items: Vec::new() }
    }

    /// Registry preloaded with the built-in families.
    pub fn builtin() -> Self {
        let mut r = FamilyRegistry::empty();
        r.register(Box::new(DistanceFamily));
        r.register(Box::new(AdjacencyFamily));
        r.register(Box::new(TransformFamily));
        r.register(Box::new(RepairedFamily));
        r
    }

    /// Registers a family; a later registration shadows an earlier one of
    /// the same name.
    pub fn register(&mut self, family: Box<dyn MatrixFamily>) {
        self.items.retain(|f| f.name() != family.name());
        self.items.push(family);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MatrixFamily> {
        self.items
            .iter()
            .map(|b| b.as_ref())
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.items.iter().map(|f| f.name()).collect()
    }
}
