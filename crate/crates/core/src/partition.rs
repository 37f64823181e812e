use std::fmt;

use serde::Serialize;

/// A set partition of `0..n` in canonical form: each block sorted, blocks
/// ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition(Vec<Vec<usize>>);

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
            b.dedup();
        }
        blocks.sort();
        Partition(blocks)
    }

    pub fn singletons(n: usize) -> Self {
        Partition((0..n).map(|i| vec![i]).collect())
    }

    pub fn whole(n: usize) -> Self {
        Partition::new(vec![(0..n).collect()])
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Relabels every element through `f` and re-canonicalizes.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Partition {
        Partition::new(self.0.iter().map(|b| b.iter().map(|&x| f(x)).collect()).collect())
    }

    /// `true` iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.0.iter().all(|b| coarser.0.iter().any(|c| b.iter().all(|x| c.contains(x))))
    }

    /// Same as `Display` but with a custom element prefix, e.g. `"w"`.
    pub fn label(&self, prefix: &str) -> String {
        self.0
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|x| format!("{prefix}{}", x + 1)).collect();
                format!("({})", inner.join(","))
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// 1-based blocks for serialization.
    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|b| b.iter().map(|x| x + 1).collect()).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label("X"))
    }
}
