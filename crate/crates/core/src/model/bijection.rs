//! Dual bijection between full binary trees and polygon triangulations.
//!
//! Leaf `i` (in left-to-right order) is dual to the polygon edge `(i, i+1)`;
//! an internal node spanning leaves `a..=b` is dual to the chord `(a, b+1)`
//! and to the triangle whose apex is the first vertex of its right subtree.
//! The root is dual to the distinguished edge `(0, n+1)`.

use super::tree::{BinaryTree, Node};
use super::triangulation::{Diagonal, Triangulation};
use super::ModelError;

/// `(lo, hi)` polygon chord for every preorder position.
fn spans(tree: &BinaryTree) -> Vec<(usize, usize)> {
    let nodes = tree.preorder();
    let mut end = vec![0usize; nodes.len()];
    for i in (0..nodes.len()).rev() {
        end[i] = match nodes[i] {
            Node::Leaf => i + 1,
            Node::Internal => end[end[i + 1]],
        };
    }
    let mut spans = vec![(0, 0); nodes.len()];
    spans[0] = (0, tree.leaves());
    for i in 0..nodes.len() {
        if nodes[i] == Node::Internal {
            let (lo, hi) = spans[i];
            let left = i + 1;
            let right = end[left];
            let left_leaves = (right - left).div_ceil(2);
            spans[left] = (lo, lo + left_leaves);
            spans[right] = (lo + left_leaves, hi);
        }
    }
    spans
}

pub fn tree_to_triangulation(tree: &BinaryTree) -> Result<Triangulation, ModelError> {
    let n = tree.internal_nodes();
    if n == 0 {
        return Err(ModelError::EmptyTree);
    }
    let spans = spans(tree);
    let mut diagonals: Vec<Diagonal> = tree
        .preorder()
        .iter()
        .zip(&spans)
        .skip(1)
        .filter(|(node, _)| **node == Node::Internal)
        .map(|(_, &(lo, hi))| Diagonal::new(lo, hi))
        .collect();
    diagonals.sort_unstable();
    Ok(Triangulation::from_sorted_unchecked(n, diagonals))
}

pub fn triangulation_to_tree(t: &Triangulation) -> BinaryTree {
    let mut preorder = Vec::with_capacity(2 * t.n() + 1);
    let mut stack = vec![(0usize, t.n() + 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo == 1 {
            preorder.push(Node::Leaf);
            continue;
        }
        preorder.push(Node::Internal);
        let m = t.apex_between(lo, hi);
        stack.push((m, hi));
        stack.push((lo, m));
    }
    BinaryTree::from_preorder_unchecked(preorder)
}

/// The diagonal flipped when the node of in-order rank `rank` is rotated
/// above its parent; `None` for the root or an out-of-range rank.
pub fn rotation_diagonal(tree: &BinaryTree, rank: usize) -> Option<Diagonal> {
    let pos = *tree.inorder_internal().get(rank)?;
    if pos == 0 {
        return None;
    }
    let (lo, hi) = spans(tree)[pos];
    Some(Diagonal::new(lo, hi))
}
