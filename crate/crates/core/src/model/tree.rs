use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf,
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseTreeErrorKind {
    UnexpectedChar(char),
    ExpectedClose,
    UnbalancedClose,
    UnexpectedEnd,
    TrailingInput,
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("tree parse error at byte {offset}: {kind}")]
pub struct ParseTreeError {
    pub offset: usize,
    pub kind: ParseTreeErrorKind,
}

impl fmt::Display for ParseTreeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseTreeErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseTreeErrorKind::ExpectedClose => write!(f, "expected `)` after two subtrees"),
            ParseTreeErrorKind::UnbalancedClose => write!(f, "`)` closes a node with fewer than two subtrees"),
            ParseTreeErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseTreeErrorKind::TrailingInput => write!(f, "input continues after a complete tree"),
        }
    }
}

/// A full binary tree, stored as its preorder node sequence.
///
/// The preorder of a full binary tree determines it uniquely, so the flat
/// form needs no child pointers and no recursion to drop, which matters for
/// the deeply nested trees an adversarial parser input can produce.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTree {
    preorder: Vec<Node>,
}

/// Pointer form used for restructuring.
struct Arena {
    children: Vec<Option<(usize, usize)>>,
    root: usize,
}

impl BinaryTree {
    pub fn leaf() -> Self {
        Self {
            preorder: vec![Node::Leaf],
        }
    }

    pub fn join(left: BinaryTree, right: BinaryTree) -> Self {
        let mut preorder = Vec::with_capacity(1 + left.preorder.len() + right.preorder.len());
        preorder.push(Node::Internal);
        preorder.extend(left.preorder);
        preorder.extend(right.preorder);
        Self { preorder }
    }

    /// Left comb (every right child a leaf) with `n` internal nodes.
    pub fn left_comb(n: usize) -> Self {
        (0..n).fold(Self::leaf(), |t, _| Self::join(t, Self::leaf()))
    }

    /// Right comb with `n` internal nodes.
    pub fn right_comb(n: usize) -> Self {
        (0..n).fold(Self::leaf(), |t, _| Self::join(Self::leaf(), t))
    }

    /// Caller guarantees `preorder` encodes a full binary tree.
    pub(crate) fn from_preorder_unchecked(preorder: Vec<Node>) -> Self {
        debug_assert_eq!(
            preorder.iter().filter(|n| **n == Node::Leaf).count(),
            preorder.len() / 2 + 1
        );
        Self { preorder }
    }

    pub fn preorder(&self) -> &[Node] {
        &self.preorder
    }

    /// Number of internal nodes.
    pub fn internal_nodes(&self) -> usize {
        self.preorder.len() / 2
    }

    pub fn leaves(&self) -> usize {
        self.internal_nodes() + 1
    }

    /// Accepts `tree := "L" | "(" tree tree ")"` with insignificant ASCII
    /// whitespace. Iterative, so nesting depth is bounded only by memory.
    pub fn parse(s: &str) -> Result<Self, ParseTreeError> {
        let err = |offset, kind| ParseTreeError { offset, kind };
        let mut preorder = Vec::new();
        // Number of finished subtrees under each open internal node.
        let mut open: Vec<u8> = Vec::new();
        let mut complete = false;

        for (offset, ch) in s.char_indices() {
            if ch.is_ascii_whitespace() {
                continue;
            }
            if complete {
                return Err(err(offset, ParseTreeErrorKind::TrailingInput));
            }
            if ch != ')' && open.last() == Some(&2) {
                return Err(err(offset, ParseTreeErrorKind::ExpectedClose));
            }
            let finished_subtree = match ch {
                'L' => {
                    preorder.push(Node::Leaf);
                    true
                }
                '(' => {
                    preorder.push(Node::Internal);
                    open.push(0);
                    false
                }
                ')' => match open.last() {
                    Some(2) => {
                        open.pop();
                        true
                    }
                    _ => return Err(err(offset, ParseTreeErrorKind::UnbalancedClose)),
                },
                other => return Err(err(offset, ParseTreeErrorKind::UnexpectedChar(other))),
            };
            if finished_subtree {
                match open.last_mut() {
                    Some(count) => *count += 1,
                    None => complete = true,
                }
            }
        }
        if !complete {
            return Err(err(s.len(), ParseTreeErrorKind::UnexpectedEnd));
        }
        Ok(Self { preorder })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Exclusive end of the subtree rooted at preorder position `start`.
    pub fn subtree_end(&self, start: usize) -> usize {
        let mut need = 1usize;
        let mut i = start;
        while need > 0 {
            match self.preorder[i] {
                Node::Leaf => need -= 1,
                Node::Internal => need += 1,
            }
            i += 1;
        }
        i
    }

    /// Preorder positions of the two children of an internal node.
    pub fn children(&self, pos: usize) -> Option<(usize, usize)> {
        match self.preorder.get(pos)? {
            Node::Leaf => None,
            Node::Internal => Some((pos + 1, self.subtree_end(pos + 1))),
        }
    }

    fn to_arena(&self) -> Arena {
        let mut children = vec![None; self.preorder.len()];
        let mut stack: Vec<(usize, Option<usize>)> = Vec::new();
        for (pos, node) in self.preorder.iter().enumerate() {
            attach(&mut stack, &mut children, pos);
            if *node == Node::Internal {
                stack.push((pos, None));
            }
        }
        return Arena { children, root: 0 };

        fn attach(
            stack: &mut Vec<(usize, Option<usize>)>,
            children: &mut [Option<(usize, usize)>],
            pos: usize,
        ) {
            if let Some(top) = stack.last_mut() {
                match top.1 {
                    None => top.1 = Some(pos),
                    Some(left) => {
                        children[top.0] = Some((left, pos));
                        stack.pop();
                    }
                }
            }
        }
    }

    fn from_arena(arena: &Arena) -> Self {
        let mut preorder = Vec::with_capacity(arena.children.len());
        let mut stack = vec![arena.root];
        while let Some(id) = stack.pop() {
            match arena.children[id] {
                None => preorder.push(Node::Leaf),
                Some((l, r)) => {
                    preorder.push(Node::Internal);
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        Self { preorder }
    }

    /// Preorder positions of the internal nodes listed in symmetric
    /// (in-order) order. The in-order rank is the node's key when the tree
    /// is read as a search tree.
    pub fn inorder_internal(&self) -> Vec<usize> {
        let arena = self.to_arena();
        let mut out = Vec::with_capacity(self.internal_nodes());
        let mut stack = Vec::new();
        let mut cur = Some(arena.root);
        loop {
            while let Some(id) = cur {
                stack.push(id);
                cur = arena.children[id].map(|(l, _)| l);
            }
            let Some(id) = stack.pop() else { break };
            if let Some((_, r)) = arena.children[id] {
                out.push(id);
                cur = Some(r);
            }
        }
        out
    }

    /// Rotates the internal node of in-order rank `rank` above its parent.
    /// `None` when `rank` is the root or out of range.
    pub fn rotate_up(&self, rank: usize) -> Option<BinaryTree> {
        let target = *self.inorder_internal().get(rank)?;
        let mut arena = self.to_arena();
        let parent_of = |arena: &Arena, id: usize| {
            arena.children.iter().position(|c| match c {
                Some((l, r)) => *l == id || *r == id,
                None => false,
            })
        };
        let p = parent_of(&arena, target)?;
        let grand = parent_of(&arena, p);
        let (pl, pr) = arena.children[p].expect("parent is internal");
        let (ul, ur) = arena.children[target].expect("rotated node is internal");
        if pl == target {
            // p(u(A,B),C) -> u(A,p(B,C))
            arena.children[p] = Some((ur, pr));
            arena.children[target] = Some((ul, p));
        } else {
            // p(A,u(B,C)) -> u(p(A,B),C)
            arena.children[p] = Some((pl, ul));
            arena.children[target] = Some((p, ur));
        }
        match grand {
            None => arena.root = target,
            Some(g) => {
                let (gl, gr) = arena.children[g].expect("grandparent is internal");
                arena.children[g] = Some(if gl == p { (target, gr) } else { (gl, target) });
            }
        }
        Some(Self::from_arena(&arena))
    }

    /// All trees with `n` internal nodes, in lexicographic preorder.
    pub fn enumerate(n: usize) -> Vec<BinaryTree> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(2 * n + 1);
        gen(n, 1, &mut buf, &mut out);
        return out;

        // `internal` internal nodes still to place, `pending` open leaf slots.
        fn gen(internal: usize, pending: usize, buf: &mut Vec<Node>, out: &mut Vec<BinaryTree>) {
            if pending == 0 {
                if internal == 0 {
                    out.push(BinaryTree { preorder: buf.clone() });
                }
                return;
            }
            buf.push(Node::Leaf);
            gen(internal, pending - 1, buf, out);
            buf.pop();
            if internal > 0 {
                buf.push(Node::Internal);
                gen(internal - 1, pending + 1, buf, out);
                buf.pop();
            }
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut remaining: Vec<u8> = Vec::new();
        for node in &self.preorder {
            match node {
                Node::Internal => {
                    f.write_str("(")?;
                    remaining.push(2);
                }
                Node::Leaf => {
                    f.write_str("L")?;
                    while let Some(top) = remaining.last_mut() {
                        *top -= 1;
                        if *top > 0 {
                            break;
                        }
                        remaining.pop();
                        f.write_str(")")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for BinaryTree {
    type Err = ParseTreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
