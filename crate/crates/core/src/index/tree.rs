//! In-memory iSAX tree with binary, round-robin node splitting.
//!
//! The root fans out by the first bit of every symbol (only combinations that
//! occur are materialized). An overflowing node is split on the symbol with
//! the fewest bits so far, lowest position first, one bit at a time. A node
//! that already uses every bit of every symbol keeps its overflow and is
//! flagged unsplittable.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::summarization::{IsaxWord, SaxWord, SummaryKind};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Leaf {
        /// Series identifiers in insertion (ascending) order.
        ids: Vec<usize>,
        unsplittable: bool,
    },
    Internal {
        segment: usize,
        /// Children for promoted bit 0 and 1; empty halves are not materialized.
        children: [Option<NodeId>; 2],
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub word: IsaxWord,
    pub depth: usize,
    pub kind: NodeKind,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf { .. })
    }

    pub fn children(&self) -> impl Iterator<Item = NodeId> + '_ {
        let kids: &[Option<NodeId>] = match &self.kind {
            NodeKind::Internal { children, .. } => children,
            NodeKind::Leaf { .. } => &[],
        };
        kids.iter().flatten().copied()
    }
}

/// Build summary, printed as one `key=value` line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub leaves: usize,
    pub max_leaf: usize,
    pub unsplittable: usize,
    pub depth: usize,
}

impl fmt::Display for TreeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "leaves={} max_leaf={} unsplittable={} depth={}",
            self.leaves, self.max_leaf, self.unsplittable, self.depth
        )
    }
}

#[derive(Debug, Clone)]
pub struct IsaxTree {
    nodes: Vec<Node>,
    top: Vec<NodeId>,
    words: Vec<SaxWord>,
    leaf_of: Vec<NodeId>,
    leaf_size: usize,
    bits: u8,
    kind: SummaryKind,
    source_m: usize,
}

impl IsaxTree {
    /// Bulk-builds the tree. The result is the same as inserting the words one
    /// by one in index order.
    pub fn build(words: Vec<SaxWord>, leaf_size: usize, kind: SummaryKind, source_m: usize) -> Result<Self> {
        if leaf_size == 0 {
            return Err(Error::InvalidArgument("leaf size must be >= 1".into()));
        }
        let first = words.first().ok_or(Error::EmptyTree)?;
        let (l, bits) = (first.len(), first.bits());
        if let Some(w) = words.iter().find(|w| w.len() != l || w.bits() != bits) {
            return Err(Error::ShapeMismatch(format!(
                "word with {} symbols at {} bits in a tree of {l} symbols at {bits} bits",
                w.len(),
                w.bits()
            )));
        }
        let mut tree = Self {
            nodes: Vec::new(),
            top: Vec::new(),
            leaf_of: vec![0; words.len()],
            words,
            leaf_size,
            bits,
            kind,
            source_m,
        };
        let all: Vec<usize> = (0..tree.words.len()).collect();
        if all.len() <= leaf_size {
            let root = IsaxWord {
                symbols: vec![0; l],
                bits: vec![0; l],
            };
            let id = tree.grow(root, all, 0);
            tree.top.push(id);
        } else {
            let shift = bits - 1;
            let mut groups: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
            for (i, w) in tree.words.iter().enumerate() {
                let prefix = w.symbols().iter().map(|&s| s >> shift).collect();
                groups.entry(prefix).or_default().push(i);
            }
            for (prefix, ids) in groups {
                let word = IsaxWord {
                    symbols: prefix,
                    bits: vec![1; l],
                };
                let id = tree.grow(word, ids, 1);
                tree.top.push(id);
            }
        }
        Ok(tree)
    }

    fn grow(&mut self, word: IsaxWord, ids: Vec<usize>, depth: usize) -> NodeId {
        let id = self.nodes.len();
        let split = if ids.len() > self.leaf_size {
            word.bits
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b < self.bits)
                .min_by_key(|&(j, &b)| (b, j))
                .map(|(j, _)| j)
        } else {
            None
        };
        let Some(segment) = split else {
            let unsplittable = ids.len() > self.leaf_size;
            for &i in &ids {
                self.leaf_of[i] = id;
            }
            self.nodes.push(Node {
                word,
                depth,
                kind: NodeKind::Leaf { ids, unsplittable },
            });
            return id;
        };
        // placeholder, patched once the children exist
        self.nodes.push(Node {
            word: word.clone(),
            depth,
            kind: NodeKind::Internal {
                segment,
                children: [None, None],
            },
        });
        let shift = self.bits - word.bits[segment] - 1;
        let (ones, zeros): (Vec<usize>, Vec<usize>) = ids
            .into_iter()
            .partition(|&i| self.words[i].symbols()[segment] >> shift & 1 == 1);
        let mut children = [None, None];
        for (bit, half) in [(0u8, zeros), (1u8, ones)] {
            if half.is_empty() {
                continue;
            }
            let mut child = word.clone();
            child.symbols[segment] = child.symbols[segment] << 1 | bit;
            child.bits[segment] += 1;
            children[bit as usize] = Some(self.grow(child, half, depth + 1));
        }
        self.nodes[id].kind = NodeKind::Internal { segment, children };
        id
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Children of the (implicit) root.
    pub fn top_level(&self) -> &[NodeId] {
        &self.top
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_leaf())
            .map(|(id, _)| id)
    }

    /// Series stored in leaf `id` (empty for internal nodes).
    pub fn leaf_members(&self, id: NodeId) -> &[usize] {
        match &self.nodes[id].kind {
            NodeKind::Leaf { ids, .. } => ids,
            NodeKind::Internal { .. } => &[],
        }
    }

    pub fn leaf_of(&self, series: usize) -> NodeId {
        self.leaf_of[series]
    }

    pub fn words(&self) -> &[SaxWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn leaf_size(&self) -> usize {
        self.leaf_size
    }

    pub fn segments(&self) -> usize {
        self.words[0].len()
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn kind(&self) -> SummaryKind {
        self.kind
    }

    pub fn source_m(&self) -> usize {
        self.source_m
    }

    pub fn stats(&self) -> TreeStats {
        let mut stats = TreeStats {
            leaves: 0,
            max_leaf: 0,
            unsplittable: 0,
            depth: 0,
        };
        for node in &self.nodes {
            if let NodeKind::Leaf { ids, unsplittable } = &node.kind {
                stats.leaves += 1;
                stats.max_leaf = stats.max_leaf.max(ids.len());
                stats.unsplittable += usize::from(*unsplittable);
                stats.depth = stats.depth.max(node.depth);
            }
        }
        stats
    }
}
