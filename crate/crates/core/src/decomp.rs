//! Substitution decomposition trees.
//!
//! Every permutation of length `n >= 2` is uniquely `pi[a_1, ..., a_k]` with
//! `pi` simple, under the convention that for `pi = 12` (resp. `21`) the
//! last part is sum- (resp. skew-) indecomposable. Applying this
//! recursively gives the decomposition tree; the convention shows up in the
//! tree as the alternation condition on binary right chains (BRCs): maximal
//! runs of `12`/`21` nodes linked through rightmost-child edges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{last_skew_split, last_sum_split, standardized, Permutation};

/// Path from the root: the sequence of child indices (0-based).
pub type NodePath = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DecompTree {
    Leaf,
    Node { skeleton: Permutation, children: Vec<DecompTree> },
}

fn is_binary(p: &Permutation) -> bool {
    p.len() == 2
}

/// Tree of a permutation, recursively peeling the last sum (or skew)
/// component, or else the maximal proper blocks under a simple skeleton.
pub fn decompose(p: &Permutation) -> DecompTree {
    decompose_values(p.values())
}

fn decompose_values(v: &[u32]) -> DecompTree {
    let n = v.len();
    if n == 1 {
        return DecompTree::Leaf;
    }
    let split = |i: usize, skeleton: &str| DecompTree::Node {
        skeleton: skeleton.parse().expect("static skeleton"),
        children: vec![
            decompose_values(&standardized(&v[..i])),
            decompose_values(&standardized(&v[i..])),
        ],
    };
    if let Some(i) = last_sum_split(v) {
        return split(i, "12");
    }
    if let Some(i) = last_skew_split(v) {
        return split(i, "21");
    }
    // Sum- and skew-indecomposable: maximal proper blocks are disjoint, and
    // the longest proper block starting at a block boundary is maximal.
    let mut children = Vec::new();
    let mut reps = Vec::new();
    let mut start = 0;
    while start < n {
        let (mut lo, mut hi) = (v[start], v[start]);
        let mut end = start;
        for j in start + 1..n {
            if j - start + 1 >= n {
                break;
            }
            lo = lo.min(v[j]);
            hi = hi.max(v[j]);
            if (hi - lo) as usize == j - start {
                end = j;
            }
        }
        reps.push(v[start]);
        children.push(decompose_values(&standardized(&v[start..=end])));
        start = end + 1;
    }
    let skeleton = Permutation::standardize(&reps);
    debug_assert!(skeleton.is_simple() && skeleton.len() >= 4, "{skeleton}");
    DecompTree::Node { skeleton, children }
}

/// Maximal chains of `12`/`21` nodes linked by rightmost-child edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrcPartition {
    /// Chains ordered by the preorder position of their top node; each chain
    /// lists node paths from top to bottom.
    pub chains: Vec<Vec<NodePath>>,
    pub r_odd: usize,
}

impl BrcPartition {
    pub fn lengths(&self) -> Vec<usize> {
        self.chains.iter().map(Vec::len).collect()
    }
}

impl DecompTree {
    pub fn is_leaf(&self) -> bool {
        matches!(self, DecompTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            DecompTree::Leaf => 1,
            DecompTree::Node { children, .. } => children.iter().map(DecompTree::leaf_count).sum(),
        }
    }

    pub fn skeleton(&self) -> Option<&Permutation> {
        match self {
            DecompTree::Leaf => None,
            DecompTree::Node { skeleton, .. } => Some(skeleton),
        }
    }

    pub fn children(&self) -> &[DecompTree] {
        match self {
            DecompTree::Leaf => &[],
            DecompTree::Node { children, .. } => children,
        }
    }

    pub fn node(&self, path: &[usize]) -> Option<&DecompTree> {
        path.iter().try_fold(self, |t, &i| t.children().get(i))
    }

    pub fn node_mut(&mut self, path: &[usize]) -> Option<&mut DecompTree> {
        let mut t = self;
        for &i in path {
            t = match t {
                DecompTree::Leaf => return None,
                DecompTree::Node { children, .. } => children.get_mut(i)?,
            };
        }
        Some(t)
    }

    /// Internal nodes in preorder with their paths.
    pub fn internal_nodes(&self) -> Vec<(NodePath, &Permutation)> {
        fn walk<'a>(t: &'a DecompTree, path: &mut NodePath, out: &mut Vec<(NodePath, &'a Permutation)>) {
            if let DecompTree::Node { skeleton, children } = t {
                out.push((path.clone(), skeleton));
                for (i, c) in children.iter().enumerate() {
                    path.push(i);
                    walk(c, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Largest skeleton length, 0 for a leaf.
    pub fn max_skeleton_length(&self) -> usize {
        match self {
            DecompTree::Leaf => 0,
            DecompTree::Node { skeleton, children } => children
                .iter()
                .map(DecompTree::max_skeleton_length)
                .max()
                .unwrap_or(0)
                .max(skeleton.len()),
        }
    }

    /// Checks that every skeleton is simple of length >= 2 with matching arity.
    fn check_nodes(&self) -> Result<()> {
        for (path, sk) in self.internal_nodes() {
            if sk.len() < 2 || !sk.is_simple() {
                return Err(Error::Structure(format!("skeleton {sk} at {path:?} is not simple of length >= 2")));
            }
            let arity = self.node(&path).map_or(0, |t| t.children().len());
            if arity != sk.len() {
                return Err(Error::Structure(format!(
                    "skeleton {sk} at {path:?} has {arity} children, expected {}",
                    sk.len()
                )));
            }
        }
        Ok(())
    }

    /// Inflates skeletons by children bottom-up. Requires simple skeletons and
    /// matching arities but not the alternation condition, so it also
    /// evaluates non-canonical trees such as `12[.,12[.,.]]`.
    pub fn inflate_tree(&self) -> Result<Permutation> {
        self.check_nodes()?;
        Ok(self.inflate_unchecked())
    }

    fn inflate_unchecked(&self) -> Permutation {
        match self {
            DecompTree::Leaf => Permutation::identity(1),
            DecompTree::Node { skeleton, children } => {
                let parts: Vec<_> = children.iter().map(DecompTree::inflate_unchecked).collect();
                skeleton.inflate(&parts).expect("arity checked")
            }
        }
    }

    /// Inverse of [`decompose`] on G-trees.
    pub fn reconstruct(&self) -> Result<Permutation> {
        self.check_nodes()?;
        if let Some(chain) = self.first_non_alternating_chain() {
            return Err(Error::Structure(format!("binary right chain at {chain:?} does not alternate")));
        }
        Ok(self.inflate_unchecked())
    }

    pub fn brc_partition(&self) -> BrcPartition {
        fn walk(t: &DecompTree, path: &mut NodePath, chain: Option<usize>, chains: &mut Vec<Vec<NodePath>>) {
            let DecompTree::Node { skeleton, children } = t else { return };
            let mine = if is_binary(skeleton) {
                let idx = chain.unwrap_or_else(|| {
                    chains.push(Vec::new());
                    chains.len() - 1
                });
                chains[idx].push(path.clone());
                Some(idx)
            } else {
                None
            };
            let last = children.len() - 1;
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                walk(c, path, if i == last { mine } else { None }, chains);
                path.pop();
            }
        }
        let mut chains = Vec::new();
        walk(self, &mut Vec::new(), None, &mut chains);
        let r_odd = chains.iter().filter(|c| c.len() % 2 == 1).count();
        BrcPartition { chains, r_odd }
    }

    fn first_non_alternating_chain(&self) -> Option<NodePath> {
        self.brc_partition().chains.into_iter().find_map(|chain| {
            let labels: Vec<_> = chain.iter().map(|p| self.node(p).and_then(DecompTree::skeleton)).collect();
            labels.windows(2).any(|w| w[0] == w[1]).then(|| chain[0].clone())
        })
    }

    /// All three G-tree conditions: simple skeletons of length >= 2, arity
    /// equal to skeleton length, alternating binary right chains.
    pub fn is_g_tree(&self) -> bool {
        self.check_nodes().is_ok() && self.first_non_alternating_chain().is_none()
    }

    /// Replaces every skeleton by its length.
    pub fn simplify(&self) -> SimplifiedTree {
        match self {
            DecompTree::Leaf => SimplifiedTree::Leaf,
            DecompTree::Node { skeleton, children } => SimplifiedTree::Node {
                len: skeleton.len(),
                children: children.iter().map(DecompTree::simplify).collect(),
            },
        }
    }

    /// Number of internal nodes per skeleton length (index = length).
    pub fn skeleton_length_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_skeleton_length() + 1];
        for (_, sk) in self.internal_nodes() {
            counts[sk.len()] += 1;
        }
        counts
    }
}

/// Membership in the substitution closure of simple permutations of length `<= k`.
pub fn in_h(p: &Permutation, k: usize) -> bool {
    decompose(p).max_skeleton_length() <= k
}

fn write_skeleton(f: &mut fmt::Formatter<'_>, sk: &Permutation) -> fmt::Result {
    if sk.len() <= 9 {
        for v in sk.values() {
            write!(f, "{v}")?;
        }
        Ok(())
    } else {
        write!(f, "({sk})")
    }
}

/// Canonical bracketed text, e.g. `2413[21[12[.,.],12[.,.]],21[.,.],.,12[.,.]]`.
/// Skeletons longer than 9 are written as `(v1 v2 ...)`.
impl fmt::Display for DecompTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompTree::Leaf => f.write_str("."),
            DecompTree::Node { skeleton, children } => {
                write_skeleton(f, skeleton)?;
                f.write_str("[")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for DecompTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecompTree({self})")
    }
}

struct TreeParser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos + 1, message: message.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn label(&mut self) -> Result<String> {
        let start = self.pos;
        if self.peek() == Some(b'(') {
            while self.peek().is_some_and(|c| c != b')') {
                self.pos += 1;
            }
            self.expect(b')')?;
            return Ok(String::from_utf8_lossy(&self.text[start + 1..self.pos - 1]).into_owned());
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a label or '.'");
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn tree<L, F>(&mut self, leaf: &L, node: &F) -> Result<L>
    where
        L: Clone,
        F: Fn(&str, Vec<L>, usize) -> Result<L>,
    {
        if self.peek() == Some(b'.') {
            self.pos += 1;
            return Ok(leaf.clone());
        }
        let at = self.pos;
        let label = self.label()?;
        self.expect(b'[')?;
        let mut children = vec![self.tree(leaf, node)?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            children.push(self.tree(leaf, node)?);
        }
        self.expect(b']')?;
        node(&label, children, at + 1)
    }

    fn parse<L, F>(text: &str, leaf: L, node: F) -> Result<L>
    where
        L: Clone,
        F: Fn(&str, Vec<L>, usize) -> Result<L>,
    {
        let mut p = TreeParser { text: text.trim().as_bytes(), pos: 0 };
        let t = p.tree(&leaf, &node)?;
        if p.pos != p.text.len() {
            return p.err("trailing input");
        }
        Ok(t)
    }
}

/// Parses the canonical bracketed text; structural validity (simplicity,
/// arity, alternation) is not enforced here, see [`DecompTree::is_g_tree`].
impl FromStr for DecompTree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        TreeParser::parse(text, DecompTree::Leaf, |label, children, position| {
            let skeleton: Permutation = label
                .parse()
                .map_err(|e: Error| Error::Parse { position, message: format!("bad skeleton {label:?}: {e}") })?;
            if skeleton.len() != children.len() {
                return Err(Error::Parse {
                    position,
                    message: format!("skeleton {label} has {} children", children.len()),
                });
            }
            Ok(DecompTree::Node { skeleton, children })
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    skeleton: Vec<u32>,
    children: Vec<TreeJson>,
}

impl TreeJson {
    fn from_tree(t: &DecompTree) -> Self {
        match t {
            DecompTree::Leaf => TreeJson { skeleton: vec![1], children: Vec::new() },
            DecompTree::Node { skeleton, children } => TreeJson {
                skeleton: skeleton.values().to_vec(),
                children: children.iter().map(TreeJson::from_tree).collect(),
            },
        }
    }

    fn into_tree(self) -> Result<DecompTree> {
        if self.skeleton == [1] && self.children.is_empty() {
            return Ok(DecompTree::Leaf);
        }
        let skeleton = Permutation::new(self.skeleton)?;
        if skeleton.len() != self.children.len() {
            return Err(Error::Structure(format!("skeleton {skeleton} has {} children", self.children.len())));
        }
        let children = self.children.into_iter().map(TreeJson::into_tree).collect::<Result<_>>()?;
        Ok(DecompTree::Node { skeleton, children })
    }
}

/// JSON form `{"skeleton":[...],"children":[...]}`; a leaf is `{"skeleton":[1],"children":[]}`.
impl Serialize for DecompTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TreeJson::from_tree(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DecompTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        TreeJson::deserialize(deserializer)?.into_tree().map_err(serde::de::Error::custom)
    }
}

/// A decomposition tree with each skeleton replaced by its length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimplifiedTree {
    Leaf,
    Node { len: usize, children: Vec<SimplifiedTree> },
}

impl SimplifiedTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            SimplifiedTree::Leaf => 1,
            SimplifiedTree::Node { children, .. } => children.iter().map(SimplifiedTree::leaf_count).sum(),
        }
    }

    /// Labels of internal nodes in preorder.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn walk(t: &SimplifiedTree, out: &mut Vec<usize>) {
            if let SimplifiedTree::Node { len, children } = t {
                out.push(*len);
                children.iter().for_each(|c| walk(c, out));
            }
        }
        walk(self, &mut out);
        out
    }

    /// Lengths of maximal chains of `2`-labeled nodes joined by
    /// rightmost-child edges, in preorder of chain tops.
    pub fn chain_lengths(&self) -> Vec<usize> {
        fn walk(t: &SimplifiedTree, chain: Option<usize>, lens: &mut Vec<usize>) {
            let SimplifiedTree::Node { len, children } = t else { return };
            let mine = (*len == 2).then(|| {
                let idx = chain.unwrap_or_else(|| {
                    lens.push(0);
                    lens.len() - 1
                });
                lens[idx] += 1;
                idx
            });
            let last = children.len().saturating_sub(1);
            for (i, c) in children.iter().enumerate() {
                walk(c, if i == last { mine } else { None }, lens);
            }
        }
        let mut lens = Vec::new();
        walk(self, None, &mut lens);
        lens
    }
}

impl fmt::Display for SimplifiedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplifiedTree::Leaf => f.write_str("."),
            SimplifiedTree::Node { len, children } => {
                write!(f, "{len}[")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for SimplifiedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplifiedTree({self})")
    }
}

impl FromStr for SimplifiedTree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        TreeParser::parse(text, SimplifiedTree::Leaf, |label, children, position| {
            let len: usize = label
                .parse()
                .map_err(|_| Error::Parse { position, message: format!("bad label {label:?}") })?;
            if len != children.len() {
                return Err(Error::Parse { position, message: format!("label {len} has {} children", children.len()) });
            }
            Ok(SimplifiedTree::Node { len, children })
        })
    }
}

impl Serialize for SimplifiedTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_permutations, for_each_permutation};
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t(s: &str) -> DecompTree {
        s.parse().unwrap()
    }

    #[test]
    fn decompose_examples() {
        let tree = decompose(&p("452398167"));
        assert_eq!(tree.to_string(), "2413[21[12[.,.],12[.,.]],21[.,.],.,12[.,.]]");
        let root_children = tree.children();
        assert_eq!(root_children[0], decompose(&p("3412")));
        assert_eq!(root_children[1], decompose(&p("21")));
        assert!(root_children[2].is_leaf());
        assert_eq!(decompose(&p("123")).to_string(), "12[12[.,.],.]");
        assert_eq!(decompose(&p("1")), DecompTree::Leaf);
        assert_eq!(decompose(&p("132")).to_string(), "12[.,21[.,.]]");
        assert_eq!(decompose(&p("6713254")).to_string(), "21[12[.,.],12[12[.,21[.,.]],21[.,.]]]");
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(t("2413[21[12[.,.],12[.,.]],21[.,.],.,12[.,.]]").reconstruct().unwrap(), p("452398167"));
        assert_eq!(DecompTree::Leaf.reconstruct().unwrap(), p("1"));
        assert!(matches!(t("12[.,12[.,.]]").reconstruct(), Err(Error::Structure(_))));
        assert_eq!(t("12[.,12[.,.]]").inflate_tree().unwrap(), p("123"));
        assert!(matches!(t("123[.,.,.]").reconstruct(), Err(Error::Structure(_))));
    }

    #[test]
    fn brc_examples() {
        let b = decompose(&p("452398167")).brc_partition();
        assert_eq!((b.chains.len(), b.r_odd), (4, 3));
        assert_eq!(b.lengths(), vec![2, 1, 1, 1]);
        let b = decompose(&p("12")).brc_partition();
        assert_eq!((b.lengths(), b.r_odd), (vec![1], 1));
        let b = decompose(&p("6713254")).brc_partition();
        assert_eq!(b.r_odd, 2);
        assert_eq!(b.lengths(), vec![3, 1, 2]);
        assert_eq!(b.chains[0], vec![vec![], vec![1], vec![1, 1]]);
    }

    #[test]
    fn g_tree_examples() {
        assert!(!t("12[.,12[.,.]]").is_g_tree());
        assert!(t("12[.,21[.,.]]").is_g_tree());
        assert_eq!(t("12[.,21[.,.]]"), decompose(&p("132")));
        assert!(!t("123[.,.,.]").is_g_tree());
        assert!(!t("2143[.,.,.,.]").is_g_tree());
    }

    #[test]
    fn simplify_examples() {
        assert_eq!(decompose(&p("452398167")).simplify().to_string(), "4[2[2[.,.],2[.,.]],2[.,.],.,2[.,.]]");
        assert_eq!(DecompTree::Leaf.simplify(), SimplifiedTree::Leaf);
        assert_eq!(decompose(&p("2413")).simplify().to_string(), "4[.,.,.,.]");
        let st: SimplifiedTree = "4[2[2[.,.],2[.,.]],2[.,.],.,2[.,.]]".parse().unwrap();
        assert_eq!(st.chain_lengths(), vec![2, 1, 1, 1]);
        assert_eq!(st.leaf_count(), 9);
    }

    #[test]
    fn in_h_examples() {
        assert!(!in_h(&p("2413"), 2));
        assert!(in_h(&p("2413"), 4));
        assert!(in_h(&p("1"), 2));
        let sep = enumerate_permutations(4).unwrap().filter(|q| in_h(q, 2)).count();
        assert_eq!(sep, 22);
    }

    /// Brute-force pattern containment, test-only.
    fn contains(text: &[u32], pattern: &[u32]) -> bool {
        let k = pattern.len();
        let n = text.len();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let sub: Vec<u32> = idx.iter().map(|&i| text[i]).collect();
            if standardized(&sub) == pattern {
                return true;
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    #[test]
    fn separable_iff_avoids_2413_and_3142() {
        for n in 1..=6 {
            for_each_permutation(n, |q| {
                let avoids = n < 4 || (!contains(q.values(), &[2, 4, 1, 3]) && !contains(q.values(), &[3, 1, 4, 2]));
                assert_eq!(in_h(q, 2), avoids, "{q}");
            })
            .unwrap();
        }
    }

    #[test]
    fn exhaustive_tree_invariants() {
        for n in 1..=8 {
            let mut seen = HashSet::new();
            for_each_permutation(n, |q| {
                let tree = decompose(q);
                assert!(tree.is_g_tree(), "{q}");
                assert_eq!(&tree.reconstruct().unwrap(), q);
                assert_eq!(tree.leaf_count(), n);
                // n - 1 = sum (l - 1) v_l
                let counts = tree.skeleton_length_counts();
                let s: usize = counts.iter().enumerate().map(|(l, &v)| l.saturating_sub(1) * v).sum();
                assert_eq!(s, n - 1);
                for (path, sk) in tree.internal_nodes() {
                    assert!(sk.is_simple());
                    if sk.len() == 2 {
                        let right = &tree.node(&path).unwrap().children()[1];
                        assert_ne!(right.skeleton(), Some(sk), "{q}");
                    }
                }
                assert!(seen.insert(tree.to_string()));
            })
            .unwrap();
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        for q in enumerate_permutations(6).unwrap() {
            let tree = decompose(&q);
            assert_eq!(tree.to_string().parse::<DecompTree>().unwrap(), tree);
            let json = serde_json::to_string(&tree).unwrap();
            assert_eq!(serde_json::from_str::<DecompTree>(&json).unwrap(), tree);
            let st = tree.simplify();
            assert_eq!(st.to_string().parse::<SimplifiedTree>().unwrap(), st);
        }
        let json = serde_json::to_string(&decompose(&p("2413"))).unwrap();
        assert_eq!(
            json,
            r#"{"skeleton":[2,4,1,3],"children":[{"skeleton":[1],"children":[]},{"skeleton":[1],"children":[]},{"skeleton":[1],"children":[]},{"skeleton":[1],"children":[]}]}"#
        );
    }

    #[test]
    fn long_skeleton_text_form() {
        let q = p("2 4 6 8 10 1 3 5 7 9");
        assert!(q.is_simple());
        let tree = decompose(&q);
        let text = tree.to_string();
        assert_eq!(text, "(2 4 6 8 10 1 3 5 7 9)[.,.,.,.,.,.,.,.,.,.]");
        assert_eq!(text.parse::<DecompTree>().unwrap(), tree);
        assert_eq!(tree.reconstruct().unwrap(), q);
    }

    #[test]
    fn parse_errors() {
        assert!("12[.,.".parse::<DecompTree>().is_err());
        assert!("12[.]".parse::<DecompTree>().is_err());
        assert!("x".parse::<DecompTree>().is_err());
        assert!("..".parse::<DecompTree>().is_err());
    }
}
