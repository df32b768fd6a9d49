//! The Weyl groups of types B and D as signed permutations: lengths, chosen
//! reduced words, braid-move paths, and the action on residue tuples.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Largest supported rank.
pub const MAX_RANK: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Flavor {
    B,
    D,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::B => "B",
            Flavor::D => "D",
        })
    }
}

/// A signed permutation of `{1..n}`; `images[k] = +-(j+1)` means that the
/// element sends `eps_(k+1)` to `+-eps_(j+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Vec<i8>,
}

impl SignedPerm {
    pub fn new(images: Vec<i8>) -> Result<SignedPerm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let j = x.unsigned_abs() as usize;
            if j == 0 || j > n || seen[j - 1] {
                return Err(Error::Precondition(format!("{images:?} is not a signed permutation")));
            }
            seen[j - 1] = true;
        }
        Ok(SignedPerm { images })
    }

    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm { images: (1..=n as i8).collect() }
    }

    /// The simple reflection `a` of the given flavor: for B, `r_0` negates
    /// `eps_1` and `r_k` swaps `eps_k, eps_(k+1)`; for D, `s_0 = r_0 r_1 r_0`
    /// and `s_k = r_k`.
    pub fn generator(flavor: Flavor, n: usize, a: usize) -> SignedPerm {
        assert!(a < n, "generator {a} out of range for rank {n}");
        let mut w = SignedPerm::identity(n);
        match (flavor, a) {
            (Flavor::B, 0) => w.images[0] = -1,
            (Flavor::D, 0) => {
                assert!(n >= 2, "type D needs rank at least 2");
                w.images[0] = -2;
                w.images[1] = -1;
            }
            _ => w.images.swap(a - 1, a),
        }
        w
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k as i8 + 1)
    }

    /// `self * o`, i.e. first `o` then `self`.
    pub fn compose(&self, o: &SignedPerm) -> SignedPerm {
        assert_eq!(self.n(), o.n(), "rank mismatch");
        let images = o
            .images
            .iter()
            .map(|&x| {
                let y = self.images[x.unsigned_abs() as usize - 1];
                if x < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect();
        SignedPerm { images }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![0i8; self.n()];
        for (k, &x) in self.images.iter().enumerate() {
            let j = x.unsigned_abs() as usize - 1;
            images[j] = if x < 0 { -(k as i8 + 1) } else { k as i8 + 1 };
        }
        SignedPerm { images }
    }

    pub fn neg_count(&self) -> u32 {
        self.images.iter().filter(|&&x| x < 0).count() as u32
    }

    /// Whether the element lies in the image of `W(D_n)`, the kernel of the
    /// character that is `-1` on `r_0`.
    pub fn is_even(&self) -> bool {
        self.neg_count().is_multiple_of(2)
    }

    fn inv_count(&self) -> u32 {
        let w = &self.images;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    fn neg_sum_pairs(&self) -> u32 {
        let w = &self.images;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] + w[j] < 0 {
                    c += 1;
                }
            }
        }
        c
    }

    /// Coxeter length in `W(B_n)`.
    pub fn length_b(&self) -> u32 {
        self.inv_count() + self.neg_count() + self.neg_sum_pairs()
    }

    /// Coxeter length in `W(D_n)`; meaningful only for even elements.
    pub fn length_d(&self) -> u32 {
        self.inv_count() + self.neg_sum_pairs()
    }

    pub fn length(&self, flavor: Flavor) -> u32 {
        match flavor {
            Flavor::B => self.length_b(),
            Flavor::D => self.length_d(),
        }
    }

    /// Action on a residue tuple: `(w.i)_{|w(k)|} = i_k^{sign w(k)}`.
    pub fn act_tuple(&self, t: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(t.len(), self.n(), "rank mismatch");
        let mut out = t.to_vec();
        for (k, &x) in self.images.iter().enumerate() {
            let j = x.unsigned_abs() as usize - 1;
            out[j] = if x < 0 { t[k].inv().expect("residues are nonzero") } else { t[k].clone() };
        }
        out
    }

    /// Product of the generators of `word` from left to right.
    pub fn from_word(flavor: Flavor, n: usize, word: &[u8]) -> SignedPerm {
        word.iter()
            .fold(SignedPerm::identity(n), |w, &a| w.compose(&SignedPerm::generator(flavor, n, a as usize)))
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Coxeter matrix entry `m(a, b)` for the given flavor.
pub fn coxeter_m(flavor: Flavor, a: usize, b: usize) -> usize {
    if a == b {
        return 1;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    match flavor {
        Flavor::B => match (lo, hi) {
            (0, 1) => 4,
            (l, h) if l >= 1 && h == l + 1 => 3,
            _ => 2,
        },
        Flavor::D => match (lo, hi) {
            (0, 2) => 3,
            (0, _) => 2,
            (l, h) if h == l + 1 => 3,
            _ => 2,
        },
    }
}

/// Letters of the B-word of `iota(w)` for a D-word `w`: `s_0 -> r_0 r_1 r_0`.
pub fn iota_word(d_word: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(d_word.len() * 2);
    for &a in d_word {
        if a == 0 {
            out.extend_from_slice(&[0, 1, 0]);
        } else {
            out.push(a);
        }
    }
    out
}

/// Splits a B-word into blocks `r_0 r_1 r_0` and `r_k` (k >= 1), returning
/// the corresponding D-word, or `None` if the word does not parse.
pub fn parse_iota_blocks(b_word: &[u8]) -> Option<Vec<u8>> {
    let mut out = Vec::new();
    let mut p = 0;
    while p < b_word.len() {
        if b_word[p] == 0 {
            if b_word.get(p..p + 3) == Some(&[0, 1, 0][..]) {
                out.push(0);
                p += 3;
            } else {
                return None;
            }
        } else {
            out.push(b_word[p]);
            p += 1;
        }
    }
    Some(out)
}

/// Replacement of an alternating segment `a b a ..` of length `len` starting
/// at `pos` by `b a b ..`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidMove {
    pub pos: usize,
    pub first: u8,
    pub second: u8,
    pub len: usize,
}

impl BraidMove {
    pub fn apply(&self, word: &[u8]) -> Vec<u8> {
        let mut out = word.to_vec();
        for t in 0..self.len {
            out[self.pos + t] = if t % 2 == 0 { self.second } else { self.first };
        }
        out
    }

    pub fn reversed(&self) -> BraidMove {
        BraidMove { pos: self.pos, first: self.second, second: self.first, len: self.len }
    }
}

fn alternates(seg: &[u8], a: u8, b: u8) -> bool {
    seg.iter().enumerate().all(|(t, &x)| x == if t % 2 == 0 { a } else { b })
}

/// Maps each reduced word of one element to its parent towards the chosen word
/// and the move turning it into that parent.
type WordTree = HashMap<Vec<u8>, (Vec<u8>, BraidMove)>;

/// A finite Weyl group of type B or D with its elements enumerated, lengths,
/// left multiplication tables and chosen reduced words.
pub struct WeylGroup {
    n: usize,
    flavor: Flavor,
    elems: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    lengths: Vec<u32>,
    left_gen: Vec<Vec<usize>>,
    chosen: Vec<Vec<u8>>,
    trees: RwLock<HashMap<usize, Arc<WordTree>>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}{}) with {} elements", self.flavor, self.n, self.elems.len())
    }
}

impl WeylGroup {
    pub fn new(flavor: Flavor, n: usize) -> Result<WeylGroup> {
        if n == 0 || n > MAX_RANK {
            return Err(Error::Unsupported(format!("rank {n} outside 1..={MAX_RANK}")));
        }
        if flavor == Flavor::D && n < 2 {
            return Err(Error::Unsupported("type D needs rank at least 2".into()));
        }
        let gens: Vec<SignedPerm> = (0..n).map(|a| SignedPerm::generator(flavor, n, a)).collect();
        let id = SignedPerm::identity(n);
        let mut seen: BTreeSet<SignedPerm> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let v = g.compose(&w);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let mut elems: Vec<SignedPerm> = seen.into_iter().collect();
        elems.sort_by(|a, b| a.length(flavor).cmp(&b.length(flavor)).then_with(|| a.cmp(b)));
        let index: HashMap<SignedPerm, usize> =
            elems.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let lengths: Vec<u32> = elems.iter().map(|w| w.length(flavor)).collect();
        let left_gen: Vec<Vec<usize>> =
            gens.iter().map(|g| elems.iter().map(|w| index[&g.compose(w)]).collect()).collect();
        let mut group = WeylGroup {
            n,
            flavor,
            elems,
            index,
            lengths,
            left_gen,
            chosen: Vec::new(),
            trees: RwLock::new(HashMap::new()),
        };
        group.chosen = (0..group.elems.len()).map(|w| group.compute_chosen(w)).collect();
        Ok(group)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, w: usize) -> &SignedPerm {
        &self.elems[w]
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elems
    }

    pub fn index_of(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> u32 {
        self.lengths[w]
    }

    pub fn max_length(&self) -> u32 {
        *self.lengths.iter().max().unwrap_or(&0)
    }

    /// Index of `s_a w`.
    pub fn left_mul_gen(&self, a: usize, w: usize) -> usize {
        self.left_gen[a][w]
    }

    pub fn eval_word(&self, word: &[u8]) -> usize {
        word.iter().rev().fold(0, |w, &a| self.left_gen[a as usize][w])
    }

    pub fn is_reduced(&self, word: &[u8]) -> bool {
        self.lengths[self.eval_word(word)] as usize == word.len()
    }

    pub fn coxeter_m(&self, a: usize, b: usize) -> usize {
        coxeter_m(self.flavor, a, b)
    }

    /// The fixed reduced word of `w`.
    pub fn chosen_word(&self, w: usize) -> &[u8] {
        &self.chosen[w]
    }

    /// Whether `w` lies in the image of the type D group (for type B) or
    /// always (for type D).
    pub fn is_even(&self, w: usize) -> bool {
        self.elems[w].is_even()
    }

    fn compute_chosen(&self, w: usize) -> Vec<u8> {
        let perm = &self.elems[w];
        match self.flavor {
            Flavor::B if perm.is_even() && self.n >= 2 => iota_word(&even_block_word(perm)),
            Flavor::B => {
                let mut word = Vec::new();
                let mut cur = w;
                while self.lengths[cur] > 0 {
                    let a = (0..self.n)
                        .find(|&a| self.lengths[self.left_gen[a][cur]] < self.lengths[cur])
                        .expect("nonidentity element has a left descent");
                    word.push(a as u8);
                    cur = self.left_gen[a][cur];
                }
                word
            }
            Flavor::D => even_block_word(perm),
        }
    }

    fn neighbours(&self, word: &[u8]) -> Vec<(Vec<u8>, BraidMove)> {
        let mut out = Vec::new();
        for p in 0..word.len().saturating_sub(1) {
            let (a, b) = (word[p], word[p + 1]);
            if a == b {
                continue;
            }
            let m = self.coxeter_m(a as usize, b as usize);
            if p + m <= word.len() && alternates(&word[p..p + m], a, b) {
                let mv = BraidMove { pos: p, first: a, second: b, len: m };
                out.push((mv.apply(word), mv));
            }
        }
        out
    }

    fn tree(&self, w: usize) -> Arc<WordTree> {
        if let Some(t) = self.trees.read().get(&w) {
            return t.clone();
        }
        let root = self.chosen[w].clone();
        let mut tree: WordTree = HashMap::new();
        let mut queue = VecDeque::from([root.clone()]);
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::from([root]);
        while let Some(word) = queue.pop_front() {
            for (next, mv) in self.neighbours(&word) {
                if seen.insert(next.clone()) {
                    // The reversed move turns `next` back into `word`.
                    tree.insert(next.clone(), (word.clone(), mv.reversed()));
                    queue.push_back(next);
                }
            }
        }
        let tree = Arc::new(tree);
        self.trees.write().entry(w).or_insert_with(|| tree.clone()).clone()
    }

    /// Braid moves turning the reduced `word` into the chosen word of its
    /// element.
    pub fn path_to_chosen(&self, word: &[u8]) -> Result<Vec<BraidMove>> {
        let w = self.eval_word(word);
        if self.lengths[w] as usize != word.len() {
            return Err(Error::Precondition(format!("word {word:?} is not reduced")));
        }
        if word == self.chosen[w].as_slice() {
            return Ok(Vec::new());
        }
        let tree = self.tree(w);
        let mut path = Vec::new();
        let mut cur = word.to_vec();
        while cur != self.chosen[w] {
            let (parent, mv) = tree.get(&cur).expect("reduced words are braid connected");
            path.push(*mv);
            cur = parent.clone();
        }
        Ok(path)
    }

    /// Braid moves turning the reduced word `a` into the reduced word `b`.
    pub fn braid_path(&self, a: &[u8], b: &[u8]) -> Result<Vec<BraidMove>> {
        if self.eval_word(a) != self.eval_word(b) {
            return Err(Error::DifferentElements);
        }
        let mut path = self.path_to_chosen(a)?;
        let back = self.path_to_chosen(b)?;
        path.extend(back.iter().rev().map(BraidMove::reversed));
        Ok(path)
    }
}

/// Greedy factorisation of an even signed permutation into B-reduced blocks
/// `iota(s_a)`, scanning `a = 0, 1, .., n-1`. Returns the D-word.
fn even_block_word(perm: &SignedPerm) -> Vec<u8> {
    let n = perm.n();
    let blocks: Vec<(SignedPerm, u32)> = (0..n)
        .map(|a| {
            let g = SignedPerm::generator(Flavor::D, n, a);
            let l = g.length_b();
            (g, l)
        })
        .collect();
    let mut word = Vec::new();
    let mut cur = perm.clone();
    while !cur.is_identity() {
        let len = cur.length_b();
        let (a, next) = blocks
            .iter()
            .enumerate()
            .find_map(|(a, (g, l))| {
                // Each block is an involution.
                let next = g.compose(&cur);
                (next.length_b() + l == len).then_some((a, next))
            })
            .expect("even elements admit block-reduced words");
        word.push(a as u8);
        cur = next;
    }
    word
}

/// Image of a residue tuple under a single generator.
pub fn act_generator(flavor: Flavor, a: usize, t: &[Scalar]) -> Vec<Scalar> {
    let mut out = t.to_vec();
    match (flavor, a) {
        (Flavor::B, 0) => out[0] = t[0].inv().expect("residues are nonzero"),
        (Flavor::D, 0) => {
            out[0] = t[1].inv().expect("residues are nonzero");
            out[1] = t[0].inv().expect("residues are nonzero");
        }
        _ => out.swap(a - 1, a),
    }
    out
}

pub type Tuple = Vec<Scalar>;

pub fn fmt_tuple(t: &[Scalar]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// An orbit of residue tuples, with members sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub flavor: Flavor,
    pub seed: Tuple,
    pub members: Vec<Tuple>,
}

pub fn orbit(seed: &[Scalar], flavor: Flavor) -> Orbit {
    let n = seed.len();
    let mut seen: BTreeSet<Tuple> = BTreeSet::from([seed.to_vec()]);
    let mut queue = VecDeque::from([seed.to_vec()]);
    let gens = if flavor == Flavor::D && n < 2 { 0 } else { n };
    while let Some(t) = queue.pop_front() {
        for a in 0..gens {
            let u = act_generator(flavor, a, &t);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    Orbit { flavor, seed: seed.to_vec(), members: seen.into_iter().collect() }
}

/// Splits a B-orbit into the D-orbit of its seed and the remaining members.
pub fn split_beta(beta: &Orbit) -> (Vec<Tuple>, Vec<Tuple>) {
    let plus = orbit(&beta.seed, Flavor::D).members;
    let plus_set: BTreeSet<&Tuple> = plus.iter().collect();
    let minus = beta.members.iter().filter(|t| !plus_set.contains(t)).cloned().collect();
    (plus, minus)
}

/// `nu(i)` = number of entries equal to `i` or `i^-1` in any member.
pub fn dimension_vector(beta: &Orbit) -> BTreeMap<Scalar, usize> {
    let mut nu = BTreeMap::new();
    for x in &beta.seed {
        let xi = x.inv().expect("residues are nonzero");
        *nu.entry(x.clone()).or_insert(0) += 1;
        if xi != *x {
            *nu.entry(xi).or_insert(0) += 1;
        }
    }
    nu
}
