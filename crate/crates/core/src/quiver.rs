//! Dynkin quivers, path algebras, trivial extension algebras and Ginzburg presentations.
//!
//! Paths are stored as arrow sequences in traversal order. The product `p·q`
//! means "first `q`, then `p`" and is nonzero iff `s(p) = t(q)`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lgmodel::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// `(source, target)` per arrow.
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Every edge points from the smaller to the larger vertex.
    Linear,
    /// Sources at even distance from vertex 0, sinks at odd distance.
    Bipartite,
    /// Linear, with edge `i` reversed when bit `i` is set.
    Mask(u64),
}

/// Undirected edges of the Dynkin tree, smaller endpoint first.
pub fn dynkin_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize)>> {
    family.check_rank(rank)?;
    Ok(match family {
        Family::A => (0..rank.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        Family::D => {
            let mut e: Vec<_> = (0..rank - 2).map(|i| (i, i + 1)).collect();
            e.push((rank - 3, rank - 1));
            e
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let mut e: Vec<_> = (0..rank - 2).map(|i| (i, i + 1)).collect();
            e.push((2, rank - 1));
            e
        }
    })
}

pub fn dynkin(family: Family, rank: usize, orientation: &Orientation) -> Result<Quiver> {
    let edges = dynkin_edges(family, rank)?;
    let depth = tree_depths(rank, &edges);
    let arrows = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let flip = match orientation {
                Orientation::Linear => false,
                Orientation::Bipartite => depth[a] % 2 == 1,
                Orientation::Mask(m) => (m >> i) & 1 == 1,
            };
            if flip {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect();
    Ok(Quiver { vertices: rank, arrows })
}

fn tree_depths(vertices: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut depth = vec![usize::MAX; vertices];
    depth[0] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if depth[x] != usize::MAX && depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    changed = true;
                }
            }
        }
    }
    depth
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Basis of the path algebra with its multiplication table.
#[derive(Clone, Debug)]
pub struct PathAlgebraBasis {
    pub quiver: Quiver,
    pub paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl PathAlgebraBasis {
    /// All paths by depth-first search; fails on an oriented cycle.
    pub fn new(quiver: &Quiver) -> Result<Self> {
        let mut paths = Vec::new();
        for v in 0..quiver.vertices {
            let mut stack = vec![Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            }];
            while let Some(p) = stack.pop() {
                if p.arrows.len() > quiver.arrows.len() {
                    return Err(Error::InfinitePathAlgebra);
                }
                for (i, &(s, t)) in quiver.arrows.iter().enumerate().rev() {
                    if s == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        stack.push(Path {
                            source: p.source,
                            target: t,
                            arrows,
                        });
                    }
                }
                paths.push(p);
            }
        }
        paths.sort_by(|a, b| (a.len(), a.source, &a.arrows).cmp(&(b.len(), b.source, &b.arrows)));
        let index = paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
        Ok(Self {
            quiver: quiver.clone(),
            paths,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn find(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    pub fn lazy(&self, v: usize) -> usize {
        self.find(v, &[]).expect("lazy path")
    }

    /// `p·q` (first `q`, then `p`).
    pub fn mul(&self, p: usize, q: usize) -> Option<usize> {
        let (p, q) = (&self.paths[p], &self.paths[q]);
        if q.target != p.source {
            return None;
        }
        let mut arrows = q.arrows.clone();
        arrows.extend(&p.arrows);
        self.find(q.source, &arrows)
    }

    /// The `c` with `q = c·p` (q starts with p), if any.
    pub fn left_quotient(&self, q: usize, p: usize) -> Option<usize> {
        let (qq, pp) = (&self.paths[q], &self.paths[p]);
        if qq.source != pp.source || !qq.arrows.starts_with(&pp.arrows) {
            return None;
        }
        self.find(pp.target, &qq.arrows[pp.len()..])
    }

    /// The `c` with `q = p·c` (q ends with p), if any.
    pub fn right_quotient(&self, q: usize, p: usize) -> Option<usize> {
        let (qq, pp) = (&self.paths[q], &self.paths[p]);
        if qq.target != pp.target || !qq.arrows.ends_with(&pp.arrows) {
            return None;
        }
        let rest = &qq.arrows[..qq.len() - pp.len()];
        self.find(qq.source, rest)
    }
}

/// Number of paths, counted by dynamic programming over the acyclic quiver.
pub fn count_paths(q: &Quiver) -> Result<usize> {
    // paths ending at v = 1 + sum over arrows into v of paths ending at the source
    let mut memo: Vec<Option<usize>> = vec![None; q.vertices];
    fn ending(v: usize, q: &Quiver, memo: &mut Vec<Option<usize>>, depth: usize) -> Result<usize> {
        if depth > q.vertices {
            return Err(Error::InfinitePathAlgebra);
        }
        if let Some(c) = memo[v] {
            return Ok(c);
        }
        let mut c = 1;
        for &(s, t) in &q.arrows {
            if t == v {
                c += ending(s, q, memo, depth + 1)?;
            }
        }
        memo[v] = Some(c);
        Ok(c)
    }
    let mut total = 0;
    for v in 0..q.vertices {
        total += ending(v, q, &mut memo, 0)?;
    }
    Ok(total)
}

/// `B = A ⊕ A^∨`: basis `0..N` are paths, `N..2N` their duals.
#[derive(Clone, Debug)]
pub struct TrivialExtensionAlgebra {
    pub paths: PathAlgebraBasis,
    pub n: usize,
}

impl TrivialExtensionAlgebra {
    pub fn dim(&self) -> usize {
        2 * self.paths.dim()
    }

    pub fn path_count(&self) -> usize {
        self.paths.dim()
    }

    pub fn is_dual(&self, x: usize) -> bool {
        x >= self.path_count()
    }

    pub fn path_of(&self, x: usize) -> &Path {
        &self.paths.paths[x % self.path_count()]
    }

    pub fn degree(&self, x: usize) -> i64 {
        if self.is_dual(x) {
            self.n as i64
        } else {
            0
        }
    }

    pub fn weight(&self, x: usize) -> i64 {
        self.degree(x)
    }

    /// Vertex on the left: `e_L x = x`.
    pub fn left_vertex(&self, x: usize) -> usize {
        let p = self.path_of(x);
        if self.is_dual(x) {
            p.source
        } else {
            p.target
        }
    }

    /// Vertex on the right: `x e_R = x`.
    pub fn right_vertex(&self, x: usize) -> usize {
        let p = self.path_of(x);
        if self.is_dual(x) {
            p.target
        } else {
            p.source
        }
    }

    /// Product of basis elements; structure constants are 0 or 1.
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        let np = self.path_count();
        match (self.is_dual(x), self.is_dual(y)) {
            (false, false) => self.paths.mul(x, y),
            // (p·f)(c) = f(c p): p·q^∨ = c^∨ with q = c·p
            (false, true) => self.paths.left_quotient(y - np, x).map(|c| c + np),
            // (f·p)(c) = f(p c): q^∨·p = c^∨ with q = p·c
            (true, false) => self.paths.right_quotient(x - np, y).map(|c| c + np),
            (true, true) => None,
        }
    }

    /// `⟨x, y⟩ = f(b) + g(a)`.
    pub fn pairing(&self, x: usize, y: usize) -> i64 {
        let np = self.path_count();
        i64::from(self.is_dual(x) != self.is_dual(y) && x % np == y % np)
    }
}

pub fn trivial_extension(q: &Quiver, n: usize) -> Result<TrivialExtensionAlgebra> {
    Ok(TrivialExtensionAlgebra {
        paths: PathAlgebraBasis::new(q)?,
        n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub dimension: usize,
    pub gram_rank: usize,
    pub nondegenerate: bool,
    pub invariant: bool,
    pub graded: bool,
    pub associative: bool,
    pub idempotents_ok: bool,
}

impl FrobeniusReport {
    pub fn ok(&self) -> bool {
        self.nondegenerate && self.invariant && self.graded && self.associative && self.idempotents_ok
    }
}

pub fn frobenius_check(b: &TrivialExtensionAlgebra) -> FrobeniusReport {
    let d = b.dim();
    let gram: Vec<Vec<num_rational::BigRational>> = (0..d)
        .map(|x| (0..d).map(|y| num_rational::BigRational::from_integer(b.pairing(x, y).into())).collect())
        .collect();
    let gram_rank = crate::linalg::dense_rank(&gram);
    let pair_with = |lhs: Option<usize>, z: usize| lhs.map_or(0, |p| b.pairing(p, z));
    let mut invariant = true;
    let mut associative = true;
    for x in 0..d {
        for y in 0..d {
            let xy = b.mul(x, y);
            for z in 0..d {
                let yz = b.mul(y, z);
                if pair_with(xy, z) != yz.map_or(0, |p| b.pairing(x, p)) {
                    invariant = false;
                }
                let left = xy.and_then(|p| b.mul(p, z));
                let right = yz.and_then(|p| b.mul(x, p));
                if left != right {
                    associative = false;
                }
            }
        }
    }
    let graded = (0..d).all(|x| (0..d).all(|y| b.pairing(x, y) == 0 || b.degree(x) + b.degree(y) == b.n as i64));
    // Σ e_v acts as the identity on both sides
    let lazies: Vec<usize> = (0..b.paths.quiver.vertices).map(|v| b.paths.lazy(v)).collect();
    let idempotents_ok = (0..d).all(|x| {
        let left: Vec<usize> = lazies.iter().filter_map(|&e| b.mul(e, x)).collect();
        let right: Vec<usize> = lazies.iter().filter_map(|&e| b.mul(x, e)).collect();
        left == [x] && right == [x]
    });
    FrobeniusReport {
        dimension: d,
        gram_rank,
        nondegenerate: gram_rank == d,
        invariant,
        graded,
        associative,
        idempotents_ok,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Arrow(usize),
    Star(usize),
    Loop(usize),
}

/// Element of the free graded path algebra: word ↦ integer coefficient.
pub type GinzburgElement = BTreeMap<Vec<Generator>, i64>;

#[derive(Clone, Debug)]
pub struct GinzburgPresentation {
    pub quiver: Quiver,
    pub n: usize,
}

impl GinzburgPresentation {
    pub fn generators(&self) -> Vec<Generator> {
        let a = self.quiver.arrows.len();
        (0..a)
            .map(Generator::Arrow)
            .chain((0..a).map(Generator::Star))
            .chain((0..self.quiver.vertices).map(Generator::Loop))
            .collect()
    }

    pub fn degree(&self, g: Generator) -> i64 {
        match g {
            Generator::Arrow(_) => 1,
            Generator::Star(_) | Generator::Loop(_) => 1 - self.n as i64,
        }
    }

    pub fn ends(&self, g: Generator) -> (usize, usize) {
        match g {
            Generator::Arrow(i) => self.quiver.arrows[i],
            Generator::Star(i) => {
                let (s, t) = self.quiver.arrows[i];
                (t, s)
            }
            Generator::Loop(v) => (v, v),
        }
    }

    /// Words are written like products: the last letter is traversed first.
    pub fn composable(&self, word: &[Generator]) -> bool {
        word.windows(2).all(|w| self.ends(w[0]).0 == self.ends(w[1]).1)
    }

    pub fn word_degree(&self, word: &[Generator]) -> i64 {
        word.iter().map(|&g| self.degree(g)).sum()
    }

    /// `dh_v = Σ_{s(g)=v} g^* g − Σ_{t(g)=v} g g^*`; `dg = dg^* = 0`.
    pub fn d_generator(&self, g: Generator) -> GinzburgElement {
        let mut out = GinzburgElement::new();
        if let Generator::Loop(v) = g {
            for (i, &(s, t)) in self.quiver.arrows.iter().enumerate() {
                if s == v {
                    *out.entry(vec![Generator::Star(i), Generator::Arrow(i)]).or_default() += 1;
                }
                if t == v {
                    *out.entry(vec![Generator::Arrow(i), Generator::Star(i)]).or_default() -= 1;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Graded derivation extended from generators.
    pub fn d(&self, x: &GinzburgElement) -> GinzburgElement {
        let mut out = GinzburgElement::new();
        for (word, &c) in x {
            let mut sign_deg = 0;
            for (i, &g) in word.iter().enumerate() {
                let sign = if sign_deg % 2 == 0 { 1 } else { -1 };
                for (dw, dc) in self.d_generator(g) {
                    let mut w = word[..i].to_vec();
                    w.extend(dw);
                    w.extend(&word[i + 1..]);
                    *out.entry(w).or_default() += sign * c * dc;
                }
                sign_deg += self.degree(g);
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// All composable words of length `1..=max_len`.
    pub fn words(&self, max_len: usize) -> Vec<Vec<Generator>> {
        let gens = self.generators();
        let mut layer: Vec<Vec<Generator>> = gens.iter().map(|&g| vec![g]).collect();
        let mut out = layer.clone();
        for _ in 1..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &g in &gens {
                    let mut w2 = w.clone();
                    w2.push(g);
                    if self.composable(&w2) {
                        next.push(w2);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// `d ∘ d = 0` on every composable word up to `max_len`.
    pub fn check_d_squared(&self, max_len: usize) -> bool {
        self.words(max_len).into_iter().all(|w| {
            let x = GinzburgElement::from([(w, 1)]);
            self.d(&self.d(&x)).is_empty()
        })
    }

    /// Every term of `d(w)` is composable with the endpoints of `w` and has degree `deg w + 1`.
    pub fn check_degree(&self, max_len: usize) -> bool {
        self.words(max_len).into_iter().all(|w| {
            let deg = self.word_degree(&w);
            let ends = (self.ends(w[0]).1, self.ends(*w.last().unwrap()).0);
            let x = GinzburgElement::from([(w, 1)]);
            self.d(&x).keys().all(|t| {
                self.composable(t) && self.word_degree(t) == deg + 1 && (self.ends(t[0]).1, self.ends(*t.last().unwrap()).0) == ends
            })
        })
    }
}

pub fn ginzburg(q: &Quiver, n: usize) -> GinzburgPresentation {
    GinzburgPresentation { quiver: q.clone(), n }
}
