use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Row {
    Top,
    Bottom,
}

/// A dot of a diagram: row and 1-based position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint(pub Row, pub usize);

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = match self.0 {
            Row::Top => "top",
            Row::Bottom => "bottom",
        };
        write!(f, "[\"{row}\",{}]", self.1)
    }
}

/// Element of the walled Brauer monoid on `n_left | n_right` strands.
///
/// Stored as a partner table over the `2L` dots (`L = n_left + n_right`):
/// top dot `i` is index `i`, bottom dot `i` is `L + i` (0-based). The table is
/// its own canonical form, so derived equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalledBrauerDiagram {
    n_left: usize,
    n_right: usize,
    partner: Vec<usize>,
}

/// A diagram with the number of closed loops a composition produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDiagram {
    pub diagram: WalledBrauerDiagram,
    pub loop_count: usize,
}

impl WalledBrauerDiagram {
    /// Validates a pair list (1-based positions).
    pub fn from_pairs(n_left: usize, n_right: usize, pairs: &[(Endpoint, Endpoint)]) -> Result<Self> {
        let len = n_left + n_right;
        let mut partner = vec![usize::MAX; 2 * len];
        let index = |e: &Endpoint, which: usize| -> Result<usize> {
            if e.1 == 0 || e.1 > len {
                return Err(Error::Diagram(format!("pair {which}: position {} outside 1..={len}", e.1)));
            }
            Ok(match e.0 {
                Row::Top => e.1 - 1,
                Row::Bottom => len + e.1 - 1,
            })
        };
        for (which, (a, b)) in pairs.iter().enumerate() {
            let describe = || format!("pair {} [{a},{b}]", which + 1);
            let (x, y) = (index(a, which + 1)?, index(b, which + 1)?);
            if x == y {
                return Err(Error::Diagram(format!("{} joins a dot to itself", describe())));
            }
            if partner[x] != usize::MAX || partner[y] != usize::MAX {
                return Err(Error::Diagram(format!("{} reuses a dot", describe())));
            }
            let left = |e: &Endpoint| e.1 <= n_left;
            if a.0 == b.0 && left(a) == left(b) {
                return Err(Error::Diagram(format!("{} is a same-row arc that does not cross the wall", describe())));
            }
            if a.0 != b.0 && left(a) != left(b) {
                return Err(Error::Diagram(format!("{} is a through-strand crossing the wall", describe())));
            }
            partner[x] = y;
            partner[y] = x;
        }
        if let Some(free) = partner.iter().position(|&p| p == usize::MAX) {
            let e = if free < len { Endpoint(Row::Top, free + 1) } else { Endpoint(Row::Bottom, free - len + 1) };
            return Err(Error::Diagram(format!("dot {e} is not paired")));
        }
        Ok(Self { n_left, n_right, partner })
    }

    pub fn identity(n_left: usize, n_right: usize) -> Self {
        let len = n_left + n_right;
        let partner = (0..2 * len).map(|x| if x < len { x + len } else { x - len }).collect();
        Self { n_left, n_right, partner }
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn len(&self) -> usize {
        self.n_left + self.n_right
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn endpoint(&self, x: usize) -> Endpoint {
        let len = self.len();
        if x < len {
            Endpoint(Row::Top, x + 1)
        } else {
            Endpoint(Row::Bottom, x - len + 1)
        }
    }

    /// Canonical sorted pair list, each pair ordered (smaller dot first, top before bottom).
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        (0..self.partner.len())
            .filter(|&x| x < self.partner[x])
            .map(|x| (self.endpoint(x), self.endpoint(self.partner[x])))
            .collect()
    }

    /// Partner table over dots `0..2L` (top `i` ↦ `i`, bottom `i` ↦ `L + i`).
    pub fn partner_table(&self) -> &[usize] {
        &self.partner
    }

    /// Stacks `self` on top of `other`; `self`'s bottom row is glued to `other`'s top row.
    pub fn compose(&self, other: &Self) -> Result<ScaledDiagram> {
        if (self.n_left, self.n_right) != (other.n_left, other.n_right) {
            return Err(Error::Diagram(format!(
                "cannot compose shapes ({},{}) and ({},{})",
                self.n_left, self.n_right, other.n_left, other.n_right
            )));
        }
        let len = self.len();
        // nodes: 0..L top of self, L..2L middle, 2L..3L bottom of other
        let mut uf = UnionFind::new(3 * len);
        for x in 0..2 * len {
            let y = self.partner[x];
            if x < y {
                uf.union(x, y);
            }
            let (u, v) = (x + len, other.partner[x] + len);
            if u < v {
                uf.union(u, v);
            }
        }
        let mut outer_of_root: Vec<Vec<usize>> = vec![Vec::new(); 3 * len];
        for node in (0..len).chain(2 * len..3 * len) {
            outer_of_root[uf.find(node)].push(node);
        }
        let mut partner = vec![usize::MAX; 2 * len];
        let to_dot = |node: usize| if node < len { node } else { node - len };
        let mut loops = 0;
        let mut seen_root = vec![false; 3 * len];
        for node in 0..3 * len {
            let root = uf.find(node);
            if std::mem::replace(&mut seen_root[root], true) {
                continue;
            }
            match outer_of_root[root].as_slice() {
                [] => loops += 1,
                [a, b] => {
                    let (x, y) = (to_dot(*a), to_dot(*b));
                    partner[x] = y;
                    partner[y] = x;
                }
                other => unreachable!("strand component with {} outer dots", other.len()),
            }
        }
        Ok(ScaledDiagram { diagram: Self { n_left: self.n_left, n_right: self.n_right, partner }, loop_count: loops })
    }

    /// Partial transpose on the right block: swaps the rows of every dot right of the wall.
    fn flip_right(&self, x: usize) -> usize {
        let len = self.len();
        let pos = x % len;
        if pos < self.n_left {
            x
        } else if x < len {
            x + len
        } else {
            x - len
        }
    }

    /// The bijection with `S_{n+m}`: after flipping the right block every strand
    /// runs top to bottom, and top `i` meets bottom `π(i)`.
    pub fn to_permutation(&self) -> Permutation {
        let len = self.len();
        let images = (0..len)
            .map(|i| {
                let actual = self.flip_right(i);
                let other = self.flip_right(self.partner[actual]);
                other - len
            })
            .collect();
        Permutation::new(images).expect("flipped walled diagram is a permutation")
    }

    pub fn from_permutation(p: &Permutation, n_left: usize, n_right: usize) -> Result<Self> {
        let len = n_left + n_right;
        if p.len() != len {
            return Err(Error::Diagram(format!("permutation on {} points for {len} strands", p.len())));
        }
        let shell = Self::identity(n_left, n_right);
        let mut partner = vec![0; 2 * len];
        for i in 0..len {
            let x = shell.flip_right(i);
            let y = shell.flip_right(len + p.apply(i));
            partner[x] = y;
            partner[y] = x;
        }
        Ok(Self { n_left, n_right, partner })
    }

    /// Uniformly random diagram.
    pub fn random<R: Rng + ?Sized>(n_left: usize, n_right: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n_left + n_right).collect();
        images.shuffle(rng);
        let p = Permutation::new(images).expect("shuffled identity");
        Self::from_permutation(&p, n_left, n_right).expect("matching size")
    }

    /// All `(n+m)!` diagrams.
    pub fn all(n_left: usize, n_right: usize) -> Vec<Self> {
        Permutation::all(n_left + n_right)
            .iter()
            .map(|p| Self::from_permutation(p, n_left, n_right).expect("matching size"))
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// JSON wire form: `{"n_left": 2, "n_right": 2, "pairs": [[["top",1],["bottom",2]], …]}`.
#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n_left: usize,
    n_right: usize,
    pairs: Vec<[(Row, usize); 2]>,
}

impl Serialize for WalledBrauerDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            n_left: self.n_left,
            n_right: self.n_right,
            pairs: self.pairs().into_iter().map(|(a, b)| [(a.0, a.1), (b.0, b.1)]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WalledBrauerDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(d)?;
        let pairs: Vec<(Endpoint, Endpoint)> =
            raw.pairs.iter().map(|[a, b]| (Endpoint(a.0, a.1), Endpoint(b.0, b.1))).collect();
        Self::from_pairs(raw.n_left, raw.n_right, &pairs).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for WalledBrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "B({}|{}) {}", self.n_left, self.n_right, parts.join(" "))
    }
}
