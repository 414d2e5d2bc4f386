//! Permutation groups on `0..degree` via a deterministic Schreier–Sims.

use num_bigint::BigUint;
use num_traits::One;

pub type Perm = Vec<u32>;

/// `a` followed by `b`.
pub fn then(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

pub fn identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

pub fn is_identity(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

struct Level {
    base: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// `u_p` with `base ↦ p`, and its inverse.
    trans: Vec<Option<Box<(Perm, Perm)>>>,
}

/// Base and strong generating set. The base starts with the requested
/// prefix, so `stabilizer_generators(1)` generates the stabilizer of the
/// first prefix point.
pub struct StabChain {
    degree: usize,
    prefix: Vec<u32>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm], prefix: &[u32]) -> Self {
        let mut c = Self {
            degree,
            prefix: prefix.to_vec(),
            levels: Vec::new(),
        };
        for _ in prefix {
            c.push_level(None);
        }
        for g in gens {
            if let Some((r, j)) = c.sift(g.clone(), 0) {
                c.add(j, r);
            }
        }
        c
    }

    fn push_level(&mut self, moved_by: Option<&Perm>) {
        let i = self.levels.len();
        let base = match self.prefix.get(i) {
            Some(&b) => b,
            None => {
                let g = moved_by.expect("new level needs a moving element");
                g.iter()
                    .enumerate()
                    .find(|&(x, &y)| x as u32 != y)
                    .map(|(x, _)| x as u32)
                    .expect("non-identity")
            }
        };
        let mut trans = vec![None; self.degree];
        trans[base as usize] = Some(Box::new((identity(self.degree), identity(self.degree))));
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            trans,
        });
    }

    /// Strips `g` through levels `from..`; `None` if it becomes the identity,
    /// else the residue and the level where it stopped.
    fn sift(&self, mut g: Perm, from: usize) -> Option<(Perm, usize)> {
        for j in from..self.levels.len() {
            let lv = &self.levels[j];
            let p = g[lv.base as usize] as usize;
            match &lv.trans[p] {
                None => return Some((g, j)),
                Some(t) => g = then(&g, &t.1),
            }
        }
        if is_identity(&g) {
            None
        } else {
            Some((g, self.levels.len()))
        }
    }

    /// Adds a strong generator fixing the first `j` base points; it joins
    /// the generating sets of levels `0..=j`.
    fn add(&mut self, j: usize, g: Perm) {
        if j == self.levels.len() {
            self.push_level(Some(&g));
        }
        for lv in &mut self.levels[..=j] {
            lv.gens.push(g.clone());
        }
        for i in (0..=j).rev() {
            let s_new = self.levels[i]
                .gens
                .iter()
                .rposition(|h| *h == g)
                .expect("just pushed");
            let old = self.levels[i].orbit.len();
            for k in 0..old {
                self.pair(i, k, s_new);
            }
            let mut k = old;
            while k < self.levels[i].orbit.len() {
                let mut s = 0;
                while s < self.levels[i].gens.len() {
                    self.pair(i, k, s);
                    s += 1;
                }
                k += 1;
            }
        }
    }

    fn pair(&mut self, i: usize, k: usize, s: usize) {
        let lv = &self.levels[i];
        let q = lv.orbit[k] as usize;
        let sg = &lv.gens[s];
        let p = sg[q] as usize;
        let uq = &lv.trans[q]
            .as_ref()
            .expect("orbit point has a transversal")
            .0;
        if lv.trans[p].is_none() {
            let up = then(uq, sg);
            let inv = inverse(&up);
            let lv = &mut self.levels[i];
            lv.trans[p] = Some(Box::new((up, inv)));
            lv.orbit.push(p as u32);
            return;
        }
        let h = then(&then(uq, sg), &lv.trans[p].as_ref().expect("checked").1);
        if is_identity(&h) {
            return;
        }
        if let Some((r, j)) = self.sift(h, i + 1) {
            self.add(j, r);
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Generators of the pointwise stabilizer of the first `i` base points.
    pub fn stabilizer_generators(&self, i: usize) -> Vec<Perm> {
        self.levels.get(i).map_or_else(Vec::new, |l| l.gens.clone())
    }

    /// Orbit of the `i`-th base point under the stabilizer of the earlier ones.
    pub fn basic_orbit(&self, i: usize) -> &[u32] {
        self.levels.get(i).map_or(&[], |l| &l.orbit)
    }

    /// An element mapping `p` to the `i`-th base point, if `p` is in that basic orbit.
    pub fn to_base(&self, i: usize, p: u32) -> Option<&Perm> {
        self.levels.get(i)?.trans[p as usize].as_ref().map(|t| &t.1)
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        self.sift(g.to_vec(), 0).is_none()
    }
}
