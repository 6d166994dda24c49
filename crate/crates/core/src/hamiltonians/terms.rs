//! Sparse product-of-site-operators representation used to assemble every
//! dense operator matrix.

use num_complex::Complex64 as C64;

use crate::basis::Boundary;

/// Single-site operator in the `σ^z`-eigenbasis (bit set = up).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteOp {
    /// `P^↓ = (1 − σ^z)/2`.
    Down,
    /// `P^↑ = (1 + σ^z)/2`.
    Up,
    Raise,
    Lower,
    X,
    Y,
    Z,
}

impl SiteOp {
    pub fn dagger(self) -> SiteOp {
        match self {
            SiteOp::Raise => SiteOp::Lower,
            SiteOp::Lower => SiteOp::Raise,
            other => other,
        }
    }

    /// Action on one bit: `None` if the matrix element vanishes, otherwise the
    /// new bit value and amplitude.
    #[inline]
    fn act(self, up: bool) -> Option<(bool, C64)> {
        let one = C64::new(1.0, 0.0);
        match (self, up) {
            (SiteOp::Down, false) | (SiteOp::Up, true) => Some((up, one)),
            (SiteOp::Down, true) | (SiteOp::Up, false) => None,
            (SiteOp::Raise, false) => Some((true, one)),
            (SiteOp::Lower, true) => Some((false, one)),
            (SiteOp::Raise, true) | (SiteOp::Lower, false) => None,
            (SiteOp::X, b) => Some((!b, one)),
            (SiteOp::Y, false) => Some((true, C64::new(0.0, 1.0))),
            (SiteOp::Y, true) => Some((false, C64::new(0.0, -1.0))),
            (SiteOp::Z, b) => Some((b, if b { one } else { -one })),
        }
    }

    fn is_projector_down(self) -> bool {
        self == SiteOp::Down
    }
}

/// `coeff · Π_k op_k(j + offset_k)`, written left to right as an operator
/// product; it acts on kets from the right.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: C64,
    pub ops: Vec<(isize, SiteOp)>,
}

impl Term {
    pub fn new(coeff: impl Into<C64>, ops: &[(isize, SiteOp)]) -> Self {
        Term {
            coeff: coeff.into(),
            ops: ops.to_vec(),
        }
    }

    pub fn dagger(&self) -> Term {
        Term {
            coeff: self.coeff.conj(),
            ops: self
                .ops
                .iter()
                .rev()
                .map(|&(o, op)| (o, op.dagger()))
                .collect(),
        }
    }

    /// Places the term at site `j`. Under open boundaries a missing
    /// `P^↓` is treated as an absent (down) spin and dropped; any other
    /// operator falling off the chain removes the term.
    fn place(&self, j: usize, sites: usize, boundary: Boundary) -> Option<Vec<(usize, SiteOp)>> {
        let mut placed = Vec::with_capacity(self.ops.len());
        for &(offset, op) in &self.ops {
            let s = j as isize + offset;
            match boundary {
                Boundary::Periodic => placed.push((s.rem_euclid(sites as isize) as usize, op)),
                Boundary::Open => {
                    if (0..sites as isize).contains(&s) {
                        placed.push((s as usize, op));
                    } else if !op.is_projector_down() {
                        return None;
                    }
                }
            }
        }
        Some(placed)
    }
}

/// Anything that maps a basis word to a list of `(word, amplitude)` images.
pub trait LocalOperator: Sync {
    fn apply(&self, word: u32, out: &mut Vec<(u32, C64)>);
}

#[derive(Clone, Debug)]
struct PlacedTerm {
    coeff: C64,
    ops: Vec<(usize, SiteOp)>,
}

/// A sum of product terms with explicit site placement.
#[derive(Clone, Debug)]
pub struct LatticeSum {
    sites: usize,
    boundary: Boundary,
    placed: Vec<PlacedTerm>,
}

impl LatticeSum {
    pub fn new(sites: usize, boundary: Boundary) -> Self {
        LatticeSum {
            sites,
            boundary,
            placed: Vec::new(),
        }
    }

    /// Adds `Σ_j term(j)` over every site of the chain.
    pub fn add_translated(&mut self, term: &Term) -> &mut Self {
        for j in 0..self.sites {
            self.add_at(j, term);
        }
        self
    }

    /// Adds `Σ_j term(j) + H.c.`.
    pub fn add_translated_with_hc(&mut self, term: &Term) -> &mut Self {
        self.add_translated(term);
        self.add_translated(&term.dagger())
    }

    /// Adds the term anchored at site `j` only.
    pub fn add_at(&mut self, j: usize, term: &Term) -> &mut Self {
        if let Some(ops) = term.place(j, self.sites, self.boundary) {
            self.placed.push(PlacedTerm {
                coeff: term.coeff,
                ops,
            });
        }
        self
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }
}

impl LocalOperator for LatticeSum {
    fn apply(&self, word: u32, out: &mut Vec<(u32, C64)>) {
        'terms: for t in &self.placed {
            let mut w = word;
            let mut amp = t.coeff;
            for &(site, op) in t.ops.iter().rev() {
                let bit = (w >> site) & 1 == 1;
                match op.act(bit) {
                    None => continue 'terms,
                    Some((nb, a)) => {
                        if nb != bit {
                            w ^= 1 << site;
                        }
                        amp *= a;
                    }
                }
            }
            out.push((w, amp));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SiteOp::*;

    fn images(op: &LatticeSum, w: u32) -> Vec<(u32, C64)> {
        let mut v = Vec::new();
        op.apply(w, &mut v);
        v
    }

    #[test]
    fn pauli_algebra_on_one_site() {
        // σ^+ σ^- = P^↑, Y = -i Z X
        let mut a = LatticeSum::new(3, Boundary::Open);
        a.add_at(1, &Term::new(1.0, &[(0, Raise), (0, Lower)]));
        assert_eq!(images(&a, 0b010), vec![(0b010, C64::new(1.0, 0.0))]);
        assert!(images(&a, 0b000).is_empty());
        let mut y = LatticeSum::new(1, Boundary::Open);
        y.add_at(0, &Term::new(1.0, &[(0, Y)]));
        assert_eq!(images(&y, 0), vec![(1, C64::new(0.0, 1.0))]);
    }

    #[test]
    fn open_edges_drop_down_projectors_only() {
        let tilde_x = Term::new(1.0, &[(-1, Down), (0, X), (1, Down)]);
        let mut a = LatticeSum::new(4, Boundary::Open);
        a.add_translated(&tilde_x);
        assert_eq!(a.len(), 4);
        let hop = Term::new(1.0, &[(0, Raise), (1, Lower)]);
        let mut b = LatticeSum::new(4, Boundary::Open);
        b.add_translated(&hop);
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn dagger_reverses_and_conjugates() {
        let t = Term::new(C64::new(0.0, 2.0), &[(0, Raise), (1, Lower), (2, Z)]);
        let d = t.dagger();
        assert_eq!(d.coeff, C64::new(0.0, -2.0));
        assert_eq!(d.ops, vec![(2, Z), (1, Raise), (0, Lower)]);
    }
}
