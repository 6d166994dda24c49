//! Fock states of blockade-constrained chains, their enumeration, and the
//! hard-rod bijections onto unconstrained spin-1/2 chains.
//!
//! Sites are 0-based everywhere except in [`UpPositions`], which carries the
//! 1-based positions used by the hard-rod formulas `y_i = x_i - (i - 1)`.
//! Bit `j` of a word stores site `j` (least-significant bit is site 0), and a
//! set bit means an up spin (Rydberg excitation).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest chain length whose states fit in one machine word.
pub const MAX_SITES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[serde(alias = "obc")]
    Open,
    #[serde(alias = "pbc")]
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Open => f.write_str("obc"),
            Boundary::Periodic => f.write_str("pbc"),
        }
    }
}

/// Which words a basis admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// No two neighbouring up spins (cyclically under PBC).
    Blockade,
    /// Plain spin-1/2 chain.
    Unconstrained,
}

#[inline]
pub(crate) fn mask(sites: usize) -> u32 {
    if sites >= 32 {
        u32::MAX
    } else {
        (1u32 << sites) - 1
    }
}

/// Cyclic shift by `r` sites: site `j` moves to site `j + r mod sites`.
#[inline]
pub fn translate_word(word: u32, sites: usize, r: usize) -> u32 {
    let r = r % sites;
    if r == 0 {
        return word;
    }
    let m = mask(sites);
    ((word << r) | (word >> (sites - r))) & m
}

/// Site reversal `j -> sites - 1 - j`.
#[inline]
pub fn reflect_word(word: u32, sites: usize) -> u32 {
    word.reverse_bits() >> (32 - sites)
}

/// Whether `word` has no two adjacent up spins under the given boundary.
#[inline]
pub fn is_blockaded(word: u32, sites: usize, boundary: Boundary) -> bool {
    if word & (word >> 1) != 0 {
        return false;
    }
    match boundary {
        Boundary::Open => true,
        Boundary::Periodic => {
            let wrap = (word & 1) != 0 && (word >> (sites - 1)) & 1 != 0;
            !wrap || sites == 1
        }
    }
}

/// A computational-basis state on a chain of `sites` sites.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    bits: u32,
    sites: u8,
}

impl FockState {
    /// Wraps a raw word without checking any constraint.
    pub fn new(bits: u32, sites: usize) -> Self {
        debug_assert!(sites <= MAX_SITES && bits & !mask(sites) == 0);
        FockState {
            bits,
            sites: sites as u8,
        }
    }

    /// Wraps a word, rejecting it unless it satisfies the blockade constraint.
    pub fn blockaded(bits: u32, sites: usize, boundary: Boundary) -> Result<Self> {
        check_sites(sites)?;
        if bits & !mask(sites) != 0 || !is_blockaded(bits, sites, boundary) {
            return Err(Error::ConstraintViolation { word: bits, sites });
        }
        Ok(FockState::new(bits, sites))
    }

    /// Parses a string of `0`/`1` or `↓`/`↑`, leftmost character = site 0.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0u32;
        let mut n = 0usize;
        for c in s.chars() {
            let up = match c {
                '1' | '↑' | 'u' => true,
                '0' | '↓' | 'd' => false,
                _ => return Err(Error::InvalidArgument(format!("bad spin character {c:?}"))),
            };
            if n >= MAX_SITES {
                return Err(Error::SiteCount(n + 1));
            }
            if up {
                bits |= 1 << n;
            }
            n += 1;
        }
        Ok(FockState::new(bits, n))
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn sites(self) -> usize {
        self.sites as usize
    }

    pub fn up_count(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_up(self, site: usize) -> bool {
        (self.bits >> site) & 1 == 1
    }

    pub fn translate(self, r: usize) -> Self {
        FockState::new(translate_word(self.bits, self.sites(), r), self.sites())
    }

    pub fn reflect(self) -> Self {
        FockState::new(reflect_word(self.bits, self.sites()), self.sites())
    }

    pub fn up_positions(self) -> UpPositions {
        let xs = (0..self.sites())
            .filter(|&j| self.is_up(j))
            .map(|j| j + 1)
            .collect();
        UpPositions {
            xs,
            sites: self.sites(),
        }
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockState({self})")
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.sites() {
            f.write_str(if self.is_up(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn check_sites(sites: usize) -> Result<()> {
    if !(2..=MAX_SITES).contains(&sites) {
        return Err(Error::SiteCount(sites));
    }
    Ok(())
}

/// An ordered product-state basis. States are sorted by integer value, so
/// lookups are binary searches.
#[derive(Clone, Debug)]
pub struct FockBasis {
    sites: usize,
    boundary: Boundary,
    constraint: Constraint,
    up: Option<usize>,
    states: Vec<u32>,
}

/// The blockade-constrained basis of a PXP chain.
pub type ConstrainedBasis = FockBasis;

impl FockBasis {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }

    /// Fixed number of up spins, if the basis is restricted to one.
    pub fn up_count(&self) -> Option<usize> {
        self.up
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn words(&self) -> &[u32] {
        &self.states
    }

    pub fn state(&self, index: usize) -> FockState {
        FockState::new(self.states[index], self.sites)
    }

    pub fn index_of(&self, word: u32) -> Option<usize> {
        self.states.binary_search(&word).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = FockState> + '_ {
        self.states
            .iter()
            .map(move |&w| FockState::new(w, self.sites))
    }

    /// Whether `word` belongs to the admissible set of this basis.
    pub fn admits(&self, word: u32) -> bool {
        if word & !mask(self.sites) != 0 {
            return false;
        }
        if self.up.is_some_and(|n| word.count_ones() as usize != n) {
            return false;
        }
        match self.constraint {
            Constraint::Blockade => is_blockaded(word, self.sites, self.boundary),
            Constraint::Unconstrained => true,
        }
    }

    /// Sub-basis with exactly `n` up spins.
    pub fn with_up_count(&self, n: usize) -> FockBasis {
        let states = self
            .states
            .iter()
            .copied()
            .filter(|w| w.count_ones() as usize == n)
            .collect();
        FockBasis {
            up: Some(n),
            states,
            ..*self
        }
    }
}

fn push_blockaded(pos: isize, prev_up: bool, acc: u32, out: &mut Vec<u32>) {
    if pos < 0 {
        out.push(acc);
        return;
    }
    push_blockaded(pos - 1, false, acc, out);
    if !prev_up {
        push_blockaded(pos - 1, true, acc | (1 << pos), out);
    }
}

/// All blockade-respecting words on `sites` sites, ascending.
pub fn enumerate_basis(sites: usize, boundary: Boundary) -> Result<ConstrainedBasis> {
    check_sites(sites)?;
    let mut states = Vec::with_capacity(fibonacci(sites + 2) as usize);
    push_blockaded(sites as isize - 1, false, 0, &mut states);
    if boundary == Boundary::Periodic {
        states.retain(|&w| is_blockaded(w, sites, boundary));
    }
    Ok(FockBasis {
        sites,
        boundary,
        constraint: Constraint::Blockade,
        up: None,
        states,
    })
}

/// Blockade-respecting states with exactly `up` excitations.
pub fn enumerate_sector_n(sites: usize, up: usize, boundary: Boundary) -> Result<Vec<FockState>> {
    check_sites(sites)?;
    if up > sites.div_ceil(2) {
        return Err(Error::InvalidArgument(format!(
            "{up} up spins cannot fit on {sites} sites"
        )));
    }
    let basis = enumerate_basis(sites, boundary)?;
    Ok(basis.with_up_count(up).iter().collect())
}

/// Unconstrained spin-1/2 basis with exactly `up` up spins, ascending.
pub fn spin_basis(sites: usize, up: usize, boundary: Boundary) -> Result<FockBasis> {
    if sites == 0 || sites > MAX_SITES {
        return Err(Error::SiteCount(sites));
    }
    if up > sites {
        return Err(Error::InvalidArgument(format!(
            "{up} up spins on {sites} sites"
        )));
    }
    let mut states = Vec::new();
    if up == 0 {
        states.push(0);
    } else {
        // Gosper's hack walks fixed-popcount words in increasing order.
        let mut w: u64 = (1u64 << up) - 1;
        let limit = 1u64 << sites;
        while w < limit {
            states.push(w as u32);
            let c = w & w.wrapping_neg();
            let r = w + c;
            w = (((r ^ w) >> 2) / c) | r;
        }
    }
    Ok(FockBasis {
        sites,
        boundary,
        constraint: Constraint::Unconstrained,
        up: Some(up),
        states,
    })
}

/// Fibonacci numbers with `F(1) = F(2) = 1`.
pub fn fibonacci(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

/// Lucas numbers `L(n) = F(n-1) + F(n+1)`: the PBC blockade dimension.
pub fn lucas(n: usize) -> u64 {
    if n == 0 {
        return 2;
    }
    fibonacci(n - 1) + fibonacci(n + 1)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Strictly increasing 1-based positions of the up spins of a chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpPositions {
    xs: Vec<usize>,
    sites: usize,
}

impl UpPositions {
    pub fn new(xs: Vec<usize>, sites: usize) -> Result<Self> {
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(format!(
                "positions {xs:?} not strictly increasing"
            )));
        }
        if xs.first().is_some_and(|&x| x < 1) || xs.last().is_some_and(|&x| x > sites) {
            return Err(Error::InvalidArgument(format!(
                "positions {xs:?} outside 1..={sites}"
            )));
        }
        Ok(UpPositions { xs, sites })
    }

    pub fn positions(&self) -> &[usize] {
        &self.xs
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Whether neighbouring rods are at least two sites apart.
    pub fn is_hard_core(&self, boundary: Boundary) -> bool {
        let bulk = self.xs.windows(2).all(|w| w[1] - w[0] >= 2);
        match (boundary, self.xs.first(), self.xs.last()) {
            (Boundary::Periodic, Some(&first), Some(&last)) if self.xs.len() > 1 => {
                bulk && first + self.sites - last >= 2
            }
            _ => bulk,
        }
    }

    pub fn to_state(&self) -> FockState {
        let bits = self.xs.iter().fold(0u32, |acc, &x| acc | (1 << (x - 1)));
        FockState::new(bits, self.sites)
    }
}

/// Hard-rod contraction `y_i = x_i - (i - 1)` from an open blockaded chain of
/// `L` sites onto an unconstrained chain of `L - N + 1` sites.
pub fn hard_rod_map(s: &UpPositions) -> Result<UpPositions> {
    if !s.is_hard_core(Boundary::Open) {
        return Err(Error::ConstraintViolation {
            word: s.to_state().bits(),
            sites: s.sites,
        });
    }
    let n = s.len();
    let ys = s.xs.iter().enumerate().map(|(i, &x)| x - i).collect();
    Ok(UpPositions {
        xs: ys,
        sites: s.sites + 1 - n,
    })
}

/// Inverse of [`hard_rod_map`]: `x_i = y_i + (i - 1)` on `L' + N - 1` sites.
pub fn hard_rod_unmap(s: &UpPositions) -> UpPositions {
    let n = s.len();
    let xs = s.xs.iter().enumerate().map(|(i, &y)| y + i).collect();
    UpPositions {
        xs,
        sites: (s.sites + n).saturating_sub(1),
    }
}

/// Deletes the down spin cyclically to the left of every up spin, giving a
/// word on `L - N` sites with the same number of up spins.
///
/// For the two Néel words (`N = L/2`) every down spin is removed and the
/// image is the all-up word on `L/2` sites.
pub fn cyclic_deletion_map(s: FockState) -> Result<FockState> {
    let l = s.sites();
    if !is_blockaded(s.bits(), l, Boundary::Periodic) {
        return Err(Error::ConstraintViolation {
            word: s.bits(),
            sites: l,
        });
    }
    let mut deleted = 0u32;
    for j in (0..l).filter(|&j| s.is_up(j)) {
        deleted |= 1 << ((j + l - 1) % l);
    }
    let mut out = 0u32;
    let mut k = 0;
    for j in 0..l {
        if deleted >> j & 1 == 1 {
            continue;
        }
        if s.is_up(j) {
            out |= 1 << k;
        }
        k += 1;
    }
    Ok(FockState::new(out, k))
}

/// Right inverse of [`cyclic_deletion_map`] up to translation: inserts a down
/// spin before every up spin.
pub fn cyclic_insertion_map(s: FockState) -> FockState {
    let mut out = 0u32;
    let mut k = 0;
    for j in 0..s.sites() {
        if s.is_up(j) {
            k += 1;
            out |= 1 << k;
        }
        k += 1;
    }
    FockState::new(out, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(sites: usize, bc: Boundary) -> Vec<u32> {
        (0..(1u64 << sites) as u32)
            .filter(|&w| {
                let open = (0..sites - 1).all(|j| (w >> j) & 1 == 0 || (w >> (j + 1)) & 1 == 0);
                let wrap = bc == Boundary::Open || (w & 1 == 0 || (w >> (sites - 1)) & 1 == 0);
                open && wrap
            })
            .collect()
    }

    #[test]
    fn small_bases() {
        let b = enumerate_basis(2, Boundary::Periodic).unwrap();
        assert_eq!(b.words(), &[0b00, 0b01, 0b10]);
        assert_eq!(enumerate_basis(6, Boundary::Open).unwrap().dim(), 21);
        assert_eq!(enumerate_basis(6, Boundary::Periodic).unwrap().dim(), 18);
    }

    #[test]
    fn basis_matches_brute_force() {
        for l in 2..=14 {
            for bc in [Boundary::Open, Boundary::Periodic] {
                let b = enumerate_basis(l, bc).unwrap();
                assert_eq!(b.words(), brute(l, bc).as_slice(), "L={l} {bc}");
            }
            assert_eq!(
                enumerate_basis(l, Boundary::Open).unwrap().dim() as u64,
                fibonacci(l + 2)
            );
            assert_eq!(
                enumerate_basis(l, Boundary::Periodic).unwrap().dim() as u64,
                lucas(l)
            );
        }
    }

    #[test]
    fn dimension_recursion_oracle() {
        // d(1) = 2, d(2) = 3, d(L) = d(L-1) + d(L-2)
        let mut d = vec![0u64, 2, 3];
        for l in 3..=20 {
            d.push(d[l - 1] + d[l - 2]);
        }
        for l in 2..=20 {
            assert_eq!(
                enumerate_basis(l, Boundary::Open).unwrap().dim() as u64,
                d[l]
            );
        }
    }

    #[test]
    fn site_range_is_enforced() {
        assert!(matches!(
            enumerate_basis(1, Boundary::Open),
            Err(Error::SiteCount(1))
        ));
        assert!(matches!(
            enumerate_basis(33, Boundary::Open),
            Err(Error::SiteCount(33))
        ));
        assert!(enumerate_sector_n(6, 4, Boundary::Open).is_err());
    }

    #[test]
    fn fixed_up_sectors() {
        assert_eq!(enumerate_sector_n(6, 2, Boundary::Open).unwrap().len(), 10);
        let vac = enumerate_sector_n(6, 0, Boundary::Open).unwrap();
        assert_eq!(vac, vec![FockState::new(0, 6)]);
        assert_eq!(
            enumerate_sector_n(7, 3, Boundary::Periodic).unwrap().len(),
            7
        );
        for l in 2..=14 {
            for n in 0..=(l as usize).div_ceil(2) {
                let got = enumerate_sector_n(l, n, Boundary::Open).unwrap().len() as u64;
                assert_eq!(got, binomial(l - n + 1, n));
            }
        }
    }

    #[test]
    fn spin_basis_is_sorted_and_complete() {
        let b = spin_basis(6, 3, Boundary::Open).unwrap();
        assert_eq!(b.dim() as u64, binomial(6, 3));
        assert!(b.words().windows(2).all(|w| w[0] < w[1]));
        assert!(b.words().iter().all(|w| w.count_ones() == 3));
        assert_eq!(spin_basis(5, 0, Boundary::Open).unwrap().words(), &[0]);
    }

    #[test]
    fn table_one_rows() {
        let up = |xs: &[usize], l| UpPositions::new(xs.to_vec(), l).unwrap();
        assert_eq!(hard_rod_map(&up(&[4, 6], 6)).unwrap(), up(&[4, 5], 5));
        assert_eq!(hard_rod_map(&up(&[1, 3], 6)).unwrap(), up(&[1, 2], 5));
        assert_eq!(hard_rod_map(&up(&[1], 3)).unwrap(), up(&[1], 3));
        assert_eq!(hard_rod_unmap(&up(&[4, 5], 5)), up(&[4, 6], 6));
        assert!(hard_rod_unmap(&up(&[], 5)).is_empty());
        assert!(hard_rod_map(&up(&[2, 3], 6)).is_err());
    }

    #[test]
    fn parse_and_display() {
        let s = FockState::parse("↓↓↓↑↓↑").unwrap();
        assert_eq!(s.to_string(), "000101");
        assert_eq!(s.up_positions().positions(), &[4, 6]);
    }

    #[test]
    fn deletion_examples() {
        let s = FockState::parse("000101").unwrap();
        assert_eq!(cyclic_deletion_map(s).unwrap().to_string(), "0011");
        let vac = FockState::new(0, 6);
        assert_eq!(cyclic_deletion_map(vac).unwrap(), vac);
        // a flippable up spin becomes an up-down pair
        let s = FockState::parse("00100000").unwrap();
        assert_eq!(cyclic_deletion_map(s).unwrap().to_string(), "0100000");
        let neel = FockState::parse("101010").unwrap();
        assert_eq!(cyclic_deletion_map(neel).unwrap().to_string(), "111");
        let wrap = FockState::parse("100000").unwrap();
        assert_eq!(cyclic_deletion_map(wrap).unwrap().to_string(), "10000");
    }

    #[test]
    fn insertion_inverts_deletion_up_to_translation() {
        for l in 2..=12 {
            for s in enumerate_basis(l, Boundary::Periodic).unwrap().iter() {
                let back = cyclic_insertion_map(cyclic_deletion_map(s).unwrap());
                assert_eq!(back.sites(), l);
                assert!((0..l).any(|r| back.translate(r) == s), "{s}");
            }
        }
    }
}
