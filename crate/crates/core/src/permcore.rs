//! Signed permutations and the exhaustive counting oracle.
//!
//! A signed permutation of `[n]` is written in line notation: the images of
//! `1..=n`, each possibly barred. The image of a barred symbol follows from
//! `σ(ī) = bar(σ(i))`, so these `n` images determine the whole map.
//!
//! Cycles are traced on absolute values; each entry then carries the bar
//! it has where it appears as an image in line notation. For
//! `σ = 4̄ 6 3̄ 5 1 2̄ 9̄ 8 7` this gives `(1 4̄ 5)(2̄ 6)(3̄)(7 9̄)(8)`.
//! Here `(3̄)` means `σ(3) = 3̄`, not a fixed point.
//!
//! Text form writes a bar as a leading `-`, e.g. `-4 6 -3 5 1 -2 -9 8 7`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::ExactInt;

/// Largest `n + r` the oracle enumerates unless told otherwise
/// (`2^8 · 8! = 10,321,920` signed permutations).
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// Hard ceiling; masks are stored in a `u32` and element labels in a `u8`.
pub const MAX_ENUMERATION_SIZE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPoint {
    /// Absolute value, 1-based.
    pub value: u32,
    pub barred: bool,
}

impl SignedPoint {
    pub fn new(value: u32, barred: bool) -> Self {
        Self { value, barred }
    }
}

impl fmt::Display for SignedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "-{}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    image: Vec<SignedPoint>,
}

impl SignedPermutation {
    /// Validates that the absolute values of `image` are a permutation of
    /// `1..=image.len()`.
    pub fn new(image: Vec<SignedPoint>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for p in &image {
            let v = p.value as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Domain("images must be a permutation of 1..=n"));
            }
            seen[v - 1] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (1..=n as u32).map(|v| SignedPoint::new(v, false)).collect(),
        }
    }

    /// `1̄ 2̄ ... n̄`
    pub fn all_barred(n: usize) -> Self {
        Self {
            image: (1..=n as u32).map(|v| SignedPoint::new(v, true)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[SignedPoint] {
        &self.image
    }

    /// Image of a possibly barred point under the full map on `[n] ∪ [n̄]`.
    pub fn apply(&self, p: SignedPoint) -> SignedPoint {
        let q = self.image[p.value as usize - 1];
        SignedPoint::new(q.value, q.barred != p.barred)
    }

    /// No `i` with `σ(i) = i` unbarred.
    pub fn is_derangement_b(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, p)| p.barred || p.value as usize != i + 1)
    }

    pub fn cycles(&self) -> CycleDecomposition {
        cycle_decompose(self)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split_whitespace()
            .map(|tok| {
                let (barred, digits) = match tok.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, tok),
                };
                digits
                    .parse::<u32>()
                    .map(|v| SignedPoint::new(v, barred))
                    .map_err(|_| Error::Domain("line notation expects integers with optional '-' bars"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(image)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    entries: Vec<SignedPoint>,
}

impl Cycle {
    pub fn entries(&self) -> &[SignedPoint] {
        &self.entries
    }

    /// Number of entries; bars do not matter.
    pub fn ord(&self) -> usize {
        self.entries.len()
    }

    pub fn all_barred(&self) -> bool {
        self.entries.iter().all(|p| p.barred)
    }

    /// Number of entries among the special elements `1..=r`.
    pub fn special_count(&self, r: usize) -> usize {
        self.entries.iter().filter(|p| p.value as usize <= r).count()
    }

    pub fn contains_special(&self, r: usize) -> bool {
        self.special_count(r) > 0
    }

    pub fn min_value(&self) -> u32 {
        self.entries[0].value
    }
}

/// Cycles in canonical order: each starts at its smallest absolute value and
/// cycles are sorted by that value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Cycle>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Inverse of [`cycle_decompose`].
    pub fn to_permutation(&self) -> Result<SignedPermutation> {
        let n: usize = self.cycles.iter().map(Cycle::ord).sum();
        let mut image = vec![SignedPoint::new(0, false); n];
        for c in &self.cycles {
            let len = c.entries.len();
            for (t, p) in c.entries.iter().enumerate() {
                let next = c.entries[(t + 1) % len];
                let slot = image
                    .get_mut(p.value as usize - 1)
                    .ok_or(Error::Domain("cycle entry out of range"))?;
                *slot = next;
            }
        }
        SignedPermutation::new(image)
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("(")?;
            for (i, p) in c.entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn cycle_decompose(sigma: &SignedPermutation) -> CycleDecomposition {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut path = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            path.push(x);
            x = sigma.image[x].value as usize - 1;
        }
        let len = path.len();
        // an entry's bar is the bar it carries as the image of its predecessor
        let entries = (0..len)
            .map(|t| {
                let pred = path[(t + len - 1) % len];
                SignedPoint::new(path[t] as u32 + 1, sigma.image[pred].barred)
            })
            .collect();
        cycles.push(Cycle { entries });
    }
    CycleDecomposition { cycles }
}

/// Cycle-length window applied to cycles that are not entirely barred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// every cycle has `ord >= m` (m-associated)
    Associated,
    /// every cycle has `ord <= m` (m-restricted)
    Restricted,
}

impl Mode {
    pub fn admits(self, ord: usize, m: u32) -> bool {
        match self {
            Mode::Associated => ord >= m as usize,
            Mode::Restricted => ord <= m as usize,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Associated => "assoc",
            Mode::Restricted => "restr",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assoc" | "associated" => Ok(Mode::Associated),
            "restr" | "restricted" => Ok(Mode::Restricted),
            _ => Err(Error::Domain("mode must be 'assoc' or 'restr'")),
        }
    }
}

/// Whether `d` is counted by the oracle: every cycle is inside the window
/// or entirely barred, and the specials `1..=r` sit in distinct cycles.
pub fn admissible(d: &CycleDecomposition, r: usize, mode: Mode, m: u32) -> bool {
    d.cycles.iter().all(|c| {
        (mode.admits(c.ord(), m) || c.all_barred()) && c.special_count(r) <= 1
    })
}

fn check_bound(size: usize, bound: usize) -> Result<()> {
    let bound = bound.min(MAX_ENUMERATION_SIZE);
    if size > bound {
        Err(Error::ResourceGuard { size, bound })
    } else {
        Ok(())
    }
}

/// Iterator over all `2^n n!` signed permutations of `[n]`.
#[derive(Clone, Debug)]
pub struct SignedPermutations {
    perm: Vec<u32>,
    mask: u32,
    done: bool,
}

/// All signed permutations of `[n]`, guarded by `bound`.
pub fn enumerate_signed(n: usize, bound: usize) -> Result<SignedPermutations> {
    check_bound(n, bound)?;
    Ok(SignedPermutations {
        perm: (1..=n as u32).collect(),
        mask: 0,
        done: false,
    })
}

impl Iterator for SignedPermutations {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.done {
            return None;
        }
        let image = self
            .perm
            .iter()
            .enumerate()
            .map(|(i, &v)| SignedPoint::new(v, self.mask >> i & 1 == 1))
            .collect();
        self.mask += 1;
        if self.mask >> self.perm.len() != 0 {
            self.mask = 0;
            self.done = !next_permutation(&mut self.perm);
        }
        Some(SignedPermutation { image })
    }
}

/// Advances `v` to the next permutation in lexicographic order; returns
/// false (leaving `v` sorted) after the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One exhaustive count: signed permutations of `[n + r]` admitted by
/// [`admissible`], tallied by number of cycles minus `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleQuery {
    pub n: usize,
    pub r: usize,
    pub mode: Mode,
    pub m: u32,
}

impl OracleQuery {
    pub fn new(n: usize, r: usize, mode: Mode, m: u32) -> Self {
        Self { n, r, mode, m }
    }

    pub fn size(&self) -> usize {
        self.n + self.r
    }

    /// Number of independent partitions (the possible images of element 1).
    pub fn partitions(&self) -> usize {
        self.size().max(1)
    }

    /// Counts over all signed permutations, indexed by `k = cycles - r`.
    pub fn counts(&self, bound: usize) -> Result<Vec<ExactInt>> {
        check_bound(self.size(), bound)?;
        let mut total = vec![0u64; self.n + 1];
        for p in 0..self.partitions() {
            for (t, c) in total.iter_mut().zip(self.count_partition_raw(p)) {
                *t += c;
            }
        }
        Ok(total.into_iter().map(ExactInt::from).collect())
    }

    /// Counts restricted to signed permutations whose element 1 maps to
    /// absolute value `part + 1`. Summing over all partitions gives
    /// [`counts`](Self::counts).
    pub fn count_partition(&self, part: usize, bound: usize) -> Result<Vec<ExactInt>> {
        check_bound(self.size(), bound)?;
        if part >= self.partitions() {
            return Err(Error::Domain("partition index out of range"));
        }
        Ok(self.count_partition_raw(part).into_iter().map(ExactInt::from).collect())
    }

    fn count_partition_raw(&self, part: usize) -> Vec<u64> {
        let size = self.size();
        let mut counts = vec![0u64; self.n + 1];
        if size == 0 {
            counts[0] = 1;
            return counts;
        }
        let mut perm: Vec<u8> = (0..size as u8).collect();
        perm.swap(0, part);
        perm[1..].sort_unstable();
        let mut cycle_masks: Vec<u32> = Vec::with_capacity(size);
        let mut cycle_lens: Vec<usize> = Vec::with_capacity(size);
        loop {
            cycle_masks.clear();
            cycle_lens.clear();
            let mut seen = 0u32;
            let mut specials_ok = true;
            for start in 0..size {
                if seen >> start & 1 == 1 {
                    continue;
                }
                let (mut cm, mut len, mut specials) = (0u32, 0usize, 0usize);
                let mut x = start;
                while seen >> x & 1 == 0 {
                    seen |= 1 << x;
                    cm |= 1 << x;
                    len += 1;
                    if x < self.r {
                        specials += 1;
                    }
                    x = perm[x] as usize;
                }
                specials_ok &= specials <= 1;
                cycle_masks.push(cm);
                cycle_lens.push(len);
            }
            let cycles = cycle_masks.len();
            if specials_ok && cycles >= self.r && cycles - self.r <= self.n {
                let k = cycles - self.r;
                // bit i of `bars` set means σ(i) is barred; a cycle is entirely
                // barred exactly when every image along it is
                for bars in 0u32..(1u32 << size) {
                    let ok = cycle_masks.iter().zip(&cycle_lens).all(|(&cm, &len)| {
                        self.mode.admits(len, self.m) || bars & cm == cm
                    });
                    if ok {
                        counts[k] += 1;
                    }
                }
            }
            if !next_permutation(&mut perm[1..]) {
                break;
            }
        }
        counts
    }
}

/// Number of admissible signed permutations of `[n + r]` with `k + r`
/// cycles.
pub fn oracle_triangle(n: usize, r: usize, k: usize, mode: Mode, m: u32, bound: usize) -> Result<ExactInt> {
    let counts = OracleQuery::new(n, r, mode, m).counts(bound)?;
    Ok(counts.get(k).cloned().unwrap_or_else(ExactInt::zero))
}

/// Sum of [`oracle_triangle`] over `k`.
pub fn oracle_total(n: usize, r: usize, mode: Mode, m: u32, bound: usize) -> Result<ExactInt> {
    Ok(OracleQuery::new(n, r, mode, m).counts(bound)?.into_iter().sum())
}

/// Reference count by decomposing every signed permutation; slow, used to
/// check [`OracleQuery`].
pub fn oracle_counts_by_decomposition(n: usize, r: usize, mode: Mode, m: u32, bound: usize) -> Result<Vec<ExactInt>> {
    let mut counts = vec![0u64; n + 1];
    for sigma in enumerate_signed(n + r, bound)? {
        let d = sigma.cycles();
        if admissible(&d, r, mode, m) && d.len() >= r && d.len() - r <= n {
            counts[d.len() - r] += 1;
        }
    }
    Ok(counts.into_iter().map(ExactInt::from).collect())
}

impl SignedPermutation {
    /// `τ σ τ^{-1}` for a relabeling `τ` of `[n]` given as `tau[i-1] = τ(i)`.
    pub fn relabel(&self, tau: &[u32]) -> Result<Self> {
        let n = self.len();
        if tau.len() != n {
            return Err(Error::Domain("relabeling has the wrong length"));
        }
        let mut image = vec![SignedPoint::new(0, false); n];
        for (i, p) in self.image.iter().enumerate() {
            let from = tau[i] as usize;
            let to = tau[p.value as usize - 1];
            *image
                .get_mut(from.wrapping_sub(1))
                .ok_or(Error::Domain("relabeling out of range"))? = SignedPoint::new(to, p.barred);
        }
        Self::new(image)
    }
}

pub fn format_counts(counts: &[ExactInt]) -> String {
    let mut s = String::new();
    for (i, c) in counts.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&alloc::format!("{c}"));
    }
    s
}
