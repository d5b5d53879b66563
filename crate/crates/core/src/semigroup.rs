//! Exact membership and invariants of numerical semigroups given by a finite
//! generating set.
//!
//! The Frobenius number and genus come from the Apéry table of the smallest
//! generator, computed as single-source shortest paths over the residues
//! modulo that generator. Membership and minimality use bit-packed tables.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::Ratio;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Sorted, deduplicated positive generators with their gcd cached
/// (gcd of the empty set is 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorSet {
    elements: Vec<u64>,
    gcd: u64,
}

impl GeneratorSet {
    pub fn new(raw: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut elements: Vec<u64> = raw.into_iter().collect();
        if elements.contains(&0) {
            return Err(Error::InvalidGenerator);
        }
        elements.sort_unstable();
        elements.dedup();
        let gcd = elements.iter().fold(0, |g, &a| gcd(g, a));
        Ok(Self { elements, gcd })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Adds one generator, keeping the set canonical.
    pub fn insert(&mut self, a: u64) -> Result<()> {
        if a == 0 {
            return Err(Error::InvalidGenerator);
        }
        if let Err(pos) = self.elements.binary_search(&a) {
            self.elements.insert(pos, a);
            self.gcd = gcd(self.gcd, a);
        }
        Ok(())
    }

    /// The semigroup is cofinite in ℕ exactly when the gcd is 1.
    pub fn is_cofinite(&self) -> bool {
        self.gcd == 1
    }

    fn require_cofinite(&self) -> Result<()> {
        if self.is_cofinite() {
            Ok(())
        } else {
            Err(Error::NotCofinite { gcd: self.gcd })
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.elements)
    }
}

pub(crate) fn write_list(f: &mut impl fmt::Write, xs: &[u64]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub fn normalize_generators(raw: &[u64]) -> Result<GeneratorSet> {
    GeneratorSet::new(raw.iter().copied())
}

/// Bit `x` is set iff `x` is a nonnegative integer combination of `gens`,
/// for `0 <= x <= limit`. Works for any gcd.
pub fn membership_table(gens: &GeneratorSet, limit: u64) -> BitSet {
    let len = usize::try_from(limit).expect("limit exceeds address space") + 1;
    let mut table = BitSet::new(len);
    table.insert(0);
    for &a in gens.elements() {
        if a as usize >= len {
            break;
        }
        table.close_under_step(a as usize);
    }
    table
}

/// For each residue `i` modulo `modulus`, the least semigroup element
/// congruent to `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperyTable {
    modulus: u64,
    entries: Vec<u64>,
}

impl AperyTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn max_entry(&self) -> u64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn frobenius(&self) -> i64 {
        self.max_entry() as i64 - self.modulus as i64
    }

    /// Residue class `i` holds `entries[i] / m` gaps.
    pub fn genus(&self) -> u64 {
        self.entries.iter().map(|&w| w / self.modulus).sum()
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.entries[(x % self.modulus) as usize]
    }
}

pub fn apery_set(gens: &GeneratorSet, m: u64) -> Result<AperyTable> {
    if m == 0 {
        return Err(Error::InvalidArgument("Apéry modulus must be positive".into()));
    }
    gens.require_cofinite()?;
    if !gens.contains(m) && !membership_table(gens, m).contains(m as usize) {
        return Err(Error::NotAMember { m });
    }
    let m_us = usize::try_from(m).map_err(|_| Error::InvalidArgument(format!("modulus {m} too large")))?;

    // Only the smallest generator in each nonzero residue class matters.
    let mut best = vec![u64::MAX; m_us];
    for &a in gens.elements() {
        let r = (a % m) as usize;
        if r != 0 && a < best[r] {
            best[r] = a;
        }
    }
    let edges: Vec<(usize, u64)> = best
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a != u64::MAX)
        .map(|(r, &a)| (r, a))
        .collect();

    let mut dist = vec![u64::MAX; m_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(r, a) in &edges {
            let mut w = v + r;
            if w >= m_us {
                w -= m_us;
            }
            let nd = d.saturating_add(a);
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Reverse((nd, w)));
            }
        }
    }
    if dist.contains(&u64::MAX) {
        return Err(Error::InvariantViolation(
            "unreachable residue with gcd 1".into(),
        ));
    }
    Ok(AperyTable {
        modulus: m,
        entries: dist,
    })
}

fn smallest_generator(gens: &GeneratorSet) -> Result<u64> {
    gens.require_cofinite()?;
    gens.min().ok_or(Error::NotCofinite { gcd: 0 })
}

/// Largest gap, or −1 when the semigroup is all of ℕ.
pub fn frobenius(gens: &GeneratorSet) -> Result<i64> {
    Ok(apery_set(gens, smallest_generator(gens)?)?.frobenius())
}

pub fn genus(gens: &GeneratorSet) -> Result<u64> {
    Ok(apery_set(gens, smallest_generator(gens)?)?.genus())
}

/// The unique minimal generating set of `⟨gens⟩`.
///
/// Every minimal generator is one of `gens`; an element `a` is dropped when
/// `a = x + y` for nonzero members `x`, `y`.
pub fn minimal_generators(gens: &GeneratorSet) -> Result<GeneratorSet> {
    gens.require_cofinite()?;
    let max = gens.max().ok_or(Error::NotCofinite { gcd: 0 })?;
    let table = membership_table(gens, max);
    let minimal = gens
        .elements()
        .iter()
        .copied()
        .filter(|&a| {
            let a = a as usize;
            !table
                .iter_ones()
                .skip(1)
                .take_while(|&x| 2 * x <= a)
                .any(|x| table.contains(a - x))
        })
        .collect::<Vec<_>>();
    GeneratorSet::new(minimal)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupInvariants {
    pub frobenius: i64,
    pub genus: u64,
    pub embedding_dimension: usize,
    pub minimal_generators: GeneratorSet,
}

pub fn invariants(gens: &GeneratorSet) -> Result<SemigroupInvariants> {
    let table = apery_set(gens, smallest_generator(gens)?)?;
    let minimal_generators = minimal_generators(gens)?;
    Ok(SemigroupInvariants {
        frobenius: table.frobenius(),
        genus: table.genus(),
        embedding_dimension: minimal_generators.len(),
        minimal_generators,
    })
}

/// Both sides of Wilf's inequality `(F + 1 − g)/(F + 1) ≥ 1/e`, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilfReport {
    pub holds: bool,
    pub lhs: Ratio<i128>,
    pub rhs: Ratio<i128>,
}

/// Reports rather than asserts. For ℕ (F = −1) the inequality holds by
/// convention with `lhs = 1`.
pub fn wilf_check(inv: &SemigroupInvariants) -> WilfReport {
    let e = inv.embedding_dimension.max(1) as i128;
    let rhs = Ratio::new(1, e);
    if inv.frobenius < 0 {
        return WilfReport {
            holds: true,
            lhs: Ratio::from_integer(1),
            rhs,
        };
    }
    let f1 = inv.frobenius as i128 + 1;
    let lhs = Ratio::new(f1 - inv.genus as i128, f1);
    WilfReport {
        holds: lhs >= rhs,
        lhs,
        rhs,
    }
}

impl fmt::Display for SemigroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F={} g={} e={} min_gens={}",
            self.frobenius, self.genus, self.embedding_dimension, self.minimal_generators
        )
    }
}
