//! Set partitions of the player set with an upper bound on block size.
//!
//! A [`CoalitionStructure`] is stored in canonical form: blocks are ordered by
//! their smallest member, which is the same as labelling every player with the
//! index of its block (a restricted-growth string). Families are produced in
//! lexicographic order of that string, so `𝒫(K)` can be searched by binary
//! search and is generated without ever materializing `𝒫(N)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest number of players a coalition bitmask can hold.
pub const MAX_PLAYERS: usize = 64;

/// Dense player index in `0..n_players`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub usize);

/// A non-empty set of players, kept as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coalition {
    mask: u64,
}

impl Coalition {
    /// Builds a coalition from member indices; rejects empty sets and duplicates.
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Result<Self> {
        let mut mask = 0u64;
        for member in members {
            if member >= MAX_PLAYERS {
                return Err(Error::InvalidArgument(alloc::format!(
                    "player index {member} exceeds the supported maximum of {}",
                    MAX_PLAYERS - 1
                )));
            }
            let bit = 1u64 << member;
            if mask & bit != 0 {
                return Err(Error::InvalidArgument(alloc::format!("player {member} listed twice in a coalition")));
            }
            mask |= bit;
        }
        Self::from_mask(mask).ok_or_else(|| Error::InvalidArgument(String::from("a coalition cannot be empty")))
    }

    /// Coalition with the given bitmask, `None` for the empty mask.
    pub fn from_mask(mask: u64) -> Option<Self> {
        (mask != 0).then_some(Self { mask })
    }

    /// The one-player coalition `{player}`.
    pub fn singleton(player: usize) -> Self {
        assert!(player < MAX_PLAYERS, "player index out of range");
        Self { mask: 1 << player }
    }

    /// Bitmask of the members.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Always `false`; coalitions are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether `player` belongs to the coalition.
    pub fn contains(&self, player: usize) -> bool {
        player < MAX_PLAYERS && self.mask & (1 << player) != 0
    }

    /// Smallest member.
    pub fn smallest(&self) -> usize {
        self.mask.trailing_zeros() as usize
    }

    /// Largest member.
    pub fn largest(&self) -> usize {
        63 - self.mask.leading_zeros() as usize
    }

    /// Members in ascending order.
    pub fn members(&self) -> Members {
        Members { rest: self.mask }
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members().cmp(other.members())
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the members of a [`Coalition`].
#[derive(Debug, Clone)]
pub struct Members {
    rest: u64,
}

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.rest == 0 {
            return None;
        }
        let next = self.rest.trailing_zeros() as usize;
        self.rest &= self.rest - 1;
        Some(next)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.rest.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// A partition of `{0, …, n_players-1}` into coalitions, in canonical form.
///
/// Equality, ordering and hashing use the restricted-growth labelling, which is
/// unique per partition.
#[derive(Clone)]
pub struct CoalitionStructure {
    labels: Vec<u8>,
    blocks: Vec<Coalition>,
}

impl CoalitionStructure {
    /// Builds a structure from a restricted-growth labelling
    /// (`labels[0] == 0`, each label at most one above the running maximum).
    pub fn from_labels(labels: &[u8]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidArgument(String::from("a partition needs at least one player")));
        }
        if labels.len() > MAX_PLAYERS {
            return Err(Error::InvalidArgument(alloc::format!("at most {MAX_PLAYERS} players are supported")));
        }
        let mut masks: Vec<u64> = Vec::new();
        for (player, &label) in labels.iter().enumerate() {
            let label = label as usize;
            match label.cmp(&masks.len()) {
                Ordering::Less => masks[label] |= 1 << player,
                Ordering::Equal => masks.push(1 << player),
                Ordering::Greater => {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "labels {labels:?} are not a restricted-growth string"
                    )))
                }
            }
        }
        Ok(Self { labels: labels.to_vec(), blocks: masks.into_iter().map(|mask| Coalition { mask }).collect() })
    }

    /// Builds a structure from arbitrary blocks; they must be disjoint and cover all players.
    pub fn from_coalitions(n_players: usize, blocks: &[Coalition]) -> Result<Self> {
        if n_players == 0 || n_players > MAX_PLAYERS {
            return Err(Error::InvalidArgument(alloc::format!(
                "player count must be in 1..={MAX_PLAYERS}, got {n_players}"
            )));
        }
        let mut seen = 0u64;
        for block in blocks {
            if block.largest() >= n_players {
                return Err(Error::InvalidArgument(alloc::format!(
                    "coalition {block} mentions a player outside 0..{n_players}"
                )));
            }
            if seen & block.mask != 0 {
                return Err(Error::InvalidArgument(alloc::format!("coalition {block} overlaps another block")));
            }
            seen |= block.mask;
        }
        let full = if n_players == 64 { u64::MAX } else { (1u64 << n_players) - 1 };
        if seen != full {
            return Err(Error::InvalidArgument(alloc::format!("blocks do not cover all {n_players} players")));
        }
        let mut sorted = blocks.to_vec();
        sorted.sort_by_key(|b| b.smallest());
        let mut labels = vec![0u8; n_players];
        for (index, block) in sorted.iter().enumerate() {
            for m in block.members() {
                labels[m] = index as u8;
            }
        }
        Ok(Self { labels, blocks: sorted })
    }

    /// Builds a structure from lists of member indices.
    pub fn from_blocks(n_players: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let coalitions = blocks.iter().map(|b| Coalition::new(b.iter().copied())).collect::<Result<Vec<_>>>()?;
        Self::from_coalitions(n_players, &coalitions)
    }

    /// Every player alone.
    pub fn singletons(n_players: usize) -> Self {
        let labels: Vec<u8> = (0..n_players).map(|i| i as u8).collect();
        Self::from_labels(&labels).expect("singleton labelling is a restricted-growth string")
    }

    /// All players in one coalition.
    pub fn grand(n_players: usize) -> Self {
        Self::from_labels(&vec![0u8; n_players]).expect("constant labelling is a restricted-growth string")
    }

    /// Number of players partitioned.
    pub fn n_players(&self) -> usize {
        self.labels.len()
    }

    /// Blocks ordered by smallest member.
    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    /// Restricted-growth labelling: `labels()[p]` is the block index of player `p`.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Size of the largest block.
    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Coalition::len).max().unwrap_or(0)
    }

    /// The block containing `player`. Panics if `player` is out of range.
    pub fn block_of(&self, player: usize) -> &Coalition {
        &self.blocks[self.labels[player] as usize]
    }

    /// Whether `coalition` is exactly one of the blocks.
    pub fn has_block(&self, coalition: &Coalition) -> bool {
        coalition.largest() < self.n_players() && *self.block_of(coalition.smallest()) == *coalition
    }

    /// Whether every player is alone.
    pub fn is_singletons(&self) -> bool {
        self.blocks.len() == self.labels.len()
    }
}

impl PartialEq for CoalitionStructure {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for CoalitionStructure {}

impl Hash for CoalitionStructure {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.labels.hash(state);
    }
}

impl Ord for CoalitionStructure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.labels.cmp(&other.labels)
    }
}

impl PartialOrd for CoalitionStructure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CoalitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CoalitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

/// All coalition structures of `n_players` with blocks of size at most `max_block`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFamily {
    n_players: usize,
    max_block: usize,
    structures: Vec<CoalitionStructure>,
}

impl PartitionFamily {
    /// Number of players.
    pub fn n_players(&self) -> usize {
        self.n_players
    }

    /// The block-size cap `K`.
    pub fn max_block(&self) -> usize {
        self.max_block
    }

    /// Structures in lexicographic restricted-growth order.
    pub fn structures(&self) -> &[CoalitionStructure] {
        &self.structures
    }

    /// Number of structures.
    pub fn len(&self) -> usize {
        self.structures.len()
    }

    /// Never true for a valid family.
    pub fn is_empty(&self) -> bool {
        self.structures.is_empty()
    }

    /// Position of `structure` in the family.
    pub fn index_of(&self, structure: &CoalitionStructure) -> Option<usize> {
        if structure.n_players() != self.n_players {
            return None;
        }
        self.structures.binary_search(structure).ok()
    }

    /// Whether `structure` belongs to the family.
    pub fn contains(&self, structure: &CoalitionStructure) -> bool {
        self.index_of(structure).is_some()
    }
}

fn check_bounds(n: usize, k: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument(String::from("need at least one player")));
    }
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(alloc::format!("maximum coalition size must lie in 1..={n}, got {k}")));
    }
    Ok(())
}

/// Every partition of `{0..n-1}` with all blocks of size at most `k`, in
/// lexicographic order of the restricted-growth labelling.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<PartitionFamily> {
    check_bounds(n, k)?;
    if n > MAX_PLAYERS {
        return Err(Error::InvalidArgument(alloc::format!("at most {MAX_PLAYERS} players are supported")));
    }
    let mut out = Vec::new();
    let mut labels = vec![0u8; n];
    let mut sizes: Vec<usize> = Vec::with_capacity(n);
    extend(0, &mut labels, &mut sizes, k, &mut out);
    Ok(PartitionFamily { n_players: n, max_block: k, structures: out })
}

fn extend(pos: usize, labels: &mut [u8], sizes: &mut Vec<usize>, cap: usize, out: &mut Vec<CoalitionStructure>) {
    if pos == labels.len() {
        out.push(CoalitionStructure::from_labels(labels).expect("generator only emits restricted-growth strings"));
        return;
    }
    for block in 0..sizes.len() {
        if sizes[block] == cap {
            continue;
        }
        sizes[block] += 1;
        labels[pos] = block as u8;
        extend(pos + 1, labels, sizes, cap, out);
        sizes[block] -= 1;
    }
    sizes.push(1);
    labels[pos] = (sizes.len() - 1) as u8;
    extend(pos + 1, labels, sizes, cap, out);
    sizes.pop();
}

/// Number of partitions of `n` elements into blocks of size at most `k`,
/// computed exactly without enumeration.
///
/// Uses `p(m) = Σ_{j=1..min(k,m)} C(m-1, j-1) · p(m-j)`: the block containing the
/// first element has `j` members, `j - 1` of them chosen among the other `m - 1`.
pub fn restricted_bell(n: usize, k: usize) -> Result<u128> {
    check_bounds(n, k)?;
    let overflow = || Error::Overflow { n, k };
    let mut counts: Vec<u128> = vec![1];
    // Row m-1 of Pascal's triangle, updated in place.
    let mut binom: Vec<u128> = vec![1];
    for m in 1..=n {
        if m > 1 {
            let mut next = vec![1u128; m];
            for j in 1..m - 1 {
                next[j] = binom[j - 1].checked_add(binom[j]).ok_or_else(overflow)?;
            }
            binom = next;
        }
        let mut total: u128 = 0;
        for j in 1..=k.min(m) {
            let term = binom[j - 1].checked_mul(counts[m - j]).ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
        counts.push(total);
    }
    Ok(counts[n])
}

/// Whether every structure of `small` also belongs to `large`.
pub fn is_nested(small: &PartitionFamily, large: &PartitionFamily) -> Result<bool> {
    if small.n_players != large.n_players {
        return Err(Error::InvalidArgument(alloc::format!(
            "families cover {} and {} players",
            small.n_players,
            large.n_players
        )));
    }
    Ok(small.structures.iter().all(|s| large.contains(s)))
}

/// The block of `structure` that contains `player`.
pub fn coalition_of(structure: &CoalitionStructure, player: PlayerId) -> Result<Coalition> {
    if player.0 >= structure.n_players() {
        return Err(Error::InvalidArgument(alloc::format!(
            "player {} is outside 0..{}",
            player.0,
            structure.n_players()
        )));
    }
    Ok(*structure.block_of(player.0))
}

/// Whether `coalition` is exactly one of the blocks of `structure`.
pub fn contains_coalition(structure: &CoalitionStructure, coalition: &Coalition) -> Result<bool> {
    if coalition.largest() >= structure.n_players() {
        return Err(Error::InvalidArgument(alloc::format!(
            "coalition {coalition} mentions a player outside 0..{}",
            structure.n_players()
        )));
    }
    Ok(structure.has_block(coalition))
}
