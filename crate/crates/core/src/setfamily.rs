// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Element sets and antichain families.
//!
//! Every engine in this crate speaks in terms of [`ElementSet`] (a set of
//! nodes and/or edges) and [`SetFamily`] (a collection of such sets). Two
//! families deserve special mention because they play opposite algebraic
//! roles under [`cross_union`]:
//!
//! * the *empty family* `{}` annihilates: `{} × f = {}`;
//! * the *unit family* `{∅}` is the identity: `{∅} × f = minimize(f)`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Dense identifier of a network element.
///
/// Nodes occupy `0..num_nodes` and edges follow, so the natural integer
/// order puts every node before every edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(ix: usize) -> Self {
        ElementId(ix as u32)
    }
}

const WORD: usize = 64;

/// A set of [`ElementId`]s stored as a bitset.
///
/// Trailing zero words are always trimmed so that derived equality and
/// hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: SmallVec<[u64; 2]>,
}

impl ElementSet {
    pub fn new() -> Self {
        ElementSet::default()
    }

    pub fn singleton(id: ElementId) -> Self {
        let mut s = ElementSet::new();
        s.insert(id);
        s
    }

    pub fn insert(&mut self, id: ElementId) -> bool {
        let (w, b) = (id.index() / WORD, id.index() % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, id: ElementId) -> bool {
        let (w, b) = (id.index() / WORD, id.index() % WORD);
        if w >= self.words.len() || self.words[w] & (1 << b) == 0 {
            return false;
        }
        self.words[w] &= !(1 << b);
        self.trim();
        true
    }

    #[inline]
    pub fn contains(&self, id: ElementId) -> bool {
        let (w, b) = (id.index() / WORD, id.index() % WORD);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_ix: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// `self ⊆ other`
    #[inline]
    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.len() <= other.words.len() && self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(other.words.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(short.words.iter()) {
            *w |= s;
        }
        ElementSet { words }
    }

    /// Copy of `self` with `id` removed.
    pub fn without(&self, id: ElementId) -> ElementSet {
        let mut out = self.clone();
        out.remove(id);
        out
    }

    /// Copy of `self` with `id` added.
    pub fn with(&self, id: ElementId) -> ElementSet {
        let mut out = self.clone();
        out.insert(id);
        out
    }

    /// One past the largest element, or 0 for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * WORD + (WORD - w.leading_zeros() as usize),
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::new();
        for id in iter {
            s.insert(id);
        }
        s
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = ElementId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_ix: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(ElementId((self.word_ix * WORD + bit) as u32));
            }
            self.word_ix += 1;
            if self.word_ix >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_ix];
        }
    }
}

/// Canonical order: cardinality first, then lexicographic on the sorted ids.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        // With equal sizes, the lowest differing id decides: whoever holds it
        // is first in sorted-id order.
        self.len().cmp(&other.len()).then_with(|| {
            let n = self.words.len().max(other.words.len());
            let word = |s: &ElementSet, i: usize| s.words.get(i).copied().unwrap_or(0);
            for i in 0..n {
                let (a, b) = (word(self, i), word(other, i));
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    return if a & low != 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

/// A duplicate-free collection of [`ElementSet`]s.
///
/// `minimal` records whether the family is known to be an antichain. Equality
/// ignores member order and the flag.
#[derive(Clone, Default)]
pub struct SetFamily {
    sets: Vec<ElementSet>,
    minimal: bool,
}

impl SetFamily {
    /// The family with no members (annihilator of [`cross_union`]).
    pub fn empty() -> Self {
        SetFamily {
            sets: Vec::new(),
            minimal: true,
        }
    }

    /// The family `{∅}` (identity of [`cross_union`]).
    pub fn unit() -> Self {
        SetFamily {
            sets: vec![ElementSet::new()],
            minimal: true,
        }
    }

    /// Builds a family from arbitrary sets, dropping duplicates. Members are
    /// kept even when they are supersets of one another.
    pub fn from_sets<I: IntoIterator<Item = ElementSet>>(sets: I) -> Self {
        let mut sets: Vec<ElementSet> = sets.into_iter().collect();
        sets.sort_unstable();
        sets.dedup();
        let minimal = sets.len() <= 1;
        SetFamily { sets, minimal }
    }

    /// Wraps sets the caller guarantees to be a duplicate-free antichain.
    pub(crate) fn from_antichain_unchecked(sets: Vec<ElementSet>) -> Self {
        debug_assert!(is_antichain(&sets));
        SetFamily { sets, minimal: true }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// True when the family contains the empty set.
    pub fn contains_empty_set(&self) -> bool {
        self.sets.iter().any(ElementSet::is_empty)
    }

    pub fn contains(&self, s: &ElementSet) -> bool {
        self.sets.contains(s)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.sets.iter()
    }

    pub fn as_slice(&self) -> &[ElementSet] {
        &self.sets
    }

    /// Members sorted by cardinality, then lexicographically.
    pub fn canonical(&self) -> Vec<ElementSet> {
        let mut out = self.sets.clone();
        out.sort_unstable();
        out
    }

    pub fn into_canonical(mut self) -> Vec<ElementSet> {
        self.sets.sort_unstable();
        self.sets
    }

    /// Checks the antichain property directly, pair by pair.
    pub fn is_antichain(&self) -> bool {
        is_antichain(&self.sets)
    }

    /// Union of all members.
    pub fn support(&self) -> ElementSet {
        self.sets.iter().fold(ElementSet::new(), |acc, s| acc.union(s))
    }

    /// Inserts `s` into a minimal family with absorption: nothing happens if
    /// a member is already a subset of `s`; otherwise every superset of `s`
    /// is evicted before `s` goes in.
    pub fn absorb_insert(&mut self, s: ElementSet) {
        debug_assert!(self.minimal, "absorb_insert on a non-minimal family");
        if self.sets.iter().any(|m| m.is_subset(&s)) {
            return;
        }
        self.sets.retain(|m| !s.is_subset(m));
        self.sets.push(s);
    }

    /// Returns the ⊆-minimal members.
    pub fn minimize(&self) -> SetFamily {
        if self.minimal {
            return self.clone();
        }
        minimize_sets(self.sets.clone())
    }

    pub fn into_minimal(self) -> SetFamily {
        if self.minimal {
            self
        } else {
            minimize_sets(self.sets)
        }
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.sets.len() == other.sets.len() && self.canonical() == other.canonical()
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.canonical()).finish()
    }
}

impl FromIterator<ElementSet> for SetFamily {
    fn from_iter<I: IntoIterator<Item = ElementSet>>(iter: I) -> Self {
        SetFamily::from_sets(iter)
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

fn is_antichain(sets: &[ElementSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets.iter().enumerate().all(|(j, b)| i == j || !a.is_subset(b)))
}

/// Visit by cardinality so a member can only be absorbed by something already
/// kept; equal-size distinct sets never absorb one another.
pub(crate) fn minimize_sets(mut sets: Vec<ElementSet>) -> SetFamily {
    let lens: Vec<usize> = sets.iter().map(ElementSet::len).collect();
    let max_len = lens.iter().copied().max().unwrap_or(0);
    let mut start = vec![0usize; max_len + 2];
    for &l in &lens {
        start[l + 1] += 1;
    }
    for i in 1..start.len() {
        start[i] += start[i - 1];
    }
    let mut order = vec![0usize; sets.len()];
    for (i, &l) in lens.iter().enumerate() {
        order[start[l]] = i;
        start[l] += 1;
    }

    if sets.iter().all(|s| s.words.len() <= 2) {
        return minimize_narrow(sets, &order, &lens);
    }

    let mut kept: Vec<ElementSet> = Vec::with_capacity(sets.len());
    let mut smaller = 0;
    let mut current_len = usize::MAX;
    for i in order {
        let s = std::mem::take(&mut sets[i]);
        if lens[i] != current_len {
            smaller = kept.len();
            current_len = lens[i];
        }
        if kept[..smaller].iter().any(|k| k.is_subset(&s)) {
            continue;
        }
        if kept[smaller..].contains(&s) {
            continue;
        }
        kept.push(s);
    }
    SetFamily::from_antichain_unchecked(kept)
}

/// [`minimize_sets`] for ids below 128, on plain word pairs.
fn minimize_narrow(mut sets: Vec<ElementSet>, order: &[usize], lens: &[usize]) -> SetFamily {
    let pair = |s: &ElementSet| {
        [
            s.words.first().copied().unwrap_or(0),
            s.words.get(1).copied().unwrap_or(0),
        ]
    };
    let mut kept_words: Vec<[u64; 2]> = Vec::with_capacity(sets.len());
    let mut kept: Vec<ElementSet> = Vec::with_capacity(sets.len());
    let mut smaller = 0;
    let mut current_len = usize::MAX;
    for &i in order {
        let w = pair(&sets[i]);
        if lens[i] != current_len {
            smaller = kept_words.len();
            current_len = lens[i];
        }
        if kept_words[..smaller]
            .iter()
            .any(|k| k[0] & !w[0] == 0 && k[1] & !w[1] == 0)
        {
            continue;
        }
        if kept_words[smaller..].contains(&w) {
            continue;
        }
        kept_words.push(w);
        kept.push(std::mem::take(&mut sets[i]));
    }
    SetFamily::from_antichain_unchecked(kept)
}

/// `minimize({x ∪ y : x ∈ a, y ∈ b})`.
pub fn cross_union(a: &SetFamily, b: &SetFamily) -> SetFamily {
    if a.is_empty() || b.is_empty() {
        return SetFamily::empty();
    }
    if a.sets.len() == 1 && a.sets[0].is_empty() {
        return b.minimize();
    }
    if b.sets.len() == 1 && b.sets[0].is_empty() {
        return a.minimize();
    }
    // A member containing one from the other side is itself a product, and
    // absorbs every other product it takes part in.
    let mut out = Vec::with_capacity(a.len() * b.len());
    let mut open_b = Vec::with_capacity(b.len());
    for y in &b.sets {
        if a.sets.iter().any(|x| x.is_subset(y)) {
            out.push(y.clone());
        } else {
            open_b.push(y);
        }
    }
    for x in &a.sets {
        if b.sets.iter().any(|y| y.is_subset(x)) {
            out.push(x.clone());
        } else {
            out.extend(open_b.iter().map(|y| x.union(y)));
        }
    }
    minimize_sets(out)
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;

    /// Letters map to ids in alphabetical order: A=0, B=1, ...
    pub fn set(s: &str) -> ElementSet {
        s.chars()
            .filter(|c| c.is_ascii_uppercase())
            .map(|c| ElementId((c as u8 - b'A') as u32))
            .collect()
    }

    pub fn fam(sets: &[&str]) -> SetFamily {
        SetFamily::from_sets(sets.iter().map(|s| set(s)))
    }

    pub fn id(c: char) -> ElementId {
        ElementId((c as u8 - b'A') as u32)
    }
}
