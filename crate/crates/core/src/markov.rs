//! Markov triples: solutions of `a^2 + b^2 + c^2 = 3abc` in positive integers.
//!
//! Triples are stored positionally. Canonical triples are sorted ascending, and
//! every mutation reports the permutation that sorts its raw result so callers
//! that attach geometric roles to positions can keep track of them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkovError {
    #[error("entries of a Markov triple must be positive, got ({0}, {1}, {2})")]
    NonPositive(BigInt, BigInt, BigInt),
    #[error("({0}, {1}, {2}) does not satisfy a^2 + b^2 + c^2 = 3abc (Eq. 1.1)")]
    NotMarkov(BigInt, BigInt, BigInt),
    #[error("(1,1,1) is the root of the Markov tree and has no parent")]
    Root,
    #[error("cannot parse Markov triple from {0:?}; expected \"a,b,c\"")]
    Parse(String),
    #[error("invalid mutation slot {0:?}; expected one of A, B, C")]
    BadSlot(char),
}

/// Position inside a triple. Mutating at a slot replaces that entry `x` by
/// `3 * (product of the other two) - x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    A,
    B,
    C,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::A, Slot::B, Slot::C];

    pub fn index(self) -> usize {
        match self {
            Slot::A => 0,
            Slot::B => 1,
            Slot::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Slot {
        match i {
            0 => Slot::A,
            1 => Slot::B,
            2 => Slot::C,
            _ => panic!("slot index {i} out of range"),
        }
    }

    pub fn from_char(ch: char) -> Result<Slot, MarkovError> {
        match ch.to_ascii_uppercase() {
            'A' => Ok(Slot::A),
            'B' => Ok(Slot::B),
            'C' => Ok(Slot::C),
            other => Err(MarkovError::BadSlot(other)),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Slot::A => "A",
            Slot::B => "B",
            Slot::C => "C",
        };
        f.write_str(s)
    }
}

/// A positive solution of the Markov equation. Entries keep the order they
/// were given in; use [`MarkovTriple::canonical`] for the sorted form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkovTriple {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Checks the Markov equation. Non-positive entries are an error rather than `false`.
pub fn is_markov(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<bool, MarkovError> {
    if !a.is_positive() || !b.is_positive() || !c.is_positive() {
        return Err(MarkovError::NonPositive(a.clone(), b.clone(), c.clone()));
    }
    Ok(a * a + b * b + c * c == BigInt::from(3) * a * b * c)
}

impl MarkovTriple {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self, MarkovError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if is_markov(&a, &b, &c)? {
            Ok(MarkovTriple { a, b, c })
        } else {
            Err(MarkovError::NotMarkov(a, b, c))
        }
    }

    /// The Clifford triple `(1,1,1)`, root of the Markov tree.
    pub fn root() -> Self {
        MarkovTriple { a: BigInt::one(), b: BigInt::one(), c: BigInt::one() }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn get(&self, slot: Slot) -> &BigInt {
        match slot {
            Slot::A => &self.a,
            Slot::B => &self.b,
            Slot::C => &self.c,
        }
    }

    pub fn entries(&self) -> [&BigInt; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn sum(&self) -> BigInt {
        &self.a + &self.b + &self.c
    }

    pub fn is_root(&self) -> bool {
        self.a.is_one() && self.b.is_one() && self.c.is_one()
    }

    pub fn is_canonical(&self) -> bool {
        self.a <= self.b && self.b <= self.c
    }

    /// Sorted copy together with `perm`, where `canonical[i] = self[perm[i]]`.
    /// The sort is stable, so equal entries keep their relative order.
    pub fn canonical(&self) -> (MarkovTriple, [usize; 3]) {
        let e = self.entries();
        let mut perm = [0usize, 1, 2];
        perm.sort_by(|&i, &j| e[i].cmp(e[j]));
        let t = MarkovTriple { a: e[perm[0]].clone(), b: e[perm[1]].clone(), c: e[perm[2]].clone() };
        (t, perm)
    }

    /// True when the three entries are pairwise coprime.
    pub fn pairwise_coprime(&self) -> bool {
        self.a.gcd(&self.b).is_one() && self.b.gcd(&self.c).is_one() && self.a.gcd(&self.c).is_one()
    }

    /// Index of the first slot (in this triple's order) holding `value`.
    pub fn slot_of(&self, value: &BigInt) -> Option<Slot> {
        Slot::ALL.into_iter().find(|s| self.get(*s) == value)
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl FromStr for MarkovTriple {
    type Err = MarkovError;

    /// Accepts `a,b,c`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(MarkovError::Parse(s.to_string()));
        }
        let mut vals = Vec::with_capacity(3);
        for p in parts {
            vals.push(p.parse::<BigInt>().map_err(|_| MarkovError::Parse(s.to_string()))?);
        }
        let c = vals.pop().unwrap();
        let b = vals.pop().unwrap();
        let a = vals.pop().unwrap();
        MarkovTriple::new(a, b, c)
    }
}

/// Canonical triples sort by their largest entry first, which is the order the
/// tree is explored in.
impl Ord for MarkovTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.c, &self.b, &self.a).cmp(&(&other.c, &other.b, &other.a))
    }
}

impl PartialOrd for MarkovTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a single mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutation {
    /// The triple with the mutated entry left in place.
    pub raw: MarkovTriple,
    /// `raw` sorted ascending.
    pub canonical: MarkovTriple,
    /// `canonical[i] = raw[perm[i]]`.
    pub perm: [usize; 3],
}

/// Replaces the entry at `slot` by `3 * (product of the other two) - entry`.
/// `slot` refers to the position in `t` as given (before any sorting).
pub fn mutate(t: &MarkovTriple, slot: Slot) -> Mutation {
    let three = BigInt::from(3);
    let raw = match slot {
        Slot::A => MarkovTriple { a: &three * &t.b * &t.c - &t.a, b: t.b.clone(), c: t.c.clone() },
        Slot::B => MarkovTriple { a: t.a.clone(), b: &three * &t.a * &t.c - &t.b, c: t.c.clone() },
        Slot::C => MarkovTriple { a: t.a.clone(), b: t.b.clone(), c: &three * &t.a * &t.b - &t.c },
    };
    debug_assert!(is_markov(&raw.a, &raw.b, &raw.c).unwrap_or(false));
    let (canonical, perm) = raw.canonical();
    Mutation { raw, canonical, perm }
}

/// The unique neighbour with strictly smaller entry sum, obtained by mutating
/// the largest entry. By convention `parent((1,1,2)) = (1,1,1)`.
pub fn parent(t: &MarkovTriple) -> Result<MarkovTriple, MarkovError> {
    let (canon, _) = t.canonical();
    if canon.is_root() {
        return Err(MarkovError::Root);
    }
    Ok(mutate(&canon, Slot::C).canonical)
}

/// All canonical triples with largest entry at most `max_c`, found by a
/// breadth-first walk of the Markov tree.
pub fn enumerate(max_c: &BigInt) -> BTreeSet<MarkovTriple> {
    enumerate_tree(max_c).into_keys().collect()
}

/// Like [`enumerate`], but also records each triple's parent (`None` for the root).
pub fn enumerate_tree(max_c: &BigInt) -> BTreeMap<MarkovTriple, Option<MarkovTriple>> {
    let mut seen = BTreeMap::new();
    if max_c < &BigInt::one() {
        return seen;
    }
    let root = MarkovTriple::root();
    let mut queue = VecDeque::from([root.clone()]);
    seen.insert(root, None);
    while let Some(t) = queue.pop_front() {
        // Mutating either of the two smaller entries produces a new largest
        // entry; mutating the largest one walks back up to the parent.
        for slot in [Slot::A, Slot::B] {
            let child = mutate(&t, slot).canonical;
            if &child.c > max_c || seen.contains_key(&child) {
                continue;
            }
            seen.insert(child.clone(), Some(t.clone()));
            queue.push_back(child);
        }
    }
    seen
}

/// Outcome of the three order/size facts for a canonical triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    /// `2ab <= c`; `None` when `c < 2` and the statement is vacuous.
    pub two_ab_le_c: Option<bool>,
    /// `c^2 / (a^2 + b^2 + c^2) >= 2/3`; `None` when `c < 2`.
    pub ratio_ge_two_thirds: Option<bool>,
    /// The ratio `c^2 / (a^2 + b^2 + c^2)` itself.
    pub ratio: BigRational,
    /// Both mutations at the two smaller slots give a new entry exceeding `c`.
    pub smaller_mutations_exceed_c: bool,
}

impl GrowthReport {
    pub fn all_hold(&self) -> bool {
        self.two_ab_le_c != Some(false) && self.ratio_ge_two_thirds != Some(false) && self.smaller_mutations_exceed_c
    }
}

pub fn check_growth_facts(t: &MarkovTriple) -> GrowthReport {
    let (t, _) = t.canonical();
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let norm = a * a + b * b + c * c;
    let ratio = BigRational::new(c * c, norm);
    let applies = c >= &BigInt::from(2);
    let two_ab_le_c = applies.then(|| BigInt::from(2) * a * b <= *c);
    let ratio_ge_two_thirds = applies.then(|| ratio >= BigRational::new(2.into(), 3.into()));
    let a_new = mutate(&t, Slot::A).raw.a;
    let b_new = mutate(&t, Slot::B).raw.b;
    GrowthReport {
        two_ab_le_c,
        ratio_ge_two_thirds,
        ratio,
        smaller_mutations_exceed_c: &a_new > c && &b_new > c,
    }
}

/// A sequence of slots, replayed positionally from the root.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MutationWord(pub Vec<Slot>);

impl MutationWord {
    /// Every prefix of the replay, starting with `(1,1,1)` itself.
    pub fn replay(&self) -> Vec<MarkovTriple> {
        let mut out = vec![MarkovTriple::root()];
        for &slot in &self.0 {
            let next = mutate(out.last().unwrap(), slot).raw;
            out.push(next);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for MutationWord {
    type Err = MarkovError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|ch| !ch.is_whitespace() && *ch != ',')
            .map(Slot::from_char)
            .collect::<Result<Vec<_>, _>>()
            .map(MutationWord)
    }
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn t(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn is_markov_examples() {
        let one = BigInt::one();
        let two = BigInt::from(2);
        assert!(is_markov(&one, &one, &one).unwrap());
        assert!(is_markov(&one, &one, &two).unwrap());
        assert!(!is_markov(&two, &two, &two).unwrap());
        assert!(is_markov(&BigInt::zero(), &one, &one).is_err());
        assert!(is_markov(&-one.clone(), &one, &one).is_err());
    }

    #[test]
    fn mutation_examples() {
        let m = mutate(&t(1, 1, 1), Slot::C);
        assert_eq!(m.canonical, t(1, 1, 2));

        let m = mutate(&t(1, 1, 2), Slot::B);
        assert_eq!(m.raw, t(1, 5, 2));
        assert_eq!(m.canonical, t(1, 2, 5));
        assert_eq!(m.perm, [0, 2, 1]);

        let m = mutate(&t(1, 2, 5), Slot::A);
        assert_eq!(m.raw, t(29, 2, 5));
        assert_eq!(m.canonical, t(2, 5, 29));
    }

    #[test]
    fn mutation_is_involutive() {
        let x = t(2, 5, 29);
        for s in Slot::ALL {
            assert_eq!(mutate(&mutate(&x, s).raw, s).raw, x);
        }
    }

    #[test]
    fn parent_examples() {
        assert_eq!(parent(&t(1, 2, 5)).unwrap(), t(1, 1, 2));
        assert_eq!(parent(&t(2, 5, 29)).unwrap(), t(1, 2, 5));
        assert_eq!(parent(&t(1, 1, 2)).unwrap(), t(1, 1, 1));
        assert_eq!(parent(&t(1, 1, 1)), Err(MarkovError::Root));
    }

    #[test]
    fn enumerate_small() {
        assert!(enumerate(&BigInt::zero()).is_empty());
        let five: Vec<_> = enumerate(&BigInt::from(5)).into_iter().collect();
        assert_eq!(five, vec![t(1, 1, 1), t(1, 1, 2), t(1, 2, 5)]);
    }

    #[test]
    fn growth_examples() {
        let r = check_growth_facts(&t(1, 1, 2));
        assert_eq!(r.two_ab_le_c, Some(true));
        assert_eq!(r.ratio, BigRational::new(2.into(), 3.into()));
        let r = check_growth_facts(&t(1, 2, 5));
        assert_eq!(r.ratio, BigRational::new(25.into(), 30.into()));
        assert!(r.all_hold());
        let r = check_growth_facts(&t(1, 1, 1));
        assert_eq!(r.two_ab_le_c, None);
        assert_eq!(r.ratio_ge_two_thirds, None);
    }

    #[test]
    fn parse_and_display() {
        let x: MarkovTriple = "(1, 5, 13)".parse().unwrap();
        assert_eq!(x, t(1, 5, 13));
        assert_eq!(x.to_string(), "(1,5,13)");
        assert!(matches!("2,2,2".parse::<MarkovTriple>(), Err(MarkovError::NotMarkov(..))));
        assert!(matches!("1,1".parse::<MarkovTriple>(), Err(MarkovError::Parse(_))));
        let w: MutationWord = "CBA".parse().unwrap();
        assert_eq!(w.replay().last().unwrap().canonical().0, t(2, 5, 29));
    }
}
