//! Seven-card hand evaluation.
//!
//! The evaluator works directly on rank counts and per-suit rank masks, so a
//! 7-card hand is scored in one pass instead of enumerating 21 subsets.

use crate::cards::{check_distinct, Card, CardError, Rank};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    HighCard,
    OnePair,
    TwoPair,
    Trips,
    Straight,
    Flush,
    FullHouse,
    Quads,
    StraightFlush,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Category::HighCard => "high-card",
            Category::OnePair => "one-pair",
            Category::TwoPair => "two-pair",
            Category::Trips => "trips",
            Category::Straight => "straight",
            Category::Flush => "flush",
            Category::FullHouse => "full-house",
            Category::Quads => "quads",
            Category::StraightFlush => "straight-flush",
        };
        f.write_str(s)
    }
}

/// Category plus a tiebreak vector of rank values, zero padded.
///
/// The derived ordering compares the category first and then the tiebreak
/// lexicographically, which is exactly the poker ordering because tiebreaks
/// are normalized per category (e.g. a wheel stores high card 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HandRank {
    pub category: Category,
    pub tiebreak: [u8; 5],
}

impl HandRank {
    pub fn new(category: Category, ranks: &[u8]) -> HandRank {
        let mut tiebreak = [0u8; 5];
        for (slot, r) in tiebreak.iter_mut().zip(ranks) {
            *slot = *r;
        }
        HandRank { category, tiebreak }
    }
}

impl fmt::Display for HandRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.category)?;
        let ranks: Vec<String> = self
            .tiebreak
            .iter()
            .filter(|r| **r != 0)
            .filter_map(|r| Rank::from_value(*r))
            .map(|r| r.to_string())
            .collect();
        if !ranks.is_empty() {
            write!(f, " [{}]", ranks.join("-"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("expected 2 hole cards, got {0}")]
    HoleCount(usize),
    #[error("expected 3 to 5 board cards, got {0}")]
    BoardCount(usize),
    #[error("expected 5 to 7 cards, got {0}")]
    CardCount(usize),
    #[error(transparent)]
    Card(#[from] CardError),
}

/// Best five-card rank from two hole cards and a 3–5 card board.
pub fn evaluate_best5(hole: &[Card], board: &[Card]) -> Result<HandRank, EvalError> {
    if hole.len() != 2 {
        return Err(EvalError::HoleCount(hole.len()));
    }
    if !(3..=5).contains(&board.len()) {
        return Err(EvalError::BoardCount(board.len()));
    }
    let mut all = Vec::with_capacity(7);
    all.extend_from_slice(hole);
    all.extend_from_slice(board);
    evaluate(&all)
}

/// Best five-card rank from any 5–7 distinct cards.
pub fn evaluate(cards: &[Card]) -> Result<HandRank, EvalError> {
    if !(5..=7).contains(&cards.len()) {
        return Err(EvalError::CardCount(cards.len()));
    }
    check_distinct(cards)?;
    Ok(evaluate_unchecked(cards))
}

pub fn compare(a: &HandRank, b: &HandRank) -> Ordering {
    a.cmp(b)
}

/// Rank bitmask with bit `v` set for rank value `v` (2..=14).
fn rank_bit(r: Rank) -> u16 {
    1 << r.value()
}

/// Highest straight in a rank mask, returning the top card value.
pub(crate) fn straight_high(mask: u16) -> Option<u8> {
    // Ace also counts as 1 for the wheel.
    let m = mask | ((mask >> 14) & 1) << 1;
    (5..=14u8).rev().find(|&hi| {
        let window = 0b11111u16 << (hi - 4);
        m & window == window
    })
}

fn top_ranks(mask: u16, n: usize) -> Vec<u8> {
    (2..=14u8).rev().filter(|v| mask & (1 << v) != 0).take(n).collect()
}

/// Scores cards without validating count or distinctness.
pub(crate) fn evaluate_unchecked(cards: &[Card]) -> HandRank {
    let mut counts = [0u8; 15];
    let mut suit_masks = [0u16; 4];
    let mut all = 0u16;
    for c in cards {
        counts[c.rank.value() as usize] += 1;
        suit_masks[c.suit.index()] |= rank_bit(c.rank);
        all |= rank_bit(c.rank);
    }

    let flush_mask = suit_masks.iter().copied().find(|m| m.count_ones() >= 5);
    if let Some(fm) = flush_mask {
        if let Some(hi) = straight_high(fm) {
            return HandRank::new(Category::StraightFlush, &[hi]);
        }
    }

    let ranks_with = |n: u8| -> Vec<u8> { (2..=14u8).rev().filter(|&v| counts[v as usize] == n).collect() };
    let quads = ranks_with(4);
    let trips = ranks_with(3);
    let pairs = ranks_with(2);

    if let Some(&q) = quads.first() {
        let kicker = top_ranks(all & !(1 << q), 1);
        return HandRank::new(Category::Quads, &[q, kicker[0]]);
    }
    if let Some(&t) = trips.first() {
        // The pair part may come from a second set of trips.
        let pair = trips.get(1).copied().into_iter().chain(pairs.first().copied()).max();
        if let Some(p) = pair {
            return HandRank::new(Category::FullHouse, &[t, p]);
        }
    }
    if let Some(fm) = flush_mask {
        return HandRank::new(Category::Flush, &top_ranks(fm, 5));
    }
    if let Some(hi) = straight_high(all) {
        return HandRank::new(Category::Straight, &[hi]);
    }
    if let Some(&t) = trips.first() {
        let kickers = top_ranks(all & !(1 << t), 2);
        return HandRank::new(Category::Trips, &[t, kickers[0], kickers[1]]);
    }
    if pairs.len() >= 2 {
        let (p1, p2) = (pairs[0], pairs[1]);
        let kicker = top_ranks(all & !(1 << p1) & !(1 << p2), 1);
        return HandRank::new(Category::TwoPair, &[p1, p2, kicker[0]]);
    }
    if let Some(&p) = pairs.first() {
        let k = top_ranks(all & !(1 << p), 3);
        return HandRank::new(Category::OnePair, &[p, k[0], k[1], k[2]]);
    }
    HandRank::new(Category::HighCard, &top_ranks(all, 5))
}
