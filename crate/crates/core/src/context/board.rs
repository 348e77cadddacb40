//! Board texture labels.

use crate::cards::{Card, Rank, Suit};
use crate::eval::straight_high;
use crate::game::Street;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Wetness {
    Dry,
    SlightlyWet,
    Wet,
    VeryWet,
}

impl Wetness {
    pub fn key(self) -> &'static str {
        match self {
            Wetness::Dry => "dry",
            Wetness::SlightlyWet => "slightly_wet",
            Wetness::Wet => "wet",
            Wetness::VeryWet => "very_wet",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuitLabel {
    Rainbow,
    TwoTone,
    /// Three cards of one suit on a three-card flop.
    Monotone,
    /// Exactly three of one suit on a turn or river board.
    FlushPossible,
    /// Four or more of one suit: a single card makes a flush.
    OneCardFlush,
}

impl SuitLabel {
    pub fn key(self) -> &'static str {
        match self {
            SuitLabel::Rainbow => "rainbow",
            SuitLabel::TwoTone => "two_tone",
            SuitLabel::Monotone => "monotone",
            SuitLabel::FlushPossible => "flush_possible",
            SuitLabel::OneCardFlush => "one_card_flush",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStructure {
    Unpaired,
    Paired,
    TripsBoard,
    DoublePaired,
    QuadsBoard,
    FullHouseBoard,
}

impl PairStructure {
    pub fn key(self) -> &'static str {
        match self {
            PairStructure::Unpaired => "unpaired",
            PairStructure::Paired => "paired",
            PairStructure::TripsBoard => "trips_board",
            PairStructure::DoublePaired => "double_paired",
            PairStructure::QuadsBoard => "quads_board",
            PairStructure::FullHouseBoard => "full_house_board",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StraightLabel {
    None,
    /// Two hole cards are needed; `combos` distinct rank pairs complete one.
    StraightPossible { combos: usize },
    /// A single hole card completes a straight.
    OneCardStraight { open_ended: bool, types: usize },
}

impl StraightLabel {
    pub fn key(&self) -> &'static str {
        match self {
            StraightLabel::None => "none",
            StraightLabel::StraightPossible { .. } => "straight_possible",
            StraightLabel::OneCardStraight { .. } => "one_card_straight",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HighLow {
    High,
    Low,
    Mixed,
}

impl HighLow {
    pub fn key(self) -> &'static str {
        match self {
            HighLow::High => "high",
            HighLow::Low => "low",
            HighLow::Mixed => "mixed",
        }
    }
}

/// Boards where ordinary hand ordering is replaced by an override table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialBoard {
    TripsBoard,
    DoublePaired,
    TripsPlusSide,
    QuadsBoard,
    FullHouseBoard,
    BoardFlush,
    BoardStraight,
}

impl SpecialBoard {
    pub fn key(self) -> &'static str {
        match self {
            SpecialBoard::TripsBoard => "trips_board",
            SpecialBoard::DoublePaired => "double_paired",
            SpecialBoard::TripsPlusSide => "trips_plus_side",
            SpecialBoard::QuadsBoard => "quads_board",
            SpecialBoard::FullHouseBoard => "full_house_board",
            SpecialBoard::BoardFlush => "board_flush",
            SpecialBoard::BoardStraight => "board_straight",
        }
    }

    pub fn from_key(s: &str) -> Option<SpecialBoard> {
        [
            SpecialBoard::TripsBoard,
            SpecialBoard::DoublePaired,
            SpecialBoard::TripsPlusSide,
            SpecialBoard::QuadsBoard,
            SpecialBoard::FullHouseBoard,
            SpecialBoard::BoardFlush,
            SpecialBoard::BoardStraight,
        ]
        .into_iter()
        .find(|b| b.key() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoardTexture {
    pub street: Street,
    pub wetness: Wetness,
    /// Sum of the flush, straight and connectivity components.
    pub wetness_score: u8,
    pub suit_label: SuitLabel,
    /// Most cards of any single suit.
    pub max_suit: u8,
    /// Suit with `max_suit` cards when it is at least two.
    pub flush_suit: Option<Suit>,
    pub pair_structure: PairStructure,
    pub straight_label: StraightLabel,
    /// Distinct two-rank completions (neither rank alone completes).
    pub two_card_combos: usize,
    /// Single ranks that complete a straight, descending.
    pub one_card_ranks: Vec<Rank>,
    pub connected: bool,
    pub high_low: HighLow,
    pub special: Option<SpecialBoard>,
    /// The highest straight top card reachable with two hole cards.
    pub best_straight_high: Option<u8>,
}

impl BoardTexture {
    pub fn flush_possible(&self) -> bool {
        self.max_suit >= 3
    }

    /// Exactly three of a suit: a two-card flush is possible.
    pub fn three_flush(&self) -> bool {
        self.max_suit == 3
    }

    pub fn one_card_flush(&self) -> bool {
        self.max_suit >= 4
    }

    pub fn paired(&self) -> bool {
        self.pair_structure != PairStructure::Unpaired
    }

    pub fn has_ocs(&self) -> bool {
        !self.one_card_ranks.is_empty()
    }

    pub fn ocs_open_ended(&self) -> bool {
        self.one_card_ranks.len() >= 2
    }

    /// Any straight reachable with hole cards.
    pub fn straighty(&self) -> bool {
        self.two_card_combos > 0 || self.has_ocs()
    }

    pub fn rainbow(&self) -> bool {
        self.max_suit <= 1 || (self.street == Street::River && self.max_suit == 1)
    }

    pub fn two_tone(&self) -> bool {
        self.max_suit == 2
    }

    /// "Safe" in the budget-table sense: no flush, no straight, unpaired.
    pub fn is_safe(&self) -> bool {
        self.max_suit <= 2 && !self.straighty() && !self.paired()
    }

    /// One-line description for prompts.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        parts.push(match self.suit_label {
            SuitLabel::Rainbow => "rainbow".to_string(),
            SuitLabel::TwoTone => "two-tone (flush draw possible, no flush yet)".to_string(),
            SuitLabel::Monotone => "monotone (two-card flush possible)".to_string(),
            SuitLabel::FlushPossible => "three-flush (two-card flush possible)".to_string(),
            SuitLabel::OneCardFlush => "four-flush (ONE-CARD FLUSH possible)".to_string(),
        });
        match &self.straight_label {
            StraightLabel::None => {}
            StraightLabel::StraightPossible { combos } => {
                parts.push(format!("straight possible ({combos} two-card combo{})", if *combos == 1 { "" } else { "s" }))
            }
            StraightLabel::OneCardStraight { open_ended, types } => parts.push(format!(
                "ONE-CARD STRAIGHT ({}, {} completing rank{})",
                if *open_ended { "open-ended" } else { "gutshot" },
                types,
                if *types == 1 { "" } else { "s" }
            )),
        }
        match self.pair_structure {
            PairStructure::Unpaired => {}
            PairStructure::Paired => parts.push("paired".into()),
            p => parts.push(p.key().replace('_', " ")),
        }
        parts.push(format!("{} cards", self.high_low.key()));
        parts.push(self.wetness.key().replace('_', " "));
        parts.join("; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("board must have 3 to 5 cards, got {0}")]
pub struct BoardSizeError(pub usize);

pub(crate) fn rank_mask(ranks: impl IntoIterator<Item = Rank>) -> u16 {
    ranks.into_iter().fold(0u16, |m, r| m | (1 << r.value()))
}

/// Two-card completions and one-card completing ranks for a board rank mask.
pub(crate) fn straight_completions(mask: u16) -> (usize, Vec<Rank>) {
    let board_straight = straight_high(mask).is_some();
    let mut singles = Vec::new();
    for r in Rank::ALL.iter().rev() {
        let m = mask | (1 << r.value());
        if m != mask && straight_high(m).is_some() && (!board_straight || straight_high(m) > straight_high(mask)) {
            singles.push(*r);
        }
    }
    let single = |v: u8| singles.iter().any(|r| r.value() == v);
    let mut combos = 0;
    for a in 2..=14u8 {
        for b in (a + 1)..=14u8 {
            if mask & (1 << a) != 0 || mask & (1 << b) != 0 || single(a) || single(b) {
                continue;
            }
            let m = mask | (1 << a) | (1 << b);
            if straight_high(m).is_some() && (!board_straight || straight_high(m) > straight_high(mask)) {
                combos += 1;
            }
        }
    }
    (combos, singles)
}

/// Highest straight top card reachable by adding up to two ranks.
fn best_straight(mask: u16) -> Option<u8> {
    let mut best = straight_high(mask);
    for a in 2..=14u8 {
        for b in a..=14u8 {
            best = best.max(straight_high(mask | (1 << a) | (1 << b)));
        }
    }
    best
}

fn gap(a: u8, b: u8) -> u8 {
    let d = a.abs_diff(b);
    // Aces connect low as well.
    let low = |v: u8| if v == 14 { 1 } else { v };
    d.min(low(a).abs_diff(low(b)))
}

pub fn classify_board(board: &[Card], street: Street) -> Result<BoardTexture, BoardSizeError> {
    if !(3..=5).contains(&board.len()) {
        return Err(BoardSizeError(board.len()));
    }
    let mut suit_counts = [0u8; 4];
    let mut rank_counts = [0u8; 15];
    for c in board {
        suit_counts[c.suit.index()] += 1;
        rank_counts[c.rank.value() as usize] += 1;
    }
    let max_suit = *suit_counts.iter().max().unwrap();
    let flush_suit = if max_suit >= 2 {
        Suit::ALL.into_iter().find(|s| suit_counts[s.index()] == max_suit)
    } else {
        None
    };
    let suit_label = match max_suit {
        0 | 1 => SuitLabel::Rainbow,
        2 => SuitLabel::TwoTone,
        3 if board.len() == 3 => SuitLabel::Monotone,
        3 => SuitLabel::FlushPossible,
        _ => SuitLabel::OneCardFlush,
    };

    let mult: Vec<u8> = rank_counts.iter().copied().filter(|&n| n >= 2).collect();
    let pairs = mult.iter().filter(|&&n| n == 2).count();
    let trips = mult.iter().filter(|&&n| n == 3).count();
    let quads = mult.iter().filter(|&&n| n == 4).count();
    let pair_structure = if quads > 0 {
        PairStructure::QuadsBoard
    } else if trips > 0 && pairs > 0 {
        PairStructure::FullHouseBoard
    } else if trips > 0 {
        PairStructure::TripsBoard
    } else if pairs >= 2 {
        PairStructure::DoublePaired
    } else if pairs == 1 {
        PairStructure::Paired
    } else {
        PairStructure::Unpaired
    };

    let mask = rank_mask(board.iter().map(|c| c.rank));
    let (two_card_combos, one_card_ranks) = straight_completions(mask);
    let straight_label = if !one_card_ranks.is_empty() {
        StraightLabel::OneCardStraight { open_ended: one_card_ranks.len() >= 2, types: one_card_ranks.len() }
    } else if two_card_combos > 0 {
        StraightLabel::StraightPossible { combos: two_card_combos }
    } else {
        StraightLabel::None
    };

    let distinct: Vec<u8> = (2..=14u8).filter(|v| rank_counts[*v as usize] > 0).collect();
    let mut close_pairs = 0;
    for (i, a) in distinct.iter().enumerate() {
        for b in &distinct[i + 1..] {
            if gap(*a, *b) <= 2 {
                close_pairs += 1;
            }
        }
    }
    let connected = close_pairs >= 2;

    let flush_score = match max_suit {
        0 | 1 => 0,
        2 => 1,
        3 => 2,
        _ => 3,
    };
    let straight_score = if !one_card_ranks.is_empty() {
        3
    } else {
        match two_card_combos {
            0 => 0,
            1 | 2 => 1,
            _ => 2,
        }
    };
    let wetness_score = flush_score + straight_score + u8::from(connected);
    let wetness = match wetness_score {
        0 => Wetness::Dry,
        1 => Wetness::SlightlyWet,
        2 | 3 => Wetness::Wet,
        _ => Wetness::VeryWet,
    };

    let highs = board.iter().filter(|c| c.rank >= Rank::Ten).count();
    let high_low = if highs == board.len() {
        HighLow::High
    } else if highs == 0 {
        HighLow::Low
    } else {
        HighLow::Mixed
    };

    let board_straight = board.len() == 5 && straight_high(mask).is_some();
    let special = match pair_structure {
        PairStructure::QuadsBoard => Some(SpecialBoard::QuadsBoard),
        PairStructure::FullHouseBoard => Some(SpecialBoard::FullHouseBoard),
        _ if max_suit == 5 => Some(SpecialBoard::BoardFlush),
        _ if board_straight => Some(SpecialBoard::BoardStraight),
        PairStructure::TripsBoard if board.len() == 3 => Some(SpecialBoard::TripsBoard),
        PairStructure::TripsBoard => Some(SpecialBoard::TripsPlusSide),
        PairStructure::DoublePaired => Some(SpecialBoard::DoublePaired),
        _ => None,
    };

    Ok(BoardTexture {
        street,
        wetness,
        wetness_score,
        suit_label,
        max_suit,
        flush_suit,
        pair_structure,
        straight_label,
        two_card_combos,
        one_card_ranks,
        connected,
        high_low,
        special,
        best_straight_high: best_straight(mask),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::parse_cards;

    fn tex(s: &str) -> BoardTexture {
        let b = parse_cards(s).unwrap();
        let street = match b.len() {
            3 => Street::Flop,
            4 => Street::Turn,
            _ => Street::River,
        };
        classify_board(&b, street).unwrap()
    }

    #[test]
    fn k72_rainbow_is_dry() {
        let t = tex("Ks7d2c");
        assert_eq!(t.wetness, Wetness::Dry);
        assert_eq!(t.suit_label, SuitLabel::Rainbow);
        assert_eq!(t.pair_structure, PairStructure::Unpaired);
        assert!(t.is_safe());
    }

    #[test]
    fn nine_eight_six_two_tone_is_wet() {
        let t = tex("9c8c6d");
        assert_eq!(t.wetness, Wetness::Wet);
        assert_eq!(t.two_card_combos, 2);
        assert_eq!(t.suit_label, SuitLabel::TwoTone);
    }

    #[test]
    fn trace_boards() {
        let flop = tex("7s6hJc");
        assert_eq!(flop.suit_label, SuitLabel::Rainbow);
        assert_eq!(flop.straight_label, StraightLabel::None);
        assert_eq!(flop.high_low, HighLow::Mixed);
        let turn = tex("7s6hJc6c");
        assert_eq!(turn.suit_label, SuitLabel::TwoTone);
        assert_eq!(turn.pair_structure, PairStructure::Paired);
        let river = tex("7s6hJc6c9h");
        assert_eq!(river.suit_label, SuitLabel::TwoTone);
        assert_eq!(river.straight_label, StraightLabel::StraightPossible { combos: 2 });
        assert_eq!(river.pair_structure, PairStructure::Paired);
        assert_eq!(river.high_low, HighLow::Mixed);
    }

    #[test]
    fn four_flush_is_one_card_flush() {
        let t = tex("2h7h9hKh");
        assert_eq!(t.suit_label, SuitLabel::OneCardFlush);
        assert!(t.flush_possible() && t.one_card_flush());
    }

    #[test]
    fn monotone_flop_is_flush_possible() {
        let t = tex("2h7h9h");
        assert_eq!(t.suit_label, SuitLabel::Monotone);
        assert!(t.flush_possible());
    }

    #[test]
    fn one_card_straight() {
        // 5-6-7-8: a 4 or a 9 completes.
        let t = tex("5c6d7h8s");
        assert_eq!(t.straight_label, StraightLabel::OneCardStraight { open_ended: true, types: 2 });
        let t = tex("5c6d8h9s");
        assert_eq!(t.straight_label, StraightLabel::OneCardStraight { open_ended: false, types: 1 });
    }

    #[test]
    fn special_boards() {
        assert_eq!(tex("7c7d7h").special, Some(SpecialBoard::TripsBoard));
        assert_eq!(tex("7c7d7hKs").special, Some(SpecialBoard::TripsPlusSide));
        assert_eq!(tex("7c7d7h7s").special, Some(SpecialBoard::QuadsBoard));
        assert_eq!(tex("7c7d7hKsKd").special, Some(SpecialBoard::FullHouseBoard));
        assert_eq!(tex("7c7dKhKs2d").special, Some(SpecialBoard::DoublePaired));
        assert_eq!(tex("2h7h9hKhJh").special, Some(SpecialBoard::BoardFlush));
        assert_eq!(tex("5c6d7h8s9s").special, Some(SpecialBoard::BoardStraight));
        assert_eq!(tex("7s6hJc6c").special, None);
    }

    #[test]
    fn size_errors() {
        let b = parse_cards("AhKh").unwrap();
        assert!(classify_board(&b, Street::Flop).is_err());
    }
}
