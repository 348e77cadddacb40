//! Made-hand and draw classification.

use super::board::{rank_mask, BoardTexture, SpecialBoard};
use crate::cards::{Card, Rank, Suit};
use crate::eval::{evaluate_unchecked, straight_high, Category, HandRank};
use crate::game::{PotType, Street};
use serde::{Deserialize, Serialize};

/// Made-hand classes, strongest first. The declaration order is the
/// reclassification ladder used for level-drop penalties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MadeClass {
    Nuts,
    Flush,
    Straight,
    Set,
    Trip,
    TwoPair,
    Overpair,
    TopPair,
    SecondPair,
    ThirdPair,
    FourthFifthPair,
    NutsHigh,
    SecondHigh,
    WeakShowdown,
    Trash,
}

impl MadeClass {
    pub const ALL: [MadeClass; 15] = [
        MadeClass::Nuts,
        MadeClass::Flush,
        MadeClass::Straight,
        MadeClass::Set,
        MadeClass::Trip,
        MadeClass::TwoPair,
        MadeClass::Overpair,
        MadeClass::TopPair,
        MadeClass::SecondPair,
        MadeClass::ThirdPair,
        MadeClass::FourthFifthPair,
        MadeClass::NutsHigh,
        MadeClass::SecondHigh,
        MadeClass::WeakShowdown,
        MadeClass::Trash,
    ];

    pub fn key(self) -> &'static str {
        match self {
            MadeClass::Nuts => "nuts",
            MadeClass::Flush => "flush",
            MadeClass::Straight => "straight",
            MadeClass::Set => "set",
            MadeClass::Trip => "trip",
            MadeClass::TwoPair => "two_pair",
            MadeClass::Overpair => "overpair",
            MadeClass::TopPair => "top_pair",
            MadeClass::SecondPair => "second_pair",
            MadeClass::ThirdPair => "third_pair",
            MadeClass::FourthFifthPair => "fourth_fifth_pair",
            MadeClass::NutsHigh => "nuts_high",
            MadeClass::SecondHigh => "second_high",
            MadeClass::WeakShowdown => "weak_showdown",
            MadeClass::Trash => "trash",
        }
    }

    pub fn from_key(s: &str) -> Option<MadeClass> {
        MadeClass::ALL.into_iter().find(|c| c.key() == s)
    }

    pub fn ladder_index(self) -> usize {
        self as usize
    }

    /// Classes whose budgets are shaped by texture level drops.
    pub fn uses_level_drops(self) -> bool {
        matches!(
            self,
            MadeClass::Overpair
                | MadeClass::TopPair
                | MadeClass::SecondPair
                | MadeClass::ThirdPair
                | MadeClass::FourthFifthPair
                | MadeClass::WeakShowdown
        )
    }

    /// One-pair and high-card showdown classes that take the combo add.
    pub fn is_showdown_class(self) -> bool {
        self.uses_level_drops() || matches!(self, MadeClass::NutsHigh | MadeClass::SecondHigh)
    }

    pub fn label(self) -> String {
        self.key().replace('_', " ").to_uppercase()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DrawClass {
    StrongDraw,
    MediumStrongDraw,
    MediumDraw,
    MediumWeakDraw,
    WeakDraw,
    StrongOvercardDraw,
    MediumOvercardDraw,
    WeakOvercardDraw,
}

impl DrawClass {
    pub const ALL: [DrawClass; 8] = [
        DrawClass::StrongDraw,
        DrawClass::MediumStrongDraw,
        DrawClass::MediumDraw,
        DrawClass::MediumWeakDraw,
        DrawClass::WeakDraw,
        DrawClass::StrongOvercardDraw,
        DrawClass::MediumOvercardDraw,
        DrawClass::WeakOvercardDraw,
    ];

    pub fn key(self) -> &'static str {
        match self {
            DrawClass::StrongDraw => "strong_draw",
            DrawClass::MediumStrongDraw => "medium_strong_draw",
            DrawClass::MediumDraw => "medium_draw",
            DrawClass::MediumWeakDraw => "medium_weak_draw",
            DrawClass::WeakDraw => "weak_draw",
            DrawClass::StrongOvercardDraw => "strong_overcard_draw",
            DrawClass::MediumOvercardDraw => "medium_overcard_draw",
            DrawClass::WeakOvercardDraw => "weak_overcard_draw",
        }
    }

    pub fn from_key(s: &str) -> Option<DrawClass> {
        DrawClass::ALL.into_iter().find(|c| c.key() == s)
    }

    pub fn is_overcard(self) -> bool {
        matches!(
            self,
            DrawClass::StrongOvercardDraw | DrawClass::MediumOvercardDraw | DrawClass::WeakOvercardDraw
        )
    }

    /// One tier weaker within the overcard family; `None` means trash.
    fn overcard_down(self) -> Option<DrawClass> {
        match self {
            DrawClass::StrongOvercardDraw => Some(DrawClass::MediumOvercardDraw),
            DrawClass::MediumOvercardDraw => Some(DrawClass::WeakOvercardDraw),
            DrawClass::WeakOvercardDraw => None,
            other => Some(other),
        }
    }

    pub fn label(self) -> String {
        self.key().replace('_', " ").to_uppercase()
    }
}

/// Tier inside a special-board override table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tier", content = "n")]
pub enum SpecialTier {
    Nuts,
    LowerFullHouse,
    FlushOrStraight,
    /// 1 = best possible kicker among unseen ranks.
    Kicker(u8),
    /// Board flush: 1 = highest private suited card.
    Suited(u8),
    NoSuited,
    /// Board straight improved at the top end.
    Improved,
    /// Hero plays the board.
    Shared,
    Trash,
}

impl SpecialTier {
    /// Key used in the override table.
    pub fn key(self) -> String {
        match self {
            SpecialTier::Nuts => "nuts".into(),
            SpecialTier::LowerFullHouse => "lower_full_house".into(),
            SpecialTier::FlushOrStraight => "flush_or_straight".into(),
            SpecialTier::Kicker(n) => format!("kicker{n}"),
            SpecialTier::Suited(n) => format!("suited{n}"),
            SpecialTier::NoSuited => "no_suited".into(),
            SpecialTier::Improved => "improved".into(),
            SpecialTier::Shared => "shared".into(),
            SpecialTier::Trash => "trash".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlushDraw {
    pub suit: Suit,
    /// Highest hole card of the draw suit.
    pub high: Rank,
    /// Drawing to the best flush still possible.
    pub nut: bool,
    /// Both hole cards are of the suit.
    pub two_card: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StraightDraw {
    /// Distinct ranks that complete a hero straight.
    pub out_ranks: u8,
    pub open_ended: bool,
    /// Every completion needs both hole cards.
    pub two_card: bool,
    /// A one-card gutshot filling in below the hole card (idiot end).
    pub bottom: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DrawFeatures {
    pub flush_draw: Option<FlushDraw>,
    pub straight_draw: Option<StraightDraw>,
    pub backdoor_flush: bool,
    pub backdoor_flush_two_card: bool,
    pub backdoor_straight: bool,
    /// Hole cards ranked above every board card.
    pub overcards: u8,
}

impl DrawFeatures {
    pub fn combo(&self) -> bool {
        self.flush_draw.is_some() && self.straight_draw.is_some()
    }

    pub fn oesd(&self) -> bool {
        self.straight_draw.map(|s| s.open_ended).unwrap_or(false)
    }

    pub fn gutshot(&self) -> bool {
        self.straight_draw.map(|s| !s.open_ended).unwrap_or(false)
    }
}

/// Class-specific details used by the budget tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MadeDetail {
    pub pair_rank: Option<Rank>,
    pub pocket_pair: bool,
    pub kicker: Option<Rank>,
    /// 4 or 5 for the fourth/fifth pair class.
    pub pair_depth: Option<u8>,
    /// 1 = nut flush.
    pub flush_tier: Option<u8>,
    pub flush_high: Option<Rank>,
    pub straight_two_card: Option<bool>,
    pub straight_top_end: Option<bool>,
    /// 1..=10, lexicographic over board-rank position pairs.
    pub two_pair_index: Option<u8>,
    /// Hero's top card position among ranks absent from the board (1 = highest).
    pub high_card_position: Option<u8>,
    /// High-card kicker as (position, candidates): 1 = best unseen rank
    /// below the top card; candidates counts every such rank.
    pub kicker_span: Option<(u8, u8)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HandClassification {
    pub made_class: MadeClass,
    pub draw_class: Option<DrawClass>,
    /// 1 = best kicker still possible.
    pub kicker_tier: Option<u8>,
    pub special_board_override: Option<(SpecialBoard, SpecialTier)>,
    pub detail: MadeDetail,
    pub draws: DrawFeatures,
    pub rank: HandRank,
}

impl HandClassification {
    pub fn describe(&self) -> String {
        let mut s = self.made_class.key().replace('_', " ");
        if let Some(d) = self.draw_class {
            s.push_str(" + ");
            s.push_str(&d.key().replace('_', " "));
        }
        s
    }

    /// The class whose guidance leads: a draw when the made hand has no
    /// showdown value (or is only high card next to a real draw).
    pub fn primary_class(&self) -> PrimaryClass {
        match (self.made_class, self.draw_class) {
            (MadeClass::Trash, Some(d)) => PrimaryClass::Draw(d),
            (MadeClass::NutsHigh | MadeClass::SecondHigh | MadeClass::WeakShowdown, Some(d)) if !d.is_overcard() => PrimaryClass::Draw(d),
            (m, _) => PrimaryClass::Made(m),
        }
    }

    /// Prompt headline, e.g. "STRONG DRAW" for a pure draw.
    pub fn headline(&self) -> String {
        match (self.made_class, self.draw_class) {
            (MadeClass::Trash, Some(d)) => d.key().trim_end_matches("_draw").replace('_', " ").to_uppercase() + " DRAW",
            (m, _) => m.label(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family", content = "class")]
pub enum PrimaryClass {
    Made(MadeClass),
    Draw(DrawClass),
}

impl PrimaryClass {
    pub fn key(self) -> &'static str {
        match self {
            PrimaryClass::Made(m) => m.key(),
            PrimaryClass::Draw(d) => d.key(),
        }
    }

    /// Every class key the hand-strength guidance must cover.
    pub fn all_keys() -> Vec<&'static str> {
        MadeClass::ALL.iter().map(|m| m.key()).chain(DrawClass::ALL.iter().map(|d| d.key())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("hand classification needs a flop, turn or river board")]
    Preflop,
    #[error("board has {got} cards but street {street} needs {need}")]
    BoardMismatch { street: Street, got: usize, need: usize },
    #[error(transparent)]
    Card(#[from] crate::cards::CardError),
}

/// Category of the board alone; boards under five cards are scored by rank counts.
fn board_only(board: &[Card]) -> HandRank {
    if board.len() == 5 {
        return evaluate_unchecked(board);
    }
    let mut counts = [0u8; 15];
    for c in board {
        counts[c.rank.value() as usize] += 1;
    }
    let mut groups: Vec<(u8, u8)> = (2..=14u8).filter(|v| counts[*v as usize] > 0).map(|v| (counts[v as usize], v)).collect();
    groups.sort_by(|a, b| b.cmp(a));
    let cat = match (groups[0].0, groups.get(1).map(|g| g.0)) {
        (4, _) => Category::Quads,
        (3, _) => Category::Trips,
        (2, Some(2)) => Category::TwoPair,
        (2, _) => Category::OnePair,
        _ => Category::HighCard,
    };
    let ties: Vec<u8> = groups.iter().map(|g| g.1).collect();
    HandRank::new(cat, &ties)
}

struct Ctx<'a> {
    hole: [Card; 2],
    board: &'a [Card],
    texture: &'a BoardTexture,
    counts: [u8; 15],
}

impl Ctx<'_> {
    fn on_board(&self, r: Rank) -> u8 {
        self.counts[r.value() as usize]
    }

    fn holds(&self, r: Rank) -> bool {
        self.hole.iter().any(|c| c.rank == r)
    }

    /// Ranks absent from the board, descending.
    fn unseen_ranks(&self) -> Vec<Rank> {
        Rank::ALL.iter().rev().copied().filter(|r| self.on_board(*r) == 0).collect()
    }

    /// 1 + number of ranks above `k` not on the board and not held.
    fn kicker_tier(&self, k: Rank) -> u8 {
        1 + Rank::ALL.iter().filter(|r| **r > k && self.on_board(**r) == 0 && !self.holds(**r)).count() as u8
    }

    fn board_top(&self) -> Rank {
        self.board.iter().map(|c| c.rank).max().unwrap()
    }

    fn distinct_above(&self, r: Rank) -> usize {
        Rank::ALL.iter().filter(|x| **x > r && self.on_board(**x) > 0).count()
    }
}

pub fn classify_hand(
    hole: [Card; 2],
    board: &[Card],
    texture: &BoardTexture,
    pot_type: PotType,
    street: Street,
) -> Result<HandClassification, ClassifyError> {
    if street == Street::Preflop {
        return Err(ClassifyError::Preflop);
    }
    if board.len() != street.board_len() {
        return Err(ClassifyError::BoardMismatch { street, got: board.len(), need: street.board_len() });
    }
    let mut all = Vec::with_capacity(7);
    all.extend_from_slice(&hole);
    all.extend_from_slice(board);
    crate::cards::check_distinct(&all)?;

    let mut counts = [0u8; 15];
    for c in board {
        counts[c.rank.value() as usize] += 1;
    }
    let cx = Ctx { hole, board, texture, counts };
    let rank = evaluate_unchecked(&all);
    let board_rank = board_only(board);

    let (made_class, detail, kicker_tier) = classify_made(&cx, rank, board_rank);
    let draws = if street == Street::River { DrawFeatures::default() } else { draw_features(&cx, street) };
    let draw_class = if street == Street::River || made_class <= MadeClass::Straight {
        None
    } else {
        draw_class(&cx, &draws, made_class, pot_type)
    };
    let special_board_override = texture.special.map(|sb| (sb, special_tier(&cx, sb, rank, board_rank)));

    Ok(HandClassification { made_class, draw_class, kicker_tier, special_board_override, detail, draws, rank })
}

fn classify_made(cx: &Ctx, rank: HandRank, board_rank: HandRank) -> (MadeClass, MadeDetail, Option<u8>) {
    let t = cx.texture;
    let mut d = MadeDetail::default();
    let [h0, h1] = cx.hole;
    let improves = rank > board_rank && rank.category > board_rank.category
        || (cx.board.len() == 5 && rank > board_rank && rank.category >= Category::Straight);

    if rank.category >= Category::FullHouse && rank.category > board_rank.category {
        return (MadeClass::Nuts, d, None);
    }

    if matches!(rank.category, Category::Flush) && improves {
        let counts = Suit::ALL.map(|s| cx.hole.iter().chain(cx.board).filter(|c| c.suit == s).count());
        let suit = Suit::ALL[counts.iter().position(|n| *n >= 5).unwrap()];
        let high = cx.hole.iter().filter(|c| c.suit == suit).map(|c| c.rank).max().unwrap();
        let tier = 1 + Rank::ALL
            .iter()
            .filter(|r| **r > high)
            .filter(|r| !cx.board.iter().any(|c| c.suit == suit && c.rank == **r))
            .filter(|r| !cx.hole.iter().any(|c| c.suit == suit && c.rank == **r))
            .count() as u8;
        d.flush_tier = Some(tier);
        d.flush_high = Some(high);
        if tier == 1 && !t.paired() {
            return (MadeClass::Nuts, d, None);
        }
        return (MadeClass::Flush, d, None);
    }

    if rank.category == Category::Straight && improves {
        let hi = rank.tiebreak[0];
        let bmask = rank_mask(cx.board.iter().map(|c| c.rank));
        let one_card = cx.hole.iter().any(|h| straight_high(bmask | (1 << h.rank.value())) == Some(hi));
        let top_end = t.best_straight_high == Some(hi);
        d.straight_two_card = Some(!one_card);
        d.straight_top_end = Some(top_end);
        if top_end && !t.flush_possible() && !t.paired() {
            return (MadeClass::Nuts, d, None);
        }
        return (MadeClass::Straight, d, None);
    }

    let pocket = h0.rank == h1.rank;
    if pocket && cx.on_board(h0.rank) == 1 {
        d.pair_rank = Some(h0.rank);
        d.pocket_pair = true;
        if !t.flush_possible() && !t.paired() && !t.straighty() {
            return (MadeClass::Nuts, d, None);
        }
        return (MadeClass::Set, d, None);
    }
    if let Some((trip, other)) = [(h0, h1), (h1, h0)].into_iter().find(|(a, _)| cx.on_board(a.rank) == 2) {
        if !pocket {
            d.pair_rank = Some(trip.rank);
            d.kicker = Some(other.rank);
            let kt = cx.kicker_tier(other.rank);
            return (MadeClass::Trip, d, Some(kt));
        }
    }
    if !pocket && cx.on_board(h0.rank) == 1 && cx.on_board(h1.rank) == 1 && !t.paired() {
        // Index pairs of board rank positions (highest first) lexicographically.
        let mut ranks: Vec<Rank> = cx.board.iter().map(|c| c.rank).collect();
        ranks.sort_by(|a, b| b.cmp(a));
        let i = ranks.iter().position(|r| *r == h0.rank.max(h1.rank)).unwrap();
        let j = ranks.iter().position(|r| *r == h0.rank.min(h1.rank)).unwrap();
        let mut idx = 0u8;
        'outer: for a in 0..5 {
            for b in (a + 1)..5 {
                idx += 1;
                if a == i && b == j {
                    break 'outer;
                }
            }
        }
        d.two_pair_index = Some(idx);
        return (MadeClass::TwoPair, d, None);
    }
    if pocket && cx.on_board(h0.rank) == 0 {
        d.pair_rank = Some(h0.rank);
        d.pocket_pair = true;
        let above = cx.distinct_above(h0.rank);
        return (pair_class(above, &mut d, true), d, None);
    }
    let hits: Vec<(Card, Card)> =
        [(h0, h1), (h1, h0)].into_iter().filter(|(a, _)| cx.on_board(a.rank) == 1).collect();
    if let Some((pair, other)) = hits.into_iter().max_by_key(|(a, _)| a.rank) {
        d.pair_rank = Some(pair.rank);
        d.kicker = Some(other.rank);
        let above = cx.distinct_above(pair.rank);
        let class = pair_class(above, &mut d, false);
        return (class, d, Some(cx.kicker_tier(other.rank)));
    }

    // No private pair: high-card showdown tiers.
    let unseen = cx.unseen_ranks();
    let (top, low) = if h0.rank >= h1.rank { (h0.rank, h1.rank) } else { (h1.rank, h0.rank) };
    let pos = unseen.iter().position(|r| *r == top).map(|p| p as u8 + 1);
    d.high_card_position = pos;
    d.kicker = Some(low);
    let kt = Some(cx.kicker_tier(low));
    let floor = if pos == Some(2) && !t.paired() { Rank::Ten } else { Rank::Two };
    let below: Vec<Rank> = unseen.iter().copied().filter(|r| *r < top && *r >= floor).collect();
    if let Some(p) = below.iter().position(|r| *r == low) {
        d.kicker_span = Some((p as u8 + 1, below.len() as u8));
    }
    match pos {
        Some(1) => (MadeClass::NutsHigh, d, kt),
        Some(2) if !t.paired() && low >= Rank::Ten => (MadeClass::SecondHigh, d, kt),
        Some(2) | Some(3) => (MadeClass::WeakShowdown, d, kt),
        _ => (MadeClass::Trash, d, None),
    }
}

fn pair_class(above: usize, d: &mut MadeDetail, pocket: bool) -> MadeClass {
    match above {
        0 if pocket => MadeClass::Overpair,
        0 => MadeClass::TopPair,
        1 => MadeClass::SecondPair,
        2 => MadeClass::ThirdPair,
        n => {
            d.pair_depth = Some(if n == 3 { 4 } else { 5 });
            MadeClass::FourthFifthPair
        }
    }
}

fn special_tier(cx: &Ctx, sb: SpecialBoard, rank: HandRank, board_rank: HandRank) -> SpecialTier {
    let beats_board = rank > board_rank;
    let [h0, h1] = cx.hole;
    let top = h0.rank.max(h1.rank);
    // Kicker position among ranks that can still play (not on the board).
    let kicker_tier = |r: Rank| cx.kicker_tier(r);
    let kicker_only = |limit: u8| {
        // A hole card must beat the board's own kicker to count.
        let t = kicker_tier(top);
        if !beats_board {
            SpecialTier::Shared
        } else if t <= limit {
            SpecialTier::Kicker(t)
        } else {
            SpecialTier::Trash
        }
    };
    match sb {
        SpecialBoard::QuadsBoard => {
            if rank.category == Category::StraightFlush {
                return SpecialTier::Nuts;
            }
            match kicker_only(3) {
                SpecialTier::Kicker(1) => SpecialTier::Nuts,
                other => other,
            }
        }
        SpecialBoard::FullHouseBoard => {
            if beats_board && rank.category >= Category::FullHouse {
                SpecialTier::Nuts
            } else {
                SpecialTier::Shared
            }
        }
        SpecialBoard::BoardFlush => {
            if rank.category == Category::StraightFlush || rank.category >= Category::FullHouse {
                return SpecialTier::Nuts;
            }
            let suit = cx.board[0].suit;
            let high = cx.hole.iter().filter(|c| c.suit == suit).map(|c| c.rank).max();
            match high {
                Some(h) if beats_board => {
                    let tier = 1 + Rank::ALL
                        .iter()
                        .filter(|r| **r > h && !cx.board.iter().any(|c| c.rank == **r) && !cx.holds(**r))
                        .count() as u8;
                    if tier == 1 {
                        SpecialTier::Nuts
                    } else {
                        SpecialTier::Suited(tier)
                    }
                }
                _ => SpecialTier::NoSuited,
            }
        }
        SpecialBoard::BoardStraight => {
            if beats_board {
                SpecialTier::Improved
            } else {
                SpecialTier::Shared
            }
        }
        SpecialBoard::TripsBoard => {
            if rank.category >= Category::FullHouse {
                SpecialTier::Nuts
            } else {
                kicker_only(2)
            }
        }
        SpecialBoard::TripsPlusSide | SpecialBoard::DoublePaired => {
            if rank.category >= Category::Quads {
                return SpecialTier::Nuts;
            }
            if rank.category == Category::FullHouse && beats_board {
                return if best_full_house(cx.board).is_none_or(|b| rank >= b) {
                    SpecialTier::Nuts
                } else {
                    SpecialTier::LowerFullHouse
                };
            }
            if matches!(rank.category, Category::Flush | Category::Straight) {
                return SpecialTier::FlushOrStraight;
            }
            kicker_only(3)
        }
    }
}

/// Best full house any two unseen cards can make on this board.
fn best_full_house(board: &[Card]) -> Option<HandRank> {
    let deck: Vec<Card> = Card::deck().into_iter().filter(|c| !board.contains(c)).collect();
    let mut best = None;
    let mut cards = board.to_vec();
    cards.extend([deck[0], deck[0]]);
    let n = board.len();
    for i in 0..deck.len() {
        for j in (i + 1)..deck.len() {
            cards[n] = deck[i];
            cards[n + 1] = deck[j];
            let r = evaluate_unchecked(&cards);
            if r.category == Category::FullHouse && best.is_none_or(|b| r > b) {
                best = Some(r);
            }
        }
    }
    best
}

fn draw_features(cx: &Ctx, street: Street) -> DrawFeatures {
    let mut f = DrawFeatures::default();
    let bmask = rank_mask(cx.board.iter().map(|c| c.rank));
    let hmask = rank_mask(cx.hole.iter().map(|c| c.rank));
    let all = bmask | hmask;

    // Flush draw: exactly four of a suit including at least one hole card.
    for s in Suit::ALL {
        let on_board = cx.board.iter().filter(|c| c.suit == s).count();
        let held: Vec<Rank> = cx.hole.iter().filter(|c| c.suit == s).map(|c| c.rank).collect();
        if held.is_empty() {
            continue;
        }
        let total = on_board + held.len();
        if total == 4 {
            let high = *held.iter().max().unwrap();
            let nut = !Rank::ALL
                .iter()
                .any(|r| *r > high && !cx.board.iter().any(|c| c.suit == s && c.rank == *r) && !held.contains(r));
            f.flush_draw = Some(FlushDraw { suit: s, high, nut, two_card: held.len() == 2 });
        } else if total == 3 && street == Street::Flop {
            f.backdoor_flush = true;
            f.backdoor_flush_two_card |= held.len() == 2;
        }
    }

    // Straight draw: ranks that complete a straight better than the board's own.
    let beats = |extra: u16| {
        let mine = straight_high(all | extra);
        mine.is_some() && mine > straight_high(bmask | extra)
    };
    let made = straight_high(all).is_some();
    if !made {
        let outs: Vec<u8> = (2..=14u8).filter(|v| all & (1 << v) == 0 && beats(1 << v)).collect();
        if !outs.is_empty() {
            let one_card: Vec<bool> = outs
                .iter()
                .map(|v| {
                    let target = straight_high(all | (1 << v));
                    cx.hole.iter().any(|h| straight_high(bmask | (1 << h.rank.value()) | (1 << v)) == target)
                })
                .collect();
            let two_card = one_card.iter().all(|o| !o);
            let bottom = outs.len() == 1 && {
                // The completing card sits at the low end of the finished straight.
                let hi = straight_high(all | (1 << outs[0])).unwrap();
                let lo = if hi == 5 { 1 } else { hi - 4 };
                let out_v = if outs[0] == 14 && hi == 5 { 1 } else { outs[0] };
                out_v == lo && !two_card
            };
            f.straight_draw = Some(StraightDraw {
                out_ranks: outs.len() as u8,
                open_ended: outs.len() >= 2,
                two_card,
                bottom,
            });
        }
        if street == Street::Flop && f.straight_draw.is_none() {
            'bd: for a in 2..=14u8 {
                for b in (a + 1)..=14u8 {
                    if all & (1 << a) == 0 && all & (1 << b) == 0 && beats((1 << a) | (1 << b)) {
                        f.backdoor_straight = true;
                        break 'bd;
                    }
                }
            }
        }
    }

    let top = cx.board_top();
    f.overcards = cx.hole.iter().filter(|c| c.rank > top).count() as u8;
    f
}

fn holds_pair(cx: &Ctx, a: Rank, b: Rank) -> bool {
    let [h0, h1] = cx.hole;
    (h0.rank == a && h1.rank == b) || (h0.rank == b && h1.rank == a)
}

fn draw_class(cx: &Ctx, f: &DrawFeatures, made: MadeClass, pot_type: PotType) -> Option<DrawClass> {
    use DrawClass::*;
    let t = cx.texture;
    let flushy = t.flush_possible();
    let straighty = t.straighty();
    let rainbow = t.max_suit <= 1;
    let two_tone = t.max_suit == 2;
    let fd = f.flush_draw;
    let fd_rank = fd.map(|d| d.high);
    let sd = f.straight_draw;
    let combo = f.combo();
    let oesd = f.oesd();
    let gut = f.gutshot();
    let bd_double = f.backdoor_flush && f.backdoor_straight;
    let in_range = |lo: Rank, hi: Rank| fd_rank.map(|r| r >= lo && r <= hi).unwrap_or(false);

    // Real draws, strongest rule first.
    let real = if (combo && !flushy)
        || (fd.is_some() && flushy && fd.unwrap().nut)
        || (fd.is_some() && !flushy && fd_rank >= Some(Rank::Jack))
        || (oesd && rainbow && !straighty)
        || (combo && flushy && fd_rank >= Some(Rank::King))
    {
        Some(StrongDraw)
    } else if (fd.is_some() && !flushy)
        || (combo && flushy && in_range(Rank::Jack, Rank::Queen))
        || (oesd && rainbow && straighty)
        || (oesd && two_tone && !straighty && sd.unwrap().two_card)
        || (fd.is_some() && flushy && fd_rank >= Some(Rank::King))
    {
        Some(MediumStrongDraw)
    } else if (fd.is_some() && flushy && in_range(Rank::Ten, Rank::Queen))
        || (oesd && two_tone && straighty)
        || (oesd && two_tone && !straighty)
        || (combo && flushy && in_range(Rank::Eight, Rank::Ten))
        || (gut && !flushy && (f.overcards > 0 || f.backdoor_flush) && !t.connected)
    {
        Some(MediumDraw)
    } else if (gut && !flushy && sd.unwrap().two_card)
        || (gut && !sd.unwrap().two_card && !sd.unwrap().bottom)
        || (fd.is_some() && flushy && fd_rank >= Some(Rank::Six))
        || (combo && flushy)
        || (oesd && flushy && f.overcards == 2)
        || (f.overcards == 2 && bd_double)
    {
        Some(MediumWeakDraw)
    } else if (gut && sd.unwrap().bottom && !flushy) || (oesd && flushy) || fd.is_some() || gut || bd_double {
        Some(WeakDraw)
    } else {
        None
    };
    if real.is_some() {
        return real;
    }

    // Overcard family only applies to hands without a private pair.
    if made < MadeClass::NutsHigh {
        return None;
    }
    let [h0, h1] = cx.hole;
    let (hi, lo) = if h0.rank >= h1.rank { (h0.rank, h1.rank) } else { (h1.rank, h0.rank) };
    let sum = hi.value() + lo.value();
    let any_bd = f.backdoor_flush || f.backdoor_straight;
    let board_top = cx.board_top();
    let mut sorted: Vec<Rank> = cx.board.iter().map(|c| c.rank).collect();
    sorted.sort_by(|a, b| b.cmp(a));
    sorted.dedup();
    let second_board = sorted.get(1).copied().unwrap_or(Rank::Two);
    let dual = f.overcards == 2;
    let single_t = f.overcards == 1 && hi >= Rank::Ten;
    use Rank::*;
    let is = |a: Rank, b: Rank| holds_pair(cx, a, b);

    let mut class = if dual && (is(Ace, King) || is(Ace, Queen))
        || (dual && (is(King, Queen) || is(Ace, Jack)) && f.backdoor_straight)
        || (dual && (is(King, Jack) || is(Queen, Jack) || is(Ace, Ten)) && (f.backdoor_flush_two_card || f.backdoor_straight))
    {
        Some(StrongOvercardDraw)
    } else if (dual && sum > 19)
        || (dual && any_bd)
        || (single_t && bd_double)
        || (single_t && any_bd && lo > second_board)
        || (board_top == King && is(Queen, Jack))
        || (board_top == King && (is(Queen, Ten) || is(Jack, Ten) || is(Queen, Nine)) && f.backdoor_flush)
        || (board_top == Ace && (is(King, Queen) || is(King, Jack)))
    {
        Some(MediumOvercardDraw)
    } else if dual
        || (single_t && any_bd)
        || (board_top == Queen && is(Jack, Ten))
        || (board_top == King && (is(Queen, Ten) || is(Jack, Ten) || is(Queen, Nine)))
        || (single_t && lo > second_board)
    {
        Some(WeakOvercardDraw)
    } else {
        None
    };

    // Texture downgrade: flushy without a flush draw, or straighty.
    if (flushy && fd.is_none()) || straighty {
        class = class.and_then(DrawClass::overcard_down);
    }
    let bdfd = f.backdoor_flush;
    match pot_type {
        PotType::ThreeBet => {
            let keep = is(Ace, King)
                || ((is(Ace, Queen) || is(King, Queen) || is(Ace, Jack)) && bdfd)
                || ((is(Ace, Jack) || is(King, Jack) || is(Ace, Ten)) && bdfd && f.backdoor_straight);
            if !(keep && class == Some(StrongOvercardDraw)) {
                class = class.and_then(DrawClass::overcard_down);
            }
        }
        PotType::FourBetPlus => {
            let keep = is(Ace, King) && bdfd;
            if !(keep && class == Some(StrongOvercardDraw)) {
                class = class.and_then(DrawClass::overcard_down);
            }
        }
        _ => {}
    }
    class
}
