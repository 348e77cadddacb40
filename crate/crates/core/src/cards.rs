//! Card primitives.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Rank {
    Two = 2,
    Three,
    Four,
    Five,
    Six,
    Seven,
    Eight,
    Nine,
    Ten,
    Jack,
    Queen,
    King,
    Ace,
}

impl Rank {
    pub const ALL: [Rank; 13] = [
        Rank::Two,
        Rank::Three,
        Rank::Four,
        Rank::Five,
        Rank::Six,
        Rank::Seven,
        Rank::Eight,
        Rank::Nine,
        Rank::Ten,
        Rank::Jack,
        Rank::Queen,
        Rank::King,
        Rank::Ace,
    ];

    /// Numeric value, 2..=14.
    pub fn value(self) -> u8 {
        self as u8
    }

    pub fn from_value(v: u8) -> Option<Rank> {
        if (2..=14).contains(&v) {
            Some(Rank::ALL[(v - 2) as usize])
        } else {
            None
        }
    }

    pub fn to_char(self) -> char {
        b"23456789TJQKA"[(self as u8 - 2) as usize] as char
    }

    pub fn from_char(c: char) -> Option<Rank> {
        "23456789TJQKA"
            .find(c)
            .map(|i| Rank::ALL[i])
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Suit {
    Clubs = 0,
    Diamonds,
    Hearts,
    Spades,
}

impl Suit {
    pub const ALL: [Suit; 4] = [Suit::Clubs, Suit::Diamonds, Suit::Hearts, Suit::Spades];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn to_char(self) -> char {
        b"cdhs"[self as usize] as char
    }

    pub fn from_char(c: char) -> Option<Suit> {
        "cdhs".find(c).map(|i| Suit::ALL[i])
    }
}

impl fmt::Display for Suit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card {
    pub rank: Rank,
    pub suit: Suit,
}

impl Card {
    pub const fn new(rank: Rank, suit: Suit) -> Card {
        Card { rank, suit }
    }

    /// Dense index 0..52, rank-major.
    pub fn index(self) -> usize {
        (self.rank as usize - 2) * 4 + self.suit as usize
    }

    pub fn from_index(i: usize) -> Option<Card> {
        if i >= 52 {
            return None;
        }
        Some(Card::new(Rank::ALL[i / 4], Suit::ALL[i % 4]))
    }

    /// All 52 cards in index order.
    pub fn deck() -> Vec<Card> {
        (0..52).filter_map(Card::from_index).collect()
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.rank, self.suit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CardError {
    #[error("invalid card `{0}`")]
    Invalid(String),
    #[error("duplicate card {0}")]
    Duplicate(Card),
}

impl FromStr for Card {
    type Err = CardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let (Some(r), Some(su), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(CardError::Invalid(s.to_string()));
        };
        match (Rank::from_char(r), Suit::from_char(su)) {
            (Some(rank), Some(suit)) => Ok(Card::new(rank, suit)),
            _ => Err(CardError::Invalid(s.to_string())),
        }
    }
}

impl Serialize for Card {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Card {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! char_serde {
    ($t:ty, $what:literal) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                let mut it = s.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => <$t>::from_char(c).ok_or_else(|| serde::de::Error::custom(format!(concat!("invalid ", $what, " {:?}"), s))),
                    _ => Err(serde::de::Error::custom(format!(concat!("invalid ", $what, " {:?}"), s))),
                }
            }
        }
    };
}

char_serde!(Rank, "rank");
char_serde!(Suit, "suit");

/// Parses cards written back to back ("7s6hJc") or separated by spaces or
/// commas ("7s 6h Jc"). Rejects duplicates.
pub fn parse_cards(s: &str) -> Result<Vec<Card>, CardError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
    let chars: Vec<char> = compact.chars().collect();
    if !chars.len().is_multiple_of(2) {
        // Report the trailing fragment, which is the likeliest typo.
        let tok: String = chars[chars.len() - 1..].iter().collect();
        return Err(CardError::Invalid(tok));
    }
    let mut out = Vec::with_capacity(chars.len() / 2);
    for pair in chars.chunks(2) {
        let tok: String = pair.iter().collect();
        let card: Card = tok.parse()?;
        if out.contains(&card) {
            return Err(CardError::Duplicate(card));
        }
        out.push(card);
    }
    Ok(out)
}

pub fn format_cards(cards: &[Card]) -> String {
    cards.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Errors if any card appears twice.
pub fn check_distinct(cards: &[Card]) -> Result<(), CardError> {
    let mut seen = 0u64;
    for c in cards {
        let bit = 1u64 << c.index();
        if seen & bit != 0 {
            return Err(CardError::Duplicate(*c));
        }
        seen |= bit;
    }
    Ok(())
}

/// Short hole-card label: "AKs", "54o", "TT".
pub fn hand_label(hole: [Card; 2]) -> String {
    let (hi, lo) = if hole[0].rank >= hole[1].rank {
        (hole[0], hole[1])
    } else {
        (hole[1], hole[0])
    };
    if hi.rank == lo.rank {
        format!("{}{}", hi.rank, lo.rank)
    } else if hi.suit == lo.suit {
        format!("{}{}s", hi.rank, lo.rank)
    } else {
        format!("{}{}o", hi.rank, lo.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cards_round_trip() {
        let deck = Card::deck();
        assert_eq!(deck.len(), 52);
        for c in &deck {
            let s = c.to_string();
            assert_eq!(s.parse::<Card>().unwrap(), *c);
            assert_eq!(Card::from_index(c.index()), Some(*c));
        }
        check_distinct(&deck).unwrap();
    }

    #[test]
    fn parse_variants() {
        let a = parse_cards("7s6hJc").unwrap();
        let b = parse_cards("7s 6h, Jc").unwrap();
        assert_eq!(a, b);
        assert_eq!(format_cards(&a), "7s 6h Jc");
        assert!(matches!(parse_cards("7s7s"), Err(CardError::Duplicate(_))));
        assert!(matches!(parse_cards("7x"), Err(CardError::Invalid(t)) if t == "7x"));
        assert!("5C".parse::<Card>().is_err(), "suits are lowercase");
    }

    #[test]
    fn labels() {
        let h = parse_cards("5c4c").unwrap();
        assert_eq!(hand_label([h[0], h[1]]), "54s");
        let h = parse_cards("4dAs").unwrap();
        assert_eq!(hand_label([h[0], h[1]]), "A4o");
        let h = parse_cards("ThTd").unwrap();
        assert_eq!(hand_label([h[0], h[1]]), "TT");
    }
}
