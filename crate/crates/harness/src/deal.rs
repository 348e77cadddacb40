//! Seeded dealing.
//!
//! Deal `i` of a match with seed `s` is a Fisher–Yates shuffle of the
//! 52-card deck (index order, rank-major) driven by ChaCha20 keyed with
//! `s` on stream `i`. Draws below `n` use rejection sampling on `u32`
//! outputs. Only the ChaCha20 keystream is relied on, so deals are the same
//! on every platform.

use hunl_core::cards::Card;
use hunl_core::game::Seat;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deal {
    pub hole: [[Card; 2]; 2],
    /// Flop, turn, river in order.
    pub runout: Vec<Card>,
}

impl Deal {
    /// Same cards with the seats' hole cards exchanged.
    pub fn mirrored(&self) -> Deal {
        Deal { hole: [self.hole[1], self.hole[0]], runout: self.runout.clone() }
    }

    pub fn hole_of(&self, seat: Seat) -> [Card; 2] {
        self.hole[seat.index()]
    }
}

fn below(rng: &mut ChaCha20Rng, n: u32) -> u32 {
    let limit = u32::MAX - u32::MAX % n;
    loop {
        let x = rng.next_u32();
        if x < limit {
            return x % n;
        }
    }
}

pub fn shuffled_deck(seed: u64, index: u64) -> Vec<Card> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut deck = Card::deck();
    for i in (1..deck.len()).rev() {
        let j = below(&mut rng, i as u32 + 1) as usize;
        deck.swap(i, j);
    }
    deck
}

/// Seat 0 gets the first two cards, seat 1 the next two, then five board
/// cards.
pub fn deal(seed: u64, index: u64) -> Deal {
    let d = shuffled_deck(seed, index);
    Deal { hole: [[d[0], d[1]], [d[2], d[3]]], runout: d[4..9].to_vec() }
}
