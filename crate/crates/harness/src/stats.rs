//! Match statistics, always from seat 0's point of view.
//!
//! Sums are kept in integer centi-BB so the result does not depend on the
//! order records are added in.

use crate::history::HandHistoryRecord;
use hunl_core::game::{Action, Street};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchStats {
    pub hands: u64,
    pub agents: [String; 2],
    /// Seat 0's mean result, milli-BB per hand.
    pub mbb_per_hand: f64,
    /// Standard error of the mean, s/√n. Duplicate matches use the pair
    /// averages as samples.
    pub se_mbb: f64,
    /// Samples behind `se_mbb`: hands, or pairs when duplicated.
    pub samples: u64,
    pub duplicate: bool,
    pub decisions: u64,
    pub fallbacks: u64,
    pub fallback_rate: f64,
    pub showdowns: u64,
    /// street -> action -> count, both seats.
    pub actions: BTreeMap<String, BTreeMap<String, u64>>,
}

#[derive(Debug, Default)]
pub struct StatsBuilder {
    hands: u64,
    agents: Option<[String; 2]>,
    /// sample key -> summed centi-BB for seat 0
    samples: BTreeMap<(bool, u64), i64>,
    total: i64,
    decisions: u64,
    fallbacks: u64,
    showdowns: u64,
    actions: BTreeMap<String, BTreeMap<String, u64>>,
}

fn action_name(a: Action, facing: bool) -> &'static str {
    match a {
        Action::Fold => "fold",
        Action::Check => "check",
        Action::Call => "call",
        Action::BetTo(_) if facing => "raise",
        Action::BetTo(_) => "bet",
        Action::AllIn => "allin",
    }
}

impl StatsBuilder {
    pub fn add(&mut self, rec: &HandHistoryRecord) {
        self.hands += 1;
        self.agents.get_or_insert_with(|| rec.agents.clone());
        let net = rec.result[0].centi();
        self.total += net;
        let key = match rec.pair {
            Some(p) => (true, p),
            None => (false, rec.hand_id),
        };
        *self.samples.entry(key).or_default() += net;
        self.showdowns += rec.showdown as u64;
        for d in &rec.decisions {
            self.decisions += 1;
            self.fallbacks += d.fallback as u64;
            let street: &str = d.state.street.name();
            *self.actions.entry(street.to_string()).or_default().entry(action_name(d.action, !d.state.to_call.is_zero()).to_string()).or_default() += 1;
        }
    }

    pub fn finish(self) -> MatchStats {
        let duplicate = self.samples.keys().any(|k| k.0);
        let n = self.samples.len() as u64;
        // Pair samples are sums of two hands; halve to get per-hand means.
        let scale = if duplicate { 0.5 } else { 1.0 };
        let xs: Vec<f64> = self.samples.values().map(|&c| c as f64 * scale * 10.0).collect();
        let mean = if self.hands == 0 { 0.0 } else { self.total as f64 * 10.0 / self.hands as f64 };
        let se = if n < 2 {
            0.0
        } else {
            let m = xs.iter().sum::<f64>() / n as f64;
            let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        };
        MatchStats {
            hands: self.hands,
            agents: self.agents.unwrap_or_default(),
            mbb_per_hand: mean,
            se_mbb: se,
            samples: n,
            duplicate,
            decisions: self.decisions,
            fallbacks: self.fallbacks,
            fallback_rate: if self.decisions == 0 { 0.0 } else { self.fallbacks as f64 / self.decisions as f64 },
            showdowns: self.showdowns,
            actions: self.actions,
        }
    }
}

impl MatchStats {
    pub fn builder() -> StatsBuilder {
        StatsBuilder::default()
    }

    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a HandHistoryRecord>) -> MatchStats {
        let mut b = StatsBuilder::default();
        for r in records {
            b.add(r);
        }
        b.finish()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} vs {}: {} hands, {:+.1} ± {:.1} mbb/hand ({} samples{})\n",
            self.agents[0],
            self.agents[1],
            self.hands,
            self.mbb_per_hand,
            self.se_mbb,
            self.samples,
            if self.duplicate { ", duplicate pairs" } else { "" }
        );
        s += &format!(
            "decisions {}, fallbacks {} ({:.3}%), showdowns {}\n",
            self.decisions,
            self.fallbacks,
            self.fallback_rate * 100.0,
            self.showdowns
        );
        for street in Street::ALL {
            if let Some(m) = self.actions.get(street.name()) {
                let total: u64 = m.values().sum();
                let parts: Vec<String> =
                    m.iter().map(|(k, v)| format!("{k} {:.1}%", *v as f64 * 100.0 / total as f64)).collect();
                s += &format!("  {:<8}{}\n", street.name(), parts.join(", "));
            }
        }
        s
    }
}
