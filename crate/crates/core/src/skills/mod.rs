//! The layered skill library: prose fragments, range tables and the numeric
//! tables the context engine and budget system read.
//!
//! A library is a directory with a `manifest.toml` naming every file it
//! uses. Loading is all-or-nothing: any unreadable file, schema problem or
//! coverage gap fails the whole load.

pub mod fragment;
pub mod preflop;

pub use fragment::{parse_fragments, Diagnostic, Facts, Layer, PredKey, Predicate, Site, SkillFragment};
pub use preflop::{preflop_scenario, PreflopConfig, PreflopError, PreflopScenarioId, RaiseSizing, RangeEntry, RangeTable};

use crate::budget::BudgetTables;
use crate::context::{ContextReport, ContextTables, PressureTable, PrimaryClass, ScenarioCatalog};
use crate::game::Street;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

pub const MANIFEST: &str = "manifest.toml";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LoadError {
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {message}")]
    Table { path: String, message: String },
    #[error("{}", DiagList(.0))]
    Invalid(Vec<Diagnostic>),
}

struct DiagList<'a>(&'a [Diagnostic]);

impl fmt::Display for DiagList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} problem(s) in skill fragments", self.0.len())?;
        for d in self.0 {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    version: u32,
    files: ManifestFiles,
    tables: ManifestTables,
    #[serde(default)]
    config: LibraryConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFiles {
    p1: Vec<String>,
    p2: Vec<String>,
    p3: Vec<String>,
    p4: Vec<String>,
    p5: Vec<String>,
}

impl ManifestFiles {
    fn by_layer(&self) -> [(Layer, &Vec<String>); 5] {
        [(Layer::P1, &self.p1), (Layer::P2, &self.p2), (Layer::P3, &self.p3), (Layer::P4, &self.p4), (Layer::P5, &self.p5)]
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestTables {
    pressure: String,
    scenarios: String,
    budgets: String,
    preflop_ranges: String,
}

/// Tunables that live with the library rather than the binary.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LibraryConfig {
    /// Effective stack (BB) at or below which preflop play is push/fold.
    pub shortstack_bb: f64,
}

impl Default for LibraryConfig {
    fn default() -> Self {
        LibraryConfig { shortstack_bb: PreflopConfig::default().shortstack_bb }
    }
}

/// Where library files come from.
trait Source {
    fn read(&self, rel: &str) -> Result<String, String>;
}

struct DirSource(PathBuf);

impl Source for DirSource {
    fn read(&self, rel: &str) -> Result<String, String> {
        std::fs::read_to_string(self.0.join(rel)).map_err(|e| e.to_string())
    }
}

struct MemSource(HashMap<&'static str, &'static str>);

impl Source for MemSource {
    fn read(&self, rel: &str) -> Result<String, String> {
        self.0.get(rel).map(|s| s.to_string()).ok_or_else(|| "not bundled".to_string())
    }
}

macro_rules! bundle {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../../data/", $path)))),*]
    };
}

/// Every file of the default library, compiled in.
const BUNDLED: &[(&str, &str)] = bundle![
    "manifest.toml",
    "p1/system.frag",
    "p1/output.frag",
    "p2/ranges.frag",
    "p3/principles.frag",
    "p4/hand_made.frag",
    "p4/hand_draw.frag",
    "p4/situation.frag",
    "p4/texture.frag",
    "p5/river.frag",
    "tables/pressure.toml",
    "tables/scenarios.toml",
    "tables/budgets.toml",
    "tables/preflop_ranges.toml",
];

/// Directory holding the default library in a source checkout.
pub fn bundled_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// A loaded, validated, immutable library.
#[derive(Debug, Clone)]
pub struct SkillLibrary {
    fragments: Vec<SkillFragment>,
    pub pressure: PressureTable,
    pub scenarios: ScenarioCatalog,
    pub budgets: BudgetTables,
    pub ranges: RangeTable,
    pub config: LibraryConfig,
    preflop_config: PreflopConfig,
    hash: String,
}

pub fn load_library(dir: impl AsRef<Path>) -> Result<SkillLibrary, LoadError> {
    SkillLibrary::load(&DirSource(dir.as_ref().to_path_buf()))
}

impl SkillLibrary {
    /// The default library compiled into the crate.
    pub fn bundled() -> SkillLibrary {
        SkillLibrary::load(&MemSource(BUNDLED.iter().copied().collect())).expect("bundled skill library")
    }

    fn load(src: &dyn Source) -> Result<SkillLibrary, LoadError> {
        let read = |rel: &str| src.read(rel).map_err(|message| LoadError::Read { path: rel.to_string(), message });
        let manifest_text = read(MANIFEST)?;
        let manifest: Manifest = toml::from_str(&manifest_text).map_err(|e| LoadError::Manifest(e.to_string()))?;
        if manifest.version != 1 {
            return Err(LoadError::Manifest(format!("unsupported version {}", manifest.version)));
        }
        if !(manifest.config.shortstack_bb.is_finite() && manifest.config.shortstack_bb >= 0.0) {
            return Err(LoadError::Manifest("shortstack_bb must be a non-negative number".into()));
        }

        let mut hasher = Sha256::new();
        let mut feed = |path: &str, text: &str| {
            hasher.update(path.as_bytes());
            hasher.update([0]);
            hasher.update(text.as_bytes());
            hasher.update([0]);
        };
        feed(MANIFEST, &manifest_text);

        let mut fragments = Vec::new();
        let mut diags = Vec::new();
        for (layer, files) in manifest.files.by_layer() {
            for path in files {
                let text = read(path)?;
                feed(path, &text);
                match parse_fragments(path, &text) {
                    Ok(fs) => {
                        for f in fs {
                            if f.layer != layer {
                                diags.push(Diagnostic {
                                    site: f.site.clone(),
                                    message: format!("{} fragment in a file listed under {}", f.layer, layer),
                                });
                            }
                            fragments.push(f);
                        }
                    }
                    Err(mut e) => diags.append(&mut e),
                }
            }
        }

        let t = &manifest.tables;
        let table_err = |path: &str, e: &dyn fmt::Display| LoadError::Table { path: path.to_string(), message: e.to_string() };
        let text = read(&t.pressure)?;
        feed(&t.pressure, &text);
        let pressure = PressureTable::from_toml(&text).map_err(|e| table_err(&t.pressure, &e))?;
        let text = read(&t.scenarios)?;
        feed(&t.scenarios, &text);
        let scenarios = ScenarioCatalog::from_toml(&text).map_err(|e| table_err(&t.scenarios, &e))?;
        let text = read(&t.budgets)?;
        feed(&t.budgets, &text);
        let budgets = BudgetTables::from_toml(&text).map_err(|e| table_err(&t.budgets, &e))?;
        let text = read(&t.preflop_ranges)?;
        feed(&t.preflop_ranges, &text);
        let ranges = RangeTable::from_toml(&text).map_err(|e| table_err(&t.preflop_ranges, &e))?;

        diags.extend(check_library(&fragments));
        if !diags.is_empty() {
            return Err(LoadError::Invalid(diags));
        }
        fragments.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
        let hash = hex::encode(hasher.finalize());
        let preflop_config = PreflopConfig { shortstack_bb: manifest.config.shortstack_bb };
        Ok(SkillLibrary { fragments, pressure, scenarios, budgets, ranges, config: manifest.config, preflop_config, hash })
    }

    /// SHA-256 over the manifest and every file it names.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn fragments(&self) -> &[SkillFragment] {
        &self.fragments
    }

    pub fn preflop_config(&self) -> &PreflopConfig {
        &self.preflop_config
    }

    pub fn context_tables(&self) -> ContextTables<'_> {
        ContextTables { pressure: &self.pressure, scenarios: &self.scenarios, preflop: &self.preflop_config }
    }

    /// Fragments for one decision, in prompt order.
    pub fn select_fragments(&self, report: &ContextReport) -> Vec<&SkillFragment> {
        let facts = Facts::from_report(report);
        let street = report.street;
        let mut out: Vec<&SkillFragment> = Vec::new();
        let mut best_hand: Option<&SkillFragment> = None;
        for f in &self.fragments {
            let gated = match f.layer {
                Layer::P1 => true,
                Layer::P2 => street == Street::Preflop,
                Layer::P3 | Layer::P4 => street != Street::Preflop,
                Layer::P5 => street == Street::River,
            };
            if !gated || !f.matches(&facts) {
                continue;
            }
            if f.layer == Layer::P4 && f.slot == "hand" {
                let better = match best_hand {
                    None => true,
                    Some(b) => (f.specificity(), std::cmp::Reverse(&f.id)) > (b.specificity(), std::cmp::Reverse(&b.id)),
                };
                if better {
                    best_hand = Some(f);
                }
                continue;
            }
            out.push(f);
        }
        out.extend(best_hand);
        out.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
        out
    }
}

fn sort_key(f: &SkillFragment) -> (Layer, i32, &str) {
    (f.layer, f.order, f.id.as_str())
}

/// Library-wide checks that need every fragment at once.
fn check_library(fragments: &[SkillFragment]) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut ids: BTreeMap<&str, &Site> = BTreeMap::new();
    let mut identities: BTreeMap<_, &Site> = BTreeMap::new();
    for f in fragments {
        if let Some(prev) = ids.insert(f.id.as_str(), &f.site) {
            diags.push(Diagnostic { site: f.site.clone(), message: format!("fragment id `{}` already used at {prev}", f.id) });
        }
        if let Some(prev) = identities.insert(fragment::identity(f), &f.site) {
            diags.push(Diagnostic {
                site: f.site.clone(),
                message: format!("same layer, slot and conditions as the fragment at {prev}"),
            });
        }
        if f.layer == Layer::P2 {
            let ok = f.predicates.iter().all(|p| matches!(p.key, PredKey::PreflopScenario | PredKey::Street) && !p.negate);
            if !ok {
                diags.push(Diagnostic { site: f.site.clone(), message: "P2 fragments may only test `preflop_scenario`".into() });
            }
        }
    }
    let nowhere = Site { file: MANIFEST.to_string(), line: 0 };
    for slot in ["system", "output"] {
        if !fragments.iter().any(|f| f.layer == Layer::P1 && f.slot == slot) {
            diags.push(Diagnostic { site: nowhere.clone(), message: format!("library has no P1 `{slot}` fragment") });
        }
    }
    for class in PrimaryClass::all_keys() {
        if !fragments.iter().any(|f| f.layer == Layer::P4 && f.is_catch_all_for(class)) {
            diags.push(Diagnostic {
                site: nowhere.clone(),
                message: format!("no catch-all hand fragment for `{class}` (one with only `when: hand_class = {class}`)"),
            });
        }
    }
    for sc in PreflopScenarioId::ALL {
        let n = fragments
            .iter()
            .filter(|f| f.layer == Layer::P2)
            .filter(|f| f.predicates.iter().any(|p| p.key == PredKey::PreflopScenario && p.values.iter().any(|v| v == sc.key())))
            .count();
        if n != 1 {
            diags.push(Diagnostic { site: nowhere.clone(), message: format!("preflop scenario `{}` has {n} P2 fragments, expected 1", sc.key()) });
        }
    }
    diags
}

/// Renders selected fragments; a heading is printed once for a run of
/// fragments sharing it. `{name}` in a heading is replaced from `vars`.
pub fn render_fragments(frags: &[&SkillFragment], vars: &[(&str, &str)]) -> String {
    let mut out = String::new();
    let mut last: Option<&str> = None;
    for f in frags {
        let section = f.section.as_deref();
        if let Some(h) = section.filter(|_| section != last) {
            if !out.is_empty() {
                out.push('\n');
            }
            let mut h = h.to_string();
            for (k, v) in vars {
                h = h.replace(&format!("{{{k}}}"), v);
            }
            out.push_str(&h);
            out.push('\n');
        }
        last = section;
        out.push_str(f.body.trim_end());
        out.push('\n');
    }
    out
}
