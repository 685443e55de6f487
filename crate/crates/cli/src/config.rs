//! Run configuration: defaults, JSON config files, presets, and flag
//! overrides, merged in that order so explicit flags always win.

use heteromap::wos::normalize_author;
use heteromap::{AttributeClass, StyleSpec, Thresholds};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

/// A problem the caller must fix, split by exit code: usage mistakes
/// (flags, config) exit 1, input-data problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

/// Output formats the `map` and `slice` commands can write.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Net,
    Clu,
    Graphml,
    Svg,
    Json,
}

impl Format {
    pub fn parse(token: &str) -> Result<Self, CliError> {
        match token.trim().to_lowercase().as_str() {
            "net" => Ok(Format::Net),
            "clu" => Ok(Format::Clu),
            "graphml" => Ok(Format::Graphml),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!(
                "unknown format \"{other}\" (expected net, clu, graphml, svg, or json)"
            ))),
        }
    }
}

fn parse_class(token: &str) -> Result<AttributeClass, CliError> {
    match token.trim().to_lowercase().as_str() {
        "author" | "authors" => Ok(AttributeClass::Author),
        "word" | "words" => Ok(AttributeClass::Word),
        "journal" | "journals" => Ok(AttributeClass::Journal),
        other => Err(CliError::Usage(format!(
            "unknown attribute class \"{other}\" (expected author, word, or journal)"
        ))),
    }
}

/// Named bundles of settings for the common map variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Authors, words, and journals together; words kept when they
    /// occur more than twice
    Integrated,
    /// Author nodes only
    Coauthor,
    /// Title-word nodes only
    Coword,
    /// All classes with a uniform per-window minimum of two, for
    /// time-sliced maps
    Animation,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cosine_threshold: f64,
    pub classes: BTreeSet<AttributeClass>,
    pub author_min: usize,
    pub word_min: usize,
    pub journal_min: usize,
    /// Raw author names; normalized when thresholds are built.
    pub exclude_authors: Vec<String>,
    pub period_start: Option<i32>,
    pub period_width: i32,
    pub period_end: Option<i32>,
    pub formats: Vec<Format>,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub stopwords: Option<PathBuf>,
    pub factors: usize,
    pub min_size: f64,
    pub size_scale: f64,
    pub new_node_color: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cosine_threshold: 0.2,
            classes: AttributeClass::ALL.into_iter().collect(),
            author_min: 1,
            word_min: 3,
            journal_min: 1,
            exclude_authors: Vec::new(),
            period_start: None,
            period_width: 5,
            period_end: None,
            formats: vec![Format::Net, Format::Clu, Format::Graphml, Format::Svg],
            out_dir: PathBuf::from("out"),
            seed: 0,
            stopwords: None,
            factors: 3,
            min_size: 4.0,
            size_scale: 3.0,
            new_node_color: "green".to_string(),
        }
    }
}

/// On-disk JSON shape. Every field optional; unknown keys are rejected
/// so typos fail fast.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub cosine_threshold: Option<f64>,
    pub classes: Option<Vec<String>>,
    pub author_min: Option<usize>,
    pub word_min: Option<usize>,
    pub journal_min: Option<usize>,
    pub exclude_authors: Option<Vec<String>>,
    pub period_start: Option<i32>,
    pub period_width: Option<i32>,
    pub period_end: Option<i32>,
    pub formats: Option<Vec<String>>,
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub stopwords: Option<PathBuf>,
    pub factors: Option<usize>,
    pub min_size: Option<f64>,
    pub size_scale: Option<f64>,
    pub new_node_color: Option<String>,
}

impl RunConfig {
    pub fn apply_config_file(&mut self, file: &ConfigFile) -> Result<(), CliError> {
        if let Some(v) = file.cosine_threshold {
            self.cosine_threshold = v;
        }
        if let Some(tokens) = &file.classes {
            self.classes = parse_classes(tokens)?;
        }
        if let Some(v) = file.author_min {
            self.author_min = v;
        }
        if let Some(v) = file.word_min {
            self.word_min = v;
        }
        if let Some(v) = file.journal_min {
            self.journal_min = v;
        }
        if let Some(v) = &file.exclude_authors {
            self.exclude_authors = v.clone();
        }
        if let Some(v) = file.period_start {
            self.period_start = Some(v);
        }
        if let Some(v) = file.period_width {
            self.period_width = v;
        }
        if let Some(v) = file.period_end {
            self.period_end = Some(v);
        }
        if let Some(tokens) = &file.formats {
            self.formats = parse_formats(tokens)?;
        }
        if let Some(v) = &file.out_dir {
            self.out_dir = v.clone();
        }
        if let Some(v) = file.seed {
            self.seed = v;
        }
        if let Some(v) = &file.stopwords {
            self.stopwords = Some(v.clone());
        }
        if let Some(v) = file.factors {
            self.factors = v;
        }
        if let Some(v) = file.min_size {
            self.min_size = v;
        }
        if let Some(v) = file.size_scale {
            self.size_scale = v;
        }
        if let Some(v) = &file.new_node_color {
            self.new_node_color = v.clone();
        }
        Ok(())
    }

    pub fn apply_preset(&mut self, preset: Preset) {
        match preset {
            Preset::Integrated => {
                self.classes = AttributeClass::ALL.into_iter().collect();
                self.author_min = 1;
                self.word_min = 3;
                self.journal_min = 1;
                self.cosine_threshold = 0.2;
            }
            Preset::Coauthor => {
                self.classes = [AttributeClass::Author].into_iter().collect();
                self.author_min = 1;
                self.cosine_threshold = 0.2;
            }
            Preset::Coword => {
                self.classes = [AttributeClass::Word].into_iter().collect();
                self.word_min = 3;
                self.cosine_threshold = 0.2;
            }
            Preset::Animation => {
                self.classes = AttributeClass::ALL.into_iter().collect();
                self.author_min = 2;
                self.word_min = 2;
                self.journal_min = 2;
                self.cosine_threshold = 0.2;
                self.period_width = 5;
            }
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(0.0..=1.0).contains(&self.cosine_threshold) {
            return Err(CliError::Usage(format!(
                "cosine threshold {} outside [0, 1]",
                self.cosine_threshold
            )));
        }
        if self.classes.is_empty() {
            return Err(CliError::Usage("no attribute classes selected".into()));
        }
        if self.period_width < 1 {
            return Err(CliError::Usage(format!(
                "period width {} must be at least 1",
                self.period_width
            )));
        }
        if let (Some(start), Some(end)) = (self.period_start, self.period_end) {
            if end <= start {
                return Err(CliError::Usage(format!(
                    "period end {end} must be after start {start}"
                )));
            }
        }
        if self.formats.is_empty() {
            return Err(CliError::Usage("no output formats selected".into()));
        }
        if self.factors < 1 {
            return Err(CliError::Usage("factor count must be at least 1".into()));
        }
        if self.min_size <= 0.0 || self.size_scale < 0.0 {
            return Err(CliError::Usage(
                "node size parameters must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Per-class minimums for the catalog; deselected classes get an
    /// unreachable minimum so nothing of theirs survives.
    pub fn thresholds(&self) -> Thresholds {
        let min_or_off = |class: AttributeClass, min: usize| {
            if self.classes.contains(&class) {
                min
            } else {
                usize::MAX
            }
        };
        Thresholds {
            author_min: min_or_off(AttributeClass::Author, self.author_min),
            word_min: min_or_off(AttributeClass::Word, self.word_min),
            journal_min: min_or_off(AttributeClass::Journal, self.journal_min),
            exclude_authors: self
                .exclude_authors
                .iter()
                .map(|raw| normalize_author(raw))
                .collect(),
        }
    }

    pub fn style(&self) -> StyleSpec {
        StyleSpec {
            min_size: self.min_size,
            size_scale: self.size_scale,
            new_node_color: self.new_node_color.clone(),
        }
    }
}

pub fn parse_classes(tokens: &[String]) -> Result<BTreeSet<AttributeClass>, CliError> {
    tokens.iter().map(|t| parse_class(t)).collect()
}

pub fn parse_formats(tokens: &[String]) -> Result<Vec<Format>, CliError> {
    let mut out = Vec::new();
    for t in tokens {
        let f = Format::parse(t)?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

pub fn load_config_file(path: &std::path::Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("can't read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}
