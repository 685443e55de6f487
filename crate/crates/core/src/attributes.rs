//! Attribute extraction: authors, title words, and journals.
//!
//! Each record contributes up to three kinds of attribute. Authors and the
//! journal come through normalized from the parser; title words are produced
//! here by a tokenizer that splits on non-alphabetic characters, lowercases,
//! drops short tokens and stopwords, and counts each word at most once per
//! title (so word frequencies are document frequencies). A catalog keeps the
//! attributes whose document frequency meets a per-class minimum.

use crate::wos::Record;
use std::collections::{HashMap, HashSet};

/// Minimum token length kept by the tokenizer.
const MIN_WORD_LEN: usize = 3;

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");

/// The three attribute kinds, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttributeClass {
    Author,
    Word,
    Journal,
}

impl AttributeClass {
    pub const ALL: [AttributeClass; 3] = [
        AttributeClass::Author,
        AttributeClass::Word,
        AttributeClass::Journal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AttributeClass::Author => "author",
            AttributeClass::Word => "word",
            AttributeClass::Journal => "journal",
        }
    }
}

/// One cataloged attribute with its document frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub class: AttributeClass,
    pub label: String,
    /// Number of distinct records the attribute occurs in.
    pub frequency: usize,
}

/// Lowercased words excluded from title tokenization.
#[derive(Debug, Clone)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    /// The built-in English function-word list.
    pub fn default_english() -> Self {
        Self::from_text(DEFAULT_STOPWORDS)
    }

    /// One word per line; blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase())
            .collect();
        StopwordList { words }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl Default for StopwordList {
    fn default() -> Self {
        Self::default_english()
    }
}

/// Per-class document-frequency minimums and optional exclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds {
    pub author_min: usize,
    pub word_min: usize,
    pub journal_min: usize,
    /// Normalized author names to drop regardless of frequency
    /// (e.g. when the corpus is one researcher's publication list, that
    /// researcher appears in every record and is uninformative).
    pub exclude_authors: Vec<String>,
}

impl Default for Thresholds {
    /// Keep every author and journal; keep words occurring more than twice.
    fn default() -> Self {
        Thresholds {
            author_min: 1,
            word_min: 3,
            journal_min: 1,
            exclude_authors: Vec::new(),
        }
    }
}

impl Thresholds {
    pub fn min_for(&self, class: AttributeClass) -> usize {
        match class {
            AttributeClass::Author => self.author_min,
            AttributeClass::Word => self.word_min,
            AttributeClass::Journal => self.journal_min,
        }
    }
}

/// Uniform minimum of two occurrences per class, suited to short
/// time slices where the full-corpus minimums would leave too little.
pub fn animation_thresholds() -> Thresholds {
    Thresholds {
        author_min: 2,
        word_min: 2,
        journal_min: 2,
        exclude_authors: Vec::new(),
    }
}

/// Attributes that met their class threshold, in a stable order:
/// authors, then words, then journals, each alphabetical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeCatalog {
    pub attributes: Vec<Attribute>,
    /// Lookup from (class, label) to index in `attributes`.
    index: HashMap<(AttributeClass, String), usize>,
    /// Per-record attribute index lists, parallel to the input records.
    pub record_attrs: Vec<Vec<usize>>,
}

impl AttributeCatalog {
    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn position(&self, class: AttributeClass, label: &str) -> Option<usize> {
        self.index.get(&(class, label.to_string())).copied()
    }

    pub fn count_of(&self, class: AttributeClass) -> usize {
        self.attributes.iter().filter(|a| a.class == class).count()
    }
}

/// Lowercase alphabetic tokens of a title, in first-appearance order.
///
/// Splits on every non-alphabetic character (hyphens split compounds),
/// drops tokens shorter than three characters and stopwords, and keeps
/// each surviving word once per title.
pub fn tokenize_title(title: &str, stopwords: &StopwordList) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for raw in title.split(|c: char| !c.is_alphabetic()) {
        if raw.is_empty() {
            continue;
        }
        let word = raw.to_lowercase();
        if word.chars().count() < MIN_WORD_LEN || stopwords.contains(&word) {
            continue;
        }
        if seen.insert(word.clone()) {
            out.push(word);
        }
    }
    out
}

/// Count document frequencies per class and keep attributes meeting
/// the thresholds. `record_attrs[i]` lists the kept attributes of
/// record `i` as indices into `attributes`.
pub fn build_catalog(
    records: &[Record],
    thresholds: &Thresholds,
    stopwords: &StopwordList,
) -> AttributeCatalog {
    let excluded: HashSet<&str> = thresholds
        .exclude_authors
        .iter()
        .map(|s| s.as_str())
        .collect();

    // per-record attribute label sets, as (class, label)
    let mut per_record: Vec<Vec<(AttributeClass, String)>> = Vec::with_capacity(records.len());
    let mut freq: HashMap<(AttributeClass, String), usize> = HashMap::new();
    for rec in records {
        let mut labels = Vec::new();
        for author in &rec.authors {
            if excluded.contains(author.as_str()) {
                continue;
            }
            labels.push((AttributeClass::Author, author.clone()));
        }
        for word in tokenize_title(&rec.title, stopwords) {
            labels.push((AttributeClass::Word, word));
        }
        if !rec.journal.is_empty() {
            labels.push((AttributeClass::Journal, rec.journal.clone()));
        }
        for key in &labels {
            *freq.entry(key.clone()).or_insert(0) += 1;
        }
        per_record.push(labels);
    }

    let mut attributes: Vec<Attribute> = freq
        .iter()
        .filter(|((class, _), &count)| count >= thresholds.min_for(*class))
        .map(|((class, label), &count)| Attribute {
            class: *class,
            label: label.clone(),
            frequency: count,
        })
        .collect();
    attributes.sort_by(|a, b| a.class.cmp(&b.class).then_with(|| a.label.cmp(&b.label)));

    let index: HashMap<(AttributeClass, String), usize> = attributes
        .iter()
        .enumerate()
        .map(|(i, a)| ((a.class, a.label.clone()), i))
        .collect();

    let record_attrs = per_record
        .into_iter()
        .map(|labels| {
            let mut ids: Vec<usize> = labels
                .into_iter()
                .filter_map(|key| index.get(&key).copied())
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .collect();

    AttributeCatalog {
        attributes,
        index,
        record_attrs,
    }
}
