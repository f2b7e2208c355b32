//! Documents, topics and the preprocessing pipeline.
//!
//! The same [`PreprocessConfig`] is applied wherever text meets the system:
//! documents at indexing time, topic titles at query time, and (through an
//! embedding space's provenance) the vocabulary of a vector space.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::query::WeightedQuery;

pub mod french;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub meta: BTreeMap<String, String>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            meta: BTreeMap::new(),
        }
    }
}

/// A search topic. Only `title` feeds the query by default; the festival and
/// time window are carried as metadata.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Topic {
    pub id: String,
    pub title: String,
    pub festival: Option<String>,
    pub begindate: Option<String>,
    pub enddate: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Stemmer {
    #[default]
    None,
    FrenchSnowball,
}

impl Stemmer {
    pub fn stem(self, token: &str) -> String {
        match self {
            Stemmer::None => String::from(token),
            Stemmer::FrenchSnowball => french::stem(token),
        }
    }
}

/// Token boundary rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TokenPattern {
    /// Split on non-alphanumeric characters, but keep apostrophes between
    /// alphanumerics (`narin's`, `aujourd'hui`) and a leading `#` or `@`
    /// (hashtags and mentions).
    #[default]
    Microblog,
    /// Split on every non-alphanumeric character.
    Alphanumeric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PreprocessConfig {
    /// Compared against tokens after lowercasing and before stemming.
    pub stopwords: BTreeSet<String>,
    pub stemmer: Stemmer,
    pub lowercase: bool,
    pub token_pattern: TokenPattern,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig::raw()
    }
}

impl PreprocessConfig {
    /// Lowercasing only: no stopwords, no stemming.
    pub fn raw() -> Self {
        PreprocessConfig {
            stopwords: BTreeSet::new(),
            stemmer: Stemmer::None,
            lowercase: true,
            token_pattern: TokenPattern::Microblog,
        }
    }

    pub fn with_stopwords<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.stopwords = words.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_stemmer(mut self, stemmer: Stemmer) -> Self {
        self.stemmer = stemmer;
        self
    }
}

/// Training corpus of an embedding space, e.g. `TMF` raw or preprocessed.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CorpusVariant {
    pub name: String,
    pub preprocessed: bool,
}

impl CorpusVariant {
    pub fn new(name: impl Into<String>, preprocessed: bool) -> Self {
        CorpusVariant {
            name: name.into(),
            preprocessed,
        }
    }

    /// `TMF∅` / `TMF✓` style label.
    pub fn label(&self) -> String {
        let mut s = self.name.clone();
        s.push(if self.preprocessed { '✓' } else { '∅' });
        s
    }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_prefix_mark(c: char) -> bool {
    c == '#' || c == '@'
}

/// Splits `text` into tokens and runs lowercasing, stopword removal and
/// stemming, in that order.
pub fn tokenize(text: &str, config: &PreprocessConfig) -> Vec<String> {
    let mut out = Vec::new();
    for raw in split_tokens(text, config.token_pattern) {
        if let Some(token) = finish_token(&raw, config) {
            out.push(token);
        }
    }
    out
}

fn split_tokens(text: &str, pattern: TokenPattern) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut last_alnum = false;

    for (i, &c) in chars.iter().enumerate() {
        let next_alnum = chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        if c.is_alphanumeric() {
            current.push(c);
            last_alnum = true;
            continue;
        }
        if pattern == TokenPattern::Microblog {
            if is_apostrophe(c) && last_alnum && next_alnum {
                current.push('\'');
                last_alnum = false;
                continue;
            }
            if is_prefix_mark(c) && current.is_empty() && next_alnum {
                current.push(c);
                last_alnum = false;
                continue;
            }
        }
        if !current.is_empty() {
            tokens.push(core::mem::take(&mut current));
        }
        last_alnum = false;
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

fn finish_token(raw: &str, config: &PreprocessConfig) -> Option<String> {
    let token = if config.lowercase {
        // Lowercase mappings can emit combining marks; those are dropped so a
        // token always re-tokenizes to itself.
        let mut s = String::with_capacity(raw.len());
        for (i, c) in raw.chars().enumerate() {
            if i == 0 && is_prefix_mark(c) {
                s.push(c);
                continue;
            }
            for lc in c.to_lowercase() {
                if lc.is_alphanumeric() || lc == '\'' {
                    s.push(lc);
                }
            }
        }
        s
    } else {
        String::from(raw)
    };
    if token.is_empty() || config.stopwords.contains(&token) {
        return None;
    }
    // Hashtags and mentions are identifiers and are never stemmed.
    if token.starts_with(is_prefix_mark) {
        return Some(token);
    }
    let stemmed = config.stemmer.stem(&token);
    if stemmed.is_empty() {
        None
    } else {
        Some(stemmed)
    }
}

/// Which topic fields make up the query text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QueryFields {
    /// Append the festival name to the title.
    pub festival: bool,
}

/// Builds the unexpanded query of a topic: every title token with weight 1,
/// repeated tokens merged by summing their weights.
pub fn topic_to_query(topic: &Topic, config: &PreprocessConfig, fields: QueryFields) -> Result<WeightedQuery> {
    let mut tokens = tokenize(&topic.title, config);
    if fields.festival {
        if let Some(festival) = &topic.festival {
            tokens.extend(tokenize(festival, config));
        }
    }
    if tokens.is_empty() {
        return Err(Error::EmptyQuery);
    }
    let mut query = WeightedQuery::new();
    for token in tokens {
        query.add(token, 1.0)?;
    }
    Ok(query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn cfg_lower() -> PreprocessConfig {
        PreprocessConfig::raw()
    }

    #[test]
    fn empty_text_yields_no_tokens() {
        assert!(tokenize("", &cfg_lower()).is_empty());
        let french = cfg_lower().with_stemmer(Stemmer::FrenchSnowball);
        assert!(tokenize("", &french).is_empty());
    }

    #[test]
    fn stopwords_removed_after_lowercasing() {
        let cfg = cfg_lower().with_stopwords(["des"]);
        assert_eq!(
            tokenize("Festival des Transmusicales", &cfg),
            vec!["festival", "transmusicales"]
        );
        assert_eq!(tokenize("DES", &cfg), Vec::<String>::new());
    }

    #[test]
    fn stemming_applies_last() {
        let cfg = cfg_lower().with_stemmer(Stemmer::FrenchSnowball);
        assert_eq!(tokenize("chanteuses", &cfg), vec!["chanteux"]);
        // stopword test sees the unstemmed form
        let cfg = cfg.with_stopwords(["chanteuses"]);
        assert!(tokenize("Chanteuses", &cfg).is_empty());
    }

    #[test]
    fn microblog_tokens_keep_apostrophes_hashtags_and_mentions() {
        let cfg = cfg_lower();
        assert_eq!(
            tokenize("Khun Narin's Electric", &cfg),
            vec!["khun", "narin's", "electric"]
        );
        assert_eq!(
            tokenize("#TransMusicales avec @khunnarin, aujourd’hui!", &cfg),
            vec!["#transmusicales", "avec", "@khunnarin", "aujourd'hui"]
        );
        assert_eq!(tokenize("a#b 'quoted' ##x @", &cfg), vec!["a", "b", "quoted", "#x"]);
    }

    #[test]
    fn alphanumeric_pattern_splits_everything() {
        let mut cfg = cfg_lower();
        cfg.token_pattern = TokenPattern::Alphanumeric;
        assert_eq!(tokenize("Narin's #tag", &cfg), vec!["narin", "s", "tag"]);
    }

    #[test]
    fn case_preserved_without_lowercase() {
        let mut cfg = cfg_lower();
        cfg.lowercase = false;
        assert_eq!(tokenize("Khun NARIN", &cfg), vec!["Khun", "NARIN"]);
    }

    #[test]
    fn hashtags_are_not_stemmed() {
        let cfg = cfg_lower().with_stemmer(Stemmer::FrenchSnowball);
        assert_eq!(
            tokenize("#chanteuses chanteuses", &cfg),
            vec!["#chanteuses", "chanteux"]
        );
    }

    #[test]
    fn topic_query_uses_title_tokens_with_unit_weight() {
        let topic = Topic {
            id: "1".into(),
            title: "Khun Narin's Electric".into(),
            festival: Some("Transmusicales".into()),
            ..Topic::default()
        };
        let q = topic_to_query(&topic, &cfg_lower(), QueryFields::default()).unwrap();
        let pairs: Vec<(&str, f64)> = q.iter().collect();
        assert_eq!(pairs, vec![("khun", 1.0), ("narin's", 1.0), ("electric", 1.0)]);

        let q = topic_to_query(&topic, &cfg_lower(), QueryFields { festival: true }).unwrap();
        assert_eq!(q.weight("transmusicales"), Some(1.0));
    }

    #[test]
    fn topic_query_merges_duplicates() {
        let topic = Topic {
            id: "2".into(),
            title: "a a b".into(),
            ..Topic::default()
        };
        let q = topic_to_query(&topic, &cfg_lower(), QueryFields::default()).unwrap();
        let pairs: Vec<(&str, f64)> = q.iter().collect();
        assert_eq!(pairs, vec![("a", 2.0), ("b", 1.0)]);
    }

    #[test]
    fn stopword_only_title_is_an_empty_query() {
        let topic = Topic {
            id: "3".into(),
            title: "le la les".into(),
            ..Topic::default()
        };
        let cfg = cfg_lower().with_stopwords(["le", "la", "les"]);
        assert_eq!(
            topic_to_query(&topic, &cfg, QueryFields::default()),
            Err(Error::EmptyQuery)
        );
    }

    #[test]
    fn variant_label() {
        assert_eq!(CorpusVariant::new("TMF", false).label(), "TMF∅");
        assert_eq!(CorpusVariant::new("TF", true).label(), "TF✓");
    }

    fn arb_config() -> impl Strategy<Value = PreprocessConfig> {
        (
            proptest::collection::btree_set("[a-zé]{1,3}", 0..6),
            any::<bool>(),
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(|(stop, stem, lower, micro)| PreprocessConfig {
                stopwords: stop,
                stemmer: if stem { Stemmer::FrenchSnowball } else { Stemmer::None },
                lowercase: lower,
                token_pattern: if micro {
                    TokenPattern::Microblog
                } else {
                    TokenPattern::Alphanumeric
                },
            })
    }

    proptest! {
        #[test]
        fn retokenizing_joined_tokens_is_identity(
            text in "\\PC{0,60}",
            cfg in arb_config(),
        ) {
            let cfg = cfg.with_stemmer(Stemmer::None);
            let once = tokenize(&text, &cfg);
            let twice = tokenize(&once.join(" "), &cfg);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn no_stopword_survives(text in "[a-zé' #@.,A-Z]{0,80}", cfg in arb_config()) {
            let cfg = cfg.with_stemmer(Stemmer::None);
            for tok in tokenize(&text, &cfg) {
                prop_assert!(!cfg.stopwords.contains(&tok));
            }
        }

        #[test]
        fn tokenize_is_deterministic(text in "\\PC{0,60}", cfg in arb_config()) {
            prop_assert_eq!(tokenize(&text, &cfg), tokenize(&text, &cfg));
        }

        #[test]
        fn tokens_are_never_empty(text in "\\PC{0,60}", cfg in arb_config()) {
            for tok in tokenize(&text, &cfg) {
                prop_assert!(!tok.is_empty());
                prop_assert!(!tok.contains(' '), "{}", tok.to_string());
            }
        }
    }
}
