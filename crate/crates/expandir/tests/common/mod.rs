//! Synthetic festival collection where relevant tweets never contain the
//! topic words, only words that sit next to them in the embedding space.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use expandir::vectors::{save_vectors, VectorFormat};
use expandir_core::{EmbeddingBuilder, EmbeddingSpace, Provenance};

pub struct Topic {
    pub id: &'static str,
    pub title: &'static str,
    pub neighbors: [&'static str; 3],
}

pub const TOPICS: [Topic; 4] = [
    Topic {
        id: "1",
        title: "Concert",
        neighbors: ["scène", "spectacle", "musiciens"],
    },
    Topic {
        id: "2",
        title: "Guitare",
        neighbors: ["riff", "solo", "ampli"],
    },
    Topic {
        id: "3",
        title: "Batterie",
        neighbors: ["percussions", "cymbale", "tambour"],
    },
    Topic {
        id: "4",
        title: "Chanteuse",
        neighbors: ["voix", "chorale", "refrain"],
    },
];

pub const FILLER: [&str; 12] = [
    "parking",
    "bière",
    "soleil",
    "pluie",
    "camping",
    "navette",
    "billet",
    "file",
    "sandwich",
    "boue",
    "tente",
    "poussière",
];

/// Relevant documents per topic; none contains a title word.
pub const RELEVANT_PER_TOPIC: usize = 6;
/// Non-relevant documents per topic that do contain the title word.
pub const DECOYS_PER_TOPIC: usize = 2;

pub struct Collection {
    pub docs_jsonl: String,
    pub topics_xml: String,
    pub qrels: String,
    /// Space over unprocessed words.
    pub space: EmbeddingSpace,
}

fn filler(seed: usize, n: usize) -> String {
    (0..n)
        .map(|i| FILLER[(seed * 7 + i * 5) % FILLER.len()])
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn build() -> Collection {
    let mut docs = String::new();
    let mut qrels = String::new();
    let mut topics = String::from("<topics>\n");
    let mut n = 0;
    let mut doc = |text: String, docs: &mut String| {
        n += 1;
        let id = format!("tw{n:03}");
        writeln!(docs, "{}", serde_json::json!({"id": id, "text": text})).unwrap();
        id
    };
    for t in &TOPICS {
        writeln!(
            topics,
            "<topic>\n<id>{}</id>\n<title>{}</title>\n<festival>Transmusicales</festival>\n</topic>",
            t.id, t.title
        )
        .unwrap();
        for i in 0..DECOYS_PER_TOPIC {
            let id = doc(format!("{} {}", t.title, filler(i + 3, 3)), &mut docs);
            writeln!(qrels, "{} 0 {id} 0", t.id).unwrap();
        }
        for i in 0..RELEVANT_PER_TOPIC {
            let word = t.neighbors[i % 3];
            let id = doc(format!("Quelle {word} ce soir ! {}", filler(i, 2)), &mut docs);
            writeln!(qrels, "{} 0 {id} 1", t.id).unwrap();
        }
    }
    for i in 0..30 {
        doc(format!("{} #festival", filler(i, 4)), &mut docs);
    }
    topics.push_str("</topics>\n");

    let dim = TOPICS.len() + FILLER.len();
    let mut b = EmbeddingBuilder::new(dim).unwrap();
    for (ti, t) in TOPICS.iter().enumerate() {
        let mut v = vec![0.0f32; dim];
        v[ti] = 1.0;
        b.push(t.title.to_lowercase(), &v).unwrap();
        for (j, w) in t.neighbors.iter().enumerate() {
            let mut v = vec![0.0f32; dim];
            v[ti] = 1.0;
            v[TOPICS.len() + j] = 0.2 + 0.1 * j as f32;
            b.push(*w, &v).unwrap();
        }
    }
    for (fi, f) in FILLER.iter().enumerate() {
        let mut v = vec![0.0f32; dim];
        v[TOPICS.len() + fi] = 1.0;
        b.push(*f, &v).unwrap();
    }
    Collection {
        docs_jsonl: docs,
        topics_xml: topics,
        qrels,
        space: b.build(Provenance::default()).unwrap(),
    }
}

pub struct Files {
    pub dir: PathBuf,
    pub docs: PathBuf,
    pub topics: PathBuf,
    pub qrels: PathBuf,
    pub vectors_txt: PathBuf,
    pub vectors_bin: PathBuf,
}

pub fn write(dir: &Path) -> Files {
    let c = build();
    let f = Files {
        dir: dir.to_path_buf(),
        docs: dir.join("docs.jsonl"),
        topics: dir.join("topics.xml"),
        qrels: dir.join("qrels.txt"),
        vectors_txt: dir.join("space.txt"),
        vectors_bin: dir.join("space.bin"),
    };
    std::fs::write(&f.docs, &c.docs_jsonl).unwrap();
    std::fs::write(&f.topics, &c.topics_xml).unwrap();
    std::fs::write(&f.qrels, &c.qrels).unwrap();
    save_vectors(&c.space, &f.vectors_txt, VectorFormat::Text).unwrap();
    save_vectors(&c.space, &f.vectors_bin, VectorFormat::Binary).unwrap();
    f
}
