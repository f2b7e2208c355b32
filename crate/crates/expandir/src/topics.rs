//! Topic files: a sequence of `<topic>` elements with `id`, `title`,
//! `festival`, `begindate` and `enddate` children.

use std::path::Path;

use expandir_core::Topic;

use crate::error::{read_to_string, Error, Result};

pub fn load_topics(path: impl AsRef<Path>) -> Result<Vec<Topic>> {
    let path = path.as_ref();
    parse_topics(&read_to_string(path)?, path)
}

pub fn parse_topics(text: &str, origin: &Path) -> Result<Vec<Topic>> {
    let mut topics = Vec::new();
    let mut rest = text;
    while let Some(start) = find_open(rest, "topic") {
        let body_start = start.1;
        let close = rest[body_start..]
            .find("</topic>")
            .ok_or_else(|| Error::parse(origin, line_of(text, rest, start.0), "unterminated <topic>"))?;
        let body = &rest[body_start..body_start + close];
        let index = topics.len() + 1;
        let field = |name| element(body, name).map(|s| decode_entities(s.trim()));
        let id = field("id").filter(|s| !s.is_empty());
        let title = field("title").filter(|s| !s.is_empty());
        let missing = |f| Error::Topic {
            path: origin.to_path_buf(),
            index,
            field: f,
        };
        topics.push(Topic {
            id: id.ok_or_else(|| missing("id"))?,
            title: title.ok_or_else(|| missing("title"))?,
            festival: field("festival"),
            begindate: field("begindate"),
            enddate: field("enddate"),
        });
        rest = &rest[body_start + close + "</topic>".len()..];
    }
    Ok(topics)
}

fn line_of(full: &str, rest: &str, offset: usize) -> usize {
    let consumed = full.len() - rest.len() + offset;
    full[..consumed].matches('\n').count() + 1
}

/// Byte range of the next `<name>` or `<name ...>` opening tag.
fn find_open(s: &str, name: &str) -> Option<(usize, usize)> {
    let mut from = 0;
    while let Some(i) = s[from..].find('<') {
        let at = from + i;
        let after = &s[at + 1..];
        if let Some(tail) = after.strip_prefix(name) {
            if tail.starts_with('>') || tail.starts_with(char::is_whitespace) {
                let end = at + 1 + name.len() + tail.find('>')? + 1;
                return Some((at, end));
            }
        }
        from = at + 1;
    }
    None
}

fn element<'a>(body: &'a str, name: &str) -> Option<&'a str> {
    let (_, start) = find_open(body, name)?;
    let close = format!("</{name}>");
    let end = body[start..].find(&close)?;
    Some(&body[start..start + end])
}

fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(i) = rest.find('&') {
        out.push_str(&rest[..i]);
        let tail = &rest[i..];
        let decoded = tail.find(';').and_then(|j| {
            let c = match &tail[1..j] {
                "amp" => Some('&'),
                "lt" => Some('<'),
                "gt" => Some('>'),
                "quot" => Some('"'),
                "apos" => Some('\''),
                ent => ent
                    .strip_prefix("#x")
                    .and_then(|h| u32::from_str_radix(h, 16).ok())
                    .or_else(|| ent.strip_prefix('#').and_then(|d| d.parse().ok()))
                    .and_then(char::from_u32),
            }?;
            Some((c, j + 1))
        });
        match decoded {
            Some((c, len)) => {
                out.push(c);
                rest = &tail[len..];
            }
            None => {
                out.push('&');
                rest = &tail[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "<topic>\n<id>1</id>\n<title>Khun Narin's Electric</title>\n<festival>Transmusicales</festival>\n<begindate>04/12/15-14:00</begindate>\n<enddate>04/12/15-16:30</enddate>\n</topic>\n";

    fn parse(s: &str) -> Result<Vec<Topic>> {
        parse_topics(s, Path::new("topics.xml"))
    }

    #[test]
    fn reads_example_topic() {
        let t = parse(EXAMPLE).unwrap();
        assert_eq!(
            t,
            [Topic {
                id: "1".into(),
                title: "Khun Narin's Electric".into(),
                festival: Some("Transmusicales".into()),
                begindate: Some("04/12/15-14:00".into()),
                enddate: Some("04/12/15-16:30".into()),
            }]
        );
    }

    #[test]
    fn zero_topics() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("<topics>\n</topics>").unwrap().is_empty());
    }

    #[test]
    fn missing_title_names_topic_index() {
        let err = parse("<topics><topic><id>7</id></topic></topics>").unwrap_err();
        assert_eq!(err.to_string(), "topics.xml: topic 1 missing title");
        let err = parse(&format!("{EXAMPLE}<topic><title>x</title></topic>")).unwrap_err();
        assert_eq!(err.to_string(), "topics.xml: topic 2 missing id");
    }

    #[test]
    fn wrapper_attributes_and_entities() {
        let t = parse(
            "<topics>\n<topic lang=\"fr\"><id> 2 </id><title>Rock &amp; Roll &#233;t&#xE9;</title></topic></topics>",
        )
        .unwrap();
        assert_eq!(t[0].id, "2");
        assert_eq!(t[0].title, "Rock & Roll été");
        assert_eq!(t[0].festival, None);
    }

    #[test]
    fn topics_tag_is_not_a_topic() {
        assert!(find_open("<topics>", "topic").is_none());
    }

    #[test]
    fn unterminated_topic_is_located() {
        let err = parse("\n\n<topic><id>1</id>").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }
}
