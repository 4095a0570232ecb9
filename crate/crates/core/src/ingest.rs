//! Loading text, stripping HTML, and turning characters into crisp values.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest Unicode scalar value; divisor for [`Encoding::NormalizedCodePoint`].
pub const MAX_SCALAR: f64 = 1_114_111.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub source: String,
    pub raw: Vec<u8>,
    pub text: String,
}

/// Reads a UTF-8 file verbatim. Invalid UTF-8 is an error, never replaced.
pub fn load_text(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let raw = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8(raw.clone()).map_err(|source| Error::Encoding {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Document {
        source: path.display().to_string(),
        raw,
        text,
    })
}

// Elements whose boundaries separate words when rendered.
const BLOCK_TAGS: &[&str] = &[
    "address", "article", "aside", "blockquote", "br", "dd", "div", "dl", "dt", "figcaption", "figure",
    "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr", "li", "main", "nav", "ol", "p",
    "pre", "section", "table", "td", "th", "tr", "ul", "title", "body", "head", "html",
];

const RAW_TEXT_TAGS: &[&str] = &["script", "style"];

/// Best-effort visible text of an HTML fragment.
///
/// Tags and comments are removed, `script`/`style` bodies dropped, the basic
/// named entities and numeric references decoded, and whitespace collapsed.
/// Block-level tags act as word separators. A `<` that cannot start a tag
/// is kept as text, and unknown entities are left as written.
pub fn extract_text_from_html(raw: &str) -> String {
    let chars: Vec<char> = raw.chars().collect();
    let mut out = String::with_capacity(raw.len());
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '<' => {
                if starts_with(&chars, i, "<!--") {
                    i = find(&chars, i + 4, "-->").map_or(chars.len(), |end| end + 3);
                } else if let Some(tag) = parse_tag(&chars, i) {
                    i = tag.end;
                    if !tag.closing && RAW_TEXT_TAGS.contains(&tag.name.as_str()) {
                        i = skip_raw_text(&chars, i, &tag.name);
                    }
                    if BLOCK_TAGS.contains(&tag.name.as_str()) {
                        out.push(' ');
                    }
                } else {
                    out.push('<');
                    i += 1;
                }
            }
            '&' => match decode_entity(&chars, i) {
                Some((c, next)) => {
                    out.push(c);
                    i = next;
                }
                None => {
                    out.push('&');
                    i += 1;
                }
            },
            c => {
                out.push(c);
                i += 1;
            }
        }
    }
    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

struct Tag {
    name: String,
    closing: bool,
    end: usize,
}

fn starts_with(chars: &[char], at: usize, pat: &str) -> bool {
    let mut k = at;
    for p in pat.chars() {
        match chars.get(k) {
            Some(c) if c.eq_ignore_ascii_case(&p) => k += 1,
            _ => return false,
        }
    }
    true
}

fn find(chars: &[char], from: usize, pat: &str) -> Option<usize> {
    (from..chars.len()).find(|&k| starts_with(chars, k, pat))
}

/// Parses a tag starting at `chars[at] == '<'`, honouring quoted attribute
/// values. Unterminated tags run to the end of input.
fn parse_tag(chars: &[char], at: usize) -> Option<Tag> {
    let mut k = at + 1;
    let closing = chars.get(k) == Some(&'/');
    if closing {
        k += 1;
    }
    let first = *chars.get(k)?;
    if !(first.is_ascii_alphabetic() || (!closing && matches!(first, '!' | '?'))) {
        return None;
    }
    let name_start = k;
    while k < chars.len() && (chars[k].is_ascii_alphanumeric() || matches!(chars[k], '-' | ':' | '!' | '?')) {
        k += 1;
    }
    let name: String = chars[name_start..k].iter().collect::<String>().to_ascii_lowercase();
    let mut quote: Option<char> = None;
    while k < chars.len() {
        let c = chars[k];
        k += 1;
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) => {}
            None if c == '"' || c == '\'' => quote = Some(c),
            None if c == '>' => break,
            None => {}
        }
    }
    Some(Tag { name, closing, end: k })
}

fn skip_raw_text(chars: &[char], from: usize, name: &str) -> usize {
    let close = format!("</{name}");
    let mut k = from;
    while let Some(pos) = find(chars, k, &close) {
        let after = pos + close.chars().count();
        match chars.get(after) {
            Some(c) if c.is_ascii_alphanumeric() => k = after,
            _ => return parse_tag(chars, pos).map_or(chars.len(), |t| t.end),
        }
    }
    chars.len()
}

fn decode_entity(chars: &[char], at: usize) -> Option<(char, usize)> {
    // longest reference we accept: &#x10FFFF;
    let semi = (at + 1..chars.len().min(at + 12)).find(|&k| chars[k] == ';')?;
    let body: String = chars[at + 1..semi].iter().collect();
    let c = match body.as_str() {
        "amp" => '&',
        "lt" => '<',
        "gt" => '>',
        "quot" => '"',
        "apos" => '\'',
        "nbsp" => '\u{a0}',
        _ => {
            let num = body.strip_prefix('#')?;
            let code = match num.strip_prefix(['x', 'X']) {
                Some(hex) => u32::from_str_radix(hex, 16).ok()?,
                None => num.parse::<u32>().ok()?,
            };
            if code == 0 {
                char::REPLACEMENT_CHARACTER
            } else {
                char::from_u32(code).unwrap_or(char::REPLACEMENT_CHARACTER)
            }
        }
    };
    Some((c, semi + 1))
}

/// How a character becomes a crisp number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoding {
    /// The Unicode scalar value itself.
    #[default]
    CodePoint,
    /// Scalar value divided by 0x10FFFF, landing in `[0, 1]`.
    NormalizedCodePoint,
}

impl Encoding {
    pub fn crisp(self, c: char) -> f64 {
        let v = f64::from(u32::from(c));
        match self {
            Encoding::CodePoint => v,
            Encoding::NormalizedCodePoint => v / MAX_SCALAR,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feature {
    pub index: usize,
    pub character: char,
    pub crisp: f64,
}

/// One feature per character of the source text, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureStream {
    pub entries: Vec<Feature>,
    pub encoding: Encoding,
}

impl FeatureStream {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn crisp_values(&self) -> Vec<f64> {
        self.entries.iter().map(|f| f.crisp).collect()
    }
}

pub fn featurize(text: &str, encoding: Encoding) -> FeatureStream {
    let entries = text
        .chars()
        .enumerate()
        .map(|(index, character)| Feature {
            index,
            character,
            crisp: encoding.crisp(character),
        })
        .collect();
    FeatureStream { entries, encoding }
}
