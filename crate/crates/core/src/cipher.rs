//! Monoalphabetic substitution over a configurable alphabet, applied either
//! to every alphabet character of a text or only to selected positions.
//!
//! This is a classical cipher. It hides nothing from frequency analysis and
//! must not be used where real confidentiality is needed.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::select::Selection;

/// Current envelope format version.
pub const FORMAT_VERSION: u32 = 1;

pub const ASCII_LETTERS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// The set of characters the cipher substitutes. Everything else passes
/// through untouched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, usize>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet", "must not be empty"));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i).is_some() {
                return Err(Error::invalid("alphabet", format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn ascii_letters() -> Self {
        Alphabet::new(ASCII_LETTERS.chars()).expect("ASCII letters are distinct")
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.index.contains_key(&c)
    }

    pub fn position(&self, c: char) -> Option<usize> {
        self.index.get(&c).copied()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::ascii_letters()
    }
}

/// Lowercase hex SHA-256 digest identifying a substitution table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fingerprint(String);

impl Fingerprint {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A permutation of an [`Alphabet`]: `alphabet[i]` encrypts to `image[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionTable {
    alphabet: Alphabet,
    image: Vec<char>,
    fingerprint: Fingerprint,
}

impl SubstitutionTable {
    /// Builds a table from the images of each alphabet symbol, in alphabet
    /// order. Fails unless `image` is a permutation of the alphabet.
    pub fn from_mapping(alphabet: Alphabet, image: Vec<char>) -> Result<Self> {
        if image.len() != alphabet.len() {
            return Err(Error::Dimension {
                expected: alphabet.len(),
                actual: image.len(),
            });
        }
        let mut seen = vec![false; alphabet.len()];
        for &c in &image {
            let pos = alphabet
                .position(c)
                .ok_or_else(|| Error::invalid("mapping", format!("{c:?} is outside the alphabet")))?;
            if std::mem::replace(&mut seen[pos], true) {
                return Err(Error::invalid("mapping", format!("{c:?} is the image of two symbols")));
            }
        }
        Ok(Self::assemble(alphabet, image))
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let image = alphabet.symbols.clone();
        Self::assemble(alphabet, image)
    }

    fn assemble(alphabet: Alphabet, image: Vec<char>) -> Self {
        let fingerprint = fingerprint_of(&alphabet.symbols, &image);
        SubstitutionTable {
            alphabet,
            image,
            fingerprint,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fingerprint
    }

    /// `(plain, cipher)` pairs in alphabet order.
    pub fn pairs(&self) -> impl Iterator<Item = (char, char)> + '_ {
        self.alphabet.symbols.iter().copied().zip(self.image.iter().copied())
    }

    /// `T(x)`, or `None` when `x` is outside the alphabet.
    #[inline]
    pub fn lookup(&self, x: char) -> Option<char> {
        self.alphabet.position(x).map(|i| self.image[i])
    }

    #[inline]
    fn substitute(&self, x: char) -> char {
        self.lookup(x).unwrap_or(x)
    }
}

// Length-prefixed so that different alphabets can never serialize alike.
fn fingerprint_of(symbols: &[char], image: &[char]) -> Fingerprint {
    let mut h = Sha256::new();
    h.update(b"fuzzcrypt-table-v1");
    h.update((symbols.len() as u64).to_le_bytes());
    for (s, t) in symbols.iter().zip(image) {
        h.update(u32::from(*s).to_le_bytes());
        h.update(u32::from(*t).to_le_bytes());
    }
    Fingerprint(hex::encode(h.finalize()))
}

/// Substitutes a single alphabet character.
pub fn encrypt_letter(x: char, table: &SubstitutionTable) -> Result<char> {
    table.lookup(x).ok_or(Error::NotALetter(x))
}

/// Substitutes every alphabet character in `content`; everything else is
/// copied through unchanged.
pub fn encrypt_content(content: &str, table: &SubstitutionTable) -> String {
    encrypt_content_with(content, table, Execution::default())
}

pub fn encrypt_content_with(content: &str, table: &SubstitutionTable, exec: Execution) -> String {
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && content.len() >= 64 * exec::MIN_PAR_LEN {
        use rayon::prelude::*;
        return content.par_chars().map(|c| table.substitute(c)).collect();
    }
    let _ = exec;
    content.chars().map(|c| table.substitute(c)).collect()
}

/// Inverse of [`encrypt_content`] under the same table.
pub fn decrypt_content(ciphertext: &str, table: &SubstitutionTable) -> String {
    encrypt_content(ciphertext, &invert_table(table))
}

pub fn invert_table(table: &SubstitutionTable) -> SubstitutionTable {
    let alphabet = &table.alphabet;
    let mut inverse = vec!['\0'; alphabet.len()];
    for (plain, cipher) in table.pairs() {
        let slot = alphabet.position(cipher).expect("table image lies in its alphabet");
        inverse[slot] = plain;
    }
    SubstitutionTable::assemble(alphabet.clone(), inverse)
}

/// Derives a table from `key`: a Fisher-Yates shuffle of the alphabet driven
/// by ChaCha20 seeded with `SHA-256(key)`.
pub fn generate_table(key: &[u8], alphabet: &Alphabet) -> Result<SubstitutionTable> {
    if key.is_empty() {
        return Err(Error::invalid("key", "must not be empty"));
    }
    let seed: [u8; 32] = Sha256::digest(key).into();
    let mut rng = ChaCha20Rng::from_seed(seed);
    let mut image = alphabet.symbols.clone();
    image.shuffle(&mut rng);
    Ok(SubstitutionTable::assemble(alphabet.clone(), image))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    Selective,
}

/// Encrypted text plus what is needed to reverse it.
///
/// In full mode the manifest is empty and every alphabet character was
/// substituted. In selective mode the manifest lists, ascending, the
/// character positions that were substituted. Field order is the
/// serialized order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncryptedDocument {
    pub version: u32,
    pub mode: Mode,
    pub table_fingerprint: Fingerprint,
    pub manifest: Vec<usize>,
    pub ciphertext: String,
}

impl EncryptedDocument {
    /// Full-mode envelope around [`encrypt_content`].
    pub fn full(content: &str, table: &SubstitutionTable) -> Self {
        EncryptedDocument {
            version: FORMAT_VERSION,
            mode: Mode::Full,
            table_fingerprint: table.fingerprint.clone(),
            manifest: Vec::new(),
            ciphertext: encrypt_content(content, table),
        }
    }

    /// Compact single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("envelope serialization is infallible")
    }

    /// Parses and structurally validates an envelope. Anything malformed is
    /// reported as a corrupt document.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: EncryptedDocument =
            serde_json::from_str(s).map_err(|e| Error::CorruptDocument(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::CorruptDocument(format!(
                "unsupported version {}, expected {FORMAT_VERSION}",
                self.version
            )));
        }
        let fp = self.table_fingerprint.as_str();
        if fp.len() != 64 || !fp.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
            return Err(Error::CorruptDocument("table_fingerprint is not a lowercase SHA-256 hex digest".into()));
        }
        if self.mode == Mode::Full && !self.manifest.is_empty() {
            return Err(Error::CorruptDocument("full-mode document carries a manifest".into()));
        }
        if self.manifest.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::CorruptDocument("manifest is not strictly ascending".into()));
        }
        let len = self.ciphertext.chars().count();
        if let Some(&last) = self.manifest.last() {
            if last >= len {
                return Err(Error::CorruptDocument(format!(
                    "manifest index {last} out of range for ciphertext of length {len}"
                )));
            }
        }
        Ok(())
    }
}

/// Encrypts only the selected positions that hold alphabet characters.
///
/// The manifest lists the positions whose character changed. A selected
/// letter that the table maps to itself is left out, since decryption has
/// nothing to undo there.
pub fn selective_encrypt(
    content: &str,
    table: &SubstitutionTable,
    selection: &Selection,
) -> Result<EncryptedDocument> {
    let mut chars: Vec<char> = content.chars().collect();
    let len = chars.len();
    let mut manifest = Vec::with_capacity(selection.len());
    for &i in selection.indices() {
        let c = chars
            .get_mut(i)
            .ok_or(Error::InvalidSelection { index: i, len })?;
        match table.lookup(*c) {
            Some(e) if e != *c => {
                *c = e;
                manifest.push(i);
            }
            _ => {}
        }
    }
    Ok(EncryptedDocument {
        version: FORMAT_VERSION,
        mode: Mode::Selective,
        table_fingerprint: table.fingerprint.clone(),
        manifest,
        ciphertext: chars.into_iter().collect(),
    })
}

/// Reverses [`selective_encrypt`] or [`EncryptedDocument::full`].
pub fn selective_decrypt(doc: &EncryptedDocument, table: &SubstitutionTable) -> Result<String> {
    if doc.table_fingerprint != table.fingerprint {
        return Err(Error::WrongKey {
            expected: doc.table_fingerprint.to_string(),
            actual: table.fingerprint.to_string(),
        });
    }
    doc.validate()?;
    match doc.mode {
        Mode::Full => Ok(decrypt_content(&doc.ciphertext, table)),
        Mode::Selective => {
            let inverse = invert_table(table);
            let mut chars: Vec<char> = doc.ciphertext.chars().collect();
            for &i in &doc.manifest {
                let c = chars[i];
                chars[i] = inverse.lookup(c).ok_or_else(|| {
                    Error::CorruptDocument(format!("manifest index {i} holds non-alphabet character {c:?}"))
                })?;
            }
            Ok(chars.into_iter().collect())
        }
    }
}
