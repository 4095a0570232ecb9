//! Fuzzy-membership feature selection and selective substitution
//! encryption for text content.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`ingest`] loads text (optionally stripping HTML) and turns each
//!    character into a crisp numeric value.
//! 2. [`fuzzy`] maps crisp values to membership degrees over a set of
//!    fuzzy categories.
//! 3. [`select`] scores each character by its weighted memberships and
//!    picks the most relevant ones.
//! 4. [`cipher`] substitutes the selected characters (or all of them)
//!    through a key-derived permutation table, producing a reversible
//!    [`EncryptedDocument`].
//!
//! ```
//! use fuzzcrypt_core::prelude::*;
//!
//! let text = "Meet at 9pm";
//! let stream = featurize(text, Encoding::CodePoint);
//! let cats = CategorySet::new(
//!     vec![FuzzyCategory::new("lower", 109.5, 7.5, 1.0)?],
//!     MembershipKind::default(),
//! )?;
//! let matrix = fuzzify(&stream.crisp_values(), &cats)?;
//! let scores = relevance_scores(&matrix, &cats)?;
//! let picked = select_top_k(&scores, 4)?;
//!
//! let table = generate_table(b"secret", &Alphabet::default())?;
//! let doc = selective_encrypt(text, &table, &picked)?;
//! assert_eq!(selective_decrypt(&doc, &table)?, text);
//! # Ok::<(), fuzzcrypt_core::Error>(())
//! ```
//!
//! The substitution cipher is classical and weak. It is not a substitute
//! for modern authenticated encryption.

pub mod cipher;
pub mod error;
pub mod exec;
pub mod fuzzy;
pub mod ingest;
pub mod select;

pub use cipher::{
    decrypt_content, encrypt_content, encrypt_letter, generate_table, invert_table, selective_decrypt,
    selective_encrypt, Alphabet, EncryptedDocument, Fingerprint, Mode, SubstitutionTable,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use fuzzy::{
    defuzzify, fuzzify, gaussian_membership, rational_membership, CategorySet, FuzzyCategory, MembershipKind,
    MembershipMatrix,
};
pub use ingest::{extract_text_from_html, featurize, load_text, Document, Encoding, Feature, FeatureStream};
pub use select::{
    relevance_scores, select_by_threshold, select_top_k, RelevanceScores, Selection, SelectionMode,
};

pub mod prelude {
    pub use crate::cipher::{
        decrypt_content, encrypt_content, generate_table, selective_decrypt, selective_encrypt, Alphabet,
        EncryptedDocument, SubstitutionTable,
    };
    pub use crate::fuzzy::{defuzzify, fuzzify, CategorySet, FuzzyCategory, MembershipKind};
    pub use crate::ingest::{extract_text_from_html, featurize, Encoding};
    pub use crate::select::{relevance_scores, select_by_threshold, select_top_k, Selection};
}
