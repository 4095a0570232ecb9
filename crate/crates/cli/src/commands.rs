//! Subcommand bodies. Each returns the bytes the binary writes, so the
//! same code paths are exercised by the integration tests without a
//! subprocess.

use fuzzcrypt_core::{
    extract_text_from_html, featurize, fuzzify, generate_table, relevance_scores, select_by_threshold, select_top_k,
    selective_decrypt, selective_encrypt, EncryptedDocument, FeatureStream, MembershipMatrix, RelevanceScores,
    Selection, SubstitutionTable,
};
use serde::Serialize;

use crate::config::{PipelineConfig, SelectionConfig};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Text the pipeline operates on: the file itself, or its visible text.
pub fn prepare_input(raw: &str, html: bool) -> String {
    if html {
        extract_text_from_html(raw)
    } else {
        raw.to_owned()
    }
}

/// Memberships and scores for every character; `None` for empty text.
pub struct Analysis {
    pub features: FeatureStream,
    pub matrix: Option<MembershipMatrix>,
    pub scores: Option<RelevanceScores>,
}

pub fn analyze(text: &str, config: &PipelineConfig) -> Result<Analysis, CliError> {
    let features = featurize(text, config.encoding);
    if features.is_empty() {
        return Ok(Analysis {
            features,
            matrix: None,
            scores: None,
        });
    }
    let matrix = fuzzify(&features.crisp_values(), &config.categories)?;
    let scores = relevance_scores(&matrix, &config.categories)?;
    Ok(Analysis {
        features,
        matrix: Some(matrix),
        scores: Some(scores),
    })
}

fn csv_bytes(rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(|e| CliError::Failure(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serialization is infallible");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct FuzzifyRow {
    index: usize,
    character: String,
    memberships: Vec<f64>,
}

#[derive(Serialize)]
struct FuzzifyReport<'a> {
    categories: Vec<&'a str>,
    rows: Vec<FuzzifyRow>,
}

pub fn cmd_fuzzify(text: &str, config: &PipelineConfig, format: Format) -> Result<String, CliError> {
    let a = analyze(text, config)?;
    let names: Vec<&str> = config.categories.names().collect();
    let rows = a.features.entries.iter().map(|f| {
        let m = a.matrix.as_ref().expect("non-empty input has a matrix");
        (f, m.row(f.index))
    });
    match format {
        Format::Csv => {
            let header = ["index", "character"].into_iter().chain(names.iter().copied()).map(String::from).collect();
            let body = rows.map(|(f, u)| {
                [f.index.to_string(), f.character.to_string()]
                    .into_iter()
                    .chain(u.iter().map(|&v| fmt_f64(v)))
                    .collect()
            });
            csv_bytes(std::iter::once(header).chain(body))
        }
        Format::Json => Ok(json_line(&FuzzifyReport {
            categories: names.clone(),
            rows: rows
                .map(|(f, u)| FuzzifyRow {
                    index: f.index,
                    character: f.character.to_string(),
                    memberships: u.to_vec(),
                })
                .collect(),
        })),
    }
}

#[derive(Serialize)]
struct RankRow {
    index: usize,
    character: String,
    score: f64,
    rank: usize,
}

pub fn cmd_rank(text: &str, config: &PipelineConfig, format: Format) -> Result<String, CliError> {
    let a = analyze(text, config)?;
    let rows: Vec<RankRow> = match &a.scores {
        None => Vec::new(),
        Some(s) => s
            .ranking()
            .iter()
            .enumerate()
            .map(|(pos, &i)| RankRow {
                index: i,
                character: a.features.entries[i].character.to_string(),
                score: s.scores()[i],
                rank: pos + 1,
            })
            .collect(),
    };
    match format {
        Format::Csv => {
            let header = ["index", "character", "score", "rank"].map(String::from).to_vec();
            let body = rows
                .into_iter()
                .map(|r| vec![r.index.to_string(), r.character, fmt_f64(r.score), r.rank.to_string()]);
            csv_bytes(std::iter::once(header).chain(body))
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Report {
                rows: Vec<RankRow>,
            }
            Ok(json_line(&Report { rows }))
        }
    }
}

pub fn table_for(config: &PipelineConfig) -> Result<SubstitutionTable, CliError> {
    Ok(generate_table(config.require_key()?.as_bytes(), &config.alphabet)?)
}

/// Runs the whole pipeline: score, select per config, encrypt.
pub fn encrypt_text(text: &str, config: &PipelineConfig) -> Result<(EncryptedDocument, Analysis), CliError> {
    let table = table_for(config)?;
    let a = analyze(text, config)?;
    let doc = match (config.selection, &a.scores) {
        (SelectionConfig::All, _) => EncryptedDocument::full(text, &table),
        (_, None) => selective_encrypt(text, &table, &Selection::from_indices(Vec::new()))?,
        (SelectionConfig::TopK(k), Some(s)) => selective_encrypt(text, &table, &select_top_k(s, k)?)?,
        (SelectionConfig::Threshold(t), Some(s)) => selective_encrypt(text, &table, &select_by_threshold(s, t)?)?,
    };
    Ok((doc, a))
}

pub fn cmd_encrypt(text: &str, config: &PipelineConfig) -> Result<String, CliError> {
    let (doc, _) = encrypt_text(text, config)?;
    let mut out = doc.to_json();
    out.push('\n');
    Ok(out)
}

pub fn cmd_decrypt(envelope: &str, config: &PipelineConfig) -> Result<String, CliError> {
    let doc = EncryptedDocument::from_json(envelope.trim_end_matches(['\n', '\r']))?;
    let table = table_for(config)?;
    Ok(selective_decrypt(&doc, &table)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripSummary {
    pub status: &'static str,
    pub equal: bool,
    pub mode: fuzzcrypt_core::Mode,
    pub characters: usize,
    pub encrypted_positions: usize,
    pub score_min: Option<f64>,
    pub score_max: Option<f64>,
    pub score_mean: Option<f64>,
}

pub fn roundtrip(text: &str, config: &PipelineConfig) -> Result<RoundtripSummary, CliError> {
    let (doc, a) = encrypt_text(text, config)?;
    let recovered = selective_decrypt(&doc, &table_for(config)?)?;
    let equal = recovered.as_bytes() == text.as_bytes();
    let encrypted_positions = match doc.mode {
        fuzzcrypt_core::Mode::Full => doc.ciphertext.chars().zip(text.chars()).filter(|(c, p)| c != p).count(),
        fuzzcrypt_core::Mode::Selective => doc.manifest.len(),
    };
    let scores = a.scores.as_ref().map(|s| s.scores()).unwrap_or(&[]);
    let (score_min, score_max, score_mean) = if scores.is_empty() {
        (None, None, None)
    } else {
        (
            Some(scores.iter().copied().fold(f64::INFINITY, f64::min)),
            Some(scores.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
            Some(scores.iter().sum::<f64>() / scores.len() as f64),
        )
    };
    Ok(RoundtripSummary {
        status: if equal { "PASS" } else { "FAIL" },
        equal,
        mode: doc.mode,
        characters: a.features.len(),
        encrypted_positions,
        score_min,
        score_max,
        score_mean,
    })
}

pub fn cmd_roundtrip(text: &str, config: &PipelineConfig, format: Format) -> Result<(String, bool), CliError> {
    let s = roundtrip(text, config)?;
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    let out = match format {
        Format::Csv => csv_bytes([
            [
                "status",
                "equal",
                "mode",
                "characters",
                "encrypted_positions",
                "score_min",
                "score_max",
                "score_mean",
            ]
            .map(String::from)
            .to_vec(),
            vec![
                s.status.to_string(),
                s.equal.to_string(),
                serde_json::to_value(s.mode).unwrap().as_str().unwrap_or_default().to_string(),
                s.characters.to_string(),
                s.encrypted_positions.to_string(),
                opt(s.score_min),
                opt(s.score_max),
                opt(s.score_mean),
            ],
        ])?,
        Format::Json => json_line(&s),
    };
    Ok((out, s.equal))
}
