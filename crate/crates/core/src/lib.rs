//! Spanish pronunciation dictionary compiler.
//!
//! Spellings pass through [`orthography`], [`g2p`], [`syllable`],
//! [`stress`] and [`dialect`] before [`annotate`] renders them.
//! [`lexicon`] drives whole wordlists and [`export`] writes the results.

pub mod annotate;
pub mod dialect;
pub mod export;
pub mod g2p;
pub mod lexicon;
pub mod orthography;
pub mod stress;
pub mod syllable;

use thiserror::Error;

pub use annotate::{AnnotationBundle, IpaTable, PositionTag, Slot};
pub use dialect::{DialectConfig, PresetTable};
pub use export::ExportFormat;
pub use g2p::{Phoneme, PhonemeClass, PhonemeInventory};
pub use lexicon::{Dictionary, DictionaryEntry, Pipeline};
pub use stress::{StressCategory, StressedWord};
pub use syllable::{ClusterTables, Syllable};

/// Any failure while processing a single word.
#[derive(Debug, Error)]
pub enum WordError {
    #[error(transparent)]
    Orthography(#[from] orthography::OrthographyError),
    #[error(transparent)]
    G2p(#[from] g2p::G2pError),
    #[error(transparent)]
    Syllabify(#[from] syllable::SyllabifyError),
    #[error(transparent)]
    Stress(#[from] stress::StressError),
    #[error(transparent)]
    Annotate(#[from] annotate::AnnotateError),
}

impl WordError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Orthography(e) => e.kind(),
            Self::G2p(e) => e.kind(),
            Self::Syllabify(e) => e.kind(),
            Self::Stress(e) => e.kind(),
            Self::Annotate(e) => e.kind(),
        }
    }
}
