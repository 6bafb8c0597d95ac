//! Run settings from flags and an optional TOML file. Flags win.

use std::path::{Path, PathBuf};

use anyhow::Context;
use credal_chain::data::{load_arff, load_arff_with_xml, load_csv, LabelSpec};
use credal_chain::{RawDataset, Strategy};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Arff,
    Csv,
}

/// Where a dataset lives and how its labels are marked.
#[derive(Debug, Clone, Default, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct DatasetArgs {
    /// Dataset file (ARFF or CSV).
    #[arg(long, alias = "train")]
    pub dataset: Option<PathBuf>,
    /// File format; guessed from the extension when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Number of trailing label columns.
    #[arg(long)]
    pub labels: Option<usize>,
    /// MULAN label file naming the ARFF label attributes.
    #[arg(long)]
    pub xml: Option<PathBuf>,
}

impl DatasetArgs {
    pub fn merge(self, file: DatasetArgs) -> DatasetArgs {
        DatasetArgs {
            dataset: self.dataset.or(file.dataset),
            format: self.format.or(file.format),
            labels: self.labels.or(file.labels),
            xml: self.xml.or(file.xml),
        }
    }
}

pub fn guess_format(path: &Path, format: Option<Format>) -> Format {
    format.unwrap_or_else(|| {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("arff") => Format::Arff,
            _ => Format::Csv,
        }
    })
}

/// Loads `path` using the label description in `args`.
pub fn load(path: &Path, args: &DatasetArgs) -> anyhow::Result<RawDataset> {
    let data = match guess_format(path, args.format) {
        Format::Arff => match (&args.xml, args.labels) {
            (Some(xml), _) => load_arff_with_xml(path, xml)?,
            (None, Some(m)) => load_arff(path, &LabelSpec::Trailing(m))?,
            (None, None) => anyhow::bail!("ARFF input needs --labels or --xml"),
        },
        Format::Csv => {
            let m = args.labels.context("CSV input needs --labels")?;
            load_csv(path, m)?
        }
    };
    Ok(data)
}

/// Keys accepted in a `run` config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunFile {
    #[serde(flatten)]
    pub data: DatasetArgs,
    pub name: Option<String>,
    pub z: Option<usize>,
    pub s: Option<Vec<f64>>,
    pub missing: Option<Vec<f64>>,
    pub strategies: Option<Vec<String>>,
    pub repeats: Option<usize>,
    pub folds: Option<usize>,
    pub seed: Option<u64>,
    pub alpha: Option<f64>,
    pub order: Option<Vec<usize>>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub timing: Option<bool>,
}

impl RunFile {
    pub fn read(path: &Path) -> anyhow::Result<RunFile> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn strategies(&self) -> anyhow::Result<Option<Vec<Strategy>>> {
        self.strategies
            .as_ref()
            .map(|list| {
                list.iter()
                    .map(|s| s.parse::<Strategy>().map_err(anyhow::Error::from))
                    .collect()
            })
            .transpose()
    }
}
