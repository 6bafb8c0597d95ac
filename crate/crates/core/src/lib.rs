//! Multi-label classifier chains that abstain.
//!
//! Every link of the chain is a naive credal classifier: naive Bayes whose
//! conditional probabilities are intervals from the imprecise Dirichlet
//! model. A label whose interval straddles one half is left undecided (`*`),
//! and later links either branch over the undecided values or marginalize
//! them out.
//!
//! ```
//! use credal_chain::{toy, ChainModel, DiscretizeConfig, Hyperparams, Strategy};
//!
//! let (train, bins) = credal_chain::data::discretize(&toy::branching(), &DiscretizeConfig::default()).unwrap();
//! let hp = Hyperparams::new(toy::BRANCHING_S, 1.0).unwrap();
//! let model = ChainModel::fit(&train, &[0, 1], hp).unwrap();
//! let x = bins.bin_row(&[0.0]).unwrap();
//! assert_eq!(model.predict(&x, Strategy::ImpreciseBranching).unwrap().to_string(), "*,*");
//! ```

pub mod chain;
pub mod credal;
pub mod data;
mod error;
pub mod eval;
pub mod ncc;
pub mod seed;
pub mod toy;

pub use chain::{ChainModel, Prediction, StepTrace, Strategy};
pub use credal::{decide, dual, IndexSets, LabelState, PartialLabelVector, ProbInterval};
pub use data::{DiscretizeConfig, DiscretizedDataset, RawDataset};
pub use error::{Error, Result};
pub use eval::{completeness, set_accuracy, ExperimentGrid, MetricRow};
pub use ncc::{CountTables, Hyperparams};
