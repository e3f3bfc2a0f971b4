//! Ingestion and preparation of the credit-card default dataset.
//!
//! Handles CSV loading against the fixed column schema, demographic group
//! derivation, class balancing by undersampling, stratified splitting, and
//! z-score standardization with train-only statistics.

use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of explanatory variables per client record.
pub const NUM_FEATURES: usize = 23;

/// Feature columns, in file order. Indices into `ClientRecord::features`.
pub const FEATURE_COLUMNS: [&str; NUM_FEATURES] = [
    "LIMIT_BAL", "SEX", "EDUCATION", "MARRIAGE", "AGE", "PAY_0", "PAY_2", "PAY_3", "PAY_4",
    "PAY_5", "PAY_6", "BILL_AMT1", "BILL_AMT2", "BILL_AMT3", "BILL_AMT4", "BILL_AMT5",
    "BILL_AMT6", "PAY_AMT1", "PAY_AMT2", "PAY_AMT3", "PAY_AMT4", "PAY_AMT5", "PAY_AMT6",
];

pub const ID_COLUMN: &str = "ID";
pub const LABEL_COLUMN: &str = "default.payment.next.month";

/// Feature indices used for demographic derivation.
pub const IDX_SEX: usize = 1;
pub const IDX_EDUCATION: usize = 2;
pub const IDX_AGE: usize = 4;

/// One raw dataset row: 23 explanatory features plus the binary default label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClientRecord {
    pub id: u64,
    pub features: Vec<f64>,
    /// 1 = payment default, 0 = no default.
    pub label: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gender {
    Male,
    Female,
}

impl Gender {
    pub const ALL: [Gender; 2] = [Gender::Male, Gender::Female];
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gender::Male => "male",
            Gender::Female => "female",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Education {
    GraduateSchool,
    University,
    HighSchool,
    Others,
}

impl Education {
    pub const ALL: [Education; 4] = [
        Education::GraduateSchool,
        Education::University,
        Education::HighSchool,
        Education::Others,
    ];
}

impl fmt::Display for Education {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Education::GraduateSchool => "graduate_school",
            Education::University => "university",
            Education::HighSchool => "high_school",
            Education::Others => "others",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AgeGroup {
    #[serde(rename = "20-29")]
    From20To29,
    #[serde(rename = "30-39")]
    From30To39,
    #[serde(rename = "40-49")]
    From40To49,
    #[serde(rename = "50+")]
    From50,
}

impl AgeGroup {
    pub const ALL: [AgeGroup; 4] = [
        AgeGroup::From20To29,
        AgeGroup::From30To39,
        AgeGroup::From40To49,
        AgeGroup::From50,
    ];
}

impl fmt::Display for AgeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AgeGroup::From20To29 => "20-29",
            AgeGroup::From30To39 => "30-39",
            AgeGroup::From40To49 => "40-49",
            AgeGroup::From50 => "50+",
        })
    }
}

/// Demographic labels derived from a record: one value per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DemographicProfile {
    pub gender: Gender,
    pub education: Education,
    pub age_group: AgeGroup,
}

/// How to balance classes before training.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceMode {
    Undersample,
    None,
}

impl fmt::Display for BalanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BalanceMode::Undersample => "undersample",
            BalanceMode::None => "none",
        })
    }
}

/// Train/test split parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
    pub balance_mode: BalanceMode,
}

impl SplitSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::Validation(format!(
                "train_fraction must lie strictly between 0 and 1, got {}",
                self.train_fraction
            )));
        }
        Ok(())
    }
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: 0.8,
            seed: 0,
            balance_mode: BalanceMode::Undersample,
        }
    }
}

/// Per-feature mean and population standard deviation from the train split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardization {
    pub mean: Vec<f64>,
    /// Population (1/N) standard deviation. 0 marks a degenerate feature that
    /// is only mean-shifted.
    pub std_dev: Vec<f64>,
}

impl Standardization {
    pub fn apply(&self, features: &[f64]) -> Vec<f64> {
        features
            .iter()
            .zip(self.mean.iter().zip(&self.std_dev))
            .map(|(&x, (&m, &s))| if s > 0.0 { (x - m) / s } else { x - m })
            .collect()
    }
}

/// Load all client records from a CSV file with the documented column schema.
pub fn load_records(path: &Path) -> Result<Vec<ClientRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };

    let id_idx = col(ID_COLUMN)?;
    let mut feat_idx = [0usize; NUM_FEATURES];
    for (i, name) in FEATURE_COLUMNS.iter().enumerate() {
        feat_idx[i] = col(name)?;
    }
    let label_idx = col(LABEL_COLUMN)?;

    let mut records = Vec::new();
    for (row_no, row) in reader.records().enumerate() {
        let row = row?;
        let row_no = row_no + 1;
        let parse = |idx: usize, name: &str| -> Result<f64> {
            let cell = row.get(idx).unwrap_or("");
            cell.trim().parse::<f64>().map_err(|_| Error::Parse {
                row: row_no,
                message: format!("column `{name}` has non-numeric value `{cell}`"),
            })
        };

        let id = parse(id_idx, ID_COLUMN)? as u64;
        let mut features = Vec::with_capacity(NUM_FEATURES);
        for (i, name) in FEATURE_COLUMNS.iter().enumerate() {
            features.push(parse(feat_idx[i], name)?);
        }
        let label_value = parse(label_idx, LABEL_COLUMN)?;
        let label = if label_value == 0.0 {
            0
        } else if label_value == 1.0 {
            1
        } else {
            return Err(Error::Validation(format!(
                "data row {row_no}: label {label_value} outside {{0, 1}}"
            )));
        };
        if features[IDX_AGE] < 18.0 {
            return Err(Error::Validation(format!(
                "data row {row_no}: AGE {} below dataset sanity bound 18",
                features[IDX_AGE]
            )));
        }
        records.push(ClientRecord { id, features, label });
    }
    Ok(records)
}

/// Write records back out in the documented column schema.
///
/// Feature values use shortest round-trip formatting, so load -> save -> load
/// reproduces every value exactly.
pub fn save_records(records: &[ClientRecord], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    let mut header: Vec<&str> = vec![ID_COLUMN];
    header.extend(FEATURE_COLUMNS);
    header.push(LABEL_COLUMN);
    writer.write_record(&header)?;
    for r in records {
        let mut row: Vec<String> = vec![r.id.to_string()];
        row.extend(r.features.iter().map(|x| x.to_string()));
        row.push(r.label.to_string());
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Map a record's SEX/EDUCATION/AGE codes onto the three demographic axes.
pub fn derive_demographics(record: &ClientRecord) -> Result<DemographicProfile> {
    let sex = record.features[IDX_SEX];
    let gender = if sex == 1.0 {
        Gender::Male
    } else if sex == 2.0 {
        Gender::Female
    } else {
        return Err(Error::Validation(format!(
            "record {}: SEX code {} outside {{1, 2}}",
            record.id, sex
        )));
    };

    let education = match record.features[IDX_EDUCATION] {
        e if e == 1.0 => Education::GraduateSchool,
        e if e == 2.0 => Education::University,
        e if e == 3.0 => Education::HighSchool,
        _ => Education::Others,
    };

    let age = record.features[IDX_AGE];
    let age_group = if age < 30.0 {
        AgeGroup::From20To29
    } else if age < 40.0 {
        AgeGroup::From30To39
    } else if age < 50.0 {
        AgeGroup::From40To49
    } else {
        AgeGroup::From50
    };

    Ok(DemographicProfile { gender, education, age_group })
}

/// Undersample the majority class so both classes have equal count.
///
/// Sampling is without replacement and the output order is a seeded shuffle.
pub fn balance(records: &[ClientRecord], seed: u64) -> Result<Vec<ClientRecord>> {
    let mut negatives: Vec<&ClientRecord> = records.iter().filter(|r| r.label == 0).collect();
    let mut positives: Vec<&ClientRecord> = records.iter().filter(|r| r.label == 1).collect();
    if negatives.is_empty() || positives.is_empty() {
        return Err(Error::Validation(
            "cannot balance: one of the classes has no records".to_string(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = negatives.len().min(positives.len());
    negatives.shuffle(&mut rng);
    positives.shuffle(&mut rng);
    negatives.truncate(target);
    positives.truncate(target);

    let mut out: Vec<ClientRecord> = negatives
        .into_iter()
        .chain(positives)
        .cloned()
        .collect();
    out.shuffle(&mut rng);
    Ok(out)
}

/// Stratified train/test split. Every record lands on exactly one side.
pub fn split(
    records: &[ClientRecord],
    spec: &SplitSpec,
) -> Result<(Vec<ClientRecord>, Vec<ClientRecord>)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut train = Vec::new();
    let mut test = Vec::new();

    for class in [0u8, 1u8] {
        let mut stratum: Vec<&ClientRecord> =
            records.iter().filter(|r| r.label == class).collect();
        if stratum.len() < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 records of class {class} to split, got {}",
                stratum.len()
            )));
        }
        stratum.shuffle(&mut rng);
        let n_train = (spec.train_fraction * stratum.len() as f64).round() as usize;
        if n_train == 0 || n_train == stratum.len() {
            return Err(Error::Validation(format!(
                "train_fraction {} leaves an empty stratum for class {class}",
                spec.train_fraction
            )));
        }
        train.extend(stratum[..n_train].iter().map(|&r| r.clone()));
        test.extend(stratum[n_train..].iter().map(|&r| r.clone()));
    }
    Ok((train, test))
}

/// Z-score both splits using train statistics only.
///
/// Features with zero train standard deviation pass through mean-shifted.
pub fn standardize(
    train: &[ClientRecord],
    test: &[ClientRecord],
) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>, Standardization)> {
    if train.is_empty() {
        return Err(Error::Validation("cannot standardize an empty train split".to_string()));
    }
    let n = train.len() as f64;
    let mut mean = vec![0.0; NUM_FEATURES];
    for r in train {
        for (m, &x) in mean.iter_mut().zip(&r.features) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n;
    }
    let mut var = vec![0.0; NUM_FEATURES];
    for r in train {
        for ((v, &m), &x) in var.iter_mut().zip(&mean).zip(&r.features) {
            let d = x - m;
            *v += d * d;
        }
    }
    let std_dev: Vec<f64> = var.iter().map(|&v| (v / n).sqrt()).collect();

    let params = Standardization { mean, std_dev };
    let train_features = train.iter().map(|r| params.apply(&r.features)).collect();
    let test_features = test.iter().map(|r| params.apply(&r.features)).collect();
    Ok((train_features, test_features, params))
}
