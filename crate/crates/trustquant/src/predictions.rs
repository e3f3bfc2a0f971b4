//! The audited-prediction record and its CSV wire format.
//!
//! The CSV schema is the model-agnostic audit contract: any tool that writes
//! `id,true_label,predicted_label,confidence,gender,education,age_group` can
//! be scored by the trust metrics.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::{AgeGroup, DemographicProfile, Education, Gender};
use crate::error::{Error, Result};

pub const PREDICTIONS_HEADER: [&str; 7] = [
    "id",
    "true_label",
    "predicted_label",
    "confidence",
    "gender",
    "education",
    "age_group",
];

/// One audited prediction: oracle answer, model answer, softmax confidence of
/// the model answer, and the demographic profile of the client.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub id: u64,
    pub true_label: u8,
    pub predicted_label: u8,
    pub confidence: f64,
    pub demographics: DemographicProfile,
}

impl PredictionRecord {
    pub fn is_correct(&self) -> bool {
        self.true_label == self.predicted_label
    }
}

/// Write predictions with 12 decimal places of confidence (well beyond the
/// 9-significant-digit contract for values in [0, 1]).
pub fn write_predictions_csv(records: &[PredictionRecord], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(PREDICTIONS_HEADER)?;
    for r in records {
        writer.write_record([
            r.id.to_string(),
            r.true_label.to_string(),
            r.predicted_label.to_string(),
            format!("{:.12}", r.confidence),
            r.demographics.gender.to_string(),
            r.demographics.education.to_string(),
            r.demographics.age_group.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

fn parse_gender(s: &str) -> Option<Gender> {
    match s {
        "male" => Some(Gender::Male),
        "female" => Some(Gender::Female),
        _ => None,
    }
}

fn parse_education(s: &str) -> Option<Education> {
    match s {
        "graduate_school" => Some(Education::GraduateSchool),
        "university" => Some(Education::University),
        "high_school" => Some(Education::HighSchool),
        "others" => Some(Education::Others),
        _ => None,
    }
}

fn parse_age_group(s: &str) -> Option<AgeGroup> {
    match s {
        "20-29" => Some(AgeGroup::From20To29),
        "30-39" => Some(AgeGroup::From30To39),
        "40-49" => Some(AgeGroup::From40To49),
        "50+" => Some(AgeGroup::From50),
        _ => None,
    }
}

/// Read a predictions CSV. Confidence is accepted anywhere in [0, 1] here;
/// the tighter `>= 0.5` bound only holds for argmax confidences produced by
/// the in-crate model path.
pub fn read_predictions_csv(path: &Path) -> Result<Vec<PredictionRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let mut idx = [0usize; 7];
    for (i, name) in PREDICTIONS_HEADER.iter().enumerate() {
        idx[i] = headers
            .iter()
            .position(|h| h == *name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))?;
    }

    let mut records = Vec::new();
    for (row_no, row) in reader.records().enumerate() {
        let row = row?;
        let row_no = row_no + 1;
        let cell = |i: usize| row.get(idx[i]).unwrap_or("").trim();
        let parse_err = |msg: String| Error::Parse { row: row_no, message: msg };

        let id: u64 = cell(0)
            .parse()
            .map_err(|_| parse_err(format!("bad id `{}`", cell(0))))?;
        let parse_label = |i: usize, name: &str| -> Result<u8> {
            match cell(i) {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(parse_err(format!("{name} `{other}` outside {{0, 1}}"))),
            }
        };
        let true_label = parse_label(1, "true_label")?;
        let predicted_label = parse_label(2, "predicted_label")?;
        let confidence: f64 = cell(3)
            .parse()
            .map_err(|_| parse_err(format!("bad confidence `{}`", cell(3))))?;
        if !(0.0..=1.0).contains(&confidence) {
            return Err(parse_err(format!("confidence {confidence} outside [0, 1]")));
        }
        let gender = parse_gender(cell(4))
            .ok_or_else(|| parse_err(format!("unknown gender `{}`", cell(4))))?;
        let education = parse_education(cell(5))
            .ok_or_else(|| parse_err(format!("unknown education `{}`", cell(5))))?;
        let age_group = parse_age_group(cell(6))
            .ok_or_else(|| parse_err(format!("unknown age_group `{}`", cell(6))))?;

        records.push(PredictionRecord {
            id,
            true_label,
            predicted_label,
            confidence,
            demographics: DemographicProfile { gender, education, age_group },
        });
    }
    Ok(records)
}
