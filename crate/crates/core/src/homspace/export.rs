//! CSV and JSON export of sampled tuples.

use serde::{Deserialize, Serialize};

use crate::group::UnitQuaternion;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudMetadata {
    pub space: String,
    pub m: usize,
    pub seed: u64,
    pub gap: Option<f64>,
    pub count: usize,
}

/// One row per tuple: `w, x, y, z` for each entry in turn, after a header row.
pub fn cloud_to_csv(tuples: &[Vec<UnitQuaternion>]) -> Result<String, csv::Error> {
    let m = tuples.first().map_or(0, Vec::len);
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = (1..=m)
        .flat_map(|k| ["w", "x", "y", "z"].map(|c| format!("z{k}_{c}")))
        .collect();
    wtr.write_record(&header)?;
    for t in tuples {
        let row: Vec<String> = t
            .iter()
            .flat_map(|q| q.as_array())
            .map(|v| format!("{v:.17e}"))
            .collect();
        wtr.write_record(&row)?;
    }
    let bytes = wtr.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

pub fn cloud_to_json(meta: &CloudMetadata, tuples: &[Vec<UnitQuaternion>]) -> serde_json::Value {
    let points: Vec<Vec<[f64; 4]>> = tuples
        .iter()
        .map(|t| t.iter().map(UnitQuaternion::as_array).collect())
        .collect();
    serde_json::json!({
        "metadata": meta,
        "points": points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let tuples = vec![vec![UnitQuaternion::i(), UnitQuaternion::j()]];
        let text = cloud_to_csv(&tuples).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "z1_w,z1_x,z1_y,z1_z,z2_w,z2_x,z2_y,z2_z");
        assert_eq!(lines[1].split(',').count(), 8);
        let parsed: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(parsed, vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn json_metadata() {
        let meta = CloudMetadata {
            space: "rminus".into(),
            m: 2,
            seed: 5,
            gap: None,
            count: 1,
        };
        let v = cloud_to_json(&meta, &[vec![UnitQuaternion::i(), UnitQuaternion::j()]]);
        assert_eq!(v["metadata"]["seed"], 5);
        assert_eq!(v["points"][0][1][2], 1.0);
    }
}
