use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::run::{GenerationRow, RunRecord};

pub const CSV_HEADER: [&str; 8] = [
    "run_id",
    "seed",
    "generation",
    "mei",
    "covers_0n",
    "covers_1n",
    "active_refpoints",
    "evaluations",
];

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    run_id: String,
    seed: u64,
    generation: u64,
    mei: u32,
    covers_0n: bool,
    covers_1n: bool,
    active_refpoints: usize,
    evaluations: u64,
}

fn csv_err(path: &Path, source: csv::Error) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Path of the per-run table: `<root>/runs/<label>/<seed>.csv`.
pub fn run_csv_path(root: &Path, label: &str, seed: u64) -> PathBuf {
    root.join("runs").join(label).join(format!("{seed}.csv"))
}

pub fn write_run_csv(path: &Path, record: &RunRecord) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .has_headers(true)
        .from_path(path)
        .map_err(|e| csv_err(path, e))?;
    for r in &record.rows {
        w.serialize(CsvRow {
            run_id: record.run_id.clone(),
            seed: record.seed,
            generation: r.generation,
            mei: r.mei,
            covers_0n: r.covers_0n,
            covers_1n: r.covers_1n,
            active_refpoints: r.active_refpoints,
            evaluations: r.evaluations,
        })
        .map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a per-run table back. `t_start` and monitor results are not stored in
/// the table and come back empty.
pub fn read_run_csv(path: &Path) -> Result<RunRecord> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let header = rd.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Config(format!("{}: unexpected header {:?}", path.display(), header)));
    }
    let mut record = RunRecord {
        run_id: String::new(),
        seed: 0,
        rows: Vec::new(),
        t_start: None,
        monitor_violations: Vec::new(),
        extreme_losses: 0,
    };
    for (i, row) in rd.deserialize::<CsvRow>().enumerate() {
        let row = row.map_err(|e| csv_err(path, e))?;
        if i == 0 {
            record.run_id = row.run_id.clone();
            record.seed = row.seed;
        }
        record.rows.push(GenerationRow {
            generation: row.generation,
            mei: row.mei,
            covers_0n: row.covers_0n,
            covers_1n: row.covers_1n,
            active_refpoints: row.active_refpoints,
            evaluations: row.evaluations,
        });
    }
    Ok(record)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let record = RunRecord {
            run_id: "nsga3-nr8/5".into(),
            seed: 5,
            rows: (0..4)
                .map(|g| GenerationRow {
                    generation: g,
                    mei: 10 - g as u32,
                    covers_0n: g > 1,
                    covers_1n: g > 2,
                    active_refpoints: g as usize,
                    evaluations: 8 * (g + 1),
                })
                .collect(),
            t_start: Some(3),
            monitor_violations: vec![],
            extreme_losses: 0,
        };
        let path = run_csv_path(dir.path(), "nsga3-nr8", 5);
        write_run_csv(&path, &record).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("run_id,seed,generation,mei,covers_0n,covers_1n,active_refpoints,evaluations\n"));
        assert!(!text.contains('\r'));
        let back = read_run_csv(&path).unwrap();
        assert_eq!(back.rows, record.rows);
        assert_eq!((back.run_id.as_str(), back.seed), ("nsga3-nr8/5", 5));
    }

    #[test]
    fn rejects_foreign_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        fs::write(&p, "a,b\n1,2\n").unwrap();
        assert!(read_run_csv(&p).is_err());
    }
}
