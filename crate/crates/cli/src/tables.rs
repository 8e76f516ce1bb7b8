//! Built-in transcriptions of the published tables, shipped as data files
//! and parsed into comparison inputs. Marked in the data itself: these are
//! transcriptions for diffing, never computation inputs.

use gslie::report::{PrintedCell, PrintedTable};
use serde::Deserialize;

#[derive(Deserialize)]
struct CellDto {
    display: String,
    coeffs: Vec<String>,
}

#[derive(Deserialize)]
struct TableDto {
    #[allow(dead_code)]
    comment: String,
    cite: String,
    labels: Vec<String>,
    cells: Vec<Vec<CellDto>>,
}

fn load(source: &str) -> PrintedTable {
    let dto: TableDto = serde_json::from_str(source).expect("transcription data parses");
    PrintedTable {
        cite: dto.cite,
        labels: dto.labels,
        cells: dto
            .cells
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| PrintedCell {
                        display: c.display,
                        coeffs: c.coeffs,
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn printed_table1() -> PrintedTable {
    load(include_str!("../data/table1.json"))
}

pub fn printed_table2() -> PrintedTable {
    load(include_str!("../data/table2.json"))
}

pub fn printed_table3() -> PrintedTable {
    load(include_str!("../data/table3.json"))
}
