//! JSON plant and controller files.

use std::path::Path;
use std::sync::Arc;

use gefstab::matrix::Mat;
use gefstab::ring::{Fraction, RingKind, RingModel, ZMode};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZModeSpec {
    #[default]
    ZeroConstantTerm,
    ZeroIdeal,
}

impl From<ZModeSpec> for ZMode {
    fn from(z: ZModeSpec) -> Self {
        match z {
            ZModeSpec::ZeroConstantTerm => ZMode::ZeroConstantTerm,
            ZModeSpec::ZeroIdeal => ZMode::ZeroIdeal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    MonomialSubalgebra {
        variable: String,
        generators: Vec<u32>,
        #[serde(default)]
        z_mode: ZModeSpec,
    },
    Polynomial {
        variables: Vec<String>,
        #[serde(default)]
        z_mode: ZModeSpec,
    },
}

impl RingSpec {
    pub fn build(&self) -> Result<Arc<RingModel>, CliError> {
        let ring = match self {
            RingSpec::MonomialSubalgebra { variable, generators, z_mode } => RingModel::new(
                RingKind::MonomialSubalgebra { var: variable.clone(), generators: generators.clone() },
                (*z_mode).into(),
            ),
            RingSpec::Polynomial { variables, z_mode } => {
                RingModel::new(RingKind::Polynomial { vars: variables.clone() }, (*z_mode).into())
            }
        };
        ring.map_err(CliError::from)
    }
}

/// A matrix of fraction strings `"num/den"` or `"num"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixBlock {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixBlock {
    pub fn from_mat(m: &Mat<Fraction>) -> Self {
        MatrixBlock {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn parse(&self, ring: &RingModel, what: &str) -> Result<Mat<Fraction>, CliError> {
        parse_entries(ring, &self.entries, self.rows, self.cols, what)
    }
}

fn parse_entries(
    ring: &RingModel,
    entries: &[Vec<String>],
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Mat<Fraction>, CliError> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(CliError::Input(format!("{what} entries do not form a {rows}x{cols} array")));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in entries.iter().enumerate() {
        let mut r = Vec::with_capacity(cols);
        for (j, s) in row.iter().enumerate() {
            let f = ring
                .parse_fraction(s)
                .map_err(|e| CliError::Input(format!("{what} entry ({}, {}): {e}", i + 1, j + 1)))?;
            r.push(f);
        }
        out.push(r);
    }
    Mat::from_rows(out).map_err(CliError::from)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantFile {
    pub ring: RingSpec,
    pub inputs: usize,
    pub outputs: usize,
    /// `outputs × inputs` array.
    pub entries: Vec<Vec<String>>,
}

pub struct Plant {
    pub ring: Arc<RingModel>,
    pub matrix: Mat<Fraction>,
}

impl PlantFile {
    pub fn load(ring: Arc<RingModel>, entries: &[Vec<String>], outputs: usize, inputs: usize) -> Result<Plant, CliError> {
        let matrix = parse_entries(&ring, entries, outputs, inputs, "plant")?;
        for (k, f) in matrix.entries().enumerate() {
            if !ring.causal(f) {
                return Err(CliError::Input(format!(
                    "plant entry ({}, {}) = {f} is not causal",
                    k / inputs + 1,
                    k % inputs + 1
                )));
            }
        }
        Ok(Plant { ring, matrix })
    }

    pub fn into_plant(&self) -> Result<Plant, CliError> {
        if self.inputs == 0 || self.outputs == 0 {
            return Err(CliError::Input("plant needs at least one input and one output".into()));
        }
        Self::load(self.ring.build()?, &self.entries, self.outputs, self.inputs)
    }
}

/// Any JSON object with a `controller` block; synthesis reports qualify.
#[derive(Clone, Debug, Deserialize)]
pub struct ControllerFile {
    pub controller: MatrixBlock,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_plant(path: &Path) -> Result<Plant, CliError> {
    read_json::<PlantFile>(path)?.into_plant()
}

pub fn read_controller(path: &Path, plant: &Plant) -> Result<Mat<Fraction>, CliError> {
    let file: ControllerFile = read_json(path)?;
    let c = file.controller.parse(&plant.ring, "controller")?;
    if c.rows() != plant.matrix.cols() || c.cols() != plant.matrix.rows() {
        return Err(CliError::Input(format!(
            "controller is {}x{} but the plant is {}x{}",
            c.rows(),
            c.cols(),
            plant.matrix.rows(),
            plant.matrix.cols()
        )));
    }
    Ok(c)
}
