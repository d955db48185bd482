use std::collections::HashSet;

use serde::{Deserialize, Deserializer, Serialize};

use super::{CameraSpec, CatalogError, LensSpec, Shutter};
use crate::optics::SensorGeometry;
use crate::Money;

const CAMERA_COLUMNS: &[&str] = &[
    "id",
    "brand",
    "sensor_w_mm",
    "sensor_h_mm",
    "res_w_px",
    "res_h_px",
    "format",
    "mpix",
    "shutter",
    "pixel_um",
    "fps",
    "gige_gbps",
    "price_gbp",
];
const LENS_COLUMNS: &[&str] = &["id", "description", "focal_mm", "price_gbp"];

/// Relative pixel-pitch disagreement above which a sanity warning is raised.
const PITCH_WARN_FRACTION: f64 = 0.05;

static BUNDLED_CAMERAS: &str = include_str!("../../data/cameras.csv");
static BUNDLED_LENSES: &str = include_str!("../../data/lenses.csv");

/// A loaded catalog plus non-fatal sanity findings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub cameras: Vec<CameraSpec>,
    pub lenses: Vec<LensSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Catalog {
    /// The 44 PoE cameras and 10 C-mount lenses shipped with the crate
    /// (prices as of 30 March 2025).
    pub fn bundled() -> Self {
        Self::from_csv(BUNDLED_CAMERAS, BUNDLED_LENSES).expect("bundled catalog is valid")
    }

    pub fn from_csv(cameras_csv: &str, lenses_csv: &str) -> Result<Self, CatalogError> {
        let cameras = load_cameras_csv(cameras_csv)?;
        let lenses = load_lenses_csv(lenses_csv)?;
        Ok(Self::with_warnings(cameras, lenses))
    }

    fn with_warnings(cameras: Vec<CameraSpec>, lenses: Vec<LensSpec>) -> Self {
        let warnings = cameras
            .iter()
            .filter_map(|c| {
                let m = c.sensor.pitch_mismatch();
                (m > PITCH_WARN_FRACTION).then(|| {
                    format!(
                        "{}: listed pixel pitch {} um disagrees with sensor/resolution by {:.0}%",
                        c.id,
                        c.sensor.pixel_um,
                        m * 100.0
                    )
                })
            })
            .collect();
        Self { cameras, lenses, warnings }
    }

    pub fn camera(&self, id: &str) -> Option<&CameraSpec> {
        self.cameras.iter().find(|c| c.id == id)
    }

    pub fn lens(&self, id: &str) -> Option<&LensSpec> {
        self.lenses.iter().find(|l| l.id == id)
    }
}

fn money_field<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrStr {
        Num(serde_json::Number),
        Str(String),
    }
    Ok(match NumOrStr::deserialize(d)? {
        NumOrStr::Num(n) => n.to_string(),
        NumOrStr::Str(s) => s,
    })
}

#[derive(Debug, Deserialize)]
struct CameraRow {
    id: String,
    brand: String,
    sensor_w_mm: f64,
    sensor_h_mm: f64,
    res_w_px: u32,
    res_h_px: u32,
    #[serde(default)]
    format: String,
    #[serde(default)]
    mpix: f64,
    shutter: String,
    pixel_um: f64,
    fps: f64,
    gige_gbps: f64,
    #[serde(deserialize_with = "money_field")]
    price_gbp: String,
}

#[derive(Debug, Deserialize)]
struct LensRow {
    id: String,
    #[serde(default)]
    description: String,
    focal_mm: f64,
    #[serde(deserialize_with = "money_field")]
    price_gbp: String,
}

fn positive(v: f64, id: &str, field: &'static str) -> Result<f64, CatalogError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CatalogError::NonPositiveValue { id: id.to_string(), field })
    }
}

fn price(raw: &str, id: &str) -> Result<Money, CatalogError> {
    let m: Money = raw.parse().map_err(|e| CatalogError::Parse(format!("{id}: {e}")))?;
    if m.is_positive() {
        Ok(m)
    } else {
        Err(CatalogError::NonPositiveValue { id: id.to_string(), field: "price_gbp" })
    }
}

impl CameraRow {
    fn into_spec(self) -> Result<CameraSpec, CatalogError> {
        let id = self.id.trim().to_string();
        positive(self.sensor_w_mm, &id, "sensor_w_mm")?;
        positive(self.sensor_h_mm, &id, "sensor_h_mm")?;
        positive(self.pixel_um, &id, "pixel_um")?;
        positive(self.fps, &id, "fps")?;
        positive(self.gige_gbps, &id, "gige_gbps")?;
        if self.res_w_px == 0 {
            return Err(CatalogError::NonPositiveValue { id, field: "res_w_px" });
        }
        if self.res_h_px == 0 {
            return Err(CatalogError::NonPositiveValue { id, field: "res_h_px" });
        }
        let shutter: Shutter = self.shutter.parse().map_err(|e| CatalogError::Parse(format!("{id}: {e}")))?;
        let price_gbp = price(&self.price_gbp, &id)?;
        Ok(CameraSpec {
            brand: self.brand.trim().to_string(),
            sensor: SensorGeometry {
                width_mm: self.sensor_w_mm,
                height_mm: self.sensor_h_mm,
                res_w_px: self.res_w_px,
                res_h_px: self.res_h_px,
                pixel_um: self.pixel_um,
            },
            format: self.format,
            megapixels: self.mpix,
            shutter,
            fps: self.fps,
            gige_gbps: self.gige_gbps,
            price_gbp,
            id,
        })
    }
}

impl LensRow {
    fn into_spec(self) -> Result<LensSpec, CatalogError> {
        let id = self.id.trim().to_string();
        positive(self.focal_mm, &id, "focal_mm")?;
        let price_gbp = price(&self.price_gbp, &id)?;
        Ok(LensSpec { description: self.description, focal_mm: self.focal_mm, price_gbp, id })
    }
}

fn check_unique<'a>(ids: impl Iterator<Item = &'a str>) -> Result<(), CatalogError> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(CatalogError::DuplicateId(id.to_string()));
        }
    }
    Ok(())
}

fn read_csv<R: for<'de> Deserialize<'de>>(source: &str, required: &[&str]) -> Result<Vec<R>, CatalogError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source.as_bytes());
    let headers = rdr.headers().map_err(|e| CatalogError::Parse(e.to_string()))?.clone();
    for col in required {
        if !headers.iter().any(|h| h == *col) {
            return Err(CatalogError::MissingColumn((*col).to_string()));
        }
    }
    rdr.deserialize().map(|r| r.map_err(|e| CatalogError::Parse(e.to_string()))).collect()
}

pub fn load_cameras_csv(source: &str) -> Result<Vec<CameraSpec>, CatalogError> {
    let rows: Vec<CameraRow> = read_csv(source, CAMERA_COLUMNS)?;
    let cams = rows.into_iter().map(CameraRow::into_spec).collect::<Result<Vec<_>, _>>()?;
    check_unique(cams.iter().map(|c| c.id.as_str()))?;
    Ok(cams)
}

pub fn load_lenses_csv(source: &str) -> Result<Vec<LensSpec>, CatalogError> {
    let rows: Vec<LensRow> = read_csv(source, LENS_COLUMNS)?;
    let lenses = rows.into_iter().map(LensRow::into_spec).collect::<Result<Vec<_>, _>>()?;
    check_unique(lenses.iter().map(|l| l.id.as_str()))?;
    Ok(lenses)
}

/// JSON catalog: `{"cameras": [row, ...], "lenses": [row, ...]}` where rows
/// carry the same fields as the CSV columns.
pub fn load_catalog_json(source: &str) -> Result<Catalog, CatalogError> {
    let value: serde_json::Value =
        serde_json::from_str(source).map_err(|e| CatalogError::Parse(e.to_string()))?;
    let section = |name: &str, cols: &[&str]| -> Result<Vec<serde_json::Value>, CatalogError> {
        let arr = value
            .get(name)
            .and_then(|v| v.as_array())
            .ok_or_else(|| CatalogError::MissingColumn(name.to_string()))?;
        for row in arr {
            for col in cols {
                let optional = matches!(*col, "format" | "mpix" | "description");
                if !optional && row.get(*col).is_none() {
                    return Err(CatalogError::MissingColumn((*col).to_string()));
                }
            }
        }
        Ok(arr.clone())
    };
    let cameras = section("cameras", CAMERA_COLUMNS)?
        .into_iter()
        .map(|v| {
            serde_json::from_value::<CameraRow>(v)
                .map_err(|e| CatalogError::Parse(e.to_string()))
                .and_then(CameraRow::into_spec)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lenses = section("lenses", LENS_COLUMNS)?
        .into_iter()
        .map(|v| {
            serde_json::from_value::<LensRow>(v)
                .map_err(|e| CatalogError::Parse(e.to_string()))
                .and_then(LensRow::into_spec)
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_unique(cameras.iter().map(|c| c.id.as_str()))?;
    check_unique(lenses.iter().map(|l| l.id.as_str()))?;
    Ok(Catalog::with_warnings(cameras, lenses))
}
