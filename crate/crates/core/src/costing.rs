//! Bills of materials and comparison against commercial reference systems.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::RankedPair;
use crate::money::with_display;
use crate::Money;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostingError {
    #[error("{0} must be at least 1")]
    NonPositiveQuantity(&'static str),
    #[error("cost total overflows")]
    Overflow,
    #[error("invalid blueprint data: {0}")]
    Blueprint(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemKind {
    Camera,
    Lens,
    Switch,
    Cabling,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineItem {
    pub kind: ItemKind,
    pub description: String,
    #[serde(with = "with_display")]
    pub unit_price_gbp: Money,
    pub quantity: u32,
    #[serde(with = "with_display")]
    pub subtotal_gbp: Money,
}

impl LineItem {
    pub fn new(
        kind: ItemKind,
        description: impl Into<String>,
        unit_price_gbp: Money,
        quantity: u32,
    ) -> Result<Self, CostingError> {
        let subtotal_gbp = unit_price_gbp.checked_mul(quantity).ok_or(CostingError::Overflow)?;
        Ok(Self { kind, description: description.into(), unit_price_gbp, quantity, subtotal_gbp })
    }

    /// Cat6 UTP sold in 100 m reels at £60 each.
    pub fn cabling(metres: u32) -> Self {
        let reels = metres.div_ceil(100);
        Self::new(ItemKind::Cabling, "UTP Cat6 cable, 100 m reel", Money::from_pounds(60), reels)
            .expect("small quantity")
    }
}

/// Network switch used to power and aggregate the cameras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchSpec {
    pub description: String,
    pub ports: u32,
    #[serde(with = "with_display")]
    pub price_gbp: Money,
}

impl Default for SwitchSpec {
    /// 24-port PoE gigabit switch at £417.
    fn default() -> Self {
        Self {
            description: "Mikrotik 24-port PoE gigabit switch".into(),
            ports: 24,
            price_gbp: Money::from_pounds(417),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BillOfMaterials {
    pub lines: Vec<LineItem>,
    pub camera_count: u32,
    pub switch_count: u32,
    #[serde(with = "with_display")]
    pub total_gbp: Money,
}

impl BillOfMaterials {
    fn from_lines(lines: Vec<LineItem>, camera_count: u32, switch_count: u32) -> Result<Self, CostingError> {
        let total_gbp = lines
            .iter()
            .try_fold(0i64, |acc, l| acc.checked_add(l.subtotal_gbp.pence()))
            .map(Money::from_pence)
            .ok_or(CostingError::Overflow)?;
        Ok(Self { lines, camera_count, switch_count, total_gbp })
    }

    /// Appends a line and updates the total.
    pub fn with_line(mut self, line: LineItem) -> Result<Self, CostingError> {
        self.lines.push(line);
        Self::from_lines(self.lines, self.camera_count, self.switch_count)
    }

    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .lines
            .iter()
            .map(|l| {
                [
                    l.description.clone(),
                    l.unit_price_gbp.to_string(),
                    l.quantity.to_string(),
                    l.subtotal_gbp.to_string(),
                ]
            })
            .collect();
        let total = ["Total".to_string(), String::new(), String::new(), self.total_gbp.to_string()];
        render_table(&["Item", "Unit", "Qty", "Subtotal"], &rows, Some(&total), &[false, true, true, true])
    }
}

pub fn switch_count(camera_count: u32, ports_per_switch: u32) -> u32 {
    camera_count.div_ceil(ports_per_switch)
}

/// Cameras, lenses, switches and any extra lines for `camera_count` units of
/// the selected pair. `switch = None` omits networking.
pub fn bill_of_materials(
    pair: &RankedPair,
    camera_count: u32,
    switch: Option<&SwitchSpec>,
    extras: &[LineItem],
) -> Result<BillOfMaterials, CostingError> {
    if camera_count == 0 {
        return Err(CostingError::NonPositiveQuantity("camera count"));
    }
    let mut lines = vec![
        LineItem::new(
            ItemKind::Camera,
            format!("{} camera ({})", pair.camera.id, pair.camera.brand),
            pair.camera.price_gbp,
            camera_count,
        )?,
        LineItem::new(
            ItemKind::Lens,
            format!("{} lens, {} mm", pair.lens.id, pair.lens.focal_mm),
            pair.lens.price_gbp,
            camera_count,
        )?,
    ];
    let mut switches = 0;
    if let Some(sw) = switch {
        if sw.ports == 0 {
            return Err(CostingError::NonPositiveQuantity("ports per switch"));
        }
        switches = switch_count(camera_count, sw.ports);
        lines.push(LineItem::new(ItemKind::Switch, sw.description.clone(), sw.price_gbp, switches)?);
    }
    lines.extend(extras.iter().cloned());
    BillOfMaterials::from_lines(lines, camera_count, switches)
}

/// A commercial localisation system used as a cost yardstick.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceBlueprint {
    pub name: String,
    pub application: String,
    pub equipment: String,
    #[serde(with = "with_display")]
    pub cost_low_gbp: Money,
    #[serde(with = "with_display")]
    pub cost_high_gbp: Money,
    pub maturity: String,
}

impl ReferenceBlueprint {
    pub fn midpoint(&self) -> Money {
        Money::from_pence((self.cost_low_gbp.pence() + self.cost_high_gbp.pence()) / 2)
    }
}

const BUNDLED_BLUEPRINTS: &str = include_str!("../data/blueprints.json");

pub fn load_blueprints(json: &str) -> Result<Vec<ReferenceBlueprint>, CostingError> {
    let list: Vec<ReferenceBlueprint> =
        serde_json::from_str(json).map_err(|e| CostingError::Blueprint(e.to_string()))?;
    for b in &list {
        if b.cost_low_gbp > b.cost_high_gbp {
            return Err(CostingError::Blueprint(format!("{}: low cost exceeds high cost", b.name)));
        }
    }
    Ok(list)
}

/// MoCap-160, MoCap-12 and UWB reference systems.
pub fn bundled_blueprints() -> Vec<ReferenceBlueprint> {
    load_blueprints(BUNDLED_BLUEPRINTS).expect("bundled blueprints are valid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub name: String,
    pub application: String,
    pub equipment: String,
    #[serde(with = "with_display")]
    pub cost_low_gbp: Money,
    #[serde(with = "with_display")]
    pub cost_high_gbp: Money,
    pub maturity: String,
    /// Plan total over this row's midpoint cost; absent for the plan row and
    /// when there is no plan cost to compare.
    pub plan_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlueprintComparison {
    pub rows: Vec<ComparisonRow>,
}

/// Places the camera plan (if any) beside the reference blueprints.
pub fn compare_blueprints(
    plan: Option<(&str, &BillOfMaterials)>,
    references: &[ReferenceBlueprint],
) -> BlueprintComparison {
    let mut rows = Vec::with_capacity(references.len() + 1);
    let plan_total = plan.map(|(_, bom)| bom.total_gbp).filter(|t| t.is_positive());
    if let Some((label, bom)) = plan {
        let cams = bom.lines.iter().filter(|l| l.kind == ItemKind::Camera);
        let equipment = cams
            .map(|l| format!("{}x {}", l.quantity, l.description))
            .chain(match bom.switch_count {
                0 => None,
                1 => Some("1 PoE switch".to_string()),
                n => Some(format!("{n} PoE switches")),
            })
            .collect::<Vec<_>>()
            .join(" + ");
        rows.push(ComparisonRow {
            name: label.to_string(),
            application: "Ceiling camera plan".into(),
            equipment,
            cost_low_gbp: bom.total_gbp,
            cost_high_gbp: bom.total_gbp,
            maturity: "Low TRL".into(),
            plan_ratio: None,
        });
    }
    for r in references {
        let mid = r.midpoint();
        let ratio = match plan_total {
            Some(t) if mid.is_positive() => Some(t.pence() as f64 / mid.pence() as f64),
            _ => None,
        };
        rows.push(ComparisonRow {
            name: r.name.clone(),
            application: r.application.clone(),
            equipment: r.equipment.clone(),
            cost_low_gbp: r.cost_low_gbp,
            cost_high_gbp: r.cost_high_gbp,
            maturity: r.maturity.clone(),
            plan_ratio: ratio,
        });
    }
    BlueprintComparison { rows }
}

fn thousands(m: Money) -> String {
    // Pence to £k with one decimal, rounded half up.
    let tenths = (m.pence() + 5_000) / 10_000;
    format!("{}.{}", tenths / 10, tenths % 10)
}

impl BlueprintComparison {
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                let cost = if r.cost_low_gbp == r.cost_high_gbp {
                    thousands(r.cost_low_gbp)
                } else {
                    format!("{}-{}", thousands(r.cost_low_gbp), thousands(r.cost_high_gbp))
                };
                let ratio = r.plan_ratio.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"));
                [r.name.clone(), cost, ratio, r.maturity.clone(), r.equipment.clone()]
            })
            .collect();
        render_table(
            &["Blueprint", "Cost (£k)", "Plan ratio", "Maturity", "Equipment"],
            &rows,
            None,
            &[false, true, true, false, false],
        )
    }
}

impl fmt::Display for BlueprintComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table())
    }
}

impl fmt::Display for BillOfMaterials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table())
    }
}

fn render_table<const N: usize>(
    header: &[&str; N],
    rows: &[[String; N]],
    footer: Option<&[String; N]>,
    right: &[bool; N],
) -> String {
    let mut widths = header.map(|h| h.chars().count());
    for r in rows.iter().chain(footer) {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let mut s = String::new();
        for (k, cell) in cells.iter().enumerate() {
            let pad = widths[k] - cell.chars().count();
            if k > 0 {
                s.push_str("  ");
            }
            if right[k] {
                s.push_str(&" ".repeat(pad));
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(pad));
            }
        }
        let _ = writeln!(out, "{}", s.trim_end());
    };
    line(&mut out, header);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    line(&mut out, &rule.iter().map(String::as_str).collect::<Vec<_>>());
    for r in rows {
        line(&mut out, &r.iter().map(String::as_str).collect::<Vec<_>>());
    }
    if let Some(f) = footer {
        line(&mut out, &rule.iter().map(String::as_str).collect::<Vec<_>>());
        line(&mut out, &f.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}
