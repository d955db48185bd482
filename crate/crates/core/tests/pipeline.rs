use baycam::catalog::Catalog;
use baycam::geometry::bundled_a320;
use baycam::pipeline::{
    plan_scenario, render_layout_svg, PlanOptions, PlanReport, ScenarioSpec, PRESET_NAMES,
};

#[test]
fn every_preset_plans_and_round_trips() {
    let cat = Catalog::bundled();
    let outline = bundled_a320();
    for name in PRESET_NAMES {
        let spec = ScenarioSpec::preset(name).unwrap();
        let plan = plan_scenario(&spec, &cat, &outline, &PlanOptions::default()).unwrap();
        let r = &plan.report;
        assert!(r.coverage.verified, "{name}");
        assert_eq!(r.solution.positions.len(), r.solution.camera_count);
        assert_eq!(r.bom.camera_count as usize, r.solution.camera_count);
        assert!(r.footprint.width_m <= spec.target_area_m[0] + 1e-12);
        let back: PlanReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.to_json(), r.to_json(), "{name}");
        let svg = render_layout_svg(r, &plan.geometry);
        assert_eq!(svg.matches("class=\"footprint\"").count(), r.solution.camera_count);
    }
}

#[test]
fn external_modes_have_a_bay() {
    let cat = Catalog::bundled();
    let outline = bundled_a320();
    for name in ["vehicle", "human"] {
        let plan =
            plan_scenario(&ScenarioSpec::preset(name).unwrap(), &cat, &outline, &PlanOptions::default())
                .unwrap();
        let bay = plan.report.grid.bay.unwrap();
        assert!((bay.width() - 50.0).abs() < 1e-9 && (bay.height() - 40.0).abs() < 1e-9);
        assert!(plan.geometry.grid_points.iter().all(|p| bay.contains(p)));
    }
}

#[test]
fn budget_below_every_pair_is_infeasible() {
    let mut spec = ScenarioSpec::preset("defect").unwrap();
    spec.budget_gbp = Some(baycam::Money::from_pounds(100));
    let err =
        plan_scenario(&spec, &Catalog::bundled(), &bundled_a320(), &PlanOptions::default()).unwrap_err();
    assert!(err.is_infeasible(), "{err}");
}

#[test]
fn fps_band_feeds_motion_check() {
    let plan = plan_scenario(
        &ScenarioSpec::preset("drone").unwrap(),
        &Catalog::bundled(),
        &bundled_a320(),
        &PlanOptions::default(),
    )
    .unwrap();
    let m = plan.report.motion.unwrap();
    assert_eq!(m.velocity_m_s, 1.5);
    assert!((m.distance_per_frame_m - 1.5 / m.fps).abs() < 1e-15);
    assert_eq!(m.threshold_m, 0.25);
}
