use baycam::optics::{angular_fov_deg, fov_at_distance, ground_footprint, Footprint, SensorGeometry};
use proptest::prelude::*;

fn sensor() -> impl Strategy<Value = SensorGeometry<f64>> {
    (1.0..40.0_f64, 1.0..30.0_f64, 100u32..8000, 100u32..6000).prop_map(|(w, h, rw, rh)| SensorGeometry {
        width_mm: w,
        height_mm: h,
        res_w_px: rw,
        res_h_px: rh,
        pixel_um: w * 1000.0 / f64::from(rw),
    })
}

#[test]
fn imx_sensor_at_eighteen_metres() {
    let s: SensorGeometry<f64> =
        SensorGeometry { width_mm: 14.13, height_mm: 10.35, res_w_px: 4096, res_h_px: 3000, pixel_um: 3.45 };
    let fov = fov_at_distance(&s, 25.0, 18_500.0).unwrap();
    assert!((fov.width_m - 10.4562).abs() < 1e-4);
    assert!((fov.gsd_w_mm_px - 2.5528).abs() < 1e-4);
}

#[test]
fn angular_form_round_trips() {
    let th = angular_fov_deg(14.13_f64, 25.0).unwrap();
    let fp = Footprint::from_angles(18.5, th, th).unwrap();
    assert!((fp.width_m - 18.5 * 14.13 / 25.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn fov_scales_linearly_with_distance(s in sensor(), f in 2.0..100.0_f64, d in 100.0..40_000.0_f64, k in 1.1..5.0_f64) {
        let a = fov_at_distance(&s, f, d).unwrap();
        let b = fov_at_distance(&s, f, d * k).unwrap();
        prop_assert!((b.width_m - k * a.width_m).abs() <= 1e-9 * b.width_m);
        prop_assert!((b.gsd_h_mm_px - k * a.gsd_h_mm_px).abs() <= 1e-9 * b.gsd_h_mm_px);
    }

    #[test]
    fn longer_lens_means_finer_gsd(s in sensor(), f in 2.0..100.0_f64, d in 100.0..40_000.0_f64) {
        let short = fov_at_distance(&s, f, d).unwrap();
        let long = fov_at_distance(&s, f * 1.5, d).unwrap();
        prop_assert!(long.gsd_w_mm_px < short.gsd_w_mm_px);
        prop_assert!(long.distortion < short.distortion);
    }

    #[test]
    fn footprint_matches_pinhole(s in sensor(), f in 2.0..100.0_f64, h in 0.5..40.0_f64) {
        let fp = ground_footprint(&s, f, h).unwrap();
        let fov = fov_at_distance(&s, f, h * 1000.0).unwrap();
        prop_assert!((fp.width_m - fov.width_m).abs() <= 1e-9 * fov.width_m);
        prop_assert!((fp.length_m - fov.height_m).abs() <= 1e-9 * fov.height_m);
    }

    #[test]
    fn capping_never_grows(s in sensor(), f in 2.0..100.0_f64, h in 0.5..40.0_f64, cw in 0.5..30.0_f64, cl in 0.5..30.0_f64) {
        let fp = ground_footprint(&s, f, h).unwrap();
        let c = fp.capped(cw, cl);
        prop_assert!(c.width_m <= fp.width_m && c.width_m <= cw);
        prop_assert!(c.length_m <= fp.length_m && c.length_m <= cl);
        let again = Footprint::from_angles(h, c.theta_h_deg, c.theta_v_deg).unwrap();
        prop_assert!((again.width_m - c.width_m).abs() <= 1e-9 * c.width_m);
    }
}
