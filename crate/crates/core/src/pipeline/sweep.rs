use serde::{Deserialize, Serialize};

use super::PipelineError;

/// Typical pass length over an A320 wing, metres.
pub const DEFAULT_PASS_LENGTH_M: f64 = 17.0;

/// Back-and-forth survey of a surface in parallel passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub area_m2: f64,
    pub swath_m: f64,
    pub speed_m_s: f64,
    pub pass_length_m: f64,
    pub pass_count: u32,
    pub turn_time_s: f64,
    pub total_time_s: f64,
}

impl SweepPlan {
    pub fn traverse_time_s(&self) -> f64 {
        f64::from(self.pass_count) * self.pass_length_m / self.speed_m_s
    }

    pub fn turn_count(&self) -> u32 {
        self.pass_count.saturating_sub(1)
    }
}

/// Passes needed to cover `area_m2` with `swath_m`-wide strips of
/// `pass_length_m`, and the time to fly them including 180° turns.
pub fn sweep_time(
    area_m2: f64,
    swath_m: f64,
    speed_m_s: f64,
    pass_length_m: f64,
    turn_time_s: f64,
) -> Result<SweepPlan, PipelineError> {
    for (v, name) in
        [(area_m2, "area"), (swath_m, "swath"), (speed_m_s, "speed"), (pass_length_m, "pass length")]
    {
        if !(v > 0.0 && v.is_finite()) {
            return Err(PipelineError::NonPositiveInput(name));
        }
    }
    if !(turn_time_s >= 0.0 && turn_time_s.is_finite()) {
        return Err(PipelineError::NonPositiveInput("turn time"));
    }
    let strips = area_m2 / (swath_m * pass_length_m);
    let pass_count = (strips - strips * 1e-12).ceil().max(1.0) as u32;
    let traverse = f64::from(pass_count) * pass_length_m / speed_m_s;
    let total_time_s = traverse + f64::from(pass_count - 1) * turn_time_s;
    Ok(SweepPlan { area_m2, swath_m, speed_m_s, pass_length_m, pass_count, turn_time_s, total_time_s })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wing_survey() {
        let s = sweep_time(63.0, 1.0, 0.5, DEFAULT_PASS_LENGTH_M, 5.0).unwrap();
        assert_eq!(s.pass_count, 4);
        assert_eq!(s.total_time_s, 151.0);
    }

    #[test]
    fn exact_fit_is_one_pass() {
        let s = sweep_time(17.0, 1.0, 0.5, 17.0, 5.0).unwrap();
        assert_eq!(s.pass_count, 1);
        assert_eq!(s.turn_count(), 0);
        assert_eq!(s.total_time_s, 34.0);
        assert_eq!(sweep_time(0.3 * 3.0, 0.3, 1.0, 3.0, 1.0).unwrap().pass_count, 1);
    }

    #[test]
    fn doubling_speed_halves_traverse() {
        let a = sweep_time(63.0, 1.0, 0.5, 17.0, 5.0).unwrap();
        let b = sweep_time(63.0, 1.0, 1.0, 17.0, 5.0).unwrap();
        assert_eq!(a.traverse_time_s(), 2.0 * b.traverse_time_s());
    }

    #[test]
    fn rejects_non_positive() {
        assert_eq!(sweep_time(63.0, 1.0, 0.0, 17.0, 5.0), Err(PipelineError::NonPositiveInput("speed")));
        assert!(sweep_time(-1.0, 1.0, 0.5, 17.0, 5.0).is_err());
        assert!(sweep_time(63.0, 1.0, 0.5, 17.0, -1.0).is_err());
    }
}
