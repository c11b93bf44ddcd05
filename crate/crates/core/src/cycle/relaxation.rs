/// Occupation of a mode coupled to a flat reservoir with damping rate
/// `rate`, relaxing from `initial` towards `equilibrium`.
pub fn occupation_relaxation(initial: f64, equilibrium: f64, rate: f64, t: f64) -> f64 {
    debug_assert!(rate >= 0.0 && t >= 0.0);
    (initial - equilibrium) * (-rate * t).exp() + equilibrium
}
