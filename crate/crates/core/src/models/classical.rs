use crate::states::PhasePoint;

use super::bec::BecParams;
use super::dicke::DickeParams;

/// Central finite-difference step used when no analytic gradient is supplied.
const FD_STEP: f64 = 1e-6;

type EnergyFn = Box<dyn Fn(&[f64; 4]) -> f64 + Send + Sync>;
type GradientFn = Box<dyn Fn(&[f64; 4]) -> [f64; 4] + Send + Sync>;

/// Classical Hamiltonian of two degrees of freedom, with its phase-space
/// flow. Coordinates are ordered `(q1, p1, q2, p2)`.
pub struct ClassicalSystem {
    energy_fn: EnergyFn,
    gradient_fn: Option<GradientFn>,
}

impl ClassicalSystem {
    pub fn new(energy_fn: impl Fn(&[f64; 4]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            energy_fn: Box::new(energy_fn),
            gradient_fn: None,
        }
    }

    pub fn with_gradient(
        mut self,
        gradient_fn: impl Fn(&[f64; 4]) -> [f64; 4] + Send + Sync + 'static,
    ) -> Self {
        self.gradient_fn = Some(Box::new(gradient_fn));
        self
    }

    pub fn has_analytic_gradient(&self) -> bool {
        self.gradient_fn.is_some()
    }

    pub fn energy(&self, x: &[f64; 4]) -> f64 {
        (self.energy_fn)(x)
    }

    /// `(dH/dq1, dH/dp1, dH/dq2, dH/dp2)`, analytic when available,
    /// otherwise central differences with step `1e-6`.
    pub fn gradient(&self, x: &[f64; 4]) -> [f64; 4] {
        if let Some(g) = &self.gradient_fn {
            return g(x);
        }
        let mut out = [0.0; 4];
        for k in 0..4 {
            let mut xp = *x;
            let mut xm = *x;
            xp[k] += FD_STEP;
            xm[k] -= FD_STEP;
            out[k] = (self.energy(&xp) - self.energy(&xm)) / (2.0 * FD_STEP);
        }
        out
    }

    /// Hamiltonian vector field: `dq = dH/dp`, `dp = -dH/dq`.
    pub fn flow_field(&self, x: &[f64; 4]) -> [f64; 4] {
        let g = self.gradient(x);
        [g[1], -g[0], g[3], -g[2]]
    }

    /// One classical Runge-Kutta step of size `h`.
    pub fn rk4_step(&self, x: &[f64; 4], h: f64) -> [f64; 4] {
        let k1 = self.flow_field(x);
        let k2 = self.flow_field(&advance(x, &k1, h / 2.0));
        let k3 = self.flow_field(&advance(x, &k2, h / 2.0));
        let k4 = self.flow_field(&advance(x, &k3, h));
        let mut out = *x;
        for i in 0..4 {
            out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out
    }

    /// Integrate from `x0` to `t_end` with steps no larger than `max_step`.
    pub fn integrate(&self, x0: &[f64; 4], t_end: f64, max_step: f64) -> [f64; 4] {
        if t_end == 0.0 {
            return *x0;
        }
        let n_steps = (t_end.abs() / max_step).ceil().max(1.0) as usize;
        let h = t_end / n_steps as f64;
        let mut x = *x0;
        for _ in 0..n_steps {
            x = self.rk4_step(&x, h);
        }
        x
    }

    /// States at the requested (increasing, from 0) sample times.
    pub fn sample_trajectory(
        &self,
        x0: &[f64; 4],
        times: &[f64],
        max_step: f64,
    ) -> Vec<[f64; 4]> {
        let mut out = Vec::with_capacity(times.len());
        let mut x = *x0;
        let mut t = 0.0;
        for &target in times {
            let dt = target - t;
            if dt > 0.0 {
                let n_steps = (dt / max_step).ceil().max(1.0) as usize;
                let h = dt / n_steps as f64;
                for _ in 0..n_steps {
                    x = self.rk4_step(&x, h);
                }
                t = target;
            }
            out.push(x);
        }
        out
    }
}

/// Multiply every coordinate of the reference point pair by `sqrt(J)`,
/// producing initial conditions whose classical dynamics is equivalent
/// across different spin sizes.
pub fn rescale_initial(r1: [PhasePoint; 2], two_j: usize) -> [PhasePoint; 2] {
    let factor = (two_j as f64 / 2.0).sqrt();
    [r1[0].scaled(factor), r1[1].scaled(factor)]
}

/// Classical counterpart of the two-mode model, defined as the expectation
/// of the Hamiltonian over product coherent states at `(q1, p1, q2, p2)`.
/// With `I = (q1^2 + p1^2 + q2^2 + p2^2) / 2` it reads
/// `H = w I + hbar w + l (q1 q2 + p1 p2) + g (I^2 + 3 hbar I + hbar^2)`,
/// keeping the exact hbar-dependent corrections of the expectation.
pub fn classical_counterpart_bec(params: &BecParams) -> ClassicalSystem {
    let BecParams {
        omega,
        lambda,
        g,
        hbar,
        ..
    } = *params;
    let energy = move |x: &[f64; 4]| {
        let action = 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        omega * action
            + hbar * omega
            + lambda * (x[0] * x[2] + x[1] * x[3])
            + g * (action * action + 3.0 * hbar * action + hbar * hbar)
    };
    let gradient = move |x: &[f64; 4]| {
        let action = 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        let radial = omega + g * (2.0 * action + 3.0 * hbar);
        [
            radial * x[0] + lambda * x[2],
            radial * x[1] + lambda * x[3],
            radial * x[2] + lambda * x[0],
            radial * x[3] + lambda * x[1],
        ]
    };
    ClassicalSystem::new(energy).with_gradient(gradient)
}

/// Classical counterpart of the spin-boson model over spin (x) field
/// coherent states, coordinates `(q_a, p_a, q_f, p_f)`. With
/// `r^2 = q_a^2 + p_a^2` and `chi = sqrt(1 - r^2 / (hbar J))`:
///
/// `H = eps (2 r^2 - hbar J) + (w/2)(q_f^2 + p_f^2)
///    + 2 chi [ G (q_a q_f + p_a p_f) + G' (q_a q_f - p_a p_f) ]`.
///
/// Defined for `r^2 < hbar J` (the label-domain pole). At `hbar = 1` it
/// satisfies `H(r sqrt(J); J) / J = H(r sqrt(J'); J') / J'` exactly.
pub fn classical_counterpart_dicke(params: &DickeParams) -> ClassicalSystem {
    let DickeParams {
        epsilon,
        omega,
        g_rot,
        g_counter,
        hbar,
        ..
    } = *params;
    let j = params.j();
    let pole = hbar * j;
    let energy = move |x: &[f64; 4]| {
        let r_sq = x[0] * x[0] + x[1] * x[1];
        let chi = (1.0 - r_sq / pole).max(0.0).sqrt();
        let coupling = g_rot * (x[0] * x[2] + x[1] * x[3]) + g_counter * (x[0] * x[2] - x[1] * x[3]);
        epsilon * (2.0 * r_sq - pole) + 0.5 * omega * (x[2] * x[2] + x[3] * x[3])
            + 2.0 * chi * coupling
    };
    let gradient = move |x: &[f64; 4]| {
        let r_sq = x[0] * x[0] + x[1] * x[1];
        let chi = (1.0 - r_sq / pole).max(f64::MIN_POSITIVE).sqrt();
        let coupling = g_rot * (x[0] * x[2] + x[1] * x[3]) + g_counter * (x[0] * x[2] - x[1] * x[3]);
        let dchi_scale = -1.0 / (pole * chi); // d chi / d q_a = dchi_scale * q_a
        [
            4.0 * epsilon * x[0]
                + 2.0 * chi * (g_rot + g_counter) * x[2]
                + 2.0 * coupling * dchi_scale * x[0],
            4.0 * epsilon * x[1]
                + 2.0 * chi * (g_rot - g_counter) * x[3]
                + 2.0 * coupling * dchi_scale * x[1],
            omega * x[2] + 2.0 * chi * (g_rot + g_counter) * x[0],
            omega * x[3] + 2.0 * chi * (g_rot - g_counter) * x[1],
        ]
    };
    ClassicalSystem::new(energy).with_gradient(gradient)
}

fn advance(x: &[f64; 4], k: &[f64; 4], h: f64) -> [f64; 4] {
    [
        x[0] + h * k[0],
        x[1] + h * k[1],
        x[2] + h * k[2],
        x[3] + h * k[3],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{CompositeSpace, FockSpace};
    use crate::models::{build_bec, build_dicke};
    use crate::states::{bosonic_coherent, product_state, spin_coherent};
    use approx::assert_abs_diff_eq;

    #[test]
    fn bec_counterpart_matches_quantum_expectation() {
        let params = BecParams {
            omega: 1.0,
            lambda: 0.2,
            g: 0.1,
            hbar: 1.0,
            n_max: 60,
        };
        let space = params.space();
        let h = build_bec(&params, &space).unwrap();
        let point = [1.0, 1.0, 1.0, 1.0];
        let s1 = bosonic_coherent(
            PhasePoint::new(point[0], point[1]),
            params.hbar,
            FockSpace::new(params.n_max),
        )
        .unwrap();
        let s2 = bosonic_coherent(
            PhasePoint::new(point[2], point[3]),
            params.hbar,
            FockSpace::new(params.n_max),
        )
        .unwrap();
        let psi = product_state(&s1, &s2, &space).unwrap();
        let quantum = h.expectation(&psi);
        let classical = classical_counterpart_bec(&params).energy(&point);
        assert_abs_diff_eq!(quantum, classical, epsilon = 1e-6);
    }

    #[test]
    fn dicke_counterpart_matches_quantum_expectation() {
        let params = DickeParams {
            epsilon: 1.0,
            omega: 1.0,
            g_rot: 0.35,
            g_counter: 0.35,
            two_j: 7,
            hbar: 1.0,
            n_max: 40,
        };
        let space = params.space();
        let h = build_dicke(&params, &space).unwrap();
        let point = [0.5, -0.3, 1.1, 0.4];
        let spin = spin_coherent(
            PhasePoint::new(point[0], point[1]),
            params.hbar,
            crate::hilbert::SpinSpace::new(params.two_j),
        )
        .unwrap();
        let field = bosonic_coherent(
            PhasePoint::new(point[2], point[3]),
            params.hbar,
            FockSpace::new(params.n_max),
        )
        .unwrap();
        let psi = product_state(&spin, &field, &space).unwrap();
        let quantum = h.expectation(&psi);
        let classical = classical_counterpart_dicke(&params).energy(&point);
        assert_abs_diff_eq!(quantum, classical, epsilon = 1e-6);
    }

    #[test]
    fn dicke_counterpart_scales_with_j() {
        // H(r sqrt(J); J) / J must be J-independent at hbar = 1.
        let base = DickeParams {
            epsilon: 1.0,
            omega: 1.0,
            g_rot: 0.35,
            g_counter: 0.35,
            two_j: 2, // J = 1
            hbar: 1.0,
            n_max: 10,
        };
        let r1 = [PhasePoint::new(0.5, 0.1), PhasePoint::new(1.0, -0.2)];
        let sys1 = classical_counterpart_dicke(&base);
        let scaled_params = DickeParams { two_j: 8, ..base }; // J' = 4
        let sys4 = classical_counterpart_dicke(&scaled_params);

        let x1 = [r1[0].q, r1[0].p, r1[1].q, r1[1].p];
        let r4 = rescale_initial(r1, 8);
        let x4 = [r4[0].q, r4[0].p, r4[1].q, r4[1].p];
        let e1 = sys1.energy(&x1) / 1.0;
        let e4 = sys4.energy(&x4) / 4.0;
        assert_abs_diff_eq!(e1, e4, epsilon = 1e-8);
    }

    #[test]
    fn rescale_multiplies_by_sqrt_j() {
        let r1 = [PhasePoint::new(1.0, 0.0), PhasePoint::new(1.0, 0.0)];
        let r4 = rescale_initial(r1, 8); // J = 4
        assert_abs_diff_eq!(r4[0].q, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r4[1].q, 2.0, epsilon = 1e-15);
        let same = rescale_initial(r1, 2); // J = 1
        assert_abs_diff_eq!(same[0].q, 1.0, epsilon = 1e-15);
        // norm scaling |r_J|^2 = J |r_1|^2
        let norm_sq: f64 = r4.iter().map(|p| p.radius_sq()).sum();
        assert_abs_diff_eq!(norm_sq, 4.0 * 2.0, epsilon = 1e-14);
    }

    #[test]
    fn analytic_gradients_match_finite_differences() {
        let bec = BecParams {
            omega: 1.0,
            lambda: 0.2,
            g: 0.1,
            hbar: 0.5,
            n_max: 10,
        };
        let dicke = DickeParams {
            epsilon: 1.0,
            omega: 1.0,
            g_rot: 0.35,
            g_counter: 0.2,
            two_j: 7,
            hbar: 1.0,
            n_max: 10,
        };
        let systems = [
            classical_counterpart_bec(&bec),
            classical_counterpart_dicke(&dicke),
        ];
        let x = [0.4, -0.2, 0.9, 0.3];
        for sys in &systems {
            let analytic = sys.gradient(&x);
            for k in 0..4 {
                let mut xp = x;
                let mut xm = x;
                xp[k] += 1e-6;
                xm[k] -= 1e-6;
                let fd_k = (sys.energy(&xp) - sys.energy(&xm)) / 2e-6;
                assert_abs_diff_eq!(analytic[k], fd_k, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn free_oscillators_return_after_a_period() {
        let params = BecParams {
            omega: 1.3,
            lambda: 0.0,
            g: 0.0,
            hbar: 1.0,
            n_max: 10,
        };
        let sys = classical_counterpart_bec(&params);
        let x0 = [1.0, 0.0, -0.5, 0.7];
        let period = 2.0 * std::f64::consts::PI / params.omega;
        let x1 = sys.integrate(&x0, period, 1e-3);
        for k in 0..4 {
            assert_abs_diff_eq!(x1[k], x0[k], epsilon = 1e-8);
        }
    }

    #[test]
    fn energy_conserved_along_flow() {
        let params = BecParams {
            omega: 1.0,
            lambda: 0.2,
            g: 0.1,
            hbar: 1.0,
            n_max: 10,
        };
        let sys = classical_counterpart_bec(&params);
        let x0 = [1.0, 1.0, 1.0, 1.0];
        let e0 = sys.energy(&x0);
        let x1 = sys.integrate(&x0, 50.0, 5e-3);
        let drift = ((sys.energy(&x1) - e0) / e0).abs();
        assert!(drift <= 1e-8, "relative energy drift {drift:e}");
    }
}
