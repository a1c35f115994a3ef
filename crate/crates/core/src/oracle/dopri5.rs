//! Dormand–Prince 5(4) pair with its fourth-order continuous extension.

use super::rk::{combine, Scheme, State, StepControl, ZERO};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth-order weights minus the embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// Continuous extension.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const B: [f64; 7] = [A71, 0.0, A73, A74, A75, A76, 0.0];
const E: [f64; 7] = [E1, 0.0, E3, E4, E5, E6, E7];
const D: [f64; 7] = [D1, 0.0, D3, D4, D5, D6, D7];

#[derive(Default)]
pub struct DormandPrince54 {
    k: [State; 7],
    h: f64,
    y_new: State,
}

impl Scheme for DormandPrince54 {
    const ALPHA: f64 = 0.7 / 5.0;
    const BETA: f64 = 0.4 / 5.0;
    const FAC_MIN: f64 = 0.2;
    const FAC_MAX: f64 = 10.0;
    const EVALS_PER_STEP: usize = 6;
    const EVALS_PER_DENSE: usize = 0;

    fn attempt<F: Fn(f64, &State) -> State>(
        &mut self,
        rhs: &F,
        t: f64,
        y: &State,
        f0: &State,
        h: f64,
        ctl: &StepControl,
    ) -> (State, State, f64) {
        let k = &mut self.k;
        k[0] = *f0;
        k[1] = rhs(t + C2 * h, &combine(y, &k[..1], &[A21], h));
        k[2] = rhs(t + C3 * h, &combine(y, &k[..2], &[A31, A32], h));
        k[3] = rhs(t + C4 * h, &combine(y, &k[..3], &[A41, A42, A43], h));
        k[4] = rhs(t + C5 * h, &combine(y, &k[..4], &[A51, A52, A53, A54], h));
        k[5] = rhs(t + h, &combine(y, &k[..5], &[A61, A62, A63, A64, A65], h));
        let y_new = combine(y, &k[..6], &B[..6], h);
        k[6] = rhs(t + h, &y_new);

        let err_step = combine(&ZERO, k, &E, h);
        let mut err_sq = 0.0;
        for i in 0..2 {
            err_sq += (err_step[i].norm() / ctl.scale(y[i], y_new[i])).powi(2);
        }
        self.h = h;
        self.y_new = y_new;
        (y_new, k[6], (err_sq / 2.0).sqrt())
    }

    fn prepare_dense<F: Fn(f64, &State) -> State>(
        &mut self,
        _rhs: &F,
        _t: f64,
        _y: &State,
        _y_new: &State,
        _f_new: &State,
        _h: f64,
    ) {
    }

    fn dense(&self, y0: &State, theta: f64) -> State {
        let (k, h, y1) = (&self.k, self.h, &self.y_new);
        let r5 = combine(&ZERO, k, &D, h);
        let one_minus = 1.0 - theta;
        let mut out = ZERO;
        for i in 0..2 {
            let ydiff = y1[i] - y0[i];
            let bspl = k[0][i] * h - ydiff;
            let r4 = ydiff - k[6][i] * h - bspl;
            out[i] = y0[i] + (ydiff + (bspl + (r4 + r5[i] * one_minus) * theta) * one_minus) * theta;
        }
        out
    }
}
