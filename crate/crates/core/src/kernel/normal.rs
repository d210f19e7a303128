use crate::error::{Error, Result};

// Rational Chebyshev coefficients for erf/erfc (W. J. Cody's CALERF
// scheme, double precision); each region is accurate to a few ulps,
// far inside the 1e-10 absolute contract on the composed CDF.
const A: [f64; 5] = [
    3.16112374387056560e0,
    1.13864154151050156e2,
    3.77485237685302021e2,
    3.20937758913846947e3,
    1.85777706184603153e-1,
];
const B: [f64; 4] = [
    2.36012909523441209e1,
    2.44024637934444173e2,
    1.28261652607737228e3,
    2.84423683343917062e3,
];
const C: [f64; 9] = [
    5.64188496988670089e-1,
    8.88314979438837594e0,
    6.61191906371416295e1,
    2.98635138197400131e2,
    8.81952221241769090e2,
    1.71204761263407058e3,
    2.05107837782607147e3,
    1.23033935479799725e3,
    2.15311535474403846e-8,
];
const D: [f64; 8] = [
    1.57449261107098347e1,
    1.17693950891312499e2,
    5.37181101862009858e2,
    1.62138957456669019e3,
    3.29079923573345963e3,
    4.36261909014324716e3,
    3.43936767414372164e3,
    1.23033935480374942e3,
];
const P: [f64; 6] = [
    3.05326634961232344e-1,
    3.60344899949804439e-1,
    1.25781726111229246e-1,
    1.60837851487422766e-2,
    6.58749161529837803e-4,
    1.63153871373020978e-2,
];
const Q: [f64; 5] = [
    2.56852019228982242e0,
    1.87295284992346047e0,
    5.27905102951428412e-1,
    6.05183413124413191e-2,
    2.33520497626869185e-3,
];

const THRESH: f64 = 0.46875;
const SQRPI: f64 = 5.6418958354775628695e-1; // 1/sqrt(pi)
const XBIG: f64 = 26.543;

fn erf_small(x: f64) -> f64 {
    let ysq = x * x;
    let mut xnum = A[4] * ysq;
    let mut xden = ysq;
    for i in 0..3 {
        xnum = (xnum + A[i]) * ysq;
        xden = (xden + B[i]) * ysq;
    }
    x * (xnum + A[3]) / (xden + B[3])
}

/// exp(-y^2) split so the argument reduction loses no low-order bits.
fn exp_neg_sq(y: f64) -> f64 {
    let ysq = (y * 16.0).trunc() / 16.0;
    let del = (y - ysq) * (y + ysq);
    (-ysq * ysq).exp() * (-del).exp()
}

fn erfc_mid(y: f64) -> f64 {
    let mut xnum = C[8] * y;
    let mut xden = y;
    for i in 0..7 {
        xnum = (xnum + C[i]) * y;
        xden = (xden + D[i]) * y;
    }
    exp_neg_sq(y) * (xnum + C[7]) / (xden + D[7])
}

fn erfc_tail(y: f64) -> f64 {
    if y >= XBIG {
        return 0.0;
    }
    let ysq = 1.0 / (y * y);
    let mut xnum = P[5] * ysq;
    let mut xden = ysq;
    for i in 0..4 {
        xnum = (xnum + P[i]) * ysq;
        xden = (xden + Q[i]) * ysq;
    }
    let r = ysq * (xnum + P[4]) / (xden + Q[4]);
    exp_neg_sq(y) * (SQRPI - r) / y
}

/// Complementary error function over all of R.
pub fn erfc(x: f64) -> f64 {
    let y = x.abs();
    let result = if y <= THRESH {
        return 1.0 - erf_small(x);
    } else if y <= 4.0 {
        erfc_mid(y)
    } else {
        erfc_tail(y)
    };
    if x < 0.0 {
        2.0 - result
    } else {
        result
    }
}

/// Standard normal distribution function Phi(x).
pub fn normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::usage(format!("normal_cdf of non-finite {x}")));
    }
    Ok(phi(x))
}

#[inline]
pub(crate) fn phi(x: f64) -> f64 {
    0.5 * erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}
