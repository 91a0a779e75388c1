//! Complex `Ei`, contour integrals of `e^z/z` along polylines, and the
//! sine and cosine integral identities.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constants::gamma;
use crate::error::{Error, Result};
use crate::quadrature::{legendre_rule, QuadratureRule};
use crate::realnum::{Precision, Real};

/// Minimum distance between a path and the pole at the origin.
pub const POLE_CLEARANCE: f64 = 1e-6;
pub const CONTOUR_ORDER: usize = 16;
/// Successive panel doublings must agree to this before a segment is accepted.
pub const CONTOUR_TOLERANCE: f64 = 1e-12;
const MAX_PANELS: usize = 1 << 14;

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: Precision) -> Self {
        Complex::new(Real::from_f64(re, prec), Real::from_f64(im, prec))
    }

    pub fn from_real(re: Real) -> Self {
        let im = Real::zero(re.precision());
        Complex { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Complex::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn i(prec: Precision) -> Self {
        Complex::new(Real::zero(prec), Real::one(prec))
    }

    pub fn precision(&self) -> Precision {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, prec: Precision) -> Self {
        Complex::new(self.re.with_precision(prec), self.im.with_precision(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt().expect("non-negative")
    }

    /// Principal argument in `(−π, π]`.
    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    /// Principal logarithm, branch cut on the negative real axis.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        Ok(Complex::new(self.abs().ln()?, self.arg()))
    }

    pub fn exp(&self) -> Result<Self> {
        let m = self.re.exp()?;
        Ok(Complex::new(&m * &self.im.cos(), &m * &self.im.sin()))
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = match f.precision() {
            Some(d) => (self.re.to_fixed(d as u32), self.im.abs().to_fixed(d as u32)),
            None => (self.re.to_string(), self.im.abs().to_string()),
        };
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{re} {sign} {im}i")
    }
}

fn add(a: &Complex, b: &Complex) -> Complex {
    Complex::new(&a.re + &b.re, &a.im + &b.im)
}

fn sub(a: &Complex, b: &Complex) -> Complex {
    Complex::new(&a.re - &b.re, &a.im - &b.im)
}

fn mul(a: &Complex, b: &Complex) -> Complex {
    Complex::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
}

fn div(a: &Complex, b: &Complex) -> Complex {
    let d = b.norm_sqr();
    Complex::new(
        (&a.re * &b.re + &a.im * &b.im) / &d,
        (&a.im * &b.re - &a.re * &b.im) / &d,
    )
}

macro_rules! complex_op {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait<&Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                $f(self, rhs)
            }
        }

        impl $trait<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                $f(&self, &rhs)
            }
        }

        impl $trait<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                $f(&self, rhs)
            }
        }

        impl $trait<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                $f(self, &rhs)
            }
        }
    };
}

complex_op!(Add, add, add);
complex_op!(Sub, sub, sub);
complex_op!(Mul, mul, mul);
complex_op!(Div, div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -(self.clone())
    }
}

/// `Ei(z) = γ + Log z + Σ z^k/(k·k!)` with the principal logarithm.
pub fn ei_complex(z: &Complex) -> Result<Complex> {
    if z.is_zero() {
        return Err(Error::Domain("Ei has a logarithmic singularity at 0".into()));
    }
    let prec = z.precision();
    let (re, im) = z.to_f64();
    let modulus = re.hypot(im);
    // terms reach e^{|z|} while the result is of order e^{Re z}
    let extra = if modulus > 1.0 {
        ((modulus - re) * std::f64::consts::LOG10_E).ceil() as u32
    } else {
        0
    };
    let wp = prec.extended(8 + extra);
    let z = z.with_precision(wp);

    let tol = Real::pow10(-(wp.digits() as i32) - 4, wp);
    let mut power = Complex::from_real(Real::one(wp)); // z^k / k!
    let mut sum = Complex::zero(wp);
    let mut abs_sum = Real::zero(wp);
    let mut small_run = 0;
    let mut k: i64 = 1;
    while small_run < 3 {
        power = power.scale(&(Real::one(wp) / k)) * &z;
        let term = power.scale(&(Real::one(wp) / k));
        let size = term.abs();
        sum = sum + &term;
        abs_sum = &abs_sum + &size;
        if size < &tol * &abs_sum {
            small_run += 1;
        } else {
            small_run = 0;
        }
        k += 1;
    }
    let mut value = sum + z.ln()?;
    value.re = value.re + gamma(wp);
    Ok(value.with_precision(prec))
}

fn distance_to_origin(p: &Complex, q: &Complex) -> f64 {
    let (px, py) = p.to_f64();
    let (qx, qy) = q.to_f64();
    let (dx, dy) = (qx - px, qy - py);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (-(px * dx + py * dy) / len2).clamp(0.0, 1.0) };
    (px + t * dx).hypot(py + t * dy)
}

/// A path through straight segments that stays clear of the origin.
#[derive(Debug, Clone)]
pub struct Polyline {
    vertices: Vec<Complex>,
}

impl Polyline {
    pub fn new(vertices: Vec<Complex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Domain("a path needs at least one vertex".into()));
        }
        let mut clearance = vertices[0].abs().to_f64();
        for w in vertices.windows(2) {
            clearance = clearance.min(distance_to_origin(&w[0], &w[1]));
        }
        if clearance < POLE_CLEARANCE {
            return Err(Error::PoleProximity { clearance });
        }
        Ok(Polyline { vertices })
    }

    pub fn from_points(points: &[(f64, f64)], prec: Precision) -> Result<Self> {
        Polyline::new(points.iter().map(|&(x, y)| Complex::from_f64(x, y, prec)).collect())
    }

    pub fn vertices(&self) -> &[Complex] {
        &self.vertices
    }

    pub fn start(&self) -> &Complex {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Complex {
        self.vertices.last().expect("non-empty")
    }

    /// This path followed by `other`, which must start where this one ends.
    pub fn then(&self, other: &Polyline) -> Result<Polyline> {
        if (self.end() - other.start()).abs().to_f64() > 1e-30 {
            return Err(Error::Domain("paths do not join".into()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices[1..].iter().cloned());
        Polyline::new(vertices)
    }

    pub fn reversed(&self) -> Polyline {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Polyline { vertices }
    }

    /// Total change of the argument along the path, in radians.
    pub fn angle_swept(&self) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| {
                let (ax, ay) = w[0].to_f64();
                let (bx, by) = w[1].to_f64();
                // arg(b/a); a straight segment never turns by π or more
                (ax * by - ay * bx).atan2(ax * bx + ay * by)
            })
            .sum()
    }

    /// Integer winding `w` with `swept angle = Arg(end) − Arg(start) + 2πw`.
    pub fn winding(&self) -> i64 {
        let (sx, sy) = self.start().to_f64();
        let (ex, ey) = self.end().to_f64();
        let principal = ey.atan2(ex) - sy.atan2(sx);
        ((self.angle_swept() - principal) / (2.0 * PI)).round() as i64
    }
}

fn exp_over_z(z: &Complex) -> Result<Complex> {
    Ok(z.exp()? / z)
}

fn segment_integral(rule: &QuadratureRule, p: &Complex, q: &Complex, panels: usize) -> Result<Complex> {
    let prec = p.precision();
    let delta = q - p;
    let width = Real::one(prec) / panels as i64;
    let half = &width / 2i64;
    let mut total = Complex::zero(prec);
    for k in 0..panels {
        let mid = &width * k as i64 + &half;
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            let t = &mid + &(&half * x);
            let z = p + &delta.scale(&t);
            total = total + exp_over_z(&z)?.scale(w);
        }
    }
    Ok((total * delta).scale(&half))
}

/// `∫ e^z/z dz` along `path`, segment by segment.
pub fn contour_integral_exp_over_z(path: &Polyline) -> Result<Complex> {
    let prec = path.start().precision();
    let rule = legendre_rule(CONTOUR_ORDER, prec)?;
    let mut total = Complex::zero(prec);
    for w in path.vertices.windows(2) {
        let mut panels = 1;
        let mut prev = segment_integral(&rule, &w[0], &w[1], panels)?;
        loop {
            panels *= 2;
            if panels > MAX_PANELS {
                return Err(Error::Convergence("contour segment did not converge".into()));
            }
            let cur = segment_integral(&rule, &w[0], &w[1], panels)?;
            let settled = (&cur - &prev).abs().to_f64() < CONTOUR_TOLERANCE;
            prev = cur;
            if settled {
                break;
            }
        }
        total = total + prev;
    }
    Ok(total)
}

/// `Si(x) = Σ (−1)^k x^{2k+1} / ((2k+1)·(2k+1)!)`.
pub fn sine_integral(x: &Real) -> Real {
    let prec = x.precision();
    let wp = prec.extended(8 + (x.abs().to_f64() * std::f64::consts::LOG10_E).ceil() as u32);
    let x = x.with_precision(wp);
    let x2 = &x * &x;
    let tol = Real::pow10(-(wp.digits() as i32) - 4, wp);
    let mut power = x.clone(); // x^{2k+1} / (2k+1)!
    let mut sum = x.clone();
    let mut k: i64 = 0;
    loop {
        k += 1;
        power = -(&power * &x2 / ((2 * k) * (2 * k + 1)));
        let term = &power / (2 * k + 1);
        sum = &sum + &term;
        if term.abs() < &tol * &sum.abs() {
            break;
        }
    }
    sum.with_precision(prec)
}

/// `Ci(x) = γ + ln x + Σ_{k≥1} (−1)^k x^{2k} / (2k·(2k)!)` for `x > 0`.
pub fn cosine_integral(x: &Real) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain("Ci requires x > 0".into()));
    }
    let prec = x.precision();
    let wp = prec.extended(8 + (x.to_f64() * std::f64::consts::LOG10_E).ceil() as u32);
    let x = x.with_precision(wp);
    let x2 = &x * &x;
    let tol = Real::pow10(-(wp.digits() as i32) - 4, wp);
    let mut power = Real::one(wp); // x^{2k} / (2k)!
    let mut sum = Real::zero(wp);
    let mut k: i64 = 0;
    loop {
        k += 1;
        power = -(&power * &x2 / ((2 * k - 1) * (2 * k)));
        let term = &power / (2 * k);
        sum = &sum + &term;
        if term.abs() < &tol * (&sum.abs() + Real::one(wp)) {
            break;
        }
    }
    Ok((gamma(wp) + x.ln()? + sum).with_precision(prec))
}

/// Residuals of the sine and cosine integral identities at `x`.
#[derive(Debug, Clone)]
pub struct Art18Check {
    pub x: Real,
    /// `|(Ei(ix) + Ei(−ix))/2 − Ci(x)|`.
    pub ci_residual: Real,
    /// `|(Ei(ix) − Ei(−ix))/(2i) − (Si(x) + π/2)|`.
    pub si_residual: Real,
    /// `|(Ei(ix) + Ei(−ix))/(2x) − Ci(x)|`, the form with the extra `x`.
    pub printed_ci_residual: Real,
    /// `|(Ei(ix) − Ei(−ix))/(2ix) − Si(x)|`, the form with the extra `x`.
    pub printed_si_residual: Real,
}

pub fn bessel_art18_check(x: &Real) -> Result<Art18Check> {
    if !x.is_positive() {
        return Err(Error::Domain("identity check requires x > 0".into()));
    }
    let prec = x.precision();
    let zero = Real::zero(prec);
    let plus = ei_complex(&Complex::new(zero.clone(), x.clone()))?;
    let minus = ei_complex(&Complex::new(zero, -x))?;
    let si = sine_integral(x);
    let ci = cosine_integral(x)?;
    let half_pi = Real::pi(prec) / 2i64;

    let cos_side = (&plus.re + &minus.re) / 2i64;
    let cos_side_im = (&plus.im + &minus.im) / 2i64;
    // (a − b)/(2i) = (Im(a − b) − i·Re(a − b))/2
    let sin_side = (&plus.im - &minus.im) / 2i64;
    let sin_side_im = -((&plus.re - &minus.re) / 2i64);

    let hypot = |a: Real, b: &Real| Complex::new(a, b.clone()).abs();
    Ok(Art18Check {
        x: x.clone(),
        ci_residual: hypot(&cos_side - &ci, &cos_side_im),
        si_residual: hypot(&sin_side - (&si + &half_pi), &sin_side_im),
        printed_ci_residual: hypot(&cos_side / x - &ci, &(&cos_side_im / x)),
        printed_si_residual: hypot(&sin_side / x - &si, &(&sin_side_im / x)),
    })
}

/// Counterclockwise square through `±1 ± i`, starting and ending at `1`.
pub fn unit_square_loop(prec: Precision) -> Polyline {
    Polyline::from_points(&[(1.0, 0.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (1.0, 0.0)], prec)
        .expect("square avoids the origin")
}

/// Two paths from a shared start to a shared end inside the half-plane
/// `Re(z·e^{−iφ}) ≥ 1/2`, so that together they enclose no pole.
pub fn random_homotopic_pair(rng: &mut impl Rng, prec: Precision) -> Result<(Polyline, Polyline)> {
    let phi = rng.gen_range(-PI..PI);
    let (c, s) = (phi.cos(), phi.sin());
    // sample a point in local coordinates (u ≥ 1/2) and rotate by φ
    let point = |rng: &mut dyn rand::RngCore| {
        let u = rng.gen_range(0.5..3.0);
        let v = rng.gen_range(-3.0..3.0);
        (u * c - v * s, u * s + v * c)
    };
    let start = point(rng);
    let end = point(rng);
    let path = |rng: &mut dyn rand::RngCore| {
        let inner = rng.gen_range(1..=3);
        let mut pts = vec![start];
        pts.extend((0..inner).map(|_| point(rng)));
        pts.push(end);
        Polyline::from_points(&pts, prec)
    };
    let a = path(rng)?;
    let b = path(rng)?;
    Ok((a, b))
}

/// Outcome of the three contour experiments.
#[derive(Debug, Clone)]
pub struct ContourReport {
    /// `|∫_A − ∫_B|` for each random homotopic pair.
    pub path_independence: Vec<f64>,
    /// `(k, |∫(loops^k · base) − ∫base − 2πik|)`.
    pub winding: Vec<(i64, f64)>,
    /// The upper minus lower path from 1 to −1, which should be `2πi`.
    pub upper_minus_lower: Complex,
    /// `(end, w, |∫ − (Ei(end) − Ei(1) + 2πi·w)|)`.
    pub fundamental: Vec<((f64, f64), i64, f64)>,
}

pub const DEFAULT_SEED: u64 = 1811;
pub const DEFAULT_PAIRS: usize = 20;

pub fn path_independence(pairs: usize, seed: u64, prec: Precision) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..pairs)
        .map(|_| {
            let (a, b) = random_homotopic_pair(&mut rng, prec)?;
            let d = contour_integral_exp_over_z(&a)? - contour_integral_exp_over_z(&b)?;
            Ok(d.abs().to_f64())
        })
        .collect()
}

pub fn winding_increments(ks: &[i64], prec: Precision) -> Result<Vec<(i64, f64)>> {
    let base = Polyline::from_points(&[(1.0, 0.0), (2.0, 1.0), (3.0, 4.0)], prec)?;
    let base_value = contour_integral_exp_over_z(&base)?;
    let two_pi = Real::pi(prec) * 2i64;
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let mut path = unit_square_loop(prec);
        for _ in 1..k {
            path = path.then(&unit_square_loop(prec))?;
        }
        let path = path.then(&base)?;
        debug_assert_eq!(path.winding(), k);
        let value = contour_integral_exp_over_z(&path)?;
        let expected = &base_value + Complex::new(Real::zero(prec), &two_pi * k);
        out.push((k, (value - expected).abs().to_f64()));
    }
    Ok(out)
}

/// `∫_1^z e^t/t dt` against `Ei(z) − Ei(1) + 2πi·w` along `path`.
pub fn fundamental_theorem_residual(path: &Polyline) -> Result<(i64, f64)> {
    let prec = path.start().precision();
    let w = path.winding();
    let value = contour_integral_exp_over_z(path)?;
    let two_pi_w = Real::pi(prec) * (2 * w);
    let expected = ei_complex(path.end())? - ei_complex(path.start())? + Complex::new(Real::zero(prec), two_pi_w);
    Ok((w, (value - expected).abs().to_f64()))
}

pub fn contour_report(prec: Precision) -> Result<ContourReport> {
    let upper = Polyline::from_points(&[(1.0, 0.0), (1.0, 2.0), (-1.0, 2.0), (-1.0, 0.0)], prec)?;
    let lower = Polyline::from_points(&[(1.0, 0.0), (1.0, -2.0), (-1.0, -2.0), (-1.0, 0.0)], prec)?;
    let upper_minus_lower = contour_integral_exp_over_z(&upper)? - contour_integral_exp_over_z(&lower)?;

    let paths: [&[(f64, f64)]; 4] = [
        &[(1.0, 0.0), (2.0, 1.0), (3.0, 4.0)],
        &[(1.0, 0.0), (0.5, 2.0), (-2.0, 1.0)],
        &[(1.0, 0.0), (1.0, 1.5), (-1.5, 1.5), (-1.5, -1.5), (0.5, -1.0)],
        &[(1.0, 0.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (1.0, 1.0), (1.0, -1.0), (-2.0, -0.5)],
    ];
    let mut fundamental = Vec::new();
    for pts in paths {
        let path = Polyline::from_points(pts, prec)?;
        let (w, r) = fundamental_theorem_residual(&path)?;
        fundamental.push((*pts.last().expect("non-empty"), w, r));
    }

    Ok(ContourReport {
        path_independence: path_independence(DEFAULT_PAIRS, DEFAULT_SEED, prec)?,
        winding: winding_increments(&[1, 2, 3], prec)?,
        upper_minus_lower,
        fundamental,
    })
}
