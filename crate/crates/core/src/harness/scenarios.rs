//! Named scenarios: each builds the maps of one convolution or convexity
//! theorem, checks its hypotheses, and records numerical evidence for its
//! conclusion.
//!
//! Certificate searches receive the `(μ, ν)` pair that the corresponding
//! proof exhibits as a hint, on top of the coarse sweep.

use super::result::{Relation, Role, ScenarioResult};
use super::HarnessError;
use crate::canonical::{
    aux_params, convex_combination, f_lambda_delta_member, f_lambda_delta_rhs, halfplane_member,
    right_halfplane_f0, slanted_halfplane_canonical, strip_member, FLambdaDeltaParams,
    SlantParams, StripParams,
};
use crate::geometry::{direction_certificate, local_univalence, DiskGrid, SearchOptions};
use crate::harmonic::{DilatationSpec, HarmonicMap, Sign};
use crate::schur_cohn::{
    count_zeros_in_disk, theorem43_condition_check, theorem43_condition_value, theorem43_cubic,
    Theorem43Case,
};
use crate::series::Series;
use crate::{cis, reduce_angle, Complex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_3, PI, TAU};
use std::time::Instant;

type Res<T> = Result<T, HarnessError>;

/// Shared numerical settings.
#[derive(Clone, Debug)]
pub struct Context {
    pub grid: DiskGrid,
    pub order: usize,
    pub search: SearchOptions,
}

impl Context {
    pub fn new(grid: DiskGrid, order: Option<usize>) -> Self {
        let order = order.unwrap_or_else(|| grid.recommended_order());
        Context {
            grid,
            order,
            search: SearchOptions::default(),
        }
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::new(DiskGrid::default(), None)
    }
}

/// Command-line overrides; `None` keeps the scenario default.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub a: Option<Complex>,
    pub gamma: Option<f64>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    pub n: Option<u32>,
    pub order: Option<usize>,
    pub grid: Option<DiskGrid>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub overrides: &'static str,
}

pub fn registry() -> Vec<ScenarioInfo> {
    vec![
        ScenarioInfo {
            id: "th2.1",
            summary: "half-plane member * strip member is convex in direction -(γ+γ_a+γ_b)",
            overrides: "--a, --gamma (half-plane), --beta (strip), --theta (strip dilatation angle)",
        },
        ScenarioInfo {
            id: "th2.2",
            summary: "two half-plane members: convolution convex in direction -(γ1+γ2+γ_a1+γ_a2)",
            overrides: "--a, --gamma (first map), --theta (second dilatation angle)",
        },
        ScenarioInfo {
            id: "th3.2",
            summary: "a locally univalent member of F^a_{λ,δ} is convex (8 directions)",
            overrides: "--a, --beta (arg λ), --gamma (arg δ), --theta (dilatation angle)",
        },
        ScenarioInfo {
            id: "th3.4",
            summary: "convex combinations of F^a_{λ,δ} members are convex (8 directions)",
            overrides: "--a, --beta (arg λ), --gamma (arg δ), --n (members), --seed",
        },
        ScenarioInfo {
            id: "th4.1",
            summary: "probe: f0 * half-plane member with Möbius dilatation (real a)",
            overrides: "--a (real), --gamma, --theta",
        },
        ScenarioInfo {
            id: "th4.2",
            summary: "canonical slant * member with dilatation e^{iθ}z^n, half-plane and strip cases",
            overrides: "--a, --gamma, --beta, --theta, --n",
        },
        ScenarioInfo {
            id: "th4.3-case1",
            summary: "canonical slant * half-plane member, cos(θ-γ2-γ_a2) = -1, cubic zero count",
            overrides: "--a (first map), --gamma (first map)",
        },
        ScenarioInfo {
            id: "th4.3-case2",
            summary: "canonical slant * half-plane member, cos(θ-γ2-γ_a2) = +1, cubic zero count",
            overrides: "--a (first map), --gamma (first map)",
        },
    ]
}

pub fn run_scenario(id: &str, ov: &Overrides) -> Res<ScenarioResult> {
    let ctx = Context::new(ov.grid.clone().unwrap_or_default(), ov.order);
    match id {
        "th2.1" => {
            let mut p = Th21Params::default();
            if let Some(a) = ov.a {
                p.a = a;
            }
            if let Some(g) = ov.gamma {
                p.gamma = g;
            }
            if let Some(b) = ov.beta {
                p.beta = b;
            }
            p.omega1 = canonical_like(p.a, p.gamma, 0.0, Sign::Minus)?;
            let inner = ov.theta.unwrap_or(0.7);
            p.omega2 = strip_like(p.b, inner, Sign::Plus)?;
            theorem_2_1(&p, &ctx)
        }
        "th2.2" => {
            let mut p = Th22Params::default();
            if let Some(a) = ov.a {
                p.a1 = a;
            }
            if let Some(g) = ov.gamma {
                p.gamma1 = g;
            }
            p.omega1 = canonical_like(p.a1, p.gamma1, 0.0, Sign::Minus)?;
            let inner = ov.theta.unwrap_or(0.9);
            p.omega2 = halfplane_like(p.a2, p.gamma2, inner, Sign::Plus)?;
            theorem_2_2(&p, &ctx)
        }
        "th3.2" => {
            let mut p = Th32Params::default();
            if let Some(a) = ov.a {
                p.a = a;
            }
            if let Some(b) = ov.beta {
                p.lambda_angle = b;
            }
            if let Some(g) = ov.gamma {
                p.delta_angle = g;
            }
            p.omega = flambda_like(p.a, p.delta_angle, ov.theta.unwrap_or(0.4), Sign::Plus)?;
            theorem_3_2(&p, &ctx)
        }
        "th3.4" => {
            let mut rng = ChaCha8Rng::seed_from_u64(ov.seed);
            let n = ov.n.unwrap_or(3).max(1) as usize;
            let base = Th32Params::default();
            let a = ov.a.unwrap_or(base.a);
            let lambda_angle = ov.beta.unwrap_or(base.lambda_angle);
            let delta_angle = ov.gamma.unwrap_or(base.delta_angle);
            let p = Th34Params::random_members(a, lambda_angle, delta_angle, n, &mut rng)?;
            theorem_3_4(&p, &ctx)
        }
        "th4.1" => {
            let mut p = Th41Params::default();
            if let Some(a) = ov.a {
                if a.im != 0.0 {
                    return Err(HarnessError::Schema(
                        "a: th4.1 needs a real parameter".into(),
                    ));
                }
                p.a = a.re;
            }
            if let Some(g) = ov.gamma {
                p.gamma = g;
            }
            if let Some(t) = ov.theta {
                p.theta = t;
            }
            theorem_4_1(&p, &ctx)
        }
        "th4.2" => {
            let mut p = Th42Params::default();
            if let Some(a) = ov.a {
                p.a1 = a;
            }
            if let Some(g) = ov.gamma {
                p.gamma1 = g;
            }
            if let Some(b) = ov.beta {
                p.beta = b;
            }
            if let Some(t) = ov.theta {
                p.theta = t;
            }
            if let Some(n) = ov.n {
                p.n = n;
            }
            theorem_4_2(&p, &ctx)
        }
        "th4.3-case1" | "th4.3-case2" => {
            let case = if id.ends_with('1') {
                Theorem43Case::MinusOne
            } else {
                Theorem43Case::PlusOne
            };
            let mut p = Th43Params::default_for(case);
            if let Some(a) = ov.a {
                p.a1 = a;
            }
            if let Some(g) = ov.gamma {
                p.gamma1 = g;
            }
            theorem_4_3(&p, &ctx)
        }
        other => Err(HarnessError::UnknownScenario(other.to_string())),
    }
}

fn construct(label: &str, e: crate::Error) -> HarnessError {
    HarnessError::Construct {
        context: label.to_string(),
        source: e,
    }
}

/// Dilatation `e^{2iT}(a' + s z e^{iφ})/(1 + s a' z e^{iφ})` with
/// `T = γ + γ_a`, admissible for `S(H^a_γ)`. With `φ = T` and `s = −1`
/// this is the canonical dilatation.
pub fn halfplane_like(a: Complex, gamma: f64, inner: f64, sign: Sign) -> Res<DilatationSpec> {
    let (ap, ga) = aux_params(a).map_err(|e| construct("a", e))?;
    DilatationSpec::moebius(2.0 * (gamma + ga), ap, inner, sign).map_err(|e| construct("dilatation", e))
}

/// [`halfplane_like`] with the inner angle offset from `γ + γ_a`.
pub fn canonical_like(a: Complex, gamma: f64, offset: f64, sign: Sign) -> Res<DilatationSpec> {
    let (_, ga) = aux_params(a).map_err(|e| construct("a", e))?;
    halfplane_like(a, gamma, gamma + ga + offset, sign)
}

/// Admissible dilatation for `S(Ω^b_β)`.
pub fn strip_like(b: Complex, inner: f64, sign: Sign) -> Res<DilatationSpec> {
    let (bp, gb) = aux_params(b).map_err(|e| construct("b", e))?;
    DilatationSpec::moebius(2.0 * gb, bp, inner, sign).map_err(|e| construct("dilatation", e))
}

/// Admissible dilatation for `F^a_{λ,δ}` (depends on `δ` only).
pub fn flambda_like(a: Complex, delta_angle: f64, inner: f64, sign: Sign) -> Res<DilatationSpec> {
    let (ap, ga) = aux_params(a).map_err(|e| construct("a", e))?;
    DilatationSpec::moebius(2.0 * (delta_angle + ga), ap, inner, sign)
        .map_err(|e| construct("dilatation", e))
}

fn random_disk(rng: &mut impl Rng, radius: f64) -> Complex {
    Complex::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn inputs<T: Serialize>(p: &T) -> serde_json::Value {
    serde_json::to_value(p).expect("scenario parameters serialize")
}

fn certify(
    res: &mut ScenarioResult,
    label: &str,
    f: &HarmonicMap,
    alpha: f64,
    hint: (f64, f64),
    ctx: &Context,
) -> Res<()> {
    let mut opts = ctx.search.clone();
    opts.hints.push((reduce_angle(hint.0), hint.1.clamp(0.0, PI)));
    let cert = direction_certificate(f, alpha, &ctx.grid, &opts)?;
    res.add_certificate(label, Role::Conclusion, alpha, cert);
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Th21Params {
    #[serde(with = "crate::json::complex")]
    pub a: Complex,
    pub gamma: f64,
    pub omega1: DilatationSpec,
    #[serde(with = "crate::json::complex")]
    pub b: Complex,
    pub beta: f64,
    pub omega2: DilatationSpec,
}

impl Default for Th21Params {
    fn default() -> Self {
        let a = Complex::new(0.3, 0.2);
        let b = Complex::new(-0.2, 0.3);
        Th21Params {
            a,
            gamma: 0.5,
            omega1: canonical_like(a, 0.5, 0.0, Sign::Minus).expect("valid default"),
            b,
            beta: FRAC_PI_3,
            omega2: strip_like(b, 0.7, Sign::Plus).expect("valid default"),
        }
    }
}

impl Th21Params {
    pub fn random(rng: &mut impl Rng) -> Self {
        let a = random_disk(rng, 0.6);
        let gamma = rng.gen_range(0.0..TAU);
        let b = random_disk(rng, 0.6);
        let beta = rng.gen_range(0.2..PI - 0.2);
        let (o1, s1) = (rng.gen_range(0.0..TAU), random_sign(rng));
        let (o2, s2) = (rng.gen_range(0.0..TAU), random_sign(rng));
        Th21Params {
            a,
            gamma,
            omega1: halfplane_like(a, gamma, o1, s1).expect("disk sample"),
            b,
            beta,
            omega2: strip_like(b, o2, s2).expect("disk sample"),
        }
    }
}

/// Half-plane member convolved with a strip member.
pub fn theorem_2_1(p: &Th21Params, ctx: &Context) -> Res<ScenarioResult> {
    let started = Instant::now();
    let mut res = ScenarioResult::new("th2.1", inputs(p));
    let sp = SlantParams::new(p.a, p.gamma).map_err(|e| construct("half-plane", e))?;
    let st = StripParams::new(p.b, p.beta).map_err(|e| construct("strip", e))?;
    let f1 = halfplane_member(&sp, &p.omega1, ctx.order).map_err(|e| construct("f1", e))?;
    let f2 = strip_member(&st, &p.omega2, ctx.order).map_err(|e| construct("f2", e))?;
    let f = f1.convolve(&f2);
    if res.add_univalence("f1*f2", Role::Precondition, local_univalence(&f, &ctx.grid)) {
        let big_gamma = p.gamma + sp.gamma_a + st.gamma_b;
        certify(
            &mut res,
            "f1*f2",
            &f,
            -big_gamma,
            (TAU - big_gamma, PI - p.beta),
            ctx,
        )?;
    }
    res.finalize(started);
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Th22Params {
    #[serde(with = "crate::json::complex")]
    pub a1: Complex,
    pub gamma1: f64,
    pub omega1: DilatationSpec,
    #[serde(with = "crate::json::complex")]
    pub a2: Complex,
    pub gamma2: f64,
    pub omega2: DilatationSpec,
}

impl Default for Th22Params {
    fn default() -> Self {
        let a1 = Complex::new(0.3, 0.2);
        let a2 = Complex::new(0.1, -0.4);
        Th22Params {
            a1,
            gamma1: 0.5,
            omega1: canonical_like(a1, 0.5, 0.0, Sign::Minus).expect("valid default"),
            a2,
            gamma2: 1.2,
            omega2: halfplane_like(a2, 1.2, 0.9, Sign::Plus).expect("valid default"),
        }
    }
}

impl Th22Params {
    pub fn random(rng: &mut impl Rng) -> Self {
        let a1 = random_disk(rng, 0.6);
        let a2 = random_disk(rng, 0.6);
        let gamma1 = rng.gen_range(0.0..TAU);
        let gamma2 = rng.gen_range(0.0..TAU);
        let (o1, s1) = (rng.gen_range(0.0..TAU), random_sign(rng));
        let (o2, s2) = (rng.gen_range(0.0..TAU), random_sign(rng));
        Th22Params {
            a1,
            gamma1,
            omega1: halfplane_like(a1, gamma1, o1, s1).expect("disk sample"),
            a2,
            gamma2,
            omega2: halfplane_like(a2, gamma2, o2, s2).expect("disk sample"),
        }
    }
}

/// Two slanted half-plane members.
pub fn theorem_2_2(p: &Th22Params, ctx: &Context) -> Res<ScenarioResult> {
    let started = Instant::now();
    let mut res = ScenarioResult::new("th2.2", inputs(p));
    let p1 = SlantParams::new(p.a1, p.gamma1).map_err(|e| construct("f1", e))?;
    let p2 = SlantParams::new(p.a2, p.gamma2).map_err(|e| construct("f2", e))?;
    let f1 = halfplane_member(&p1, &p.omega1, ctx.order).map_err(|e| construct("f1", e))?;
    let f2 = halfplane_member(&p2, &p.omega2, ctx.order).map_err(|e| construct("f2", e))?;
    let f = f1.convolve(&f2);
    if res.add_univalence("f1*f2", Role::Precondition, local_univalence(&f, &ctx.grid)) {
        let big_gamma = p1.total_angle() + p2.total_angle();
        certify(&mut res, "f1*f2", &f, -big_gamma, (-big_gamma, 0.0), ctx)?;
    }
    res.finalize(started);
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Th32Params {
    #[serde(with = "crate::json::complex")]
    pub a: Complex,
    pub lambda_angle: f64,
    pub delta_angle: f64,
    pub omega: DilatationSpec,
}

impl Default for Th32Params {
    fn default() -> Self {
        let a = Complex::new(0.2, -0.3);
        Th32Params {
            a,
            lambda_angle: 2.0,
            delta_angle: 0.6,
            omega: flambda_like(a, 0.6, 0.4, Sign::Plus).expect("valid default"),
        }
    }
}

impl Th32Params {
    pub fn random(rng: &mut impl Rng) -> Self {
        let a = random_disk(rng, 0.6);
        let lambda_angle = rng.gen_range(0.0..TAU);
        let delta_angle = rng.gen_range(0.0..TAU);
        let (o, s) = (rng.gen_range(0.0..TAU), random_sign(rng));
        Th32Params {
            a,
            lambda_angle,
            delta_angle,
            omega: flambda_like(a, delta_angle, o, s).expect("disk sample"),
        }
    }
}

/// The eight directions `kπ/8` of a convexity sweep.
pub fn sweep_directions() -> Vec<f64> {
    (0..8).map(|k| PI * k as f64 / 8.0).collect()
}

/// Pair proving convexity of `F ∈ F^a_{λ,δ}` in direction `α`: in the
/// frame rotated by `σ₀ = arg(conj(δ)e^{−iγ_a})` it is `(0, π − α_λ)` or
/// `(π, α_λ)` with `cos α_λ = Re λ`, depending on the sign of `cos(α − σ₀)`.
pub fn flambda_hint(lambda_angle: f64, delta_angle: f64, gamma_a: f64, alpha: f64) -> (f64, f64) {
    let sigma0 = -delta_angle - gamma_a;
    let theta = sigma0 - alpha;
    let alpha_lambda = lambda_angle.cos().clamp(-1.0, 1.0).acos();
    let (m, n) = if theta.cos() >= 0.0 {
        (0.0, PI - alpha_lambda)
    } else {
        (PI, alpha_lambda)
    };
    (reduce_angle(m + sigma0), n)
}

fn direction_sweep(
    res: &mut ScenarioResult,
    f: &HarmonicMap,
    lambda_angle: f64,
    delta_angle: f64,
    gamma_a: f64,
    ctx: &Context,
) -> Res<()> {
    for alpha in sweep_directions() {
        let hint = flambda_hint(lambda_angle, delta_angle, gamma_a, alpha);
        certify(res, &format!("direction {alpha:.6}"), f, alpha, hint, ctx)?;
    }
    Ok(())
}

/// One member of `F^a_{λ,δ}`.
pub fn theorem_3_2(p: &Th32Params, ctx: &Context) -> Res<ScenarioResult> {
    let started = Instant::now();
    let mut res = ScenarioResult::new("th3.2", inputs(p));
    let fp = FLambdaDeltaParams::from_angles(p.a, p.lambda_angle, p.delta_angle)
        .map_err(|e| construct("parameters", e))?;
    let f = f_lambda_delta_member(&fp, &p.omega, ctx.order).map_err(|e| construct("F", e))?;
    if res.add_univalence("F", Role::Precondition, local_univalence(&f, &ctx.grid)) {
        direction_sweep(&mut res, &f, p.lambda_angle, p.delta_angle, fp.gamma_a, ctx)?;
    }
    res.finalize(started);
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Th34Params {
    #[serde(with = "crate::json::complex")]
    pub a: Complex,
    pub lambda_angle: f64,
    pub delta_angle: f64,
    pub omegas: Vec<DilatationSpec>,
    pub weights: Vec<f64>,
}

impl Th34Params {
    /// `n` members with random admissible dilatations and random weights.
    pub fn random_members(
        a: Complex,
        lambda_angle: f64,
        delta_angle: f64,
        n: usize,
        rng: &mut impl Rng,
    ) -> Res<Self> {
        let omegas = (0..n)
            .map(|_| {
                let (o, s) = (rng.gen_range(0.0..TAU), random_sign(rng));
                flambda_like(a, delta_angle, o, s)
            })
            .collect::<Res<Vec<_>>>()?;
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
        // absorb rounding so the weights sum to one
        let drift = 1.0 - weights.iter().sum::<f64>();
        weights[0] += drift;
        Ok(Th34Params {
            a,
            lambda_angle,
            delta_angle,
            omegas,
            weights,
        })
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let a = random_disk(rng, 0.6);
        let lambda_angle = rng.gen_range(0.0..TAU);
        let delta_angle = rng.gen_range(0.0..TAU);
        Th34Params::random_members(a, lambda_angle, delta_angle, n, rng).expect("disk sample")
    }
}

/// Largest coefficient error of `H' + conj(δ²)e^{−2iγ_a}G'` against the
/// defining right side.
pub fn flambda_relation_residual(f: &HarmonicMap, p: &FLambdaDeltaParams) -> f64 {
    let hp = f.h().differentiate();
    let gp = f.g().differentiate();
    let lhs = Series::linear_combine(Complex::new(1.0, 0.0), &hp, p.relation_weight(), &gp);
    lhs.max_abs_diff(&f_lambda_delta_rhs(p, lhs.order()))
}

/// Convex combination of members of one `F^a_{λ,δ}`.
pub fn theorem_3_4(p: &Th34Params, ctx: &Context) -> Res<ScenarioResult> {
    let started = Instant::now();
    let mut res = ScenarioResult::new("th3.4", inputs(p));
    let fp = FLambdaDeltaParams::from_angles(p.a, p.lambda_angle, p.delta_angle)
        .map_err(|e| construct("parameters", e))?;
    let members = p
        .omegas
        .iter()
        .map(|w| f_lambda_delta_member(&fp, w, ctx.order))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| construct("member", e))?;
    let f = convex_combination(&members, &p.weights).map_err(|e| construct("combination", e))?;
    res.add_scalar(
        "defining relation residual",
        Role::Conclusion,
        flambda_relation_residual(&f, &fp),
        Relation::Le,
        1e-10,
    );
    if res.add_univalence("combination", Role::Conclusion, local_univalence(&f, &ctx.grid)) {
        direction_sweep(&mut res, &f, p.lambda_angle, p.delta_angle, fp.gamma_a, ctx)?;
    } else {
        res.notes
            .push("combination not locally univalent; direction sweep not attempted".into());
    }
    res.finalize(started);
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Th41Params {
    pub a: f64,
    pub gamma: f64,
    pub theta: f64,
}

impl Default for Th41Params {
    fn default() -> Self {
        Th41Params {
            a: 0.5,
            gamma: 0.0,
            theta: PI,
        }
    }
}

/// Probe of the earlier result on `f₀ * f` with
/// `ω_f = e^{2iγ}(z e^{iθ} + a)/(1 + a z e^{iθ})`: records the hypothesis
/// margin, univalence of the convolution, and a certificate in direction
/// `−γ`. The sharpness of the hypotheses is not examined.
pub fn theorem_4_1(p: &Th41Params, ctx: &Context) -> Res<ScenarioResult> {
    let started = Instant::now();
    let mut res = ScenarioResult::new("th4.1", inputs(p));
    res.notes.push("probe only: hypotheses come from earlier work".into());
    let c = (p.theta - p.gamma).cos();
    if (c + 1.0).abs() <= 1e-12 {
        res.add_scalar("a + 1/3", Role::Precondition, p.a + 1.0 / 3.0, Relation::Ge, 0.0);
    } else {
        res.add_scalar(
            "1/(5 − 4cos(θ−γ)) − a²",
            Role::Precondition,
            1.0 / (5.0 - 4.0 * c) - p.a * p.a,
            Relation::Gt,
            0.0,
        );
    }
    let sp = SlantParams::new(Complex::new(p.a, 0.0), p.gamma).map_err(|e| construct("f", e))?;
    let w = DilatationSpec::moebius(2.0 * p.gamma, p.a, p.theta, Sign::Plus)
        .map_err(|e| construct("dilatation", e))?;
    let f = halfplane_member(&sp, &w, ctx.order).map_err(|e| construct("f", e))?;
    let conv = right_halfplane_f0(ctx.order).convolve(&f);
    if res.add_univalence("f0*f", Role::Conclusion, local_univalence(&conv, &ctx.grid)) {
        certify(&mut res, "f0*f", &conv, -p.gamma, (-p.gamma, 0.0), ctx)?;
    }
    res.finalize(started);
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Th42Params {
    #[serde(with = "crate::json::complex")]
    pub a1: Complex,
    pub gamma1: f64,
    pub gamma2: f64,
    pub beta: f64,
    pub theta: f64,
    pub n: u32,
}

impl Default for Th42Params {
    fn default() -> Self {
        Th42Params {
            a1: Complex::new(0.0, 0.0),
            gamma1: 0.25,
            gamma2: 0.5,
            beta: FRAC_PI_3,
            theta: 0.7,
            n: 1,
        }
    }
}

/// Canonical slant `f^{a₁}_{γ₁}` convolved with a half-plane member
/// (case 1) and with a strip member (case 2), both with dilatation
/// `e^{iθ}zⁿ`.
pub fn theorem_4_2(p: &Th42Params, ctx: &Context) -> Res<ScenarioResult> {
    let started = Instant::now();
    let mut res = ScenarioResult::new("th4.2", inputs(p));
    let m = (p.a1 + 1.0).norm();
    let nf = p.n as f64;
    res.add_scalar("|a1 + 1| − 2n/(n+2)", Role::Precondition, m - 2.0 * nf / (nf + 2.0), Relation::Ge, 0.0);
    res.add_scalar("|a1 + 1|", Role::Precondition, m, Relation::Lt, 2.0);

    let p1 = SlantParams::new(p.a1, p.gamma1).map_err(|e| construct("f1", e))?;
    let f1 = slanted_halfplane_canonical(&p1, ctx.order);
    let w = DilatationSpec::monomial(p.theta, p.n).map_err(|e| construct("dilatation", e))?;

    let p2 = SlantParams::new(Complex::new(0.0, 0.0), p.gamma2).map_err(|e| construct("f2", e))?;
    let f2 = halfplane_member(&p2, &w, ctx.order).map_err(|e| construct("f2 (half-plane)", e))?;
    let c1 = f1.convolve(&f2);
    if res.add_univalence("case 1: f1*f2", Role::Conclusion, local_univalence(&c1, &ctx.grid)) {
        let g = p1.total_angle() + p.gamma2;
        certify(&mut res, "case 1: f1*f2", &c1, -g, (-g, 0.0), ctx)?;
    }

    let st = StripParams::new(Complex::new(0.0, 0.0), p.beta).map_err(|e| construct("f2", e))?;
    let f3 = strip_member(&st, &w, ctx.order).map_err(|e| construct("f2 (strip)", e))?;
    let c2 = f1.convolve(&f3);
    if res.add_univalence("case 2: f1*f2", Role::Conclusion, local_univalence(&c2, &ctx.grid)) {
        let g = p1.total_angle();
        certify(&mut res, "case 2: f1*f2", &c2, -g, (TAU - g, PI - p.beta), ctx)?;
    }
    res.finalize(started);
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Th43Params {
    #[serde(with = "crate::json::complex")]
    pub a1: Complex,
    pub gamma1: f64,
    #[serde(with = "crate::json::complex")]
    pub a2: Complex,
    pub gamma2: f64,
    pub case: Theorem43Case,
}

impl Th43Params {
    pub fn default_for(case: Theorem43Case) -> Self {
        Th43Params {
            a1: Complex::new(0.5, 0.0),
            gamma1: 0.0,
            a2: Complex::new(0.2, 0.0),
            gamma2: 0.0,
            case,
        }
    }
}

/// Bound on `|ω̃|` away from the circle used when checking the cubic quotient.
pub const DILATATION_MARGIN: f64 = 1e-9;

/// Canonical slant convolved with a half-plane member whose dilatation
/// makes the convolution's dilatation `−e^{2iφ}t/t*` for a cubic `t`.
pub fn theorem_4_3(p: &Th43Params, ctx: &Context) -> Res<ScenarioResult> {
    let started = Instant::now();
    let id = match p.case {
        Theorem43Case::MinusOne => "th4.3-case1",
        Theorem43Case::PlusOne => "th4.3-case2",
    };
    let mut res = ScenarioResult::new(id, inputs(p));
    let p1 = SlantParams::new(p.a1, p.gamma1).map_err(|e| construct("f1", e))?;
    let p2 = SlantParams::new(p.a2, p.gamma2).map_err(|e| construct("f2", e))?;
    let (a1p, a2p) = (p1.a_prime, p2.a_prime);
    let cond = theorem43_condition_value(a1p, a2p, p.case);
    let rel = match p.case {
        Theorem43Case::MinusOne => Relation::Ge,
        Theorem43Case::PlusOne => Relation::Gt,
    };
    res.add_scalar("case condition", Role::Precondition, cond, rel, 0.0);
    debug_assert_eq!(rel.holds(cond, 0.0), theorem43_condition_check(a1p, a2p, p.case));

    let cubic = theorem43_cubic(a1p, a2p, p.case).map_err(|e| construct("cubic", e))?;
    let t = cubic.polynomial();
    res.add_zero_count("t", Role::Conclusion, count_zeros_in_disk(&t));
    if p.case == Theorem43Case::MinusOne {
        res.add_scalar("|t(1)|", Role::Conclusion, t.evaluate(Complex::new(1.0, 0.0)).norm(), Relation::Le, 1e-12);
    }
    let max_w = ctx
        .grid
        .sample(|z| cubic.dilatation_at(z).norm())
        .into_iter()
        .fold(0.0, f64::max);
    res.add_scalar("max |−e^{2iφ}t/t*| on grid", Role::Conclusion, max_w, Relation::Le, 1.0 - DILATATION_MARGIN);

    let phi = p.case.phase();
    let theta = phi + p2.total_angle();
    let w2 = DilatationSpec::moebius(2.0 * p2.total_angle(), a2p, theta, Sign::Plus)
        .map_err(|e| construct("dilatation", e))?;
    let f1 = slanted_halfplane_canonical(&p1, ctx.order);
    let f2 = halfplane_member(&p2, &w2, ctx.order).map_err(|e| construct("f2", e))?;

    // the cubic describes the convolution of the rotated maps
    let r1 = f1.rotate(cis(-p1.total_angle())).map_err(|e| construct("rotation", e))?;
    let r2 = f2.rotate(cis(-p2.total_angle())).map_err(|e| construct("rotation", e))?;
    let rc = r1.convolve(&r2);
    let inner = ctx.grid.clipped(0.9).map_err(|e| construct("grid", e))?;
    let diff = inner
        .sample(|z| {
            let w = rc.g().horner_derivative(z) / rc.h().horner_derivative(z);
            (w - cubic.dilatation_at(z)).norm()
        })
        .into_iter()
        .fold(0.0, f64::max);
    res.add_scalar("cubic quotient vs convolution dilatation", Role::Conclusion, diff, Relation::Le, 1e-8);

    let f = f1.convolve(&f2);
    if res.add_univalence("f1*f2", Role::Conclusion, local_univalence(&f, &ctx.grid)) {
        let g = p1.total_angle() + p2.total_angle();
        certify(&mut res, "f1*f2", &f, -g, (-g, 0.0), ctx)?;
    }
    res.finalize(started);
    Ok(res)
}
