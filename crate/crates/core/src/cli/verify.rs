//! Every oracle pairing as a named check with a tolerance.
//!
//! Closed forms that assume the paper-consistent decoherence rate are
//! reported as `known-discrepancy` instead of `fail` when the literal rate is
//! selected; the numerical routes must still agree among themselves.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::brachistochrone::{l_hs_at_c1, milburn_residual, optimal_state, t_min, v_hs_max};
use crate::dynamics::{
    block_eigensystem, evolved_state_closed_form, make_trajectory, printed_block_eigenvalues,
    propagate_analytic, DensityMatrix, Method, Trajectory,
};
use crate::entanglement::{concurrence_closed_form, concurrence_wootters};
use crate::error::Result;
use crate::geometry::{
    bures_distance_normalized, bures_speed, fidelity_of_separability, geometry_sample,
    hs_rate_closed_form, hs_rate_numeric, hs_speed, separable_fidelity_search,
};
use crate::linalg::{eig_hermitian, HermitianEig};
use crate::model::{t_of_eta, ModelParams, RateConvention};
use crate::phase::{
    eigen_branches_from_eigs, paper_closed_form_phase, phase_distance, pure_state_phase_oracle,
    tong_phase, PhaseSeries, DEFAULT_EPS_P,
};

use super::csv::format_g;

/// Check names with their default tolerances.
pub const CHECKS: &[(&str, f64)] = &[
    ("route-closed", 1e-12),
    ("route-rk4", 1e-8),
    ("concurrence-closed-form", 1e-10),
    ("concurrence-peaks", 1e-10),
    ("hs-rate-numeric", 1e-5),
    ("hs-speed-identity", 1e-12),
    ("hs-speed-derivative", 1e-8),
    ("bures-endpoints", 1e-12),
    ("bures-monotone", 0.0),
    ("bures-speed-identity", 1e-15),
    ("separable-bound", 1e-6),
    ("separable-reach", 0.01),
    ("brachistochrone-tmin", 1e-15),
    ("brachistochrone-identity", 1e-12),
    ("milburn-residual", 1e-6),
    ("optimal-state-printed", 1e-12),
    ("optimal-state-swapped-diagonal", 1e-12),
    ("phase-gauge", 1e-9),
    ("phase-convergence", 1e-6),
    ("phase-pure-oracle", 1e-6),
    ("phase-bargmann", 1e-8),
    ("field-invariance", 1e-9),
    ("eigenvalues-printed", 1e-6),
    ("phase-closed-form-printed", 1e-6),
];

pub fn default_tolerance(name: &str) -> Option<f64> {
    CHECKS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    KnownDiscrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::KnownDiscrepancy => "known-discrepancy",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub exit_ok: bool,
}

impl VerificationReport {
    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<18} {:<31} measured={:<20} expected={:<20} tol={:<8} {}\n",
                c.status.to_string(),
                c.name,
                format_g(c.measured),
                format_g(c.expected),
                format!("{:.0e}", c.tolerance),
                c.detail
            ));
        }
        out.push_str(&format!(
            "verify: {} checks, {} pass, {} known-discrepancy, {} fail\n",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::KnownDiscrepancy),
            self.count(Status::Fail)
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub convention: RateConvention,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    /// States sampled per α for the separable-search checks.
    pub separable_states: usize,
    pub separable_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            convention: RateConvention::PaperConsistent,
            seed: super::config::DEFAULT_SEED,
            tolerances: BTreeMap::new(),
            separable_states: 13,
            separable_samples: 2000,
        }
    }
}

struct Ctx<'a> {
    opts: &'a VerifyOptions,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn literal(&self) -> bool {
        self.opts.convention == RateConvention::LiteralEq6
    }

    fn tol(&self, name: &str) -> f64 {
        self.opts
            .tolerances
            .get(name)
            .copied()
            .or_else(|| default_tolerance(name))
            .expect("registered check")
    }

    fn push(
        &mut self,
        name: &str,
        status: Status,
        measured: f64,
        expected: f64,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            name: name.into(),
            status,
            measured,
            expected,
            tolerance: self.tol(name),
            detail: detail.into(),
        });
    }

    /// `measured ≤ tol`.
    fn bound(&mut self, name: &str, measured: f64, detail: impl Into<String>) {
        let ok = measured <= self.tol(name);
        self.push(
            name,
            if ok { Status::Pass } else { Status::Fail },
            measured,
            0.0,
            detail,
        );
    }

    /// A closed form against a numerical route: a mismatch is expected under
    /// the literal rate.
    fn closed_form_bound(&mut self, name: &str, measured: f64, detail: &str) {
        let ok = measured <= self.tol(name);
        let status = match (ok, self.literal()) {
            (true, _) => Status::Pass,
            (false, true) => Status::KnownDiscrepancy,
            (false, false) => Status::Fail,
        };
        let detail = if !ok && self.literal() {
            format!("{detail}; closed form assumes the paper-consistent rate")
        } else {
            detail.to_string()
        };
        self.push(name, status, measured, 0.0, detail);
    }

    fn probe(&mut self, name: &str, measured: f64, printed: f64, detail: &str) {
        let status = if (measured - printed).abs() <= self.tol(name) {
            Status::Pass
        } else {
            Status::KnownDiscrepancy
        };
        self.push(name, status, measured, printed, detail);
    }

    /// Checks that need α = 0, where the literal rate is undefined.
    fn needs_unitary(&mut self, name: &str) -> bool {
        if self.literal() {
            self.push(
                name,
                Status::KnownDiscrepancy,
                f64::NAN,
                0.0,
                "alpha = 0 has no literal decoherence rate",
            );
            return false;
        }
        true
    }
}

fn params(opts: &VerifyOptions, j: f64, gamma: f64, b: f64, alpha: f64) -> ModelParams {
    ModelParams::new(j, gamma, b, alpha)
        .expect("valid check parameters")
        .with_convention(opts.convention)
}

fn max_state_diff(a: &Trajectory, b: &Trajectory) -> f64 {
    a.states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| x.mat().max_abs_diff(y.mat()))
        .fold(0.0, f64::max)
}

fn near_kink(eta: f64) -> bool {
    let r = eta / FRAC_PI_2;
    (r - r.round()).abs() * FRAC_PI_2 < 1e-4
}

fn route_checks(ctx: &mut Ctx) -> Result<()> {
    let alphas: &[f64] = if ctx.literal() {
        &[0.01, 0.1]
    } else {
        &[0.0, 0.01, 0.1]
    };
    let mut closed = 0.0f64;
    let mut rk4 = 0.0f64;
    let mut conc = 0.0f64;
    for &a in alphas {
        let p = params(ctx.opts, 0.3, 1.0, 0.5, a);
        let an = make_trajectory(&p, 2.0 * PI, 2001, Method::Analytic)?;
        let cf = make_trajectory(&p, 2.0 * PI, 2001, Method::ClosedForm)?;
        let rk = make_trajectory(&p, 2.0 * PI, 2001, Method::Rk4)?;
        closed = closed.max(max_state_diff(&an, &cf));
        rk4 = rk4.max(max_state_diff(&an, &rk));
        let errs: Vec<f64> = an
            .etas
            .par_iter()
            .zip(&an.states)
            .map(|(&e, d)| {
                Ok((concurrence_wootters(d)?.value - concurrence_closed_form(&p, e)).abs())
            })
            .collect::<Result<_>>()?;
        conc = errs.into_iter().fold(conc, f64::max);
    }
    let grid = format!("J=0.3 alpha in {alphas:?}, eta in [0, 2pi], 2001 points");
    ctx.closed_form_bound("route-closed", closed, &grid);
    ctx.bound("route-rk4", rk4, grid.clone());
    ctx.closed_form_bound("concurrence-closed-form", conc, &grid);

    if ctx.needs_unitary("concurrence-peaks") {
        let p = params(ctx.opts, 0.3, 1.0, 0.5, 0.0);
        let mut err = 0.0f64;
        for k in 0..4 {
            let eta = FRAC_PI_4 + k as f64 * FRAC_PI_2;
            let d = propagate_analytic(&p, &DensityMatrix::initial(), t_of_eta(&p, eta)?)?;
            err = err.max((concurrence_wootters(&d)?.value - 1.0).abs());
        }
        ctx.bound("concurrence-peaks", err, "alpha=0, eta=pi/4+k pi/2");
    }
    Ok(())
}

fn hs_checks(ctx: &mut Ctx) -> Result<()> {
    let mut rel = 0.0f64;
    for &j in &[0.3, 0.5] {
        for &a in &[0.01, 0.05, 0.1] {
            let p = params(ctx.opts, j, 1.0, 0.5, a);
            let errs: Vec<f64> = (1..=200)
                .into_par_iter()
                .map(|k| 2.0 * PI * k as f64 / 200.0 + 0.013)
                .filter(|&e| !near_kink(e))
                .map(|e| {
                    let closed = hs_rate_closed_form(&p, e);
                    Ok(((hs_rate_numeric(&p, e, 1e-6)? - closed) / closed).abs())
                })
                .collect::<Result<_>>()?;
            rel = errs.into_iter().fold(rel, f64::max);
        }
    }
    ctx.closed_form_bound(
        "hs-rate-numeric",
        rel,
        "relative, (J, alpha) in {0.3,0.5}x{0.01,0.05,0.1}",
    );

    let mut ident = 0.0f64;
    let mut deriv = 0.0f64;
    let h = 1e-4;
    for ji in 0..10 {
        for ai in 0..10 {
            for ei in 0..10 {
                let j = 0.1 + 0.1 * ji as f64;
                let a = 0.01 + 0.02 * ai as f64;
                let eta = 0.1 + 0.6 * ei as f64;
                let p = params(ctx.opts, j, 1.0, 0.5, a);
                let v = hs_speed(&p, eta);
                let l = hs_rate_closed_form(&p, eta);
                ident = ident.max(((v - 4.0 * a * j * l) / v).abs());
                let fd = ((hs_rate_closed_form(&p, eta + h) - hs_rate_closed_form(&p, eta - h))
                    / (2.0 * h))
                    .abs();
                deriv = deriv.max(((fd - v) / v).abs());
            }
        }
    }
    ctx.bound(
        "hs-speed-identity",
        ident,
        "relative, 10x10x10 (J, alpha, eta) grid",
    );
    ctx.bound(
        "hs-speed-derivative",
        deriv,
        "relative, central difference in eta",
    );
    Ok(())
}

fn bures_checks(ctx: &mut Ctx) -> Result<()> {
    let f0 = fidelity_of_separability(0.0)?;
    let f1 = fidelity_of_separability(1.0)?;
    let mut err = ((f0 - 1.0).abs()).max((f1 - 0.5).abs());
    err = err.max(bures_distance_normalized(0.0)?.abs());
    err = err.max((bures_distance_normalized(1.0)? - 1.0).abs());
    ctx.bound(
        "bures-endpoints",
        err,
        "F(0)=1, F(1)=1/2, L_B(0)=0, L_B(1)=1",
    );

    let cs: Vec<f64> = (0..1001).map(|k| k as f64 / 1000.0).collect();
    let lb: Vec<f64> = cs
        .iter()
        .map(|&c| bures_distance_normalized(c))
        .collect::<Result<_>>()?;
    let vb: Vec<f64> = cs.iter().map(|&c| bures_speed(c)).collect::<Result<_>>()?;
    let violations = lb.windows(2).filter(|w| w[1] <= w[0]).count()
        + vb.windows(2).filter(|w| w[1] >= w[0]).count();
    ctx.bound(
        "bures-monotone",
        violations as f64,
        "strict L_B increase, V_B decrease on 1001 samples",
    );

    let mut id = 0.0f64;
    for &c in &cs {
        id = id.max((bures_speed(c)? - (fidelity_of_separability(c)? / 8.0).sqrt()).abs());
    }
    ctx.bound("bures-speed-identity", id, "V_B = sqrt(F/8)");
    Ok(())
}

fn separable_checks(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.opts.separable_states.max(2);
    let mut excess = f64::NEG_INFINITY;
    let mut worst_ratio = f64::INFINITY;
    let mut low_c = 0;
    for &a in &[0.05, 0.1] {
        let p = params(ctx.opts, 0.3, 1.0, 0.5, a);
        let traj = make_trajectory(&p, 2.0 * PI, n, Method::Analytic)?;
        for d in &traj.states {
            let c = concurrence_wootters(d)?.value.min(1.0);
            let bound = fidelity_of_separability(c)?;
            let found = separable_fidelity_search(d, ctx.opts.separable_samples, ctx.opts.seed)?;
            excess = excess.max(found - bound);
            if c < 0.05 {
                low_c += 1;
                worst_ratio = worst_ratio.min(found / bound);
            }
        }
    }
    let detail = format!(
        "{} states, {} samples each",
        2 * n,
        ctx.opts.separable_samples
    );
    ctx.bound("separable-bound", excess.max(0.0), detail.clone());
    ctx.bound(
        "separable-reach",
        1.0 - worst_ratio,
        format!("{detail}; shortfall over {low_c} states with C < 0.05"),
    );
    Ok(())
}

fn brachistochrone_checks(ctx: &mut Ctx) -> Result<()> {
    let p = params(ctx.opts, 0.65, 1.0, 0.5, 0.2);
    let t = t_min(&p)?;
    ctx.bound(
        "brachistochrone-tmin",
        (t - 1.0 / (4.0 * 0.65 * 0.2)).abs(),
        format!("t_min = {}", format_g(t)),
    );
    let id = ((t * v_hs_max(&p) - l_hs_at_c1(&p)) / l_hs_at_c1(&p)).abs();
    ctx.bound(
        "brachistochrone-identity",
        id,
        "t_min * v_hs_max = l_hs_at_c1",
    );
    ctx.bound(
        "milburn-residual",
        milburn_residual(&p, t)?,
        "HS norm at t_min",
    );

    let propagated = *propagate_analytic(&p, &DensityMatrix::initial(), t)?.mat();
    let printed = *optimal_state(&p)?.mat();
    let diff = propagated.max_abs_diff(&printed);
    let status = if diff <= ctx.tol("optimal-state-printed") {
        Status::Pass
    } else {
        Status::KnownDiscrepancy
    };
    ctx.push(
        "optimal-state-printed",
        status,
        propagated.get(1, 1).re,
        printed.get(1, 1).re,
        format!(
            "|ud><ud| population, propagated vs printed; max entry gap {}",
            format_g(diff)
        ),
    );
    let mut swapped = printed;
    swapped.set(1, 1, printed.get(2, 2));
    swapped.set(2, 2, printed.get(1, 1));
    ctx.closed_form_bound(
        "optimal-state-swapped-diagonal",
        propagated.max_abs_diff(&swapped),
        "printed form with its two populations exchanged",
    );
    Ok(())
}

fn phase_checks(ctx: &mut Ctx) -> Result<()> {
    // gauge: random phases on every raw eigenvector
    let p = params(ctx.opts, 0.3, 1.0, 0.5, 0.1);
    let traj = make_trajectory(&p, 2.2, 801, Method::Analytic)?;
    let reference = tong_phase(&traj, DEFAULT_EPS_P)?.phase;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.opts.seed);
    let eigs: Vec<HermitianEig> = traj
        .states
        .iter()
        .map(|d| {
            let mut e = eig_hermitian(d.mat())?;
            for v in e.vectors.iter_mut() {
                let u = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
                v.iter_mut().for_each(|z| *z *= u);
            }
            Ok(e)
        })
        .collect::<Result<_>>()?;
    let branches = eigen_branches_from_eigs(&traj.etas, &eigs, DEFAULT_EPS_P)?;
    let series = PhaseSeries::new(&branches, DEFAULT_EPS_P)?;
    let rephased = series.at(series.len() - 1)?.phase;
    ctx.bound(
        "phase-gauge",
        phase_distance(rephased, reference),
        "J=0.3 alpha=0.1 eta_end=2.2",
    );

    // convergence and Bargmann cross-check
    let cases: Vec<(f64, f64, f64)> = [0.3, 1.0]
        .iter()
        .flat_map(|&j| [0.0, 0.05, 0.2].into_iter().map(move |a| (j, a)))
        .flat_map(|(j, a)| [1.0, 2.5, 4.0, 6.0].into_iter().map(move |e| (j, a, e)))
        .filter(|&(_, a, _)| !(ctx.literal() && a == 0.0))
        .collect();
    let results: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|&(j, a, e)| {
            let p = params(ctx.opts, j, 1.0, 0.5, a);
            let t = make_trajectory(&p, e, 4001, Method::Analytic)?;
            let fine = tong_phase(&t, DEFAULT_EPS_P)?;
            let coarse = tong_phase(&t.coarsened(), DEFAULT_EPS_P)?;
            Ok((
                phase_distance(fine.phase, coarse.phase),
                phase_distance(fine.phase, fine.bargmann_phase),
            ))
        })
        .collect::<Result<_>>()?;
    let conv = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let barg = results.iter().map(|r| r.1).fold(0.0, f64::max);
    ctx.bound(
        "phase-convergence",
        conv,
        "4001 vs 2001 points, J in {0.3,1}, alpha <= 0.2, eta_end <= 6",
    );
    ctx.bound(
        "phase-bargmann",
        barg,
        "connection integral vs overlap product",
    );

    if ctx.needs_unitary("phase-pure-oracle") {
        let p = params(ctx.opts, 0.3, 1.0, 0.5, 0.0);
        let mut err = 0.0f64;
        for &e in &[0.7, 1.2, 2.0, 3.0, 4.5, 6.0] {
            let t = make_trajectory(&p, e, 4001, Method::Analytic)?;
            err = err.max(phase_distance(
                tong_phase(&t, DEFAULT_EPS_P)?.phase,
                pure_state_phase_oracle(&p, e)?,
            ));
        }
        ctx.bound("phase-pure-oracle", err, "alpha=0, {0, pi} pattern");
    }
    Ok(())
}

fn invariance_check(ctx: &mut Ctx) -> Result<()> {
    let fields = [(0.0, 0.0), (1.0, 0.5), (-2.0, 3.0)];
    let runs: Vec<(Trajectory, Vec<[f64; 7]>, f64)> = fields
        .par_iter()
        .map(|&(g, b)| {
            let p = params(ctx.opts, 0.3, g, b, 0.1);
            let t = make_trajectory(&p, 2.0 * PI, 2001, Method::Analytic)?;
            let geo: Vec<[f64; 7]> = t
                .etas
                .iter()
                .zip(&t.states)
                .map(|(&e, d)| {
                    let s = geometry_sample(&p, e, d)?;
                    Ok([
                        s.concurrence,
                        s.hs_rate,
                        s.hs_speed,
                        s.fidelity_sep,
                        s.bures_distance,
                        s.bures_speed,
                        s.eta,
                    ])
                })
                .collect::<Result<_>>()?;
            let phase = tong_phase(
                &make_trajectory(&p, 2.5, 4001, Method::Analytic)?,
                DEFAULT_EPS_P,
            )?
            .phase;
            Ok((t, geo, phase))
        })
        .collect::<Result<_>>()?;
    let mut err = 0.0f64;
    for r in &runs[1..] {
        err = err.max(max_state_diff(&runs[0].0, &r.0));
        for (x, y) in runs[0].1.iter().zip(&r.1) {
            for k in 0..7 {
                err = err.max((x[k] - y[k]).abs());
            }
        }
        err = err.max(phase_distance(runs[0].2, r.2));
    }
    ctx.bound(
        "field-invariance",
        err,
        "(gamma, B) in {(0,0), (1,0.5), (-2,3)}",
    );
    Ok(())
}

fn printed_probes(ctx: &mut Ctx) -> Result<()> {
    let p = params(ctx.opts, 0.3, 1.0, 0.5, 0.1);
    let d = evolved_state_closed_form(&p, 1.0);
    let direct = block_eigensystem(&d)?.values[3];
    let printed = printed_block_eigenvalues(&p, 1.0).1;
    ctx.probe(
        "eigenvalues-printed",
        direct,
        printed,
        "larger eigenvalue at alpha=0.1 J=0.3 eta=1: direct block solution vs printed formula",
    );

    let p = params(ctx.opts, 0.09, 1.0, 0.5, 0.06);
    let tong = tong_phase(
        &make_trajectory(&p, 1.0, 4001, Method::Analytic)?,
        DEFAULT_EPS_P,
    )?
    .phase;
    ctx.probe(
        "phase-closed-form-printed",
        tong,
        paper_closed_form_phase(&p, 1.0),
        "J=0.09 alpha=0.06 eta=1: numerical phase vs printed closed form",
    );
    Ok(())
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut ctx = Ctx {
        opts,
        checks: Vec::new(),
    };
    route_checks(&mut ctx)?;
    hs_checks(&mut ctx)?;
    bures_checks(&mut ctx)?;
    separable_checks(&mut ctx)?;
    brachistochrone_checks(&mut ctx)?;
    phase_checks(&mut ctx)?;
    invariance_check(&mut ctx)?;
    printed_probes(&mut ctx)?;
    let exit_ok = ctx.checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerificationReport {
        checks: ctx.checks,
        exit_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
        assert_eq!(default_tolerance("route-rk4"), Some(1e-8));
        assert_eq!(default_tolerance("nope"), None);
    }

    #[test]
    fn tight_override_turns_a_check_red() {
        let mut ctx = Ctx {
            opts: &VerifyOptions {
                tolerances: [("bures-speed-identity".to_string(), -1.0)]
                    .into_iter()
                    .collect(),
                ..Default::default()
            },
            checks: Vec::new(),
        };
        bures_checks(&mut ctx).unwrap();
        let c = ctx
            .checks
            .iter()
            .find(|c| c.name == "bures-speed-identity")
            .unwrap();
        assert_eq!(c.status, Status::Fail);
    }

    #[test]
    fn printed_probes_are_known_discrepancies() {
        let opts = VerifyOptions::default();
        let mut ctx = Ctx {
            opts: &opts,
            checks: Vec::new(),
        };
        printed_probes(&mut ctx).unwrap();
        let eig = &ctx.checks[0];
        assert_eq!(eig.status, Status::KnownDiscrepancy);
        assert!((eig.measured - 0.943_460).abs() < 1e-6);
        assert!((eig.expected - 0.956_047).abs() < 1e-6);
        assert_eq!(ctx.checks[1].status, Status::KnownDiscrepancy);
    }
}
