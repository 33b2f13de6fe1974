//! Quantitative checks on the Grover/Hamiltonian correspondence, all with
//! the Walsh-Hadamard driver, sigma = psi, and target w = N - 1.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use super::report::{CheckReport, SweepMetadata, SweepResult};
use crate::analog::{commutator_hamiltonian, fg_arrival_time, fg_hamiltonian, HamiltonianFamily};
use crate::error::{invalid, Result};
use crate::grover::{grover_iterate, make_driver, walsh_hadamard, SearchProblem};
use crate::linalg::{distance, evolve_vec, operator_norm, propagator, DenseOperator, QuantumState};
use crate::C64;

/// Absolute tolerance for identities that hold exactly in exact arithmetic.
pub const EXACT_TOL: f64 = 1e-9;

/// The objects every check needs for one qubit count.
pub struct SearchSetup {
    pub problem: SearchProblem,
    pub family: HamiltonianFamily,
    pub g: DenseOperator,
}

impl SearchSetup {
    pub fn new(n: u32, energy: f64) -> Result<Self> {
        let problem = SearchProblem::new(n, (1usize << n) - 1)?;
        let driver = make_driver(&walsh_hadamard(n)?, &problem)?;
        let family = HamiltonianFamily::new(&driver.start_state(), problem.target(), energy)?;
        let g = grover_iterate(&driver, &problem)?;
        Ok(Self { problem, family, g })
    }

    /// G + 2P
    pub fn g_plus_2p(&self) -> DenseOperator {
        &self.g + &self.family.p().scale(C64::new(2.0, 0.0))
    }
}

fn check_n(n: u32, range: RangeInclusive<u32>) -> Result<()> {
    if !range.contains(&n) {
        return Err(invalid(format!("qubit count {n} outside {}..={}", range.start(), range.end())));
    }
    Ok(())
}

/// (|e^{-iHt} - (G + 2P)|, |e^{-2iHt} - G^2|) with E = 1.
pub fn theorem_main_gaps(n: u32, t: f64) -> Result<(f64, f64)> {
    check_n(n, Check::TheoremMain.qubit_range())?;
    let s = SearchSetup::new(n, 1.0)?;
    let once = propagator(s.family.h(), t)?;
    let twice = propagator(s.family.h(), 2.0 * t)?;
    let gap1 = operator_norm(&(&once - &s.g_plus_2p()))?.value();
    let gap2 = operator_norm(&(&twice - &(&s.g * &s.g)))?.value();
    Ok((gap1, gap2))
}

/// Both Grover-time identities at t = t0: the single step against G + 2P
/// and the double step against G^2.
pub fn verify_theorem_main(n: u32) -> Result<[CheckReport; 2]> {
    check_n(n, Check::TheoremMain.qubit_range())?;
    let t0 = SearchSetup::new(n, 1.0)?.family.t0();
    let (gap1, gap2) = theorem_main_gaps(n, t0)?;
    Ok([
        CheckReport::new("theorem_main.g_plus_2p", n, gap1, 0.0, EXACT_TOL),
        CheckReport::new("theorem_main.g_squared", n, gap2, 0.0, EXACT_TOL),
    ])
}

/// |e^{-iH} - (G + 2P)| against (2/3) x^3 sqrt(1 - x^2), tolerance 5 x^5.
pub fn norm_gap_vs_prediction(n: u32) -> Result<CheckReport> {
    check_n(n, Check::NormGap.qubit_range())?;
    let s = SearchSetup::new(n, 1.0)?;
    let x = s.family.overlap();
    let unit = propagator(s.family.h(), 1.0)?;
    let measured = operator_norm(&(&unit - &s.g_plus_2p()))?.value();
    let predicted = 2.0 / 3.0 * x.powi(3) * (1.0 - x * x).sqrt();
    Ok(CheckReport::new("norm_gap", n, measured, predicted, 5.0 * x.powi(5)))
}

/// |e^{-iHt}|sigma> - |w>| with E = 1 at an arbitrary time.
pub fn corollary_distance_at(n: u32, t: f64) -> Result<f64> {
    check_n(n, Check::Corollary.qubit_range())?;
    let dim = 1usize << n;
    let target = dim - 1;
    let sigma = QuantumState::uniform(n)?;
    let h = commutator_hamiltonian(&sigma, target, 1.0)?;
    let evolved = evolve_vec(&h, t, sigma.amplitudes())?;
    Ok(distance(evolved.view(), QuantumState::basis(dim, target)?.amplitudes()))
}

/// t = (pi/4) sqrt(N)
pub fn corollary_time(n: u32) -> f64 {
    PI / 4.0 * ((1usize << n) as f64).sqrt()
}

/// Distance to the target at t = (pi/4) sqrt(N), checked for 1/N scaling
/// across the given qubit counts.
///
/// C is fitted as the geometric centre sqrt(max * min) of distance * N over
/// the sweep; each row predicts C/N with tolerance 2C/N. Every row passes
/// exactly when all distance * N values lie within a factor of 3 of C.
pub fn verify_corollary(ns: &[u32]) -> Result<Vec<CheckReport>> {
    let measured: Vec<(u32, f64)> =
        ns.iter().map(|&n| Ok((n, corollary_distance_at(n, corollary_time(n))?))).collect::<Result<_>>()?;
    if measured.is_empty() {
        return Ok(Vec::new());
    }
    let scaled: Vec<f64> = measured.iter().map(|&(n, d)| d * (1usize << n) as f64).collect();
    let hi = scaled.iter().cloned().fold(f64::MIN, f64::max);
    let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
    let fitted = (hi * lo).sqrt();
    Ok(measured
        .into_iter()
        .map(|(n, d)| {
            let predicted = fitted / (1usize << n) as f64;
            CheckReport::new("corollary", n, d, predicted, 2.0 * predicted)
        })
        .collect())
}

/// Farhi-Gutmann evolution at t = pi/(2Ex): the target amplitude modulus
/// (predicted 1) and the distance to -i e^{-i pi/(2x)} |w> (predicted 0).
pub fn verify_fg_arrival(n: u32, energy: f64) -> Result<[CheckReport; 2]> {
    let (amp, dist) = fg_arrival_at(n, energy, 1.0)?;
    Ok([
        CheckReport::new("fg_arrival.amplitude", n, amp, 1.0, EXACT_TOL),
        CheckReport::new("fg_arrival.state", n, dist, 0.0, EXACT_TOL),
    ])
}

/// (|<w|e^{-iH't}|sigma>|, distance to the arrival state) at
/// t = fraction * pi/(2Ex).
pub fn fg_arrival_at(n: u32, energy: f64, fraction: f64) -> Result<(f64, f64)> {
    check_n(n, Check::FgArrival.qubit_range())?;
    let dim = 1usize << n;
    let target = dim - 1;
    let sigma = QuantumState::uniform(n)?;
    let x = sigma.amplitude(target).re;
    let h = fg_hamiltonian(&sigma, target, energy)?;
    let t = fraction * fg_arrival_time(x, energy);
    let evolved = evolve_vec(&h, t, sigma.amplitudes())?;
    let mut want = ndarray::Array1::zeros(dim);
    want[target] = C64::new(0.0, -1.0) * C64::from_polar(1.0, -PI / (2.0 * x));
    Ok((evolved[target].norm(), distance(evolved.view(), want.view())))
}

/// The checks a sweep can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    TheoremMain,
    NormGap,
    Corollary,
    FgArrival,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::TheoremMain, Check::NormGap, Check::Corollary, Check::FgArrival];

    pub fn name(self) -> &'static str {
        match self {
            Check::TheoremMain => "theorem_main",
            Check::NormGap => "norm_gap",
            Check::Corollary => "corollary",
            Check::FgArrival => "fg_arrival",
        }
    }

    /// Qubit counts the check accepts.
    pub fn qubit_range(self) -> RangeInclusive<u32> {
        match self {
            Check::Corollary => 2..=12,
            _ => 2..=10,
        }
    }

    pub fn valid_names() -> String {
        Check::ALL.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid(format!("unknown check '{s}'; valid checks: all, {}", Check::valid_names())))
    }
}

/// Resolves check names, expanding `all`, skipping blanks, dropping
/// duplicates and keeping the canonical order.
pub fn parse_checks<S: AsRef<str>>(names: &[S]) -> Result<Vec<Check>> {
    let mut picked = BTreeMap::new();
    for name in names {
        let name = name.as_ref().trim();
        if name.is_empty() {
            continue;
        }
        if name == "all" {
            for c in Check::ALL {
                picked.insert(c, ());
            }
        } else {
            picked.insert(name.parse::<Check>()?, ());
        }
    }
    Ok(picked.into_keys().collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub seed: u64,
    /// Energy for the Farhi-Gutmann arrival check.
    pub energy: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { seed: 0, energy: 1.0 }
    }
}

/// Runs every named check for every n in the range.
///
/// All checks are deterministic; the seed is carried into the metadata so
/// reports are traceable.
pub fn run_sweep<S: AsRef<str>>(
    checks: &[S],
    n_range: RangeInclusive<u32>,
    options: SweepOptions,
) -> Result<SweepResult> {
    let checks = parse_checks(checks)?;
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo > hi {
        return Err(invalid(format!("qubit range {lo}..{hi} is reversed")));
    }
    for c in &checks {
        let ok = c.qubit_range();
        if lo < *ok.start() || hi > *ok.end() {
            return Err(invalid(format!(
                "check {c} supports n in {}..={}, requested {lo}..={hi}",
                ok.start(),
                ok.end()
            )));
        }
    }
    let ns: Vec<u32> = n_range.collect();
    let mut rows = Vec::new();
    for c in checks {
        match c {
            Check::TheoremMain => {
                for &n in &ns {
                    rows.extend(verify_theorem_main(n)?);
                }
            }
            Check::NormGap => {
                for &n in &ns {
                    rows.push(norm_gap_vs_prediction(n)?);
                }
            }
            Check::Corollary => rows.extend(verify_corollary(&ns)?),
            Check::FgArrival => {
                for &n in &ns {
                    rows.extend(verify_fg_arrival(n, options.energy)?);
                }
            }
        }
    }
    Ok(SweepResult::new(SweepMetadata::now(options.seed), rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grover_time_identities_small_n() {
        for n in [2, 3, 6] {
            let [a, b] = verify_theorem_main(n).unwrap();
            assert!(a.passed() && b.passed(), "{a:?} {b:?}");
            assert!(a.measured() < 1e-9 && b.measured() < 1e-9);
        }
    }

    #[test]
    fn perturbed_time_breaks_identity() {
        for n in [2, 4] {
            let t0 = SearchSetup::new(n, 1.0).unwrap().family.t0();
            let (gap1, _) = theorem_main_gaps(n, 1.1 * t0).unwrap();
            assert!(gap1 > 1e-3, "n = {n}: {gap1}");
        }
    }

    #[test]
    fn norm_gap_follows_four_thirds_law() {
        // The measured gap is |1 - e^{i eta (t0 - 1)}| = 2 sin(eta (t0 - 1) / 2)
        // on the plane, which is (4/3) x^3 sqrt(1 - x^2) + O(x^5).
        for n in [4, 6] {
            let r = norm_gap_vs_prediction(n).unwrap();
            let x = r.x();
            let eta = 2.0 * x * (1.0 - x * x).sqrt();
            let t0 = r.t0();
            let exact = 2.0 * (eta * (t0 - 1.0) / 2.0).sin();
            assert!((r.measured() - exact).abs() < 1e-12, "{} vs {}", r.measured(), exact);
            let leading = 4.0 / 3.0 * x.powi(3) * (1.0 - x * x).sqrt();
            assert!((r.measured() - leading).abs() <= 5.0 * x.powi(5));
        }
    }

    #[test]
    fn corollary_exact_arrival() {
        for n in [4u32, 6] {
            let x = 2f64.powf(-(n as f64) / 2.0);
            let t = crate::analog::h_arrival_time(x, 1.0);
            assert!(corollary_distance_at(n, t).unwrap() < 1e-9);
        }
    }

    #[test]
    fn corollary_single_point_fits_itself() {
        let rows = verify_corollary(&[5]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].passed());
        assert!(verify_corollary(&[]).unwrap().is_empty());
    }

    #[test]
    fn fg_arrival_small() {
        let [amp, state] = verify_fg_arrival(2, 1.0).unwrap();
        assert!((amp.measured() - 1.0).abs() < 1e-10);
        assert!(state.measured() < 1e-10);
        let [amp, _] = verify_fg_arrival(6, 2.0).unwrap();
        assert!((amp.measured() - 1.0).abs() < 1e-10);
        let (half, _) = fg_arrival_at(4, 1.0, 0.5).unwrap();
        // |<w|(cos a |sigma> - i sin a |w>)| = sqrt(sin^2 a + x^2 cos^2 a), a = pi/4, x = 1/4
        assert!((half - (0.5f64 + 0.0625 * 0.5).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn check_name_parsing() {
        assert_eq!(parse_checks(&["all"]).unwrap(), Check::ALL.to_vec());
        assert_eq!(parse_checks(&["norm_gap", "theorem_main", "norm_gap"]).unwrap(), vec![Check::TheoremMain, Check::NormGap]);
        let err = parse_checks(&["bogus"]).unwrap_err().to_string();
        for c in Check::ALL {
            assert!(err.contains(c.name()));
        }
    }

    #[test]
    fn sweep_validation() {
        let empty: [&str; 0] = [];
        assert!(run_sweep(&empty, 2..=4, SweepOptions::default()).unwrap().rows().is_empty());
        #[allow(clippy::reversed_empty_ranges)]
        let reversed = run_sweep(&["theorem_main"], 5..=3, SweepOptions::default());
        assert!(matches!(reversed, Err(crate::Error::InvalidArgument(_))));
        assert!(run_sweep(&["theorem_main"], 2..=11, SweepOptions::default()).is_err());
        assert!(run_sweep(&["nope"], 2..=3, SweepOptions::default()).is_err());
    }

    #[test]
    fn identity_sweep_rows() {
        let s = run_sweep(&["theorem_main"], 2..=4, SweepOptions::default()).unwrap();
        assert_eq!(s.rows().len(), 6);
        assert!(s.all_passed());
        for r in s.rows() {
            assert_eq!(r.passed(), (r.measured() - r.predicted()).abs() <= r.tolerance());
        }
    }
}
