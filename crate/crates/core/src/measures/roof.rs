//! Convex-roof optimization over pure-state decompositions.
//!
//! Every decomposition of a rank-r state into m ≥ r pure states is
//! |ψ̃ᵢ⟩ = Σₖ Uᵢₖ √λₖ |eₖ⟩ for an m×r isometry U and the eigen-ensemble
//! {λₖ, |eₖ⟩}. The optimizer keeps the m sub-normalized vectors |ψ̃ᵢ⟩ and
//! applies 2×2 unitary rotations to pairs of them, which moves U along the
//! isometry manifold exactly and leaves Σ|ψ̃ᵢ⟩⟨ψ̃ᵢ| = ρ untouched.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::{haar_unitary, rng_for, DensityOperator, MultipartiteState};
use crate::tensor::{hermitian_eig, DimList};

const RANK_TOL: f64 = 1e-10;
const GRID_POINTS: usize = 12;
const GOLDEN_ITERS: usize = 40;
const WEIGHT_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RoofDirection {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoofConfig {
    /// Decomposition size m; `None` means rank + 2.
    pub decomposition_size: Option<usize>,
    pub restarts: usize,
    /// Budget of pairwise line searches per restart.
    pub refine_steps: usize,
    pub seed: u64,
    pub direction: RoofDirection,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self {
            decomposition_size: None,
            restarts: 64,
            refine_steps: 400,
            seed: 0,
            direction: RoofDirection::Min,
        }
    }
}

impl RoofConfig {
    pub fn with_direction(&self, direction: RoofDirection) -> Self {
        Self {
            direction,
            ..self.clone()
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct RoofResult {
    pub value: f64,
    /// (pᵢ, |ψᵢ⟩) with pᵢ > 0; Σ pᵢ|ψᵢ⟩⟨ψᵢ| reconstructs ρ.
    pub decomposition: Vec<(f64, MultipartiteState)>,
    /// Average measure over the eigen-ensemble (the starting point of restart 0).
    pub eigen_ensemble_value: f64,
    /// False when the best restart exhausted its refinement budget.
    pub converged: bool,
}

struct Ensemble<'a, F> {
    dims: &'a DimList,
    measure: &'a F,
    sign: f64,
    vectors: Vec<Vec<Complex64>>,
    terms: Vec<f64>,
    scratch: Vec<Complex64>,
}

impl<'a, F> Ensemble<'a, F>
where
    F: Fn(&DimList, &[Complex64]) -> f64,
{
    fn new(dims: &'a DimList, measure: &'a F, sign: f64, vectors: Vec<Vec<Complex64>>) -> Self {
        let d = dims.total();
        let mut e = Self {
            dims,
            measure,
            sign,
            terms: vec![0.0; vectors.len()],
            vectors,
            scratch: vec![Complex64::new(0.0, 0.0); d],
        };
        for i in 0..e.vectors.len() {
            let v = std::mem::take(&mut e.vectors[i]);
            e.terms[i] = e.term(&v);
            e.vectors[i] = v;
        }
        e
    }

    /// p·f(ψ/√p), signed so that the optimizer always minimizes.
    fn term(&mut self, v: &[Complex64]) -> f64 {
        let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if p < WEIGHT_FLOOR {
            return 0.0;
        }
        let inv = 1.0 / p.sqrt();
        for (s, z) in self.scratch.iter_mut().zip(v) {
            *s = z * inv;
        }
        self.sign * p * (self.measure)(self.dims, &self.scratch)
    }

    fn objective(&self) -> f64 {
        self.terms.iter().sum()
    }

    fn rotated(
        &self,
        i: usize,
        j: usize,
        theta: f64,
        phase: Complex64,
    ) -> (Vec<Complex64>, Vec<Complex64>) {
        let (c, s) = (theta.cos(), theta.sin());
        let (vi, vj) = (&self.vectors[i], &self.vectors[j]);
        let ni = vi
            .iter()
            .zip(vj)
            .map(|(a, b)| a * c - phase * b * s)
            .collect();
        let nj = vi
            .iter()
            .zip(vj)
            .map(|(a, b)| phase.conj() * a * s + b * c)
            .collect();
        (ni, nj)
    }

    fn pair_value(&mut self, i: usize, j: usize, theta: f64, phase: Complex64) -> f64 {
        let (ni, nj) = self.rotated(i, j, theta, phase);
        self.term(&ni) + self.term(&nj)
    }

    /// Grid scan over θ ∈ [−π/2, π/2) followed by golden-section refinement
    /// around the best grid point. Returns the achieved decrease.
    fn line_search(&mut self, i: usize, j: usize, phase: Complex64) -> f64 {
        let current = self.terms[i] + self.terms[j];
        let step = PI / GRID_POINTS as f64;
        let mut best = (0.0, current);
        for k in 0..GRID_POINTS {
            let theta = -FRAC_PI_2 + step * k as f64;
            if theta == 0.0 {
                continue;
            }
            let v = self.pair_value(i, j, theta, phase);
            if v < best.1 {
                best = (theta, v);
            }
        }
        let (mut lo, mut hi) = (best.0 - step, best.0 + step);
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = self.pair_value(i, j, x1, phase);
        let mut f2 = self.pair_value(i, j, x2, phase);
        for _ in 0..GOLDEN_ITERS {
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = self.pair_value(i, j, x1, phase);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = self.pair_value(i, j, x2, phase);
            }
        }
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f < best.1 {
                best = (x, f);
            }
        }
        let gain = current - best.1;
        if gain > 0.0 {
            let (ni, nj) = self.rotated(i, j, best.0, phase);
            self.terms[i] = self.term(&ni);
            self.terms[j] = self.term(&nj);
            self.vectors[i] = ni;
            self.vectors[j] = nj;
            gain
        } else {
            0.0
        }
    }
}

/// Optimizes Σ pᵢ·measure(ψᵢ) over decompositions of `rho`.
///
/// `measure` receives normalized amplitudes on `rho.dims()`. For
/// [`RoofDirection::Min`] the returned value is an upper bound on the true
/// roof; for [`RoofDirection::Max`] a lower bound.
pub fn convex_roof<F>(rho: &DensityOperator, measure: F, cfg: &RoofConfig) -> Result<RoofResult>
where
    F: Fn(&DimList, &[Complex64]) -> f64,
{
    if cfg.restarts == 0 {
        return Err(Error::InvalidArgument(
            "roof needs at least one restart".into(),
        ));
    }
    let dims = rho.dims();
    let eig = hermitian_eig(rho.matrix())?;
    let rank = eig.values.iter().filter(|&&x| x > RANK_TOL).count().max(1);
    let m = cfg.decomposition_size.unwrap_or(rank + 2);
    if m < rank {
        return Err(Error::InvalidArgument(format!(
            "decomposition size {m} is below the rank {rank}"
        )));
    }
    let sign = match cfg.direction {
        RoofDirection::Min => 1.0,
        RoofDirection::Max => -1.0,
    };
    let scaled: Vec<Vec<Complex64>> = (0..rank)
        .map(|k| {
            let w = eig.values[k].max(0.0).sqrt();
            eig.vector(k).into_iter().map(|z| z * w).collect()
        })
        .collect();
    let d = dims.total();

    let eigen_start: Vec<Vec<Complex64>> = (0..m)
        .map(|i| {
            if i < rank {
                scaled[i].clone()
            } else {
                vec![Complex64::new(0.0, 0.0); d]
            }
        })
        .collect();
    let eigen_ensemble_value =
        sign * Ensemble::new(dims, &measure, sign, eigen_start.clone()).objective();

    if rank == 1 {
        let decomposition = extract(dims, &eigen_start)?;
        return Ok(RoofResult {
            value: eigen_ensemble_value,
            decomposition,
            eigen_ensemble_value,
            converged: true,
        });
    }

    let mut best: Option<(f64, Vec<Vec<Complex64>>, bool)> = None;
    for restart in 0..cfg.restarts {
        let mut rng = rng_for(cfg.seed);
        rng.set_stream(restart as u64);
        let start = if restart == 0 {
            eigen_start.clone()
        } else {
            let u = haar_unitary(m, &mut rng);
            (0..m)
                .map(|i| {
                    let mut v = vec![Complex64::new(0.0, 0.0); d];
                    for (k, e) in scaled.iter().enumerate() {
                        let coef = u[(i, k)];
                        for (vi, ei) in v.iter_mut().zip(e) {
                            *vi += coef * ei;
                        }
                    }
                    v
                })
                .collect()
        };
        let mut ens = Ensemble::new(dims, &measure, sign, start);
        let converged = refine(&mut ens, m, cfg.refine_steps, &mut rng);
        let value = ens.objective();
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, ens.vectors, converged));
        }
    }
    let (value, vectors, converged) = best.expect("at least one restart");
    Ok(RoofResult {
        value: sign * value,
        decomposition: extract(dims, &vectors)?,
        eigen_ensemble_value,
        converged,
    })
}

/// Sweeps over all pairs until a sweep gains less than 1e-13 or the
/// budget of line searches runs out. Returns whether it converged.
fn refine<F, R>(ens: &mut Ensemble<'_, F>, m: usize, budget: usize, rng: &mut R) -> bool
where
    F: Fn(&DimList, &[Complex64]) -> f64,
    R: Rng,
{
    let mut used = 0;
    loop {
        let mut sweep_gain = 0.0;
        for i in 0..m {
            for j in (i + 1)..m {
                if used >= budget {
                    return false;
                }
                used += 1;
                let random_phase = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
                for phase in [
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 1.0),
                    random_phase,
                ] {
                    sweep_gain += ens.line_search(i, j, phase);
                }
            }
        }
        if sweep_gain < 1e-13 {
            return true;
        }
    }
}

fn extract(dims: &DimList, vectors: &[Vec<Complex64>]) -> Result<Vec<(f64, MultipartiteState)>> {
    vectors
        .iter()
        .filter_map(|v| {
            let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            (p > WEIGHT_FLOOR).then(|| {
                MultipartiteState::from_unnormalized(dims.clone(), v.clone()).map(|s| (p, s))
            })
        })
        .collect()
}
