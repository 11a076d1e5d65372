//! Linear tool-necessity probe: z-scored features, L2-regularized logistic
//! regression fit with L-BFGS, temperature-scaled decisions and AUROC.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::backend::{f32_base64, HiddenFeatures};

pub const DEFAULT_LAMBDA: f64 = 1e4;
pub const DEFAULT_TEMPERATURE: f64 = 2.0;
pub const MAX_ITERATIONS: usize = 2000;
pub const GRADIENT_TOLERANCE: f64 = 1e-6;
pub const DATA_FRACTIONS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 1.0];

/// y = 1 when the model failed without tools, so a tool is necessary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessityLabel {
    pub task_id: String,
    pub y: u8,
}

#[derive(Debug, thiserror::Error)]
pub enum ProbeError {
    #[error(
        "labels contain a single class ({positives} positive of {n}); need at least 2 of each"
    )]
    SingleClass { n: usize, positives: usize },
    #[error("feature dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("probe artifact: {0}")]
    Artifact(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerSelection {
    All,
    Mid,
    Last,
}

impl LayerSelection {
    /// Layer index used by single-layer selections.
    pub fn layer(self, layer_count: usize) -> Option<usize> {
        match self {
            LayerSelection::All => None,
            LayerSelection::Mid => Some(layer_count / 2),
            LayerSelection::Last => Some(layer_count.saturating_sub(1)),
        }
    }

    pub fn output_dim(self, layer_count: usize, hidden_dim: usize) -> usize {
        match self {
            LayerSelection::All => layer_count * hidden_dim,
            _ => hidden_dim,
        }
    }
}

impl fmt::Display for LayerSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LayerSelection::All => "all",
            LayerSelection::Mid => "mid",
            LayerSelection::Last => "last",
        })
    }
}

impl FromStr for LayerSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(LayerSelection::All),
            "mid" => Ok(LayerSelection::Mid),
            "last" => Ok(LayerSelection::Last),
            _ => Err(format!("unknown layer selection '{s}' (all, mid, last)")),
        }
    }
}

pub fn select_layers(features: &HiddenFeatures, selection: LayerSelection) -> Vec<f32> {
    match selection.layer(features.layer_count) {
        None => features.values.clone(),
        Some(l) => features.layer(l).to_vec(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub lambda: f64,
    pub temperature: f64,
    pub layer_selection: LayerSelection,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            lambda: DEFAULT_LAMBDA,
            temperature: DEFAULT_TEMPERATURE,
            layer_selection: LayerSelection::All,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub n_train: usize,
    pub n_positive: usize,
    pub seed: u64,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub converged: bool,
}

/// A trained probe. Vectors are stored as f32 so that a saved artifact
/// reproduces decisions bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeModel {
    pub dim: usize,
    pub layer_count: usize,
    pub hidden_dim: usize,
    pub layer_selection: LayerSelection,
    pub lambda: f64,
    pub temperature: f64,
    pub bias: f64,
    pub training_meta: TrainingMeta,
    #[serde(default)]
    pub model: Option<String>,
    #[serde(rename = "mean_b64", with = "f32_base64")]
    pub mean: Vec<f32>,
    #[serde(rename = "scale_b64", with = "f32_base64")]
    pub scale: Vec<f32>,
    #[serde(rename = "weights_b64", with = "f32_base64")]
    pub weights: Vec<f32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Direct,
    Tool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeDecision {
    pub task_id: String,
    pub logit: f64,
    pub probability: f64,
    pub tau: f64,
    pub decision: Route,
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// log(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Column means and population standard deviations. Constant columns get
/// scale 1 and are reported in the mask as unusable.
pub fn standardization(rows: &[Vec<f32>]) -> (Vec<f64>, Vec<f64>, Vec<bool>) {
    let n = rows.len() as f64;
    let d = rows.first().map_or(0, Vec::len);
    let mut mean = vec![0.0f64; d];
    for r in rows {
        for (m, x) in mean.iter_mut().zip(r) {
            *m += f64::from(*x);
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut var = vec![0.0f64; d];
    for r in rows {
        for ((v, x), m) in var.iter_mut().zip(r).zip(&mean) {
            let c = f64::from(*x) - m;
            *v += c * c;
        }
    }
    let mut scale = Vec::with_capacity(d);
    let mut usable = Vec::with_capacity(d);
    for (v, m) in var.iter().zip(&mean) {
        let s = (v / n).sqrt();
        let constant = s == 0.0 || s <= 1e-12 * m.abs();
        scale.push(if constant { 1.0 } else { s });
        usable.push(!constant);
    }
    (mean, scale, usable)
}

/// Mean logistic loss plus (λ/2n)‖w‖² over standardized rows; the last
/// parameter is the unregularized bias.
struct Objective<'a> {
    x: &'a [Vec<f64>],
    y: &'a [f64],
    lambda: f64,
    usable: &'a [bool],
}

impl Objective<'_> {
    fn eval(&self, params: &[f64], grad: &mut [f64]) -> f64 {
        let d = params.len() - 1;
        let n = self.x.len() as f64;
        let (w, b) = (&params[..d], params[d]);
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut loss = 0.0;
        for (row, y) in self.x.iter().zip(self.y) {
            let z = b + row.iter().zip(w).map(|(a, c)| a * c).sum::<f64>();
            loss += softplus(z) - y * z;
            let r = sigmoid(z) - y;
            for (g, a) in grad[..d].iter_mut().zip(row) {
                *g += r * a;
            }
            grad[d] += r;
        }
        let reg = self.lambda / n;
        let mut penalty = 0.0;
        for i in 0..d {
            if self.usable[i] {
                grad[i] = grad[i] / n + reg * w[i];
                penalty += w[i] * w[i];
            } else {
                grad[i] = 0.0;
            }
        }
        grad[d] /= n;
        loss / n + 0.5 * reg * penalty
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

struct Solution {
    params: Vec<f64>,
    iterations: usize,
    gradient_norm: f64,
    converged: bool,
}

/// Limited-memory BFGS with a backtracking Armijo line search.
fn lbfgs(obj: &Objective<'_>, start: Vec<f64>) -> Solution {
    const MEMORY: usize = 10;
    let dim = start.len();
    let mut x = start;
    let mut g = vec![0.0; dim];
    let mut f = obj.eval(&x, &mut g);
    let mut hist: std::collections::VecDeque<(Vec<f64>, Vec<f64>, f64)> = Default::default();
    let mut iterations = 0;
    let mut trial = vec![0.0; dim];
    let mut g_new = vec![0.0; dim];

    while iterations < MAX_ITERATIONS {
        let gnorm = norm(&g);
        if gnorm <= GRADIENT_TOLERANCE {
            return Solution {
                params: x,
                iterations,
                gradient_norm: gnorm,
                converged: true,
            };
        }
        // Two-loop recursion for d = -H g.
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, yv, rho) in hist.iter().rev() {
            let a = rho * dot(s, &q);
            q.iter_mut().zip(yv).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push(a);
        }
        let gamma = hist
            .back()
            .map_or(1.0 / gnorm.max(1.0), |(s, yv, _)| dot(s, yv) / dot(yv, yv));
        q.iter_mut().for_each(|qi| *qi *= gamma);
        for ((s, yv, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let beta = rho * dot(yv, &q);
            q.iter_mut()
                .zip(s)
                .for_each(|(qi, si)| *qi += (a - beta) * si);
        }
        let mut dir: Vec<f64> = q.iter().map(|v| -v).collect();
        let mut slope = dot(&g, &dir);
        if slope >= 0.0 {
            hist.clear();
            dir = g.iter().map(|v| -v).collect();
            slope = -gnorm * gnorm;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            for i in 0..dim {
                trial[i] = x[i] + step * dir[i];
            }
            let f_new = obj.eval(&trial, &mut g_new);
            if f_new.is_finite() && f_new <= f + 1e-4 * step * slope {
                accepted = Some(f_new);
                break;
            }
            step *= 0.5;
        }
        iterations += 1;
        let Some(f_new) = accepted else {
            // No decrease is representable; the point is optimal to precision.
            let gradient_norm = norm(&g);
            return Solution {
                params: x,
                iterations,
                gradient_norm,
                converged: gradient_norm <= GRADIENT_TOLERANCE,
            };
        };
        let s: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
        let yv: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &yv);
        if sy > 1e-12 * norm(&s) * norm(&yv) && sy > 0.0 {
            if hist.len() == MEMORY {
                hist.pop_front();
            }
            hist.push_back((s, yv, 1.0 / sy));
        }
        std::mem::swap(&mut x, &mut trial);
        std::mem::swap(&mut g, &mut g_new);
        let improvement = f - f_new;
        f = f_new;
        if improvement.abs() <= f64::EPSILON * f.abs().max(1.0)
            && norm(&g) <= 1e3 * GRADIENT_TOLERANCE
        {
            break;
        }
    }
    let gradient_norm = norm(&g);
    Solution {
        params: x,
        iterations,
        gradient_norm,
        converged: gradient_norm <= GRADIENT_TOLERANCE,
    }
}

fn check_rows(rows: &[Vec<f32>]) -> Result<usize, ProbeError> {
    let d = rows.first().map_or(0, Vec::len);
    if d == 0 {
        return Err(ProbeError::Invalid("no features".into()));
    }
    for r in rows {
        if r.len() != d {
            return Err(ProbeError::Dimension {
                expected: d,
                got: r.len(),
            });
        }
        if r.iter().any(|v| !v.is_finite()) {
            return Err(ProbeError::Invalid("non-finite feature value".into()));
        }
    }
    Ok(d)
}

/// Fits a probe on already-selected feature rows. `layer_count` and
/// `hidden_dim` describe the backend the rows came from.
pub fn train_probe(
    rows: &[Vec<f32>],
    labels: &[u8],
    config: &TrainConfig,
    layer_count: usize,
    hidden_dim: usize,
) -> Result<ProbeModel, ProbeError> {
    if rows.len() != labels.len() {
        return Err(ProbeError::Invalid(format!(
            "{} feature rows but {} labels",
            rows.len(),
            labels.len()
        )));
    }
    if !(config.lambda > 0.0 && config.lambda.is_finite()) {
        return Err(ProbeError::Invalid(format!(
            "lambda must be positive, got {}",
            config.lambda
        )));
    }
    if !(config.temperature > 0.0 && config.temperature.is_finite()) {
        return Err(ProbeError::Invalid(format!(
            "temperature must be positive, got {}",
            config.temperature
        )));
    }
    if labels.iter().any(|y| *y > 1) {
        return Err(ProbeError::Invalid("labels must be 0 or 1".into()));
    }
    let n = labels.len();
    let positives = labels.iter().filter(|y| **y == 1).count();
    if positives < 2 || n - positives < 2 {
        return Err(ProbeError::SingleClass { n, positives });
    }
    let d = check_rows(rows)?;

    let (mean, scale, usable) = standardization(rows);
    let x: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .zip(mean.iter().zip(&scale))
                .zip(&usable)
                .map(|((v, (m, s)), u)| if *u { (f64::from(*v) - m) / s } else { 0.0 })
                .collect()
        })
        .collect();
    let y: Vec<f64> = labels.iter().map(|v| f64::from(*v)).collect();
    let base = positives as f64 / n as f64;
    let mut start = vec![0.0; d + 1];
    start[d] = (base / (1.0 - base)).ln();
    let sol = lbfgs(
        &Objective {
            x: &x,
            y: &y,
            lambda: config.lambda,
            usable: &usable,
        },
        start,
    );
    if !sol.converged {
        tracing::warn!(
            iterations = sol.iterations,
            gradient_norm = sol.gradient_norm,
            "probe training did not converge"
        );
    }

    Ok(ProbeModel {
        dim: d,
        layer_count,
        hidden_dim,
        layer_selection: config.layer_selection,
        lambda: config.lambda,
        temperature: config.temperature,
        bias: sol.params[d],
        training_meta: TrainingMeta {
            n_train: n,
            n_positive: positives,
            seed: config.seed,
            iterations: sol.iterations,
            gradient_norm: sol.gradient_norm,
            converged: sol.converged,
        },
        model: None,
        mean: mean.iter().map(|v| *v as f32).collect(),
        scale: scale.iter().map(|v| *v as f32).collect(),
        weights: sol.params[..d]
            .iter()
            .zip(&usable)
            .map(|(w, u)| if *u { *w as f32 } else { 0.0 })
            .collect(),
    })
}

impl ProbeModel {
    pub fn weight_norm(&self) -> f64 {
        self.weights
            .iter()
            .map(|w| f64::from(*w).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Raw logit on an already-selected feature vector.
    pub fn logit(&self, x: &[f32]) -> Result<f64, ProbeError> {
        if x.len() != self.dim {
            return Err(ProbeError::Dimension {
                expected: self.dim,
                got: x.len(),
            });
        }
        let z = self
            .weights
            .iter()
            .zip(x)
            .zip(self.mean.iter().zip(&self.scale))
            .fold(self.bias, |z, ((w, x), (m, s))| {
                z + f64::from(*w) * (f64::from(*x) - f64::from(*m)) / f64::from(*s)
            });
        Ok(z)
    }

    /// Calibrated probability σ(z / T).
    pub fn probability(&self, x: &[f32]) -> Result<f64, ProbeError> {
        Ok(sigmoid(self.logit(x)? / self.temperature))
    }

    /// Applies the probe's layer selection to full hidden features.
    pub fn select(&self, features: &HiddenFeatures) -> Result<Vec<f32>, ProbeError> {
        if (features.layer_count, features.hidden_dim) != (self.layer_count, self.hidden_dim) {
            return Err(ProbeError::Dimension {
                expected: self.layer_count * self.hidden_dim,
                got: features.values.len(),
            });
        }
        Ok(select_layers(features, self.layer_selection))
    }

    pub fn save(&self, path: &Path) -> Result<(), ProbeError> {
        let text =
            serde_json::to_string_pretty(self).map_err(|e| ProbeError::Artifact(e.to_string()))?;
        std::fs::write(path, text)
            .map_err(|e| ProbeError::Artifact(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, ProbeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ProbeError::Artifact(format!("{}: {e}", path.display())))?;
        let model: ProbeModel =
            serde_json::from_str(&text).map_err(|e| ProbeError::Artifact(e.to_string()))?;
        if [model.mean.len(), model.scale.len(), model.weights.len()] != [model.dim; 3] {
            return Err(ProbeError::Artifact(
                "array lengths disagree with dim".into(),
            ));
        }
        if model.scale.iter().any(|s| s.is_nan() || *s <= 0.0)
            || model.temperature.is_nan()
            || model.temperature <= 0.0
        {
            return Err(ProbeError::Artifact(
                "scales and temperature must be positive".into(),
            ));
        }
        Ok(model)
    }
}

/// Decision for one selected feature vector.
pub fn probe_decide(
    model: &ProbeModel,
    task_id: &str,
    x: &[f32],
    tau: f64,
) -> Result<ProbeDecision, ProbeError> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(ProbeError::Invalid(format!(
            "threshold must lie in (0, 1), got {tau}"
        )));
    }
    let logit = model.logit(x)?;
    let probability = sigmoid(logit / model.temperature);
    Ok(ProbeDecision {
        task_id: task_id.to_string(),
        logit,
        probability,
        tau,
        decision: if probability >= tau {
            Route::Tool
        } else {
            Route::Direct
        },
    })
}

/// Mann-Whitney AUROC with ties counted one half.
pub fn auroc(scores: &[f64], labels: &[u8]) -> Result<f64, ProbeError> {
    if scores.len() != labels.len() {
        return Err(ProbeError::Invalid(format!(
            "{} scores but {} labels",
            scores.len(),
            labels.len()
        )));
    }
    let positives = labels.iter().filter(|y| **y == 1).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(ProbeError::SingleClass {
            n: labels.len(),
            positives,
        });
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(ProbeError::Invalid("NaN score".into()));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|a, b| scores[*a].total_cmp(&scores[*b]));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // Ranks i+1..=j+1 share their average.
        let avg = (i + j + 2) as f64 / 2.0;
        rank_sum += avg * order[i..=j].iter().filter(|k| labels[**k] == 1).count() as f64;
        i = j + 1;
    }
    let (p, q) = (positives as f64, negatives as f64);
    Ok((rank_sum - p * (p + 1.0) / 2.0) / (p * q))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionResult {
    pub fraction: f64,
    pub seed: u64,
    pub n_train: usize,
    pub auroc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionSummary {
    pub fraction: f64,
    pub mean_auroc: f64,
    pub runs: Vec<FractionResult>,
}

/// Stratified subsample: the same fraction of each class, at least two.
pub fn stratified_subsample(
    labels: &[u8],
    fraction: f64,
    seed: u64,
) -> Result<Vec<usize>, ProbeError> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(ProbeError::Invalid(format!(
            "fraction must lie in (0, 1], got {fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = Vec::new();
    for class in [0u8, 1] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|i| labels[*i] == class).collect();
        let take = ((idx.len() as f64 * fraction).round() as usize).min(idx.len());
        if take < 2 {
            let positives = labels.iter().filter(|y| **y == 1).count();
            return Err(ProbeError::SingleClass {
                n: labels.len(),
                positives,
            });
        }
        if fraction < 1.0 {
            idx.shuffle(&mut rng);
        }
        picked.extend_from_slice(&idx[..take]);
    }
    picked.sort_unstable();
    Ok(picked)
}

/// Held-out AUROC of probes trained on stratified fractions of the training
/// data, one run per (fraction, seed).
#[allow(clippy::too_many_arguments)]
pub fn data_fraction_study(
    train_rows: &[Vec<f32>],
    train_labels: &[u8],
    test_rows: &[Vec<f32>],
    test_labels: &[u8],
    fractions: &[f64],
    seeds: &[u64],
    config: &TrainConfig,
    shape: (usize, usize),
) -> Result<Vec<FractionSummary>, ProbeError> {
    let mut out = Vec::new();
    for &fraction in fractions {
        let mut runs = Vec::new();
        for &seed in seeds {
            let idx = stratified_subsample(train_labels, fraction, seed)?;
            let rows: Vec<Vec<f32>> = idx.iter().map(|i| train_rows[*i].clone()).collect();
            let labels: Vec<u8> = idx.iter().map(|i| train_labels[*i]).collect();
            let model = train_probe(
                &rows,
                &labels,
                &TrainConfig { seed, ..*config },
                shape.0,
                shape.1,
            )?;
            let scores = test_rows
                .iter()
                .map(|r| model.probability(r))
                .collect::<Result<Vec<_>, _>>()?;
            runs.push(FractionResult {
                fraction,
                seed,
                n_train: idx.len(),
                auroc: auroc(&scores, test_labels)?,
            });
        }
        let mean_auroc = runs.iter().map(|r| r.auroc).sum::<f64>() / runs.len().max(1) as f64;
        out.push(FractionSummary {
            fraction,
            mean_auroc,
            runs,
        });
    }
    Ok(out)
}
