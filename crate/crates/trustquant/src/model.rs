//! From-scratch fully-connected credit-default classifier.
//!
//! Architecture is fixed to dims [23, 10, 10, 10, 10, 2]: four hidden layers
//! of 10 rectified-linear neurons and a two-neuron softmax output. Training is
//! plain backprop of mean cross-entropy with Adam and an exponentially decayed
//! learning rate, all in f64 and bitwise deterministic for a fixed seed.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{derive_demographics, ClientRecord, Standardization};
use crate::error::{Error, Result};
use crate::predictions::PredictionRecord;

/// Layer widths of the credit-default network.
pub const CREDIT_DIMS: [usize; 6] = [23, 10, 10, 10, 10, 2];

/// Weights are row-major `out x in` per layer; hidden activation is ReLU,
/// output is softmax.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    pub layer_dims: Vec<usize>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

/// Parameter gradients, same shapes as the model.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

/// Training hyperparameters. Defaults follow the stated recipe: Adam for
/// 20 epochs, starting learning rate 1e-3, exponential decay 0.96.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub lr0: f64,
    pub decay: f64,
    pub batch_size: usize,
    pub seed: u64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_epsilon: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 20,
            lr0: 1e-3,
            decay: 0.96,
            batch_size: 32,
            seed: 0,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_epsilon: 1e-8,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs < 1 {
            return Err(Error::Validation("epochs must be at least 1".to_string()));
        }
        if !(self.lr0 > 0.0) {
            return Err(Error::Validation("lr0 must be positive".to_string()));
        }
        if !(self.decay > 0.0 && self.decay <= 1.0) {
            return Err(Error::Validation("decay must lie in (0, 1]".to_string()));
        }
        if self.batch_size < 1 {
            return Err(Error::Validation("batch_size must be at least 1".to_string()));
        }
        Ok(())
    }
}

/// Per-epoch training log entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpochStats {
    pub epoch: usize,
    pub learning_rate: f64,
    pub loss: f64,
    pub accuracy: f64,
}

impl MlpModel {
    /// Fan-balanced uniform weights in ±sqrt(6/(fan_in+fan_out)), zero biases.
    pub fn init(layer_dims: &[usize], rng: &mut ChaCha8Rng) -> MlpModel {
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for pair in layer_dims.windows(2) {
            let (fan_in, fan_out) = (pair[0], pair[1]);
            let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
            let w: Vec<f64> = (0..fan_in * fan_out)
                .map(|_| rng.gen_range(-limit..=limit))
                .collect();
            weights.push(w);
            biases.push(vec![0.0; fan_out]);
        }
        MlpModel { layer_dims: layer_dims.to_vec(), weights, biases }
    }

    pub fn num_weight_layers(&self) -> usize {
        self.weights.len()
    }

    pub fn input_dim(&self) -> usize {
        self.layer_dims[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_dims.last().unwrap()
    }

    /// Per-layer activations for one input. The last entry is the softmax
    /// output; earlier entries are post-ReLU hidden activations.
    fn forward_trace(&self, input: &[f64]) -> Vec<Vec<f64>> {
        debug_assert_eq!(input.len(), self.input_dim());
        let last = self.num_weight_layers() - 1;
        let mut activations = Vec::with_capacity(last + 1);
        let mut current = input.to_vec();
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let out_dim = self.layer_dims[l + 1];
            let in_dim = self.layer_dims[l];
            let mut z = b.clone();
            for (o, z_o) in z.iter_mut().enumerate() {
                let row = &w[o * in_dim..(o + 1) * in_dim];
                for (wi, xi) in row.iter().zip(&current) {
                    *z_o += wi * xi;
                }
            }
            debug_assert_eq!(z.len(), out_dim);
            if l == last {
                softmax_in_place(&mut z);
            } else {
                for v in &mut z {
                    if *v < 0.0 {
                        *v = 0.0;
                    }
                }
            }
            activations.push(z.clone());
            current = z;
        }
        activations
    }

    /// Class-probability vector for one input.
    pub fn forward(&self, input: &[f64]) -> Result<Vec<f64>> {
        if input.len() != self.input_dim() {
            return Err(Error::Validation(format!(
                "expected {} features, got {}",
                self.input_dim(),
                input.len()
            )));
        }
        if input.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numeric("non-finite input feature".to_string()));
        }
        let probs = self.forward_trace(input).pop().unwrap();
        if probs.iter().any(|p| !p.is_finite()) {
            return Err(Error::Numeric("non-finite softmax output".to_string()));
        }
        Ok(probs)
    }
}

/// Numerically stable softmax (max subtraction).
fn softmax_in_place(z: &mut [f64]) {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in z.iter_mut() {
        *v = (*v - max).exp();
        sum += *v;
    }
    for v in z.iter_mut() {
        *v /= sum;
    }
}

/// Argmax with ties broken toward the lowest class index.
pub fn argmax(probs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &p) in probs.iter().enumerate().skip(1) {
        if p > probs[best] {
            best = i;
        }
    }
    best
}

/// Mean cross-entropy over the batch and its exact analytic gradients.
pub fn loss_and_gradients(
    model: &MlpModel,
    inputs: &[Vec<f64>],
    labels: &[u8],
) -> Result<(f64, Gradients)> {
    if inputs.is_empty() {
        return Err(Error::Validation("batch must be non-empty".to_string()));
    }
    debug_assert_eq!(inputs.len(), labels.len());

    let n = inputs.len() as f64;
    let last = model.num_weight_layers() - 1;
    let mut grads = Gradients {
        weights: model.weights.iter().map(|w| vec![0.0; w.len()]).collect(),
        biases: model.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
    };
    let mut loss = 0.0;

    for (input, &label) in inputs.iter().zip(labels) {
        let activations = model.forward_trace(input);
        let probs = &activations[last];
        let p_true = probs[label as usize].max(1e-300);
        loss -= p_true.ln();

        // softmax + cross-entropy: delta = p - onehot, scaled by 1/n
        let mut delta: Vec<f64> = probs.iter().map(|&p| p / n).collect();
        delta[label as usize] -= 1.0 / n;

        for l in (0..=last).rev() {
            let in_dim = model.layer_dims[l];
            let prev: &[f64] = if l == 0 { input } else { &activations[l - 1] };
            let dw = &mut grads.weights[l];
            for (o, &d) in delta.iter().enumerate() {
                grads.biases[l][o] += d;
                let row = &mut dw[o * in_dim..(o + 1) * in_dim];
                for (g, &x) in row.iter_mut().zip(prev) {
                    *g += d * x;
                }
            }
            if l > 0 {
                let mut prev_delta = vec![0.0; in_dim];
                let w = &model.weights[l];
                for (o, &d) in delta.iter().enumerate() {
                    let row = &w[o * in_dim..(o + 1) * in_dim];
                    for (pd, &wi) in prev_delta.iter_mut().zip(row) {
                        *pd += d * wi;
                    }
                }
                // ReLU gate on the hidden activation
                for (pd, &a) in prev_delta.iter_mut().zip(prev) {
                    if a <= 0.0 {
                        *pd = 0.0;
                    }
                }
                delta = prev_delta;
            }
        }
    }
    Ok((loss / n, grads))
}

/// Adam first/second moment accumulators plus the step counter.
#[derive(Debug, Clone)]
pub struct AdamState {
    pub m_weights: Vec<Vec<f64>>,
    pub v_weights: Vec<Vec<f64>>,
    pub m_biases: Vec<Vec<f64>>,
    pub v_biases: Vec<Vec<f64>>,
    pub step: u64,
}

impl AdamState {
    pub fn new(model: &MlpModel) -> AdamState {
        AdamState {
            m_weights: model.weights.iter().map(|w| vec![0.0; w.len()]).collect(),
            v_weights: model.weights.iter().map(|w| vec![0.0; w.len()]).collect(),
            m_biases: model.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
            v_biases: model.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
            step: 0,
        }
    }
}

/// One Adam update with bias correction.
pub fn adam_step(
    model: &mut MlpModel,
    state: &mut AdamState,
    grads: &Gradients,
    lr: f64,
    cfg: &TrainConfig,
) {
    state.step += 1;
    let t = state.step as i32;
    let bc1 = 1.0 - cfg.adam_beta1.powi(t);
    let bc2 = 1.0 - cfg.adam_beta2.powi(t);

    let update = |param: &mut [f64], m: &mut [f64], v: &mut [f64], g: &[f64]| {
        for i in 0..param.len() {
            m[i] = cfg.adam_beta1 * m[i] + (1.0 - cfg.adam_beta1) * g[i];
            v[i] = cfg.adam_beta2 * v[i] + (1.0 - cfg.adam_beta2) * g[i] * g[i];
            let m_hat = m[i] / bc1;
            let v_hat = v[i] / bc2;
            param[i] -= lr * m_hat / (v_hat.sqrt() + cfg.adam_epsilon);
        }
    };

    for l in 0..model.num_weight_layers() {
        update(
            &mut model.weights[l],
            &mut state.m_weights[l],
            &mut state.v_weights[l],
            &grads.weights[l],
        );
        update(
            &mut model.biases[l],
            &mut state.m_biases[l],
            &mut state.v_biases[l],
            &grads.biases[l],
        );
    }
}

/// Train the credit-default network on standardized features.
///
/// Epoch `e` uses learning rate `lr0 * decay^e`; batches are a fresh seeded
/// shuffle each epoch.
pub fn train(
    features: &[Vec<f64>],
    labels: &[u8],
    cfg: &TrainConfig,
) -> Result<(MlpModel, Vec<EpochStats>)> {
    cfg.validate()?;
    if features.is_empty() {
        return Err(Error::Validation("training set is empty".to_string()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut model = MlpModel::init(&CREDIT_DIMS, &mut rng);
    let mut state = AdamState::new(&model);
    let mut history = Vec::with_capacity(cfg.epochs);

    let mut order: Vec<usize> = (0..features.len()).collect();
    for epoch in 0..cfg.epochs {
        let lr = cfg.lr0 * cfg.decay.powi(epoch as i32);
        order.shuffle(&mut rng);

        let mut epoch_loss = 0.0;
        for chunk in order.chunks(cfg.batch_size) {
            let batch_inputs: Vec<Vec<f64>> =
                chunk.iter().map(|&i| features[i].clone()).collect();
            let batch_labels: Vec<u8> = chunk.iter().map(|&i| labels[i]).collect();
            let (loss, grads) = loss_and_gradients(&model, &batch_inputs, &batch_labels)?;
            adam_step(&mut model, &mut state, &grads, lr, cfg);
            epoch_loss += loss * chunk.len() as f64;
        }

        let mut correct = 0usize;
        for (x, &y) in features.iter().zip(labels) {
            let probs = model.forward_trace(x).pop().unwrap();
            if argmax(&probs) == y as usize {
                correct += 1;
            }
        }
        history.push(EpochStats {
            epoch,
            learning_rate: lr,
            loss: epoch_loss / features.len() as f64,
            accuracy: correct as f64 / features.len() as f64,
        });
    }
    Ok((model, history))
}

/// Run one raw record through the model, deriving its demographics.
pub fn predict(
    model: &MlpModel,
    record: &ClientRecord,
    params: &Standardization,
) -> Result<PredictionRecord> {
    let features = params.apply(&record.features);
    let probs = model.forward(&features)?;
    let predicted = argmax(&probs);
    Ok(PredictionRecord {
        id: record.id,
        true_label: record.label,
        predicted_label: predicted as u8,
        confidence: probs[predicted],
        demographics: derive_demographics(record)?,
    })
}

/// Persisted model: parameters plus everything needed to reproduce and apply it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub layer_dims: Vec<usize>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
    pub activation: String,
    pub standardization: Standardization,
    pub train_config: TrainConfig,
}

pub const ACTIVATION_TAG: &str = "relu-hidden/softmax-output";

pub fn save_model(model: &MlpModel, params: &Standardization, cfg: &TrainConfig, path: &Path) -> Result<()> {
    let file = ModelFile {
        layer_dims: model.layer_dims.clone(),
        weights: model.weights.clone(),
        biases: model.biases.clone(),
        activation: ACTIVATION_TAG.to_string(),
        standardization: params.clone(),
        train_config: cfg.clone(),
    };
    let json = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, json + "\n")?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<(MlpModel, Standardization, TrainConfig)> {
    let text = std::fs::read_to_string(path)?;
    let file: ModelFile = serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("model file {}: {e}", path.display())))?;

    if file.layer_dims.len() < 2 {
        return Err(Error::Format("model file has fewer than 2 layer dims".to_string()));
    }
    if file.weights.len() != file.layer_dims.len() - 1 || file.biases.len() != file.weights.len() {
        return Err(Error::Format(format!(
            "expected {} weight layers, file has {}",
            file.layer_dims.len() - 1,
            file.weights.len()
        )));
    }
    for (l, pair) in file.layer_dims.windows(2).enumerate() {
        let (in_dim, out_dim) = (pair[0], pair[1]);
        if file.weights[l].len() != in_dim * out_dim {
            return Err(Error::Format(format!(
                "layer {l}: expected {}x{} weights, got {} values",
                out_dim,
                in_dim,
                file.weights[l].len()
            )));
        }
        if file.biases[l].len() != out_dim {
            return Err(Error::Format(format!(
                "layer {l}: expected {out_dim} biases, got {}",
                file.biases[l].len()
            )));
        }
    }
    for w in file.weights.iter().flatten().chain(file.biases.iter().flatten()) {
        if !w.is_finite() {
            return Err(Error::Format("model file contains non-finite parameter".to_string()));
        }
    }

    let model = MlpModel {
        layer_dims: file.layer_dims,
        weights: file.weights,
        biases: file.biases,
    };
    Ok((model, file.standardization, file.train_config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn init_is_deterministic_with_expected_shapes() {
        let a = MlpModel::init(&CREDIT_DIMS, &mut rng(7));
        let b = MlpModel::init(&CREDIT_DIMS, &mut rng(7));
        assert_eq!(a, b);
        assert_eq!(a.weights.len(), 5);
        assert_eq!(a.weights[0].len(), 10 * 23);
        assert_eq!(a.weights[4].len(), 2 * 10);
        for b in &a.biases {
            assert!(b.iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn zero_weight_model_outputs_uniform() {
        let mut model = MlpModel::init(&CREDIT_DIMS, &mut rng(1));
        for w in &mut model.weights {
            w.iter_mut().for_each(|x| *x = 0.0);
        }
        let probs = model.forward(&vec![0.3; 23]).unwrap();
        assert!((probs[0] - 0.5).abs() < 1e-15);
        assert!((probs[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tiny_network_matches_hand_computed_probabilities() {
        // dims [2,2,2]; hidden pre-activations [-1, 1.25] -> ReLU [0, 1.25];
        // output logits [2.6, 0.525]; softmax computed offline.
        let model = MlpModel {
            layer_dims: vec![2, 2, 2],
            weights: vec![vec![1.0, -1.0, 0.5, 0.5], vec![1.0, 2.0, -1.0, 0.5]],
            biases: vec![vec![0.0, -0.25], vec![0.1, -0.1]],
        };
        let probs = model.forward(&[1.0, 2.0]).unwrap();
        assert!((probs[0] - 0.8884494598171035).abs() < 1e-12, "{}", probs[0]);
        assert!((probs[1] - 0.11155054018289645).abs() < 1e-12, "{}", probs[1]);
    }

    #[test]
    fn uniform_output_loss_is_ln2() {
        let mut model = MlpModel::init(&[4, 2], &mut rng(2));
        model.weights[0].iter_mut().for_each(|x| *x = 0.0);
        let (loss, _) = loss_and_gradients(&model, &[vec![1.0; 4]], &[1]).unwrap();
        assert!((loss - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn confident_correct_prediction_loss_near_zero() {
        let model = MlpModel {
            layer_dims: vec![1, 2],
            weights: vec![vec![50.0, -50.0]],
            biases: vec![vec![0.0, 0.0]],
        };
        let (loss, _) = loss_and_gradients(&model, &[vec![1.0]], &[0]).unwrap();
        assert!(loss < 1e-12);
    }

    /// Smallest |pre-activation| over all hidden units and samples, computed
    /// independently of the implementation's forward pass.
    fn min_abs_hidden_preactivation(model: &MlpModel, inputs: &[Vec<f64>]) -> f64 {
        let mut min = f64::INFINITY;
        for input in inputs {
            let mut current = input.clone();
            for l in 0..model.num_weight_layers() - 1 {
                let in_dim = model.layer_dims[l];
                let out_dim = model.layer_dims[l + 1];
                let mut next = vec![0.0; out_dim];
                for o in 0..out_dim {
                    let mut z = model.biases[l][o];
                    for (wi, xi) in
                        model.weights[l][o * in_dim..(o + 1) * in_dim].iter().zip(&current)
                    {
                        z += wi * xi;
                    }
                    min = min.min(z.abs());
                    next[o] = z.max(0.0);
                }
                current = next;
            }
        }
        min
    }

    fn finite_difference_check(dims: &[usize], seed: u64) -> f64 {
        // resample until every hidden pre-activation is clear of the ReLU
        // kink, where central differences straddle the nondifferentiability
        let mut r = rng(seed);
        let n = 5;
        let (model, inputs) = loop {
            let model = MlpModel::init(dims, &mut r);
            let inputs: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dims[0]).map(|_| r.gen_range(-2.0..2.0)).collect())
                .collect();
            if min_abs_hidden_preactivation(&model, &inputs) > 1e-3 {
                break (model, inputs);
            }
        };
        let labels: Vec<u8> = (0..n).map(|_| r.gen_range(0..dims[dims.len() - 1]) as u8).collect();
        let (_, grads) = loss_and_gradients(&model, &inputs, &labels).unwrap();

        let h = 1e-5;
        let mut max_rel = 0.0f64;
        for l in 0..model.num_weight_layers() {
            for i in 0..model.weights[l].len() {
                let mut plus = model.clone();
                plus.weights[l][i] += h;
                let mut minus = model.clone();
                minus.weights[l][i] -= h;
                let (lp, _) = loss_and_gradients(&plus, &inputs, &labels).unwrap();
                let (lm, _) = loss_and_gradients(&minus, &inputs, &labels).unwrap();
                let numeric = (lp - lm) / (2.0 * h);
                let analytic = grads.weights[l][i];
                let denom = analytic.abs().max(numeric.abs()).max(1e-8);
                max_rel = max_rel.max((analytic - numeric).abs() / denom);
            }
            for i in 0..model.biases[l].len() {
                let mut plus = model.clone();
                plus.biases[l][i] += h;
                let mut minus = model.clone();
                minus.biases[l][i] -= h;
                let (lp, _) = loss_and_gradients(&plus, &inputs, &labels).unwrap();
                let (lm, _) = loss_and_gradients(&minus, &inputs, &labels).unwrap();
                let numeric = (lp - lm) / (2.0 * h);
                let analytic = grads.biases[l][i];
                let denom = analytic.abs().max(numeric.abs()).max(1e-8);
                max_rel = max_rel.max((analytic - numeric).abs() / denom);
            }
        }
        max_rel
    }

    #[test]
    fn analytic_gradients_match_central_differences() {
        for (dims, seed) in [
            (vec![3usize, 4, 2], 3u64),
            (vec![5, 6, 4, 2], 4),
            (vec![4, 3, 3, 3, 2], 5),
        ] {
            let err = finite_difference_check(&dims, seed);
            assert!(err < 1e-4, "dims {dims:?}: max relative error {err}");
        }
    }

    #[test]
    fn adam_zero_gradient_leaves_parameters_unchanged() {
        let mut model = MlpModel::init(&[3, 2], &mut rng(6));
        let before = model.clone();
        let mut state = AdamState::new(&model);
        let grads = Gradients {
            weights: vec![vec![0.0; 6]],
            biases: vec![vec![0.0; 2]],
        };
        adam_step(&mut model, &mut state, &grads, 1e-3, &TrainConfig::default());
        assert_eq!(model, before);
        assert_eq!(state.step, 1);
    }

    #[test]
    fn adam_first_step_moves_by_lr_sign() {
        let mut model = MlpModel::init(&[1, 2], &mut rng(8));
        let before = model.clone();
        let mut state = AdamState::new(&model);
        let grads = Gradients {
            weights: vec![vec![0.73, -1.9]],
            biases: vec![vec![0.0, 0.0]],
        };
        let lr = 1e-3;
        adam_step(&mut model, &mut state, &grads, lr, &TrainConfig::default());
        let d0 = model.weights[0][0] - before.weights[0][0];
        let d1 = model.weights[0][1] - before.weights[0][1];
        assert!((d0 + lr).abs() < 1e-9, "{d0}");
        assert!((d1 - lr).abs() < 1e-9, "{d1}");
    }

    #[test]
    fn adam_matches_scalar_oracle_on_quadratic() {
        // hand-rolled scalar Adam minimizing f(x) = x^2 from x = 1
        let cfg = TrainConfig::default();
        let lr = 0.1;
        let (mut x, mut m, mut v) = (1.0f64, 0.0f64, 0.0f64);
        let mut expected = Vec::new();
        for t in 1..=3 {
            let g = 2.0 * x;
            m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
            v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g * g;
            let m_hat = m / (1.0 - cfg.adam_beta1.powi(t));
            let v_hat = v / (1.0 - cfg.adam_beta2.powi(t));
            x -= lr * m_hat / (v_hat.sqrt() + cfg.adam_epsilon);
            expected.push(x);
        }

        let mut model = MlpModel {
            layer_dims: vec![1, 1],
            weights: vec![vec![1.0]],
            biases: vec![vec![0.0]],
        };
        let mut state = AdamState::new(&model);
        for &e in &expected {
            let grads = Gradients {
                weights: vec![vec![2.0 * model.weights[0][0]]],
                biases: vec![vec![0.0]],
            };
            adam_step(&mut model, &mut state, &grads, lr, &cfg);
            assert!((model.weights[0][0] - e).abs() < 1e-12);
        }
    }

    #[test]
    fn train_rejects_zero_epochs() {
        let cfg = TrainConfig { epochs: 0, ..TrainConfig::default() };
        assert!(train(&[vec![0.0; 23]], &[0], &cfg).is_err());
    }

    #[test]
    fn train_is_deterministic_with_exact_lr_schedule() {
        let mut r = rng(10);
        let features: Vec<Vec<f64>> = (0..64)
            .map(|_| (0..23).map(|_| r.gen_range(-1.0..1.0)).collect())
            .collect();
        let labels: Vec<u8> = (0..64).map(|i| (i % 2) as u8).collect();
        let cfg = TrainConfig { epochs: 3, seed: 42, ..TrainConfig::default() };
        let (model_a, hist_a) = train(&features, &labels, &cfg).unwrap();
        let (model_b, _) = train(&features, &labels, &cfg).unwrap();
        assert_eq!(model_a, model_b);
        assert_eq!(hist_a.len(), 3);
        for (e, stats) in hist_a.iter().enumerate() {
            assert_eq!(stats.learning_rate, 1e-3 * 0.96f64.powi(e as i32));
        }
    }

    #[test]
    fn predict_breaks_ties_toward_class_zero() {
        assert_eq!(argmax(&[0.5, 0.5]), 0);
        assert_eq!(argmax(&[0.3, 0.7]), 1);
    }

    #[test]
    fn save_load_round_trip_preserves_forward_outputs() {
        let mut r = rng(12);
        let model = MlpModel::init(&CREDIT_DIMS, &mut r);
        let params = Standardization {
            mean: vec![0.0; 23],
            std_dev: vec![1.0; 23],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        save_model(&model, &params, &TrainConfig::default(), &path).unwrap();
        let (loaded, loaded_params, _) = load_model(&path).unwrap();
        assert_eq!(loaded_params, params);
        for _ in 0..100 {
            let x: Vec<f64> = (0..23).map(|_| r.gen_range(-3.0..3.0)).collect();
            let a = model.forward(&x).unwrap();
            let b = loaded.forward(&x).unwrap();
            assert_eq!(a, b); // bitwise
        }
    }

    #[test]
    fn load_rejects_truncated_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        std::fs::write(&path, "{\"layer_dims\": [23, 10").unwrap();
        assert!(matches!(load_model(&path), Err(Error::Format(_))));
    }

    #[test]
    fn load_rejects_wrong_layer_dims() {
        let mut r = rng(13);
        let model = MlpModel::init(&CREDIT_DIMS, &mut r);
        let params = Standardization { mean: vec![0.0; 23], std_dev: vec![1.0; 23] };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        save_model(&model, &params, &TrainConfig::default(), &path).unwrap();

        let mut file: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        file["layer_dims"][1] = serde_json::json!(11);
        std::fs::write(&path, file.to_string()).unwrap();
        match load_model(&path) {
            Err(Error::Format(msg)) => assert!(msg.contains("layer 0"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn softmax_outputs_are_a_distribution(
            seed in any::<u64>(),
            input in proptest::collection::vec(-50.0f64..50.0, 23),
        ) {
            let model = MlpModel::init(&CREDIT_DIMS, &mut rng(seed));
            let probs = model.forward(&input).unwrap();
            let sum: f64 = probs.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            prop_assert!(probs.iter().all(|&p| (0.0..=1.0).contains(&p)));
            prop_assert!(probs[argmax(&probs)] >= 0.5 - 1e-15);
        }
    }
}
