#pragma once
// Training loss formulas as pure functions over plain vectors. No optimizer
// and no network coupling; everything here is testable on toy batches.
//
// Sign conventions follow the training formulas as written: entropy_term
// returns sum pi*log(pi) (negative entropy, <= 0), and total_loss adds the
// weighted components without re-deriving signs. Whether +iota*H should in
// fact discourage determinism under the usual convention is left to the
// caller; see README.

#include <vector>

namespace alpha {

struct LossCoefficients {
    double alpha = 1.0;      // policy term
    double beta = 0.08;      // value term
    double iota = 0.01;      // entropy term
    double zeta = 0.5;       // blocking term
    double eta_coef = 0.5;   // valid-action term
};

// Toy rollout batch; all per-sample arrays share one length.
struct Batch {
    std::vector<std::vector<double>> policies;        // 5-simplex rows
    std::vector<std::vector<double>> old_policies;    // 5-simplex rows
    std::vector<int> actions;                         // chosen action indices
    std::vector<double> returns;                      // G_t
    std::vector<double> values;                       // V(o_t)
    std::vector<double> blocking_preds;               // in [0, 1]
    std::vector<double> blocking_truth;               // in {0, 1}
    std::vector<std::vector<double>> valid_masks;     // 5-dim {0,1}
    std::vector<std::vector<double>> sigmoid_policies;  // policy through sigmoid
    std::vector<std::vector<double>> expert_policies; // 5-simplex rows
};

// (G - V), normalized to zero mean and unit population std (eps 1e-8).
std::vector<double> advantage_estimate(const std::vector<double>& returns,
                                       const std::vector<double>& values);

// Clipped surrogate: mean of -min(r*A, clip(r, 1-eps, 1+eps)*A). With
// strict_verbatim the second branch drops the advantage factor, matching the
// formula as literally written.
double ppo_policy_loss(const std::vector<double>& ratios, const std::vector<double>& advantages,
                       double epsilon, bool strict_verbatim = false);

double value_loss(const std::vector<double>& values, const std::vector<double>& returns);

// sum_a pi(a) ln pi(a) with 0 ln 0 = 0; in [-ln(n_actions), 0].
double entropy_term(const std::vector<double>& policy);

// Mean binary cross-entropy, probabilities clamped to [1e-12, 1 - 1e-12].
double blocking_loss(const std::vector<double>& preds, const std::vector<double>& truths);

// Mean BCE between the sigmoid-activated policy and the valid-action mask,
// averaged over the action dimension as well.
double valid_loss(const std::vector<std::vector<double>>& sigmoid_policy,
                  const std::vector<std::vector<double>>& valid_mask);

// Cross entropy against the expert distribution, mean over samples.
double imitation_loss(const std::vector<std::vector<double>>& policy,
                      const std::vector<std::vector<double>>& expert);

double total_loss(double j_pi, double j_v, double entropy, double j_block, double j_valid,
                  const LossCoefficients& coeffs);

}  // namespace alpha
