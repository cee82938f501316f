#include "alpha/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alpha {

namespace {

constexpr double kProbClamp = 1e-12;

double clamped_log(double p) {
    return std::log(std::clamp(p, kProbClamp, 1.0 - kProbClamp));
}

void require_same_size(size_t a, size_t b, const char* what) {
    if (a != b || a == 0)
        throw std::invalid_argument(std::string(what) + ": inputs must be non-empty, equal-sized");
}

}  // namespace

std::vector<double> advantage_estimate(const std::vector<double>& returns,
                                       const std::vector<double>& values) {
    require_same_size(returns.size(), values.size(), "advantage_estimate");
    const size_t n = returns.size();
    std::vector<double> raw(n);
    double mean = 0;
    for (size_t i = 0; i < n; ++i) {
        raw[i] = returns[i] - values[i];
        mean += raw[i];
    }
    mean /= double(n);
    double var = 0;
    for (double r : raw) var += (r - mean) * (r - mean);
    const double std_dev = std::sqrt(var / double(n));
    for (double& r : raw) r = (r - mean) / (std_dev + 1e-8);
    return raw;
}

double ppo_policy_loss(const std::vector<double>& ratios, const std::vector<double>& advantages,
                       double epsilon, bool strict_verbatim) {
    require_same_size(ratios.size(), advantages.size(), "ppo_policy_loss");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("ppo_policy_loss: epsilon must lie in (0, 1)");
    double acc = 0;
    for (size_t i = 0; i < ratios.size(); ++i) {
        const double clipped = std::clamp(ratios[i], 1.0 - epsilon, 1.0 + epsilon);
        const double second = strict_verbatim ? clipped : clipped * advantages[i];
        acc += -std::min(ratios[i] * advantages[i], second);
    }
    return acc / double(ratios.size());
}

double value_loss(const std::vector<double>& values, const std::vector<double>& returns) {
    require_same_size(values.size(), returns.size(), "value_loss");
    double acc = 0;
    for (size_t i = 0; i < values.size(); ++i)
        acc += (values[i] - returns[i]) * (values[i] - returns[i]);
    return acc / double(values.size());
}

double entropy_term(const std::vector<double>& policy) {
    double acc = 0;
    for (double p : policy)
        if (p > 0) acc += p * std::log(p);
    return acc;
}

double blocking_loss(const std::vector<double>& preds, const std::vector<double>& truths) {
    require_same_size(preds.size(), truths.size(), "blocking_loss");
    double acc = 0;
    for (size_t i = 0; i < preds.size(); ++i)
        acc += -(truths[i] * clamped_log(preds[i]) + (1.0 - truths[i]) * clamped_log(1.0 - preds[i]));
    return acc / double(preds.size());
}

double valid_loss(const std::vector<std::vector<double>>& sigmoid_policy,
                  const std::vector<std::vector<double>>& valid_mask) {
    require_same_size(sigmoid_policy.size(), valid_mask.size(), "valid_loss");
    double acc = 0;
    size_t terms = 0;
    for (size_t t = 0; t < sigmoid_policy.size(); ++t) {
        require_same_size(sigmoid_policy[t].size(), valid_mask[t].size(), "valid_loss row");
        for (size_t a = 0; a < sigmoid_policy[t].size(); ++a) {
            const double u = valid_mask[t][a];
            acc += -(u * clamped_log(sigmoid_policy[t][a]) +
                     (1.0 - u) * clamped_log(1.0 - sigmoid_policy[t][a]));
            ++terms;
        }
    }
    return acc / double(terms);
}

double imitation_loss(const std::vector<std::vector<double>>& policy,
                      const std::vector<std::vector<double>>& expert) {
    require_same_size(policy.size(), expert.size(), "imitation_loss");
    double acc = 0;
    for (size_t t = 0; t < policy.size(); ++t) {
        require_same_size(policy[t].size(), expert[t].size(), "imitation_loss row");
        for (size_t a = 0; a < policy[t].size(); ++a)
            if (expert[t][a] > 0) acc += -expert[t][a] * clamped_log(policy[t][a]);
    }
    return acc / double(policy.size());
}

double total_loss(double j_pi, double j_v, double entropy, double j_block, double j_valid,
                  const LossCoefficients& c) {
    return c.alpha * j_pi + c.beta * j_v + c.iota * entropy + c.zeta * j_block +
           c.eta_coef * j_valid;
}

}  // namespace alpha
