#include "alpha/attention.hpp"

#include <cmath>
#include <stdexcept>

#include "alpha/core.hpp"

namespace alpha {

namespace {

Vector softmax(const Vector& s) {
    const double m = s.maxCoeff();
    Vector e = (s.array() - m).exp();
    return e / e.sum();
}

// dL/ds for y = softmax(s): alpha .* (dalpha - alpha.dot(dalpha))
Vector softmax_backward(const Vector& alpha, const Vector& dalpha) {
    const double dot = alpha.dot(dalpha);
    return alpha.array() * (dalpha.array() - dot);
}

Matrix rand_matrix(int rows, int cols, double bound, Rng& rng) {
    Matrix m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = bound * (2.0 * rng.uniform_real() - 1.0);
    return m;
}

void check_config(const EncoderConfig& c) {
    if (c.d < 1 || c.heads < 1 || c.d % c.heads != 0)
        throw std::invalid_argument("encoder: d must be positive and divisible by heads");
    if (c.input_dim < 1 || c.n_focus < 0 || c.n_self < 0)
        throw std::invalid_argument("encoder: invalid layer configuration");
}

double self_attn_scale(const EncoderConfig& c) {
    return std::sqrt(double(c.scale_full_d ? c.d : c.head_dim()));
}

struct FocusCache {
    Matrix input;
    Matrix k;  // n x d
    Vector q, s, alpha;
};

struct HeadCache {
    Matrix q, k, v;  // n x head_dim
    Matrix beta;     // n x n
};

struct SelfCache {
    Matrix input;
    std::vector<HeadCache> heads;
    Matrix concat;  // pre residual/normalization
    Matrix summed;  // post residual, pre normalization
};

struct EncodeCache {
    Matrix embedded;
    std::vector<FocusCache> focus;
    std::vector<SelfCache> self_layers;
    Matrix output_rows;
};

Matrix focus_forward(const Matrix& u, int ego, const FocusLayerParams& p, FocusCache* cache) {
    const int d = int(u.cols());
    const Vector q = p.wq * u.row(ego).transpose();
    const Matrix k = u * p.wk.transpose();
    const Vector s = (k * q) / std::sqrt(double(d));
    const Vector alpha = softmax(s);
    Matrix out = alpha.asDiagonal() * u;
    if (cache) {
        cache->input = u;
        cache->k = k;
        cache->q = q;
        cache->s = s;
        cache->alpha = alpha;
    }
    return out;
}

// Accumulates parameter grads into gp and returns dL/d(input).
Matrix focus_backward(const FocusCache& c, int ego, const FocusLayerParams& p,
                      const Matrix& grad_out, FocusLayerParams& gp) {
    const int n = int(c.input.rows());
    const int d = int(c.input.cols());
    const double scale = std::sqrt(double(d));

    Vector dalpha(n);
    for (int i = 0; i < n; ++i) dalpha(i) = grad_out.row(i).dot(c.input.row(i));
    Matrix dinput = c.alpha.asDiagonal() * grad_out;

    const Vector ds = softmax_backward(c.alpha, dalpha) / scale;
    const Vector dq = c.k.transpose() * ds;
    const Matrix dk = ds * c.q.transpose();  // n x d

    gp.wq += dq * c.input.row(ego);
    dinput.row(ego) += (p.wq.transpose() * dq).transpose();
    gp.wk += dk.transpose() * c.input;
    dinput += dk * p.wk;
    return dinput;
}

Matrix row_softmax(const Matrix& s) {
    Matrix b(s.rows(), s.cols());
    for (int i = 0; i < s.rows(); ++i) b.row(i) = softmax(s.row(i).transpose()).transpose();
    return b;
}

Matrix self_forward(const Matrix& u, const SelfAttnLayerParams& layer, const EncoderConfig& cfg,
                    SelfCache* cache, std::vector<Matrix>* beta_out) {
    const int n = int(u.rows());
    const int dh = cfg.head_dim();
    const double scale = self_attn_scale(cfg);
    Matrix concat(n, cfg.d);
    if (cache) {
        cache->input = u;
        cache->heads.resize(layer.heads.size());
    }
    for (size_t h = 0; h < layer.heads.size(); ++h) {
        const auto& hp = layer.heads[h];
        const Matrix q = u * hp.wq.transpose();
        const Matrix k = u * hp.wk.transpose();
        const Matrix v = u * hp.wv.transpose();
        const Matrix beta = row_softmax(q * k.transpose() / scale);
        concat.middleCols(int(h) * dh, dh) = beta * v;
        if (cache) cache->heads[h] = {q, k, v, beta};
        if (beta_out) beta_out->push_back(beta);
    }

    Matrix out = concat;
    if (cache) cache->concat = concat;
    if (cfg.residual) out += u;
    if (cache) cache->summed = out;
    if (cfg.layer_norm) {
        for (int i = 0; i < n; ++i) {
            const double mean = out.row(i).mean();
            const double var = (out.row(i).array() - mean).square().mean();
            out.row(i) = (out.row(i).array() - mean) / std::sqrt(var + 1e-8);
        }
    }
    return out;
}

Matrix self_backward(const SelfCache& c, const SelfAttnLayerParams& layer,
                     const EncoderConfig& cfg, const Matrix& normed, Matrix grad_out,
                     SelfAttnLayerParams& gp) {
    const int n = int(c.input.rows());
    const int dh = cfg.head_dim();
    const double scale = self_attn_scale(cfg);

    if (cfg.layer_norm) {
        // rows of `normed` are y = (x - mean) / sqrt(var + eps)
        Matrix dsum(n, cfg.d);
        for (int i = 0; i < n; ++i) {
            const double mean = c.summed.row(i).mean();
            const double var = (c.summed.row(i).array() - mean).square().mean();
            const double inv = 1.0 / std::sqrt(var + 1e-8);
            const auto y = normed.row(i).array();
            const auto dy = grad_out.row(i).array();
            const double dy_mean = dy.mean();
            const double dyy_mean = (dy * y).mean();
            dsum.row(i) = (inv * (dy - dy_mean - y * dyy_mean)).matrix();
        }
        grad_out = dsum;
    }

    Matrix dinput = Matrix::Zero(n, cfg.d);
    if (cfg.residual) dinput += grad_out;

    for (size_t h = 0; h < layer.heads.size(); ++h) {
        const auto& hc = c.heads[h];
        const auto& hp = layer.heads[h];
        auto& hg = gp.heads[h];
        const Matrix gz = grad_out.middleCols(int(h) * dh, dh);

        const Matrix dbeta = gz * hc.v.transpose();
        const Matrix dv = hc.beta.transpose() * gz;
        Matrix ds(n, n);
        for (int i = 0; i < n; ++i)
            ds.row(i) =
                softmax_backward(hc.beta.row(i).transpose(), dbeta.row(i).transpose()).transpose();
        ds /= scale;
        const Matrix dq = ds * hc.k;
        const Matrix dk = ds.transpose() * hc.q;

        hg.wq += dq.transpose() * c.input;
        hg.wk += dk.transpose() * c.input;
        hg.wv += dv.transpose() * c.input;
        dinput += dq * hp.wq + dk * hp.wk + dv * hp.wv;
    }
    return dinput;
}

Vector encode_cached(const Matrix& features, int ego_index, const EncoderParams& params,
                     EncodeCache* cache, AttentionTrace* trace) {
    check_config(params.config);
    if (features.cols() != params.config.input_dim)
        throw std::invalid_argument("encode: feature dimension does not match the encoder");
    if (ego_index < 0 || ego_index >= features.rows())
        throw std::invalid_argument("encode: ego_index out of range");

    Matrix u = embed(features, params.w_embed, params.b_embed);
    if (cache) cache->embedded = u;

    for (int l = 0; l < params.config.n_focus; ++l) {
        FocusCache fc;
        const bool want = cache || trace;
        u = focus_forward(u, ego_index, params.focus[size_t(l)], want ? &fc : nullptr);
        if (trace) trace->focus_alphas.push_back(fc.alpha);
        if (cache) cache->focus.push_back(std::move(fc));
    }

    for (int l = 0; l < params.config.n_self; ++l) {
        SelfCache sc;
        std::vector<Matrix> betas;
        u = self_forward(u, params.self_attn[size_t(l)], params.config, cache ? &sc : nullptr,
                         trace ? &betas : nullptr);
        if (cache) cache->self_layers.push_back(std::move(sc));
        if (trace) trace->self_betas.push_back(std::move(betas));
    }

    if (cache) cache->output_rows = u;
    return u.row(ego_index).transpose();
}

template <typename ParamsT, typename Fn>
void for_each_block(ParamsT& p, Fn&& fn) {
    fn(p.w_embed.data(), size_t(p.w_embed.size()));
    fn(p.b_embed.data(), size_t(p.b_embed.size()));
    for (auto& f : p.focus) {
        fn(f.wq.data(), size_t(f.wq.size()));
        fn(f.wk.data(), size_t(f.wk.size()));
    }
    for (auto& s : p.self_attn)
        for (auto& h : s.heads) {
            fn(h.wq.data(), size_t(h.wq.size()));
            fn(h.wk.data(), size_t(h.wk.size()));
            fn(h.wv.data(), size_t(h.wv.size()));
        }
}

}  // namespace

EncoderConfig EncoderConfig::paper_scale(int input_dim) {
    EncoderConfig c;
    c.input_dim = input_dim;
    c.d = 512;
    c.heads = 8;
    return c;
}

EncoderParams EncoderParams::seeded(const EncoderConfig& config, uint64_t seed) {
    check_config(config);
    Rng rng(seed);
    EncoderParams p;
    p.config = config;
    p.w_embed = rand_matrix(config.d, config.input_dim, 1.0 / std::sqrt(double(config.input_dim)),
                            rng);
    p.b_embed = Vector::Zero(config.d);
    const double wb = 1.0 / std::sqrt(double(config.d));
    for (int l = 0; l < config.n_focus; ++l)
        p.focus.push_back({rand_matrix(config.d, config.d, wb, rng),
                           rand_matrix(config.d, config.d, wb, rng)});
    for (int l = 0; l < config.n_self; ++l) {
        SelfAttnLayerParams layer;
        for (int h = 0; h < config.heads; ++h)
            layer.heads.push_back({rand_matrix(config.head_dim(), config.d, wb, rng),
                                   rand_matrix(config.head_dim(), config.d, wb, rng),
                                   rand_matrix(config.head_dim(), config.d, wb, rng)});
        p.self_attn.push_back(std::move(layer));
    }
    return p;
}

EncoderParams EncoderParams::zeros_like(const EncoderParams& other) {
    EncoderParams g = other;
    for_each_block(g, [](double* data, size_t n) {
        for (size_t i = 0; i < n; ++i) data[i] = 0.0;
    });
    return g;
}

size_t EncoderParams::scalar_count() const {
    size_t total = 0;
    for_each_block(*this, [&](const double*, size_t n) { total += n; });
    return total;
}

double EncoderParams::get_scalar(size_t i) const {
    double out = 0;
    size_t off = 0;
    for_each_block(*this, [&](const double* data, size_t n) {
        if (i >= off && i < off + n) out = data[i - off];
        off += n;
    });
    return out;
}

void EncoderParams::set_scalar(size_t i, double v) {
    size_t off = 0;
    for_each_block(*this, [&](double* data, size_t n) {
        if (i >= off && i < off + n) data[i - off] = v;
        off += n;
    });
}

Matrix embed(const Matrix& features, const Matrix& w_embed, const Vector& b_embed) {
    if (features.cols() != w_embed.cols())
        throw std::invalid_argument("embed: feature dimension does not match W");
    return (features * w_embed.transpose()).rowwise() + b_embed.transpose();
}

Matrix attention_focus_layer(const Matrix& u, int ego_index, const Matrix& wq, const Matrix& wk,
                             Vector* alpha_out) {
    if (ego_index < 0 || ego_index >= u.rows())
        throw std::invalid_argument("attention_focus_layer: ego_index out of range");
    FocusCache cache;
    const FocusLayerParams p{wq, wk};
    Matrix out = focus_forward(u, ego_index, p, &cache);
    if (alpha_out) *alpha_out = cache.alpha;
    return out;
}

Matrix self_attention_layer(const Matrix& u, const SelfAttnLayerParams& layer,
                            const EncoderConfig& config, std::vector<Matrix>* beta_out) {
    return self_forward(u, layer, config, nullptr, beta_out);
}

Vector encode(const Matrix& features, int ego_index, const EncoderParams& params,
              AttentionTrace* trace) {
    return encode_cached(features, ego_index, params, nullptr, trace);
}

double encode_loss_and_grads(const Matrix& features, int ego_index, const EncoderParams& params,
                             EncoderParams& grads) {
    EncodeCache cache;
    const Vector z = encode_cached(features, ego_index, params, &cache, nullptr);
    const double loss = 0.5 * z.squaredNorm();

    Matrix grad = Matrix::Zero(cache.output_rows.rows(), cache.output_rows.cols());
    grad.row(ego_index) = z.transpose();

    for (int l = params.config.n_self - 1; l >= 0; --l) {
        const Matrix normed = l + 1 < params.config.n_self
                                  ? cache.self_layers[size_t(l) + 1].input
                                  : cache.output_rows;
        grad = self_backward(cache.self_layers[size_t(l)], params.self_attn[size_t(l)],
                             params.config, normed, grad, grads.self_attn[size_t(l)]);
    }
    for (int l = params.config.n_focus - 1; l >= 0; --l)
        grad = focus_backward(cache.focus[size_t(l)], ego_index, params.focus[size_t(l)], grad,
                              grads.focus[size_t(l)]);

    // embed backward: U = F W^T + b
    grads.w_embed += grad.transpose() * features;
    grads.b_embed += grad.colwise().sum().transpose();
    return loss;
}

double finite_diff_gradcheck(const EncoderConfig& config, int n_rows, int ego_index,
                             uint64_t probe_seed, double analytic_grad_scale) {
    EncoderParams params = EncoderParams::seeded(config, probe_seed);
    Rng rng(probe_seed ^ 0x9e3779b97f4a7c15ull);
    Matrix features(n_rows, config.input_dim);
    for (int i = 0; i < n_rows; ++i)
        for (int j = 0; j < config.input_dim; ++j)
            features(i, j) = 2.0 * rng.uniform_real() - 1.0;

    EncoderParams grads = EncoderParams::zeros_like(params);
    encode_loss_and_grads(features, ego_index, params, grads);

    const double h = 1e-5;
    double worst = 0;
    const size_t count = params.scalar_count();
    for (size_t i = 0; i < count; ++i) {
        const double saved = params.get_scalar(i);
        params.set_scalar(i, saved + h);
        const double up = 0.5 * encode(features, ego_index, params).squaredNorm();
        params.set_scalar(i, saved - h);
        const double down = 0.5 * encode(features, ego_index, params).squaredNorm();
        params.set_scalar(i, saved);
        const double numeric = (up - down) / (2 * h);
        const double analytic = grads.get_scalar(i) * analytic_grad_scale;
        const double rel = std::abs(analytic - numeric) /
                           std::max({1.0, std::abs(analytic), std::abs(numeric)});
        worst = std::max(worst, rel);
    }
    return worst;
}

// ---- heads ----

HeadParams HeadParams::seeded(int d, int local_dim, uint64_t seed) {
    if (d < 1 || local_dim < 0) throw std::invalid_argument("HeadParams: bad dimensions");
    Rng rng(seed);
    HeadParams p;
    p.d = d;
    p.concat_dim = 2 * d + local_dim + 3;
    const double bi = 1.0 / std::sqrt(double(p.concat_dim));
    const double bd = 1.0 / std::sqrt(double(d));
    p.w_in = rand_matrix(d, p.concat_dim, bi, rng);
    p.b_in = Vector::Zero(d);
    p.w_res1 = rand_matrix(d, d, bd, rng);
    p.w_res2 = rand_matrix(d, d, bd, rng);
    p.b_res1 = Vector::Zero(d);
    p.b_res2 = Vector::Zero(d);
    p.w_lstm_x = rand_matrix(4 * d, d, bd, rng);
    p.w_lstm_h = rand_matrix(4 * d, d, bd, rng);
    p.b_lstm = Vector::Zero(4 * d);
    p.w_policy = rand_matrix(5, d, bd, rng);
    p.b_policy = Vector::Zero(5);
    p.w_value = rand_matrix(1, d, bd, rng);
    p.b_value = Vector::Zero(1);
    p.w_block = rand_matrix(1, d, bd, rng);
    p.b_block = Vector::Zero(1);
    return p;
}

RecurrentState RecurrentState::zero(int d) {
    return {Vector::Zero(d), Vector::Zero(d)};
}

HeadOutput policy_head_forward(const Vector& static_feat, const Vector& intent_feat,
                               const Vector& local_feat, const Vector& goal_vec,
                               const HeadParams& params, const RecurrentState& state) {
    if (int(static_feat.size() + intent_feat.size() + local_feat.size() + goal_vec.size()) !=
        params.concat_dim)
        throw std::invalid_argument("policy_head_forward: concatenated size mismatch");
    if (goal_vec.size() != 3)
        throw std::invalid_argument("policy_head_forward: goal_vec must have 3 entries");

    Vector x(params.concat_dim);
    x << static_feat, intent_feat, local_feat, goal_vec;

    const Vector proj = params.w_in * x + params.b_in;
    const Vector hidden = (params.w_res1 * proj + params.b_res1).array().max(0.0);
    const Vector res = ((params.w_res2 * hidden + params.b_res2 + proj).array().max(0.0)).matrix();

    const int d = params.d;
    const Vector gates = params.w_lstm_x * res + params.w_lstm_h * state.h + params.b_lstm;
    auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    HeadOutput out;
    out.state.c = Vector(d);
    out.state.h = Vector(d);
    for (int k = 0; k < d; ++k) {
        const double gi = sigmoid(gates(k));
        const double gf = sigmoid(gates(d + k));
        const double gg = std::tanh(gates(2 * d + k));
        const double go = sigmoid(gates(3 * d + k));
        out.state.c(k) = gf * state.c(k) + gi * gg;
        out.state.h(k) = go * std::tanh(out.state.c(k));
    }

    out.policy = softmax(params.w_policy * out.state.h + params.b_policy);
    out.value = (params.w_value * out.state.h + params.b_value)(0);
    out.blocking = sigmoid((params.w_block * out.state.h + params.b_block)(0));
    return out;
}

}  // namespace alpha
