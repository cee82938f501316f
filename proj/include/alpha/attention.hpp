#pragma once
// Toy-scale numeric encoder: feature embedding, stacked attention-focusing
// layers, multi-head self-attention, ego-row extraction, and the downstream
// residual/LSTM/output heads. Double precision throughout, with a manual
// backward pass verified by central finite differences.
//
// The focusing layer rescales each embedding row by the ego's attention
// weight for it (u'_i = alpha_i * u_i); it never mixes rows. Mixing happens
// only in the self-attention layers.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace alpha {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct EncoderConfig {
    int input_dim = 5;  // 5 for the static graph, 9 for the intent graph
    int d = 8;          // embedding dimension (512 at full scale)
    int n_focus = 2;    // stacked attention-focusing layers
    int n_self = 2;     // stacked self-attention layers
    int heads = 8;
    bool scale_full_d = false;  // score scale sqrt(d) instead of sqrt(d/heads)
    bool residual = false;      // shortcut around each self-attention layer
    bool layer_norm = false;    // row-wise normalization after each self-attention layer

    int head_dim() const { return d / heads; }

    // Full-scale preset from the training setup; not exercised by tests.
    static EncoderConfig paper_scale(int input_dim);
};

struct FocusLayerParams {
    Matrix wq, wk;  // d x d
};

struct SelfAttnHeadParams {
    Matrix wq, wk, wv;  // head_dim x d
};

struct SelfAttnLayerParams {
    std::vector<SelfAttnHeadParams> heads;
};

struct EncoderParams {
    EncoderConfig config;
    Matrix w_embed;  // d x input_dim
    Vector b_embed;  // d
    std::vector<FocusLayerParams> focus;
    std::vector<SelfAttnLayerParams> self_attn;

    // Seeded uniform init in +-1/sqrt(fan_in); biases start at zero.
    static EncoderParams seeded(const EncoderConfig& config, uint64_t seed);
    static EncoderParams zeros_like(const EncoderParams& other);

    size_t scalar_count() const;
    double get_scalar(size_t i) const;
    void set_scalar(size_t i, double v);
};

// Attention weights recorded during a forward pass, for inspection dumps.
struct AttentionTrace {
    std::vector<Vector> focus_alphas;             // one per focusing layer
    std::vector<std::vector<Matrix>> self_betas;  // [layer][head], rows sum to 1
};

// u_i = W v_i + b for every feature row.
Matrix embed(const Matrix& features, const Matrix& w_embed, const Vector& b_embed);

// Ego-query attention over all rows; output rows are the input rows scaled
// by their attention weight.
Matrix attention_focus_layer(const Matrix& u, int ego_index, const Matrix& wq, const Matrix& wk,
                             Vector* alpha_out = nullptr);

Matrix self_attention_layer(const Matrix& u, const SelfAttnLayerParams& layer,
                            const EncoderConfig& config,
                            std::vector<Matrix>* beta_out = nullptr);

// embed -> n_focus focusing layers -> n_self self-attention layers -> ego row.
Vector encode(const Matrix& features, int ego_index, const EncoderParams& params,
              AttentionTrace* trace = nullptr);

// Loss 0.5*||encode(...)||^2 plus analytic parameter gradients.
double encode_loss_and_grads(const Matrix& features, int ego_index, const EncoderParams& params,
                             EncoderParams& grads);

// Max relative error between analytic and central-difference gradients over
// every parameter (step 1e-5, denominator max(1, |a|, |n|)). Features and
// weights are generated from probe_seed. analytic_grad_scale != 1 corrupts
// the analytic side; it exists for the negative control.
double finite_diff_gradcheck(const EncoderConfig& config, int n_rows, int ego_index,
                             uint64_t probe_seed, double analytic_grad_scale = 1.0);

// ---- downstream heads (Fig-style residual block + LSTM + 3 linear maps) ----

struct HeadParams {
    int d = 8;
    int concat_dim = 0;                  // 2*d + local feature size + 3
    Matrix w_in;                         // d x concat_dim projection
    Vector b_in;
    Matrix w_res1, w_res2;               // d x d
    Vector b_res1, b_res2;
    Matrix w_lstm_x, w_lstm_h;           // 4d x d, gate order (i, f, g, o)
    Vector b_lstm;                       // 4d
    Matrix w_policy;                     // 5 x d
    Vector b_policy;
    Matrix w_value, w_block;             // 1 x d
    Vector b_value, b_block;

    static HeadParams seeded(int d, int local_dim, uint64_t seed);
};

struct RecurrentState {
    Vector h, c;
    static RecurrentState zero(int d);
};

struct HeadOutput {
    Vector policy;    // 5-simplex
    double value = 0;
    double blocking = 0;  // in [0, 1]
    RecurrentState state;
};

HeadOutput policy_head_forward(const Vector& static_feat, const Vector& intent_feat,
                               const Vector& local_feat, const Vector& goal_vec,
                               const HeadParams& params, const RecurrentState& state);

}  // namespace alpha
