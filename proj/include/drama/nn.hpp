#pragma once

// Architectural primitives on top of the tensor engine: RMSNorm, RoPE,
// AdaLN modulation (zero-initialized scale path), zero-init gated
// cross-attention, linear layers and an Adam optimizer for the demos.

#include "drama/tensor.hpp"

namespace drama::nn {

using num::Rng;
using num::Tensor;

/// Row-wise LayerNorm without an elementwise affine (scale/shift come from
/// conditioning where needed).
Tensor layernorm_rows(const Tensor& x, double eps = 1e-6);

/// x / sqrt(mean(x^2) + delta) * gain, per row; gain has one entry per column.
Tensor rmsnorm(const Tensor& x, const Tensor& gain, double delta = 1e-6);

/// Rotary position embedding on [T x d] (d even): consecutive pairs of the
/// row at position t are rotated by theta_j * t, theta_j = base^(-2j/d).
/// Throws std::invalid_argument for odd d.
Tensor rope_apply(const Tensor& x, double base = 10000.0);

struct AdaLnParams {
    Tensor w_gamma;  // [d_cond x d], zero-initialized
    Tensor w_beta;   // [d_cond x d]

    static AdaLnParams init(size_t d_cond, size_t d, Rng& rng, double beta_stddev = 0.02);
};

/// AdaLN(h, c) = gamma_c * LayerNorm(h) + beta_c, gamma_c = c . W_gamma,
/// beta_c = c . W_beta; cond is a [1 x d_cond] row broadcast over h's rows.
Tensor adaln_modulate(const Tensor& h, const Tensor& cond, const AdaLnParams& p);

/// Scaled dot-product attention softmax(q k^T / sqrt(d)) v.
Tensor attention(const Tensor& q, const Tensor& k, const Tensor& v);

/// selfAttn(h) + tanh(alpha) * crossAttn(h, scene); alpha scalar, zero-init.
Tensor gated_cross_attention(const Tensor& h, const Tensor& scene_k, const Tensor& scene_v,
                             const Tensor& alpha_gate);

struct Linear {
    Tensor weight;  // [d_in x d_out]
    Tensor bias;    // [d_out]

    static Linear init(size_t d_in, size_t d_out, Rng& rng, double stddev = 0.0);
    Tensor forward(const Tensor& x) const;
    std::vector<Tensor> params() const { return {weight, bias}; }
};

class Adam {
  public:
    explicit Adam(std::vector<Tensor> params, double lr = 1e-3, double beta1 = 0.9,
                  double beta2 = 0.999, double eps = 1e-8);

    void step();
    void zero_grad();
    double lr() const { return lr_; }
    void set_lr(double lr) { lr_ = lr; }

  private:
    std::vector<Tensor> params_;
    std::vector<std::vector<double>> m_, v_;
    double lr_, beta1_, beta2_, eps_;
    long t_ = 0;
};

}  // namespace drama::nn
