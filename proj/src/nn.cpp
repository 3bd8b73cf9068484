#include "drama/nn.hpp"

#include <cmath>

namespace drama::nn {

using namespace drama::num;

Tensor layernorm_rows(const Tensor& x, double eps) {
    const size_t C = x.cols();
    const double invC = 1.0 / static_cast<double>(C);
    // mu_r = mean(x_r); centered = x - mu; out = centered * rsqrt(var + eps)
    Tensor mu = scale(row_sum(x), invC);
    Tensor centered = rows_shift(x, neg(mu));
    Tensor var = scale(row_sum(mul(centered, centered)), invC);
    return rows_scale(centered, rsqrt(add_scalar(var, eps)));
}

Tensor rmsnorm(const Tensor& x, const Tensor& gain, double delta) {
    const double invC = 1.0 / static_cast<double>(x.cols());
    Tensor ms = scale(row_sum(mul(x, x)), invC);
    Tensor normed = rows_scale(x, rsqrt(add_scalar(ms, delta)));
    return mul_rowvec(normed, gain);
}

Tensor rope_apply(const Tensor& x, double base) {
    if (x.shape().size() != 2 || x.cols() % 2 != 0)
        throw std::invalid_argument("rope_apply: need a 2-D tensor with even width");
    const size_t T = x.rows(), d = x.cols();

    auto node = std::make_shared<TensorImpl>();
    node->shape = {T, d};
    node->data.resize(T * d);
    node->parents = {x.impl()};
    node->requires_grad = x.impl()->requires_grad;
    if (node->requires_grad) node->grad.assign(T * d, 0.0);

    auto angles = std::make_shared<std::vector<double>>(T * d / 2);
    for (size_t t = 0; t < T; ++t)
        for (size_t j = 0; j < d / 2; ++j) {
            const double theta = std::pow(base, -2.0 * static_cast<double>(j) /
                                                     static_cast<double>(d));
            (*angles)[t * d / 2 + j] = theta * static_cast<double>(t);
        }

    for (size_t t = 0; t < T; ++t)
        for (size_t j = 0; j < d / 2; ++j) {
            const double a = (*angles)[t * d / 2 + j];
            const double c = std::cos(a), s = std::sin(a);
            const double x0 = x.data()[t * d + 2 * j];
            const double x1 = x.data()[t * d + 2 * j + 1];
            node->data[t * d + 2 * j] = c * x0 - s * x1;
            node->data[t * d + 2 * j + 1] = s * x0 + c * x1;
        }

    if (node->requires_grad) {
        auto xi = x.impl();
        auto out = node.get();
        node->backward_fn = [xi, out, angles, T, d]() {
            if (xi->grad.size() != xi->data.size()) xi->grad.assign(xi->data.size(), 0.0);
            // Backward of a rotation is the inverse rotation of the gradient.
            for (size_t t = 0; t < T; ++t)
                for (size_t j = 0; j < d / 2; ++j) {
                    const double a = (*angles)[t * d / 2 + j];
                    const double c = std::cos(a), s = std::sin(a);
                    const double g0 = out->grad[t * d + 2 * j];
                    const double g1 = out->grad[t * d + 2 * j + 1];
                    xi->grad[t * d + 2 * j] += c * g0 + s * g1;
                    xi->grad[t * d + 2 * j + 1] += -s * g0 + c * g1;
                }
        };
    }
    return Tensor(node);
}

AdaLnParams AdaLnParams::init(size_t d_cond, size_t d, Rng& rng, double beta_stddev) {
    AdaLnParams p;
    p.w_gamma = Tensor::zeros({d_cond, d}, true);  // zero-init: gamma path silent at start
    p.w_beta = rng.normal_tensor({d_cond, d}, beta_stddev, true);
    return p;
}

Tensor adaln_modulate(const Tensor& h, const Tensor& cond, const AdaLnParams& p) {
    Tensor gamma = matmul(cond, p.w_gamma);  // [1 x d]
    Tensor beta = matmul(cond, p.w_beta);
    // Flatten [1 x d] rows to [d] vectors for broadcasting.
    auto flatten = [](const Tensor& t) {
        auto node = std::make_shared<TensorImpl>();
        node->shape = {t.size()};
        node->data = t.data();
        node->parents = {t.impl()};
        node->requires_grad = t.impl()->requires_grad;
        if (node->requires_grad) node->grad.assign(t.size(), 0.0);
        auto ti = t.impl();
        auto out = node.get();
        node->backward_fn = [ti, out]() {
            if (ti->grad.size() != ti->data.size()) ti->grad.assign(ti->data.size(), 0.0);
            for (size_t i = 0; i < ti->data.size(); ++i) ti->grad[i] += out->grad[i];
        };
        return Tensor(node);
    };
    Tensor normed = layernorm_rows(h);
    return add_rowvec(mul_rowvec(normed, flatten(gamma)), flatten(beta));
}

Tensor attention(const Tensor& q, const Tensor& k, const Tensor& v) {
    if (q.cols() != k.cols() || k.rows() != v.rows())
        throw std::invalid_argument("attention: dimension mismatch");
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(q.cols()));
    Tensor scores = scale(matmul(q, transpose(k)), inv_sqrt_d);
    return matmul(softmax_rows(scores), v);
}

Tensor gated_cross_attention(const Tensor& h, const Tensor& scene_k, const Tensor& scene_v,
                             const Tensor& alpha_gate) {
    Tensor self_out = attention(h, h, h);
    Tensor cross = attention(h, scene_k, scene_v);
    return add(self_out, broadcast_mul(cross, tanh_(alpha_gate)));
}

Linear Linear::init(size_t d_in, size_t d_out, Rng& rng, double stddev) {
    Linear l;
    const double sd = (stddev > 0.0) ? stddev : 1.0 / std::sqrt(static_cast<double>(d_in));
    l.weight = rng.normal_tensor({d_in, d_out}, sd, true);
    l.bias = Tensor::zeros({d_out}, true);
    return l;
}

Tensor Linear::forward(const Tensor& x) const {
    return add_rowvec(matmul(x, weight), bias);
}

Adam::Adam(std::vector<Tensor> params, double lr, double beta1, double beta2, double eps)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    for (const auto& p : params_) {
        m_.emplace_back(p.size(), 0.0);
        v_.emplace_back(p.size(), 0.0);
    }
}

void Adam::step() {
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i = 0; i < params_.size(); ++i) {
        auto& p = params_[i];
        if (p.grad().size() != p.size()) continue;
        for (size_t j = 0; j < p.size(); ++j) {
            const double g = p.grad()[j];
            m_[i][j] = beta1_ * m_[i][j] + (1.0 - beta1_) * g;
            v_[i][j] = beta2_ * v_[i][j] + (1.0 - beta2_) * g * g;
            p.data()[j] -= lr_ * (m_[i][j] / bc1) / (std::sqrt(v_[i][j] / bc2) + eps_);
        }
    }
}

void Adam::zero_grad() {
    for (auto& p : params_) p.zero_grad();
}

}  // namespace drama::nn
