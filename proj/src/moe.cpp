#include "drama/moe.hpp"

#include <algorithm>
#include <cmath>

namespace drama::moe {

using namespace drama::num;

RouterState RouterState::init(size_t d_cond, size_t n_experts, Rng& rng) {
    RouterState r;
    r.w_g = rng.normal_tensor({d_cond, n_experts},
                              1.0 / std::sqrt(static_cast<double>(d_cond)), true);
    r.dispatch_counts.assign(n_experts, 0);
    return r;
}

double temperature_at(size_t step, size_t total_steps, double start, double end) {
    if (total_steps <= 1) return end;
    const double u = static_cast<double>(std::min(step, total_steps - 1)) /
                     static_cast<double>(total_steps - 1);
    return start * std::pow(end / start, u);
}

Tensor gumbel_route(const Tensor& cond, RouterState& r, Rng& rng) {
    const size_t n_experts = r.w_g.cols();
    Tensor logits = matmul(cond, r.w_g);  // [T x N]
    const size_t T = logits.rows();

    Tensor gates;
    if (r.mode == RoutingMode::Deterministic) {
        gates = Tensor::zeros({T, n_experts});
        for (size_t t = 0; t < T; ++t) {
            size_t best = 0;
            for (size_t i = 1; i < n_experts; ++i)
                if (logits.data()[t * n_experts + i] > logits.data()[t * n_experts + best])
                    best = i;  // ties keep the lowest index
            gates.data()[t * n_experts + best] = 1.0;
        }
    } else {
        if (!(r.temperature > 0.0))
            throw std::invalid_argument("gumbel_route: temperature must be > 0");
        Tensor noise = Tensor::zeros({T, n_experts});
        for (auto& v : noise.data()) v = rng.gumbel();
        gates = softmax_rows(scale(add(logits, noise), 1.0 / r.temperature));
    }

    for (size_t t = 0; t < T; ++t) {
        size_t best = 0;
        for (size_t i = 1; i < n_experts; ++i)
            if (gates.data()[t * n_experts + i] > gates.data()[t * n_experts + best]) best = i;
        ++r.dispatch_counts[best];
    }
    return gates;
}

std::vector<size_t> hard_assignments(const Tensor& gates) {
    const size_t T = gates.rows(), N = gates.cols();
    std::vector<size_t> out(T, 0);
    for (size_t t = 0; t < T; ++t)
        for (size_t i = 1; i < N; ++i)
            if (gates.data()[t * N + i] > gates.data()[t * N + out[t]]) out[t] = i;
    return out;
}

Tensor load_balance_loss(const Tensor& gates, const std::vector<size_t>& assignments,
                         double alpha, size_t n_experts) {
    if (gates.cols() != n_experts)
        throw std::invalid_argument("load_balance_loss: gate width != n_experts");
    const size_t T = gates.rows();
    if (assignments.size() != T)
        throw std::invalid_argument("load_balance_loss: assignment count != token count");

    // f_i: hard dispatch fractions (constants, no gradient path).
    Tensor f = Tensor::zeros({n_experts});
    for (size_t a : assignments) f.data()[a] += 1.0 / static_cast<double>(T);

    // P_i: mean gate probability per expert (differentiable).
    Tensor p = scale(row_sum(transpose(gates)), 1.0 / static_cast<double>(T));
    return scale(sum(mul(f, p)), alpha * static_cast<double>(n_experts));
}

double load_balance_loss_literal(const Tensor& gates, double alpha, size_t n_experts) {
    double s = 0.0;
    for (double v : gates.data()) s += v;
    return alpha * static_cast<double>(n_experts) * s / static_cast<double>(gates.rows());
}

ExpertBlock ExpertBlock::init(size_t d_model, size_t d_p, size_t d_pbar, Rng& rng) {
    ExpertBlock e;
    e.fan_params = fan::FanParams::init(d_model, d_p, d_pbar, rng);
    e.out_proj = nn::Linear::init(e.fan_params.output_dim(), d_model, rng);
    return e;
}

Tensor ExpertBlock::forward(const Tensor& h) const {
    return out_proj.forward(fan::fan_layer(h, fan_params));
}

std::vector<Tensor> ExpertBlock::params() const {
    auto out = fan_params.params();
    for (const auto& t : out_proj.params()) out.push_back(t);
    return out;
}

DramaMoe DramaMoe::init(size_t d_model, size_t n_experts, size_t d_p, size_t d_pbar, Rng& rng) {
    DramaMoe m;
    for (size_t i = 0; i < n_experts; ++i) {
        m.prosodic_experts.push_back(ExpertBlock::init(d_model, d_p, d_pbar, rng));
        m.spatial_experts.push_back(ExpertBlock::init(d_model, d_p, d_pbar, rng));
    }
    m.prosodic_router = RouterState::init(d_model, n_experts, rng);
    m.spatial_router = RouterState::init(d_model, n_experts, rng);
    return m;
}

std::vector<Tensor> DramaMoe::params() const {
    std::vector<Tensor> out;
    for (const auto& e : prosodic_experts)
        for (const auto& t : e.params()) out.push_back(t);
    for (const auto& e : spatial_experts)
        for (const auto& t : e.params()) out.push_back(t);
    out.push_back(prosodic_router.w_g);
    out.push_back(spatial_router.w_g);
    return out;
}

namespace {

Tensor mix_experts(const Tensor& input, const std::vector<ExpertBlock>& experts,
                   const Tensor& gates) {
    Tensor out;
    for (size_t i = 0; i < experts.size(); ++i) {
        Tensor weighted = rows_scale(experts[i].forward(input), select_col(gates, i));
        out = (i == 0) ? weighted : add(out, weighted);
    }
    return out;
}

}  // namespace

Tensor drama_moe_forward(const Tensor& h, const Tensor& z_a, const Tensor& z_p,
                         DramaMoe& model, Rng& rng) {
    if (h.cols() != z_p.cols() || h.cols() != z_a.cols())
        throw std::invalid_argument("drama_moe_forward: embedding widths differ");

    // Prosody alignment: z_p queries the prompt-audio embedding.
    Tensor z_pro = nn::attention(z_p, z_a, z_a);

    Tensor g_pros = gumbel_route(z_pro, model.prosodic_router, rng);
    Tensor o_pros = mix_experts(h, model.prosodic_experts, g_pros);

    Tensor g_spatial = gumbel_route(z_p, model.spatial_router, rng);
    return mix_experts(o_pros, model.spatial_experts, g_spatial);
}

}  // namespace drama::moe
