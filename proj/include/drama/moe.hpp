#pragma once

// Two-group mixture-of-experts routing with Gumbel-Softmax gates,
// a switch-style load-balancing loss, and the composed
// prosodic -> spatial expert forward pass.

#include "drama/fan.hpp"
#include "drama/nn.hpp"
#include "drama/tensor.hpp"

namespace drama::moe {

using num::Rng;
using num::Tensor;

enum class RoutingMode { Stochastic, Deterministic };

struct RouterState {
    Tensor w_g;               // [d_cond x n_experts] gating weights
    double temperature = 2.0; // annealed 2.0 -> 0.3 during training
    RoutingMode mode = RoutingMode::Stochastic;
    double balance_alpha = 0.1;
    std::vector<uint64_t> dispatch_counts;  // per expert, updated by gumbel_route

    static RouterState init(size_t d_cond, size_t n_experts, Rng& rng);
};

/// Exponential temperature decay from 2.0 to 0.3 across total_steps.
double temperature_at(size_t step, size_t total_steps, double start = 2.0, double end = 0.3);

/// Per-token gate distribution over experts from conditioning rows
/// [T x d_cond]. Stochastic mode: softmax((cond . W_g + zeta) / tau) with
/// Gumbel(0,1) noise, differentiable through W_g. Deterministic mode:
/// one-hot argmax of cond . W_g, ties to the lowest index.
/// Updates r.dispatch_counts with per-token argmax assignments.
Tensor gumbel_route(const Tensor& cond, RouterState& r, Rng& rng);

/// Hard (argmax) assignment per row of a gate matrix.
std::vector<size_t> hard_assignments(const Tensor& gates);

/// alpha * N * sum_i f_i * P_i, f_i = dispatched fraction, P_i = mean gate
/// probability. Minimized at alpha under a uniform dispatch.
Tensor load_balance_loss(const Tensor& gates, const std::vector<size_t>& assignments,
                         double alpha, size_t n_experts);

/// The literal printed form alpha * N * sum_i P_i; constant (= alpha * N)
/// whenever gates are a softmax, kept for reference only.
double load_balance_loss_literal(const Tensor& gates, double alpha, size_t n_experts);

/// One expert: a FAN block projected back to the model width.
struct ExpertBlock {
    fan::FanParams fan_params;
    nn::Linear out_proj;  // [fan_out x d_model]

    static ExpertBlock init(size_t d_model, size_t d_p, size_t d_pbar, Rng& rng);
    Tensor forward(const Tensor& h) const;
    std::vector<Tensor> params() const;
};

struct DramaMoe {
    std::vector<ExpertBlock> prosodic_experts;
    std::vector<ExpertBlock> spatial_experts;
    RouterState prosodic_router;  // conditioned on the cross-attended z_pro
    RouterState spatial_router;   // conditioned on z_p

    static DramaMoe init(size_t d_model, size_t n_experts, size_t d_p, size_t d_pbar, Rng& rng);
    std::vector<Tensor> params() const;
};

/// Routing pass: z_pro = CrossAttention(z_p, z_a, z_a); prosodic gates from
/// z_pro, spatial gates from z_p; o = sum_i g_sp,i E_sp,i(sum_j g_pr,j E_pr,j(h)).
Tensor drama_moe_forward(const Tensor& h, const Tensor& z_a, const Tensor& z_p,
                         DramaMoe& model, Rng& rng);

}  // namespace drama::moe
