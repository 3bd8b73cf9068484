#pragma once

// Rectified flow matching: straight-line interpolation, the flow loss,
// an Euler ODE sampler, and the context-consistent guidance combiner.

#include <functional>

#include "drama/tensor.hpp"

namespace drama::flow {

using num::Tensor;

/// x_t = (1 - t) x0 + t x1. Throws std::invalid_argument for t outside [0,1].
Tensor flow_interpolate(const Tensor& x0, const Tensor& x1, double t);

/// Mean squared deviation of v_pred from the straight-line target x1 - x0.
Tensor rfm_loss(const Tensor& v_pred, const Tensor& x0, const Tensor& x1);

/// v(x, t) evaluated without gradient tracking.
using VectorField = std::function<Tensor(const Tensor& x, double t)>;

/// Euler integration of dx = v(x,t) dt from t=0 to t=1 with step 1/steps.
/// Throws std::runtime_error naming the step index on a non-finite state.
Tensor euler_solve(const VectorField& v, const Tensor& x0, size_t steps = 25);

struct CfgWeights {
    double gamma = 3.0;  // guidance scale
    double alpha = 0.4;  // context mix
};

/// True when (gamma, alpha) falls outside the recommended [1,5] x [0,1] box.
bool cfg_weights_unusual(const CfgWeights& w);

/// v_cfg = gamma*alpha*v_a + gamma*(1-alpha)*v_last + (1-gamma)*v_null.
/// The three coefficients always sum to 1.
Tensor cfg_field(const Tensor& v_a, const Tensor& v_last, const Tensor& v_null,
                 const CfgWeights& w);

}  // namespace drama::flow
