#include "drama/flow.hpp"

#include <cmath>
#include <string>

namespace drama::flow {

using namespace drama::num;

Tensor flow_interpolate(const Tensor& x0, const Tensor& x1, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("flow_interpolate: t must be in [0,1]");
    if (x0.shape() != x1.shape())
        throw std::invalid_argument("flow_interpolate: shape mismatch");
    return add(scale(x0, 1.0 - t), scale(x1, t));
}

Tensor rfm_loss(const Tensor& v_pred, const Tensor& x0, const Tensor& x1) {
    if (v_pred.shape() != x0.shape() || x0.shape() != x1.shape())
        throw std::invalid_argument("rfm_loss: shape mismatch");
    Tensor diff = sub(v_pred, sub(x1, x0));
    return mean(mul(diff, diff));
}

Tensor euler_solve(const VectorField& v, const Tensor& x0, size_t steps) {
    if (steps < 1) throw std::invalid_argument("euler_solve: steps must be >= 1");
    const double eps = 1.0 / static_cast<double>(steps);
    Tensor x = Tensor::from(x0.shape(), x0.data());
    for (size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * eps;
        Tensor vel = v(x, t);
        if (vel.shape() != x.shape())
            throw std::invalid_argument("euler_solve: field shape mismatch");
        for (size_t i = 0; i < x.size(); ++i) {
            x.data()[i] += eps * vel.data()[i];
            if (!std::isfinite(x.data()[i]))
                throw std::runtime_error("euler_solve: non-finite state at step " +
                                         std::to_string(k));
        }
    }
    return x;
}

bool cfg_weights_unusual(const CfgWeights& w) {
    return w.gamma < 1.0 || w.gamma > 5.0 || w.alpha < 0.0 || w.alpha > 1.0;
}

Tensor cfg_field(const Tensor& v_a, const Tensor& v_last, const Tensor& v_null,
                 const CfgWeights& w) {
    if (v_a.shape() != v_last.shape() || v_a.shape() != v_null.shape())
        throw std::invalid_argument("cfg_field: shape mismatch");
    return add(add(scale(v_a, w.gamma * w.alpha), scale(v_last, w.gamma * (1.0 - w.alpha))),
               scale(v_null, 1.0 - w.gamma));
}

}  // namespace drama::flow
