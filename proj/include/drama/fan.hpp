#pragma once

// Fourier Analysis Network layer:
//   phi(x) = [cos(x W_p) || sin(x W_p) || sigma(B_pbar + x W_pbar)]
// sigma is GELU. Output width is 2*d_p + d_pbar.

#include "drama/tensor.hpp"

namespace drama::fan {

using num::Rng;
using num::Tensor;

struct FanParams {
    Tensor w_p;      // [d_in x d_p]
    Tensor w_pbar;   // [d_in x d_pbar]
    Tensor b_pbar;   // [d_pbar]

    size_t d_in() const { return w_p.rows(); }
    size_t output_dim() const { return 2 * w_p.cols() + w_pbar.cols(); }

    static FanParams init(size_t d_in, size_t d_p, size_t d_pbar, Rng& rng);
    std::vector<Tensor> params() const { return {w_p, w_pbar, b_pbar}; }
};

/// x: [B x d_in] -> [B x (2 d_p + d_pbar)], blocks in the order cos, sin, sigma.
Tensor fan_layer(const Tensor& x, const FanParams& p);

}  // namespace drama::fan
