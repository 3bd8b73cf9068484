#include "drama/fan.hpp"

#include <cmath>

namespace drama::fan {

using namespace drama::num;

FanParams FanParams::init(size_t d_in, size_t d_p, size_t d_pbar, Rng& rng) {
    FanParams p;
    const double sd = 1.0 / std::sqrt(static_cast<double>(d_in));
    p.w_p = rng.normal_tensor({d_in, d_p}, sd, true);
    p.w_pbar = rng.normal_tensor({d_in, d_pbar}, sd, true);
    p.b_pbar = Tensor::zeros({d_pbar}, true);
    return p;
}

Tensor fan_layer(const Tensor& x, const FanParams& p) {
    if (x.shape().size() != 2 || x.cols() != p.d_in())
        throw std::invalid_argument("fan_layer: input width does not match d_in");
    Tensor proj = matmul(x, p.w_p);
    Tensor nonper = gelu(add_rowvec(matmul(x, p.w_pbar), p.b_pbar));
    return concat_cols(concat_cols(cos_(proj), sin_(proj)), nonper);
}

}  // namespace drama::fan
