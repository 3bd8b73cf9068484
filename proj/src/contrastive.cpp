#include "drama/contrastive.hpp"

#include <cmath>

namespace drama::contrastive {

using namespace drama::num;

Tensor normalize_rows(const Tensor& x) {
    const size_t R = x.rows(), C = x.cols();
    for (size_t r = 0; r < R; ++r) {
        double s = 0.0;
        for (size_t c = 0; c < C; ++c) s += x.data()[r * C + c] * x.data()[r * C + c];
        if (!(s > 0.0))
            throw std::invalid_argument("normalize_rows: zero-norm embedding row");
    }
    return rows_scale(x, rsqrt(row_sum(mul(x, x))));
}

Tensor contrastive_pair_loss(const Tensor& z1, const Tensor& z2, double tau) {
    if (z1.shape() != z2.shape() || z1.shape().size() != 2)
        throw std::invalid_argument("contrastive_pair_loss: batches must match [N x d]");
    if (!(tau > 0.0))
        throw std::invalid_argument("contrastive_pair_loss: tau must be > 0");
    Tensor n1 = normalize_rows(z1);
    Tensor n2 = normalize_rows(z2);
    Tensor sim = scale(matmul(n1, transpose(n2)), 1.0 / tau);
    return scale(add(cross_entropy_diag(sim), cross_entropy_diag(transpose(sim))), 0.5);
}

Tensor total_contrastive(const Tensor& z_geo, const Tensor& z_vid, const Tensor& z_txt,
                         double tau) {
    return add(add(contrastive_pair_loss(z_geo, z_vid, tau),
                   contrastive_pair_loss(z_geo, z_txt, tau)),
               contrastive_pair_loss(z_vid, z_txt, tau));
}

}  // namespace drama::contrastive
