#pragma once

// Symmetric InfoNCE over cosine similarity, and the three-pair total
// objective across the geometric / video / text embedding batches.

#include "drama/tensor.hpp"

namespace drama::contrastive {

using num::Tensor;

/// Row-wise L2 normalization. Throws std::invalid_argument on a zero row.
Tensor normalize_rows(const Tensor& x);

/// Symmetric InfoNCE between matched batches Z1, Z2 ([N x d]) with
/// temperature tau: mean over both softmax directions of the diagonal
/// cross entropy. Zero for N = 1.
Tensor contrastive_pair_loss(const Tensor& z1, const Tensor& z2, double tau);

/// L(geo,vid) + L(geo,txt) + L(vid,txt).
Tensor total_contrastive(const Tensor& z_geo, const Tensor& z_vid, const Tensor& z_txt,
                         double tau);

}  // namespace drama::contrastive
