#pragma once

// Seeded toy training demos: flow matching on a 2-D Gaussian mixture and
// three-way contrastive pose alignment over synthetic surrogate views.

#include <cstdint>
#include <vector>

#include "drama/tensor.hpp"

namespace drama::demos {

struct DemoConfig {
    size_t embed_dim = 32;
    size_t hidden_dim = 64;
    size_t batch = 64;
    size_t train_steps = 2000;
    double learning_rate = 1e-3;
    double noise_sigma = 0.1;      // surrogate-view corruption
    double tau = 0.1;              // contrastive temperature
    size_t dataset_size = 320;     // pose items (256 train + 64 held out)
    size_t holdout = 64;
    size_t sample_count = 10000;   // generated samples for the flow statistic
    size_t euler_steps = 25;
};

struct FlowDemoReport {
    uint64_t seed = 0;
    std::vector<double> loss_curve;  // subsampled
    double final_loss = 0.0;
    double energy_distance = 0.0;
    double mean_x = 0.0, mean_y = 0.0;
};

struct PoseDemoReport {
    uint64_t seed = 0;
    std::vector<double> loss_curve;
    double final_loss = 0.0;
    double retrieval_at_1 = 0.0;  // mean over geo->vid and geo->txt, held-out set
};

/// Trains a small field network with the rectified flow loss on a
/// two-component 2-D Gaussian mixture and samples it with the Euler solver.
/// Throws std::runtime_error naming the step on a non-finite loss.
FlowDemoReport demo_toy_flow(uint64_t seed, const DemoConfig& cfg = {});

/// Trains three encoders (geometric + two noisy surrogate views) with the
/// three-pair contrastive objective; reports held-out retrieval@1.
PoseDemoReport demo_pose_alignment(uint64_t seed, const DemoConfig& cfg = {});

/// Energy distance between two point sets in R^d:
/// 2 E|X-Y| - E|X-X'| - E|Y-Y'|.
double energy_distance(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b);

}  // namespace drama::demos
