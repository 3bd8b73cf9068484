#pragma once

// Linear state-space sequence kernel: ZOH discretization, recurrent scan,
// and the equivalent causal-convolution evaluation.

#include <cstddef>
#include <vector>

namespace drama::ssm {

/// Small dense square-free matrix, row-major.
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(size_t r, size_t c) { return data[r * cols + c]; }
    double at(size_t r, size_t c) const { return data[r * cols + c]; }

    static Mat identity(size_t n);
};

Mat matmul(const Mat& a, const Mat& b);
Mat add(const Mat& a, const Mat& b);
Mat scale(const Mat& a, double s);
double inf_norm(const Mat& a);

/// Scaling-and-squaring with a Pade(6) approximant.
Mat matexp(const Mat& a);

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// Throws std::runtime_error on a (numerically) singular system.
std::vector<double> solve(Mat a, std::vector<double> b);

struct SsmParams {
    Mat A;                  // N x N
    std::vector<double> B;  // N
    std::vector<double> C;  // N (row)
    double delta = 1.0;     // timescale, > 0
};

struct Discretized {
    Mat A_bar;                  // exp(delta A)
    std::vector<double> B_bar;  // (delta A)^-1 (exp(delta A) - I) delta B
};

/// ZOH discretization. Near-singular delta*A (inf-norm < 1e-4) switches to
/// the series sum_k (delta A)^k / (k+1)! * delta B.
/// Throws std::invalid_argument for delta <= 0, std::runtime_error on a
/// non-finite exponential.
Discretized zoh_discretize(const SsmParams& p);

/// h_t = A_bar h_{t-1} + B_bar x_t, y_t = C h_t, h_0 = 0.
std::vector<double> ssm_scan(const Discretized& d, const std::vector<double>& C,
                             const std::vector<double>& x);

/// K[j] = C A_bar^j B_bar for j = 0..M-1.
std::vector<double> ssm_kernel(const Discretized& d, const std::vector<double>& C, size_t M);

/// Causal convolution y_t = sum_{j<=t} K[j] x_{t-j}.
std::vector<double> conv_apply(const std::vector<double>& kernel, const std::vector<double>& x);

}  // namespace drama::ssm
