#pragma once

// Minimal dense float64 tensor with tape-based reverse-mode gradients.
// Tensors are 1-D or 2-D (row-major); ops build a graph of shared nodes
// and backward() walks it in reverse topological order from a scalar root.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace drama::num {

struct TensorImpl {
    std::vector<size_t> shape;
    std::vector<double> data;
    std::vector<double> grad;
    bool requires_grad = false;
    std::vector<std::shared_ptr<TensorImpl>> parents;
    std::function<void()> backward_fn;
};

class Tensor {
  public:
    Tensor() : impl_(std::make_shared<TensorImpl>()) {}
    explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}

    static Tensor zeros(std::vector<size_t> shape, bool requires_grad = false);
    static Tensor from(std::vector<size_t> shape, std::vector<double> data,
                       bool requires_grad = false);
    static Tensor scalar(double v, bool requires_grad = false);

    const std::vector<size_t>& shape() const { return impl_->shape; }
    size_t size() const { return impl_->data.size(); }
    size_t rows() const;
    size_t cols() const;

    std::vector<double>& data() { return impl_->data; }
    const std::vector<double>& data() const { return impl_->data; }
    std::vector<double>& grad() { return impl_->grad; }
    const std::vector<double>& grad() const { return impl_->grad; }
    double item() const;

    bool requires_grad() const { return impl_->requires_grad; }
    void set_requires_grad(bool v);
    void zero_grad();

    /// Reverse pass from a scalar root. Accumulates into .grad of every
    /// reachable tensor with requires_grad.
    void backward() const;

    std::shared_ptr<TensorImpl> impl() const { return impl_; }

  private:
    std::shared_ptr<TensorImpl> impl_;
};

// Elementwise (same shape).
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);

// Scalar.
Tensor scale(const Tensor& x, double s);
Tensor add_scalar(const Tensor& x, double s);

// Unary elementwise.
Tensor neg(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor tanh_(const Tensor& x);
Tensor cos_(const Tensor& x);
Tensor sin_(const Tensor& x);
Tensor exp_(const Tensor& x);
Tensor log_(const Tensor& x);
Tensor sqrt_(const Tensor& x);
Tensor rsqrt(const Tensor& x);
Tensor gelu(const Tensor& x);  // tanh approximation

// 2-D linear algebra.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& x);

// Reductions.
Tensor sum(const Tensor& x);   // -> scalar
Tensor mean(const Tensor& x);  // -> scalar
Tensor row_sum(const Tensor& x);  // [R x C] -> [R]

// Row broadcasting over a 2-D tensor.
Tensor rows_scale(const Tensor& x, const Tensor& s);   // s: [R], scales row r by s[r]
Tensor rows_shift(const Tensor& x, const Tensor& s);   // s: [R], adds s[r] to row r
Tensor broadcast_mul(const Tensor& x, const Tensor& s);  // s: scalar tensor [1]
Tensor mul_rowvec(const Tensor& x, const Tensor& v);   // v: [C]
Tensor add_rowvec(const Tensor& x, const Tensor& v);   // v: [C]

Tensor softmax_rows(const Tensor& x);
/// Mean over rows i of -log softmax(x[i])[i]; x must be square [N x N].
Tensor cross_entropy_diag(const Tensor& x);

Tensor concat_cols(const Tensor& a, const Tensor& b);
Tensor select_col(const Tensor& x, size_t c);  // [R x C] -> [R]

/// Deterministic generator: splitmix64 stream with fixed 53-bit uniform
/// mapping and Box-Muller normals, so the value stream is identical for
/// identical seeds on every platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) { if (seed == 0) state_ = 0x9e3779b97f4a7c15ULL; }

    uint64_t next_u64();
    double uniform();             // [0, 1)
    double uniform(double lo, double hi);
    double normal();              // standard Gaussian, Box-Muller
    double gumbel();              // Gumbel(0, 1): -log(-log(U))
    size_t index(size_t n);       // uniform in [0, n)

    Tensor normal_tensor(std::vector<size_t> shape, double stddev = 1.0,
                         bool requires_grad = false);

  private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Max over coordinates of |analytic - central difference| / max(1, |analytic|).
/// Throws std::runtime_error if f evaluates to a non-finite value.
double grad_check(const std::function<Tensor(const Tensor&)>& f, Tensor x, double h = 1e-5);

}  // namespace drama::num
