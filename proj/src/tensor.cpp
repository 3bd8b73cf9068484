#include "drama/tensor.hpp"

#include <algorithm>
#include <numbers>
#include <unordered_set>

namespace drama::num {

namespace {

size_t shape_size(const std::vector<size_t>& shape) {
    size_t n = 1;
    for (size_t d : shape) n *= d;
    return n;
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (a.shape() != b.shape())
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

std::shared_ptr<TensorImpl> make_node(std::vector<size_t> shape,
                                      std::vector<std::shared_ptr<TensorImpl>> parents) {
    auto node = std::make_shared<TensorImpl>();
    node->shape = std::move(shape);
    node->data.resize(shape_size(node->shape));
    node->parents = std::move(parents);
    for (const auto& p : node->parents)
        if (p->requires_grad) node->requires_grad = true;
    if (node->requires_grad) node->grad.assign(node->data.size(), 0.0);
    return node;
}

void ensure_grad(const std::shared_ptr<TensorImpl>& t) {
    if (t->requires_grad && t->grad.size() != t->data.size())
        t->grad.assign(t->data.size(), 0.0);
}

// Elementwise unary helper: dy/dx given (x, y).
Tensor unary_op(const Tensor& x, const char*,
                const std::function<double(double)>& fwd,
                const std::function<double(double, double)>& dydx) {
    auto node = make_node(x.shape(), {x.impl()});
    const auto& xd = x.data();
    for (size_t i = 0; i < xd.size(); ++i) node->data[i] = fwd(xd[i]);
    if (node->requires_grad) {
        auto xi = x.impl();
        auto out = node.get();
        node->backward_fn = [xi, out, dydx]() {
            ensure_grad(xi);
            for (size_t i = 0; i < xi->data.size(); ++i)
                xi->grad[i] += out->grad[i] * dydx(xi->data[i], out->data[i]);
        };
    }
    return Tensor(node);
}

}  // namespace

Tensor Tensor::zeros(std::vector<size_t> shape, bool requires_grad) {
    auto impl = std::make_shared<TensorImpl>();
    impl->shape = std::move(shape);
    impl->data.assign(shape_size(impl->shape), 0.0);
    impl->requires_grad = requires_grad;
    if (requires_grad) impl->grad.assign(impl->data.size(), 0.0);
    return Tensor(impl);
}

Tensor Tensor::from(std::vector<size_t> shape, std::vector<double> data, bool requires_grad) {
    if (shape_size(shape) != data.size())
        throw std::invalid_argument("Tensor::from: data length does not match shape");
    auto impl = std::make_shared<TensorImpl>();
    impl->shape = std::move(shape);
    impl->data = std::move(data);
    impl->requires_grad = requires_grad;
    if (requires_grad) impl->grad.assign(impl->data.size(), 0.0);
    return Tensor(impl);
}

Tensor Tensor::scalar(double v, bool requires_grad) {
    return from({1}, {v}, requires_grad);
}

size_t Tensor::rows() const {
    if (impl_->shape.size() != 2) throw std::invalid_argument("rows(): tensor is not 2-D");
    return impl_->shape[0];
}
size_t Tensor::cols() const {
    if (impl_->shape.size() != 2) throw std::invalid_argument("cols(): tensor is not 2-D");
    return impl_->shape[1];
}

double Tensor::item() const {
    if (impl_->data.size() != 1) throw std::invalid_argument("item(): tensor is not scalar");
    return impl_->data[0];
}

void Tensor::set_requires_grad(bool v) {
    impl_->requires_grad = v;
    if (v) impl_->grad.assign(impl_->data.size(), 0.0);
}

void Tensor::zero_grad() {
    impl_->grad.assign(impl_->data.size(), 0.0);
}

void Tensor::backward() const {
    if (impl_->data.size() != 1)
        throw std::invalid_argument("backward(): root must be scalar");

    // Iterative post-order topological sort.
    std::vector<TensorImpl*> order;
    std::unordered_set<TensorImpl*> visited;
    std::vector<std::pair<TensorImpl*, size_t>> stack{{impl_.get(), 0}};
    while (!stack.empty()) {
        auto& [node, idx] = stack.back();
        if (idx == 0 && visited.count(node)) { stack.pop_back(); continue; }
        if (idx < node->parents.size()) {
            auto* parent = node->parents[idx++].get();
            if (!visited.count(parent)) stack.emplace_back(parent, 0);
        } else {
            visited.insert(node);
            order.push_back(node);
            stack.pop_back();
        }
    }

    impl_->grad.assign(1, 1.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if ((*it)->backward_fn) (*it)->backward_fn();
}

Tensor add(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "add");
    auto node = make_node(a.shape(), {a.impl(), b.impl()});
    for (size_t i = 0; i < node->data.size(); ++i) node->data[i] = a.data()[i] + b.data()[i];
    if (node->requires_grad) {
        auto ai = a.impl(); auto bi = b.impl(); auto out = node.get();
        node->backward_fn = [ai, bi, out]() {
            ensure_grad(ai); ensure_grad(bi);
            for (size_t i = 0; i < out->data.size(); ++i) {
                if (ai->requires_grad) ai->grad[i] += out->grad[i];
                if (bi->requires_grad) bi->grad[i] += out->grad[i];
            }
        };
    }
    return Tensor(node);
}

Tensor sub(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "sub");
    auto node = make_node(a.shape(), {a.impl(), b.impl()});
    for (size_t i = 0; i < node->data.size(); ++i) node->data[i] = a.data()[i] - b.data()[i];
    if (node->requires_grad) {
        auto ai = a.impl(); auto bi = b.impl(); auto out = node.get();
        node->backward_fn = [ai, bi, out]() {
            ensure_grad(ai); ensure_grad(bi);
            for (size_t i = 0; i < out->data.size(); ++i) {
                if (ai->requires_grad) ai->grad[i] += out->grad[i];
                if (bi->requires_grad) bi->grad[i] -= out->grad[i];
            }
        };
    }
    return Tensor(node);
}

Tensor mul(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "mul");
    auto node = make_node(a.shape(), {a.impl(), b.impl()});
    for (size_t i = 0; i < node->data.size(); ++i) node->data[i] = a.data()[i] * b.data()[i];
    if (node->requires_grad) {
        auto ai = a.impl(); auto bi = b.impl(); auto out = node.get();
        node->backward_fn = [ai, bi, out]() {
            ensure_grad(ai); ensure_grad(bi);
            for (size_t i = 0; i < out->data.size(); ++i) {
                if (ai->requires_grad) ai->grad[i] += out->grad[i] * bi->data[i];
                if (bi->requires_grad) bi->grad[i] += out->grad[i] * ai->data[i];
            }
        };
    }
    return Tensor(node);
}

Tensor scale(const Tensor& x, double s) {
    return unary_op(x, "scale", [s](double v) { return v * s; },
                    [s](double, double) { return s; });
}

Tensor add_scalar(const Tensor& x, double s) {
    return unary_op(x, "add_scalar", [s](double v) { return v + s; },
                    [](double, double) { return 1.0; });
}

Tensor neg(const Tensor& x) { return scale(x, -1.0); }

Tensor sigmoid(const Tensor& x) {
    return unary_op(x, "sigmoid", [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
                    [](double, double y) { return y * (1.0 - y); });
}

Tensor tanh_(const Tensor& x) {
    return unary_op(x, "tanh", [](double v) { return std::tanh(v); },
                    [](double, double y) { return 1.0 - y * y; });
}

Tensor cos_(const Tensor& x) {
    return unary_op(x, "cos", [](double v) { return std::cos(v); },
                    [](double v, double) { return -std::sin(v); });
}

Tensor sin_(const Tensor& x) {
    return unary_op(x, "sin", [](double v) { return std::sin(v); },
                    [](double v, double) { return std::cos(v); });
}

Tensor exp_(const Tensor& x) {
    return unary_op(x, "exp", [](double v) { return std::exp(v); },
                    [](double, double y) { return y; });
}

Tensor log_(const Tensor& x) {
    return unary_op(x, "log", [](double v) { return std::log(v); },
                    [](double v, double) { return 1.0 / v; });
}

Tensor sqrt_(const Tensor& x) {
    return unary_op(x, "sqrt", [](double v) { return std::sqrt(v); },
                    [](double, double y) { return 0.5 / y; });
}

Tensor rsqrt(const Tensor& x) {
    return unary_op(x, "rsqrt", [](double v) { return 1.0 / std::sqrt(v); },
                    [](double v, double y) { return -0.5 * y / v; });
}

Tensor gelu(const Tensor& x) {
    // tanh approximation: 0.5 x (1 + tanh(sqrt(2/pi)(x + 0.044715 x^3)))
    constexpr double k = 0.7978845608028654;  // sqrt(2/pi)
    constexpr double c = 0.044715;
    return unary_op(
        x, "gelu",
        [](double v) {
            return 0.5 * v * (1.0 + std::tanh(k * (v + c * v * v * v)));
        },
        [](double v, double) {
            const double u = k * (v + c * v * v * v);
            const double th = std::tanh(u);
            const double du = k * (1.0 + 3.0 * c * v * v);
            return 0.5 * (1.0 + th) + 0.5 * v * (1.0 - th * th) * du;
        });
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.shape().size() != 2 || b.shape().size() != 2 || a.cols() != b.rows())
        throw std::invalid_argument("matmul: incompatible shapes");
    const size_t R = a.rows(), K = a.cols(), C = b.cols();
    auto node = make_node({R, C}, {a.impl(), b.impl()});
    const auto& ad = a.data();
    const auto& bd = b.data();
    for (size_t r = 0; r < R; ++r)
        for (size_t k = 0; k < K; ++k) {
            const double av = ad[r * K + k];
            if (av == 0.0) continue;
            for (size_t c = 0; c < C; ++c)
                node->data[r * C + c] += av * bd[k * C + c];
        }
    if (node->requires_grad) {
        auto ai = a.impl(); auto bi = b.impl(); auto out = node.get();
        node->backward_fn = [ai, bi, out, R, K, C]() {
            ensure_grad(ai); ensure_grad(bi);
            if (ai->requires_grad)
                for (size_t r = 0; r < R; ++r)
                    for (size_t k = 0; k < K; ++k) {
                        double g = 0.0;
                        for (size_t c = 0; c < C; ++c)
                            g += out->grad[r * C + c] * bi->data[k * C + c];
                        ai->grad[r * K + k] += g;
                    }
            if (bi->requires_grad)
                for (size_t k = 0; k < K; ++k)
                    for (size_t c = 0; c < C; ++c) {
                        double g = 0.0;
                        for (size_t r = 0; r < R; ++r)
                            g += ai->data[r * K + k] * out->grad[r * C + c];
                        bi->grad[k * C + c] += g;
                    }
        };
    }
    return Tensor(node);
}

Tensor transpose(const Tensor& x) {
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({C, R}, {x.impl()});
    for (size_t r = 0; r < R; ++r)
        for (size_t c = 0; c < C; ++c)
            node->data[c * R + r] = x.data()[r * C + c];
    if (node->requires_grad) {
        auto xi = x.impl(); auto out = node.get();
        node->backward_fn = [xi, out, R, C]() {
            ensure_grad(xi);
            for (size_t r = 0; r < R; ++r)
                for (size_t c = 0; c < C; ++c)
                    xi->grad[r * C + c] += out->grad[c * R + r];
        };
    }
    return Tensor(node);
}

Tensor sum(const Tensor& x) {
    auto node = make_node({1}, {x.impl()});
    double s = 0.0;
    for (double v : x.data()) s += v;
    node->data[0] = s;
    if (node->requires_grad) {
        auto xi = x.impl(); auto out = node.get();
        node->backward_fn = [xi, out]() {
            ensure_grad(xi);
            for (auto& g : xi->grad) g += out->grad[0];
        };
    }
    return Tensor(node);
}

Tensor mean(const Tensor& x) {
    return scale(sum(x), 1.0 / static_cast<double>(x.size()));
}

Tensor row_sum(const Tensor& x) {
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({R}, {x.impl()});
    for (size_t r = 0; r < R; ++r) {
        double s = 0.0;
        for (size_t c = 0; c < C; ++c) s += x.data()[r * C + c];
        node->data[r] = s;
    }
    if (node->requires_grad) {
        auto xi = x.impl(); auto out = node.get();
        node->backward_fn = [xi, out, R, C]() {
            ensure_grad(xi);
            for (size_t r = 0; r < R; ++r)
                for (size_t c = 0; c < C; ++c)
                    xi->grad[r * C + c] += out->grad[r];
        };
    }
    return Tensor(node);
}

Tensor rows_scale(const Tensor& x, const Tensor& s) {
    if (s.shape().size() != 1 || s.size() != x.rows())
        throw std::invalid_argument("rows_scale: scale vector must have one entry per row");
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({R, C}, {x.impl(), s.impl()});
    for (size_t r = 0; r < R; ++r)
        for (size_t c = 0; c < C; ++c)
            node->data[r * C + c] = x.data()[r * C + c] * s.data()[r];
    if (node->requires_grad) {
        auto xi = x.impl(); auto si = s.impl(); auto out = node.get();
        node->backward_fn = [xi, si, out, R, C]() {
            ensure_grad(xi); ensure_grad(si);
            for (size_t r = 0; r < R; ++r)
                for (size_t c = 0; c < C; ++c) {
                    const double g = out->grad[r * C + c];
                    if (xi->requires_grad) xi->grad[r * C + c] += g * si->data[r];
                    if (si->requires_grad) si->grad[r] += g * xi->data[r * C + c];
                }
        };
    }
    return Tensor(node);
}

Tensor rows_shift(const Tensor& x, const Tensor& s) {
    if (s.shape().size() != 1 || s.size() != x.rows())
        throw std::invalid_argument("rows_shift: shift vector must have one entry per row");
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({R, C}, {x.impl(), s.impl()});
    for (size_t r = 0; r < R; ++r)
        for (size_t c = 0; c < C; ++c)
            node->data[r * C + c] = x.data()[r * C + c] + s.data()[r];
    if (node->requires_grad) {
        auto xi = x.impl(); auto si = s.impl(); auto out = node.get();
        node->backward_fn = [xi, si, out, R, C]() {
            ensure_grad(xi); ensure_grad(si);
            for (size_t r = 0; r < R; ++r)
                for (size_t c = 0; c < C; ++c) {
                    const double g = out->grad[r * C + c];
                    if (xi->requires_grad) xi->grad[r * C + c] += g;
                    if (si->requires_grad) si->grad[r] += g;
                }
        };
    }
    return Tensor(node);
}

Tensor broadcast_mul(const Tensor& x, const Tensor& s) {
    if (s.size() != 1)
        throw std::invalid_argument("broadcast_mul: multiplier must be a scalar tensor");
    auto node = make_node(x.shape(), {x.impl(), s.impl()});
    const double sv = s.data()[0];
    for (size_t i = 0; i < node->data.size(); ++i) node->data[i] = x.data()[i] * sv;
    if (node->requires_grad) {
        auto xi = x.impl(); auto si = s.impl(); auto out = node.get();
        node->backward_fn = [xi, si, out]() {
            ensure_grad(xi); ensure_grad(si);
            for (size_t i = 0; i < out->data.size(); ++i) {
                if (xi->requires_grad) xi->grad[i] += out->grad[i] * si->data[0];
                if (si->requires_grad) si->grad[0] += out->grad[i] * xi->data[i];
            }
        };
    }
    return Tensor(node);
}

Tensor mul_rowvec(const Tensor& x, const Tensor& v) {
    if (v.shape().size() != 1 || v.size() != x.cols())
        throw std::invalid_argument("mul_rowvec: vector must have one entry per column");
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({R, C}, {x.impl(), v.impl()});
    for (size_t r = 0; r < R; ++r)
        for (size_t c = 0; c < C; ++c)
            node->data[r * C + c] = x.data()[r * C + c] * v.data()[c];
    if (node->requires_grad) {
        auto xi = x.impl(); auto vi = v.impl(); auto out = node.get();
        node->backward_fn = [xi, vi, out, R, C]() {
            ensure_grad(xi); ensure_grad(vi);
            for (size_t r = 0; r < R; ++r)
                for (size_t c = 0; c < C; ++c) {
                    const double g = out->grad[r * C + c];
                    if (xi->requires_grad) xi->grad[r * C + c] += g * vi->data[c];
                    if (vi->requires_grad) vi->grad[c] += g * xi->data[r * C + c];
                }
        };
    }
    return Tensor(node);
}

Tensor add_rowvec(const Tensor& x, const Tensor& v) {
    if (v.shape().size() != 1 || v.size() != x.cols())
        throw std::invalid_argument("add_rowvec: vector must have one entry per column");
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({R, C}, {x.impl(), v.impl()});
    for (size_t r = 0; r < R; ++r)
        for (size_t c = 0; c < C; ++c)
            node->data[r * C + c] = x.data()[r * C + c] + v.data()[c];
    if (node->requires_grad) {
        auto xi = x.impl(); auto vi = v.impl(); auto out = node.get();
        node->backward_fn = [xi, vi, out, R, C]() {
            ensure_grad(xi); ensure_grad(vi);
            for (size_t r = 0; r < R; ++r)
                for (size_t c = 0; c < C; ++c) {
                    const double g = out->grad[r * C + c];
                    if (xi->requires_grad) xi->grad[r * C + c] += g;
                    if (vi->requires_grad) vi->grad[c] += g;
                }
        };
    }
    return Tensor(node);
}

Tensor softmax_rows(const Tensor& x) {
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({R, C}, {x.impl()});
    for (size_t r = 0; r < R; ++r) {
        double mx = x.data()[r * C];
        for (size_t c = 1; c < C; ++c) mx = std::max(mx, x.data()[r * C + c]);
        double z = 0.0;
        for (size_t c = 0; c < C; ++c) {
            node->data[r * C + c] = std::exp(x.data()[r * C + c] - mx);
            z += node->data[r * C + c];
        }
        for (size_t c = 0; c < C; ++c) node->data[r * C + c] /= z;
    }
    if (node->requires_grad) {
        auto xi = x.impl(); auto out = node.get();
        node->backward_fn = [xi, out, R, C]() {
            ensure_grad(xi);
            for (size_t r = 0; r < R; ++r) {
                double dot = 0.0;
                for (size_t c = 0; c < C; ++c)
                    dot += out->grad[r * C + c] * out->data[r * C + c];
                for (size_t c = 0; c < C; ++c)
                    xi->grad[r * C + c] +=
                        out->data[r * C + c] * (out->grad[r * C + c] - dot);
            }
        };
    }
    return Tensor(node);
}

Tensor cross_entropy_diag(const Tensor& x) {
    if (x.shape().size() != 2 || x.rows() != x.cols())
        throw std::invalid_argument("cross_entropy_diag: tensor must be square");
    const size_t N = x.rows();
    auto node = make_node({1}, {x.impl()});
    // Cache the softmax for the backward pass.
    auto probs = std::make_shared<std::vector<double>>(N * N);
    double loss = 0.0;
    for (size_t r = 0; r < N; ++r) {
        double mx = x.data()[r * N];
        for (size_t c = 1; c < N; ++c) mx = std::max(mx, x.data()[r * N + c]);
        double z = 0.0;
        for (size_t c = 0; c < N; ++c) {
            (*probs)[r * N + c] = std::exp(x.data()[r * N + c] - mx);
            z += (*probs)[r * N + c];
        }
        for (size_t c = 0; c < N; ++c) (*probs)[r * N + c] /= z;
        loss -= std::log((*probs)[r * N + r]);
    }
    node->data[0] = loss / static_cast<double>(N);
    if (node->requires_grad) {
        auto xi = x.impl(); auto out = node.get();
        node->backward_fn = [xi, out, probs, N]() {
            ensure_grad(xi);
            const double g = out->grad[0] / static_cast<double>(N);
            for (size_t r = 0; r < N; ++r)
                for (size_t c = 0; c < N; ++c)
                    xi->grad[r * N + c] +=
                        g * ((*probs)[r * N + c] - (r == c ? 1.0 : 0.0));
        };
    }
    return Tensor(node);
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
    if (a.shape().size() != 2 || b.shape().size() != 2 || a.rows() != b.rows())
        throw std::invalid_argument("concat_cols: row counts differ");
    const size_t R = a.rows(), Ca = a.cols(), Cb = b.cols();
    auto node = make_node({R, Ca + Cb}, {a.impl(), b.impl()});
    for (size_t r = 0; r < R; ++r) {
        for (size_t c = 0; c < Ca; ++c) node->data[r * (Ca + Cb) + c] = a.data()[r * Ca + c];
        for (size_t c = 0; c < Cb; ++c) node->data[r * (Ca + Cb) + Ca + c] = b.data()[r * Cb + c];
    }
    if (node->requires_grad) {
        auto ai = a.impl(); auto bi = b.impl(); auto out = node.get();
        node->backward_fn = [ai, bi, out, R, Ca, Cb]() {
            ensure_grad(ai); ensure_grad(bi);
            for (size_t r = 0; r < R; ++r) {
                if (ai->requires_grad)
                    for (size_t c = 0; c < Ca; ++c)
                        ai->grad[r * Ca + c] += out->grad[r * (Ca + Cb) + c];
                if (bi->requires_grad)
                    for (size_t c = 0; c < Cb; ++c)
                        bi->grad[r * Cb + c] += out->grad[r * (Ca + Cb) + Ca + c];
            }
        };
    }
    return Tensor(node);
}

Tensor select_col(const Tensor& x, size_t c) {
    if (x.shape().size() != 2 || c >= x.cols())
        throw std::invalid_argument("select_col: column out of range");
    const size_t R = x.rows(), C = x.cols();
    auto node = make_node({R}, {x.impl()});
    for (size_t r = 0; r < R; ++r) node->data[r] = x.data()[r * C + c];
    if (node->requires_grad) {
        auto xi = x.impl(); auto out = node.get();
        node->backward_fn = [xi, out, R, C, c]() {
            ensure_grad(xi);
            for (size_t r = 0; r < R; ++r) xi->grad[r * C + c] += out->grad[r];
        };
    }
    return Tensor(node);
}

uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

double Rng::gumbel() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(-std::log(u));
}

size_t Rng::index(size_t n) { return static_cast<size_t>(uniform() * static_cast<double>(n)) % n; }

Tensor Rng::normal_tensor(std::vector<size_t> shape, double stddev, bool requires_grad) {
    Tensor t = Tensor::zeros(std::move(shape), requires_grad);
    for (auto& v : t.data()) v = normal() * stddev;
    return t;
}

double grad_check(const std::function<Tensor(const Tensor&)>& f, Tensor x, double h) {
    x.set_requires_grad(true);
    x.zero_grad();
    Tensor y = f(x);
    if (!std::isfinite(y.item())) throw std::runtime_error("grad_check: f is non-finite at x");
    y.backward();
    const std::vector<double> analytic = x.grad();

    x.set_requires_grad(false);
    double max_err = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double orig = x.data()[i];
        x.data()[i] = orig + h;
        const double fp = f(x).item();
        x.data()[i] = orig - h;
        const double fm = f(x).item();
        x.data()[i] = orig;
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("grad_check: f is non-finite near x");
        const double numeric = (fp - fm) / (2.0 * h);
        const double err = std::abs(analytic[i] - numeric) /
                           std::max(1.0, std::abs(analytic[i]));
        max_err = std::max(max_err, err);
    }
    x.set_requires_grad(true);
    return max_err;
}

}  // namespace drama::num
