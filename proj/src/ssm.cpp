#include "drama/ssm.hpp"

#include <cmath>
#include <stdexcept>

namespace drama::ssm {

Mat Mat::identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("Mat matmul: incompatible shapes");
    Mat out(a.rows, b.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t k = 0; k < a.cols; ++k) {
            const double av = a.at(r, k);
            for (size_t c = 0; c < b.cols; ++c)
                out.at(r, c) += av * b.at(k, c);
        }
    return out;
}

Mat add(const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("Mat add: shape mismatch");
    Mat out = a;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

Mat scale(const Mat& a, double s) {
    Mat out = a;
    for (auto& v : out.data) v *= s;
    return out;
}

double inf_norm(const Mat& a) {
    double mx = 0.0;
    for (size_t r = 0; r < a.rows; ++r) {
        double row = 0.0;
        for (size_t c = 0; c < a.cols; ++c) row += std::abs(a.at(r, c));
        mx = std::max(mx, row);
    }
    return mx;
}

Mat matexp(const Mat& a) {
    if (a.rows != a.cols) throw std::invalid_argument("matexp: matrix must be square");
    const size_t n = a.rows;

    // Scale so that ||A/2^s|| <= 0.5, apply Pade(6), square back.
    int s = 0;
    double nrm = inf_norm(a);
    while (nrm > 0.5) {
        nrm /= 2.0;
        ++s;
    }
    const Mat as = scale(a, std::pow(2.0, -s));

    // Pade(6): p(A) / q(A) with q(A) = p(-A).
    static const double coeff[7] = {1.0, 1.0 / 2.0, 5.0 / 44.0, 1.0 / 66.0,
                                    1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
    Mat power = Mat::identity(n);
    Mat p(n, n), q(n, n);
    for (int k = 0; k <= 6; ++k) {
        const Mat term = scale(power, coeff[k]);
        p = add(p, term);
        q = add(q, scale(term, (k % 2 == 0) ? 1.0 : -1.0));
        if (k < 6) power = matmul(power, as);
    }

    // exp(as) = q^-1 p, column by column.
    Mat e(n, n);
    for (size_t c = 0; c < n; ++c) {
        std::vector<double> rhs(n);
        for (size_t r = 0; r < n; ++r) rhs[r] = p.at(r, c);
        const auto col = solve(q, rhs);
        for (size_t r = 0; r < n; ++r) e.at(r, c) = col[r];
    }
    for (int i = 0; i < s; ++i) e = matmul(e, e);

    for (double v : e.data)
        if (!std::isfinite(v)) throw std::runtime_error("matexp: non-finite result");
    return e;
}

std::vector<double> solve(Mat a, std::vector<double> b) {
    const size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(pivot, col))) pivot = r;
        if (std::abs(a.at(pivot, col)) < 1e-300)
            throw std::runtime_error("solve: singular matrix");
        if (pivot != col) {
            for (size_t c = 0; c < n; ++c) std::swap(a.at(col, c), a.at(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        for (size_t r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (size_t c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t r = n; r-- > 0;) {
        double s = b[r];
        for (size_t c = r + 1; c < n; ++c) s -= a.at(r, c) * x[c];
        x[r] = s / a.at(r, r);
    }
    return x;
}

Discretized zoh_discretize(const SsmParams& p) {
    if (!(p.delta > 0.0)) throw std::invalid_argument("zoh_discretize: delta must be > 0");
    const size_t n = p.A.rows;
    if (p.A.cols != n || p.B.size() != n)
        throw std::invalid_argument("zoh_discretize: dimension mismatch");

    const Mat dA = scale(p.A, p.delta);
    std::vector<double> dB(n);
    for (size_t i = 0; i < n; ++i) dB[i] = p.delta * p.B[i];

    Discretized out;
    out.A_bar = matexp(dA);

    if (inf_norm(dA) < 1e-4) {
        // Series: sum_k (dA)^k / (k+1)! * dB; exact limit dB at A = 0.
        out.B_bar = dB;
        std::vector<double> term = dB;
        double factorial = 1.0;
        for (int k = 1; k <= 12; ++k) {
            std::vector<double> next(n, 0.0);
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c) next[r] += dA.at(r, c) * term[c];
            term = next;
            factorial *= static_cast<double>(k + 1);
            for (size_t i = 0; i < n; ++i) out.B_bar[i] += term[i] / factorial;
        }
    } else {
        // (dA)^-1 (exp(dA) - I) dB via a linear solve.
        std::vector<double> rhs(n, 0.0);
        const Mat em1 = add(out.A_bar, scale(Mat::identity(n), -1.0));
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) rhs[r] += em1.at(r, c) * dB[c];
        out.B_bar = solve(dA, rhs);
    }
    return out;
}

std::vector<double> ssm_scan(const Discretized& d, const std::vector<double>& C,
                             const std::vector<double>& x) {
    const size_t n = d.B_bar.size();
    if (C.size() != n) throw std::invalid_argument("ssm_scan: C dimension mismatch");
    std::vector<double> h(n, 0.0), y(x.size());
    std::vector<double> hn(n);
    for (size_t t = 0; t < x.size(); ++t) {
        for (size_t r = 0; r < n; ++r) {
            double s = d.B_bar[r] * x[t];
            for (size_t c = 0; c < n; ++c) s += d.A_bar.at(r, c) * h[c];
            hn[r] = s;
        }
        h = hn;
        double out = 0.0;
        for (size_t c = 0; c < n; ++c) out += C[c] * h[c];
        y[t] = out;
    }
    return y;
}

std::vector<double> ssm_kernel(const Discretized& d, const std::vector<double>& C, size_t M) {
    if (M < 1) throw std::invalid_argument("ssm_kernel: M must be >= 1");
    const size_t n = d.B_bar.size();
    std::vector<double> state = d.B_bar;  // A_bar^j B_bar
    std::vector<double> k(M);
    for (size_t j = 0; j < M; ++j) {
        double out = 0.0;
        for (size_t c = 0; c < n; ++c) out += C[c] * state[c];
        k[j] = out;
        if (j + 1 < M) {
            std::vector<double> next(n, 0.0);
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c) next[r] += d.A_bar.at(r, c) * state[c];
            state = next;
        }
    }
    return k;
}

std::vector<double> conv_apply(const std::vector<double>& kernel, const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    for (size_t t = 0; t < x.size(); ++t) {
        const size_t jmax = std::min(t + 1, kernel.size());
        double s = 0.0;
        for (size_t j = 0; j < jmax; ++j) s += kernel[j] * x[t - j];
        y[t] = s;
    }
    return y;
}

}  // namespace drama::ssm
