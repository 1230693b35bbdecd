#include "pvgrid/regression.hpp"

#include <algorithm>
#include <cmath>

#include "pvgrid/kernels.hpp"

namespace pvgrid {

namespace {

constexpr double kVarianceFloor = 1e-15;

double mean(std::span<const double> v) {
    return kernels::active().sum(v.data(), v.size()) / static_cast<double>(v.size());
}

void check_input(const RegressionInput& input) {
    if (input.x.size() != input.y.size()) throw InputError("x and y must have equal length");
    if (input.x.size() < 2) throw InsufficientDataError("need at least 2 samples");
    const double mx = mean(input.x);
    const double sxx = kernels::active().centered_dot(input.x.data(), mx, input.x.data(), mx,
                                                      input.x.size());
    if (sxx / static_cast<double>(input.x.size() - 1) <= kVarianceFloor) {
        throw DegenerateDataError("degenerate predictor: x is constant");
    }
}

BetaFit finish_fit(const RegressionInput& input, double beta, double intercept) {
    const std::size_t n = input.x.size();
    const double my = mean(input.y);
    double rss = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = input.y[i] - (beta * input.x[i] + intercept);
        rss += r * r;
        const double d = input.y[i] - my;
        syy += d * d;
    }
    BetaFit fit;
    fit.beta_pu_per_kw = beta;
    fit.intercept_pu = intercept;
    fit.n_samples = n;
    fit.residual_std_pu = std::sqrt(rss / static_cast<double>(n > 2 ? n - 2 : 1));
    fit.explained_variance = syy > 0.0 ? std::clamp(1.0 - rss / syy, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace

RegressionInput injection_filter(std::span<const MeterSample> samples) {
    RegressionInput input;
    for (const MeterSample& s : samples) {
        if (s.net_power_kw <= 0.0) {
            input.x.push_back(s.net_power_kw);
            input.y.push_back(s.pcc_voltage_pu);
        }
    }
    return input;
}

BetaFit ols_fit(const RegressionInput& input) {
    check_input(input);
    const double mx = mean(input.x);
    const double my = mean(input.y);
    const auto& k = kernels::active();
    const std::size_t n = input.x.size();
    const double sxx = k.centered_dot(input.x.data(), mx, input.x.data(), mx, n);
    const double sxy = k.centered_dot(input.x.data(), mx, input.y.data(), my, n);
    const double beta = sxy / sxx;
    return finish_fit(input, beta, my - beta * mx);
}

// NIPALS PLS1. Written for a general n x p predictor block with deflation;
// the public entry point feeds it the single net-power column. Coefficients
// follow B = W (P^T W)^{-1} q on the centered data.
BetaFit pls1_fit(const RegressionInput& input, int n_components) {
    check_input(input);
    if (n_components < 1) throw InputError("n_components must be positive");
    const std::size_t n = input.x.size();
    const std::size_t p = 1;
    if (static_cast<std::size_t>(n_components) > p) {
        throw InputError("n_components exceeds predictor rank");
    }

    const double mx = mean(input.x);
    const double my = mean(input.y);

    // centered working copies; X is column-major, p columns
    std::vector<double> X(n * p);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X[i] = input.x[i] - mx;
        y[i] = input.y[i] - my;
    }

    const int a_max = n_components;
    std::vector<double> W(p * a_max, 0.0);  // weights, column per component
    std::vector<double> P(p * a_max, 0.0);  // loadings
    std::vector<double> q(a_max, 0.0);      // response loadings
    std::vector<double> t(n);
    int a_used = 0;

    const auto& k = kernels::active();
    for (int a = 0; a < a_max; ++a) {
        // w = X^T y, normalized
        std::vector<double> w(p);
        double wnorm = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            w[j] = k.dot(X.data() + j * n, y.data(), n);
            wnorm += w[j] * w[j];
        }
        wnorm = std::sqrt(wnorm);
        if (wnorm <= 0.0) break;
        for (std::size_t j = 0; j < p; ++j) w[j] /= wnorm;

        // scores t = X w
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < p; ++j) acc += X[j * n + i] * w[j];
            t[i] = acc;
        }
        const double tt = k.dot(t.data(), t.data(), n);
        if (tt <= kVarianceFloor) break;

        // loadings and deflation
        for (std::size_t j = 0; j < p; ++j) {
            P[j + a * p] = k.dot(X.data() + j * n, t.data(), n) / tt;
        }
        q[a] = k.dot(y.data(), t.data(), n) / tt;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < p; ++j) X[j * n + i] -= t[i] * P[j + a * p];
            y[i] -= q[a] * t[i];
        }
        for (std::size_t j = 0; j < p; ++j) W[j + a * p] = w[j];
        ++a_used;
    }
    if (a_used == 0) {
        // zero covariance between x and y: the flat fit is exact
        return finish_fit(input, 0.0, my);
    }

    // Solve (P^T W) z = q by Gaussian elimination (a_used x a_used, tiny),
    // then B = W z.
    const int a = a_used;
    std::vector<double> M(a * a);
    for (int r = 0; r < a; ++r) {
        for (int c = 0; c < a; ++c) {
            double acc = 0.0;
            for (std::size_t j = 0; j < p; ++j) acc += P[j + r * p] * W[j + c * p];
            M[r * a + c] = acc;
        }
    }
    std::vector<double> z(q.begin(), q.begin() + a);
    for (int col = 0; col < a; ++col) {
        int pivot = col;
        for (int r = col + 1; r < a; ++r) {
            if (std::abs(M[r * a + col]) > std::abs(M[pivot * a + col])) pivot = r;
        }
        if (pivot != col) {
            for (int c = 0; c < a; ++c) std::swap(M[col * a + c], M[pivot * a + c]);
            std::swap(z[col], z[pivot]);
        }
        const double d = M[col * a + col];
        if (d == 0.0) throw DegenerateDataError("singular loading system in PLS");
        for (int r = col + 1; r < a; ++r) {
            const double f = M[r * a + col] / d;
            for (int c = col; c < a; ++c) M[r * a + c] -= f * M[col * a + c];
            z[r] -= f * z[col];
        }
    }
    for (int r = a - 1; r >= 0; --r) {
        double acc = z[r];
        for (int c = r + 1; c < a; ++c) acc -= M[r * a + c] * z[c];
        z[r] = acc / M[r * a + r];
    }

    double beta = 0.0;
    for (int c = 0; c < a; ++c) beta += W[0 + c * p] * z[c];
    return finish_fit(input, beta, my - beta * mx);
}

}  // namespace pvgrid
