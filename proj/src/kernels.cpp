#include "pvgrid/kernels.hpp"

#include <cmath>

namespace pvgrid::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double centered_dot_scalar(const double* x, double x0,
                           const double* y, double y0, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += (x[i] - x0) * (y[i] - y0);
    return acc;
}

void matvec_scalar(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        out[i] = dot_scalar(m + i * cols, v, cols);
    }
}

double gauss_sum_scalar(const double* x, std::size_t n,
                        double center, double inv_bw) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = (x[i] - center) * inv_bw;
        acc += std::exp(-0.5 * z * z);
    }
    return acc;
}

const Ops kScalarOps{
    "scalar",    sum_scalar,    dot_scalar,
    centered_dot_scalar, matvec_scalar, gauss_sum_scalar,
};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

const Ops& active() {
    static const Ops* best = [] {
        if (const Ops* v = avx2_ops()) return v;
        return &kScalarOps;
    }();
    return *best;
}

}  // namespace pvgrid::kernels
