#pragma once

// Runtime-dispatched numeric kernels. Scalar reference implementations are
// always available; AVX2/FMA variants are selected once at startup when the
// CPU supports them. Both paths are equivalence-tested against each other.

#include <cstddef>

namespace pvgrid::kernels {

struct Ops {
    const char* name;
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i (x[i] - x0) * (y[i] - y0)
    double (*centered_dot)(const double* x, double x0,
                           const double* y, double y0, std::size_t n);
    // out[i] = sum_j m[i*cols + j] * v[j], row-major m
    void (*matvec)(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, double* out);
    // sum_i exp(-0.5 * ((x[i] - center) * inv_bw)^2)
    double (*gauss_sum)(const double* x, std::size_t n,
                        double center, double inv_bw);
};

const Ops& scalar_ops();

// nullptr when the CPU (or build target) lacks AVX2+FMA.
const Ops* avx2_ops();

// Best available implementation, resolved on first call.
const Ops& active();

}  // namespace pvgrid::kernels
