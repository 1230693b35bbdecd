// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64; avx2_ops() still checks CPU support at runtime
// before handing the table out.

#include "pvgrid/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace pvgrid::kernels {

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double centered_dot_avx2(const double* x, double x0,
                         const double* y, double y0, std::size_t n) {
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vy0 = _mm256_set1_pd(y0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vx0);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vy0);
        acc = _mm256_fmadd_pd(dx, dy, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += (x[i] - x0) * (y[i] - y0);
    return r;
}

void matvec_avx2(const double* m, std::size_t rows, std::size_t cols,
                 const double* v, double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        out[i] = dot_avx2(m + i * cols, v, cols);
    }
}

// Cephes-style exp on 4 lanes; inputs are clamped to [-708, 0] by the caller.
__m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    x = _mm256_fnmadd_pd(n, c1, x);
    x = _mm256_fnmadd_pd(n, c2, x);

    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d px = _mm256_fmadd_pd(p0, xx, p1);
    px = _mm256_fmadd_pd(px, xx, p2);
    px = _mm256_mul_pd(px, x);
    __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
    qx = _mm256_fmadd_pd(qx, xx, q2);
    qx = _mm256_fmadd_pd(qx, xx, q3);

    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // scale by 2^n
    const __m128i ni = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(ni);
    const __m256i pow2 =
        _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));
}

double gauss_sum_avx2(const double* x, std::size_t n,
                      double center, double inv_bw) {
    const __m256d vc = _mm256_set1_pd(center);
    const __m256d vb = _mm256_set1_pd(inv_bw);
    const __m256d vhalf = _mm256_set1_pd(-0.5);
    const __m256d floor_arg = _mm256_set1_pd(-708.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d z = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), vc), vb);
        __m256d arg = _mm256_mul_pd(vhalf, _mm256_mul_pd(z, z));
        arg = _mm256_max_pd(arg, floor_arg);
        acc = _mm256_add_pd(acc, exp_pd(arg));
    }
    double r = hsum(acc);
    for (; i < n; ++i) {
        const double z = (x[i] - center) * inv_bw;
        r += std::exp(-0.5 * z * z);
    }
    return r;
}

const Ops kAvx2Ops{
    "avx2",    sum_avx2,    dot_avx2,
    centered_dot_avx2, matvec_avx2, gauss_sum_avx2,
};

}  // namespace

const Ops* avx2_ops() {
    static const Ops* ops = [] {
        const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
        return ok ? &kAvx2Ops : static_cast<const Ops*>(nullptr);
    }();
    return ops;
}

}  // namespace pvgrid::kernels

#else

namespace pvgrid::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace pvgrid::kernels

#endif
