#include "helmstab/kernels.hpp"

#include <cmath>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define HELMSTAB_X86 1
#elif defined(__aarch64__)
#include <arm_neon.h>
#define HELMSTAB_NEON 1
#endif

namespace helmstab::kernels {

namespace {

void axpy_scalar(double s, const double* v, double* acc, int n) {
    for (int i = 0; i < n; ++i) acc[i] = std::fma(s, v[i], acc[i]);
}

void leapfrog_scalar(const double* c, const double* prev, const double* s,
                     const double* b, const double* src, double dx2,
                     double* out, int n) {
    for (int i = 0; i < n; ++i) {
        double t = std::fma(b[i], src[i], s[i] * c[i]);
        out[i] = std::fma(dx2, t, (c[i] + c[i]) - prev[i]);
    }
}

void taylor_scalar(const double* c0, const double* s, const double* b,
                   const double* src, double half_dx2, double* out, int n) {
    for (int i = 0; i < n; ++i) {
        double t = std::fma(b[i], src[i], s[i] * c0[i]);
        out[i] = std::fma(half_dx2, t, c0[i]);
    }
}

#ifdef HELMSTAB_X86

__attribute__((target("avx2,fma")))
void axpy_avx2(double s, const double* v, double* acc, int n) {
    const __m256d sv = _mm256_set1_pd(s);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(acc + i);
        __m256d x = _mm256_loadu_pd(v + i);
        _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(sv, x, a));
    }
    for (; i < n; ++i) acc[i] = std::fma(s, v[i], acc[i]);
}

__attribute__((target("avx2,fma")))
void leapfrog_avx2(const double* c, const double* prev, const double* s,
                   const double* b, const double* src, double dx2,
                   double* out, int n) {
    const __m256d d = _mm256_set1_pd(dx2);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cv = _mm256_loadu_pd(c + i);
        __m256d pv = _mm256_loadu_pd(prev + i);
        __m256d sv = _mm256_loadu_pd(s + i);
        __m256d bv = _mm256_loadu_pd(b + i);
        __m256d rv = _mm256_loadu_pd(src + i);
        __m256d t = _mm256_fmadd_pd(bv, rv, _mm256_mul_pd(sv, cv));
        __m256d base = _mm256_sub_pd(_mm256_add_pd(cv, cv), pv);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(d, t, base));
    }
    for (; i < n; ++i) {
        double t = std::fma(b[i], src[i], s[i] * c[i]);
        out[i] = std::fma(dx2, t, (c[i] + c[i]) - prev[i]);
    }
}

__attribute__((target("avx2,fma")))
void taylor_avx2(const double* c0, const double* s, const double* b,
                 const double* src, double half_dx2, double* out, int n) {
    const __m256d d = _mm256_set1_pd(half_dx2);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cv = _mm256_loadu_pd(c0 + i);
        __m256d sv = _mm256_loadu_pd(s + i);
        __m256d bv = _mm256_loadu_pd(b + i);
        __m256d rv = _mm256_loadu_pd(src + i);
        __m256d t = _mm256_fmadd_pd(bv, rv, _mm256_mul_pd(sv, cv));
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(d, t, cv));
    }
    for (; i < n; ++i) {
        double t = std::fma(b[i], src[i], s[i] * c0[i]);
        out[i] = std::fma(half_dx2, t, c0[i]);
    }
}

bool have_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#endif // HELMSTAB_X86

#ifdef HELMSTAB_NEON

void axpy_neon(double s, const double* v, double* acc, int n) {
    const float64x2_t sv = vdupq_n_f64(s);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t a = vld1q_f64(acc + i);
        float64x2_t x = vld1q_f64(v + i);
        vst1q_f64(acc + i, vfmaq_f64(a, sv, x));
    }
    for (; i < n; ++i) acc[i] = std::fma(s, v[i], acc[i]);
}

void leapfrog_neon(const double* c, const double* prev, const double* s,
                   const double* b, const double* src, double dx2,
                   double* out, int n) {
    const float64x2_t d = vdupq_n_f64(dx2);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t cv = vld1q_f64(c + i);
        float64x2_t pv = vld1q_f64(prev + i);
        float64x2_t sv = vld1q_f64(s + i);
        float64x2_t bv = vld1q_f64(b + i);
        float64x2_t rv = vld1q_f64(src + i);
        float64x2_t t = vfmaq_f64(vmulq_f64(sv, cv), bv, rv);
        float64x2_t base = vsubq_f64(vaddq_f64(cv, cv), pv);
        vst1q_f64(out + i, vfmaq_f64(base, d, t));
    }
    for (; i < n; ++i) {
        double t = std::fma(b[i], src[i], s[i] * c[i]);
        out[i] = std::fma(dx2, t, (c[i] + c[i]) - prev[i]);
    }
}

void taylor_neon(const double* c0, const double* s, const double* b,
                 const double* src, double half_dx2, double* out, int n) {
    const float64x2_t d = vdupq_n_f64(half_dx2);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t cv = vld1q_f64(c0 + i);
        float64x2_t sv = vld1q_f64(s + i);
        float64x2_t bv = vld1q_f64(b + i);
        float64x2_t rv = vld1q_f64(src + i);
        float64x2_t t = vfmaq_f64(vmulq_f64(sv, cv), bv, rv);
        vst1q_f64(out + i, vfmaq_f64(cv, d, t));
    }
    for (; i < n; ++i) {
        double t = std::fma(b[i], src[i], s[i] * c0[i]);
        out[i] = std::fma(half_dx2, t, c0[i]);
    }
}

#endif // HELMSTAB_NEON

Backend g_backend = [] {
#ifdef HELMSTAB_X86
    if (have_avx2()) return Backend::avx2;
#endif
#ifdef HELMSTAB_NEON
    return Backend::neon;
#endif
    return Backend::scalar;
}();

bool available(Backend b) {
    switch (b) {
    case Backend::scalar: return true;
#ifdef HELMSTAB_X86
    case Backend::avx2: return have_avx2();
#endif
#ifdef HELMSTAB_NEON
    case Backend::neon: return true;
#endif
    default: return false;
    }
}

} // namespace

Backend active() { return g_backend; }

Backend best_available() {
#ifdef HELMSTAB_X86
    if (have_avx2()) return Backend::avx2;
#endif
#ifdef HELMSTAB_NEON
    return Backend::neon;
#endif
    return Backend::scalar;
}

void force_backend(Backend b) {
    if (!available(b)) throw std::runtime_error("kernel backend not available: " + backend_name(b));
    g_backend = b;
}

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "?";
}

void axpy(double s, const double* v, double* acc, int n) {
    switch (g_backend) {
#ifdef HELMSTAB_X86
    case Backend::avx2: axpy_avx2(s, v, acc, n); return;
#endif
#ifdef HELMSTAB_NEON
    case Backend::neon: axpy_neon(s, v, acc, n); return;
#endif
    default: axpy_scalar(s, v, acc, n); return;
    }
}

void leapfrog_row(const double* c, const double* prev, const double* s,
                  const double* b, const double* src, double dx2,
                  double* out, int n) {
    switch (g_backend) {
#ifdef HELMSTAB_X86
    case Backend::avx2: leapfrog_avx2(c, prev, s, b, src, dx2, out, n); return;
#endif
#ifdef HELMSTAB_NEON
    case Backend::neon: leapfrog_neon(c, prev, s, b, src, dx2, out, n); return;
#endif
    default: leapfrog_scalar(c, prev, s, b, src, dx2, out, n); return;
    }
}

void taylor_row(const double* c0, const double* s, const double* b,
                const double* src, double half_dx2, double* out, int n) {
    switch (g_backend) {
#ifdef HELMSTAB_X86
    case Backend::avx2: taylor_avx2(c0, s, b, src, half_dx2, out, n); return;
#endif
#ifdef HELMSTAB_NEON
    case Backend::neon: taylor_neon(c0, s, b, src, half_dx2, out, n); return;
#endif
    default: taylor_scalar(c0, s, b, src, half_dx2, out, n); return;
    }
}

} // namespace helmstab::kernels
