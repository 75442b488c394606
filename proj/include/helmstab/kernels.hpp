#pragma once

#include <string>

// Inner-loop kernels behind the DST matvecs and the marching row updates.
// A scalar reference implementation and SIMD variants (AVX2+FMA on x86-64,
// NEON on aarch64) are selected at runtime. Every variant performs the same
// per-element operation sequence (one fma per accumulate), so results are
// bit-identical across backends; the equivalence tests assert exact equality.

namespace helmstab::kernels {

enum class Backend { scalar, avx2, neon };

Backend active();
Backend best_available();
// Test hook. Throws if the requested backend is not available on this CPU.
void force_backend(Backend b);
std::string backend_name(Backend b);

// acc[i] += s * v[i]  (as fma(s, v[i], acc[i]))
void axpy(double s, const double* v, double* acc, int n);

// Leapfrog row update:
//   out[i] = fma(dx2, fma(b[i], src[i], s[i]*c[i]), (c[i]+c[i]) - prev[i])
void leapfrog_row(const double* c, const double* prev, const double* s,
                  const double* b, const double* src, double dx2,
                  double* out, int n);

// Taylor startup row (zero Neumann datum):
//   out[i] = fma(half_dx2, fma(b[i], src[i], s[i]*c0[i]), c0[i])
void taylor_row(const double* c0, const double* s, const double* b,
                const double* src, double half_dx2, double* out, int n);

} // namespace helmstab::kernels
