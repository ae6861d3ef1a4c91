#include "macwt/kernels.hpp"

#include <atomic>
#include <cfloat>
#include <cmath>

#if defined(__x86_64__) || defined(__i386__)
#define MACWT_X86 1
#include <immintrin.h>
#else
#define MACWT_X86 0
#endif

namespace macwt::kernels {

namespace scalar {

double sum(const double* p, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += p[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void add_inplace(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double* p, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p[i] *= a;
}

double entropy_sum(const double* p, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = p[i];
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

}  // namespace scalar

#if MACWT_X86

namespace avx2 {

__attribute__((target("avx2"))) double sum(const double* p, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
  double buf[4];
  _mm256_storeu_pd(buf, acc);
  double s = (buf[0] + buf[1]) + (buf[2] + buf[3]);
  for (; i < n; ++i) s += p[i];
  return s;
}

__attribute__((target("avx2"))) double dot(const double* a, const double* b,
                                           std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc,
                        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double buf[4];
  _mm256_storeu_pd(buf, acc);
  double s = (buf[0] + buf[1]) + (buf[2] + buf[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

__attribute__((target("avx2"))) void add_inplace(double* dst, const double* src,
                                                 std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i,
                     _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(src + i)));
  for (; i < n; ++i) dst[i] += src[i];
}

__attribute__((target("avx2"))) void axpy(double a, const double* x, double* y,
                                          std::size_t n) {
  // mul + add (no FMA) so each element rounds exactly like the scalar variant
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i),
                                          _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
  for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2"))) void scale(double* p, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(p + i, _mm256_mul_pd(va, _mm256_loadu_pd(p + i)));
  for (; i < n; ++i) p[i] *= a;
}

// log2 via exponent extraction and the atanh series on the mantissa folded
// into [sqrt(1/2)*sqrt(2) range): log2(m) = t * P(t^2), t = (m-1)/(m+1).
// Coefficients are (2/ln 2)/(2k+1); the truncation tail is < 2e-20 relative.
__attribute__((target("avx2,fma"))) double entropy_sum(const double* p,
                                                       std::size_t n) {
  static const double kC[12] = {
      2.8853900817779268147,  0.96179669392597560491, 0.57707801635558536294,
      0.4121985831111324021,  0.32059889797532520164, 0.26230818925253880134,
      0.22195308321368667806, 0.19235933878519512098, 0.16972882833987804792,
      0.15186263588304877972, 0.1373995277037108007,  0.12545174268599681803};
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d magic = _mm256_set1_pd(0x1p52);
  const __m256d exp_off = _mm256_set1_pd(0x1p52 + 1023.0);
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(p + i);
    // lanes below DBL_MIN (zero or denormal) contribute nothing
    __m256d live = _mm256_cmp_pd(x, tiny, _CMP_GE_OQ);
    __m256i bits = _mm256_castpd_si256(x);
    __m256d e = _mm256_sub_pd(
        _mm256_castsi256_pd(
            _mm256_or_si256(_mm256_srli_epi64(bits, 52), _mm256_castpd_si256(magic))),
        exp_off);
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), _mm256_castpd_si256(one)));
    __m256d fold = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), fold);
    e = _mm256_add_pd(e, _mm256_and_pd(fold, one));
    __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    __m256d w = _mm256_mul_pd(t, t);
    __m256d poly = _mm256_set1_pd(kC[11]);
    for (int k = 10; k >= 0; --k)
      poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(kC[k]));
    __m256d log2x = _mm256_fmadd_pd(t, poly, e);
    acc = _mm256_sub_pd(acc, _mm256_and_pd(_mm256_mul_pd(x, log2x), live));
  }
  double buf[4];
  _mm256_storeu_pd(buf, acc);
  double s = (buf[0] + buf[1]) + (buf[2] + buf[3]);
  for (; i < n; ++i) {
    double v = p[i];
    if (v >= DBL_MIN) s -= v * std::log2(v);
  }
  return s;
}

}  // namespace avx2

#endif  // MACWT_X86

namespace {

std::atomic<bool> g_force_scalar{false};

bool avx2_selected() {
#if MACWT_X86
  static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return has && !g_force_scalar.load(std::memory_order_relaxed);
#else
  return false;
#endif
}

}  // namespace

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const char* active_isa() { return avx2_selected() ? "avx2" : "scalar"; }

#if MACWT_X86
#define MACWT_DISPATCH(fn, ...) \
  return avx2_selected() ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define MACWT_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double sum(const double* p, std::size_t n) { MACWT_DISPATCH(sum, p, n); }
double dot(const double* a, const double* b, std::size_t n) {
  MACWT_DISPATCH(dot, a, b, n);
}
void add_inplace(double* dst, const double* src, std::size_t n) {
  MACWT_DISPATCH(add_inplace, dst, src, n);
}
void axpy(double a, const double* x, double* y, std::size_t n) {
  MACWT_DISPATCH(axpy, a, x, y, n);
}
void scale(double* p, double a, std::size_t n) { MACWT_DISPATCH(scale, p, a, n); }
double entropy_sum(const double* p, std::size_t n) { MACWT_DISPATCH(entropy_sum, p, n); }

#undef MACWT_DISPATCH

}  // namespace macwt::kernels
