#include "anivisc/kernels.hpp"

#if defined(ANIVISC_HAVE_AVX2) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace anivisc::kernels {
namespace {

// Each __m256d holds two complex numbers laid out (re0, im0, re1, im1).

inline double* re(Complex* p) { return reinterpret_cast<double*>(p); }
inline const double* re(const Complex* p) { return reinterpret_cast<const double*>(p); }

// (k[i], k[i], k[i+1], k[i+1])
inline __m256d dup_pair(const double* k) {
  const __m128d two = _mm_loadu_pd(k);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(two), 0b01010000);
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

void scale(Complex* x, double a, std::size_t n) {
  double* d = re(x);
  const std::size_t m = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), av));
  for (; i < m; ++i) d[i] = d[i] * a;
}

void axpy(Complex* y, double a, const Complex* x, std::size_t n) {
  double* yd = re(y);
  const double* xd = re(x);
  const std::size_t m = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d p = _mm256_mul_pd(av, _mm256_loadu_pd(xd + i));
    _mm256_storeu_pd(yd + i, _mm256_add_pd(_mm256_loadu_pd(yd + i), p));
  }
  for (; i < m; ++i) yd[i] = yd[i] + a * xd[i];
}

void axpby(Complex* out, double a, const Complex* x, double b, const Complex* y,
           std::size_t n) {
  double* o = re(out);
  const double* xd = re(x);
  const double* yd = re(y);
  const std::size_t m = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  const __m256d bv = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d p = _mm256_mul_pd(av, _mm256_loadu_pd(xd + i));
    const __m256d q = _mm256_mul_pd(bv, _mm256_loadu_pd(yd + i));
    _mm256_storeu_pd(o + i, _mm256_add_pd(p, q));
  }
  for (; i < m; ++i) o[i] = a * xd[i] + b * yd[i];
}

void mul_real(Complex* out, const Complex* a, const Complex* b, std::size_t n) {
  double* o = re(out);
  const double* ad = re(a);
  const double* bd = re(b);
  const __m256d keep_re = _mm256_castsi256_pd(_mm256_set_epi64x(0, -1, 0, -1));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(ad + 2 * i), _mm256_loadu_pd(bd + 2 * i));
    _mm256_storeu_pd(o + 2 * i, _mm256_and_pd(p, keep_re));
  }
  for (; i < n; ++i) {
    o[2 * i] = ad[2 * i] * bd[2 * i];
    o[2 * i + 1] = 0.0;
  }
}

double norm2(const Complex* x, std::size_t n) {
  const double* d = re(x);
  const std::size_t m = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(d + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double s = hsum(acc);
  for (; i < m; ++i) s += d[i] * d[i];
  return s;
}

double weighted_norm2(const Complex* x, const double* w, std::size_t n) {
  const double* d = re(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(d + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(dup_pair(w + i), _mm256_mul_pd(v, v)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
  return s;
}

double max_abs_real(const Complex* x, std::size_t n) {
  const double* d = re(x);
  const __m256d keep_re_abs =
      _mm256_castsi256_pd(_mm256_set_epi64x(0, 0x7fffffffffffffffLL, 0, 0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(d + 2 * i), keep_re_abs));
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, acc);
  double mx = std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
  for (; i < n; ++i) mx = std::max(mx, std::abs(d[2 * i]));
  return mx;
}

void mul_ik(Complex* out, const Complex* x, const double* k, std::size_t n) {
  double* o = re(out);
  const double* d = re(x);
  const __m256d neg_re = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(d + 2 * i);
    const __m256d sw = _mm256_permute_pd(v, 0b0101);  // (im, re, im, re)
    const __m256d p = _mm256_mul_pd(dup_pair(k + i), sw);
    _mm256_storeu_pd(o + 2 * i, _mm256_xor_pd(p, neg_re));
  }
  for (; i < n; ++i) {
    const double r = d[2 * i];
    const double im = d[2 * i + 1];
    o[2 * i] = -(k[i] * im);
    o[2 * i + 1] = k[i] * r;
  }
}

void neg_i_div(Complex* out, const Complex* p1, const Complex* p2, const Complex* p3,
               double k1, double k2, const double* k3, std::size_t n) {
  double* o = re(out);
  const double* a = re(p1);
  const double* b = re(p2);
  const double* c = p3 ? re(p3) : nullptr;
  const __m256d k1v = _mm256_set1_pd(k1);
  const __m256d k2v = _mm256_set1_pd(k2);
  const __m256d neg_im = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d s = _mm256_add_pd(_mm256_mul_pd(k1v, _mm256_loadu_pd(a + 2 * i)),
                              _mm256_mul_pd(k2v, _mm256_loadu_pd(b + 2 * i)));
    if (c) s = _mm256_add_pd(s, _mm256_mul_pd(dup_pair(k3 + i), _mm256_loadu_pd(c + 2 * i)));
    const __m256d sw = _mm256_permute_pd(s, 0b0101);  // (si, sr, ...)
    _mm256_storeu_pd(o + 2 * i, _mm256_xor_pd(sw, neg_im));
  }
  for (; i < n; ++i) {
    double sr = k1 * a[2 * i] + k2 * b[2 * i];
    double si = k1 * a[2 * i + 1] + k2 * b[2 * i + 1];
    if (c) {
      sr = sr + k3[i] * c[2 * i];
      si = si + k3[i] * c[2 * i + 1];
    }
    o[2 * i] = si;
    o[2 * i + 1] = -sr;
  }
}

void leray_line(Complex* v1, Complex* v2, Complex* v3, double k1, double k2,
                const double* k3, std::size_t n) {
  double* a = re(v1);
  double* b = re(v2);
  double* c = v3 ? re(v3) : nullptr;
  const double kh2 = k1 * k1 + k2 * k2;
  const __m256d k1v = _mm256_set1_pd(k1);
  const __m256d k2v = _mm256_set1_pd(k2);
  const __m256d kh2v = _mm256_set1_pd(kh2);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d kz = c ? dup_pair(k3 + i) : zero;
    const __m256d ksq = _mm256_add_pd(kh2v, _mm256_mul_pd(kz, kz));
    const __m256d is_zero = _mm256_cmp_pd(ksq, zero, _CMP_EQ_OQ);
    const __m256d inv = _mm256_div_pd(one, _mm256_blendv_pd(ksq, one, is_zero));
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    __m256d dot = _mm256_add_pd(_mm256_mul_pd(k1v, va), _mm256_mul_pd(k2v, vb));
    __m256d vc = zero;
    if (c) {
      vc = _mm256_loadu_pd(c + 2 * i);
      dot = _mm256_add_pd(dot, _mm256_mul_pd(kz, vc));
    }
    const __m256d f = _mm256_andnot_pd(is_zero, _mm256_mul_pd(dot, inv));
    const __m256d na = _mm256_sub_pd(va, _mm256_mul_pd(k1v, f));
    const __m256d nb = _mm256_sub_pd(vb, _mm256_mul_pd(k2v, f));
    _mm256_storeu_pd(a + 2 * i, _mm256_blendv_pd(na, va, is_zero));
    _mm256_storeu_pd(b + 2 * i, _mm256_blendv_pd(nb, vb, is_zero));
    if (c) {
      const __m256d nc = _mm256_sub_pd(vc, _mm256_mul_pd(kz, f));
      _mm256_storeu_pd(c + 2 * i, _mm256_blendv_pd(nc, vc, is_zero));
    }
  }
  for (; i < n; ++i) {
    const double kz = c ? k3[i] : 0.0;
    const double ksq = kh2 + kz * kz;
    if (ksq == 0.0) continue;
    const double inv = 1.0 / ksq;
    for (int part = 0; part < 2; ++part) {
      const std::size_t j = 2 * i + part;
      double dot = k1 * a[j] + k2 * b[j];
      if (c) dot = dot + kz * c[j];
      const double f = dot * inv;
      a[j] = a[j] - k1 * f;
      b[j] = b[j] - k2 * f;
      if (c) c[j] = c[j] - kz * f;
    }
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::avx2, scale,        axpy,   axpby,     mul_real,
                                 norm2,     weighted_norm2, max_abs_real, mul_ik,
                                 neg_i_div, leray_line};
  return &table;
}

}  // namespace anivisc::kernels

#else

namespace anivisc::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace anivisc::kernels

#endif
