#include <algorithm>
#include <cmath>

#include "anivisc/kernels.hpp"

namespace anivisc::kernels {
namespace {

inline double* re(Complex* p) { return reinterpret_cast<double*>(p); }
inline const double* re(const Complex* p) { return reinterpret_cast<const double*>(p); }

void scale(Complex* x, double a, std::size_t n) {
  double* d = re(x);
  for (std::size_t i = 0; i < 2 * n; ++i) d[i] = d[i] * a;
}

void axpy(Complex* y, double a, const Complex* x, std::size_t n) {
  double* yd = re(y);
  const double* xd = re(x);
  for (std::size_t i = 0; i < 2 * n; ++i) yd[i] = yd[i] + a * xd[i];
}

void axpby(Complex* out, double a, const Complex* x, double b, const Complex* y,
           std::size_t n) {
  double* o = re(out);
  const double* xd = re(x);
  const double* yd = re(y);
  for (std::size_t i = 0; i < 2 * n; ++i) o[i] = a * xd[i] + b * yd[i];
}

void mul_real(Complex* out, const Complex* a, const Complex* b, std::size_t n) {
  double* o = re(out);
  const double* ad = re(a);
  const double* bd = re(b);
  for (std::size_t i = 0; i < n; ++i) {
    o[2 * i] = ad[2 * i] * bd[2 * i];
    o[2 * i + 1] = 0.0;
  }
}

double norm2(const Complex* x, std::size_t n) {
  const double* d = re(x);
  double s = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) s += d[i] * d[i];
  return s;
}

double weighted_norm2(const Complex* x, const double* w, std::size_t n) {
  const double* d = re(x);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
  }
  return s;
}

double max_abs_real(const Complex* x, std::size_t n) {
  const double* d = re(x);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(d[2 * i]));
  return m;
}

void mul_ik(Complex* out, const Complex* x, const double* k, std::size_t n) {
  double* o = re(out);
  const double* d = re(x);
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) {
    double sr = k1 * a[2 * i] + k2 * b[2 * i];
    double si = k1 * a[2 * i + 1] + k2 * b[2 * i + 1];
    if (c) {
      sr = sr + k3[i] * c[2 * i];
      si = si + k3[i] * c[2 * i + 1];
    }
    // -i (sr + i si) = si - i sr
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
  for (std::size_t i = 0; i < n; ++i) {
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

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar, scale,        axpy,   axpby,     mul_real,
                                 norm2,       weighted_norm2, max_abs_real, mul_ik,
                                 neg_i_div,   leray_line};
  return table;
}

}  // namespace anivisc::kernels
