#include "ssl/reference_spectra.hpp"

#include <algorithm>
#include <cmath>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

constexpr double kSeriesLimit = 12.0;

long double series_j(int p, long double x) {
  const long double half = x / 2.0L;
  long double term = 1.0L;
  for (int i = 1; i <= p; ++i) term *= half / i;
  long double sum = term;
  const long double h2 = half * half;
  for (int m = 1; m < 200; ++m) {
    term *= -h2 / (static_cast<long double>(m) * (m + p));
    sum += term;
    if (std::abs(term) < 1e-22L * std::max(1.0L, std::abs(sum))) break;
  }
  return sum;
}

}  // namespace

double bessel_j(int p, double x) {
  if (p < 0) throw Error(ErrorKind::InvalidInput, "negative Bessel order");
  if (std::abs(x) <= kSeriesLimit) return static_cast<double>(series_j(p, x));
  const double v = std::cyl_bessel_j(static_cast<double>(p), std::abs(x));
  return (x < 0 && p % 2 == 1) ? -v : v;
}

double bessel_j_prime(int p, double x) {
  if (p == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(p - 1, x) - bessel_j(p + 1, x));
}

double bessel_root(int p, int q, BesselKind kind) {
  if (p < 0 || q < 1) throw Error(ErrorKind::InvalidInput, "Bessel root needs p >= 0 and q >= 1");
  auto g = [&](double x) { return kind == BesselKind::ZeroOfJ ? bessel_j(p, x) : bessel_j_prime(p, x); };
  const double step = 0.02;
  double a = step, ga = g(a);
  int found = 0;
  for (int i = 0; i < 1000000; ++i) {
    const double b = a + step;
    const double gb = g(b);
    if ((ga < 0.0) != (gb < 0.0)) {
      if (++found == q) {
        double lo = a, hi = b, glo = ga;
        while (hi - lo > 1e-14 * hi) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g(mid);
          if ((gm < 0.0) == (glo < 0.0)) lo = mid, glo = gm;
          else hi = mid;
        }
        return 0.5 * (lo + hi);
      }
    }
    a = b;
    ga = gb;
  }
  throw Error(ErrorKind::SolverDivergence, "Bessel root not bracketed");
}

Spectrum rectangle_spectrum(double a, double b, int kmax) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::InvalidInput, "rectangle sides must be positive");
  Spectrum s;
  const int reach = kmax + 1;
  for (int m = 0; m <= reach; ++m)
    for (int n = 0; n <= reach; ++n) s.values.push_back(M_PI * M_PI * (m * m / (a * a) + n * n / (b * b)));
  std::sort(s.values.begin(), s.values.end());
  s.values.resize(kmax + 1);
  flag_multiplicities(s);
  return s;
}

Spectrum disk_spectrum(double R, int kmax) {
  if (!(R > 0.0)) throw Error(ErrorKind::InvalidInput, "radius must be positive");
  Spectrum s;
  s.values.push_back(0.0);
  const int reach = std::max(3, kmax / 2 + 2);
  for (int p = 0; p <= reach; ++p)
    for (int q = 1; q <= reach; ++q) {
      const double j = bessel_root(p, q, BesselKind::ZeroOfJPrime);
      const double mu = j * j / (R * R);
      s.values.push_back(mu);
      if (p >= 1) s.values.push_back(mu);
    }
  std::sort(s.values.begin(), s.values.end());
  s.values.resize(kmax + 1);
  flag_multiplicities(s);
  return s;
}

}  // namespace ssl
