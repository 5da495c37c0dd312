#pragma once

#include "ssl/eigensolver.hpp"

namespace ssl {

enum class BesselKind { ZeroOfJ, ZeroOfJPrime };

/// Bessel function of the first kind J_p(x), p >= 0.
double bessel_j(int p, double x);
/// Derivative J_p'(x).
double bessel_j_prime(int p, double x);

/// q-th positive zero of J_p or J_p' (x = 0 is never counted).
/// Supported range: p <= 10, q <= 10; absolute accuracy 1e-10.
double bessel_root(int p, int q, BesselKind kind);

/// Neumann spectrum of the a x b rectangle: pi^2 (m^2/a^2 + n^2/b^2), sorted, zero mode first.
Spectrum rectangle_spectrum(double a, double b, int kmax);
/// Neumann spectrum of the disk of radius R: (j'_{p,q}/R)^2, doubled for p >= 1.
Spectrum disk_spectrum(double R, int kmax);

}  // namespace ssl
