#pragma once

#include <complex>
#include <span>

namespace lvflow::special {

using Complex = std::complex<double>;

inline constexpr int kMaxHermiteOrder = 200;

/// Largest |Im z| accepted by the error-function kernels.
inline constexpr double kMaxErfImag = 10.0;

/// Physicists' Hermite polynomial H_n(u) from the three-term recurrence.
/// Throws DomainError for n < 0 or n > kMaxHermiteOrder.
double hermite(int n, double u);

/// Writes H_0(u) .. H_{out.size()-1}(u) into `out` in one recurrence sweep.
void hermite_sequence(double u, std::span<double> out);

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
///
/// Evaluated with the exponentially convergent trapezoidal rule on the
/// integral (i/pi) \int exp(-t^2) / (z - t) dt (step h = 1/2, nodes shifted
/// by h/2 whenever Re z sits close to a node) plus the pole correction
/// 2 exp(-z^2) / (1 -+ exp(-2 pi i z / h)) inside the strip Im z < pi / h.
/// The aliasing error is of order exp(-pi^2 / h^2) ~ 7e-18.  The lower
/// half-plane is reached through w(z) = 2 exp(-z^2) - w(-z).
Complex faddeeva_w(Complex z);

/// erf(z) for |Im z| <= kMaxErfImag.
///
/// Maclaurin series for |z| < 1, otherwise erf(z) = 1 - exp(-z^2) w(iz)
/// evaluated in the quadrant Re z >= 0, Im z >= 0 and mapped to the other
/// quadrants through erf(-z) = -erf(z) and erf(conj z) = conj erf(z), so
/// both symmetries hold bit for bit.
Complex erf_complex(Complex z);

/// Imaginary error function erfi(u) = -i erf(iu), |u| <= kMaxErfImag.
double erfi(double u);

/// exp(x^2) * Im erf(x + i y), |y| <= kMaxErfImag.
///
/// Finite for every finite x: the Gaussian factor is folded into the
/// Faddeeva evaluation instead of being applied to an underflowed Im erf.
double erf_imag_scaled(double x, double y);

} // namespace lvflow::special
