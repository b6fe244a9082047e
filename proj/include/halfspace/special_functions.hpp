#pragma once

namespace halfspace {

/// Modified Bessel functions of the second kind K_0 and K_1, evaluated together.
///
/// x <= 2: ascending series
///   K_0(x) = -(ln(x/2) + gamma) I_0(x) + sum_{k>=1} H_k t^k / (k!)^2,          t = x^2/4
///   K_1(x) = 1/x + ln(x/2) I_1(x) - (x/4) sum_{k>=0} (psi(k+1) + psi(k+2)) t^k / (k!(k+1)!)
/// x > 2: Steed's continued fraction (Temme's CF2 for nu = 0), which yields
///   K_0 = sqrt(pi/(2x)) e^{-x} / S and K_1 = K_0 (x + 1/2 - h) / x.
/// Both branches converge to double precision (relative error ~1e-15).
struct BesselK01 {
  double k0;
  double k1;
};

/// Throws DomainError for x <= 0.
BesselK01 bessel_k01(double x);
double bessel_k0(double x);
double bessel_k1(double x);

}  // namespace halfspace
