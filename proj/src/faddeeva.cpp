#include "arraymirror/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace arraymirror {

namespace {

constexpr int kTerms = 40;

struct WeidemanTable {
  double L;
  std::array<double, kTerms> a;  // a[j] multiplies Z^j

  WeidemanTable() {
    constexpr int M = 2 * kTerms;
    constexpr int M2 = 2 * M;
    L = std::sqrt(kTerms / std::numbers::sqrt2);
    // Samples on k = -M+1..M-1 with a leading zero, rotated by M2/2 so the
    // k = 0 sample sits at index 0 (fftshift), then a real DFT.
    std::array<double, M2> f{};
    for (int k = -M + 1; k <= M - 1; ++k) {
      const double t = L * std::tan(k * std::numbers::pi / M2);
      const int idx = k + M;  // position after the leading zero
      f[static_cast<std::size_t>((idx + M2 / 2) % M2)] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int j = 1; j <= kTerms; ++j) {
      double s = 0.0;
      for (int n = 0; n < M2; ++n) {
        s += f[static_cast<std::size_t>(n)] * std::cos(2.0 * std::numbers::pi * j * n / M2);
      }
      a[static_cast<std::size_t>(j - 1)] = s / M2;
    }
  }
};

const WeidemanTable& table() {
  static const WeidemanTable t;
  return t;
}

}  // namespace

std::complex<double> faddeeva_upper(std::complex<double> z) {
  const auto& tb = table();
  const std::complex<double> iz{-z.imag(), z.real()};
  const std::complex<double> den = tb.L - iz;
  const std::complex<double> Z = (tb.L + iz) / den;
  std::complex<double> p = 0.0;
  for (int j = kTerms - 1; j >= 0; --j) p = p * Z + tb.a[static_cast<std::size_t>(j)];
  return 2.0 * p / (den * den) + (1.0 / std::sqrt(std::numbers::pi)) / den;
}

std::complex<double> cerfc(std::complex<double> z) {
  const std::complex<double> iz{-z.imag(), z.real()};
  if (z.real() >= 0.0) return std::exp(-z * z) * faddeeva_upper(iz);
  return 2.0 - std::exp(-z * z) * faddeeva_upper(-iz);
}

}  // namespace arraymirror
