#pragma once

#include <complex>

namespace arraymirror {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
// Weideman's rational approximation with 40 terms; relative error ~1e-14
// over the region the lattice sums touch.
std::complex<double> faddeeva_upper(std::complex<double> z);

// Complementary error function of complex argument, any quadrant.
std::complex<double> cerfc(std::complex<double> z);

}  // namespace arraymirror
