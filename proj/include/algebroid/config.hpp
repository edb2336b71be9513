#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace algebroid {

using Complex = std::complex<double>;

/// Error thrown by operations whose preconditions or domain constraints are
/// violated (zero polynomial roots, degenerate resultants, paths through
/// critical points, ...). Messages are stable and tested.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric tolerances. Every threshold used by the library lives here so a
/// caller can tighten or relax the whole pipeline in one place.
struct Tolerances {
    double coeff = 1e-10;        // trailing-coefficient trim (relative)
    double gcd = 1e-8;           // approximate-GCD cutoff
    double root = 1e-10;         // residual contract for poly_roots
    double val = 1e-8;           // synthetic-division valuation cutoff
    double merge = 1e-7;         // point deduplication radius
    double path_margin = 1e-3;   // minimum path distance to critical points
    double track = 1e-9;         // continuation corrector tolerance
    double deriv = 1e-7;         // branch-derivative residual check
    double quad = 1e-6;          // circle-quadrature stopping tolerance
    double radius_margin = 1e-3; // relative radius snap-away margin
    double verify_eps = 5e-6;    // numeric allowance for zero-slack checks
};

/// Mutable process-wide defaults. Not intended to be mutated concurrently
/// with running computations.
inline Tolerances& tols() {
    static Tolerances t;
    return t;
}

inline double abs2(Complex c) { return c.real() * c.real() + c.imag() * c.imag(); }

} // namespace algebroid
