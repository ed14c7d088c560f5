#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dqm {

/// Square operator with three bands, optionally closed periodically through
/// the two corner entries. Band vectors all have length n; lower[0] and
/// upper[n-1] are ignored (the corners take their place when cyclic).
struct Tridiagonal {
    std::vector<std::complex<double>> lower;
    std::vector<std::complex<double>> diag;
    std::vector<std::complex<double>> upper;
    std::complex<double> corner_first_last{0.0, 0.0};  // A(0, n-1)
    std::complex<double> corner_last_first{0.0, 0.0};  // A(n-1, 0)
    bool cyclic = false;

    std::size_t size() const { return diag.size(); }

    std::vector<std::complex<double>> apply(std::span<const std::complex<double>> in) const;
};

/// Solves A x = rhs for a tridiagonal A (Thomas algorithm; cyclic systems go
/// through the rank-one corner correction). Throws NumericError on a singular
/// or numerically degenerate pivot.
std::vector<std::complex<double>> solve_tridiagonal(const Tridiagonal& a,
                                                    std::span<const std::complex<double>> rhs);

}  // namespace dqm
