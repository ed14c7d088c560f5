#include "dqm/linalg.hpp"

#include <cmath>
#include <cstddef>

#include "dqm/errors.hpp"

namespace dqm {
namespace {

using cdouble = std::complex<double>;

// Plain Thomas elimination on explicit bands. Bands are copied by the caller;
// this routine destroys them.
std::vector<cdouble> thomas(std::vector<cdouble> lower, std::vector<cdouble> diag,
                            std::vector<cdouble> upper, std::vector<cdouble> rhs) {
    const std::size_t n = diag.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(diag[i]) + std::abs(lower[i]) + std::abs(upper[i]));
    }
    const double tiny = 1e-14 * scale;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(diag[i - 1]) <= tiny) {
            throw NumericError("singular tridiagonal system");
        }
        const cdouble w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (std::abs(diag[n - 1]) <= tiny) {
        throw NumericError("singular tridiagonal system");
    }
    std::vector<cdouble> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    }
    return x;
}

}  // namespace

std::vector<cdouble> Tridiagonal::apply(std::span<const cdouble> in) const {
    const std::size_t n = size();
    std::vector<cdouble> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cdouble v = diag[i] * in[i];
        if (i > 0) {
            v += lower[i] * in[i - 1];
        }
        if (i + 1 < n) {
            v += upper[i] * in[i + 1];
        }
        out[i] = v;
    }
    if (cyclic && n > 2) {
        out[0] += corner_first_last * in[n - 1];
        out[n - 1] += corner_last_first * in[0];
    }
    return out;
}

std::vector<cdouble> solve_tridiagonal(const Tridiagonal& a, std::span<const cdouble> rhs) {
    const std::size_t n = a.size();
    if (rhs.size() != n) {
        throw StateError("tridiagonal solve: rhs size does not match operator");
    }
    if (n == 0) {
        return {};
    }
    std::vector<cdouble> b(rhs.begin(), rhs.end());
    if (!a.cyclic || n <= 2) {
        return thomas(a.lower, a.diag, a.upper, std::move(b));
    }

    // Sherman-Morrison: write A = T + u v^T with u = (gamma, 0, .., alpha)^T
    // and v = (1, 0, .., beta/gamma)^T, where beta = A(0,n-1), alpha = A(n-1,0).
    const cdouble beta = a.corner_first_last;
    const cdouble alpha = a.corner_last_first;
    cdouble gamma = -a.diag[0];
    if (std::abs(gamma) == 0.0) {
        gamma = cdouble(1.0, 0.0);
    }
    std::vector<cdouble> diag = a.diag;
    diag[0] -= gamma;
    diag[n - 1] -= alpha * beta / gamma;

    std::vector<cdouble> u(n, cdouble(0.0, 0.0));
    u[0] = gamma;
    u[n - 1] = alpha;

    auto y = thomas(a.lower, diag, a.upper, std::move(b));
    auto z = thomas(a.lower, diag, a.upper, std::move(u));

    const cdouble vy = y[0] + beta / gamma * y[n - 1];
    const cdouble vz = z[0] + beta / gamma * z[n - 1];
    const cdouble denom = cdouble(1.0, 0.0) + vz;
    if (std::abs(denom) <= 1e-14) {
        throw NumericError("singular cyclic tridiagonal system");
    }
    const cdouble factor = vy / denom;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] -= factor * z[i];
    }
    return y;
}

}  // namespace dqm
