#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace dqm::detail {

// In-place radix-2 Cooley-Tukey. n must be a power of two (grid constructors
// enforce this for periodic grids). Unscaled: forward then inverse yields
// n * identity.
inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double sign = inverse ? 1.0 : -1.0;
        const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto w = std::polar(1.0, base * static_cast<double>(j));
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

}  // namespace dqm::detail
