#pragma once

#include <cstdint>
#include <utility>

namespace dqm {

/// Execution policy for ensemble kernels. Results are identical bit for bit
/// under either policy: every work item derives its own RNG stream from
/// (base seed, item index) and writes to its own slot, and reductions run in
/// fixed index order afterwards.
enum class Execution { serial, openmp };

template <typename F>
void for_each_index(std::int64_t n, Execution ex, F&& body) {
    if (ex == Execution::openmp) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            body(i);
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            body(i);
        }
    }
}

}  // namespace dqm
