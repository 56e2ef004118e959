#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace pirnet {

enum class Exec { serial, parallel };

// f(i) for i in [0, n); results must be written to slot i so the
// outcome does not depend on scheduling
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr err;
    std::mutex m;
    const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nn; ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> g(m);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

int max_threads();

}  // namespace pirnet
