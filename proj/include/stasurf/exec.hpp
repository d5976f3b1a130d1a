#pragma once
/** \file
 * \brief Serial / OpenMP execution of independent index ranges.
 *
 * Every grid kernel takes an Exec argument. The serial path is the reference
 * the tests compare against; results never depend on the schedule because
 * each index writes only its own slot and reductions happen afterwards in
 * index order.
 */

#include <exception>
#include <vector>

namespace stasurf {

enum class Exec { Serial, Parallel };

/// body(i) for i in [0, n). An exception from any index is rethrown after the
/// loop; with several, the one from the lowest index wins.
template <class F>
void for_each_index(int n, Exec exec, const F& body) {
    if (exec == Exec::Serial || n < 2) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace stasurf
