#pragma once

#include <cstddef>
#include <functional>

namespace cb {

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Work items are
/// claimed dynamically, so body must not depend on which thread runs it.
/// The first exception thrown by any item is rethrown after all threads join.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace cb
