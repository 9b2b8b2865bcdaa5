// Data-parallel loop over immutable inputs. Thread count is capped by the
// QCHARMLAB_THREADS environment variable (0 or unset = hardware default).

#ifndef QCHARMLAB_PARALLEL_HPP
#define QCHARMLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qcharmlab {

int worker_count();

// Invokes fn(i) for i in [0, n). fn must not touch shared mutable state
// except its own output slot; results are deterministic regardless of the
// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qcharmlab

#endif
