#ifndef RLO_PARALLEL_HPP
#define RLO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace rlo {

// Worker count: hardware concurrency, capped by RLO_THREADS when set.
unsigned worker_count();

// Runs body(task, worker) for task in [0, tasks). Tasks are handed out
// statically (task % workers), so callers that combine per-task results
// in task order get thread-count independent output.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t, unsigned)>& body,
                  unsigned workers = 0);

}  // namespace rlo

#endif
