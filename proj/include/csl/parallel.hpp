#pragma once

namespace csl {

/// Applies a worker-count request to the OpenMP runtime. 0 keeps the
/// runtime default; without OpenMP this is a no-op.
void set_jobs(int jobs);

int max_jobs();

}  // namespace csl
