#pragma once

namespace bose2d {

/// Worker cap from BOSE2D_THREADS (positive integer), or 0 when unset/invalid.
int thread_cap_from_env();
/// Applies the BOSE2D_THREADS cap to the OpenMP runtime, if set.
void apply_thread_cap();

}  // namespace bose2d
