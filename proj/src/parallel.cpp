#include "bose2d/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace bose2d {

int thread_cap_from_env() {
  const char* s = std::getenv("BOSE2D_THREADS");
  if (s == nullptr || *s == '\0') return 0;
  try {
    std::size_t pos = 0;
    const int n = std::stoi(s, &pos);
    return pos == std::string(s).size() && n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

void apply_thread_cap() {
  const int cap = thread_cap_from_env();
  if (cap > 0) omp_set_num_threads(cap);
}

}  // namespace bose2d
