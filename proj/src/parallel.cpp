#include "cournot/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cournot {

int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("COURNOT_THREADS")) {
    try {
      const int limit = std::stoi(cap);
      if (limit >= 1 && limit < n) n = limit;
    } catch (...) {
      // unparsable cap is ignored
    }
  }
  return n;
}

}  // namespace cournot
