#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace permwordle {

/// Worker count: hardware concurrency, capped by PERMWORDLE_THREADS when set.
inline unsigned worker_count() {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("PERMWORDLE_THREADS")) {
    try {
      const long v = std::stol(cap);
      if (v >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      // unparsable cap: ignore
    }
  }
  return workers;
}

}  // namespace permwordle
