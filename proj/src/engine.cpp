#include "vcp/engine.hpp"

#include <thread>

namespace vcp {

unsigned default_worker_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

void EngineConfig::validate() const {
  if (workers == 0) throw ConfigError("worker count must be at least 1");
  if (chunk_size == 0) throw ConfigError("chunk size must be at least 1");
  if (max_supersteps == 0) throw ConfigError("max_supersteps must be at least 1");
  // activation stamps are 32-bit superstep numbers
  if (max_supersteps >= 0xFFFFFFFFull) throw ConfigError("max_supersteps must be below 2^32 - 1");
}

}  // namespace vcp
