#include "parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qfdiv {

namespace {

unsigned initialThreads() {
  if (const char* env = std::getenv("QFDIV_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<unsigned>& threadsSetting() {
  static std::atomic<unsigned> value{initialThreads()};
  return value;
}

}  // namespace

unsigned defaultThreads() { return threadsSetting().load(); }

void setDefaultThreads(unsigned threads) { threadsSetting().store(threads == 0 ? initialThreads() : threads); }

}  // namespace qfdiv
