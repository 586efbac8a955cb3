#include "ergoquench/app/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace ergoquench::app {

std::size_t thread_budget() {
  if (const char* env = std::getenv("ERGOQUENCH_THREADS")) {
    const std::string_view s(env);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return n;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace ergoquench::app
