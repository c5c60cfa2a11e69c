#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "qdim/parallel.hpp"

TEST_CASE("parallel_for visits each index once and honours QDIM_THREADS") {
  ::setenv("QDIM_THREADS", "3", 1);
  CHECK(qdim::thread_count() <= 3);
  CHECK(qdim::thread_count() >= 1);
  std::vector<std::atomic<int>> hits(1000);
  qdim::parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h == 1);

  ::setenv("QDIM_THREADS", "1", 1);
  CHECK(qdim::thread_count() == 1);
  ::unsetenv("QDIM_THREADS");

  CHECK_THROWS_AS(qdim::parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
