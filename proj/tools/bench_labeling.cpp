// Compares the serial reference labelling with the OpenMP path on a batch of
// random covers: identical results required, timings reported.

#include <chrono>
#include <iostream>
#include <sstream>

#include "tvz/pipeline.hpp"
#include "tvz/sample.hpp"

namespace {

std::string label_digest(const std::vector<tvz::ConeLabel>& labels) {
  std::ostringstream os;
  for (const auto& l : labels) {
    os << l.fiber.tag() << "|" << l.levels << "|" << (l.diag.smooth ? 1 : 0) << "|"
       << l.diag.index.get_str() << "|" << l.delta.interior_weight << ";";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  int cases = argc > 1 ? std::atoi(argv[1]) : 40;
  std::mt19937_64 rng(20240917);

  std::vector<std::pair<tvz::TropCover, tvz::Fan>> batch;
  while (static_cast<int>(batch.size()) < cases) {
    auto cover = tvz::sample_cover(rng);
    if (!cover) continue;
    auto fns = tvz::enumerate_admissible(*cover);
    try {
      tvz::Fan fan = tvz::build_alignment_fan(*cover, fns);
      batch.push_back({std::move(*cover), std::move(fan)});
    } catch (const tvz::DiscrepancyError&) {
      continue;
    }
  }

  using clock = std::chrono::steady_clock;
  size_t cones = 0;
  for (const auto& [cover, fan] : batch) cones += fan.maximal.size();

  auto t0 = clock::now();
  std::vector<std::string> serial;
  for (const auto& [cover, fan] : batch)
    serial.push_back(label_digest(tvz::label_fan_serial(cover, fan)));
  auto t1 = clock::now();
  std::vector<std::string> parallel;
  for (const auto& [cover, fan] : batch)
    parallel.push_back(label_digest(tvz::label_fan_parallel(cover, fan)));
  auto t2 = clock::now();

  bool same = serial == parallel;
  double ts = std::chrono::duration<double, std::milli>(t1 - t0).count();
  double tp = std::chrono::duration<double, std::milli>(t2 - t1).count();
  std::cout << "covers: " << batch.size() << ", cones labelled: " << cones << "\n";
  std::cout << "serial:   " << ts << " ms\n";
  std::cout << "parallel: " << tp << " ms (speedup x" << (tp > 0 ? ts / tp : 0) << ")\n";
  std::cout << "results identical: " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}
