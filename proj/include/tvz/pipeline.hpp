#pragma once

#include <optional>

#include "tvz/classify.hpp"

namespace tvz {

struct PipelineOptions {
  bool coarsen = false;
  int threads = 0;  // 0 = library default
};

// Per-cone labels: diagnostics, Delta data, fibre class, lattice reports.
struct ConeLabel {
  ConeDiagnostics diag;
  DeltaData delta;
  FiberClass fiber;
  EquidimReport equidim;
  int levels = 0;
};

struct PipelineResult {
  TropCover cover;
  std::vector<AdmissibleFunction> fns;
  Fan sigma;
  std::vector<ConeLabel> sigma_labels;
  std::optional<Fan> sigma_prime;
  std::vector<ConeLabel> prime_labels;
  std::vector<std::string> reports;        // warnings and notes
  std::vector<std::string> discrepancies;  // paper-claim violations

  const Fan& final_fan() const { return sigma_prime ? *sigma_prime : sigma; }
  const std::vector<ConeLabel>& final_labels() const {
    return sigma_prime ? prime_labels : sigma_labels;
  }
};

// Labels every maximal cone; the serial and the OpenMP path must agree
// exactly (each cone's label is a pure function of its data).
std::vector<ConeLabel> label_fan_serial(const TropCover& cover, const Fan& fan);
std::vector<ConeLabel> label_fan_parallel(const TropCover& cover, const Fan& fan);

PipelineResult run_pipeline(const TropCover& cover, const PipelineOptions& opts);

}  // namespace tvz
