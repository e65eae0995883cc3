#include "tvz/pipeline.hpp"

#ifdef TVZ_HAVE_OPENMP
#include <omp.h>
#endif

namespace tvz {

namespace {

ConeLabel label_one(const TropCover& cover, const FanCone& fc) {
  ConeLabel l;
  l.diag = cone_diagnostics(fc);
  l.delta = extract_delta(cover, fc);
  l.fiber = classify_fiber(l.delta, cover, fc);
  l.equidim = equidim_reducedness_check(fc, /*use_kummer=*/true);
  l.levels = level_count(fc);
  return l;
}

}  // namespace

std::vector<ConeLabel> label_fan_serial(const TropCover& cover, const Fan& fan) {
  std::vector<ConeLabel> out(fan.maximal.size());
  for (size_t i = 0; i < fan.maximal.size(); ++i) out[i] = label_one(cover, fan.maximal[i]);
  return out;
}

std::vector<ConeLabel> label_fan_parallel(const TropCover& cover, const Fan& fan) {
  std::vector<ConeLabel> out(fan.maximal.size());
  const int n = static_cast<int>(fan.maximal.size());
#ifdef TVZ_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) out[i] = label_one(cover, fan.maximal[i]);
  return out;
}

PipelineResult run_pipeline(const TropCover& cover, const PipelineOptions& opts) {
#ifdef TVZ_HAVE_OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
  PipelineResult r;
  r.cover = cover;
  r.fns = enumerate_admissible(cover);
  r.sigma = build_alignment_fan(cover, r.fns);
  r.sigma_labels = label_fan_parallel(cover, r.sigma);

  for (size_t i = 0; i < r.sigma.maximal.size(); ++i) {
    for (const std::string& v : r.sigma_labels[i].delta.violations)
      r.discrepancies.push_back("cone " + std::to_string(i) + ": " + v);
    for (const std::string& n : r.sigma.maximal[i].lambda.notes)
      r.reports.push_back("cone " + std::to_string(i) + ": " + n);
  }

  if (opts.coarsen) {
    std::vector<std::string> tags;
    for (const ConeLabel& l : r.sigma_labels) tags.push_back(l.fiber.tag());
    std::vector<std::string> merge_reports;
    r.sigma_prime = coarsen(cover, r.sigma, &tags, &merge_reports);
    for (const std::string& m : merge_reports) {
      if (m.find("fibre classes") != std::string::npos)
        r.discrepancies.push_back("coarsen: " + m);
      else
        r.reports.push_back("coarsen: " + m);
    }
    r.prime_labels = label_fan_parallel(cover, *r.sigma_prime);
    for (size_t i = 0; i < r.sigma_prime->maximal.size(); ++i)
      for (const std::string& v : r.prime_labels[i].delta.violations)
        r.discrepancies.push_back("coarsened cone " + std::to_string(i) + ": " + v);
    FanChecks checks = check_fan(*r.sigma_prime);
    if (!checks.pass())
      for (const std::string& p : checks.problems) r.discrepancies.push_back("fan check: " + p);
  }

  // The lattice claims of the paper apply to the final fan: an index that the
  // half-integral extension cannot repair is a discrepancy there.
  {
    const auto& labels = r.final_labels();
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i].diag.unexpected_index)
        r.discrepancies.push_back("final cone " + std::to_string(i) + ": unexpected lattice index");
  }
  return r;
}

}  // namespace tvz
