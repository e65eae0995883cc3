#pragma once

#include "tvz/fan.hpp"

namespace tvz {

// The closure of the support of lambda on a resolved cone, together with the
// invariants driving the fibre classification.
struct DeltaData {
  bool empty = true;
  std::vector<std::string> interior_vertices;  // lambda > 0
  std::vector<std::string> boundary_vertices;  // lambda = 0, adjacent to the support
  int interior_weight = 0;
  int interior_genus = 0;
  LinForm rho1, rho_max;
  bool rho1_positive = false;
  int d1_component = -1;  // interior weight when rho1 > 0; -1 otherwise
  std::vector<std::string> support_vertices;   // top-level support of (K + div lambda) on Delta
  std::vector<std::string> crossing_pieces;    // stable crossings from the boundary into the interior
  std::vector<std::string> unstable_crossings; // crossings into weightless unmarked branches
  std::string top_profile;   // catalogued shape of the top level, or "other:..."
  std::vector<std::string> violations;  // paper-invariant violations (discrepancies)
};

DeltaData extract_delta(const TropCover& cover, const FanCone& fc);

struct FiberClass {
  enum class Kind {
    Nodal,
    IsolatedTypeI,
    IsolatedTypeII,
    RamphoidalCusp,
    TailedRibbon,
    TailedRibbonChain,
    GenusOneCompound,
    Unclassified
  };
  enum class Attachment { None, Weierstrass, ConjugatePair };

  Kind kind = Kind::Nodal;
  int branches = 0;  // m
  Attachment attachment = Attachment::None;
  std::vector<int> ribbon_signature;  // (k_1, ..., k_r), sorted
  bool non_geometric = false;         // the weight-one stratum
  std::string diagnostics;

  // Component labels of the classified germ, in the order expected by
  // h1_vanishing multidegrees.
  std::vector<std::string> component_labels() const;
  std::string tag() const;  // canonical short description
};

FiberClass classify_fiber(const DeltaData& delta, const TropCover& cover, const FanCone& fc);

// Sufficient h^1-vanishing test for a nonnegative multidegree on the
// classified fibre (entries aligned with component_labels()).
bool h1_vanishing(const FiberClass& fiber, const std::vector<int>& multidegree);

// (K + div lambda) evaluated on the subdivided curve of the region.
Divisor corrected_canonical(const FanCone& fc);

}  // namespace tvz
