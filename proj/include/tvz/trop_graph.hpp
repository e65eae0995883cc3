#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvz/cone.hpp"
#include "tvz/linform.hpp"

namespace tvz {

enum class LegKind { Marking, Branch };

struct GraphVertex {
  std::string id;
  int genus = 0;
  int weight = 0;
};

// Edges carry a fixed but arbitrary stored orientation (tail -> head).
// Self-loops (tail == head) are allowed.
struct GraphEdge {
  std::string id;
  std::string tail;
  std::string head;
  LinForm length;
};

struct GraphLeg {
  std::string id;
  std::string base;
  LegKind kind = LegKind::Marking;
  std::string label;
};

// A finite graph with vertex genus/weight, legs, and edge lengths valued in
// rational linear forms on a base cone.
class TropCurve {
 public:
  TropCurve() = default;
  TropCurve(int base_dim, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges,
            std::vector<GraphLeg> legs);

  int base_dim() const { return base_dim_; }
  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<GraphLeg>& legs() const { return legs_; }

  bool has_vertex(const std::string& id) const { return vindex_.count(id) > 0; }
  const GraphVertex& vertex(const std::string& id) const;
  const GraphEdge& edge(const std::string& id) const;
  const GraphLeg& leg(const std::string& id) const;

  // Edge-ends plus legs at the vertex; a loop counts twice.
  int valence(const std::string& vertex_id) const;
  std::vector<std::string> edges_at(const std::string& vertex_id) const;  // loops listed once
  std::vector<std::string> legs_at(const std::string& vertex_id) const;

  bool connected() const;
  int h1() const;  // #edges - #vertices + #components
  int genus() const;

  // Structural validation; error strings, empty when valid. Edge lengths must
  // be nonnegative and not identically zero on `base`.
  std::vector<std::string> validate(const Cone& base) const;

 private:
  int base_dim_ = 0;
  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<GraphLeg> legs_;
  std::map<std::string, int> vindex_, eindex_, lindex_;
  void reindex();
};

// Rational values on vertices. Divisors on source curves are integral;
// half-integral values occur on targets.
struct Divisor {
  std::map<std::string, Rat> values;

  Rat degree() const;
  Rat at(const std::string& v) const;
  bool effective() const;
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.values == b.values; }
};

// An interior slope change on an edge: position measured from the stored
// tail endpoint, and the slope that holds after the break.
struct EdgeBreak {
  LinForm position;
  Rat slope_after;
};

// A piecewise-linear function: values at vertices (linear forms), one slope
// per edge in the stored orientation (with optional interior breaks), and one
// slope per leg. Leg slopes use the incoming convention: the rate of increase
// toward the base vertex, so an admissible function with slope 1 "along" a
// marking leg stores leg_slope = 1 and contributes -1 to the divisor.
class PLFunction {
 public:
  const TropCurve* curve = nullptr;
  std::map<std::string, LinForm> vertex_values;
  std::map<std::string, Rat> edge_slopes;         // slope tail -> head (initial slope if broken)
  std::map<std::string, std::vector<EdgeBreak>> edge_breaks;  // sorted by position
  std::map<std::string, Rat> leg_slopes;

  Rat slope_out(const std::string& vertex_id, const std::string& edge_id) const;

  // Verifies the compatibility identity on every edge:
  //   value(head) - value(tail) = sum of slope * piece-length.
  // Returns error strings; empty when consistent.
  std::vector<std::string> check_compatibility() const;
};

// K(v) = 2 g(v) - 2 + val(v), with legs counted in the valence.
Divisor canonical_divisor(const TropCurve& curve);

// div(v) = sum of outgoing slopes over edge-ends at v minus the sum of
// (incoming-convention) leg slopes at v. Rejects slope data inconsistent
// with the lengths.
Divisor divisor_of(const PLFunction& pl);

struct BreakPoint {
  std::string edge_id;
  LinForm position;  // from the stored tail endpoint
};

// Interior slope-change positions, per edge. Break positions must be strictly
// increasing and strictly inside the edge (checked against `base` when given).
std::vector<BreakPoint> bending_locus(const PLFunction& pl, const Cone* base = nullptr);

// New curve with genus-0, weight-0 vertices inserted at the break points.
// Inserted vertices get ids "<edge>.b<k>"; edge pieces "<edge>.p<k>".
// back_map (optional) records piece id -> original edge id.
TropCurve subdivide_at_breaks(const TropCurve& curve, const std::vector<BreakPoint>& breaks,
                              std::map<std::string, std::string>* back_map = nullptr);

}  // namespace tvz
