#pragma once

#include <string>
#include <vector>

#include "tvz/classify.hpp"

namespace tvz {

// I/O failures (malformed documents, schema violations); CLI exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct CoverDocument {
  struct Vertex {
    std::string id;
    int genus = 0;
    int weight = 0;
    std::string target_vertex;
  };
  struct Edge {
    std::string id;
    std::string end0, end1;
    std::string target_edge;
    int expansion = 1;
  };
  struct Leg {
    std::string id;
    std::string base;
    std::string kind;  // "marking" | "branch"
    std::string label;
    std::string target_leg;  // source marking legs only
  };
  struct Options {
    int truncation = 12;
    bool coarsen = false;
  };

  std::vector<Vertex> vertices;      // source
  std::vector<Edge> edges;           // source
  std::vector<Leg> legs;             // source (markings)
  std::vector<std::string> target_vertices;
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> target_edges;
  std::vector<Leg> target_legs;
  Options options;
};

CoverDocument parse_cover_document(const std::string& json_text);
std::string serialize_cover_document(const CoverDocument& doc);
TropCover cover_from_document(const CoverDocument& doc);

// 64-bit FNV-1a, hex-encoded; used for document provenance.
std::string fnv1a_hex(const std::string& bytes);

struct PipelineOptions;
struct PipelineResult;

std::string serialize_fan_document(const PipelineResult& result, bool coarsened,
                                   const std::string& input_hash);

// Re-parses a fan document and re-serializes it; used by the round-trip
// checks (the result must be byte-identical for well-formed documents).
std::string reserialize_fan_document(const std::string& json_text);

std::string export_dot(const TropCover& cover, const FanCone* labelled);
std::string export_tikz(const TropCover& cover, const FanCone* labelled);

std::string rat_vec_str(const std::vector<Rat>& v);

}  // namespace tvz
