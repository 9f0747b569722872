#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "gcnn.hpp"

namespace gconv {

using json = nlohmann::json;

/// [re, im] pairs; plain numbers are read as real.
json to_json(cplx z);
cplx complex_from_json(const json& j);
/// Rows of [re, im] pairs.
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

/// Labels of a small generating set of H.
std::vector<std::string> subgroup_generator_labels(const Subgroup& H);

/// {"group": "S3", "quotient": {"kind": "LEFT", "H": ["(12)"]}}.
json space_to_json(const QuotientSpace& space);
/// Builds the group from its spec when `group` is null, otherwise checks
/// the name matches.
SpacePtr space_from_json(const json& j, GroupPtr group = nullptr);
/// Only the "quotient" object, over a known group.
SpacePtr quotient_from_json(const json& q, const GroupPtr& group);

/// {"space": ..., "shape": [r, c], "values": [[[re, im], ...], ...]}, each
/// point a row-major list of entries, points in canonical order.
json function_to_json(const SpaceFunction& f);
SpaceFunction function_from_json(const json& j, GroupPtr group = nullptr);

json network_to_json(const Network& net);
Network network_from_json(const json& j);

/// One numeric check. `expect` is "below" (residual < threshold) or
/// "above" (residual > threshold).
struct Check {
  std::string name;
  double residual = 0;
  double threshold = 0;
  std::string expect = "below";
  bool pass = false;
  double seconds = 0;
};

struct Report {
  std::string command;
  json config = json::object();
  std::vector<Check> checks;
  json result;  // command payload, may be null
  bool timing = false;

  Check& add(std::string name, double residual, double threshold, std::string expect = "below", double seconds = 0);
  /// |a - b| against 0.5, for exact counts.
  Check& add_count(std::string name, std::size_t got, std::size_t want);
  bool pass() const;

  json to_json() const;
  static Report from_json(const json& j);
  /// Fixed-width table of the checks.
  std::string table() const;
};

}  // namespace gconv
