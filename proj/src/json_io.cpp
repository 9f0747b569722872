#include "json_io.hpp"

#include <cstdio>
#include <sstream>

#include "equivariance.hpp"

namespace gconv {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

SubgroupPtr subgroup_field(const json& q, const char* key, const GroupPtr& g) {
  if (!q.contains(key) || q.at(key).is_null()) return nullptr;
  const auto& v = q.at(key);
  if (v.is_string()) return subgroup_from_labels(g, v.get<std::string>());
  if (!v.is_array()) throw ParseError(std::string("'") + key + "' must be a list of element labels");
  std::vector<std::string> labels;
  for (const auto& e : v) {
    if (!e.is_string()) throw ParseError(std::string("'") + key + "' must contain strings");
    labels.push_back(e.get<std::string>());
  }
  return subgroup_from_labels(g, labels);
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("complex values are [re, im] pairs or numbers");
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be a list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Mat m(idx(rows), idx(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix rows differ in length");
    for (std::size_t k = 0; k < cols; ++k) m(idx(i), idx(k)) = complex_from_json(j[i][k]);
  }
  return m;
}

std::vector<std::string> subgroup_generator_labels(const Subgroup& H) {
  std::vector<std::string> out;
  const auto& members = H.members();
  for (element_t local : H.as_group()->generators()) out.push_back(H.parent()->label(members[local]));
  return out;
}

json space_to_json(const QuotientSpace& space) {
  json q{{"kind", to_string(space.kind())}};
  if (space.kind() != SpaceKind::Group) q["H"] = subgroup_generator_labels(*space.H());
  if (space.kind() == SpaceKind::Double) q["K"] = subgroup_generator_labels(*space.K());
  return json{{"group", space.group()->name()}, {"quotient", q}};
}

SpacePtr quotient_from_json(const json& q, const GroupPtr& group) {
  if (q.is_null()) return group_space(group);
  if (!q.is_object()) throw ParseError("quotient must be an object");
  const auto kind = q.contains("kind") ? space_kind_from_string(field<std::string>(q, "kind")) : SpaceKind::Left;
  auto H = subgroup_field(q, "H", group);
  auto K = subgroup_field(q, "K", group);
  if (kind != SpaceKind::Group && !H) H = trivial_subgroup(group);
  if (kind == SpaceKind::Double && !K) throw ParseError("DOUBLE quotient needs K");
  return coset_space(group, kind, H, K);
}

SpacePtr space_from_json(const json& j, GroupPtr group) {
  const auto name = field<std::string>(j, "group");
  if (!group) group = build_group(name);
  else if (group->name() != name) throw MismatchError("space is over " + name + ", expected " + group->name());
  return quotient_from_json(j.contains("quotient") ? j.at("quotient") : json(), group);
}

json function_to_json(const SpaceFunction& f) {
  json values = json::array();
  for (std::size_t x = 0; x < f.size(); ++x) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < f[x].rows(); ++i)
      for (Eigen::Index k = 0; k < f[x].cols(); ++k) entries.push_back(to_json(f[x](i, k)));
    values.push_back(std::move(entries));
  }
  return json{{"space", space_to_json(*f.space())}, {"shape", {f.rows(), f.cols()}}, {"values", values}};
}

SpaceFunction function_from_json(const json& j, GroupPtr group) {
  if (!j.is_object()) throw ParseError("function must be a JSON object");
  auto space = space_from_json(field<json>(j, "space"), std::move(group));
  std::size_t rows = 1, cols = 1;
  if (j.contains("shape")) {
    const auto& s = j.at("shape");
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() || !s[1].is_number_unsigned())
      throw ParseError("shape must be [rows, cols]");
    rows = s[0].get<std::size_t>();
    cols = s[1].get<std::size_t>();
    if (rows == 0 || cols == 0) throw ParseError("shape entries must be positive");
  }
  const auto& values = field<json>(j, "values");
  if (!values.is_array() || values.size() != space->size())
    throw MismatchError("expected " + std::to_string(space->size()) + " values, got " +
                        std::to_string(values.is_array() ? values.size() : 0));
  std::vector<Mat> vals;
  for (const auto& v : values) {
    Mat m(idx(rows), idx(cols));
    if (rows * cols == 1 && (v.is_number() || (v.is_array() && v.size() == 2 && v[0].is_number()))) {
      m(0, 0) = complex_from_json(v);
    } else {
      if (!v.is_array() || v.size() != rows * cols) throw MismatchError("value does not match the declared shape");
      for (std::size_t e = 0; e < rows * cols; ++e) m(idx(e / cols), idx(e % cols)) = complex_from_json(v[e]);
    }
    vals.push_back(std::move(m));
  }
  return SpaceFunction(space, std::move(vals));
}

json network_to_json(const Network& net) {
  json layers = json::array();
  for (const auto& L : net.layers()) {
    json l{{"H_prev", subgroup_generator_labels(*L.H_prev)},
           {"H_next", subgroup_generator_labels(*L.H_next)},
           {"channels_in", L.channels_in},
           {"channels_out", L.channels_out},
           {"nonlinearity", to_string(L.nonlinearity)},
           {"theta", L.theta}};
    if (L.filter) l["filter"] = function_to_json(*L.filter);
    if (L.dense) l["dense"] = matrix_to_json(*L.dense);
    layers.push_back(std::move(l));
  }
  return json{{"group", net.group()->name()}, {"layers", layers}};
}

Network network_from_json(const json& j) {
  auto G = build_group(field<std::string>(j, "group"));
  const auto& layers = field<json>(j, "layers");
  if (!layers.is_array() || layers.empty()) throw ParseError("layers must be a non-empty list");
  std::vector<LayerSpec> specs;
  for (const auto& l : layers) {
    LayerSpec L;
    L.H_prev = subgroup_field(l, "H_prev", G);
    L.H_next = subgroup_field(l, "H_next", G);
    if (!L.H_prev) L.H_prev = trivial_subgroup(G);
    if (!L.H_next) L.H_next = trivial_subgroup(G);
    L.channels_in = l.contains("channels_in") ? field<std::size_t>(l, "channels_in") : 1;
    L.channels_out = l.contains("channels_out") ? field<std::size_t>(l, "channels_out") : 1;
    if (l.contains("nonlinearity")) L.nonlinearity = nonlinearity_from_string(field<std::string>(l, "nonlinearity"));
    if (l.contains("theta")) L.theta = field<double>(l, "theta");
    if (l.contains("filter")) L.filter = function_from_json(l.at("filter"), G);
    if (l.contains("dense")) L.dense = matrix_from_json(l.at("dense"));
    specs.push_back(std::move(L));
  }
  return Network(G, std::move(specs));
}

Check& Report::add(std::string name, double residual, double threshold, std::string expect, double seconds) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.threshold = threshold;
  c.expect = std::move(expect);
  c.pass = c.expect == "above" ? residual > threshold : residual < threshold;
  c.seconds = seconds;
  checks.push_back(std::move(c));
  return checks.back();
}

Check& Report::add_count(std::string name, std::size_t got, std::size_t want) {
  const double diff = got > want ? double(got - want) : double(want - got);
  return add(std::move(name), diff, 0.5);
}

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) {
    json e{{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"expect", c.expect}, {"pass", c.pass}};
    if (timing) e["seconds"] = c.seconds;
    cs.push_back(std::move(e));
  }
  json out{{"command", command}, {"config", config}, {"checks", cs}, {"pass", pass()}};
  if (!result.is_null()) out["result"] = result;
  return out;
}

Report Report::from_json(const json& j) {
  Report r;
  r.command = field<std::string>(j, "command");
  if (j.contains("config")) r.config = j.at("config");
  if (j.contains("result")) r.result = j.at("result");
  for (const auto& c : field<json>(j, "checks")) {
    Check k;
    k.name = field<std::string>(c, "name");
    k.residual = field<double>(c, "residual");
    k.threshold = field<double>(c, "threshold");
    k.expect = c.contains("expect") ? field<std::string>(c, "expect") : "below";
    k.pass = field<bool>(c, "pass");
    if (c.contains("seconds")) {
      k.seconds = field<double>(c, "seconds");
      r.timing = true;
    }
    r.checks.push_back(std::move(k));
  }
  return r;
}

std::string Report::table() const {
  std::size_t w = 5;
  for (const auto& c : checks) w = std::max(w, c.name.size());
  std::ostringstream os;
  char buf[128];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "  %10.3e %s %8.1e  %s", c.residual, c.expect == "above" ? ">" : "<", c.threshold,
                  c.pass ? "PASS" : "FAIL");
    os << c.name << std::string(w - c.name.size(), ' ') << buf;
    if (timing) {
      std::snprintf(buf, sizeof buf, "  %.3fs", c.seconds);
      os << buf;
    }
    os << '\n';
  }
  os << (pass() ? "all checks passed" : "some checks FAILED") << " (" << checks.size() << " checks)\n";
  return os.str();
}

}  // namespace gconv
