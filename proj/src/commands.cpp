#include "commands.hpp"

#include <set>

#include "equivariance.hpp"
#include "verify.hpp"

namespace gconv {

namespace {

template <class T>
T opt(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

const json& need(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

SubgroupPtr subgroup_arg(const json& j, const char* key, const GroupPtr& g) {
  if (!j.contains(key) || j.at(key).is_null()) return trivial_subgroup(g);
  const auto& v = j.at(key);
  if (v.is_string()) return subgroup_from_labels(g, v.get<std::string>());
  if (v.is_array()) return subgroup_from_labels(g, v.get<std::vector<std::string>>());
  throw ParseError(std::string("'") + key + "' must be a string or list of labels");
}

double flag(bool bad) { return bad ? 1.0 : 0.0; }

// Large payloads are echoed by their space and shape only.
json echo(const json& request) {
  json out = request.is_object() ? request : json::object();
  for (const char* k : {"f", "g", "input"})
    if (out.contains(k) && out[k].is_object() && out[k].contains("values"))
      out[k] = json{{"space", out[k].value("space", json())}, {"shape", out[k].value("shape", json::array({1, 1}))}};
  if (out.contains("spec") && out["spec"].is_object())
    out["spec"] = json{{"group", out["spec"].value("group", "")}, {"layers", out["spec"].value("layers", json::array()).size()}};
  return out;
}

json coset_listing(const QuotientSpace& sp) {
  const auto& g = *sp.group();
  json points = json::array();
  for (std::size_t x = 0; x < sp.size(); ++x) {
    json members = json::array();
    for (element_t u : sp.coset(x)) members.push_back(g.label(u));
    points.push_back({{"representative", g.label(sp.representative(x))}, {"members", members}});
  }
  return points;
}

Report group_command(const json& req) {
  Report r;
  r.command = "group";
  r.config = echo(req);
  const auto action = opt<std::string>(req, "action", "info");
  auto g = build_group(need(req, "group").get<std::string>());
  r.add("identity axiom", flag(!g->check_identity()), 0.5);
  r.add("inverse axiom", flag(!g->check_inverse()), 0.5);
  r.add("associativity", flag(!g->check_associativity()), 0.5);
  r.add("latin square", flag(!g->check_latin_square()), 0.5);
  if (action == "info") {
    json gens = json::array();
    for (element_t u : g->generators()) gens.push_back(g->label(u));
    r.result = {{"name", g->name()}, {"order", g->order()}, {"labels", g->labels()}, {"generators", gens}};
    if (opt<bool>(req, "table", false)) {
      json t = json::array();
      for (element_t a = 0; a < g->order(); ++a) {
        json row = json::array();
        for (element_t b = 0; b < g->order(); ++b) row.push_back(g->mul(a, b));
        t.push_back(row);
      }
      r.result["cayley"] = t;
    }
  } else if (action == "cosets") {
    auto sp = quotient_from_json(req.contains("quotient") ? req.at("quotient") : json(), g);
    std::size_t covered = 0;
    for (std::size_t x = 0; x < sp->size(); ++x) covered += sp->coset(x).size();
    r.add_count("cosets partition G", covered, g->order());
    r.result = space_to_json(*sp);
    r.result["size"] = sp->size();
    r.result["points"] = coset_listing(*sp);
  } else {
    throw ParseError("group action must be 'info' or 'cosets'");
  }
  return r;
}

Report irreps_command(const json& req) {
  Report r;
  r.command = "irreps";
  r.config = echo(req);
  auto g = build_group(need(req, "group").get<std::string>());
  const double tol = opt<double>(req, "tol", 1e-10);
  auto sys = build_irrep_system(g);
  auto c = check_irrep_system(*sys);
  r.add("homomorphism", c.homomorphism, tol);
  r.add("unitarity", c.unitarity, tol);
  r.add("identity", c.identity, tol);
  r.add("character orthogonality", c.orthogonality, tol);
  r.add_count("sum of squared dims", std::size_t(c.dim_square_sum), g->order());
  const bool matrices = opt<bool>(req, "matrices", false);
  json list = json::array();
  for (const auto& rho : sys->irreps()) {
    json e{{"label", rho.label}, {"dim", rho.dim}};
    json chi = json::array();
    for (element_t u = 0; u < g->order(); ++u) chi.push_back(to_json(rho.character(u)));
    e["character"] = chi;
    if (matrices) {
      json ms = json::array();
      for (const auto& m : rho.matrices) ms.push_back(matrix_to_json(m));
      e["matrices"] = ms;
    }
    list.push_back(std::move(e));
  }
  r.result = {{"group", g->name()}, {"irreps", list}};
  return r;
}

Report fourier_command(const json& req) {
  Report r;
  r.command = "fourier";
  r.config = echo(req);
  auto f = function_from_json(need(req, "f"));
  const double tol = opt<double>(req, "tol", 1e-9);
  auto sys = build_irrep_system(f.space()->group());
  auto F = fourier(f, sys);
  r.add("round trip", inverse_fourier(F).max_abs_diff(lift(f)), tol);
  const double norm = std::real(inner(lift(f), lift(f)));
  r.add("plancherel", std::abs(norm - std::real(fourier_inner(F, F))) / std::max(1.0, norm), tol);
  const bool adapted = opt<bool>(req, "adapted", false);
  std::optional<SpaceFrame> frame;
  std::optional<SparsityMask> mask;
  if (f.space()->kind() != SpaceKind::Group || adapted) {
    frame.emplace(f.space(), sys);
    mask = sparsity_mask(*frame);
  }
  if (f.space()->kind() != SpaceKind::Group) {
    auto s = check_sparsity(f, *frame, tol);
    r.add("off-mask magnitude", s.off_mask_max, tol);
    r.add("raw rank bound", s.rank_excess, tol);
    r.add_count("allowed entries", s.allowed_count, s.space_size);
  }
  json comps = json::array();
  for (std::size_t k = 0; k < sys->size(); ++k) {
    json e{{"label", (*sys)[k].label}, {"dim", (*sys)[k].dim}};
    e["component"] = matrix_to_json(adapted ? frame->to_adapted(k, F[k]) : F[k]);
    if (mask) {
      json a = json::array();
      for (Eigen::Index i = 0; i < mask->allowed[k].rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < mask->allowed[k].cols(); ++j) row.push_back(mask->allowed[k](i, j) ? 1 : 0);
        a.push_back(row);
      }
      e["mask"] = a;
      e["rank_bound"] = mask->rank_bound[k];
    }
    comps.push_back(std::move(e));
  }
  r.result = {{"space", space_to_json(*f.space())}, {"shape", {f.rows(), f.cols()}}, {"basis", adapted ? "adapted" : "raw"},
              {"components", comps}};
  if (mask) r.result["multiplicity_above_one"] = mask->multiplicity_above_one;
  return r;
}

void expect_subgroup(const json& req, const char* key, const SubgroupPtr& actual, const GroupPtr& g) {
  if (!req.contains(key) || req.at(key).is_null()) return;
  auto want = subgroup_arg(req, key, g);
  auto have = actual ? actual : trivial_subgroup(g);
  if (!same_subgroup(*want, *have))
    throw MismatchError(std::string("inputs do not live over the requested ") + key);
}

Report convolve_command(const json& req) {
  Report r;
  r.command = "convolve";
  r.config = echo(req);
  const auto c = convolution_case_from_json(req.contains("case") ? req.at("case") : json("def4"));
  const bool via = opt<bool>(req, "via_fourier", false);
  const double tol = opt<double>(req, "tol", 1e-8);
  std::optional<ProductMode> mode;
  if (req.contains("mode") && !req.at("mode").is_null()) mode = product_mode_from_string(req.at("mode").get<std::string>());
  GroupPtr g;
  if (req.contains("group") && !req.at("group").is_null()) g = build_group(req.at("group").get<std::string>());
  auto f = function_from_json(need(req, "f"), g);
  g = f.space()->group();
  auto h = function_from_json(need(req, "g"), g);
  if (c == ConvolutionCase::Three) {
    auto [H, K] = filter_subgroups(*h.space());
    expect_subgroup(req, "h", H, g);
    expect_subgroup(req, "k", K, g);
  } else if (c != ConvolutionCase::Def4) {
    expect_subgroup(req, "h", c == ConvolutionCase::One ? h.space()->H() : f.space()->H(), g);
  }
  auto spatial = run_convolution(c, f, h, false, mode);
  auto spectral = run_convolution(c, f, h, true, mode);
  r.add("spatial vs fourier", spatial.max_abs_diff(spectral), tol);
  r.result = function_to_json(via ? spectral : spatial);
  r.result["route"] = via ? "fourier" : "spatial";
  return r;
}

Report solve_basis_command(const json& req) {
  Report r;
  r.command = "solve-basis";
  r.config = echo(req);
  auto g = build_group(need(req, "group").get<std::string>());
  auto H = subgroup_arg(req, "h", g);
  auto K = subgroup_arg(req, "k", g);
  const double tol = opt<double>(req, "tol", 1e-8);
  const bool all = opt<bool>(req, "all_elements", false);
  auto in = layer_space(H);
  auto out = layer_space(K);
  auto basis = solve_equivariant_basis(in, out, all);
  auto dbl = double_space(H, K);
  r.add_count("dimension equals double cosets", basis.maps.size(), dbl->size());
  r.add("gram orthonormality",
        basis.maps.empty() ? 0.0 : max_abs(basis.gram - Mat::Identity(basis.gram.rows(), basis.gram.cols())), tol);
  r.add("rank ambiguity", flag(basis.solve.ambiguous), 0.5);

  auto sys = build_irrep_system(g);
  double eq = 0, fit = 0, rec = 0, off = 0;
  json maps = json::array();
  std::vector<Mat> solved, conv;
  for (const auto& m : basis.maps) {
    eq = std::max(eq, check_map_equivariance(m, tol, all).residual);
    auto blocks = fourier_blocks_of_map(m, sys);
    fit = std::max(fit, blocks.max_right_residual);
    off = std::max(off, blocks.off_mask_max);
    auto chi = filter_from_blocks(blocks, m, sys);
    rec = std::max(rec, spectral_norm(convolution_operator(chi, in, out).matrix - m.matrix));
    solved.push_back(m.matrix);
    maps.push_back({{"matrix", matrix_to_json(m.matrix)}, {"filter", function_to_json(chi)}});
  }
  for (std::size_t y = 0; y < dbl->size(); ++y) {
    std::vector<cplx> v(dbl->size(), 0.0);
    v[y] = 1.0;
    conv.push_back(convolution_operator(SpaceFunction::scalar(dbl, v), in, out).matrix);
  }
  r.add("basis equivariance", eq, tol);
  r.add("M->MB fit", fit, tol);
  r.add("adapted blocks off mask", off, tol);
  r.add("filter reconstruction", rec, tol);
  r.add("convolutions in solved span", span_residual(conv, solved), tol);
  r.add("solved span in convolutions", span_residual(solved, conv), tol);
  json sing = json::array();
  for (double s : basis.solve.singular) sing.push_back(s);
  r.result = {{"group", g->name()},
              {"in", space_to_json(*in)},
              {"out", space_to_json(*out)},
              {"dimension", basis.maps.size()},
              {"double_cosets", coset_listing(*dbl)},
              {"rank_threshold", basis.solve.threshold},
              {"singular_values", sing},
              {"basis", maps}};
  return r;
}

Report net_command(const json& req) {
  Report r;
  r.command = "net";
  r.config = echo(req);
  const auto action = opt<std::string>(req, "action", "run");
  const double tol = opt<double>(req, "tol", 1e-9);
  const auto seed = opt<std::uint64_t>(req, "seed", 0);
  r.config["seed"] = seed;
  std::mt19937_64 rng(seed);
  if (action == "random") {
    auto g = build_group(need(req, "group").get<std::string>());
    std::vector<SubgroupPtr> chain;
    for (const auto& s : need(req, "chain")) {
      if (s.is_string()) chain.push_back(subgroup_from_labels(g, s.get<std::string>()));
      else chain.push_back(subgroup_from_labels(g, s.get<std::vector<std::string>>()));
    }
    auto channels = opt<std::vector<std::size_t>>(req, "channels", std::vector<std::size_t>(chain.size(), 1));
    const auto s = nonlinearity_from_string(opt<std::string>(req, "nonlinearity", "RELU_RE_IM"));
    auto net = random_network(g, chain, channels, s, rng);
    r.result = network_to_json(net);
    return r;
  }
  if (action != "run" && action != "check") throw ParseError("net action must be 'run', 'check' or 'random'");
  auto net = network_from_json(need(req, "spec"));
  std::optional<SpaceFunction> f0;
  if (req.contains("input") && !req.at("input").is_null()) {
    f0 = function_from_json(req.at("input"), net.group());
  } else {
    // No input given: a seeded complex Gaussian on the input space.
    std::normal_distribution<double> n(0.0, 1.0);
    SpaceFunction f(net.spaces().front(), 1, net.layers().front().channels_in);
    for (std::size_t x = 0; x < f.size(); ++x)
      for (Eigen::Index i = 0; i < f[x].size(); ++i) {
        const double re = n(rng);
        f[x].data()[i] = cplx(re, n(rng));
      }
    f0 = f;
  }
  auto eq = check_network_equivariance(net, *f0, tol, opt<bool>(req, "all_elements", false));
  r.add("network equivariance", eq.residual, tol);
  for (std::size_t l = 0; l < eq.per_layer.size(); ++l)
    r.add("layer " + std::to_string(l + 1) + " equivariance", eq.per_layer[l], tol);
  auto acts = forward(net, *f0);
  r.result = {{"output", function_to_json(acts.back())}, {"worst_generator", net.group()->label(eq.worst_generator)}};
  if (action == "run" && opt<bool>(req, "all_layers", false)) {
    json all = json::array();
    for (const auto& a : acts) all.push_back(function_to_json(a));
    r.result["activations"] = all;
  }
  return r;
}

Report demo_command(const json& req) {
  Report r;
  r.command = "demo";
  r.config = echo(req);
  const auto name = opt<std::string>(req, "name", "mpnn");
  if (name != "mpnn") throw ParseError("unknown demo '" + name + "'");
  const int n = opt<int>(req, "n", 4);
  const int L = opt<int>(req, "layers", 2);
  const auto seed = opt<std::uint64_t>(req, "seed", 0);
  const double tol = opt<double>(req, "tol", 1e-9);
  r.config["n"] = n;
  r.config["layers"] = L;
  r.config["seed"] = seed;
  auto c = mpnn_chain(n, L, seed, tol);
  r.add("chain equivariance", c.equivariance.residual, tol);
  json layers = json::array();
  for (const auto& s : c.support) {
    const std::string p = "layer " + std::to_string(s.layer) + " ";
    r.add(p + "pre-nonlinearity off-mask", s.off_mask_pre, tol);
    r.add(p + "post-nonlinearity off-mask", s.off_mask_post, tol);
    r.add(p + "support outside (n-p,p)", flag(!s.two_row_only), 0.5);
    r.add(p + "more than one column", flag(!s.single_column), 0.5);
    r.add_count(p + "allowed entries", s.allowed_count, s.space_size);
    layers.push_back({{"layer", s.layer},
                      {"space", "X_" + std::to_string(s.l)},
                      {"space_size", s.space_size},
                      {"support", s.support}});
  }
  r.result = {{"n", n}, {"layers", layers}, {"levels", c.levels}};
  return r;
}

Report verify_command(const json& req) {
  VerifyOptions o;
  o.suite = opt<std::string>(req, "suite", "all");
  o.tol = opt<double>(req, "tol", 0.0);
  o.seed = opt<std::uint64_t>(req, "seed", 0);
  o.slow = opt<bool>(req, "slow", false);
  o.timing = opt<bool>(req, "timing", false);
  return run_verify(o);
}

}  // namespace

ConvolutionCase convolution_case_from_json(const json& j) {
  if (j.is_number_integer()) {
    const int c = j.get<int>();
    if (c >= 0 && c <= 3) return ConvolutionCase(c);
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "def4" || s == "0") return ConvolutionCase::Def4;
    if (s == "1") return ConvolutionCase::One;
    if (s == "2") return ConvolutionCase::Two;
    if (s == "3") return ConvolutionCase::Three;
  }
  throw ParseError("case must be def4, 1, 2 or 3");
}

SpaceFunction run_convolution(ConvolutionCase c, const SpaceFunction& f, const SpaceFunction& g, bool via_fourier,
                              std::optional<ProductMode> mode) {
  if (!via_fourier) {
    switch (c) {
      case ConvolutionCase::Def4: return convolve_def4(f, g, mode);
      case ConvolutionCase::One: return convolve_case1(f, g, mode);
      case ConvolutionCase::Two: return convolve_case2(f, g, mode);
      case ConvolutionCase::Three: return convolve_case3(f, Filter{g, mode.value_or(default_mode(f, g))});
    }
  }
  auto grp = f.space()->group();
  auto full = convolve_fourier(f, g, build_irrep_system(grp), mode);
  // Route the result onto the space the spatial formula would produce.
  SpacePtr target;
  switch (c) {
    case ConvolutionCase::Def4: return full;
    case ConvolutionCase::Two: return full;
    case ConvolutionCase::One:
      if (!g.space()->has_left_action()) throw MismatchError("case 1 needs g on G/H");
      target = g.space();
      break;
    case ConvolutionCase::Three: {
      auto K = filter_subgroups(*g.space()).second;
      target = K->is_trivial() ? group_space(grp) : left_space(K);
      break;
    }
  }
  return project(full, target);
}

Report run_command(const std::string& command, const json& request) {
  if (command == "group") return group_command(request);
  if (command == "irreps") return irreps_command(request);
  if (command == "fourier") return fourier_command(request);
  if (command == "convolve") return convolve_command(request);
  if (command == "solve-basis") return solve_basis_command(request);
  if (command == "net") return net_command(request);
  if (command == "demo") return demo_command(request);
  if (command == "verify") return verify_command(request);
  throw ParseError("unknown command '" + command + "'");
}

}  // namespace gconv
