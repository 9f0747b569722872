#include "verify.hpp"

#include <chrono>
#include <map>
#include <random>
#include <set>

#include "equivariance.hpp"

namespace gconv {

namespace {

struct Pair {
  const char* h;
  const char* k;
};

struct Entry {
  const char* group;
  std::vector<Pair> pairs;
};

std::vector<Entry> group_matrix(bool slow) {
  std::vector<Entry> m{
      {"Z12", {{"6", ""}, {"6", "4"}}},
      {"Z8xZ8", {{"", ""}, {"4|0", "0|4"}}},
      {"D4", {{"s0", ""}, {"s0", "s1"}, {"s0", "r2"}}},
      {"S3", {{"(12)", "(12)"}, {"", "(12)"}, {"(12)", "(13)"}}},
      {"S4", {{"(12) (123)", "(12) (34)"}, {"(12) (34)", "(12) (123)"}, {"(12) (123)", "(12) (123)"}, {"", "(12) (34)"}}},
  };
  if (slow) m.push_back({"S5", {{"(12) (123) (1234)", "(12) (34)"}}});
  return m;
}

std::string pair_name(const Entry& e, const Pair& p) {
  return std::string(e.group) + " H=<" + p.h + "> K=<" + p.k + ">";
}

SpaceFunction random_function(const SpacePtr& space, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Mat> vals(space->size(), Mat(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
  for (auto& v : vals)
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double re = n(rng);
      const double im = n(rng);
      v.data()[i] = cplx(re, im);
    }
  return SpaceFunction(space, std::move(vals));
}

class Runner {
 public:
  Runner(const VerifyOptions& opts, Report& report) : opts_(opts), report_(report), rng_(opts.seed) {}

  double thr(double d) const { return opts_.tol > 0 ? opts_.tol : d; }

  // Runs `f`, which returns a residual, and records it with its wall time.
  template <class F>
  void check(const std::string& name, double threshold, F&& f, const char* expect = "below") {
    const auto t0 = std::chrono::steady_clock::now();
    const double r = f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report_.add(name, r, threshold, expect, s);
  }

  GroupPtr group(const char* spec) {
    auto it = groups_.find(spec);
    if (it == groups_.end()) it = groups_.emplace(spec, build_group(spec)).first;
    return it->second;
  }
  IrrepSystemPtr irreps(const char* spec) {
    auto it = systems_.find(spec);
    if (it == systems_.end()) it = systems_.emplace(spec, build_irrep_system(group(spec))).first;
    return it->second;
  }

  void irreps_suite();
  void fourier_suite();
  void convolution_suite();
  void sparsity_suite();
  void network_suite();
  void equivariance_suite();
  void lemmas_suite();
  void mpnn_suite();
  void representatives_suite();

  std::vector<Entry> matrix() const { return group_matrix(opts_.slow); }

 private:
  const VerifyOptions& opts_;
  Report& report_;
  std::mt19937_64 rng_;
  std::map<std::string, GroupPtr> groups_;
  std::map<std::string, IrrepSystemPtr> systems_;
};

void Runner::irreps_suite() {
  for (const auto& e : matrix()) {
    IrrepChecks c;
    std::size_t dims = 0;
    const auto t0 = std::chrono::steady_clock::now();
    auto sys = irreps(e.group);
    c = check_irrep_system(*sys);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& r : sys->irreps()) dims += std::size_t(r.dim) * std::size_t(r.dim);
    const std::string g = std::string("irreps ") + e.group;
    report_.add(g + " homomorphism", c.homomorphism, thr(1e-10), "below", s);
    report_.add(g + " unitarity", c.unitarity, thr(1e-10));
    report_.add(g + " identity", c.identity, thr(1e-10));
    report_.add(g + " character orthogonality", c.orthogonality, thr(1e-10));
    report_.add_count(g + " sum of squared dims", dims, sys->group()->order());
  }
}

void Runner::fourier_suite() {
  for (const auto& e : matrix()) {
    auto sys = irreps(e.group);
    auto G = group_space(sys->group());
    double trip = 0, planch = 0;
    check(std::string("fourier ") + e.group + " round trip", thr(1e-9), [&] {
      for (int t = 0; t < 20; ++t) {
        auto f = random_function(G, 1, 1, rng_);
        auto h = random_function(G, 1, 1, rng_);
        auto F = fourier(f, sys);
        trip = std::max(trip, inverse_fourier(F).max_abs_diff(f));
        const cplx a = inner(f, h);
        planch = std::max(planch, std::abs(a - fourier_inner(F, fourier(h, sys))) / std::max(1.0, std::abs(a)));
      }
      return trip;
    });
    report_.add(std::string("fourier ") + e.group + " plancherel", planch, thr(1e-9));
    check(std::string("fourier ") + e.group + " translation theorem", thr(1e-9), [&] {
      auto f = random_function(G, 1, 1, rng_);
      auto F = fourier(f, sys);
      double r = 0;
      for (element_t g : sys->group()->generators()) {
        auto T = fourier(translate(g, f), sys);
        for (std::size_t k = 0; k < sys->size(); ++k) r = std::max(r, max_abs(T[k] - (*sys)[k](g) * F[k]));
      }
      return r;
    });
  }
}

void Runner::convolution_suite() {
  for (const auto& e : matrix()) {
    auto sys = irreps(e.group);
    auto g = sys->group();
    for (const auto& p : e.pairs) {
      auto H = subgroup_from_labels(g, p.h);
      auto K = subgroup_from_labels(g, p.k);
      struct Combo {
        const char* name;
        SpacePtr a, b;
      };
      for (const auto& c : {Combo{"G*G", group_space(g), group_space(g)}, Combo{"G*G/H", group_space(g), left_space(H)},
                            Combo{"G/H*H\\G", left_space(H), right_space(H)},
                            Combo{"G/H*H\\G/K", left_space(H), double_space(H, K)}}) {
        check("convolution theorem " + pair_name(e, p) + " " + c.name, thr(1e-8), [&] {
          double r = 0;
          for (int t = 0; t < 10; ++t) {
            auto f = random_function(c.a, 1, 1, rng_);
            auto h = random_function(c.b, 1, 1, rng_);
            r = std::max(r, convolve_def4(f, h).max_abs_diff(convolve_fourier(f, h, sys)));
          }
          return r;
        });
      }
      check("case reduction " + pair_name(e, p), thr(1e-10), [&] {
        auto GH = left_space(H);
        auto f = random_function(group_space(g), 1, 1, rng_);
        auto x = random_function(GH, 1, 1, rng_);
        auto y = random_function(right_space(H), 1, 1, rng_);
        auto chi = random_function(double_space(H, K), 1, 1, rng_);
        double r = convolve_case1(f, x).max_abs_diff(project(convolve_def4(f, x), GH));
        r = std::max(r, convolve_case2(x, y).max_abs_diff(convolve_def4(x, y)));
        auto c3 = convolve_case3(x, Filter{chi, ProductMode::Scalar});
        r = std::max(r, lift(c3).max_abs_diff(convolve_def4(x, chi)));
        return r;
      });
    }
  }
}

void Runner::sparsity_suite() {
  for (const auto& e : matrix()) {
    auto sys = irreps(e.group);
    auto g = sys->group();
    std::set<std::string> seen;
    for (const auto& p : e.pairs) {
      auto H = subgroup_from_labels(g, p.h);
      auto K = subgroup_from_labels(g, p.k);
      for (auto sp : {left_space(H), right_space(H), double_space(H, K)}) {
        const std::string name = std::string("sparsity ") + e.group + " " + space_to_json(*sp).dump();
        if (!seen.insert(name).second) continue;
        SpaceFrame frame(sp, sys);
        double off = 0, rank = 0;
        check(name + " off-mask", thr(1e-9), [&] {
          for (int t = 0; t < 10; ++t) {
            auto rep = check_sparsity(random_function(sp, 1, 1, rng_), frame, thr(1e-9));
            off = std::max(off, rep.off_mask_max);
            rank = std::max(rank, rep.rank_excess);
          }
          return off;
        });
        report_.add(name + " raw rank bound", rank, thr(1e-9));
        report_.add_count(name + " allowed entries", sparsity_mask(frame).allowed_count(), sp->size());
      }
    }
  }
}

void Runner::network_suite() {
  for (const auto& e : matrix()) {
    auto g = group(e.group);
    for (const auto& p : e.pairs) {
      auto H = subgroup_from_labels(g, p.h);
      auto K = subgroup_from_labels(g, p.k);
      std::vector<SubgroupPtr> chain{H, K, H, K};
      for (std::size_t depth = 1; depth <= 3; ++depth) {
        check("network " + pair_name(e, p) + " depth " + std::to_string(depth), thr(1e-9), [&] {
          std::vector<SubgroupPtr> c(chain.begin(), chain.begin() + long(depth) + 1);
          std::vector<std::size_t> ch;
          for (std::size_t i = 0; i <= depth; ++i) ch.push_back(1 + (i + depth) % 3);
          const auto s = depth == 2 ? Nonlinearity::ModulusRelu : Nonlinearity::ReluReIm;
          auto net = random_network(g, c, ch, s, rng_);
          auto f = random_function(net.spaces().front(), 1, ch.front(), rng_);
          return check_network_equivariance(net, f, thr(1e-9)).residual;
        });
      }
    }
  }
  check("network Z8xZ8 classic CNN", thr(1e-12), [&] {
    auto g = group("Z8xZ8");
    auto e = trivial_subgroup(g);
    auto net = random_network(g, {e, e, e}, {2, 2, 1}, Nonlinearity::ReluReIm, rng_);
    auto f = random_function(group_space(g), 1, 2, rng_);
    auto acts = forward(net, f);
    SpaceFunction cur = f;
    double r = 0;
    for (std::size_t l = 0; l < 2; ++l) {
      const auto& chi = *net.layers()[l].filter;
      SpaceFunction next(group_space(g), 1, chi.cols());
      for (int x1 = 0; x1 < 8; ++x1)
        for (int x2 = 0; x2 < 8; ++x2)
          for (int u1 = 0; u1 < 8; ++u1)
            for (int u2 = 0; u2 < 8; ++u2)
              next[x1 * 8 + x2] += cur[((x1 - u1 + 8) % 8) * 8 + (x2 - u2 + 8) % 8] * chi[u1 * 8 + u2];
      cur = apply_nonlinearity(next, Nonlinearity::ReluReIm);
      r = std::max(r, acts[l].max_abs_diff(cur));
    }
    return r;
  });
}

void Runner::equivariance_suite() {
  for (const auto& e : matrix()) {
    auto sys = irreps(e.group);
    auto g = sys->group();
    for (const auto& p : e.pairs) {
      auto H = subgroup_from_labels(g, p.h);
      auto K = subgroup_from_labels(g, p.k);
      auto in = layer_space(H);
      auto out = layer_space(K);
      const std::string name = "equivariance " + pair_name(e, p);
      auto basis = solve_equivariant_basis(in, out);
      // Double cosets counted as distinct sets H u K.
      std::set<std::vector<element_t>> cosets;
      for (element_t u = 0; u < g->order(); ++u) {
        std::set<element_t> c;
        for (element_t h : H->members())
          for (element_t k : K->members()) c.insert(g->mul(g->mul(h, u), k));
        cosets.insert(std::vector<element_t>(c.begin(), c.end()));
      }
      report_.add_count(name + " dimension", basis.maps.size(), cosets.size());
      report_.add(name + " rank ambiguity", basis.solve.ambiguous ? 1.0 : 0.0, 0.5);
      double eq = 0, fit = 0, rec = 0, off = 0;
      std::vector<Mat> solved, conv;
      check(name + " M->MB fit", thr(1e-8), [&] {
        for (const auto& m : basis.maps) {
          eq = std::max(eq, check_map_equivariance(m, thr(1e-10)).residual);
          auto blocks = fourier_blocks_of_map(m, sys);
          fit = std::max(fit, blocks.max_right_residual);
          off = std::max(off, blocks.off_mask_max);
          auto chi = filter_from_blocks(blocks, m, sys);
          rec = std::max(rec, spectral_norm(convolution_operator(chi, in, out).matrix - m.matrix));
          solved.push_back(m.matrix);
        }
        return fit;
      });
      report_.add(name + " basis equivariance", eq, thr(1e-10));
      report_.add(name + " filter reconstruction", rec, thr(1e-8));
      report_.add(name + " adapted blocks off mask", off, thr(1e-8));
      auto dbl = double_space(H, K);
      for (std::size_t y = 0; y < dbl->size(); ++y) {
        std::vector<cplx> v(dbl->size(), 0.0);
        v[y] = 1.0;
        conv.push_back(convolution_operator(SpaceFunction::scalar(dbl, v), in, out).matrix);
      }
      report_.add(name + " convolutions in solved span", span_residual(conv, solved), thr(1e-8));
      report_.add(name + " solved span in convolutions", span_residual(solved, conv), thr(1e-8));
    }
  }
}

void Runner::lemmas_suite() {
  for (const auto& e : matrix()) {
    auto sys = irreps(e.group);
    auto g = sys->group();
    double r = 0;
    for (std::size_t k = 0; k < sys->size(); ++k)
      if (k != sys->trivial_index()) r = std::max(r, max_abs(group_sum((*sys)[k])));
    report_.add(std::string("lemma group sum ") + e.group, r, thr(1e-9));
    for (const auto& p : e.pairs) {
      auto H = subgroup_from_labels(g, p.h);
      auto K = subgroup_from_labels(g, p.k);
      auto fl = lift(random_function(left_space(H), 1, 1, rng_));
      auto fr = lift(random_function(right_space(H), 1, 1, rng_));
      auto fd = lift(random_function(double_space(H, K), 1, 1, rng_));
      double d = 0;
      for (element_t u = 0; u < g->order(); ++u) {
        for (element_t h : H->members()) {
          d = std::max(d, std::abs(fl.scalar_at(g->mul(u, h)) - fl.scalar_at(u)));
          d = std::max(d, std::abs(fr.scalar_at(g->mul(h, u)) - fr.scalar_at(u)));
          d = std::max(d, std::abs(fd.scalar_at(g->mul(h, u)) - fd.scalar_at(u)));
        }
        for (element_t k : K->members()) d = std::max(d, std::abs(fd.scalar_at(g->mul(u, k)) - fd.scalar_at(u)));
      }
      // Lifting copies values, so the invariances hold exactly.
      report_.add("lemma lift invariance " + pair_name(e, p), d, 1e-300);
    }
  }
}

void Runner::mpnn_suite() {
  const std::vector<int> ns{3, 4, 5};
  for (int n : ns)
    for (int L = 1; L <= n - 1; ++L) {
      const std::string name = "mpnn n=" + std::to_string(n) + " L=" + std::to_string(L);
      double off = 0, bad = 0;
      check(name + " equivariance", thr(1e-9), [&] {
        auto c = mpnn_chain(n, L, opts_.seed, thr(1e-9));
        for (const auto& s : c.support) {
          off = std::max({off, s.off_mask_pre, s.off_mask_post});
          if (!s.two_row_only || !s.single_column || s.allowed_count != s.space_size) bad += 1;
        }
        return c.equivariance.residual;
      });
      report_.add(name + " off-mask support", off, thr(1e-9));
      report_.add(name + " layers outside (n-p,p) single columns", bad, 0.5);
    }
}

void Runner::representatives_suite() {
  for (const auto& e : matrix()) {
    auto g = group(e.group);
    for (const auto& p : e.pairs) {
      auto H = subgroup_from_labels(g, p.h);
      auto K = subgroup_from_labels(g, p.k);
      check("representatives " + pair_name(e, p), thr(1e-10), [&] {
        auto x = random_function(layer_space(H), 1, 1, rng_);
        Filter chi{random_function(double_space(H, K), 1, 1, rng_), ProductMode::Scalar};
        auto base = convolve_case3(x, chi);
        auto Y = H->is_trivial() ? group_space(g) : right_space(H);
        double r = 0;
        for (int t = 0; t < 5; ++t) {
          CaseThreeReps reps;
          auto pick = [&](const QuotientSpace& sp, std::vector<element_t>& out) {
            for (std::size_t i = 0; i < sp.size(); ++i) {
              const auto& c = sp.coset(i);
              out.push_back(c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng_)]);
            }
          };
          pick(*base.space(), reps.out);
          pick(*Y, reps.sum);
          r = std::max(r, convolve_case3(x, chi, base.space(), &reps).max_abs_diff(base));
        }
        return r;
      });
    }
  }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"irreps",  "fourier", "convolution", "sparsity",        "network",
                                          "equivariance", "lemmas",  "mpnn", "representatives", "all"};
  return s;
}

Report run_verify(const VerifyOptions& opts) {
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), opts.suite) == names.end())
    throw ParseError("unknown suite '" + opts.suite + "'");
  Report report;
  report.command = "verify";
  report.timing = opts.timing;
  json groups = json::array();
  for (const auto& e : group_matrix(opts.slow)) groups.push_back(e.group);
  report.config = {{"suite", opts.suite}, {"seed", opts.seed}, {"slow", opts.slow}, {"groups", groups}};
  report.config["tol"] = opts.tol > 0 ? json(opts.tol) : json("default");

  const auto t0 = std::chrono::steady_clock::now();
  Runner r(opts, report);
  auto want = [&](const char* s) { return opts.suite == "all" || opts.suite == s; };
  if (want("irreps")) r.irreps_suite();
  if (want("fourier")) r.fourier_suite();
  if (want("convolution")) r.convolution_suite();
  if (want("sparsity")) r.sparsity_suite();
  if (want("network")) r.network_suite();
  if (want("equivariance")) r.equivariance_suite();
  if (want("lemmas")) r.lemmas_suite();
  if (want("mpnn")) r.mpnn_suite();
  if (want("representatives")) r.representatives_suite();
  if (opts.timing) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.add("total wall time (s)", s, 120.0, "below", s);
  }
  return report;
}

}  // namespace gconv
