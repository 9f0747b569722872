// Acceptance run: one PASS/FAIL line per criterion. Every number is
// recomputed here from group multiplication and the irrep matrices, and the
// library's own checks are only used as a second opinion.
//
//   acceptance [--gconv PATH] [--slow] [--seed N]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>

#include "equivariance.hpp"
#include "gcnn.hpp"
#include "test_util.hpp"

using namespace gconv;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Setup {
  GroupPtr g;
  IrrepSystemPtr sys;
  std::vector<std::pair<SubgroupPtr, SubgroupPtr>> pairs;
};

std::vector<Setup> build_matrix(bool slow) {
  struct Row {
    const char* group;
    std::vector<std::pair<const char*, const char*>> pairs;
  };
  std::vector<Row> rows{
      {"Z12", {{"6", ""}, {"6", "4"}, {"", "6"}}},
      {"Z8xZ8", {{"", ""}, {"4|0", "0|4"}}},
      {"D4", {{"s0", ""}, {"s0", "s1"}, {"s0", "s0"}}},
      {"S3", {{"(12)", "(12)"}, {"", "(12)"}, {"(12)", "(13)"}}},
      {"S4", {{"(12) (123)", "(12) (34)"}, {"(12) (34)", "(12) (123)"}, {"(12) (123)", "(12) (123)"}, {"", "(12) (34)"}}},
  };
  if (slow) rows.push_back({"S5", {{"(12) (123) (1234)", "(12) (34)"}, {"(12)", ""}}});
  std::vector<Setup> out;
  for (const auto& r : rows) {
    Setup s;
    s.g = build_group(r.group);
    s.sys = build_irrep_system(s.g);
    for (const auto& [h, k] : r.pairs)
      s.pairs.emplace_back(subgroup_from_labels(s.g, h), subgroup_from_labels(s.g, k));
    out.push_back(std::move(s));
  }
  return out;
}

std::string pair_name(const Setup& s, const SubgroupPtr& H, const SubgroupPtr& K) {
  return s.g->name() + " |H|=" + std::to_string(H->order()) + " |K|=" + std::to_string(K->order());
}

// F(rho) = sum_u f(u) rho(u) on the lift of a scalar function.
std::vector<Mat> transform(const SpaceFunction& f, const IrrepSystem& sys) {
  const auto& sp = *f.space();
  std::vector<Mat> out;
  for (const auto& rho : sys.irreps()) {
    Mat F = Mat::Zero(rho.dim, rho.dim);
    for (element_t u = 0; u < sp.group()->order(); ++u) F += f.scalar_at(sp.point_of(u)) * rho(u);
    out.push_back(std::move(F));
  }
  return out;
}

Mat average(const Irrep& rho, const Subgroup& H) {
  Mat P = Mat::Zero(rho.dim, rho.dim);
  for (element_t h : H.members()) P += rho(h);
  return P / double(H.order());
}

int trivial_count(const Irrep& rho, const Subgroup& H) { return int(std::lround(average(rho, H).trace().real())); }

std::size_t double_cosets(const FiniteGroup& g, const Subgroup& H, const Subgroup& K) {
  std::set<std::set<element_t>> seen;
  for (element_t u = 0; u < g.order(); ++u) {
    std::set<element_t> c;
    for (element_t h : H.members())
      for (element_t k : K.members()) c.insert(g.mul(g.mul(h, u), k));
    seen.insert(std::move(c));
  }
  return seen.size();
}

// (f * g)(u) = sum_v f(u v^-1) g(v) on lifts, scalar values.
std::vector<cplx> def4(const SpaceFunction& f, const SpaceFunction& g) {
  const auto& G = *f.space()->group();
  std::vector<cplx> out(G.order(), 0.0);
  for (element_t u = 0; u < G.order(); ++u)
    for (element_t v = 0; v < G.order(); ++v)
      out[u] += f.scalar_at(f.space()->point_of(G.mul(u, G.inv(v)))) * g.scalar_at(g.space()->point_of(v));
  return out;
}

// Matrix of f -> f * chi from `in` to `out`, built from the group sum.
Mat convolution_matrix(const SpaceFunction& chi, const SpacePtr& in, const SpacePtr& out) {
  const auto& G = *in->group();
  Mat M = Mat::Zero(Eigen::Index(out->size()), Eigen::Index(in->size()));
  for (std::size_t x = 0; x < out->size(); ++x)
    for (element_t v = 0; v < G.order(); ++v)
      M(Eigen::Index(x), Eigen::Index(in->point_of(G.mul(out->representative(x), G.inv(v))))) +=
          chi.scalar_at(chi.space()->point_of(v));
  return M;
}

// (T_g f)(x) = f(g^-1 x) on G or G/H.
SpaceFunction shift(element_t g, const SpaceFunction& f) {
  const auto& sp = *f.space();
  const auto& G = *sp.group();
  std::vector<Mat> vals;
  for (std::size_t x = 0; x < sp.size(); ++x) vals.push_back(f[sp.point_of(G.mul(G.inv(g), sp.representative(x)))]);
  return SpaceFunction(f.space(), std::move(vals));
}

// Smallest final activation seen, so a dead network cannot pass vacuously.
double smallest_output = 1e300;
std::string smallest_where;

double network_residual(const Network& net, const SpaceFunction& f) {
  const auto& G = *net.group();
  const auto base = forward(net, f).back();
  if (base.max_abs() < smallest_output) {
    smallest_output = base.max_abs();
    smallest_where = G.name() + " " + std::to_string(net.layers().size()) + " layers";
  }
  double r = 0;
  auto check = [&](element_t g) { r = std::max(r, forward(net, shift(g, f)).back().max_abs_diff(shift(g, base))); };
  if (G.order() <= 24) {
    for (element_t g = 1; g < G.order(); ++g) check(g);
  } else {
    for (element_t g : G.generators()) check(g);
  }
  return r;
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

// Relative distance of each of `a` from span(b), worst case.
double outside_span(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  if (a.empty()) return 0;
  const Eigen::Index n = a.front().size();
  Mat basis(n, Eigen::Index(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j) basis.col(Eigen::Index(j)) = Eigen::Map<const Vec>(b[j].data(), n);
  Eigen::ColPivHouseholderQR<Mat> qr(basis);
  double worst = 0;
  for (const auto& m : a) {
    Vec v = Eigen::Map<const Vec>(m.data(), n);
    Vec rest = v - basis * qr.solve(v);
    worst = std::max(worst, rest.norm() / std::max(v.norm(), 1e-300));
  }
  return worst;
}

// "(3,1)" -> {3, 1}
std::vector<int> parse_partition(const std::string& s) {
  std::vector<int> parts;
  int cur = 0;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      cur = cur * 10 + (c - '0');
    } else if (c == ',' || c == ')') {
      parts.push_back(cur);
      cur = 0;
    }
  }
  return parts;
}

struct Line {
  int id;
  std::string title;
  bool pass = true;
  std::string detail;
};

class Ledger {
 public:
  void print(const Line& l) {
    std::printf("criterion %2d  %-4s  %-44s %s\n", l.id, l.pass ? "PASS" : "FAIL", l.title.c_str(), l.detail.c_str());
    std::fflush(stdout);
    all_ = all_ && l.pass;
  }
  bool all() const { return all_; }

 private:
  bool all_ = true;
};

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Tracks the worst value of a residual and where it came from.
struct Worst {
  double value = 0;
  std::string where;
  void take(double v, const std::string& w) {
    if (v > value || where.empty()) {
      value = std::max(value, v);
      where = w;
    }
  }
};

Line irrep_integrity(const std::vector<Setup>& m) {
  Line l{1, "irrep integrity"};
  const auto t0 = Clock::now();
  Worst w;
  bool dims_ok = true;
  for (const auto& s : m) {
    // Rebuilt so the timing covers construction.
    auto sys = build_irrep_system(s.g);
    const auto& G = *s.g;
    long dims = 0;
    for (const auto& rho : sys->irreps()) {
      dims += long(rho.dim) * rho.dim;
      const Mat I = Mat::Identity(rho.dim, rho.dim);
      w.take(max_abs(rho(0) - I), G.name() + " identity");
      for (element_t u = 0; u < G.order(); ++u) {
        w.take(max_abs(rho(u).adjoint() * rho(u) - I), G.name() + " unitarity");
        for (element_t v = 0; v < G.order(); ++v) w.take(max_abs(rho(u) * rho(v) - rho(G.mul(u, v))), G.name() + " homomorphism");
      }
    }
    dims_ok = dims_ok && dims == long(G.order());
    for (std::size_t i = 0; i < sys->size(); ++i)
      for (std::size_t j = 0; j < sys->size(); ++j) {
        cplx ip = 0;
        for (element_t u = 0; u < G.order(); ++u) ip += std::conj((*sys)[i].character(u)) * (*sys)[j].character(u);
        w.take(std::abs(ip / double(G.order()) - (i == j ? 1.0 : 0.0)), G.name() + " orthogonality");
      }
  }
  const double secs = since(t0);
  l.pass = w.value < 1e-10 && dims_ok && secs < 5.0;
  l.detail = fmt("max residual %.2e < 1e-10, %.2f s < 5 s", w.value, secs) + (dims_ok ? "" : ", sum d^2 != |G|");
  return l;
}

Line fourier_round_trip(const std::vector<Setup>& m, std::mt19937_64& rng) {
  Line l{2, "Fourier round trip and Plancherel"};
  Worst w;
  for (const auto& s : m) {
    auto G = group_space(s.g);
    for (int t = 0; t < 20; ++t) {
      auto f = test::random_function(G, 1, 1, rng);
      auto own = transform(f, *s.sys);
      auto F = fourier(f, s.sys);
      double plain = 0, spectral = 0;
      for (std::size_t x = 0; x < f.size(); ++x) plain += std::norm(f.scalar_at(x));
      for (std::size_t k = 0; k < s.sys->size(); ++k) {
        w.take(max_abs(F[k] - own[k]) / std::max(1.0, max_abs(own[k])), s.g->name() + " forward");
        spectral += (*s.sys)[k].dim * own[k].squaredNorm();
      }
      spectral /= double(s.g->order());
      w.take(inverse_fourier(F).max_abs_diff(f), s.g->name() + " round trip");
      w.take(std::abs(plain - spectral) / std::max(1.0, plain), s.g->name() + " Plancherel");
    }
  }
  l.pass = w.value < 1e-9;
  l.detail = fmt("max residual %.2e < %.0e", w.value, 1e-9) + " (" + w.where + ")";
  return l;
}

Line convolution_theorem(const std::vector<Setup>& m, std::mt19937_64& rng) {
  Line l{3, "convolution theorem"};
  Worst w;
  std::size_t combos = 0;
  for (const auto& s : m)
    for (const auto& [H, K] : s.pairs) {
      const std::vector<std::pair<SpacePtr, SpacePtr>> spaces{{group_space(s.g), group_space(s.g)},
                                                              {group_space(s.g), left_space(H)},
                                                              {left_space(H), right_space(H)},
                                                              {left_space(H), double_space(H, K)}};
      for (const auto& [a, b] : spaces) {
        ++combos;
        for (int t = 0; t < 10; ++t) {
          auto f = test::random_function(a, 1, 1, rng);
          auto g = test::random_function(b, 1, 1, rng);
          auto want = def4(f, g);
          auto got = convolve_fourier(f, g, s.sys);
          double scale = 1;
          for (auto z : want) scale = std::max(scale, std::abs(z));
          for (element_t u = 0; u < s.g->order(); ++u)
            w.take(std::abs(got.scalar_at(u) - want[u]) / scale, pair_name(s, H, K));
        }
      }
    }
  l.pass = w.value < 1e-8;
  l.detail = fmt("max residual %.2e < 1e-8 over %.0f space combinations", w.value, double(combos));
  return l;
}

Line sparsity(const std::vector<Setup>& m, std::mt19937_64& rng) {
  Line l{4, "quotient sparsity"};
  Worst off, rank, adapted;
  bool counts = true;
  std::size_t spaces = 0;
  for (const auto& s : m)
    for (const auto& [H, K] : s.pairs)
      for (auto sp : {left_space(H), right_space(H), double_space(H, K)}) {
        ++spaces;
        const bool rows = sp->kind() != SpaceKind::Left;
        const bool cols = sp->kind() != SpaceKind::Right;
        const auto& Hr = *H;
        const auto& Kc = sp->kind() == SpaceKind::Double ? *K : *H;
        // Allowed entries: trivial multiplicities times free dimensions.
        std::size_t expect = 0;
        for (const auto& rho : s.sys->irreps()) {
          const std::size_t r = rows ? std::size_t(trivial_count(rho, Hr)) : std::size_t(rho.dim);
          const std::size_t c = cols ? std::size_t(trivial_count(rho, Kc)) : std::size_t(rho.dim);
          expect += r * c;
        }
        SpaceFrame frame(sp, s.sys);
        counts = counts && expect == sp->size() && sparsity_mask(frame).allowed_count() == expect;
        for (int t = 0; t < 10; ++t) {
          auto f = test::random_function(sp, 1, 1, rng);
          auto F = transform(f, *s.sys);
          for (std::size_t k = 0; k < s.sys->size(); ++k) {
            const auto& rho = (*s.sys)[k];
            const Mat I = Mat::Identity(rho.dim, rho.dim);
            const double scale = std::max(1.0, max_abs(F[k]));
            int bound = rho.dim;
            if (rows) {
              off.take(max_abs((I - average(rho, Hr)) * F[k]) / scale, s.g->name());
              bound = std::min(bound, trivial_count(rho, Hr));
            }
            if (cols) {
              off.take(max_abs(F[k] * (I - average(rho, Kc))) / scale, s.g->name());
              bound = std::min(bound, trivial_count(rho, Kc));
            }
            Eigen::JacobiSVD<Mat> svd(F[k]);
            for (Eigen::Index i = bound; i < svd.singularValues().size(); ++i)
              rank.take(svd.singularValues()(i) / scale, s.g->name());
          }
          adapted.take(check_sparsity(f, frame, 1e-9).off_mask_max, s.g->name());
        }
      }
  const double worst = std::max({off.value, rank.value, adapted.value});
  l.pass = worst < 1e-9 && counts;
  l.detail = fmt("off-mask %.2e, rank excess %.2e < 1e-9", std::max(off.value, adapted.value), rank.value) +
             ", counts " + (counts ? "match" : "MISMATCH") + " on " + std::to_string(spaces) + " spaces";
  return l;
}

Line network_forward(const std::vector<Setup>& m, std::mt19937_64& rng) {
  Line l{5, "networks are equivariant"};
  Worst w;
  int redraws = 0;
  for (const auto& s : m)
    for (const auto& [H, K] : s.pairs) {
      std::vector<SubgroupPtr> chain{H, K, H, K};
      for (std::size_t depth = 1; depth <= 3; ++depth) {
        std::vector<SubgroupPtr> c(chain.begin(), chain.begin() + long(depth) + 1);
        std::vector<std::size_t> ch;
        for (std::size_t i = 0; i <= depth; ++i) ch.push_back(1 + (i + depth) % 3);
        for (auto sigma : {Nonlinearity::ReluReIm, Nonlinearity::ModulusRelu}) {
          // A draw whose output is identically zero proves nothing; redraw it.
          auto net = random_network(s.g, c, ch, sigma, rng);
          auto f = test::random_function(net.spaces().front(), 1, ch.front(), rng);
          for (int tries = 0; tries < 5 && forward(net, f).back().max_abs() < 1e-6; ++tries) {
            ++redraws;
            net = random_network(s.g, c, ch, sigma, rng);
            f = test::random_function(net.spaces().front(), 1, ch.front(), rng);
          }
          w.take(network_residual(net, f), pair_name(s, H, K));
          w.take(check_network_equivariance(net, f, 1e-9).residual, pair_name(s, H, K));
        }
      }
    }

  // Two layers over Z8xZ8 with trivial subgroups are ordinary 2-D circular
  // convolutions.
  auto g = build_group("Z8xZ8");
  auto e = trivial_subgroup(g);
  auto net = random_network(g, {e, e, e}, {2, 3, 1}, Nonlinearity::ReluReIm, rng);
  auto f = test::random_function(group_space(g), 1, 2, rng);
  auto acts = forward(net, f);
  SpaceFunction cur = f;
  double cnn = 0;
  for (std::size_t layer = 0; layer < 2; ++layer) {
    const auto& chi = *net.layers()[layer].filter;
    SpaceFunction next(group_space(g), 1, chi.cols());
    for (int x1 = 0; x1 < 8; ++x1)
      for (int x2 = 0; x2 < 8; ++x2)
        for (int u1 = 0; u1 < 8; ++u1)
          for (int u2 = 0; u2 < 8; ++u2)
            next[std::size_t(x1 * 8 + x2)] += cur[std::size_t(((x1 - u1 + 8) % 8) * 8 + (x2 - u2 + 8) % 8)] *
                                               chi[std::size_t(u1 * 8 + u2)];
    cur = apply_nonlinearity(next, Nonlinearity::ReluReIm);
    cnn = std::max(cnn, acts[layer].max_abs_diff(cur));
  }
  l.pass = w.value < 1e-9 && cnn < 1e-12 && smallest_output > 1e-6;
  l.detail = fmt("max residual %.2e < 1e-9, classic CNN %.2e < 1e-12", w.value, cnn) +
             fmt(", smallest output %.1e > 1e-6", smallest_output, 0) +
             (smallest_output > 1e-6 ? "" : " (" + smallest_where + ")") +
             ", " + std::to_string(redraws) + " dead draws replaced";
  return l;
}

Line reverse_direction(const std::vector<Setup>& m) {
  Line l{6, "equivariant maps are convolutions"};
  Worst fit, rec, span;
  bool dims = true;
  std::size_t triples = 0;
  for (const auto& s : m)
    for (const auto& [H, K] : s.pairs) {
      ++triples;
      const auto name = pair_name(s, H, K);
      auto in = layer_space(H);
      auto out = layer_space(K);
      auto basis = solve_equivariant_basis(in, out);
      dims = dims && basis.maps.size() == double_cosets(*s.g, *H, *K);

      // Transforms of the input indicators, computed once.
      std::vector<std::vector<Mat>> ein;
      for (std::size_t x = 0; x < in->size(); ++x) {
        std::vector<cplx> v(in->size(), 0.0);
        v[x] = 1.0;
        ein.push_back(transform(SpaceFunction::scalar(in, v), *s.sys));
      }
      std::vector<Mat> solved;
      for (const auto& phi : basis.maps) {
        auto blocks = fourier_blocks_of_map(phi, s.sys);
        for (std::size_t x = 0; x < in->size(); ++x) {
          std::vector<cplx> v(in->size(), 0.0);
          v[x] = 1.0;
          auto Fout = transform(phi(SpaceFunction::scalar(in, v)), *s.sys);
          for (std::size_t k = 0; k < s.sys->size(); ++k)
            fit.take(max_abs(ein[x][k] * blocks.B[k] - Fout[k]) / std::max(1.0, max_abs(Fout[k])), name);
        }
        auto chi = filter_from_blocks(blocks, phi, s.sys);
        rec.take(op_norm(convolution_matrix(chi, in, out) - phi.matrix), name);
        solved.push_back(phi.matrix);
      }
      auto dbl = double_space(H, K);
      std::vector<Mat> conv;
      for (std::size_t y = 0; y < dbl->size(); ++y) {
        std::vector<cplx> v(dbl->size(), 0.0);
        v[y] = 1.0;
        conv.push_back(convolution_matrix(SpaceFunction::scalar(dbl, v), in, out));
      }
      span.take(outside_span(conv, solved), name);
      span.take(outside_span(solved, conv), name);
    }
  l.pass = dims && fit.value < 1e-8 && rec.value < 1e-8 && span.value < 1e-8;
  l.detail = std::string("dims ") + (dims ? "match" : "MISMATCH") + fmt(", fit %.2e, rebuild %.2e", fit.value, rec.value) +
             fmt(", span %.2e < 1e-8 on %.0f triples", span.value, double(triples));
  return l;
}

Line lemmas(const std::vector<Setup>& m, std::mt19937_64& rng) {
  Line l{7, "group sums and lifted invariances"};
  Worst sums;
  double lifted = 0;
  for (const auto& s : m) {
    const auto& G = *s.g;
    for (std::size_t k = 0; k < s.sys->size(); ++k) {
      if (k == s.sys->trivial_index()) continue;
      const auto& rho = (*s.sys)[k];
      Mat sum = Mat::Zero(rho.dim, rho.dim);
      for (element_t u = 0; u < G.order(); ++u) sum += rho(u);
      sums.take(max_abs(sum), G.name() + " " + rho.label);
    }
    for (const auto& [H, K] : s.pairs) {
      auto fl = lift(test::random_function(left_space(H), 1, 1, rng));
      auto fr = lift(test::random_function(right_space(H), 1, 1, rng));
      auto fd = lift(test::random_function(double_space(H, K), 1, 1, rng));
      for (element_t u = 0; u < G.order(); ++u) {
        for (element_t h : H->members()) {
          lifted = std::max(lifted, std::abs(fl.scalar_at(G.mul(u, h)) - fl.scalar_at(u)));
          lifted = std::max(lifted, std::abs(fr.scalar_at(G.mul(h, u)) - fr.scalar_at(u)));
          lifted = std::max(lifted, std::abs(fd.scalar_at(G.mul(h, u)) - fd.scalar_at(u)));
        }
        for (element_t k : K->members()) lifted = std::max(lifted, std::abs(fd.scalar_at(G.mul(u, k)) - fd.scalar_at(u)));
      }
    }
  }
  l.pass = sums.value < 1e-9 && lifted == 0.0;
  l.detail = fmt("max group sum %.2e < 1e-9, lift invariance %.1e (exact)", sums.value, lifted);
  return l;
}

Line mpnn(std::uint64_t seed) {
  Line l{8, "MPNN support on S_n"};
  double off = 0, rank = 0, eq = 0;
  std::size_t chains = 0;
  for (int n : {4, 5}) {
    for (int L = 1; L <= n - 1; ++L) {
      ++chains;
      auto c = mpnn_chain(n, L, seed);
      auto csys = build_irrep_system(c.net.group());
      auto trace = forward_trace(c.net, c.input);
      eq = std::max({eq, c.equivariance.residual, network_residual(c.net, c.input)});
      for (std::size_t i = 0; i < trace.pre.size(); ++i) {
        const int level = c.levels[i + 1];
        for (const auto* act : {&trace.pre[i], &trace.post[i]}) {
          for (std::size_t ch = 0; ch < act->cols(); ++ch) {
            std::vector<cplx> v(act->size());
            for (std::size_t x = 0; x < act->size(); ++x) v[x] = (*act)[x](0, Eigen::Index(ch));
            auto F = transform(SpaceFunction::scalar(act->space(), v), *csys);
            double scale = 1;
            for (const auto& Fk : F) scale = std::max(scale, max_abs(Fk));
            for (std::size_t k = 0; k < csys->size(); ++k) {
              auto p = parse_partition((*csys)[k].label);
              const bool allowed = p.size() == 1 || (p.size() == 2 && p[1] <= level);
              if (!allowed) {
                off = std::max(off, max_abs(F[k]) / scale);
              } else {
                Eigen::JacobiSVD<Mat> svd(F[k]);
                for (Eigen::Index j = 1; j < svd.singularValues().size(); ++j)
                  rank = std::max(rank, svd.singularValues()(j) / scale);
              }
            }
          }
        }
      }
    }
  }
  l.pass = off < 1e-9 && rank < 1e-9 && eq < 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "off-support %.2e, second column %.2e, equivariance %.2e < 1e-9 on %zu chains", off,
                rank, eq, chains);
  l.detail = buf;
  return l;
}

Line representatives(const std::vector<Setup>& m, std::mt19937_64& rng) {
  Line l{9, "representative independence"};
  Worst w;
  for (const auto& s : m)
    for (const auto& [H, K] : s.pairs) {
      auto x = test::random_function(layer_space(H), 1, 1, rng);
      Filter chi{test::random_function(double_space(H, K), 1, 1, rng), ProductMode::Scalar};
      auto base = convolve_case3(x, chi);
      auto Y = H->is_trivial() ? group_space(s.g) : right_space(H);
      // Cross-check against the group-sum matrix before varying anything.
      Vec xv(Eigen::Index(x.size()));
      for (std::size_t i = 0; i < x.size(); ++i) xv(Eigen::Index(i)) = x.scalar_at(i);
      Vec want = convolution_matrix(chi.chi, x.space(), base.space()) * xv;
      for (std::size_t i = 0; i < base.size(); ++i) w.take(std::abs(base.scalar_at(i) - want(Eigen::Index(i))), pair_name(s, H, K));
      for (int t = 0; t < 5; ++t) {
        CaseThreeReps reps;
        auto pick = [&](const QuotientSpace& sp, std::vector<element_t>& out) {
          for (std::size_t i = 0; i < sp.size(); ++i) {
            const auto& c = sp.coset(i);
            out.push_back(c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)]);
          }
        };
        pick(*base.space(), reps.out);
        pick(*Y, reps.sum);
        w.take(convolve_case3(x, chi, base.space(), &reps).max_abs_diff(base), pair_name(s, H, K));
      }
    }
  l.pass = w.value < 1e-10;
  l.detail = fmt("max change %.2e < 1e-10 over 5 trials per space", w.value, 0);
  return l;
}

Line full_verify(const std::string& gconv) {
  Line l{10, "full verify run time"};
  if (gconv.empty()) {
    l.pass = false;
    l.detail = "no --gconv path given";
    return l;
  }
  const auto t0 = Clock::now();
  const std::string cmd = "\"" + gconv + "\" verify --suite all > /dev/null";
  const int rc = std::system(cmd.c_str());
  const double secs = since(t0);
  l.pass = rc == 0 && secs < 120.0;
  l.detail = fmt("verify --suite all: %.1f s < 120 s, exit %.0f", secs, double(rc == 0 ? 0 : 1));
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  std::string gconv;
  bool slow = false;
  std::uint64_t seed = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--gconv" && i + 1 < argc) gconv = argv[++i];
    else if (a == "--slow") slow = true;
    else if (a == "--seed" && i + 1 < argc) seed = std::stoull(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance [--gconv PATH] [--slow] [--seed N]\n");
      return 2;
    }
  }
  std::mt19937_64 rng(seed);
  auto m = build_matrix(slow);
  Ledger out;
  out.print(irrep_integrity(m));
  out.print(fourier_round_trip(m, rng));
  out.print(convolution_theorem(m, rng));
  out.print(sparsity(m, rng));
  out.print(network_forward(m, rng));
  out.print(reverse_direction(m));
  out.print(lemmas(m, rng));
  out.print(mpnn(seed));
  out.print(representatives(m, rng));
  out.print(full_verify(gconv));
  return out.all() ? 0 : 1;
}
