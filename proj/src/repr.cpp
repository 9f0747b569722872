#include "repr.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <random>

namespace gconv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string family_spec(const GroupFamily& f) {
  switch (f.kind) {
    case Family::Cyclic: return "Z" + std::to_string(f.n);
    case Family::Dihedral: return "D" + std::to_string(f.n);
    case Family::Symmetric: return "S" + std::to_string(f.n);
    default: throw Error("not a simple group family");
  }
}

Mat scalar_mat(cplx v) { return Mat::Constant(1, 1, v); }

Mat rotation(double theta) {
  Mat m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return m;
}

std::vector<Irrep> cyclic_irreps(const FiniteGroup& g) {
  const int n = g.family().n;
  std::vector<Irrep> out;
  for (int j = 0; j < n; ++j) {
    Irrep r{std::to_string(j), 1, {}};
    for (int k = 0; k < n; ++k) r.matrices.push_back(scalar_mat(std::polar(1.0, kTwoPi * ((j * k) % n) / n)));
    out.push_back(std::move(r));
  }
  return out;
}

// Element id f*n + k is r^k s^f.
std::vector<Irrep> dihedral_irreps(const FiniteGroup& g) {
  const int n = g.family().n;
  const int order = 2 * n;
  std::vector<Irrep> out;
  auto one_dim = [&](const std::string& label, int rot_sign, int refl_sign) {
    Irrep r{label, 1, {}};
    for (int id = 0; id < order; ++id) {
      int k = id % n, f = id / n;
      double v = ((rot_sign < 0 && k % 2) ? -1.0 : 1.0) * ((refl_sign < 0 && f) ? -1.0 : 1.0);
      r.matrices.push_back(scalar_mat(v));
    }
    out.push_back(std::move(r));
  };
  one_dim("A1", 1, 1);
  one_dim("A2", 1, -1);
  if (n % 2 == 0) {
    one_dim("B1", -1, 1);
    one_dim("B2", -1, -1);
  }
  Mat s(2, 2);
  s << 1, 0, 0, -1;
  for (int j = 1; 2 * j < n; ++j) {
    Irrep r{"E" + std::to_string(j), 2, {}};
    for (int id = 0; id < order; ++id) {
      int k = id % n, f = id / n;
      Mat m = rotation(kTwoPi * ((j * k) % n) / n);
      r.matrices.push_back(f ? Mat(m * s) : m);
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct Tableau {
  std::vector<int> row, col;  // position of each number 0..n-1
};

std::vector<Tableau> standard_tableaux(const std::vector<int>& lambda) {
  int n = 0;
  for (int l : lambda) n += l;
  std::vector<Tableau> out;
  Tableau cur{std::vector<int>(n), std::vector<int>(n)};
  std::vector<int> len(lambda.size(), 0);
  std::function<void(int)> place = [&](int k) {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t r = 0; r < lambda.size(); ++r) {
      if (len[r] >= lambda[r]) continue;
      if (r > 0 && len[r - 1] <= len[r]) continue;
      cur.row[k] = static_cast<int>(r);
      cur.col[k] = len[r];
      ++len[r];
      place(k + 1);
      --len[r];
    }
  };
  place(0);
  return out;
}

std::vector<Irrep> symmetric_irreps(const FiniteGroup& g) {
  const int n = g.family().n;
  auto perms = all_permutations(n);
  // Adjacent transposition ids in this group's numbering.
  std::vector<element_t> gens;
  for (int k = 0; k + 1 < n; ++k) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::swap(p[k], p[k + 1]);
    gens.push_back(static_cast<element_t>(std::find(perms.begin(), perms.end(), p) - perms.begin()));
  }
  std::vector<Irrep> out;
  for (const auto& lambda : partitions(n)) {
    auto gm = young_generator_matrices(lambda);
    const int d = gm.empty() ? 1 : static_cast<int>(gm[0].rows());
    Irrep r{partition_label(lambda), d, std::vector<Mat>(g.order())};
    std::vector<char> done(g.order(), 0);
    r.matrices[0] = Mat::Identity(d, d);
    done[0] = 1;
    std::queue<element_t> q;
    q.push(0);
    while (!q.empty()) {
      element_t u = q.front();
      q.pop();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        element_t v = g.mul(u, gens[i]);
        if (done[v]) continue;
        done[v] = 1;
        r.matrices[v] = r.matrices[u] * gm[i];
        q.push(v);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Irrep> product_irreps(const FiniteGroup& g) {
  const auto& fam = g.family();
  std::vector<GroupPtr> parts;
  std::vector<IrrepSystemPtr> systems;
  for (const auto& f : fam.factors) {
    parts.push_back(build_group(family_spec(f)));
    systems.push_back(build_irrep_system(parts.back()));
  }
  const std::size_t k = parts.size();
  std::vector<std::vector<element_t>> digits(g.order(), std::vector<element_t>(k));
  for (std::size_t id = 0; id < g.order(); ++id) {
    std::size_t rest = id;
    for (std::size_t i = k; i-- > 0;) {
      digits[id][i] = static_cast<element_t>(rest % parts[i]->order());
      rest /= parts[i]->order();
    }
  }
  std::vector<Irrep> out;
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    Irrep r;
    r.label = "(";
    r.dim = 1;
    for (std::size_t i = 0; i < k; ++i) {
      r.label += (i ? "," : "") + (*systems[i])[pick[i]].label;
      r.dim *= (*systems[i])[pick[i]].dim;
    }
    r.label += ")";
    r.matrices.resize(g.order());
    for (std::size_t id = 0; id < g.order(); ++id) {
      Mat m = Mat::Identity(1, 1);
      for (std::size_t i = 0; i < k; ++i) {
        const Mat& f = (*systems[i])[pick[i]](digits[id][i]);
        Mat next(m.rows() * f.rows(), m.cols() * f.cols());
        for (Eigen::Index a = 0; a < m.rows(); ++a)
          for (Eigen::Index b = 0; b < m.cols(); ++b)
            next.block(a * f.rows(), b * f.cols(), f.rows(), f.cols()) = m(a, b) * f;
        m = std::move(next);
      }
      r.matrices[id] = std::move(m);
    }
    out.push_back(std::move(r));
    // Odometer over factor irreps, last factor fastest.
    std::size_t i = k;
    while (i-- > 0) {
      if (++pick[i] < systems[i]->size()) break;
      pick[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

bool is_trivial(const Irrep& r) {
  if (r.dim != 1) return false;
  for (const auto& m : r.matrices)
    if (std::abs(m(0, 0) - 1.0) > 1e-9) return false;
  return true;
}

// One attempt at splitting the regular representation; empty on failure.
std::vector<Irrep> generic_attempt(const FiniteGroup& g, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(g.order());
  std::mt19937_64 rng(seed);
  Mat m = random_complex(n, n, rng);
  m = (m + m.adjoint()).eval();
  // A = sum_h R(h) M R(h)^T with R(h) e_x = e_{hx}.
  Mat a = Mat::Zero(n, n);
  for (element_t h = 0; h < g.order(); ++h)
    for (Eigen::Index x = 0; x < n; ++x) {
      const auto hx = g.mul(h, static_cast<element_t>(x));
      for (Eigen::Index y = 0; y < n; ++y) a(hx, g.mul(h, static_cast<element_t>(y))) += m(x, y);
    }
  a = (0.5 * (a + a.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) return {};
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double tol = 1e-7 * std::max(1.0, ev.cwiseAbs().maxCoeff());

  std::vector<Irrep> found;
  std::vector<std::vector<cplx>> chars;
  long dim_sum = 0;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && ev(end) - ev(end - 1) < tol) ++end;
    const Eigen::Index d = end - start;
    Mat v = es.eigenvectors().middleCols(start, d);
    start = end;
    Irrep r{"", static_cast<int>(d), std::vector<Mat>(g.order())};
    for (element_t h = 0; h < g.order(); ++h) {
      // R(h) V: row hx of the result is row x of V.
      Mat rv(n, d);
      for (Eigen::Index x = 0; x < n; ++x) rv.row(g.mul(h, static_cast<element_t>(x))) = v.row(x);
      r.matrices[h] = v.adjoint() * rv;
    }
    auto chi = character(r);
    if (std::abs(character_inner(chi, chi) - 1.0) > 1e-6) return {};
    bool dup = false;
    for (const auto& c : chars) {
      double diff = 0;
      for (std::size_t i = 0; i < c.size(); ++i) diff = std::max(diff, std::abs(c[i] - chi[i]));
      if (diff < 1e-6) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    chars.push_back(chi);
    dim_sum += d * d;
    found.push_back(std::move(r));
  }
  if (dim_sum != static_cast<long>(g.order())) return {};
  return found;
}

}  // namespace

IrrepSystem::IrrepSystem(GroupPtr group, std::vector<Irrep> irreps, std::size_t trivial_index)
    : group_(std::move(group)), irreps_(std::move(irreps)), trivial_index_(trivial_index) {}

std::size_t IrrepSystem::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < irreps_.size(); ++i)
    if (irreps_[i].label == label) return i;
  throw ParseError("no irrep labelled '" + label + "'");
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::string partition_label(const std::vector<int>& lambda) {
  std::string s = "(";
  for (std::size_t i = 0; i < lambda.size(); ++i) s += (i ? "," : "") + std::to_string(lambda[i]);
  return s + ")";
}

std::vector<Mat> young_generator_matrices(const std::vector<int>& lambda) {
  auto tabs = standard_tableaux(lambda);
  const auto d = static_cast<Eigen::Index>(tabs.size());
  int n = 0;
  for (int l : lambda) n += l;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Eigen::Index> index;
  for (Eigen::Index i = 0; i < d; ++i) index[{tabs[i].row, tabs[i].col}] = i;
  std::vector<Mat> out;
  for (int k = 0; k + 1 < n; ++k) {
    Mat m = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto& t = tabs[i];
      if (t.row[k] == t.row[k + 1]) {
        m(i, i) = 1.0;
      } else if (t.col[k] == t.col[k + 1]) {
        m(i, i) = -1.0;
      } else {
        // Axial distance between k+1 and k (contents col - row).
        const double r = (t.col[k + 1] - t.row[k + 1]) - (t.col[k] - t.row[k]);
        Tableau sw = t;
        std::swap(sw.row[k], sw.row[k + 1]);
        std::swap(sw.col[k], sw.col[k + 1]);
        const Eigen::Index j = index.at({sw.row, sw.col});
        m(i, i) = 1.0 / r;
        m(j, i) = std::sqrt(1.0 - 1.0 / (r * r));
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

IrrepSystemPtr build_irrep_system_generic(const GroupPtr& group, std::uint64_t seed) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    auto irreps = generic_attempt(*group, seed + 0x9e3779b97f4a7c15ULL * attempt);
    if (irreps.empty()) continue;
    // Trivial first, then by dimension, then by character values.
    auto key = [](const Irrep& r) {
      std::vector<double> k;
      k.push_back(is_trivial(r) ? 0.0 : 1.0);
      k.push_back(r.dim);
      for (const auto& m : r.matrices) {
        cplx c = m.trace();
        k.push_back(std::round(c.real() * 1e6) / 1e6);
        k.push_back(std::round(c.imag() * 1e6) / 1e6);
      }
      return k;
    };
    std::stable_sort(irreps.begin(), irreps.end(), [&](const Irrep& a, const Irrep& b) { return key(a) < key(b); });
    for (std::size_t i = 0; i < irreps.size(); ++i) irreps[i].label = "mu" + std::to_string(i);
    // The trivial block comes out as an arbitrary unit phase; pin it to exactly 1.
    for (auto& m : irreps[0].matrices) m(0, 0) = 1.0;
    return std::make_shared<IrrepSystem>(group, std::move(irreps), 0);
  }
  throw NumericalError("could not split the regular representation of " + group->name());
}

IrrepSystemPtr build_irrep_system(const GroupPtr& group) {
  std::vector<Irrep> irreps;
  switch (group->family().kind) {
    case Family::Cyclic: irreps = cyclic_irreps(*group); break;
    case Family::Dihedral: irreps = dihedral_irreps(*group); break;
    case Family::Symmetric: irreps = symmetric_irreps(*group); break;
    case Family::Product: irreps = product_irreps(*group); break;
    case Family::Abstract: return build_irrep_system_generic(group);
  }
  std::size_t trivial = 0;
  for (std::size_t i = 0; i < irreps.size(); ++i)
    if (is_trivial(irreps[i])) {
      trivial = i;
      break;
    }
  return std::make_shared<IrrepSystem>(group, std::move(irreps), trivial);
}

std::vector<cplx> character(const Irrep& rho) {
  std::vector<cplx> c;
  c.reserve(rho.matrices.size());
  for (const auto& m : rho.matrices) c.push_back(m.trace());
  return c;
}

cplx character_inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s / static_cast<double>(a.size());
}

IrrepChecks check_irrep_system(const IrrepSystem& sys) {
  const auto& g = *sys.group();
  IrrepChecks c;
  c.exhaustive = g.order() <= 24;
  std::vector<element_t> right;
  if (c.exhaustive) {
    for (element_t v = 0; v < g.order(); ++v) right.push_back(v);
  } else {
    right = g.generators();
  }
  for (const auto& r : sys.irreps()) {
    c.dim_square_sum += static_cast<long>(r.dim) * r.dim;
    const Mat id = Mat::Identity(r.dim, r.dim);
    c.identity = std::max(c.identity, max_abs(r(0) - id));
    for (element_t u = 0; u < g.order(); ++u) {
      c.unitarity = std::max(c.unitarity, max_abs(r(u).adjoint() * r(u) - id));
      for (element_t v : right) c.homomorphism = std::max(c.homomorphism, max_abs(r(u) * r(v) - r(g.mul(u, v))));
    }
  }
  std::vector<std::vector<cplx>> chars;
  for (const auto& r : sys.irreps()) chars.push_back(character(r));
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = 0; j < chars.size(); ++j)
      c.orthogonality =
          std::max(c.orthogonality, std::abs(character_inner(chars[i], chars[j]) - (i == j ? 1.0 : 0.0)));
  c.complete = c.dim_square_sum == static_cast<long>(g.order());
  return c;
}

std::vector<Mat> restrict(const Irrep& rho, const Subgroup& H) {
  std::vector<Mat> out;
  out.reserve(H.order());
  for (element_t h : H.members()) out.push_back(rho(h));
  return out;
}

RestrictionDecomposition decompose_restriction(const Irrep& rho, const SubgroupPtr& H, const IrrepSystem& sysH) {
  if (sysH.group()->order() != H->order()) throw MismatchError("irrep system does not belong to the subgroup");
  const auto restricted = restrict(rho, *H);
  const double h_order = static_cast<double>(H->order());
  const Eigen::Index d = rho.dim;

  RestrictionDecomposition out;
  out.parent_irrep = rho.label;
  out.H = H;
  std::vector<Vec> columns;

  for (std::size_t mi = 0; mi < sysH.size(); ++mi) {
    const Irrep& mu = sysH[mi];
    const Eigen::Index dm = mu.dim;
    // P_{k1} = (d_mu/|H|) sum_h conj(mu(h)_{k1}) rho(h)
    std::vector<Mat> proj(dm, Mat::Zero(d, d));
    for (std::size_t h = 0; h < restricted.size(); ++h)
      for (Eigen::Index k = 0; k < dm; ++k) proj[k] += std::conj(mu(static_cast<element_t>(h))(k, 0)) * restricted[h];
    for (auto& p : proj) p *= static_cast<double>(dm) / h_order;

    const double tr = proj[0].trace().real();
    const int mult = static_cast<int>(std::lround(tr));
    if (std::abs(tr - mult) > 1e-6) throw NumericalError("non-integral multiplicity in restriction of " + rho.label);
    if (mult == 0) continue;
    out.multiplicities[mu.label] = mult;
    Mat base = orthonormal_range(proj[0], mult);
    for (int copy = 0; copy < mult; ++copy) {
      RestrictionBlock b{mu.label, mi, static_cast<Eigen::Index>(columns.size()), dm, mi == sysH.trivial_index()};
      for (Eigen::Index k = 0; k < dm; ++k) {
        if (b.trivial) out.trivial_block_columns.push_back(static_cast<Eigen::Index>(columns.size()));
        columns.push_back(proj[k] * base.col(copy));
      }
      out.blocks.push_back(b);
    }
  }
  if (static_cast<Eigen::Index>(columns.size()) != d)
    throw NumericalError("restriction blocks of " + rho.label + " do not add up to its dimension");
  out.Q = Mat(d, d);
  for (Eigen::Index j = 0; j < d; ++j) out.Q.col(j) = columns[j];

  double res = max_abs(out.Q.adjoint() * out.Q - Mat::Identity(d, d));
  for (std::size_t h = 0; h < restricted.size(); ++h) {
    Mat expect = Mat::Zero(d, d);
    for (const auto& b : out.blocks) expect.block(b.start, b.start, b.dim, b.dim) = sysH[b.irrep](static_cast<element_t>(h));
    res = std::max(res, max_abs(out.Q.adjoint() * restricted[h] * out.Q - expect));
  }
  out.residual = res;
  if (res > 1e-9) throw NumericalError("restriction decomposition residual " + std::to_string(res) + " for " + rho.label);
  return out;
}

int trivial_multiplicity(const Irrep& rho, const Subgroup& H) {
  cplx s = 0;
  for (element_t h : H.members()) s += rho.character(h);
  s /= static_cast<double>(H.order());
  const long m = std::lround(s.real());
  const double residual = std::abs(s - static_cast<double>(m));
  if (residual >= 1e-8) throw NumericalError("trivial multiplicity is not an integer for " + rho.label);
  return static_cast<int>(m);
}

Mat group_sum(const Irrep& rho) {
  Mat s = Mat::Zero(rho.dim, rho.dim);
  for (const auto& m : rho.matrices) s += m;
  return s;
}

Mat subgroup_sum(const Irrep& rho, const Subgroup& H) {
  Mat s = Mat::Zero(rho.dim, rho.dim);
  for (element_t h : H.members()) s += rho(h);
  return s;
}

AdaptedBasis::AdaptedBasis(IrrepSystemPtr sys, SubgroupPtr H)
    : sys_(std::move(sys)), h_(std::move(H)), sys_h_(build_irrep_system(h_->as_group())) {
  if (h_->parent().get() != sys_->group().get()) throw MismatchError("subgroup of a different group");
  for (const auto& rho : sys_->irreps()) decomps_.push_back(decompose_restriction(rho, h_, *sys_h_));
}

}  // namespace gconv
