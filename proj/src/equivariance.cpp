#include "equivariance.hpp"

#include <algorithm>

namespace gconv {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

SpaceFunction indicator(const SpacePtr& space, std::size_t x) {
  std::vector<cplx> v(space->size(), 0.0);
  v[x] = 1.0;
  return SpaceFunction::scalar(space, v);
}

void require_left(const SpacePtr& s, const char* what) {
  if (!s->has_left_action()) throw MismatchError(std::string(what) + " must be G or a left quotient G/H");
}

// Pivots below `cutoff` in absolute terms count as zero, so a block that is
// rounding noise next to the other irreps solves to zero.
Mat solve_min_norm(const Mat& a, const Mat& b, double cutoff) {
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  if (cod.maxPivot() <= cutoff) return Mat::Zero(a.cols(), b.cols());
  cod.setThreshold(cutoff / cod.maxPivot());
  return cod.solve(b);
}

}  // namespace

SpaceFunction LinearMap::operator()(const SpaceFunction& f) const {
  if (f.size() != domain->size() || !f.is_scalar()) throw MismatchError("map applied to a function of the wrong size");
  Vec v(idx(f.size()));
  for (std::size_t x = 0; x < f.size(); ++x) v(idx(x)) = f.scalar_at(x);
  Vec w = matrix * v;
  return SpaceFunction::scalar(codomain, std::vector<cplx>(w.data(), w.data() + w.size()));
}

Mat permutation_matrix(element_t g, const QuotientSpace& space) {
  const auto n = idx(space.size());
  Mat p = Mat::Zero(n, n);
  for (std::size_t x = 0; x < space.size(); ++x) p(idx(act(g, x, space)), idx(x)) = 1.0;
  return p;
}

SubgroupPtr left_subgroup(const QuotientSpace& space) {
  if (space.kind() == SpaceKind::Left) return space.H();
  if (space.kind() == SpaceKind::Group) return trivial_subgroup(space.group());
  throw MismatchError("expected G or a left quotient");
}

EquivarianceReport check_map_equivariance(const LinearMap& phi, double tol, bool all_elements) {
  require_left(phi.domain, "domain");
  require_left(phi.codomain, "codomain");
  const auto& G = phi.domain->group();
  if (phi.codomain->group().get() != G.get()) throw MismatchError("domain and codomain over different groups");
  if (phi.matrix.rows() != idx(phi.codomain->size()) || phi.matrix.cols() != idx(phi.domain->size()))
    throw MismatchError("map matrix does not match the spaces");
  std::vector<element_t> elems;
  if (all_elements)
    for (element_t g = 0; g < G->order(); ++g) elems.push_back(g);
  else
    elems = G->generators();
  EquivarianceReport rep;
  rep.tol = tol;
  rep.checked = elems.size();
  for (element_t g : elems) {
    double r = max_abs(phi.matrix * permutation_matrix(g, *phi.domain) - permutation_matrix(g, *phi.codomain) * phi.matrix);
    if (r > rep.residual) {
      rep.residual = r;
      rep.worst_generator = g;
    }
  }
  rep.pass = rep.residual < tol;
  return rep;
}

EquivariantBasis solve_equivariant_basis(const SpacePtr& in, const SpacePtr& out, bool all_elements) {
  require_left(in, "input space");
  require_left(out, "output space");
  const auto& G = in->group();
  if (out->group().get() != G.get()) throw MismatchError("spaces over different groups");
  const std::size_t ni = in->size();
  const std::size_t no = out->size();
  std::vector<element_t> elems;
  if (all_elements)
    for (element_t g = 0; g < G->order(); ++g) elems.push_back(g);
  else
    elems = G->generators();

  // phi[g^-1 i, j] - phi[i, g j] = 0, unknown (i, j) stored at i * ni + j.
  std::vector<std::vector<std::pair<std::size_t, cplx>>> rows;
  for (element_t g : elems) {
    const element_t gi = G->inv(g);
    for (std::size_t i = 0; i < no; ++i)
      for (std::size_t j = 0; j < ni; ++j) {
        const std::size_t a = act(gi, i, *out) * ni + j;
        const std::size_t b = i * ni + act(g, j, *in);
        if (a == b) continue;
        rows.push_back({{a, cplx(1.0)}, {b, cplx(-1.0)}});
      }
  }
  EquivariantBasis out_basis;
  out_basis.all_elements = all_elements;
  out_basis.solve = constraint_nullspace(rows, ni * no, kRankThreshold);
  const Mat& ns = out_basis.solve.basis;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    Mat m(idx(no), idx(ni));
    for (std::size_t i = 0; i < no; ++i)
      for (std::size_t j = 0; j < ni; ++j) m(idx(i), idx(j)) = ns(idx(i * ni + j), c);
    out_basis.maps.push_back({in, out, std::move(m)});
  }
  out_basis.gram = ns.adjoint() * ns;
  return out_basis;
}

LinearMap convolution_operator(const SpaceFunction& chi, const SpacePtr& in, const SpacePtr& out) {
  require_left(in, "input space");
  require_left(out, "output space");
  if (!chi.is_scalar()) throw MismatchError("operator form needs a scalar filter");
  LinearMap m{in, out, Mat::Zero(idx(out->size()), idx(in->size()))};
  Filter f{chi, ProductMode::Scalar};
  for (std::size_t x = 0; x < in->size(); ++x) {
    auto col = convolve_case3(indicator(in, x), f, out);
    for (std::size_t y = 0; y < out->size(); ++y) m.matrix(idx(y), idx(x)) = col.scalar_at(y);
  }
  return m;
}

FourierBlocks fourier_blocks_of_map(const LinearMap& phi, const IrrepSystemPtr& sys) {
  require_left(phi.domain, "domain");
  require_left(phi.codomain, "codomain");
  const std::size_t ni = phi.domain->size();
  std::vector<FourierTransform> fin, fout;
  for (std::size_t x = 0; x < ni; ++x) {
    auto e = indicator(phi.domain, x);
    fin.push_back(fourier(e, sys));
    fout.push_back(fourier(phi(e), sys));
  }
  auto H = left_subgroup(*phi.domain);
  auto K = left_subgroup(*phi.codomain);
  SpaceFrame frame(double_space(H, K), sys);
  auto mask = sparsity_mask(frame);

  double global = 1.0;
  for (const auto& F : fin)
    for (const auto& c : F.components) global = std::max(global, max_abs(c));
  const double cutoff = 1e-10 * global;

  FourierBlocks out;
  out.multiplicity_above_one = mask.multiplicity_above_one;
  for (std::size_t k = 0; k < sys->size(); ++k) {
    const Eigen::Index d = (*sys)[k].dim;
    Mat S(idx(ni) * d, d), T(idx(ni) * d, d), Sh(d, idx(ni) * d), Th(d, idx(ni) * d);
    for (std::size_t x = 0; x < ni; ++x) {
      S.block(idx(x) * d, 0, d, d) = fin[x][k];
      T.block(idx(x) * d, 0, d, d) = fout[x][k];
      Sh.block(0, idx(x) * d, d, d) = fin[x][k];
      Th.block(0, idx(x) * d, d, d) = fout[x][k];
    }
    const double scale = std::max(1.0, max_abs(T));
    Mat B = solve_min_norm(S, T, cutoff);
    Mat A = solve_min_norm(Sh.transpose(), Th.transpose(), cutoff).transpose();
    out.labels.push_back((*sys)[k].label);
    out.right_residual.push_back(max_abs(S * B - T) / scale);
    out.left_residual.push_back(max_abs(A * Sh - Th) / scale);
    Mat Ba = frame.to_adapted(k, B);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        if (!mask.allowed[k](i, j)) out.off_mask_max = std::max(out.off_mask_max, std::abs(Ba(i, j)));
    out.B.push_back(std::move(B));
    out.B_adapted.push_back(std::move(Ba));
    out.max_right_residual = std::max(out.max_right_residual, out.right_residual.back());
    out.max_left_residual = std::max(out.max_left_residual, out.left_residual.back());
  }
  return out;
}

SpaceFunction filter_from_blocks(const FourierBlocks& blocks, const LinearMap& phi, const IrrepSystemPtr& sys) {
  FourierTransform F;
  F.system = sys;
  F.components = blocks.B;
  auto onG = inverse_fourier(F);
  return project(onG, double_space(left_subgroup(*phi.domain), left_subgroup(*phi.codomain)));
}

SpaceFunction filter_from_map(const LinearMap& phi, const IrrepSystemPtr& sys) {
  return filter_from_blocks(fourier_blocks_of_map(phi, sys), phi, sys);
}

namespace {

// Columns: vectorized transforms of the point indicators, irreps stacked in order.
Mat fourier_columns(const SpacePtr& space, const IrrepSystemPtr& sys, std::vector<std::size_t>& irrep_of_row) {
  Eigen::Index total = 0;
  irrep_of_row.clear();
  for (std::size_t k = 0; k < sys->size(); ++k) {
    const Eigen::Index d2 = Eigen::Index((*sys)[k].dim) * (*sys)[k].dim;
    total += d2;
    irrep_of_row.insert(irrep_of_row.end(), static_cast<std::size_t>(d2), k);
  }
  Mat a(total, idx(space->size()));
  for (std::size_t x = 0; x < space->size(); ++x) {
    auto F = fourier(indicator(space, x), sys);
    Eigen::Index r = 0;
    for (const auto& c : F.components) {
      a.block(r, idx(x), c.size(), 1) = Eigen::Map<const Vec>(c.data(), c.size());
      r += c.size();
    }
  }
  return a;
}

}  // namespace

double isotypic_leakage(const LinearMap& phi, const IrrepSystemPtr& sys) {
  std::vector<std::size_t> rin, rout;
  Mat ain = fourier_columns(phi.domain, sys, rin);
  Mat aout = fourier_columns(phi.codomain, sys, rout);
  // M ain = aout phi on the span of the input transforms.
  Mat M = solve_min_norm(ain.transpose(), (aout * phi.matrix).transpose(), 1e-10 * std::max(1.0, max_abs(ain))).transpose();
  double leak = 0;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (rout[static_cast<std::size_t>(i)] != rin[static_cast<std::size_t>(j)]) leak = std::max(leak, std::abs(M(i, j)));
  return leak;
}

LinearMap left_multiplication_map(const IrrepSystemPtr& sys, const std::vector<Mat>& B) {
  const auto& G = sys->group();
  auto space = group_space(G);
  LinearMap m{space, space, Mat::Zero(idx(G->order()), idx(G->order()))};
  for (element_t u = 0; u < G->order(); ++u) {
    FourierTransform F;
    F.system = sys;
    for (std::size_t k = 0; k < sys->size(); ++k) F.components.push_back(B[k] * (*sys)[k](u));
    auto f = inverse_fourier(F);
    for (element_t v = 0; v < G->order(); ++v) m.matrix(idx(v), idx(u)) = f.scalar_at(v);
  }
  return m;
}

double span_residual(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  if (a.empty()) return 0.0;
  const Eigen::Index n = a.front().size();
  Mat basis(n, idx(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j) basis.col(idx(j)) = Eigen::Map<const Vec>(b[j].data(), n);
  double worst = 0;
  for (const auto& m : a) {
    Vec v = Eigen::Map<const Vec>(m.data(), n);
    const double norm = std::max(v.norm(), 1e-300);
    if (b.empty()) {
      worst = std::max(worst, v.norm() > 0 ? 1.0 : 0.0);
      continue;
    }
    Vec c = solve_min_norm(basis, v, 1e-10 * std::max(1.0, max_abs(basis)));
    worst = std::max(worst, (basis * c - v).norm() / norm);
  }
  return worst;
}

}  // namespace gconv
