#include "fourier.hpp"

#include <algorithm>

namespace gconv {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_same_group(const SpaceFunction& f, const IrrepSystemPtr& sys) {
  if (f.space()->group().get() != sys->group().get())
    throw MismatchError("function lives on " + f.space()->group()->name() + " but irreps belong to " +
                        sys->group()->name());
}

}  // namespace

Mat FourierTransform::block(std::size_t irrep, std::size_t i, std::size_t j) const {
  const Eigen::Index d = (*system)[irrep].dim;
  return components[irrep].block(idx(i) * d, idx(j) * d, d, d);
}

double FourierTransform::max_abs_diff(const FourierTransform& other) const {
  if (components.size() != other.components.size()) throw MismatchError("transforms over different systems");
  double m = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].rows() != other.components[i].rows() || components[i].cols() != other.components[i].cols())
      throw MismatchError("transform shapes differ");
    m = std::max(m, max_abs(components[i] - other.components[i]));
  }
  return m;
}

FourierTransform fourier(const SpaceFunction& f, const IrrepSystemPtr& sys) {
  require_same_group(f, sys);
  const auto& space = *f.space();
  const std::size_t n = sys->group()->order();
  FourierTransform out;
  out.system = sys;
  out.rows = f.rows();
  out.cols = f.cols();
  for (const auto& rho : sys->irreps()) {
    const Eigen::Index d = rho.dim;
    Mat c = Mat::Zero(idx(f.rows()) * d, idx(f.cols()) * d);
    for (element_t u = 0; u < n; ++u) {
      const Mat& v = f[space.point_of(u)];
      const Mat& r = rho(u);
      for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) {
          const cplx a = v(idx(i), idx(j));
          if (a != cplx(0)) c.block(idx(i) * d, idx(j) * d, d, d) += a * r;
        }
    }
    out.components.push_back(std::move(c));
  }
  return out;
}

SpaceFunction inverse_fourier(const FourierTransform& F) {
  const auto& sys = *F.system;
  const std::size_t n = sys.group()->order();
  SpaceFunction out(group_space(sys.group()), F.rows, F.cols);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const auto& rho = sys[k];
    const Eigen::Index d = rho.dim;
    const double w = static_cast<double>(d) / static_cast<double>(n);
    for (element_t u = 0; u < n; ++u) {
      // tr[B rho(u)^H] = sum of B .* conj(rho(u)).
      const Mat& r = rho(u);
      for (std::size_t i = 0; i < F.rows; ++i)
        for (std::size_t j = 0; j < F.cols; ++j)
          out[u](idx(i), idx(j)) +=
              w * (F.components[k].block(idx(i) * d, idx(j) * d, d, d).array() * r.conjugate().array()).sum();
    }
  }
  return out;
}

cplx inner(const SpaceFunction& f, const SpaceFunction& g) {
  auto fl = lift(f);
  auto gl = lift(g);
  if (fl.size() != gl.size() || f.rows() != g.rows() || f.cols() != g.cols())
    throw MismatchError("inner product of mismatched functions");
  cplx s = 0;
  for (std::size_t u = 0; u < fl.size(); ++u) s += (fl[u].conjugate().array() * gl[u].array()).sum();
  return s;
}

cplx fourier_inner(const FourierTransform& F, const FourierTransform& G) {
  const auto& sys = *F.system;
  cplx s = 0;
  for (std::size_t k = 0; k < sys.size(); ++k)
    s += static_cast<double>(sys[k].dim) * (F.components[k].conjugate().array() * G.components[k].array()).sum();
  return s / static_cast<double>(sys.group()->order());
}

SpaceFunction convolve_fourier(const SpaceFunction& f, const SpaceFunction& g, const IrrepSystemPtr& sys,
                               std::optional<ProductMode> mode) {
  require_same_group(f, sys);
  require_same_group(g, sys);
  const ProductMode m = mode.value_or(default_mode(f, g));
  auto [rr, rc] = product_shape(m, f.rows(), f.cols(), g.rows(), g.cols());
  auto F = fourier(f, sys);
  auto G = fourier(g, sys);
  FourierTransform P;
  P.system = sys;
  P.rows = rr;
  P.cols = rc;
  for (std::size_t k = 0; k < sys->size(); ++k)
    P.components.push_back(block_product(m, F[k], G[k], (*sys)[k].dim, f.rows(), f.cols(), g.rows(), g.cols()));
  return inverse_fourier(P);
}

SpaceFrame::SpaceFrame(SpacePtr space, IrrepSystemPtr sys) : space_(std::move(space)), sys_(std::move(sys)) {
  if (space_->group().get() != sys_->group().get()) throw MismatchError("space and irreps belong to different groups");
  switch (space_->kind()) {
    case SpaceKind::Group: break;
    case SpaceKind::Left: cols_ = std::make_shared<AdaptedBasis>(sys_, space_->H()); break;
    case SpaceKind::Right: rows_ = std::make_shared<AdaptedBasis>(sys_, space_->H()); break;
    case SpaceKind::Double:
      rows_ = std::make_shared<AdaptedBasis>(sys_, space_->H());
      cols_ = space_->K() == space_->H() ? rows_ : std::make_shared<AdaptedBasis>(sys_, space_->K());
      break;
  }
}

Mat SpaceFrame::to_adapted(std::size_t irrep, const Mat& component) const {
  const Eigen::Index d = (*sys_)[irrep].dim;
  Mat out = component;
  for (Eigen::Index i = 0; i < component.rows() / d; ++i)
    for (Eigen::Index j = 0; j < component.cols() / d; ++j) {
      Mat b = component.block(i * d, j * d, d, d);
      if (rows_) b = (*rows_)[irrep].Q.adjoint() * b;
      if (cols_) b = b * (*cols_)[irrep].Q;
      out.block(i * d, j * d, d, d) = b;
    }
  return out;
}

Mat SpaceFrame::from_adapted(std::size_t irrep, const Mat& component) const {
  const Eigen::Index d = (*sys_)[irrep].dim;
  Mat out = component;
  for (Eigen::Index i = 0; i < component.rows() / d; ++i)
    for (Eigen::Index j = 0; j < component.cols() / d; ++j) {
      Mat b = component.block(i * d, j * d, d, d);
      if (rows_) b = (*rows_)[irrep].Q * b;
      if (cols_) b = b * (*cols_)[irrep].Q.adjoint();
      out.block(i * d, j * d, d, d) = b;
    }
  return out;
}

FourierTransform SpaceFrame::to_adapted(const FourierTransform& F) const {
  FourierTransform out = F;
  for (std::size_t k = 0; k < F.components.size(); ++k) out.components[k] = to_adapted(k, F.components[k]);
  return out;
}

std::size_t SparsityMask::allowed_count() const {
  std::size_t n = 0;
  for (const auto& a : allowed) n += static_cast<std::size_t>(a.count());
  return n;
}

SparsityMask sparsity_mask(const SpaceFrame& frame) {
  const auto& sys = *frame.system();
  const auto& space = *frame.space();
  SparsityMask mask;
  mask.kind = space.kind();
  mask.H = space.H();
  mask.K = space.K();
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Eigen::Index d = sys[k].dim;
    mask.labels.push_back(sys[k].label);
    std::vector<bool> row_ok(static_cast<std::size_t>(d), true);
    std::vector<bool> col_ok(static_cast<std::size_t>(d), true);
    int bound = static_cast<int>(d);
    auto restrict_to = [&](const std::shared_ptr<const AdaptedBasis>& basis, std::vector<bool>& ok) {
      if (!basis) return;
      std::fill(ok.begin(), ok.end(), false);
      const auto& cols = (*basis)[k].trivial_block_columns;
      for (auto c : cols) ok[static_cast<std::size_t>(c)] = true;
      bound = std::min(bound, static_cast<int>(cols.size()));
      if (cols.size() > 1) mask.multiplicity_above_one = true;
    };
    restrict_to(frame.row_basis(), row_ok);
    restrict_to(frame.col_basis(), col_ok);
    BoolMat a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        a(i, j) = row_ok[static_cast<std::size_t>(i)] && col_ok[static_cast<std::size_t>(j)];
    mask.allowed.push_back(std::move(a));
    mask.rank_bound.push_back(bound);
  }
  return mask;
}

SparsityMask sparsity_mask(const SpacePtr& space, const IrrepSystemPtr& sys) {
  return sparsity_mask(SpaceFrame(space, sys));
}

SparsityReport check_sparsity(const SpaceFunction& f, const SpaceFrame& frame, double tol) {
  if (f.space()->group().get() != frame.space()->group().get()) throw MismatchError("function and frame differ");
  const auto& sys = *frame.system();
  auto mask = sparsity_mask(frame);
  auto F = fourier(f, frame.system());
  SparsityReport rep;
  rep.tol = tol;
  rep.allowed_count = mask.allowed_count();
  rep.space_size = frame.space()->size();
  double scale = 0;
  for (const auto& c : F.components) scale = std::max(scale, max_abs(c));
  scale = std::max(scale, 1.0);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Eigen::Index d = sys[k].dim;
    Mat a = frame.to_adapted(k, F[k]);
    double worst = 0;
    for (Eigen::Index bi = 0; bi < a.rows() / d; ++bi)
      for (Eigen::Index bj = 0; bj < a.cols() / d; ++bj) {
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j)
            if (!mask.allowed[k](i, j)) worst = std::max(worst, std::abs(a(bi * d + i, bj * d + j)));
        Eigen::JacobiSVD<Mat> svd(F[k].block(bi * d, bj * d, d, d));
        const auto& sv = svd.singularValues();
        for (Eigen::Index s = mask.rank_bound[k]; s < sv.size(); ++s)
          rep.rank_excess = std::max(rep.rank_excess, sv(s) / scale);
      }
    rep.per_irrep.push_back(worst);
    rep.off_mask_max = std::max(rep.off_mask_max, worst);
  }
  const std::size_t expected = frame.space()->size();
  rep.pass = rep.off_mask_max < tol && rep.rank_excess < tol && rep.allowed_count == expected;
  return rep;
}

SparsityReport check_sparsity(const SpaceFunction& f, const IrrepSystemPtr& sys, double tol) {
  return check_sparsity(f, SpaceFrame(f.space(), sys), tol);
}

}  // namespace gconv
