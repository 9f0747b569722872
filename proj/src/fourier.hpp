#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "product.hpp"
#include "quotient.hpp"
#include "repr.hpp"

namespace gconv {

/// Per-irrep components f^(rho) = sum_u f(u) rho(u). A function with n x m
/// values has (n d) x (m d) components, block (i, j) being the transform of
/// the (i, j) entry.
struct FourierTransform {
  IrrepSystemPtr system;
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::vector<Mat> components;

  const Mat& operator[](std::size_t irrep) const { return components[irrep]; }
  /// The d x d block for channel pair (i, j).
  Mat block(std::size_t irrep, std::size_t i, std::size_t j) const;
  double max_abs_diff(const FourierTransform& other) const;
};

/// Quotient functions are lifted to G first.
FourierTransform fourier(const SpaceFunction& f, const IrrepSystemPtr& sys);

/// f(u) = (1/|G|) sum_rho d_rho tr[f^(rho) rho(u)^H], blockwise.
SpaceFunction inverse_fourier(const FourierTransform& F);

/// <f, g> = sum_u sum_ij conj(f_ij(u)) g_ij(u).
cplx inner(const SpaceFunction& f, const SpaceFunction& g);
/// (1/|G|) sum_rho d_rho tr[F(rho)^H G(rho)].
cplx fourier_inner(const FourierTransform& F, const FourierTransform& G);

/// Inverse transform of the per-irrep products; result on G.
SpaceFunction convolve_fourier(const SpaceFunction& f, const SpaceFunction& g, const IrrepSystemPtr& sys,
                               std::optional<ProductMode> mode = std::nullopt);

/// Adapted bases for the two sides of a space. A LEFT space G/H constrains
/// columns through Q_H, RIGHT constrains rows, DOUBLE H\G/K both.
class SpaceFrame {
 public:
  SpaceFrame(SpacePtr space, IrrepSystemPtr sys);

  const SpacePtr& space() const { return space_; }
  const IrrepSystemPtr& system() const { return sys_; }
  /// Basis acting on rows (Q_H for RIGHT and DOUBLE), or null.
  const std::shared_ptr<const AdaptedBasis>& row_basis() const { return rows_; }
  /// Basis acting on columns (Q_H for LEFT, Q_K for DOUBLE), or null.
  const std::shared_ptr<const AdaptedBasis>& col_basis() const { return cols_; }

  /// Q_row^H C Q_col applied to every d x d block.
  Mat to_adapted(std::size_t irrep, const Mat& component) const;
  Mat from_adapted(std::size_t irrep, const Mat& component) const;
  FourierTransform to_adapted(const FourierTransform& F) const;

 private:
  SpacePtr space_;
  IrrepSystemPtr sys_;
  std::shared_ptr<const AdaptedBasis> rows_;
  std::shared_ptr<const AdaptedBasis> cols_;
};

using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Entries of each adapted d x d component that may be nonzero.
struct SparsityMask {
  SpaceKind kind = SpaceKind::Group;
  SubgroupPtr H;
  SubgroupPtr K;
  std::vector<std::string> labels;
  std::vector<BoolMat> allowed;
  /// Upper bound on the rank of a raw (unadapted) component.
  std::vector<int> rank_bound;
  /// More than one trivial block in some restriction.
  bool multiplicity_above_one = false;

  std::size_t allowed_count() const;
};

SparsityMask sparsity_mask(const SpaceFrame& frame);
SparsityMask sparsity_mask(const SpacePtr& space, const IrrepSystemPtr& sys);

struct SparsityReport {
  double off_mask_max = 0;          // largest adapted entry outside the mask
  std::vector<double> per_irrep;    // same, per irrep
  double rank_excess = 0;           // largest raw singular value beyond the rank bound, relative to the scale
  std::size_t allowed_count = 0;
  std::size_t space_size = 0;
  double tol = 0;
  bool pass = false;
};

/// Works blockwise for matrix-valued functions.
SparsityReport check_sparsity(const SpaceFunction& f, const SpaceFrame& frame, double tol);
SparsityReport check_sparsity(const SpaceFunction& f, const IrrepSystemPtr& sys, double tol);

}  // namespace gconv
