#pragma once

#include <vector>

#include "convolution.hpp"
#include "fourier.hpp"
#include "linalg.hpp"

namespace gconv {

/// A linear map between scalar functions on G or left quotients of G,
/// as a |codomain| x |domain| matrix in canonical point order.
struct LinearMap {
  SpacePtr domain;
  SpacePtr codomain;
  Mat matrix;

  SpaceFunction operator()(const SpaceFunction& f) const;
};

/// P[act(g, x), x] = 1.
Mat permutation_matrix(element_t g, const QuotientSpace& space);

/// The subgroup a GROUP or LEFT space quotients by ({e} for GROUP).
SubgroupPtr left_subgroup(const QuotientSpace& space);

struct EquivarianceReport {
  double residual = 0;           // max |phi P_in(g) - P_out(g) phi|
  element_t worst_generator = 0;
  std::size_t checked = 0;       // number of group elements tested
  double tol = 0;
  bool pass = false;
};

/// Checks generators, or every element when `all_elements` is set.
EquivarianceReport check_map_equivariance(const LinearMap& phi, double tol, bool all_elements = false);

struct EquivariantBasis {
  std::vector<LinearMap> maps;
  Mat gram;
  NullSpace solve;
  bool all_elements = false;
};

inline constexpr double kRankThreshold = 1e-7;

/// Null space of phi P_in(g) - P_out(g) phi = 0 over generators (or all
/// elements), orthonormal in the Frobenius inner product.
EquivariantBasis solve_equivariant_basis(const SpacePtr& in, const SpacePtr& out, bool all_elements = false);

/// The Case III operator f -> f * chi as a matrix from L(G/H) to L(G/K).
LinearMap convolution_operator(const SpaceFunction& chi, const SpacePtr& in, const SpacePtr& out);

/// Per-irrep fit of the Fourier action of a map.
struct FourierBlocks {
  std::vector<std::string> labels;
  std::vector<Mat> B;          // F(phi f) = F(f) B, least-squares minimum norm
  std::vector<Mat> B_adapted;  // Q_H^H B Q_K
  std::vector<double> right_residual;
  std::vector<double> left_residual;  // best fit of F(phi f) = A F(f)
  double max_right_residual = 0;
  double max_left_residual = 0;
  double off_mask_max = 0;            // adapted B outside the H\G/K mask
  bool multiplicity_above_one = false;
};

FourierBlocks fourier_blocks_of_map(const LinearMap& phi, const IrrepSystemPtr& sys);

/// Filter on H\G/K whose Case III convolution reproduces phi.
SpaceFunction filter_from_map(const LinearMap& phi, const IrrepSystemPtr& sys);
SpaceFunction filter_from_blocks(const FourierBlocks& blocks, const LinearMap& phi, const IrrepSystemPtr& sys);

/// Matrix of phi in the Fourier domain, between the stacked vectorized
/// components of input and output. Reports the largest entry coupling
/// different irreps.
double isotypic_leakage(const LinearMap& phi, const IrrepSystemPtr& sys);

/// f -> inverse_fourier(B_rho f^(rho)) on G.
LinearMap left_multiplication_map(const IrrepSystemPtr& sys, const std::vector<Mat>& B);

/// Largest least-squares residual of each matrix in `a` against span(b),
/// relative to the norm of the matrix.
double span_residual(const std::vector<Mat>& a, const std::vector<Mat>& b);

}  // namespace gconv
