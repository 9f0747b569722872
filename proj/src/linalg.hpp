#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gconv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Scales v so that its largest-magnitude entry is real and positive.
void fix_phase(Eigen::Ref<Vec> v);

/// Orthonormal basis of the column space of a, `rank` columns, from a
/// column-pivoted QR (largest pivot first). Phases fixed per column.
Mat orthonormal_range(const Mat& a, Eigen::Index rank);

struct NullSpace {
  Mat basis;                     // columns, orthonormal
  std::vector<double> singular;  // all singular values found, descending per block
  double sigma_max = 0;
  double threshold = 0;          // absolute cutoff used (relative * sigma_max)
  double relative_threshold = 0;
  bool ambiguous = false;        // some singular value within 100x of the cutoff
};

/// Null space of a sparse constraint system A x = 0 given as rows of
/// (column, coefficient) pairs over `unknowns` columns. Unknowns that never
/// share a row decouple, so the SVD runs per connected block of columns.
NullSpace constraint_nullspace(const std::vector<std::vector<std::pair<std::size_t, cplx>>>& rows,
                               std::size_t unknowns, double relative_threshold);

/// Dense null space via a single SVD (used for small systems and cross-checks).
NullSpace dense_nullspace(const Mat& a, double relative_threshold);

/// Largest singular value.
double spectral_norm(const Mat& m);

/// Complex standard Gaussian entries, real and imaginary parts N(0, 1/2).
template <class Rng>
Mat random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace gconv

#include <random>

namespace gconv {

template <class Rng>
Mat random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = n(rng);
      double im = n(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

}  // namespace gconv
