#pragma once

#include <string>
#include <utility>

#include "quotient.hpp"

namespace gconv {

/// How the values of f and g multiply inside a convolution sum, with f's
/// value taken at u v^-1 and g's at v.
///   SCALAR   1x1 * 1x1
///   DOT      f m x 1, g m x 1, result f^T g
///   MATVEC   f n x m, g m x k, result f g (also the layer case: a 1 x c_in
///            activation row times a c_in x c_out filter)
///   REVERSE  f m x k, g n x m, result g f
enum class ProductMode { Scalar, Dot, MatVec, Reverse };

const char* to_string(ProductMode mode);
ProductMode product_mode_from_string(const std::string& s);

/// Shape of the product, or MismatchError.
std::pair<std::size_t, std::size_t> product_shape(ProductMode mode, std::size_t fr, std::size_t fc, std::size_t gr,
                                                  std::size_t gc);

/// Picks SCALAR for 1x1 pairs, MATVEC otherwise.
ProductMode default_mode(const SpaceFunction& f, const SpaceFunction& g);

/// Spatial product of one pair of values.
Mat apply_product(ProductMode mode, const Mat& fv, const Mat& gv);

/// Product of two blockwise Fourier components. fr x fc and gr x gc are the
/// channel shapes; every block is d x d.
Mat block_product(ProductMode mode, const Mat& F, const Mat& G, Eigen::Index d, std::size_t fr, std::size_t fc,
                  std::size_t gr, std::size_t gc);

}  // namespace gconv
