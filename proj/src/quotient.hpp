#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "group.hpp"

namespace gconv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// GROUP is G itself (H trivial, singleton cosets). LEFT = G/H,
/// RIGHT = H\G, DOUBLE = H\G/K.
enum class SpaceKind { Group, Left, Right, Double };

const char* to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& s);

class QuotientSpace {
 public:
  const GroupPtr& group() const { return group_; }
  SpaceKind kind() const { return kind_; }
  const SubgroupPtr& H() const { return h_; }
  /// Only meaningful for DOUBLE.
  const SubgroupPtr& K() const { return k_; }

  std::size_t size() const { return points_.size(); }
  const std::vector<element_t>& coset(std::size_t x) const { return points_[x]; }
  element_t representative(std::size_t x) const { return representative_[x]; }
  std::size_t point_of(element_t g) const { return element_to_point_[g]; }
  const std::vector<std::size_t>& element_to_point() const { return element_to_point_; }

  /// True when points are the group elements themselves in id order.
  bool is_whole_group() const { return points_.size() == group_->order(); }

  /// Spaces on which G acts by left translation (GROUP and LEFT).
  bool has_left_action() const { return kind_ == SpaceKind::Group || kind_ == SpaceKind::Left; }

  friend std::shared_ptr<const QuotientSpace> coset_space(const GroupPtr&, SpaceKind, SubgroupPtr,
                                                          SubgroupPtr);

 private:
  QuotientSpace() = default;

  GroupPtr group_;
  SpaceKind kind_ = SpaceKind::Group;
  SubgroupPtr h_;
  SubgroupPtr k_;
  std::vector<std::vector<element_t>> points_;
  std::vector<element_t> representative_;
  std::vector<std::size_t> element_to_point_;
};

using SpacePtr = std::shared_ptr<const QuotientSpace>;

/// Cosets are enumerated by ascending minimal element id; the minimal element
/// is the representative. For GROUP, H and K are ignored.
SpacePtr coset_space(const GroupPtr& group, SpaceKind kind, SubgroupPtr H = nullptr, SubgroupPtr K = nullptr);

SpacePtr group_space(const GroupPtr& group);
SpacePtr left_space(const SubgroupPtr& H);
SpacePtr right_space(const SubgroupPtr& H);
SpacePtr double_space(const SubgroupPtr& H, const SubgroupPtr& K);

/// T_g on a GROUP or LEFT space: the coset of g * rep(x).
std::size_t act(element_t g, std::size_t x, const QuotientSpace& space);

/// Values at every point of a space, each a rows x cols complex matrix.
class SpaceFunction {
 public:
  SpaceFunction(SpacePtr space, std::size_t rows, std::size_t cols);
  SpaceFunction(SpacePtr space, std::vector<Mat> values);

  static SpaceFunction scalar(SpacePtr space, const std::vector<cplx>& values);

  const SpacePtr& space() const { return space_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }

  const Mat& operator[](std::size_t x) const { return values_[x]; }
  Mat& operator[](std::size_t x) { return values_[x]; }
  cplx scalar_at(std::size_t x) const { return values_[x](0, 0); }
  const std::vector<Mat>& values() const { return values_; }

  /// Largest entrywise magnitude of (this - other); spaces must match in size/shape.
  double max_abs_diff(const SpaceFunction& other) const;
  double max_abs() const;

 private:
  SpacePtr space_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Mat> values_;
};

/// (T_g f)(x) = f(g^-1 x). GROUP and LEFT spaces only.
SpaceFunction translate(element_t g, const SpaceFunction& f);

/// f lifted to G: constant on each coset.
SpaceFunction lift(const SpaceFunction& f);

/// Coset averages of a function on G.
SpaceFunction project(const SpaceFunction& f, const SpacePtr& target);

}  // namespace gconv
