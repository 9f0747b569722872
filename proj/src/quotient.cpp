#include "quotient.hpp"

#include <algorithm>

namespace gconv {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Group: return "GROUP";
    case SpaceKind::Left: return "LEFT";
    case SpaceKind::Right: return "RIGHT";
    case SpaceKind::Double: return "DOUBLE";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "GROUP") return SpaceKind::Group;
  if (s == "LEFT") return SpaceKind::Left;
  if (s == "RIGHT") return SpaceKind::Right;
  if (s == "DOUBLE") return SpaceKind::Double;
  throw ParseError("unknown quotient kind '" + s + "'");
}

SpacePtr coset_space(const GroupPtr& group, SpaceKind kind, SubgroupPtr H, SubgroupPtr K) {
  if (kind == SpaceKind::Group) {
    H = trivial_subgroup(group);
    K = nullptr;
  }
  if (!H) throw MismatchError("quotient space needs a subgroup H");
  if (kind == SpaceKind::Double && !K) throw MismatchError("double coset space needs a second subgroup K");
  if (H->parent().get() != group.get() || (K && K->parent().get() != group.get()))
    throw MismatchError("subgroup belongs to a different group");
  if (kind != SpaceKind::Double) K = nullptr;

  std::shared_ptr<QuotientSpace> q(new QuotientSpace());
  q->group_ = group;
  q->kind_ = kind;
  q->h_ = H;
  q->k_ = K;
  const std::size_t n = group->order();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  q->element_to_point_.assign(n, unset);

  for (element_t g = 0; g < n; ++g) {
    if (q->element_to_point_[g] != unset) continue;
    std::vector<element_t> cos;
    switch (kind) {
      case SpaceKind::Group:
      case SpaceKind::Left:
        for (element_t h : H->members()) cos.push_back(group->mul(g, h));
        break;
      case SpaceKind::Right:
        for (element_t h : H->members()) cos.push_back(group->mul(h, g));
        break;
      case SpaceKind::Double:
        for (element_t h : H->members())
          for (element_t k : K->members()) cos.push_back(group->mul(group->mul(h, g), k));
        break;
    }
    std::sort(cos.begin(), cos.end());
    cos.erase(std::unique(cos.begin(), cos.end()), cos.end());
    const std::size_t idx = q->points_.size();
    for (element_t c : cos) q->element_to_point_[c] = idx;
    // g is the smallest unassigned id, so it is the minimum of its coset.
    q->representative_.push_back(cos.front());
    q->points_.push_back(std::move(cos));
  }
  return q;
}

SpacePtr group_space(const GroupPtr& group) { return coset_space(group, SpaceKind::Group); }
SpacePtr left_space(const SubgroupPtr& H) { return coset_space(H->parent(), SpaceKind::Left, H); }
SpacePtr right_space(const SubgroupPtr& H) { return coset_space(H->parent(), SpaceKind::Right, H); }
SpacePtr double_space(const SubgroupPtr& H, const SubgroupPtr& K) {
  return coset_space(H->parent(), SpaceKind::Double, H, K);
}

std::size_t act(element_t g, std::size_t x, const QuotientSpace& space) {
  if (!space.has_left_action()) throw MismatchError("the translation action is defined on G and G/H only");
  return space.point_of(space.group()->mul(g, space.representative(x)));
}

SpaceFunction::SpaceFunction(SpacePtr space, std::size_t rows, std::size_t cols)
    : space_(std::move(space)), rows_(rows), cols_(cols), values_(space_->size(), Mat::Zero(rows, cols)) {}

SpaceFunction::SpaceFunction(SpacePtr space, std::vector<Mat> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_->size()) throw MismatchError("value count does not match the number of points");
  rows_ = values_.empty() ? 1 : static_cast<std::size_t>(values_[0].rows());
  cols_ = values_.empty() ? 1 : static_cast<std::size_t>(values_[0].cols());
  for (const auto& v : values_)
    if (static_cast<std::size_t>(v.rows()) != rows_ || static_cast<std::size_t>(v.cols()) != cols_)
      throw MismatchError("value matrices must share one shape");
}

SpaceFunction SpaceFunction::scalar(SpacePtr space, const std::vector<cplx>& values) {
  std::vector<Mat> vals;
  vals.reserve(values.size());
  for (cplx v : values) vals.push_back(Mat::Constant(1, 1, v));
  return SpaceFunction(std::move(space), std::move(vals));
}

double SpaceFunction::max_abs_diff(const SpaceFunction& other) const {
  if (other.size() != size() || other.rows() != rows_ || other.cols() != cols_)
    throw MismatchError("functions differ in size or shape");
  double m = 0;
  for (std::size_t x = 0; x < size(); ++x) m = std::max(m, (values_[x] - other[x]).cwiseAbs().maxCoeff());
  return m;
}

double SpaceFunction::max_abs() const {
  double m = 0;
  for (const auto& v : values_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

SpaceFunction translate(element_t g, const SpaceFunction& f) {
  const auto& space = *f.space();
  if (!space.has_left_action()) throw MismatchError("translate needs a function on G or a left quotient G/H");
  const element_t ginv = space.group()->inv(g);
  std::vector<Mat> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[act(ginv, x, space)];
  return SpaceFunction(f.space(), std::move(out));
}

SpaceFunction lift(const SpaceFunction& f) {
  const auto& space = *f.space();
  const auto& G = space.group();
  if (space.kind() == SpaceKind::Group) return f;
  std::vector<Mat> out(G->order());
  for (element_t g = 0; g < G->order(); ++g) out[g] = f[space.point_of(g)];
  return SpaceFunction(group_space(G), std::move(out));
}

SpaceFunction project(const SpaceFunction& f, const SpacePtr& target) {
  if (f.space()->kind() != SpaceKind::Group) throw MismatchError("project expects a function on G");
  if (target->group().get() != f.space()->group().get()) throw MismatchError("project across different groups");
  std::vector<Mat> out(target->size());
  for (std::size_t x = 0; x < target->size(); ++x) {
    Mat acc = Mat::Zero(f.rows(), f.cols());
    for (element_t g : target->coset(x)) acc += f[g];
    out[x] = acc / static_cast<double>(target->coset(x).size());
  }
  return SpaceFunction(target, std::move(out));
}

}  // namespace gconv
