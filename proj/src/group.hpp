#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gconv {

using element_t = std::uint32_t;

/// Base class for every error the library raises. The C API maps the
/// subclasses onto status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class MismatchError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// How a group was built. Irrep construction dispatches on this.
enum class Family { Cyclic, Dihedral, Symmetric, Product, Abstract };

struct GroupFamily {
  Family kind = Family::Abstract;
  int n = 0;                         // Z_n, D_n, S_n parameter
  std::vector<GroupFamily> factors;  // Product only
};

/// A finite group realized by its Cayley table. Element 0 is the identity.
/// Immutable after construction.
class FiniteGroup {
 public:
  FiniteGroup(std::string name, std::vector<element_t> cayley, std::vector<std::string> labels,
              GroupFamily family);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  const GroupFamily& family() const { return family_; }

  element_t mul(element_t a, element_t b) const { return cayley_[a * order_ + b]; }
  element_t inv(element_t a) const { return inverse_[a]; }

  const std::string& label(element_t a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Looks up an element by label; also accepts "#<id>". Throws ParseError.
  element_t parse_element(const std::string& text) const;

  /// Greedy generating set: scan ids upward, keep an element if it is not in
  /// the subgroup generated so far.
  const std::vector<element_t>& generators() const { return generators_; }

  bool check_identity() const;
  bool check_inverse() const;
  bool check_associativity() const;
  bool check_latin_square() const;

 private:
  std::string name_;
  std::size_t order_;
  std::vector<element_t> cayley_;
  std::vector<element_t> inverse_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, element_t> by_label_;
  std::vector<element_t> generators_;
  GroupFamily family_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Upper bound on |G|; reads GCONV_MAX_ORDER, defaults to 720.
std::size_t max_group_order();

/// Builds Z<n>, D<n> (order 2n), S<n> (n <= 6) and products joined by 'x'.
GroupPtr build_group(const std::string& spec);

/// Permutation helpers shared with the S_n irreps.
std::vector<std::vector<int>> all_permutations(int n);
std::string cycle_label(const std::vector<int>& perm);

class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<element_t> members, std::string name);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<element_t>& members() const { return members_; }
  const std::string& name() const { return name_; }
  std::size_t order() const { return members_.size(); }
  bool contains(element_t g) const { return in_[g] != 0; }
  bool is_trivial() const { return members_.size() == 1; }

  /// The subgroup as a standalone group, element i <-> members()[i].
  GroupPtr as_group() const;

 private:
  GroupPtr parent_;
  std::vector<element_t> members_;
  std::vector<char> in_;
  std::string name_;
  GroupPtr standalone_;
};

using SubgroupPtr = std::shared_ptr<const Subgroup>;

SubgroupPtr subgroup_from_generators(const GroupPtr& group, const std::vector<element_t>& gens);

/// Parses a comma/space separated list of element labels, then closes it.
SubgroupPtr subgroup_from_labels(const GroupPtr& group, const std::string& gens);
SubgroupPtr subgroup_from_labels(const GroupPtr& group, const std::vector<std::string>& gens);

SubgroupPtr trivial_subgroup(const GroupPtr& group);

}  // namespace gconv
