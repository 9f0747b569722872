#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "group.hpp"
#include "linalg.hpp"

namespace gconv {

/// A unitary irreducible representation, one d x d matrix per element id.
struct Irrep {
  std::string label;
  int dim = 0;
  std::vector<Mat> matrices;

  const Mat& operator()(element_t g) const { return matrices[g]; }
  cplx character(element_t g) const { return matrices[g].trace(); }
};

/// A complete set of inequivalent irreps of one group.
class IrrepSystem {
 public:
  IrrepSystem(GroupPtr group, std::vector<Irrep> irreps, std::size_t trivial_index);

  const GroupPtr& group() const { return group_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  const Irrep& operator[](std::size_t i) const { return irreps_[i]; }
  std::size_t size() const { return irreps_.size(); }
  std::size_t trivial_index() const { return trivial_index_; }
  /// Throws if no irrep carries the label.
  std::size_t index_of(const std::string& label) const;

 private:
  GroupPtr group_;
  std::vector<Irrep> irreps_;
  std::size_t trivial_index_;
};

using IrrepSystemPtr = std::shared_ptr<const IrrepSystem>;

/// Z_n characters, D_n standard real irreps, Young's orthogonal form for S_n,
/// Kronecker products for direct products, and the regular-representation
/// decomposition for any group without a known family.
IrrepSystemPtr build_irrep_system(const GroupPtr& group);

/// Always uses the regular-representation decomposition: eigenspaces of a
/// random Hermitian element of the commutant of the left regular
/// representation. Deterministic for a fixed seed.
IrrepSystemPtr build_irrep_system_generic(const GroupPtr& group, std::uint64_t seed = 0x5eed);

/// Integer partitions of n in reverse lexicographic order, starting with (n).
std::vector<std::vector<int>> partitions(int n);
std::string partition_label(const std::vector<int>& lambda);
/// Young's orthogonal form for the generators (k, k+1), k = 0..n-2.
std::vector<Mat> young_generator_matrices(const std::vector<int>& lambda);

struct IrrepChecks {
  double homomorphism = 0;  // max |rho(u)rho(v) - rho(uv)|
  double unitarity = 0;     // max |rho(u)^H rho(u) - I|
  double identity = 0;      // max |rho(e) - I|
  double orthogonality = 0; // max |<chi_i, chi_j> - delta_ij|
  long dim_square_sum = 0;
  bool exhaustive = false;  // homomorphism over all pairs vs generators only
  bool complete = false;
};

/// Exhaustive over all pairs when |G| <= 24, otherwise over (u, generator).
IrrepChecks check_irrep_system(const IrrepSystem& sys);

/// (1/|G|) sum_u conj(chi_a(u)) chi_b(u).
cplx character_inner(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> character(const Irrep& rho);

/// rho(h) for each member of H, in H's member order.
std::vector<Mat> restrict(const Irrep& rho, const Subgroup& H);

struct RestrictionBlock {
  std::string label;   // irrep of H
  std::size_t irrep;   // index in the H system
  Eigen::Index start;
  Eigen::Index dim;
  bool trivial;
};

/// Q^H rho(h) Q = block diagonal of H-irreps, for every h in H.
struct RestrictionDecomposition {
  std::string parent_irrep;
  SubgroupPtr H;
  Mat Q;
  std::vector<RestrictionBlock> blocks;
  std::vector<Eigen::Index> trivial_block_columns;
  std::map<std::string, int> multiplicities;
  double residual = 0;
};

RestrictionDecomposition decompose_restriction(const Irrep& rho, const SubgroupPtr& H, const IrrepSystem& sysH);

/// (1/|H|) sum_h chi(h), rounded; throws NumericalError if the rounding residual is >= 1e-8.
int trivial_multiplicity(const Irrep& rho, const Subgroup& H);

/// sum over all u in G of rho(u).
Mat group_sum(const Irrep& rho);
/// sum over h in H of rho(h).
Mat subgroup_sum(const Irrep& rho, const Subgroup& H);

/// Decompositions of every irrep of `sys` over one subgroup. Each Q is the
/// adapted basis used by the sparsity masks.
class AdaptedBasis {
 public:
  AdaptedBasis(IrrepSystemPtr sys, SubgroupPtr H);

  const SubgroupPtr& H() const { return h_; }
  const IrrepSystemPtr& system() const { return sys_; }
  const IrrepSystemPtr& subgroup_system() const { return sys_h_; }
  const RestrictionDecomposition& operator[](std::size_t irrep) const { return decomps_[irrep]; }
  std::size_t size() const { return decomps_.size(); }

 private:
  IrrepSystemPtr sys_;
  SubgroupPtr h_;
  IrrepSystemPtr sys_h_;
  std::vector<RestrictionDecomposition> decomps_;
};

}  // namespace gconv
