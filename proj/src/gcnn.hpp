#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "convolution.hpp"
#include "fourier.hpp"

namespace gconv {

enum class Nonlinearity { None, ReluReIm, ModulusRelu };

const char* to_string(Nonlinearity s);
Nonlinearity nonlinearity_from_string(const std::string& s);

/// Pointwise; theta is the ModulusRelu dead zone.
SpaceFunction apply_nonlinearity(const SpaceFunction& f, Nonlinearity s, double theta = 0.5);

/// One layer X_{l-1} = G/H_prev -> X_l = G/H_next. Activations are 1 x c
/// rows and the filter holds c_in x c_out matrices on H_prev\G/H_next.
/// `dense` replaces the convolution by an arbitrary linear map on the
/// flattened values (point-major, channel-minor); it exists to test that
/// non-convolutional layers are caught.
struct LayerSpec {
  SubgroupPtr H_prev;
  SubgroupPtr H_next;
  std::size_t channels_in = 1;
  std::size_t channels_out = 1;
  std::optional<SpaceFunction> filter;
  std::optional<Mat> dense;
  Nonlinearity nonlinearity = Nonlinearity::None;
  double theta = 0.5;
};

class Network {
 public:
  Network(GroupPtr group, std::vector<LayerSpec> layers);

  const GroupPtr& group() const { return group_; }
  const std::vector<LayerSpec>& layers() const { return layers_; }
  /// spaces()[0] is the input space, spaces()[l] the output of layer l.
  const std::vector<SpacePtr>& spaces() const { return spaces_; }

 private:
  GroupPtr group_;
  std::vector<LayerSpec> layers_;
  std::vector<SpacePtr> spaces_;
};

/// G itself for the trivial subgroup, otherwise G/H.
SpacePtr layer_space(const SubgroupPtr& H);

/// Activations f_1..f_L.
std::vector<SpaceFunction> forward(const Network& net, const SpaceFunction& f0);

/// The pre-nonlinearity convolution outputs alongside the activations.
struct ForwardTrace {
  std::vector<SpaceFunction> pre;
  std::vector<SpaceFunction> post;
};
ForwardTrace forward_trace(const Network& net, const SpaceFunction& f0);

struct NetworkEquivarianceReport {
  double residual = 0;
  std::vector<double> per_layer;
  element_t worst_generator = 0;
  std::size_t checked = 0;
  double tol = 0;
  bool pass = false;
};

NetworkEquivarianceReport check_network_equivariance(const Network& net, const SpaceFunction& f0, double tol,
                                                     bool all_elements = false);

/// Complex Gaussian filters on every double coset space of the chain.
Network random_network(const GroupPtr& group, const std::vector<SubgroupPtr>& chain,
                       const std::vector<std::size_t>& channels, Nonlinearity s, std::mt19937_64& rng);

/// S_{n-l} x S_l inside S_n, the S_l factor permuting the last l points.
SubgroupPtr young_subgroup(const GroupPtr& sn, int n, int l);

struct MpnnLayerSupport {
  std::size_t layer = 0;         // 1-based
  int l = 0;                     // index of X_l
  std::size_t space_size = 0;
  std::size_t allowed_count = 0;
  std::vector<std::string> support;  // irreps carrying nonzero components
  bool two_row_only = true;          // support within (n-p, p), p <= l
  bool single_column = true;         // one allowed column per supported irrep
  double off_mask_pre = 0;
  double off_mask_post = 0;
};

struct MpnnChain {
  int n = 0;
  int L = 0;
  std::uint64_t seed = 0;
  Network net;
  SpaceFunction input;
  std::vector<int> levels;  // X index of each space in net.spaces()
  std::vector<MpnnLayerSupport> support;
  NetworkEquivarianceReport equivariance;
};

/// Input lives on X_1; layer 1 maps X_1 -> X_1 and layer l >= 2 maps
/// X_{l-1} -> X_l. Filters are a scalar per allowed partition (n-p, p),
/// seeded. Requires 2 <= n <= 5 and 1 <= L <= n - 1.
MpnnChain mpnn_chain(int n, int L, std::uint64_t seed, double tol = 1e-9);

}  // namespace gconv
