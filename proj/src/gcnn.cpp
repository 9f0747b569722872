#include "gcnn.hpp"

#include <cmath>
#include <algorithm>
#include <cctype>

#include "equivariance.hpp"

namespace gconv {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

cplx gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

const char* to_string(Nonlinearity s) {
  switch (s) {
    case Nonlinearity::None: return "NONE";
    case Nonlinearity::ReluReIm: return "RELU_RE_IM";
    case Nonlinearity::ModulusRelu: return "MODULUS_RELU";
  }
  return "?";
}

Nonlinearity nonlinearity_from_string(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t == "NONE") return Nonlinearity::None;
  if (t == "RELU_RE_IM") return Nonlinearity::ReluReIm;
  if (t == "MODULUS_RELU") return Nonlinearity::ModulusRelu;
  throw ParseError("unknown nonlinearity '" + s + "'");
}

SpaceFunction apply_nonlinearity(const SpaceFunction& f, Nonlinearity s, double theta) {
  if (s == Nonlinearity::None) return f;
  std::vector<Mat> out = f.values();
  for (auto& m : out)
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      cplx& z = m.data()[i];
      if (s == Nonlinearity::ReluReIm) {
        z = cplx(std::max(z.real(), 0.0), std::max(z.imag(), 0.0));
      } else {
        const double r = std::abs(z);
        z = r > theta ? z * ((r - theta) / r) : cplx(0.0);
      }
    }
  return SpaceFunction(f.space(), std::move(out));
}

SpacePtr layer_space(const SubgroupPtr& H) { return H->is_trivial() ? group_space(H->parent()) : left_space(H); }

Network::Network(GroupPtr group, std::vector<LayerSpec> layers) : group_(std::move(group)), layers_(std::move(layers)) {
  if (layers_.empty()) throw MismatchError("a network needs at least one layer");
  spaces_.push_back(layer_space(layers_.front().H_prev));
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& L = layers_[l];
    const std::string where = "layer " + std::to_string(l + 1) + ": ";
    if (L.H_prev->parent().get() != group_.get() || L.H_next->parent().get() != group_.get())
      throw MismatchError(where + "subgroups belong to another group");
    if (l > 0) {
      const auto& P = layers_[l - 1];
      if (!same_subgroup(*P.H_next, *L.H_prev)) throw MismatchError(where + "does not chain with the previous layer");
      if (P.channels_out != L.channels_in) throw MismatchError(where + "channel count does not chain");
    }
    spaces_.push_back(layer_space(L.H_next));
    if (L.dense) {
      if (L.dense->rows() != idx(spaces_[l + 1]->size() * L.channels_out) ||
          L.dense->cols() != idx(spaces_[l]->size() * L.channels_in))
        throw MismatchError(where + "dense map has the wrong size");
    } else {
      if (!L.filter) throw MismatchError(where + "missing filter");
      auto [H, K] = filter_subgroups(*L.filter->space());
      if (!same_subgroup(*H, *L.H_prev) || !same_subgroup(*K, *L.H_next))
        throw MismatchError(where + "filter space does not match H_prev\\G/H_next");
      if (L.filter->rows() != L.channels_in || L.filter->cols() != L.channels_out)
        throw MismatchError(where + "filter shape does not match the channels");
    }
  }
}

ForwardTrace forward_trace(const Network& net, const SpaceFunction& f0) {
  const auto& layers = net.layers();
  const auto& spaces = net.spaces();
  if (f0.space()->group().get() != net.group().get()) throw MismatchError("input over another group");
  if (f0.rows() != 1 || f0.cols() != layers.front().channels_in) throw MismatchError("input shape must be 1 x c_in");
  if (f0.size() != spaces.front()->size() || !f0.space()->has_left_action() ||
      !same_subgroup(*left_subgroup(*f0.space()), *layers.front().H_prev))
    throw MismatchError("input does not live on the first layer's space");
  ForwardTrace t;
  SpaceFunction cur(spaces.front(), f0.values());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& L = layers[l];
    SpaceFunction pre(spaces[l + 1], 1, L.channels_out);
    if (L.dense) {
      Vec v(idx(cur.size() * L.channels_in));
      for (std::size_t x = 0; x < cur.size(); ++x) v.segment(idx(x * L.channels_in), idx(L.channels_in)) = cur[x].row(0).transpose();
      Vec w = *L.dense * v;
      for (std::size_t x = 0; x < pre.size(); ++x) pre[x].row(0) = w.segment(idx(x * L.channels_out), idx(L.channels_out)).transpose();
    } else {
      pre = convolve_case3(cur, Filter{*L.filter, ProductMode::MatVec}, spaces[l + 1]);
    }
    cur = apply_nonlinearity(pre, L.nonlinearity, L.theta);
    t.pre.push_back(std::move(pre));
    t.post.push_back(cur);
  }
  return t;
}

std::vector<SpaceFunction> forward(const Network& net, const SpaceFunction& f0) { return forward_trace(net, f0).post; }

NetworkEquivarianceReport check_network_equivariance(const Network& net, const SpaceFunction& f0, double tol,
                                                     bool all_elements) {
  const auto& G = net.group();
  std::vector<element_t> elems;
  if (all_elements)
    for (element_t g = 0; g < G->order(); ++g) elems.push_back(g);
  else
    elems = G->generators();
  NetworkEquivarianceReport rep;
  rep.tol = tol;
  rep.checked = elems.size();
  rep.per_layer.assign(net.layers().size(), 0.0);
  SpaceFunction in(net.spaces().front(), f0.values());
  auto base = forward(net, in);
  for (element_t g : elems) {
    auto moved = forward(net, translate(g, in));
    for (std::size_t l = 0; l < base.size(); ++l) {
      const double r = moved[l].max_abs_diff(translate(g, base[l]));
      rep.per_layer[l] = std::max(rep.per_layer[l], r);
      if (r > rep.residual) {
        rep.residual = r;
        rep.worst_generator = g;
      }
    }
  }
  rep.pass = rep.residual < tol;
  return rep;
}

Network random_network(const GroupPtr& group, const std::vector<SubgroupPtr>& chain,
                       const std::vector<std::size_t>& channels, Nonlinearity s, std::mt19937_64& rng) {
  if (chain.size() < 2 || channels.size() != chain.size()) throw MismatchError("chain and channels must align");
  std::vector<LayerSpec> layers;
  for (std::size_t l = 0; l + 1 < chain.size(); ++l) {
    LayerSpec L;
    L.H_prev = chain[l];
    L.H_next = chain[l + 1];
    L.channels_in = channels[l];
    L.channels_out = channels[l + 1];
    auto dbl = double_space(chain[l], chain[l + 1]);
    // Each output is a sum over |G| * c_in products; scaling by that fan-in
    // keeps activations from growing layer over layer.
    const double scale = 1.0 / std::sqrt(double(group->order() * L.channels_in));
    std::vector<Mat> vals(dbl->size(), Mat(idx(L.channels_in), idx(L.channels_out)));
    for (auto& m : vals)
      for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = scale * gaussian(rng);
    L.filter = SpaceFunction(dbl, std::move(vals));
    L.nonlinearity = s;
    layers.push_back(std::move(L));
  }
  return Network(group, std::move(layers));
}

SubgroupPtr young_subgroup(const GroupPtr& sn, int n, int l) {
  if (l < 0 || l > n) throw MismatchError("young_subgroup: l out of range");
  std::vector<element_t> gens;
  auto transposition = [&](int a) {
    return sn->parse_element("(" + std::to_string(a) + std::to_string(a + 1) + ")");
  };
  for (int a = 1; a < n - l; ++a) gens.push_back(transposition(a));
  for (int a = n - l + 1; a < n; ++a) gens.push_back(transposition(a));
  return subgroup_from_generators(sn, gens);
}

MpnnChain mpnn_chain(int n, int L, std::uint64_t seed, double tol) {
  if (n < 2 || n > 5) throw MismatchError("mpnn: n must be between 2 and 5");
  if (L < 1 || L > n - 1) throw MismatchError("mpnn: layers must be between 1 and n - 1");
  auto G = build_group("S" + std::to_string(n));
  auto sys = build_irrep_system(G);
  std::mt19937_64 rng(seed);

  std::vector<int> levels{1};
  for (int l = 1; l <= L; ++l) levels.push_back(l);
  std::vector<SubgroupPtr> subs;
  for (int l : levels) subs.push_back(young_subgroup(G, n, l));

  std::vector<LayerSpec> layers;
  for (std::size_t k = 0; k + 1 < subs.size(); ++k) {
    auto dbl = double_space(subs[k], subs[k + 1]);
    SpaceFrame frame(dbl, sys);
    auto mask = sparsity_mask(frame);
    FourierTransform F;
    F.system = sys;
    for (std::size_t r = 0; r < sys->size(); ++r) {
      const Eigen::Index d = (*sys)[r].dim;
      Mat a = Mat::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          if (mask.allowed[r](i, j)) a(i, j) = gaussian(rng);
      F.components.push_back(frame.from_adapted(r, a));
    }
    LayerSpec spec;
    spec.H_prev = subs[k];
    spec.H_next = subs[k + 1];
    spec.filter = project(inverse_fourier(F), dbl);
    spec.nonlinearity = Nonlinearity::ReluReIm;
    layers.push_back(std::move(spec));
  }
  Network net(G, std::move(layers));

  std::vector<Mat> in(net.spaces().front()->size(), Mat(1, 1));
  for (auto& m : in) m(0, 0) = gaussian(rng);
  SpaceFunction f0(net.spaces().front(), std::move(in));

  auto parts = partitions(n);
  auto trace = forward_trace(net, f0);
  std::vector<MpnnLayerSupport> support;
  for (std::size_t k = 0; k < trace.pre.size(); ++k) {
    const int l = levels[k + 1];
    SpaceFrame frame(net.spaces()[k + 1], sys);
    auto mask = sparsity_mask(frame);
    MpnnLayerSupport s;
    s.layer = k + 1;
    s.l = l;
    s.space_size = net.spaces()[k + 1]->size();
    s.allowed_count = mask.allowed_count();
    s.off_mask_pre = check_sparsity(trace.pre[k], frame, tol).off_mask_max;
    s.off_mask_post = check_sparsity(trace.post[k], frame, tol).off_mask_max;
    auto Fpre = fourier(trace.pre[k], sys);
    auto Fpost = fourier(trace.post[k], sys);
    for (std::size_t r = 0; r < sys->size(); ++r) {
      if (std::max(max_abs(Fpre[r]), max_abs(Fpost[r])) <= tol) continue;
      const auto& label = (*sys)[r].label;
      s.support.push_back(label);
      auto it = std::find_if(parts.begin(), parts.end(), [&](const auto& p) { return partition_label(p) == label; });
      const bool two_row = it != parts.end() && it->size() <= 2 && (it->size() < 2 || (*it)[1] <= l);
      s.two_row_only = s.two_row_only && two_row;
      int cols = 0;
      for (Eigen::Index j = 0; j < mask.allowed[r].cols(); ++j) cols += mask.allowed[r].col(j).any() ? 1 : 0;
      s.single_column = s.single_column && cols == 1;
    }
    support.push_back(std::move(s));
  }
  auto eq = check_network_equivariance(net, f0, tol);
  return MpnnChain{n, L, seed, std::move(net), std::move(f0), std::move(levels), std::move(support), std::move(eq)};
}

}  // namespace gconv
