#include "convolution.hpp"

namespace gconv {

namespace {

void require_same_group(const SpaceFunction& f, const SpaceFunction& g) {
  if (f.space()->group().get() != g.space()->group().get())
    throw MismatchError("convolution of functions on different groups");
}

SubgroupPtr subgroup_or_trivial(const SubgroupPtr& s, const GroupPtr& g) { return s ? s : trivial_subgroup(g); }

}  // namespace

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  return a.parent().get() == b.parent().get() && a.members() == b.members();
}

std::pair<SubgroupPtr, SubgroupPtr> filter_subgroups(const QuotientSpace& space) {
  const auto& g = space.group();
  switch (space.kind()) {
    case SpaceKind::Group: return {trivial_subgroup(g), trivial_subgroup(g)};
    case SpaceKind::Left: return {trivial_subgroup(g), space.H()};
    case SpaceKind::Right: return {space.H(), trivial_subgroup(g)};
    case SpaceKind::Double: return {space.H(), space.K()};
  }
  throw Error("unknown space kind");
}

SpaceFunction convolve_def4(const SpaceFunction& f, const SpaceFunction& g, std::optional<ProductMode> mode) {
  require_same_group(f, g);
  const ProductMode m = mode.value_or(default_mode(f, g));
  auto [rr, rc] = product_shape(m, f.rows(), f.cols(), g.rows(), g.cols());
  const auto& G = f.space()->group();
  const auto& fs = *f.space();
  const auto& gs = *g.space();
  SpaceFunction out(group_space(G), rr, rc);
  for (element_t u = 0; u < G->order(); ++u)
    for (element_t v = 0; v < G->order(); ++v)
      out[u] += apply_product(m, f[fs.point_of(G->mul(u, G->inv(v)))], g[gs.point_of(v)]);
  return out;
}

SpaceFunction convolve_case1(const SpaceFunction& f, const SpaceFunction& g, std::optional<ProductMode> mode) {
  require_same_group(f, g);
  if (f.space()->kind() != SpaceKind::Group) throw MismatchError("case I expects f on G");
  if (!g.space()->has_left_action()) throw MismatchError("case I expects g on G/H");
  const ProductMode m = mode.value_or(default_mode(f, g));
  auto [rr, rc] = product_shape(m, f.rows(), f.cols(), g.rows(), g.cols());
  const auto& G = f.space()->group();
  const auto& X = g.space();
  SpaceFunction out(X, rr, rc);
  for (std::size_t x = 0; x < X->size(); ++x) {
    const element_t r = X->representative(x);
    for (element_t v = 0; v < G->order(); ++v) out[x] += apply_product(m, f[G->mul(r, G->inv(v))], g[X->point_of(v)]);
  }
  return out;
}

SpaceFunction convolve_case2(const SpaceFunction& f, const SpaceFunction& g, std::optional<ProductMode> mode) {
  require_same_group(f, g);
  const auto& G = f.space()->group();
  const auto& fs = *f.space();
  const auto& gs = *g.space();
  if (!fs.has_left_action()) throw MismatchError("case II expects f on G/H");
  if (gs.kind() != SpaceKind::Right && gs.kind() != SpaceKind::Group)
    throw MismatchError("case II expects g on H\\G");
  auto hf = subgroup_or_trivial(fs.kind() == SpaceKind::Left ? fs.H() : nullptr, G);
  auto hg = subgroup_or_trivial(gs.kind() == SpaceKind::Right ? gs.H() : nullptr, G);
  if (!same_subgroup(*hf, *hg)) throw MismatchError("case II needs the same H on both sides");
  const ProductMode m = mode.value_or(default_mode(f, g));
  auto [rr, rc] = product_shape(m, f.rows(), f.cols(), g.rows(), g.cols());
  const double h = static_cast<double>(hf->order());
  SpaceFunction out(group_space(G), rr, rc);
  for (element_t u = 0; u < G->order(); ++u) {
    for (std::size_t y = 0; y < gs.size(); ++y)
      out[u] += apply_product(m, f[fs.point_of(G->mul(u, G->inv(gs.representative(y))))], g[y]);
    out[u] *= h;
  }
  return out;
}

SpaceFunction convolve_case3(const SpaceFunction& f, const Filter& filter, const SpacePtr& out_space,
                             const CaseThreeReps* reps) {
  const auto& chi = filter.chi;
  require_same_group(f, chi);
  const auto& G = f.space()->group();
  const auto& fs = *f.space();
  if (!fs.has_left_action()) throw MismatchError("case III expects f on G/H");
  auto [H, K] = filter_subgroups(*chi.space());
  auto hf = subgroup_or_trivial(fs.kind() == SpaceKind::Left ? fs.H() : nullptr, G);
  if (!same_subgroup(*hf, *H)) throw MismatchError("filter H does not match the input space");
  const ProductMode m = filter.mode;
  auto [rr, rc] = product_shape(m, f.rows(), f.cols(), chi.rows(), chi.cols());

  SpacePtr X = out_space;
  if (!X) X = K->is_trivial() ? group_space(G) : left_space(K);
  if (X->group().get() != G.get() || !X->has_left_action()) throw MismatchError("output space must be G/K");
  auto kx = subgroup_or_trivial(X->kind() == SpaceKind::Left ? X->H() : nullptr, G);
  if (!same_subgroup(*kx, *K)) throw MismatchError("output space does not match filter K");
  auto Y = H->is_trivial() ? group_space(G) : right_space(H);
  const auto& cs = *chi.space();

  if (reps) {
    if (reps->out.size() != X->size() || reps->sum.size() != Y->size())
      throw MismatchError("representative lists do not match the spaces");
    for (std::size_t x = 0; x < X->size(); ++x)
      if (X->point_of(reps->out[x]) != x) throw MismatchError("output representative outside its coset");
    for (std::size_t y = 0; y < Y->size(); ++y)
      if (Y->point_of(reps->sum[y]) != y) throw MismatchError("summation representative outside its coset");
  }
  auto rep_out = [&](std::size_t x) { return reps ? reps->out[x] : X->representative(x); };
  auto rep_sum = [&](std::size_t y) { return reps ? reps->sum[y] : Y->representative(y); };

  const double h = static_cast<double>(H->order());
  SpaceFunction out(X, rr, rc);
  for (std::size_t x = 0; x < X->size(); ++x) {
    const element_t rx = rep_out(x);
    for (std::size_t y = 0; y < Y->size(); ++y) {
      const element_t ry = rep_sum(y);
      out[x] += apply_product(m, f[fs.point_of(G->mul(rx, G->inv(ry)))], chi[cs.point_of(ry)]);
    }
    out[x] *= h;
  }
  return out;
}

}  // namespace gconv
