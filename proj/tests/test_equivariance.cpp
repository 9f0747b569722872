#include <doctest.h>

#include <random>
#include <set>

#include "equivariance.hpp"
#include "test_util.hpp"

using namespace gconv;

namespace {

// Number of distinct sets HgK, built element by element.
std::size_t count_double_cosets(const GroupPtr& g, const Subgroup& H, const Subgroup& K) {
  std::set<std::set<element_t>> seen;
  for (element_t u = 0; u < g->order(); ++u) {
    std::set<element_t> c;
    for (element_t h : H.members())
      for (element_t k : K.members()) c.insert(g->mul(g->mul(h, u), k));
    seen.insert(c);
  }
  return seen.size();
}

SpacePtr lspace(const SubgroupPtr& H) { return H->is_trivial() ? group_space(H->parent()) : left_space(H); }

}  // namespace

TEST_CASE("equivariant basis dimensions") {
  auto z4 = build_group("Z4");
  auto e = trivial_subgroup(z4);
  auto b = solve_equivariant_basis(group_space(z4), group_space(z4));
  CHECK(b.maps.size() == 4);
  // Every solution is circulant.
  for (const auto& m : b.maps)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(std::abs(m.matrix(i, j) - m.matrix((i + 1) % 4, (j + 1) % 4)) < 1e-12);

  auto s3 = build_group("S3");
  auto h = subgroup_from_labels(s3, "(12)");
  CHECK(solve_equivariant_basis(left_space(h), left_space(h)).maps.size() == 2);
  CHECK(count_double_cosets(s3, *h, *h) == 2);

  for (const auto& c : test::subgroup_cases()) {
    CAPTURE(c.group);
    CAPTURE(c.h);
    CAPTURE(c.k);
    auto g = build_group(c.group);
    auto H = subgroup_from_labels(g, c.h);
    auto K = subgroup_from_labels(g, c.k);
    auto basis = solve_equivariant_basis(lspace(H), lspace(K));
    CHECK(basis.maps.size() == count_double_cosets(g, *H, *K));
    CHECK(basis.maps.size() == double_space(H, K)->size());
    CHECK_FALSE(basis.solve.ambiguous);
    CHECK(max_abs(basis.gram - Mat::Identity(basis.gram.rows(), basis.gram.cols())) < 1e-12);
    for (const auto& m : basis.maps) CHECK(check_map_equivariance(m, 1e-10).pass);
    if (g->order() <= 24) {
      auto full = solve_equivariant_basis(lspace(H), lspace(K), true);
      CHECK(full.maps.size() == basis.maps.size());
      std::vector<Mat> a, bm;
      for (const auto& m : full.maps) a.push_back(m.matrix);
      for (const auto& m : basis.maps) bm.push_back(m.matrix);
      CHECK(span_residual(a, bm) < 1e-10);
      CHECK(span_residual(bm, a) < 1e-10);
    }
  }
}

TEST_CASE("check_map_equivariance: identity, convolution and random maps") {
  std::mt19937_64 rng(1);
  auto s3 = build_group("S3");
  auto h = subgroup_from_labels(s3, "(12)");
  auto X = left_space(h);
  CHECK(check_map_equivariance({X, X, Mat::Identity(3, 3)}, 1e-12).residual == 0.0);

  auto chi = test::random_function(double_space(h, h), 1, 1, rng);
  auto op = convolution_operator(chi, X, X);
  CHECK(check_map_equivariance(op, 1e-10).pass);
  CHECK(check_map_equivariance(op, 1e-10, true).pass);

  Mat r = Mat::Random(3, 3);
  auto rep = check_map_equivariance({X, X, r}, 1e-10);
  CHECK_FALSE(rep.pass);
  CHECK(rep.residual > 0.1);
}

TEST_CASE("fourier blocks: identity, central translation and random equivariant maps") {
  std::mt19937_64 rng(2);
  auto s3 = build_group("S3");
  auto sys = build_irrep_system(s3);
  auto h = subgroup_from_labels(s3, "(12)");
  auto X = left_space(h);

  auto id = fourier_blocks_of_map({X, X, Mat::Identity(3, 3)}, sys);
  CHECK(id.max_right_residual < 1e-9);
  for (std::size_t k = 0; k < sys->size(); ++k) {
    // Identity on the allowed columns: B is the projector onto them.
    const Mat& Ba = id.B_adapted[k];
    auto mask = sparsity_mask(double_space(h, h), sys);
    for (Eigen::Index i = 0; i < Ba.rows(); ++i)
      for (Eigen::Index j = 0; j < Ba.cols(); ++j)
        CHECK(std::abs(Ba(i, j) - ((i == j && mask.allowed[k](i, j)) ? 1.0 : 0.0)) < 1e-9);
  }

  auto z = build_group("Z12");
  auto zs = build_irrep_system(z);
  auto T = LinearMap{group_space(z), group_space(z), permutation_matrix(5, *group_space(z))};
  auto tb = fourier_blocks_of_map(T, zs);
  CHECK(tb.max_right_residual < 1e-9);
  for (std::size_t k = 0; k < zs->size(); ++k) CHECK(std::abs(tb.B[k](0, 0) - (*zs)[k](5)(0, 0)) < 1e-9);

  auto basis = solve_equivariant_basis(X, X);
  Mat combo = Mat::Zero(3, 3);
  std::normal_distribution<double> n(0, 1);
  for (const auto& m : basis.maps) combo += cplx(n(rng), n(rng)) * m.matrix;
  auto fb = fourier_blocks_of_map({X, X, combo}, sys);
  CHECK(fb.max_right_residual < 1e-9);
  CHECK(fb.off_mask_max < 1e-9);
}

TEST_CASE("filters from maps") {
  std::mt19937_64 rng(3);
  for (const auto& c : test::subgroup_cases()) {
    CAPTURE(c.group);
    CAPTURE(c.h);
    CAPTURE(c.k);
    auto g = build_group(c.group);
    auto sys = build_irrep_system(g);
    auto H = subgroup_from_labels(g, c.h);
    auto K = subgroup_from_labels(g, c.k);
    auto in = lspace(H);
    auto out = lspace(K);
    auto chi0 = test::random_function(double_space(H, K), 1, 1, rng);
    auto phi = convolution_operator(chi0, in, out);
    auto chi = filter_from_map(phi, sys);
    CHECK(chi.max_abs_diff(chi0) < 1e-9);
    CHECK(spectral_norm(convolution_operator(chi, in, out).matrix - phi.matrix) < 1e-8);
    CHECK(isotypic_leakage(phi, sys) < 1e-9);
    // Irreps with no H-trivial part give all-noise blocks; they must solve to zero.
    CHECK(fourier_blocks_of_map(phi, sys).off_mask_max < 1e-9);
    for (const auto& m : solve_equivariant_basis(in, out).maps) CHECK(fourier_blocks_of_map(m, sys).off_mask_max < 1e-9);

    auto zero = filter_from_map({in, out, Mat::Zero(phi.matrix.rows(), phi.matrix.cols())}, sys);
    CHECK(zero.max_abs() == 0.0);
  }
}

TEST_CASE("identity map gives the scaled delta filter") {
  auto s4 = build_group("S4");
  auto sys = build_irrep_system(s4);
  auto H = subgroup_from_labels(s4, "(12) (34)");
  auto X = left_space(H);
  auto chi = filter_from_map({X, X, Mat::Identity(6, 6)}, sys);
  const auto& dbl = *chi.space();
  for (std::size_t y = 0; y < dbl.size(); ++y)
    CHECK(std::abs(chi.scalar_at(y) - (y == dbl.point_of(0) ? 1.0 / 4.0 : 0.0)) < 1e-12);
}

TEST_CASE("left multiplication by a non-scalar B is not equivariant") {
  std::mt19937_64 rng(4);
  for (const char* spec : {"S3", "S4", "D4"}) {
    auto g = build_group(spec);
    auto sys = build_irrep_system(g);
    std::vector<Mat> B;
    for (const auto& rho : sys->irreps()) B.push_back(test::random_matrix(rho.dim, rho.dim, rng));
    auto phi = left_multiplication_map(sys, B);
    CHECK(check_map_equivariance(phi, 1e-10).residual > 0.1);
    CHECK(fourier_blocks_of_map(phi, sys).max_right_residual > 0.1);

    // Scalar multiples of the identity are the allowed exception.
    std::vector<Mat> S;
    for (const auto& rho : sys->irreps()) S.push_back(Mat::Identity(rho.dim, rho.dim) * cplx(0.3, -1.2));
    CHECK(check_map_equivariance(left_multiplication_map(sys, S), 1e-10).pass);
  }
}

TEST_CASE("convolution operators and the solved basis span the same space") {
  for (const auto& c : test::subgroup_cases()) {
    CAPTURE(c.group);
    auto g = build_group(c.group);
    auto H = subgroup_from_labels(g, c.h);
    auto K = subgroup_from_labels(g, c.k);
    auto dbl = double_space(H, K);
    std::vector<Mat> conv, solved;
    for (std::size_t y = 0; y < dbl->size(); ++y) {
      std::vector<cplx> v(dbl->size(), 0.0);
      v[y] = 1.0;
      conv.push_back(convolution_operator(SpaceFunction::scalar(dbl, v), lspace(H), lspace(K)).matrix);
    }
    for (const auto& m : solve_equivariant_basis(lspace(H), lspace(K)).maps) solved.push_back(m.matrix);
    CHECK(span_residual(conv, solved) < 1e-8);
    CHECK(span_residual(solved, conv) < 1e-8);
  }
}
