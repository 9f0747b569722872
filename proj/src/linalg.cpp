#include "linalg.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace gconv {

void fix_phase(Eigen::Ref<Vec> v) {
  if (v.size() == 0) return;
  Eigen::Index best = 0;
  double mag = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Small tolerance so that ties resolve to the lowest index deterministically.
    if (std::abs(v(i)) > mag + 1e-12) {
      mag = std::abs(v(i));
      best = i;
    }
  }
  if (mag > 0) v *= std::conj(v(best)) / mag;
}

Mat orthonormal_range(const Mat& a, Eigen::Index rank) {
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), rank);
  for (Eigen::Index j = 0; j < rank; ++j) fix_phase(q.col(j));
  return q;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

NullSpace constraint_nullspace(const std::vector<std::vector<std::pair<std::size_t, cplx>>>& rows,
                               std::size_t unknowns, double relative_threshold) {
  UnionFind uf(unknowns);
  for (const auto& row : rows)
    for (std::size_t i = 1; i < row.size(); ++i) uf.unite(row[0].first, row[i].first);

  // Blocks ordered by their smallest column.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of(unknowns, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < unknowns; ++c) {
    std::size_t r = uf.find(c);
    if (block_of[r] == static_cast<std::size_t>(-1)) {
      block_of[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(c);
  }
  std::vector<std::vector<std::size_t>> block_rows(blocks.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!rows[r].empty()) block_rows[block_of[uf.find(rows[r][0].first)]].push_back(r);

  struct Solved {
    Eigen::VectorXd sv;
    Mat v;
  };
  std::vector<Solved> solved(blocks.size());
  NullSpace out;
  out.relative_threshold = relative_threshold;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& cols = blocks[b];
    std::vector<std::size_t> local(cols.size());
    std::unordered_map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < cols.size(); ++i) pos[cols[i]] = i;
    const auto nr = std::max<std::size_t>(block_rows[b].size(), cols.size());
    // Pad with zero rows so the SVD always yields a full set of right vectors.
    Mat a = Mat::Zero(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < block_rows[b].size(); ++i)
      for (const auto& [c, coef] : rows[block_rows[b][i]]) a(static_cast<Eigen::Index>(i), pos[c]) += coef;
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    solved[b].sv = svd.singularValues();
    solved[b].v = svd.matrixV();
    if (solved[b].sv.size()) out.sigma_max = std::max(out.sigma_max, solved[b].sv(0));
  }
  const double scale = out.sigma_max > 0 ? out.sigma_max : 1.0;
  out.threshold = relative_threshold * scale;

  std::vector<Vec> basis;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& sv = solved[b].sv;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      out.singular.push_back(sv(i));
      if (sv(i) > out.threshold * 1e-2 && sv(i) < out.threshold * 1e2) out.ambiguous = true;
    }
    for (Eigen::Index j = 0; j < solved[b].v.cols(); ++j) {
      if (j < sv.size() && sv(j) > out.threshold) continue;
      Vec full = Vec::Zero(static_cast<Eigen::Index>(unknowns));
      for (std::size_t i = 0; i < blocks[b].size(); ++i)
        full(static_cast<Eigen::Index>(blocks[b][i])) = solved[b].v(static_cast<Eigen::Index>(i), j);
      fix_phase(full);
      basis.push_back(std::move(full));
    }
  }
  out.basis = Mat(static_cast<Eigen::Index>(unknowns), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.basis.col(static_cast<Eigen::Index>(j)) = basis[j];
  return out;
}

NullSpace dense_nullspace(const Mat& a_in, double relative_threshold) {
  Mat a = a_in;
  if (a.rows() < a.cols()) {
    a = Mat::Zero(a_in.cols(), a_in.cols());
    a.topRows(a_in.rows()) = a_in;
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  NullSpace out;
  out.relative_threshold = relative_threshold;
  const auto& sv = svd.singularValues();
  out.sigma_max = sv.size() ? sv(0) : 0.0;
  out.threshold = relative_threshold * (out.sigma_max > 0 ? out.sigma_max : 1.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    out.singular.push_back(sv(i));
    if (sv(i) > out.threshold) ++rank;
    if (sv(i) > out.threshold * 1e-2 && sv(i) < out.threshold * 1e2) out.ambiguous = true;
  }
  out.basis = svd.matrixV().rightCols(a.cols() - rank);
  for (Eigen::Index j = 0; j < out.basis.cols(); ++j) fix_phase(out.basis.col(j));
  return out;
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace gconv
