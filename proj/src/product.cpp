#include "product.hpp"

namespace gconv {

const char* to_string(ProductMode mode) {
  switch (mode) {
    case ProductMode::Scalar: return "scalar";
    case ProductMode::Dot: return "dot";
    case ProductMode::MatVec: return "matvec";
    case ProductMode::Reverse: return "reverse";
  }
  return "?";
}

ProductMode product_mode_from_string(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "scalar") return ProductMode::Scalar;
  if (t == "dot") return ProductMode::Dot;
  if (t == "matvec") return ProductMode::MatVec;
  if (t == "reverse") return ProductMode::Reverse;
  throw ParseError("unknown product mode '" + s + "'");
}

std::pair<std::size_t, std::size_t> product_shape(ProductMode mode, std::size_t fr, std::size_t fc, std::size_t gr,
                                                  std::size_t gc) {
  auto bad = [&]() {
    return MismatchError(std::string("shapes ") + std::to_string(fr) + "x" + std::to_string(fc) + " and " +
                         std::to_string(gr) + "x" + std::to_string(gc) + " do not fit mode " + to_string(mode));
  };
  switch (mode) {
    case ProductMode::Scalar:
      if (fr != 1 || fc != 1 || gr != 1 || gc != 1) throw bad();
      return {1, 1};
    case ProductMode::Dot:
      if (fc != 1 || gc != 1 || fr != gr) throw bad();
      return {1, 1};
    case ProductMode::MatVec:
      if (fc != gr) throw bad();
      return {fr, gc};
    case ProductMode::Reverse:
      if (gc != fr) throw bad();
      return {gr, fc};
  }
  throw bad();
}

ProductMode default_mode(const SpaceFunction& f, const SpaceFunction& g) {
  return f.is_scalar() && g.is_scalar() ? ProductMode::Scalar : ProductMode::MatVec;
}

Mat apply_product(ProductMode mode, const Mat& fv, const Mat& gv) {
  switch (mode) {
    case ProductMode::Scalar:
    case ProductMode::MatVec: return fv * gv;
    case ProductMode::Dot: return fv.transpose() * gv;
    case ProductMode::Reverse: return gv * fv;
  }
  return {};
}

Mat block_product(ProductMode mode, const Mat& F, const Mat& G, Eigen::Index d, std::size_t fr, std::size_t fc,
                  std::size_t gr, std::size_t gc) {
  auto [rr, rc] = product_shape(mode, fr, fc, gr, gc);
  auto blk = [d](const Mat& m, std::size_t i, std::size_t j) {
    return m.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d);
  };
  if (mode == ProductMode::Scalar || mode == ProductMode::MatVec) return F * G;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(rr) * d, static_cast<Eigen::Index>(rc) * d);
  if (mode == ProductMode::Dot) {
    for (std::size_t c = 0; c < fr; ++c) out += blk(F, c, 0) * blk(G, c, 0);
    return out;
  }
  // Reverse: the scalar entries commute but the group elements keep f first.
  for (std::size_t i = 0; i < rr; ++i)
    for (std::size_t j = 0; j < rc; ++j)
      for (std::size_t c = 0; c < fr; ++c)
        out.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) +=
            blk(F, c, j) * blk(G, i, c);
  return out;
}

}  // namespace gconv
