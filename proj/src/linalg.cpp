#include "genus5/linalg.hpp"

#include <stdexcept>
#include <string>

namespace genus5 {

Mat mat_zero(int k, int rows, int cols) {
  Mat m;
  m.k = k;
  m.rows = rows;
  m.cols = cols;
  m.a.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols),
             GFElem{static_cast<uint8_t>(k), {}});
  return m;
}

std::vector<int> mat_rref(const FieldTower& tw, Mat& m) {
  const FieldCtx& c = tw.ctx(m.k);
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    GFElem s = c.inv(m.at(r, col));
    for (int j = col; j < m.cols; ++j) m.at(r, j) = c.mul(m.at(r, j), s);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, col).is_zero()) continue;
      GFElem f = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = c.sub(m.at(i, j), c.mul(f, m.at(r, j)));
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

int mat_rank(const FieldTower& tw, Mat m) {
  return static_cast<int>(mat_rref(tw, m).size());
}

std::vector<std::vector<GFElem>> mat_nullspace(const FieldTower& tw, const Mat& m_in) {
  Mat m = m_in;
  const FieldCtx& c = tw.ctx(m.k);
  std::vector<int> pivots = mat_rref(tw, m);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<std::vector<GFElem>> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    std::vector<GFElem> v(static_cast<size_t>(m.cols), c.zero());
    v[static_cast<size_t>(f)] = c.one();
    for (size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<size_t>(pivots[i])] = c.neg(m.at(static_cast<int>(i), f));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<GFElem>> mat_nullspace_gf3(const FieldTower& tw, const Mat& m) {
  auto basis = mat_nullspace(tw, m);
  std::vector<std::vector<GFElem>> out;
  for (size_t b = 0; b < basis.size(); ++b) {
    std::vector<GFElem> v;
    v.reserve(basis[b].size());
    for (size_t j = 0; j < basis[b].size(); ++j) {
      auto pr = tw.project(basis[b][j], 1);
      if (!pr)
        throw std::runtime_error(
            "solution space is not defined over GF(3): basis vector " + std::to_string(b) +
            ", column " + std::to_string(j) + " has entry " + tw.render(basis[b][j]) +
            " of degree " + std::to_string(tw.minimal_degree(basis[b][j])));
      v.push_back(*pr);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<GFElem> mat_apply(const FieldTower& tw, const Mat& m, const std::vector<GFElem>& v) {
  if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("mat_apply size mismatch");
  const FieldCtx& c = tw.ctx(m.k);
  std::vector<GFElem> out(static_cast<size_t>(m.rows), c.zero());
  for (int i = 0; i < m.rows; ++i) {
    GFElem acc = c.zero();
    for (int j = 0; j < m.cols; ++j) {
      const GFElem& e = m.at(i, j);
      if (e.is_zero() || v[static_cast<size_t>(j)].is_zero()) continue;
      acc = c.add(acc, c.mul(e, tw.embed(v[static_cast<size_t>(j)], m.k)));
    }
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

}  // namespace genus5
