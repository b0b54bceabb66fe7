#pragma once

#include <vector>

#include "genus5/gf.hpp"

namespace genus5 {

// Dense row-major matrix over GF(3^k).
struct Mat {
  int k = 1;
  int rows = 0, cols = 0;
  std::vector<GFElem> a;

  GFElem& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
  const GFElem& at(int i, int j) const {
    return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
  }
};

Mat mat_zero(int k, int rows, int cols);

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<int> mat_rref(const FieldTower& tw, Mat& m);
int mat_rank(const FieldTower& tw, Mat m);

// Canonical nullspace basis: one vector per free column (ascending), with a 1
// in the free column and the negated reduced entries in the pivot columns.
// Deterministic; depends only on the row space of m.
std::vector<std::vector<GFElem>> mat_nullspace(const FieldTower& tw, const Mat& m);

// Nullspace of a matrix over GF(3^k) whose solution space is expected to be
// defined over GF(3) (the row set is Galois-stable).  The canonical basis of
// such a space automatically has prime-field entries; if an entry fails to
// descend, throws std::runtime_error naming the basis vector and column.
std::vector<std::vector<GFElem>> mat_nullspace_gf3(const FieldTower& tw, const Mat& m);

std::vector<GFElem> mat_apply(const FieldTower& tw, const Mat& m, const std::vector<GFElem>& v);

}  // namespace genus5
