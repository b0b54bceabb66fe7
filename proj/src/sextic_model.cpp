#include "genus5/sextic_model.hpp"

#include <numeric>
#include <stdexcept>

#include "genus5/flatfield.hpp"
#include "genus5/linalg.hpp"

namespace genus5 {

QuadricParts decompose(const FieldTower& tw, const QuinaryQuadric& phi) {
  if (!phi.qc[0][0].is_zero() || !phi.qc[4][4].is_zero()) throw NotVanishingAtPQ{};
  const int k = phi.k;
  QuadricParts p;
  p.a = phi.qc[0][4];
  p.f = tf_zero(k, 1);
  p.g = tf_zero(k, 1);
  p.h = tf_zero(k, 2);
  // x1, x2, x3 become the ternary variables x, y, z.
  auto unit = [](int v) {
    Mono3 m{0, 0, 0};
    m[static_cast<size_t>(v)] = 1;
    return m;
  };
  for (int i = 1; i <= 3; ++i) {
    tf_set(tw, p.f, unit(i - 1), phi.qc[0][i]);
    tf_set(tw, p.g, unit(i - 1), phi.qc[i][4]);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 3; ++j) {
      Mono3 m{0, 0, 0};
      m[static_cast<size_t>(i - 1)] += 1;
      m[static_cast<size_t>(j - 1)] += 1;
      tf_set(tw, p.h, m, phi.qc[i][j]);
    }
  return p;
}

namespace {

TernaryForm det2(const FieldTower& tw, const std::array<std::array<TernaryForm, 3>, 3>& m, int r1,
                 int r2, int c1, int c2) {
  return tf_sub(tw, tf_mul(tw, m[r1][c1], m[r2][c2]), tf_mul(tw, m[r1][c2], m[r2][c1]));
}

void check_degree(const TernaryForm& f, int d, const char* what) {
  if (!f.is_zero() && f.d != d) throw std::logic_error(std::string("degree bookkeeping failed for ") + what);
}

}  // namespace

SexticParts build_sextic_parts(const FieldTower& tw, const QuadricTriple& T) {
  const int k = T.field_degree();
  std::array<QuadricParts, 3> P;
  for (int i = 0; i < 3; ++i) P[i] = decompose(tw, T.phi[i]);

  // A has rows (a1,a2,a3), (f1,f2,f3), (g1,g2,g3); entries are forms of
  // degrees 0, 1, 1 so every 3x3 expansion term is a quadric.
  std::array<std::array<TernaryForm, 3>, 3> A;
  for (int i = 0; i < 3; ++i) {
    TernaryForm ai = tf_zero(k, 0);
    if (!P[i].a.is_zero()) tf_set(tw, ai, Mono3{0, 0, 0}, P[i].a);
    A[0][i] = ai;
    A[1][i] = P[i].f;
    A[2][i] = P[i].g;
  }

  SexticParts out;
  out.det_a = tf_zero(k, 2);
  for (int j = 0; j < 3; ++j) {
    int c1 = (j + 1) % 3, c2 = (j + 2) % 3;
    if (c1 > c2) std::swap(c1, c2);
    TernaryForm term = tf_mul(tw, A[0][j], det2(tw, A, 1, 2, c1, c2));
    out.det_a = (j % 2 == 0) ? tf_add(tw, out.det_a, term) : tf_sub(tw, out.det_a, term);
  }
  check_degree(out.det_a, 2, "det(A)");
  if (out.det_a.is_zero()) throw DegenerateDetA{};

  // adj[i][j] = (-1)^{i+j} * minor of A with row j and column i removed, so
  // that A * adj = det(A) * I without any division.
  std::array<std::array<TernaryForm, 3>, 3> adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r1 = (j + 1) % 3, r2 = (j + 2) % 3;
      if (r1 > r2) std::swap(r1, r2);
      int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
      if (c1 > c2) std::swap(c1, c2);
      TernaryForm minor = det2(tw, A, r1, r2, c1, c2);
      adj[i][j] = ((i + j) % 2 == 0) ? minor : tf_neg(tw, minor);
    }

  // (v1, v2, v3) = -(h1, h2, h3) * adj(A)
  std::array<TernaryForm, 3> v;
  for (int j = 0; j < 3; ++j) {
    TernaryForm s = tf_zero(k, j == 0 ? 4 : 3);
    for (int i = 0; i < 3; ++i) s = tf_add(tw, s, tf_mul(tw, P[i].h, adj[i][j]));
    v[j] = tf_neg(tw, s);
  }
  out.v1 = v[0];
  out.v2 = v[1];
  out.v3 = v[2];
  check_degree(out.v1, 4, "v1");
  check_degree(out.v2, 3, "v2");
  check_degree(out.v3, 3, "v3");

  out.sextic = tf_sub(tw, tf_mul(tw, out.det_a, out.v1), tf_mul(tw, out.v2, out.v3));
  check_degree(out.sextic, 6, "sextic");
  return out;
}

TernaryForm build_sextic(const FieldTower& tw, const QuadricTriple& T) {
  return build_sextic_parts(tw, T).sextic;
}

bool tf_proportional(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  int k = static_cast<int>(std::lcm(a.k, b.k));
  TernaryForm ae = tf_embed(tw, a, k), be = tf_embed(tw, b, k);
  if (ae.d != be.d || ae.t.size() != be.t.size()) return false;
  GFElem s = tw.div(be.t.begin()->second, ae.t.begin()->second);
  return tf_sub(tw, be, tf_scale(tw, ae, s)).is_zero();
}

bool shear_invariance_check(const FieldTower& tw, const QuadricTriple& T, const TernaryForm& phi,
                            const TernaryForm& psi) {
  if (!phi.is_zero() && phi.d != 1) throw std::invalid_argument("shear form must be linear");
  if (!psi.is_zero() && psi.d != 1) throw std::invalid_argument("shear form must be linear");
  int k = static_cast<int>(std::lcm(std::lcm(T.field_degree(), phi.k), psi.k));
  TernaryForm pe = tf_embed(tw, phi, k), qe = tf_embed(tw, psi, k);
  QuadricTriple base, sheared;
  for (int i = 0; i < 3; ++i) {
    base.phi[i] = qq_embed(tw, T.phi[i], k);
    sheared.phi[i] = qq_shear(tw, base.phi[i], pe, qe);
  }
  return tf_proportional(tw, build_sextic(tw, base), build_sextic(tw, sheared));
}

QuadricTriple triple_basis_change(const FieldTower& tw, const QuadricTriple& T,
                                  const std::array<std::array<GFElem, 3>, 3>& B) {
  int k = T.field_degree();
  for (const auto& row : B)
    for (const auto& e : row) k = static_cast<int>(std::lcm(k, static_cast<int>(e.deg)));
  QuadricTriple r;
  for (int j = 0; j < 3; ++j) {
    QuinaryQuadric s = qq_zero(k);
    for (int i = 0; i < 3; ++i)
      s = qq_add(tw, s, qq_scale(tw, qq_embed(tw, T.phi[i], k), tw.embed(B[i][j], k)));
    r.phi[j] = s;
  }
  return r;
}

QuadricTriple triple_swap04(const FieldTower& tw, const QuadricTriple& T) {
  (void)tw;
  auto swap_idx = [](int i) { return i == 0 ? 4 : i == 4 ? 0 : i; };
  QuadricTriple r;
  for (int n = 0; n < 3; ++n) {
    QuinaryQuadric s = qq_zero(T.phi[n].k);
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        int a = swap_idx(i), b = swap_idx(j);
        if (a > b) std::swap(a, b);
        s.qc[a][b] = T.phi[n].qc[i][j];
      }
    r.phi[n] = s;
  }
  return r;
}

QuadricTriple parse_triple(const FieldTower& tw, const std::array<std::string, 3>& s) {
  QuadricTriple T;
  for (int i = 0; i < 3; ++i) T.phi[i] = parse_quadric(tw, s[i]);
  return T;
}

namespace {

// Quadric compiled to flat-index terms for the P^4 sweeps.
struct FlatQuadric {
  std::vector<std::array<uint16_t, 3>> terms;  // (i, j, coeff index), i <= j
};

FlatQuadric compile_quadric(const FieldTower& tw, const QuinaryQuadric& q, int e) {
  FlatQuadric r;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j)
      if (!q.qc[i][j].is_zero())
        r.terms.push_back({static_cast<uint16_t>(i), static_cast<uint16_t>(j),
                           flat_pack(tw.embed(q.qc[i][j], e))});
  return r;
}

uint16_t flat_eval(const FlatField& ff, const FlatQuadric& q, const uint16_t* x) {
  uint16_t acc = 0;
  for (const auto& t : q.terms) acc = ff.add(acc, ff.mul(t[2], ff.mul(x[t[0]], x[t[1]])));
  return acc;
}

// Visit every point of P^4(GF(3^e)) with first nonzero coordinate 1.
template <class Visit>
void sweep_p4(const FlatField& ff, Visit&& visit) {
  uint16_t x[5];
  for (int lead = 0; lead < 5; ++lead) {
    for (int i = 0; i < lead; ++i) x[i] = 0;
    x[lead] = 1;
    const int free_from = lead + 1;
    for (int i = free_from; i < 5; ++i) x[i] = 0;
    for (;;) {
      visit(x);
      int pos = 4;
      while (pos >= free_from) {
        if (++x[pos] < ff.q) break;
        x[pos] = 0;
        --pos;
      }
      if (pos < free_from) break;
    }
  }
}

}  // namespace

long long p4_variety_count(const FieldTower& tw, const QuadricTriple& T, int e) {
  const FlatField& ff = flat_field(tw, e);
  std::array<FlatQuadric, 3> q;
  for (int i = 0; i < 3; ++i) q[i] = compile_quadric(tw, T.phi[i], e);
  long long n = 0;
  sweep_p4(ff, [&](const uint16_t* x) {
    if (flat_eval(ff, q[0], x) == 0 && flat_eval(ff, q[1], x) == 0 && flat_eval(ff, q[2], x) == 0)
      ++n;
  });
  return n;
}

std::vector<std::array<GFElem, 5>> p4_variety_points(const FieldTower& tw, const QuadricTriple& T,
                                                     int e) {
  const FlatField& ff = flat_field(tw, e);
  std::array<FlatQuadric, 3> q;
  for (int i = 0; i < 3; ++i) q[i] = compile_quadric(tw, T.phi[i], e);
  std::vector<std::array<GFElem, 5>> pts;
  sweep_p4(ff, [&](const uint16_t* x) {
    if (flat_eval(ff, q[0], x) || flat_eval(ff, q[1], x) || flat_eval(ff, q[2], x)) return;
    std::array<GFElem, 5> p;
    for (int i = 0; i < 5; ++i) p[i] = flat_unpack(e, x[i]);
    pts.push_back(p);
  });
  return pts;
}

bool p4_variety_smooth_through_degree(const FieldTower& tw, const QuadricTriple& T, int maxe) {
  for (int e = 1; e <= maxe; ++e) {
    QuadricTriple Te;
    for (int i = 0; i < 3; ++i) Te.phi[i] = qq_embed(tw, T.phi[i], e);
    for (const auto& p : p4_variety_points(tw, Te, e)) {
      Mat jac = mat_zero(e, 3, 5);
      for (int i = 0; i < 3; ++i) {
        auto grad = qq_gradient(tw, Te.phi[i], p);
        for (int j = 0; j < 5; ++j) jac.at(i, j) = grad[j];
      }
      if (mat_rank(tw, jac) < 3) return false;
    }
  }
  return true;
}

}  // namespace genus5
