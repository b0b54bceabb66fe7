#include "genus5/point_count.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "genus5/flatfield.hpp"
#include "genus5/unipoly.hpp"

namespace genus5 {

namespace {

void check_count_args(const FieldTower& tw, const TernaryForm& f, int e) {
  if (f.is_zero()) throw std::invalid_argument("cannot count points of the zero form");
  if (e < 1 || e > tw.max_degree()) throw std::invalid_argument("field degree out of range");
  if (e % f.k != 0)
    throw std::invalid_argument("the form is not defined over a subfield of the target field");
}

UniPoly infinity_restriction(const FieldTower& tw, const TernaryForm& f) {
  const FieldCtx& c = tw.ctx(f.k);
  ProjPoint base = make_point(tw, c.zero(), c.one(), c.zero());
  ProjPoint dir = make_point(tw, c.one(), c.zero(), c.zero());
  return tf_restrict_line(tw, f, base, dir, f.k);  // t -> F(t, 1, 0)
}

}  // namespace

// ---------------------------------------------------------------------------
// plane counts

long long count_plane_curve(const FieldTower& tw, const TernaryForm& f, int e,
                            int* line_fibers) {
  check_count_args(tw, f, e);
  const FlatField& ff = flat_field(tw, e);
  const long long q = ff.q;

  // F(x, y, 1) as y-coefficient polynomials in x, packed over GF(3^e)
  BivarPoly A = tf_dehomogenize(tw, f, 2);
  const int dy = bv_degree_y(A), dx = bv_degree_x(A);
  std::vector<FlatPoly> cpol(static_cast<size_t>(dy) + 1,
                             FlatPoly(static_cast<size_t>(dx) + 1, 0));
  for (const auto& [ij, v] : A.t)
    cpol[static_cast<size_t>(ij.second)][static_cast<size_t>(ij.first)] =
        flat_pack(tw.embed(v, e));
  for (auto& c : cpol) fp_trim(c);

  long long total = 0, lines = 0;
#pragma omp parallel for reduction(+ : total, lines) schedule(static)
  for (long long x0 = 0; x0 < q; ++x0) {
    FlatPoly fib(static_cast<size_t>(dy) + 1, 0);
    for (size_t j = 0; j < cpol.size(); ++j)
      fib[j] = fp_eval(ff, cpol[j], static_cast<uint16_t>(x0));
    fp_trim(fib);
    if (fib.empty()) {
      total += q;  // the whole vertical line x = x0 * z lies on the curve
      ++lines;
    } else if (fp_deg(fib) == 0) {
      // no root
    } else if (fp_deg(fib) == 1) {
      ++total;
    } else {
      total += fp_count_roots(ff, fib);
    }
  }

  // the line z = 0: points (t : 1 : 0), then (1 : 0 : 0)
  UniPoly inf = infinity_restriction(tw, f);
  if (inf.is_zero()) {
    total += q;
    ++lines;
  } else {
    FlatPoly fin(static_cast<size_t>(inf.degree()) + 1, 0);
    for (size_t i = 0; i < fin.size(); ++i) fin[i] = flat_pack(tw.embed(inf.c[i], e));
    fp_trim(fin);
    total += fp_count_roots(ff, fin);
  }
  if (tf_coeff(tw, f, Mono3{static_cast<uint8_t>(f.d), 0, 0}).is_zero()) ++total;  // F(1,0,0) = 0

  if (line_fibers) *line_fibers = static_cast<int>(lines);
  return total;
}

long long count_plane_curve_reference(const FieldTower& tw, const TernaryForm& f, int e,
                                      int* line_fibers) {
  check_count_args(tw, f, e);
  const long long q = tw.ctx(e).order() + 1;
  BivarPoly A = bv_embed(tw, tf_dehomogenize(tw, f, 2), e);

  long long total = 0;
  int lines = 0;
  for (long long i = 0; i < q; ++i) {
    GFElem x0 = flat_unpack(e, static_cast<uint16_t>(i));
    UniPoly fib = bv_eval_x(tw, A, x0);
    if (fib.is_zero()) {
      total += q;
      ++lines;
    } else {
      total += up_count_roots(tw, fib, e);
    }
  }

  UniPoly inf = infinity_restriction(tw, f);
  if (inf.is_zero()) {
    total += q;
    ++lines;
  } else {
    total += up_count_roots(tw, inf, e);
  }
  if (tf_coeff(tw, f, Mono3{static_cast<uint8_t>(f.d), 0, 0}).is_zero()) ++total;

  if (line_fibers) *line_fibers = lines;
  return total;
}

// ---------------------------------------------------------------------------
// smooth-model counts

long long count_smooth_model(const FieldTower& tw, const TernaryForm& f,
                             const SingularConfig& config, int e) {
  long long total = count_plane_curve(tw, f, e);
  for (const auto& cp : config.points) {
    if (e % cp.p.degree() != 0) continue;  // no points above cp over this field
    BivarPoly g = taylor_at(tw, f, cp.p);
    int m = bv_min_total_degree(g);
    total += tangent_adjustment(tw, bv_graded_piece(g, m), e);
  }
  return total;
}

CountVector count_vector(const FieldTower& tw, const TernaryForm& f,
                         const SingularConfig& config) {
  CountVector out;
  for (int m = 1; m <= 5; ++m)
    out.n[static_cast<size_t>(m - 1)] = count_smooth_model(tw, f, config, 2 * m);
  return out;
}

// ---------------------------------------------------------------------------
// geometric irreducibility

namespace {

// All GF(3)-irreducible forms of degree <= 3, bucketed by the set of
// P^2(F_3) points they vanish on (a divisor's zero set is contained in the
// dividend's, so only forms whose mask is a submask of the candidate's can
// divide it).  A reducible sextic over GF(3) always has an irreducible factor
// of degree <= 3, and a degree <= 3 form without a linear factor over GF(3)
// is GF(3)-irreducible.
struct DivisorTable {
  std::vector<ProjPoint> pts;                   // the 13 points of P^2(F_3)
  std::vector<std::vector<TernaryForm>> bucket;  // 2^13 masks

  explicit DivisorTable(const FieldTower& tw) : bucket(1u << 13) {
    const FieldCtx& c = tw.ctx(1);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) pts.push_back(make_point(tw, c.one(), c.from_int(i), c.from_int(j)));
    for (int j = 0; j < 3; ++j)
      pts.push_back(make_point(tw, c.zero(), c.one(), c.from_int(j)));
    pts.push_back(make_point(tw, c.zero(), c.zero(), c.one()));

    std::vector<TernaryForm> lines;
    for (int d = 1; d <= 3; ++d) {
      const int n = (d + 1) * (d + 2) / 2;
      long long count = 1;
      for (int i = 0; i < n; ++i) count *= 3;
      std::vector<Mono3> monos;
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
          monos.push_back(Mono3{static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                                static_cast<uint8_t>(d - a - b)});
      for (long long idx = 1; idx < count; ++idx) {
        long long rem = idx;
        std::vector<int> digits(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
          digits[static_cast<size_t>(i)] = static_cast<int>(rem % 3);
          rem /= 3;
        }
        int lead = n - 1;
        while (digits[static_cast<size_t>(lead)] == 0) --lead;
        if (digits[static_cast<size_t>(lead)] != 1) continue;  // normalize the leading coefficient
        TernaryForm g = tf_zero(1, d);
        for (int i = 0; i < n; ++i)
          if (digits[static_cast<size_t>(i)] != 0)
            tf_set(tw, g, monos[static_cast<size_t>(i)], c.from_int(digits[static_cast<size_t>(i)]));
        if (d > 1) {
          bool has_line = false;
          for (const TernaryForm& l : lines)
            if (form_divides(tw, l, g)) {
              has_line = true;
              break;
            }
          if (has_line) continue;
        }
        uint32_t mask = 0;
        for (size_t i = 0; i < pts.size(); ++i)
          if (tf_eval(tw, g, pts[i].x[0], pts[i].x[1], pts[i].x[2]).is_zero())
            mask |= 1u << i;
        bucket[mask].push_back(g);
        if (d == 1) lines.push_back(g);
      }
    }
  }
};

}  // namespace

bool is_geometrically_irreducible(const FieldTower& tw, const TernaryForm& f) {
  if (f.is_zero() || f.k != 1 || f.d != 6)
    throw std::invalid_argument("irreducibility decision expects a nonzero sextic over GF(3)");
  static const DivisorTable table(tw);

  uint32_t mask = 0;
  for (size_t i = 0; i < table.pts.size(); ++i)
    if (tf_eval(tw, f, table.pts[i].x[0], table.pts[i].x[1], table.pts[i].x[2]).is_zero())
      mask |= 1u << i;

  // enumerate the submasks of mask, largest first
  for (uint32_t s = mask;; s = (s - 1) & mask) {
    for (const TernaryForm& g : table.bucket[s])
      if (form_divides(tw, g, f)) return false;
    if (s == 0) break;
  }

  // f is irreducible over GF(3).  If it were geometrically reducible its
  // components would be conjugate of degree 3, 2 or 1, all rational over
  // F_3^6, and their union would have at least 2(730 - 54) - 9 = 1343 points
  // there; an irreducible sextic (arithmetic genus 10) has at most
  // 730 + 2*10*27 = 1270.
  return count_plane_curve(tw, f, 6) <= 1270;
}

// ---------------------------------------------------------------------------
// Weil polynomials

namespace {

// exact synthetic division in Z[t]; returns true and replaces a by the
// quotient when b (monic) divides it exactly
bool int_divide_exact(std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.size() < b.size()) return false;
  std::vector<long long> r = a;
  std::vector<long long> qout(a.size() - b.size() + 1, 0);
  for (size_t i = qout.size(); i-- > 0;) {
    long long q = r[i + b.size() - 1];
    qout[i] = q;
    if (q == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] -= q * b[j];
  }
  for (long long v : r)
    if (v != 0) return false;
  a = std::move(qout);
  return true;
}

std::vector<long long> int_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

struct WeilFactor {
  std::vector<long long> poly;  // ascending coefficients, monic
  int mult = 0;
};

// Deflate w by every factor shape whose roots provably have modulus 3:
// t -+ 3, quadratics t^2 + a t + 9 with |a| <= 6, and quartics
// t^4 + a t^3 + b t^2 + 9a t + 81 whose trace polynomial u^2 + a u + (b - 18)
// has both roots real in [-6, 6].  Whatever remains is returned last with
// mult 0; its roots (all simple, or far from the circle) go to the numeric
// check.
std::vector<WeilFactor> weil_deflate(const WeilPoly& w, std::vector<long long>* remainder) {
  std::vector<long long> rest(w.c.begin(), w.c.end());
  std::vector<WeilFactor> out;
  auto strip = [&](std::vector<long long> g) {
    int m = 0;
    while (rest.size() > g.size() - 1 && int_divide_exact(rest, g)) ++m;
    if (m > 0) out.push_back({std::move(g), m});
  };

  strip({-3, 1});
  strip({3, 1});
  for (long long a = -6; a <= 6; ++a) strip({9, a, 1});
  for (long long a = -12; a <= 12; ++a)
    for (long long b = -54; b <= 54; ++b) {
      long long disc = a * a - 4 * (b - 18);
      if (disc < 0) continue;
      // both roots of u^2 + a u + (b - 18) in [-6, 6]
      long long at6 = 36 + 6 * a + (b - 18), atm6 = 36 - 6 * a + (b - 18);
      if (at6 < 0 || atm6 < 0 || a > 12 || a < -12) continue;
      strip({81, 9 * a, b, a, 1});
    }
  *remainder = rest;
  return out;
}

std::string render_int_poly(const std::vector<long long>& c) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = c.size(); i-- > 0;) {
    long long v = c[i];
    if (v == 0) continue;
    if (first) {
      if (v < 0) os << "-";
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    long long av = v < 0 ? -v : v;
    if (av != 1 || i == 0) os << av;
    if (i >= 1) {
      if (av != 1) os << "*";
      os << "t";
      if (i >= 2) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

WeilPoly weil_from_counts(const CountVector& counts) {
  // power sums of the Frobenius eigenvalues over F_9
  std::array<long long, 6> s{};
  long long qm = 1;
  for (int m = 1; m <= 5; ++m) {
    qm *= 9;
    s[static_cast<size_t>(m)] = qm + 1 - counts.n[static_cast<size_t>(m - 1)];
    long long bound = 10;
    for (int i = 0; i < m; ++i) bound *= 3;
    if (s[static_cast<size_t>(m)] > bound || s[static_cast<size_t>(m)] < -bound)
      throw std::invalid_argument("point counts violate the genus-5 Weil bound");
  }

  // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
  std::array<long long, 6> e{};
  e[0] = 1;
  for (int k = 1; k <= 5; ++k) {
    long long acc = 0;
    for (int i = 1; i <= k; ++i) {
      long long term = e[static_cast<size_t>(k - i)] * s[static_cast<size_t>(i)];
      acc += (i % 2 == 1) ? term : -term;
    }
    if (acc % k != 0)
      throw std::invalid_argument("point counts do not come from an integral Weil polynomial");
    e[static_cast<size_t>(k)] = acc / k;
  }

  WeilPoly w;
  w.c[10] = 1;
  for (int k = 1; k <= 5; ++k)
    w.c[static_cast<size_t>(10 - k)] = (k % 2 == 0) ? e[static_cast<size_t>(k)] : -e[static_cast<size_t>(k)];
  long long scale = 1;
  for (int i = 4; i >= 0; --i) {
    scale *= 9;  // 9^(5-i)
    w.c[static_cast<size_t>(i)] = scale * w.c[static_cast<size_t>(10 - i)];
  }

  // every root must have modulus 3; the deflated part is certified exactly,
  // the rest numerically
  std::vector<long long> rest;
  weil_deflate(w, &rest);
  if (rest.size() > 1) {
    const int n = static_cast<int>(rest.size()) - 1;
    std::vector<std::complex<double>> z(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      z[static_cast<size_t>(j)] = std::polar(2.0 + 2.0 * (j + 1) / n, 0.7 + 6.283185307179586 * j / n);
    auto eval = [&](std::complex<double> t) {
      std::complex<double> acc = 0.0;
      for (size_t i = rest.size(); i-- > 0;) acc = acc * t + static_cast<double>(rest[i]);
      return acc;
    };
    for (int it = 0; it < 400; ++it) {
      double moved = 0.0;
      for (int j = 0; j < n; ++j) {
        std::complex<double> d = eval(z[static_cast<size_t>(j)]);
        for (int l = 0; l < n; ++l)
          if (l != j) d /= z[static_cast<size_t>(j)] - z[static_cast<size_t>(l)];
        z[static_cast<size_t>(j)] -= d;
        moved = std::max(moved, std::abs(d));
      }
      if (moved < 1e-13) break;
    }
    for (const auto& root : z)
      if (std::abs(std::abs(root) - 3.0) > 1e-6)
        throw std::invalid_argument("point counts give a root off the Weil circle |t| = 3");
  }
  return w;
}

WeilPoly weil_polynomial(const FieldTower& tw, const TernaryForm& f,
                         const SingularConfig& config) {
  return weil_from_counts(count_vector(tw, f, config));
}

std::string render_weil(const WeilPoly& w) {
  return render_int_poly(std::vector<long long>(w.c.begin(), w.c.end()));
}

std::string render_weil_factored(const WeilPoly& w) {
  std::vector<long long> rest;
  std::vector<WeilFactor> factors = weil_deflate(w, &rest);

  // defense: the factorization must expand back to w
  std::vector<long long> check = rest;
  for (const auto& fac : factors)
    for (int i = 0; i < fac.mult; ++i) check = int_mul(check, fac.poly);
  if (!std::equal(check.begin(), check.end(), w.c.begin(), w.c.end()))
    throw std::logic_error("Weil factorization failed to expand back");

  if (factors.empty()) return render_weil(w);
  std::ostringstream os;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " ";
    os << "(" << render_int_poly(factors[i].poly) << ")";
    if (factors[i].mult > 1) os << "^" << factors[i].mult;
  }
  if (rest.size() > 1) os << " (" << render_int_poly(rest) << ")";
  return os.str();
}

}  // namespace genus5
