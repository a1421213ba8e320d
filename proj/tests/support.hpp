#pragma once

// Fixtures, seeded generators and independent oracles shared by the test
// binaries and the acceptance runner.

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dglinf/dglinf.hpp"

namespace dglinf::testing {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational rand_q(Rng& rng, int lo, int hi, int max_den = 1) {
  Rational q(rand_int(rng, lo, hi), rand_int(rng, 1, max_den));
  q.canonicalize();
  return q;
}

inline bool coin(Rng& rng, int percent = 50) { return rand_int(rng, 1, 100) <= percent; }

inline Vector random_vector(Rng& rng, const std::vector<std::size_t>& support, int lo = -3, int hi = 3) {
  Vector v;
  for (auto i : support) add_term(v, i, rand_q(rng, lo, hi, 2));
  return v;
}

inline QMatrix random_matrix(Rng& rng, std::size_t r, int lo = -3, int hi = 3) {
  QMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = rand_q(rng, lo, hi);
  return m;
}

inline QMatrix matrix(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// ---- fixed algebras --------------------------------------------------------

inline GradedMap map_from(const GradedSpace& s, int degree, const std::vector<std::tuple<std::string, std::string, long>>& entries) {
  std::vector<Vector> cols(s.dim());
  for (const auto& [from, to, c] : entries) add_term(cols[s.index(from)], s.index(to), Rational(c));
  return GradedMap(s, s, degree, std::move(cols));
}

inline StructureConstants table_from(const GradedSpace& s,
                                     const std::vector<std::tuple<std::string, std::string, std::string, Rational>>& entries) {
  StructureConstants t(s.dim());
  for (const auto& [a, b, out, c] : entries) t.add(s.index(a), s.index(b), s.index(out), c);
  return t;
}

inline DglaData e1e2_data() {
  GradedSpace s({{"e1", 1}, {"e2", 2}});
  return DglaData{s, GradedMap::zero(s, 1), table_from(s, {{"e1", "e1", "e2", 1}})};
}

inline DglaData gl2_data() {
  GradedSpace s({{"E11", 0}, {"E12", 0}, {"E21", 0}, {"E22", 0}});
  StructureConstants br(4);
  auto E = [](std::size_t i, std::size_t j) { return 2 * i + j; };
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          if (j == k) br.add(E(i, j), E(k, l), E(i, l), 1);
          if (l == i) br.add(E(i, j), E(k, l), E(k, j), -1);
        }
  return DglaData{s, GradedMap::zero(s, 1), br};
}

inline DglaData heisenberg_data() {
  GradedSpace s({{"x", 0}, {"y", 0}, {"z", 0}});
  return DglaData{s, GradedMap::zero(s, 1), table_from(s, {{"x", "y", "z", 1}, {"y", "x", "z", -1}})};
}

// x in degree 0 acting on y, z in degree 1 with dx = y.
inline DglaData cone_data() {
  GradedSpace s({{"x", 0}, {"y", 1}, {"z", 1}});
  return DglaData{s, map_from(s, 1, {{"x", "y", 1}}), StructureConstants(3)};
}

// sl2 acting on its 2-dimensional representation in degree 1.
inline DglaData sl2_rep_data() {
  GradedSpace s({{"h", 0}, {"e", 0}, {"f", 0}, {"p", 1}, {"q", 1}});
  return DglaData{s, GradedMap::zero(s, 1),
                  table_from(s, {{"h", "e", "e", 2},
                                 {"e", "h", "e", -2},
                                 {"h", "f", "f", -2},
                                 {"f", "h", "f", 2},
                                 {"e", "f", "h", 1},
                                 {"f", "e", "h", -1},
                                 {"h", "p", "p", 1},
                                 {"p", "h", "p", -1},
                                 {"h", "q", "q", -1},
                                 {"q", "h", "q", 1},
                                 {"e", "q", "p", 1},
                                 {"q", "e", "p", -1},
                                 {"f", "p", "q", 1},
                                 {"p", "f", "q", -1}})};
}

inline Cdga omega_base() {
  GradedSpace s({{"1", 0}, {"w", 1}});
  return Cdga(CdgaData{s, GradedMap::zero(s, 1), table_from(s, {{"1", "1", "1", 1}, {"1", "w", "w", 1}, {"w", "1", "w", 1}})});
}

inline Cdga torus_base() {
  GradedSpace s({{"1", 0}, {"u", 1}, {"v", 1}, {"uv", 2}});
  return Cdga(CdgaData{s, GradedMap::zero(s, 1),
                       table_from(s, {{"1", "1", "1", 1},
                                      {"1", "u", "u", 1},
                                      {"u", "1", "u", 1},
                                      {"1", "v", "v", 1},
                                      {"v", "1", "v", 1},
                                      {"1", "uv", "uv", 1},
                                      {"uv", "1", "uv", 1},
                                      {"u", "v", "uv", 1},
                                      {"v", "u", "uv", -1}})});
}

// 1, x (deg 1), y (deg 2) with dx = y and all products of x, y zero.
inline Cdga acyclic_base() {
  GradedSpace s({{"1", 0}, {"x", 1}, {"y", 2}});
  return Cdga(CdgaData{s, map_from(s, 1, {{"x", "y", 1}}),
                       table_from(s, {{"1", "1", "1", 1}, {"1", "x", "x", 1}, {"x", "1", "x", 1}, {"1", "y", "y", 1}, {"y", "1", "y", 1}})});
}

// Q[s]/(s^3) with s in degree 2.
inline Cdga truncated_poly_base() {
  GradedSpace s({{"1", 0}, {"s", 2}, {"s2", 4}});
  return Cdga(CdgaData{s, GradedMap::zero(s, 1),
                       table_from(s, {{"1", "1", "1", 1},
                                      {"1", "s", "s", 1},
                                      {"s", "1", "s", 1},
                                      {"1", "s2", "s2", 1},
                                      {"s2", "1", "s2", 1},
                                      {"s", "s", "s2", 1}})});
}

// Λ(x, y, w) with x, y, w in degree 1 and dw = xy.
inline Cdga nilmanifold_base() {
  GradedSpace s({{"1", 0}, {"x", 1}, {"y", 1}, {"w", 1}, {"xy", 2}, {"xw", 2}, {"yw", 2}, {"xyw", 3}});
  std::vector<std::vector<std::size_t>> words{{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  StructureConstants p(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      std::vector<std::size_t> w = words[i];
      w.insert(w.end(), words[j].begin(), words[j].end());
      int sign = 1;
      bool repeat = false;
      for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t b = a + 1; b < w.size(); ++b) {
          if (w[a] == w[b]) repeat = true;
          if (w[a] > w[b]) sign = -sign;
        }
      if (repeat) continue;
      std::sort(w.begin(), w.end());
      for (std::size_t k = 0; k < 8; ++k)
        if (words[k] == w) p.add(i, j, k, sign);
    }
  return Cdga(CdgaData{s, map_from(s, 1, {{"w", "xy", 1}}), p});
}

// Hom(V, V) for V = a (deg 0) -> b (deg 1), da = b.
inline DglaData hom_cone_data() {
  GradedSpace V({{"a", 0}, {"b", 1}});
  return hom_dgla(V, map_from(V, 1, {{"a", "b", 1}})).data();
}

inline GradedSpace line_space(std::size_t nl) {
  std::vector<GradedSpace::BasisElement> b;
  for (std::size_t l = 0; l < nl; ++l) b.push_back({"l" + std::to_string(l + 1), 0});
  return GradedSpace(std::move(b));
}

// ---- random generators -----------------------------------------------------

/// Degree-preserving unitriangular change of basis P (columns) and its inverse.
struct BasisChange {
  std::vector<Vector> forward;  // P e_i
  std::vector<Vector> inverse;  // P^{-1} e_i
};

inline BasisChange random_basis_change(Rng& rng, const GradedSpace& s) {
  const std::size_t n = s.dim();
  BasisChange out{std::vector<Vector>(n), std::vector<Vector>(n)};
  // Unitriangular with respect to index order, restricted to equal degrees.
  std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    u[i][i] = 1;
    for (std::size_t j = i + 1; j < n; ++j)
      if (s.degree(i) == s.degree(j) && coin(rng, 60)) u[i][j] = rand_q(rng, -2, 2, 2);
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t c = 0; c < n; ++c) {
    // back substitution for U x = e_c
    for (std::size_t i = n; i-- > 0;) {
      Rational v = (i == c) ? Rational(1) : Rational(0);
      for (std::size_t j = i + 1; j < n; ++j) v -= u[i][j] * inv[j][c];
      inv[i][c] = v;
    }
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      add_term(out.forward[c], r, u[r][c]);
      add_term(out.inverse[c], r, inv[r][c]);
    }
  return out;
}

inline Vector apply_columns(const std::vector<Vector>& cols, const Vector& v) {
  Vector out;
  for (const auto& [i, c] : v) add_scaled(out, cols[i], c);
  return out;
}

/// Transports d and the bracket along P: d' = P⁻¹ d P, [x,y]' = P⁻¹[Px, Py].
inline DglaData transport(const DglaData& L, const BasisChange& P) {
  const std::size_t n = L.space.dim();
  std::vector<Vector> dcols(n);
  for (std::size_t i = 0; i < n; ++i) dcols[i] = apply_columns(P.inverse, L.d.apply(P.forward[i]));
  StructureConstants br(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) br.set(i, j, apply_columns(P.inverse, L.bracket.apply(P.forward[i], P.forward[j])));
  return DglaData{L.space, GradedMap(L.space, L.space, 1, std::move(dcols)), std::move(br)};
}

inline CdgaData transport(const CdgaData& A, const BasisChange& P) {
  DglaData as_dgla{A.space, A.d, A.product};
  DglaData t = transport(as_dgla, P);
  return CdgaData{t.space, t.d, t.bracket};
}

/// Random cochain complex of total dimension ≤ max_dim in degrees 0..2:
/// a direct sum of acyclic pairs and single cohomology classes, then a
/// random change of basis.
inline std::pair<GradedSpace, GradedMap> random_complex(Rng& rng, std::size_t max_dim) {
  std::vector<GradedSpace::BasisElement> basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  while (basis.size() < max_dim) {
    const int deg = rand_int(rng, 0, 2);
    if (deg < 2 && basis.size() + 2 <= max_dim && coin(rng)) {
      pairs.emplace_back(basis.size(), basis.size() + 1);
      basis.push_back({"v" + std::to_string(basis.size()), deg});
      basis.push_back({"v" + std::to_string(basis.size()), deg + 1});
    } else {
      basis.push_back({"v" + std::to_string(basis.size()), deg});
    }
    if (coin(rng, 25)) break;
  }
  GradedSpace s(std::move(basis));
  std::vector<Vector> cols(s.dim());
  for (auto [a, b] : pairs) add_term(cols[a], b, rand_q(rng, 1, 3));
  DglaData tmp{s, GradedMap(s, s, 1, cols), StructureConstants(s.dim())};
  DglaData moved = transport(tmp, random_basis_change(rng, s));
  return {s, moved.d};
}

inline std::vector<DglaData> dgla_seeds() {
  return {e1e2_data(), gl2_data(), heisenberg_data(), cone_data(), sl2_rep_data()};
}

/// A random valid dgla of dimension ≤ 6: a seed, a Hom dgla of a small random
/// complex, or a tensor product with a small cdga, transported along a random
/// change of basis.
inline DglaData random_dgla(Rng& rng) {
  DglaData base;
  switch (rand_int(rng, 0, 3)) {
    case 0: {
      auto seeds = dgla_seeds();
      base = seeds[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(seeds.size()) - 1))];
      break;
    }
    case 1: {
      auto [V, d] = random_complex(rng, 2);
      base = hom_dgla(V, d).data();
      break;
    }
    case 2:
      base = tensor_cdga_dgla(omega_base(), Dgla(coin(rng) ? e1e2_data() : cone_data())).data();
      break;
    default:
      base = tensor_cdga_dgla(acyclic_base(), Dgla(e1e2_data())).data();
      break;
  }
  return transport(base, random_basis_change(rng, base.space));
}

/// Random graded-skew, degree-respecting bracket with d = 0 that violates
/// Jacobi (rejection sampled).
inline DglaData random_jacobi_mutant(Rng& rng) {
  for (;;) {
    const std::size_t n0 = static_cast<std::size_t>(rand_int(rng, 2, 3));
    const std::size_t n1 = static_cast<std::size_t>(rand_int(rng, 0, 2));
    std::vector<GradedSpace::BasisElement> basis;
    for (std::size_t i = 0; i < n0; ++i) basis.push_back({"a" + std::to_string(i), 0});
    for (std::size_t i = 0; i < n1; ++i) basis.push_back({"b" + std::to_string(i), 1});
    GradedSpace s(std::move(basis));
    const std::size_t n = s.dim();
    StructureConstants br(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const int deg = s.degree(i) + s.degree(j);
        const bool odd_pair = s.degree(i) % 2 != 0 && s.degree(j) % 2 != 0;
        if (i == j && !odd_pair) continue;
        Vector v;
        for (auto k : s.indices_of_degree(deg))
          if (coin(rng, 60)) add_term(v, k, rand_q(rng, -2, 2));
        br.set(i, j, v);
        if (i != j) br.set(j, i, scaled(v, odd_pair ? 1 : -1));
      }
    DglaData L{s, GradedMap::zero(s, 1), br};
    auto r = check_dgla(L);
    if (!r.ok && r.axiom == "jacobi") return L;
  }
}

inline std::vector<Cdga> cdga_pool() {
  return {Cdga::ground_field(), omega_base(), torus_base(), acyclic_base(), truncated_poly_base()};
}

inline Cdga random_cdga(Rng& rng, std::size_t max_dim = 4) {
  std::vector<Cdga> pool;
  for (auto& A : cdga_pool())
    if (A.dim() <= max_dim) pool.push_back(A);
  const Cdga& A = pool[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(pool.size()) - 1))];
  return Cdga(transport(A.data(), random_basis_change(rng, A.space())));
}

/// Commuting θ_l = p_l(X) for a random X with small integer entries; with
/// probability ~1/6 θ is zero and with ~1/6 X is strictly upper triangular.
inline HitchinPair random_pair(Rng& rng, std::size_t r, std::size_t nl) {
  const int mode = rand_int(rng, 0, 5);
  QMatrix X = random_matrix(rng, r, -2, 2);
  if (mode == 1)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j <= i; ++j) X(i, j) = 0;
  std::vector<QMatrix> theta;
  for (std::size_t l = 0; l < nl; ++l) {
    QMatrix t(r, r);
    if (mode != 0) {
      QMatrix p = detail::identity_matrix(r);
      for (int e = 0; e < 3; ++e) {
        t = t + detail::scaled(p, rand_q(rng, -2, 2));
        p = p * X;
      }
    }
    theta.push_back(t);
  }
  return HitchinPair(r, line_space(nl), std::move(theta));
}

/// MC element of gl_r ⊗ ΛL over Q[t]/(t^N): Σ_m t^m q_{m,l}(X) ⊗ l for θ built
/// from the same X, so (θ + x)∧(θ + x) = 0. Only valid when every θ_l is a
/// polynomial in X; the pair produced here is returned alongside.
struct CommutingFamily {
  HitchinPair pair;
  MVector x;
};

inline CommutingFamily random_commuting_family(Rng& rng, std::size_t r, std::size_t nl, const ArtinAlgebra& B) {
  QMatrix X = random_matrix(rng, r, -2, 2);
  auto poly = [&]() {
    QMatrix t(r, r), p = detail::identity_matrix(r);
    for (int e = 0; e < 3; ++e) {
      t = t + detail::scaled(p, rand_q(rng, -2, 2));
      p = p * X;
    }
    return t;
  };
  std::vector<QMatrix> theta;
  for (std::size_t l = 0; l < nl; ++l) theta.push_back(poly());
  HitchinPair P(r, line_space(nl), theta);
  GlExteriorBasis gb(r, nl);
  MVector x;
  Monomial tm = B.variable(0);
  for (Monomial m = tm; B.survives(m); ++m[0]) {
    for (std::size_t l = 0; l < nl; ++l) {
      QMatrix q = poly();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (q(i, j) != 0) add_scaled(x, m, basis_vector(gb.index(i, j, 1 + l)), q(i, j));
    }
  }
  return {P, x};
}

inline MVector random_m_element(Rng& rng, const GradedSpace& V, int degree, const ArtinAlgebra& A, int density = 40) {
  MVector x;
  for (const auto& m : A.monomials()) {
    if (total_degree(m) == 0) continue;
    for (auto i : V.indices_of_degree(degree))
      if (coin(rng, density)) add_scaled(x, m, basis_vector(i), rand_q(rng, -2, 2, 2));
  }
  return x;
}

/// Cohomology representatives followed by `extra` random integer combinations.
inline std::vector<Vector> tangent_with_combos(Rng& rng, const std::vector<Vector>& reps, std::size_t extra) {
  std::vector<Vector> out = reps;
  for (std::size_t s = 0; s < extra && !reps.empty(); ++s) {
    Vector v;
    for (const auto& rep : reps) add_scaled(v, rep, rand_int(rng, -3, 3));
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

// ---- polynomial matrix oracle ----------------------------------------------

/// Commutative polynomials in a fixed number of variables.
using Poly = std::map<std::vector<int>, Rational>;

inline void poly_add(Poly& p, const std::vector<int>& m, const Rational& c) {
  if (c == 0) return;
  Rational& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<int> m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      poly_add(out, m, ca * cb);
    }
  return out;
}

using PolyMatrix = std::vector<std::vector<Poly>>;

inline PolyMatrix poly_matmul(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t r = a.size();
  PolyMatrix out(r, std::vector<Poly>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < r; ++j)
        for (const auto& [m, c] : poly_mul(a[i][k], b[k][j])) poly_add(out[i][j], m, c);
  return out;
}

/// tr(θ + Σ_i t_i F_i)^k expanded in variables (l_1..l_nl, t_1..t_n), where
/// θ = Σ θ_l l and F_i = Σ F_{i,l} l.
inline Poly trace_power_expansion(const std::vector<QMatrix>& theta, const std::vector<std::vector<QMatrix>>& F, int k) {
  const std::size_t nl = theta.size(), n = F.size(), r = theta.empty() ? 0 : theta[0].rows();
  const std::size_t nv = nl + n;
  PolyMatrix S(r, std::vector<Poly>(r));
  for (std::size_t l = 0; l < nl; ++l) {
    std::vector<int> m(nv, 0);
    m[l] = 1;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) poly_add(S[i][j], m, theta[l](i, j));
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<int> mt = m;
      mt[nl + a] = 1;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) poly_add(S[i][j], mt, F[a][l](i, j));
    }
  }
  PolyMatrix P(r, std::vector<Poly>(r));
  for (std::size_t i = 0; i < r; ++i) P[i][i][std::vector<int>(nv, 0)] = 1;
  for (int e = 0; e < k; ++e) P = poly_matmul(P, S);
  Poly tr;
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& [m, c] : P[i][i]) poly_add(tr, m, c);
  return tr;
}

/// Coefficient of t_1⋯t_n in tr(θ + Σ t_i F_i)^k as a polynomial in l.
inline std::map<std::vector<int>, Rational> oracle_g_bar(const std::vector<QMatrix>& theta,
                                                         const std::vector<std::vector<QMatrix>>& F, int k) {
  const std::size_t nl = theta.size();
  std::map<std::vector<int>, Rational> out;
  for (const auto& [m, c] : trace_power_expansion(theta, F, k)) {
    bool pick = true;
    for (std::size_t a = 0; a < F.size(); ++a) pick = pick && m[nl + a] == 1;
    if (pick) out[std::vector<int>(m.begin(), m.begin() + static_cast<long>(nl))] = c;
  }
  return out;
}

/// Matrix parts F_l of the A-component `a` of a vector of M restricted to
/// exterior degree 1.
inline std::vector<QMatrix> matrix_parts(const Vector& v, const HitchinDgla& M, std::size_t a) {
  const std::size_t r = M.pair.rank(), nl = M.pair.dim_l();
  std::vector<QMatrix> parts(nl, QMatrix(r, r));
  for (const auto& [idx, c] : v) {
    auto e = M.decode(idx);
    const auto& s = M.gl.subset(e.subset);
    if (e.a != a || s.size() != 1) continue;
    parts[s[0]](e.i, e.j) += c;
  }
  return parts;
}

/// Full expansion oracle for g^k_n on arguments of M: multilinear in the A
/// components, with the CDGA product of the A-parts in argument order.
inline Vector oracle_g_coefficient(int k, const std::vector<Vector>& args, const HitchinDgla& M, const HitchinTarget& W) {
  const std::size_t na = M.base.dim();
  Vector out;
  std::vector<std::size_t> choice(args.size(), 0);
  for (;;) {
    Vector omega = basis_vector(choice[0]);
    for (std::size_t i = 1; i < args.size(); ++i) omega = M.base.multiply(omega, basis_vector(choice[i]));
    if (!omega.empty()) {
      std::vector<std::vector<QMatrix>> F;
      for (std::size_t i = 0; i < args.size(); ++i) F.push_back(matrix_parts(args[i], M, choice[i]));
      for (const auto& [md, c] : oracle_g_bar(M.pair.theta(), F, k))
        for (const auto& [b, cb] : omega) add_term(out, W.index(b, md), c * cb);
    }
    std::size_t pos = 0;
    while (pos < args.size() && ++choice[pos] == na) choice[pos++] = 0;
    if (pos == args.size()) break;
  }
  return out;
}

/// Vector of M with random coefficients on gl_r ⊗ L in the given A-degree
/// (degree of the result is a_degree + 1).
inline Vector random_higgs_vector(Rng& rng, const HitchinDgla& M, int a_degree, int density = 50) {
  Vector v;
  for (std::size_t idx = 0; idx < M.total.dim(); ++idx) {
    auto e = M.decode(idx);
    if (M.base.degree(e.a) != a_degree || M.gl.subset(e.subset).size() != 1) continue;
    if (coin(rng, density)) add_term(v, idx, rand_q(rng, -3, 3, 2));
  }
  return v;
}

}  // namespace dglinf::testing
