#pragma once

// Maurer-Cartan calculus over Artinian bases: residual, gauge action,
// Baker-Campbell-Hausdorff product, order-by-order solving and gauge
// equivalence search.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dglinf/artin.hpp"
#include "dglinf/cohomology.hpp"
#include "dglinf/dgla.hpp"

namespace dglinf {

/// [x, y] extended A-bilinearly (A is even, so no extra signs) and truncated in A.
inline MVector bracket(const Dgla& L, const ArtinAlgebra& A, const MVector& x, const MVector& y) {
  MVector out;
  for (const auto& [mx, vx] : x)
    for (const auto& [my, vy] : y) {
      auto m = A.multiply(mx, my);
      if (!m) continue;
      add_scaled(out, *m, L.bracket(vx, vy), 1);
    }
  return out;
}

inline MVector differential(const Dgla& L, const MVector& x) { return apply(L.d(), x); }

/// dx + ½[x,x] for x ∈ L¹ ⊗ m_A.
inline MVector mc_residual(const MVector& x, const Dgla& L, const ArtinAlgebra& A) {
  require_in_max_ideal(x, L.space(), A, 1, "mc_residual");
  MVector r = differential(L, x);
  add_scaled(r, bracket(L, A, x, x), Rational(1, 2));
  return r;
}

inline bool is_mc(const MVector& x, const Dgla& L, const ArtinAlgebra& A) {
  return mc_residual(x, L, A).empty();
}

/// e^a * x = x + Σ_{n≥0} ad_a^n/(n+1)! ([a,x] - da); finite since a ∈ m_A.
inline MVector gauge_act(const MVector& a, const MVector& x, const Dgla& L, const ArtinAlgebra& A) {
  require_in_max_ideal(a, L.space(), A, 0, "gauge_act (gauge parameter)");
  require_in_max_ideal(x, L.space(), A, 1, "gauge_act (MC element)");
  MVector term = bracket(L, A, a, x);
  add_scaled(term, differential(L, a), -1);
  MVector out = x;
  for (int n = 0; !term.empty(); ++n) {
    add_scaled(out, term, 1);
    MVector next = bracket(L, A, a, term);
    term.clear();
    add_scaled(term, next, Rational(1, n + 2));
  }
  return out;
}

namespace detail {

/// Word in the free associative algebra on two letters {0 = a, 1 = b}.
using FreeWord = std::vector<int>;
using FreeElement = std::map<FreeWord, Rational>;

inline FreeElement free_mul(const FreeElement& x, const FreeElement& y, std::size_t max_len) {
  FreeElement out;
  for (const auto& [u, cu] : x)
    for (const auto& [v, cv] : y) {
      if (u.size() + v.size() > max_len) continue;
      FreeWord w = u;
      w.insert(w.end(), v.begin(), v.end());
      out[w] += cu * cv;
    }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  return out;
}

inline void free_axpy(FreeElement& dst, const FreeElement& src, const Rational& c) {
  for (const auto& [w, v] : src) dst[w] += v * c;
  std::erase_if(dst, [](const auto& t) { return t.second == 0; });
}

/// log(exp(a) exp(b)) in the free algebra truncated above word length max_len.
inline FreeElement bch_series(std::size_t max_len) {
  auto exp_of = [&](int letter) {
    FreeElement out{{FreeWord{}, Rational(1)}};
    FreeWord w;
    Rational fact = 1;
    for (std::size_t k = 1; k <= max_len; ++k) {
      w.push_back(letter);
      fact *= k;
      out[w] = 1 / fact;
    }
    return out;
  };
  FreeElement prod = free_mul(exp_of(0), exp_of(1), max_len);
  FreeElement y = prod;
  y.erase(FreeWord{});  // exp(a)exp(b) - 1
  FreeElement log;
  FreeElement power = y;
  for (std::size_t k = 1; k <= max_len && !power.empty(); ++k) {
    free_axpy(log, power, Rational(k % 2 == 1 ? 1 : -1, static_cast<long>(k)));
    power = free_mul(power, y, max_len);
  }
  return log;
}

}  // namespace detail

/// a•b with e^{a•b} = e^a e^b, for a, b ∈ L⁰ ⊗ m_A. The BCH series is
/// computed in the free associative algebra and converted to iterated
/// brackets with the Dynkin-Specht-Wever projection; terms of bracket length
/// ≥ nilpotency order vanish and are omitted.
inline MVector bch_product(const MVector& a, const MVector& b, const Dgla& L, const ArtinAlgebra& A) {
  require_in_max_ideal(a, L.space(), A, 0, "bch_product");
  require_in_max_ideal(b, L.space(), A, 0, "bch_product");
  const int N = A.nilpotency_order();
  if (N <= 1) return {};
  const auto series = detail::bch_series(static_cast<std::size_t>(N - 1));
  MVector out;
  for (const auto& [w, c] : series) {
    // right-normed bracket [w1,[w2,[...,wm]]]
    MVector acc = (w.back() == 0) ? a : b;
    for (std::size_t i = w.size() - 1; i-- > 0 && !acc.empty();) acc = bracket(L, A, w[i] == 0 ? a : b, acc);
    add_scaled(out, acc, c / static_cast<long>(w.size()));
  }
  return out;
}

struct ObstructionRecord {
  int order = 0;
  Monomial monomial;
  std::vector<Rational> class_coordinates;  // in the stored H² representative basis
  Vector cocycle;                           // the degree-2 cocycle whose class is obstructed
};

struct McDirection {
  /// First-order data: coefficient of each variable t_i (an H¹ cocycle).
  std::vector<Vector> first_order;
  /// Highest order reached with MC holding modulo m^{order+1}.
  int reached_order = 0;
  std::optional<ObstructionRecord> obstruction;
  /// Full MC solution when the direction lifted to every order.
  std::optional<MVector> solution;
  /// Partial lift up to the reached order (always MC modulo m^{reached+1}).
  MVector partial;
};

struct McSolveResult {
  DegreeCohomology tangent;
  DegreeCohomology obstruction_space;
  std::vector<McDirection> directions;

  std::vector<ObstructionRecord> obstructions() const {
    std::vector<ObstructionRecord> out;
    for (const auto& d : directions)
      if (d.obstruction) out.push_back(*d.obstruction);
    return out;
  }
  std::vector<MVector> solutions() const {
    std::vector<MVector> out;
    for (const auto& d : directions)
      if (d.solution) out.push_back(*d.solution);
    return out;
  }
};

/// Obstruction class of extending the partial lift x (MC modulo m^order) one
/// more order: the classes in H²(L) of the order-`order` coefficients of the
/// residual. Coefficients are returned per monomial.
inline std::map<Monomial, std::vector<Rational>> obstruction_classes(const MVector& x, int order, const Dgla& L,
                                                                     const ArtinAlgebra& A,
                                                                     const CohomologySummary& H) {
  MVector r = mc_residual(x, L, A);
  if (auto lo = lowest_order(r); lo && *lo < order) {
    throw InvalidInput("obstruction_classes: element is not MC below the requested order");
  }
  std::map<Monomial, std::vector<Rational>> out;
  for (const auto& [m, v] : degree_part(r, order)) out.emplace(m, H.class_of(2, v));
  return out;
}

/// Lifts first-order data order by order, stopping at the first order where
/// some residual coefficient has a nonzero class in H².
inline McDirection lift_direction(std::vector<Vector> first_order, const Dgla& L, const ArtinAlgebra& A,
                                  const CohomologySummary& H) {
  McDirection dir;
  dir.first_order = first_order;
  MVector x;
  for (std::size_t i = 0; i < A.num_variables(); ++i) {
    if (i >= first_order.size()) break;
    Monomial t = A.variable(i);
    if (!A.survives(t)) continue;
    if (!H.is_cocycle(first_order[i]) || !L.space().is_homogeneous(first_order[i], 1)) {
      throw InvalidInput("mc_solve: first-order data must be degree-1 cocycles");
    }
    add_scaled(x, t, first_order[i], 1);
  }
  dir.reached_order = 1;
  const int N = A.nilpotency_order();
  for (int k = 2; k < N; ++k) {
    MVector rk = degree_part(mc_residual(x, L, A), k);
    MVector lift;
    for (const auto& [m, v] : rk) {
      auto coords = H.class_of(2, v);
      bool zero = true;
      for (const auto& c : coords) zero = zero && c == 0;
      if (!zero) {
        dir.obstruction = ObstructionRecord{k, m, coords, v};
        dir.partial = x;
        return dir;
      }
      auto w = H.preimage(2, scaled(v, -1));
      add_scaled(lift, m, *w, 1);
    }
    add_scaled(x, lift, 1);
    dir.reached_order = k;
  }
  dir.partial = x;
  dir.solution = x;
  return dir;
}

/// Solves MC over A along the given degree-1 cocycles: direction j starts at
/// x₁ = Σ_i t_i ⊗ h_j. Obstructed directions report their class in H².
inline McSolveResult mc_solve(const Dgla& L, const ArtinAlgebra& A, const std::vector<Vector>& tangent_vectors) {
  const auto H = L.cohomology();
  McSolveResult res;
  res.tangent = H.at(1);
  res.obstruction_space = H.at(2);
  if (A.max_ideal_dim() == 0) return res;
  for (const auto& h : tangent_vectors) {
    std::vector<Vector> fo(A.num_variables(), h);
    res.directions.push_back(lift_direction(std::move(fo), L, A, H));
  }
  return res;
}

/// Same, along every H¹ representative.
inline McSolveResult mc_solve(const Dgla& L, const ArtinAlgebra& A) {
  return mc_solve(L, A, L.cohomology().at(1).representatives);
}

struct GaugeSearch {
  bool equivalent = false;
  MVector witness;            // a with e^a * x = y, when equivalent
  int failed_order = 0;       // first order with no solution, otherwise 0
  Monomial failed_monomial;
  Vector discrepancy;         // (y - e^a*x) coefficient that is not exact
};

/// Order-by-order search for a ∈ L⁰ ⊗ m_A with e^a * x = y. At order k the
/// correction a_k solves d a_k = -(y - e^{a_{<k}} * x)_k. The greedy search
/// fixes lower-order choices, so a failure certificate is exact when
/// Z⁰(L) = 0 and at the first order in general.
inline GaugeSearch gauge_equivalent(const MVector& x, const MVector& y, const Dgla& L, const ArtinAlgebra& A) {
  if (!is_mc(x, L, A) || !is_mc(y, L, A)) throw InvalidInput("gauge_equivalent: inputs must be MC elements");
  const auto H = L.cohomology();
  GaugeSearch out;
  MVector a;
  const int N = A.nilpotency_order();
  for (int k = 1; k < N; ++k) {
    MVector diff = degree_part(y - gauge_act(a, x, L, A), k);
    for (const auto& [m, v] : diff) {
      auto w = H.preimage(1, scaled(v, -1));
      if (!w) {
        out.failed_order = k;
        out.failed_monomial = m;
        out.discrepancy = v;
        return out;
      }
      add_scaled(a, m, *w, 1);
    }
  }
  if (gauge_act(a, x, L, A) != y) throw Error("gauge_equivalent: internal inconsistency");
  out.equivalent = true;
  out.witness = a;
  return out;
}

}  // namespace dglinf
