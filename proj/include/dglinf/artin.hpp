#pragma once

// Local Artinian Q-algebras Q[t_1..t_m]/I for monomial ideals I, and vectors
// with coefficients in the maximal ideal.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dglinf/graded.hpp"

namespace dglinf {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline bool is_unit_monomial(const Monomial& m) {
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

class InvalidIdeal : public Error {
 public:
  using Error::Error;
};

class ArtinAlgebra {
 public:
  ArtinAlgebra() : ArtinAlgebra({}, std::set<Monomial>{Monomial{}}) {}

  /// Q[vars]/(all monomials of total degree >= bound).
  static ArtinAlgebra truncated(std::vector<std::string> variables, int degree_bound) {
    if (degree_bound < 1) throw InvalidIdeal("degree bound must be at least 1");
    std::set<Monomial> mons;
    Monomial cur(variables.size(), 0);
    enumerate(cur, 0, degree_bound - 1, mons);
    return ArtinAlgebra(std::move(variables), std::move(mons));
  }

  /// Explicit basis of surviving monomials; must be finite, contain 1 and be
  /// closed under division.
  static ArtinAlgebra from_monomials(std::vector<std::string> variables, std::set<Monomial> monomials) {
    return ArtinAlgebra(std::move(variables), std::move(monomials));
  }

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t num_variables() const { return variables_.size(); }
  const std::set<Monomial>& monomials() const { return monomials_; }
  bool survives(const Monomial& m) const { return monomials_.count(m) != 0; }

  std::size_t max_ideal_dim() const { return monomials_.size() - 1; }

  /// Smallest N with m_A^N = 0.
  int nilpotency_order() const {
    int top = 0;
    for (const auto& m : monomials_) top = std::max(top, total_degree(m));
    return top + 1;
  }

  Monomial unit() const { return Monomial(variables_.size(), 0); }

  Monomial variable(std::size_t i) const {
    Monomial m = unit();
    m.at(i) = 1;
    return m;
  }

  /// Product of two monomials, or nullopt if it lies in the ideal.
  std::optional<Monomial> multiply(const Monomial& a, const Monomial& b) const {
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    if (!survives(out)) return std::nullopt;
    return out;
  }

  /// Monomials of the given total degree, in set order.
  std::vector<Monomial> monomials_of_degree(int d) const {
    std::vector<Monomial> out;
    for (const auto& m : monomials_)
      if (total_degree(m) == d) out.push_back(m);
    return out;
  }

  bool operator==(const ArtinAlgebra&) const = default;

 private:
  ArtinAlgebra(std::vector<std::string> variables, std::set<Monomial> monomials)
      : variables_(std::move(variables)), monomials_(std::move(monomials)) {
    const Monomial one(variables_.size(), 0);
    if (!monomials_.count(one)) throw InvalidIdeal("monomial set must contain 1");
    for (const auto& m : monomials_) {
      if (m.size() != variables_.size()) throw InvalidIdeal("monomial arity does not match variables");
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0) throw InvalidIdeal("negative exponent");
        if (m[i] == 0) continue;
        Monomial q = m;
        --q[i];
        if (!monomials_.count(q)) throw InvalidIdeal("monomial set is not closed under division");
      }
    }
  }

  static void enumerate(Monomial& cur, std::size_t var, int budget, std::set<Monomial>& out) {
    if (var == cur.size()) {
      out.insert(cur);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      cur[var] = e;
      enumerate(cur, var + 1, budget - e, out);
    }
    cur[var] = 0;
  }

  std::vector<std::string> variables_;
  std::set<Monomial> monomials_;
};

/// Element of A: monomial -> coefficient.
using AElement = std::map<Monomial, Rational>;

inline AElement artin_multiply(const AElement& a, const AElement& b, const ArtinAlgebra& A) {
  AElement out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto m = A.multiply(ma, mb);
      if (!m) continue;
      auto [it, inserted] = out.try_emplace(*m, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

/// Element of V ⊗ m_A, stored as monomial -> vector coefficient.
using MVector = std::map<Monomial, Vector>;

inline void add_scaled(MVector& dst, const Monomial& m, const Vector& v, const Rational& c) {
  if (v.empty() || c == 0) return;
  auto& slot = dst[m];
  add_scaled(slot, v, c);
  if (slot.empty()) dst.erase(m);
}

inline void add_scaled(MVector& dst, const MVector& src, const Rational& c) {
  for (const auto& [m, v] : src) add_scaled(dst, m, v, c);
}

inline MVector operator+(const MVector& a, const MVector& b) {
  MVector out = a;
  add_scaled(out, b, 1);
  return out;
}

inline MVector operator-(const MVector& a, const MVector& b) {
  MVector out = a;
  add_scaled(out, b, -1);
  return out;
}

inline bool is_zero(const MVector& x) { return x.empty(); }

/// Terms of total monomial degree exactly d.
inline MVector degree_part(const MVector& x, int d) {
  MVector out;
  for (const auto& [m, v] : x)
    if (total_degree(m) == d) out.emplace(m, v);
  return out;
}

/// Terms of total monomial degree < d.
inline MVector truncate_below(const MVector& x, int d) {
  MVector out;
  for (const auto& [m, v] : x)
    if (total_degree(m) < d) out.emplace(m, v);
  return out;
}

/// Lowest total degree carrying a nonzero term, or nullopt for 0.
inline std::optional<int> lowest_order(const MVector& x) {
  std::optional<int> best;
  for (const auto& [m, v] : x) {
    int d = total_degree(m);
    if (!best || d < *best) best = d;
  }
  return best;
}

/// Applies a linear map coefficientwise.
inline MVector apply(const GradedMap& f, const MVector& x) {
  MVector out;
  for (const auto& [m, v] : x) {
    Vector w = f.apply(v);
    if (!w.empty()) out.emplace(m, std::move(w));
  }
  return out;
}

/// Checks x ∈ V^degree ⊗ m_A: every coefficient homogeneous of `degree` and
/// every monomial a surviving non-unit monomial.
inline void require_in_max_ideal(const MVector& x, const GradedSpace& V, const ArtinAlgebra& A,
                                 int degree, const char* what) {
  for (const auto& [m, v] : x) {
    if (is_unit_monomial(m) || !A.survives(m)) {
      throw InvalidInput(std::string(what) + ": coefficient monomial outside the maximal ideal");
    }
    if (!V.is_homogeneous(v, degree)) {
      throw InvalidInput(std::string(what) + ": expected an element of degree " + std::to_string(degree));
    }
  }
}

}  // namespace dglinf
