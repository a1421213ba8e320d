#pragma once

// Hitchin pairs (E, L, θ) in matrix form over a finite CDGA model A, the dgla
// M = A ⊗ (gl_r ⊗ ΛL, [θ,-]) governing their deformations, the abelian target
// ⊕_k A ⊗ Sym^k L (shifted so that A^p ⊗ Sym^k L sits in degree p+1), and the
// L∞-morphism h = (g^1, …, g^r) inducing the Hitchin map.

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dglinf/artin.hpp"
#include "dglinf/cohomology.hpp"
#include "dglinf/dgla.hpp"
#include "dglinf/exterior.hpp"
#include "dglinf/linalg.hpp"
#include "dglinf/linfty.hpp"
#include "dglinf/mc.hpp"

namespace dglinf {

using QMatrix = detail::Matrix;

namespace detail {

inline QMatrix identity_matrix(std::size_t r) {
  QMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = 1;
  return m;
}

inline QMatrix elementary_matrix(std::size_t r, std::size_t i, std::size_t j) {
  QMatrix m(r, r);
  m(i, j) = 1;
  return m;
}

inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

inline QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

inline QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

inline QMatrix scaled(const QMatrix& a, const Rational& c) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= c;
  return out;
}

inline bool operator==(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool is_zero(const QMatrix& a) { return a == QMatrix(a.rows(), a.cols()); }

inline Rational trace(const QMatrix& a) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

inline QMatrix power(const QMatrix& a, int k) {
  QMatrix out = identity_matrix(a.rows());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

/// Subsets of {0..n-1} ordered by size, then lexicographically.
inline std::vector<Wedge> subsets_by_size(std::size_t n) {
  std::vector<Wedge> out;
  for (std::size_t q = 0; q <= n; ++q) {
    std::vector<Wedge> level;
    Wedge cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (cur.size() == q) {
        level.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace detail

/// Exponent vector over the basis of L.
using Multidegree = std::vector<int>;

/// Element of the symmetric algebra Sym L.
using SymPoly = std::map<Multidegree, Rational>;

inline void add_term(SymPoly& p, const Multidegree& m, const Rational& c) { add_term<Multidegree>(p, m, c); }

inline SymPoly sym_multiply(const SymPoly& a, const SymPoly& b) {
  SymPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Multidegree m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      add_term(out, m, ca * cb);
    }
  return out;
}

/// Monomials of total degree k in n variables, l_1^k first.
inline std::vector<Multidegree> sym_monomials(std::size_t n, int k) {
  std::vector<Multidegree> out;
  Multidegree cur(n, 0);
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var + 1 == n) {
      cur[var] = left;
      out.push_back(cur);
      cur[var] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[var] = e;
      self(self, var + 1, left - e);
    }
    cur[var] = 0;
  };
  if (n == 0) return out;
  rec(rec, 0, k);
  return out;
}

inline std::string sym_name(const GradedSpace& L, const Multidegree& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "·";
    s += L.name(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

/// r×r matrix with entries in Sym L.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t r = 0) : r_(r), entries_(r * r) {}

  /// Σ_l parts[l] ⊗ l.
  static SymMatrix linear(const std::vector<QMatrix>& parts, std::size_t r) {
    SymMatrix m(r);
    for (std::size_t l = 0; l < parts.size(); ++l) {
      Multidegree e(parts.size(), 0);
      e[l] = 1;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) add_term(m.at(i, j), e, parts[l](i, j));
    }
    return m;
  }

  std::size_t rank() const { return r_; }
  SymPoly& at(std::size_t i, std::size_t j) { return entries_[i * r_ + j]; }
  const SymPoly& at(std::size_t i, std::size_t j) const { return entries_[i * r_ + j]; }

  SymMatrix operator*(const SymMatrix& o) const {
    SymMatrix out(r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < r_; ++k) {
        if (at(i, k).empty()) continue;
        for (std::size_t j = 0; j < r_; ++j) {
          if (o.at(k, j).empty()) continue;
          for (const auto& [m, c] : sym_multiply(at(i, k), o.at(k, j))) add_term(out.at(i, j), m, c);
        }
      }
    return out;
  }

  SymPoly trace() const {
    SymPoly t;
    for (std::size_t i = 0; i < r_; ++i)
      for (const auto& [m, c] : at(i, i)) add_term(t, m, c);
    return t;
  }

  bool operator==(const SymMatrix&) const = default;

 private:
  std::size_t r_;
  std::vector<SymPoly> entries_;
};

class InvalidHiggsField : public InvalidInput {
 public:
  InvalidHiggsField(std::string l1, std::string l2, QMatrix component)
      : InvalidInput("theta∧theta != 0: nonzero component on " + l1 + "∧" + l2),
        witness_{std::move(l1), std::move(l2)},
        component_(std::move(component)) {}
  const std::pair<std::string, std::string>& witness() const { return witness_; }
  const QMatrix& component() const { return component_; }

 private:
  std::pair<std::string, std::string> witness_;
  QMatrix component_;
};

/// θ = Σ_l θ_l ⊗ l with θ_l ∈ gl_r. L is the space of the line-bundle-like
/// factor; ΛL is graded by exterior degree, so L's own degree labels must
/// agree but are otherwise unused.
class HitchinPair {
 public:
  HitchinPair(std::size_t rank, GradedSpace L, std::vector<QMatrix> theta)
      : rank_(rank), L_(std::move(L)), theta_(std::move(theta)) {
    if (rank_ == 0) throw InvalidInput("hitchin pair: rank must be positive");
    if (L_.degrees().size() > 1) throw InvalidInput("hitchin pair: L must be concentrated in one degree");
    if (theta_.size() != L_.dim()) throw InvalidInput("hitchin pair: theta needs one matrix per basis element of L");
    for (const auto& m : theta_)
      if (m.rows() != rank_ || m.cols() != rank_) throw InvalidInput("hitchin pair: theta matrices must be r×r");
    for (std::size_t i = 0; i < theta_.size(); ++i)
      for (std::size_t j = i + 1; j < theta_.size(); ++j) {
        QMatrix c = wedge_component(i, j);
        if (!detail::is_zero(c)) throw InvalidHiggsField(L_.name(i), L_.name(j), std::move(c));
      }
  }

  std::size_t rank() const { return rank_; }
  const GradedSpace& line() const { return L_; }
  std::size_t dim_l() const { return L_.dim(); }
  const QMatrix& theta(std::size_t l) const { return theta_.at(l); }
  const std::vector<QMatrix>& theta() const { return theta_; }
  SymMatrix theta_matrix() const { return SymMatrix::linear(theta_, rank_); }

  /// Component of θ∧θ on l_i∧l_j for i < j.
  QMatrix wedge_component(std::size_t i, std::size_t j) const {
    return detail::commutator(theta_[i], theta_[j]);
  }

  bool operator==(const HitchinPair& o) const {
    return rank_ == o.rank_ && L_ == o.L_ && theta_ == o.theta_;
  }

 private:
  std::size_t rank_;
  GradedSpace L_;
  std::vector<QMatrix> theta_;
};

/// θ given entrywise: entries[i][j][l] is the coefficient of l in θ_{ij}.
inline HitchinPair make_hitchin_pair(std::size_t r, GradedSpace L,
                                     const std::vector<std::vector<std::vector<Rational>>>& entries) {
  if (entries.size() != r) throw InvalidInput("hitchin pair: theta must have r rows");
  std::vector<QMatrix> theta(L.dim(), QMatrix(r, r));
  for (std::size_t i = 0; i < r; ++i) {
    if (entries[i].size() != r) throw InvalidInput("hitchin pair: theta must have r columns");
    for (std::size_t j = 0; j < r; ++j) {
      if (entries[i][j].size() != L.dim()) throw InvalidInput("hitchin pair: theta entry needs one coefficient per L basis element");
      for (std::size_t l = 0; l < L.dim(); ++l) theta[l](i, j) = entries[i][j][l];
    }
  }
  return HitchinPair(r, std::move(L), std::move(theta));
}

/// Basis E_ij ⊗ l_S of gl_r ⊗ ΛL, subset-major.
class GlExteriorBasis {
 public:
  struct Entry {
    std::size_t i, j, subset;
  };

  GlExteriorBasis() = default;
  GlExteriorBasis(std::size_t rank, std::size_t dim_l)
      : rank_(rank), subsets_(detail::subsets_by_size(dim_l)) {
    for (std::size_t s = 0; s < subsets_.size(); ++s) subset_index_.emplace(subsets_[s], s);
  }

  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return subsets_.size() * rank_ * rank_; }
  const Wedge& subset(std::size_t s) const { return subsets_.at(s); }
  std::size_t subset_index(const Wedge& w) const { return subset_index_.at(w); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t s) const { return (s * rank_ + i) * rank_ + j; }
  std::size_t index(std::size_t i, std::size_t j, const Wedge& w) const { return index(i, j, subset_index(w)); }
  Entry decode(std::size_t idx) const {
    const std::size_t rr = rank_ * rank_;
    return Entry{(idx % rr) / rank_, idx % rank_, idx / rr};
  }

  std::string name(std::size_t idx, const GradedSpace& L) const {
    auto e = decode(idx);
    std::string s = "E" + std::to_string(e.i + 1) + "_" + std::to_string(e.j + 1);
    const Wedge& w = subsets_[e.subset];
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "∧" : "⊗") + L.name(w[k]);
    return s;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Wedge> subsets_;
  std::map<Wedge, std::size_t> subset_index_;
};

namespace detail {

/// gl_r ⊗ ΛL with [X⊗S, Y⊗T] = (XY - YX) ⊗ S∧T and d = [θ, -], from raw
/// θ matrices (no θ∧θ check).
inline DglaData higgs_lie_presentation(std::size_t r, const GradedSpace& L, const std::vector<QMatrix>& theta) {
  GlExteriorBasis gb(r, L.dim());
  const std::size_t n = gb.dim();
  std::vector<GradedSpace::BasisElement> basis;
  for (std::size_t x = 0; x < n; ++x)
    basis.push_back({gb.name(x, L), static_cast<int>(gb.subset(gb.decode(x).subset).size())});
  GradedSpace space(std::move(basis));

  StructureConstants br(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto ex = gb.decode(x), ey = gb.decode(y);
      auto [s, u] = wedge_basis(gb.subset(ex.subset), gb.subset(ey.subset));
      if (s == 0) continue;
      const std::size_t us = gb.subset_index(u);
      if (ex.j == ey.i) br.add(x, y, gb.index(ex.i, ey.j, us), s);
      if (ey.j == ex.i) br.add(x, y, gb.index(ey.i, ex.j, us), -s);
    }

  Vector T;
  for (std::size_t l = 0; l < theta.size(); ++l)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) add_term(T, gb.index(i, j, Wedge{l}), theta[l](i, j));
  std::vector<Vector> dcols(n);
  for (std::size_t x = 0; x < n; ++x) dcols[x] = br.apply(T, basis_vector(x));
  GradedMap d(space, space, 1, std::move(dcols));
  return DglaData{std::move(space), std::move(d), std::move(br)};
}

}  // namespace detail

inline Dgla higgs_lie_dgla(const HitchinPair& P) {
  return Dgla(detail::higgs_lie_presentation(P.rank(), P.line(), P.theta()));
}

/// M = A ⊗ (gl_r ⊗ ΛL) with basis a*E_ij⊗l_S, a-major.
struct HitchinDgla {
  Cdga base;
  HitchinPair pair;
  GlExteriorBasis gl;
  Dgla lie;
  Dgla total;

  struct Entry {
    std::size_t a, i, j, subset;
  };

  std::size_t index(std::size_t a, std::size_t i, std::size_t j, std::size_t subset) const {
    return tensor_index(a, gl.index(i, j, subset), gl.dim());
  }
  Entry decode(std::size_t idx) const {
    auto e = gl.decode(idx % gl.dim());
    return Entry{idx / gl.dim(), e.i, e.j, e.subset};
  }
};

inline HitchinDgla build_hitchin_dgla(const Cdga& A, const HitchinPair& P) {
  Dgla lie = higgs_lie_dgla(P);
  Dgla total = tensor_cdga_dgla(A, lie);
  return HitchinDgla{A, P, GlExteriorBasis(P.rank(), P.dim_l()), std::move(lie), std::move(total)};
}

/// Cohomology of the total complex modeling 𝒞 (A in place of the Dolbeault algebra).
inline CohomologySummary complex_C_cohomology(const HitchinPair& P, const Cdga& A) {
  return build_hitchin_dgla(A, P).total.cohomology();
}

/// Abelian dgla ⊕_{k=1..r} A ⊗ Sym^k L with A^p ⊗ Sym^k L in degree p+1 and
/// d = d_A ⊗ id.
class HitchinTarget {
 public:
  HitchinTarget(const Cdga& A, const HitchinPair& P) : base_(A), L_(P.line()), rank_(P.rank()) {
    std::vector<GradedSpace::BasisElement> basis;
    for (std::size_t a = 0; a < A.dim(); ++a)
      for (std::size_t k = 1; k <= rank_; ++k)
        for (const auto& m : sym_monomials(L_.dim(), static_cast<int>(k))) {
          index_.emplace(std::make_pair(a, m), basis.size());
          basis.push_back({A.space().name(a) + "*" + sym_name(L_, m), A.degree(a) + 1});
        }
    GradedSpace space(std::move(basis));
    std::vector<Vector> cols(space.dim());
    for (const auto& [key, idx] : index_)
      for (const auto& [a2, c] : A.d().column(key.first)) add_term(cols[idx], index_.at({a2, key.second}), c);
    GradedMap d(space, space, 1, std::move(cols));
    const std::size_t n = space.dim();
    dgla_ = std::make_shared<const Dgla>(DglaData{std::move(space), std::move(d), StructureConstants(n)});
    structure_ = std::make_shared<const LInftyStructure>(linfty_from_dgla(*dgla_));
    cohomology_ = std::make_shared<const CohomologySummary>(dgla_->cohomology());
  }

  const Dgla& dgla() const { return *dgla_; }
  const LInftyStructure& structure() const { return *structure_; }
  const CohomologySummary& cohomology() const { return *cohomology_; }
  const GradedSpace& space() const { return dgla_->space(); }
  std::size_t rank() const { return rank_; }

  std::size_t index(std::size_t a, const Multidegree& m) const { return index_.at({a, m}); }

  /// Σ_b omega_b · b ⊗ p.
  Vector embed(const Vector& omega, const SymPoly& p) const {
    Vector out;
    for (const auto& [b, cb] : omega)
      for (const auto& [m, cm] : p) add_term(out, index(b, m), cb * cm);
    return out;
  }

  /// Part of x in the Sym^k summand.
  MVector component(const MVector& x, int k) const {
    MVector out;
    for (const auto& [mon, v] : x)
      for (const auto& [i, c] : v)
        if (sym_degree(i) == k) add_scaled(out, mon, basis_vector(i), c);
    return out;
  }

  int sym_degree(std::size_t idx) const {
    for (const auto& [key, i] : index_)
      if (i == idx) return total_degree(key.second);
    throw InvalidInput("hitchin target: index out of range");
  }

 private:
  Cdga base_;
  GradedSpace L_;
  std::size_t rank_;
  std::map<std::pair<std::size_t, Multidegree>, std::size_t> index_;
  std::shared_ptr<const Dgla> dgla_;
  std::shared_ptr<const LInftyStructure> structure_;
  std::shared_ptr<const CohomologySummary> cohomology_;
};

/// ḡ^k_n(f_1⊙…⊙f_n): coefficient of t_1⋯t_n in tr(θ + Σ t_i f_i)^k, summed
/// over length-k words in {θ, f_1..f_n} that use each f_i exactly once.
inline SymPoly g_bar(int k, const std::vector<SymMatrix>& f, const HitchinPair& P) {
  const std::size_t n = f.size();
  if (k < 1 || static_cast<std::size_t>(k) > P.rank()) throw InvalidInput("g_bar: k must lie in 1..r");
  SymPoly out;
  if (n > static_cast<std::size_t>(k)) return out;
  const SymMatrix theta = P.theta_matrix();
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int pos, std::size_t placed, const SymMatrix& acc) -> void {
    if (pos == k) {
      for (const auto& [m, c] : acc.trace()) add_term(out, m, c);
      return;
    }
    const std::size_t thetas_left = static_cast<std::size_t>(k - pos) - (n - placed);
    if (thetas_left > 0) self(self, pos + 1, placed, pos == 0 ? theta : acc * theta);
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      self(self, pos + 1, placed + 1, pos == 0 ? f[i] : acc * f[i]);
      used[i] = false;
    }
  };
  rec(rec, 0, 0, SymMatrix(P.rank()));
  return out;
}

namespace detail {

/// Splits a vector of M into (ω coefficient over A, matrix part over L) terms;
/// only terms with exterior degree 1 survive in g.
struct GTerm {
  std::size_t a;
  std::size_t i, j, l;
  Rational c;
};

inline std::vector<GTerm> g_terms(const Vector& v, const HitchinDgla& M) {
  std::vector<GTerm> out;
  for (const auto& [idx, c] : v) {
    auto e = M.decode(idx);
    const Wedge& s = M.gl.subset(e.subset);
    if (s.size() != 1) continue;
    out.push_back({e.a, e.i, e.j, s[0], c});
  }
  return out;
}

inline Vector omega_product(const std::vector<std::size_t>& as, const Cdga& A) {
  Vector cur = basis_vector(as.at(0));
  for (std::size_t i = 1; i < as.size() && !cur.empty(); ++i) cur = A.product_table().apply(cur, basis_vector(as[i]));
  return cur;
}

/// Memo for ḡ on elementary arguments E_ij ⊗ l, keyed by the sorted triples.
class GBarTable {
 public:
  explicit GBarTable(const HitchinPair& P) : P_(P) {}
  const std::vector<SymPoly>& operator()(std::vector<std::array<std::size_t, 3>> key) {
    std::sort(key.begin(), key.end());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<SymMatrix> f;
    for (const auto& t : key) {
      std::vector<QMatrix> parts(P_.dim_l(), QMatrix(P_.rank(), P_.rank()));
      parts[t[2]](t[0], t[1]) = 1;
      f.push_back(SymMatrix::linear(parts, P_.rank()));
    }
    std::vector<SymPoly> vals(P_.rank() + 1);
    for (std::size_t k = std::max<std::size_t>(1, key.size()); k <= P_.rank(); ++k)
      vals[k] = g_bar(static_cast<int>(k), f, P_);
    return cache_.emplace(std::move(key), std::move(vals)).first->second;
  }

 private:
  HitchinPair P_;
  std::map<std::vector<std::array<std::size_t, 3>>, std::vector<SymPoly>> cache_;
};

}  // namespace detail

/// g^k_n((ω_1⊗f_1)⊙…⊙(ω_n⊗f_n)) = ω_1⋯ω_n ⊗ ḡ^k_n(f_1⊙…⊙f_n), extended
/// multilinearly; arguments are vectors of M (terms outside A⊗gl_r⊗L
/// contribute 0). The result lies in the Sym^k block of the target.
inline Vector g_coefficient(int k, const std::vector<Vector>& args, const HitchinDgla& M, const HitchinTarget& W) {
  if (k < 1 || static_cast<std::size_t>(k) > M.pair.rank()) throw InvalidInput("g_coefficient: k must lie in 1..r");
  if (args.empty()) throw InvalidInput("g_coefficient: needs at least one argument");
  std::vector<std::vector<detail::GTerm>> terms;
  for (const auto& v : args) terms.push_back(detail::g_terms(v, M));
  Vector out;
  detail::GBarTable table(M.pair);
  std::vector<const detail::GTerm*> pick(args.size());
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == args.size()) {
      std::vector<std::size_t> as;
      std::vector<std::array<std::size_t, 3>> key;
      Rational c = 1;
      for (const auto* t : pick) {
        as.push_back(t->a);
        key.push_back({t->i, t->j, t->l});
        c *= t->c;
      }
      Vector omega = detail::omega_product(as, M.base);
      if (omega.empty()) return;
      const SymPoly& g = table(key)[static_cast<std::size_t>(k)];
      add_scaled(out, W.embed(omega, g), c);
      return;
    }
    for (const auto& t : terms[pos]) {
      pick[pos] = &t;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// h = (g^1, …, g^r): h_n = Σ_k g^k_n, as an L∞-morphism M → W.
inline LInftyMorphism build_hitchin_morphism(const HitchinDgla& M, const HitchinTarget& W) {
  auto src = std::make_shared<const HitchinDgla>(M);
  auto tgt = std::make_shared<const HitchinTarget>(W);
  auto table = std::make_shared<detail::GBarTable>(M.pair);
  const std::size_t r = M.pair.rank();
  auto component = [src, tgt, table, r](const SymWord& w) -> Vector {
    const std::size_t n = w.weight();
    if (n == 0 || n > r) return {};
    std::vector<std::size_t> as;
    std::vector<std::array<std::size_t, 3>> key;
    for (auto idx : w.factors) {
      auto e = src->decode(idx);
      const Wedge& s = src->gl.subset(e.subset);
      if (s.size() != 1) return {};
      as.push_back(e.a);
      key.push_back({e.i, e.j, s[0]});
    }
    Vector omega = detail::omega_product(as, src->base);
    if (omega.empty()) return {};
    const auto& g = (*table)(key);
    Vector out;
    for (std::size_t k = n; k <= r; ++k) add_scaled(out, tgt->embed(omega, g[k]), 1);
    return out;
  };
  return LInftyMorphism(linfty_from_dgla(M.total), W.structure(), r, component);
}

inline LInftyMorphism build_hitchin_morphism(const HitchinPair& P, const Cdga& A) {
  return build_hitchin_morphism(build_hitchin_dgla(A, P), HitchinTarget(A, P));
}

namespace detail {

/// Ring A ⊗ A_base ⊗ Sym L with a formal unit for the A factor (so θ = θ ⊗ 1
/// needs no unit in A).
constexpr std::size_t kFormalUnit = std::numeric_limits<std::size_t>::max();
using RingKey = std::tuple<std::size_t, Monomial, Multidegree>;
using RingElement = std::map<RingKey, Rational>;

struct RingMatrix {
  std::size_t r;
  std::vector<RingElement> e;
  RingElement& at(std::size_t i, std::size_t j) { return e[i * r + j]; }
  const RingElement& at(std::size_t i, std::size_t j) const { return e[i * r + j]; }
};

inline RingElement ring_multiply(const RingElement& x, const RingElement& y, const Cdga& A, const ArtinAlgebra& B) {
  RingElement out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      auto mon = B.multiply(std::get<1>(kx), std::get<1>(ky));
      if (!mon) continue;
      Multidegree md = std::get<2>(kx);
      for (std::size_t i = 0; i < md.size(); ++i) md[i] += std::get<2>(ky)[i];
      const std::size_t ax = std::get<0>(kx), ay = std::get<0>(ky);
      if (ax == kFormalUnit || ay == kFormalUnit) {
        add_term<RingKey>(out, RingKey{ax == kFormalUnit ? ay : ax, *mon, md}, cx * cy);
        continue;
      }
      for (const auto& [b, cb] : A.product_table().at(ax, ay)) add_term<RingKey>(out, RingKey{b, *mon, md}, cx * cy * cb);
    }
  return out;
}

inline RingMatrix ring_mul(const RingMatrix& x, const RingMatrix& y, const Cdga& A, const ArtinAlgebra& B) {
  RingMatrix out{x.r, std::vector<RingElement>(x.r * x.r)};
  for (std::size_t i = 0; i < x.r; ++i)
    for (std::size_t k = 0; k < x.r; ++k) {
      if (x.at(i, k).empty()) continue;
      for (std::size_t j = 0; j < x.r; ++j)
        for (const auto& [key, c] : ring_multiply(x.at(i, k), y.at(k, j), A, B)) add_term<RingKey>(out.at(i, j), key, c);
    }
  return out;
}

}  // namespace detail

/// tr((θ+y)^k) - tr(θ^k) for k = 1..r, where y is the A⁰ ⊗ gl_r ⊗ L part of x.
inline MVector hitchin_map_direct(const MVector& x, const HitchinDgla& M, const HitchinTarget& W,
                                  const ArtinAlgebra& B) {
  const std::size_t r = M.pair.rank(), nl = M.pair.dim_l();
  detail::RingMatrix S{r, std::vector<detail::RingElement>(r * r)};
  for (std::size_t l = 0; l < nl; ++l) {
    Multidegree e(nl, 0);
    e[l] = 1;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        add_term<detail::RingKey>(S.at(i, j), detail::RingKey{detail::kFormalUnit, B.unit(), e}, M.pair.theta(l)(i, j));
  }
  for (const auto& [mon, v] : x)
    for (const auto& t : detail::g_terms(v, M)) {
      if (M.base.degree(t.a) != 0) continue;
      Multidegree e(nl, 0);
      e[t.l] = 1;
      add_term<detail::RingKey>(S.at(t.i, t.j), detail::RingKey{t.a, mon, e}, t.c);
    }
  MVector out;
  detail::RingMatrix P = S;
  for (std::size_t k = 1; k <= r; ++k) {
    if (k > 1) P = detail::ring_mul(P, S, M.base, B);
    for (std::size_t i = 0; i < r; ++i)
      for (const auto& [key, c] : P.at(i, i)) {
        const auto& [a, mon, md] = key;
        if (a == detail::kFormalUnit) continue;  // the tr(θ^k) part
        add_scaled(out, mon, basis_vector(W.index(a, md)), c);
      }
  }
  return out;
}

struct HitchinImage {
  MVector direct;
  MVector pushforward;
  bool agree() const { return direct == pushforward; }
};

/// The Hitchin map on an MC element of M over B, computed directly and as
/// the pushforward along h.
inline HitchinImage hitchin_map(const MVector& x, const HitchinDgla& M, const HitchinTarget& W,
                                const LInftyMorphism& h, const ArtinAlgebra& B) {
  if (!is_mc(x, M.total, B)) throw InvalidInput("hitchin_map: input is not a Maurer-Cartan element");
  return HitchinImage{hitchin_map_direct(x, M, W, B), pushforward_mc(h, x, B)};
}

inline HitchinImage hitchin_map(const MVector& x, const HitchinDgla& M, const HitchinTarget& W,
                                const ArtinAlgebra& B) {
  return hitchin_map(x, M, W, build_hitchin_morphism(M, W), B);
}

struct ObstructionImage {
  Vector image;                             // h_1(cocycle) in the target, degree 2
  std::vector<Rational> class_coordinates;  // its class in the target cohomology
  bool is_zero() const {
    for (const auto& c : class_coordinates)
      if (c != 0) return false;
    return true;
  }
};

/// H²(h_1): [ω⊗f] ↦ [(k ω ⊗ tr(f θ^{k-1}))_k].
inline ObstructionImage obstruction_kernel_map(const Vector& cocycle, const HitchinDgla& M, const HitchinTarget& W) {
  if (!M.total.space().is_homogeneous(cocycle, 2)) throw InvalidInput("obstruction_kernel_map: expected a degree-2 element");
  if (!M.total.d().apply(cocycle).empty()) throw InvalidInput("obstruction_kernel_map: input is not a cocycle");
  ObstructionImage out;
  for (std::size_t k = 1; k <= M.pair.rank(); ++k) add_scaled(out.image, g_coefficient(static_cast<int>(k), {cocycle}, M, W), 1);
  out.class_coordinates = W.cohomology().class_of(2, out.image);
  return out;
}

struct TraceCommutatorCheck {
  bool ok = true;
  QMatrix t_coefficient;  // coefficient of t in (A + t[B,A])^k
  QMatrix commutator;     // [B, A^k]
  Rational trace;         // tr of the t-coefficient
};

/// Expands (A + t[B,A])^k as a polynomial in t and checks that the
/// t-coefficient equals [B, A^k] and is traceless.
inline TraceCommutatorCheck trace_commutator_oracle(const QMatrix& A, const QMatrix& B, int k) {
  if (k < 1) throw InvalidInput("trace_commutator_oracle: k must be positive");
  const QMatrix C = detail::commutator(B, A);
  std::vector<QMatrix> poly{detail::identity_matrix(A.rows())};  // coefficients of t^0, t^1, ...
  for (int step = 0; step < k; ++step) {
    std::vector<QMatrix> next(poly.size() + 1, QMatrix(A.rows(), A.cols()));
    for (std::size_t e = 0; e < poly.size(); ++e) {
      next[e] = next[e] + poly[e] * A;
      next[e + 1] = next[e + 1] + poly[e] * C;
    }
    poly = std::move(next);
  }
  TraceCommutatorCheck out;
  out.t_coefficient = poly[1];
  out.commutator = detail::commutator(B, detail::power(A, k));
  out.trace = detail::trace(out.t_coefficient);
  out.ok = out.t_coefficient == out.commutator && out.trace == 0;
  return out;
}

}  // namespace dglinf
