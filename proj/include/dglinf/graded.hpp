#pragma once

// Finite-dimensional graded vector spaces over Q with a named basis, sparse
// vectors and homogeneous linear maps between them.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dglinf/rational.hpp"

namespace dglinf {

/// Sparse vector: basis index -> coefficient. Zero coefficients are never stored.
using Vector = std::map<std::size_t, Rational>;

inline void add_scaled(Vector& dst, const Vector& src, const Rational& c) {
  if (c == 0) return;
  for (const auto& [i, v] : src) {
    auto [it, inserted] = dst.try_emplace(i, v * c);
    if (!inserted) {
      it->second += v * c;
      if (it->second == 0) dst.erase(it);
    }
  }
}

inline void add_term(Vector& dst, std::size_t i, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = dst.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) dst.erase(it);
  }
}

inline Vector scaled(const Vector& v, const Rational& c) {
  Vector out;
  add_scaled(out, v, c);
  return out;
}

inline Vector operator+(const Vector& a, const Vector& b) {
  Vector out = a;
  add_scaled(out, b, 1);
  return out;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  Vector out = a;
  add_scaled(out, b, -1);
  return out;
}

inline Vector basis_vector(std::size_t i) { return Vector{{i, Rational(1)}}; }

class GradedSpace {
 public:
  struct BasisElement {
    std::string name;
    int degree = 0;
    bool operator==(const BasisElement&) const = default;
  };

  GradedSpace() = default;

  explicit GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!index_.emplace(basis_[i].name, i).second) {
        throw InvalidInput("duplicate basis name \"" + basis_[i].name + "\"");
      }
    }
  }

  std::size_t dim() const { return basis_.size(); }
  const std::string& name(std::size_t i) const { return basis_.at(i).name; }
  int degree(std::size_t i) const { return basis_.at(i).degree; }
  const std::vector<BasisElement>& basis() const { return basis_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw InvalidInput("unknown basis element \"" + name + "\"");
    return *i;
  }

  std::vector<std::size_t> indices_of_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree == d) out.push_back(i);
    return out;
  }

  /// Sorted list of degrees that actually occur.
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& b : basis_) out.push_back(b.degree);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Degree of a vector if it is homogeneous; nullopt for mixed vectors.
  /// The zero vector is homogeneous of every degree and reports `fallback`.
  std::optional<int> homogeneous_degree(const Vector& v, int fallback = 0) const {
    if (v.empty()) return fallback;
    int d = degree(v.begin()->first);
    for (const auto& [i, c] : v)
      if (degree(i) != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous(const Vector& v, int d) const {
    return std::all_of(v.begin(), v.end(), [&](const auto& t) { return degree(t.first) == d; });
  }

  /// Same basis with every degree shifted by -s (so V[s]^i = V^{i+s}).
  GradedSpace shifted(int s) const {
    auto b = basis_;
    for (auto& e : b) e.degree -= s;
    return GradedSpace(std::move(b));
  }

  bool operator==(const GradedSpace& o) const { return basis_ == o.basis_; }

 private:
  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Homogeneous linear map given column-wise on basis elements.
class GradedMap {
 public:
  GradedMap() = default;

  /// Validates that every column lands in degree (source degree + `degree`).
  GradedMap(const GradedSpace& source, const GradedSpace& target, int degree,
            std::vector<Vector> columns)
      : degree_(degree), columns_(std::move(columns)) {
    if (columns_.size() != source.dim()) {
      throw InvalidInput("graded map: column count does not match source dimension");
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      for (const auto& [j, c] : columns_[i]) {
        if (j >= target.dim()) throw InvalidInput("graded map: target index out of range");
        if (target.degree(j) != source.degree(i) + degree) {
          throw InvalidInput("graded map of degree " + std::to_string(degree) + " sends " +
                             source.name(i) + " to " + target.name(j) +
                             ": inhomogeneous image");
        }
      }
    }
  }

  static GradedMap zero(const GradedSpace& source, int degree) {
    GradedMap m;
    m.degree_ = degree;
    m.columns_.assign(source.dim(), Vector{});
    return m;
  }

  int degree() const { return degree_; }
  std::size_t source_dim() const { return columns_.size(); }
  const Vector& column(std::size_t i) const { return columns_.at(i); }
  const std::vector<Vector>& columns() const { return columns_; }

  Vector apply(const Vector& v) const {
    Vector out;
    for (const auto& [i, c] : v) add_scaled(out, columns_.at(i), c);
    return out;
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const Vector& c) { return c.empty(); });
  }

  /// this ∘ other
  GradedMap compose(const GradedMap& other) const {
    GradedMap out;
    out.degree_ = degree_ + other.degree_;
    out.columns_.reserve(other.columns_.size());
    for (const auto& col : other.columns_) out.columns_.push_back(apply(col));
    return out;
  }

  bool operator==(const GradedMap&) const = default;

 private:
  int degree_ = 0;
  std::vector<Vector> columns_;
};

/// Sign ε with v_1⊙…⊙v_n = ε v_{σ(1)}⊙…⊙v_{σ(n)} in the graded-symmetric
/// algebra. `permutation` is 0-based: permutation[i] = σ(i+1)-1. Computed by
/// bubbling the permuted sequence back to identity with adjacent
/// transpositions, each contributing (-1)^{deg·deg}.
inline int koszul_sign(std::span<const std::size_t> permutation, std::span<const int> degrees) {
  const std::size_t n = permutation.size();
  if (degrees.size() != n) throw InvalidInput("koszul_sign: degree list length mismatch");
  std::vector<bool> seen(n, false);
  for (std::size_t p : permutation) {
    if (p >= n || seen[p]) throw InvalidInput("koszul_sign: not a permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> seq(permutation.begin(), permutation.end());
  int sign = 1;
  for (std::size_t pass = 0; pass < n; ++pass) {
    for (std::size_t i = 0; i + 1 < n - pass; ++i) {
      if (seq[i] > seq[i + 1]) {
        if ((degrees[seq[i]] % 2 != 0) && (degrees[seq[i + 1]] % 2 != 0)) sign = -sign;
        std::swap(seq[i], seq[i + 1]);
      }
    }
  }
  return sign;
}

}  // namespace dglinf
