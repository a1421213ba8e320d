#pragma once

// Exterior algebra ΛV on an ungraded finite basis, with the contraction
// (interior product) by a linear functional.

#include <cstddef>
#include <map>
#include <vector>

#include "dglinf/rational.hpp"

namespace dglinf {

/// Strictly increasing list of generator indices; {} is the unit.
using Wedge = std::vector<std::size_t>;
using ExteriorElement = std::map<Wedge, Rational>;

inline void add_term(ExteriorElement& x, const Wedge& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = x.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

/// Product of two basis wedges: 0 if they share a generator, otherwise the
/// merged wedge with the sign of the merging shuffle.
inline std::pair<int, Wedge> wedge_basis(const Wedge& a, const Wedge& b) {
  Wedge out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  long long inversions = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      inversions += static_cast<long long>(a.size() - i);
      out.push_back(b[j++]);
    } else {
      return {0, {}};
    }
  }
  return {sign_pow(inversions), std::move(out)};
}

inline ExteriorElement wedge(const ExteriorElement& x, const ExteriorElement& y) {
  ExteriorElement out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      auto [s, w] = wedge_basis(a, b);
      if (s != 0) add_term(out, w, ca * cb * s);
    }
  return out;
}

/// α⌟(v_1∧…∧v_k) = Σ_i (-1)^{i-1} α(v_i) v_1∧…v̂_i…∧v_k, extended linearly.
/// `alpha[j]` is the value of the functional on generator j (missing = 0).
inline ExteriorElement contraction(const std::vector<Rational>& alpha, const ExteriorElement& omega) {
  ExteriorElement out;
  for (const auto& [w, c] : omega) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] >= alpha.size() || alpha[w[i]] == 0) continue;
      Wedge rest;
      rest.reserve(w.size() - 1);
      for (std::size_t j = 0; j < w.size(); ++j)
        if (j != i) rest.push_back(w[j]);
      add_term(out, rest, c * alpha[w[i]] * sign_pow(static_cast<long long>(i)));
    }
  }
  return out;
}

}  // namespace dglinf
