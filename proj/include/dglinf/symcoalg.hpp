#pragma once

// Reduced symmetric coalgebra on the shifted space V[1].

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dglinf/graded.hpp"

namespace dglinf {

/// Canonically ordered ⊙-monomial of basis indices of V[1].
struct SymWord {
  std::vector<std::size_t> factors;

  std::size_t weight() const { return factors.size(); }
  auto operator<=>(const SymWord&) const = default;
  bool operator==(const SymWord&) const = default;
};

/// Element of the reduced symmetric coalgebra: word -> coefficient.
using SymTensor = std::map<SymWord, Rational>;

/// Element of S̄ ⊗ S̄, used for coproducts.
using SymTensor2 = std::map<std::pair<SymWord, SymWord>, Rational>;

template <class K>
void add_term(std::map<K, Rational>& t, const K& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

/// Basis of V[1] with shifted degrees (V[1]^i = V^{i+1}) and the canonical
/// factor order by (shifted degree, name).
class ShiftedBasis {
 public:
  ShiftedBasis() = default;
  explicit ShiftedBasis(const GradedSpace& V) : space_(V) {
    const std::size_t n = V.dim();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (V.degree(a) != V.degree(b)) return V.degree(a) < V.degree(b);
      return V.name(a) < V.name(b);
    });
    rank_.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank_[order[r]] = r;
    by_rank_ = std::move(order);
  }

  const GradedSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int degree(std::size_t i) const { return space_.degree(i) - 1; }
  bool odd(std::size_t i) const { return degree(i) % 2 != 0; }
  std::size_t rank(std::size_t i) const { return rank_[i]; }

  int degree(const SymWord& w) const {
    int d = 0;
    for (auto i : w.factors) d += degree(i);
    return d;
  }

  /// Reorders a sequence of factors into canonical order. Returns the Koszul
  /// sign (0 if an odd factor repeats, which makes the product vanish).
  std::pair<int, SymWord> normalize(std::vector<std::size_t> seq) const {
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      for (std::size_t j = i; j > 0 && rank_[seq[j - 1]] > rank_[seq[j]]; --j) {
        if (odd(seq[j - 1]) && odd(seq[j])) sign = -sign;
        std::swap(seq[j - 1], seq[j]);
      }
    }
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] == seq[i - 1] && odd(seq[i])) return {0, SymWord{}};
    return {sign, SymWord{std::move(seq)}};
  }

  /// Koszul sign of listing the factors of `w` in the order given by `perm`
  /// (perm lists positions of w).
  int reorder_sign(const SymWord& w, const std::vector<std::size_t>& perm) const {
    std::vector<int> degs(w.factors.size());
    for (std::size_t i = 0; i < degs.size(); ++i) degs[i] = degree(w.factors[i]);
    return koszul_sign(perm, degs);
  }

  /// All nonzero canonical words of weight 1..max_weight.
  std::vector<SymWord> words_up_to(std::size_t max_weight) const {
    std::vector<SymWord> out;
    std::vector<std::size_t> cur;
    extend(cur, 0, max_weight, out);
    return out;
  }

  std::string word_name(const SymWord& w) const {
    std::string s;
    for (std::size_t i = 0; i < w.factors.size(); ++i) s += (i ? "⊙" : "") + space_.name(w.factors[i]);
    return s;
  }

 private:
  void extend(std::vector<std::size_t>& cur, std::size_t from_rank, std::size_t max_weight,
              std::vector<SymWord>& out) const {
    if (cur.size() == max_weight) return;
    for (std::size_t r = from_rank; r < by_rank_.size(); ++r) {
      const std::size_t i = by_rank_[r];
      cur.push_back(i);
      out.push_back(SymWord{cur});
      extend(cur, odd(i) ? r + 1 : r, max_weight, out);
      cur.pop_back();
    }
  }

  GradedSpace space_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> by_rank_;
};

/// Calls fn(subset_positions, complement_positions, sign) for every
/// (k, n-k) unshuffle of the word with 1 <= k <= n (k = n included only when
/// include_full is set). Sign is the Koszul sign of the unshuffle.
template <class Fn>
void for_each_unshuffle(const ShiftedBasis& B, const SymWord& w, bool include_full, Fn&& fn) {
  const std::size_t n = w.weight();
  const std::size_t limit = std::size_t{1} << n;
  std::vector<std::size_t> first, rest, perm;
  for (std::size_t mask = 1; mask < limit; ++mask) {
    if (mask == limit - 1 && !include_full) continue;
    first.clear();
    rest.clear();
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? first : rest).push_back(i);
    perm = first;
    perm.insert(perm.end(), rest.begin(), rest.end());
    fn(first, rest, B.reorder_sign(w, perm));
  }
}

inline SymWord sub_word(const SymWord& w, const std::vector<std::size_t>& positions) {
  SymWord out;
  out.factors.reserve(positions.size());
  for (auto p : positions) out.factors.push_back(w.factors[p]);
  return out;
}

/// Reduced coproduct Δ(v_1⊙…⊙v_n) = Σ_{k=1}^{n-1} Σ_{σ∈S(k,n-k)} ε(σ) (v_σ(1..k)) ⊗ (v_σ(k+1..n)).
inline SymTensor2 sym_coproduct(const ShiftedBasis& B, const SymWord& w) {
  SymTensor2 out;
  if (w.weight() < 2) return out;
  for_each_unshuffle(B, w, false, [&](const auto& first, const auto& rest, int sign) {
    add_term(out, std::make_pair(sub_word(w, first), sub_word(w, rest)), Rational(sign));
  });
  return out;
}

inline SymTensor2 sym_coproduct(const ShiftedBasis& B, const SymTensor& x) {
  SymTensor2 out;
  for (const auto& [w, c] : x)
    for (const auto& [k, v] : sym_coproduct(B, w)) add_term(out, k, v * c);
  return out;
}

/// ⊙-product of vectors in V[1] (given in order), expanded in canonical words.
inline SymTensor sym_product(const ShiftedBasis& B, const std::vector<const Vector*>& factors) {
  SymTensor out;
  std::vector<std::size_t> seq(factors.size());
  auto rec = [&](auto&& self, std::size_t pos, const Rational& coeff) -> void {
    if (pos == factors.size()) {
      auto [s, word] = B.normalize(seq);
      if (s != 0) add_term(out, word, coeff * s);
      return;
    }
    for (const auto& [i, c] : *factors[pos]) {
      seq[pos] = i;
      self(self, pos + 1, coeff * c);
    }
  };
  rec(rec, 0, Rational(1));
  return out;
}

/// Product of one vector with a word, placing the vector first.
inline SymTensor sym_product(const ShiftedBasis& B, const Vector& head, const SymWord& tail) {
  SymTensor out;
  std::vector<std::size_t> seq(tail.weight() + 1);
  std::copy(tail.factors.begin(), tail.factors.end(), seq.begin() + 1);
  for (const auto& [i, c] : head) {
    seq[0] = i;
    auto [s, word] = B.normalize(seq);
    if (s != 0) add_term(out, word, c * s);
  }
  return out;
}

}  // namespace dglinf
